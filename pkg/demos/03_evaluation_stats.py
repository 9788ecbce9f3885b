"""Aggregate the shipped user ratings and run the independence test.

Ratings compare two recommendation methods (with and without
classification-code evidence) on a four-level relevance scale.  The
script prints the 2x4 contingency table, the per-level percentage
deltas, and Pearson's chi-square test with its p-value.
"""

import json
from pathlib import Path

from lodrec import (
    LEVELS,
    METHODS,
    aggregate,
    build_report,
    chi_square,
    load_ratings,
    relative_deltas,
)

RATINGS = Path(__file__).resolve().parents[1] / "data" / \
    "ratings_user_study.csv"


def main() -> None:
    ratings = load_ratings(RATINGS)
    participants = {r.participant for r in ratings}
    queries = {r.query_id for r in ratings}
    print(f"{len(ratings)} ratings from {len(participants)} participants "
          f"over {len(queries)} queries")

    table = aggregate(ratings)
    header = "".join(f"{level:>8}" for level in LEVELS)
    print(f"\n{'':>12}{header}")
    for method in METHODS:
        cells = "".join(f"{int(c):>8}" for c in table.row(method))
        print(f"{method:>12}{cells}")

    print("\nper-level change when code evidence is added:")
    for level, delta in relative_deltas(table).items():
        shown = "undefined" if delta is None else f"{delta:+.2f}%"
        print(f"  {level:>6}: {shown}")

    result = chi_square(table)
    print(f"\nchi-square statistic {result.statistic:.4f} "
          f"with {result.df} degrees of freedom")
    print(f"p-value {result.p_value:.6f}"
          + (" (significant at 0.05)" if result.p_value < 0.05 else ""))

    print("\nthe same numbers as one JSON report:")
    print(json.dumps(build_report(ratings), indent=2)[:400], "...")


if __name__ == "__main__":
    main()

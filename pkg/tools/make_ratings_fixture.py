#!/usr/bin/env python3
"""Regenerate data/ratings_user_study.csv.

Only the per-method rating marginals carry information; participant,
query, and recommendation assignments are invented scaffolding.  The
shuffle seed is fixed so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

# rating value -> count, per method; each method has 2000 ratings
MARGINALS = {
    "with_lod": {3: 411, 2: 461, 1: 673, 0: 455},
    "without_lod": {3: 407, 2: 440, 1: 597, 0: 556},
}
N_PARTICIPANTS = 8
RECS_PER_QUERY = 10
SEED = 97


def main() -> None:
    out = Path(__file__).resolve().parents[1] / "data" / "ratings_user_study.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    rows = []
    for method, counts in MARGINALS.items():
        ratings = [value for value, n in counts.items() for _ in range(n)]
        rng.shuffle(ratings)
        assert len(ratings) % RECS_PER_QUERY == 0
        for q in range(len(ratings) // RECS_PER_QUERY):
            participant = f"p{q % N_PARTICIPANTS + 1:02d}"
            query_id = f"q{q + 1:03d}"
            for slot in range(RECS_PER_QUERY):
                rows.append((
                    participant,
                    query_id,
                    f"v{q + 1:03d}r{slot + 1:02d}",
                    method,
                    ratings[q * RECS_PER_QUERY + slot],
                ))
    with open(out, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(
            ["participant", "query_id", "recommended_id", "method", "rating"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} ratings to {out}")


if __name__ == "__main__":
    main()

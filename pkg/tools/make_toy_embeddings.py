#!/usr/bin/env python3
"""Regenerate data/toy/embeddings.txt from data/toy/corpus.jsonl.

Every token of every record's title, tags, and abstract gets a small
random vector, except a fixed out-of-vocabulary set kept to exercise
the miss counter.  Vectors are a pure function of the token string, so
the file does not change when records are reordered.
"""

from __future__ import annotations

import hashlib
import random
from pathlib import Path

from lodrec import load_corpus, tokenize

DIM = 16
# deliberately missing from the table
OOV = {"schrödingergleichung", "codeerzeugung"}


def token_vector(token: str) -> list[float]:
    seed = int.from_bytes(
        hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big")
    rng = random.Random(seed)
    return [round(rng.uniform(-1.0, 1.0), 6) for _ in range(DIM)]


def main() -> None:
    toy = Path(__file__).resolve().parents[1] / "data" / "toy"
    corpus = load_corpus(toy / "corpus.jsonl")
    tokens: set[str] = set()
    for record in corpus.records:
        for text in [record.title, *(t.surface for t in record.tags),
                     record.abstract]:
            tokens.update(tokenize(text))
    tokens -= OOV

    out = toy / "embeddings.txt"
    with open(out, "w", encoding="utf-8") as f:
        f.write(f"{len(tokens)} {DIM}\n")
        for token in sorted(tokens):
            values = " ".join(f"{x:g}" for x in token_vector(token))
            f.write(f"{token} {values}\n")
    print(f"wrote {len(tokens)} vectors of dim {DIM} to {out}")


if __name__ == "__main__":
    main()

"""Combined similarity scoring and top-k recommendation.

Two branches feed the combined score: the mean-word-vector cosine (text
branch, usable on its own as the baseline method) and the
classification-fragment tf-idf cosine.  When both are defined the
combined score is their weighted average; when exactly one is defined
the score falls back to that branch.  A missing branch says "no
evidence", not "dissimilar", so it is never coerced to 0.

Scoring is exhaustive over all candidate pairs.  At the corpus sizes
this engine targets (low thousands) exactness is cheap and keeps every
ranking auditable; there is no approximate nearest-neighbor index.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .ddc_vectors import DdcVector, ddc_similarity
from .embeddings import DocVector, text_similarity
from .errors import UnknownIdError

WITH_LOD = "with_lod"
WITHOUT_LOD = "without_lod"
METHODS = (WITH_LOD, WITHOUT_LOD)

DEFAULT_WEIGHTS = (0.5, 0.5)


@dataclass
class SimilarityScore:
    pair: tuple[str, str]
    s_text: float | None
    s_ddc: float | None
    s_lod: float | None
    fallback_applied: bool

    def for_method(self, method: str) -> float | None:
        if method == WITH_LOD:
            return self.s_lod
        if method == WITHOUT_LOD:
            return self.s_text
        raise ValueError(f"unknown method: {method!r}")


@dataclass
class Recommendation:
    query_id: str
    ranked: list[tuple[str, float | None]]
    method: str
    k: int

    def to_json_obj(self) -> dict:
        return {
            "query": self.query_id,
            "method": self.method,
            "k": self.k,
            "results": [{"id": vid, "score": score}
                        for vid, score in self.ranked],
        }


@dataclass
class CorpusIndex:
    """Immutable scoring state: per-video vectors in corpus order."""

    ids: list[str]
    doc_vectors: dict[str, DocVector]
    ddc_vectors: dict[str, DdcVector]
    weights: tuple[float, float] = DEFAULT_WEIGHTS

    def __len__(self) -> int:
        return len(self.ids)


def combined_similarity(i: str, j: str,
                        doc_vectors: dict[str, DocVector],
                        ddc_vectors: dict[str, DdcVector],
                        weights: tuple[float, float] = DEFAULT_WEIGHTS,
                        ) -> SimilarityScore:
    """Score one pair: both branches plus their combination.

    Fallback rule: if exactly one branch is undefined the combined score
    equals the defined branch; if both are undefined it is undefined.
    """
    for vid in (i, j):
        if vid not in doc_vectors:
            raise UnknownIdError(f"unknown video id: {vid!r}")
    w_text, w_ddc = weights
    if w_text < 0 or w_ddc < 0 or w_text + w_ddc <= 0:
        raise ValueError("weights must be non-negative with positive sum")

    s_text = text_similarity(doc_vectors[i], doc_vectors[j])
    if i in ddc_vectors and j in ddc_vectors:
        s_ddc = ddc_similarity(ddc_vectors[i], ddc_vectors[j])
    else:
        s_ddc = None

    fallback = False
    if s_text is not None and s_ddc is not None:
        s_lod = (w_text * s_text + w_ddc * s_ddc) / (w_text + w_ddc)
    elif s_text is not None:
        s_lod, fallback = s_text, True
    elif s_ddc is not None:
        s_lod, fallback = s_ddc, True
    else:
        s_lod = None
    return SimilarityScore(pair=(i, j), s_text=s_text, s_ddc=s_ddc,
                           s_lod=s_lod, fallback_applied=fallback)


def _rank_key(item: tuple[str, float | None]):
    vid, score = item
    # Defined scores first (descending), undefined last; ties by id.
    return (score is None, -(score if score is not None else 0.0), vid)


def recommend(query_id: str, index: CorpusIndex, k: int,
              method: str = WITH_LOD) -> Recommendation:
    """Top-k videos for a query under the deterministic order key.

    Candidates are every other video; undefined scores rank below all
    defined ones; ties break by ascending id.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method: {method!r}")
    if query_id not in index.doc_vectors:
        raise UnknownIdError(f"unknown video id: {query_id!r}")
    n_candidates = len(index.ids) - 1
    if not 1 <= k <= n_candidates:
        raise ValueError(f"k={k} out of range 1..{n_candidates}")

    scored = []
    for other in index.ids:
        if other == query_id:
            continue
        s = combined_similarity(query_id, other, index.doc_vectors,
                                index.ddc_vectors, index.weights)
        scored.append((other, s.for_method(method)))
    scored.sort(key=_rank_key)
    return Recommendation(query_id=query_id, ranked=scored[:k],
                          method=method, k=k)


def similarity_matrix(index: CorpusIndex, method: str = WITH_LOD,
                      threads: int = 1) -> np.ndarray:
    """Dense pairwise score matrix; NaN marks undefined cells.

    Symmetric by construction (each unordered pair scored once and
    mirrored); rows can be computed in parallel.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method: {method!r}")
    ids = index.ids
    n = len(ids)
    matrix = np.full((n, n), np.nan)

    def fill_row(r: int) -> None:
        for c in range(r, n):
            s = combined_similarity(ids[r], ids[c], index.doc_vectors,
                                    index.ddc_vectors, index.weights)
            value = s.for_method(method)
            if value is not None:
                matrix[r, c] = value
                matrix[c, r] = value

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill_row, range(n)))
    else:
        for r in range(n):
            fill_row(r)
    return matrix


def matrix_to_tsv(index: CorpusIndex, matrix: np.ndarray) -> str:
    """TSV with id header row and column; undefined cells empty."""
    lines = ["\t" + "\t".join(index.ids)]
    for r, vid in enumerate(index.ids):
        cells = ["" if np.isnan(matrix[r, c]) else repr(float(matrix[r, c]))
                 for c in range(len(index.ids))]
        lines.append(vid + "\t" + "\t".join(cells))
    return "\n".join(lines) + "\n"


__all__ = [
    "METHODS", "WITH_LOD", "WITHOUT_LOD", "DEFAULT_WEIGHTS",
    "CorpusIndex", "Recommendation", "SimilarityScore",
    "combined_similarity", "matrix_to_tsv", "recommend", "similarity_matrix",
]

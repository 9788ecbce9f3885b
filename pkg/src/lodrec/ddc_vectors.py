"""Per-video tf-idf vectors over classification-code fragments.

Every video gets a sparse vector whose dimensions are the corpus-global
set of code fragments.  A fragment's weight is ``tf * ln(n_docs / df)``:
raw occurrence count over the video's (tag, code) pairs times unsmoothed
inverse document frequency.  Deep fragments are rare across the corpus,
so they dominate the cosine similarity between two vectors, which is the
point of fragmenting the hierarchy in the first place.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .authority import EnrichedVideo
from .ddc import DEFAULT_MODE, Fragment, fragment_code
from .errors import DimensionMismatchError, ParseError, VocabularyMismatchError


@dataclass
class FragmentVocabulary:
    """Corpus-global ordered fragment set defining the vector dimensions.

    ``fragments`` is sorted by (level, prefix) so serialized indices are
    portable across runs and machines.  ``df`` counts documents (videos)
    containing each fragment at least once; ``n_docs`` is the corpus size
    including videos without any resolved codes.
    """

    fragments: list[Fragment]
    index: dict[Fragment, int]
    df: dict[Fragment, int]
    n_docs: int
    mode: str = DEFAULT_MODE

    def __len__(self) -> int:
        return len(self.fragments)

    def serialize(self) -> str:
        """One fragment per line, ``level<TAB>prefix``, vocabulary order."""
        return "".join(f"{f.level}\t{f.prefix}\n" for f in self.fragments)

    def fingerprint(self) -> str:
        """64-bit hash of the serialized vocabulary, as 16 hex digits."""
        digest = hashlib.blake2b(self.serialize().encode("utf-8"),
                                 digest_size=8)
        return digest.hexdigest()

    def idf(self, fragment: Fragment) -> float:
        return math.log(self.n_docs / self.df[fragment])


@dataclass
class DdcVector:
    """Sparse tf-idf weights for one video, keyed by vocabulary dimension.

    Zeros are absent from the map, so an empty ``weights`` dict means the
    video has no usable classification evidence.  The vocabulary
    fingerprint guards against comparing vectors from different indices.
    """

    video_id: str
    weights: dict[int, float]
    fingerprint: str
    unknown_fragments: int = field(default=0, compare=False)

    def __bool__(self) -> bool:
        return bool(self.weights)


def _video_fragment_counts(video: EnrichedVideo, mode: str) -> Counter:
    """Fragment multiplicities over the video's (tag, code) pairs."""
    counts: Counter = Counter()
    for resolved in video.resolved:
        for code in resolved.ddc_codes:
            counts.update(fragment_code(code, mode))
    return counts


def build_vocabulary(enriched: list[EnrichedVideo],
                     mode: str = DEFAULT_MODE) -> FragmentVocabulary:
    """Collect the distinct fragments of all resolved codes of all videos."""
    df: Counter = Counter()
    for video in enriched:
        present = set()
        for resolved in video.resolved:
            for code in resolved.ddc_codes:
                present.update(fragment_code(code, mode))
        df.update(present)
    fragments = sorted(df)
    return FragmentVocabulary(
        fragments=fragments,
        index={f: i for i, f in enumerate(fragments)},
        df=dict(df),
        n_docs=len(enriched),
        mode=mode,
    )


def term_frequency(video: EnrichedVideo, fragment: Fragment,
                   vocab: FragmentVocabulary) -> int:
    """Occurrences of a fragment over the video's (tag, code) pairs."""
    if fragment not in vocab.index:
        raise KeyError(f"fragment {fragment} not in vocabulary")
    return _video_fragment_counts(video, vocab.mode)[fragment]


def vectorize(video: EnrichedVideo,
              vocab: FragmentVocabulary) -> DdcVector:
    """tf-idf weights for every vocabulary fragment the video contains.

    Fragments outside the vocabulary are skipped and counted (this only
    happens when a video was not part of the vocabulary build).
    Fragments occurring in every document get idf 0 and are left out.
    """
    weights: dict[int, float] = {}
    unknown = 0
    for fragment, tf in sorted(_video_fragment_counts(video, vocab.mode).items()):
        if fragment not in vocab.index:
            unknown += 1
            continue
        if vocab.df[fragment] >= vocab.n_docs:
            continue
        weights[vocab.index[fragment]] = tf * vocab.idf(fragment)
    return DdcVector(video_id=video.video.id, weights=weights,
                     fingerprint=vocab.fingerprint(),
                     unknown_fragments=unknown)


def cosine(a, b) -> float | None:
    """Cosine similarity of two vectors, sparse (dict) or dense.

    Returns None (undefined) if either vector has zero norm; that state
    is deliberately distinct from a similarity of 0.  Dense inputs must
    have equal length.  Summation order is fixed (sorted dimensions for
    sparse input) so the result is symmetric and reproducible bit for
    bit.
    """
    if isinstance(a, dict) and isinstance(b, dict):
        return _cosine_sparse(a, b)
    if isinstance(a, dict) or isinstance(b, dict):
        raise TypeError("cannot mix sparse and dense vectors")
    return _cosine_dense(np.asarray(a, dtype=float),
                         np.asarray(b, dtype=float))


def _cosine_sparse(a: dict[int, float], b: dict[int, float]) -> float | None:
    norm_a = math.sqrt(math.fsum(a[d] * a[d] for d in sorted(a)))
    norm_b = math.sqrt(math.fsum(b[d] * b[d] for d in sorted(b)))
    if norm_a == 0.0 or norm_b == 0.0:
        return None
    shared = sorted(set(a) & set(b))
    dot = math.fsum(a[d] * b[d] for d in shared)
    return dot / (norm_a * norm_b)


def _cosine_dense(a: np.ndarray, b: np.ndarray) -> float | None:
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"vector dimensions differ: {a.shape} vs {b.shape}")
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        return None
    return float(np.dot(a, b)) / (norm_a * norm_b)


def ddc_similarity(v_i: DdcVector, v_j: DdcVector) -> float | None:
    """Cosine of two sparse vectors; None if either carries no evidence."""
    if v_i.fingerprint != v_j.fingerprint:
        raise VocabularyMismatchError(
            f"vectors built against different vocabularies: "
            f"{v_i.fingerprint} vs {v_j.fingerprint}")
    if not v_i.weights or not v_j.weights:
        return None
    return _cosine_sparse(v_i.weights, v_j.weights)


# ---------------------------------------------------------------------------
# Serialization

def save_vocabulary(vocab: FragmentVocabulary, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(vocab.serialize())


def load_vocabulary_fingerprint(path) -> str:
    """Fingerprint of a serialized vocabulary file (for artifact checks)."""
    with open(path, "rb") as f:
        return hashlib.blake2b(f.read(), digest_size=8).hexdigest()


def save_ddc_vectors(vectors: list[DdcVector], fingerprint: str, path) -> None:
    """``video_id<TAB>dim:weight,...`` lines under a fingerprint header."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"#fingerprint\t{fingerprint}\n")
        for v in vectors:
            cells = ",".join(f"{d}:{w!r}" for d, w in sorted(v.weights.items()))
            f.write(f"{v.video_id}\t{cells}\n")


def load_ddc_vectors(path) -> tuple[str, list[DdcVector]]:
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        parts = header.split("\t")
        if len(parts) != 2 or parts[0] != "#fingerprint":
            raise ParseError(path, 1, "missing fingerprint header")
        fingerprint = parts[1]
        vectors = []
        for line_no, line in enumerate(f, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ParseError(path, line_no, "expected id<TAB>weights")
            video_id, cells = fields
            weights: dict[int, float] = {}
            if cells:
                for cell in cells.split(","):
                    try:
                        dim_s, w_s = cell.split(":")
                        weights[int(dim_s)] = float(w_s)
                    except ValueError:
                        raise ParseError(path, line_no,
                                         f"bad weight cell {cell!r}") from None
            vectors.append(DdcVector(video_id=video_id, weights=weights,
                                     fingerprint=fingerprint))
    return fingerprint, vectors


__all__ = [
    "DdcVector", "FragmentVocabulary",
    "build_vocabulary", "cosine", "ddc_similarity", "term_frequency",
    "vectorize", "save_vocabulary", "load_vocabulary_fingerprint",
    "save_ddc_vectors", "load_ddc_vectors",
]

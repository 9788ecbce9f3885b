"""Shared fixtures: shipped data paths, corpus builders, random generators."""

from __future__ import annotations

import random
import shutil
import string
from pathlib import Path

import numpy as np
import pytest

from lodrec import (
    CorpusIndex,
    DocVector,
    EmbeddingTable,
    EnrichedVideo,
    ResolvedTag,
    Tag,
    VideoRecord,
    build_vocabulary,
    embed_video,
    load_corpus,
    load_snapshot,
    parse_code,
    vectorize,
)

REPO = Path(__file__).resolve().parents[1]
DATA = REPO / "data"
TOY = DATA / "toy"
RATINGS_CSV = DATA / "ratings_user_study.csv"


@pytest.fixture(scope="session")
def toy_corpus():
    return load_corpus(TOY / "corpus.jsonl")


@pytest.fixture(scope="session")
def toy_snapshot():
    return load_snapshot(TOY / "authority.tsv")


@pytest.fixture
def toy_run(tmp_path):
    """Writable copy of the toy data directory for pipeline/CLI tests."""
    run_dir = tmp_path / "toy"
    shutil.copytree(TOY, run_dir)
    return run_dir


def write_toy_config(tmp_path: Path, **overrides) -> Path:
    """Config pointing at the shipped toy inputs, index under tmp.

    An override of None drops the key from the file entirely.
    """
    values = {
        "corpus_path": str(TOY / "corpus.jsonl"),
        "snapshot_path": str(TOY / "authority.tsv"),
        "embeddings_path": str(TOY / "embeddings.txt"),
        "stoplist_path": str(TOY / "stoplist.txt"),
        "index_dir": "index",
        "language": "de",
        "k": "3",
        "threads": "1",
    }
    values.update(overrides)
    lines = ["# generated by the test suite"]
    lines += [f"{k} = {v}" for k, v in values.items() if v is not None]
    path = tmp_path / "config.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def make_enriched(video_codes: dict[str, list[list[str]]],
                  language: str = "de") -> list[EnrichedVideo]:
    """Enriched videos built directly: one resolved tag per inner code list."""
    out = []
    for vid, tag_code_lists in video_codes.items():
        tags = tuple(Tag(surface=f"t{i}", provenance="manual")
                     for i in range(len(tag_code_lists)))
        record = VideoRecord(id=vid, language=language, title="",
                             abstract="", tags=tags)
        resolved = [
            ResolvedTag(tag_index=i, gnd_id=f"gnd:{vid}-{i}",
                        ddc_codes=tuple(parse_code(c) for c in codes))
            for i, codes in enumerate(tag_code_lists)
        ]
        out.append(EnrichedVideo(video=record, resolved=resolved,
                                 unresolved_count=0))
    return out


def random_code(rng: random.Random) -> str:
    """A grammar-valid classification code, leading zeros allowed."""
    integer = "".join(rng.choices("0123456789", k=rng.randint(1, 3)))
    if rng.random() < 0.6:
        decimal = "".join(rng.choices("0123456789", k=rng.randint(1, 3)))
        return f"{integer}.{decimal}"
    return integer


_TOKEN_POOL = ["".join(p) for p in
               zip(string.ascii_lowercase, string.ascii_lowercase[1:])]


def random_embedding_table(rng: random.Random, dim: int = 8,
                           n_tokens: int = 20) -> EmbeddingTable:
    tokens = rng.sample(_TOKEN_POOL, n_tokens)
    vectors = {
        t: np.array([rng.uniform(-1, 1) for _ in range(dim)])
        for t in tokens
    }
    return EmbeddingTable(dim=dim, vectors=vectors)


def random_micro_index(rng: random.Random) -> CorpusIndex:
    """Small random corpus with both vector kinds, degenerate cases included.

    Bounds: at most 6 videos, 4 tags per video, 3 codes per tag.  Some
    videos get no resolvable codes and some get no in-table tokens, so
    both undefined branches occur.
    """
    table = random_embedding_table(rng)
    known_tokens = list(table.vectors)
    n_videos = rng.randint(2, 6)

    video_codes: dict[str, list[list[str]]] = {}
    records = []
    for v in range(n_videos):
        vid = f"v{v}"
        n_tags = rng.randint(0, 4)
        video_codes[vid] = [
            [random_code(rng) for _ in range(rng.randint(0, 3))]
            for _ in range(n_tags)
        ]
        if rng.random() < 0.2:
            words = ["zzzunknown"]  # out of table: degenerate doc vector
        else:
            words = rng.choices(known_tokens, k=rng.randint(1, 6))
        records.append(VideoRecord(
            id=vid, language="de", title=" ".join(words), abstract="",
            tags=tuple(Tag(surface=f"t{i}", provenance="manual")
                       for i in range(n_tags)),
        ))

    enriched = make_enriched(video_codes)
    vocab = build_vocabulary(enriched)
    ddc_vectors = {e.video.id: vectorize(e, vocab) for e in enriched}
    doc_vectors = {r.id: embed_video(r, table) for r in records}
    return CorpusIndex(ids=[r.id for r in records],
                       doc_vectors=doc_vectors, ddc_vectors=ddc_vectors)


def hierarchy_index() -> CorpusIndex:
    """Four videos with identical text and tiered code overlap.

    Pair (a1, a2) carries the same deep code, so its fragment vectors
    agree down to level 4.  Pair (b1, b2) shares only the level-1 class,
    which occurs in every video and therefore has idf 0.  Text metadata
    is identical everywhere, so only the fragment branch separates the
    pairs.
    """
    video_codes = {
        "a1": [["005.133"]],
        "a2": [["005.133"]],
        "b1": [["005.74"]],
        "b2": [["560"]],
    }
    enriched = make_enriched(video_codes)
    vocab = build_vocabulary(enriched)
    ddc_vectors = {e.video.id: vectorize(e, vocab) for e in enriched}

    dim = 4
    table = EmbeddingTable(dim=dim, vectors={
        "wissenschaft": np.array([0.5, 0.1, -0.3, 0.2]),
        "video": np.array([0.1, 0.4, 0.2, -0.1]),
    })
    doc_vectors = {}
    for vid in video_codes:
        record = VideoRecord(id=vid, language="de",
                             title="Wissenschaft Video", abstract="",
                             tags=())
        doc_vectors[vid] = embed_video(record, table)
    return CorpusIndex(ids=sorted(video_codes),
                       doc_vectors=doc_vectors, ddc_vectors=ddc_vectors)

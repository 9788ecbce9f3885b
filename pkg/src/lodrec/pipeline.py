"""Pipeline wiring: config file, index build, and index loading.

The config is a plain ``key = value`` text file (``#`` comments allowed);
relative paths are resolved against the config file's directory so a
committed config keeps working from any working directory.  ``index``
writes three artifacts into ``index_dir``:

    corpus.jsonl     normalized corpus (written by ingest)
    vocabulary.tsv   fragment per line, ``level<TAB>prefix``
    ddc_vectors.tsv  sparse tf-idf rows under a fingerprint header
    doc_vectors.tsv  mean word-vector cache

Artifact writes are deterministic: identical inputs give byte-identical
files, and the vocabulary fingerprint ties vector files to the
vocabulary they were built against.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import ddc
from .authority import load_snapshot, enrich
from .corpus import Corpus, load_corpus, save_corpus
from .ddc_vectors import (
    build_vocabulary,
    load_ddc_vectors,
    load_vocabulary_fingerprint,
    save_ddc_vectors,
    save_vocabulary,
    vectorize,
)
from .embeddings import (
    embed_video,
    load_doc_vectors,
    load_embeddings,
    load_stoplist,
    save_doc_vectors,
)
from .engine import CorpusIndex
from .errors import LodrecError, VocabularyMismatchError

CORPUS_FILE = "corpus.jsonl"
VOCABULARY_FILE = "vocabulary.tsv"
DDC_VECTORS_FILE = "ddc_vectors.tsv"
DOC_VECTORS_FILE = "doc_vectors.tsv"


class ConfigError(LodrecError):
    """The config file is missing, malformed, or violates an invariant."""


@dataclass
class PipelineConfig:
    corpus_path: Path
    snapshot_path: Path
    embeddings_path: Path
    index_dir: Path = Path("index")
    corpus_format: str = "jsonl"
    language: str | None = None
    fragmentation_mode: str = ddc.DEFAULT_MODE
    w_text: float = 0.5
    w_ddc: float = 0.5
    k: int = 10
    limit_embeddings: int | None = None
    stoplist_path: Path | None = None
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)

    def validate(self) -> None:
        if self.w_text < 0 or self.w_ddc < 0 or self.w_text + self.w_ddc <= 0:
            raise ConfigError(
                "weights must be non-negative with a positive sum")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if self.fragmentation_mode not in ddc.MODES:
            raise ConfigError(
                f"fragmentation_mode must be one of {', '.join(ddc.MODES)}")
        if self.corpus_format not in ("jsonl", "ntriples"):
            raise ConfigError("corpus_format must be jsonl or ntriples")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    @property
    def weights(self) -> tuple[float, float]:
        return (self.w_text, self.w_ddc)


_PATH_KEYS = {"corpus_path", "snapshot_path", "embeddings_path",
              "index_dir", "stoplist_path"}
_REQUIRED_KEYS = ("corpus_path", "snapshot_path", "embeddings_path")


def load_config(path) -> PipelineConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    base = path.resolve().parent
    raw: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{line_no}: expected key = value")
            key, _, value = stripped.partition("=")
            raw[key.strip()] = value.strip()

    for key in _REQUIRED_KEYS:
        if key not in raw or not raw[key]:
            raise ConfigError(f"{path}: missing required key {key!r}")

    kwargs: dict = {}
    for key, value in raw.items():
        if key in _PATH_KEYS:
            kwargs[key] = (base / value).resolve() if value else None
        elif key in ("w_text", "w_ddc"):
            kwargs[key] = float(value)
        elif key in ("k", "threads", "limit_embeddings"):
            kwargs[key] = int(value)
        elif key in ("language", "fragmentation_mode", "corpus_format"):
            kwargs[key] = value
        else:
            raise ConfigError(f"{path}: unknown config key {key!r}")
    config = PipelineConfig(**kwargs)
    config.validate()
    return config


def override_config(config: PipelineConfig, **overrides) -> PipelineConfig:
    """Copy with CLI-flag overrides applied (flags win over the file)."""
    changed = {k: v for k, v in overrides.items() if v is not None}
    updated = replace(config, **changed)
    updated.validate()
    return updated


def run_ingest(config: PipelineConfig) -> dict:
    """Load, validate, filter, and persist the normalized corpus."""
    corpus = load_corpus(config.corpus_path, format=config.corpus_format,
                         language_filter=config.language)
    config.index_dir.mkdir(parents=True, exist_ok=True)
    save_corpus(corpus, config.index_dir / CORPUS_FILE)
    return {
        "read": len(corpus) + corpus.dropped_count,
        "retained": len(corpus),
        "dropped_language": corpus.dropped_count,
        "language_filter": config.language,
        "corpus_file": str(config.index_dir / CORPUS_FILE),
    }


def _load_normalized_corpus(config: PipelineConfig) -> Corpus:
    corpus_file = config.index_dir / CORPUS_FILE
    if not corpus_file.exists():
        raise LodrecError(
            f"normalized corpus not found at {corpus_file}; run ingest first")
    return load_corpus(corpus_file, format="jsonl",
                       language_filter=config.language)


def run_index(config: PipelineConfig) -> dict:
    """Build and write all index artifacts; reruns are byte-identical."""
    corpus = _load_normalized_corpus(config)
    snapshot = load_snapshot(config.snapshot_path)
    enriched = enrich(corpus, snapshot)

    vocab = build_vocabulary(enriched, mode=config.fragmentation_mode)
    ddc_vectors = [vectorize(v, vocab) for v in enriched]

    table = load_embeddings(config.embeddings_path,
                            limit=config.limit_embeddings)
    stopwords = (load_stoplist(config.stoplist_path)
                 if config.stoplist_path else None)
    doc_vectors = [embed_video(r, table, stopwords) for r in corpus.records]

    config.index_dir.mkdir(parents=True, exist_ok=True)
    save_vocabulary(vocab, config.index_dir / VOCABULARY_FILE)
    save_ddc_vectors(ddc_vectors, vocab.fingerprint(),
                     config.index_dir / DDC_VECTORS_FILE)
    save_doc_vectors(doc_vectors, config.index_dir / DOC_VECTORS_FILE)

    resolved = sum(len(v.resolved) for v in enriched)
    unresolved = sum(v.unresolved_count for v in enriched)
    return {
        "videos": len(corpus),
        "vocabulary_size": len(vocab),
        "fingerprint": vocab.fingerprint(),
        "resolved_tags": resolved,
        "unresolved_tags": unresolved,
        "videos_without_codes": sum(1 for v in ddc_vectors if not v.weights),
        "degenerate_doc_vectors": sum(1 for v in doc_vectors if v.degenerate),
        "embedding_dim": table.dim,
        "index_dir": str(config.index_dir),
    }


def load_index(config: PipelineConfig) -> CorpusIndex:
    """Load artifacts back into a scoring index, checking fingerprints."""
    corpus = _load_normalized_corpus(config)
    vocab_file = config.index_dir / VOCABULARY_FILE
    if not vocab_file.exists():
        raise LodrecError(f"index artifact missing: {vocab_file}; "
                          "run index first")
    vocab_fp = load_vocabulary_fingerprint(vocab_file)
    vector_fp, ddc_vectors = load_ddc_vectors(
        config.index_dir / DDC_VECTORS_FILE)
    if vector_fp != vocab_fp:
        raise VocabularyMismatchError(
            f"vector file fingerprint {vector_fp} does not match "
            f"vocabulary file fingerprint {vocab_fp}; artifacts are from "
            "different runs")
    doc_vectors = load_doc_vectors(config.index_dir / DOC_VECTORS_FILE)
    return CorpusIndex(
        ids=corpus.ids(),
        doc_vectors={v.video_id: v for v in doc_vectors},
        ddc_vectors={v.video_id: v for v in ddc_vectors},
        weights=config.weights,
    )


__all__ = [
    "CORPUS_FILE", "DDC_VECTORS_FILE", "DOC_VECTORS_FILE", "VOCABULARY_FILE",
    "ConfigError", "PipelineConfig",
    "load_config", "load_index", "override_config", "run_index", "run_ingest",
]

"""Fragment vocabulary, tf-idf vectors, and cosine similarity."""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from lodrec import (
    DimensionMismatchError,
    Fragment,
    VocabularyMismatchError,
    build_vocabulary,
    cosine,
    ddc_similarity,
    enrich,
    load_ddc_vectors,
    save_ddc_vectors,
    save_vocabulary,
    term_frequency,
    vectorize,
)
from lodrec.ddc_vectors import _cosine_sparse
from lodrec.errors import ParseError

from conftest import make_enriched

WORKED_EXAMPLE = ["5@1", "51@2", "57@2", "513@3", "574@3", "5133@4"]


@pytest.fixture(scope="module")
def toy_enriched(toy_corpus, toy_snapshot):
    return enrich(toy_corpus, toy_snapshot)


class TestBuildVocabulary:
    def test_two_code_corpus_has_six_fragments(self):
        enriched = make_enriched({"v1": [["005.74", "005.133"]]})
        vocab = build_vocabulary(enriched)
        assert [str(f) for f in vocab.fragments] == WORKED_EXAMPLE

    def test_empty_input(self):
        assert len(build_vocabulary([])) == 0

    def test_duplicate_code_across_videos(self):
        enriched = make_enriched({"v1": [["005.74"]], "v2": [["005.74"]]})
        vocab = build_vocabulary(enriched)
        assert [str(f) for f in vocab.fragments] == ["5@1", "57@2", "574@3"]
        assert vocab.df[Fragment(3, "574")] == 2

    def test_permutation_invariance(self, toy_enriched):
        rng = random.Random(3)
        reference = build_vocabulary(toy_enriched)
        for _ in range(5):
            shuffled = toy_enriched[:]
            rng.shuffle(shuffled)
            permuted = build_vocabulary(shuffled)
            assert permuted.fragments == reference.fragments
            assert permuted.df == reference.df
            assert permuted.fingerprint() == reference.fingerprint()

    def test_df_bounds_and_index_bijection(self, toy_enriched):
        vocab = build_vocabulary(toy_enriched)
        assert sorted(vocab.index.values()) == list(range(len(vocab)))
        for fragment in vocab.fragments:
            assert 1 <= vocab.df[fragment] <= vocab.n_docs

    def test_n_docs_counts_codeless_videos(self):
        enriched = make_enriched({"v1": [["005.74"]], "v2": []})
        assert build_vocabulary(enriched).n_docs == 2


class TestTermFrequency:
    def test_both_codes_contribute_shared_prefix(self):
        enriched = make_enriched({"v1": [["005.74", "005.133"]]})
        vocab = build_vocabulary(enriched)
        assert term_frequency(enriched[0], Fragment(1, "5"), vocab) == 2

    def test_deep_fragment_counted_once(self):
        enriched = make_enriched({"v1": [["005.74", "005.133"]]})
        vocab = build_vocabulary(enriched)
        assert term_frequency(enriched[0], Fragment(4, "5133"), vocab) == 1

    def test_video_without_tags_counts_zero(self):
        enriched = make_enriched({"v1": [["005.74"]], "v2": []})
        vocab = build_vocabulary(enriched)
        assert term_frequency(enriched[1], Fragment(1, "5"), vocab) == 0

    def test_unknown_fragment_rejected(self):
        enriched = make_enriched({"v1": [["005.74"]]})
        vocab = build_vocabulary(enriched)
        with pytest.raises(KeyError):
            term_frequency(enriched[0], Fragment(1, "9"), vocab)


class TestVectorize:
    def test_everywhere_fragment_gets_no_weight(self):
        enriched = make_enriched({"v1": [["005.74"]], "v2": [["005.133"]]})
        vocab = build_vocabulary(enriched)
        shared_dim = vocab.index[Fragment(1, "5")]
        for e in enriched:
            assert shared_dim not in vectorize(e, vocab).weights

    def test_unique_fragment_weight_is_ln2(self):
        enriched = make_enriched({"v1": [["005.74"]], "v2": [["005.133"]]})
        vocab = build_vocabulary(enriched)
        v1 = vectorize(enriched[0], vocab)
        assert v1.weights[vocab.index[Fragment(3, "574")]] == math.log(2)

    def test_codeless_video_yields_empty_vector(self):
        enriched = make_enriched({"v1": [["005.74"]], "v2": []})
        vocab = build_vocabulary(enriched)
        empty = vectorize(enriched[1], vocab)
        assert empty.weights == {}
        assert not empty

    def test_weights_positive_dims_in_range(self, toy_enriched):
        vocab = build_vocabulary(toy_enriched)
        for e in toy_enriched:
            vector = vectorize(e, vocab)
            assert vector.fingerprint == vocab.fingerprint()
            for dim, weight in vector.weights.items():
                assert 0 <= dim < len(vocab)
                assert weight > 0

    def test_tf_reflects_tag_multiplicity(self):
        enriched = make_enriched({"v1": [["005.74"], ["005.74"]],
                                  "v2": [["005.133"]]})
        vocab = build_vocabulary(enriched)
        v1 = vectorize(enriched[0], vocab)
        assert v1.weights[vocab.index[Fragment(3, "574")]] == 2 * math.log(2)

    def test_foreign_fragments_skipped_and_counted(self):
        vocab = build_vocabulary(make_enriched({"v1": [["005.74"]]}))
        outsider = make_enriched({"v9": [["530.12", "005.74"]]})[0]
        vector = vectorize(outsider, vocab)
        assert vector.unknown_fragments == 4  # 53, 530, 5301, 53012
        assert vector.weights == {}  # known fragments all have df = n_docs


class TestCosine:
    def test_self_similarity_is_one(self):
        rng = random.Random(5)
        for _ in range(20):
            dense = np.array([rng.uniform(-2, 2) for _ in range(6)])
            sparse = {i: x for i, x in enumerate(dense) if x}
            assert abs(cosine(dense, dense) - 1.0) < 1e-12
            assert abs(cosine(sparse, sparse) - 1.0) < 1e-12

    def test_orthogonal_vectors(self):
        assert cosine(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0
        assert cosine({0: 1.0}, {1: 1.0}) == 0.0

    def test_reference_value(self):
        value = cosine(np.array([1.0, 2.0, 3.0]), np.array([4.0, 5.0, 6.0]))
        assert value == pytest.approx(0.9746318461970762, abs=1e-12)
        sparse = cosine({0: 1.0, 1: 2.0, 2: 3.0}, {0: 4.0, 1: 5.0, 2: 6.0})
        assert sparse == pytest.approx(0.9746318461970762, abs=1e-12)

    def test_zero_norm_is_undefined_not_zero(self):
        assert cosine(np.zeros(3), np.ones(3)) is None
        assert cosine({}, {0: 1.0}) is None
        assert cosine({}, {}) is None

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            cosine(np.ones(3), np.ones(4))

    def test_sparse_dense_mix_rejected(self):
        with pytest.raises(TypeError):
            cosine({0: 1.0}, np.ones(2))

    def test_sparse_matches_dense_brute_force(self):
        rng = random.Random(17)
        for _ in range(100):
            n_dims = rng.randint(1, 50)
            a = {d: rng.uniform(0.01, 3)
                 for d in rng.sample(range(n_dims), rng.randint(1, n_dims))}
            b = {d: rng.uniform(0.01, 3)
                 for d in rng.sample(range(n_dims), rng.randint(1, n_dims))}
            dense_a, dense_b = np.zeros(n_dims), np.zeros(n_dims)
            for d, x in a.items():
                dense_a[d] = x
            for d, x in b.items():
                dense_b[d] = x
            expected = (dense_a @ dense_b) / (
                np.linalg.norm(dense_a) * np.linalg.norm(dense_b))
            assert abs(_cosine_sparse(a, b) - expected) < 1e-10

    def test_sparse_summation_is_symmetric_bitwise(self):
        rng = random.Random(23)
        for _ in range(50):
            a = {d: rng.uniform(0.01, 3) for d in rng.sample(range(30), 10)}
            b = {d: rng.uniform(0.01, 3) for d in rng.sample(range(30), 10)}
            assert _cosine_sparse(a, b) == _cosine_sparse(b, a)


class TestDdcSimilarity:
    def test_identical_vectors(self):
        enriched = make_enriched({"v1": [["005.74"]], "v2": [["005.74"]],
                                  "v3": [["530"]]})
        vocab = build_vocabulary(enriched)
        v1, v2 = (vectorize(e, vocab) for e in enriched[:2])
        assert ddc_similarity(v1, v2) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_supports(self):
        enriched = make_enriched({"v1": [["230"]], "v2": [["530"]]})
        vocab = build_vocabulary(enriched)
        v1, v2 = (vectorize(e, vocab) for e in enriched)
        assert ddc_similarity(v1, v2) == 0.0

    def test_empty_vector_is_undefined(self):
        enriched = make_enriched({"v1": [["005.74"]], "v2": []})
        vocab = build_vocabulary(enriched)
        v1, v2 = (vectorize(e, vocab) for e in enriched)
        assert ddc_similarity(v1, v2) is None

    def test_fingerprint_mismatch_rejected(self):
        first = make_enriched({"v1": [["005.74"]], "v2": [["530"]]})
        second = make_enriched({"v1": [["005.74"]], "v2": [["612"]]})
        v_first = vectorize(first[0], build_vocabulary(first))
        v_second = vectorize(second[1], build_vocabulary(second))
        with pytest.raises(VocabularyMismatchError):
            ddc_similarity(v_first, v_second)

    def test_deep_overlap_beats_shallow_overlap(self):
        # a-pair shares levels 1-3, b-pair only level 1 (which is universal
        # here, hence idf 0): specific shared ancestry must score higher.
        enriched = make_enriched({
            "a1": [["005.74"]], "a2": [["005.745"]],
            "b1": [["530"]], "b2": [["560"]],
        })
        vocab = build_vocabulary(enriched)
        vectors = {e.video.id: vectorize(e, vocab) for e in enriched}
        deep = ddc_similarity(vectors["a1"], vectors["a2"])
        shallow = ddc_similarity(vectors["b1"], vectors["b2"])
        assert deep > shallow
        assert shallow == 0.0

    def test_symmetric_and_in_unit_interval(self, toy_enriched):
        vocab = build_vocabulary(toy_enriched)
        vectors = [vectorize(e, vocab) for e in toy_enriched]
        for i, v_i in enumerate(vectors):
            for v_j in vectors[i:]:
                s = ddc_similarity(v_i, v_j)
                assert s == ddc_similarity(v_j, v_i)
                if s is not None:
                    assert -1e-12 <= s <= 1 + 1e-12

    def test_tf_scaling_invariance(self):
        base = make_enriched({"v1": [["005.74"], ["510"]],
                              "v2": [["005.133"], ["510"]]})
        tripled = make_enriched({"v1": [["005.74"]] * 3 + [["510"]] * 3,
                                 "v2": [["005.133"]] * 3 + [["510"]] * 3})
        s_base = ddc_similarity(*(vectorize(e, build_vocabulary(base))
                                  for e in base))
        s_tripled = ddc_similarity(*(vectorize(e, build_vocabulary(tripled))
                                     for e in tripled))
        assert s_tripled == pytest.approx(s_base, abs=1e-12)


class TestSerialization:
    def test_vocabulary_file_has_one_line_per_fragment(self, tmp_path):
        enriched = make_enriched({"v1": [["005.74", "005.133"]]})
        vocab = build_vocabulary(enriched)
        out = tmp_path / "vocab.tsv"
        save_vocabulary(vocab, out)
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines == ["1\t5", "2\t51", "2\t57", "3\t513", "3\t574",
                         "4\t5133"]

    def test_vector_round_trip_is_exact(self, tmp_path, toy_enriched):
        vocab = build_vocabulary(toy_enriched)
        vectors = [vectorize(e, vocab) for e in toy_enriched]
        out = tmp_path / "vectors.tsv"
        save_ddc_vectors(vectors, vocab.fingerprint(), out)
        fingerprint, reloaded = load_ddc_vectors(out)
        assert fingerprint == vocab.fingerprint()
        assert [(v.video_id, v.weights) for v in reloaded] == \
            [(v.video_id, v.weights) for v in vectors]

    def test_missing_header_rejected(self, tmp_path):
        out = tmp_path / "vectors.tsv"
        out.write_text("v1\t0:1.0\n", encoding="utf-8")
        with pytest.raises(ParseError, match="fingerprint"):
            load_ddc_vectors(out)

    def test_bad_weight_cell_names_line(self, tmp_path):
        out = tmp_path / "vectors.tsv"
        out.write_text("#fingerprint\tabc\nv1\t0:x\n", encoding="utf-8")
        with pytest.raises(ParseError, match=r":2:"):
            load_ddc_vectors(out)

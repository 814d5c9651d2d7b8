"""Correlation, agreement, human-score and classification arithmetic."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intent_eval import (
    average_ranks,
    classification_scores,
    cohen_kappa,
    confusion_matrix,
    correlation_matrix,
    cross_dataset_average,
    human_score,
    pearson,
    rank_series,
    spearman,
)
from intent_eval.errors import (
    DegenerateSeries,
    DomainError,
    EmptyList,
    LengthMismatch,
)

from oracles import (
    classification_oracle,
    kappa_oracle,
    pearson_oracle,
    ranks_oracle,
    spearman_oracle,
)


def distinct_series(min_size=2, max_size=30):
    # integer-valued so strictly increasing float transforms stay strictly
    # increasing (extreme floats can collapse under v**3 or arctan)
    return st.lists(
        st.integers(-10 ** 6, 10 ** 6).map(float), min_size=min_size,
        max_size=max_size, unique=True)


class TestRanks:
    def test_plain(self):
        np.testing.assert_array_equal(average_ranks([10.0, 30.0, 20.0]),
                                      [1.0, 3.0, 2.0])

    def test_ties_get_mean_rank(self):
        np.testing.assert_array_equal(average_ranks([1.0, 2.0, 2.0, 3.0]),
                                      [1.0, 2.5, 2.5, 4.0])

    @given(st.lists(st.floats(-100, 100, allow_nan=False), min_size=1, max_size=40))
    def test_matches_oracle_and_sums(self, values):
        got = average_ranks(values)
        np.testing.assert_allclose(got, ranks_oracle(values), atol=1e-12)
        n = len(values)
        assert got.sum() == pytest.approx(n * (n + 1) / 2, abs=1e-9)

    def test_rank_series_type(self):
        rs = rank_series([3.0, 1.0, 2.0])
        assert rs.ranks == (3.0, 1.0, 2.0)


class TestSpearmanPearson:
    def test_identity(self):
        assert spearman([1, 2, 3, 4], [1, 2, 3, 4]) == 1.0

    def test_reversal(self):
        assert spearman([1, 2, 3, 4], [4, 3, 2, 1]) == -1.0

    def test_tied_case_vs_oracle(self):
        x, y = [1, 2, 2, 3], [1, 3, 2, 4]
        assert spearman(x, y) == pytest.approx(spearman_oracle(x, y), abs=1e-12)

    def test_pearson_affine_invariance(self):
        x = [1.0, 2.0, 5.0, 3.0]
        assert pearson(x, x) == 1.0
        assert pearson(x, [2 * v + 3 for v in x]) == pytest.approx(1.0, abs=1e-12)

    def test_pearson_five_points_vs_covariance_formula(self):
        x = [1.0, 2.0, 4.0, 4.5, 7.0]
        y = [2.0, 0.5, 3.0, 5.0, 4.0]
        assert pearson(x, y) == pytest.approx(pearson_oracle(x, y), abs=1e-12)

    def test_errors(self):
        with pytest.raises(LengthMismatch):
            spearman([1, 2], [1, 2, 3])
        with pytest.raises(LengthMismatch):
            spearman([1], [1])
        with pytest.raises(DegenerateSeries):
            spearman([2, 2, 2], [1, 2, 3])
        with pytest.raises(DegenerateSeries):
            pearson([1, 2, 3], [5, 5, 5])

    @given(distinct_series(3, 20), st.integers(0, 2 ** 31 - 1))
    @settings(max_examples=150)
    def test_monotone_transform_invariance(self, x, seed):
        rng = np.random.default_rng(seed)
        y = rng.standard_normal(len(x)).tolist()
        if len(set(y)) < 2:
            return
        base = spearman(x, y)
        for f in (lambda v: 3 * v + 1, lambda v: v ** 3, np.arctan):
            fx = [float(f(v)) for v in x]
            assert spearman(fx, y) == pytest.approx(base, abs=1e-12)

    @given(distinct_series(2, 20), distinct_series(2, 20))
    def test_symmetry_and_bounds(self, x, y):
        n = min(len(x), len(y))
        x, y = x[:n], y[:n]
        if n < 2:
            return
        s1, s2 = spearman(x, y), spearman(y, x)
        assert s1 == pytest.approx(s2, abs=1e-12)
        assert -1.0 <= s1 <= 1.0
        p1, p2 = pearson(x, y), pearson(y, x)
        assert p1 == pytest.approx(p2, abs=1e-12)
        assert -1.0 <= p1 <= 1.0


class TestCorrelationMatrix:
    def test_identical_series(self):
        names, mat = correlation_matrix({"a": [1, 2, 3], "b": [1, 2, 3]})
        assert names == ("a", "b")
        np.testing.assert_array_equal(mat, [[1.0, 1.0], [1.0, 1.0]])

    def test_negation(self):
        _, mat = correlation_matrix({"a": [1, 2, 3], "b": [-1, -2, -3]})
        assert mat[0, 1] == -1.0

    def test_symmetric_unit_diagonal(self):
        rng = np.random.default_rng(3)
        series = {f"m{i}": rng.standard_normal(12).tolist() for i in range(3)}
        _, mat = correlation_matrix(series)
        assert np.array_equal(mat, mat.T)
        assert np.array_equal(np.diag(mat), np.ones(3))
        # recompute pairwise
        keys = list(series)
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert mat[i, j] == pytest.approx(
                        pearson(series[keys[i]], series[keys[j]]), abs=1e-12)

    def test_spearman_variant(self):
        _, mat = correlation_matrix(
            {"a": [1, 2, 3], "b": [10, 200, 3000]}, method="spearman")
        assert mat[0, 1] == 1.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            correlation_matrix({"a": [1, 2, 3], "b": [1, 2]})


class TestCohenKappa:
    def test_identical(self):
        assert cohen_kappa(list("xxyyz"), list("xxyyz")) == 1.0

    def test_half_agreement_construction(self):
        # p_o = 0.5 and p_e = 0.5 by symmetric marginals
        assert cohen_kappa(list("xxyy"), list("xyxy")) == 0.0

    def test_random_vs_oracle(self):
        rng = np.random.default_rng(17)
        labels = ["p", "q", "r"]
        a = [labels[i] for i in rng.integers(0, 3, size=50)]
        b = [labels[i] for i in rng.integers(0, 3, size=50)]
        assert cohen_kappa(a, b) == pytest.approx(kappa_oracle(a, b), abs=1e-12)

    def test_never_exceeds_one(self):
        rng = np.random.default_rng(18)
        for _ in range(50):
            a = [str(i) for i in rng.integers(0, 4, size=20)]
            b = [str(i) for i in rng.integers(0, 4, size=20)]
            assert cohen_kappa(a, b) <= 1.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            cohen_kappa(["a"], ["a", "b"])


class TestHumanScore:
    def test_examples(self):
        assert human_score(4, 2) == 3.0
        assert human_score(5, 5) == 5.0
        assert human_score(3, 4) == 3.5

    def test_domain(self):
        with pytest.raises(DomainError):
            human_score(0, 3)
        with pytest.raises(DomainError):
            human_score(3, 6)

    def test_judgment_record(self):
        from intent_eval import HumanJudgment

        j = HumanJudgment(doc_id="d", method="m", annotator_id="a1",
                          relevance=4, readability=2)
        assert j.human_score == 3.0
        with pytest.raises(DomainError):
            HumanJudgment(doc_id="d", method="m", annotator_id="a1",
                          relevance=6, readability=2)
        with pytest.raises(DomainError):
            HumanJudgment(doc_id="d", method="m", annotator_id="a1",
                          relevance=3, readability=0)


class TestCrossDatasetAverage:
    def test_relevance_headline(self):
        assert cross_dataset_average([0.42, -0.05]) == pytest.approx(
            0.185, abs=1e-15)

    def test_human_score_headline(self):
        assert cross_dataset_average([0.34, -0.04]) == pytest.approx(
            0.15, abs=1e-15)

    def test_singleton(self):
        assert cross_dataset_average([0.37]) == 0.37

    def test_empty(self):
        with pytest.raises(EmptyList):
            cross_dataset_average([])


class TestClassificationScores:
    def test_perfect(self):
        got = classification_scores(["a", "b", "a"], ["a", "b", "a"])
        assert got.accuracy == 1.0 and got.macro_f1 == 1.0

    def test_binary_half(self):
        got = classification_scores(list("AABB"), list("ABAB"))
        assert got.accuracy == 0.5
        assert got.per_class["A"]["f1"] == 0.5
        assert got.per_class["B"]["f1"] == 0.5
        assert got.macro_f1 == 0.5

    def test_twenty_item_vs_oracle(self):
        rng = np.random.default_rng(23)
        labels = ["corr", "land", "murd", "robb"]
        pred = [labels[i] for i in rng.integers(0, 4, size=20)]
        gold = [labels[i] for i in rng.integers(0, 4, size=20)]
        got = classification_scores(pred, gold)
        acc, macro, f1s = classification_oracle(pred, gold)
        assert got.accuracy == pytest.approx(acc, abs=1e-12)
        assert got.macro_f1 == pytest.approx(macro, abs=1e-12)
        for lab, f1 in f1s.items():
            assert got.per_class[lab]["f1"] == pytest.approx(f1, abs=1e-12)

    def test_accuracy_equals_confusion_trace(self):
        pred, gold = list("aabbcc"), list("abacbc")
        got = classification_scores(pred, gold)
        cm = confusion_matrix(pred, gold)
        assert got.accuracy == np.trace(cm.counts) / len(pred)

    def test_relabeling_invariance(self):
        pred, gold = list("aabbcc"), list("abacbc")
        mapping = {"a": "z", "b": "y", "c": "x"}
        base = classification_scores(pred, gold)
        renamed = classification_scores([mapping[p] for p in pred],
                                        [mapping[g] for g in gold])
        assert renamed.macro_f1 == pytest.approx(base.macro_f1, abs=1e-15)
        assert renamed.accuracy == base.accuracy

    def test_absent_class_excluded(self):
        got = classification_scores(["a", "a"], ["a", "a"],
                                    labels=["a", "b"])
        assert "b" not in got.per_class
        assert got.macro_f1 == 1.0

    def test_zero_pr_class_scores_zero_f1(self):
        got = classification_scores(["a", "a"], ["b", "b"])
        assert got.per_class["a"]["f1"] == 0.0
        assert got.per_class["b"]["f1"] == 0.0
        assert got.macro_f1 == 0.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            classification_scores(["a"], ["a", "b"])

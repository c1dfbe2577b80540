from decimal import Decimal

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from compindex.errors import DegenerateWeightsError, DomainError, ShapeError, ValidationError
from compindex.preprocess import JudgmentMatrix
from compindex.scoring import (
    IMPACT_5BAND,
    US_4BAND,
    GradeScale,
    ScoreCard,
    assign_grade,
    evaluate,
    rank_objects,
    round_half_up,
    weighted_total_score,
)

US_WEIGHTS_PCT = [12.34, 11.41, 10.35, 10.01, 8.31, 8.20, 8.35, 8.20, 8.14, 7.41, 7.28]


def card(name, score):
    return ScoreCard(name, score / 100, score, "x")


class TestWeightedTotal:
    def test_max_row(self):
        assert weighted_total_score([[1, 1]], [0.5, 0.5])[0] == 1.0

    def test_min_row(self):
        assert weighted_total_score([[0, 0]], [0.5, 0.5])[0] == 0.0

    def test_published_weights_sum_to_one(self):
        w = [p / 100 for p in US_WEIGHTS_PCT]
        assert weighted_total_score([[1.0] * 11], w)[0] == pytest.approx(1.0, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            weighted_total_score([[1, 1, 1]], [0.5, 0.5])

    @given(
        st.lists(st.floats(0.01, 1), min_size=2, max_size=8),
        st.data(),
    )
    def test_monotone(self, w, data):
        w = np.asarray(w) / np.sum(w)
        n = w.size
        row = np.array(data.draw(st.lists(st.floats(0, 1), min_size=n, max_size=n)))
        j = data.draw(st.integers(0, n - 1))
        bump = data.draw(st.floats(0, 1))
        higher = row.copy()
        higher[j] = min(1.0, row[j] + bump)
        assert weighted_total_score([higher], w)[0] >= weighted_total_score([row], w)[0]


class TestGrades:
    def test_us_scores_grade_good(self):
        assert assign_grade(62.23, US_4BAND) == "Good"
        assert assign_grade(71.02, US_4BAND) == "Good"

    def test_impact_scores_grade_two(self):
        assert assign_grade(67.20, IMPACT_5BAND) == "II"
        assert assign_grade(76.92, IMPACT_5BAND) == "II"

    @pytest.mark.parametrize("scale", [US_4BAND, IMPACT_5BAND])
    def test_extremes(self, scale):
        assert assign_grade(0, scale) == scale.bands[0].label
        assert assign_grade(100, scale) == scale.bands[-1].label

    def test_upper_inclusive(self):
        assert assign_grade(20, US_4BAND) == "Very bad"
        assert assign_grade(20.000001, US_4BAND) == "Poor"
        assert assign_grade(40, IMPACT_5BAND) == "IV"
        assert assign_grade(80, IMPACT_5BAND) == "II"

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            assign_grade(100.5)
        with pytest.raises(DomainError):
            assign_grade(-0.1)

    @pytest.mark.parametrize("scale", [US_4BAND, IMPACT_5BAND])
    def test_totality(self, scale):
        for i in range(10001):
            s = i / 100
            hits = [
                b.label for k, b in enumerate(scale.bands)
                if (b.lower < s <= b.upper) or (k == 0 and s == b.lower)
            ]
            assert len(hits) == 1
            assert assign_grade(s, scale) == hits[0]

    def test_scale_overlap(self):
        with pytest.raises(ValidationError, match="overlap"):
            GradeScale(((0, 30, "a"), (20, 100, "b")))

    def test_scale_gap(self):
        with pytest.raises(ValidationError, match="gap"):
            GradeScale(((0, 30, "a"), (40, 100, "b")))

    def test_scale_coverage(self):
        with pytest.raises(ValidationError, match="cover"):
            GradeScale(((0, 30, "a"), (30, 90, "b")))


class TestRounding:
    @pytest.mark.parametrize(
        "raw,shown",
        [(0.622328, "62.23"), (0.710164, "71.02"), (0.6720, "67.20"), (0.7692, "76.92")],
    )
    def test_published_pairs(self, raw, shown):
        assert str(round_half_up(raw * 100)) == shown

    def test_half_goes_up(self):
        assert round_half_up(0.125) == Decimal("0.13")
        assert round_half_up(2.675) == Decimal("2.68")


class TestRanking:
    def test_published_order(self):
        ranked = rank_objects([card("Trump", 62.23), card("Biden", 71.02)])
        assert [(c.object, c.rank) for c in ranked] == [("Biden", 1), ("Trump", 2)]

    def test_ties_share_rank(self):
        ranked = rank_objects([card("a", 50.0), card("b", 50.0)])
        assert [(c.object, c.rank) for c in ranked] == [("a", 1), ("b", 1)]

    def test_single(self):
        assert rank_objects([card("a", 10.0)])[0].rank == 1

    def test_empty(self):
        with pytest.raises(ValidationError):
            rank_objects([])

    @given(st.lists(st.integers(0, 5), min_size=1, max_size=20))
    def test_dense(self, scores):
        ranked = rank_objects([card(str(i), float(s)) for i, s in enumerate(scores)])
        ranks = [c.rank for c in ranked]
        assert ranks[0] == 1
        assert all(b - a in (0, 1) for a, b in zip(ranks, ranks[1:]))
        assert max(ranks) == len(set(scores))
        # ties keep input order
        for a, b in zip(ranked, ranked[1:]):
            if a.scaled_score == b.scaled_score:
                assert int(a.object) < int(b.object)


class TestEvaluate:
    def test_toy(self):
        x = JudgmentMatrix.from_array([[0, 0], [10, 4]], objects=["low", "high"])
        cards = evaluate(x, US_4BAND)
        assert [c.object for c in cards] == ["high", "low"]
        assert [c.scaled_score for c in cards] == [100.0, 0.0]
        assert [c.grade for c in cards] == ["Very good", "Very bad"]
        assert [c.rank for c in cards] == [1, 2]

    def test_identical_objects(self):
        x = JudgmentMatrix.from_array([[1, 2, 3], [1, 2, 3]])
        with pytest.raises(DegenerateWeightsError):
            evaluate(x)

    def test_random_smoke(self, rng):
        x = JudgmentMatrix.from_array(rng.uniform(0, 100, size=(8, 11)))
        cards = evaluate(x, IMPACT_5BAND)
        assert len(cards) == 8
        assert all(c.grade in IMPACT_5BAND.labels for c in cards)
        assert all(0 <= c.raw_score <= 1 for c in cards)

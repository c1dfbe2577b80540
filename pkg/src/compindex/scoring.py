"""
Weighted total scores, 0-100 scaling, grade bands and dense ranking.
"""

from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence, Tuple

import numpy as np

from .entropy import weights_from_normalized
from .errors import DomainError, ShapeError, ValidationError
from .preprocess import minmax_normalize


@dataclass(frozen=True)
class GradeBand:
    lower: float
    upper: float
    label: str


@dataclass(frozen=True)
class GradeScale:
    """Contiguous bands covering [0, 100].

    A score belongs to the band with ``lower < score <= upper``; the lowest
    band also takes its lower bound, so 0 is graded.
    """

    bands: Tuple[GradeBand, ...]
    name: str = "custom"

    def __post_init__(self):
        bands = tuple(b if isinstance(b, GradeBand) else GradeBand(*b) for b in self.bands)
        object.__setattr__(self, "bands", bands)
        if not bands:
            raise ValidationError("grade scale needs at least one band")
        for b in bands:
            if not b.lower < b.upper:
                raise ValidationError(f"band {b.label!r}: lower {b.lower} must be < upper {b.upper}")
        ordered = sorted(bands, key=lambda b: b.lower)
        if ordered[0].lower != 0 or ordered[-1].upper != 100:
            raise ValidationError("grade bands must cover [0, 100] exactly")
        for prev, nxt in zip(ordered, ordered[1:]):
            if nxt.lower < prev.upper:
                raise ValidationError(
                    f"bands {prev.label!r} and {nxt.label!r} overlap "
                    f"([{prev.lower}, {prev.upper}] vs [{nxt.lower}, {nxt.upper}])"
                )
            if nxt.lower > prev.upper:
                raise ValidationError(
                    f"gap between bands {prev.label!r} and {nxt.label!r} "
                    f"({prev.upper} to {nxt.lower})"
                )
        labels = [b.label for b in bands]
        if len(set(labels)) != len(labels):
            raise ValidationError("grade band labels must be unique")
        object.__setattr__(self, "bands", tuple(ordered))

    @classmethod
    def from_pairs(cls, edges: Sequence[float], labels: Sequence[str], name="custom"):
        """``edges`` has one more entry than ``labels``."""
        if len(edges) != len(labels) + 1:
            raise ValidationError("need len(edges) == len(labels) + 1")
        return cls(
            tuple(GradeBand(lo, hi, lab) for lo, hi, lab in zip(edges, edges[1:], labels)),
            name=name,
        )

    @property
    def labels(self):
        return [b.label for b in self.bands]

    def to_dict(self):
        return {
            "name": self.name,
            "bands": [[b.lower, b.upper, b.label] for b in self.bands],
        }


US_4BAND = GradeScale.from_pairs(
    [0, 20, 50, 80, 100], ["Very bad", "Poor", "Good", "Very good"], name="us-4band"
)
IMPACT_5BAND = GradeScale.from_pairs(
    [0, 20, 40, 60, 80, 100], ["V", "IV", "III", "II", "I"], name="impact-5band"
)
PRESETS = {s.name: s for s in (US_4BAND, IMPACT_5BAND)}


def get_scale(scale):
    if isinstance(scale, GradeScale):
        return scale
    try:
        return PRESETS[scale]
    except KeyError:
        raise ValidationError(
            f"unknown grade scale {scale!r}; presets are {sorted(PRESETS)}"
        ) from None


def round_half_up(value, decimals=2):
    """Decimal rounding with ties away from zero, applied to the shortest repr."""
    quantum = Decimal(1).scaleb(-decimals)
    return Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class ScoreCard:
    object: str
    raw_score: float
    scaled_score: float
    grade: str
    rank: int = 0

    @property
    def display_score(self):
        return round_half_up(self.scaled_score, 2)


def weighted_total_score(r, w):
    """``score_i = sum_j w_j r_ij`` for each object."""
    r = np.asarray(getattr(r, "values", r), dtype=float)
    w = np.asarray(w, dtype=float).ravel()
    if r.ndim != 2 or r.shape[1] != w.size:
        raise ShapeError(f"{w.size} weights for a matrix of shape {r.shape}")
    return r @ w


def assign_grade(scaled, scale=US_4BAND):
    """Label of the band containing ``scaled`` (a score on the 0-100 scale).

    Raises
    ------
    DomainError
        ``scaled`` lies outside [0, 100].
    """
    scale = get_scale(scale)
    s = float(scaled)
    if not 0.0 <= s <= 100.0:
        raise DomainError(f"score {s} outside [0, 100]")
    bands = scale.bands
    if s <= bands[0].upper:
        return bands[0].label
    for band in bands[1:]:
        if band.lower < s <= band.upper:
            return band.label
    raise AssertionError("bands validated to cover [0, 100]")


def rank_objects(cards):
    """
    Dense ranks by descending scaled score.

    Exactly equal scores share a rank. The returned list is sorted by
    descending score, keeping input order among ties.
    """
    cards = list(cards)
    if not cards:
        raise ValidationError("nothing to rank")
    order = sorted(range(len(cards)), key=lambda i: -cards[i].scaled_score)
    out = []
    rank = 0
    prev = None
    for i in order:
        card = cards[i]
        if prev is None or card.scaled_score != prev:
            rank += 1
            prev = card.scaled_score
        out.append(replace(card, rank=rank))
    return out


def score_cards(r, weights, objects, scale=US_4BAND):
    """Build ranked score cards from a normalized matrix and weights."""
    scale = get_scale(scale)
    raw = weighted_total_score(r, weights)
    cards = []
    for obj, value in zip(objects, raw):
        # rounding can push a maximal row a hair past 1
        value = min(max(float(value), 0.0), 1.0)
        scaled = value * 100.0
        cards.append(ScoreCard(str(obj), value, scaled, assign_grade(scaled, scale)))
    return rank_objects(cards)


def evaluate(x, scale=US_4BAND):
    """Full scoring pipeline on a judgment matrix.

    min-max normalization, entropy weights, weighted totals, x100 scaling,
    grading and ranking. Returns score cards in rank order.
    """
    r = minmax_normalize(x)
    w, _ = weights_from_normalized(r)
    return score_cards(r, w, x.objects, scale)

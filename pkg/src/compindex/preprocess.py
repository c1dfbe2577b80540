"""
Indicator metadata and the two standardizations used downstream.

``minmax_normalize`` feeds the entropy weights and the weighted total score;
``zscore_standardize`` feeds the correlation matrix and component analysis.
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateColumnError,
    MappingError,
    ShapeError,
    ValidationError,
)
from .numkit import as_matrix

BENEFIT = "benefit"
COST = "cost"
QUANTITATIVE = "quantitative"
QUALITATIVE = "qualitative-binary"

DIRECTIONS = (BENEFIT, COST)
KINDS = (QUANTITATIVE, QUALITATIVE)

# good performance scores 1, lesser performance scores 0
DEFAULT_BINARY_MAPPING = {"good": 1, "poor": 0, "1": 1, "0": 0}


@dataclass(frozen=True)
class IndicatorSpec:
    name: str
    direction: str = BENEFIT
    kind: str = QUANTITATIVE
    mapping: Optional[Mapping[str, int]] = None

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValidationError("indicator name must be a non-empty string")
        if self.direction not in DIRECTIONS:
            raise ValidationError(
                f"indicator {self.name!r}: direction must be one of {DIRECTIONS}, "
                f"got {self.direction!r}"
            )
        if self.kind not in KINDS:
            raise ValidationError(
                f"indicator {self.name!r}: kind must be one of {KINDS}, got {self.kind!r}"
            )
        if self.mapping is not None:
            if self.kind != QUALITATIVE:
                raise ValidationError(
                    f"indicator {self.name!r}: mapping is only valid for {QUALITATIVE}"
                )
            for label, val in self.mapping.items():
                if val not in (0, 1) or isinstance(val, bool):
                    raise ValidationError(
                        f"indicator {self.name!r}: mapping value for {label!r} must be 0 or 1"
                    )

    @property
    def effective_mapping(self):
        return dict(self.mapping) if self.mapping is not None else dict(DEFAULT_BINARY_MAPPING)


def check_unique(indicators):
    seen = set()
    for spec in indicators:
        if spec.name in seen:
            raise ValidationError(f"duplicate indicator name {spec.name!r}")
        seen.add(spec.name)


@dataclass(frozen=True)
class JudgmentMatrix:
    """Raw m x n indicator values with object and indicator labels."""

    objects: tuple
    indicators: tuple
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = as_matrix(self.values, "judgment matrix")
        objects = tuple(str(o) for o in self.objects)
        indicators = tuple(
            s if isinstance(s, IndicatorSpec) else IndicatorSpec(str(s)) for s in self.indicators
        )
        m, n = values.shape
        if m < 2 or n < 1:
            raise ShapeError(f"need at least 2 objects and 1 indicator, got {m}x{n}")
        if len(objects) != m:
            raise ShapeError(f"{len(objects)} object labels for {m} rows")
        if len(indicators) != n:
            raise ShapeError(f"{len(indicators)} indicators for {n} columns")
        check_unique(indicators)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "indicators", indicators)

    @classmethod
    def from_array(cls, values, objects=None, indicators=None, directions=None):
        """Build from a bare array; labels default to ``obj1..`` / ``x1..``."""
        values = as_matrix(values, "judgment matrix")
        m, n = values.shape
        if objects is None:
            objects = [f"obj{i + 1}" for i in range(m)]
        if indicators is None:
            indicators = [f"x{j + 1}" for j in range(n)]
        if directions is None:
            directions = [BENEFIT] * n
        specs = [
            s if isinstance(s, IndicatorSpec) else IndicatorSpec(str(s), direction=d)
            for s, d in zip(indicators, directions)
        ]
        return cls(tuple(objects), tuple(specs), values)

    @property
    def shape(self):
        return self.values.shape

    @property
    def names(self):
        return [s.name for s in self.indicators]


@dataclass(frozen=True)
class NormalizedMatrix:
    objects: tuple
    indicators: tuple
    values: np.ndarray = field(repr=False)

    @property
    def names(self):
        return [s.name for s in self.indicators]


@dataclass(frozen=True)
class StandardizedMatrix:
    objects: tuple
    indicators: tuple
    values: np.ndarray = field(repr=False)
    means: np.ndarray = field(repr=False, default=None)
    stds: np.ndarray = field(repr=False, default=None)

    @property
    def names(self):
        return [s.name for s in self.indicators]


def _readonly(a):
    a.flags.writeable = False
    return a


def minmax_normalize(x: JudgmentMatrix) -> NormalizedMatrix:
    """
    Direction-aware min-max scaling of every column onto [0, 1].

    Benefit columns map ``min -> 0, max -> 1``; cost columns the reverse.
    A constant column carries no ordering information and maps to 0.5.
    """
    vals = x.values
    lo = vals.min(axis=0)
    hi = vals.max(axis=0)
    span = hi - lo
    out = np.full(vals.shape, 0.5)
    for j, spec in enumerate(x.indicators):
        if span[j] == 0.0:
            continue
        ascending = (vals[:, j] - lo[j]) / span[j]
        # cost is defined as the complement so the two directions mirror exactly
        out[:, j] = 1.0 - ascending if spec.direction == COST else ascending
    np.clip(out, 0.0, 1.0, out=out)
    return NormalizedMatrix(x.objects, x.indicators, _readonly(out))


def zscore_standardize(x: JudgmentMatrix) -> StandardizedMatrix:
    """Center each column and divide by its sample (m - 1) standard deviation.

    Raises
    ------
    DegenerateColumnError
        A column has zero variance; the message names the indicator.
    """
    vals = x.values
    means = vals.mean(axis=0)
    centered = vals - means
    stds = np.sqrt(np.sum(centered**2, axis=0) / (vals.shape[0] - 1))
    for j, spec in enumerate(x.indicators):
        if stds[j] == 0.0 or np.all(vals[:, j] == vals[0, j]):
            raise DegenerateColumnError(
                f"indicator {spec.name!r} is constant; cannot standardize a zero-variance column"
            )
    z = centered / stds
    return StandardizedMatrix(
        x.objects, x.indicators, _readonly(z), _readonly(means), _readonly(stds)
    )


def quantize_qualitative(labels: Sequence[str], mapping: Mapping[str, int]) -> np.ndarray:
    """Replace each category label by its 0/1 code.

    Raises
    ------
    MappingError
        A label is missing from ``mapping``.
    """
    out = np.empty(len(labels))
    for i, label in enumerate(labels):
        try:
            out[i] = mapping[label]
        except KeyError:
            raise MappingError(
                f"label {label!r} has no 0/1 mapping (known: {sorted(mapping)})"
            ) from None
    return out


def drop_constant_columns(x: JudgmentMatrix):
    """Split off zero-variance columns; returns ``(reduced, dropped_names)``."""
    keep = [j for j in range(x.shape[1]) if np.ptp(x.values[:, j]) > 0.0]
    dropped = [x.indicators[j].name for j in range(x.shape[1]) if j not in keep]
    if not dropped:
        return x, []
    if not keep:
        raise DegenerateColumnError("every indicator is constant")
    reduced = JudgmentMatrix(
        x.objects, tuple(x.indicators[j] for j in keep), x.values[:, keep]
    )
    return reduced, dropped

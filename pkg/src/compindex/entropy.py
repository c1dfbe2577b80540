"""
Objective indicator weights from information entropy.

The chain is ``corrected_proportions -> information_entropy ->
entropy_weights``. An indicator whose normalized values barely vary across
objects has entropy close to 1 and receives little weight.
"""

import math
from decimal import Decimal

import numpy as np

from .errors import DegenerateWeightsError, InsufficientObjectsError, ValidationError


def _values(r):
    return np.asarray(getattr(r, "values", r), dtype=float)


def corrected_proportions(r):
    """Column shares of ``1 + r_ij``.

    The +1 shift keeps every share strictly positive, so ``f ln f`` is always
    defined even though min-max scaling puts a 0 in every varying column.
    """
    shifted = 1.0 + _values(r)
    if shifted.ndim != 2:
        raise ValidationError("normalized matrix must be 2-D")
    return shifted / shifted.sum(axis=0)


def information_entropy(f):
    """
    Normalized Shannon entropy of each proportion column.

    ``H_j = -(1 / ln m) * sum_i f_ij ln f_ij`` with ``m`` the number of
    objects (rows), which bounds ``H_j`` to [0, 1]. Columns whose shares are
    all equal get exactly 1.

    Raises
    ------
    InsufficientObjectsError
        Fewer than two objects.
    """
    f = _values(f)
    m = f.shape[0]
    if m < 2:
        raise InsufficientObjectsError(f"entropy needs at least 2 objects, got {m}")
    h = -np.sum(f * np.log(f), axis=0) / math.log(m)
    uniform = np.all(f == f[0], axis=0)
    h[uniform] = 1.0
    return np.clip(h, 0.0, 1.0)


def entropy_weights(h):
    """``w_j = (1 - H_j) / sum_k (1 - H_k)``.

    Raises
    ------
    DegenerateWeightsError
        Every entropy equals 1, i.e. no indicator separates the objects.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 1 or h.size == 0:
        raise ValidationError("entropy vector must be a non-empty 1-D sequence")
    if np.any(h < -1e-12) or np.any(h > 1.0 + 1e-12):
        raise ValidationError("entropy values must lie in [0, 1]")
    divergence = 1.0 - np.clip(h, 0.0, 1.0)
    total = divergence.sum()
    if total <= 0.0:
        raise DegenerateWeightsError(
            "all indicators have entropy 1; weights are undefined (no information)"
        )
    return divergence / total


def weights_from_normalized(r):
    """Run the whole entropy chain; returns ``(weights, entropies)``."""
    h = information_entropy(corrected_proportions(r))
    return entropy_weights(h), h


def percentages(weights, decimals=2):
    """
    Weights as percentages that total exactly 100.

    Largest-remainder apportionment: every share is floored to ``decimals``
    places, then the leftover units go to the largest remainders (lowest
    index first on ties). Returns :class:`decimal.Decimal` values so the
    total is exact.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValidationError("weights must be a non-empty 1-D sequence")
    if np.any(w < 0):
        raise ValidationError("weights must be nonnegative")
    total_units = 100 * 10**decimals
    raw = w / w.sum() * total_units
    floors = np.floor(raw).astype(np.int64)
    leftover = int(total_units - floors.sum())
    remainders = raw - floors
    order = sorted(range(w.size), key=lambda j: (-remainders[j], j))
    for j in order[:leftover]:
        floors[j] += 1
    quantum = Decimal(1).scaleb(-decimals)
    return [(Decimal(int(u)) * quantum).quantize(quantum) for u in floors]

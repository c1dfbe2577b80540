"""Synthetic datasets with a prescribed sample correlation structure."""

import numpy as np
from scipy import stats

from .numkit import jacobi_eigh


def correlation_with_spectrum(eigenvalues, seed=0):
    """Random correlation matrix whose eigenvalues are ``eigenvalues``.

    The eigenvalues must be nonnegative and sum to their count.
    """
    eigs = np.asarray(eigenvalues, dtype=float)
    eigs = eigs * (eigs.size / eigs.sum())
    rng = np.random.default_rng(seed)
    return stats.random_correlation.rvs(eigs, random_state=rng, tol=1e-10)


def sample_with_correlation(corr, m, seed=0, means=None, scales=None):
    """
    ``m`` observations whose *sample* correlation equals ``corr``.

    Random draws are centered and whitened so their sample covariance is
    exactly the identity, then colored with a symmetric square root of
    ``corr``. Optional per-column ``scales``/``means`` are applied last;
    they do not change the correlation.
    """
    corr = np.asarray(corr, dtype=float)
    n = corr.shape[0]
    if m <= n:
        raise ValueError(f"need more observations than variables (m={m}, n={n})")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, n))
    x -= x.mean(axis=0)
    cov = x.T @ x / (m - 1)
    vals, vecs = jacobi_eigh(cov)
    white = x @ (vecs / np.sqrt(vals)) @ vecs.T
    cvals, cvecs = jacobi_eigh(corr)
    root = (cvecs * np.sqrt(np.clip(cvals, 0.0, None))) @ cvecs.T
    out = white @ root
    if scales is not None:
        out = out * np.asarray(scales, dtype=float)
    if means is not None:
        out = out + np.asarray(means, dtype=float)
    return out

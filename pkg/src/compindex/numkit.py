"""
Dense matrix helpers and a cyclic Jacobi eigensolver for symmetric matrices.

Matrices are plain 2-D float64 :class:`numpy.ndarray` objects. Everything
here is a pure function: inputs are copied before any in-place work.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ShapeError, ValidationError

SYMMETRY_RTOL = 1e-12
OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 100
# relative slack when deciding which eigenvector entry is "largest"
_SIGN_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order, unit eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def __iter__(self):
        # allows ``vals, vecs = jacobi_eigh(s)``
        yield self.eigenvalues
        yield self.eigenvectors


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D float64 array (a fresh copy)."""
    arr = np.array(a, dtype=float)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains NaN or infinite entries")
    return arr


def matmul(a, b):
    """Matrix product with an explicit shape check.

    Raises
    ------
    ShapeError
        If ``a.cols != b.rows``; the message carries both shapes.
    """
    a = as_matrix(a, "left operand")
    b = as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}"
        )
    return a @ b


def frobenius(a):
    return float(np.sqrt(np.sum(np.square(a))))


def offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def check_symmetric(s, rtol=SYMMETRY_RTOL):
    """Validate squareness and symmetry; return a copy mirrored from the upper triangle."""
    s = as_matrix(s, "symmetric input")
    if s.shape[0] != s.shape[1]:
        raise ValidationError(f"matrix must be square, got {s.shape[0]}x{s.shape[1]}")
    scale = max(np.max(np.abs(s), initial=0.0), 1.0)
    asym = np.max(np.abs(s - s.T), initial=0.0)
    if asym > rtol * scale:
        raise ValidationError(f"matrix is not symmetric (max |S - S^T| = {asym:.3e})")
    upper = np.triu(s)
    return upper + np.triu(s, 1).T


def largest_entry_sign(v):
    """Sign (+1/-1) of the largest-magnitude entry of ``v``.

    Entries within a relative 1e-12 of the maximum count as tied; the lowest
    index wins. A zero vector reports +1.
    """
    mag = np.abs(v)
    top = mag.max(initial=0.0)
    if top == 0.0:
        return 1.0
    idx = int(np.argmax(mag >= top * (1.0 - _SIGN_TIE_RTOL)))
    return -1.0 if v[idx] < 0 else 1.0


def canonical_sign(v):
    """Flip ``v`` so its largest-magnitude entry is positive."""
    return v * largest_entry_sign(v)


def _rotate(a, v, p, q):
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def jacobi_eigh(s, tol=OFFDIAG_TOL, max_sweeps=MAX_SWEEPS):
    """
    Full eigendecomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Each sweep visits every upper-triangular pair ``(p, q)`` in row order and
    annihilates it with a plane rotation. Iteration stops once the
    off-diagonal Frobenius norm drops to ``tol * (1 + ||S||_F)``.

    Parameters
    ----------
    s : array-like, shape (n, n)
        Symmetric matrix. Asymmetry beyond a 1e-12 relative tolerance is
        rejected; smaller asymmetry is removed by mirroring the upper
        triangle.
    tol : float
        Relative convergence tolerance.
    max_sweeps : int
        Sweep budget.

    Returns
    -------
    EigenDecomposition
        Eigenvalues sorted descending (stable for ties), eigenvectors as
        orthonormal columns with the largest-magnitude entry of each made
        positive.

    Raises
    ------
    ValidationError
        Non-square or asymmetric input.
    ConvergenceError
        The off-diagonal norm is still above tolerance after ``max_sweeps``.
    """
    a = check_symmetric(s)
    n = a.shape[0]
    v = np.eye(n)
    threshold = tol * (1.0 + frobenius(a))

    sweeps = 0
    off = offdiag_norm(a)
    while off > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off:.3e} > {threshold:.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, v, p, q)
        sweeps += 1
        off = offdiag_norm(a)

    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = v[:, order]
    for j in range(n):
        vecs[:, j] = canonical_sign(vecs[:, j])
    return EigenDecomposition(eigenvalues=vals, eigenvectors=vecs, sweeps=sweeps)

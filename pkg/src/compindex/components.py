"""
Principal components and varimax-rotated factors on standardized data.

The factor path reuses principal-component extraction and only adds an
orthogonal varimax rotation of the retained loadings; eigenvalues and the
total retained variance are shared by both paths.
"""

from dataclasses import dataclass, field
import numpy as np

from .errors import InsufficientObjectsError, ShapeError, ValidationError
from .numkit import as_matrix, check_symmetric, jacobi_eigh, largest_entry_sign, matmul

DEFAULT_THRESHOLD = 0.85
# eigenvalues at or below this are kept in the spectrum but get zero loadings
EIGEN_FLOOR = 1e-12
_CUMULATIVE_SLACK = 1e-12


@dataclass(frozen=True)
class ComponentModel:
    eigenvalues: np.ndarray
    explained_ratios: np.ndarray
    cumulative_ratios: np.ndarray
    retained: int
    loadings: np.ndarray = field(repr=False)
    eigvec_basis: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    correlation: np.ndarray = field(repr=False)
    indicators: tuple = ()

    @property
    def retained_ratios(self):
        return self.explained_ratios[: self.retained]

    @property
    def retained_eigenvalues(self):
        return self.eigenvalues[: self.retained]

    @property
    def communalities(self):
        return np.sum(self.loadings**2, axis=1)

    def scree(self):
        """Rows of ``(component_index, eigenvalue, explained, cumulative)``, 1-based."""
        return [
            (i + 1, float(lam), float(r), float(c))
            for i, (lam, r, c) in enumerate(
                zip(self.eigenvalues, self.explained_ratios, self.cumulative_ratios)
            )
        ]


@dataclass(frozen=True)
class RotationResult:
    rotated_loadings: np.ndarray = field(repr=False)
    rotation: np.ndarray = field(repr=False)
    rotated_variance_shares: np.ndarray
    criterion_history: tuple = ()
    sweeps: int = 0


def correlation_matrix(zx):
    """Sample correlation ``Zx^T Zx / (m - 1)`` of z-scored columns.

    The diagonal is set to 1 and entries are clipped into [-1, 1].
    """
    z = as_matrix(getattr(zx, "values", zx), "standardized matrix")
    m = z.shape[0]
    if m < 2:
        raise InsufficientObjectsError(f"correlation needs at least 2 objects, got {m}")
    corr = (z.T @ z) / (m - 1)
    corr = 0.5 * (corr + corr.T)
    np.clip(corr, -1.0, 1.0, out=corr)
    np.fill_diagonal(corr, 1.0)
    return corr


def retain_components(explained_ratios, threshold=DEFAULT_THRESHOLD):
    """
    Smallest ``k`` whose cumulative explained ratio reaches ``threshold``.

    Ratios are taken in the order given. If the threshold is never reached
    (possible only through rounding) every component is kept.
    """
    ratios = np.asarray(explained_ratios, dtype=float).ravel()
    if ratios.size == 0:
        raise ValidationError("explained ratio list is empty")
    if not 0.0 < threshold <= 1.0:
        raise ValidationError(f"retention threshold must be in (0, 1], got {threshold}")
    if np.any(ratios < 0):
        raise ValidationError("explained ratios must be nonnegative")
    if ratios.sum() > 1.0 + 1e-9:
        raise ValidationError(f"explained ratios sum to {ratios.sum():.12g} > 1")
    cumulative = np.cumsum(ratios)
    hits = np.nonzero(cumulative >= threshold - _CUMULATIVE_SLACK)[0]
    return int(hits[0]) + 1 if hits.size else int(ratios.size)


def fit_pca_from_correlation(corr, threshold=DEFAULT_THRESHOLD, retain=None, indicators=()):
    """Eigen-extraction and retention on an already computed correlation matrix."""
    corr = check_symmetric(corr)
    n = corr.shape[0]
    eig = jacobi_eigh(corr)
    vals = eig.eigenvalues
    vecs = eig.eigenvectors
    ratios = vals / n
    cumulative = np.cumsum(ratios)

    if retain is None:
        k = retain_components(np.clip(ratios, 0.0, None), threshold)
    else:
        k = int(retain)
        if not 1 <= k <= n:
            raise ValidationError(f"retain must be between 1 and {n}, got {retain}")

    basis = vecs[:, :k].copy()
    scale = np.where(vals[:k] > EIGEN_FLOOR, np.sqrt(np.clip(vals[:k], 0.0, None)), 0.0)
    loadings = basis * scale
    return ComponentModel(
        eigenvalues=vals,
        explained_ratios=ratios,
        cumulative_ratios=cumulative,
        retained=k,
        loadings=loadings,
        eigvec_basis=basis,
        eigenvectors=vecs,
        correlation=corr,
        indicators=tuple(indicators),
    )


def fit_pca(zx, threshold=DEFAULT_THRESHOLD, retain=None):
    """
    Principal component model of a standardized matrix.

    Parameters
    ----------
    zx : StandardizedMatrix or array-like
        z-scored data, objects in rows.
    threshold : float
        Cumulative explained-variance target used to choose ``k``.
    retain : int, optional
        Explicit number of components; overrides ``threshold``.

    Returns
    -------
    ComponentModel
        Loadings are ``a_ij = e_ij * sqrt(lambda_j)``; components with
        eigenvalue <= 1e-12 get a zero loading column.
    """
    names = tuple(getattr(zx, "names", ()))
    return fit_pca_from_correlation(correlation_matrix(zx), threshold, retain, names)


def normalized_eigenvectors(loadings, eigenvalues):
    """Recover unit eigenvectors from loadings: ``e_ij = a_ij / sqrt(lambda_j)``.

    Columns with eigenvalue <= 1e-12 come back as zeros.
    """
    a = as_matrix(loadings, "loadings")
    lam = np.asarray(eigenvalues, dtype=float)[: a.shape[1]]
    if lam.size != a.shape[1]:
        raise ShapeError(f"{lam.size} eigenvalues for {a.shape[1]} loading columns")
    out = np.zeros_like(a)
    ok = lam > EIGEN_FLOOR
    out[:, ok] = a[:, ok] / np.sqrt(lam[ok])
    return out


def component_scores(zx, basis):
    """Per-object component scores ``y = Zx t`` (m x k)."""
    return matmul(getattr(zx, "values", zx), basis)


def composite_scores(y, shares):
    """Variance-share weighted sum of component scores, one value per object."""
    y = as_matrix(y, "component scores")
    shares = np.asarray(shares, dtype=float).ravel()
    if shares.size != y.shape[1]:
        raise ShapeError(f"{shares.size} shares for {y.shape[1]} score columns")
    return y @ shares


def varimax_criterion(loadings):
    """Raw varimax objective: sum over columns of the variance of squared loadings."""
    sq = np.asarray(loadings, dtype=float) ** 2
    p = sq.shape[0]
    return float(np.sum(p * np.sum(sq**2, axis=0) - np.sum(sq, axis=0) ** 2) / p**2)


def pair_angle(x, y):
    """Angle that maximizes the varimax criterion of columns ``x, y`` jointly.

    Rotating by ``phi`` maps ``x -> x cos phi + y sin phi`` and
    ``y -> -x sin phi + y cos phi``.
    """
    p = x.size
    u = x * x - y * y
    v = 2.0 * x * y
    a = u.sum()
    b = v.sum()
    c = np.sum(u * u - v * v)
    d = 2.0 * np.sum(u * v)
    num = d - 2.0 * a * b / p
    den = c - (a * a - b * b) / p
    return 0.25 * np.arctan2(num, den)


def _canonical_columns(loadings, rotation):
    # order by explained variance, then largest-magnitude entry positive
    shares = np.sum(loadings**2, axis=0)
    order = np.argsort(-shares, kind="stable")
    loadings = loadings[:, order]
    rotation = rotation[:, order]
    for j in range(loadings.shape[1]):
        sign = largest_entry_sign(loadings[:, j])
        loadings[:, j] *= sign
        rotation[:, j] *= sign
    return loadings, rotation


def varimax_rotate(loadings, normalize=True, tol=1e-6, max_sweeps=100):
    """
    Orthogonal varimax rotation by pairwise plane rotations.

    Parameters
    ----------
    loadings : array-like, shape (n, k)
        Unrotated loadings (indicators in rows).
    normalize : bool
        Kaiser row normalization: rows are scaled to unit length for the
        rotation search and scaled back afterwards.
    tol : float
        Stop when a full sweep improves the criterion by less than
        ``tol`` relative to its current value.
    max_sweeps : int
        Sweep budget.

    Returns
    -------
    RotationResult
        Rotated loadings equal ``loadings @ rotation``. Columns are sorted
        by variance share and sign-normalized. ``rotated_variance_shares``
        are column sums of squared rotated loadings divided by ``n``.
    """
    a = as_matrix(loadings, "loadings")
    n, k = a.shape
    if n < 2 or k < 1:
        raise ShapeError(f"varimax needs at least 2 rows and 1 column, got {n}x{k}")

    rotation = np.eye(k)
    work = a.copy()
    if normalize:
        h = np.sqrt(np.sum(a**2, axis=1))
        h[h == 0.0] = 1.0
        work = a / h[:, None]

    history = [varimax_criterion(work)]
    sweeps = 0
    if k > 1:
        while sweeps < max_sweeps:
            for i in range(k - 1):
                for j in range(i + 1, k):
                    phi = pair_angle(work[:, i], work[:, j])
                    if phi == 0.0:
                        continue
                    c, s = np.cos(phi), np.sin(phi)
                    xi, xj = work[:, i].copy(), work[:, j].copy()
                    work[:, i] = c * xi + s * xj
                    work[:, j] = -s * xi + c * xj
                    ri, rj = rotation[:, i].copy(), rotation[:, j].copy()
                    rotation[:, i] = c * ri + s * rj
                    rotation[:, j] = -s * ri + c * rj
            sweeps += 1
            history.append(varimax_criterion(work))
            if history[-1] - history[-2] <= tol * abs(history[-2]):
                break

    rotated = a @ rotation
    rotated, rotation = _canonical_columns(rotated, rotation)
    shares = np.sum(rotated**2, axis=0) / n
    return RotationResult(
        rotated_loadings=rotated,
        rotation=rotation,
        rotated_variance_shares=shares,
        criterion_history=tuple(history),
        sweeps=sweeps,
    )


@dataclass(frozen=True)
class FactorModel:
    """PCA extraction plus varimax rotation, with composite factor scores."""

    pca: ComponentModel
    rotation: RotationResult
    scores: np.ndarray = field(repr=False)
    composite: np.ndarray = field(repr=False)


def factor_scores(zx, rotated_loadings):
    """Factor scores by projecting on rotated loadings scaled to unit variance.

    ``F = Zx A_rot (A_rot^T A_rot)^-1``; for principal-component extraction
    this equals ``Zx t R`` and each score column has unit variance before
    weighting.
    """
    z = as_matrix(getattr(zx, "values", zx), "standardized matrix")
    a = as_matrix(rotated_loadings, "rotated loadings")
    gram = a.T @ a
    return matmul(z, a) @ np.linalg.pinv(gram)


def fit_factors(zx, threshold=DEFAULT_THRESHOLD, retain=None, normalize=True):
    pca = fit_pca(zx, threshold, retain)
    rot = varimax_rotate(pca.loadings, normalize=normalize)
    scores = factor_scores(zx, rot.rotated_loadings)
    composite = composite_scores(scores, rot.rotated_variance_shares)
    return FactorModel(pca=pca, rotation=rot, scores=scores, composite=composite)


def fit_pca_scores(zx, threshold=DEFAULT_THRESHOLD, retain=None):
    """PCA model, component scores, and explained-ratio weighted composite."""
    model = fit_pca(zx, threshold, retain)
    y = component_scores(zx, model.eigvec_basis)
    return model, y, composite_scores(y, model.retained_ratios)

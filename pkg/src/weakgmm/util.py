"""Shared numerics: parameter boxes and guarded PSD linear algebra.

Covariance matrices built from indicator-type moments can be singular or
nearly so (e.g. when an indicator is constant over a region), so every
inversion here goes through an eigendecomposition with an explicit ridge
policy instead of a raw ``inv``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Relative ridge added to eigenvalues when a covariance is near-singular.
DEFAULT_RIDGE = 1e-8
#: Eigenvalues below this multiple of the mean eigenvalue count as zero.
EIG_FLOOR = 1e-10
#: Relative eigenvalue cutoff for numerical rank / pseudo-inverse on a span.
RANK_RTOL = 1e-10


class NumericalError(RuntimeError):
    """Numerical failure that maps to CLI exit code 4."""


class DegenerateCovariance(NumericalError):
    """Covariance matrix is singular and no ridge was allowed."""


@dataclass(frozen=True)
class Box:
    """Axis-aligned box ``[lo_i, hi_i]`` in parameter or action space."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lo, dtype=float))
        hi = np.atleast_1d(np.asarray(self.hi, dtype=float))
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("box bounds must be 1-d arrays of equal length")
        if not np.all(np.isfinite(lo)) or not np.all(np.isfinite(hi)):
            raise ValueError("box bounds must be finite")
        if not np.all(lo < hi):
            raise ValueError("box must satisfy lo < hi on every axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return self.lo.size

    def widths(self) -> np.ndarray:
        return self.hi - self.lo

    def center(self) -> np.ndarray:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lo) and np.all(x <= self.hi))

    def clip(self, x) -> np.ndarray:
        return np.clip(np.asarray(x, dtype=float), self.lo, self.hi)

    def sample(self, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
        """Uniform draw(s) from the box."""
        shape = (self.dim,) if size is None else (size, self.dim)
        return self.lo + self.widths() * rng.random(shape)

    def bounds(self) -> list[tuple[float, float]]:
        return list(zip(self.lo.tolist(), self.hi.tolist()))


def _sym(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + np.swapaxes(a, -1, -2))


def ridged_eigh(s: np.ndarray, ridge: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of symmetric PSD ``s`` with the ridge policy applied.

    Returns ``(eigvals, eigvecs)`` where the eigenvalues have been lifted by
    ``ridge * trace(s)/k`` whenever the smallest eigenvalue falls below
    ``EIG_FLOOR * trace(s)/k``.  Raises :class:`DegenerateCovariance` when the
    matrix is singular at that floor and ``ridge`` is zero.
    """
    s = _sym(np.asarray(s, dtype=float))
    vals, vecs = np.linalg.eigh(s)
    k = s.shape[-1]
    scale = np.trace(s, axis1=-2, axis2=-1) / k
    floor = EIG_FLOOR * scale
    if s.ndim == 2:
        if vals[0] < floor:
            if ridge <= 0.0 or scale <= 0.0:
                raise DegenerateCovariance(
                    "covariance matrix is numerically singular and ridge is disabled"
                )
            vals = vals + ridge * scale
        return vals, vecs
    # Batched: apply the policy block by block.
    bad = vals[..., 0] < floor
    if np.any(bad):
        if ridge <= 0.0 or np.any(scale[bad] <= 0.0):
            raise DegenerateCovariance(
                "a covariance block is numerically singular and ridge is disabled"
            )
        vals = vals + np.where(bad, ridge * scale, 0.0)[..., None]
    return vals, vecs


def inv_psd(s: np.ndarray, ridge: float = DEFAULT_RIDGE) -> np.ndarray:
    """Inverse of a symmetric PSD matrix (or stack) under the ridge policy."""
    vals, vecs = ridged_eigh(s, ridge)
    return _sym(np.einsum("...ij,...j,...kj->...ik", vecs, 1.0 / vals, vecs))


def quad_form_inv(s: np.ndarray, v: np.ndarray, ridge: float = DEFAULT_RIDGE) -> float:
    """Quadratic form ``v' s^{-1} v`` under the ridge policy."""
    vals, vecs = ridged_eigh(s, ridge)
    proj = vecs.T @ np.asarray(v, dtype=float)
    return float(np.sum(proj * proj / vals))


def psd_sqrt(s: np.ndarray) -> np.ndarray:
    """Symmetric PSD square root; negative eigenvalues are clipped at zero."""
    s = _sym(np.asarray(s, dtype=float))
    vals, vecs = np.linalg.eigh(s)
    vals = np.clip(vals, 0.0, None)
    return _sym((vecs * np.sqrt(vals)) @ vecs.T)


def pinv_psd(s: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Pseudo-inverse of symmetric PSD ``s`` restricted to its span."""
    s = _sym(np.asarray(s, dtype=float))
    vals, vecs = np.linalg.eigh(s)
    cutoff = rtol * max(vals[-1], 0.0)
    inv = np.where(vals > cutoff, 1.0 / np.where(vals > cutoff, vals, 1.0), 0.0)
    return _sym((vecs * inv) @ vecs.T)


def psd_rank(s: np.ndarray, rtol: float = RANK_RTOL) -> int:
    """Numerical rank of symmetric PSD ``s`` at relative cutoff ``rtol``."""
    vals = np.linalg.eigvalsh(_sym(np.asarray(s, dtype=float)))
    top = max(vals[-1], 0.0)
    return int(np.sum(vals > rtol * top))


def span_basis(s: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis (columns) of the span of symmetric PSD ``s``."""
    s = _sym(np.asarray(s, dtype=float))
    vals, vecs = np.linalg.eigh(s)
    cutoff = rtol * max(vals[-1], 0.0)
    return vecs[:, vals > cutoff]

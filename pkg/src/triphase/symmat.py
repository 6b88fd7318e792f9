"""Arithmetic on 3x3 real symmetric matrices.

Matrices are plain ``numpy`` arrays of shape (3, 3).  The five Q matrices
form an orthonormal basis (trace inner product) of the traceless symmetric
matrices; coordinates in that basis are ordered (x0, x1, x2, x3, x4).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import NotNormalized, NotTraceless, ZeroMatrix

__all__ = [
    "Q0", "Q1", "Q2", "Q3", "Q4", "QBASIS", "Spectrum",
    "sym_matrix", "inner", "detrace", "normalize", "norm",
    "to_q_coords", "from_q_coords", "eig", "eigh_batch", "psi_of",
]

Q0 = np.diag([2.0, -1.0, -1.0]) / np.sqrt(6.0)
Q1 = np.array([[0.0, 0, 0], [0, 0, 1], [0, 1, 0]]) / np.sqrt(2.0)
Q2 = np.array([[0.0, 0, 1], [0, 0, 0], [1, 0, 0]]) / np.sqrt(2.0)
Q3 = np.array([[0.0, 1, 0], [1, 0, 0], [0, 0, 0]]) / np.sqrt(2.0)
Q4 = np.diag([0.0, 1.0, -1.0]) / np.sqrt(2.0)

# stacked view, index alpha = 0..4
QBASIS = np.stack([Q0, Q1, Q2, Q3, Q4])
for _q in QBASIS:
    _q.flags.writeable = False
QBASIS.flags.writeable = False


def sym_matrix(m, tol=1e-9):
    """Validate and copy a 3x3 symmetric array.

    Raises ValueError if the array is not 3x3 or deviates from symmetry
    by more than `tol`; asymmetry is rejected, never repaired.
    """
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected shape (3, 3), got {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix contains non-finite entries")
    defect = np.abs(a - a.T).max()
    if defect > tol:
        raise ValueError(f"matrix is not symmetric (max asymmetry {defect:.3e})")
    return (a + a.T) / 2.0


def inner(a, b):
    """Trace inner product Tr(ab)."""
    return float(np.tensordot(a, b))


def norm(a):
    return float(np.sqrt(inner(a, a)))


def detrace(a):
    """Remove the trace part: a - (Tr a / 3) * I."""
    a = np.asarray(a, dtype=float)
    return a - (np.trace(a) / 3.0) * np.eye(3)


def normalize(a, eps=config.NORM_EPS):
    """Rescale to unit trace norm."""
    n2 = inner(a, a)
    if n2 <= eps:
        raise ZeroMatrix(f"squared norm {n2:.3e} below {eps:.3e}")
    return np.asarray(a, dtype=float) / np.sqrt(n2)


def to_q_coords(a, trace_tol=config.TRACE_TOL):
    """Coordinates x_alpha = <a, Q_alpha> of a traceless matrix."""
    a = np.asarray(a, dtype=float)
    tr = abs(np.trace(a))
    if tr > trace_tol:
        raise NotTraceless(f"|trace| = {tr:.3e}")
    return np.tensordot(QBASIS, a, axes=([1, 2], [0, 1]))


def from_q_coords(x):
    """Matrix sum_alpha x_alpha Q_alpha."""
    x = np.asarray(x, dtype=float)
    return np.tensordot(x, QBASIS, axes=(0, 0))


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition with descending eigenvalues.

    `vectors[:, i]` is the unit eigenvector of `values[i]`;
    `values[0] >= values[1] >= values[2]`.
    """

    values: np.ndarray
    vectors: np.ndarray

    @property
    def gap12(self):
        return float(self.values[0] - self.values[1])

    @property
    def gap23(self):
        return float(self.values[1] - self.values[2])

    @property
    def min_gap(self):
        return min(self.gap12, self.gap23)

    def is_degenerate(self, tol=config.EIG_DEGEN_TOL):
        return self.min_gap < tol


def _fix_signs(vectors):
    """Largest-magnitude component made positive, ties to the lowest index."""
    v = vectors.copy()
    for i in range(v.shape[1]):
        col = v[:, i]
        j = int(np.argmax(np.abs(col)))
        if col[j] < 0:
            v[:, i] = -col
    return v


def _eigvals_closed_form(a):
    """Trigonometric eigenvalues of a symmetric 3x3 matrix, descending."""
    q = np.trace(a) / 3.0
    b = a - q * np.eye(3)
    p = np.sqrt(np.tensordot(b, b) / 6.0)
    if p == 0.0:
        return np.full(3, q)
    r = np.linalg.det(b / p) / 2.0
    phi = np.arccos(np.clip(r, -1.0, 1.0)) / 3.0
    lam1 = q + 2.0 * p * np.cos(phi)
    lam3 = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    lam2 = 3.0 * q - lam1 - lam3
    return np.array([lam1, lam2, lam3])


def _eigvec_cross(a, lam):
    """Eigenvector of `lam` from the largest cross product of rows of a - lam*I.

    Returns None when every cross product is tiny (degenerate eigenvalue).
    """
    m = a - lam * np.eye(3)
    cands = np.stack([
        np.cross(m[0], m[1]),
        np.cross(m[0], m[2]),
        np.cross(m[1], m[2]),
    ])
    norms = np.linalg.norm(cands, axis=1)
    k = int(np.argmax(norms))
    scale = max(np.abs(a).max(), 1.0)
    if norms[k] < config.EIG_VEC_FALLBACK * scale**2:
        return None
    return cands[k] / norms[k]


def eig(a):
    """Spectrum of a symmetric 3x3 matrix.

    Closed-form trigonometric eigenvalues with cross-product eigenvectors;
    falls back to LAPACK when an eigenvalue is (nearly) repeated, in which
    case any orthonormal basis of the eigenspace is acceptable.
    """
    a = np.asarray(a, dtype=float)
    values = _eigvals_closed_form(a)
    v1 = _eigvec_cross(a, values[0])
    v3 = _eigvec_cross(a, values[2])
    if v1 is None or v3 is None:
        w, v = np.linalg.eigh(a)
        values = w[::-1].copy()
        vectors = v[:, ::-1].copy()
    else:
        v2 = np.cross(v3, v1)
        v2 /= np.linalg.norm(v2)
        # re-orthogonalize v3 against the better-conditioned pair
        v3 = np.cross(v1, v2)
        vectors = np.column_stack([v1, v2, v3])
    return Spectrum(values=values, vectors=_fix_signs(vectors))


def eigh_batch(a):
    """Descending-order eigendecomposition of a stack (..., 3, 3).

    Returns (values, vectors) with values[..., 0] the largest; no sign
    convention is applied (callers transport or fix signs themselves).
    """
    w, v = np.linalg.eigh(a)
    return w[..., ::-1], v[..., :, ::-1]


def eigvals_batch(a):
    """Descending closed-form eigenvalues of a symmetric stack (N, 3, 3)."""
    a = np.asarray(a, dtype=float)
    q = np.trace(a, axis1=-2, axis2=-1) / 3.0
    b = a - q[..., None, None] * np.eye(3)
    p = np.sqrt(np.einsum("...ij,...ij->...", b, b) / 6.0)
    safe = np.where(p > 0.0, p, 1.0)
    r = np.linalg.det(b / safe[..., None, None]) / 2.0
    phi = np.arccos(np.clip(r, -1.0, 1.0)) / 3.0
    lam1 = q + 2.0 * p * np.cos(phi)
    lam3 = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    return np.stack([lam1, 3.0 * q - lam1 - lam3, lam3], axis=-1)


def _best_cross(a, lam):
    """Per-row best cross product of rows of a - lam*I, with its norm."""
    m = a - lam[:, None, None] * np.eye(3)
    cand = np.stack([
        np.cross(m[:, 0], m[:, 1]),
        np.cross(m[:, 0], m[:, 2]),
        np.cross(m[:, 1], m[:, 2]),
    ], axis=1)
    norms = np.linalg.norm(cand, axis=2)
    k = np.argmax(norms, axis=1)
    idx = np.arange(len(a))
    return cand[idx, k], norms[idx, k]


def eigh_batch_fast(a, fallback_tol=1e-6):
    """Closed-form batched eigendecomposition of a stack (N, 3, 3).

    Several times faster than LAPACK at this size; rows whose extreme
    eigenvectors are poorly conditioned (nearly repeated eigenvalues) are
    redone with `eigh_batch`.  Same (descending, unsigned) contract.
    """
    a = np.asarray(a, dtype=float)
    values = eigvals_batch(a)
    v1, n1 = _best_cross(a, values[:, 0])
    v3, n3 = _best_cross(a, values[:, 2])
    v1 /= np.maximum(n1, 1e-300)[:, None]
    v3 /= np.maximum(n3, 1e-300)[:, None]
    v2 = np.cross(v3, v1)
    v2 /= np.maximum(np.linalg.norm(v2, axis=1), 1e-300)[:, None]
    v3 = np.cross(v1, v2)
    vectors = np.stack([v1, v2, v3], axis=2)
    scale = np.maximum(np.abs(a).reshape(len(a), 9).max(axis=1), 1.0)
    bad = np.minimum(n1, n3) < fallback_tol * scale**2
    if bad.any():
        wb, vb = eigh_batch(a[bad])
        values[bad] = wb
        vectors[bad] = vb
    return values, vectors


def psi_of(a, trace_tol=config.TRACE_TOL, unit_tol=config.UNIT_TOL):
    """Spectral angle psi in [0, pi/3] of a unit-norm traceless matrix.

    The eigenvalues of such a matrix are sqrt(2/3)*cos(psi + {0, -2pi/3,
    +2pi/3}); psi = 0 and psi = pi/3 are the two doubly degenerate walls.
    """
    a = np.asarray(a, dtype=float)
    if abs(np.trace(a)) > trace_tol:
        raise NotTraceless(f"|trace| = {abs(np.trace(a)):.3e}")
    n2 = inner(a, a)
    if abs(n2 - 1.0) > unit_tol:
        raise NotNormalized(f"|<a,a>-1| = {abs(n2 - 1.0):.3e}")
    lam = _eigvals_closed_form(a)
    psi = float(np.arccos(np.clip(lam[0] * np.sqrt(1.5), -1.0, 1.0)))
    check = np.sqrt(2.0 / 3.0) * np.cos(psi - 2.0 * np.pi / 3.0)
    # closed-form eigenvalues lose half their digits at the degenerate
    # walls psi = 0 and pi/3, so the guard cannot be tighter than ~1e-7
    if abs(check - lam[1]) > 1e-6:
        raise NotNormalized(f"inconsistent middle eigenvalue, defect {abs(check - lam[1]):.3e}")
    return psi

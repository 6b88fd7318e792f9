"""Canonical geodesic frames for a two-parameter perturbation family.

A raw perturbation pair (f, g) spans a plane through the origin of the
traceless symmetric matrices; its unit circle is the loop whose phase we
want.  The frame fixes all the gauge freedom: F diagonal with descending
eigenvalues, G expanded in the diagonal companion E and the off-diagonal
Q1..Q3, and the expansion coefficients sign-fixed so g1, g2, g3 >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import config, symmat
from .errors import CollinearPerturbations, DegenerateAnchor, DegeneratePerturbation
from .symmat import Q0, Q1, Q2, Q3, Q4, detrace, inner, normalize

__all__ = ["GeodesicFrame", "orthonormalize", "canonicalize_signs", "build_frame"]

# pair flips in the deterministic application order; each is a pi rotation
# about a principal axis of F, a phase-preserving similarity transform
_PAIR_FLIPS = (((0, 1), "(g1,g2)"), ((1, 2), "(g2,g3)"), ((0, 2), "(g1,g3)"))


@dataclass(frozen=True)
class GeodesicFrame:
    """Canonical data of one geodesic loop.

    `g` holds (g1, g2, g3, g4); `f_mat` and `g_mat` are expressed in the
    frame basis (F diagonal).  `basis_rotation` maps input coordinates to
    frame coordinates: X_frame = R.T @ X_input @ R.
    """

    f_mat: np.ndarray
    g_mat: np.ndarray
    psi: float
    e_mat: np.ndarray
    g: np.ndarray
    basis_rotation: np.ndarray
    applied_flips: tuple = field(default_factory=tuple)

    @property
    def g1(self):
        return float(self.g[0])

    @property
    def g2(self):
        return float(self.g[1])

    @property
    def g3(self):
        return float(self.g[2])

    @property
    def g4(self):
        return float(self.g[3])


def orthonormalize(f, g):
    """Gram-Schmidt the detraced pair into an orthonormal (F, G).

    Scale of the inputs is irrelevant; only the plane they span matters.
    """
    f0 = detrace(np.asarray(f, dtype=float))
    if symmat.norm(f0) <= 1e-12:
        raise DegeneratePerturbation("first perturbation vanishes after detracing")
    F = normalize(f0)
    g0 = detrace(np.asarray(g, dtype=float))
    if symmat.norm(g0) <= 1e-12:
        raise CollinearPerturbations("second perturbation vanishes after detracing")
    g1 = normalize(g0)
    resid = g1 - inner(g1, F) * F
    if symmat.norm(resid) <= config.COLLINEAR_TOL:
        raise CollinearPerturbations("perturbation pair is collinear; the family has no loop")
    return F, normalize(resid)


def canonicalize_signs(g):
    """Flip signs so that (g1, g2, g3) are all nonnegative.

    An odd number of negatives among (g1, g2, g3) is first cured by the
    global flip g -> -g (same loop, reversed traversal); the remaining
    negative pair, if any, by a pair flip.  Returns (canonical g, applied
    flip labels).
    """
    g = np.asarray(g, dtype=float).copy()
    flips = []
    if int(np.sum(g[:3] < 0.0)) % 2 == 1:
        g = -g
        flips.append("global")
    neg = g[:3] < 0.0
    if neg.any():
        for (i, j), label in _PAIR_FLIPS:
            if neg[i] and neg[j]:
                g[i] = -g[i]
                g[j] = -g[j]
                flips.append(label)
                break
    return g, tuple(flips)


def build_frame(F, G, psi_tol=config.PSI_TOL):
    """Rotate (F, G) into the canonical frame and read off (psi, g).

    Raises DegenerateAnchor when F sits on a degeneracy wall (psi outside
    (psi_tol, pi/3 - psi_tol)): the loop starts at an ill-defined point.
    """
    F = np.asarray(F, dtype=float)
    G = np.asarray(G, dtype=float)
    spec = symmat.eig(F)
    R = spec.vectors
    psi = symmat.psi_of(F)
    if not (psi_tol < psi < np.pi / 3.0 - psi_tol):
        raise DegenerateAnchor(f"anchor psi = {psi:.3e} is on a degeneracy wall")
    f_d = np.diag(spec.values)
    g_rot = R.T @ G @ R
    g_rot = (g_rot + g_rot.T) / 2.0
    E = -np.sin(psi) * Q0 + np.cos(psi) * Q4
    raw = np.array([inner(g_rot, Q1), inner(g_rot, Q2), inner(g_rot, Q3), inner(g_rot, E)])
    g_can, flips = canonicalize_signs(raw)
    g_mat = g_can[3] * E + g_can[0] * Q1 + g_can[1] * Q2 + g_can[2] * Q3
    resid = symmat.norm(g_rot - (raw[3] * E + raw[0] * Q1 + raw[1] * Q2 + raw[2] * Q3))
    if resid > 1e-10:
        raise ValueError(f"G does not lie in the anchor's equator (residual {resid:.3e})")
    return GeodesicFrame(
        f_mat=f_d,
        g_mat=g_mat,
        psi=psi,
        e_mat=E,
        g=g_can,
        basis_rotation=R,
        applied_flips=flips,
    )


def frame_from_coords(psi, g, psi_tol=config.PSI_TOL):
    """Frame built directly from spectral angle and canonical coordinates.

    Convenience for sampling and for reconstructing published values; `g`
    is (g1, g2, g3, g4) and is canonicalized, not assumed canonical.
    """
    if not (psi_tol < psi < np.pi / 3.0 - psi_tol):
        raise DegenerateAnchor(f"psi = {psi:.3e} is on a degeneracy wall")
    g = np.asarray(g, dtype=float)
    n = np.linalg.norm(g)
    if n == 0.0:
        raise ValueError("zero g vector")
    g_can, flips = canonicalize_signs(g / n)
    E = -np.sin(psi) * Q0 + np.cos(psi) * Q4
    F = np.cos(psi) * Q0 + np.sin(psi) * Q4
    g_mat = g_can[3] * E + g_can[0] * Q1 + g_can[1] * Q2 + g_can[2] * Q3
    return GeodesicFrame(
        f_mat=F,
        g_mat=g_mat,
        psi=float(psi),
        e_mat=E,
        g=g_can,
        basis_rotation=np.eye(3),
        applied_flips=flips,
    )

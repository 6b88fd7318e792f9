"""The degenerate set and nearest-degeneracy search.

Doubly degenerate unit traceless matrices form two projective planes
parametrized by the nondegenerate eigenvector n: D(+/-, n) = +/- (1 -
3|n><n|)/sqrt(6).  Projecting them into the equator of an anchor F gives
the loop directions whose geodesic hits a degeneracy; their coordinates
(b1..b4) admit the closed form used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import config
from .errors import InconsistentInputs, ParallelToAnchor
from .symmat import Q0, Q1, Q2, Q3, Q4, inner

__all__ = ["DegeneratePoint", "d_point", "b_point", "nearest_degenerate", "degeneracy_angle"]


@dataclass(frozen=True)
class DegeneratePoint:
    """A point of the degenerate set, seen from an anchor with angle psi."""

    branch: int          # +1: top pair degenerate, -1: bottom pair
    n: np.ndarray        # unit 3-vector, the nondegenerate eigenvector
    b: np.ndarray        # (b1, b2, b3, b4) in the (Q1, Q2, Q3, E) basis
    matrix: np.ndarray   # b4*E + b1*Q1 + b2*Q2 + b3*Q3
    c: float
    s: float

    @property
    def b4(self):
        return float(self.b[3])


def d_point(branch, n):
    """Doubly degenerate unit matrix +/- (1 - 3|n><n|)/sqrt(6).

    branch +1 has its top eigenvalue pair repeated (psi = pi/3), branch -1
    the bottom pair (psi = 0); n and -n give the same matrix.
    """
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    return branch * (np.eye(3) - 3.0 * np.outer(n, n)) / np.sqrt(6.0)


def _cs_of(n, psi):
    ang = np.array([psi, psi - 2.0 * np.pi / 3.0, psi + 2.0 * np.pi / 3.0])
    nsq = np.asarray(n) ** 2
    return float(nsq @ np.cos(ang)), float(nsq @ np.sin(ang))


def b_point(branch, n, psi, ctol=config.CTOL):
    """Equatorial projection of d_point(branch, n) against the psi-anchor.

    b1 = -branch*sqrt(3)*n2*n3/sqrt(1-c^2) and cyclic, b4 =
    branch*s/sqrt(1-c^2), with c, s the anchor/companion expectations in
    the n direction.  Undefined when the degenerate point is parallel to
    the anchor (1 - c^2 ~ 0).
    """
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    c, s = _cs_of(n, psi)
    w = 1.0 - c * c
    if w <= ctol:
        raise ParallelToAnchor(f"1 - c^2 = {w:.3e}")
    rw = np.sqrt(w)
    b = np.array([
        -branch * np.sqrt(3.0) * n[1] * n[2] / rw,
        -branch * np.sqrt(3.0) * n[0] * n[2] / rw,
        -branch * np.sqrt(3.0) * n[1] * n[0] / rw,
        branch * s / rw,
    ])
    E = -np.sin(psi) * Q0 + np.cos(psi) * Q4
    matrix = b[3] * E + b[0] * Q1 + b[1] * Q2 + b[2] * Q3
    return DegeneratePoint(branch=int(branch), n=n, b=b, matrix=matrix, c=c, s=s)


def _b_batch(branch, ns, psi):
    """Vectorized b-coordinates for an (N, 3) stack of unit vectors.

    Rows too close to the parallel-to-anchor singularity come back as nan.
    """
    ang = np.array([psi, psi - 2.0 * np.pi / 3.0, psi + 2.0 * np.pi / 3.0])
    nsq = ns**2
    c = nsq @ np.cos(ang)
    s = nsq @ np.sin(ang)
    w = 1.0 - c * c
    ok = w > 1e-9
    rw = np.sqrt(np.where(ok, w, 1.0))
    b = np.column_stack([
        -branch * np.sqrt(3.0) * ns[:, 1] * ns[:, 2] / rw,
        -branch * np.sqrt(3.0) * ns[:, 0] * ns[:, 2] / rw,
        -branch * np.sqrt(3.0) * ns[:, 1] * ns[:, 0] / rw,
        branch * s / rw,
    ])
    b[~ok] = np.nan
    return b


def _sph(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def nearest_degenerate(frm, grid_n=config.GRID_N, refine_iters=config.REFINE_ITERS):
    """Closest degenerate loop direction to the frame's G.

    Chordal (Euclidean in b-coordinates) distance, minimized over both
    branches and the n3 >= 0 half-sphere by a coarse angular grid followed
    by Nelder-Mead refinement.  Returns (DegeneratePoint, distance).
    """
    g = np.asarray(frm.g, dtype=float)
    psi = frm.psi
    theta = np.linspace(0.0, np.pi / 2.0, grid_n)
    phi = np.linspace(0.0, 2.0 * np.pi, 2 * grid_n, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ns = _sph(tt.ravel(), pp.ravel())

    best = (np.inf, None, None)
    for branch in (+1, -1):
        b = _b_batch(branch, ns, psi)
        d = np.linalg.norm(b - g, axis=1)
        d = np.where(np.isnan(d), np.inf, d)
        k = int(np.argmin(d))
        if d[k] < best[0]:
            best = (float(d[k]), branch, (tt.ravel()[k], pp.ravel()[k]))

        def objective(x, branch=branch):
            n = _sph(x[0], x[1])
            try:
                return float(np.linalg.norm(b_point(branch, n, psi).b - g))
            except ParallelToAnchor:
                return np.inf

        x0 = np.array([tt.ravel()[int(np.argmin(d))], pp.ravel()[int(np.argmin(d))]])
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxiter": refine_iters, "xatol": 1e-12, "fatol": 1e-14})
        if res.fun < best[0]:
            best = (float(res.fun), branch, tuple(res.x))

    dist, branch, (th, ph) = best
    point = b_point(branch, _sph(th, ph), psi)
    return point, dist


def degeneracy_angle(F, B):
    """Loop angle at which the geodesic through (F, B.matrix) hits B's degeneracy.

    theta* = atan2(<D, B>, <D, F>) with D the degenerate matrix itself;
    verifies that cos(theta*)*F + sin(theta*)*B.matrix is parallel to D.
    """
    D = d_point(B.branch, B.n)
    theta = float(np.arctan2(inner(D, B.matrix), inner(D, F)))
    H = np.cos(theta) * F + np.sin(theta) * B.matrix
    resid = np.linalg.norm(H - inner(H, D) * D)
    if resid > 1e-8:
        raise InconsistentInputs(f"geodesic misses the degenerate point (residual {resid:.3e})")
    return theta % (2.0 * np.pi)

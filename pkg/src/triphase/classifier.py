"""Triangle/ellipse construction: regions of constant topological phase.

The canonical coordinates (g1, g2, g3) map into an equilateral triangle in
the (C, S) plane whose orientation is set by the anchor's spectral angle;
an ellipse with semi-axes (1, |g4|) carries the degenerate points.  The
ellipse splits the triangle into an interior region R2 and two exterior
regions R1 (S > 0) and R3 (S < 0), with phases -1, -sign(g4) and +1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import DomainError, ExcludedPoint

__all__ = [
    "TrianglePoint", "RegionResult", "EllipseArcs",
    "psi_angles", "triangle_vertices", "v_coords", "cs_coords",
    "g4_critical", "ellipse_arcs", "classify",
]


def psi_angles(psi):
    """The three vertex angles psi, psi - 2pi/3, psi + 2pi/3."""
    return np.array([psi, psi - 2.0 * np.pi / 3.0, psi + 2.0 * np.pi / 3.0])


def triangle_vertices(psi):
    """Vertices (cos psi_i, sin psi_i) of the equilateral triangle."""
    ang = psi_angles(psi)
    return np.column_stack([np.cos(ang), np.sin(ang)])


@dataclass(frozen=True)
class TrianglePoint:
    """Barycentric weights and their Cartesian image."""

    v: np.ndarray
    C: float
    S: float


@dataclass(frozen=True)
class RegionResult:
    """Classifier verdict for one frame."""

    region: str          # R1 | R2 | R3 | Boundary | Degenerate
    phase: int | None    # +1 / -1 when defined, None otherwise
    C: float
    S: float
    u: float             # ellipse indicator C^2 + S^2/g4^2
    distance_to_arc: float
    special_case: str = "none"   # none | commonEigenvector | vanishingPair | fullyDiagonal

    @property
    def phase_defined(self):
        return self.region in ("R1", "R2", "R3")


def v_coords(g1, g2, g3, ztol=config.ZTOL):
    """Barycentric weights (A*g2^2*g3^2, A*g3^2*g1^2, A*g1^2*g2^2).

    A single vanishing component sends the point to the matching vertex;
    two or more vanishing components have no image and raise ExcludedPoint.
    """
    comps = np.array([g1, g2, g3], dtype=float)
    if int(np.sum(np.abs(comps) < ztol)) >= 2:
        raise ExcludedPoint("two or more of (g1, g2, g3) vanish")
    sq = comps**2
    raw = np.array([sq[1] * sq[2], sq[2] * sq[0], sq[0] * sq[1]])
    return raw / raw.sum()


def cs_coords(v, psi):
    """Cartesian image (C, S) = (sum v_i cos psi_i, sum v_i sin psi_i)."""
    ang = psi_angles(psi)
    v = np.asarray(v, dtype=float)
    return TrianglePoint(v=v, C=float(v @ np.cos(ang)), S=float(v @ np.sin(ang)))


def g4_critical(psi):
    """Critical g4 below which a common-eigenvector point is degenerate.

    -sqrt(1 - 3/4 * cosec^2(psi + pi/3)); lies in [-1/2, 0) on (0, pi/3)
    with its minimum magnitude 1/2 at psi = pi/6.
    """
    if not (0.0 < psi < np.pi / 3.0):
        raise DomainError(f"psi = {psi} outside (0, pi/3)")
    val = 1.0 - 0.75 / np.sin(psi + np.pi / 3.0) ** 2
    return -float(np.sqrt(max(val, 0.0)))


def _barycentric(points, verts):
    """Barycentric coordinates of (..., 2) points w.r.t. a 2-simplex."""
    T = np.column_stack([verts[0] - verts[2], verts[1] - verts[2]])
    Tinv = np.linalg.inv(T)
    d = points - verts[2]
    lam12 = d @ Tinv.T
    lam3 = 1.0 - lam12.sum(axis=-1, keepdims=True)
    return np.concatenate([lam12, lam3], axis=-1)


@dataclass(frozen=True)
class EllipseArcs:
    """Ellipse segments clipped to the triangle.

    `kind` is 'ellipse' for |g4| strictly inside (0, 1), 'segment' for the
    g4 = 0 flat limit and 'circle' for |g4| = 1.  Each arc is a sampled
    polyline; `lower_active` says whether the S < 0 arc is the degenerate
    one (g4 > 0) or the S > 0 arc (g4 < 0).
    """

    kind: str
    upper: np.ndarray
    lower: np.ndarray
    lower_active: bool

    @property
    def active(self):
        return self.lower if self.lower_active else self.upper


def ellipse_arcs(psi, g4, ztol=config.ZTOL, samples=config.ARC_SAMPLES):
    """Sample the degeneracy ellipse C^2 + S^2/g4^2 = 1 inside the triangle."""
    verts = triangle_vertices(psi)
    b = abs(g4)
    if b <= ztol:
        kind = "segment"
        x = np.linspace(-1.0, 1.0, samples)
        pts = np.column_stack([x, np.zeros_like(x)])
        upper = lower = pts
    else:
        kind = "circle" if b >= 1.0 - ztol else "ellipse"
        t = np.linspace(0.0, np.pi, samples)
        upper = np.column_stack([np.cos(t), b * np.sin(t)])
        lower = np.column_stack([np.cos(t), -b * np.sin(t)])
    inside_u = (_barycentric(upper, verts) >= -1e-12).all(axis=1)
    inside_l = (_barycentric(lower, verts) >= -1e-12).all(axis=1)
    return EllipseArcs(
        kind=kind,
        upper=upper[inside_u],
        lower=lower[inside_l],
        lower_active=(g4 > 0.0),
    )


def _distance_to_arc(point, psi, g4, ztol=config.ZTOL, samples=config.ARC_SAMPLES):
    """Euclidean distance from a (C, S) point to the active degenerate arc.

    Dense sampling followed by one parabolic refinement in the arc
    parameter; inf when no part of the active arc lies in the triangle.
    """
    verts = triangle_vertices(psi)
    b = abs(g4)
    t = np.linspace(0.0, np.pi, samples)
    if b <= ztol:
        pts = np.column_stack([np.linspace(-1.0, 1.0, samples), np.zeros(samples)])
    else:
        s_sign = -1.0 if g4 > 0.0 else 1.0
        pts = np.column_stack([np.cos(t), s_sign * b * np.sin(t)])
    inside = (_barycentric(pts, verts) >= -1e-12).all(axis=1)
    if not inside.any():
        return float("inf")
    d2 = ((pts - point) ** 2).sum(axis=1)
    d2 = np.where(inside, d2, np.inf)
    k = int(np.argmin(d2))
    best = d2[k]
    if 0 < k < samples - 1 and np.isfinite(d2[k - 1]) and np.isfinite(d2[k + 1]):
        y0, y1, y2 = d2[k - 1], d2[k], d2[k + 1]
        denom = y0 - 2.0 * y1 + y2
        if denom > 0.0:
            dt = 0.5 * (y0 - y2) / denom
            dt = float(np.clip(dt, -1.0, 1.0))
            h = t[1] - t[0] if b > ztol else 2.0 / (samples - 1)
            if b <= ztol:
                q = pts[k] + np.array([dt * h, 0.0])
            else:
                tt = t[k] + dt * h
                s_sign = -1.0 if g4 > 0.0 else 1.0
                q = np.array([np.cos(tt), s_sign * b * np.sin(tt)])
            best = min(best, ((q - point) ** 2).sum())
    return float(np.sqrt(best))


def classify(frm, tol=config.REGION_TOL, ztol=config.ZTOL, arc_distance=True):
    """Locate a canonical frame in the diagram and read off its phase.

    Implements the vanishing-component special cases first, then the
    general ellipse-indicator test u = C^2 + S^2/g4^2 against 1.
    """
    g1, g2, g3, g4 = (float(x) for x in frm.g)
    psi = frm.psi
    small = [abs(g1) < ztol, abs(g2) < ztol, abs(g3) < ztol]

    if all(small):
        return RegionResult("Degenerate", None, np.nan, np.nan, np.nan, np.nan,
                            special_case="fullyDiagonal")
    if (small[0] and small[1]) or (small[1] and small[2]):
        return RegionResult("Degenerate", None, np.nan, np.nan, np.nan, np.nan,
                            special_case="vanishingPair")
    if small[0] and small[2]:
        # common eigenvector (0,1,0): limit image is the midpoint of the
        # v2 = 0 edge, reached by shrinking the g1 = g3 perturbation
        g4c = g4_critical(psi)
        tp = cs_coords(np.array([0.5, 0.0, 0.5]), psi)
        u = tp.C**2 + tp.S**2 / g4**2 if abs(g4) > ztol else np.inf
        dist = (_distance_to_arc(np.array([tp.C, tp.S]), psi, g4)
                if arc_distance else np.nan)
        if g4 > g4c + tol:
            return RegionResult("R1", -1, tp.C, tp.S, u, dist,
                                special_case="commonEigenvector")
        if g4 < g4c - tol:
            return RegionResult("Degenerate", None, tp.C, tp.S, u, dist,
                                special_case="commonEigenvector")
        return RegionResult("Boundary", None, tp.C, tp.S, u, dist,
                            special_case="commonEigenvector")

    tp = cs_coords(v_coords(g1, g2, g3, ztol=ztol), psi)
    dist = (_distance_to_arc(np.array([tp.C, tp.S]), psi, g4)
            if arc_distance else np.nan)
    if abs(g4) < ztol:
        # flat ellipse: the degenerate set is the S = 0 chord
        u = np.inf if tp.S != 0.0 else 1.0
        if tp.S > tol:
            return RegionResult("R1", -1, tp.C, tp.S, u, dist)
        if tp.S < -tol:
            return RegionResult("R3", +1, tp.C, tp.S, u, dist)
        return RegionResult("Boundary", None, tp.C, tp.S, u, dist)

    u = tp.C**2 + tp.S**2 / g4**2
    if u < 1.0 - tol:
        return RegionResult("R2", int(-np.sign(g4)), tp.C, tp.S, u, dist)
    if u > 1.0 + tol:
        if tp.S > 0.0:
            return RegionResult("R1", -1, tp.C, tp.S, u, dist)
        if tp.S < 0.0:
            return RegionResult("R3", +1, tp.C, tp.S, u, dist)
        # S = 0 exactly with u > 1: on the C axis outside the ellipse,
        # adjacent to both exterior regions only through a vertex
        return RegionResult("Boundary", None, tp.C, tp.S, u, dist)
    return RegionResult("Boundary", None, tp.C, tp.S, u, dist)

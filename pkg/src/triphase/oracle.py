"""Brute-force phase computation by eigenvector continuation.

March H(theta) = cos(theta) F + sin(theta) G around the loop, diagonalize
on a grid, and chain eigenvector signs by positive consecutive overlap.
The per-band phase is the sign relating the transported frame at 2*pi to
the starting frame.  Large per-step overlap defects trigger step doubling;
a persistent defect or a collapsed spectral gap marks the run unreliable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config, symmat

__all__ = ["ContinuationResult", "h_of_theta", "continuation", "transported_frame"]


@dataclass(frozen=True)
class ContinuationResult:
    """Per-band phases and diagnostics of one continuation run."""

    gamma: tuple          # (gamma1, gamma2, gamma3), each +/-1
    min_gap: float
    min_gap_theta: float
    steps: int
    overlap_defect: float
    reliable: bool


def h_of_theta(F, G, theta):
    """Loop Hamiltonian cos(theta) F + sin(theta) G; unit norm for all theta."""
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta)[..., None, None]
    s = np.sin(theta)[..., None, None]
    return c * np.asarray(F) + s * np.asarray(G)


def _transport_grid(F, G, steps):
    """Eigendecompose the loop on a grid and sign-transport the bands.

    Returns (thetas, values, transported vectors, per-step defect array);
    vectors[k, :, i] is band i at theta_k, sign-chained from theta_0 where
    the deterministic single-matrix sign convention is applied.
    """
    thetas = np.linspace(0.0, 2.0 * np.pi, steps + 1)
    H = h_of_theta(F, G, thetas)
    values, vectors = symmat.eigh_batch_fast(H)
    vectors[0] = symmat._fix_signs(vectors[0])
    overlaps = np.einsum("kai,kai->ki", vectors[:-1], vectors[1:])
    signs = np.where(overlaps < 0.0, -1.0, 1.0)
    chain = np.cumprod(signs, axis=0)
    vectors[1:] *= chain[:, None, :]
    defects = 1.0 - np.abs(overlaps)
    return thetas, values, vectors, defects


def _gaps_at(F, G, thetas):
    lam = symmat.eigvals_batch(h_of_theta(F, G, thetas))
    return np.minimum(lam[..., 0] - lam[..., 1], lam[..., 1] - lam[..., 2])


def _refine_min(F, G, lo, hi, best_gap, best_theta):
    """Shrink [lo, hi] around its gap minimum; return the best point seen."""
    for _ in range(4):
        if hi <= lo:
            break
        ts = np.linspace(lo, hi, 65)
        gs = _gaps_at(F, G, ts)
        j = int(np.argmin(gs))
        if gs[j] < best_gap:
            best_gap, best_theta = float(gs[j]), float(ts[j])
        if best_gap > 0.01:
            break   # far from any crossing; one refinement round suffices
        lo, hi = ts[max(j - 1, 0)], ts[min(j + 1, 64)]
    return best_gap, best_theta


def _min_gap(F, G, thetas, values):
    """Grid minimum of the spectral gap with local grid-shrinking refinement.

    Near-degenerate loops can show several almost-tied shallow minima while
    the true crossing sits in a different basin, so every competitive local
    minimum is refined, not just the grid argmin.
    """
    gaps = np.minimum(values[:, 0] - values[:, 1], values[:, 1] - values[:, 2])
    k = int(np.argmin(gaps))
    best_gap, best_theta = float(gaps[k]), float(thetas[k])
    last = len(thetas) - 1
    candidates = [k]
    if best_gap < 0.01:
        interior = gaps[1:-1]
        local = 1 + np.flatnonzero(
            (interior <= gaps[:-2]) & (interior <= gaps[2:])
            & (interior < 10.0 * best_gap))
        local = local[np.argsort(gaps[local])][:6]
        candidates += [int(i) for i in local if i != k]
    for i in candidates:
        best_gap, best_theta = _refine_min(
            F, G, thetas[max(i - 1, 0)], thetas[min(i + 1, last)],
            best_gap, best_theta)
    return best_gap, best_theta


def continuation(F, G, steps=config.STEPS, max_refine=config.MAX_REFINE,
                 gap_floor=config.GAP_FLOOR, odef_tol=config.ODEF_TOL):
    """Transport eigenvectors around the loop and read off the band phases."""
    if steps < 64:
        raise ValueError("steps must be at least 64")
    F = np.asarray(F, dtype=float)
    G = np.asarray(G, dtype=float)
    for attempt in range(max_refine + 1):
        thetas, values, vectors, defects = _transport_grid(F, G, steps)
        final = np.einsum("ai,ai->i", vectors[0], vectors[-1])
        defect = float(max(defects.max(), (1.0 - np.abs(final)).max()))
        if defect < odef_tol or attempt == max_refine:
            break
        grid_gaps = np.minimum(values[:, 0] - values[:, 1], values[:, 1] - values[:, 2])
        if grid_gaps.min() <= gap_floor:
            break   # unreliable whatever the defect; refinement cannot help
        steps *= 2
    gamma = tuple(int(x) for x in np.where(final < 0.0, -1, 1))
    min_gap, min_gap_theta = _min_gap(F, G, thetas, values)
    reliable = defect < odef_tol and min_gap > gap_floor
    return ContinuationResult(
        gamma=gamma,
        min_gap=min_gap,
        min_gap_theta=min_gap_theta,
        steps=steps,
        overlap_defect=defect,
        reliable=reliable,
    )


def transported_frame(F, G, theta, steps=config.STEPS):
    """Eigenvectors of H(theta), sign-connected by continuity to theta = 0.

    Marches the partial arc [0, theta] at the loop's grid density; columns
    are bands in descending eigenvalue order.
    """
    theta = float(theta)
    if not 0.0 <= theta <= 2.0 * np.pi + 1e-12:
        raise ValueError("theta must lie in [0, 2*pi]")
    m = max(int(np.ceil(steps * theta / (2.0 * np.pi))), 1)
    grid = np.linspace(0.0, theta, m + 1)
    H = h_of_theta(F, G, grid)
    _, vectors = symmat.eigh_batch(H)
    vectors = np.ascontiguousarray(vectors)
    vectors[0] = symmat._fix_signs(vectors[0])
    overlaps = np.einsum("kai,kai->ki", vectors[:-1], vectors[1:])
    chain = np.cumprod(np.where(overlaps < 0.0, -1.0, 1.0), axis=0)
    vectors[1:] *= chain[:, None, :]
    return vectors[-1]

"""Mirror symmetry of the loop wavefunctions.

When the anchor F is even and G odd under a diagonal reflection P, the
loop satisfies P H(theta) P = H(2*pi - theta) and each band obeys
Psi_i(2*pi - theta) = sigma_i * P Psi_i(theta) with a constant sign
sigma_i equal to the band's topological phase times its parity at
theta = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config, oracle, symmat
from .errors import InconsistentSigma, SymmetryViolated

__all__ = ["ParitySignature", "MirrorReport", "parity_split", "check_symmetry", "mirror_report"]


@dataclass(frozen=True)
class ParitySignature:
    """Parities (+/-1 each) of the three basis states; P = diag(p)."""

    p: tuple

    def __post_init__(self):
        if len(self.p) != 3 or any(x not in (-1, 1) for x in self.p):
            raise ValueError("parity signature must be three values of +/-1")

    @property
    def matrix(self):
        return np.diag([float(x) for x in self.p])


@dataclass(frozen=True)
class MirrorReport:
    """Reflection signs per band and how well the symmetry holds."""

    sigma: tuple            # (sigma1, sigma2, sigma3)
    gamma: tuple            # phases from the continuation run
    band_parity: tuple      # parity of each theta = 0 eigenvector under P
    max_residual: float     # worst |Psi(2pi-theta) - sigma*P*Psi(theta)|
    identity_holds: bool    # sigma_i == gamma_i * band_parity_i


def parity_split(h, p):
    """Even/odd decomposition of a matrix under conjugation by P.

    even = (h + PhP)/2, odd = (h - PhP)/2; the parts reassemble to h and
    are orthogonal in the trace inner product.
    """
    P = p.matrix if isinstance(p, ParitySignature) else np.diag(np.asarray(p, dtype=float))
    h = np.asarray(h, dtype=float)
    conj = P @ h @ P
    return (h + conj) / 2.0, (h - conj) / 2.0


def check_symmetry(F, G, p, tol=1e-10):
    """True iff F is P-even and G is P-odd."""
    P = p.matrix if isinstance(p, ParitySignature) else np.diag(np.asarray(p, dtype=float))
    F = np.asarray(F, dtype=float)
    G = np.asarray(G, dtype=float)
    return (np.linalg.norm(P @ F @ P - F) <= tol
            and np.linalg.norm(P @ G @ P + G) <= tol)


def mirror_report(F, G, p, theta_samples=config.THETA_SAMPLES, steps=config.STEPS):
    """Measure the reflection signs sigma_i over the loop.

    Runs one continuation, then compares the transported frames at theta
    and 2*pi - theta through P at `theta_samples` interior positions; all
    samples must agree on each sigma_i.
    """
    if not isinstance(p, ParitySignature):
        p = ParitySignature(tuple(int(x) for x in p))
    if not check_symmetry(F, G, p):
        raise SymmetryViolated("pair is not (even, odd) under the given parity")
    result = oracle.continuation(F, G, steps=steps)
    if not result.reliable:
        raise SymmetryViolated(
            f"continuation unreliable (min gap {result.min_gap:.3e}); sigma undefined")
    steps = result.steps
    _, _, vectors, _ = oracle._transport_grid(np.asarray(F, float), np.asarray(G, float), steps)
    P = p.matrix

    v0 = vectors[0]
    par_overlap = np.einsum("ai,ai->i", v0, P @ v0)
    if np.min(np.abs(par_overlap)) < config.PARITY_OVERLAP_MIN:
        raise InconsistentSigma("theta = 0 eigenvectors are not clean parity eigenstates")
    band_parity = tuple(int(x) for x in np.where(par_overlap < 0.0, -1, 1))

    ks = np.unique(np.clip(
        np.round(np.arange(1, theta_samples + 1) * steps / (2.0 * (theta_samples + 1))),
        1, steps // 2 - 1).astype(int))
    sigma_samples = []
    max_residual = 0.0
    for k in ks:
        a = vectors[steps - k]          # frame at 2*pi - theta_k
        b = P @ vectors[k]              # reflected frame at theta_k
        ov = np.einsum("ai,ai->i", a, b)
        sig = np.where(ov < 0.0, -1.0, 1.0)
        sigma_samples.append(sig)
        max_residual = max(max_residual, float(np.linalg.norm(a - b * sig, axis=0).max()))
    sigma_samples = np.array(sigma_samples)
    if not (sigma_samples == sigma_samples[0]).all():
        raise InconsistentSigma("reflection signs disagree between theta samples")
    sigma = tuple(int(x) for x in sigma_samples[0])
    identity = all(s == g * bp for s, g, bp in zip(sigma, result.gamma, band_parity))
    return MirrorReport(
        sigma=sigma,
        gamma=result.gamma,
        band_parity=band_parity,
        max_residual=max_residual,
        identity_holds=identity,
    )

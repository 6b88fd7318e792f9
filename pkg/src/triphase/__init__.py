"""Topological (real Berry) phases of three-state symmetric Hamiltonian loops.

Geometric classification of the +/-1 phase picked up by the eigenvectors
of H(theta) = cos(theta) F + sin(theta) G around a triple degeneracy,
cross-validated by an eigenvector-continuation oracle, with degenerate-set
geometry, nearest-degeneracy search and mirror-symmetry analysis.
"""

from .classifier import (RegionResult, classify, cs_coords, ellipse_arcs,
                         g4_critical, v_coords)
from .degeneracy import (DegeneratePoint, b_point, d_point, degeneracy_angle,
                         nearest_degenerate)
from .frame import (GeodesicFrame, build_frame, canonicalize_signs,
                    frame_from_coords, orthonormalize)
from .mirror import (MirrorReport, ParitySignature, check_symmetry,
                     mirror_report, parity_split)
from .oracle import ContinuationResult, continuation, h_of_theta, transported_frame
from .symmat import (Q0, Q1, Q2, Q3, Q4, QBASIS, Spectrum, detrace, eig,
                     from_q_coords, inner, normalize, psi_of, sym_matrix,
                     to_q_coords)

__version__ = "0.1.0"

"""Explore the degenerate set and the nearest-degeneracy search.

Traceless symmetric unit-norm matrices with a repeated eigenvalue form two
projective planes D+ and D- on the four-sphere, parametrized by the
nondegenerate eigenvector n.  Projecting them into the equator of the
anchor F gives the set B of loop directions whose geodesic actually hits a
degeneracy.  This script samples B, verifies the ellipse identity these
points satisfy, and runs the nearest-degeneracy search for a generic loop.
"""

import numpy as np

from triphase import (b_point, classify, cs_coords, frame_from_coords,
                      nearest_degenerate, v_coords)

rng = np.random.default_rng(0)
PSI = 0.4

print("five random points of B at psi = 0.4 (each satisfies C^2 + S^2/b4^2 = 1):")
for _ in range(5):
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    branch = 1 if rng.random() < 0.5 else -1
    point = b_point(branch, n, PSI)
    tp = cs_coords(v_coords(*point.b[:3]), PSI)
    resid = tp.C**2 + tp.S**2 / point.b4**2 - 1.0
    print(f"  branch {point.branch:+d}  b = ({point.b[0]:+.4f}, {point.b[1]:+.4f}, "
          f"{point.b[2]:+.4f}, {point.b4:+.4f})  identity residual {resid:+.1e}")

g = np.array([0.8, 0.35, 0.2, 0.42])
g /= np.linalg.norm(g)
frm = frame_from_coords(PSI, g)
point, dist = nearest_degenerate(frm)
res = classify(frm)
print(f"\ngeneric loop g = ({frm.g1:.3f}, {frm.g2:.3f}, {frm.g3:.3f}, {frm.g4:.3f}):")
print(f"  region {res.region}, phase {res.phase:+d}")
print(f"  nearest degenerate direction (branch {point.branch:+d}): "
      f"b = ({point.b[0]:+.4f}, {point.b[1]:+.4f}, {point.b[2]:+.4f}, {point.b4:+.4f})")
print(f"  distance in the equatorial 3-sphere: {dist:.4f}")
print(f"  (compare the in-plane arc distance {res.distance_to_arc:.4f} "
      "from the diagram)")

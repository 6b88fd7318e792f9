"""Draw the triangle/ellipse phase diagram for a family of loops.

For a fixed anchor direction (spectral angle psi), every loop direction g
maps to a point (C, S) inside an equilateral triangle.  An inscribed
ellipse with vertical semi-axis |g4| splits the triangle into regions of
constant topological phase; loops whose point lands on the active arc of
the ellipse pass through a degeneracy and have no phase at all.  This
script renders the diagram as SVG for a few values of g4.
"""

import numpy as np

from triphase import classify, frame_from_coords
from triphase.cli import render_diagram

PSI = np.pi / 6

for g4 in (0.7, 0.25, -0.25, -0.7):
    g = np.array([0.5, 0.5, 0.5, g4])
    g /= np.linalg.norm(g)
    frm = frame_from_coords(PSI, g)
    res = classify(frm)
    name = f"diagram_g4_{g4:+.2f}.svg".replace("+", "p").replace("-", "m")
    with open(name, "w", encoding="utf-8") as fh:
        fh.write(render_diagram(frm, res))
    print(f"g4 = {g4:+.2f}: query point in {res.region} "
          f"(phase {res.phase:+d}), wrote {name}")

print("\nThe thick arc is the degenerate part of the ellipse: the lower arc")
print("for g4 > 0, the upper arc for g4 < 0.  Crossing it flips the phase.")

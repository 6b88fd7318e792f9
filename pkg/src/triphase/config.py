"""Centralized numerical tolerances and solver defaults.

Every threshold used across the package lives here so that a single
override point exists; functions accept keyword overrides and fall back
to these values.
"""

# symmat
NORM_EPS = 1e-24        # squared-norm floor below which a matrix counts as zero
TRACE_TOL = 1e-12       # |trace| bound for "traceless"
UNIT_TOL = 1e-10        # |<a,a>-1| bound for "unit norm"
EIG_DEGEN_TOL = 1e-12   # eigenvalue gap below which eig reports a tie
EIG_VEC_FALLBACK = 1e-8 # cross-product norm floor before LAPACK fallback

# frame
PSI_TOL = 1e-6          # exclusion margin around psi = 0 and psi = pi/3
COLLINEAR_TOL = 1e-10   # Gram-Schmidt residual floor

# classifier
ZTOL = 1e-9             # "a g-component vanishes"
REGION_TOL = 1e-7       # boundary band half-width on the ellipse indicator u
ARC_SAMPLES = 1024      # dense sampling count for arc distance

# degeneracy
CTOL = 1e-12            # 1 - c^2 floor for the equatorial projection
GRID_N = 64             # coarse grid resolution per spherical angle
REFINE_ITERS = 200      # Nelder-Mead iteration budget

# oracle
STEPS = 4096            # default theta-grid resolution
MAX_REFINE = 6          # step-doubling retries on overlap defect
GAP_FLOOR = 1e-5        # minimum spectral gap for a reliable phase
ODEF_TOL = 1e-6         # per-step overlap defect bound

# mirror
PARITY_OVERLAP_MIN = 0.99   # |<v, Pv>| floor for a clean band parity
THETA_SAMPLES = 32          # interior loop positions checked for mirror signs

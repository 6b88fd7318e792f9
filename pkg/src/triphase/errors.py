"""Exception hierarchy for triphase."""


class TriphaseError(Exception):
    """Base class for all triphase errors."""


class ZeroMatrix(TriphaseError):
    """Normalization requested for a matrix with (numerically) zero norm."""


class NotTraceless(TriphaseError):
    """Operation requires a traceless matrix."""


class NotNormalized(TriphaseError):
    """Operation requires a unit-norm matrix."""


class DegeneratePerturbation(TriphaseError):
    """First perturbation matrix is effectively zero after detracing."""


class CollinearPerturbations(TriphaseError):
    """Perturbation pair spans a line, not a plane; no loop exists."""


class DegenerateAnchor(TriphaseError):
    """Anchor matrix F itself is doubly degenerate; no phase at theta=0."""


class ExcludedPoint(TriphaseError):
    """Two or more of (g1, g2, g3) vanish; triangle coordinates undefined."""


class DomainError(TriphaseError):
    """Scalar argument outside its admissible interval."""


class ParallelToAnchor(TriphaseError):
    """Degenerate point is parallel to the anchor; equatorial projection blows up."""


class InconsistentInputs(TriphaseError):
    """Cross-module consistency check between inputs failed."""


class SymmetryViolated(TriphaseError):
    """Pair (F, G) does not satisfy the requested reflection symmetry."""


class InconsistentSigma(TriphaseError):
    """Reflection signs disagree between sampled loop positions."""


class InputError(TriphaseError):
    """Malformed input document (CLI layer)."""

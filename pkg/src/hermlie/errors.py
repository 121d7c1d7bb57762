"""Exception hierarchy shared by all hermlie modules."""


class HermlieError(Exception):
    """Base class for every error raised by this package."""


class TypeMismatch(HermlieError):
    """Shapes or dimensions of the supplied objects disagree."""


class ValidationError(HermlieError):
    """A structural invariant of an input object is violated.

    ``field`` names the offending field or file location when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class ParseError(HermlieError):
    """An input document could not be parsed; ``location`` is line/field info."""

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location


class FrameNotUnitary(HermlieError):
    """A frame fails the unitarity or type-(1,0) requirement for the metric."""


class MetricNotSPD(HermlieError):
    """The supplied inner product matrix is not symmetric positive definite."""


class FlagNotJInvariant(HermlieError):
    """A subspace supplied to the frame builder is not J-invariant."""


class NotUnitary(HermlieError):
    """A matrix required to be unitary is not, within tolerance."""


class NotALieAlgebra(HermlieError):
    """The Jacobi identity fails beyond tolerance."""


class NotIntegrable(HermlieError):
    """The almost complex structure fails the integrability condition."""


class CommutatorNotComplex(HermlieError):
    """The commutator ideal is not J-invariant."""


class NotNilpotentCommutator(HermlieError):
    """The restricted algebra expected to be nilpotent is not."""


class AdmissibleFrameNotFound(HermlieError):
    """The documented search for an admissible frame exhausted its budget."""


class DiagonalizationFailed(HermlieError):
    """Simultaneous diagonalization residuals exceeded tolerance."""


class ZeroVector(HermlieError):
    """A direction vector required to be nonzero is zero."""


class ZeroParameter(HermlieError):
    """A family parameter required to be nonzero is zero."""


class DegenerateRow(HermlieError):
    """A parameter row is entirely zero, shrinking the commutator."""


class JacobiViolation(HermlieError):
    """Structure constants fail the Jacobi identity.

    Carries the numeric defect, the offending bracket triples, and (for the
    six-dimensional family) the full constraint report.
    """

    def __init__(self, message, defect=None, triples=None, report=None):
        super().__init__(message)
        self.defect = defect
        self.triples = triples or []
        self.report = report


class PreconditionFailed(HermlieError):
    """A documented precondition of an operation is violated.

    ``violations`` lists short machine-readable names for every failed
    precondition, e.g. ``["commutator_not_complex", "not_chern_flat"]``.
    """

    def __init__(self, violations, detail=None):
        names = ", ".join(violations)
        super().__init__(f"precondition failed: {names}" + (f" ({detail})" if detail else ""))
        self.violations = list(violations)


class TheoremViolationCandidate(HermlieError):
    """Constant holomorphic sectional curvature without Chern flatness.

    Never a verdict: signals either a numerical/logic bug or a genuine
    counterexample.  Carries the full serialized instance and diagnostics so
    the case can be reproduced.
    """

    def __init__(self, message, instance=None, diagnostics=None):
        super().__init__(message)
        self.instance = instance
        self.diagnostics = diagnostics or {}

"""Exception hierarchy shared by all modules.

Two families matter to callers: :class:`ValidationError` covers malformed
input (bad dimensions, bad files, bad shift sets) and maps to CLI exit
code 2; :class:`NumericalError` covers failures of well-formed problems
(instability, singularity, rank deficiency) and maps to exit code 3.
"""


class ReductionError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ReductionError):
    """Input is malformed or violates a documented precondition."""


class NumericalError(ReductionError):
    """A well-formed problem could not be solved numerically."""


class DimensionMismatch(ValidationError):
    """Matrix dimensions are inconsistent."""


class SingularE(ValidationError):
    """E is singular or too ill-conditioned for transfer evaluation."""


class PoleHit(NumericalError):
    """Evaluation point coincides with a system pole."""


class EigFailure(NumericalError):
    """Generalized eigenvalue iteration did not converge."""


class GenerationFailure(NumericalError):
    """Random system generation exhausted its attempt budget."""


class DuplicatePoint(ValidationError):
    """Two sample points coincide within the matching tolerance."""


class MissingSample(ValidationError):
    """No stored sample matches the requested point."""


class MissingDerivative(ValidationError):
    """The matched sample has no stored derivative."""


class AmbiguousMatch(ValidationError):
    """More than one stored sample matches the requested point."""


class ParseError(ValidationError):
    """A data file could not be parsed."""


class UnstablePencil(NumericalError):
    """The pencil (A, E) has an eigenvalue with nonnegative real part."""


class PoleOnAxis(UnstablePencil):
    """A pole on or right of the imaginary axis makes the Gramian integral diverge."""


class SolveFailure(NumericalError):
    """A matrix equation solve failed or missed its residual bound."""


class NotPSD(NumericalError):
    """Matrix expected to be positive semidefinite has a negative eigenvalue."""


class MissingHermiteData(ValidationError):
    """Coincident left/right point without the required derivative entry."""


class ShapeMismatch(ValidationError):
    """Shift counts and I/O dimensions violate k*m == l*p, or block shapes disagree."""


class NonNegativeRealPart(ValidationError):
    """An ADI shift lies on or right of the imaginary axis."""


class RepeatedShift(ValidationError):
    """A shift appears more than once on the same side."""


class IllConditionedPick(NumericalError):
    """Clustered shifts make the Pick matrix numerically unusable."""


class RankDeficient(NumericalError):
    """Requested reduced order exceeds the numerical rank of the balancing matrix."""


class SingularPencilWarning(UserWarning):
    """An interpolatory pencil is singular at one of its own points."""


class NearCoincidentShiftWarning(UserWarning):
    """Distinct left/right shifts nearly coincide; divided differences are ill-conditioned."""

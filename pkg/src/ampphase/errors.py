"""Exception types raised by ampphase."""


class AmplificationError(ValueError):
    """Base class for rejected inputs."""


class DegenerateSubspaceError(AmplificationError):
    """The good/bad subspace is one-dimensional (a is 0 or 1)."""


class ExcludedPhaseError(AmplificationError):
    """A phase lies in a range where the requested quantity is undefined."""


class UnreachableRotationError(AmplificationError):
    """The rotation angle exceeds what a single iterate can realize."""


class NotEqualDiagonalError(AmplificationError):
    """The matrix does not have equal diagonal entries."""


class TrivialAnglesError(AmplificationError):
    """The phases give a zero rotation angle, so no progress is possible."""


class MismatchedModelError(AmplificationError):
    """A plan was applied with phases that do not match its model."""


class DimensionLimitError(AmplificationError):
    """The register simulation would exceed the supported size."""


class InvalidMarkedSetError(AmplificationError):
    """The marked set is empty, covers every index, or is out of range."""


class PreconditionError(AmplificationError):
    """A stated precondition on the arguments does not hold."""


class ContractViolation(RuntimeError):
    """An internal post-condition failed; indicates a numerical or logic bug."""

"""Exception hierarchy shared by all modules."""


class KugaCertError(ValueError):
    """Base class for every error raised by this package."""


class InvalidInputError(KugaCertError):
    """Arguments violate a documented type invariant or precondition."""


class DataMissingError(KugaCertError):
    """Optional data needed by an operation was not supplied."""


class NotApplicableError(KugaCertError):
    """The quantity is undefined for this input (e.g. defect of a unitary summand)."""


class PreconditionError(KugaCertError):
    """A mathematical precondition (equality, semistability, ...) does not hold."""


class LatticeDiagnostic(KugaCertError):
    """A subobject lattice is inconsistent with the axioms the algorithms rely on.

    Raised instead of returning an answer that would silently be wrong.
    """

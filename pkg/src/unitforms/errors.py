"""Exception hierarchy shared by every module."""


class UnitFormError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(UnitFormError, ValueError):
    pass


class NotConnectedError(UnitFormError):
    pass


class InvalidWalkError(UnitFormError):
    pass


class NonUnitResult(UnitFormError):
    """A flation would leave a diagonal entry different from 1."""


class WrongSign(UnitFormError):
    """The flation sign does not match the sign of the coupling coefficient."""


class ParallelArrowsError(UnitFormError):
    pass


class NotAdmissibleError(UnitFormError):
    pass


class NotAStarError(UnitFormError):
    pass


class NotATreeError(UnitFormError):
    pass


class NotAOneStarError(UnitFormError):
    pass


class NotAOneTreeError(UnitFormError):
    pass


class VertexNotInQuiverError(UnitFormError):
    pass


class ColumnNotIncidenceError(UnitFormError):
    """A matrix column is not of the form e_s - e_t."""


class NotNonNegative(UnitFormError):
    pass


class NotTypeA(UnitFormError):
    pass


class WrongCorank(UnitFormError):
    pass


class SearchLimitExceeded(UnitFormError):
    pass


class CertificateError(UnitFormError):
    """A certificate produced internally failed its own verification."""


NotConnected = NotConnectedError

"""Exception hierarchy shared by every module of the toolkit."""


class StegoError(ValueError):
    """Base class for all errors raised by magiclsb."""


class NonOctetLength(StegoError):
    pass


class EmptyKey(StegoError):
    pass


class OrderTooSmall(StegoError):
    pass


class ValueOutOfRange(StegoError):
    pass


class NonSquareImage(StegoError):
    pass


class EcOutOfRange(StegoError):
    pass


class CapacityExceeded(StegoError):
    def __init__(self, available, requested):
        self.available = available
        self.requested = requested
        super().__init__(f"payload needs {requested} bits but only {available} are available")


class HeaderTooLarge(StegoError):
    pass


class PlanMismatch(StegoError):
    pass


class PgmError(StegoError):
    pass


class BadMagic(PgmError):
    pass


class MalformedHeader(PgmError):
    pass


class UnsupportedMaxval(PgmError):
    pass


class TruncatedRaster(PgmError):
    pass


class TrailingData(PgmError):
    pass


class InvalidImage(StegoError):
    pass


class DimensionMismatch(StegoError):
    pass


class EmptyInput(StegoError):
    pass

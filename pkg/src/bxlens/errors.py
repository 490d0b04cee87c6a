"""Exceptions and sentinels shared across the package."""


class BxError(Exception):
    """Base class for all errors raised by bxlens."""


class CarrierMismatch(BxError):
    pass


class EffectMismatch(BxError):
    pass


class BoundExceeded(BxError):
    """An enumeration would exceed the configured budget."""


class UnsupportedMembership(BxError):
    pass


class ConsistencyViolation(BxError):
    pass


class InvalidWitness(BxError):
    pass


class NonPureInput(BxError):
    pass


class InvalidChain(BxError):
    pass


class OutOfCarrier(BxError):
    """A table or function produced a value outside its declared carrier."""


class EmptyStateWithNonemptyViews(UserWarning):
    pass


class _NotFound:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotFound"

    def __bool__(self):
        return False


NotFound = _NotFound()

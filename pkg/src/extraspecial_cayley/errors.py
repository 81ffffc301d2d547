"""Exception types shared across the package."""


class CayleyError(Exception):
    """Base class for all package errors."""


class InternalInvariant(CayleyError):
    """A structural check that should always hold has failed."""


class BoundExceeded(CayleyError):
    pass


class NotInvariant(CayleyError):
    """A generator maps a point (or tuple) outside the given set."""


class NotSubgroup(CayleyError):
    pass


class BadPartition(CayleyError):
    pass


class NotGraphAutomorphism(CayleyError):
    pass


class NotAutomorphismGroup(CayleyError):
    pass


class NoSArcs(CayleyError):
    pass


class OutOfRange(CayleyError):
    pass


class MismatchWitness(CayleyError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotIsomorphism(CayleyError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCliquePreserving(CayleyError):
    pass


class ConfigError(CayleyError):
    pass

"""Exception types raised by starnet.

Every error derives from :class:`StarNetError`, itself a ``ValueError``,
so callers that only care about bad input can catch ``ValueError``.
"""


class StarNetError(ValueError):
    pass


class InvalidDimensionError(StarNetError):
    pass


class InvalidPairError(StarNetError):
    pass


class InvalidIndexError(StarNetError):
    pass


class EnumerationTooLargeError(StarNetError):
    pass


class InvalidSettingsError(StarNetError):
    pass


class InvalidRadiusError(StarNetError):
    pass


class UnsupportedParameterError(StarNetError):
    pass


class DegenerateDifferenceError(StarNetError):
    pass


class InvalidPositionError(StarNetError):
    pass


class InvalidParamsError(StarNetError):
    pass


class OracleTooLargeError(StarNetError):
    pass


class InvalidInputError(StarNetError):
    pass

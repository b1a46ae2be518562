"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures to stable
process statuses: 1 usage, 2 I/O, 3 processing.
"""


class OilFusionError(Exception):
    exit_code = 3


class UsageError(OilFusionError):
    exit_code = 1


class IoError(OilFusionError):
    exit_code = 2


class ImageNotFound(IoError, FileNotFoundError):
    pass


class UnsupportedFormat(IoError):
    pass


class DecodeError(IoError):
    pass


class InvalidParameter(OilFusionError, ValueError):
    pass


class InvalidSigma(InvalidParameter):
    pass


class TooSmall(OilFusionError, ValueError):
    pass


class WindowTooLarge(OilFusionError, ValueError):
    pass


class NotSquare(OilFusionError, ValueError):
    pass


class SizeMismatch(OilFusionError, ValueError):
    pass


class DimensionMismatch(OilFusionError, ValueError):
    pass


class ImageSmallerThanPatch(OilFusionError, ValueError):
    pass

"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class SDFTError(ValueError):
    exit_code = 1


class InvalidInputError(SDFTError):
    """Malformed, non-finite, wrongly shaped or wrongly typed input."""

    exit_code = 2


class SizeMismatchError(SDFTError):
    """Key and signal disagree on size or mode."""

    exit_code = 3


class DegenerateKeyError(SDFTError):
    """Scramble key with an angle too close to an odd multiple of pi/4."""

    exit_code = 3


class UnsupportedSizeError(SDFTError):
    """Odd or too-small N passed to an SDFT operation."""

    exit_code = 4


class VerificationError(SDFTError):
    exit_code = 5

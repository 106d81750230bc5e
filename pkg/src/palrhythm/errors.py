"""Exception types shared across the package."""


class RhythmError(Exception):
    """Base class for every domain error raised by palrhythm."""


class InvalidArgument(RhythmError, ValueError):
    pass


class Unsupported(RhythmError):
    """Input lies outside the case the analysis covers (e.g. gcd(p, n) != 1)."""


class NotDecimalRepresentable(InvalidArgument):
    pass


class InvalidPump(InvalidArgument):
    pass


class NoSolution(RhythmError):
    pass


class SizeLimitError(RhythmError):
    """An exhaustive search would exceed its configured guard."""

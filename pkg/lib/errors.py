class CensusError(Exception):
    """Base class for domain errors reported by the CLI with exit status 1."""


class DimensionError(CensusError, ValueError):
    pass


class PreconditionError(CensusError, ValueError):
    pass


class OutOfRangeError(CensusError, ValueError):
    pass


class CacheFormatError(CensusError):
    pass


class NonGenericError(CensusError):
    """Raised when a length vector lies on a tie wall; `wall` is the tie set (bitmask, bit i-1 for i)."""

    def __init__(self, wall: int, message: str | None = None) -> None:
        self.wall = wall
        super().__init__(message or f"length vector lies on the wall of {{{_members_text(wall)}}}")


def _members_text(mask: int) -> str:
    members = [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]
    return ",".join(str(i) for i in reversed(members))

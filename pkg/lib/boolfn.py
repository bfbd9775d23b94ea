from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from lib.errors import DimensionError, PreconditionError
from lib.group import GroupElement, act_bool, inverse

MAX_TABLE_N = 16

_FIELD = 7  # bits per packed prefix sum; values stay below the guard bit


@dataclass(frozen=True)
class BoolFunc:
    """Truth table of f: B_n -> B_1.

    Input index k = sum x_j * 2^(n-j); the table int is stored most significant
    bit first, so f(k) sits at bit 2^n - 1 - k and int order is lexicographic order.
    """

    n: int
    table: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_TABLE_N:
            raise DimensionError(f"arity {self.n} outside 0..{MAX_TABLE_N} for explicit tables")
        if self.table < 0 or self.table >> self.size:
            raise DimensionError(f"table does not fit {self.size} entries")

    @property
    def size(self) -> int:
        return 1 << self.n

    def value(self, k: int) -> int:
        return self.table >> (self.size - 1 - k) & 1

    def values(self) -> list[int]:
        return [self.value(k) for k in range(self.size)]

    @classmethod
    def from_values(cls, n: int, values: Iterable[int]) -> "BoolFunc":
        table = 0
        count = 0
        for v in values:
            table = table << 1 | (1 if v else 0)
            count += 1
        if count != 1 << n:
            raise DimensionError(f"expected {1 << n} values, got {count}")
        return cls(n, table)

    def to_hex(self) -> str:
        digits = max(1, -(-self.size // 4))
        return format(self.table << (4 * digits - self.size), f"0{digits}x")

    @classmethod
    def from_hex(cls, n: int, text: str) -> "BoolFunc":
        if not 0 <= n <= MAX_TABLE_N:
            raise DimensionError(f"arity {n} outside 0..{MAX_TABLE_N} for explicit tables")
        size = 1 << n
        digits = max(1, -(-size // 4))
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        if len(text) != digits:
            raise PreconditionError(f"arity {n} needs {digits} hex digits, got {len(text)}")
        raw = int(text, 16)
        pad = 4 * digits - size
        if raw & ((1 << pad) - 1):
            raise PreconditionError(f"padding bits of {text!r} must be zero")
        return cls(n, raw >> pad)


@dataclass(frozen=True)
class HalfCubeFunc:
    """f restricted to B_n^1 = {x | x_1 = 1}; index j stands for input 2^(n-1) + j, MSB first."""

    n: int
    table: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_TABLE_N:
            raise DimensionError(f"arity {self.n} outside 1..{MAX_TABLE_N}")
        if self.table < 0 or self.table >> self.size:
            raise DimensionError(f"table does not fit {self.size} entries")

    @property
    def size(self) -> int:
        return 1 << (self.n - 1)

    def value(self, j: int) -> int:
        return self.table >> (self.size - 1 - j) & 1

    @classmethod
    def from_values(cls, n: int, values: Iterable[int]) -> "HalfCubeFunc":
        table = 0
        for v in values:
            table = table << 1 | (1 if v else 0)
        return cls(n, table)


# ---------------------------------------------------------------------------
# Named functions
# ---------------------------------------------------------------------------

def constant(n: int, v: int) -> BoolFunc:
    return BoolFunc(n, (1 << (1 << n)) - 1 if v else 0)


def dictator(n: int, i: int, negated: bool = False) -> BoolFunc:
    """x_i (or its negation), i 1-based."""
    shift = n - i
    return BoolFunc.from_values(n, ((k >> shift & 1) ^ negated for k in range(1 << n)))


def majority(n: int) -> BoolFunc:
    return BoolFunc.from_values(n, (2 * k.bit_count() > n for k in range(1 << n)))


def parity(n: int) -> BoolFunc:
    return BoolFunc.from_values(n, (k.bit_count() & 1 for k in range(1 << n)))


# ---------------------------------------------------------------------------
# Action and predicates
# ---------------------------------------------------------------------------

def act_fn(g: GroupElement, f: BoolFunc) -> BoolFunc:
    """f^(ν,σ)(x) = f(x^((ν,σ)^-1))."""
    if g.n != f.n:
        raise DimensionError(f"group element on {g.n} letters, function of arity {f.n}")
    g_inv = inverse(g)
    return BoolFunc.from_values(f.n, (f.value(act_bool(g_inv, x)) for x in range(f.size)))


def is_self_dual(f: BoolFunc) -> bool:
    top = f.size - 1
    return all(f.value(x) != f.value(top - x) for x in range(f.size // 2 or 1)) if f.n else False


def is_monotone(f: BoolFunc) -> bool:
    for x in range(f.size):
        if not f.value(x):
            continue
        for b in range(f.n):
            if not x >> b & 1 and not f.value(x | 1 << b):
                return False
    return True


@lru_cache(maxsize=None)
def _guard(n: int) -> int:
    return sum(1 << (_FIELD * k + _FIELD - 1) for k in range(n))


def prefix_code(x: int, n: int) -> int:
    """Pack the prefix sums x_1 + ... + x_k (k = 1..n) into fixed-width fields."""
    code = 0
    for k in range(1, n + 1):
        code |= (x >> (n - k)).bit_count() << (_FIELD * (k - 1))
    return code


def packed_leq(code_x: int, code_y: int, n: int) -> bool:
    """Fieldwise code_x <= code_y for two prefix_code values."""
    guard = _guard(n)
    return (code_y + guard - code_x) & guard == guard


def dominance_leq(x: int, y: int, n: int) -> bool:
    """x ≼ y iff every prefix sum of x is at most the matching prefix sum of y."""
    if x >> n or y >> n or x < 0 or y < 0:
        raise DimensionError(f"Boolean vectors do not fit length {n}")
    return packed_leq(prefix_code(x, n), prefix_code(y, n), n)


def upper_covers(x: int, n: int) -> Iterator[int]:
    """Covers of x in ≼: move one 1 a step to the left, or set x_n."""
    for b in range(n - 1):
        if x >> b & 1 and not x >> (b + 1) & 1:
            yield x ^ (3 << b)
    if n and not x & 1:
        yield x | 1


def lower_covers(x: int, n: int) -> Iterator[int]:
    for b in range(n - 1):
        if x >> (b + 1) & 1 and not x >> b & 1:
            yield x ^ (3 << b)
    if n and x & 1:
        yield x ^ 1


def is_regular(f: BoolFunc) -> bool:
    """f(x) <= f(y) whenever x ≼ y, checked on covering pairs only."""
    for x in range(f.size):
        if not f.value(x):
            continue
        for y in upper_covers(x, f.n):
            if not f.value(y):
                return False
    return True


# ---------------------------------------------------------------------------
# Self-dual extension from the half cube
# ---------------------------------------------------------------------------

def restrict(f: BoolFunc) -> HalfCubeFunc:
    if f.n < 1:
        raise DimensionError("the half cube needs at least one variable")
    half = f.size // 2
    return HalfCubeFunc(f.n, f.table & ((1 << half) - 1))


def extend_self_dual(h: HalfCubeFunc) -> BoolFunc:
    half = h.size
    lower = (1 - h.value(half - 1 - k) for k in range(half))
    upper = (h.value(j) for j in range(half))
    return BoolFunc.from_values(h.n, [*lower, *upper])


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

def _least_relabelling(values: list[int], n: int, bound: int | None) -> int | None:
    """Least table of x -> values[y(x)] over variable relabellings, or None if none beats `bound`.

    Variables are placed from x_n backwards; once x_n..x_(n-d+1) have images the first
    2^d table entries are fixed, which is what the pruning compares against.
    """
    size = 1 << n
    best = [bound]

    def descend(ys: list[int], prefix: int, used: int) -> None:
        width = len(ys)
        if width == size:
            if best[0] is None or prefix < best[0]:
                best[0] = prefix
            return
        for s in range(n):
            if used >> s & 1:
                continue
            bit = 1 << (n - 1 - s)
            grown = [y | bit for y in ys]
            segment = 0
            for y in grown:
                segment = segment << 1 | values[y]
            extended = prefix << width | segment
            if best[0] is not None and extended > best[0] >> (size - 2 * width):
                continue
            descend(ys + grown, extended, used | 1 << s)

    descend([0], values[0], 0)
    return best[0] if best[0] != bound else None


def canonical_perm(f: BoolFunc) -> BoolFunc:
    """Least truth table over all variable permutations of f."""
    least = _least_relabelling(f.values(), f.n, None)
    return BoolFunc(f.n, least)


def canonical_tn(f: BoolFunc) -> BoolFunc:
    """Least truth table over the whole (ν, σ)-orbit of f."""
    values = f.values()
    best: int | None = None
    for nu in range(f.size):
        shifted = [values[y ^ nu] for y in range(f.size)]
        found = _least_relabelling(shifted, f.n, best)
        if found is not None:
            best = found
    return BoolFunc(f.n, best)

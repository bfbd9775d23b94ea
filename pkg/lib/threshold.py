from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Literal

from lib.boolfn import BoolFunc, MAX_TABLE_N
from lib.errors import DimensionError, NonGenericError, PreconditionError
from lib.group import GroupElement, RealVec, act_bool, act_real, inverse, to_real_vec
from lib.simplex import LinearSystem, lp_feasible


@dataclass(frozen=True)
class WeightedThreshold:
    """(w, t): the function x -> truth(<x, w> >= t). No sign constraints on w."""

    w: RealVec
    t: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", to_real_vec(self.w))
        object.__setattr__(self, "t", Fraction(self.t))

    @property
    def n(self) -> int:
        return len(self.w)


@dataclass(frozen=True)
class Sign3VFunc:
    """Map B_n -> {-1, 0, 1}; values[k] is the value at input index k (x_1 most significant)."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_TABLE_N:
            raise DimensionError(f"arity {self.n} outside 0..{MAX_TABLE_N} for explicit tables")
        if len(self.values) != 1 << self.n:
            raise DimensionError(f"expected {1 << self.n} values, got {len(self.values)}")
        if any(v not in (-1, 0, 1) for v in self.values):
            raise PreconditionError("3V values must be -1, 0 or 1")

    def value(self, k: int) -> int:
        return self.values[k]

    def has_zero(self) -> bool:
        return 0 in self.values

    def to_text(self) -> str:
        return "".join("+" if v > 0 else "-" if v < 0 else "0" for v in self.values)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def input_sums(w: RealVec) -> list[Fraction]:
    """<x, w> for every input index x, x_1 most significant."""
    n = len(w)
    if n > MAX_TABLE_N:
        raise DimensionError(f"arity {n} exceeds {MAX_TABLE_N}")
    sums = [Fraction(0)] * (1 << n)
    for x in range(1, 1 << n):
        low = x & -x
        sums[x] = sums[x ^ low] + w[n - low.bit_length()]
    return sums


def half_perimeter(w: Iterable) -> Fraction:
    return sum((Fraction(v) for v in w), Fraction(0)) / 2


def to_bool_func(wt: WeightedThreshold) -> BoolFunc:
    return BoolFunc.from_values(wt.n, (s >= wt.t for s in input_sums(wt.w)))


def to_3v_func(wt: WeightedThreshold) -> Sign3VFunc:
    return Sign3VFunc(wt.n, tuple((s > wt.t) - (s < wt.t) for s in input_sums(wt.w)))


def tie_inputs(w: RealVec) -> list[int]:
    """Inputs x with <x, w> equal to the half-perimeter."""
    half = half_perimeter(w)
    return [x for x, s in enumerate(input_sums(w)) if s == half]


# ---------------------------------------------------------------------------
# Group action
# ---------------------------------------------------------------------------

def transform(g: GroupElement, wt: WeightedThreshold) -> WeightedThreshold:
    """(w, t) -> (w^g, t - <nu, w>), so that the threshold function moves by act_fn."""
    if g.n != wt.n:
        raise DimensionError(f"group element on {g.n} letters, weights of length {wt.n}")
    shift = sum((w for w, b in zip(wt.w, g.nu) if b), Fraction(0))
    return WeightedThreshold(act_real(g, wt.w), wt.t - shift)


# the 3V function of (w, t) moves by the same law
transform_3v = transform


def act_3v(g: GroupElement, f: Sign3VFunc) -> Sign3VFunc:
    if g.n != f.n:
        raise DimensionError(f"group element on {g.n} letters, function of arity {f.n}")
    g_inv = inverse(g)
    return Sign3VFunc(f.n, tuple(f.values[act_bool(g_inv, x)] for x in range(1 << f.n)))


# ---------------------------------------------------------------------------
# Self-duality
# ---------------------------------------------------------------------------

def is_self_dual_3v(f: Sign3VFunc) -> bool:
    top = (1 << f.n) - 1
    return all(f.values[top - x] == -f.values[x] for x in range(1 << f.n))


def is_self_dual_threshold(wt: WeightedThreshold, mode: Literal["boolean", "3v"] = "boolean") -> bool:
    half = half_perimeter(wt.w)
    sums = input_sums(wt.w)
    tied = any(s == half for s in sums)
    if mode == "3v":
        if tied:
            return wt.t == half
        return is_self_dual_3v(to_3v_func(wt))
    if mode != "boolean":
        raise PreconditionError(f"unknown self-duality mode {mode!r}")
    if tied:
        return False
    return all((s >= wt.t) == (s >= half) for s in sums)


# ---------------------------------------------------------------------------
# Functions attached to length vectors
# ---------------------------------------------------------------------------

def _witness_wall(w: RealVec, ties: list[int]) -> int:
    n = len(w)
    masks = []
    for x in ties:
        mask = sum(1 << i for i in range(n) if x >> (n - 1 - i) & 1)
        if not mask >> (n - 1) & 1:
            mask ^= (1 << n) - 1
        masks.append(mask)
    return min(masks)


def chamber_function(a: Iterable) -> BoolFunc:
    """f_(a, ⌖a) for a generic length vector a."""
    a = to_real_vec(a)
    ties = tie_inputs(a)
    if ties:
        raise NonGenericError(_witness_wall(a, ties))
    return to_bool_func(WeightedThreshold(a, half_perimeter(a)))


def stratum_function(a: Iterable) -> Sign3VFunc:
    a = to_real_vec(a)
    return to_3v_func(WeightedThreshold(a, half_perimeter(a)))


def sign_embedding(f: BoolFunc) -> Sign3VFunc:
    """f -> (-1)^f; the image is the set of 3V functions without zeros."""
    return Sign3VFunc(f.n, tuple(-1 if v else 1 for v in f.values()))


# ---------------------------------------------------------------------------
# Synthesis
# ---------------------------------------------------------------------------

def _boundary_first(n: int) -> list[int]:
    # inputs near half weight tend to carry the binding rows
    return sorted(range(1 << n), key=lambda x: (abs(2 * x.bit_count() - n), x))


def _integral(values: list[Fraction]) -> list[Fraction]:
    scale = lcm(*(v.denominator for v in values)) if values else 1
    return [v * scale for v in values]


def synthesize(f: BoolFunc, at_half: bool = False, integral: bool = False) -> WeightedThreshold | None:
    """Weights and threshold realizing f, or None when f is not a threshold function.

    With at_half the threshold is pinned to the half-perimeter and only w is solved for.
    """
    n = f.n
    system = LinearSystem(n if at_half else n + 1)
    for x in _boundary_first(n):
        bits = [x >> (n - 1 - i) & 1 for i in range(n)]
        if at_half:
            row = [Fraction(b) - Fraction(1, 2) for b in bits]
        else:
            row = [*bits, -1]
        if not f.value(x):
            row = [-c for c in row]
        system.ge1(row)

    point = lp_feasible(system)
    if point is None:
        return None
    values = _integral(list(point)) if integral else list(point)
    if at_half:
        result = WeightedThreshold(tuple(values), half_perimeter(values))
    else:
        result = WeightedThreshold(tuple(values[:n]), values[n])
    if to_bool_func(result) != f:
        raise RuntimeError(f"synthesized {result} does not reproduce {f.to_hex()}")
    return result

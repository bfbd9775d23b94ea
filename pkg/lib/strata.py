from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable

import sympy
from tqdm import tqdm

from lib.cachefile import read_strata, wall_count, write_strata
from lib.errors import CacheFormatError, OutOfRangeError, PreconditionError
from lib.genetic import GeneticCode, chamber_witnesses
from lib.group import RealVec, to_real_vec
from lib.simplex import LinearSystem, lp_feasible

MAX_STRATA_N = 8

_SIGN_TEXT = {1: "+", 0: "0", -1: "-"}
_TEXT_SIGN = {v: k for k, v in _SIGN_TEXT.items()}


@lru_cache(maxsize=None)
def wall_masks(n: int) -> tuple[int, ...]:
    """Walls H_J with J nonempty and n not in J, in increasing mask order."""
    return tuple(range(1, 1 << (n - 1))) if n >= 1 else ()


@lru_cache(maxsize=None)
def _wall_rows(n: int) -> tuple[tuple[int, ...], ...]:
    # sum over J minus sum over the complement
    return tuple(tuple(1 if j >> i & 1 else -1 for i in range(n)) for j in wall_masks(n))


@dataclass(frozen=True)
class StratumSignature:
    """Sign of each normalized wall: +1 when J is long, -1 when J is short, 0 on the wall."""

    n: int
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != wall_count(self.n):
            raise PreconditionError(f"n={self.n} has {wall_count(self.n)} walls, got {len(self.signs)} signs")
        if any(s not in (-1, 0, 1) for s in self.signs):
            raise PreconditionError("wall signs must be -1, 0 or 1")

    @property
    def zeros(self) -> list[int]:
        return [k for k, s in enumerate(self.signs) if s == 0]

    def is_chamber(self) -> bool:
        return 0 not in self.signs

    @cached_property
    def dimension(self) -> int:
        return self.n - _zero_rank(self.n, tuple(self.zeros))

    def to_text(self) -> str:
        return "".join(_SIGN_TEXT[s] for s in self.signs)

    @classmethod
    def from_text(cls, n: int, text: str) -> "StratumSignature":
        try:
            return cls(n, tuple(_TEXT_SIGN[c] for c in text.strip()))
        except KeyError as exc:
            raise PreconditionError(f"signature text may only use '+', '0', '-': {text!r}") from exc


@lru_cache(maxsize=None)
def _zero_rank(n: int, zeros: tuple[int, ...]) -> int:
    rows = _wall_rows(n)
    return sympy.Matrix([rows[k] for k in zeros]).rank() if zeros else 0


def signature_of(a: Iterable) -> StratumSignature:
    a = to_real_vec(a)
    if any(v <= 0 for v in a):
        raise PreconditionError("strata are classified inside the positive orthant; entries must be > 0")
    n = len(a)
    signs = []
    for row in _wall_rows(n):
        value = sum((c * v for c, v in zip(row, a)), Fraction(0))
        signs.append((value > 0) - (value < 0))
    return StratumSignature(n, tuple(signs))


def canonical_signature(a: Iterable) -> StratumSignature:
    """Signature of the sorted vector; every S_n-orbit of strata meets the sorted cone in one stratum."""
    return signature_of(sorted(to_real_vec(a)))


# ---------------------------------------------------------------------------
# Face search
# ---------------------------------------------------------------------------

def _solve(n: int, signs: tuple[int, ...], zero: Iterable[int], strict: Iterable[int], weak: Iterable[int]) -> RealVec | None:
    rows = _wall_rows(n)
    system = LinearSystem(n)
    for i in range(n):
        system.ge1([1 if j == i else 0 for j in range(n)])
    for k in zero:
        system.eq(rows[k])
    for k in strict:
        system.ge1([signs[k] * c for c in rows[k]])
    for k in weak:
        system.ge0([signs[k] * c for c in rows[k]])
    return lp_feasible(system)


def realize_signature(sig: StratumSignature) -> RealVec | None:
    """A positive point of the stratum, or None when the sign pattern is not realizable."""
    zero = sig.zeros
    strict = [k for k, s in enumerate(sig.signs) if s]
    return _solve(sig.n, sig.signs, zero, strict, [])


def _collapse(n: int, signs: tuple[int, ...], wall: int) -> RealVec | None:
    """A point of the face of the stratum's closure cut out by `wall`, relative interior."""
    zero = [k for k, s in enumerate(signs) if s == 0] + [wall]
    rest = [k for k, s in enumerate(signs) if s and k != wall]
    point = _solve(n, signs, zero, rest, [])
    if point is not None:
        return point
    if _solve(n, signs, zero, [], rest) is None:
        return None
    forced = [k for k in rest if _solve(n, signs, zero, [k], [j for j in rest if j != k]) is None]
    free = [k for k in rest if k not in forced]
    point = _solve(n, signs, zero + forced, free, [])
    if point is None:
        raise RuntimeError(f"face of {signs} at wall {wall} has no relative interior point")
    return point


def _sorted_integral(point: RealVec) -> RealVec:
    scale = lcm(*(v.denominator for v in point))
    return tuple(sorted(v * scale for v in point))


def _faces(task: tuple[int, tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Canonical signatures of the faces reached by collapsing one strict wall."""
    n, signs = task
    found = []
    for wall, s in enumerate(signs):
        if not s:
            continue
        point = _collapse(n, signs, wall)
        if point is not None:
            found.append(signature_of(_sorted_integral(point)).signs)
    return found


def _check_strata_range(n: int) -> None:
    if not 1 <= n <= MAX_STRATA_N:
        raise OutOfRangeError(f"n={n} outside 1..{MAX_STRATA_N} for strata enumeration")


def _seed(n: int, witnesses: Iterable[tuple[GeneticCode, RealVec]] | None) -> list[StratumSignature]:
    if n == 1:
        return [signature_of((1,))]
    if witnesses is None:
        witnesses = chamber_witnesses(n)
    return [signature_of(point) for _, point in witnesses]


def enumerate_strata_positive(
    n: int,
    parallel: int | None = None,
    progress: bool = False,
    checkpoint: str | Path | None = None,
    resume: str | Path | None = None,
    witnesses: Iterable[tuple[GeneticCode, RealVec]] | None = None,
) -> list[StratumSignature]:
    """All strata meeting the positive orthant, one canonical signature per S_n-orbit.

    Levels are processed by decreasing dimension, starting from the chambers
    (`witnesses` when already computed). After level d every stratum of
    dimension >= d - 1 is known; the checkpoint holds those and the next level.
    """
    _check_strata_range(n)
    if resume is not None:
        stored_n, level, items = read_strata(resume)
        if stored_n != n:
            raise PreconditionError(f"checkpoint {resume} is for n={stored_n}, not n={n}")
        visited = {StratumSignature(n, signs) for signs in items}
        if not visited:
            raise CacheFormatError(f"checkpoint {resume} holds no signatures")
    else:
        visited = set(_seed(n, witnesses))
        level = n

    pool = Pool(parallel) if parallel and parallel > 1 else None
    try:
        while level >= 1:
            frontier = sorted((sig for sig in visited if sig.dimension == level), key=lambda s: s.signs)
            tasks = [(n, sig.signs) for sig in frontier]
            results = pool.imap(_faces, tasks) if pool else map(_faces, tasks)
            for faces in tqdm(results, total=len(tasks), desc=f"strata n={n} dim={level}", unit="stratum", disable=not progress):
                visited.update(StratumSignature(n, signs) for signs in faces)
            level -= 1
            if checkpoint is not None:
                write_strata(checkpoint, n, sorted(sig.signs for sig in visited if sig.dimension >= level), level)
    finally:
        if pool:
            pool.close()
            pool.join()

    return sorted(visited, key=lambda s: (-s.dimension, s.signs))


def count_strata(
    n: int,
    parallel: int | None = None,
    progress: bool = False,
    witnesses: Iterable[tuple[GeneticCode, RealVec]] | None = None,
) -> int:
    """k(n) over the positive orthant."""
    return len(enumerate_strata_positive(n, parallel=parallel, progress=progress, witnesses=witnesses))


def tk_recursion(k_values: dict[int, int], c_values: dict[int, int]) -> dict[int, int]:
    """tk(1) = 1, tk(n) = k(n) + tk(n-1) - c(n-1), for consecutive n present in k_values."""
    tk: dict[int, int] = {}
    for n in sorted(k_values):
        if n == 1:
            tk[1] = 1
        elif n - 1 in tk:
            tk[n] = k_values[n] + tk[n - 1] - c_values[n - 1]
    return tk


def total_strata(n: int, parallel: int | None = None, progress: bool = False) -> int:
    """tk(n), from k(m) for m <= n and c(m) for m < n."""
    _check_strata_range(n)
    witnesses = {m: chamber_witnesses(m, parallel=parallel, progress=progress) for m in range(1, n + 1)}
    k_values = {m: count_strata(m, parallel=parallel, progress=progress, witnesses=witnesses[m]) for m in range(1, n + 1)}
    c_values = {m: len(witnesses[m]) for m in range(1, n)}
    return tk_recursion(k_values, c_values)[n]

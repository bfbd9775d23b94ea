from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from multiprocessing import Pool
from typing import Iterable, Iterator

from tqdm import tqdm

from lib.boolfn import (
    BoolFunc, HalfCubeFunc, MAX_TABLE_N,
    extend_self_dual, is_regular, is_self_dual, lower_covers, packed_leq, prefix_code, upper_covers,
)
from lib.errors import NonGenericError, OutOfRangeError, PreconditionError
from lib.group import MAX_N, RealVec, subset_mask, subset_members, to_real_vec
from lib.simplex import LinearSystem, lp_feasible

MAX_VIRTUAL_N = 10
MAX_CHAMBER_N = 9
MAX_SUBSET_N = 20  # families over all 2^n subsets


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------

def _gene_text(mask: int) -> str:
    return ",".join(str(i) for i in reversed(subset_members(mask)))


@dataclass(frozen=True)
class GeneticCode:
    """Genes are subset masks containing n, kept in decreasing mask order.

    Decreasing mask order is the descending lexicographic order on the genes
    written with their elements in decreasing order.
    """

    n: int
    genes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise OutOfRangeError(f"n={self.n} outside 1..{MAX_N}")
        top = 1 << (self.n - 1)
        for gene in self.genes:
            if not gene & top or gene >> self.n:
                raise PreconditionError(f"gene {{{_gene_text(gene)}}} is not a subset of 1..{self.n} containing {self.n}")
        ordered = tuple(sorted(set(self.genes), reverse=True))
        if len(ordered) != len(self.genes):
            raise PreconditionError("genes must be pairwise distinct")
        object.__setattr__(self, "genes", ordered)

    def __len__(self) -> int:
        return len(self.genes)

    def to_text(self) -> str:
        if not self.genes:
            return "-"
        return ";".join(_gene_text(g) for g in self.genes)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "GeneticCode":
        text = text.strip()
        if text == "-" or not text:
            if n is None:
                raise PreconditionError("the empty code needs an explicit n")
            return cls(n, ())
        genes = []
        for part in text.split(";"):
            try:
                members = [int(v) for v in part.split(",")]
            except ValueError as exc:
                raise PreconditionError(f"malformed gene {part!r}") from exc
            genes.append(subset_mask(members))
        if n is None:
            n = max(g.bit_length() for g in genes)
        return cls(n, tuple(genes))


@dataclass(frozen=True)
class ShortSetFamily:
    """Bit J of `short` is set iff the subset with mask J is short."""

    n: int
    short: int

    def is_short(self, mask: int) -> bool:
        return bool(self.short >> mask & 1)

    def is_long(self, mask: int) -> bool:
        return self.is_short(((1 << self.n) - 1) ^ mask)


@dataclass(frozen=True)
class NonGeneric:
    """Length vector on a tie wall; `wall` is the tie set containing n with the least mask."""

    wall: int


# ---------------------------------------------------------------------------
# Hook order and shortness
# ---------------------------------------------------------------------------

def hook_leq(a: int, b: int) -> bool:
    """A ↪ B: an injective non-decreasing map φ: A -> B with φ(x) >= x exists.

    Equivalently every suffix {k, k+1, ...} meets A in at most as many elements as B,
    which is the dominance order on the masks read as Boolean vectors.
    """
    n = max(a.bit_length(), b.bit_length())
    return packed_leq(prefix_code(a, n), prefix_code(b, n), n)


def _mask_sums(a: RealVec) -> list[Fraction]:
    sums = [Fraction(0)] * (1 << len(a))
    for mask in range(1, len(sums)):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + a[low.bit_length() - 1]
    return sums


def _least_tie(ties: Iterable[int], n: int) -> int:
    full = (1 << n) - 1
    top = 1 << (n - 1)
    return min(m if m & top else full ^ m for m in ties)


def short_family(a: Iterable) -> ShortSetFamily | NonGeneric:
    a = to_real_vec(a)
    n = len(a)
    if not 1 <= n <= MAX_SUBSET_N:
        raise OutOfRangeError(f"n={n} outside 1..{MAX_SUBSET_N}")
    sums = _mask_sums(a)
    total = sums[-1]
    short = 0
    ties = []
    for mask, s in enumerate(sums):
        if 2 * s < total:
            short |= 1 << mask
        elif 2 * s == total:
            ties.append(mask)
    if ties:
        return NonGeneric(_least_tie(ties, n))
    return ShortSetFamily(n, short)


def genetic_code_of(a: Iterable) -> GeneticCode:
    """The ↪-maximal short subsets containing n, for 0 <= a_1 <= ... <= a_n generic."""
    a = to_real_vec(a)
    if any(v < 0 for v in a) or any(x > y for x, y in zip(a, a[1:])):
        raise PreconditionError("length vector must be non-negative and sorted non-decreasingly")
    family = short_family(a)
    if isinstance(family, NonGeneric):
        raise NonGenericError(family.wall)
    n = family.n
    genes = []
    for mask in range(1 << (n - 1), 1 << n):
        if family.is_short(mask) and not any(family.is_short(y) for y in upper_covers(mask, n)):
            genes.append(mask)
    return GeneticCode(n, tuple(genes))


def _complement(mask: int, n: int) -> int:
    return ((1 << n) - 1) ^ mask


def is_virtual_code(code: GeneticCode) -> bool:
    """Genes form an ↪-antichain, and no gene's complement hooks into a gene."""
    n = code.n
    for i, a in enumerate(code.genes):
        for j, b in enumerate(code.genes):
            if i != j and hook_leq(a, b):
                return False
            if hook_leq(_complement(a, n), b):
                return False
    return True


# ---------------------------------------------------------------------------
# Virtual code enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _candidate_table(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Genes allowed on their own, in decreasing mask order, and a pairwise compatibility bitset per gene."""
    full = (1 << n) - 1
    candidates = tuple(
        m for m in range((1 << n) - 1, (1 << (n - 1)) - 1, -1)
        if not hook_leq(full ^ m, m)
    )
    codes = [prefix_code(m, n) for m in candidates]
    complement_codes = [prefix_code(full ^ m, n) for m in candidates]
    compat = []
    for i in range(len(candidates)):
        bits = 0
        for j in range(len(candidates)):
            if i == j:
                continue
            if packed_leq(codes[i], codes[j], n) or packed_leq(codes[j], codes[i], n):
                continue
            if packed_leq(complement_codes[i], codes[j], n) or packed_leq(complement_codes[j], codes[i], n):
                continue
            bits |= 1 << j
        compat.append(bits)
    return candidates, tuple(compat)


def _check_virtual_range(n: int) -> None:
    if not 1 <= n <= MAX_VIRTUAL_N:
        raise OutOfRangeError(f"n={n} outside 1..{MAX_VIRTUAL_N} for virtual code enumeration")


def _after(i: int, size: int) -> int:
    return ((1 << size) - 1) ^ ((1 << (i + 1)) - 1)


def _walk(chosen: list[int], allowed: int, compat: tuple[int, ...]) -> Iterator[list[int]]:
    yield chosen
    while allowed:
        low = allowed & -allowed
        allowed ^= low
        i = low.bit_length() - 1
        yield from _walk(chosen + [i], allowed & compat[i], compat)


def _count(allowed: int, compat: tuple[int, ...]) -> int:
    total = 1
    while allowed:
        low = allowed & -allowed
        allowed ^= low
        i = low.bit_length() - 1
        total += _count(allowed & compat[i], compat)
    return total


def enumerate_virtual_codes(n: int) -> Iterator[GeneticCode]:
    """Every virtual code of type n once; the empty code first, each code before its extensions."""
    _check_virtual_range(n)
    candidates, compat = _candidate_table(n)
    everything = (1 << len(candidates)) - 1
    for chosen in _walk([], everything, compat):
        yield GeneticCode(n, tuple(candidates[i] for i in chosen))


def _count_with_first(task: tuple[int, int]) -> int:
    n, i = task
    candidates, compat = _candidate_table(n)
    return _count(_after(i, len(candidates)) & compat[i], compat)


def count_virtual_codes(n: int, parallel: int | None = None, progress: bool = False) -> int:
    """v(n), split by the first (largest) gene across `parallel` worker processes."""
    _check_virtual_range(n)
    candidates, _ = _candidate_table(n)
    tasks = [(n, i) for i in range(len(candidates))]
    bar = tqdm(total=len(tasks), desc=f"codes n={n}", unit="gene", disable=not progress)
    total = 1
    if parallel and parallel > 1:
        with Pool(parallel) as pool:
            for part in pool.imap(_count_with_first, tasks):
                total += part
                bar.update()
    else:
        for task in tasks:
            total += _count_with_first(task)
            bar.update()
    bar.close()
    return total


# ---------------------------------------------------------------------------
# Realizability
# ---------------------------------------------------------------------------

def _short_row(mask: int, n: int) -> list[int]:
    """Coefficients of sum over complement minus sum over the set."""
    return [1 - 2 * (mask >> i & 1) for i in range(n)]


def _order_rows(system: LinearSystem, n: int) -> None:
    system.ge1([1] + [0] * (n - 1))
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = -1, 1
        system.ge1(row)


def _code_is_short(code: GeneticCode, mask: int) -> bool:
    return any(hook_leq(mask, gene) for gene in code.genes)


def _scaled(point: RealVec) -> RealVec:
    scale = lcm(*(v.denominator for v in point))
    return tuple(v * scale for v in point)


def realize_code(code: GeneticCode, integral: bool = False) -> RealVec | None:
    """A sorted generic length vector whose genetic code is `code`, or None.

    Only the genes (short) and the minimal long sets containing n are constrained;
    with a sorted vector every other subset follows by monotonicity of shortness.
    """
    if not is_virtual_code(code):
        raise PreconditionError(f"{code.to_text()} is not a virtual genetic code")
    n = code.n
    if n > MAX_SUBSET_N:
        raise OutOfRangeError(f"n={n} outside 1..{MAX_SUBSET_N}")
    system = LinearSystem(n)
    _order_rows(system, n)
    for gene in code.genes:
        system.ge1(_short_row(gene, n))
    top = 1 << (n - 1)
    for mask in range(top, 1 << n):
        if _code_is_short(code, mask):
            continue
        lower = [y for y in lower_covers(mask, n) if y & top]
        if all(_code_is_short(code, y) for y in lower):
            system.ge1([-c for c in _short_row(mask, n)])

    point = lp_feasible(system)
    if point is None:
        return None
    if integral:
        point = _scaled(point)
    if genetic_code_of(point) != code:
        raise RuntimeError(f"witness {point} does not induce {code.to_text()}")
    return point


def realize_code_full(code: GeneticCode) -> RealVec | None:
    """Same question as realize_code, with one strict row for every subset."""
    if not is_virtual_code(code):
        raise PreconditionError(f"{code.to_text()} is not a virtual genetic code")
    n = code.n
    if n > MAX_SUBSET_N:
        raise OutOfRangeError(f"n={n} outside 1..{MAX_SUBSET_N}")
    system = LinearSystem(n)
    _order_rows(system, n)
    top = 1 << (n - 1)
    for mask in range(top, 1 << n):
        row = _short_row(mask, n)
        system.ge1(row if _code_is_short(code, mask) else [-c for c in row])
    return lp_feasible(system)


# ---------------------------------------------------------------------------
# Self-dual regular functions
# ---------------------------------------------------------------------------

def _check_table_n(n: int) -> None:
    if n > MAX_TABLE_N:
        raise OutOfRangeError(f"n={n} exceeds {MAX_TABLE_N} for truth tables")


def code_to_function(code: GeneticCode) -> BoolFunc:
    """Self-dual regular function vanishing on B_n^1 exactly below the vectors x with x# a gene."""
    if not is_virtual_code(code):
        raise PreconditionError(f"{code.to_text()} is not a virtual genetic code")
    n = code.n
    _check_table_n(n)
    top = 1 << (n - 1)
    # a gene mask read as a Boolean vector is the x with x# equal to that gene
    gene_codes = [prefix_code(g, n) for g in code.genes]
    values = []
    for x in range(top, 1 << n):
        px = prefix_code(x, n)
        values.append(0 if any(packed_leq(px, g, n) for g in gene_codes) else 1)
    return extend_self_dual(HalfCubeFunc.from_values(n, values))


def gamma(f: BoolFunc) -> list[int]:
    """The ≼-maximal zeros of f on B_n^1, increasing."""
    n = f.n
    top = 1 << (n - 1)
    return [
        x for x in range(top, 1 << n)
        if not f.value(x) and all(f.value(y) for y in upper_covers(x, n))
    ]


def function_to_code(f: BoolFunc) -> GeneticCode:
    if f.n < 1:
        raise PreconditionError("self-dual functions need at least one variable")
    if not is_self_dual(f) or not is_regular(f):
        raise PreconditionError(f"{f.to_hex()} is not self-dual and regular")
    return GeneticCode(f.n, tuple(gamma(f)))


# ---------------------------------------------------------------------------
# Census
# ---------------------------------------------------------------------------

def _realizable(code: GeneticCode) -> bool:
    return realize_code(code) is not None


def count_chambers(n: int, parallel: int | None = None, progress: bool = False) -> int:
    """c(n): virtual codes that some length vector realizes. c(1) = 0 by convention."""
    if not 1 <= n <= MAX_CHAMBER_N:
        raise OutOfRangeError(f"n={n} outside 1..{MAX_CHAMBER_N} for the chamber census")
    if n == 1:
        return 0
    codes = enumerate_virtual_codes(n)
    if parallel and parallel > 1:
        with Pool(parallel) as pool:
            results = pool.imap_unordered(_realizable, codes, chunksize=64)
            return sum(tqdm(results, desc=f"chambers n={n}", unit="code", disable=not progress))
    return sum(tqdm(map(_realizable, codes), desc=f"chambers n={n}", unit="code", disable=not progress))


def census(n: int, mode: str = "virtual", parallel: int | None = None, progress: bool = False) -> int:
    if mode == "virtual":
        return count_virtual_codes(n, parallel=parallel, progress=progress)
    if mode == "chambers":
        return count_chambers(n, parallel=parallel, progress=progress)
    raise PreconditionError(f"unknown census mode {mode!r}")


def _witness(code: GeneticCode) -> tuple[GeneticCode, RealVec | None]:
    return code, realize_code(code, integral=True)


def chamber_witnesses(n: int, parallel: int | None = None, progress: bool = False) -> list[tuple[GeneticCode, RealVec]]:
    """One sorted integral length vector per chamber, in enumeration order.

    len(chamber_witnesses(n)) == count_chambers(n).
    """
    if not 1 <= n <= MAX_CHAMBER_N:
        raise OutOfRangeError(f"n={n} outside 1..{MAX_CHAMBER_N} for the chamber census")
    if n == 1:
        return []
    codes = enumerate_virtual_codes(n)
    bar_args = dict(desc=f"witnesses n={n}", unit="code", disable=not progress)
    if parallel and parallel > 1:
        with Pool(parallel) as pool:
            found = list(tqdm(pool.imap(_witness, codes, chunksize=64), **bar_args))
    else:
        found = list(tqdm(map(_witness, codes), **bar_args))
    return [(code, point) for code, point in found if point is not None]

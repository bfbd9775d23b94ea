import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from lib.errors import DimensionError, PreconditionError

MAX_N = 62  # subsets and Boolean vectors stay word-packed

RealVec = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# Group elements (nu, sigma) of the signed permutation group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """(nu, sigma): negation bits nu_i and a permutation stored 0-based, sigma[i] = σ(i+1) - 1."""

    nu: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.sigma)
        if len(self.nu) != n:
            raise DimensionError(f"negation has length {len(self.nu)}, permutation has length {n}")
        if n > MAX_N:
            raise DimensionError(f"n={n} exceeds the word-packed limit {MAX_N}")
        if sorted(self.sigma) != list(range(n)):
            raise PreconditionError(f"not a permutation: {[s + 1 for s in self.sigma]}")
        if any(b not in (0, 1) for b in self.nu):
            raise PreconditionError(f"negation bits must be 0/1, got {list(self.nu)}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls((0,) * n, tuple(range(n)))

    @classmethod
    def from_one_based(cls, nu: Iterable[int], sigma: Iterable[int]) -> "GroupElement":
        return cls(tuple(int(b) for b in nu), tuple(int(s) - 1 for s in sigma))

    @classmethod
    def negation(cls, nu: Iterable[int]) -> "GroupElement":
        bits = tuple(int(b) for b in nu)
        return cls(bits, tuple(range(len(bits))))

    @classmethod
    def permutation(cls, sigma: Iterable[int]) -> "GroupElement":
        """Build (0, σ) from the 1-based images σ(1), ..., σ(n)."""
        images = tuple(int(s) - 1 for s in sigma)
        return cls((0,) * len(images), images)

    def sigma_one_based(self) -> list[int]:
        return [s + 1 for s in self.sigma]

    def to_json(self) -> str:
        return json.dumps({"nu": list(self.nu), "sigma": self.sigma_one_based()}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "GroupElement":
        data = json.loads(text)
        try:
            return cls.from_one_based(data["nu"], data["sigma"])
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed group element JSON: {text!r}") from exc


def _same_n(*sizes: int) -> int:
    if len(set(sizes)) != 1:
        raise DimensionError(f"dimension mismatch: {sizes}")
    return sizes[0]


def _invert_perm(sigma: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """(ν,σ)(μ,τ) = (ν + μ∘σ⁻¹, σ∘τ)."""
    _same_n(g.n, h.n)
    sigma_inv = _invert_perm(g.sigma)
    nu = tuple(g.nu[i] ^ h.nu[sigma_inv[i]] for i in range(g.n))
    sigma = tuple(g.sigma[t] for t in h.sigma)
    return GroupElement(nu, sigma)


def inverse(g: GroupElement) -> GroupElement:
    """(ν,σ)⁻¹ = (ν∘σ, σ⁻¹)."""
    return GroupElement(tuple(g.nu[s] for s in g.sigma), _invert_perm(g.sigma))


# ---------------------------------------------------------------------------
# Right actions
# ---------------------------------------------------------------------------

def to_real_vec(values: Iterable) -> RealVec:
    return tuple(Fraction(v) for v in values)


def act_real(g: GroupElement, z: RealVec) -> RealVec:
    _same_n(g.n, len(z))
    return tuple(-z[s] if g.nu[s] else z[s] for s in g.sigma)


def _check_word(x: int, n: int) -> None:
    if x < 0 or x >> n:
        raise DimensionError(f"{x:#x} is not a Boolean vector of length {n}")


def bool_vec(bits: Iterable[int]) -> int:
    """Pack (x_1, ..., x_n) into an int with x_1 as the most significant bit."""
    word = 0
    for b in bits:
        word = word << 1 | (1 if b else 0)
    return word


def bool_bits(x: int, n: int) -> tuple[int, ...]:
    _check_word(x, n)
    return tuple(x >> (n - 1 - i) & 1 for i in range(n))


def act_bool(g: GroupElement, x: int) -> int:
    """(x^(ν,σ))_i = x_σ(i) + ν_σ(i) (mod 2)."""
    n = g.n
    _check_word(x, n)
    out = 0
    for i, s in enumerate(g.sigma):
        bit = (x >> (n - 1 - s) & 1) ^ g.nu[s]
        out |= bit << (n - 1 - i)
    return out


def subset_mask(members: Iterable[int]) -> int:
    """Bitmask of a subset of {1..n}: bit i-1 set iff i is a member."""
    mask = 0
    for i in members:
        if i < 1 or i > MAX_N:
            raise PreconditionError(f"element {i} outside 1..{MAX_N}")
        mask |= 1 << (i - 1)
    return mask


def subset_members(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def chi(mask: int, n: int) -> int:
    """Characteristic Boolean vector of a subset: chi(J)_i = 1 iff i in J."""
    _check_word(mask, n)
    return bool_vec(mask >> i & 1 for i in range(n))


def chi_inverse(x: int, n: int) -> int:
    return subset_mask(i + 1 for i, b in enumerate(bool_bits(x, n)) if b)


def act_subset(g: GroupElement, mask: int) -> int:
    """J^(ν,σ) = σ⁻¹(J △ χ⁻¹(ν))."""
    n = g.n
    _check_word(mask, n)
    moved = mask ^ sum(b << i for i, b in enumerate(g.nu))
    out = 0
    for i, s in enumerate(g.sigma):
        if moved >> s & 1:
            out |= 1 << i
    return out


# ---------------------------------------------------------------------------
# Orbit representatives
# ---------------------------------------------------------------------------

def canonical_real_with_witness(z: RealVec) -> tuple[RealVec, GroupElement]:
    """Sorted absolute values of z, with g such that act_real(g, z) is that form."""
    order = tuple(sorted(range(len(z)), key=lambda i: (abs(z[i]), i)))
    nu = tuple(1 if v < 0 else 0 for v in z)
    g = GroupElement(nu, order)
    return act_real(g, z), g


def canonical_real(z: RealVec) -> RealVec:
    return tuple(sorted(abs(v) for v in z))

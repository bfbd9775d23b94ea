import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from lib.boolfn import BoolFunc, canonical_perm, is_monotone, is_self_dual
from lib.errors import PreconditionError
from lib.group import RealVec, to_real_vec
from lib.threshold import WeightedThreshold, half_perimeter, input_sums, synthesize, to_bool_func


@dataclass(frozen=True)
class Game:
    """Simple game stored as its winning function: winning(chi(S)) = 1 iff coalition S wins."""

    winning: BoolFunc

    def __post_init__(self) -> None:
        if not is_monotone(self.winning):
            raise PreconditionError("a game needs a monotone winning function")

    @property
    def n(self) -> int:
        return self.winning.n

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "winning_table_hex": self.winning.to_hex()})

    @classmethod
    def from_json(cls, text: str) -> "Game":
        data = json.loads(text)
        try:
            return cls(BoolFunc.from_hex(int(data["n"]), data["winning_table_hex"]))
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed game JSON: {text!r}") from exc


def game_from_lengths(a: Iterable) -> Game:
    """Winning coalitions are the a-long subsets."""
    a = to_real_vec(a)
    if any(v < 0 for v in a):
        raise PreconditionError("game weights must be non-negative")
    half = half_perimeter(a)
    return Game(BoolFunc.from_values(len(a), (s > half for s in input_sums(a))))


def is_decisive(game: Game) -> bool:
    return is_self_dual(game.winning)


def dummies(game: Game) -> list[int]:
    """Players (1-based) who are never pivotal."""
    f = game.winning
    n = f.n
    out = []
    for i in range(1, n + 1):
        bit = 1 << (n - i)
        if all(f.value(x) == f.value(x | bit) for x in range(f.size) if not x & bit):
            out.append(i)
    return out


def with_dummies(game: Game, m: int) -> Game:
    """The same game with players n+1..m added as dummies."""
    n = game.n
    if m < n:
        raise PreconditionError(f"cannot shrink a {n}-player game to {m} players")
    shift = m - n
    return Game(BoolFunc.from_values(m, (game.winning.value(x >> shift) for x in range(1 << m))))


def strategically_equivalent(g1: Game, g2: Game) -> bool:
    m = max(g1.n, g2.n)
    return canonical_perm(with_dummies(g1, m).winning) == canonical_perm(with_dummies(g2, m).winning)


def is_weighted_majority(game: Game, integral: bool = False) -> RealVec | None:
    """Non-negative weights w whose strict half-perimeter majority is the game, or None."""
    if not is_decisive(game):
        raise PreconditionError("weighted majority recognition needs a decisive game")
    found = synthesize(game.winning, at_half=True, integral=integral)
    if found is None:
        return None
    # negative weights belong to dummies; zeroing them keeps the winning family
    weights = tuple(max(v, Fraction(0)) for v in found.w)
    if to_bool_func(WeightedThreshold(weights, half_perimeter(weights))) != game.winning:
        raise RuntimeError(f"clamped weights {weights} change the game")
    return weights

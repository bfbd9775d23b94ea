"""Exact feasibility for homogeneous linear systems.

Every constraint reads c·a = 0, c·a >= 1 or c·a >= 0 over free rational
variables a. Strict inequalities of open cones are written in the ">= 1" form
by the callers. The solver is a phase-1 simplex on an integer tableau (rows
are rescaled by positive factors instead of divided), with Bland's rule, run
on a growing subset of the rows until the witness satisfies all of them.
"""

from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from lib.errors import DimensionError
from lib.group import RealVec


class Relation(StrEnum):
    EQ = "=0"
    GE1 = ">=1"
    GE0 = ">=0"


@dataclass(frozen=True)
class Constraint:
    """Integer row: coeffs·a (relation) rhs, with rhs = 0 unless relation is GE1."""

    coeffs: tuple[int, ...]
    relation: Relation
    rhs: int

    def holds(self, numerators: Sequence[int], denominator: int) -> bool:
        lhs = sum(c * v for c, v in zip(self.coeffs, numerators) if c)
        bound = self.rhs * denominator
        if self.relation is Relation.EQ:
            return lhs == 0
        return lhs >= bound


def _integer_row(coeffs: Iterable, relation: Relation) -> Constraint:
    values = [Fraction(c) for c in coeffs]
    scale = lcm(*(v.denominator for v in values)) if values else 1
    ints = [int(v * scale) for v in values]
    if relation is Relation.GE1:
        g = gcd(*ints, scale)
        return Constraint(tuple(x // g for x in ints), relation, scale // g)
    g = gcd(*ints) or 1
    return Constraint(tuple(x // g for x in ints), relation, 0)


@dataclass
class LinearSystem:
    nvars: int
    rows: list[Constraint] = field(default_factory=list)

    def add(self, coeffs: Iterable, relation: Relation | str) -> None:
        row = _integer_row(coeffs, Relation(relation))
        if len(row.coeffs) != self.nvars:
            raise DimensionError(f"constraint has {len(row.coeffs)} coefficients, system has {self.nvars} variables")
        self.rows.append(row)

    def eq(self, coeffs: Iterable) -> None:
        self.add(coeffs, Relation.EQ)

    def ge1(self, coeffs: Iterable) -> None:
        self.add(coeffs, Relation.GE1)

    def ge0(self, coeffs: Iterable) -> None:
        self.add(coeffs, Relation.GE0)

    def __len__(self) -> int:
        return len(self.rows)

    def is_satisfied_by(self, point: Sequence) -> bool:
        numerators, denominator = _common_denominator(point)
        return all(row.holds(numerators, denominator) for row in self.rows)


def _common_denominator(point: Sequence) -> tuple[list[int], int]:
    values = [Fraction(v) for v in point]
    den = lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * den) for v in values], den


# ---------------------------------------------------------------------------
# Phase-1 simplex on an integer tableau
# ---------------------------------------------------------------------------

def _normalized(line: list[int]) -> list[int]:
    g = gcd(*line)
    if g > 1:
        return [x // g for x in line]
    return line


def _phase_one(nvars: int, rows: list[Constraint]) -> RealVec | None:
    """Feasible point of `rows` or None. Variables are split a = p - q, p, q >= 0.

    Row i starts with its artificial variable (id width + i) basic. Artificials never
    re-enter, so their columns are not stored.
    """
    m = len(rows)
    slack = {}
    width = 2 * nvars
    for i, row in enumerate(rows):
        if row.relation is not Relation.EQ:
            slack[i] = width
            width += 1

    tableau: list[list[int]] = []
    for i, row in enumerate(rows):
        line = [0] * (width + 1)
        for j, c in enumerate(row.coeffs):
            line[j] = c
            line[nvars + j] = -c
        if i in slack:
            line[slack[i]] = -1
        line[-1] = row.rhs
        tableau.append(line)
    basis = [width + i for i in range(m)]

    # objective row: coefficients of sum(artificials) = rhs after eliminating the basis
    objective = [0] * (width + 1)
    for line in tableau:
        for j in range(width + 1):
            objective[j] += line[j]

    while True:
        entering = next((j for j in range(width) if objective[j] > 0), None)
        if entering is None:
            break
        leaving = None
        for i, line in enumerate(tableau):
            a = line[entering]
            if a <= 0:
                continue
            if leaving is None:
                leaving = i
                continue
            best = tableau[leaving]
            here, there = line[-1] * best[entering], best[-1] * a
            if here < there or (here == there and basis[i] < basis[leaving]):
                leaving = i
        if leaving is None:
            raise RuntimeError("phase-1 objective is unbounded; tableau is corrupt")

        pivot_row = tableau[leaving]
        p = pivot_row[entering]
        for k, line in enumerate(tableau):
            f = line[entering]
            if k == leaving or not f:
                continue
            tableau[k] = _normalized([p * a - f * b for a, b in zip(line, pivot_row)])
        f = objective[entering]
        objective = _normalized([p * a - f * b for a, b in zip(objective, pivot_row)])
        basis[leaving] = entering

    if objective[-1] != 0:
        return None

    values = [Fraction(0)] * (2 * nvars)
    for i, var in enumerate(basis):
        if var < 2 * nvars:
            values[var] = Fraction(tableau[i][-1], tableau[i][var])
    return tuple(values[j] - values[nvars + j] for j in range(nvars))


def lp_feasible(system: LinearSystem, batch: int | None = None) -> RealVec | None:
    """Return a rational point satisfying every row of `system`, or None when none exists.

    Equalities start in the working set together with the first `batch` inequalities;
    each round adds up to `batch` rows the current witness violates.
    """
    rows = system.rows
    batch = batch or max(8, 2 * system.nvars)
    active = [i for i, row in enumerate(rows) if row.relation is Relation.EQ]
    active += [i for i, row in enumerate(rows) if row.relation is not Relation.EQ][:batch]
    in_active = set(active)

    while True:
        point = _phase_one(system.nvars, [rows[i] for i in active])
        if point is None:
            return None
        numerators, denominator = _common_denominator(point)
        violated = [i for i, row in enumerate(rows) if not row.holds(numerators, denominator)]
        if not violated:
            return point
        if any(i in in_active for i in violated):
            raise RuntimeError("simplex witness fails a constraint it was solved against")
        for i in violated[:batch]:
            active.append(i)
            in_active.add(i)

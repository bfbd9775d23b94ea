import itertools
import random
from fractions import Fraction

import pytest

from lib.boolfn import BoolFunc, act_fn, constant, dictator, is_self_dual, majority, parity
from lib.errors import DimensionError, NonGenericError
from lib.group import GroupElement
from lib.threshold import (
    Sign3VFunc, WeightedThreshold,
    act_3v, chamber_function, half_perimeter, is_self_dual_3v, is_self_dual_threshold, sign_embedding,
    stratum_function, synthesize, tie_inputs, to_3v_func, to_bool_func, transform, transform_3v,
)


def all_elements(n):
    for sigma in itertools.permutations(range(n)):
        for nu in itertools.product((0, 1), repeat=n):
            yield GroupElement(nu, sigma)


def random_weights(rng, n):
    return tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 3)) for _ in range(n))


def test_evaluation():
    assert to_bool_func(WeightedThreshold((1, 1, 1), Fraction(3, 2))) == majority(3)
    assert to_bool_func(WeightedThreshold((1, 0, 0), Fraction(1, 2))) == dictator(3, 1)
    assert to_bool_func(WeightedThreshold((1, -2, 3), -2)) == constant(3, 1)
    assert to_bool_func(WeightedThreshold((1, 1), 3)) == constant(2, 0)


def test_three_valued_evaluation():
    f = to_3v_func(WeightedThreshold((1, 1, 2), 2))
    assert [k for k in range(8) if f.value(k) == 0] == [1, 6]
    assert f.to_text() == "-0-+-+0+"
    assert not to_3v_func(WeightedThreshold((1, 1, 1), Fraction(3, 2))).has_zero()
    assert to_3v_func(WeightedThreshold((0, 0), 0)).values == (0, 0, 0, 0)
    with pytest.raises(DimensionError):
        Sign3VFunc(2, (1, 1))


def test_half_perimeter():
    assert half_perimeter((1, 1, 1)) == Fraction(3, 2)
    assert half_perimeter((1, 1, 2, 3, 3, 5)) == Fraction(15, 2)
    assert half_perimeter((0, 0)) == 0
    assert tie_inputs((1, 1, 2)) == [1, 6]


def test_transform_examples():
    wt = WeightedThreshold((1, 2), 1)
    assert transform(GroupElement.identity(2), wt) == wt
    assert transform(GroupElement.negation((1, 0)), wt) == WeightedThreshold((-1, 2), 0)
    assert transform(GroupElement.permutation((2, 1)), wt) == WeightedThreshold((2, 1), 1)
    with pytest.raises(DimensionError):
        transform(GroupElement.identity(3), wt)


def check_transform(g, wt):
    assert to_bool_func(transform(g, wt)) == act_fn(g, to_bool_func(wt))
    assert to_3v_func(transform_3v(g, wt)) == act_3v(g, to_3v_func(wt))


@pytest.mark.parametrize("n, samples", [(1, 20), (2, 20), (3, 10), (4, 2)])
def test_transform_follows_the_function_action(n, samples):
    rng = random.Random(31 + n)
    for g in all_elements(n):
        for _ in range(samples):
            check_transform(g, WeightedThreshold(random_weights(rng, n), Fraction(rng.randint(-8, 8), 2)))
            w = random_weights(rng, n)
            check_transform(g, WeightedThreshold(w, half_perimeter(w)))


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_transform_at_half_perimeter_thousand_weights(n):
    rng = random.Random(53 + n)
    elements = list(all_elements(n))
    for _ in range(1000):
        w = random_weights(rng, n)
        wt = WeightedThreshold(w, half_perimeter(w))
        f = to_bool_func(wt)
        for g in elements:
            assert to_bool_func(transform(g, wt)) == act_fn(g, f)


@pytest.mark.parametrize("n, samples", [(1, 10), (2, 10), (3, 10), (4, 5), (5, 1)])
def test_transform_keeps_the_half_perimeter(n, samples):
    rng = random.Random(37 + n)
    for g in all_elements(n):
        for _ in range(samples):
            w = random_weights(rng, n)
            moved = transform(g, WeightedThreshold(w, half_perimeter(w)))
            assert moved.t == half_perimeter(moved.w)


def test_self_dual_threshold():
    assert is_self_dual_threshold(WeightedThreshold((1, 1, 1), Fraction(3, 2)))
    assert not is_self_dual_threshold(WeightedThreshold((1, 1, 2), 2))
    assert is_self_dual_threshold(WeightedThreshold((1, 1, 2), 2), mode="3v")
    assert not is_self_dual_threshold(WeightedThreshold((1, 1, 1), 1))
    rng = random.Random(41)
    for _ in range(60):
        w = random_weights(rng, rng.randint(1, 5))
        wt = WeightedThreshold(w, half_perimeter(w))
        if tie_inputs(w):
            continue
        assert is_self_dual(to_bool_func(wt))
        assert is_self_dual_threshold(wt)


def test_chamber_and_stratum_functions():
    assert chamber_function((1, 1, 1)) == majority(3)
    with pytest.raises(NonGenericError) as info:
        chamber_function((1, 1, 2))
    assert info.value.wall == 0b100
    assert stratum_function((1, 1, 2)).has_zero()


def test_sign_embedding():
    f = sign_embedding(majority(3))
    assert f.values == (1, 1, 1, -1, 1, -1, -1, -1)
    assert not f.has_zero()
    rng = random.Random(43)
    for _ in range(40):
        n = rng.randint(1, 5)
        a = tuple(Fraction(rng.randint(1, 20)) for _ in range(n))
        stratum = stratum_function(a)
        assert is_self_dual_3v(stratum)
        if tie_inputs(a):
            continue
        negate_all = GroupElement.negation((1,) * n)
        assert sign_embedding(chamber_function(a)) == act_3v(negate_all, stratum)


def test_synthesize_examples():
    found = synthesize(majority(3))
    assert found is not None and to_bool_func(found) == majority(3)
    assert synthesize(parity(2)) is None
    found = synthesize(dictator(4, 3), at_half=True, integral=True)
    assert found is not None
    assert found.t == half_perimeter(found.w)
    assert all(v.denominator == 1 for v in found.w)
    assert to_bool_func(found) == dictator(4, 3)
    assert synthesize(constant(2, 1)) is not None


def brute_force_threshold_tables(n):
    tables = set()
    for w in itertools.product(range(-3, 4), repeat=n):
        for k in range(-13, 14):
            tables.add(to_bool_func(WeightedThreshold(w, Fraction(k, 2))).table)
    return tables


@pytest.mark.parametrize("n", [1, 2, 3])
def test_synthesize_matches_brute_force(n):
    known = brute_force_threshold_tables(n)
    for table in range(1 << (1 << n)):
        f = BoolFunc(n, table)
        found = synthesize(f)
        assert (found is not None) == (table in known)
        if found is not None:
            assert to_bool_func(found) == f


@pytest.mark.slow
def test_synthesize_rejects_nine_variable_code_function():
    from lib.genetic import GeneticCode, code_to_function

    f = code_to_function(GeneticCode.from_text("9,6,4,2"))
    assert synthesize(f) is None
    assert synthesize(f, at_half=True) is None

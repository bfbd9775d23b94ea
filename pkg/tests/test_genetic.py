import itertools
import random
from fractions import Fraction

import pytest

import lib.genetic
from lib.boolfn import (
    HalfCubeFunc, canonical_tn, dictator, dominance_leq, extend_self_dual, is_regular, is_self_dual, majority,
)
from lib.errors import NonGenericError, OutOfRangeError, PreconditionError
from lib.genetic import (
    GeneticCode, NonGeneric,
    census, chamber_witnesses, code_to_function, count_chambers, count_virtual_codes, enumerate_virtual_codes,
    function_to_code, gamma, genetic_code_of, hook_leq, is_virtual_code, realize_code, realize_code_full,
    short_family,
)
from lib.group import GroupElement, act_real, bool_bits, canonical_real, subset_mask, subset_members
from lib.threshold import chamber_function

VIRTUAL_COUNTS = {1: 1, 2: 1, 3: 2, 4: 3, 5: 7, 6: 21, 7: 135, 8: 2470}


def code(text, n=None):
    return GeneticCode.from_text(text, n)


def hooks_by_search(a, b):
    small, large = subset_members(a), subset_members(b)
    for image in itertools.permutations(large, len(small)):
        if all(y >= x for x, y in zip(small, image)) and list(image) == sorted(image):
            return True
    return False


def random_generic(rng, n):
    while True:
        a = sorted(Fraction(rng.randint(1, 40)) for _ in range(n))
        if not isinstance(short_family(a), NonGeneric):
            return a


def test_code_text():
    c = code("6,2,1;6,3")
    assert c.genes == (subset_mask([6, 3]), subset_mask([6, 2, 1]))
    assert c.to_text() == "6,3;6,2,1"
    assert code("-", 4).to_text() == "-"
    assert code("3", 5).n == 5
    with pytest.raises(PreconditionError):
        code("-")
    with pytest.raises(PreconditionError):
        code("3,1", 4)
    with pytest.raises(PreconditionError):
        code("4,x")


def test_hook_examples():
    assert hook_leq(subset_mask([3, 1]), subset_mask([3, 2]))
    assert not hook_leq(subset_mask([3, 2]), subset_mask([3, 1]))
    assert hook_leq(0, subset_mask([1]))
    assert not hook_leq(subset_mask([2, 1]), subset_mask([3]))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_hook_matches_map_search(n):
    for a in range(1 << n):
        for b in range(1 << n):
            assert hook_leq(a, b) == hooks_by_search(a, b)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hook_is_dominance_of_sharp_vectors(n):
    def sharp(x):
        bits = bool_bits(x, n)
        return subset_mask(i for i in range(1, n + 1) if bits[n - i])

    for x in range(1 << n):
        assert sharp(x) == x
        for y in range(1 << n):
            assert hook_leq(sharp(x), sharp(y)) == dominance_leq(x, y, n)


def test_short_family():
    family = short_family((1, 1, 1))
    assert family.is_short(subset_mask([3]))
    assert family.is_long(subset_mask([2, 3]))
    assert family.is_short(0)
    assert short_family((1, 1, 2)) == NonGeneric(subset_mask([3]))


def test_genetic_code_examples():
    assert genetic_code_of((1, 1, 2, 3, 3, 5)).to_text() == "6,3;6,2,1"
    assert genetic_code_of((0, 1, 1, 1)).to_text() == "4,1"
    assert genetic_code_of((1, 1, 1)).to_text() == "3"
    assert genetic_code_of((0, 0, 1)).to_text() == "-"
    assert genetic_code_of((1,)).to_text() == "-"
    with pytest.raises(PreconditionError):
        genetic_code_of((2, 1, 1))
    with pytest.raises(NonGenericError) as info:
        genetic_code_of((1, 1, 2))
    assert info.value.wall == subset_mask([3])


def test_shortness_is_hook_monotone():
    rng = random.Random(13)
    for n in range(2, 7):
        for _ in range(5):
            family = short_family(random_generic(rng, n))
            for b in range(1 << n):
                if not family.is_short(b):
                    continue
                for a in range(1 << n):
                    if hook_leq(a, b):
                        assert family.is_short(a)


def test_realized_codes_are_virtual():
    rng = random.Random(19)
    for n in range(1, 8):
        for _ in range(8):
            assert is_virtual_code(genetic_code_of(random_generic(rng, n)))


def test_virtual_code_examples():
    assert is_virtual_code(code("3"))
    assert not is_virtual_code(code("3,1"))
    assert is_virtual_code(code("6,3;6,2,1"))
    assert is_virtual_code(code("-", 5))
    assert not is_virtual_code(code("5,4;5,2,1"))
    assert not is_virtual_code(code("4,1;4", 4))


def test_enumeration_small():
    assert [c.to_text() for c in enumerate_virtual_codes(3)] == ["-", "3"]
    codes = [c.to_text() for c in enumerate_virtual_codes(4)]
    assert codes[0] == "-"
    assert sorted(codes) == ["-", "4", "4,1"]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_brute_force(n):
    top = 1 << (n - 1)
    masks = list(range(top, 1 << n))
    expected = set()
    for size in range(len(masks) + 1):
        for genes in itertools.combinations(masks, size):
            candidate = GeneticCode(n, genes)
            if is_virtual_code(candidate):
                expected.add(candidate)
    found = list(enumerate_virtual_codes(n))
    assert len(found) == len(set(found))
    assert set(found) == expected


@pytest.mark.parametrize("n, expected", sorted(VIRTUAL_COUNTS.items()))
def test_virtual_counts(n, expected):
    assert count_virtual_codes(n) == expected


def test_count_agrees_with_enumeration():
    for n in range(1, 8):
        assert count_virtual_codes(n) == sum(1 for _ in enumerate_virtual_codes(n))


def test_parallel_count():
    assert count_virtual_codes(7, parallel=2) == 135


def test_enumeration_limits():
    with pytest.raises(OutOfRangeError):
        count_virtual_codes(11)
    with pytest.raises(OutOfRangeError):
        next(enumerate_virtual_codes(0))


def test_realize_examples():
    witness = realize_code(code("4,1"))
    assert witness is not None
    assert genetic_code_of(witness) == code("4,1")
    witness = realize_code(code("6,3;6,2,1"), integral=True)
    assert all(v.denominator == 1 for v in witness)
    assert genetic_code_of(witness).to_text() == "6,3;6,2,1"
    assert realize_code(code("-", 5)) is not None
    with pytest.raises(PreconditionError):
        realize_code(code("3,1"))


def test_nine_gene_code_is_not_realizable():
    c = code("9,6,4,2")
    assert is_virtual_code(c)
    assert realize_code(c) is None


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_short_constraints_match_full_system(n):
    for c in enumerate_virtual_codes(n):
        assert (realize_code(c) is None) == (realize_code_full(c) is None)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_every_small_virtual_code_is_realizable(n):
    assert count_chambers(n) == (0 if n == 1 else VIRTUAL_COUNTS[n])


def test_census_modes():
    assert census(5) == 7
    assert census(5, mode="chambers") == 7
    with pytest.raises(PreconditionError):
        census(5, mode="strata")


def test_chamber_witnesses():
    assert list(chamber_witnesses(1)) == []
    found = list(chamber_witnesses(5))
    assert len(found) == 7
    for c, point in found:
        assert list(point) == sorted(point)
        assert genetic_code_of(point) == c


@pytest.mark.parametrize("parallel", [None, 2])
def test_chamber_progress_follows_results(monkeypatch, parallel):
    seen = []

    def bar(iterable, **kwargs):
        for item in iterable:
            seen.append(item)
            yield item

    monkeypatch.setattr(lib.genetic, "tqdm", bar)
    assert count_chambers(5, parallel=parallel, progress=True) == 7
    assert seen == [True] * 7

    seen.clear()
    found = chamber_witnesses(5, parallel=parallel)
    assert [c for c, _ in found] == list(enumerate_virtual_codes(5))
    assert [c for c, _ in seen] == [c for c, _ in found]


def test_code_to_function_examples():
    assert code_to_function(code("3")) == majority(3)
    assert code_to_function(code("-", 4)) == dictator(4, 1)
    f = code_to_function(code("9,6,4,2"))
    assert is_self_dual(f) and is_regular(f)
    assert gamma(f) == [0b100101010]
    assert function_to_code(majority(3)) == code("3")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_code_function_round_trip(n):
    for c in enumerate_virtual_codes(n):
        f = code_to_function(c)
        assert is_self_dual(f) and is_regular(f)
        assert function_to_code(f) == c


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_codes_give_every_self_dual_regular_function(n):
    regular = set()
    for table in range(1 << (1 << (n - 1))):
        f = extend_self_dual(HalfCubeFunc(n, table))
        if is_regular(f):
            regular.add(f)
    assert {code_to_function(c) for c in enumerate_virtual_codes(n)} == regular


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_equivalent_generic_vectors_share_their_code(n):
    rng = random.Random(71 + n)
    checked = 0
    while checked < 100:
        w = tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 4)) for _ in range(n))
        if isinstance(short_family(w), NonGeneric):
            continue
        g = GroupElement(tuple(rng.randint(0, 1) for _ in range(n)), tuple(rng.sample(range(n), n)))
        a, b = canonical_real(w), canonical_real(act_real(g, w))
        assert genetic_code_of(b) == genetic_code_of(a)
        f = chamber_function(tuple(reversed(b)))
        assert function_to_code(f) == genetic_code_of(a)
        if checked < 20:
            assert canonical_tn(chamber_function(act_real(g, w))) == canonical_tn(chamber_function(w))
        checked += 1


def test_function_to_code_rejects_irregular():
    with pytest.raises(PreconditionError):
        function_to_code(dictator(3, 2))


@pytest.mark.slow
def test_virtual_count_nine():
    assert count_virtual_codes(9) == 319124


@pytest.mark.slow
def test_chamber_count_eight():
    assert count_chambers(8) == 2470

import itertools

import pytest

from lib.boolfn import dictator, majority, parity
from lib.errors import PreconditionError
from lib.games import (
    Game, dummies, game_from_lengths, is_decisive, is_weighted_majority, strategically_equivalent, with_dummies,
)
from lib.genetic import chamber_witnesses


def test_games_from_lengths():
    assert game_from_lengths((1, 1, 1)) == Game(majority(3))
    assert game_from_lengths((1, 1, 1, 5)).winning == dictator(4, 4)
    assert game_from_lengths((0, 0, 1)).winning == dictator(3, 3)
    with pytest.raises(PreconditionError):
        game_from_lengths((1, -1))
    with pytest.raises(PreconditionError):
        Game(parity(2))


def test_decisive():
    assert is_decisive(game_from_lengths((1, 1, 1)))
    assert is_decisive(game_from_lengths((1, 1, 1, 5)))
    assert not is_decisive(game_from_lengths((1, 1, 2)))


def test_dummies():
    assert dummies(game_from_lengths((1, 1, 1, 5))) == [1, 2, 3]
    assert dummies(game_from_lengths((1, 1, 1))) == []
    padded = with_dummies(game_from_lengths((1, 1, 1)), 5)
    assert padded.n == 5
    assert dummies(padded) == [4, 5]
    with pytest.raises(PreconditionError):
        with_dummies(padded, 3)


def test_strategic_equivalence():
    assert strategically_equivalent(game_from_lengths((1, 2, 2)), game_from_lengths((1, 1, 1)))
    assert strategically_equivalent(game_from_lengths((0, 1)), game_from_lengths((1, 0, 0)))
    assert strategically_equivalent(game_from_lengths((1, 1, 1)), game_from_lengths((1, 1, 1, 0)))
    assert not strategically_equivalent(game_from_lengths((1, 1, 1)), game_from_lengths((0, 0, 1)))


def test_game_json():
    game = game_from_lengths((1, 1, 1))
    assert Game.from_json(game.to_json()) == game
    with pytest.raises(PreconditionError):
        Game.from_json('{"n": 3}')


def test_weighted_majority():
    for lengths in [(1, 1, 1), (1, 1, 1, 5), (1, 1, 2, 3, 3, 5)]:
        game = game_from_lengths(lengths)
        weights = is_weighted_majority(game, integral=True)
        assert weights is not None
        assert all(v >= 0 and v.denominator == 1 for v in weights)
        assert game_from_lengths(weights) == game
        assert all(i + 1 in dummies(game) for i, v in enumerate(weights) if v == 0)
    with pytest.raises(PreconditionError):
        is_weighted_majority(game_from_lengths((1, 1, 2)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_decisive_weighted_games_match_chambers(n):
    chambers = [game_from_lengths(point) for _, point in chamber_witnesses(n)]
    for g1, g2 in itertools.combinations(chambers, 2):
        assert not strategically_equivalent(g1, g2)
    for weights in itertools.product(range(5), repeat=n):
        if not any(weights):
            continue
        game = game_from_lengths(weights)
        if not is_decisive(game):
            continue
        assert sum(strategically_equivalent(game, c) for c in chambers) == 1


@pytest.mark.slow
def test_nine_player_code_game_is_not_weighted():
    from lib.genetic import GeneticCode, code_to_function

    game = Game(code_to_function(GeneticCode.from_text("9,6,4,2")))
    assert is_decisive(game)
    assert is_weighted_majority(game) is None

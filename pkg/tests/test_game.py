import pytest
from hypothesis import given

from esgames import (
    BoundExceeded,
    DistributiveLaw,
    Game,
    GamePolarity,
    ValidationError,
    bang_game,
    dual_game,
    parallel_game,
    polarity_of_game,
    trivial_game,
    validate_game,
)
from esgames.fixtures import (
    build_choice_game,
    build_forks_game,
    build_swap_game,
    build_swap_game_positive,
    build_token_game,
    fixture_games,
)

from .conftest import event_structures

GAMES = fixture_games()


@pytest.mark.parametrize("name", sorted(GAMES))
def test_fixture_games_are_valid(name):
    assert validate_game(GAMES[name]).ok


@pytest.mark.parametrize("name", sorted(GAMES))
def test_dual_dual_is_identity(name):
    A = GAMES[name]
    D = dual_game(dual_game(A))
    assert D == A
    assert D.es.polarity == A.es.polarity
    assert dict(D.law.table) == dict(A.law.table)


@pytest.mark.parametrize("name", sorted(GAMES))
def test_dual_is_valid(name):
    assert validate_game(dual_game(GAMES[name])).ok


def test_swap_game_sizes():
    A = build_swap_game()
    assert (A.N.order, A.P.order, len(A.es.configurations)) == (2, 1, 9)


def test_token_game_sizes():
    A = build_token_game(2)
    assert len(A.es.configurations) == 16
    assert (A.N.order, A.P.order) == (2, 2)
    assert build_token_game(3).N.order == 6


def test_forks_sizes():
    A = build_forks_game()
    # neither, one column (3 Player subsets) or both (3 × 3), each on n0 or n1
    assert len(A.es.configurations) == 1 + 2 * 4 + 16
    assert (A.N.order, A.P.order) == (2, 4)


def test_swap_in_positive_group_fails():
    report = validate_game(build_swap_game_positive())
    assert report.failed_axioms() == {"positive-automorphisms"}


def test_parallel_sizes():
    A, B = build_swap_game(), build_choice_game()
    C = parallel_game(A, B)
    assert len(C.es.configurations) == len(A.es.configurations) * len(B.es.configurations)
    assert C.N.order == A.N.order * B.N.order
    assert validate_game(C).ok


def test_bang_sizes():
    A = build_swap_game()
    B = bang_game(A, 2)
    # wreath product S2 ≀ C2 has 2! · 2² elements
    assert B.N.order == 8
    assert len(B.es.configurations) == 81
    assert validate_game(B).ok
    assert bang_game(build_forks_game(), 3).N.order == 6 * 8


def test_bang_rejects_non_negative():
    with pytest.raises(ValidationError, match="initial moves all have the same polarity"):
        bang_game(build_token_game(2), 2)


def test_bang_bound():
    with pytest.raises(BoundExceeded):
        bang_game(build_swap_game(), 3, bound=10)


def test_polarity_of_game():
    assert polarity_of_game(GAMES["empty"]) is GamePolarity.VACUOUS
    assert polarity_of_game(GAMES["swap"]) is GamePolarity.NEGATIVE
    assert polarity_of_game(dual_game(GAMES["swap"])) is GamePolarity.POSITIVE
    assert polarity_of_game(GAMES["token-2"]) is GamePolarity.MIXED


def test_mismatched_law_groups():
    A = build_swap_game()
    wrong = DistributiveLaw(A.P, A.P, {("e", "e"): ("e", "e")})
    report = validate_game(Game(A.es, A.n_action, A.p_action, wrong))
    assert "law-groups" in report.failed_axioms()


@given(event_structures())
def test_trivial_games_are_valid(E):
    A = trivial_game(E)
    assert validate_game(A).ok
    assert dual_game(dual_game(A)) == A


@given(event_structures(max_events=4), event_structures(max_events=4))
def test_parallel_of_trivial_games(E, F):
    C = parallel_game(trivial_game(E), trivial_game(F))
    assert validate_game(C).ok
    assert len(C.es.configurations) == len(E.configurations) * len(F.configurations)

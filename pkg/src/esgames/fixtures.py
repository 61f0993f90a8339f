"""Concrete games and strategies used throughout the test-suite and shipped
as documents in ``esgames/data``.

Token games use negative events ``n0, n1, ...`` (Opponent tokens) and
positive events ``p0, p1, ...`` (Player tokens).
"""

from __future__ import annotations

import json
from importlib import resources

from .copycat import LiftWitness, uniform_copycat
from .es_core import NEG, POS, EventStructure, empty_es, tag
from .game import Game, bang_game, parallel_game, trivial_game
from .report import ValidationError
from .strategy import Strategy, identity_strategy
from .symmetry import (
    DistributiveLaw,
    GroupAction,
    commuting_law,
    derive_law_from_factorization,
    group_from_generators,
    symmetric_group,
    trivial_action,
)
from .tcg import tcg_from_game
from .uniform import UniformStrategy, from_event_maps, search_uniform_structure


def _neg(i: int) -> str:
    return f"n{i}"


def _pos(i: int) -> str:
    return f"p{i}"


def token_structure(n_neg: int, n_pos: int) -> EventStructure:
    events = [(_neg(i), NEG) for i in range(n_neg)] + [(_pos(i), POS) for i in range(n_pos)]
    labels = {_neg(i): f"⊖{i}" for i in range(n_neg)}
    labels.update({_pos(i): f"⊕{i}" for i in range(n_pos)})
    return EventStructure.build(events, labels=labels)


def build_token_game(n: int) -> Game:
    """``n`` Opponent and ``n`` Player tokens, all concurrent; ``S_n`` permutes
    each side and the law swaps (the two actions commute)."""
    if n < 1:
        raise ValidationError("the token game needs at least one token per player")
    E = token_structure(n, n)
    S = symmetric_group(n)
    S_pos = symmetric_group(n)
    ident = {e: e for e in E.events}
    n_perms, p_perms = {}, {}
    for pi in S.elements:
        perm = dict(ident)
        perm.update({_neg(i): _neg(pi[i]) for i in range(n)})
        n_perms[pi] = perm
        perm = dict(ident)
        perm.update({_pos(i): _pos(pi[i]) for i in range(n)})
        p_perms[pi] = perm
    return Game(E, GroupAction(S, E, n_perms), GroupAction(S_pos, E, p_perms), commuting_law(S, S_pos))


def two_columns() -> EventStructure:
    """Two causal pairs ``⊖ -> ⊕`` side by side, no conflict."""
    return EventStructure.build(
        [("n0", NEG), ("p0", POS), ("n1", NEG), ("p1", POS)],
        covers=[("n0", "p0"), ("n1", "p1")],
        labels={"n0": "⊖0", "p0": "⊕0", "n1": "⊖1", "p1": "⊕1"},
    )


COLUMN_SWAP = {"n0": "n1", "n1": "n0", "p0": "p1", "p1": "p0"}


def build_swap_game() -> Game:
    """The two-column game with the column swap as its negative symmetry."""
    E = two_columns()
    _, n_action = group_from_generators(E, {"s": COLUMN_SWAP})
    p_action = trivial_action(E)
    return Game(E, n_action, p_action, derive_law_from_factorization(n_action, p_action))


def build_swap_game_positive() -> Game:
    """Negative fixture: the column swap placed in the positive group."""
    E = two_columns()
    N = trivial_action(E)
    _, p_action = group_from_generators(E, {"s": COLUMN_SWAP})
    law = DistributiveLaw(N.group, p_action.group, {("e", b): (b, "e") for b in p_action.group.elements})
    return Game(E, N, p_action, law)


def build_choice_game() -> Game:
    """Opponent picks one of two conflicting branches, Player answers in it."""
    E = EventStructure.build(
        [("a", NEG), ("b", NEG), ("c", POS), ("d", POS)],
        covers=[("a", "c"), ("b", "d")],
        conflict=[("a", "b"), ("a", "d"), ("c", "b"), ("c", "d")],
        labels={"a": "⊖a", "b": "⊖b", "c": "⊕c", "d": "⊕d"},
    )
    _, n_action = group_from_generators(E, {"t": {"a": "b", "b": "a", "c": "d", "d": "c"}})
    p_action = trivial_action(E)
    return Game(E, n_action, p_action, derive_law_from_factorization(n_action, p_action))


def build_forks_game() -> Game:
    """Two Opponent moves, each enabling a pair of interchangeable Player
    moves. Opponent may swap the columns; Player may swap within a pair."""
    E = EventStructure.build(
        [("n0", NEG), ("n1", NEG), ("p0", POS), ("p1", POS), ("p2", POS), ("p3", POS)],
        covers=[("n0", "p0"), ("n0", "p1"), ("n1", "p2"), ("n1", "p3")],
        labels={"n0": "⊖0", "n1": "⊖1", "p0": "⊕0", "p1": "⊕1", "p2": "⊕2", "p3": "⊕3"},
    )
    ident = {e: e for e in E.events}
    columns = {"n0": "n1", "n1": "n0", "p0": "p2", "p2": "p0", "p1": "p3", "p3": "p1"}
    _, n_action = group_from_generators(E, {"c": columns})
    _, p_action = group_from_generators(
        E, {"a": {**ident, "p0": "p1", "p1": "p0"}, "b": {**ident, "p2": "p3", "p3": "p2"}}
    )
    return Game(E, n_action, p_action, derive_law_from_factorization(n_action, p_action))


def build_single_negative() -> Game:
    return trivial_game(EventStructure.build([("n0", NEG)], labels={"n0": "⊖0"}))


def build_paper_strategy(k: int, n: int) -> Strategy:
    """Strategies (1)-(5) of the token-game introduction, truncated to ``n``
    tokens per player.

    1. answer each Opponent token ``i`` with Player token ``i``;
    2. never play;
    3. one token unprompted, then two per Opponent token (capped at ``n``);
    4. one token, only after Opponent token 2 (needs ``n >= 3``);
    5. ``j`` tokens after Opponent token ``j`` (capped at ``n``).
    """
    if k not in (1, 2, 3, 4, 5):
        raise ValidationError(f"strategy number {k} out of range 1..5")
    game = build_token_game(n)
    negs = [(_neg(i), NEG) for i in range(n)]
    covers: list[tuple[str, str]] = []
    positives: list[str] = []
    supply = iter(range(n))

    def take() -> str | None:
        j = next(supply, None)
        return None if j is None else _pos(j)

    if k == 1:
        positives = [_pos(i) for i in range(n)]
        covers = [(_neg(i), _pos(i)) for i in range(n)]
    elif k == 3:
        first = take()
        if first:
            positives.append(first)
        for i in range(n):
            for _ in range(2):
                p = take()
                if p is None:
                    break
                positives.append(p)
                covers.append((_neg(i), p))
    elif k == 4:
        if n < 3:
            raise ValidationError("strategy 4 needs Opponent token 2, so n >= 3")
        positives = [_pos(2)]
        covers = [(_neg(2), _pos(2))]
    elif k == 5:
        for i in range(n):
            for _ in range(i):
                p = take()
                if p is None:
                    break
                positives.append(p)
                covers.append((_neg(i), p))
    events = negs + [(p, POS) for p in positives]
    labels = {e: game.es.label(e) for e, _ in events}
    sigma = EventStructure.build(events, covers=covers, labels=labels)
    return Strategy(sigma, game, {e: e for e in sigma.events})


def build_example_65() -> tuple[Game, UniformStrategy]:
    """Two concurrent Opponent moves, two concurrent Player moves, each pair
    swappable, commuting law; the identity strategy with ``φ_α = β ∘ α``."""
    E = token_structure(2, 2)
    _, n_action = group_from_generators(E, {"alpha": {"n0": "n1", "n1": "n0", "p0": "p0", "p1": "p1"}})
    _, p_action = group_from_generators(E, {"beta": {"n0": "n0", "n1": "n1", "p0": "p1", "p1": "p0"}})
    game = Game(E, n_action, p_action, commuting_law(n_action.group, p_action.group))
    sigma = identity_strategy(game)
    both = {"n0": "n1", "n1": "n0", "p0": "p1", "p1": "p0"}
    ident = {e: e for e in E.events}
    u = from_event_maps(sigma, {"e": ident, "alpha": both}, {"e": "e", "alpha": "beta"})
    return game, u


def build_empty_game() -> Game:
    return trivial_game(empty_es())


def fixture_games() -> dict[str, Game]:
    """Games every constructor and validator is exercised on."""
    return {
        "empty": build_empty_game(),
        "single-negative": build_single_negative(),
        "swap": build_swap_game(),
        "choice": build_choice_game(),
        "forks": build_forks_game(),
        "token-2": build_token_game(2),
        "example-6.5": build_example_65()[0],
    }


def counit_witness(A: Game | None = None) -> LiftWitness:
    """Co-lifting data for the copy-0 injection ``A -> !A`` (two copies):
    ``L`` projects ``P_A × P_A`` onto copy 0, ``M`` includes ``N_A`` as copy
    0 of the wreath product."""
    A = A or build_forks_game()
    B = bang_game(A, 2)
    f = {a: tag(0, a) for a in A.es.events}
    L = {b: b[0] for b in B.P.elements}
    M = {a: ((0, 1), (a, A.N.unit)) for a in A.N.elements}
    return LiftWitness(A, B, f, L, M, "colift")


def bang_split_witness(A: Game | None = None) -> LiftWitness:
    """Lifting data for the identity on events ``!A -> A ∥ A`` (two copies):
    ``L`` includes ``N_A × N_A`` in the wreath product, ``M`` is the identity
    on ``P_A × P_A``."""
    A = A or build_swap_game()
    B = bang_game(A, 2)
    AA = parallel_game(A, A)
    ident = {e: e for e in B.es.events}
    L = {a: ((0, 1), a) for a in AA.N.elements}
    M = {b: b for b in B.P.elements}
    return LiftWitness(B, AA, ident, L, M, "lift")


def catalog_objects() -> tuple[dict[str, object], dict[str, list[str]]]:
    """Everything shipped in ``data/catalog.json``, with expect-fail tags."""
    swap = build_swap_game()
    objects: dict[str, object] = {
        "empty-game": build_empty_game(),
        "single-negative": build_single_negative(),
        "swap-game": swap,
        "swap-game-positive": build_swap_game_positive(),
        "choice-game": build_choice_game(),
        "forks-game": build_forks_game(),
        "token-2": build_token_game(2),
        "token-3": build_token_game(3),
    }
    for k, n in ((1, 2), (2, 2), (3, 3), (4, 3), (5, 3)):
        objects[f"strategy-{k}-n{n}"] = build_paper_strategy(k, n)
    for k in (1, 2):
        found = search_uniform_structure(objects[f"strategy-{k}-n2"]).uniform
        objects[f"uniform-strategy-{k}-n2"] = found
    u1 = objects["uniform-strategy-1-n2"]
    swap_2 = next(a for a in u1.game.N.elements if a != u1.game.N.unit)
    objects["slice-strategy-1-n2"] = u1.slice(swap_2)
    objects["example-6.5"] = build_example_65()[1]
    objects["copycat-swap"] = uniform_copycat(swap)
    objects["counit-forks"] = counit_witness()
    objects["bang-split-swap"] = bang_split_witness()
    G = tcg_from_game(swap)
    objects["swap-game.full"] = G.full
    objects["swap-game.pos"] = G.pos
    objects["swap-game.neg"] = G.neg
    expect_fail = {"swap-game-positive": ["game"], "example-6.5": ["locality"]}
    return objects, expect_fail


CATALOG = "catalog.json"


def catalog_path():
    return resources.files("esgames") / "data" / CATALOG


def load_catalog():
    from .serialize import Bundle

    return Bundle(json.loads(catalog_path().read_text(encoding="utf-8")), f"esgames/data/{CATALOG}")

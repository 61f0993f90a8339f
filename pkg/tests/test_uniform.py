import pytest

from esgames import (
    BoundExceeded,
    UniformStrategy,
    compose_weak_maps,
    from_event_maps,
    identity_strategy,
    identity_weak_map,
    is_local,
    search_uniform_structure,
    trivial_game,
    validate_strategy,
    validate_uniform,
    validate_uniform_map,
    validate_weak_map,
)
from esgames.fixtures import build_example_65, build_paper_strategy, two_columns
from esgames.symmetry import symmetric_group
from esgames.uniform import generators, phi_from_slices, trivial_uniform


def _swap(G):
    return next(a for a in G.elements if a != G.unit)


def test_strategy_one_found_with_swap_event_map():
    s = build_paper_strategy(1, 2)
    result = search_uniform_structure(s)
    assert result.found
    u = result.uniform
    assert validate_uniform(u).ok
    assert is_local(u).ok
    alpha = _swap(s.game.N)
    # Opponent events must follow α, Player events follow their cause
    assert u.event_map(alpha) == {"n0": "n1", "n1": "n0", "p0": "p1", "p1": "p0"}
    # wherever a Player move has been played the response is forced to be the swap
    for x in s.configurations:
        if x & {"p0", "p1"}:
            assert u(alpha, x)[0] == _swap(s.game.P)


def test_strategy_two_found():
    result = search_uniform_structure(build_paper_strategy(2, 2))
    assert result.found and validate_uniform(result.uniform).ok


@pytest.mark.parametrize("k", [3, 4, 5])
def test_non_uniform_strategies_at_three(k):
    result = search_uniform_structure(build_paper_strategy(k, 3))
    assert not result.found
    assert result.certificate["result"] == "none"
    assert result.certificate["exhaustive"] is True


def test_strategy_four_obstruction_by_hand():
    # the transposition of tokens 1 and 2 must send n2 to n1, but only n2 has
    # a Player successor, so no automorphism of σ can do it
    s = build_paper_strategy(4, 3)
    succ = s.internal.successors
    assert succ["n2"] and not succ["n1"]
    cert = search_uniform_structure(s).certificate
    assert "(0, 2, 1)" in cert["elements_without_candidates"]


def test_search_bound():
    with pytest.raises(BoundExceeded):
        search_uniform_structure(build_paper_strategy(1, 3), bound=3)


def test_search_is_reproducible():
    s = build_paper_strategy(1, 3)
    a = search_uniform_structure(s).uniform
    b = search_uniform_structure(s).uniform
    assert dict(a.phi) == dict(b.phi)


def test_generators_generate():
    for n in (2, 3, 4):
        G = symmetric_group(n)
        gens = generators(G)
        closure = {G.unit}
        frontier = [G.unit]
        while frontier:
            g = frontier.pop()
            for h in gens:
                gh = G.mul(g, h)
                if gh not in closure:
                    closure.add(gh)
                    frontier.append(gh)
        assert closure == set(G.elements)


def test_slices_rebuild_phi():
    u = search_uniform_structure(build_paper_strategy(1, 2)).uniform
    slices = {a: u.slice(a) for a in u.game.N.elements}
    for w in slices.values():
        assert validate_weak_map(w).ok
    assert phi_from_slices(slices, u.strategy.configurations) == dict(u.phi)


def test_nonlocal_example_uniform_not_local():
    _, u = build_example_65()
    assert validate_strategy(u.strategy).ok
    assert validate_uniform(u).ok
    verdict = is_local(u)
    assert not verdict.ok
    alpha, x = verdict.witness
    assert alpha == "alpha"


def test_corrupted_phi_names_axiom():
    u = search_uniform_structure(build_paper_strategy(1, 2)).uniform
    N, P = u.game.N, u.game.P
    phi = dict(u.phi)
    x = frozenset({"n0", "p0"})
    r, y = phi[N.unit, x]
    phi[N.unit, x] = (_swap(P), y)
    report = validate_uniform(UniformStrategy(u.strategy, phi))
    assert "unit-law" in report.failed_axioms()


def test_wrong_response_breaks_weak_map():
    s = build_paper_strategy(1, 2)
    N, P = s.game.N, s.game.P
    swap = {"n0": "n1", "n1": "n0", "p0": "p1", "p1": "p0"}
    ident = {e: e for e in s.internal.events}
    u = from_event_maps(s, {N.unit: ident, _swap(N): swap}, {N.unit: P.unit, _swap(N): P.unit})
    assert "weak-map" in validate_uniform(u).failed_axioms()


def test_missing_phi_entry():
    u = search_uniform_structure(build_paper_strategy(2, 2)).uniform
    phi = dict(u.phi)
    phi.pop(next(iter(phi)))
    assert validate_uniform(UniformStrategy(u.strategy, phi)).failed_axioms() == {"phi-total"}


def test_identity_is_a_uniform_map():
    u = search_uniform_structure(build_paper_strategy(1, 2)).uniform
    w = identity_weak_map(u.strategy)
    assert validate_uniform_map(w, u, u).ok
    assert validate_uniform_map(compose_weak_maps(w, w), u, u).ok


def test_trivial_uniform_on_trivial_group():
    s = identity_strategy(trivial_game(two_columns()))
    u = trivial_uniform(s)
    assert validate_uniform(u).ok and is_local(u).ok


def test_found_structures_are_local():
    # a uniform strategy with no local structure would show up here
    for k, n in ((1, 2), (2, 2), (1, 3), (2, 3)):
        result = search_uniform_structure(build_paper_strategy(k, n))
        assert result.found
        assert is_local(result.uniform).ok, (k, n)

import pytest

from esgames import (
    LiftWitness,
    ValidationError,
    colift_strategy,
    copycat_es,
    copycat_functor,
    copycat_report,
    copycat_strategy,
    enumerate_automorphisms,
    is_local,
    lift_strategy,
    uniform_colift,
    uniform_copycat,
    uniform_lift,
    validate_colift_witness,
    validate_event_structure,
    validate_lift_witness,
    validate_map,
    validate_strategy,
    validate_uniform,
)
from esgames.fixtures import (
    bang_split_witness,
    build_choice_game,
    build_forks_game,
    build_single_negative,
    build_swap_game,
    counit_witness,
    fixture_games,
)


def test_copycat_sizes():
    # ⊖ gives the chain 1.n < 0.n
    assert len(copycat_es(build_single_negative().es).configurations) == 3
    # each column becomes 1.n < 0.n < 0.p < 1.p: five configurations
    assert len(copycat_es(build_swap_game().es).configurations) == 25
    # each fork: ∅, {1.n}, {1.n, 0.n}, then two independent two-step chains
    assert len(copycat_es(build_forks_game().es).configurations) == 11 * 11


def test_copycat_links():
    E = copycat_es(build_swap_game().es)
    assert ("1.n0", "0.n0") in E.order
    assert ("0.p0", "1.p0") in E.order
    assert ("1.n0", "1.p0") in E.order


def test_choice_copycat_notes_inherited_conflicts():
    report = copycat_report(build_choice_game().es)
    assert report.ok
    assert "8 conflict pair(s)" in report.notes[0]
    assert validate_event_structure(copycat_es(build_choice_game().es)).ok


@pytest.mark.parametrize("name", sorted(fixture_games()))
def test_uniform_copycat(name):
    A = fixture_games()[name]
    assert validate_strategy(copycat_strategy(A)).ok
    u = uniform_copycat(A)
    assert validate_uniform(u).ok
    assert is_local(u).ok


def test_copycat_functor_on_automorphisms():
    A = build_forks_game()
    for f in enumerate_automorphisms(A.es):
        assert validate_map(copycat_functor(f)).ok


def test_counit_colift():
    w = counit_witness()
    assert validate_colift_witness(w).ok
    s = colift_strategy(w)
    assert validate_strategy(s).ok
    u = uniform_colift(w)
    assert validate_uniform(u).ok
    assert is_local(u).ok


def test_counit_as_literal_lift_fails_receptivity():
    w = counit_witness()
    literal = LiftWitness(w.source, w.target, w.map, w.L, w.M, "lift")
    with pytest.raises(ValidationError, match="receptivity"):
        lift_strategy(literal)


def test_bang_split_lift():
    w = bang_split_witness()
    assert validate_lift_witness(w).ok
    assert validate_strategy(lift_strategy(w)).ok
    u = uniform_lift(w)
    assert validate_uniform(u).ok and is_local(u).ok


def _corrupt(table, key, value):
    out = dict(table)
    out[key] = value
    return out


def test_corrupted_colift_L_is_named():
    w = counit_witness()
    # L reads P_B -> P_A here; send (b, e) to a instead of b
    assert w.L[("b", "e")] == "b"
    bad = LiftWitness(w.source, w.target, w.map, _corrupt(w.L, ("b", "e"), "a"), w.M, "colift")
    failed = validate_colift_witness(bad).failed_axioms()
    assert failed & {"L-square", "hexagon"}


def test_corrupted_lift_L_is_named():
    w = bang_split_witness()
    alpha = next(a for a in w.target.N.elements if a != w.target.N.unit)
    bad = LiftWitness(w.source, w.target, w.map, _corrupt(w.L, alpha, w.source.N.unit), w.M)
    assert validate_lift_witness(bad).failed_axioms() & {"L-homomorphism", "L-square", "hexagon"}


def test_non_map_witness():
    w = bang_split_witness()
    events = list(w.source.es.events)
    squashed = {e: events[0] for e in events}
    report = validate_lift_witness(LiftWitness(w.source, w.target, squashed, w.L, w.M))
    assert any(a.startswith("map:") for a in report.failed_axioms())


def test_uniform_lift_rejects_bad_witness():
    w = bang_split_witness()
    alpha = next(a for a in w.target.N.elements if a != w.target.N.unit)
    bad = LiftWitness(w.source, w.target, w.map, _corrupt(w.L, alpha, w.source.N.unit), w.M)
    with pytest.raises(ValidationError, match="invalid lift witness"):
        uniform_lift(bad)

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from esgames import (
    NEG,
    POS,
    BoundExceeded,
    EsMap,
    EventStructure,
    ExtensionKind,
    ValidationError,
    compose,
    dual_es,
    enumerate_automorphisms,
    enumerate_configurations,
    extension_kind,
    identity_map,
    parallel_es,
    validate_event_structure,
    validate_map,
)
from esgames.fixtures import two_columns

from . import oracles
from .conftest import event_structures, random_es


def test_two_columns_has_nine_configurations():
    # each column is the chain n < p, so 3 choices per column
    assert len(two_columns().configurations) == 9


def test_empty_structure():
    E = EventStructure.build([])
    assert E.configurations == [frozenset()]
    assert validate_event_structure(E).ok


def test_cycle_rejected():
    with pytest.raises(ValidationError, match="cycle"):
        EventStructure.build([("a", POS), ("b", POS)], covers=[("a", "b"), ("b", "a")])


def test_bad_polarity_rejected():
    with pytest.raises(ValidationError):
        EventStructure.build([("a", "?")])


def test_non_hereditary_conflict_is_named():
    E = EventStructure.build([("a", POS), ("b", NEG), ("c", POS)], covers=[("a", "c")], conflict=[("a", "b")])
    report = validate_event_structure(E)
    assert report.failed_axioms() == {"conflict-hereditary"}
    assert report.first().witness in {("c", "b")}


def test_reflexive_conflict_is_named():
    E = EventStructure(("a",), {"a": POS}, frozenset(), frozenset({("a", "a")}))
    assert "conflict-irreflexive" in validate_event_structure(E).failed_axioms()


def test_intransitive_order_is_named():
    E = EventStructure(("a", "b", "c"), dict.fromkeys("abc", POS), frozenset({("a", "b"), ("b", "c")}))
    assert validate_event_structure(E).failed_axioms() == {"order-transitive"}


def test_configuration_bound(monkeypatch):
    E = EventStructure.build([(f"e{i}", POS) for i in range(6)])
    with pytest.raises(BoundExceeded):
        enumerate_configurations(E, bound=10)
    monkeypatch.setenv("ESGAMES_MAX_CONFIGS", "5")
    with pytest.raises(BoundExceeded):
        enumerate_configurations(E)


def test_extension_kinds():
    E = two_columns()
    assert extension_kind(E, set(), set()) is ExtensionKind.EMPTY
    assert extension_kind(E, set(), {"n0"}) is ExtensionKind.NEGATIVE
    assert extension_kind(E, {"n0"}, {"n0", "p0"}) is ExtensionKind.POSITIVE
    assert extension_kind(E, set(), {"n0", "p0"}) is ExtensionKind.MIXED
    assert extension_kind(E, {"n0"}, {"n1"}) is ExtensionKind.NONE
    assert ExtensionKind.EMPTY.is_positive and ExtensionKind.EMPTY.is_negative


def test_map_failures_are_named():
    E = two_columns()
    flat = EventStructure.build([("n0", NEG), ("p0", POS)])
    collapse = EsMap(E, flat, {"n0": "n0", "n1": "n0", "p0": "p0", "p1": "p0"})
    assert "local-injectivity" in validate_map(collapse).failed_axioms()
    wrong_pol = EsMap(E, E, {"n0": "p0", "p0": "n0", "n1": "n1", "p1": "p1"})
    assert "polarity" in validate_map(wrong_pol).failed_axioms()
    partial = EsMap(E, E, {"n0": "n0"})
    assert validate_map(partial).failed_axioms() == {"total"}
    chain = EventStructure.build([("n0", NEG), ("p0", POS)], covers=[("p0", "n0")])
    loose = EsMap(flat, chain, {"n0": "n0", "p0": "p0"})
    assert "configuration-image" in validate_map(loose).failed_axioms()


def test_dual_flips_polarity_and_is_involutive():
    E = two_columns()
    D = dual_es(E)
    assert all(D.polarity[e] != E.polarity[e] for e in E.events)
    assert dual_es(D) == E


def test_parallel_configurations_are_products():
    E = two_columns()
    assert len(parallel_es(E, E).configurations) == 81


@given(event_structures())
def test_configurations_match_brute_force(E):
    expected = oracles.configurations(E.events, E.order, E.conflict)
    assert set(E.configurations) == expected
    assert len(E.configurations) == len(expected)


@given(event_structures())
def test_random_structures_are_valid(E):
    assert validate_event_structure(E).ok


@given(event_structures(max_events=5))
def test_automorphisms_match_brute_force(E):
    found = {tuple(sorted(f.mapping.items())) for f in enumerate_automorphisms(E)}
    expected = {tuple(sorted(m.items())) for m in oracles.automorphisms(E.events, E.polarity, E.order, E.conflict)}
    assert found == expected


@given(event_structures(max_events=5))
def test_automorphisms_are_valid_maps(E):
    for f in enumerate_automorphisms(E):
        assert validate_map(f).ok


@given(event_structures(), st.randoms(use_true_random=False))
def test_validate_map_agrees_with_oracle(E, rnd):
    events = list(E.events)
    mapping = {e: rnd.choice(events) for e in events}
    f = EsMap(E, E, mapping)
    configs = set(E.configurations)
    assert validate_map(f).ok == oracles.is_es_map(mapping, configs, configs, E.polarity, E.polarity)


@given(event_structures())
def test_identity_is_unit_for_composition(E):
    for f in enumerate_automorphisms(E)[:4]:
        assert compose(identity_map(E), f).mapping == f.mapping
        assert compose(f, identity_map(E)).mapping == f.mapping


def test_extensions_and_restrictions_are_configurations():
    rng = random.Random(7)
    for _ in range(30):
        E = random_es(rng)
        for x in E.configurations:
            for y in E.extensions(x, POS):
                assert extension_kind(E, x, y).is_positive
                assert E.is_configuration(y)
            for z in E.restrictions(x, NEG):
                assert extension_kind(E, z, x).is_negative
                assert E.is_configuration(z)

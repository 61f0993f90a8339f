import pytest
from hypothesis import given
from hypothesis import strategies as st

from esgames import (
    NEG,
    POS,
    DistributiveLaw,
    FiniteGroup,
    GroupAction,
    ValidationError,
    classify_automorphism,
    commuting_law,
    derive_law_from_factorization,
    enumerate_automorphisms,
    group_from_generators,
    symmetric_group,
    trivial_action,
    trivial_group,
    validate_action,
    validate_distributive_law,
    validate_group,
)
from esgames.fixtures import COLUMN_SWAP, build_forks_game, build_token_game, fixture_games, two_columns
from esgames.symmetry import is_homomorphism, isw, power_group, product_group, validate_action_polarity

from .conftest import event_structures


def test_symmetric_group_orders():
    for n, order in ((1, 1), (2, 2), (3, 6), (4, 24)):
        G = symmetric_group(n)
        assert G.order == order
        assert validate_group(G).ok


def test_products_are_groups():
    S3 = symmetric_group(3)
    assert validate_group(product_group(S3, symmetric_group(2))).ok
    assert power_group(S3, 2).order == 36


def test_broken_table_names_axiom():
    G = symmetric_group(3)
    table = dict(G.table)
    g, h = G.elements[1], G.elements[2]
    table[g, h] = G.unit if table[g, h] != G.unit else G.elements[3]
    broken = FiniteGroup(G.elements, table, G.unit, G.inverses)
    assert not validate_group(broken).ok
    assert validate_group(broken).failed_axioms() & {"associativity", "inverse", "unit"}


def test_from_function_rejects_non_group():
    with pytest.raises(ValidationError):
        FiniteGroup.from_function(range(3), lambda a, b: max(a, b))


def test_swap_is_negative_not_positive():
    E = two_columns()
    cls = classify_automorphism(E, COLUMN_SWAP)
    assert cls.negative and not cls.positive
    # the empty configuration is fixed but the swap moves the enabled n0
    assert cls.positive_witness == (frozenset(), "n0")


def test_classify_rejects_non_automorphism():
    with pytest.raises(ValidationError):
        classify_automorphism(two_columns(), {"n0": "p0", "p0": "n0", "n1": "n1", "p1": "p1"})


def test_action_failures_are_named():
    E = two_columns()
    G = symmetric_group(2)
    ident = {e: e for e in E.events}
    not_auto = GroupAction(G, E, {(0, 1): ident, (1, 0): {**ident, "n0": "p0", "p0": "n0"}})
    assert "automorphism" in validate_action(not_auto).failed_axioms()
    bad_unit = GroupAction(G, E, {(0, 1): COLUMN_SWAP, (1, 0): ident})
    assert validate_action(bad_unit).failed_axioms() & {"unit", "composition"}
    assert validate_action(GroupAction(G, E, {(0, 1): ident})).failed_axioms() == {"total"}


def test_positive_group_with_negative_swap_is_rejected():
    E = two_columns()
    _, act = group_from_generators(E, {"s": COLUMN_SWAP})
    assert not validate_action_polarity(act, POS).ok
    assert validate_action_polarity(act, NEG).ok


def test_commuting_law_is_valid():
    assert validate_distributive_law(commuting_law(symmetric_group(3), symmetric_group(2))).ok


def test_corrupted_law_names_axiom():
    A = build_token_game(2)
    table = dict(A.law.table)
    a = next(x for x in A.N.elements if x != A.N.unit)
    b = next(x for x in A.P.elements if x != A.P.unit)
    table[a, b] = (A.P.unit, a)
    report = validate_distributive_law(DistributiveLaw(A.N, A.P, table))
    assert not report.ok
    assert report.failed_axioms() <= {"multiplication-N", "multiplication-P"}


def test_law_unit_violation():
    N, P = symmetric_group(2), symmetric_group(2)
    table = {(a, b): (b, a) for a in N.elements for b in P.elements}
    table[N.unit, (1, 0)] = (P.unit, N.unit)
    assert "unit-N" in validate_distributive_law(DistributiveLaw(N, P, table)).failed_axioms()


def test_derived_law_needs_faithful_actions():
    E = two_columns()
    with pytest.raises(ValidationError, match="faithful"):
        derive_law_from_factorization(trivial_action(E, symmetric_group(2)), trivial_action(E))


def test_derived_law_rejects_shared_elements():
    E = two_columns()
    _, act = group_from_generators(E, {"s": COLUMN_SWAP})
    with pytest.raises(ValidationError, match="intersection"):
        derive_law_from_factorization(act, act)


def test_forks_law_is_not_commuting():
    A = build_forks_game()
    # the column swap conjugates a into b
    assert A.law("c", "a") == ("b", "c")


def test_isw_is_an_involution_up_to_swap():
    law = build_forks_game().law
    swap = isw(law)
    for b in law.p_group.elements:
        for a in law.n_group.elements:
            a2, b2 = swap(b, a)
            assert swap(b2, a2) == (a, b)


def test_homomorphism_witnesses():
    G = symmetric_group(3)
    T = trivial_group()
    assert is_homomorphism({g: T.unit for g in G.elements}, G, T) is None
    assert len(is_homomorphism({G.unit: T.unit}, G, T)) == 1


@given(event_structures(max_events=5), st.randoms(use_true_random=False))
def test_generated_groups_are_groups(E, rnd):
    autos = enumerate_automorphisms(E)
    gens = rnd.sample(autos, min(len(autos), rnd.randint(0, 3)))
    G, act = group_from_generators(E, gens)
    assert validate_group(G).ok
    assert validate_action(act).ok
    assert act.is_faithful()
    assert G.order <= len(autos)


@pytest.mark.parametrize("name", sorted(fixture_games()))
def test_fixture_laws_match_derivation(name):
    A = fixture_games()[name]
    if A.n_action.is_faithful() and A.p_action.is_faithful():
        assert derive_law_from_factorization(A.n_action, A.p_action) == A.law


def test_trivial_group():
    T = trivial_group()
    assert T.order == 1 and validate_group(T).ok
    assert validate_action(trivial_action(two_columns())).ok

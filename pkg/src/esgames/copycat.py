"""Copycat, its uniform structure, and lifting/co-lifting of maps of event
structures into (uniform) strategies.

On ``A⊥ ∥ A`` the events of the dual copy are ``0.a`` and those of ``A`` are
``1.a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping

import networkx as nx

from .es_core import (
    POS,
    EsMap,
    EventStructure,
    dual_es,
    parallel_es,
    tag,
    untag,
    validate_event_structure,
    validate_map,
)
from .game import Game, dual_game, parallel_game
from .report import Report, ValidationError
from .strategy import Strategy, validate_strategy
from .symmetry import is_homomorphism
from .uniform import UniformStrategy


def _copycat_parts(A: EventStructure) -> tuple[EventStructure, set]:
    base = parallel_es(dual_es(A), A)
    graph = nx.DiGraph()
    graph.add_nodes_from(base.events)
    graph.add_edges_from(base.order)
    for a in A.events:
        if A.polarity[a] == POS:
            graph.add_edge(tag(0, a), tag(1, a))
        else:
            graph.add_edge(tag(1, a), tag(0, a))
    if not nx.is_directed_acyclic_graph(graph):
        raise ValidationError("copycat order has a cycle")
    order = frozenset(nx.transitive_closure_dag(graph).edges())
    succ: dict[str, set] = {e: set() for e in base.events}
    for a, b in order:
        succ[a].add(b)
    conflict = set()
    for a, b in base.conflict:
        for a2 in {a} | succ[a]:
            for b2 in {b} | succ[b]:
                conflict.add((a2, b2))
                conflict.add((b2, a2))
    added = conflict - set(base.conflict)
    E = EventStructure(base.events, base.polarity, order, frozenset(conflict), base.labels)
    return E, added


def copycat_es(A: EventStructure) -> EventStructure:
    """Events of ``A⊥ ∥ A`` ordered by the transitive closure of the parallel
    order plus ``0.a < 1.a`` for positive ``a`` and ``1.a < 0.a`` for negative
    ``a``. Conflict is closed hereditarily under the new order."""
    return _copycat_parts(A)[0]


def copycat_report(A: EventStructure) -> Report:
    """Validity of ``copycat_es(A)``, noting any conflicts added by closure."""
    E, added = _copycat_parts(A)
    report = validate_event_structure(E)
    report.subject = "copycat event structure"
    if added:
        pairs = sorted({tuple(sorted(p)) for p in added})
        report.note(f"hereditary closure added {len(pairs)} conflict pair(s): {pairs}")
    return report


def copycat_game(A: Game) -> Game:
    return parallel_game(dual_game(A), A)


def copycat_strategy(A: Game, game: Game | None = None) -> Strategy:
    E = copycat_es(A.es)
    return Strategy(E, game or copycat_game(A), {e: e for e in E.events})


def copycat_functor(f: EsMap) -> EsMap:
    """``cc_f``: ``f`` on both tags."""
    if not validate_map(f).ok:
        raise ValidationError("copycat_functor needs a valid map of event structures")
    mapping = {}
    for e in f.source.events:
        for i in (0, 1):
            mapping[tag(i, e)] = tag(i, f.mapping[e])
    return EsMap(copycat_es(f.source), copycat_es(f.target), mapping)


def uniform_copycat(A: Game, game: Game | None = None) -> UniformStrategy:
    """Copycat with ``φ_(β, α) = cc_ε`` and global response ``(δ⁻¹, γ⁻¹)``,
    where ``(γ⁻¹, δ) = λ(α, β⁻¹)`` and ``ε = δβ = γα``."""
    s = copycat_strategy(A, game)
    NA, PA = A.N, A.P
    events = A.es.events
    phi = {}
    for beta, alpha in s.game.N.elements:
        g_inv, delta = A.law(alpha, PA.inv(beta))
        gamma = PA.inv(g_inv)
        pd, pb = A.n_action.perms[delta], A.p_action.perms[beta]
        pg, pa = A.p_action.perms[gamma], A.n_action.perms[alpha]
        eps = {e: pd[pb[e]] for e in events}
        if any(eps[e] != pg[pa[e]] for e in events):
            raise ValidationError(
                f"broken distributive law: δ∘β ≠ γ∘α for (β, α) = ({beta!r}, {alpha!r})"
            )
        cc_eps = {tag(i, e): tag(i, eps[e]) for e in events for i in (0, 1)}
        response = (NA.inv(delta), PA.inv(gamma))
        for x in s.configurations:
            phi[(beta, alpha), x] = (response, frozenset(cc_eps[e] for e in x))
    return UniformStrategy(s, phi)


# -- lifting -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LiftWitness:
    """A map ``f : A -> B`` with ``L : N_B -> N_A`` and ``M : P_A -> P_B``.

    With ``mode="colift"`` the record is read dually: ``L : P_B -> P_A`` and
    ``M : N_A -> N_B`` (see :func:`dual_witness`).
    """

    source: Game
    target: Game
    map: Mapping[str, str]
    L: Mapping[Hashable, Hashable]
    M: Mapping[Hashable, Hashable]
    mode: str = "lift"

    @property
    def es_map(self) -> EsMap:
        return EsMap(self.source.es, self.target.es, self.map)


def validate_lift_witness(w: LiftWitness) -> Report:
    A, B, f = w.source, w.target, w.map
    report = Report("lift witness")
    report.absorb(validate_map(w.es_map), "map:")
    for axiom in ("L-homomorphism", "M-homomorphism", "L-square", "M-square", "hexagon"):
        report.check(axiom)
    bad_l = is_homomorphism(w.L, B.N, A.N)
    if bad_l is not None:
        report.fail("L-homomorphism", f"L not a homomorphism at {bad_l!r}", bad_l)
    bad_m = is_homomorphism(w.M, A.P, B.P)
    if bad_m is not None:
        report.fail("M-homomorphism", f"M not a homomorphism at {bad_m!r}", bad_m)
    # squares and hexagon still make sense for a non-homomorphic but total table
    if bad_l is not None and len(bad_l) == 1 or bad_m is not None and len(bad_m) == 1:
        return report
    for alpha in B.N.elements:
        pl, pa = A.n_action.perms[w.L[alpha]], B.n_action.perms[alpha]
        bad = [a for a in A.es.events if f[pl[a]] != pa[f[a]]]
        if bad:
            report.fail("L-square", f"f∘L({alpha!r}) ≠ {alpha!r}∘f at {bad[0]}", (alpha, bad[0]))
    for beta in A.P.elements:
        pb, pm = A.p_action.perms[beta], B.p_action.perms[w.M[beta]]
        bad = [a for a in A.es.events if f[pb[a]] != pm[f[a]]]
        if bad:
            report.fail("M-square", f"f∘{beta!r} ≠ M({beta!r})∘f at {bad[0]}", (beta, bad[0]))
    for alpha in B.N.elements:
        for beta in A.P.elements:
            b1, a1 = B.law(alpha, w.M[beta])
            b2, a2 = A.law(w.L[alpha], beta)
            if (b1, w.L[a1]) != (w.M[b2], a2):
                report.fail(
                    "hexagon",
                    f"coherence hexagon fails at ({alpha!r}, {beta!r})",
                    (alpha, beta),
                )
    return report


def lift_strategy(w: LiftWitness) -> Strategy:
    """``⌈f⌉``: copycat on ``A`` projected through ``A⊥ ∥ f``."""
    A, B = w.source, w.target
    pre = validate_strategy(Strategy(A.es, B, w.map))
    if not pre.ok:
        v = pre.violations[0]
        raise ValidationError(f"lift precondition fails: f is not a strategy on the target: {v.message}", pre)
    E = copycat_es(A.es)
    proj = {}
    for e in E.events:
        i, a = untag(e)
        proj[e] = e if i == 0 else tag(1, w.map[a])
    return Strategy(E, parallel_game(dual_game(A), B), proj)


def uniform_lift(w: LiftWitness) -> UniformStrategy:
    """``φ`` for ``⌈f⌉``: translate ``(ν, α)`` to ``(ν, L α)``, use uniform
    copycat on ``A``, translate the response ``(r₀, r₁)`` to ``(r₀, M r₁)``."""
    report = validate_lift_witness(w)
    if not report.ok:
        raise ValidationError(f"invalid lift witness: {report.violations[0]}", report)
    s = lift_strategy(w)
    cc = uniform_copycat(w.source)
    phi = {}
    for nu, alpha in s.game.N.elements:
        for x in s.configurations:
            (r0, r1), y = cc.phi[(nu, w.L[alpha]), x]
            phi[(nu, alpha), x] = ((r0, w.M[r1]), y)
    return UniformStrategy(s, phi)


def dual_witness(w: LiftWitness) -> LiftWitness:
    """Co-lifting data for ``f : A -> B`` as lifting data for ``f : A⊥ -> B⊥``."""
    return LiftWitness(dual_game(w.source), dual_game(w.target), w.map, w.L, w.M, "lift")


def validate_colift_witness(w: LiftWitness) -> Report:
    report = validate_lift_witness(dual_witness(w))
    report.subject = "co-lift witness"
    return report


def _swap_tag(e: str) -> str:
    i, a = untag(e)
    return tag(1 - i, a)


def colift_strategy(w: LiftWitness) -> Strategy:
    """Copycat on ``A`` projected through ``f⊥ ∥ A`` onto ``B⊥ ∥ A``.

    Computed as the lift of ``f⊥`` with both components swapped.
    """
    lifted = lift_strategy(dual_witness(w))
    E = copycat_es(w.source.es)
    proj = {_swap_tag(e): _swap_tag(p) for e, p in lifted.proj.items()}
    if set(proj) != set(E.events):
        raise ValidationError("co-lift relabelling does not match the copycat events")
    return Strategy(E, parallel_game(dual_game(w.target), w.source), proj)


def uniform_colift(w: LiftWitness) -> UniformStrategy:
    lifted = uniform_lift(dual_witness(w))
    s = colift_strategy(w)
    phi = {}
    for (a, b), x in lifted.phi:
        r, y = lifted.phi[(a, b), x]
        phi[(b, a), frozenset(_swap_tag(e) for e in x)] = (
            (r[1], r[0]),
            frozenset(_swap_tag(e) for e in y),
        )
    return UniformStrategy(s, phi)

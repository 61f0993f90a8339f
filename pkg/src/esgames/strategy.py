"""Strategies on a fixed game, strict and weak maps between them, the action
of the negative group on strategies, and the Kleisli view of weak maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .es_core import NEG, POS, EsMap, EventStructure, show, validate_event_structure, validate_map
from .game import Game
from .report import Report, ValidationError


@dataclass(frozen=True, eq=False)
class Strategy:
    internal: EventStructure
    game: Game
    proj: Mapping[str, str]

    @property
    def projection(self) -> EsMap:
        return EsMap(self.internal, self.game.es, self.proj)

    def image(self, x) -> frozenset:
        return frozenset(self.proj[e] for e in x)

    @property
    def configurations(self) -> list[frozenset]:
        return self.internal.configurations


def same_game(A: Game, B: Game) -> bool:
    return A is B or A == B


def validate_strategy(s: Strategy) -> Report:
    """Exhaustive check of the two strategy conditions.

    receptivity: every negative extension ``p x ⊆- z`` in the game has exactly
    one ``y ⊇ x`` with ``p y = z``; courtesy: every ``z ⊆+ p x`` is the image
    of some ``y ⊆ x``.
    """
    report = Report("strategy")
    report.absorb(validate_event_structure(s.internal), "internal:")
    if not report.ok:
        return report
    report.absorb(validate_map(s.projection), "projection:")
    report.check("receptivity")
    report.check("courtesy")
    if not report.ok:
        return report
    sigma, game_es = s.internal, s.game.es
    for x in sigma.configurations:
        px = s.image(x)
        lifts: dict[frozenset, list[frozenset]] = {}
        for y in sigma.extensions(x, NEG):
            lifts.setdefault(s.image(y), []).append(y)
        for z in game_es.extensions(px, NEG):
            found = lifts.get(z, [])
            if not found:
                report.fail(
                    "receptivity",
                    f"receptivity violated at {show(x)}: no lift of negative extension {show(z)}",
                    (x, z),
                )
            elif len(found) > 1:
                report.fail(
                    "receptivity",
                    f"receptivity violated at {show(x)}: {len(found)} lifts of {show(z)}",
                    (x, z),
                )
        inverse = {s.proj[e]: e for e in x}
        for z in game_es.restrictions(px, POS):
            y = frozenset(inverse[a] for a in z)
            if not sigma.is_configuration(y):
                report.fail(
                    "courtesy",
                    f"courtesy violated at {show(x)}: {show(z)} ⊆+ p x has no preimage configuration",
                    (x, z),
                )
    return report


def identity_strategy(A: Game) -> Strategy:
    return Strategy(A.es, A, {e: e for e in A.es.events})


def act_on_strategy(alpha: Hashable, s: Strategy) -> Strategy:
    """``α · σ``: same event structure, projection post-composed with ``α``."""
    perm = s.game.n_action.perms[alpha]
    return Strategy(s.internal, s.game, {e: perm[p] for e, p in s.proj.items()})


def validate_strict_map(f: EsMap | Mapping[str, str], s: Strategy, t: Strategy) -> Report:
    mapping = f.mapping if isinstance(f, EsMap) else f
    report = Report("strict map of strategies")
    report.check("same-game")
    if not same_game(s.game, t.game):
        report.fail("same-game", "strategies live on different games")
        return report
    report.absorb(validate_map(EsMap(s.internal, t.internal, mapping)), "map:")
    report.check("commutes")
    if not report.ok:
        return report
    for e in s.internal.events:
        if t.proj[mapping[e]] != s.proj[e]:
            report.fail("commutes", f"projections disagree at {e}", e)
    return report


@dataclass(frozen=True, eq=False)
class WeakMap:
    """A map of event structures with a positive response per configuration.

    The square is ``p_σ(s) = act(responses[x])(p_τ(f(s)))`` for ``s ∈ x``.
    """

    source: Strategy
    target: Strategy
    f: Mapping[str, str]
    responses: Mapping[frozenset, Hashable] = field(default_factory=dict)

    @property
    def map(self) -> EsMap:
        return EsMap(self.source.internal, self.target.internal, self.f)

    def image(self, x) -> frozenset:
        return frozenset(self.f[e] for e in x)


def validate_weak_map(w: WeakMap) -> Report:
    report = Report("weak map of strategies")
    report.check("same-game")
    if not same_game(w.source.game, w.target.game):
        report.fail("same-game", "strategies live on different games")
        return report
    report.absorb(validate_map(w.map), "map:")
    report.check("responses-total")
    report.check("square")
    if not report.ok:
        return report
    game = w.source.game
    P = game.P
    for x in w.source.configurations:
        r = w.responses.get(x)
        if r is None or r not in P:
            report.fail("responses-total", f"no positive response recorded for {show(x)}", x)
            continue
        perm = game.p_action.perms[r]
        for e in sorted(x):
            if w.source.proj[e] != perm[w.target.proj[w.f[e]]]:
                report.fail(
                    "square",
                    f"square fails at {show(x)} on event {e} with response {r!r}",
                    (x, e),
                )
                break
    return report


def identity_weak_map(s: Strategy) -> WeakMap:
    unit = s.game.P.unit
    return WeakMap(s, s, {e: e for e in s.internal.events}, {x: unit for x in s.configurations})


def strict_as_weak(f: EsMap | Mapping[str, str], s: Strategy, t: Strategy) -> WeakMap:
    mapping = f.mapping if isinstance(f, EsMap) else f
    unit = s.game.P.unit
    return WeakMap(s, t, dict(mapping), {x: unit for x in s.configurations})


def global_weak_map(f: EsMap | Mapping[str, str], s: Strategy, t: Strategy, beta: Hashable) -> WeakMap:
    """The weak map with the same response ``β`` everywhere."""
    mapping = f.mapping if isinstance(f, EsMap) else f
    return WeakMap(s, t, dict(mapping), {x: beta for x in s.configurations})


def weak_map_to_kleisli(w: WeakMap) -> dict[frozenset, tuple]:
    """``x ↦ (f[x], f x)`` as a function ``C(σ) -> P × C(τ)``."""
    return {x: (w.responses[x], w.image(x)) for x in w.source.configurations}


def compose_weak_maps(w2: WeakMap, w1: WeakMap) -> WeakMap:
    """``w2 ∘ w1`` with response ``m_P(w1[x], w2[f1 x])``."""
    if not same_game(w1.source.game, w2.source.game):
        raise ValidationError("incompatible games")
    if w1.target.internal != w2.source.internal:
        raise ValidationError("weak maps are not composable: middle strategies differ")
    P = w1.source.game.P
    f = {e: w2.f[w1.f[e]] for e in w1.source.internal.events}
    responses = {x: P.mul(w1.responses[x], w2.responses[w1.image(x)]) for x in w1.source.configurations}
    return WeakMap(w1.source, w2.target, f, responses)

"""Isomorphism families, thin concurrent games and ~-strategies, with the
translations from games with group actions and from uniform strategies.

A bijection between configurations is stored as its graph, a frozenset of
``(a, b)`` pairs; two members of a family are the same iff their graphs are.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .es_core import NEG, POS, EsMap, EventStructure, config_key, show
from .game import Game
from .report import Report, ValidationError, Verdict
from .strategy import Strategy, validate_strategy
from .symmetry import GroupAction
from .uniform import UniformStrategy, is_local


@dataclass(frozen=True)
class ConfigBijection:
    graph: frozenset

    @classmethod
    def of(cls, mapping: Mapping[str, str], x: Iterable[str]) -> "ConfigBijection":
        """Restriction of an event map to ``x``."""
        return cls(frozenset((e, mapping[e]) for e in x))

    @classmethod
    def identity(cls, x: Iterable[str]) -> "ConfigBijection":
        return cls(frozenset((e, e) for e in x))

    @property
    def source(self) -> frozenset:
        return frozenset(a for a, _ in self.graph)

    @property
    def target(self) -> frozenset:
        return frozenset(b for _, b in self.graph)

    def as_dict(self) -> dict[str, str]:
        return dict(self.graph)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.graph)

    def restrict(self, x: Iterable[str]) -> "ConfigBijection":
        x = frozenset(x)
        return ConfigBijection(frozenset(p for p in self.graph if p[0] in x))

    def inverse(self) -> "ConfigBijection":
        return ConfigBijection(frozenset((b, a) for a, b in self.graph))

    def then(self, other: "ConfigBijection") -> "ConfigBijection":
        """``other ∘ self``; requires ``self.target == other.source``."""
        g = other.as_dict()
        return ConfigBijection(frozenset((a, g[b]) for a, b in self.graph))

    def image_under(self, mapping: Mapping[str, str]) -> "ConfigBijection":
        """``f θ``: the bijection ``f x ≅ f y`` induced by a map ``f``."""
        return ConfigBijection(frozenset((mapping[a], mapping[b]) for a, b in self.graph))

    def extends(self, other: "ConfigBijection") -> bool:
        return other.graph <= self.graph

    def sort_key(self) -> tuple:
        return (config_key(self.source), sorted(self.graph))

    def __str__(self) -> str:
        pairs = ", ".join(f"{a}↦{b}" for a, b in sorted(self.graph))
        return "{" + pairs + "}"


@dataclass(frozen=True, eq=False)
class IsomorphismFamily:
    structure: EventStructure
    members: frozenset

    def __contains__(self, theta: ConfigBijection) -> bool:
        return theta in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IsomorphismFamily):
            return NotImplemented
        return self.structure == other.structure and self.members == other.members

    __hash__ = None  # type: ignore[assignment]

    def sorted_members(self) -> list[ConfigBijection]:
        return sorted(self.members, key=ConfigBijection.sort_key)

    def by_source(self) -> dict[frozenset, list[ConfigBijection]]:
        index: dict[frozenset, list[ConfigBijection]] = defaultdict(list)
        for theta in self.members:
            index[theta.source].append(theta)
        return index

    def non_identities(self) -> list[ConfigBijection]:
        return [t for t in self.sorted_members() if not t.is_identity()]


def identity_family(E: EventStructure) -> IsomorphismFamily:
    return IsomorphismFamily(E, frozenset(ConfigBijection.identity(x) for x in E.configurations))


def validate_iso_family(F: IsomorphismFamily) -> Report:
    """Groupoid, restriction and extension axioms.

    Restriction and extension are checked one event at a time, which implies
    them for arbitrary sub- and super-configurations by induction along a
    covering chain.
    """
    E = F.structure
    report = Report("isomorphism family")
    for axiom in ("well-formed", "identities", "inverses", "composition", "restriction", "extension"):
        report.check(axiom)
    members = F.members
    for theta in F.sorted_members():
        src, tgt = theta.source, theta.target
        if len(src) != len(theta.graph) or len(tgt) != len(theta.graph):
            report.fail("well-formed", f"{theta} is not a bijection", theta)
        elif not (E.is_configuration(src) and E.is_configuration(tgt)):
            report.fail("well-formed", f"{theta} is not between configurations", theta)
        elif any(E.polarity[a] != E.polarity[b] for a, b in theta.graph):
            report.fail("well-formed", f"{theta} does not preserve polarity", theta)
    if not report.ok:
        return report
    for x in E.configurations:
        if ConfigBijection.identity(x) not in members:
            report.fail("identities", f"identity on {show(x)} missing", x)
    index = F.by_source()
    for theta in F.sorted_members():
        if theta.inverse() not in members:
            report.fail("inverses", f"inverse of {theta} missing", theta)
        for psi in index.get(theta.target, ()):
            if theta.then(psi) not in members:
                report.fail("composition", f"composite of {theta} then {psi} missing", (theta, psi))
        src = theta.source
        for e in src:
            if not (E.successors[e] & src):
                sub = theta.restrict(src - {e})
                if sub not in members:
                    report.fail("restriction", f"restriction violated: {theta} to {show(src - {e})} missing", (theta, src - {e}))
        for x2 in E.one_event_extensions(src):
            if not any(t.restrict(src) == theta for t in index.get(x2, ())):
                report.fail("extension", f"extension violated: {theta} does not extend to {show(x2)}", (theta, x2))
    return report


def family_from_perms(E: EventStructure, perms: Iterable[Mapping[str, str]]) -> IsomorphismFamily:
    members = set()
    for perm in perms:
        for x in E.configurations:
            members.add(ConfigBijection.of(perm, x))
    return IsomorphismFamily(E, frozenset(members))


def family_from_action(a: GroupAction) -> IsomorphismFamily:
    """All restrictions of all ``act(g)`` to configurations."""
    return family_from_perms(a.target, (a.perms[g] for g in a.group.elements))


# -- thin concurrent games ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ThinConcurrentGame:
    es: EventStructure
    full: IsomorphismFamily
    pos: IsomorphismFamily
    neg: IsomorphismFamily


def groupoid_closure(E: EventStructure, seeds: Iterable[ConfigBijection]) -> frozenset:
    """Least set containing ``seeds`` closed under composition, inverse and
    restriction. A fixed point, so independent of iteration order."""
    members: set[ConfigBijection] = set()
    by_source: dict[frozenset, set] = defaultdict(set)
    by_target: dict[frozenset, set] = defaultdict(set)
    work = list(seeds)
    while work:
        theta = work.pop()
        if theta in members:
            continue
        members.add(theta)
        by_source[theta.source].add(theta)
        by_target[theta.target].add(theta)
        work.append(theta.inverse())
        for psi in list(by_source[theta.target]):
            work.append(theta.then(psi))
        for psi in list(by_target[theta.source]):
            work.append(psi.then(theta))
        src = theta.source
        for e in src:
            if not (E.successors[e] & src):
                work.append(theta.restrict(src - {e}))
    return frozenset(members)


def generated_perms(E: EventStructure, perms: Iterable[Mapping[str, str]]) -> list[dict[str, str]]:
    """Closure of a set of event permutations under composition."""
    events = E.events
    gens = {tuple(p[e] for e in events) for p in perms}
    ident = tuple(events)
    seen = {ident}
    frontier = [ident]
    pos = E.index
    while frontier:
        nxt = []
        for q in frontier:
            for g in gens:
                r = tuple(g[pos[e]] for e in q)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return [dict(zip(events, q)) for q in sorted(seen)]


def _core(E: EventStructure, theta: ConfigBijection, polarity: str) -> ConfigBijection:
    """Restriction of ``θ`` to the down-closure of its events of ``polarity``:
    the smallest restriction that ``θ`` extends by events of the other one."""
    src = theta.source
    return theta.restrict(E.down_closure(e for e in src if E.polarity[e] == polarity))


def validate_tcg(G: ThinConcurrentGame) -> Report:
    """Each family is an isomorphism family, ``pos, neg ⊆ full``, ``pos ∩ neg``
    holds identities only, and ``pos``/``neg`` absorb ``⊆+``/``⊆-``
    extensions inside ``full``.

    For the last two: ``θ ⊆+ θ'`` for some ``θ ∈ pos`` iff the negative core
    of ``θ'`` is in ``pos`` (``pos`` being restriction-closed), and dually.
    """
    E = G.es
    report = Report("thin concurrent game")
    report.absorb(validate_iso_family(G.full), "full:")
    report.absorb(validate_iso_family(G.pos), "pos:")
    report.absorb(validate_iso_family(G.neg), "neg:")
    for axiom in ("pos-in-full", "neg-in-full", "pos-neg-identities", "pos-extension", "neg-extension"):
        report.check(axiom)
    for name, fam in (("pos", G.pos), ("neg", G.neg)):
        for theta in sorted(fam.members - G.full.members, key=ConfigBijection.sort_key):
            report.fail(f"{name}-in-full", f"{theta} is in {name} but not in full", theta)
    for theta in sorted(G.pos.members & G.neg.members, key=ConfigBijection.sort_key):
        if not theta.is_identity():
            report.fail("pos-neg-identities", f"{theta} is both positive and negative", theta)
    for theta in G.full.sorted_members():
        if theta not in G.pos and _core(E, theta, NEG) in G.pos:
            report.fail("pos-extension", f"{theta} is a positive extension of a positive member but not positive", theta)
        if theta not in G.neg and _core(E, theta, POS) in G.neg:
            report.fail("neg-extension", f"{theta} is a negative extension of a negative member but not negative", theta)
    return report


def tcg_from_game(A: Game, check: bool = True) -> ThinConcurrentGame:
    """``neg``/``pos`` from the two actions, ``full`` their groupoid closure.

    With ``check``, a closure that breaks an axiom raises
    :class:`ValidationError` whose report carries the pathology witness.
    """
    neg = family_from_action(A.n_action)
    pos = family_from_action(A.p_action)
    # a composite of restrictions is a restriction of the composite, so the
    # groupoid closure is the family of the permutation group N ∪ P generates
    full = family_from_perms(A.es, generated_perms(A.es, [*A.n_action.perms.values(), *A.p_action.perms.values()]))
    G = ThinConcurrentGame(A.es, full, pos, neg)
    if check:
        report = validate_tcg(G)
        if not report.ok:
            raise ValidationError(f"pathological closure: {report.violations[0]}", report)
    return G


# -- strategies -----------------------------------------------------------------


class GeneratedFamily:
    """The family of restrictions of a permutation group, built one source
    configuration at a time.

    Equal to ``family_from_perms(structure, perms)`` but only materialises
    the sources that are asked about, which keeps large products cheap.
    """

    def __init__(self, structure: EventStructure, perms: Iterable[Mapping[str, str]]):
        self.structure = structure
        self.perms = list(perms)
        self._at: dict[frozenset, frozenset] = {}

    @classmethod
    def of(cls, F: IsomorphismFamily) -> "GeneratedFamily":
        view = cls(F.structure, ())
        for x, members in F.by_source().items():
            view._at[x] = frozenset(members)
        for x in F.structure.configurations:
            view._at.setdefault(x, frozenset())
        return view

    def at(self, x: frozenset) -> frozenset:
        if x not in self._at:
            self._at[x] = frozenset(ConfigBijection.of(p, x) for p in self.perms)
        return self._at[x]

    def __contains__(self, theta: ConfigBijection) -> bool:
        return theta in self.at(theta.source)


@dataclass(frozen=True, eq=False)
class SimStrategy:
    """A strategy with an isomorphism family on its event structure.

    Without an explicit ``tcg`` the game's full and positive families are
    read lazily from the group generated by both actions and from the
    positive action.
    """

    strategy: Strategy
    family: IsomorphismFamily
    tcg: ThinConcurrentGame | None = None

    @cached_property
    def game_full(self) -> GeneratedFamily:
        if self.tcg is not None:
            return GeneratedFamily.of(self.tcg.full)
        A = self.strategy.game
        return GeneratedFamily(A.es, generated_perms(A.es, [*A.n_action.perms.values(), *A.p_action.perms.values()]))

    @cached_property
    def game_pos(self) -> GeneratedFamily:
        if self.tcg is not None:
            return GeneratedFamily.of(self.tcg.pos)
        A = self.strategy.game
        return GeneratedFamily(A.es, A.p_action.perms.values())


def family_from_uniform(u: UniformStrategy) -> IsomorphismFamily:
    """Restrictions of every ``φ_α`` to configurations of ``σ``."""
    perms = []
    for alpha in u.game.N.elements:
        f = u.event_map(alpha)
        if f is None:
            raise ValidationError(f"φ_{alpha!r} is not realised by an event map")
        perms.append(f)
    return family_from_perms(u.strategy.internal, perms)


def check_thin(S: SimStrategy) -> Verdict:
    """``id_x ⊆+ θ`` forces ``θ`` to be an identity. Witness ``(x, θ)``."""
    E = S.strategy.internal
    for theta in S.family.non_identities():
        core = _core(E, theta, NEG)
        if core.is_identity():
            return Verdict(False, (core.source, theta))
    return Verdict(True)


def check_sim_receptivity(S: SimStrategy) -> Verdict:
    """For ``x ⊆- y, z`` and ``θ : p y ≅ p z`` in the game's full family with
    ``id_{p x} ⊆ θ``, some ``χ`` in the family has ``id_x ⊆ χ`` and
    ``p χ = θ``. Witness ``(x, y, z, θ)``."""
    s = S.strategy
    E = s.internal
    index = S.family.by_source()
    for x in s.configurations:
        px = s.image(x)
        id_px = ConfigBijection.identity(px)
        exts = E.extensions(x, NEG)
        targets = {s.image(z): z for z in exts}
        for y in exts:
            chis = index.get(y, ())
            for theta in S.game_full.at(s.image(y)):
                z = targets.get(theta.target)
                if z is None or not theta.extends(id_px):
                    continue
                if not any(
                    chi.target == z and chi.restrict(x).is_identity() and chi.image_under(s.proj) == theta
                    for chi in chis
                ):
                    return Verdict(False, (x, y, z, theta))
    return Verdict(True)


def check_symmetry_preserved(
    f: Mapping[str, str], source: IsomorphismFamily, target: IsomorphismFamily | GeneratedFamily
) -> Verdict:
    for theta in source.sorted_members():
        if theta.image_under(f) not in target:
            return Verdict(False, theta)
    return Verdict(True)


def validate_sim_strategy(S: SimStrategy) -> Report:
    report = Report("~-strategy")
    report.absorb(validate_strategy(S.strategy), "strategy:")
    report.absorb(validate_iso_family(S.family), "family:")
    for axiom in ("symmetry-preservation", "thinness", "receptivity"):
        report.check(axiom)
    ok, theta = check_symmetry_preserved(S.strategy.proj, S.family, S.game_full)
    if not ok:
        report.fail("symmetry-preservation", f"symmetry not preserved: p {theta} is not in the game family", theta)
    ok, w = check_thin(S)
    if not ok:
        report.fail("thinness", f"{w[1]} extends id on {show(w[0])} by positive events", w)
    ok, w = check_sim_receptivity(S)
    if not ok:
        report.fail("receptivity", f"no χ over {w[3]} fixing {show(w[0])}", w)
    return report


def to_sim_strategy(u: UniformStrategy) -> SimStrategy:
    verdict = is_local(u)
    if not verdict.ok:
        alpha, x = verdict.witness
        raise ValidationError(
            f"uniformity not local: {alpha!r} fixes p {show(x)} but φ_{alpha!r} moves {show(x)}"
        )
    return SimStrategy(u.strategy, family_from_uniform(u))


def check_weak_map_sim(f: EsMap | Mapping[str, str], S: SimStrategy, T: SimStrategy) -> Report:
    """``f`` preserves symmetry and each square ``p_τ f = θ p_σ`` on ``x`` is
    filled by a (unique) ``θ`` in the game's positive family."""
    mapping = f.mapping if isinstance(f, EsMap) else f
    report = Report("weak map of ~-strategies")
    for axiom in ("symmetry-preservation", "positive-witness", "uniqueness"):
        report.check(axiom)
    ok, theta = check_symmetry_preserved(mapping, S.family, T.family)
    if not ok:
        report.fail("symmetry-preservation", f"symmetry not preserved: f {theta} is not in the target family", theta)
    s, t = S.strategy, T.strategy
    for x in s.configurations:
        fx = frozenset(mapping[e] for e in x)
        wanted = ConfigBijection(frozenset((s.proj[e], t.proj[mapping[e]]) for e in x))
        hits = [th for th in S.game_pos.at(s.image(x)) if th.target == t.image(fx) and th == wanted]
        if not hits:
            report.fail("positive-witness", f"no positive θ fills the square at {show(x)}", x)
        elif len(hits) > 1:
            report.fail("uniqueness", f"internal inconsistency: {len(hits)} witnesses at {show(x)}", x)
    return report

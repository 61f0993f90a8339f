"""Uniform strategies: a strategy with ``φ : N × C(σ) -> P × C(σ)`` making
``C(σ)`` an algebra for ``N × (-)`` lifted to the Kleisli category of
``P × (-)``.

Composition convention (shared with :mod:`esgames.strategy`): responses
compose outer-left, so the multiplication law reads
``φ(α'α, x) = (γ · p₂, z)`` where ``(p₁, y) = φ(α, x)``,
``(γ, β) = λ(α', p₁)`` and ``(p₂, z) = φ(β, y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

from .es_core import config_key, enumerate_automorphisms, show
from .report import BoundExceeded, Report, Verdict
from .strategy import (
    Strategy,
    WeakMap,
    act_on_strategy,
    validate_strategy,
    validate_weak_map,
)
from .symmetry import FiniteGroup

DEFAULT_SEARCH_BOUND = 200_000


@dataclass(frozen=True, eq=False)
class UniformStrategy:
    strategy: Strategy
    phi: Mapping[tuple, tuple]

    @property
    def game(self):
        return self.strategy.game

    def __call__(self, alpha: Hashable, x: frozenset) -> tuple:
        return self.phi[alpha, x]

    def event_map(self, alpha: Hashable) -> dict[str, str] | None:
        """Rebuild ``φ_α`` on events from configuration images.

        ``φ_α(s)`` is the single event of ``φ_α[s] - φ_α[s)`` where ``[s]`` is
        the down-closure of ``s``. Returns ``None`` when that difference is not
        a single event or the result disagrees with some configuration image.
        """
        return _event_map(self, alpha)[0]

    def slice(self, alpha: Hashable) -> WeakMap:
        """``φ_α`` as a weak map ``α · σ -> σ``."""
        f = self.event_map(alpha)
        if f is None:
            raise ValueError(f"φ_{alpha!r} is not realised by an event map")
        s = self.strategy
        responses = {x: self.phi[alpha, x][0] for x in s.configurations}
        return WeakMap(act_on_strategy(alpha, s), s, f, responses)


def _event_map(u: UniformStrategy, alpha: Hashable) -> tuple[dict | None, Any]:
    sigma = u.strategy.internal
    f: dict[str, str] = {}
    for s in sigma.events:
        prime = sigma.down_closure([s])
        below = prime - {s}
        try:
            img, img_below = u.phi[alpha, prime][1], u.phi[alpha, below][1]
        except KeyError:
            return None, ("missing", s)
        diff = img - img_below
        if len(diff) != 1 or not img_below <= img:
            return None, ("ambiguous", s)
        f[s] = next(iter(diff))
    for x in u.strategy.configurations:
        if frozenset(f[e] for e in x) != u.phi[alpha, x][1]:
            return None, ("inconsistent", x)
    return f, None


def from_event_maps(
    s: Strategy,
    maps: Mapping[Hashable, Mapping[str, str]],
    responses: Mapping[Hashable, Mapping[frozenset, Hashable] | Hashable],
) -> UniformStrategy:
    """Assemble ``φ`` from an event map and responses per element.

    A response entry may be a table over configurations or a single element
    used everywhere (a global response).
    """
    P = s.game.P
    phi = {}
    for alpha in s.game.N.elements:
        f = maps[alpha]
        r = responses[alpha]
        for x in s.configurations:
            resp = r[x] if isinstance(r, Mapping) else r
            if resp not in P:
                raise ValueError(f"response {resp!r} is not an element of P")
            phi[alpha, x] = (resp, frozenset(f[e] for e in x))
    return UniformStrategy(s, phi)


def trivial_uniform(s: Strategy) -> UniformStrategy | None:
    """``φ_α = id`` with unit responses, meaningful only when N is trivial."""
    unit = s.game.P.unit
    ident = {e: e for e in s.internal.events}
    return from_event_maps(s, {a: ident for a in s.game.N.elements}, {a: unit for a in s.game.N.elements})


def validate_uniform(u: UniformStrategy, check_strategy: bool = False) -> Report:
    report = Report("uniform strategy")
    s = u.strategy
    game = s.game
    N, P = game.N, game.P
    if check_strategy:
        report.absorb(validate_strategy(s), "strategy:")
    configs = s.configurations
    config_set = set(configs)
    for axiom in ("phi-total", "event-map", "bijective", "weak-map", "unit-law", "multiplication-law"):
        report.check(axiom)
    for alpha in N.elements:
        for x in configs:
            val = u.phi.get((alpha, x))
            if not (isinstance(val, tuple) and len(val) == 2 and val[0] in P and val[1] in config_set):
                report.fail("phi-total", f"φ({alpha!r}, {show(x)}) is undefined or ill-typed", (alpha, x))
    if not report.ok:
        return report
    for alpha in N.elements:
        f, why = _event_map(u, alpha)
        if f is None:
            report.fail("event-map", f"φ_{alpha!r} is not realised by one event map ({why[0]})", (alpha, why[1]))
            continue
        if len(set(f.values())) != len(f):
            report.fail("bijective", f"φ_{alpha!r} is not a bijection on events", alpha)
        w = WeakMap(act_on_strategy(alpha, s), s, f, {x: u.phi[alpha, x][0] for x in configs})
        wr = validate_weak_map(w)
        for v in wr.violations:
            report.fail("weak-map", f"φ_{alpha!r}: {v.message}", (alpha, v.witness))
    for x in configs:
        if u.phi[N.unit, x] != (P.unit, x):
            report.fail("unit-law", f"φ(e, {show(x)}) = {u.phi[N.unit, x]!r}, expected (e, x)", x)
    law = game.law
    for a2 in N.elements:
        for a1 in N.elements:
            a21 = N.mul(a2, a1)
            for x in configs:
                p1, y = u.phi[a1, x]
                gamma, beta = law(a2, p1)
                p2, z = u.phi[beta, y]
                if u.phi[a21, x] != (P.mul(gamma, p2), z):
                    report.fail(
                        "multiplication-law",
                        f"φ({a2!r}·{a1!r}, {show(x)}) disagrees with the stepwise composite",
                        (a2, a1, x),
                    )
    return report


def validate_uniform_map(w: WeakMap, u: UniformStrategy, v: UniformStrategy) -> Report:
    """``x ↦ (w[x], w x)`` must be an algebra homomorphism from ``u`` to ``v``."""
    report = Report("map of uniform strategies")
    report.check("homomorphism")
    game = u.game
    N, P, law = game.N, game.P, game.law
    for alpha in N.elements:
        for x in u.strategy.configurations:
            r, x2 = u.phi[alpha, x]
            path_a = (P.mul(r, w.responses[x2]), w.image(x2))
            p, y = w.responses[x], w.image(x)
            p2, alpha2 = law(alpha, p)
            q, z = v.phi[alpha2, y]
            path_b = (P.mul(p2, q), z)
            if path_a != path_b:
                report.fail(
                    "homomorphism",
                    f"homomorphism square fails at ({alpha!r}, {show(x)})",
                    (alpha, x),
                )
    return report


def is_local(u: UniformStrategy) -> Verdict:
    """If ``α`` fixes ``p x`` pointwise then ``φ_α`` must fix ``x`` pointwise."""
    s = u.strategy
    game = s.game
    maps = {a: u.event_map(a) for a in game.N.elements}
    for x in s.configurations:
        px = s.image(x)
        for alpha in game.N.elements:
            perm = game.n_action.perms[alpha]
            if any(perm[e] != e for e in px):
                continue
            f = maps[alpha]
            if u.phi[alpha, x][1] != x or f is None or any(f[e] != e for e in x):
                return Verdict(False, (alpha, x))
    return Verdict(True)


# -- search -----------------------------------------------------------------


@dataclass
class SearchResult:
    uniform: UniformStrategy | None
    certificate: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.uniform is not None


def generators(G: FiniteGroup) -> list:
    """A small generating set, greedily chosen in element order."""
    gens: list = []
    closure = {G.unit}
    for g in G.elements:
        if g in closure:
            continue
        gens.append(g)
        frontier = list(closure)
        closure_new = set(closure)
        while frontier:
            nxt = []
            for h in frontier:
                for k in gens:
                    hk = G.mul(h, k)
                    if hk not in closure_new:
                        closure_new.add(hk)
                        nxt.append(hk)
            frontier = nxt
        closure = closure_new
    return gens


def _responses(s: Strategy, alpha, f: Mapping[str, str], x: frozenset) -> list:
    """Elements ``r ∈ P`` with ``α p(e) = r p(f e)`` for every ``e ∈ x``."""
    game = s.game
    pa = game.n_action.perms[alpha]
    out = []
    for r in game.P.elements:
        pr = game.p_action.perms[r]
        if all(pa[s.proj[e]] == pr[s.proj[f[e]]] for e in x):
            out.append(r)
    return out


class _Search:
    def __init__(self, s: Strategy, bound: int):
        self.s = s
        self.game = s.game
        self.N, self.P, self.law = self.game.N, self.game.P, self.game.law
        self.configs = s.configurations
        self.bound = bound
        self.nodes = 0
        gens = generators(self.N)
        rest = [a for a in self.N.elements if a not in gens and a != self.N.unit]
        self.order = gens + rest
        self.gens = gens
        auts = enumerate_automorphisms(s.internal)
        auts.sort(key=lambda m: (not m.is_identity(), [m.mapping[e] for e in s.internal.events]))
        self.autos = [dict(m.mapping) for m in auts]
        # candidate event maps per element with their response tables
        self.cands: dict[Any, list[tuple[dict, dict]]] = {}
        for alpha in self.order:
            options = []
            for f in self.autos:
                table = {}
                for x in self.configs:
                    rs = _responses(s, alpha, f, x)
                    if not rs:
                        break
                    table[x] = rs
                else:
                    options.append((f, table))
            self.cands[alpha] = options

    def factored_size(self) -> dict:
        per_element = {repr(a): len(self.cands[a]) for a in self.order}
        log10 = 0.0
        for a in self.order:
            best = 0.0
            for _, table in self.cands[a]:
                best = max(best, sum(math.log10(len(rs)) for rs in table.values()))
            if self.cands[a]:
                log10 += math.log10(len(self.cands[a])) + best
        return {"event_map_candidates": per_element, "log10_size": round(log10, 3)}

    def run(self) -> dict | None:
        if any(not self.cands[a] for a in self.order):
            return None
        rest = [a for a in self.order if a not in self.gens]
        self.plan = [("maps", self.gens), ("cells", self.gens), ("maps", rest), ("cells", self.order)]
        cells = {(self.N.unit, x): (self.P.unit, x) for x in self.configs}
        return self._solve(0, {}, cells)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.bound:
            raise BoundExceeded("uniform-structure search", self.bound, self.factored_size())

    def _solve(self, k: int, chosen: dict, cells: dict) -> dict | None:
        cells = self._propagate(chosen, cells)
        if cells is None:
            return None
        if k == len(self.plan):
            u = UniformStrategy(self.s, cells)
            return cells if validate_uniform(u).ok else None
        kind, elems = self.plan[k]
        if kind == "maps":
            return self._maps(k, elems, 0, chosen, cells)
        for alpha in elems:
            f, table = chosen[alpha]
            for x in self.configs:
                if (alpha, x) in cells:
                    continue
                y = frozenset(f[e] for e in x)
                for r in table[x]:
                    self._tick()
                    trial = dict(cells)
                    trial[alpha, x] = (r, y)
                    res = self._solve(k, chosen, trial)
                    if res is not None:
                        return res
                return None
        return self._solve(k + 1, chosen, cells)

    def _maps(self, k: int, elems: list, j: int, chosen: dict, cells: dict) -> dict | None:
        if j == len(elems):
            return self._solve(k + 1, chosen, cells)
        alpha = elems[j]
        for f, table in self.cands[alpha]:
            self._tick()
            if not self._map_agrees(alpha, f, table, cells):
                continue
            chosen2 = dict(chosen)
            chosen2[alpha] = (f, table)
            res = self._maps(k, elems, j + 1, chosen2, cells)
            if res is not None:
                return res
        return None

    def _map_agrees(self, alpha, f, table, cells) -> bool:
        for x in self.configs:
            val = cells.get((alpha, x))
            if val is None:
                continue
            r, y = val
            if y != frozenset(f[e] for e in x) or r not in table[x]:
                return False
        return True

    def _propagate(self, chosen: dict, cells: dict) -> dict | None:
        """Close ``cells`` under the multiplication law; ``None`` on conflict.

        Derived cells for elements whose event map is not chosen yet are
        kept and checked when the map is chosen.
        """
        cells = dict(cells)
        N, P, law = self.N, self.P, self.law
        changed = True
        while changed:
            changed = False
            for (a1, x), (p1, y) in list(cells.items()):
                for a2 in N.elements:
                    gamma, beta = law(a2, p1)
                    second = cells.get((beta, y))
                    if second is None:
                        continue
                    p2, z = second
                    value = (P.mul(gamma, p2), z)
                    key = (N.mul(a2, a1), x)
                    old = cells.get(key)
                    if old is None:
                        if key[0] in chosen:
                            f, table = chosen[key[0]]
                            if z != frozenset(f[e] for e in x) or value[0] not in table[x]:
                                return None
                        cells[key] = value
                        changed = True
                    elif old != value:
                        return None
        return cells


def search_uniform_structure(s: Strategy, bound: int = DEFAULT_SEARCH_BOUND) -> SearchResult:
    """Exhaustive search for ``φ`` making ``s`` uniform.

    Candidate ``φ_α`` range over automorphisms of the strategy's event
    structure (each ``φ_α`` of a uniform strategy is a bijective self-map of
    a finite event structure, hence an automorphism) admitting a response at
    every configuration. Event maps are chosen for generators of ``N`` first,
    then for the remaining elements; responses are then filled
    configuration by configuration, with the multiplication law propagated
    after every choice. The first solution in this fixed order is returned,
    so results are reproducible. ``BoundExceeded`` is raised past ``bound``
    search nodes.
    """
    search = _Search(s, bound)
    cells = search.run()
    certificate = {
        "generators": [repr(g) for g in search.gens],
        "automorphisms_of_strategy": len(search.autos),
        "factored_size": search.factored_size(),
        "nodes": search.nodes,
        "bound": bound,
    }
    if cells is None:
        empty = [repr(a) for a in search.order if not search.cands[a]]
        certificate.update(result="none", exhaustive=True, elements_without_candidates=empty)
        return SearchResult(None, certificate)
    certificate.update(result="found", exhaustive=False)
    return SearchResult(UniformStrategy(s, cells), certificate)


def phi_from_slices(slices: Mapping[Hashable, WeakMap], configs: Iterable[frozenset]) -> dict:
    """Rebuild the ``φ`` table from a family of weak maps ``α · σ -> σ``."""
    return {
        (alpha, x): (w.responses[x], w.image(x))
        for alpha, w in slices.items()
        for x in sorted(configs, key=config_key)
    }

"""Finite groups as tables, group actions on event structures, and
distributive laws ``N × P -> P × N``.

Group elements are arbitrary hashable values: strings for groups built
from generators, tuples for product and permutation groups. Multiplication
follows composition of automorphisms: ``act(mul(g, h)) = act(g) ∘ act(h)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Any, Callable, Hashable, Iterable, Mapping

from .es_core import (
    NEG,
    POS,
    EsMap,
    EventStructure,
    is_automorphism,
    show,
)
from .report import BoundExceeded, Report, ValidationError

Element = Hashable

DEFAULT_MAX_GROUP = 10_000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    elements: tuple
    table: Mapping[tuple, Element]
    unit: Element
    inverses: Mapping[Element, Element]
    name: str = ""

    def mul(self, g: Element, h: Element) -> Element:
        return self.table[g, h]

    def inv(self, g: Element) -> Element:
        return self.inverses[g]

    def product(self, *gs: Element) -> Element:
        out = self.unit
        for g in gs:
            out = self.table[out, g]
        return out

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.inverses

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.unit == other.unit
            and dict(self.table) == dict(other.table)
        )

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @classmethod
    def from_function(
        cls, elements: Iterable[Element], mul: Callable[[Element, Element], Element], name: str = ""
    ) -> "FiniteGroup":
        """Tabulate ``mul`` and locate the unit and inverses by table scan."""
        elements = tuple(elements)
        members = set(elements)
        table = {}
        for g in elements:
            for h in elements:
                gh = mul(g, h)
                if gh not in members:
                    raise ValidationError(f"{name or 'group'}: product of {g!r} and {h!r} leaves the set")
                table[g, h] = gh
        unit = next(
            (u for u in elements if all(table[u, g] == g == table[g, u] for g in elements)), None
        )
        if unit is None:
            raise ValidationError(f"{name or 'group'}: no unit element")
        inverses = {}
        for g in elements:
            h = next((h for h in elements if table[g, h] == unit == table[h, g]), None)
            if h is None:
                raise ValidationError(f"{name or 'group'}: {g!r} has no inverse")
            inverses[g] = h
        return cls(elements, table, unit, inverses, name)


def validate_group(G: FiniteGroup) -> Report:
    report = Report(f"group {G.name}".strip())
    for axiom in ("closure", "associativity", "unit", "inverse"):
        report.check(axiom)
    members = set(G.elements)
    if G.unit not in members:
        report.fail("unit", f"unit {G.unit!r} is not an element")
        return report
    for g in G.elements:
        for h in G.elements:
            if G.table.get((g, h)) not in members:
                report.fail("closure", f"mul({g!r}, {h!r}) is undefined or not an element", (g, h))
    if not report.ok:
        return report
    for g in G.elements:
        if G.table[G.unit, g] != g or G.table[g, G.unit] != g:
            report.fail("unit", f"unit law fails at {g!r}", g)
        h = G.inverses.get(g)
        if h not in members or G.table[g, h] != G.unit or G.table[h, g] != G.unit:
            report.fail("inverse", f"inverse law fails at {g!r}", g)
    for g, h, k in product(G.elements, repeat=3):
        if G.table[G.table[g, h], k] != G.table[g, G.table[h, k]]:
            report.fail("associativity", f"associativity fails at ({g!r}, {h!r}, {k!r})", (g, h, k))
            break
    return report


def trivial_group(unit: Element = "e") -> FiniteGroup:
    return FiniteGroup((unit,), {(unit, unit): unit}, unit, {unit: unit}, "1")


def product_group(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    elements = tuple(product(G.elements, H.elements))
    table = {
        (a, b): (G.table[a[0], b[0]], H.table[a[1], b[1]]) for a in elements for b in elements
    }
    inverses = {a: (G.inverses[a[0]], H.inverses[a[1]]) for a in elements}
    return FiniteGroup(elements, table, (G.unit, H.unit), inverses, f"{G.name}×{H.name}")


def power_group(G: FiniteGroup, n: int) -> FiniteGroup:
    """Direct product of ``n`` copies; elements are ``n``-tuples."""
    elements = tuple(product(G.elements, repeat=n))
    table = {
        (a, b): tuple(G.table[a[i], b[i]] for i in range(n)) for a in elements for b in elements
    }
    inverses = {a: tuple(G.inverses[c] for c in a) for a in elements}
    return FiniteGroup(elements, table, tuple([G.unit] * n), inverses, f"{G.name}^{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``range(n)`` as tuples ``p`` with ``p[i]`` the image of ``i``."""
    elements = tuple(permutations(range(n)))
    table = {(p, q): tuple(p[q[i]] for i in range(n)) for p in elements for q in elements}
    inverses = {}
    for p in elements:
        inv = [0] * n
        for i, j in enumerate(p):
            inv[j] = i
        inverses[p] = tuple(inv)
    return FiniteGroup(elements, table, tuple(range(n)), inverses, f"S{n}")


def is_homomorphism(f: Mapping[Element, Element], G: FiniteGroup, H: FiniteGroup) -> tuple | None:
    """Return a witness pair ``(g, h)`` where ``f`` fails to be a homomorphism, else ``None``."""
    for g in G.elements:
        if f.get(g) not in H:
            return (g,)
    for g in G.elements:
        for h in G.elements:
            if f[G.mul(g, h)] != H.mul(f[g], f[h]):
                return (g, h)
    return None


# -- actions -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupAction:
    group: FiniteGroup
    target: EventStructure
    perms: Mapping[Element, Mapping[str, str]]

    def act(self, g: Element) -> EsMap:
        return EsMap(self.target, self.target, self.perms[g])

    def apply(self, g: Element, e: str) -> str:
        return self.perms[g][e]

    def image(self, g: Element, x: Iterable[str]) -> frozenset:
        p = self.perms[g]
        return frozenset(p[e] for e in x)

    def signature(self, g: Element) -> tuple:
        p = self.perms[g]
        return tuple(p[e] for e in self.target.events)

    def is_faithful(self) -> bool:
        sigs = {self.signature(g) for g in self.group.elements}
        return len(sigs) == self.group.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAction):
            return NotImplemented
        return (
            self.group == other.group
            and self.target == other.target
            and {g: dict(p) for g, p in self.perms.items()} == {g: dict(p) for g, p in other.perms.items()}
        )

    __hash__ = object.__hash__


def trivial_action(E: EventStructure, group: FiniteGroup | None = None) -> GroupAction:
    group = group or trivial_group()
    ident = {e: e for e in E.events}
    return GroupAction(group, E, {g: ident for g in group.elements})


def validate_action(a: GroupAction) -> Report:
    report = Report("group action")
    report.absorb(validate_group(a.group), "group:")
    for axiom in ("total", "automorphism", "unit", "composition"):
        report.check(axiom)
    E = a.target
    for g in a.group.elements:
        if g not in a.perms:
            report.fail("total", f"no automorphism given for {g!r}", g)
    if not report.ok:
        return report
    for g in a.group.elements:
        perm = a.perms[g]
        # an order- and conflict-preserving bijection is in particular a map
        if not is_automorphism(E, perm):
            report.fail("automorphism", f"{g!r} does not act by an automorphism", g)
    if not report.ok:
        return report
    if any(a.perms[a.group.unit][e] != e for e in E.events):
        report.fail("unit", "the unit does not act as the identity", a.group.unit)
    for g in a.group.elements:
        for h in a.group.elements:
            gh = a.perms[a.group.mul(g, h)]
            pg, ph = a.perms[g], a.perms[h]
            if any(gh[e] != pg[ph[e]] for e in E.events):
                report.fail("composition", f"act({g!r}·{h!r}) differs from act({g!r})∘act({h!r})", (g, h))
    return report


def group_from_generators(
    E: EventStructure,
    gens: Mapping[str, EsMap | Mapping[str, str]] | Iterable[EsMap | Mapping[str, str]],
    bound: int = DEFAULT_MAX_GROUP,
    separator: str = "·",
) -> tuple[FiniteGroup, GroupAction]:
    """Close a set of automorphisms of ``E`` under composition.

    Each element is named by the shortlex-least word in the generators
    producing it (``"e"`` for the identity); generators without given names
    are called ``g0``, ``g1``, ... The returned action is faithful.
    """
    if isinstance(gens, Mapping):
        named = list(gens.items())
    else:
        named = [(f"g{i}", g) for i, g in enumerate(gens)]
    gen_perms = []
    for name, g in named:
        perm = dict(g.mapping) if isinstance(g, EsMap) else dict(g)
        if not is_automorphism(E, perm):
            raise ValidationError(f"generator {name} is not an automorphism of the event structure")
        gen_perms.append((name, perm))
    events = E.events

    def sig(p: Mapping[str, str]) -> tuple:
        return tuple(p[e] for e in events)

    ident = {e: e for e in events}
    names = {sig(ident): "e"}
    perms = {"e": ident}
    layer = [("e", ident)]
    while layer:
        nxt = []
        for word, p in layer:
            for gname, gp in gen_perms:
                q = {e: p[gp[e]] for e in events}
                s = sig(q)
                if s in names:
                    continue
                new = gname if word == "e" else f"{word}{separator}{gname}"
                names[s] = new
                perms[new] = q
                nxt.append((new, q))
                if len(names) > bound:
                    raise BoundExceeded("group closure", bound, f">{bound}")
        layer = nxt
    elements = tuple(perms)
    table = {}
    for g in elements:
        for h in elements:
            pg, ph = perms[g], perms[h]
            table[g, h] = names[tuple(pg[ph[e]] for e in events)]
    inverses = {}
    for g in elements:
        pg = perms[g]
        inv = {v: k for k, v in pg.items()}
        inverses[g] = names[sig(inv)]
    group = FiniteGroup(elements, table, "e", inverses, "<" + ",".join(n for n, _ in named) + ">")
    return group, GroupAction(group, E, perms)


# -- polarity of automorphisms --------------------------------------------


@dataclass(frozen=True)
class AutomorphismClass:
    negative: bool
    positive: bool
    negative_witness: Any = None
    positive_witness: Any = None


def classify_automorphism(E: EventStructure, theta: EsMap | Mapping[str, str]) -> AutomorphismClass:
    """Negative: fixing ``x`` pointwise forces fixing every ``x ⊆+ y``.
    Positive: the same for ``x ⊆- y``.

    A counterexample for each flag is returned as ``(x, e)`` where ``e`` is an
    event enabled at ``x`` that ``theta`` moves. One-event extensions suffice
    because every extension is reached one event at a time.
    """
    perm = theta.mapping if isinstance(theta, EsMap) else theta
    if not is_automorphism(E, perm):
        raise ValidationError("classify_automorphism expects an automorphism")
    witness = {NEG: None, POS: None}
    fixed = frozenset(e for e in E.events if perm[e] == e)
    moved = [e for e in E.events if perm[e] != e]
    for x in E.configurations:
        if not x <= fixed:
            continue
        for e in moved:
            if E.predecessors[e] <= x and not E.conflicts[e] & x:
                # a moved positive extension breaks negativity and vice versa
                flag = NEG if E.polarity[e] == POS else POS
                if witness[flag] is None:
                    witness[flag] = (x, e)
        if witness[NEG] is not None and witness[POS] is not None:
            break
    return AutomorphismClass(witness[NEG] is None, witness[POS] is None, witness[NEG], witness[POS])


def validate_action_polarity(a: GroupAction, required: str) -> Report:
    kind = "negative" if required == NEG else "positive"
    report = Report(f"{kind} action")
    report.check(f"{kind}-automorphisms")
    for g in a.group.elements:
        cls = classify_automorphism(a.target, a.perms[g])
        ok = cls.negative if required == NEG else cls.positive
        if not ok:
            x, e = cls.negative_witness if required == NEG else cls.positive_witness
            report.fail(
                f"{kind}-automorphisms",
                f"{kind} action contains non-{kind} automorphism {g!r}: fixes {show(x)} but moves {e}",
                (g, x, e),
            )
    return report


# -- distributive laws ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DistributiveLaw:
    n_group: FiniteGroup
    p_group: FiniteGroup
    table: Mapping[tuple, tuple]

    def __call__(self, alpha: Element, beta: Element) -> tuple:
        return self.table[alpha, beta]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DistributiveLaw):
            return NotImplemented
        return (
            self.n_group == other.n_group
            and self.p_group == other.p_group
            and dict(self.table) == dict(other.table)
        )

    __hash__ = object.__hash__


def commuting_law(N: FiniteGroup, P: FiniteGroup) -> DistributiveLaw:
    """``λ(α, β) = (β, α)``, the law for actions that commute."""
    return DistributiveLaw(N, P, {(a, b): (b, a) for a in N.elements for b in P.elements})


def validate_distributive_law(law: DistributiveLaw) -> Report:
    N, P = law.n_group, law.p_group
    report = Report("distributive law")
    for axiom in ("total", "unit-N", "unit-P", "multiplication-N", "multiplication-P"):
        report.check(axiom)
    for a in N.elements:
        for b in P.elements:
            val = law.table.get((a, b))
            if not (isinstance(val, tuple) and len(val) == 2 and val[0] in P and val[1] in N):
                report.fail("total", f"λ({a!r}, {b!r}) is undefined or out of range", (a, b))
    if not report.ok:
        return report
    for b in P.elements:
        if law(N.unit, b) != (b, N.unit):
            report.fail("unit-N", f"unit law violated: λ(e, {b!r}) = {law(N.unit, b)!r}", b)
    for a in N.elements:
        if law(a, P.unit) != (P.unit, a):
            report.fail("unit-P", f"unit law violated: λ({a!r}, e) = {law(a, P.unit)!r}", a)
    for a2 in N.elements:
        for a1 in N.elements:
            for b in P.elements:
                b1, a1p = law(a1, b)
                b2, a2p = law(a2, b1)
                if law(N.mul(a2, a1), b) != (b2, N.mul(a2p, a1p)):
                    report.fail(
                        "multiplication-N",
                        f"λ(m({a2!r},{a1!r}), {b!r}) disagrees with stepwise application",
                        (a2, a1, b),
                    )
    for a in N.elements:
        for b1 in P.elements:
            for b2 in P.elements:
                b1p, a1 = law(a, b1)
                b2p, a2 = law(a1, b2)
                if law(a, P.mul(b1, b2)) != (P.mul(b1p, b2p), a2):
                    report.fail(
                        "multiplication-P",
                        f"λ({a!r}, m({b1!r},{b2!r})) disagrees with stepwise application",
                        (a, b1, b2),
                    )
    return report


def derive_law_from_factorization(n_action: GroupAction, p_action: GroupAction) -> DistributiveLaw:
    """Read ``λ(α, β) = (β', α')`` off the unique factorisation ``αβ = β'α'``."""
    if n_action.target != p_action.target:
        raise ValidationError("actions act on different event structures")
    if not n_action.is_faithful() or not p_action.is_faithful():
        raise ValidationError("derive_law_from_factorization needs faithful actions")
    N, P = n_action.group, p_action.group
    events = n_action.target.events
    n_sigs = {n_action.signature(a): a for a in N.elements}
    for b in P.elements:
        if b != P.unit and p_action.signature(b) in n_sigs:
            raise ValidationError(f"non-trivial intersection: {b!r} lies in both groups")
    factor: dict[tuple, tuple] = {}
    for b in P.elements:
        pb = p_action.perms[b]
        for a in N.elements:
            pa = n_action.perms[a]
            factor[tuple(pb[pa[e]] for e in events)] = (b, a)
    table = {}
    for a in N.elements:
        pa = n_action.perms[a]
        for b in P.elements:
            pb = p_action.perms[b]
            key = tuple(pa[pb[e]] for e in events)
            if key not in factor:
                raise ValidationError(f"not permuting subgroups: no factorisation of {a!r}·{b!r}")
            table[a, b] = factor[key]
    return DistributiveLaw(N, P, table)


def isw(law: DistributiveLaw) -> Callable[[Element, Element], tuple]:
    """Invert-and-swap ``P × N -> N × P``: ``(β, α) ↦ (α⁻¹, β⁻¹)``."""
    N, P = law.n_group, law.p_group

    def swap(beta: Element, alpha: Element) -> tuple:
        return (N.inv(alpha), P.inv(beta))

    return swap

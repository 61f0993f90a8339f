"""Finite event structures with polarity, configurations and maps.

Events are strings. Causality is kept as the full strict order (pairs
``(a, b)`` meaning ``a < b``) and conflict as a symmetric set of pairs.
Configurations are ``frozenset`` objects of event ids.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx

from .report import BoundExceeded, Report, ValidationError

POS = "+"
NEG = "-"
POLARITIES = (POS, NEG)

DEFAULT_MAX_CONFIGS = 2**16

Configuration = frozenset


def max_configurations() -> int:
    """Configuration guard; ``ESGAMES_MAX_CONFIGS`` overrides the default."""
    raw = os.environ.get("ESGAMES_MAX_CONFIGS")
    return int(raw) if raw else DEFAULT_MAX_CONFIGS


def flip(polarity: str) -> str:
    return NEG if polarity == POS else POS


def tag(index: int, event: str) -> str:
    """Name of ``event`` inside component ``index`` of a parallel composition."""
    return f"{index}.{event}"


def untag(event: str) -> tuple[int, str]:
    head, _, rest = event.partition(".")
    return int(head), rest


def config_key(x: Iterable[str]) -> tuple:
    """Deterministic sort key for configurations: size, then sorted ids."""
    items = sorted(x)
    return (len(items), items)


def show(x: Iterable[str]) -> str:
    return "{" + ",".join(sorted(x)) + "}"


@dataclass(frozen=True)
class EventStructure:
    events: tuple[str, ...]
    polarity: Mapping[str, str]
    order: frozenset = frozenset()
    conflict: frozenset = frozenset()
    labels: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __hash__(self) -> int:
        return hash((self.events, self.order, self.conflict))

    @classmethod
    def build(
        cls,
        events: Iterable[tuple[str, str]] | Mapping[str, str],
        covers: Iterable[tuple[str, str]] = (),
        conflict: Iterable[tuple[str, str]] = (),
        labels: Mapping[str, str] | None = None,
    ) -> "EventStructure":
        """Build from ``(id, polarity)`` pairs, cover edges and conflict pairs.

        The order is the transitive closure of ``covers``; a cycle raises
        ``ValidationError``. Conflict is symmetrised but not made hereditary.
        """
        items = list(events.items()) if isinstance(events, Mapping) else list(events)
        ids = tuple(e for e, _ in items)
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate event identifiers")
        polarity = dict(items)
        for e, p in items:
            if p not in POLARITIES:
                raise ValidationError(f"event {e!r} has polarity {p!r}, expected '+' or '-'")
        graph = nx.DiGraph()
        graph.add_nodes_from(ids)
        for a, b in covers:
            if a not in polarity or b not in polarity:
                raise ValidationError(f"cover ({a}, {b}) mentions an unknown event")
            graph.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise ValidationError(f"causality has a cycle: {cycle}")
        closure = nx.transitive_closure_dag(graph)
        order = frozenset(closure.edges())
        sym = set()
        for a, b in conflict:
            if a not in polarity or b not in polarity:
                raise ValidationError(f"conflict ({a}, {b}) mentions an unknown event")
            sym.add((a, b))
            sym.add((b, a))
        return cls(ids, polarity, order, frozenset(sym), dict(labels or {}))

    # -- derived structure ---------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.events)}

    @cached_property
    def predecessors(self) -> dict[str, frozenset]:
        preds: dict[str, set] = {e: set() for e in self.events}
        for a, b in self.order:
            preds[b].add(a)
        return {e: frozenset(p) for e, p in preds.items()}

    @cached_property
    def successors(self) -> dict[str, frozenset]:
        succ: dict[str, set] = {e: set() for e in self.events}
        for a, b in self.order:
            succ[a].add(b)
        return {e: frozenset(s) for e, s in succ.items()}

    @cached_property
    def conflicts(self) -> dict[str, frozenset]:
        con: dict[str, set] = {e: set() for e in self.events}
        for a, b in self.conflict:
            con[a].add(b)
        return {e: frozenset(c) for e, c in con.items()}

    @cached_property
    def covers(self) -> list[tuple[str, str]]:
        """Immediate causality, sorted by event position."""
        out = []
        for a, b in self.order:
            if not any((a, c) in self.order and (c, b) in self.order for c in self.events):
                out.append((a, b))
        return sorted(out, key=lambda ab: (self.index[ab[0]], self.index[ab[1]]))

    def leq(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.order

    def minimal_events(self) -> list[str]:
        return [e for e in self.events if not self.predecessors[e]]

    def events_of(self, polarity: str) -> list[str]:
        return [e for e in self.events if self.polarity[e] == polarity]

    def label(self, e: str) -> str:
        return self.labels.get(e, e)

    def is_configuration(self, x: Iterable[str]) -> bool:
        x = frozenset(x)
        for e in x:
            if e not in self.polarity:
                return False
            if not self.predecessors[e] <= x:
                return False
            if self.conflicts[e] & x:
                return False
        return True

    def down_closure(self, xs: Iterable[str]) -> frozenset:
        out = set()
        for e in xs:
            out.add(e)
            out |= self.predecessors[e]
        return frozenset(out)

    @cached_property
    def configurations(self) -> list[frozenset]:
        return enumerate_configurations(self)

    def extensions(self, x: frozenset, polarity: str | None = None) -> list[frozenset]:
        """Configurations ``y ⊇ x`` whose new events all have ``polarity``.

        ``polarity=None`` allows any event. ``x`` itself is included.
        """
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for e in self.events:
                if e in y:
                    continue
                if polarity is not None and self.polarity[e] != polarity:
                    continue
                if self.predecessors[e] <= y and not (self.conflicts[e] & y):
                    z = y | {e}
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
        return sorted(seen, key=config_key)

    def one_event_extensions(self, x: frozenset) -> list[frozenset]:
        """Configurations ``x ∪ {e}`` for events ``e`` enabled at ``x``."""
        return [
            x | {e}
            for e in self.events
            if e not in x and self.predecessors[e] <= x and not (self.conflicts[e] & x)
        ]

    def restrictions(self, x: frozenset, polarity: str | None = None) -> list[frozenset]:
        """Configurations ``z ⊆ x`` such that every event of ``x - z`` has ``polarity``."""
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for e in y:
                if polarity is not None and self.polarity[e] != polarity:
                    continue
                if not (self.successors[e] & y):
                    z = y - {e}
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
        return sorted(seen, key=config_key)


def empty_es() -> EventStructure:
    return EventStructure((), {})


def dual_es(E: EventStructure) -> EventStructure:
    """Same events and relations, polarity reversed."""
    pol = {e: flip(p) for e, p in E.polarity.items()}
    labels = {e: _flip_label(E.labels[e]) for e in E.labels}
    return EventStructure(E.events, pol, E.order, E.conflict, labels)


def _flip_label(label: str) -> str:
    table = str.maketrans({"⊖": "⊕", "⊕": "⊖"})
    return label.translate(table)


def validate_event_structure(E: EventStructure) -> Report:
    report = Report("event structure")
    for axiom in ("polarity", "order-irreflexive", "order-transitive", "conflict-irreflexive",
                  "conflict-symmetric", "conflict-hereditary"):
        report.check(axiom)
    events = set(E.events)
    if len(events) != len(E.events):
        report.fail("polarity", "duplicate event identifiers")
    for e in E.events:
        if E.polarity.get(e) not in POLARITIES:
            report.fail("polarity", f"event {e} has no valid polarity", e)
    for a, b in sorted(E.order):
        if a not in events or b not in events:
            report.fail("order-irreflexive", f"order pair ({a},{b}) mentions unknown event", (a, b))
        if a == b:
            report.fail("order-irreflexive", f"order is reflexive at {a}", a)
    for a, b in sorted(E.order):
        for c in sorted(E.successors.get(b, ())):
            if (a, c) not in E.order:
                report.fail("order-transitive", f"transitivity violated at ({a},{b},{c})", (a, b, c))
    for a, b in sorted(E.conflict):
        if a == b:
            report.fail("conflict-irreflexive", f"conflict is reflexive at {a}", a)
        if (b, a) not in E.conflict:
            report.fail("conflict-symmetric", f"conflict not symmetric at ({a},{b})", (a, b))
    if report.ok:
        for a, b in sorted(E.conflict, key=lambda ab: (E.index[ab[0]], E.index[ab[1]])):
            for a2 in sorted(E.successors[a], key=E.index.__getitem__):
                if (a2, b) not in E.conflict:
                    report.fail("conflict-hereditary", f"heredity violated at ({a2},{b})", (a2, b))
    return report


def _topological(E: EventStructure) -> list[str]:
    return sorted(E.events, key=lambda e: (len(E.predecessors[e]), E.index[e]))


def enumerate_configurations(E: EventStructure, bound: int | None = None) -> list[frozenset]:
    """All down-closed conflict-free subsets, in canonical order.

    Raises ``BoundExceeded`` past ``bound`` configurations (default from
    :func:`max_configurations`).
    """
    report = validate_event_structure(E)
    report.raise_if_failed("cannot enumerate configurations of an invalid event structure")
    bound = max_configurations() if bound is None else bound
    order = _topological(E)
    pos = {e: i for i, e in enumerate(order)}
    pred_mask = [sum(1 << pos[p] for p in E.predecessors[e]) for e in order]
    con_mask = [sum(1 << pos[c] for c in E.conflicts[e]) for e in order]
    n = len(order)
    found: list[int] = []
    stack = [(0, 0)]
    while stack:
        i, mask = stack.pop()
        if i == n:
            found.append(mask)
            if len(found) > bound:
                raise BoundExceeded("number of configurations", bound, f">{bound}")
            continue
        stack.append((i + 1, mask))
        if pred_mask[i] & ~mask == 0 and con_mask[i] & mask == 0:
            stack.append((i + 1, mask | (1 << i)))
    configs = [frozenset(order[i] for i in range(n) if m >> i & 1) for m in found]
    return sorted(configs, key=config_key)


class ExtensionKind(enum.Enum):
    EMPTY = "empty extension"
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"
    NONE = "not-an-extension"

    @property
    def is_positive(self) -> bool:
        return self in (ExtensionKind.EMPTY, ExtensionKind.POSITIVE)

    @property
    def is_negative(self) -> bool:
        return self in (ExtensionKind.EMPTY, ExtensionKind.NEGATIVE)


def extension_kind(E: EventStructure, x: Iterable[str], y: Iterable[str]) -> ExtensionKind:
    x, y = frozenset(x), frozenset(y)
    if not x <= y:
        return ExtensionKind.NONE
    pols = {E.polarity[e] for e in y - x}
    if not pols:
        return ExtensionKind.EMPTY
    if pols == {POS}:
        return ExtensionKind.POSITIVE
    if pols == {NEG}:
        return ExtensionKind.NEGATIVE
    return ExtensionKind.MIXED


@dataclass(frozen=True)
class EsMap:
    source: EventStructure
    target: EventStructure
    mapping: Mapping[str, str]

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.mapping.items())))

    def __call__(self, e: str) -> str:
        return self.mapping[e]

    def image(self, x: Iterable[str]) -> frozenset:
        return frozenset(self.mapping[e] for e in x)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping.items())


def identity_map(E: EventStructure) -> EsMap:
    return EsMap(E, E, {e: e for e in E.events})


def compose(g: EsMap, f: EsMap) -> EsMap:
    """``g ∘ f``: apply ``f`` first."""
    return EsMap(f.source, g.target, {e: g.mapping[f.mapping[e]] for e in f.source.events})


def inverse(f: EsMap) -> EsMap:
    inv = {b: a for a, b in f.mapping.items()}
    return EsMap(f.target, f.source, inv)


def validate_map(f: EsMap) -> Report:
    """Totality, polarity, and for every configuration: image is a
    configuration and the map is injective on it."""
    report = Report("map of event structures")
    for axiom in ("total", "polarity", "configuration-image", "local-injectivity"):
        report.check(axiom)
    src, tgt = f.source, f.target
    missing = [e for e in src.events if e not in f.mapping]
    if missing or any(f.mapping[e] not in tgt.polarity for e in src.events if e in f.mapping):
        report.fail("total", "mapping is not a total function into the target", missing)
        return report
    for e in src.events:
        if src.polarity[e] != tgt.polarity[f.mapping[e]]:
            report.fail("polarity", f"polarity violated at {e} -> {f.mapping[e]}", e)
    for x in src.configurations:
        fx = f.image(x)
        if len(fx) != len(x):
            report.fail("local-injectivity", f"local injectivity violated on configuration {show(x)}", x)
        elif not tgt.is_configuration(fx):
            report.fail("configuration-image", f"image of {show(x)} is not a configuration", x)
    return report


def restrict_map(f: EsMap, x: Iterable[str]) -> dict[str, str]:
    """The bijection ``x -> f x`` given by ``f``."""
    x = frozenset(x)
    if not f.source.is_configuration(x):
        raise ValidationError(f"{show(x)} is not a configuration of the source")
    graph = {e: f.mapping[e] for e in x}
    if len(set(graph.values())) != len(graph):
        raise ValidationError(f"map is not injective on {show(x)}")
    return graph


def parallel_many(components: list[EventStructure]) -> EventStructure:
    """Tagged disjoint union; component ``i`` contributes events ``i.e``."""
    events, pol, order, conflict, labels = [], {}, set(), set(), {}
    for i, E in enumerate(components):
        for e in E.events:
            t = tag(i, e)
            events.append(t)
            pol[t] = E.polarity[e]
            if e in E.labels:
                labels[t] = E.labels[e]
        order |= {(tag(i, a), tag(i, b)) for a, b in E.order}
        conflict |= {(tag(i, a), tag(i, b)) for a, b in E.conflict}
    return EventStructure(tuple(events), pol, frozenset(order), frozenset(conflict), labels)


def parallel_es(A: EventStructure, B: EventStructure) -> EventStructure:
    return parallel_many([A, B])


def is_automorphism(E: EventStructure, mapping: Mapping[str, str]) -> bool:
    if set(mapping) != set(E.events) or set(mapping.values()) != set(E.events):
        return False
    if any(E.polarity[e] != E.polarity[mapping[e]] for e in E.events):
        return False
    order = {(mapping[a], mapping[b]) for a, b in E.order}
    conflict = {(mapping[a], mapping[b]) for a, b in E.conflict}
    return order == set(E.order) and conflict == set(E.conflict)


def enumerate_automorphisms(E: EventStructure) -> list[EsMap]:
    """All polarity-, order- and conflict-preserving bijections, by backtracking."""
    events = list(E.events)
    n = len(events)
    results: list[EsMap] = []
    assign: dict[str, str] = {}
    used: set[str] = set()

    def signature(e: str) -> tuple:
        return (E.polarity[e], len(E.predecessors[e]), len(E.successors[e]), len(E.conflicts[e]))

    sig = {e: signature(e) for e in events}

    def consistent(e: str, img: str) -> bool:
        for d, di in assign.items():
            if ((d, e) in E.order) != ((di, img) in E.order):
                return False
            if ((e, d) in E.order) != ((img, di) in E.order):
                return False
            if ((d, e) in E.conflict) != ((di, img) in E.conflict):
                return False
        return True

    def extend(i: int) -> None:
        if i == n:
            results.append(EsMap(E, E, dict(assign)))
            return
        e = events[i]
        for img in events:
            if img in used or sig[img] != sig[e] or not consistent(e, img):
                continue
            assign[e] = img
            used.add(img)
            extend(i + 1)
            del assign[e]
            used.discard(img)

    extend(0)
    return results



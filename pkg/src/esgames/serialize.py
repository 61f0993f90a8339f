"""JSON document bundles.

A bundle is ``{"schema_version": 1, "documents": {name: document}}``. Every
document has a ``kind``; fields that point at other documents hold either a
name in the same bundle or an inline document. Group elements are written as
JSON values, with tuples as lists; on reading, lists become tuples again.
Output field order is fixed so files diff cleanly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Hashable, Mapping

from .copycat import LiftWitness
from .es_core import EventStructure
from .game import Game
from .report import EsGamesError, ValidationError
from .strategy import Strategy, WeakMap
from .symmetry import DistributiveLaw, FiniteGroup, GroupAction
from .tcg import ConfigBijection, IsomorphismFamily
from .uniform import UniformStrategy

SCHEMA_VERSION = 1

KINDS = (
    "event-structure",
    "group",
    "action",
    "law",
    "game",
    "strategy",
    "weak-map",
    "uniform-strategy",
    "lift-witness",
    "family",
)


class DocumentError(EsGamesError):
    """Malformed document, unknown kind or unresolved reference."""


def to_json_value(g: Hashable) -> Any:
    if isinstance(g, tuple):
        return [to_json_value(v) for v in g]
    return g


def from_json_value(v: Any) -> Hashable:
    if isinstance(v, list):
        return tuple(from_json_value(x) for x in v)
    if isinstance(v, dict):
        raise DocumentError(f"group elements cannot be objects: {v!r}")
    return v


def _config(E: EventStructure, x) -> list[str]:
    return sorted(x, key=lambda e: E.index.get(e, len(E.events)))


# -- encoding -----------------------------------------------------------------

# types compared by value when sharing sub-documents
_SHARED = (EventStructure, FiniteGroup, GroupAction, DistributiveLaw, Game)


class Encoder:
    """Collects documents, sharing equal sub-objects under one name."""

    def __init__(self):
        self.documents: dict[str, dict] = {}
        self._seen: list[tuple[Any, str]] = []

    def _lookup(self, obj: Any) -> str | None:
        for other, name in self._seen:
            if other is obj:
                return name
        for other, name in self._seen:
            if type(other) is type(obj) and isinstance(obj, _SHARED) and other == obj:
                if not isinstance(obj, EventStructure) or dict(obj.labels) == dict(other.labels):
                    return name
        return None

    def _fresh(self, hint: str) -> str:
        name, i = hint, 2
        while name in self.documents:
            name, i = f"{hint}-{i}", i + 1
        return name

    def add(self, obj: Any, name: str, expect_fail: list[str] | None = None) -> str:
        found = self._lookup(obj)
        if found is not None and not expect_fail:
            return found
        name = self._fresh(name)
        self._seen.append((obj, name))
        doc = self._encode(obj, name)
        if expect_fail:
            doc["expect_fail"] = list(expect_fail)
        self.documents[name] = doc
        return name

    def bundle(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "documents": self.documents}

    def _encode(self, obj: Any, name: str) -> dict:
        if isinstance(obj, EventStructure):
            return encode_event_structure(obj)
        if isinstance(obj, FiniteGroup):
            return encode_group(obj)
        if isinstance(obj, GroupAction):
            return {
                "kind": "action",
                "group": self.add(obj.group, f"{name}.group"),
                "structure": self.add(obj.target, f"{name}.es"),
                "perms": [
                    [to_json_value(g), {e: obj.perms[g][e] for e in obj.target.events}]
                    for g in obj.group.elements
                ],
            }
        if isinstance(obj, DistributiveLaw):
            return {
                "kind": "law",
                "n_group": self.add(obj.n_group, f"{name}.N"),
                "p_group": self.add(obj.p_group, f"{name}.P"),
                "table": [
                    [to_json_value(a), to_json_value(b), *map(to_json_value, obj.table[a, b])]
                    for a in obj.n_group.elements
                    for b in obj.p_group.elements
                    if (a, b) in obj.table
                ],
            }
        if isinstance(obj, Game):
            return {
                "kind": "game",
                "structure": self.add(obj.es, f"{name}.es"),
                "n_action": self.add(obj.n_action, f"{name}.N"),
                "p_action": self.add(obj.p_action, f"{name}.P"),
                "law": self.add(obj.law, f"{name}.law"),
            }
        if isinstance(obj, Strategy):
            return {
                "kind": "strategy",
                "internal": self.add(obj.internal, f"{name}.es"),
                "game": self.add(obj.game, f"{name}.game"),
                "projection": {e: obj.proj[e] for e in obj.internal.events},
            }
        if isinstance(obj, WeakMap):
            E = obj.source.internal
            return {
                "kind": "weak-map",
                "source": self.add(obj.source, f"{name}.source"),
                "target": self.add(obj.target, f"{name}.target"),
                "map": {e: obj.f[e] for e in E.events},
                "responses": [
                    [_config(E, x), to_json_value(obj.responses[x])] for x in E.configurations if x in obj.responses
                ],
            }
        if isinstance(obj, UniformStrategy):
            return self._encode_uniform(obj, name)
        if isinstance(obj, LiftWitness):
            return {
                "kind": "lift-witness",
                "source": self.add(obj.source, f"{name}.source"),
                "target": self.add(obj.target, f"{name}.target"),
                "mode": obj.mode,
                "map": {e: obj.map[e] for e in obj.source.es.events},
                "L": [[to_json_value(k), to_json_value(v)] for k, v in obj.L.items()],
                "M": [[to_json_value(k), to_json_value(v)] for k, v in obj.M.items()],
            }
        if isinstance(obj, IsomorphismFamily):
            E = obj.structure
            return {
                "kind": "family",
                "structure": self.add(E, f"{name}.es"),
                "members": [
                    {
                        "source": _config(E, t.source),
                        "target": _config(E, t.target),
                        "graph": sorted([a, b] for a, b in t.graph),
                    }
                    for t in obj.sorted_members()
                ],
            }
        raise DocumentError(f"cannot encode {type(obj).__name__}")

    def _encode_uniform(self, u: UniformStrategy, name: str) -> dict:
        s = u.strategy
        E = s.internal
        table = []
        for alpha in s.game.N.elements:
            for x in s.configurations:
                if (alpha, x) in u.phi:
                    r, y = u.phi[alpha, x]
                    table.append([to_json_value(alpha), _config(E, x), to_json_value(r), _config(E, y)])
        return {"kind": "uniform-strategy", "strategy": self.add(s, f"{name}.strategy"), "phi": table}


def encode_event_structure(E: EventStructure) -> dict:
    conflict = sorted(
        {tuple(sorted(p, key=E.index.get)) for p in E.conflict}, key=lambda p: (E.index[p[0]], E.index[p[1]])
    )
    events = []
    for e in E.events:
        entry = {"id": e, "polarity": E.polarity[e]}
        if e in E.labels:
            entry["label"] = E.labels[e]
        events.append(entry)
    return {
        "kind": "event-structure",
        "events": events,
        "covers": [list(c) for c in E.covers],
        "conflict": [list(c) for c in conflict],
    }


def encode_group(G: FiniteGroup) -> dict:
    pos = {g: i for i, g in enumerate(G.elements)}
    return {
        "kind": "group",
        "name": G.name,
        "elements": [to_json_value(g) for g in G.elements],
        "unit": to_json_value(G.unit),
        "table": [[pos.get(G.table.get((g, h)), -1) for h in G.elements] for g in G.elements],
    }


def encode(objects: Mapping[str, Any], expect_fail: Mapping[str, list[str]] | None = None) -> dict:
    """Bundle named objects (and everything they refer to)."""
    enc = Encoder()
    expect_fail = expect_fail or {}
    for name, obj in objects.items():
        enc.add(obj, name, expect_fail.get(name))
    return enc.bundle()


def dumps(bundle: dict) -> str:
    return json.dumps(bundle, ensure_ascii=False, indent=1) + "\n"


def write_bundle(bundle: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(bundle), encoding="utf-8")


# -- decoding -----------------------------------------------------------------


class Bundle:
    """Lazily decoded documents with reference resolution."""

    def __init__(self, data: Any, origin: str = "<bundle>"):
        if not isinstance(data, dict) or not isinstance(data.get("documents"), dict):
            raise DocumentError(f"{origin}: expected an object with a 'documents' map")
        version = data.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise DocumentError(f"{origin}: unsupported schema_version {version!r}")
        self.origin = origin
        self.raw: dict[str, dict] = data["documents"]
        for name, doc in self.raw.items():
            if not isinstance(doc, dict) or doc.get("kind") not in KINDS:
                raise DocumentError(f"{origin}: document {name!r} has no known kind")
        self._cache: dict[str, Any] = {}
        self._stack: list[str] = []

    @classmethod
    def load(cls, path: str | Path) -> "Bundle":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise DocumentError(f"{path}: {exc}") from exc
        return cls(data, str(path))

    def names(self, kind: str | None = None) -> list[str]:
        return [n for n, d in self.raw.items() if kind is None or d["kind"] == kind]

    def kind(self, name: str) -> str:
        return self.raw[name]["kind"]

    def expect_fail(self, name: str) -> list[str]:
        return list(self.raw[name].get("expect_fail", []))

    def get(self, name: str) -> Any:
        if name not in self.raw:
            raise DocumentError(f"{self.origin}: unresolved reference {name!r}")
        if name in self._cache:
            return self._cache[name]
        if name in self._stack:
            raise DocumentError(f"{self.origin}: cyclic reference through {name!r}")
        self._stack.append(name)
        try:
            obj = self._decode(self.raw[name], name)
        except DocumentError:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise DocumentError(f"{self.origin}: document {name!r} is malformed: {exc!r}") from exc
        finally:
            self._stack.pop()
        self._cache[name] = obj
        return obj

    def ref(self, value: Any, kind: str, where: str) -> Any:
        if isinstance(value, str):
            obj_kind = self.raw.get(value, {}).get("kind")
            if value in self.raw and obj_kind != kind:
                raise DocumentError(f"{self.origin}: {where} refers to a {obj_kind}, expected {kind}")
            return self.get(value)
        if isinstance(value, dict):
            if value.get("kind") != kind:
                raise DocumentError(f"{self.origin}: inline document in {where} is not a {kind}")
            return self._decode(value, where)
        raise DocumentError(f"{self.origin}: {where} must be a name or an inline document")

    def _decode(self, doc: dict, name: str) -> Any:
        return _DECODERS[doc["kind"]](self, doc, name)


def _decode_es(b: Bundle, doc: dict, name: str) -> EventStructure:
    events = [(ev["id"], ev["polarity"]) for ev in doc["events"]]
    labels = {ev["id"]: ev["label"] for ev in doc["events"] if "label" in ev}
    try:
        return EventStructure.build(
            events,
            covers=[tuple(c) for c in doc.get("covers", [])],
            conflict=[tuple(c) for c in doc.get("conflict", [])],
            labels=labels,
        )
    except ValidationError as exc:
        raise DocumentError(f"{b.origin}: {name}: {exc}") from exc


def _decode_group(b: Bundle, doc: dict, name: str) -> FiniteGroup:
    elements = tuple(from_json_value(g) for g in doc["elements"])
    rows = doc["table"]
    if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
        raise DocumentError(f"{b.origin}: {name}: table must be {len(elements)}×{len(elements)}")
    table = {}
    for g, row in zip(elements, rows):
        for h, k in zip(elements, row):
            if isinstance(k, int) and 0 <= k < len(elements):
                table[g, h] = elements[k]
    unit = from_json_value(doc["unit"])
    inverses = {}
    for g in elements:
        for h in elements:
            if table.get((g, h)) == unit and table.get((h, g)) == unit:
                inverses[g] = h
                break
    return FiniteGroup(elements, table, unit, inverses, doc.get("name", name))


def _decode_action(b: Bundle, doc: dict, name: str) -> GroupAction:
    group = b.ref(doc["group"], "group", f"{name}.group")
    E = b.ref(doc["structure"], "event-structure", f"{name}.structure")
    perms = {from_json_value(g): dict(p) for g, p in doc["perms"]}
    return GroupAction(group, E, perms)


def _decode_law(b: Bundle, doc: dict, name: str) -> DistributiveLaw:
    N = b.ref(doc["n_group"], "group", f"{name}.n_group")
    P = b.ref(doc["p_group"], "group", f"{name}.p_group")
    table = {}
    for a, beta, beta2, a2 in doc["table"]:
        table[from_json_value(a), from_json_value(beta)] = (from_json_value(beta2), from_json_value(a2))
    return DistributiveLaw(N, P, table)


def _decode_game(b: Bundle, doc: dict, name: str) -> Game:
    return Game(
        b.ref(doc["structure"], "event-structure", f"{name}.structure"),
        b.ref(doc["n_action"], "action", f"{name}.n_action"),
        b.ref(doc["p_action"], "action", f"{name}.p_action"),
        b.ref(doc["law"], "law", f"{name}.law"),
    )


def _decode_strategy(b: Bundle, doc: dict, name: str) -> Strategy:
    return Strategy(
        b.ref(doc["internal"], "event-structure", f"{name}.internal"),
        b.ref(doc["game"], "game", f"{name}.game"),
        dict(doc["projection"]),
    )


def _decode_weak_map(b: Bundle, doc: dict, name: str) -> WeakMap:
    return WeakMap(
        b.ref(doc["source"], "strategy", f"{name}.source"),
        b.ref(doc["target"], "strategy", f"{name}.target"),
        dict(doc["map"]),
        {frozenset(x): from_json_value(r) for x, r in doc["responses"]},
    )


def _decode_uniform(b: Bundle, doc: dict, name: str) -> UniformStrategy:
    s = b.ref(doc["strategy"], "strategy", f"{name}.strategy")
    phi = {}
    for alpha, x, r, y in doc["phi"]:
        phi[from_json_value(alpha), frozenset(x)] = (from_json_value(r), frozenset(y))
    return UniformStrategy(s, phi)


def _decode_lift(b: Bundle, doc: dict, name: str) -> LiftWitness:
    mode = doc.get("mode", "lift")
    if mode not in ("lift", "colift"):
        raise DocumentError(f"{b.origin}: {name}: mode must be 'lift' or 'colift'")
    return LiftWitness(
        b.ref(doc["source"], "game", f"{name}.source"),
        b.ref(doc["target"], "game", f"{name}.target"),
        dict(doc["map"]),
        {from_json_value(k): from_json_value(v) for k, v in doc["L"]},
        {from_json_value(k): from_json_value(v) for k, v in doc["M"]},
        mode,
    )


def _decode_family(b: Bundle, doc: dict, name: str) -> IsomorphismFamily:
    E = b.ref(doc["structure"], "event-structure", f"{name}.structure")
    members = frozenset(ConfigBijection(frozenset((a, c) for a, c in m["graph"])) for m in doc["members"])
    return IsomorphismFamily(E, members)


_DECODERS: dict[str, Callable[[Bundle, dict, str], Any]] = {
    "event-structure": _decode_es,
    "group": _decode_group,
    "action": _decode_action,
    "law": _decode_law,
    "game": _decode_game,
    "strategy": _decode_strategy,
    "weak-map": _decode_weak_map,
    "uniform-strategy": _decode_uniform,
    "lift-witness": _decode_lift,
    "family": _decode_family,
}

"""Validator suites over documents, constructions and DOT rendering.

This is everything the command line does, as library calls; the CLI only
parses arguments and prints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .copycat import (
    LiftWitness,
    colift_strategy,
    copycat_strategy,
    lift_strategy,
    uniform_colift,
    uniform_copycat,
    uniform_lift,
    validate_colift_witness,
    validate_lift_witness,
)
from .es_core import NEG, EventStructure, validate_event_structure
from .game import Game, bang_game, dual_game, parallel_game, validate_game
from .report import Report, ValidationError
from .serialize import Bundle, DocumentError, encode
from .strategy import Strategy, WeakMap, validate_strategy, validate_weak_map
from .symmetry import validate_action, validate_distributive_law, validate_group
from .tcg import IsomorphismFamily, family_from_uniform, tcg_from_game, validate_iso_family
from .uniform import UniformStrategy, is_local, validate_uniform

REPORT_SCHEMA_VERSION = 1


def locality_report(u: UniformStrategy) -> Report:
    report = Report("locality")
    report.check("local")
    verdict = is_local(u)
    if not verdict.ok:
        alpha, x = verdict.witness
        report.fail("local", f"{alpha!r} fixes the image of {sorted(x)} but φ_{alpha!r} does not fix it", verdict.witness)
    return report


def _lift_suites(w: LiftWitness) -> dict[str, Report]:
    colift = w.mode == "colift"
    out = {"witness": (validate_colift_witness if colift else validate_lift_witness)(w)}
    if not out["witness"].ok:
        return out
    try:
        s = (colift_strategy if colift else lift_strategy)(w)
    except ValidationError as exc:
        report = Report("lifted strategy")
        report.fail("precondition", str(exc))
        out["strategy"] = report
        return out
    out["strategy"] = validate_strategy(s)
    out["uniform"] = validate_uniform((uniform_colift if colift else uniform_lift)(w))
    return out


def _uniform_suites(u: UniformStrategy) -> dict[str, Report]:
    out = {"strategy": validate_strategy(u.strategy), "uniform": validate_uniform(u)}
    if out["uniform"].ok:
        out["locality"] = locality_report(u)
    return out


SUITES: dict[str, Callable[[Any], dict[str, Report]]] = {
    "event-structure": lambda E: {"event-structure": validate_event_structure(E)},
    "group": lambda G: {"group": validate_group(G)},
    "action": lambda a: {"action": validate_action(a)},
    "law": lambda law: {"law": validate_distributive_law(law)},
    "game": lambda A: {"game": validate_game(A)},
    "strategy": lambda s: {"strategy": validate_strategy(s)},
    "weak-map": lambda w: {"weak-map": validate_weak_map(w)},
    "uniform-strategy": _uniform_suites,
    "lift-witness": _lift_suites,
    "family": lambda F: {"family": validate_iso_family(F)},
}


@dataclass
class DocumentResult:
    name: str
    kind: str
    expect_fail: list[str]
    suites: dict[str, Report]

    @property
    def failed(self) -> set[str]:
        return {k for k, r in self.suites.items() if not r.ok}

    @property
    def passed(self) -> bool:
        """Exactly the tagged validators fail."""
        return self.failed == set(self.expect_fail)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "expect_fail": list(self.expect_fail),
            "passed": self.passed,
            "suites": [
                {
                    "validator": k,
                    "passed": r.ok,
                    "expected_failure": k in self.expect_fail,
                    "report": r.to_dict(),
                }
                for k, r in self.suites.items()
            ],
        }


@dataclass
class BundleResult:
    path: str
    documents: list[DocumentResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.documents)

    def to_dict(self) -> dict:
        return {"path": self.path, "passed": self.passed, "documents": [d.to_dict() for d in self.documents]}


def validate_document(bundle: Bundle, name: str) -> DocumentResult:
    obj = bundle.get(name)
    kind = bundle.kind(name)
    return DocumentResult(name, kind, bundle.expect_fail(name), SUITES[kind](obj))


def validate_bundle(bundle: Bundle, kind: str | None = None) -> BundleResult:
    result = BundleResult(bundle.origin)
    for name in bundle.names(kind):
        result.documents.append(validate_document(bundle, name))
    return result


def report_json(results: list[BundleResult]) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "passed": all(r.passed for r in results),
        "files": [r.to_dict() for r in results],
    }


def report_text(results: list[BundleResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"{r.path}: {'PASS' if r.passed else 'FAIL'}")
        for d in r.documents:
            status = "ok" if d.passed else "FAIL"
            tag = f" (expect-fail: {', '.join(d.expect_fail)})" if d.expect_fail else ""
            lines.append(f"  {d.name} [{d.kind}] {status}{tag}")
            for k, rep in d.suites.items():
                if not rep.ok:
                    for v in rep.violations:
                        lines.append(f"    {k}: {v}")
    return "\n".join(lines) + "\n"


# -- constructions --------------------------------------------------------------

CONSTRUCTIONS = ("dual", "par", "bang", "copycat", "uniform-copycat", "lift", "colift", "tcg")


def pick(bundle: Bundle, kind: str, name: str | None = None) -> tuple[str, Any]:
    """The named document, or the last document of ``kind`` in the bundle."""
    if name is not None:
        if name not in bundle.raw:
            raise DocumentError(f"{bundle.origin}: no document named {name!r}")
        if bundle.kind(name) != kind:
            raise DocumentError(f"{bundle.origin}: {name!r} is a {bundle.kind(name)}, expected {kind}")
        return name, bundle.get(name)
    names = bundle.names(kind)
    if not names:
        raise DocumentError(f"{bundle.origin}: no {kind} document")
    return names[-1], bundle.get(names[-1])


def build(construction: str, bundles: list[Bundle], name: str | None = None, n: int = 2) -> dict:
    """Run a construction and return the output bundle."""
    if construction not in CONSTRUCTIONS:
        raise DocumentError(f"unknown construction {construction!r}")
    if construction in ("lift", "colift"):
        wname, w = pick(bundles[0], "lift-witness", name)
        mode = construction
        w = LiftWitness(w.source, w.target, w.map, w.L, w.M, mode)
        u = uniform_lift(w) if mode == "lift" else uniform_colift(w)
        return encode({f"{mode}-of-{wname}": u})
    gname, A = pick(bundles[0], "game", name)
    if construction == "dual":
        return encode({f"dual-{gname}": dual_game(A)})
    if construction == "par":
        if len(bundles) < 2:
            raise DocumentError("par needs two inputs")
        hname, B = pick(bundles[1], "game")
        return encode({f"{gname}-par-{hname}": parallel_game(A, B)})
    if construction == "bang":
        return encode({f"bang{n}-{gname}": bang_game(A, n)})
    if construction == "copycat":
        return encode({f"cc-{gname}": copycat_strategy(A)})
    if construction == "uniform-copycat":
        return encode({f"ucc-{gname}": uniform_copycat(A)})
    G = tcg_from_game(A)
    return encode({f"{gname}.full": G.full, f"{gname}.pos": G.pos, f"{gname}.neg": G.neg})


# -- DOT ------------------------------------------------------------------------

VIEWS = ("causality", "conflict", "family")


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def node_label(E: EventStructure, e: str) -> str:
    if e in E.labels:
        return E.labels[e]
    sign = "⊖" if E.polarity[e] == NEG else "⊕"
    return f"{sign}{E.index[e]}"


def minimal_conflicts(E: EventStructure) -> list[tuple[str, str]]:
    """Conflicts not inherited from a conflict between causal predecessors."""
    out = []
    for a, b in E.conflict:
        if E.index[a] > E.index[b]:
            continue
        below_a = E.predecessors[a] | {a}
        below_b = E.predecessors[b] | {b}
        if any((c, d) in E.conflict and (c, d) != (a, b) for c in below_a for d in below_b):
            continue
        out.append((a, b))
    return sorted(out, key=lambda p: (E.index[p[0]], E.index[p[1]]))


def structure_of(obj: Any) -> EventStructure:
    if isinstance(obj, EventStructure):
        return obj
    if isinstance(obj, Game):
        return obj.es
    if isinstance(obj, Strategy):
        return obj.internal
    if isinstance(obj, UniformStrategy):
        return obj.strategy.internal
    if isinstance(obj, IsomorphismFamily):
        return obj.structure
    if isinstance(obj, WeakMap):
        return obj.source.internal
    raise DocumentError(f"no event structure to draw in a {type(obj).__name__}")


def family_of(obj: Any) -> IsomorphismFamily:
    if isinstance(obj, IsomorphismFamily):
        return obj
    if isinstance(obj, Game):
        return tcg_from_game(obj, check=False).full
    if isinstance(obj, UniformStrategy):
        return family_from_uniform(obj)
    raise DocumentError(f"no isomorphism family in a {type(obj).__name__}")


def to_dot(obj: Any, view: str = "causality") -> str:
    if view not in VIEWS:
        raise DocumentError(f"unknown view {view!r}")
    lines = ["digraph G {"]
    if view == "family":
        F = family_of(obj)
        E = F.structure
        for i, theta in enumerate(F.non_identities()):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append(f"    label={_q(str(theta))};")
            src = sorted(theta.source, key=E.index.get)
            tgt = sorted(theta.target, key=E.index.get)
            for side, xs in (("s", src), ("t", tgt)):
                for e in xs:
                    lines.append(f"    {_q(f'{i}{side}:{e}')} [label={_q(node_label(E, e))}];")
            for a, b in sorted(theta.graph, key=lambda p: E.index[p[0]]):
                lines.append(f"    {_q(f'{i}s:{a}')} -> {_q(f'{i}t:{b}')};")
            lines.append("  }")
        lines.append("}")
        return "\n".join(lines) + "\n"
    E = structure_of(obj)
    for e in E.events:
        lines.append(f"  {_q(e)} [label={_q(node_label(E, e))}];")
    for a, b in E.covers:
        lines.append(f"  {_q(a)} -> {_q(b)};")
    if view == "conflict":
        for a, b in minimal_conflicts(E):
            lines.append(f"  {_q(a)} -> {_q(b)} [dir=none, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"

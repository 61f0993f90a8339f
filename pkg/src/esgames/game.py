"""Games: an event structure with a negative action, a positive action and
a distributive law permuting them. Constructors for the trivial game, the
dual, parallel composition and the ``n``-copy resource modality."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations, product

from .es_core import (
    NEG,
    POS,
    EventStructure,
    dual_es,
    parallel_es,
    parallel_many,
    tag,
    validate_event_structure,
)
from .report import BoundExceeded, Report, ValidationError
from .symmetry import (
    DEFAULT_MAX_GROUP,
    DistributiveLaw,
    FiniteGroup,
    GroupAction,
    isw,
    power_group,
    product_group,
    trivial_action,
    trivial_group,
    validate_action,
    validate_action_polarity,
    validate_distributive_law,
)


@dataclass(frozen=True, eq=False)
class Game:
    es: EventStructure
    n_action: GroupAction
    p_action: GroupAction
    law: DistributiveLaw

    @property
    def N(self) -> FiniteGroup:
        return self.n_action.group

    @property
    def P(self) -> FiniteGroup:
        return self.p_action.group

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return (
            self.es == other.es
            and self.es.labels == other.es.labels
            and self.n_action == other.n_action
            and self.p_action == other.p_action
            and self.law == other.law
        )

    __hash__ = object.__hash__


def validate_game(A: Game) -> Report:
    report = Report("game")
    report.absorb(validate_event_structure(A.es), "es:")
    report.absorb(validate_action(A.n_action), "N:")
    report.absorb(validate_action(A.p_action), "P:")
    report.check("same-structure")
    if A.n_action.target != A.es or A.p_action.target != A.es:
        report.fail("same-structure", "an action acts on a different event structure")
    report.check("law-groups")
    if A.law.n_group != A.N or A.law.p_group != A.P:
        report.fail("law-groups", "the law is not between the game's groups")
    if not report.ok:
        return report
    neg = validate_action_polarity(A.n_action, NEG)
    pos = validate_action_polarity(A.p_action, POS)
    report.absorb(neg)
    report.absorb(pos)
    report.absorb(validate_distributive_law(A.law), "law:")
    if not report.ok:
        return report
    report.check("permutation-square")
    events = A.es.events
    for a in A.N.elements:
        pa = A.n_action.perms[a]
        for b in A.P.elements:
            pb = A.p_action.perms[b]
            b2, a2 = A.law(a, b)
            pb2, pa2 = A.p_action.perms[b2], A.n_action.perms[a2]
            if any(pa[pb[e]] != pb2[pa2[e]] for e in events):
                report.fail(
                    "permutation-square",
                    f"act({a!r})∘act({b!r}) differs from act({b2!r})∘act({a2!r})",
                    (a, b),
                )
    return report


def trivial_game(E: EventStructure) -> Game:
    N, P = trivial_group(), trivial_group()
    return Game(E, trivial_action(E, N), trivial_action(E, P), DistributiveLaw(N, P, {("e", "e"): ("e", "e")}))


def dual_game(A: Game) -> Game:
    """Flip polarity, exchange the groups, conjugate the law by invert-and-swap."""
    E = dual_es(A.es)
    N, P = A.P, A.N
    swap = isw(A.law)
    table = {}
    for b in A.P.elements:
        for a in A.N.elements:
            b2, a2 = A.law(*swap(b, a))
            table[b, a] = swap(b2, a2)
    return Game(
        E,
        GroupAction(N, E, A.p_action.perms),
        GroupAction(P, E, A.n_action.perms),
        DistributiveLaw(N, P, table),
    )


def _product_action(group: FiniteGroup, E: EventStructure, actions: list[GroupAction]) -> GroupAction:
    perms = {}
    for g in group.elements:
        perm = {}
        for i, (gi, act) in enumerate(zip(g, actions)):
            for e, img in act.perms[gi].items():
                perm[tag(i, e)] = tag(i, img)
        perms[g] = perm
    return GroupAction(group, E, perms)


def parallel_game(A: Game, B: Game) -> Game:
    E = parallel_es(A.es, B.es)
    N, P = product_group(A.N, B.N), product_group(A.P, B.P)
    table = {}
    for a in N.elements:
        for b in P.elements:
            ba, aa = A.law(a[0], b[0])
            bb, ab = B.law(a[1], b[1])
            table[a, b] = ((ba, bb), (aa, ab))
    return Game(
        E,
        _product_action(N, E, [A.n_action, B.n_action]),
        _product_action(P, E, [A.p_action, B.p_action]),
        DistributiveLaw(N, P, table),
    )


class GamePolarity(enum.Enum):
    VACUOUS = "vacuous"
    NEGATIVE = "negative"
    POSITIVE = "positive"
    MIXED = "mixed"

    @property
    def is_negative(self) -> bool:
        return self in (GamePolarity.VACUOUS, GamePolarity.NEGATIVE)

    @property
    def is_positive(self) -> bool:
        return self in (GamePolarity.VACUOUS, GamePolarity.POSITIVE)


def polarity_of_game(A: Game | EventStructure) -> GamePolarity:
    E = A.es if isinstance(A, Game) else A
    pols = {E.polarity[e] for e in E.minimal_events()}
    if not pols:
        return GamePolarity.VACUOUS
    if pols == {NEG}:
        return GamePolarity.NEGATIVE
    if pols == {POS}:
        return GamePolarity.POSITIVE
    return GamePolarity.MIXED


def bang_game(A: Game, n: int, bound: int = DEFAULT_MAX_GROUP) -> Game:
    """``n`` exchangeable copies of a negative game.

    Copy ``i`` of event ``a`` is ``"i.a"``. The negative group is the wreath
    product ``S_n ≀ N_A`` with elements ``(π, (α_0, ..., α_{n-1}))`` acting by
    ``(i, a) ↦ (π(i), α_i(a))``; the positive group is ``P_A^n`` acting
    copywise.
    """
    if n < 1:
        raise ValidationError("bang_game needs at least one copy")
    if not polarity_of_game(A).is_negative:
        raise ValidationError(
            "bang_game needs a negative game: initial moves all have the same polarity (negative) is violated"
        )
    size = 1
    for k in range(2, n + 1):
        size *= k
    size *= A.N.order**n
    if size > bound:
        raise BoundExceeded("negative group of the bang game", bound, size)
    E = parallel_many([A.es] * n)
    NA = A.N
    perms_n = tuple(permutations(range(n)))
    elements = tuple((pi, alphas) for pi in perms_n for alphas in product(NA.elements, repeat=n))

    def mul(g, h):
        (pi, a), (rho, b) = g, h
        return (
            tuple(pi[rho[i]] for i in range(n)),
            tuple(NA.mul(a[rho[i]], b[i]) for i in range(n)),
        )

    def inv_perm(pi):
        out = [0] * n
        for i, j in enumerate(pi):
            out[j] = i
        return tuple(out)

    table = {(g, h): mul(g, h) for g in elements for h in elements}
    inverses = {}
    for pi, a in elements:
        pinv = inv_perm(pi)
        inverses[pi, a] = (pinv, tuple(NA.inv(a[pinv[i]]) for i in range(n)))
    unit = (tuple(range(n)), tuple([NA.unit] * n))
    N = FiniteGroup(elements, table, unit, inverses, f"S{n}≀{NA.name}")
    P = power_group(A.P, n)

    n_perms = {}
    for pi, a in elements:
        perm = {}
        for i in range(n):
            for e, img in A.n_action.perms[a[i]].items():
                perm[tag(i, e)] = tag(pi[i], img)
        n_perms[pi, a] = perm
    p_perms = {}
    for b in P.elements:
        perm = {}
        for i in range(n):
            for e, img in A.p_action.perms[b[i]].items():
                perm[tag(i, e)] = tag(i, img)
        p_perms[b] = perm

    law = {}
    for pi, a in elements:
        pinv = inv_perm(pi)
        for b in P.elements:
            parts = [A.law(a[i], b[i]) for i in range(n)]
            new_b = tuple(parts[pinv[i]][0] for i in range(n))
            new_a = tuple(parts[i][1] for i in range(n))
            law[(pi, a), b] = (new_b, (pi, new_a))
    return Game(E, GroupAction(N, E, n_perms), GroupAction(P, E, p_perms), DistributiveLaw(N, P, law))

"""Structure data and condition checkers.

Type triples, the hyperbolicity measure, sigma sets (the union of
conjugates of the cyclic groups generated by a, c and ac), genus of the
associated covering curve, and the unmixed/mixed verdict machinery with
its strategy ladder (order coprimality, cycle types, exact sets).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    CapacityExceeded,
    DEFAULT_CLASS_CAP,
    DEFAULT_CLOSURE_CAP,
    Group,
    InconsistencyError,
    PreconditionError,
    UndecidedError,
    conjugacy_class,
    generates,
)
from .perms import cycle_type


# -- pair metrics -----------------------------------------------------------


@dataclass(frozen=True)
class PairMetrics:
    """Type triple (ord a, ord c, ord ac) with derived classification."""

    r: int
    s: int
    t: int
    mu: Fraction
    nu: int
    normalized: bool
    shape: str  # strict | critical | subcritical
    hyperbolic: bool

    @property
    def triple(self) -> tuple:
        return (self.r, self.s, self.t)

    def order_set(self) -> frozenset:
        return frozenset((self.r, self.s, self.t))

    def order_multiset(self) -> tuple:
        return tuple(sorted((self.r, self.s, self.t)))


def pair_metrics(G: Group, a, c) -> PairMetrics:
    r = G.element_order(a)
    s = G.element_order(c)
    t = G.element_order(G.mul(a, c))
    mu = Fraction(1, r) + Fraction(1, s) + Fraction(1, t)
    distinct = len({r, s, t})
    shape = "strict" if distinct == 3 else ("critical" if distinct == 1 else "subcritical")
    # Normalized means ord(a) <= ord(b) <= ord(c) with b = (ca)^-1, and
    # ord(b) equals ord(ac).
    return PairMetrics(
        r=r, s=s, t=t, mu=mu, nu=r * s * t,
        normalized=(r <= t <= s),
        shape=shape,
        hyperbolic=(mu < 1),
    )


def genus(G: Group, a, c) -> int:
    """Genus of the covering curve attached to the pair, 1 + (1-mu)/2 * |G|.

    The value is guaranteed integral for genuine data; a fractional
    result signals an order-computation bug and raises.
    """
    m = pair_metrics(G, a, c)
    val = 1 + (1 - m.mu) * G.order / 2
    if val.denominator != 1:
        raise InconsistencyError(f"genus formula gave non-integer {val}")
    return int(val)


# -- sigma sets -------------------------------------------------------------


@dataclass(frozen=True)
class SigmaSet:
    """Union of conjugates of <a>, <c>, <ac> in one of three representations.

    exact: the element set itself.  cycle-type: the set of cycle types
    of the powers (exact for a full symmetric ambient group, a
    sufficient-only disjointness criterion for alternating ones).
    order-divisor: the set of element orders of the powers (sufficient
    criterion via coprimality only).
    """

    strategy: str
    elements: frozenset | None = None
    types: frozenset | None = None
    types_exact: bool = False
    orders: frozenset | None = None

    def size(self) -> int | None:
        return len(self.elements) if self.elements is not None else None


def _power_closure(G: Group, x) -> list:
    """All powers x^i, i >= 0 (the cyclic subgroup generated by x)."""
    out = [G.identity]
    acc = x
    while acc != G.identity:
        out.append(acc)
        acc = G.mul(acc, x)
    return out


def sigma_set(G: Group, a, c, strategy: str = "exact",
              class_cap: int = DEFAULT_CLASS_CAP) -> SigmaSet:
    G.check_element(a)
    G.check_element(c)
    seeds = [a, c, G.mul(a, c)]
    if strategy == "exact":
        elements: set = set()
        for x in seeds:
            for y in _power_closure(G, x):
                if y not in elements:
                    elements |= conjugacy_class(G, y, cap=class_cap)
        return SigmaSet(strategy="exact", elements=frozenset(elements))
    if strategy == "cycle-type":
        if G.kind not in ("sym", "alt"):
            raise PreconditionError("cycle-type strategy needs a permutation backend")
        types = set()
        for x in seeds:
            for y in _power_closure(G, x):
                types.add(cycle_type(y))
        return SigmaSet(strategy="cycle-type", types=frozenset(types),
                        types_exact=(G.kind == "sym"))
    if strategy == "order-divisor":
        orders = set()
        for x in seeds:
            ox = G.element_order(x)
            for d in range(1, ox + 1):
                if ox % d == 0:
                    orders.add(d)
        return SigmaSet(strategy="order-divisor", orders=frozenset(orders))
    raise PreconditionError(f"unknown sigma strategy {strategy!r}")


def sigma_naive(G: Group, a, c, elements) -> frozenset:
    """Literal double-loop definition; test oracle for small groups."""
    out = set()
    inv = G.inv
    mul = G.mul
    for g in elements:
        gi = inv(g)
        for x in (a, c, mul(a, c)):
            acc = G.identity
            out.add(acc)
            while True:
                acc = mul(acc, x)
                if acc == G.identity:
                    break
                out.add(mul(g, mul(acc, gi)))
    return frozenset(out)


# -- structures and reports -------------------------------------------------


@dataclass(frozen=True)
class UnmixedStructure:
    group: Group
    a1: object
    c1: object
    a2: object
    c2: object

    def pairs(self):
        return ((self.a1, self.c1), (self.a2, self.c2))

    def inverted(self) -> "UnmixedStructure":
        inv = self.group.inv
        return UnmixedStructure(self.group, inv(self.a1), inv(self.c1),
                                inv(self.a2), inv(self.c2))


class IndexTwoSubgroup:
    """Membership view of an index-2 subgroup of a group context."""

    def __init__(self, contains, order: int, elements=None, description: str = ""):
        self._contains = contains
        self.order = order
        self.elements = elements
        self.description = description

    def contains(self, x) -> bool:
        return self._contains(x)

    @classmethod
    def from_elements(cls, elements, description: str = "") -> "IndexTwoSubgroup":
        elements = frozenset(elements)
        return cls(elements.__contains__, len(elements), elements, description)

    @classmethod
    def h2_of(cls, G) -> "IndexTwoSubgroup":
        return cls(G.in_index2, G.index2_order, None, "even-twist subgroup")


@dataclass(frozen=True)
class MixedQuadruple:
    group: Group
    subgroup: IndexTwoSubgroup
    a: object
    c: object
    g: object

    def inverted(self) -> "MixedQuadruple":
        inv = self.group.inv
        return MixedQuadruple(self.group, self.subgroup, inv(self.a), inv(self.c), self.g)


@dataclass
class ConditionResult:
    id: str
    ok: bool | None
    strategy: str | None = None
    detail: str | None = None

    def to_json(self) -> dict:
        return {"id": self.id, "ok": self.ok, "strategy": self.strategy,
                "detail": self.detail}


@dataclass
class CheckReport:
    verdict: str  # pass | fail | undecided
    conditions: list = field(default_factory=list)
    witness: object | None = None

    def to_json(self, element_formatter=None) -> dict:
        witness = self.witness
        if witness is not None and element_formatter is not None:
            witness = element_formatter(witness)
        return {
            "verdict": self.verdict,
            "conditions": [c.to_json() for c in self.conditions],
            "witness": witness,
        }

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _condition(report: CheckReport, cid: str, ok, strategy=None, detail=None):
    report.conditions.append(ConditionResult(cid, ok, strategy, detail))
    return ok


def _settle(report: CheckReport):
    oks = [c.ok for c in report.conditions]
    if any(ok is False for ok in oks):
        report.verdict = "fail"
    elif any(ok is None for ok in oks):
        report.verdict = "undecided"
    else:
        report.verdict = "pass"
    return report


# -- sigma intersection strategies ------------------------------------------


def _intersection_exact(G: Group, p1, p2, class_cap):
    s1 = sigma_set(G, *p1, strategy="exact", class_cap=class_cap)
    s2 = sigma_set(G, *p2, strategy="exact", class_cap=class_cap)
    common = s1.elements & s2.elements
    extra = common - {G.identity}
    if not extra:
        return True, None
    return False, min(extra, key=repr)


def try_sigma_disjoint(G: Group, p1, p2, strategy: str = "auto",
                       class_cap: int = DEFAULT_CLASS_CAP):
    """(verdict, strategy, witness): verdict None means inconclusive.

    The ladder runs cheapest-first: coprimality of the nu values is a
    sufficient criterion; cycle-type disjointness is exact for full
    symmetric groups and sufficient for alternating ones; the exact
    strategy decides everything it can afford.
    """
    m1 = pair_metrics(G, *p1)
    m2 = pair_metrics(G, *p2)
    if strategy in ("auto", "coprime"):
        if math.gcd(m1.nu, m2.nu) == 1:
            return True, "coprime-nu", None
        if strategy == "coprime":
            return None, "coprime-nu", None
    if strategy in ("auto", "cycle-type") and G.kind in ("sym", "alt"):
        s1 = sigma_set(G, *p1, strategy="cycle-type")
        s2 = sigma_set(G, *p2, strategy="cycle-type")
        common = (s1.types & s2.types) - {()}
        if not common:
            return True, "cycle-type", None
        if s1.types_exact:
            # In the full symmetric group equal cycle type means conjugate.
            return False, "cycle-type", min(common)
        if strategy == "cycle-type":
            return None, "cycle-type", None
    if strategy in ("auto", "exact"):
        try:
            ok, witness = _intersection_exact(G, p1, p2, class_cap)
            return ok, "exact", witness
        except CapacityExceeded:
            return None, "exact", None
    return None, strategy, None


# -- checkers ---------------------------------------------------------------


def check_unmixed(G: Group, v: UnmixedStructure, strategy: str = "auto",
                  class_cap: int = DEFAULT_CLASS_CAP,
                  closure_cap: int = DEFAULT_CLOSURE_CAP) -> CheckReport:
    """Verify the unmixed conditions: both pairs generate, sigma sets
    meet only in the identity; hyperbolicity is recorded for both pairs."""
    report = CheckReport(verdict="undecided")
    gen_strategy = "bsgs" if G.kind in ("sym", "alt") else "closure"
    for idx, (a, c) in enumerate(v.pairs(), start=1):
        try:
            ok = generates(G, a, c, cap=closure_cap)
        except UndecidedError as exc:
            ok = None
            _condition(report, f"generates-{idx}", None, gen_strategy, str(exc))
            continue
        _condition(report, f"generates-{idx}", ok, gen_strategy,
                   None if ok else "pair generates a proper subgroup")
    metrics = [pair_metrics(G, a, c) for (a, c) in v.pairs()]
    for idx, m in enumerate(metrics, start=1):
        _condition(report, f"hyperbolic-{idx}", m.hyperbolic, "order-arithmetic",
                   f"mu = {m.mu}")
    if any(c.ok is False for c in report.conditions):
        return _settle(report)
    verdict, used, witness = try_sigma_disjoint(G, (v.a1, v.c1), (v.a2, v.c2),
                                                strategy=strategy, class_cap=class_cap)
    if verdict is None:
        detail = "all affordable strategies inconclusive"
    elif verdict:
        detail = None
    else:
        detail = "sigma sets meet outside the identity"
    _condition(report, "sigma-intersection", verdict, used, detail)
    report.witness = witness
    return _settle(report)


def check_mixed(G: Group, M: MixedQuadruple,
                class_cap: int = DEFAULT_CLASS_CAP,
                subgroup_cap: int = 10**6) -> CheckReport:
    """Verify the four mixed conditions.

    An abelian index-2 subgroup fails outright (no mixed structure has
    one).  Condition 3 runs over the nontrivial coset: the squares of
    its elements must avoid the sigma set; condition 4 intersects the
    sigma set with its image under conjugation by g.
    """
    report = CheckReport(verdict="undecided")
    if M.subgroup.contains(M.g):
        raise PreconditionError("coset representative g lies in the index-2 subgroup")
    if 2 * M.subgroup.order != G.order:
        raise PreconditionError("subgroup does not have index 2")

    sub = _SubgroupView(G, M)
    gen_ok = sub.generated_by_pair(subgroup_cap)
    if gen_ok is None:
        detail = "subgroup too large for closure; use the inner-criteria checker for swap products"
    elif gen_ok:
        detail = None
    else:
        detail = "pair does not generate the index-2 subgroup"
    _condition(report, "generates-subgroup", gen_ok, "closure", detail)
    if gen_ok is not True:
        return _settle(report)

    # A commuting generating pair makes the subgroup abelian, which no
    # mixed structure allows.
    abelian = G.commutes(M.a, M.c)
    _condition(report, "nonabelian-subgroup", not abelian, "commutator",
               "index-2 subgroup is abelian; no mixed structure exists on it"
               if abelian else None)
    if abelian:
        return _settle(report)

    sigma = sub.sigma_exact(class_cap)
    if sigma is None:
        _condition(report, "coset-squares", None, "exact",
                   "sigma set over class cap")
        _condition(report, "conjugate-sigma-intersection", None, "exact", None)
        return _settle(report)

    bad = sub.coset_square_hit(sigma, subgroup_cap)
    if bad is UNDECIDED:
        _condition(report, "coset-squares", None, "coset-scan", "coset over cap")
    else:
        _condition(report, "coset-squares", bad is None, "coset-scan",
                   None if bad is None else "some (g*gamma)^2 lies in the sigma set")
        if bad is not None:
            report.witness = bad
            return _settle(report)

    conj_sigma = frozenset(G.mul(M.g, G.mul(x, G.inv(M.g))) for x in sigma)
    common = (sigma & conj_sigma) - {G.identity}
    _condition(report, "conjugate-sigma-intersection", not common, "exact",
               None if not common else "sigma meets its g-conjugate nontrivially")
    if common:
        report.witness = min(common, key=repr)
    return _settle(report)


UNDECIDED = object()


class _SubgroupView:
    """Work space for check_mixed over the index-2 subgroup."""

    def __init__(self, G: Group, M: MixedQuadruple):
        self.G = G
        self.M = M

    def generated_by_pair(self, cap) -> bool | None:
        from .core import generated_subgroup

        G, M = self.G, self.M
        if M.subgroup.order > cap:
            return None
        closure = generated_subgroup(G, [M.a, M.c], cap=cap)
        if len(closure) == M.subgroup.order and all(map(M.subgroup.contains, closure)):
            self._elements = closure
            return True
        return False

    def sigma_exact(self, class_cap):
        """Sigma of (a, c) inside the subgroup: conjugation by a and c
        reaches the whole subgroup conjugation action once the pair
        generates."""
        G, M = self.G, self.M
        sub_ctx = _PairGeneratedContext(G, M.a, M.c, M.subgroup.order)
        try:
            return sigma_set(sub_ctx, M.a, M.c, strategy="exact",
                             class_cap=class_cap).elements
        except CapacityExceeded:
            return None

    def coset_square_hit(self, sigma, cap):
        G, M = self.G, self.M
        if M.subgroup.order > cap:
            return UNDECIDED
        elements = getattr(self, "_elements", None)
        if elements is None:
            elements = M.subgroup.elements
        if elements is None:
            return UNDECIDED
        mul = G.mul
        g = M.g
        for gamma in elements:
            x = mul(g, gamma)
            if mul(x, x) in sigma:
                return gamma
        return None


class _PairGeneratedContext(Group):
    """The subgroup <a, c> viewed as a context (for sigma computations)."""

    kind = "subgroup"

    def __init__(self, parent: Group, a, c, order: int):
        self.parent = parent
        self._gens = [a, c]
        self._order = order

    @property
    def identity(self):
        return self.parent.identity

    def mul(self, x, y):
        return self.parent.mul(x, y)

    def inv(self, x):
        return self.parent.inv(x)

    @property
    def order(self):
        return self._order

    @property
    def generators(self):
        return list(self._gens)

    def contains(self, x):
        return self.parent.contains(x)

    def descriptor(self) -> dict:
        return {"kind": "subgroup", "parent": self.parent.descriptor()}


def check_mixed_vz3(H: Group, a1, c1, a2, c2, perfect: bool = False,
                    closure_cap: int = DEFAULT_CLOSURE_CAP) -> CheckReport:
    """Inner criteria certifying a mixed structure on the swap product.

    A pass certifies that ((a1, a2, 2), (c1, c2, 2)) with the even-twist
    subgroup is a mixed structure on H4(H) without touching the big
    group: a1 and c1 have even order; a1^2, a1*c1, c1^2 generate H (or
    a1, c1 alone when H is perfect); a2, c2 generate H; and the two nu
    values are coprime.
    """
    report = CheckReport(verdict="undecided")
    for x in (a1, c1, a2, c2):
        H.check_element(x)
    ord_a1, ord_c1 = H.element_order(a1), H.element_order(c1)
    _condition(report, "even-orders", ord_a1 % 2 == 0 and ord_c1 % 2 == 0,
               "order-arithmetic", f"orders ({ord_a1}, {ord_c1})")
    from .core import generated_subgroup

    try:
        if perfect:
            closure = generated_subgroup(H, [a1, c1], cap=closure_cap)
            ok = len(closure) == H.order
            _condition(report, "first-pair-generates", ok, "closure (perfect shortcut)")
        else:
            closure = generated_subgroup(
                H, [H.mul(a1, a1), H.mul(a1, c1), H.mul(c1, c1)], cap=closure_cap)
            ok = len(closure) == H.order
            _condition(report, "squares-generate", ok, "closure")
    except CapacityExceeded:
        _condition(report, "first-pair-generates", None, "closure", "over cap")
    try:
        ok2 = len(generated_subgroup(H, [a2, c2], cap=closure_cap)) == H.order
        _condition(report, "second-pair-generates", ok2, "closure")
    except CapacityExceeded:
        _condition(report, "second-pair-generates", None, "closure", "over cap")
    nu1 = pair_metrics(H, a1, c1).nu
    nu2 = pair_metrics(H, a2, c2).nu
    g = math.gcd(nu1, nu2)
    _condition(report, "coprime-nu", g == 1, "order-arithmetic",
               f"nu values ({nu1}, {nu2}), gcd {g}")
    return _settle(report)


def vz3_quadruple(H: Group, a1, c1, a2, c2) -> MixedQuadruple:
    """Materialize the certified structure on the swap product."""
    from .constructions import H4

    G = H4(H)
    a = (a1, a2, 2)
    c = (c1, c2, 2)
    return MixedQuadruple(G, IndexTwoSubgroup.h2_of(G), a, c, G.coset_rep)

"""Desk-scale reproduction criteria.

Each criterion is a named, self-contained check returning (ok, detail).
The CLI renders them as a pass/fail table; the acceptance test suite
runs the same registry.  Criteria are stated exactly as pinned, even
where the computed value disagrees with the claimed one; a failing
criterion reports the computed facts in its detail string.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .constructions import Abelian2, Wallpaper, dicyclic, dihedral
from .core import generated_subgroup
from .matgroups import (
    SL2Group,
    PSL2Group,
    conjugation_cosets,
    diag_mat,
    e_invariant,
    is_square,
    minv,
    mmul,
    mult_order_element,
    sl2_constants,
    split_conjugator,
)
from .perms import (
    SymmetricGroup,
    bsgs_order,
    conjugator_search,
    parity,
    pinv,
    pmul,
)
from .reality import (
    apply_sigma,
    backend_for,
    iota_pair,
    lemma_case_table,
    reality_mixed,
    reality_unmixed,
)
from .search import (
    SearchConstraints,
    count_abelian,
    enumerate_unmixed,
    lower_bound_abelian,
    scan_catalogue,
    wallpaper_scan,
)
from .structures import (
    UnmixedStructure,
    check_mixed_vz3,
    check_unmixed,
    pair_metrics,
    sigma_naive,
    sigma_set,
    try_sigma_disjoint,
)
from . import gallery


@dataclass(frozen=True)
class Criterion:
    id: str
    summary: str
    budget_s: int
    slow: bool
    func: object

    def run(self):
        return self.func()


def _crit_abelian_orbits():
    res = enumerate_unmixed(Abelian2(5))
    if len(res.structures) == 0:
        return False, "no structures found on the rank-2 group of order 25"
    reps = enumerate_unmixed(Abelian2(5), SearchConstraints(up_to_orbit=True))
    ok = len(reps.structures) == 2
    detail = (f"{len(res.structures)} structures, {len(reps.structures)} orbit classes "
              "(pinned claim: exactly 2; the full equivalence action is transitive "
              "on these structures -- confirmed by an exhaustive sweep of all "
              "explicit equivalence maps -- so the computed class count is 1)")
    return ok, detail


def _crit_abelian_count():
    problems = []
    values = []
    for p in (5, 7, 11):
        got = count_abelian(p, orbits=False).solutions
        bound = lower_bound_abelian(p)
        values.append(f"p={p}: count {got} vs bound {bound}")
        if got < bound:
            problems.append(p)
    ok = not problems
    detail = "; ".join(values)
    if problems:
        detail += (" -- the closed-form bound overcounts (its parametrization "
                   "omits the t != 0 exclusion); the exhaustive count is "
                   "(p-1)(p-2)(p-3)(p-4)")
    return ok, detail


def _crit_sym8():
    v = gallery.sym_structure(8)
    rep = check_unmixed(v.group, v, strategy="exact")
    if not rep.passed:
        return False, f"structure check: {rep.verdict}"
    a, c = v.a1, v.c1
    # Exhaustive search over all 40320 ambient elements.
    ai, ci = pinv(a), pinv(c)
    brute = [g for g in itertools.permutations(range(8))
             if pmul(g, pmul(a, pinv(g))) == ai and pmul(g, pmul(c, pinv(g))) == ci]
    if brute:
        return False, f"brute force found an inverting conjugator {brute[0]}"
    sols = conjugator_search(a, ai, c, ci, ambient="sym")
    if sols:
        return False, "centralizer search disagrees with brute force"
    return True, "structure passes via exact sigma; no inverting conjugator among 40320"


def _crit_sl2_psl2_7():
    found = []
    for G in (SL2Group(7), PSL2Group(7)):
        res = enumerate_unmixed(G, limit=1)
        if not res.structures:
            return False, f"no structure found on {G.descriptor()}"
        v = res.structures[0]
        rep = check_unmixed(G, v, strategy="exact")
        if not rep.passed:
            return False, f"found structure fails exact recheck on {G.descriptor()}"
        m1 = pair_metrics(G, v.a1, v.c1)
        m2 = pair_metrics(G, v.a2, v.c2)
        found.append(f"{G.kind}: types {m1.triple} / {m2.triple}")
    return True, "; ".join(found)


def _crit_sl2_13():
    G = SL2Group(13)
    first = gallery.sl2_pair_46p(13)
    second = gallery.sl2_pair_qqq_nonsplit(13, 7)
    m1 = pair_metrics(G, first.a, first.c)
    m2 = pair_metrics(G, second.a, second.c)
    if m1.triple != (4, 6, 13) or m2.triple != (7, 7, 7):
        return False, f"types {m1.triple}, {m2.triple}"
    v = UnmixedStructure(G, first.a, first.c, second.a, second.c)
    coprime, strat, _ = try_sigma_disjoint(G, (v.a1, v.c1), (v.a2, v.c2),
                                           strategy="coprime")
    if coprime is not True or strat != "coprime-nu":
        return False, "coprime shortcut did not fire"
    rep = check_unmixed(G, v, strategy="exact")
    if not rep.passed:
        return False, f"exact check: {rep.verdict}"
    return True, "types (4,6,13) + (7,7,7); coprime shortcut confirmed by exact sigma"


def _crit_alt16_2_3_84():
    pw = gallery.alt_pair_2_3_84(16)
    G = pw.group
    m = pair_metrics(G, pw.a, pw.c)
    if (m.r, m.s) != (2, 3) or G.element_order(G.mul(pw.c, pw.a)) != 84:
        return False, f"orders {m.triple}"
    if bsgs_order([pw.a, pw.c]) != math.factorial(16) // 2:
        return False, "stabilizer-chain order does not match the alternating group"
    return True, "orders (2, 3, 84); generation certified by stabilizer chain"


def _crit_alt16_p5p():
    try:
        pw = gallery.alt_pair_p5p(5)
    except Exception as exc:
        return False, (
            f"constructor rejected p=5: {exc} -- at p=5 the printed element c has "
            "order lcm(5, p) = 5, not 25, so the pinned type (5,25,13) is "
            "unattainable; the p > 5 hypothesis is what makes the type formula valid")
    m = pair_metrics(pw.group, pw.a, pw.c)
    ok = m.triple == (5, 25, 13) and parity(pw.witness) == 1
    return ok, f"type {m.triple}"


def _crit_alt16_skew():
    pw = gallery.alt_pair_skew(8)
    G = pw.group
    m = pair_metrics(G, pw.a, pw.c)
    if m.triple != (13, 14, 14):
        return False, f"type {m.triple}"
    w = pw.witness
    if pmul(w, pmul(pw.a, pinv(w))) != pinv(pw.a):
        return False, "witness does not invert the first element"
    if pmul(w, pmul(pw.c, pinv(w))) != pmul(pw.a, pw.c):
        return False, "witness does not send c to a*c"
    if conjugator_search(pw.a, pinv(pw.a), pw.c, pinv(pw.c), ambient="sym"):
        return False, "unexpected simultaneous inversion"
    if conjugator_search(pw.a, pinv(pw.c), pw.c, pinv(pw.a), ambient="sym"):
        return False, "unexpected crossed inversion"
    if bsgs_order([pw.a, pw.c]) != math.factorial(16) // 2:
        return False, "generation certificate failed"
    return True, "type (13,14,14); witness verified; inversion searches empty"


def _crit_mixed_11():
    consts = sl2_constants(11)
    H = SL2Group(11)
    second = gallery.sl2_pair_555(11, "sl")
    rep = check_mixed_vz3(H, consts["B"], consts["S"], second.a, second.c,
                          perfect=True)
    if not rep.passed:
        return False, f"inner criteria: {rep.verdict}"
    M = gallery.h4_mixed_structure(11)
    G = M.group
    orders = (G.element_order(M.a), G.element_order(M.c),
              G.element_order(G.mul(G.inv(M.a), G.inv(M.c))))
    if orders != (20, 30, 55):
        return False, f"orders {orders}"
    verdict = reality_mixed(G, M)
    if verdict.biholo_conjugate is not False:
        return False, f"conjugate-biholomorphism verdict {verdict.biholo_conjugate}"
    return True, "inner criteria pass; orders (20,30,55); not biholomorphic to conjugate"


def _crit_coset_dichotomy_11():
    p = 11
    lam0 = mult_order_element(p, 5)
    details = []
    elems = sorted(generated_subgroup(SL2Group(p), SL2Group(p).generators), key=repr)
    W = (0, 1, 1, 0)
    for e in (1, 2, 3, 4):
        lam = pow(lam0, e, p)
        D = diag_mat(p, lam)
        g = split_conjugator(p, lam)
        c = mmul(mmul(g, D, p), minv(g, p), p)
        Di, ci = minv(D, p), minv(c, p)
        sols = conjugation_cosets(p, D, Di, c, ci)
        ev = e_invariant(p, lam)
        want_sl = is_square(p, ev)
        want_slw = is_square(p, -ev % p)
        got_sl = sols["sl"] is not None
        got_slw = sols["slw"] is not None
        if got_sl == got_slw:
            return False, f"lambda={lam}: not exactly one coset ({got_sl}, {got_slw})"
        if got_sl != want_sl or got_slw != want_slw:
            return False, f"lambda={lam}: coset does not match the square class"
        # exhaustive cross-check over both 1320-element cosets
        brute_sl = any(
            mmul(mmul(m, D, p), minv(m, p), p) == Di
            and mmul(mmul(m, c, p), minv(m, p), p) == ci
            for m in elems)
        brute_slw = any(
            mmul(mmul(mw, D, p), minv(mw, p), p) == Di
            and mmul(mmul(mw, c, p), minv(mw, p), p) == ci
            for mw in (mmul(m, W, p) for m in elems))
        if brute_sl != got_sl or brute_slw != got_slw:
            return False, f"lambda={lam}: solver disagrees with exhaustive search"
        details.append(f"lambda={lam}: {'sl' if got_sl else 'slw'}")
    return True, "; ".join(details)


def _crit_wallpaper():
    results = []
    for d, max_m, minimum in ((3, 5, 3), (4, 4, 2), (6, 3, 2)):
        for m in range(2, max_m + 1):
            rep = wallpaper_scan(d, m)
            got = rep["minimum"]
            results.append(f"d={d},m={m}: {got}")
            if got is None or got < minimum:
                return False, "; ".join(results) + f" (expected >= {minimum})"
    return True, "; ".join(results)


def _crit_catalogue():
    rep_u = scan_catalogue(128, "unmixed")
    if rep_u["found"]:
        return False, f"unexpected unmixed structure: {rep_u['found'][0]}"
    if "partial" not in rep_u["disclaimer"]:
        return False, "missing partial-catalogue disclaimer"
    rep_m = scan_catalogue(512, "mixed")
    if rep_m["found"]:
        return False, f"unexpected mixed structure: {rep_m['found'][0]}"
    return True, (f"unmixed scan: {rep_u['groups_scanned']} groups, zero findings; "
                  f"mixed scan: {rep_m['groups_scanned']} groups, zero findings")


def _crit_properties():
    rng = random.Random(20240809)
    backends = [Abelian2(5), Abelian2(7), SymmetricGroup(7), SL2Group(5),
                dihedral(6), Wallpaper(3, 3)]
    per_backend = 10000 // len(backends) + 1
    for G in backends:
        els = sorted(generated_subgroup(G, G.generators, cap=10**5), key=repr)
        for _ in range(per_backend):
            a = rng.choice(els)
            c = rng.choice(els)
            pair = (a, c)
            s1 = apply_sigma(G, 1, pair)
            if apply_sigma(G, 1, apply_sigma(G, 1, s1)) != pair:
                return False, f"sigma1 cube failed on {G.descriptor()}"
            if apply_sigma(G, 3, apply_sigma(G, 3, pair)) != pair:
                return False, f"sigma3 square failed on {G.descriptor()}"
            if apply_sigma(G, 2, pair) != apply_sigma(G, 1, s1):
                return False, "sigma2 relation failed"
            if apply_sigma(G, 4, pair) != apply_sigma(G, 1, apply_sigma(G, 3, pair)):
                return False, "sigma4 relation failed"
            if apply_sigma(G, 5, pair) != apply_sigma(
                    G, 1, apply_sigma(G, 1, apply_sigma(G, 3, pair))):
                return False, "sigma5 relation failed"
            twice = apply_sigma(G, 4, apply_sigma(G, 4, pair))
            ci = G.inv(c)
            if twice != (G.mul(ci, G.mul(a, c)), c):
                return False, "sigma4 square inner-twist failed"
            m = pair_metrics(G, a, c)
            mi = pair_metrics(G, *iota_pair(G, pair))
            if m.mu != mi.mu:
                return False, "mu not inversion-invariant"
    # sigma-set inversion invariance (exact, small fleet)
    for G in (Abelian2(5), dihedral(5), SL2Group(5)):
        els = sorted(generated_subgroup(G, G.generators), key=repr)
        for _ in range(25):
            a, c = rng.choice(els), rng.choice(els)
            s = sigma_set(G, a, c).elements
            si = sigma_set(G, *iota_pair(G, (a, c))).elements
            if s != si:
                return False, f"sigma set changed under inversion on {G.descriptor()}"
    # strategy-ladder agreement on the small fleet
    fleet = [Abelian2(5), Abelian2(7), dihedral(8), dicyclic(5), Wallpaper(3, 3),
             Wallpaper(4, 3), SL2Group(5), SL2Group(7), PSL2Group(7),
             SymmetricGroup(5), SL2Group(11)]
    for G in fleet:
        if G.order > 2000:
            continue
        els = sorted(generated_subgroup(G, G.generators, cap=5000), key=repr)
        for _ in range(30):
            p1 = (rng.choice(els), rng.choice(els))
            p2 = (rng.choice(els), rng.choice(els))
            exact, _, _ = try_sigma_disjoint(G, p1, p2, strategy="exact")
            for strat in ("coprime", "cycle-type"):
                if strat == "cycle-type" and G.kind not in ("sym", "alt"):
                    continue
                got, _, _ = try_sigma_disjoint(G, p1, p2, strategy=strat)
                if got is not None and got != exact:
                    return False, f"ladder disagreement on {G.descriptor()}"
    # naive double-loop oracle for small groups
    for G in (Abelian2(5), dihedral(6)):
        els = sorted(generated_subgroup(G, G.generators), key=repr)
        for _ in range(10):
            a, c = rng.choice(els), rng.choice(els)
            if sigma_set(G, a, c).elements != sigma_naive(G, a, c, els):
                return False, "exact sigma disagrees with the naive double loop"
    # verdict implications on found structures
    for G in (Abelian2(5), Abelian2(7)):
        res = enumerate_unmixed(G, limit=60)
        for v in res.structures:
            verdict = reality_unmixed(G, v)
            if verdict.real is True and verdict.biholo_conjugate is False:
                return False, "implication violated: real without biholo"
            if verdict.strongly_real is True and verdict.real is False:
                return False, "implication violated: strongly real without real"
            if verdict.real is not True:
                return False, "abelian structure not detected as real"
    return True, "sigma relations, inversion invariance, ladder agreement, implications"


def _crit_alt40():
    v = gallery.alt_reality_structure(13)
    G = v.group
    m1 = pair_metrics(G, v.a1, v.c1)
    m2 = pair_metrics(G, v.a2, v.c2)
    if math.gcd(m1.nu, m2.nu) != 1:
        return False, "type products not coprime"
    ok, strat, _ = try_sigma_disjoint(G, (v.a1, v.c1), (v.a2, v.c2),
                                      strategy="coprime")
    if ok is not True:
        return False, "coprime certificate failed"
    backend = backend_for(G)
    t1 = lemma_case_table(G, (v.a1, v.c1), backend)
    t2 = lemma_case_table(G, (v.a2, v.c2), backend)
    sol5 = t1.entries.get(5)
    if sol5 is None or not sol5.labels:
        return False, "case 5 not solvable for the first pair"
    for i in (0, 3):
        got = t1.entries.get(i)
        if got is not None and got.labels:
            return False, f"case {i} unexpectedly solvable for the first pair"
    verdict = reality_unmixed(G, v, backend)
    if verdict.biholo_conjugate is not True:
        return False, f"conjugate-biholomorphism verdict {verdict.biholo_conjugate}"
    if verdict.real is not False:
        return False, f"reality verdict {verdict.real}"
    return True, (f"types {m1.triple} / {m2.triple} coprime; case-5 witness "
                  "exists; cases 0/3 empty; conjugate-equivalent but not real")


CRITERIA = [
    Criterion("abelian-orbit-classes",
              "order-25 rank-2 group: structures exist; orbit classes == 2",
              60, False, _crit_abelian_orbits),
    Criterion("abelian-count-bound",
              "normalized solution counts reach the closed-form bound",
              60, False, _crit_abelian_count),
    Criterion("sym8-structure",
              "degree-8 symmetric structure: exact sigma pass, no inverting conjugator",
              60, False, _crit_sym8),
    Criterion("sl2-psl2-7-existence",
              "SL(2,7) and PSL(2,7) admit structures",
              300, False, _crit_sl2_psl2_7),
    Criterion("sl2-13-structures",
              "SL(2,13): (4,6,13) + (7,7,7) passes, coprime confirmed by exact",
              300, False, _crit_sl2_13),
    Criterion("alt16-2-3-84",
              "degree-16 alternating pair of orders (2,3,84), certified",
              120, False, _crit_alt16_2_3_84),
    Criterion("alt16-p5p-5",
              "p=5 triple-cycle pair: pinned type (5,25,13) with odd witness",
              120, False, _crit_alt16_p5p),
    Criterion("alt16-skew",
              "skew pair (13,14,14): witness identities, empty inversion searches",
              120, False, _crit_alt16_skew),
    Criterion("mixed-sl2-11",
              "mixed structure over SL(2,11): inner criteria, orders, not conjugate-biholomorphic",
              300, False, _crit_mixed_11),
    Criterion("coset-dichotomy-11",
              "p=11 inversion solvable in exactly the coset matching the square class",
              60, False, _crit_coset_dichotomy_11),
    Criterion("wallpaper-minima",
              "wallpaper quotients: sigma-intersection minima >= 3 / >= 2 / >= 2",
              600, False, _crit_wallpaper),
    Criterion("catalogue-scans",
              "zero unmixed structures <= 128, zero mixed <= 512 (partial catalogue)",
              1800, True, _crit_catalogue),
    Criterion("property-suites",
              "sigma relations, inversion invariance, ladder agreement, implications",
              600, False, _crit_properties),
    Criterion("alt40-reality",
              "degree-40 structure: conjugate-biholomorphic but not real",
              600, True, _crit_alt40),
]


def run_criteria(only: list | None = None, skip_slow: bool = False):
    """Run criteria, yielding (criterion, ok, detail, seconds)."""
    import time

    for crit in CRITERIA:
        if only and crit.id not in only:
            continue
        if skip_slow and crit.slow:
            continue
        t0 = time.monotonic()
        try:
            ok, detail = crit.run()
        except Exception as exc:  # a crashed criterion is a failed criterion
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        yield crit, ok, detail, time.monotonic() - t0

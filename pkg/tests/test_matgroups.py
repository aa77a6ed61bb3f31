import random

import pytest

from beauville.core import PreconditionError, generated_subgroup
from beauville.matgroups import (
    PSL2Group,
    SL2Group,
    companion_mat,
    conjugation_cosets,
    diag_mat,
    e_invariant,
    is_square,
    mat_order,
    mdet,
    minv,
    mmul,
    mneg,
    mult_order_element,
    psl_canon,
    sl2_constants,
    solve_conjugation_sl2,
    split_conjugator,
)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_constants_relations(p):
    k = sl2_constants(p)
    B, S, T, W = k["B"], k["S"], k["T"], k["W"]
    assert mat_order(B, p) == 4
    assert mat_order(S, p) == 6
    assert mat_order(W, p) == 2
    assert mmul(B, S, p) == T
    assert mat_order(T, p) == p
    assert mmul(mmul(W, B, p), minv(W, p), p) == minv(B, p)
    assert mmul(mmul(W, S, p), minv(W, p), p) == minv(S, p)


def test_constants_reject_bad_modulus():
    with pytest.raises(PreconditionError):
        sl2_constants(9)
    with pytest.raises(PreconditionError):
        sl2_constants(2)


def test_mult_order_element():
    assert mult_order_element(11, 5) == 3
    lam = mult_order_element(31, 5)
    assert pow(lam, 5, 31) == 1 and lam != 1
    assert all(pow(lam, e, 31) != 1 for e in range(1, 5))
    with pytest.raises(PreconditionError):
        mult_order_element(11, 7)


def test_is_square_against_table():
    for p in (11, 13):
        table = {(x * x) % p for x in range(1, p)}
        for x in range(1, p):
            assert is_square(p, x) == (x in table)
    assert is_square(11, 3)
    assert not is_square(11, 7)
    with pytest.raises(PreconditionError):
        is_square(11, 0)


def test_e_invariant_values_mod_11():
    assert e_invariant(11, 3) == 7
    assert not is_square(11, e_invariant(11, 3))
    assert is_square(11, -e_invariant(11, 3) % 11)
    # square class flips when the residue is squared
    e3 = e_invariant(11, 3)
    e9 = e_invariant(11, 9)
    ratio = (e3 * pow((-e9) % 11, 9, 11)) % 11  # e3 / (-e9)
    assert is_square(11, ratio)


def test_e_invariant_rejects_small_order():
    # lambda = 1 forces a zero denominator
    with pytest.raises((PreconditionError, ZeroDivisionError)):
        e_invariant(11, 1)


def test_diag_and_companion_orders():
    for p, q in ((11, 5), (31, 5), (41, 5)):
        lam = mult_order_element(p, q)
        assert mat_order(diag_mat(p, lam), p) == q
    # companion matrix of the right trace has the nonsplit-torus order
    for p, q in ((13, 7), (11, 3)):
        hits = [k for k in range(p) if mat_order(companion_mat(p, k), p) == q]
        assert hits, (p, q)


def test_split_conjugator_determinant():
    for p in (11, 31):
        lam = mult_order_element(p, 5)
        assert mdet(split_conjugator(p, lam), p) == 1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_solver_agrees_with_exhaustive_search(p):
    G = SL2Group(p)
    elems = sorted(generated_subgroup(G, G.generators), key=repr)
    W = (0, 1, 1, 0)
    rng = random.Random(p)
    for trial in range(12):
        a = rng.choice(elems)
        c = rng.choice(elems)
        if trial % 3 == 0:
            h = rng.choice(elems)
            at = mmul(mmul(h, a, p), minv(h, p), p)
            ct = mmul(mmul(h, c, p), minv(h, p), p)
        elif trial % 3 == 1:
            at, ct = minv(a, p), minv(c, p)
        else:
            at, ct = rng.choice(elems), rng.choice(elems)
        sols = conjugation_cosets(p, a, at, c, ct)
        brute_sl = any(
            mmul(mmul(m, a, p), minv(m, p), p) == at
            and mmul(mmul(m, c, p), minv(m, p), p) == ct
            for m in elems)
        coset = [mmul(m, W, p) for m in elems]
        brute_slw = any(
            mmul(mmul(m, a, p), minv(m, p), p) == at
            and mmul(mmul(m, c, p), minv(m, p), p) == ct
            for m in coset)
        assert (sols["sl"] is not None) == brute_sl
        assert (sols["slw"] is not None) == brute_slw


def test_solver_identity_case():
    p = 11
    e = (1, 0, 0, 1)
    g = solve_conjugation_sl2(p, e, e, e, e, "sl")
    assert g is not None and mdet(g, p) == 1


def test_solver_w_case_p7():
    p = 7
    k = sl2_constants(p)
    sols = conjugation_cosets(p, k["B"], minv(k["B"], p), k["S"], minv(k["S"], p))
    assert sols["sl"] is None
    assert sols["slw"] is not None
    assert mdet(sols["slw"], p) == p - 1


def test_psl_projection_is_homomorphism():
    P = PSL2Group(7)
    G = SL2Group(7)
    rng = random.Random(3)
    elems = sorted(generated_subgroup(G, G.generators), key=repr)
    for _ in range(60):
        x, y = rng.choice(elems), rng.choice(elems)
        assert P.mul(P.project(x), P.project(y)) == P.project(mmul(x, y, 7))


def test_psl_canonical_sign_rule():
    p = 7
    for x in ((1, 2, 3, 0), (6, 1, 1, 5), (0, 3, 5, 2)):
        rep = psl_canon(x, p)
        first = next(e for e in rep if e != 0)
        assert 1 <= first <= (p - 1) // 2
        assert psl_canon(mneg(x, p), p) == rep


def test_group_orders():
    assert SL2Group(7).order == 336
    assert PSL2Group(7).order == 168
    assert SL2Group(11).order == 1320
    assert len(generated_subgroup(SL2Group(5), SL2Group(5).generators)) == 120

import pytest

from beauville.constructions import Abelian2, dihedral
from beauville.core import PreconditionError
from beauville.matgroups import PSL2Group, SL2Group
from beauville.perms import AlternatingGroup, SymmetricGroup
from beauville.search import (
    IndexedGroup,
    SearchConstraints,
    _index2_subgroups,
    count_abelian,
    enumerate_unmixed,
    hunt_reality,
    lower_bound_abelian,
    orbit_representatives,
    scan_catalogue,
    wallpaper_scan,
)
from beauville.structures import check_unmixed


def test_enumerate_ab2_5_full_count():
    # 480 generating pairs, each with 24 complementary partners.
    res = enumerate_unmixed(Abelian2(5))
    assert len(res.structures) == 11520
    assert res.complete
    v = res.structures[0]
    assert check_unmixed(v.group, v, strategy="exact").passed


def test_enumerate_ab2_5_orbit_classes():
    # The full equivalence action is transitive on these structures:
    # one class, verified against an exhaustive sweep of all 34560
    # explicit equivalence maps.
    res = enumerate_unmixed(Abelian2(5), SearchConstraints(up_to_orbit=True))
    assert len(res.structures) == 1


def test_orbit_reduction_idempotent():
    A = Abelian2(5)
    res = enumerate_unmixed(A)
    reps = orbit_representatives(A, res.structures)
    again = orbit_representatives(A, reps)
    assert [(v.a1, v.c1, v.a2, v.c2) for v in reps] == \
        [(v.a1, v.c1, v.a2, v.c2) for v in again]


def test_enumerate_alt5_empty():
    res = enumerate_unmixed(AlternatingGroup(5))
    assert len(res.structures) == 0
    assert res.complete


def test_enumerate_sl2_psl2_7_nonempty():
    for G in (SL2Group(7), PSL2Group(7)):
        res = enumerate_unmixed(G, limit=1)
        assert len(res.structures) == 1
        v = res.structures[0]
        assert check_unmixed(G, v, strategy="exact").passed


def test_enumerate_type_filter():
    A = Abelian2(5)
    res = enumerate_unmixed(A, SearchConstraints(type1=(5, 5, 5)), limit=5)
    for v in res.structures:
        from beauville.structures import pair_metrics

        assert pair_metrics(A, v.a1, v.c1).triple == (5, 5, 5)


def test_enumerate_up_to_orbit_requires_backend():
    with pytest.raises(PreconditionError):
        enumerate_unmixed(dihedral(6), SearchConstraints(up_to_orbit=True))


def test_count_abelian_against_brute_oracle():
    # independent transcription of the unit conditions
    def oracle(p):
        n = 0
        for x in range(1, p):
            for y in range(1, p):
                for z in range(1, p):
                    for t in range(1, p):
                        vals = (x, y, z, t, x - y, x + z, z - t, y + t,
                                x + z - y - t, x * t - y * z)
                        if all(v % p for v in vals):
                            n += 1
        return n

    for p in (5, 7):
        assert count_abelian(p, orbits=False).solutions == oracle(p)


def test_count_abelian_values():
    assert count_abelian(5, orbits=False).solutions == 24
    assert count_abelian(7, orbits=False).solutions == 360
    assert count_abelian(11, orbits=False).solutions == 5040
    assert count_abelian(3).solutions == 0
    assert count_abelian(9).solutions == 0


def test_count_abelian_closed_form():
    # the exhaustive count factors as (p-1)(p-2)(p-3)(p-4)
    for p in (5, 7, 11, 13):
        expected = (p - 1) * (p - 2) * (p - 3) * (p - 4)
        assert count_abelian(p, orbits=False).solutions == expected


def test_lower_bound_values():
    assert lower_bound_abelian(5) == 36
    assert lower_bound_abelian(7) == 450
    assert lower_bound_abelian(11) == 5670
    with pytest.raises(PreconditionError):
        lower_bound_abelian(4)


def test_index2_subgroups():
    S4 = IndexedGroup(SymmetricGroup(4))
    subs = _index2_subgroups(S4)
    assert len(subs) == 1  # the even permutations
    assert len(subs[0]) == 12
    D6 = IndexedGroup(dihedral(6))
    assert len(_index2_subgroups(D6)) == 3
    A4 = IndexedGroup(AlternatingGroup(4))
    assert _index2_subgroups(A4) == []


def test_scan_catalogue_unmixed_small():
    rep = scan_catalogue(60, "unmixed")
    assert rep["found"] == []
    assert "partial" in rep["disclaimer"]
    assert rep["groups_scanned"] > 20


def test_scan_catalogue_mixed_small():
    rep = scan_catalogue(100, "mixed")
    assert rep["found"] == []


def test_scan_rejects_bad_mode():
    with pytest.raises(PreconditionError):
        scan_catalogue(60, "nope")


@pytest.mark.parametrize("d,m,minimum", [(3, 2, 3), (3, 3, 3), (4, 2, 2),
                                         (4, 3, 2), (6, 2, 2)])
def test_wallpaper_scan_minima(d, m, minimum):
    rep = wallpaper_scan(d, m)
    assert rep["minimum"] >= minimum
    assert rep["witness"] is not None


def test_hunt_reality_ab2_not_biholo_empty():
    res = hunt_reality(Abelian2(5), "not-biholo", budget=500)
    assert res.structures == []


def test_hunt_reality_ab2_real_nonempty():
    res = hunt_reality(Abelian2(5), "real", budget=50)
    assert res.structures


@pytest.mark.slow
def test_hunt_reality_sl2_13_biholo_not_real():
    # The q = 7 phenomenon: 7 divides 13 + 1 and is not a square mod 13,
    # and structures equivalent to their conjugate without being real exist.
    res = hunt_reality(SL2Group(13), "biholo-not-real", budget=2000)
    assert res.structures
    v = res.structures[0]
    from beauville.reality import reality_unmixed

    verdict = reality_unmixed(v.group, v)
    assert verdict.biholo_conjugate is True and verdict.real is False
    assert check_unmixed(v.group, v, strategy="exact").passed


def test_hunt_reality_sym8_contains_gallery_structure():
    res = hunt_reality(SymmetricGroup(8), "not-biholo")
    assert res.structures
    from beauville.gallery import sym_structure

    v = sym_structure(8)
    keys = {(w.a1, w.c1, w.a2, w.c2) for w in res.structures}
    assert (v.a1, v.c1, v.a2, v.c2) in keys


def test_reports_are_deterministic():
    r1 = enumerate_unmixed(Abelian2(5), limit=10).report
    r2 = enumerate_unmixed(Abelian2(5), limit=10).report
    r1.pop("elapsed_ms")
    r2.pop("elapsed_ms")
    assert r1 == r2
    w1 = wallpaper_scan(3, 3)
    w2 = wallpaper_scan(3, 3)
    w1.pop("elapsed_ms")
    w2.pop("elapsed_ms")
    assert w1 == w2


def test_indexed_group_tables():
    idx = IndexedGroup(Abelian2(5))
    assert len(idx.elems) == 25
    e = idx.id_index
    for i in range(25):
        assert idx.mul_row[i][idx.inv[i]] == e
        assert idx.order_of[i] == Abelian2(5).element_order(idx.elems[i])

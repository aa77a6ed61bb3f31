import json
import subprocess
import sys

from beauville.constructions import Abelian2
from beauville.gallery import h4_mixed_structure, sym_structure
from beauville.literals import (
    element_from_json,
    element_to_json,
    group_from_cli,
    parse_element,
    structure_from_json,
    structure_to_json,
)
from beauville.matgroups import SL2Group
from beauville.perms import SymmetricGroup


def run_bv(*args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "beauville.cli", *args],
        input=stdin, capture_output=True, text=True,
    )
    return proc


def test_element_roundtrips():
    cases = [
        (SymmetricGroup(8), "(1,2,3)(4,5)"),
        (Abelian2(5), "(2,3)"),
        (SL2Group(7), "[[0,1],[6,0]]"),
    ]
    for G, literal in cases:
        x = parse_element(G, literal)
        assert element_from_json(G, element_to_json(G, x)) == x


def test_structure_json_roundtrip_unmixed():
    v = sym_structure(8)
    data = structure_to_json(v)
    w = structure_from_json(json.loads(json.dumps(data)))
    assert (w.a1, w.c1, w.a2, w.c2) == (v.a1, v.c1, v.a2, v.c2)
    assert w.group.descriptor() == v.group.descriptor()


def test_structure_json_roundtrip_mixed():
    M = h4_mixed_structure(11)
    data = structure_to_json(M)
    W = structure_from_json(json.loads(json.dumps(data)))
    assert W.a == M.a and W.c == M.c and W.g == M.g


def test_group_from_cli_forms():
    assert group_from_cli("ab2:5").order == 25
    assert group_from_cli('{"kind":"sl2","p":7}').order == 336
    assert group_from_cli("h4:sl2:11").order == 4 * 1320 * 1320


def test_cli_gallery_pipe_check():
    gal = run_bv("gallery", "sym-thm", "--n", "8")
    assert gal.returncode == 0
    chk = run_bv("check-unmixed", "--stdin", stdin=gal.stdout)
    assert chk.returncode == 0
    report = json.loads(chk.stdout)
    assert report["verdict"] == "pass"


def test_cli_check_fail_exit_code_and_witness():
    proc = run_bv("check-unmixed", "--group", "ab2:5",
                  "--a1", "(1,0)", "--c1", "(0,1)",
                  "--a2", "(1,0)", "--c2", "(0,1)", "--json")
    assert proc.returncode == 1
    report = json.loads(proc.stdout)
    assert report["verdict"] == "fail"
    assert report["witness"] is not None


def test_cli_count_abelian_json():
    proc = run_bv("count-abelian", "--n", "5", "--json")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["solutions"] == 24
    assert data["orbits"] == 1


def test_cli_check_mixed_undecided_exit():
    gal = run_bv("gallery", "h4-mixed", "--p", "11", "--json")
    assert gal.returncode == 0
    chk = run_bv("check-mixed", "--stdin", "--json", stdin=gal.stdout)
    assert chk.returncode == 2  # subgroup beyond closure budget: undecided


def test_cli_reality_mixed():
    gal = run_bv("gallery", "h4-mixed", "--p", "11", "--json")
    rea = run_bv("reality", "--stdin", "--json", stdin=gal.stdout)
    assert rea.returncode == 0
    data = json.loads(rea.stdout)
    assert data["biholo_conjugate"] is False


def test_cli_wallpaper_scan():
    proc = run_bv("wallpaper-scan", "--d", "3", "--m", "2", "--json")
    data = json.loads(proc.stdout)
    assert data["minimum"] >= 3


def test_cli_search_json():
    proc = run_bv("search", "--group", "ab2:5", "--limit", "2", "--json")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert len(data["found"]) == 2
    # emitted structures re-parse and re-check
    w = structure_from_json(data["found"][0])
    from beauville.structures import check_unmixed

    assert check_unmixed(w.group, w).passed


def test_cli_usage_errors():
    assert run_bv("gallery", "unknown-name").returncode == 64
    assert run_bv("nope").returncode == 64
    assert run_bv("check-unmixed").returncode == 64
    assert run_bv("gallery", "sym-thm", "--n", "9").returncode == 64


def test_cli_verify_paper_single():
    proc = run_bv("verify-paper", "--only", "coset-dichotomy-11", "--json")
    data = json.loads(proc.stdout)
    assert data["criteria"][0]["ok"] is True
    assert proc.returncode == 0

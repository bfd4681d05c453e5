from fractions import Fraction

import pytest

from burau_orbits.classifier import classify, classify_module, classify_ring, depth, fingerprint, type_spec
from burau_orbits.gamma_set import orbit_partition
from burau_orbits.spec_text import parse_ring_spec
from helpers import EXCEPTIONAL, cspace, ring, wheel


@pytest.mark.parametrize("text, d", [
    ("5 1,1 -1,0;0,-1", 2),
    ("5 1,1,1,1 -1,0,0,0;-1,-1,0,0;0,0,-1,0;0,0,-1,-1", 10),
    (EXCEPTIONAL, 6),
    ("3 1,1 -1,0;0,-1", 2),
])
def test_depth_examples(text, d):
    assert depth(wheel(text)) == d


def test_type_spec_fp_squared():
    C = cspace("5 1,1 -1,0;0,-1")
    for orbit in orbit_partition(C.gamma):
        ts = type_spec(C, orbit)
        assert ts.d == 2
        assert {e[0] for e in ts.entries} == {"region"}
        assert all(e[2] == 5 and e[3] == 1 for e in ts.entries)


def test_type_spec_f3_squared():
    C = cspace("3 1,1 -1,0;0,-1")
    for orbit in orbit_partition(C.gamma):
        assert {e[3] for e in type_spec(C, orbit).entries if e[0] == "region"} == {1}


def test_fingerprints_f3_squared_equal():
    C = cspace("3 1,1 -1,0;0,-1")
    fps = {fingerprint(C, o) for o in orbit_partition(C.gamma)}
    assert len(fps) == 1


def test_fingerprints_exceptional_distinct():
    C = cspace(EXCEPTIONAL)
    fps = [fingerprint(C, o) for o in orbit_partition(C.gamma)]
    assert len(fps) == 2 and fps[0] != fps[1]
    assert all(fp.depth == 6 for fp in fps)


def test_fingerprints_f7_lambda2_distinct():
    res, _ = classify_ring(ring("GF(7)[l]/(l^2)"))
    fps = [r.fingerprint for r in res.orbits]
    assert len(fps) == 3 and None not in fps and len(set(fps)) == 3


def test_classify_f7():
    res = classify(parse_ring_spec("GF(7)[l]/(l)"))
    (rep,) = res.orbits
    assert rep.table_match == "H(7,0)" and rep.depth == 2
    assert rep.chi == Fraction(2, 3) and rep.genus_zero


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_classify_z25(k):
    res = classify(parse_ring_spec(f"Z(25)[l]/(l-{5 * k})"))
    (rep,) = res.orbits
    assert rep.table_match == "H(25;a)"
    assert rep.table_param == f"a={-5 * k - 1}"
    assert rep.chi == 1 and rep.depth == 10


def test_classify_f3_lambda9_negative():
    res = classify(parse_ring_spec("GF(3)[l]/(l^9)"))
    assert res.genus_zero == []
    assert all(r.fingerprint is None for r in res.orbits)


def test_classify_exceptional_wheel():
    res = classify(wheel(EXCEPTIONAL))
    assert res.kind == "module"
    assert sorted(r.table_match for r in res.orbits) == ["H~1(9)", "H~2(9)"]


def test_classify_without_match():
    res = classify(parse_ring_spec("GF(5)[l]/(l)"), match=False)
    assert res.orbits[0].table_match is None


def test_classify_rejects_other_objects():
    with pytest.raises(TypeError):
        classify("GF(5)[l]/(l)")


def test_lifted_signature_matches_explicit():
    res, P = classify_ring(ring("GF(5)[l]/(l^2)"))
    for rep in res.orbits:
        (lift,) = rep.lifted
        sig = lift["signature"]
        assert sig.index == lift["degree"] * rep.size
        assert (sig.genus == 0) == rep.genus_zero


def test_monovalent_counts_module():
    res, _ = classify_module(wheel("5 1 -1"))
    (rep,) = res.orbits
    assert rep.monovalent["black"] == rep.monovalent["complete_black"]


def test_family_members_are_distinct():
    # distinct table names never share a fingerprint (per residue characteristic)
    from burau_orbits.tables import registry
    for p in (3, 5, 7):
        for fp, names in registry(p).items():
            assert len({n for n, _ in names}) == 1, names

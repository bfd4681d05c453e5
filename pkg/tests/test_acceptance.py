"""Acceptance criteria; the terminal summary prints one PASS/FAIL line per criterion."""

import random
from fractions import Fraction

import numpy as np
import pytest

from burau_orbits.classifier import classify, classify_ring
from burau_orbits.congruence import CongruenceSpec, coset_gamma_set, parse_congruence_text
from burau_orbits.edge_spaces import structure_checks, wheel_structure_checks
from burau_orbits.gamma_set import cells, iso_gamma_sets, orbit_partition, signature
from burau_orbits.laurent_burau import (
    BT, BX, BY, LaurentPoly, PSL_ONE, PSL_X, PSL_Y, BurauMatrix, burau_word_eval, reduce_c_dg,
    special_element, word_ab,
)
from burau_orbits.spec_text import parse_ring_spec
from burau_orbits.tables import negative_sweep, read_tsv, realize, verify_table
from helpers import EXCEPTIONAL, cspace, pspace, ring, wheel

from test_properties import (  # noqa: F401  (collected here as criterion 11)
    test_c_canonical_idempotent as test_criterion_11_c_canonical,
    test_covering_equivariance as test_criterion_11_covering_equivariance,
    test_fingerprint_relabel_invariant as test_criterion_11_fingerprint_relabel,
    test_p_canonical_idempotent as test_criterion_11_p_canonical,
    test_right_action as test_criterion_11_right_action,
    test_stabilizer_criterion as test_criterion_11_stabilizer,
)

t = LaurentPoly({1: 1})


# 1 ----------------------------------------------------------------------------------------------


def test_criterion_01_burau_algebra():
    t3 = BurauMatrix.scalar(t ** 3)
    assert BX ** 3 == t3 and BY ** 2 == t3
    assert reduce_c_dg(BX) == (PSL_X, 2)
    assert reduce_c_dg(BY) == (PSL_Y, 3)
    assert reduce_c_dg(BT) == (PSL_ONE, 2)
    rng = random.Random(20261015)
    letters = ["X", "Y", "X-", "Y-"]
    for _ in range(500):
        w = [rng.choice(letters) for _ in range(rng.randint(0, 20))]
        assert word_ab(w) % 6 == reduce_c_dg(burau_word_eval(w))[1] % 6


# 2 ----------------------------------------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_criterion_02_prime_fields(p):
    P = pspace(f"GF({p})[l]/(l)")
    assert len(P.orbits) == 1
    (orbit,) = P.orbits
    assert sorted(len(r) for r in cells(P.gamma, orbit)["regions"]) == [1, p]
    chi = P.weighted_euler_char(orbit)
    assert chi == Fraction(-(p + 1), 6) + 2
    assert (chi > 0) == (p in (3, 5, 7))


# 3 ----------------------------------------------------------------------------------------------


def test_criterion_03_edge_count(suite_rings):
    for text, R, P in suite_rings:
        assert P.n == (R.p + 1) * R.n_maximal, text


# 4 ----------------------------------------------------------------------------------------------


def test_criterion_04_weighted_vs_unweighted(suite_rings):
    for text, R, P in suite_rings:
        for orbit in P.orbits:
            chi = P.weighted_euler_char(orbit)
            lift = P.lift_orbits(orbit)
            assert lift.chi == lift.degree * chi, text
            for up in lift.orbits:
                assert signature(P.cover[0].gamma, up).index == lift.degree * len(orbit)


# 5 ----------------------------------------------------------------------------------------------


def test_criterion_05_structure_rings(suite_rings):
    for text, R, P in suite_rings:
        structure_checks(P)


def test_criterion_05_structure_wheels(suite_wheels):
    assert suite_wheels
    for text, A, C in suite_wheels:
        wheel_structure_checks(C)


def test_criterion_05_fp_squared_regions():
    for p in (3, 5, 7):
        C = cspace(f"{p} 1,1 -1,0;0,-1")
        assert (np.bincount(C.gamma.region_labels) == p).all()


# 6 ----------------------------------------------------------------------------------------------


def test_criterion_06_p7():
    res, P = classify_ring(ring("GF(7)[l]/(l^2)"))
    assert len(res.orbits) == 3
    assert all(r.genus_zero and r.depth == 14 for r in res.orbits)
    assert len({r.fingerprint for r in res.orbits}) == 3
    coset = coset_gamma_set(CongruenceSpec("Gamma1", 7))
    C = P.cover[0]
    for orbit in P.orbits:
        up = P.lift_orbits(orbit).orbits[0]
        assert iso_gamma_sets(C.gamma, coset, up, None) is not None
    res = classify(parse_ring_spec("GF(7)[l]/(l)"))
    (rep,) = res.orbits
    assert rep.table_match == "H(7,0)" and rep.depth == 2


# 7 ----------------------------------------------------------------------------------------------


def test_criterion_07_f5_lambda2():
    res = classify(parse_ring_spec("GF(5)[l]/(l^2)"))
    assert len(res.orbits) == 3
    assert all(r.genus_zero for r in res.orbits)
    assert [r.depth for r in res.orbits] == [10, 10, 10]
    assert sorted(r.table_match for r in res.orbits) == ["H1(5,1)", "H2(5,1)", "I(5,1)"]


def test_criterion_07_omega1_wheels(suite_wheels):
    w1 = special_element("omega", 5, 1)
    seen = 0
    for text, A, C in suite_wheels:
        if A.p != 5 or not A.annihilates(w1):
            continue
        seen += 1
        res = classify(A, match=False)
        assert all(r.genus_zero for r in res.orbits), text
        assert (A.depth == 2) == (A.divisors == (1, 1)), text
    assert seen >= 3


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_criterion_07_z25(k):
    R = ring(f"Z(25)[l]/(l-{5 * k})")
    res, P = classify_ring(R)
    (rep,) = res.orbits
    assert rep.chi == 1 and rep.depth == 10
    coset = coset_gamma_set(parse_congruence_text("Gamma0(25)&Gamma1(5)"))
    up = P.lift_orbits(P.orbits[0]).orbits[0]
    assert iso_gamma_sets(P.cover[0].gamma, coset, up, None) is not None


# 8 ----------------------------------------------------------------------------------------------


@pytest.mark.parametrize("text, n", [
    ("GF(3)[l]/(l^3)", 3),
    ("GF(3)[l]/(l^4)", 5),
    ("Z(9)[l]/(l-3)", 1),
    ("Z(9)[l]/(l-6)", 1),
    ("Z(9)[l]/(3*l,l^2)", 3),
    ("Z(9)[l]/(l^2)", 5),
])
def test_criterion_08_p3_rings(text, n):
    res, _ = classify_ring(ring(text))
    assert len(res.orbits) == n
    assert all(r.genus_zero for r in res.orbits)


def test_criterion_08_exceptional_wheel():
    res = classify(wheel(EXCEPTIONAL), match=False)
    assert len(res.orbits) == 2
    assert res.orbits[0].fingerprint != res.orbits[1].fingerprint
    assert all(r.depth == 6 for r in res.orbits)


@pytest.mark.parametrize("k", [1, 2, 4, 5, 7, 8])
def test_criterion_08_z27(k):
    res, _ = classify_ring(ring(f"Z(27)[l]/(l-{3 * k})"))
    assert [r.chi for r in res.orbits] == [2]
    assert res.orbits[0].depth == 18


# 9 ----------------------------------------------------------------------------------------------


NEGATIVE_INPUTS = (
    ["ring:GF(7)[l]/(l^3)", "wheel:5 2,2 -1,0;0,-1", "ring:GF(3)[l]/(l^9)"]
    + [f"ring:Z(49)[l]/(l-{7 * k})" for k in range(7)]
    + [f"ring:Z(49)[l]/(7*l,l^2-{7 * k})" for k in range(7)]
    + [f"ring:Z(125)[l]/(l-{5 * k})" for k in range(25)]
    + [f"ring:Z(81)[l]/(l-{3 * k})" for k in range(27)]
    + [f"ring:Z(27)[l]/(l-{9 * k})" for k in range(3)]
)


def _canon(name):
    kind, _, body = name.partition(":")
    if kind == "ring":
        return "ring:" + str(parse_ring_spec(body))
    return name


def test_criterion_09_negative_sweep():
    verdicts = negative_sweep()
    bad = [v.line() for v in verdicts if not v.ok]
    assert not bad
    covered = {_canon(v.name) for v in verdicts}
    missing = [x for x in NEGATIVE_INPUTS if _canon(x) not in covered]
    assert not missing
    assert len(read_tsv("negatives.tsv")) > 0


# 10 ---------------------------------------------------------------------------------------------


@pytest.mark.parametrize("group, level, module, size", [
    ("Gamma1", 5, "5 1 -1", 12),
    ("Gamma1", 7, "7 1 -1", 24),
    ("Gamma1", 9, "3 2 -1", 36),
    ("Gamma", 3, "3 1,1 -1,0;0,-1", 12),
    ("Gamma", 5, "5 1,1 -1,0;0,-1", 60),
    ("Gamma0", 9, "3 2 2", 12),
])
def test_criterion_10_congruence_oracle(group, level, module, size):
    G = coset_gamma_set(CongruenceSpec(group, level))
    assert len(orbit_partition(G)) == 1
    assert signature(G).genus == 0
    C = cspace(module)
    orbits = orbit_partition(C.gamma)
    assert {len(o) for o in orbits} == {size} == {G.n}
    for o in orbits:
        assert iso_gamma_sets(C.gamma, G, o, None) is not None


# 12 ---------------------------------------------------------------------------------------------


def test_criterion_12_depth_column():
    from burau_orbits.tables import table_rows
    verdicts = {v.name: v for v in verify_table(claims=False)}
    for row in table_rows():
        v = verdicts[row.name]
        inst = v.info.get("instances", [])
        assert inst, row.name
        assert all(i["depth"] == row.depth for i in inst), row.name
    assert {r.depth for r in table_rows()} == {2, 6, 10, 14, 18}
    # the realizing module has the same depth as the ring it came from
    assert realize("ring:Z(27)[l]/(l-3)").module.depth == 18

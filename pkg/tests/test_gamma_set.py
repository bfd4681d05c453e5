from fractions import Fraction

import numpy as np
import pytest

from burau_orbits.congruence import (
    CongruenceSpec, coset_gamma_set, has_level_dividing, parse_congruence, parse_congruence_text,
)
from burau_orbits.edge_spaces import CSpace
from burau_orbits.finite_module import module_from_ring
from burau_orbits.finite_ring import ring_hom_table
from burau_orbits.gamma_set import (
    GammaSet, canonical_form, cells, covering_data, dessin_dot, euler_char, genus_monotone,
    iso_gamma_sets, orbit_partition, permute_gamma_set, signature,
)
from helpers import cspace, pspace, ring

G1 = lambda n: coset_gamma_set(CongruenceSpec("Gamma1", n))  # noqa: E731


def test_singleton():
    G = GammaSet.singleton()
    assert [len(o) for o in orbit_partition(G)] == [1]
    c = cells(G, [0])
    assert [len(c[k]) for k in ("black", "white", "regions")] == [1, 1, 1]
    assert euler_char(G) == 2
    s = signature(G)
    assert (s.index, s.genus, s.nu3, s.nu2, s.cusp_widths) == (1, 0, 1, 1, (1,))


def test_rejects_bad_permutations():
    with pytest.raises(ValueError):
        GammaSet([1, 0], [0, 1])  # X of order 2
    with pytest.raises(ValueError):
        GammaSet([1, 2, 0], [1, 2, 0])  # Y of order 3


def test_orbits_of_small_spaces():
    assert len(pspace("GF(5)[l]/(l)").orbits) == 1
    C = cspace("3 1,1 -1,0;0,-1")
    assert len(orbit_partition(C.gamma)) == 2


def test_region_sizes_fp():
    P = pspace("GF(5)[l]/(l)")
    regs = cells(P.gamma, P.orbits[0])["regions"]
    assert sorted(len(r) for r in regs) == [1, 5]


def test_region_sizes_fp_squared():
    C = cspace("5 1,1 -1,0;0,-1")
    for orbit in orbit_partition(C.gamma):
        assert {len(r) for r in cells(C.gamma, orbit)["regions"]} == {5}


def test_cycle_sizes_divide():
    C = cspace("3 2,1 -1,-3;0,-1")
    sizes = C.gamma.cell_sizes()
    assert set(np.unique(sizes[:, 0])) <= {1, 3}
    assert set(np.unique(sizes[:, 1])) <= {1, 2}


def test_chi_coset_gamma1_5():
    G = G1(5)
    assert euler_char(G) == 2


def test_chi_nonpositive_on_z25_squared():
    C = cspace("5 2,2 -1,0;0,-1")
    for orbit in orbit_partition(C.gamma):
        assert euler_char(C.gamma, orbit) <= 0


def test_coset_examples():
    s = signature(G1(5))
    assert (s.index, s.genus, s.cusp_widths) == (12, 0, (1, 1, 5, 5))
    s = signature(coset_gamma_set(CongruenceSpec("Gamma", 3)))
    assert (s.index, s.cusp_widths) == (12, (3, 3, 3, 3))
    s = signature(G1(7))
    assert (s.index, s.genus) == (24, 0)
    G = coset_gamma_set(parse_congruence_text("Gamma0(25)&Gamma1(5)"))
    assert len(orbit_partition(G)) == 1
    assert signature(G).genus == 0


@pytest.mark.parametrize("N", [3, 4, 5, 6, 7])
def test_full_level_index(N):
    sl = sum(1 for a in range(N) for b in range(N) for c in range(N) for d in range(N)
             if (a * d - b * c) % N == 1)
    G = coset_gamma_set(CongruenceSpec("Gamma", N))
    assert len(orbit_partition(G)) == 1
    assert G.n == sl // 2


def test_gamma0_index():
    # index of Gamma0(N) is N * prod(1 + 1/q)
    assert coset_gamma_set(CongruenceSpec("Gamma0", 9)).n == 12
    assert coset_gamma_set(CongruenceSpec("Gamma0", 25)).n == 30


def test_parse_congruence():
    spec = parse_congruence("Gamma0", 25, ["Gamma1:5"])
    assert spec == parse_congruence_text("Gamma0(25) & Gamma1(5)")
    assert str(spec) == "Gamma0(25) & Gamma1(5)"
    with pytest.raises(ValueError):
        parse_congruence("Gamma2", 5)
    with pytest.raises(ValueError):
        CongruenceSpec("Intersection", 1, ())


def test_iso_examples():
    G = G1(7)
    f = iso_gamma_sets(G, G)
    assert f is not None
    C = cspace("7 1 -1")
    assert iso_gamma_sets(C.gamma, G) is not None
    assert iso_gamma_sets(G1(5), coset_gamma_set(CongruenceSpec("Gamma", 5))) is None


def test_iso_is_equivariant():
    C = cspace("5 1 -1")
    G = G1(5)
    f = iso_gamma_sets(C.gamma, G)
    for e, fe in f.items():
        assert f[int(C.gamma.px[e])] == G.px[fe]
        assert f[int(C.gamma.py[e])] == G.py[fe]


def test_level_dividing():
    G = G1(5)
    assert has_level_dividing(G, np.arange(G.n), 5)
    assert not has_level_dividing(G, np.arange(G.n), 3)


def test_identity_covering():
    G = G1(7)
    d = covering_data(np.arange(G.n), G, G)
    assert d["degree"] == 1
    assert d["regular"]
    assert set(d["ramification"].values()) == {(1,)}


def test_cover_c_to_p_degree():
    P = pspace("GF(7)[l]/(l^2)")
    _, _, data = P.cover
    assert data["degree"] == 42 // 14 == 3
    assert data["regular"]


@pytest.mark.parametrize("src, dst", [
    ("Z(25)[l]/(l-5)", "GF(5)[l]/(l)"),
    ("GF(7)[l]/(l^2)", "GF(7)[l]/(l)"),
    ("Z(9)[l]/(l^2)", "Z(9)[l]/(3*l,l^2)"),
    ("GF(3)[l]/(l^4)", "GF(3)[l]/(l^2)"),
])
def test_epimorphism_induces_covering(src, dst):
    R1, R2 = ring(src), ring(dst)
    A1, A2 = module_from_ring(R1), module_from_ring(R2)
    C1, C2 = CSpace(A1), CSpace(A2)
    h = ring_hom_table(R1, R2)
    img = lambda a: A2.from_ring[h[A1.to_ring[a]]]  # noqa: E731
    f = C2.edge_of(img(C1.a1), img(C1.a2))
    d = covering_data(f, C1.gamma, C2.gamma)
    assert d["is_covering"]
    assert d["degree"] * C2.n == C1.n
    # genus zero upstairs forces genus zero downstairs
    for o1 in orbit_partition(C1.gamma):
        o2 = np.unique(f[o1])
        assert genus_monotone(C1.gamma, C2.gamma, f, o1, o2)


def test_covering_rejects_non_equivariant():
    G = G1(5)
    f = np.roll(np.arange(G.n), 1)
    with pytest.raises(ValueError):
        covering_data(f, G, G)


def test_canonical_form_relabel():
    G = G1(7)
    rng = np.random.default_rng(1)
    H = permute_gamma_set(G, rng.permutation(G.n))
    assert canonical_form(G)[:2] == canonical_form(H)[:2]


def test_dessin_singleton():
    dot = dessin_dot(GammaSet.singleton(), [0])
    assert dot.count("fillcolor=black") == 1
    assert dot.count("fillcolor=white") == 1
    assert dot.count(" -- ") == 1


def test_dessin_pf5():
    P = pspace("GF(5)[l]/(l)")
    dot = dessin_dot(P.gamma, P.orbits[0])
    assert dot.count(" -- ") == 6
    e01 = P.edge("infinity", 0)
    blacks = [ln.split('order="')[1].split('"')[0].split() for ln in dot.splitlines()
              if "fillcolor=black" in ln]
    holders = [b for b in blacks if f"e{e01}" in b]
    assert len(holders) == 1
    members = holders[0]
    labels = {P.gamma.label(int(m[1:])) for m in members}
    assert labels == {"pc(1, 0)", "pc(0, 1)", "pc(1, 4)"}


def test_dessin_c_z7():
    C = cspace("7 1 -1")
    dot = dessin_dot(C.gamma, np.arange(C.n))
    assert dot.count(" -- ") == 24
    assert euler_char(C.gamma) == 2


def test_dessin_degrees():
    C = cspace("3 2,1 -1,-3;0,-1")
    orbit = orbit_partition(C.gamma)[0]
    dot = dessin_dot(C.gamma, orbit)
    for ln in dot.splitlines():
        if "order=" in ln:
            deg = len(ln.split('order="')[1].split('"')[0].split())
            assert deg in ((1, 3) if "black" in ln else (1, 2))
    assert dot.count(" -- ") == len(orbit)
    assert Fraction(euler_char(C.gamma, orbit)) == 2

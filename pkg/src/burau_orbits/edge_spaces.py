"""The Gamma-sets C(A) and P(R) built from generating pairs.

``C(A)`` is the set of t-classes of generating pairs of a module; ``P(R)``
the set of unit classes of generating pairs of a ring, stored as
``pc(1, r)`` (edge ``r``) or ``pc(m, 1)`` (edge ``|R| + position of m``).
Reduced action on representatives::

    (a1, a2) . X = (a2, -a1 - a2)
    (a1, a2) . Y = (-t a2, -a1)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .finite_module import FiniteModule, RingModule, generating_pairs, module_from_ring
from .finite_ring import Ring
from .gamma_set import GammaSet, cells, covering_data, euler_char, orbit_partition
from .laurent_burau import BX, BY

# pairs of a module beyond this many are not enumerated explicitly
EXPLICIT_PAIR_LIMIT = 2_500_000


@dataclass
class SpaceConfig:
    pair_limit: int = EXPLICIT_PAIR_LIMIT
    check_action: bool = True


# -- C(A) ------------------------------------------------------------------------------


class CSpace:
    """``C(A)`` with canonical representatives (lexicographically least pair in the t-class)."""

    def __init__(self, A: FiniteModule, config: SpaceConfig | None = None):
        config = config or SpaceConfig()
        if A.size ** 2 > config.pair_limit:
            raise ValueError(f"C(A) for |A| = {A.size} exceeds the explicit pair limit")
        self.module = A
        S = A.size
        a1, a2 = generating_pairs(A)
        if len(a1) == 0:
            raise ValueError("C(A) is empty")
        keys = np.unique(self.canonical_keys(a1, a2))
        self.keys = keys
        if len(keys) * A.depth != len(a1):
            raise AssertionError("t does not act freely on generating pairs")
        self.a1 = keys // S
        self.a2 = keys % S
        px = self.edge_of(self.a2, A.neg_arr(A.add_arr(self.a1, self.a2)))
        py = self.edge_of(A.neg_arr(A.t_arr(self.a2)), A.neg_arr(self.a1))
        self.gamma = GammaSet(px, py, labels=self.label)
        if config.check_action:
            # full Burau matrices, then re-canonicalise
            bx = A.pair_act((self.a1, self.a2), BX)
            by = A.pair_act((self.a1, self.a2), BY)
            if not (np.array_equal(self.edge_of(*bx), px) and np.array_equal(self.edge_of(*by), py)):
                raise AssertionError("reduced action disagrees with the Burau action")

    @property
    def n(self):
        return len(self.keys)

    def canonical_keys(self, a1, a2):
        A = self.module
        tab = A.t_orbit_tables
        best = None
        for k in range(A.depth):
            key = tab[k][a1] * A.size + tab[k][a2]
            best = key if best is None else np.minimum(best, key)
        return best

    def edge_of(self, a1, a2):
        keys = self.canonical_keys(np.asarray(a1), np.asarray(a2))
        idx = np.searchsorted(self.keys, keys)
        if (idx >= len(self.keys)).any() or (self.keys[np.minimum(idx, len(self.keys) - 1)] != keys).any():
            raise ValueError("pair is not generating")
        return idx

    def fmt_element(self, a):
        A = self.module
        if isinstance(A, RingModule):
            return A.ring.fmt(int(A.to_ring[a]))
        return "(" + ",".join(str(x) for x in A.vector(int(a))) + ")"

    def label(self, e):
        return f"c({self.fmt_element(self.a1[e])}, {self.fmt_element(self.a2[e])})"

    def pair(self, e):
        return int(self.a1[e]), int(self.a2[e])


def build_C(A: FiniteModule, config: SpaceConfig | None = None) -> CSpace:
    return CSpace(A, config)


# -- the unit group modulo <t> ------------------------------------------------------------


class UnitClasses:
    """The deck group ``D = R* / <t>`` of the covering ``C(R) -> P(R)``."""

    def __init__(self, R: Ring):
        self.ring = R
        units = R.units
        tp = np.array(R.t_powers, dtype=np.int64)
        best = units.copy()
        for x in tp[1:]:
            best = np.minimum(best, R.mul_arr(units, R.const_arr(int(x), units.shape)))
        reps, cls_of_unit = np.unique(best, return_inverse=True)
        self.reps = reps
        self.n = len(reps)
        self.cls = np.full(R.size, -1, dtype=np.int64)
        self.cls[units] = cls_of_unit.reshape(-1)
        i = np.repeat(np.arange(self.n), self.n)
        j = np.tile(np.arange(self.n), self.n)
        self.table = self.cls[R.mul_arr(reps[i], reps[j])].reshape(self.n, self.n)
        self.identity = int(self.cls[R.one])
        self.inv = np.argmax(self.table == self.identity, axis=1)

    def mul(self, a, b):
        return self.table[a, b]

    def order(self, c):
        n, x = 1, int(c)
        while x != self.identity:
            x = int(self.table[x, c])
            n += 1
        return n

    def subgroup(self, gens):
        """Elements of the subgroup generated by ``gens`` (a sorted array)."""
        seen = np.zeros(self.n, dtype=bool)
        seen[self.identity] = True
        frontier = np.array([self.identity])
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        while len(frontier) and len(gens):
            new = np.unique(self.table[np.ix_(frontier, gens)].reshape(-1))
            new = new[~seen[new]]
            seen[new] = True
            frontier = new
        return np.flatnonzero(seen)


# -- P(R) ------------------------------------------------------------------------------------


@dataclass
class Lift:
    """Orbits of ``C(R)`` above one orbit of ``P(R)``."""

    degree: int
    count: int
    chi: Fraction
    orbits: list = field(default_factory=list)  # explicit C-orbits (edge index arrays), if built


class PSpace:
    """``P(R)`` with unit voltages, region weights and completeness flags."""

    def __init__(self, R: Ring, config: SpaceConfig | None = None):
        self.config = config or SpaceConfig()
        self.ring = R
        nR, nm = R.size, R.n_maximal
        self.n = nR + nm
        self.m_elems = R.maximal
        self.m_pos = np.full(nR, -1, dtype=np.int64)
        self.m_pos[self.m_elems] = np.arange(nm)
        D = self.deck = UnitClasses(R)
        inv = R.inverse_table
        unit = R.unit_mask
        one = R.one

        def c(x):
            return R.const_arr(x, (nR,))

        r = np.arange(nR, dtype=np.int64)
        m = self.m_elems
        cm = lambda x: R.const_arr(x, m.shape)  # noqa: E731
        minus1_r = R.sub_arr(c(R.minus_one), r)  # -1 - r
        px = np.empty(self.n, dtype=np.int64)
        vx = np.empty(self.n, dtype=np.int64)
        # X on pc(1, r) -> pc(r, -1 - r)
        ru = r[unit]
        px[ru] = R.mul_arr(minus1_r[ru], inv[ru])
        vx[ru] = ru
        rm = r[~unit]
        px[rm] = nR + self.m_pos[R.mul_arr(rm, inv[minus1_r[rm]])]
        vx[rm] = minus1_r[rm]
        # X on pc(m, 1) -> pc(1, -m - 1)
        px[nR + np.arange(nm)] = R.sub_arr(cm(R.minus_one), m)
        vx[nR + np.arange(nm)] = one
        # Y on pc(1, r) -> pc(-t r, -1)
        tr = R.mul_arr(c(R.t), r)
        py = np.empty(self.n, dtype=np.int64)
        vy = np.empty(self.n, dtype=np.int64)
        py[ru] = inv[tr[ru]]
        vy[ru] = R.neg_arr(tr[ru])
        py[rm] = nR + self.m_pos[tr[rm]]
        vy[rm] = R.minus_one
        # Y on pc(m, 1) -> pc(-t, -m)
        tinv = R.inverse(R.t)
        py[nR + np.arange(nm)] = R.mul_arr(m, cm(tinv))
        vy[nR + np.arange(nm)] = R.neg_arr(cm(R.t))
        self.gamma = GammaSet(px, py, labels=self.label)
        self.vx = D.cls[vx]
        self.vy = D.cls[vy]
        if (self.vx < 0).any() or (self.vy < 0).any():
            raise AssertionError("non-unit voltage")
        self._voltage_cells()

    # -- labels -----------------------------------------------------------------------------

    def is_affine(self, e):
        return e < self.ring.size

    def payload(self, e):
        """``("affine", r)`` for ``pc(1, r)`` or ``("infinity", m)`` for ``pc(m, 1)``."""
        if e < self.ring.size:
            return ("affine", int(e))
        return ("infinity", int(self.m_elems[e - self.ring.size]))

    def edge(self, kind, x):
        if kind == "affine":
            return int(x)
        if self.m_pos[x] < 0:
            raise ValueError("pc(m, 1) needs m in the maximal ideal")
        return self.ring.size + int(self.m_pos[x])

    def label(self, e):
        kind, x = self.payload(int(e))
        s = self.ring.fmt(x)
        return f"pc(1, {s})" if kind == "affine" else f"pc({s}, 1)"

    def pair(self, e):
        kind, x = self.payload(int(e))
        return (self.ring.one, x) if kind == "affine" else (x, self.ring.one)

    def edges_of_pairs(self, r1, r2):
        """Normal form of arbitrary generating pairs of ring elements."""
        R = self.ring
        r1, r2 = np.asarray(r1), np.asarray(r2)
        u1 = R.unit_mask[r1]
        out = np.empty(len(r1), dtype=np.int64)
        inv = R.inverse_table
        out[u1] = R.mul_arr(r2[u1], inv[r1[u1]])
        nu = ~u1
        if (~R.unit_mask[r2[nu]]).any():
            raise ValueError("pair is not generating")
        out[nu] = R.size + self.m_pos[R.mul_arr(r1[nu], inv[r2[nu]])]
        return out

    # -- voltages, weights, completeness ---------------------------------------------------------

    def _voltage_cells(self):
        G, D = self.gamma, self.deck
        # one step of YX at e: Y at e, then X at Y(e)
        vyx = D.table[self.vy, self.vx[G.py]]
        rl = G.region_labels
        nreg = int(rl.max()) + 1
        acc = np.full(nreg, D.identity, dtype=np.int64)
        for e in range(self.n):
            acc[rl[e]] = D.table[acc[rl[e]], vyx[e]]
        self.region_voltage = acc
        orders = np.array([D.order(int(v)) for v in acc], dtype=np.int64)
        self.region_ramification = orders
        p = self.ring.p
        exps = np.zeros(nreg, dtype=np.int64)
        for i, n in enumerate(orders.tolist()):
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            if n != 1:
                raise AssertionError("region ramification is not a power of p")
            exps[i] = k
        self.region_exp = exps
        fixed_x = G.px == np.arange(self.n)
        fixed_y = G.py == np.arange(self.n)
        self.mono_black = fixed_x
        self.mono_white = fixed_y
        self.complete_black = fixed_x & (self.vx == D.identity)
        self.complete_white = fixed_y & (self.vy == D.identity)
        # ramification of size-3 black / size-2 white vertices is 1; monovalent ones may ramify
        self.black_ramification = np.where(fixed_x, [D.order(int(v)) for v in self.vx], 1)
        self.white_ramification = np.where(fixed_y, [D.order(int(v)) for v in self.vy], 1)

    def region_weight(self, e):
        return Fraction(1, self.ring.p ** int(self.region_exp[self.gamma.region_labels[e]]))

    @cached_property
    def orbits(self):
        return orbit_partition(self.gamma)

    def weighted_euler_char(self, orbit) -> Fraction:
        """Weighted Euler characteristic, by the cell-weight sum and by the closed formula."""
        G = self.gamma
        orbit = np.asarray(orbit)
        n = len(orbit)
        regions = np.unique(G.region_labels[orbit])
        wsum = sum((Fraction(1, self.ring.p ** int(self.region_exp[r])) for r in regions), Fraction(0))
        cb = int(self.complete_black[orbit].sum())
        cw = int(self.complete_white[orbit].sum())
        chi = Fraction(-n, 6) + Fraction(2, 3) * cb + Fraction(1, 2) * cw + wsum
        # direct cell count: vertices weighted by 1 / ramification
        blacks = cells(G, orbit)["black"]
        whites = cells(G, orbit)["white"]
        vb = sum(Fraction(1, int(self.black_ramification[b[0]])) for b in blacks)
        vw = sum(Fraction(1, int(self.white_ramification[w[0]])) for w in whites)
        direct = vb + vw - n + wsum
        assert chi == direct, (chi, direct)
        return chi

    def is_genus_zero(self, orbit):
        return self.weighted_euler_char(orbit) > 0

    def schreier_subgroup(self, orbit):
        """Voltage group of closed walks in ``orbit``; its order is the degree of each lift."""
        G, D = self.gamma, self.deck
        orbit = np.asarray(orbit)
        pot = {int(orbit.min()): D.identity}
        queue = [int(orbit.min())]
        gens = set()
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for perm, volt in ((G.px, self.vx), (G.py, self.vy)):
                f = int(perm[e])
                w = int(D.table[pot[e], volt[e]])
                if f not in pot:
                    pot[f] = w
                    queue.append(f)
                else:
                    gens.add(int(D.table[w, D.inv[pot[f]]]))
        return D.subgroup(gens)

    # -- covering by C(R) ------------------------------------------------------------------------

    @cached_property
    def cover(self):
        """Explicit ``C(R)`` and the covering map, or ``None`` if too large."""
        R = self.ring
        if R.size ** 2 > self.config.pair_limit:
            return None
        A = module_from_ring(R)
        C = CSpace(A, self.config)
        f = self.edges_of_pairs(A.to_ring[C.a1], A.to_ring[C.a2])
        data = covering_data(f, C.gamma, self.gamma)
        if not data["regular"]:
            raise AssertionError("C(R) -> P(R) is not regular")
        return C, f, data

    def lift_orbits(self, orbit) -> Lift:
        """Orbits of ``C(R)`` over ``orbit``, with ``chi(lift) = degree * chi(orbit)`` checked."""
        orbit = np.sort(np.asarray(orbit))
        chi = self.weighted_euler_char(orbit)
        S = self.schreier_subgroup(orbit)
        d = len(S)
        count = self.deck.n // d
        lifted_chi = self._lift_chi(orbit, S)
        assert lifted_chi == d * chi, (lifted_chi, d, chi)
        lift = Lift(degree=d, count=count, chi=lifted_chi)
        cov = self.cover
        if cov is not None:
            C, f, _ = cov
            in_orbit = np.zeros(self.n, dtype=bool)
            in_orbit[orbit] = True
            above = np.flatnonzero(in_orbit[f])
            labs = C.gamma.orbit_labels[above]
            for lab in np.unique(labs):
                members = above[labs == lab]
                if len(members) != d * len(orbit):
                    raise AssertionError("explicit lift disagrees with the voltage degree")
                if euler_char(C.gamma, members) != d * chi:
                    raise AssertionError("chi of the lift is not degree * chi")
                lift.orbits.append(members)
            lift.orbits.sort(key=lambda o: o[0])
            if len(lift.orbits) != count:
                raise AssertionError("explicit lift count disagrees with the voltage count")
        return lift

    def _lift_chi(self, orbit, S):
        """Unweighted chi of one lift, counted from the voltages alone."""
        G, D = self.gamma, self.deck
        d = len(S)
        n = len(orbit)
        total = Fraction(-d * n)
        for lab, ram in ((G.black_labels, self.black_ramification),
                         (G.white_labels, self.white_ramification)):
            for cyc in np.unique(lab[orbit]):
                e = int(orbit[lab[orbit] == cyc][0])
                total += Fraction(d, int(ram[e]))
        for r in np.unique(G.region_labels[orbit]):
            total += Fraction(d, int(self.region_ramification[r]))
        return total


def build_P(R: Ring, config: SpaceConfig | None = None) -> PSpace:
    return PSpace(R, config)


# -- structural lemma checks ---------------------------------------------------------------------


class StructureError(AssertionError):
    pass


def _check(cond, msg):
    if not cond:
        raise StructureError(msg)


def structure_checks(P: PSpace) -> dict:
    """Monovalent vertices and regions of ``P(R)`` against their closed-form descriptions."""
    R, G = P.ring, P.gamma
    report = {"ring": str(R.spec)}
    # complete monovalent vertices
    tset = R.t_group
    black_pred, white_pred = [], []
    tinv = R.inverse(R.t)
    for r in range(R.size):
        if r in tset and R.add(R.add(R.mul(r, r), r), R.one) == R.zero:
            black_pred.append(r)
        if R.neg(r) in tset and R.mul(r, r) == tinv:
            white_pred.append(r)
    black = np.flatnonzero(P.complete_black).tolist()
    white = np.flatnonzero(P.complete_white).tolist()
    _check(sorted(black) == sorted(P.edge("affine", r) for r in black_pred),
           "complete black vertices differ from the r^2 + r + 1 = 0 description")
    _check(sorted(white) == sorted(P.edge("affine", r) for r in white_pred),
           "complete white vertices differ from the r^2 = 1/t description")
    if R.p != 3:
        _check(not black, "complete black vertex for p != 3")
    _check(not white, "complete white vertex for p != 2")
    report["complete_black"] = len(black)
    report["complete_white"] = len(white)
    # regions
    sizes = np.bincount(G.region_labels)
    ell0 = R.ell0_unit()
    rl = G.region_labels
    for r in range(R.size):
        reg = rl[r]
        _check(sizes[reg] == R.p ** ell0, f"region of pc(1, {R.fmt(r)}) has size {sizes[reg]}")
        _check(P.region_exp[reg] == 0, f"region of pc(1, {R.fmt(r)}) is ramified")
    for m in P.m_elems.tolist():
        e = P.edge("infinity", m)
        reg = rl[e]
        l0 = R.ell0(m)
        l1 = R.ell0_prime(m)
        _check(l1 == R.ell0_prime_simplified(m), f"ell0' criteria disagree at m = {R.fmt(m)}")
        _check(sizes[reg] == R.p ** l0, f"region of pc({R.fmt(m)}, 1) has size {sizes[reg]}")
        _check(P.region_exp[reg] == l1, f"region of pc({R.fmt(m)}, 1) has weight exponent {P.region_exp[reg]}")
    report["ell0"] = ell0
    report["regions"] = int(len(sizes))
    cov = P.cover
    if cov is not None:
        C, f, data = cov
        # weights from the explicit covering agree with the voltages
        for reg_edge, ram in data["ramification"].items():
            _check((P.region_ramification[rl[reg_edge]],) == ram, "voltage ramification disagrees with the covering")
        fx = C.gamma.px == np.arange(C.n)
        fy = C.gamma.py == np.arange(C.n)
        above_black = np.zeros(P.n, dtype=bool)
        above_white = np.zeros(P.n, dtype=bool)
        above_black[f[fx]] = True
        above_white[f[fy]] = True
        _check(np.array_equal(above_black, P.complete_black), "complete black flags disagree with the covering")
        _check(np.array_equal(above_white, P.complete_white), "complete white flags disagree with the covering")
        report["explicit_cover"] = True
    else:
        report["explicit_cover"] = False
    return report


def wheel_structure_checks(C: CSpace) -> dict:
    """Regions of ``C(W)`` are p-powers, no monovalent vertices, and the ``F_p^2`` region rule."""
    A, G = C.module, C.gamma
    p = A.p
    sizes = np.bincount(G.region_labels)
    for s in np.unique(sizes).tolist():
        while s % p == 0:
            s //= p
        _check(s == 1, "region size of a wheel is not a power of p")
    _check(not (G.px == np.arange(C.n)).any(), "monovalent black vertex in C(W)")
    _check(not (G.py == np.arange(C.n)).any(), "monovalent white vertex in C(W)")
    report = {"region_sizes": sorted(set(sizes.tolist()))}
    if A.divisors == (1, 1):
        _check((sizes == p).all(), "region of C(F_p^2) of size != p")
        # same region <=> same orbit and same first vector up to t = -1
        v = np.minimum(C.a1, A.neg_arr(C.a1))
        key = G.orbit_labels * A.size + v
        _, kinv = np.unique(key, return_inverse=True)
        _, rinv = np.unique(G.region_labels, return_inverse=True)
        pairs = np.unique(np.stack([kinv.reshape(-1), rinv.reshape(-1)], axis=1), axis=0)
        _check(len(pairs) == len(np.unique(kinv)) == len(np.unique(rinv)),
               "regions of C(F_p^2) are not the (orbit, first vector) classes")
        report["k2_regions"] = True
    return report

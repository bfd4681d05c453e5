"""Finite right Gamma-sets, Gamma = PSL(2, Z) = <X, Y | X^3 = Y^2 = 1>.

A Gamma-set is a pair of permutations of ``range(n)``.  Black vertices are
X-cycles, white vertices are Y-cycles, regions are cycles of
``e -> X(Y(e))`` (apply Y, then X).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def _components(n, src, dst):
    g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, lab = connected_components(g, directed=True, connection="weak")
    # renumber by smallest member so the order is deterministic
    first = np.full(lab.max() + 1 if n else 0, n, dtype=np.int64)
    np.minimum.at(first, lab, np.arange(n))
    rank = np.empty_like(first)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[lab]


def cycle_labels(perm):
    """Cycle id of every point, ids ordered by smallest member."""
    perm = np.asarray(perm)
    n = len(perm)
    return _components(n, np.arange(n), perm)


def _group(labels, members):
    """Split ``members`` (sorted) by label, groups ordered by smallest member."""
    labs = labels[members]
    order = np.argsort(labs, kind="stable")
    labs_sorted = labs[order]
    cuts = np.flatnonzero(np.diff(labs_sorted)) + 1
    groups = np.split(members[order], cuts)
    groups.sort(key=lambda g: g[0])
    return groups


class GammaSet:
    """Right Gamma-set on ``range(n)`` given by the images of ``X`` and ``Y``."""

    def __init__(self, perm_x, perm_y, labels=None, check=True):
        self.px = np.asarray(perm_x, dtype=np.int64)
        self.py = np.asarray(perm_y, dtype=np.int64)
        self.n = len(self.px)
        self.labels = labels
        if check:
            ident = np.arange(self.n)
            if len(self.py) != self.n:
                raise ValueError("permutations of different lengths")
            for perm in (self.px, self.py):
                if not np.array_equal(np.sort(perm), ident):
                    raise ValueError("not a permutation")
            if not np.array_equal(self.px[self.px[self.px]], ident):
                raise ValueError("X^3 != 1")
            if not np.array_equal(self.py[self.py], ident):
                raise ValueError("Y^2 != 1")

    @classmethod
    def singleton(cls):
        return cls([0], [0])

    def label(self, e):
        if self.labels is None:
            return str(e)
        return self.labels(e) if callable(self.labels) else str(self.labels[e])

    @property
    def pyx(self):
        return self.px[self.py]

    def _lazy(self, name, fn):
        v = self.__dict__.get(name)
        if v is None:
            v = fn()
            self.__dict__[name] = v
        return v

    @property
    def orbit_labels(self):
        def f():
            e = np.arange(self.n)
            return _components(self.n, np.concatenate([e, e]), np.concatenate([self.px, self.py]))
        return self._lazy("_orbit_labels", f)

    @property
    def black_labels(self):
        return self._lazy("_black", lambda: cycle_labels(self.px))

    @property
    def white_labels(self):
        return self._lazy("_white", lambda: cycle_labels(self.py))

    @property
    def region_labels(self):
        return self._lazy("_region", lambda: cycle_labels(self.pyx))

    def cell_sizes(self):
        """Per edge: sizes of its black vertex, white vertex and region."""
        def f():
            out = []
            for lab in (self.black_labels, self.white_labels, self.region_labels):
                out.append(np.bincount(lab)[lab])
            return np.stack(out, axis=1)
        return self._lazy("_cell_sizes", f)

    def restrict(self, orbit):
        """The sub-Gamma-set on ``orbit`` (sorted), relabelled ``0..len-1``."""
        orbit = np.sort(np.asarray(orbit))
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[orbit] = np.arange(len(orbit))
        px, py = pos[self.px[orbit]], pos[self.py[orbit]]
        if (px < 0).any() or (py < 0).any():
            raise ValueError("subset is not Gamma-invariant")
        labels = None
        if self.labels is not None:
            labels = (lambda e, o=orbit, g=self: g.label(int(o[e])))
        return GammaSet(px, py, labels=labels, check=False)


def orbit_partition(G: GammaSet):
    return _group(G.orbit_labels, np.arange(G.n))


def cells(G: GammaSet, orbit):
    members = np.sort(np.asarray(orbit))
    return {
        "black": _group(G.black_labels, members),
        "white": _group(G.white_labels, members),
        "regions": _group(G.region_labels, members),
    }


def _count_cycles(labels, members):
    return len(np.unique(labels[members]))


def euler_char(G: GammaSet, orbit=None) -> Fraction:
    """Euler characteristic of the dessin on ``orbit``, by both counting formulas."""
    members = np.arange(G.n) if orbit is None else np.asarray(orbit)
    n = len(members)
    nb = _count_cycles(G.black_labels, members)
    nw = _count_cycles(G.white_labels, members)
    nr = _count_cycles(G.region_labels, members)
    fx = int((G.px[members] == members).sum())
    fy = int((G.py[members] == members).sum())
    chi1 = Fraction(nb + nw - n + nr)
    chi2 = Fraction(-n, 6) + nr + Fraction(2, 3) * fx + Fraction(1, 2) * fy
    assert chi1 == chi2, (chi1, chi2)
    return chi1


@dataclass(frozen=True)
class Signature:
    index: int
    genus: int
    nu3: int
    nu2: int
    cusp_widths: tuple

    @property
    def cusps(self):
        return len(self.cusp_widths)

    def as_dict(self):
        return {"index": self.index, "genus": self.genus, "nu2": self.nu2,
                "nu3": self.nu3, "cusp_widths": list(self.cusp_widths)}

    def __str__(self):
        widths = ",".join(str(w) for w in self.cusp_widths)
        return (f"index {self.index}, genus {self.genus}, nu2 {self.nu2}, nu3 {self.nu3}, "
                f"cusps {self.cusps}, cusp widths {widths}")


def signature(G: GammaSet, orbit=None) -> Signature:
    members = np.arange(G.n) if orbit is None else np.asarray(orbit)
    chi = euler_char(G, members)
    g2 = 2 - chi
    if g2.denominator != 1 or g2.numerator % 2:
        raise ValueError("orbit is not transitive (non-integral genus)")
    regions = _group(G.region_labels, np.sort(members))
    widths = tuple(sorted(len(r) for r in regions))
    return Signature(
        index=len(members),
        genus=g2.numerator // 2,
        nu3=int((G.px[members] == members).sum()),
        nu2=int((G.py[members] == members).sum()),
        cusp_widths=widths,
    )


def bfs_code(px, py, start, members_count):
    """Relabel a transitive Gamma-set by breadth-first search from ``start``.

    Returns ``(order, code)`` with ``order[i]`` the edge receiving label ``i``
    and ``code`` the flat tuple of labels of ``X(e), Y(e)`` in label order.
    """
    lab = {start: 0}
    order = [start]
    code = []
    i = 0
    while i < len(order):
        e = order[i]
        for f in (px[e], py[e]):
            f = int(f)
            if f not in lab:
                lab[f] = len(order)
                order.append(f)
            code.append(lab[f])
        i += 1
    if len(order) != members_count:
        raise ValueError("orbit is not transitive")
    return order, tuple(code)


def _invariant_class(G: GammaSet, members):
    """Smallest class of edges with equal cell-size triples (an iso-invariant choice)."""
    sizes = G.cell_sizes()[members]
    keys, inv, counts = np.unique(sizes, axis=0, return_inverse=True, return_counts=True)
    best = min(range(len(keys)), key=lambda i: (counts[i], tuple(keys[i])))
    return members[inv.reshape(-1) == best], tuple(int(x) for x in keys[best])


def iso_gamma_sets(G1: GammaSet, G2: GammaSet, orbit1=None, orbit2=None):
    """An equivariant bijection ``orbit1 -> orbit2`` as a dict, or ``None``."""
    m1 = np.sort(np.arange(G1.n) if orbit1 is None else np.asarray(orbit1))
    m2 = np.sort(np.arange(G2.n) if orbit2 is None else np.asarray(orbit2))
    if len(m1) != len(m2):
        return None
    if signature(G1, m1) != signature(G2, m2):
        return None
    anchor = int(m1[0])
    key = tuple(int(x) for x in G1.cell_sizes()[anchor])
    order1, code1 = bfs_code(G1.px, G1.py, anchor, len(m1))
    sizes2 = G2.cell_sizes()[m2]
    cand = m2[(sizes2 == np.array(key)).all(axis=1)]
    for c in cand:
        order2, code2 = bfs_code(G2.px, G2.py, int(c), len(m2))
        if code2 == code1:
            return {int(a): int(b) for a, b in zip(order1, order2)}
    return None


def canonical_form(G: GammaSet, orbit=None):
    """Minimal BFS code over an invariant class of start edges, with its labelling."""
    members = np.sort(np.arange(G.n) if orbit is None else np.asarray(orbit))
    starts, key = _invariant_class(G, members)
    best = None
    for s in starts:
        order, code = bfs_code(G.px, G.py, int(s), len(members))
        if best is None or code < best[1]:
            best = (order, code)
    return key, best[1], best[0]


def covering_data(f, G1: GammaSet, G2: GammaSet, orbit1=None, orbit2=None):
    """Check that the edge map ``f`` (array over ``range(G1.n)``) is a covering.

    Returns ``{"is_covering", "degree", "regular", "ramification"}`` where
    ``ramification`` maps each region of ``orbit2`` (by smallest edge) to the
    sorted distinct ratios (size above) / (size below); ``regular`` says that
    every region has a single ratio.
    """
    f = np.asarray(f)
    m1 = np.arange(G1.n) if orbit1 is None else np.asarray(orbit1)
    m2 = np.arange(G2.n) if orbit2 is None else np.asarray(orbit2)
    img = f[m1]
    if not np.array_equal(np.unique(img), np.sort(m2)):
        raise ValueError("edge map is not onto the target orbit")
    if (f[G1.px[m1]] != G2.px[img]).any() or (f[G1.py[m1]] != G2.py[img]).any():
        raise ValueError("edge map is not equivariant")
    counts = np.bincount(img, minlength=G2.n)[m2]
    degree = int(counts[0])
    if (counts != degree).any():
        raise ValueError("fibres of different sizes")
    size1 = np.bincount(G1.region_labels)[G1.region_labels]
    size2 = np.bincount(G2.region_labels)[G2.region_labels]
    ram = {}
    rlab2 = G2.region_labels
    for e, fe in zip(m1.tolist(), img.tolist()):
        r = int(rlab2[fe])
        q = Fraction(int(size1[e]), int(size2[fe]))
        if q.denominator != 1:
            raise ValueError("region size above is not a multiple of the size below")
        ram.setdefault(r, set()).add(int(q))
    first = {}
    for e in np.sort(m2).tolist():
        first.setdefault(int(rlab2[e]), e)
    return {
        "is_covering": True,
        "degree": degree,
        "regular": all(len(q) == 1 for q in ram.values()),
        "ramification": {first[r]: tuple(sorted(q)) for r, q in ram.items()},
    }


def genus_monotone(G1, G2, f, orbit1, orbit2):
    """Genus of the cover is zero only if the base has genus zero (checked downward)."""
    covering_data(f, G1, G2, orbit1, orbit2)
    g1 = signature(G1, orbit1).genus
    g2 = signature(G2, orbit2).genus
    return not (g1 == 0 and g2 != 0)


def dessin_dot(G: GammaSet, orbit, name="dessin"):
    """DOT text of the dessin on ``orbit``; vertex ``order`` attributes list edges counter-clockwise."""
    c = cells(G, orbit)
    black_of, white_of = {}, {}
    lines = [f"graph {name} {{", "  node [shape=circle, label=\"\"];"]
    for i, cyc in enumerate(c["black"]):
        seq = _cycle_sequence(G.px, int(cyc[0]))
        for e in seq:
            black_of[e] = i
        order = " ".join(f"e{e}" for e in seq)
        lines.append(f"  b{i} [style=filled, fillcolor=black, order=\"{order}\"];")
    for j, cyc in enumerate(c["white"]):
        seq = _cycle_sequence(G.py, int(cyc[0]))
        for e in seq:
            white_of[e] = j
        order = " ".join(f"e{e}" for e in seq)
        lines.append(f"  w{j} [style=filled, fillcolor=white, order=\"{order}\"];")
    for e in np.sort(np.asarray(orbit)).tolist():
        lab = G.label(e).replace('"', "'")
        lines.append(f"  b{black_of[e]} -- w{white_of[e]} [id=\"e{e}\", label=\"{lab}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cycle_sequence(perm, start):
    seq = [start]
    e = int(perm[start])
    while e != start:
        seq.append(e)
        e = int(perm[e])
    return seq


def permute_gamma_set(G: GammaSet, perm):
    """Relabel edges: edge ``e`` becomes ``perm[e]``."""
    perm = np.asarray(perm)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return GammaSet(perm[G.px[inv]], perm[G.py[inv]])


def bfs_orbit(start, act_x, act_y):
    """Enumerate a transitive Gamma-set from a hashable base point and two action functions."""
    index = {start: 0}
    pts = [start]
    px, py = [], []
    done = 0
    while done < len(pts):
        s = pts[done]
        for act, out in ((act_x, px), (act_y, py)):
            t = act(s)
            if t not in index:
                index[t] = len(pts)
                pts.append(t)
            out.append(index[t])
        done += 1
    return GammaSet(px, py, labels=[str(s) for s in pts]), pts


def equivariant_map(G1: GammaSet, start1, G2: GammaSet, start2):
    """The Gamma-map from the orbit of ``start1`` sending it to ``start2``, or ``None``."""
    f = {int(start1): int(start2)}
    queue = [int(start1)]
    while queue:
        e = queue.pop()
        for p1, p2 in ((G1.px, G2.px), (G1.py, G2.py)):
            a, b = int(p1[e]), int(p2[f[e]])
            if a not in f:
                f[a] = b
                queue.append(a)
            elif f[a] != b:
                return None
    return f

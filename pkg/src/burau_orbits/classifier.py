"""Orbit invariants: depth, type specification, fingerprint, and per-orbit reports."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .edge_spaces import CSpace, PSpace, SpaceConfig, build_C, build_P
from .finite_module import FiniteModule
from .finite_ring import Ring, RingSpec
from .gamma_set import Signature, _invariant_class, bfs_code, euler_char, signature
from .laurent_burau import BX, BY

KINDS = ("black", "white", "region")


def depth(A: FiniteModule) -> int:
    """Multiplicative order of ``t`` acting on ``A``."""
    return int(A.depth)


# -- type specification ---------------------------------------------------------------------


@dataclass(frozen=True)
class TypeSpec:
    d: int
    entries: tuple  # (kind, representative edge, size, k)

    def as_list(self):
        return [{"kind": k, "edge": e, "size": s, "k": x} for k, e, s, x in self.entries]


def _solve_t_power(A: FiniteModule, a1, a2, b1, b2):
    """Per pair, the ``k < depth`` with ``(b1, b2) = t^k (a1, a2)``; -1 where none exists."""
    tab = A.t_orbit_tables
    out = np.full(len(a1), -1, dtype=np.int64)
    for k in range(A.depth):
        hit = (out < 0) & (tab[k][a1] == b1) & (tab[k][a2] == b2)
        out[hit] = k
    return out


def type_spec(C: CSpace, orbit) -> TypeSpec:
    """Residues ``k`` with ``(a1, a2) . L = t^k (a1, a2)`` on each monovalent vertex and region.

    ``L`` is ``X`` on a monovalent black vertex, ``Y`` on a monovalent white one and
    ``(YX)^s`` on a region of size ``s``.  Every pair of the cell is checked.
    """
    A, G = C.module, C.gamma
    orbit = np.sort(np.asarray(orbit))
    a1, a2 = C.a1[orbit], C.a2[orbit]
    entries = []
    for kind, perm, M in (("black", G.px, BX), ("white", G.py, BY)):
        fixed = perm[orbit] == orbit
        if fixed.any():
            b1, b2 = A.pair_act((a1[fixed], a2[fixed]), M)
            ks = _solve_t_power(A, a1[fixed], a2[fixed], b1, b2)
            if (ks < 0).any():
                raise AssertionError(f"monovalent {kind} vertex without a t-power")
            entries += [(kind, int(e), 1, int(k)) for e, k in zip(orbit[fixed], ks)]
    rl = G.region_labels[orbit]
    sizes = np.bincount(G.region_labels)[rl]
    ks = np.full(len(orbit), -1, dtype=np.int64)
    for s in np.unique(sizes).tolist():
        sel = sizes == s
        b1, b2 = a1[sel], a2[sel]
        for _ in range(s):
            b1, b2 = A.pair_act((b1, b2), BY)
            b1, b2 = A.pair_act((b1, b2), BX)
        ks[sel] = _solve_t_power(A, a1[sel], a2[sel], b1, b2)
    if (ks < 0).any():
        raise AssertionError("region without a t-power")
    for lab in np.unique(rl):
        sel = rl == lab
        kk = np.unique(ks[sel])
        if len(kk) != 1:
            raise AssertionError("k differs between pairs of one region")
        entries.append(("region", int(orbit[sel].min()), int(sel.sum()), int(kk[0])))
    entries.sort(key=lambda x: (KINDS.index(x[0]), x[1]))
    return TypeSpec(A.depth, tuple(entries))


# -- fingerprint --------------------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    depth: int
    start_class: tuple
    code: tuple
    type_spec: tuple  # (kind, canonical label of the cell minimum, size, k), sorted

    @property
    def digest(self):
        h = hashlib.sha256(repr((self.depth, self.start_class, self.code, self.type_spec)).encode())
        return h.hexdigest()[:16]


def fingerprint(C: CSpace, orbit) -> Fingerprint:
    """Depth, minimal BFS code over an invariant start class, and the relabelled type spec."""
    orbit = np.sort(np.asarray(orbit))
    n = len(orbit)
    ts = type_spec(C, orbit)
    Gs = C.gamma.restrict(orbit)
    members = np.arange(n)
    starts, key = _invariant_class(Gs, members)
    # cells in local indices
    local = {int(e): i for i, e in enumerate(orbit)}
    rl = Gs.region_labels
    cells = []
    for kind, e, size, k in ts.entries:
        i = local[e]
        mem = np.flatnonzero(rl == rl[i]) if kind == "region" else np.array([i])
        cells.append((kind, mem, size, k))
    px, py = Gs.px.tolist(), Gs.py.tolist()
    best = None
    for s in starts.tolist():
        order, code = bfs_code(px, py, s, n)
        if best is not None and code > best[0]:
            continue
        lab = np.empty(n, dtype=np.int64)
        lab[order] = members
        spec = tuple(sorted((kind, int(lab[mem].min()), size, k) for kind, mem, size, k in cells))
        cand = (code, spec)
        if best is None or cand < best:
            best = cand
    return Fingerprint(ts.d, key, best[0], best[1])


# -- reports ------------------------------------------------------------------------------------


@dataclass
class OrbitReport:
    input: str
    orbit: int
    size: int
    representative: str
    chi: Fraction
    genus_zero: bool
    regions: list  # (size, weight exponent)
    monovalent: dict
    depth: int
    type_spec: TypeSpec | None = None
    lifted: list = field(default_factory=list)
    fingerprint: Fingerprint | None = None
    table_match: str | None = None
    table_param: str | None = None

    def __post_init__(self):
        if self.genus_zero != (self.chi > 0):
            raise AssertionError("genus-zero flag inconsistent with chi")


@dataclass
class Classification:
    input: str
    kind: str  # "ring" or "module"
    p: int
    stats: dict
    edges: int
    orbits: list

    @property
    def genus_zero(self):
        return [r for r in self.orbits if r.genus_zero]


def lifted_signature(P: PSpace, orbit, degree) -> Signature:
    """Signature of one lift of a P-orbit, from voltages alone."""
    G = P.gamma
    orbit = np.asarray(orbit)
    widths = []
    for r in np.unique(G.region_labels[orbit]).tolist():
        s = int((G.region_labels[orbit] == r).sum())
        q = int(P.region_ramification[r])
        widths += [s * q] * (degree // q)
    chi = degree * P.weighted_euler_char(orbit)
    g2 = 2 - chi
    if g2.denominator != 1 or g2.numerator % 2:
        raise AssertionError("lift has non-integral genus")
    return Signature(
        index=degree * len(orbit),
        genus=g2.numerator // 2,
        nu3=degree * int(P.complete_black[orbit].sum()),
        nu2=degree * int(P.complete_white[orbit].sum()),
        cusp_widths=tuple(sorted(widths)),
    )


def _coerce(obj):
    if isinstance(obj, RingSpec):
        return Ring(obj)
    return obj


def classify_ring(R: Ring, config: SpaceConfig | None = None, fingerprints=True, name=None):
    P = build_P(R, config)
    G = P.gamma
    d = R.t_order
    reports = []
    cov = P.cover
    for i, orbit in enumerate(P.orbits):
        chi = P.weighted_euler_char(orbit)
        lift = P.lift_orbits(orbit)
        sig = lifted_signature(P, orbit, lift.degree)
        rep = OrbitReport(
            input=name or str(R.spec),
            orbit=i,
            size=len(orbit),
            representative=G.label(int(orbit[0])),
            chi=chi,
            genus_zero=chi > 0,
            regions=_regions(G, orbit, P.region_exp),
            monovalent={
                "black": int(P.mono_black[orbit].sum()),
                "white": int(P.mono_white[orbit].sum()),
                "complete_black": int(P.complete_black[orbit].sum()),
                "complete_white": int(P.complete_white[orbit].sum()),
            },
            depth=d,
            lifted=[{"degree": lift.degree, "count": lift.count, "signature": sig}],
        )
        if lift.orbits:
            C = cov[0]
            explicit = signature(C.gamma, lift.orbits[0])
            if explicit != sig:
                raise AssertionError("lifted signature from voltages disagrees with the explicit lift")
            if rep.genus_zero:
                if explicit.genus != 0:
                    raise AssertionError("genus-zero orbit with a lift of positive genus")
                rep.type_spec = type_spec(C, lift.orbits[0])
                if fingerprints:
                    rep.fingerprint = fingerprint(C, lift.orbits[0])
        reports.append(rep)
    stats = {"size": R.size, "maximal": R.n_maximal, "units": R.n_units, "depth": d,
             "unit_classes": P.deck.n}
    return Classification(name or str(R.spec), "ring", R.p, stats, P.n, reports), P


def classify_module(A: FiniteModule, config: SpaceConfig | None = None, fingerprints=True, name=None):
    C = build_C(A, config)
    G = C.gamma
    d = A.depth
    reports = []
    from .gamma_set import orbit_partition
    for i, orbit in enumerate(orbit_partition(G)):
        chi = euler_char(G, orbit)
        mb = int((G.px[orbit] == orbit).sum())
        mw = int((G.py[orbit] == orbit).sum())
        rep = OrbitReport(
            input=name or _module_name(A),
            orbit=i,
            size=len(orbit),
            representative=G.label(int(orbit[0])),
            chi=chi,
            genus_zero=chi > 0,
            regions=_regions(G, orbit, None),
            monovalent={"black": mb, "white": mw, "complete_black": mb, "complete_white": mw},
            depth=d,
            lifted=[{"degree": 1, "count": 1, "signature": signature(G, orbit)}],
        )
        if rep.genus_zero:
            rep.type_spec = type_spec(C, orbit)
            if fingerprints:
                rep.fingerprint = fingerprint(C, orbit)
        reports.append(rep)
    stats = {"size": A.size, "divisors": list(A.divisors), "residue_rank": A.residue_rank, "depth": d}
    return Classification(name or _module_name(A), "module", A.p, stats, C.n, reports), C


def _module_name(A):
    from .spec_text import format_wheel
    return format_wheel(A)


def _regions(G, orbit, exps):
    out = []
    rl = G.region_labels[orbit]
    labs, counts = np.unique(rl, return_counts=True)
    for lab, c in zip(labs.tolist(), counts.tolist()):
        out.append((int(c), 0 if exps is None else int(exps[lab])))
    return sorted(out)


def classify(obj, config: SpaceConfig | None = None, match=True, name=None) -> Classification:
    """Reports for every orbit; genus-zero orbits are matched against the built-in table."""
    obj = _coerce(obj)
    if isinstance(obj, Ring):
        result, _ = classify_ring(obj, config, name=name)
    elif isinstance(obj, FiniteModule):
        result, _ = classify_module(obj, config, name=name)
    else:
        raise TypeError(f"cannot classify {type(obj).__name__}")
    if match:
        from .tables import match_reports
        match_reports(result)
    return result

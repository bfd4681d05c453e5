"""Coset Gamma-sets of congruence subgroups, built from standard actions mod N."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .gamma_set import GammaSet, bfs_orbit

# integer images of the generators
X_INT = ((0, 1), (-1, 1))
Y_INT = ((0, -1), (1, 0))


@dataclass(frozen=True)
class CongruenceSpec:
    variant: str  # "Gamma0", "Gamma1", "Gamma" or "Intersection"
    level: int = 1
    parts: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.variant not in ("Gamma0", "Gamma1", "Gamma", "Intersection"):
            raise ValueError(f"unknown congruence variant {self.variant!r}")
        if self.variant == "Intersection":
            if not self.parts:
                raise ValueError("empty intersection")
        elif self.level < 1:
            raise ValueError("level must be positive")

    def __str__(self):
        if self.variant == "Intersection":
            return " & ".join(str(p) for p in self.parts)
        return f"{self.variant}({self.level})"


def _row_act(v, M, n):
    a, b = v
    return ((a * M[0][0] + b * M[1][0]) % n, (a * M[0][1] + b * M[1][1]) % n)


def _units(n):
    return [u for u in range(1, n + 1) if gcd(u, n) == 1] if n > 1 else [0]


def _point_action(spec: CongruenceSpec):
    """``(base point, act)`` for a single (non-intersection) spec."""
    n = spec.level
    if n == 1:
        return 0, lambda s, M: 0
    if spec.variant == "Gamma0":
        units = _units(n)

        def norm(v):
            return min(((u * v[0]) % n, (u * v[1]) % n) for u in units)
        return norm((0, 1)), lambda s, M: norm(_row_act(s, M, n))
    if spec.variant == "Gamma1":
        def norm(v):
            return min(v, ((-v[0]) % n, (-v[1]) % n))
        return norm((0, 1)), lambda s, M: norm(_row_act(s, M, n))

    def norm(m):
        neg = tuple((-x) % n for x in m)
        return min(m, neg)

    def act(s, M):
        a, b, c, d = s
        r1 = _row_act((a, b), M, n)
        r2 = _row_act((c, d), M, n)
        return norm(r1 + r2)
    return norm((1, 0, 0, 1)), act


def _flatten(spec):
    if spec.variant == "Intersection":
        out = []
        for p in spec.parts:
            out.extend(_flatten(p))
        return out
    return [spec]


def coset_gamma_set(spec: CongruenceSpec) -> GammaSet:
    """Right Gamma-set of cosets ``K \\ Gamma``; edge 0 is the trivial coset."""
    actions = [_point_action(s) for s in _flatten(spec)]
    base = tuple(b for b, _ in actions)

    def mover(M):
        return lambda s: tuple(act(x, M) for x, (_, act) in zip(s, actions))

    G, _ = bfs_orbit(base, mover(X_INT), mover(Y_INT))
    return G


def parse_congruence(group: str, level: int, intersect=()):
    names = {"gamma0": "Gamma0", "gamma1": "Gamma1", "gamma": "Gamma", "gammafull": "Gamma"}
    key = group.lower()
    if key not in names:
        raise ValueError(f"unknown group {group!r}")
    spec = CongruenceSpec(names[key], int(level))
    if intersect:
        parts = [spec]
        for item in intersect:
            g, _, lv = item.partition(":")
            if not lv:
                raise ValueError(f"intersection part {item!r} must look like Gamma0:25")
            parts.append(CongruenceSpec(names[g.lower()], int(lv)))
        spec = CongruenceSpec("Intersection", 1, tuple(parts))
    return spec


def parse_congruence_text(text: str) -> CongruenceSpec:
    """``Gamma1(7)``, ``Gamma(5)`` or an ``&``-joined intersection such as ``Gamma0(25)&Gamma1(5)``."""
    parts = []
    for item in text.replace(" ", "").split("&"):
        name, _, rest = item.partition("(")
        if not rest.endswith(")"):
            raise ValueError(f"bad congruence subgroup {item!r}")
        parts.append(parse_congruence(name, int(rest[:-1])))
    return parts[0] if len(parts) == 1 else CongruenceSpec("Intersection", 1, tuple(parts))


def has_level_dividing(G: GammaSet, orbit, N: int) -> bool:
    """Whether the stabilizers on ``orbit`` contain the principal congruence subgroup of level N."""
    from .gamma_set import equivariant_map
    big = coset_gamma_set(CongruenceSpec("Gamma", N))
    return equivariant_map(big, 0, G, int(min(orbit))) is not None

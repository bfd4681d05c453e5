"""Finite quotients R = Z[t, 1/t] / I with I primary to m = <p, t + 1>.

Everything is written in the variable ``lambda = -1 - t`` (spelled ``l`` in
text), so ``t = -1 - l`` and ``m = <p, l>``.  Ring elements are plain ints:
the position of the canonical coefficient vector in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .laurent_burau import LaurentPoly, check_prime
from .lattice import hermite_top, reduce_top


def format_poly(coeffs, var="l"):
    """Integer polynomial (ascending coefficients) in the ``*``/``^`` text syntax."""
    terms = [(e, c) for e, c in enumerate(coeffs) if c]
    if not terms:
        return "0"
    out = ""
    for e, c in reversed(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            mono = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if a != 1:
                mono = f"{a}*{mono}"
        if not out:
            out = ("-" if sign == "-" else "") + mono
        else:
            out += sign + mono
    return out


def _trim(coeffs):
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RingSpec:
    """``(Z / p^k)[l] / (relations)``; relations are ascending coefficient tuples."""

    p: int
    k: int
    relations: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(_trim(r) for r in self.relations))

    def __str__(self):
        base = f"GF({self.p})" if self.k == 1 else f"Z({self.p ** self.k})"
        rels = ", ".join(format_poly(r) for r in self.relations) or "0"
        return f"{base}[l]/({rels})"


# -- polynomial helpers over F_p (ascending coefficient lists) -------------------

def _fp_trim(a, p):
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, b, p):
    a = _fp_trim(a, p)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        q = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        a = _fp_trim(a, p)
    return a


def _fp_gcd(polys, p):
    g = []
    for f in polys:
        f = _fp_trim(f, p)
        while f:
            g, f = f, _fp_mod(g, f, p)
    if g:
        inv = pow(g[-1], -1, p)
        g = [x * inv % p for x in g]
    return g


class Ring:
    """A finite local ring with residue field F_p, built from a :class:`RingSpec`."""

    def __init__(self, spec: RingSpec):
        check_prime(spec.p)
        if spec.k < 1:
            raise ValueError("base exponent must be at least 1")
        p, k = spec.p, spec.k
        g = _fp_gcd(spec.relations, p)
        if not g:
            raise ValueError(f"{spec}: ideal is not primary to <p, l> (l is not nilpotent)")
        e = len(g) - 1
        if e == 0:
            raise ValueError(f"{spec}: improper ideal (the quotient ring is zero)")
        if any(g[:-1]):
            raise ValueError(f"{spec}: ideal is not primary to <p, l> (residue ring is not F_p)")

        self.spec = spec
        self.p = p
        self.k = k
        self.modulus = p ** k
        # l^e lies in I + (p), hence l^(e*k) lies in I
        n = e * k
        self.N = n
        gens = []
        for r in spec.relations:
            for j in range(n):
                v = [0] * n
                for i, c in enumerate(r):
                    if i + j < n:
                        v[i + j] = c
                gens.append(v)
        self.rows = hermite_top(gens, n, self.modulus)
        self.pivots = [row[i] for i, row in enumerate(self.rows)]
        self.size = int(np.prod(self.pivots, dtype=object))
        # index = sum c_i * weight_i with c_0 most significant
        w = [1] * n
        for i in range(n - 2, -1, -1):
            w[i] = w[i + 1] * self.pivots[i + 1]
        self.weights = w
        self._rows_np = np.array(self.rows, dtype=np.int64)
        self._weights_np = np.array(w, dtype=np.int64)

        self.zero = 0
        self.one = self.from_coeffs([1])
        self.lam = self.from_coeffs([0, 1])
        self.t = self.from_coeffs([-1, -1])
        self.minus_one = self.neg(self.one)

    def __repr__(self):
        return f"Ring({self.spec}, |R|={self.size})"

    # -- conversion -------------------------------------------------------------

    def vector(self, a):
        out = []
        for w, d in zip(self.weights, self.pivots):
            out.append((a // w) % d)
        return out

    def index(self, vec):
        return sum(c * w for c, w in zip(vec, self.weights))

    def reduce(self, vec):
        v = [int(c) for c in vec[: self.N]] + [0] * max(0, self.N - len(vec))
        return reduce_top(v, self.rows)

    def from_coeffs(self, coeffs):
        """Element given by an integer polynomial in ``l`` (ascending coefficients)."""
        v = [0] * self.N
        for i, c in enumerate(coeffs):
            if i < self.N:
                v[i] = int(c) % self.modulus
        return self.index(self.reduce(v))

    def from_laurent(self, f: LaurentPoly):
        out = self.zero
        tinv = self.inverse(self.t)
        for e, c in f.items():
            base = self.t if e >= 0 else tinv
            out = self.add(out, self.mul(self.from_int(c), self.power(base, abs(e))))
        return out

    def from_int(self, c):
        return self.from_coeffs([c])

    def fmt(self, a):
        return format_poly(self.vector(a))

    @cached_property
    def vectors(self):
        """All canonical vectors, shape ``(size, N)``."""
        idx = np.arange(self.size, dtype=np.int64)
        cols = [(idx // w) % d for w, d in zip(self.weights, self.pivots)]
        return np.stack(cols, axis=1) if cols else np.zeros((self.size, 0), np.int64)

    # -- scalar arithmetic --------------------------------------------------------

    def add(self, a, b):
        return self.index(self.reduce([x + y for x, y in zip(self.vector(a), self.vector(b))]))

    def sub(self, a, b):
        return self.index(self.reduce([x - y for x, y in zip(self.vector(a), self.vector(b))]))

    def neg(self, a):
        return self.index(self.reduce([-x for x in self.vector(a)]))

    def mul(self, a, b):
        va, vb = self.vector(a), self.vector(b)
        n = self.N
        out = [0] * n
        for i, x in enumerate(va):
            if x:
                for j in range(n - i):
                    out[i + j] += x * vb[j]
        return self.index(self.reduce(out))

    def power(self, a, e):
        if e < 0:
            return self.power(self.inverse(a), -e)
        out, base = self.one, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def residue(self, a):
        return self.vector(a)[0] % self.p if self.N else 0

    def is_unit(self, a):
        return self.residue(a) != 0

    def in_maximal(self, a):
        return not self.is_unit(a)

    def inverse(self, a):
        """Inverse of a unit: invert the residue mod p, then Newton-correct."""
        r = self.residue(a)
        if r == 0:
            raise ValueError(f"{self.fmt(a)} is not a unit of {self.spec}")
        x = self.from_int(pow(r, -1, self.p))
        two = self.from_int(2)
        for _ in range(64):
            ax = self.mul(a, x)
            if ax == self.one:
                return x
            x = self.mul(x, self.sub(two, ax))
        raise AssertionError("Newton iteration did not converge")

    def div(self, a, u):
        return self.mul(a, self.inverse(u))

    def order(self, u):
        if not self.is_unit(u):
            raise ValueError("order of a non-unit")
        n, x = 1, u
        while x != self.one:
            x = self.mul(x, u)
            n += 1
        return n

    # -- vectorised arithmetic on index arrays ------------------------------------

    def _reduce_np(self, V):
        V = V % self.modulus
        for i in range(self.N - 1, -1, -1):
            q = V[:, i] // self.pivots[i]
            if q.any():
                V -= q[:, None] * self._rows_np[i]
        return V @ self._weights_np

    def add_arr(self, a, b):
        return self._reduce_np(self.vectors[a] + self.vectors[b])

    def sub_arr(self, a, b):
        return self._reduce_np(self.vectors[a] - self.vectors[b])

    def neg_arr(self, a):
        return self._reduce_np(-self.vectors[a])

    def mul_arr(self, a, b):
        A = self.vectors[np.asarray(a)]
        B = self.vectors[np.asarray(b)]
        A, B = np.broadcast_arrays(A, B)
        n = self.N
        out = np.zeros(A.shape, dtype=np.int64)
        for i in range(n):
            ai = A[:, i]
            if not ai.any():
                continue
            for j in range(n - i):
                out[:, i + j] += ai * B[:, j]
        return self._reduce_np(out)

    def const_arr(self, a, shape):
        return np.full(shape, a, dtype=np.int64)

    @cached_property
    def inverse_table(self):
        """``inv[u]`` for units, ``-1`` on the maximal ideal."""
        units = self.units
        e = self.n_units - 1
        acc = np.full(units.shape, self.one, dtype=np.int64)
        base = units.copy()
        while e:
            if e & 1:
                acc = self.mul_arr(acc, base)
            base = self.mul_arr(base, base)
            e >>= 1
        inv = np.full(self.size, -1, dtype=np.int64)
        inv[units] = acc
        return inv

    # -- structure ----------------------------------------------------------------

    @cached_property
    def unit_mask(self):
        if self.N == 0:
            return np.zeros(self.size, bool)
        return (self.vectors[:, 0] % self.p) != 0

    @cached_property
    def units(self):
        return np.flatnonzero(self.unit_mask)

    @cached_property
    def maximal(self):
        return np.flatnonzero(~self.unit_mask)

    @property
    def n_units(self):
        return int(self.unit_mask.sum())

    @property
    def n_maximal(self):
        return self.size - self.n_units

    @cached_property
    def t_powers(self):
        out = [self.one]
        x = self.t
        while x != self.one:
            out.append(x)
            x = self.mul(x, self.t)
        return out

    @property
    def t_order(self):
        return len(self.t_powers)

    @cached_property
    def t_group(self):
        return frozenset(self.t_powers)

    def in_t_group(self, u):
        return u in self.t_group

    @cached_property
    def one_plus_lambda_group(self):
        g = self.add(self.one, self.lam)
        out, x = {self.one}, g
        while x != self.one:
            out.add(x)
            x = self.mul(x, g)
        return frozenset(out)

    def nilpotency_index(self):
        """Least n with m^n = 0 (m is generated by p and l)."""
        n, power = 0, [self.one]
        gens = [self.from_int(self.p), self.lam]
        while any(x != self.zero for x in power):
            n += 1
            nxt = set()
            for x in power:
                for g in gens:
                    y = self.mul(x, g)
                    if y != self.zero:
                        nxt.add(y)
            power = list(nxt) or [self.zero]
        return n

    # -- special elements and thresholds ------------------------------------------

    def omega(self, ell):
        """``omega_ell = sum_{i < p^ell} (1 + l)^i``."""
        cache = self.__dict__.setdefault("_omega", {})
        if ell not in cache:
            s, x = self.zero, self.one
            g = self.add(self.one, self.lam)
            for _ in range(self.p ** ell):
                s = self.add(s, x)
                x = self.mul(x, g)
            cache[ell] = s
        return cache[ell]

    def delta(self, ell):
        if ell < 1:
            raise ValueError("delta needs ell >= 1")
        g = self.power(self.add(self.one, self.lam), self.p ** (ell - 1))
        s, x = self.zero, self.one
        for _ in range(self.p):
            s = self.add(s, x)
            x = self.mul(x, g)
        return s

    def ell0(self, a):
        """Least ``ell`` with ``omega_ell * a * (a - l) = 0``."""
        b = self.mul(a, self.sub(a, self.lam))
        ell = 0
        while self.mul(self.omega(ell), b) != self.zero:
            ell += 1
        return ell

    def ell0_unit(self):
        """Common value of ``ell0(u)`` over units (checked on every unit)."""
        ell = 0
        while self.omega(ell) != self.zero:
            ell += 1
        units = self.units
        b = self.mul_arr(units, self.sub_arr(units, self.const_arr(self.lam, units.shape)))
        for j in range(ell + 1):
            w = self.const_arr(self.omega(j), units.shape)
            vanish = self.mul_arr(w, b) == self.zero
            expect = j >= ell
            assert (vanish == expect).all(), "ell0 depends on the unit"
        return ell

    def _ell0_prime_element(self, m, ell):
        j = self.ell0(m) + ell
        x = self.add(self.one, self.mul(self.omega(j), self.sub(self.lam, m)))
        return x, j

    def _least_stable(self, m, member):
        # once omega vanishes the element is +-1, so membership holds from there on
        if self.is_unit(m):
            raise ValueError("ell0_prime is defined on the maximal ideal only")
        base = self.ell0(m)
        top = 0
        while self.omega(base + top) != self.zero:
            top += 1
        ell = top
        while ell > 0 and member(*self._ell0_prime_element(m, ell - 1)):
            ell -= 1
        return ell

    def ell0_prime(self, m):
        """Least ``ell'`` with ``(-1)^(p^(ell0(m)+ell)) (1 + omega (l - m))`` in ``<t>`` for all ``ell >= ell'``."""
        def member(x, j):
            sign = self.minus_one if self.p ** j % 2 else self.one
            return self.mul(sign, x) in self.t_group
        return self._least_stable(m, member)

    def ell0_prime_simplified(self, m):
        """Same threshold via membership of ``1 + omega (l - m)`` in ``<1 + l>``."""
        return self._least_stable(m, lambda x, j: x in self.one_plus_lambda_group)

    def unit_decompose(self, u):
        """``(u1, u2)`` with ``u = u1 u2``, ``u1 = 1 mod m`` and ``u2^(p-1) = 1``."""
        if not self.is_unit(u):
            raise ValueError("unit_decompose of a non-unit")
        u2 = self.power(u, self.n_maximal)
        u1 = self.mul(u, self.inverse(u2))
        return u1, u2


def ring_build(spec: RingSpec) -> Ring:
    return Ring(spec)


def ring_hom_table(src: Ring, dst: Ring):
    """Index map of the quotient map ``src -> dst`` sending ``l`` to ``l``.

    Raises ``ValueError`` when the defining ideal of ``src`` does not map to zero.
    """
    if src.p != dst.p:
        raise ValueError("rings over different primes")
    if dst.from_int(src.modulus) != dst.zero:
        raise ValueError("p^k of the source does not vanish in the target")
    for r in src.spec.relations:
        if dst.from_coeffs(r) != dst.zero:
            raise ValueError(f"relation {format_poly(r)} does not vanish in {dst.spec}")
    # l^N of the source ambient must vanish too (it lies in the source ideal)
    if dst.from_coeffs([0] * src.N + [1]) != dst.zero:
        raise ValueError("ambient truncation does not vanish in the target")
    V = src.vectors
    n = min(src.N, dst.N)
    W = np.zeros((src.size, dst.N), dtype=np.int64)
    W[:, :n] = V[:, :n]
    return dst._reduce_np(W)

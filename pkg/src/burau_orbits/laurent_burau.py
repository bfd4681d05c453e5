"""Exact arithmetic in Z[t, 1/t], the Burau generators and the map to PSL(2, Z) x Z."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


def is_odd_prime(p) -> bool:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p):
    if p == 2:
        raise ValueError("p = 2 is excluded")
    if not is_odd_prime(p):
        raise ValueError(f"p = {p!r} is not an odd prime")


class LaurentPoly:
    """Element of Z[t, 1/t] stored as ``{exponent: coefficient}`` without zeros."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = int(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, c, e):
        return cls({e: c})

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self):
        return not self._c

    def low(self):
        return min(self._c) if self._c else None

    def high(self):
        return max(self._c) if self._c else None

    def unit_degree(self):
        """Return ``k`` if this is ``+-t^k``, else ``None``."""
        if len(self._c) == 1:
            (e, v), = self._c.items()
            if v in (1, -1):
                return e
        return None

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            k = self.unit_degree()
            if k is None:
                raise ValueError("only +-t^k can be inverted in Z[t, 1/t]")
            sign = self._c[k]
            return LaurentPoly({-k * -n: sign ** (-n)})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def eval_int(self, x):
        if x in (1, -1):
            return sum(v * x ** (e % 2) for e, v in self._c.items())
        if any(e < 0 for e in self._c):
            raise ValueError("negative powers need an invertible evaluation point")
        return sum(v * x ** e for e, v in self._c.items())

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = str(abs(v))
            else:
                coef = "" if abs(v) == 1 else f"{abs(v)}*"
                mono = coef + ("t" if e == 1 else f"t^{e}")
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            s += f" {sign} {mono}"
        return s


T = LaurentPoly({1: 1})
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def special_element(kind: str, p: int, ell: int = 0) -> LaurentPoly:
    """``lambda = -1 - t``, ``omega_ell`` or ``delta_ell`` for the odd prime ``p``."""
    check_prime(p)
    minus_t = -T
    if kind == "lambda":
        return LaurentPoly({0: -1, 1: -1})
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if kind == "omega":
        c = {}
        for i in range(p ** ell):
            c[i] = (-1) ** i
        return LaurentPoly(c)
    if kind == "delta":
        if ell < 1:
            raise ValueError("delta needs ell >= 1")
        step = p ** (ell - 1)
        return sum((minus_t ** (step * i) for i in range(p)), ZERO)
    raise ValueError(f"unknown special element {kind!r}")


@dataclass(frozen=True)
class BurauMatrix:
    """2x2 matrix over Z[t, 1/t]; entries in row-major order ``(x, y, z, w)``."""

    x: LaurentPoly
    y: LaurentPoly
    z: LaurentPoly
    w: LaurentPoly

    @classmethod
    def identity(cls):
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def scalar(cls, c: LaurentPoly):
        return cls(c, ZERO, ZERO, c)

    @property
    def entries(self):
        return ((self.x, self.y), (self.z, self.w))

    def __matmul__(self, o: "BurauMatrix"):
        return BurauMatrix(
            self.x * o.x + self.y * o.z,
            self.x * o.y + self.y * o.w,
            self.z * o.x + self.w * o.z,
            self.z * o.y + self.w * o.w,
        )

    def det(self):
        return self.x * self.w - self.y * self.z

    def inverse(self):
        d = self.det()
        k = d.unit_degree()
        if k is None:
            raise ValueError(f"determinant {d!r} is not a unit of Z[t, 1/t]")
        dinv = d ** -1
        return BurauMatrix(self.w * dinv, -self.y * dinv, -self.z * dinv, self.x * dinv)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = BurauMatrix.identity()
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def eval_at(self, x):
        return ((self.x.eval_int(x), self.y.eval_int(x)),
                (self.z.eval_int(x), self.w.eval_int(x)))


BX = BurauMatrix(ZERO, -T, T, -T)
BY = BurauMatrix(ZERO, -T, -(T * T), ZERO)
BT = BurauMatrix.scalar(T)

GENERATORS = {
    "X": BX, "Y": BY, "T": BT,
    "X-": BX.inverse(), "Y-": BY.inverse(), "T-": BT.inverse(),
}

# abelianisation of Gamma: ab(X) = 2, ab(Y) = 3 (mod 6)
AB = {"X": 2, "Y": 3, "X-": -2, "Y-": -3, "T": 0, "T-": 0}


def burau_word_eval(word: Iterable[str]) -> BurauMatrix:
    """Product of generator matrices, left to right.

    Letters are ``X``, ``Y``, ``T`` and the inverses ``X-``, ``Y-``, ``T-``
    (``X^-1`` style spellings are accepted too).
    """
    out = BurauMatrix.identity()
    for letter in word:
        out = out @ GENERATORS[_letter(letter)]
    return out


def _letter(s):
    s = s.replace("^-1", "-").replace("⁻¹", "-").replace("^{-1}", "-")
    if s not in GENERATORS:
        raise ValueError(f"unknown Burau generator {s!r}")
    return s


@dataclass(frozen=True)
class PSL2Elem:
    """Integer 2x2 matrix of determinant 1 up to sign, first nonzero entry positive."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be 1")
        for v in (self.a, self.b, self.c, self.d):
            if v:
                if v < 0:
                    raise ValueError("use PSL2Elem.make for sign normalisation")
                break

    @classmethod
    def make(cls, a, b, c, d):
        for v in (a, b, c, d):
            if v:
                if v < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        return cls(a, b, c, d)

    def __matmul__(self, o: "PSL2Elem"):
        return PSL2Elem.make(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                             self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)


PSL_X = PSL2Elem.make(0, 1, -1, 1)
PSL_Y = PSL2Elem.make(0, -1, 1, 0)
PSL_ONE = PSL2Elem.make(1, 0, 0, 1)


def reduce_c_dg(M: BurauMatrix) -> tuple[PSL2Elem, int]:
    """``(c(M), dg(M))``: evaluation at ``t = -1`` projectivised, and ``deg det M``."""
    k = M.det().unit_degree()
    if k is None:
        raise ValueError(f"determinant {M.det()!r} is not +-t^k")
    (a, b), (c, d) = M.eval_at(-1)
    if a * d - b * c != 1:
        raise ValueError("matrix does not evaluate into SL(2, Z) at t = -1")
    return PSL2Elem.make(a, b, c, d), k


def word_ab(word) -> int:
    return sum(AB[_letter(w)] for w in word) % 6

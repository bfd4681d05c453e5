"""Text forms of rings and wheels.

Rings::

    GF(7)[l]/(l^2)
    Z(9)[l]/(3*l, l^2)
    Z(9)[t]/(3*(t+1), (t+1)^2)      # t is rewritten as -1 - l

Wheels: ``p``, divisor exponents ``k1,k2,...`` and t-matrix rows ``a,b;c,d``.
"""

from __future__ import annotations

from .finite_module import FiniteModule, module_build
from .finite_ring import RingSpec
from .laurent_burau import LaurentPoly, check_prime


class SpecSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at offset {pos}")
        self.pos = pos


class SpecValueError(ValueError):
    pass


def _poly_add(a, b, sign=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def _poly_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


class _Parser:
    def __init__(self, text):
        # drop whitespace but remember original offsets
        self.chars = [(c, i) for i, c in enumerate(text) if not c.isspace()]
        self.i = 0
        self.end = len(text)
        self.var = "l"

    def pos(self):
        return self.chars[self.i][1] if self.i < len(self.chars) else self.end

    def peek(self):
        return self.chars[self.i][0] if self.i < len(self.chars) else ""

    def expect(self, s):
        for ch in s:
            if self.peek() != ch:
                raise SpecSyntaxError(f"expected {s!r}", self.pos())
            self.i += 1

    def integer(self):
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if self.i == start:
            raise SpecSyntaxError("expected an integer", self.pos())
        return int("".join(c for c, _ in self.chars[start:self.i]))

    def word(self):
        start = self.i
        while self.peek().isalpha():
            self.i += 1
        return "".join(c for c, _ in self.chars[start:self.i])

    # base ::= GF(p) | Z(p^k) | Z(n)
    def base(self):
        pos = self.pos()
        w = self.word()
        if w not in ("GF", "Z"):
            raise SpecSyntaxError("expected GF( or Z(", pos)
        self.expect("(")
        npos = self.pos()
        n = self.integer()
        k = 1
        if self.peek() == "^":
            self.i += 1
            k = self.integer()
            p = n
        else:
            p, k = _prime_power(n, npos)
        self.expect(")")
        if w == "GF" and k != 1:
            raise SpecValueError("GF(q) needs a prime q")
        if p == 2:
            raise SpecValueError("p = 2 is excluded")
        try:
            check_prime(p)
        except ValueError as e:
            raise SpecValueError(str(e)) from None
        return p, k

    def expr(self):
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        acc = self.term()
        if sign < 0:
            acc = {e: -c for e, c in acc.items()}
        while self.peek() in ("+", "-") and self.peek():
            s = 1 if self.peek() == "+" else -1
            self.i += 1
            acc = _poly_add(acc, self.term(), s)
        return acc

    def term(self):
        acc = self.power()
        while self.peek() == "*":
            self.i += 1
            acc = _poly_mul(acc, self.power())
        return acc

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            e = self.integer()
            out = {0: 1}
            for _ in range(e):
                out = _poly_mul(out, base)
            return out
        return base

    def atom(self):
        c = self.peek()
        if c == "(":
            self.i += 1
            v = self.expr()
            self.expect(")")
            return v
        if c.isdigit():
            n = self.integer()
            return {0: n} if n else {}
        if c == self.var:
            self.i += 1
            return {1: 1} if self.var == "l" else {0: -1, 1: -1}
        raise SpecSyntaxError("expected an integer, a variable or '('", self.pos())


def _prime_power(n, pos):
    if n < 2:
        raise SpecValueError(f"{n} is not a prime power")
    p = next(d for d in range(2, n + 1) if n % d == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise SpecValueError(f"Z(n) needs n = p^k (offset {pos})")
    return p, k


def parse_ring_spec(text: str) -> RingSpec:
    """Parse the ring grammar; raises :class:`SpecSyntaxError` or :class:`SpecValueError`."""
    ps = _Parser(text)
    p, k = ps.base()
    ps.expect("[")
    var_pos = ps.pos()
    var = ps.word()
    if var not in ("l", "t"):
        raise SpecSyntaxError("variable must be l or t", var_pos)
    ps.var = var
    ps.expect("]")
    ps.expect("/")
    ps.expect("(")
    rels = [ps.expr()]
    while ps.peek() == ",":
        ps.i += 1
        rels.append(ps.expr())
    ps.expect(")")
    if ps.i != len(ps.chars):
        raise SpecSyntaxError("trailing characters", ps.pos())
    out = []
    for r in rels:
        deg = max(r) if r else 0
        out.append(tuple(r.get(i, 0) for i in range(deg + 1)))
    return RingSpec(p, k, tuple(out))


def parse_laurent(text: str) -> LaurentPoly:
    """Polynomial in ``t`` (nonnegative powers) as a Laurent polynomial."""
    ps = _Parser(text)
    ps.var = "t"
    # parse in the t variable directly
    ps.atom = _atom_t.__get__(ps)
    v = ps.expr()
    if ps.i != len(ps.chars):
        raise SpecSyntaxError("trailing characters", ps.pos())
    return LaurentPoly(v)


def _atom_t(self):
    c = self.peek()
    if c == "(":
        self.i += 1
        v = self.expr()
        self.expect(")")
        return v
    if c.isdigit():
        n = self.integer()
        return {0: n} if n else {}
    if c == "t":
        self.i += 1
        return {1: 1}
    raise SpecSyntaxError("expected an integer, t or '('", self.pos())


def parse_int_list(text, sep=","):
    try:
        return [int(x) for x in text.replace(" ", "").split(sep) if x != ""]
    except ValueError:
        raise SpecSyntaxError(f"bad integer list {text!r}", 0) from None


def parse_matrix(text):
    rows = [parse_int_list(r) for r in text.replace(" ", "").split(";") if r]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise SpecSyntaxError(f"matrix {text!r} is not square", 0)
    return rows


def parse_wheel(p, divisors, matrix) -> FiniteModule:
    try:
        p = int(p)
    except ValueError:
        raise SpecSyntaxError(f"bad prime {p!r}", 0) from None
    divs = parse_int_list(divisors)
    T = parse_matrix(matrix)
    if len(T) != len(divs):
        raise SpecValueError("matrix size does not match the divisors")
    try:
        return module_build(p, divs, T)
    except ValueError as e:
        raise SpecValueError(str(e)) from None


def format_wheel(A: FiniteModule) -> str:
    divs = ",".join(str(k) for k in A.divisors)
    rows = ";".join(",".join(str(x) for x in row) for row in A.T)
    return f"{A.p} {divs} {rows}"


def parse_input(kind, text):
    """``("ring", spec text)`` or ``("wheel", "p k1,k2 a,b;c,d")``."""
    if kind == "ring":
        return parse_ring_spec(text)
    if kind in ("wheel", "module"):
        parts = text.split()
        if len(parts) != 3:
            raise SpecSyntaxError("module text must be 'p divisors matrix'", 0)
        return parse_wheel(*parts)
    raise SpecValueError(f"unknown input kind {kind!r}")

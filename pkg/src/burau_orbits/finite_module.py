"""Finite m-local Lambda-modules given as ``(+) Z/p^k_i`` with a t-matrix.

Elements are ints in mixed radix (coordinate 0 most significant), and ``t``
acts on column vectors: ``t . a = T a``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product

import numpy as np

from .finite_ring import Ring
from .lattice import smith
from .laurent_burau import BurauMatrix, LaurentPoly, check_prime


def _rank_mod_p(M, p):
    """Rank of an integer matrix over F_p and a basis of its left kernel."""
    A = [[int(x) % p for x in row] for row in M]
    n_rows = len(A)
    n_cols = len(A[0]) if A else 0
    # augment with identity to track row operations
    aug = [A[i] + [int(i == j) for j in range(n_rows)] for i in range(n_rows)]
    rank = 0
    for c in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if aug[r][c]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = pow(aug[rank][c], -1, p)
        aug[rank] = [x * inv % p for x in aug[rank]]
        for r in range(n_rows):
            if r != rank and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[rank])]
        rank += 1
    kernel = [row[n_cols:] for row in aug[rank:]]
    return rank, kernel


class FiniteModule:
    """Finite abelian p-group with an automorphism ``t`` such that ``t + 1`` is nilpotent."""

    def __init__(self, p, divisors, T, name=None):
        check_prime(p)
        divisors = tuple(int(k) for k in divisors)
        r = len(divisors)
        T = np.array(T, dtype=object).reshape(r, r) if r else np.zeros((0, 0), dtype=object)
        if any(k < 1 for k in divisors):
            raise ValueError("divisor exponents must be positive")
        self.p = p
        self.divisors = divisors
        self.orders = tuple(p ** k for k in divisors)
        self.rank = r
        self.T = [[int(T[i][j]) % self.orders[i] for j in range(r)] for i in range(r)]
        self.name = name
        for i in range(r):
            for j in range(r):
                need = p ** max(0, divisors[i] - divisors[j])
                if self.T[i][j] % need:
                    raise ValueError(f"t-matrix entry ({i},{j}) does not give an endomorphism")
        self.size = int(np.prod(self.orders, dtype=object)) if r else 1
        w = [1] * r
        for i in range(r - 2, -1, -1):
            w[i] = w[i + 1] * self.orders[i + 1]
        self.weights = w
        self._w = np.array(w, dtype=np.int64)
        self._ord = np.array(self.orders, dtype=np.int64)
        self._T = np.array(self.T, dtype=np.int64).reshape(r, r)

        rank_T, _ = _rank_mod_p(self.T, p)
        if rank_T != r:
            raise ValueError("t is not invertible on the group")
        if not self._plus_one_nilpotent():
            raise ValueError("t + 1 is not nilpotent (module is not m-local)")
        n1 = [[(self.T[i][j] + (i == j)) % p for j in range(r)] for i in range(r)]
        # residue functionals: rows P with P (T + 1) = 0 mod p
        rank_n, left = _rank_mod_p(n1, p)
        self.residue_rank = r - rank_n
        self._residue_basis = np.array(left, dtype=np.int64).reshape(self.residue_rank, r)
        if self.residue_rank not in (1, 2):
            raise ValueError(f"residue rank {self.residue_rank} is not 1 or 2")

    def _plus_one_nilpotent(self):
        r = self.rank
        N = [[self.T[i][j] + (i == j) for j in range(r)] for i in range(r)]
        # the chain of images stabilises after at most sum(divisors) steps
        cols = [[int(i == j) for i in range(r)] for j in range(r)]
        for _ in range(sum(self.divisors) + 1):
            cols = [[sum(N[i][k] * c[k] for k in range(r)) % self.orders[i] for i in range(r)]
                    for c in cols]
        return all(not any(c) for c in cols)

    def __repr__(self):
        rows = ";".join(",".join(str(x) for x in row) for row in self.T)
        return f"FiniteModule(p={self.p}, divisors={self.divisors}, T=[{rows}])"

    # -- element encoding ---------------------------------------------------------

    @cached_property
    def coords(self):
        idx = np.arange(self.size, dtype=np.int64)
        cols = [(idx // w) % d for w, d in zip(self.weights, self.orders)]
        return np.stack(cols, axis=1)

    def vector(self, a):
        return [(a // w) % d for w, d in zip(self.weights, self.orders)]

    def index(self, vec):
        return sum((int(c) % d) * w for c, d, w in zip(vec, self.orders, self.weights))

    def index_arr(self, C):
        return (C % self._ord) @ self._w

    # -- vectorised arithmetic -----------------------------------------------------

    def add_arr(self, a, b):
        return self.index_arr(self.coords[a] + self.coords[b])

    def sub_arr(self, a, b):
        return self.index_arr(self.coords[a] - self.coords[b])

    def neg_arr(self, a):
        return self.index_arr(-self.coords[a])

    def smul_arr(self, c, a):
        return self.index_arr(int(c) * self.coords[a])

    @cached_property
    def t_table(self):
        return self.index_arr(self.coords @ self._T.T)

    @cached_property
    def t_inv_table(self):
        inv = np.empty(self.size, dtype=np.int64)
        inv[self.t_table] = np.arange(self.size)
        return inv

    def t_arr(self, a, k=1):
        a = np.asarray(a)
        table = self.t_table if k >= 0 else self.t_inv_table
        for _ in range(abs(k)):
            a = table[a]
        return a

    def poly_arr(self, f: LaurentPoly, a):
        """``f(t) . a`` elementwise."""
        a = np.asarray(a, dtype=np.int64)
        acc = np.zeros(a.shape + (self.rank,), dtype=np.int64)
        top = max(self.orders)
        for e, c in f.items():
            acc += (int(c) % top) * self.coords[self.t_arr(a, e)]
            acc %= self._ord
        return self.index_arr(acc)

    @cached_property
    def depth(self):
        """Order of ``t`` as an automorphism."""
        ident = np.arange(self.size)
        x, n = self.t_table.copy(), 1
        while not np.array_equal(x, ident):
            x = self.t_table[x]
            n += 1
        return n

    @cached_property
    def t_orbit_tables(self):
        """``tables[k] = t^k`` as an index map, for ``k < depth``."""
        out = [np.arange(self.size)]
        for _ in range(self.depth - 1):
            out.append(self.t_table[out[-1]])
        return np.stack(out)

    # -- residue space ----------------------------------------------------------------

    @cached_property
    def residues(self):
        """Image of every element in ``A / mA`` as an ``(size, residue_rank)`` array over F_p."""
        return (self.coords % self.p) @ self._residue_basis.T % self.p

    def residue(self, a):
        return [int(x) for x in self.residues[a]]

    def generating_mask(self, a1, a2):
        r1 = self.residues[np.asarray(a1)]
        r2 = self.residues[np.asarray(a2)]
        if self.residue_rank == 1:
            return (r1[..., 0] != 0) | (r2[..., 0] != 0)
        det = (r1[..., 0] * r2[..., 1] - r1[..., 1] * r2[..., 0]) % self.p
        return det != 0

    def is_generating_pair(self, pair):
        return bool(self.generating_mask(np.array([pair[0]]), np.array([pair[1]]))[0])

    # -- Burau action -------------------------------------------------------------------

    def pair_act(self, pair, M: BurauMatrix):
        """``(a1, a2) . ((x, y), (z, w)) = (x a1 + z a2, y a1 + w a2)``."""
        a1 = np.atleast_1d(np.asarray(pair[0], dtype=np.int64))
        a2 = np.atleast_1d(np.asarray(pair[1], dtype=np.int64))
        b1 = self.add_arr(self.poly_arr(M.x, a1), self.poly_arr(M.z, a2))
        b2 = self.add_arr(self.poly_arr(M.y, a1), self.poly_arr(M.w, a2))
        if np.ndim(pair[0]) == 0:
            return int(b1[0]), int(b2[0])
        return b1, b2

    # -- submodules and homomorphisms -------------------------------------------------------

    def span(self, gens):
        """Lambda-submodule generated by ``gens`` as a sorted index array."""
        seen = np.zeros(self.size, dtype=bool)
        seen[0] = True
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            a = np.array(frontier, dtype=np.int64)
            cand = [self.t_table[a]] + [self.add_arr(a, np.full_like(a, g)) for g in gens]
            new = np.unique(np.concatenate(cand))
            new = new[~seen[new]]
            seen[new] = True
            frontier = new.tolist()
        return np.flatnonzero(seen)

    def annihilates(self, f: LaurentPoly):
        return bool((self.poly_arr(f, np.arange(self.size)) == 0).all())

    @cached_property
    def generators(self):
        """Lifts of a basis of ``A / mA`` (these generate ``A`` over Lambda)."""
        out = []
        res = self.residues
        for a in range(self.size):
            cand = out + [a]
            M = res[cand]
            if _rank_mod_p(M.tolist(), self.p)[0] == len(cand):
                out.append(a)
                if len(out) == self.residue_rank:
                    return out
        raise AssertionError("no residue basis found")

    def invariants(self):
        """Screening invariants preserved by Lambda-isomorphism."""
        lam = LaurentPoly({0: -1, 1: -1})
        inv = [tuple(sorted(self.divisors)), self.depth, self.residue_rank]
        allx = np.arange(self.size)
        x = allx
        for _ in range(sum(self.divisors) + 1):
            x = np.unique(self.poly_arr(lam, x))
            inv.append(len(x))
            px = np.unique(self.smul_arr(self.p, x))
            inv.append(len(px))
        return tuple(inv)

    def hom_from_generators(self, other: "FiniteModule", images):
        """Index map of the Lambda-homomorphism sending ``generators`` to ``images``.

        Returns ``None`` if no such homomorphism exists.
        """
        gens = self.generators
        phi = np.full(self.size, -1, dtype=np.int64)
        phi[0] = 0
        frontier = np.array([0], dtype=np.int64)
        while len(frontier):
            nxt = []
            steps = [(self.t_table[frontier], other.t_table[phi[frontier]])]
            for g, b in zip(gens, images):
                steps.append((self.add_arr(frontier, np.full_like(frontier, g)),
                              other.add_arr(phi[frontier], np.full_like(frontier, b))))
            for src, dst in steps:
                known = phi[src] >= 0
                if (phi[src[known]] != dst[known]).any():
                    return None
                src, dst = src[~known], dst[~known]
                # a new element may be reached twice in one step
                uniq, first, inverse = np.unique(src, return_index=True, return_inverse=True)
                if (dst != dst[first][inverse]).any():
                    return None
                phi[uniq] = dst[first]
                nxt.append(uniq)
            frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
        if (phi < 0).any():
            return None
        # additivity and t-equivariance on all elements
        allx = np.arange(self.size)
        if (phi[self.t_table] != other.t_table[phi]).any():
            return None
        for j in range(self.rank):
            e = self.index([int(i == j) for i in range(self.rank)])
            if (phi[self.add_arr(allx, np.full_like(allx, e))] != other.add_arr(phi, np.full_like(phi, phi[e]))).any():
                return None
        return phi


def module_build(p, divisors, T, name=None) -> FiniteModule:
    return FiniteModule(p, divisors, T, name=name)


def wheel(p, divisors, T) -> FiniteModule:
    m = FiniteModule(p, divisors, T)
    if m.residue_rank != 2:
        raise ValueError("a wheel needs residue rank 2")
    return m


class RingModule(FiniteModule):
    """``R`` as a cyclic Lambda-module, with the element correspondence to the ring."""

    def __init__(self, ring: Ring):
        n = ring.N
        # additive group Z^n / L with L spanned by the Hermite rows
        diag, U, V, Vinv = smith(ring.rows)
        keep = [i for i, s in enumerate(diag) if s != 1]
        divisors = []
        for i in keep:
            s, k = diag[i], 0
            while s % ring.p == 0:
                s //= ring.p
                k += 1
            assert s == 1
            divisors.append(k)
        # multiplication by t = -1 - l on coefficient rows
        Mt = [[0] * n for _ in range(n)]
        for i in range(n):
            Mt[i][i] -= 1
            if i + 1 < n:
                Mt[i][i + 1] -= 1
        Vi = np.array(Vinv, dtype=object)
        Vm = np.array(V, dtype=object)
        TT = Vi.dot(np.array(Mt, dtype=object)).dot(Vm)
        T = [[int(TT[j][i]) for j in keep] for i in keep]
        super().__init__(ring.p, divisors, T, name=str(ring.spec))
        self.ring = ring
        Vk = np.array([[int(V[r][c]) for c in keep] for r in range(n)], dtype=np.int64)
        self.from_ring = self.index_arr(ring.vectors @ Vk)
        self.to_ring = np.empty(self.size, dtype=np.int64)
        self.to_ring[self.from_ring] = np.arange(ring.size)
        if len(np.unique(self.from_ring)) != ring.size:
            raise AssertionError("ring/module correspondence is not bijective")
        # the correspondence must intertwine t
        tr = ring.mul_arr(np.arange(ring.size), ring.const_arr(ring.t, ring.size))
        if (self.from_ring[tr] != self.t_table[self.from_ring]).any():
            raise AssertionError("t-action mismatch between ring and module")


def module_from_ring(ring: Ring) -> RingModule:
    return RingModule(ring)


def module_iso(A: FiniteModule, B: FiniteModule) -> bool:
    return find_module_iso(A, B) is not None


def find_module_iso(A: FiniteModule, B: FiniteModule):
    """A Lambda-isomorphism ``A -> B`` as an index map, or ``None``."""
    if A.p != B.p or A.size != B.size or A.invariants() != B.invariants():
        return None
    gens = A.generators
    sizes = [len(A.span([g])) for g in gens]
    cands = []
    for g, s in zip(gens, sizes):
        c = [b for b in range(B.size) if len(B.span([b])) == s]
        cands.append(c)
    if A.residue_rank == 1:
        # any generator image works once one does: units of the ring act transitively
        c0 = [b for b in cands[0] if B.residues[b].any()]
        return _try(A, B, [c0[0]]) if c0 else None
    for b1 in cands[0]:
        for b2 in cands[1]:
            if not B.generating_mask(np.array([b1]), np.array([b2]))[0]:
                continue
            phi = _try(A, B, [b1, b2])
            if phi is not None:
                return phi
    return None


def _try(A, B, images):
    phi = A.hom_from_generators(B, images)
    if phi is None or len(np.unique(phi)) != A.size:
        return None
    return phi


def all_pairs(A: FiniteModule):
    """All pairs as two flat index arrays (``a1`` major)."""
    a1 = np.repeat(np.arange(A.size, dtype=np.int64), A.size)
    a2 = np.tile(np.arange(A.size, dtype=np.int64), A.size)
    return a1, a2


def generating_pairs(A: FiniteModule):
    a1, a2 = all_pairs(A)
    mask = A.generating_mask(a1, a2)
    return a1[mask], a2[mask]


def count_generating_pairs_bruteforce(A: FiniteModule):
    return sum(1 for a, b in product(range(A.size), repeat=2) if A.is_generating_pair((a, b)))

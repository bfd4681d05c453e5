"""Integer lattice normal forms used to present finite quotient rings.

Only what the ring and module layers need: a Hermite form with pivots in the
highest coordinate (so reduction runs from the top degree down) and a Smith
form with both transformation matrices.
"""

from __future__ import annotations


def hermite_top(generators, n, modulus):
    """Hermite basis of the lattice spanned by ``generators`` and ``modulus * Z^n``.

    Returns a list ``rows`` of length ``n`` where ``rows[i][i] > 0``,
    ``rows[i][j] == 0`` for ``j > i`` and ``0 <= rows[i][j] < rows[j][j]``
    for ``j < i``.
    """
    active = [[c % modulus for c in g] for g in generators]

    pivots = [None] * n
    for col in range(n - 1, -1, -1):
        # modulus * e_col is always in the lattice; lower coordinates are
        # reduced mod modulus because modulus * e_j is added at column j
        unit = [0] * n
        unit[col] = modulus
        rows = [r for r in active if r[col] != 0] + [unit]
        rest = [r for r in active if r[col] == 0]
        while len(rows) > 1:
            rows.sort(key=lambda r: abs(r[col]))
            head = rows[0]
            nxt = [head]
            for r in rows[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                r = [a % modulus if j < col else a for j, a in enumerate(r)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            rows = nxt
        head = rows[0]
        if head[col] < 0:
            head = [-a for a in head]
        pivots[col] = head
        active = [[a % modulus for a in r] for r in rest]
        active = [r for r in active if any(r)]

    for i in range(n):
        row = pivots[i]
        for j in range(i - 1, -1, -1):
            q = row[j] // pivots[j][j]
            if q:
                row = [a - q * b for a, b in zip(row, pivots[j])]
        pivots[i] = row
    return pivots


def reduce_top(vec, rows):
    """Canonical representative of ``vec`` modulo the Hermite basis ``rows``."""
    v = list(vec)
    for i in range(len(rows) - 1, -1, -1):
        q = v[i] // rows[i][i]
        if q:
            piv = rows[i]
            for j in range(i + 1):
                v[j] -= q * piv[j]
    return v


def smith(matrix):
    """Smith normal form ``S = U * A * V`` of an integer matrix.

    Returns ``(diag, U, V, Vinv)`` with ``diag`` the diagonal of ``S``
    (nonnegative, each dividing the next).
    """
    a = [list(r) for r in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col dst += q * col src
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _finish(a, U, V, Vi, m, n)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return _finish(a, U, V, Vi, m, n)


def _finish(a, U, V, Vi, m, n):
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, U, V, Vi

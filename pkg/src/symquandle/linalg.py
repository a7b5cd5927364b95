"""Exact integer and mod-p linear algebra on lists of Python ints.

Matrices are lists of rows.  Everything here is exact; nothing touches
floating point.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, r)) for r in a]


def shape(a: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, int]:
    if not a:
        return 0, (ncols or 0)
    return len(a), len(a[0])


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * n
        for k, v in enumerate(row):
            if v:
                bk = b[k]
                for j in range(n):
                    if bk[j]:
                        acc[j] += v * bk[j]
        out.append(acc)
    return out


def transpose(a: Sequence[Sequence[int]], nrows_if_empty: int = 0) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def hstack(*blocks: Matrix, nrows: int) -> Matrix:
    out = [[] for _ in range(nrows)]
    for b in blocks:
        if not b:
            continue
        for i in range(nrows):
            out[i].extend(b[i])
    return out


def columns(a: Matrix) -> list[list[int]]:
    return transpose(a) if a and a[0] else []


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return [[c[i] for c in cols] for i in range(nrows)]


# -- Smith normal form -------------------------------------------------------


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Return (D, U, V) with U*M*V = D, D diagonal with d1 | d2 | ...

    U and V are unimodular.  Pivots are chosen by smallest nonzero magnitude.
    """
    a = copy(m)
    rows, cols = shape(a, ncols)
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        ra, rs = a[dst], a[src]
        for c in range(cols):
            if rs[c]:
                ra[c] += k * rs[c]
        ua, us = u[dst], u[src]
        for c in range(rows):
            if us[c]:
                ua[c] += k * us[c]

    def add_col(src, dst, k):
        for r in a:
            if r[src]:
                r[dst] += k * r[src]
        for r in v:
            if r[src]:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(t, i, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(t, j, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/col t to the pivot
                best = (abs(p), t, t)
                for i in range(t + 1, rows):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, cols):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # pivot must divide the rest of the lower-right block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form."""
    d, _, _ = smith_normal_form(m)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i]:
            out.append(d[i][i])
    return out


# -- column echelon, kernels, lattices --------------------------------------


def column_echelon(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Unimodular V with M*V = [H | 0]; returns (H columns, V, rank).

    H is in column echelon form (each successive column has its leading
    nonzero strictly lower).  The last ``ncols - rank`` columns of V span the
    integer kernel of M.
    """
    a = copy(m)
    rows, cols = shape(a, ncols)
    v = identity(cols)
    colsa = [[a[i][j] for i in range(rows)] for j in range(cols)]
    colsv = [[v[i][j] for i in range(cols)] for j in range(cols)]
    rank = 0
    for i in range(rows):
        if rank == cols:
            break
        # gcd-reduce entries in row i among columns rank..cols-1
        while True:
            nz = [j for j in range(rank, cols) if colsa[j][i]]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(colsa[j][i]))
            colsa[rank], colsa[jmin] = colsa[jmin], colsa[rank]
            colsv[rank], colsv[jmin] = colsv[jmin], colsv[rank]
            p = colsa[rank][i]
            done = True
            for j in range(rank + 1, cols):
                x = colsa[j][i]
                if x:
                    q = x // p
                    cj, cr = colsa[j], colsa[rank]
                    for k in range(i, rows):
                        if cr[k]:
                            cj[k] -= q * cr[k]
                    vj, vr = colsv[j], colsv[rank]
                    for k in range(cols):
                        if vr[k]:
                            vj[k] -= q * vr[k]
                    if cj[i]:
                        done = False
            if done:
                break
        if any(colsa[j][i] for j in range(rank, cols)):
            if colsa[rank][i] < 0:
                colsa[rank] = [-x for x in colsa[rank]]
                colsv[rank] = [-x for x in colsv[rank]]
            rank += 1
    return colsa[:rank], colsv, rank


def kernel_basis(m: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the integer null space {x : M x = 0} (as vectors)."""
    if not m:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    _, colsv, rank = column_echelon(m, ncols)
    return [list(c) for c in colsv[rank:]]


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Basis of the Z-span of the given vectors."""
    gens = [g for g in gens if any(g)]
    if not gens:
        return []
    h, _, _ = column_echelon(from_columns(gens, dim), len(gens))
    return [list(c) for c in h]


def solve_in_basis(basis: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Integer coefficients c with sum c_i basis_i = target, or None.

    ``basis`` must be linearly independent.
    """
    dim = len(target)
    k = len(basis)
    if k == 0:
        return [] if not any(target) else None
    b = from_columns(basis, dim)
    d, u, v = smith_normal_form(b, k)
    ut = matvec(u, target)
    y = []
    for i in range(dim):
        di = d[i][i] if i < k else 0
        if di == 0:
            if ut[i]:
                return None
            if i < k:
                y.append(0)
            continue
        if ut[i] % di:
            return None
        y.append(ut[i] // di)
    return matvec(v, y[:k])


def in_span(gens: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    if not any(target):
        return True
    return solve_in_basis(lattice_basis(gens, len(target)), target) is not None


# -- mod p ---------------------------------------------------------------------


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    k = 2
    while k * k <= m:
        if m % k == 0:
            return False
        k += 1
    return True


def rref_mod(m: Sequence[Sequence[int]], p: int, ncols: int | None = None):
    """Reduced row echelon form over Z/p; returns (rows, pivot columns)."""
    a = [[x % p for x in r] for r in m]
    rows, cols = shape(a, ncols)
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                ai, ar = a[i], a[r]
                a[i] = [(x - f * y) % p for x, y in zip(ai, ar)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def rank_mod(m: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> int:
    return len(rref_mod(m, p, ncols)[1])


def nullspace_mod(m: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {x : M x = 0 mod p}, returned in reduced echelon form."""
    red, pivots = rref_mod(m, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for row, pc in zip(red, pivots):
            vec[pc] = (-row[f]) % p
        basis.append(vec)
    if not basis:
        return []
    return rref_mod(basis, p, ncols)[0]

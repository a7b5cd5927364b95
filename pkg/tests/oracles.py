"""Independent brute-force oracles used by the tests.

None of these reuse the library's solvers: they enumerate or rewrite
directly from the defining formulas.
"""

import itertools

import sympy

from symquandle.algebra import FiniteQuandle, XSetAction, make_conj, make_dihedral, make_trivial, symmetric_group_table
from symquandle.coloring import QColoring, is_q_coloring


def alexander(n, t):
    """x * y = t x + (1 - t) y mod n."""
    return FiniteQuandle(tuple(tuple((t * x + (1 - t) * y) % n for y in range(n)) for x in range(n)))


def quandle_pool():
    _, s3 = symmetric_group_table(3)
    return {
        "T1": make_trivial(1), "T2": make_trivial(2), "T3": make_trivial(3), "T4": make_trivial(4),
        "R3": make_dihedral(3), "R4": make_dihedral(4), "R5": make_dihedral(5), "R6": make_dihedral(6),
        "S4": alexander(5, 2), "A7": alexander(7, 3), "ConjS3": make_conj(s3),
    }


def brute_inverse(q, x, y):
    return [z for z in range(q.size) if q.table[z][y] == x]


def brute_involutions(n):
    for p in itertools.permutations(range(n)):
        if all(p[p[i]] == i for i in range(n)):
            yield p


def naive_color_q(d, o, q):
    """Filter all |X|^{#arcs} labelings."""
    out = []
    for labs in itertools.product(range(q.size), repeat=len(d.arcs)):
        c = QColoring(tuple(labs))
        if is_q_coloring(d, o, q, c):
            out.append(c)
    return out


def naive_shadow(d, o, q, a):
    """Filter all labelings of arcs and regions."""
    out = []
    for labs in itertools.product(range(q.size), repeat=len(d.arcs)):
        if not is_q_coloring(d, o, q, QColoring(tuple(labs))):
            continue
        for regs in itertools.product(range(a.ysize), repeat=d.nregions):
            c = QColoring(tuple(labs), tuple(regs))
            if is_q_coloring(d, o, q, c, a):
                out.append(c)
    return out


def rewrite_to_positive(gen, dq, da, n):
    """All terminal forms of a signed tuple over D_X under the rho relations.

    A tuple with a negative entry at position i is replaced by minus its
    relation partner (r*x_i, x_1*x_i, ..., rho(x_i), ...), computed with the
    double's own table and action.  Every order of rewriting is explored.
    """
    start = (1, tuple(gen))
    seen, frontier, terminal = {start}, [start], set()
    while frontier:
        sgn, g = frontier.pop()
        r, xs = g[0], g[1:]
        neg = [i for i, x in enumerate(xs) if x >= n]
        if not neg:
            terminal.add((sgn, g))
            continue
        for i in neg:
            xi = xs[i]
            partner = (da.act[r][xi],) + tuple(dq.table[x][xi] for x in xs[:i]) + ((xi + n) % (2 * n),) + xs[i + 1:]
            nxt = (-sgn, partner)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return terminal


def free_boundary_matrix(q, a, n):
    """∂_n of the quandle complex on nondegenerate tuples, from the formula."""
    def nondeg(k):
        return [(r,) + xs for r in range(a.ysize) for xs in itertools.product(range(q.size), repeat=k)
                if all(xs[i] != xs[i + 1] for i in range(k - 1))]
    src, tgt = nondeg(n), nondeg(n - 1) if n > 1 else []
    idx = {g: i for i, g in enumerate(tgt)}
    m = [[0] * len(src) for _ in range(len(tgt))]
    if n <= 1:
        return m, src, tgt
    for j, (r, *xs) in enumerate(src):
        for i in range(1, n + 1):
            s = (-1) ** i
            a_term = (r,) + tuple(xs[:i - 1]) + tuple(xs[i:])
            b_term = (a.act[r][xs[i - 1]],) + tuple(q.table[x][xs[i - 1]] for x in xs[:i - 1]) + tuple(xs[i:])
            for coef, t in ((s, a_term), (-s, b_term)):
                if t in idx:
                    m[idx[t]][j] += coef
    return m, src, tgt


def sympy_factors(m):
    """Nonzero invariant factors via sympy."""
    if not m or not m[0]:
        return []
    from sympy.matrices.normalforms import smith_normal_form
    d = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    return [abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0]


def oracle_homology_q(q, a, n):
    """(betti, torsion) of the free quandle complex in degree n via sympy."""
    bn, src, _ = free_boundary_matrix(q, a, n)
    bn1, _, _ = free_boundary_matrix(q, a, n + 1)
    rank_n = sympy.Matrix(bn).rank() if bn and bn[0] else 0
    f1 = sympy_factors(bn1)
    betti = len(src) - rank_n - len(f1)
    return betti, sorted(x for x in f1 if x > 1)


def trivial_xset(n, m):
    return XSetAction(tuple(tuple(r for _ in range(n)) for r in range(m)))


def naive_color_sq(d, sq):
    """Filter all labelings of semi-arcs with every normal at its reference."""
    from symquandle.coloring import SQColoring, is_sq_coloring
    zero = (0,) * len(d.edges)
    out = []
    for labs in itertools.product(range(sq.size), repeat=len(d.edges)):
        c = SQColoring(tuple(labs), zero)
        if is_sq_coloring(d, sq, c):
            out.append(c)
    return out

"""Quandle and symmetric-quandle colorings of diagrams.

Quandle colorings label arcs; symmetric-quandle colorings label semi-arcs
(PD edges) together with a normal orientation, modulo basic inversions.
A symmetric-quandle coloring is stored as one representative: a label and a
normal bit per edge (bit 0 means the edge's reference normal, pointing to
its 'L' side).  Enumeration works in the gauge where every normal is the
reference normal; over a symmetric double the result is then rewritten to
the canonical form in which every label is positive.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .algebra import FiniteQuandle, SymmetricQuandle, XSetAction, symmetric_double, verify_xset
from .config import InputError, limits
from .diagram import Diagram, Orientation


@dataclass(frozen=True, order=True)
class QColoring:
    arcs: tuple[int, ...]  # label per arc, indexed like Diagram.arcs
    regions: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        d = {"arcs": list(self.arcs)}
        if self.regions is not None:
            d["regions"] = list(self.regions)
        return d


@dataclass(frozen=True, order=True)
class SQColoring:
    labels: tuple[int, ...]  # per edge, indexed like Diagram.edges
    normals: tuple[int, ...]  # per edge: 0 = reference normal, 1 = reversed
    regions: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        d = {"labels": list(self.labels), "normals": list(self.normals)}
        if self.regions is not None:
            d["regions"] = list(self.regions)
        return d


@dataclass
class OrientationClass:
    orientation: Orientation
    colorings: list[SQColoring]

    def __len__(self) -> int:
        return len(self.colorings)


# -- constraint solver ----------------------------------------------------------
#
# ("op", i, j, k, tab, inv): tab[x_i][x_j] == x_k, and inv[x_k][x_j] == x_i
# ("map", i, k, perm, invperm): perm[x_i] == x_k


def _propagate(vals: list, cons, by_var, start: list[int]) -> bool:
    queue = list(start)
    while queue:
        v = queue.pop()
        for ci in by_var[v]:
            c = cons[ci]
            if c[0] == "op":
                _, i, j, k, tab, inv = c
                xi, xj, xk = vals[i], vals[j], vals[k]
                if xj is None:
                    continue
                if xi is not None:
                    z = tab[xi][xj]
                    if xk is None:
                        vals[k] = z
                        queue.append(k)
                    elif xk != z:
                        return False
                elif xk is not None:
                    vals[i] = inv[xk][xj]
                    queue.append(i)
            else:
                _, i, k, perm, invperm = c
                xi, xk = vals[i], vals[k]
                if xi is not None:
                    z = perm[xi]
                    if xk is None:
                        vals[k] = z
                        queue.append(k)
                    elif xk != z:
                        return False
                elif xk is not None:
                    vals[i] = invperm[xk]
                    queue.append(i)
    return True


def _search(nvars: int, n: int, cons, first_domain=None) -> list[tuple[int, ...]]:
    by_var: list[list[int]] = [[] for _ in range(nvars)]
    for ci, c in enumerate(cons):
        for v in (c[1:4] if c[0] == "op" else c[1:3]):
            if ci not in by_var[v]:
                by_var[v].append(ci)
    out = []

    def rec(vals):
        try:
            v = vals.index(None)
        except ValueError:
            out.append(tuple(vals))
            return
        dom = first_domain if (v == 0 and first_domain is not None) else range(n)
        for x in dom:
            nv = list(vals)
            nv[v] = x
            if _propagate(nv, cons, by_var, [v]):
                rec(nv)

    if nvars == 0:
        return [()]
    rec([None] * nvars)
    return out


def _search_job(args):
    return _search(*args)


def _solve(nvars: int, n: int, cons, jobs: int = 1) -> list[tuple[int, ...]]:
    limits().check("max_coloring_space", n ** nvars)
    if jobs > 1 and nvars > 0 and n > 1:
        chunks = [[x for x in range(n) if x % jobs == r] for r in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_search_job, [(nvars, n, cons, ch) for ch in chunks if ch])
        res = [s for p in parts for s in p]
    else:
        res = _search(nvars, n, cons)
    return sorted(res)


def _tables(q: FiniteQuandle, rho: Sequence[int] | None = None):
    tab = [list(r) for r in q.table]
    inv = [list(r) for r in q.inv_table]
    if rho is None:
        return tab, inv
    # tab'[x][y] = rho(x*y); inverse: x = rho(z) * y^{-1}
    tr = [[rho[tab[x][y]] for y in range(q.size)] for x in range(q.size)]
    ir = [[inv[rho[z]][y] for y in range(q.size)] for z in range(q.size)]
    return tr, ir


# -- quandle colorings -------------------------------------------------------------


def _q_constraints(d: Diagram, o: Orientation, q: FiniteQuandle):
    tab, inv = _tables(q)
    cons = []
    for ci, c in enumerate(d.crossings):
        a, ov, b = d.arc_of[c[0]], d.arc_of[c[1]], d.arc_of[c[2]]
        if d.over_dir(ci, o) > 0:
            cons.append(("op", a, ov, b, tab, inv))
        else:
            cons.append(("op", b, ov, a, tab, inv))
    return cons


def color_q(d: Diagram, o: Sequence[int], q: FiniteQuandle, jobs: int = 1) -> list[QColoring]:
    """All X-colorings of the oriented diagram (arc labels)."""
    o = d.check_orientation(o)
    sols = _solve(len(d.arcs), q.size, _q_constraints(d, o, q), jobs)
    return [QColoring(s) for s in sols]


def _region_labelings(d: Diagram, edge_rule, a: XSetAction) -> list[tuple[int, ...]]:
    """Region labelings satisfying r_from * x = r_to for every edge.

    ``edge_rule(e)`` returns (from_region, to_region, x) for edge e.  Region
    0 is chosen freely and the rest follow by propagation.
    """
    nreg = d.nregions
    if nreg == 0:
        return [()]
    adj: list[list[tuple[int, int, bool]]] = [[] for _ in range(nreg)]
    for e in d.edges:
        fr, to, x = edge_rule(e)
        adj[fr].append((to, x, True))
        adj[to].append((fr, x, False))
    out = []
    for r0 in range(a.ysize):
        lab = [None] * nreg
        lab[0] = r0
        stack, ok = [0], True
        while stack and ok:
            u = stack.pop()
            for w, x, fwd in adj[u]:
                val = a.act[lab[u]][x] if fwd else a.act_inv[lab[u]][x]
                if lab[w] is None:
                    lab[w] = val
                    stack.append(w)
                elif lab[w] != val:
                    ok = False
                    break
        if ok and None not in lab:
            out.append(tuple(lab))
    return out


def _check_action(q: FiniteQuandle, a: XSetAction, rho=None) -> None:
    if a.ngens != q.size:
        raise InputError(f"X-set acts by {a.ngens} generators but the quandle has {q.size} elements")
    rep = verify_xset(q, a, rho)
    if not rep.ok:
        raise InputError(f"invalid X-set: {rep.violations[:3]}")


def color_shadow(d: Diagram, o: Sequence[int], q: FiniteQuandle, a: XSetAction, jobs: int = 1) -> list[QColoring]:
    """X_Y-colorings: arc labels plus region labels in Y."""
    o = d.check_orientation(o)
    _check_action(q, a)
    out = []
    for c in color_q(d, o, q, jobs):
        def rule(e, c=c):
            fr, to = d.regions_across(e, d.normal_side(e, o))
            return fr, to, c.arcs[d.arc_of[e]]
        for regs in _region_labelings(d, rule, a):
            out.append(QColoring(c.arcs, regs))
    return sorted(out)


def is_q_coloring(d: Diagram, o: Sequence[int], q: FiniteQuandle, c: QColoring, a: XSetAction | None = None) -> bool:
    for ci, cr in enumerate(d.crossings):
        x1, x3, x2 = (c.arcs[d.arc_of[cr[k]]] for k in (0, 1, 2))
        if d.over_dir(ci, o) < 0:
            x1, x2 = x2, x1
        if q.op(x1, x3) != x2:
            return False
    if a is not None:
        if c.regions is None:
            return False
        for e in d.edges:
            fr, to = d.regions_across(e, d.normal_side(e, o))
            if a.act[c.regions[fr]][c.arcs[d.arc_of[e]]] != c.regions[to]:
                return False
    return True


# -- symmetric-quandle colorings ------------------------------------------------------


def double_base(sq: SymmetricQuandle) -> FiniteQuandle | None:
    """The quandle X when sq is literally the symmetric double of X."""
    if sq.size % 2:
        return None
    n = sq.size // 2
    try:
        base = FiniteQuandle(tuple(tuple(r[:n]) for r in sq.quandle.table[:n]))
        dbl = symmetric_double(base)
    except (InputError, ValueError):
        return None
    if dbl.quandle.table == sq.quandle.table and tuple(dbl.rho) == tuple(sq.rho):
        return base
    return None


def _sq_constraints(d: Diagram, sq: SymmetricQuandle):
    tab, inv = _tables(sq.quandle)
    ident = list(range(sq.size))
    eidx = {e: i for i, e in enumerate(d.edges)}
    cons = []
    for ci, c in enumerate(d.crossings):
        a, b, cc, dd = (eidx[x] for x in c)
        if b != dd:
            cons.append(("map", b, dd, ident, ident))
        if d.over_ref[ci] > 0:
            cons.append(("op", a, b, cc, tab, inv))
        else:
            cons.append(("op", cc, b, a, tab, inv))
    return cons


def _canonical(d: Diagram, sq: SymmetricQuandle, labels, normals, regions) -> SQColoring:
    n = sq.size // 2
    labs, bits = [], []
    for x, b in zip(labels, normals):
        if x >= n:
            labs.append(sq.rho[x])
            bits.append(1 - b)
        else:
            labs.append(x)
            bits.append(b)
    return SQColoring(tuple(labs), tuple(bits), regions)


def color_sq(d: Diagram, sq: SymmetricQuandle, jobs: int = 1, canonical: bool | None = None) -> list[SQColoring]:
    """One representative per (X, rho)-coloring.

    Over a symmetric double the representatives are canonical (positive
    labels); otherwise every normal is the reference normal.
    """
    sols = _solve(len(d.edges), sq.size, _sq_constraints(d, sq), jobs)
    zero = (0,) * len(d.edges)
    if canonical is None:
        canonical = double_base(sq) is not None
    if canonical:
        return sorted(_canonical(d, sq, s, zero, None) for s in sols)
    return [SQColoring(s, zero) for s in sols]


def color_sq_shadow(d: Diagram, sq: SymmetricQuandle, a: XSetAction, jobs: int = 1,
                    canonical: bool | None = None) -> list[SQColoring]:
    _check_action(sq.quandle, a, sq.rho)
    if canonical is None:
        canonical = double_base(sq) is not None
    eidx = {e: i for i, e in enumerate(d.edges)}
    out = []
    for c in color_sq(d, sq, jobs, canonical=False):
        def rule(e, c=c):
            fr, to = d.regions_across(e, "L")
            return fr, to, c.labels[eidx[e]]
        for regs in _region_labelings(d, rule, a):
            if canonical:
                out.append(_canonical(d, sq, c.labels, c.normals, regs))
            else:
                out.append(SQColoring(c.labels, c.normals, regs))
    return sorted(out)


def basic_inversion(sq: SymmetricQuandle, c: SQColoring, edge_index: int) -> SQColoring:
    labels, normals = list(c.labels), list(c.normals)
    labels[edge_index] = sq.rho[labels[edge_index]]
    normals[edge_index] ^= 1
    return SQColoring(tuple(labels), tuple(normals), c.regions)


def is_sq_coloring(d: Diagram, sq: SymmetricQuandle, c: SQColoring, a: XSetAction | None = None) -> bool:
    """Check the local conditions for an arbitrary choice of normals."""
    q, rho = sq.quandle, sq.rho
    eidx = {e: i for i, e in enumerate(d.edges)}
    lab = {e: c.labels[eidx[e]] for e in d.edges}
    bit = {e: c.normals[eidx[e]] for e in d.edges}
    for ci, cr in enumerate(d.crossings):
        ea, eb, ec, ed = cr
        if bit[eb] == bit[ed]:
            if lab[eb] != lab[ed]:
                return False
        elif lab[eb] != rho[lab[ed]]:
            return False
        up = d.over_ref[ci] * (-1) ** bit[eb]  # over normal points north?
        e1, e2 = (ea, ec) if up > 0 else (ec, ea)
        z = q.op(lab[e1], lab[eb])
        if bit[e1] == bit[e2]:
            if z != lab[e2]:
                return False
        elif z != rho[lab[e2]]:
            return False
    if a is not None:
        if c.regions is None:
            return False
        for e in d.edges:
            fr, to = d.regions_across(e, "R" if bit[e] else "L")
            if a.act[c.regions[fr]][lab[e]] != c.regions[to]:
                return False
    return True


# -- the correspondence with oriented colorings ----------------------------------------


def induced_orientation(d: Diagram, c: SQColoring, n: int | None = None) -> Orientation:
    """Orientation read from the normals of a canonical coloring."""
    if n is not None and any(x >= n for x in c.labels):
        raise ValueError("coloring is not in canonical form")
    eidx = {e: i for i, e in enumerate(d.edges)}
    bits = []
    for comp in d.components:
        bs = {c.normals[eidx[e]] for e in comp}
        if len(bs) != 1:
            raise ValueError(f"normals along the component through edge {comp[0]} are not coherent")
        bits.append(bs.pop())
    return tuple(bits)


def orientation_classes(d: Diagram, colorings: Sequence[SQColoring], n: int | None = None) -> list[OrientationClass]:
    """Partition canonical colorings by induced orientation (all 2^c orientations listed)."""
    groups: dict[Orientation, list[SQColoring]] = {o: [] for o in d.orientations()}
    for c in colorings:
        groups[induced_orientation(d, c, n)].append(c)
    return [OrientationClass(o, groups[o]) for o in d.orientations()]


def to_oriented_colored(d: Diagram, c: SQColoring, n: int | None = None) -> tuple[Orientation, QColoring]:
    o = induced_orientation(d, c, n)
    eidx = {e: i for i, e in enumerate(d.edges)}
    arcs = []
    for arc in d.arcs:
        labs = {c.labels[eidx[e]] for e in arc}
        if len(labs) != 1:
            raise ValueError(f"labels along arc {arc} disagree")
        arcs.append(labs.pop())
    return o, QColoring(tuple(arcs), c.regions)


def from_oriented_colored(d: Diagram, o: Sequence[int], qc: QColoring) -> SQColoring:
    o = d.check_orientation(o)
    labels = tuple(qc.arcs[d.arc_of[e]] for e in d.edges)
    normals = tuple(o[d.component_of[e]] for e in d.edges)
    return SQColoring(labels, normals, qc.regions)


def count_table(d: Diagram, q: FiniteQuandle, a: XSetAction | None = None, jobs: int = 1) -> list[dict]:
    """Per orientation: #Col_X(D,o) (or shadow) against the class sizes over the double."""
    dbl = symmetric_double(q)
    if a is None:
        sq_cols = color_sq(d, dbl, jobs)
    else:
        from .algebra import induced_double_action
        sq_cols = color_sq_shadow(d, dbl, induced_double_action(q, a), jobs)
    classes = {cl.orientation: len(cl) for cl in orientation_classes(d, sq_cols, q.size)}
    rows = []
    for o in d.orientations():
        nq = len(color_q(d, o, q, jobs) if a is None else color_shadow(d, o, q, a, jobs))
        rows.append({"orientation": list(o), "oriented": nq, "class": classes[o]})
    return rows


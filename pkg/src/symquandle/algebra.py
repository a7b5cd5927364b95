"""Finite quandles, good involutions, the symmetric double and X-set actions.

Elements are the integers ``0..n-1``.  In the symmetric double of an
``n``-element quandle the signed element ``x^{+1}`` is index ``x`` and
``x^{-1}`` is index ``x + n``, so the positive copy is the leading block of
the table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .config import InputError, limits

Table = tuple[tuple[int, ...], ...]


@dataclass
class Report:
    """Outcome of a verification: ``ok`` plus every violation found."""

    ok: bool = True
    violations: list[tuple[str, tuple]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fail(self, axiom: str, witness: tuple) -> None:
        self.ok = False
        self.violations.append((axiom, witness))

    def axioms(self) -> set[str]:
        return {a for a, _ in self.violations}

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations],
            "notes": list(self.notes),
        }


def _as_table(rows: Sequence[Sequence[int]], ncols: int | None = None, bound: int | None = None) -> Table:
    try:
        table = tuple(tuple(int(v) for v in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise InputError(f"table is not an integer matrix: {exc}") from None
    width = ncols if ncols is not None else len(table)
    top = bound if bound is not None else width
    for i, row in enumerate(table):
        if len(row) != width:
            raise InputError(f"row {i} has length {len(row)}, expected {width}")
        for j, v in enumerate(row):
            if not 0 <= v < top:
                raise InputError(f"entry ({i},{j}) = {v} out of range 0..{top - 1}")
    return table


@dataclass(frozen=True)
class FiniteQuandle:
    """Cayley table with ``table[x][y] = x * y``.

    The constructor only checks shape and range; use :func:`verify_quandle`
    (or :meth:`checked`) for the axioms.
    """

    table: Table

    def __post_init__(self):
        object.__setattr__(self, "table", _as_table(self.table))
        if not self.table:
            raise InputError("quandle must have at least one element")

    @property
    def size(self) -> int:
        return len(self.table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def inv_table(self) -> Table:
        """``inv_table[x][y] = x * y^{-1}``, the unique z with z * y = x."""
        n = self.size
        inv = [[-1] * n for _ in range(n)]
        for y in range(n):
            for z in range(n):
                x = self.table[z][y]
                if inv[x][y] != -1:
                    raise InputError(f"column {y} is not a bijection; inverse undefined")
                inv[x][y] = z
        return tuple(tuple(r) for r in inv)

    def inv(self, x: int, y: int) -> int:
        return self.inv_table[x][y]

    def op_signed(self, x: int, y: int, eps: int) -> int:
        """``x * y^{eps}`` for ``eps`` in ``{+1, -1}``."""
        return self.table[x][y] if eps > 0 else self.inv_table[x][y]

    def checked(self) -> "FiniteQuandle":
        rep = verify_quandle(self.table)
        if not rep.ok:
            raise InputError(f"not a quandle: {rep.violations[:3]}")
        return self

    def to_json(self) -> dict:
        return {"size": self.size, "table": [list(r) for r in self.table]}


def verify_quandle(table: Sequence[Sequence[int]], max_witnesses: int | None = None) -> Report:
    t = _as_table(table)
    n = len(t)
    if n == 0:
        raise InputError("empty table")
    limits().check("max_verify_size", n)
    rep = Report()

    def room():
        return max_witnesses is None or len(rep.violations) < max_witnesses

    for x in range(n):
        if t[x][x] != x and room():
            rep.fail("Q1", (x,))
    for y in range(n):
        hit = {t[x][y] for x in range(n)}
        for x in range(n):
            if x not in hit and room():
                # no z with z*y = x
                rep.fail("Q2", (x, y))
    for x, y, z in itertools.product(range(n), repeat=3):
        if t[t[x][y]][z] != t[t[x][z]][t[y][z]] and room():
            rep.fail("Q3", (x, y, z))
    return rep


def inverse_op(q: FiniteQuandle, x: int, y: int) -> int:
    return q.inv(x, y)


def make_trivial(n: int) -> FiniteQuandle:
    if n < 1:
        raise InputError("trivial quandle needs n >= 1")
    return FiniteQuandle(tuple(tuple(x for _ in range(n)) for x in range(n)))


def make_dihedral(n: int) -> FiniteQuandle:
    """R_n with x*y = 2y - x mod n.  For n in {1, 2} this is trivial."""
    if n < 1:
        raise InputError("dihedral quandle needs n >= 1")
    return FiniteQuandle(tuple(tuple((2 * y - x) % n for y in range(n)) for x in range(n)))


def dihedral_note(n: int) -> str | None:
    if n < 3:
        return f"R_{n} is degenerate (n < 3): it coincides with the trivial quandle T_{n}"
    return None


def verify_group(mult: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Check a group table; return (identity, inverse list)."""
    g = _as_table(mult)
    n = len(g)
    ident = [e for e in range(n) if all(g[e][x] == x and g[x][e] == x for x in range(n))]
    if not ident:
        raise InputError("group table has no identity")
    e = ident[0]
    invs = []
    for x in range(n):
        cands = [y for y in range(n) if g[x][y] == e and g[y][x] == e]
        if not cands:
            raise InputError(f"element {x} has no inverse")
        invs.append(cands[0])
    for x, y, z in itertools.product(range(n), repeat=3):
        if g[g[x][y]][z] != g[x][g[y][z]]:
            raise InputError(f"not associative at {(x, y, z)}")
    return e, invs


def make_conj(group_mult_table: Sequence[Sequence[int]]) -> FiniteQuandle:
    """Conj G with g * h = h^{-1} g h."""
    g = _as_table(group_mult_table)
    _, invs = verify_group(g)
    n = len(g)
    return FiniteQuandle(tuple(tuple(g[g[invs[h]][x]][h] for h in range(n)) for x in range(n)))


def group_inverses(group_mult_table) -> list[int]:
    return verify_group(group_mult_table)[1]


def symmetric_group_table(k: int) -> tuple[list[tuple[int, ...]], Table]:
    """Permutations of ``range(k)`` in lexicographic order and their product table.

    The product is composition ``(p q)(i) = p(q(i))``.
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(k))] for q in perms) for p in perms
    )
    return perms, table


# -- good involutions ---------------------------------------------------------


def _as_perm(rho: Sequence[int], n: int) -> tuple[int, ...]:
    r = tuple(int(v) for v in rho)
    if len(r) != n:
        raise InputError(f"involution has length {len(r)}, quandle has size {n}")
    if sorted(r) != list(range(n)):
        raise InputError("rho is not a permutation")
    return r


def verify_good_involution(q: FiniteQuandle, rho: Sequence[int]) -> Report:
    n = q.size
    r = _as_perm(rho, n)
    rep = Report()
    for x in range(n):
        if r[r[x]] != x:
            rep.fail("involution", (x,))
    for x in range(n):
        for y in range(n):
            if r[q.op(x, y)] != q.op(r[x], y):
                rep.fail("GI1", (x, y))
            if q.op(x, r[y]) != q.inv(x, y):
                rep.fail("GI2", (x, y))
    return rep


def _involutions(n: int):
    """All involutions of range(n), in lexicographic order of the image tuple."""
    perm = [-1] * n

    def rec(i):
        while i < n and perm[i] != -1:
            i += 1
        if i == n:
            yield tuple(perm)
            return
        perm[i] = i
        yield from rec(i + 1)
        for j in range(i + 1, n):
            if perm[j] == -1:
                perm[i], perm[j] = j, i
                yield from rec(i + 1)
                perm[j] = -1
        perm[i] = -1

    yield from rec(0)


def enumerate_good_involutions(q: FiniteQuandle) -> list[tuple[int, ...]]:
    limits().check("max_search_size", q.size)
    return [r for r in _involutions(q.size) if verify_good_involution(q, r).ok]


@dataclass(frozen=True)
class SymmetricQuandle:
    quandle: FiniteQuandle
    rho: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rho", _as_perm(self.rho, self.quandle.size))

    @property
    def size(self) -> int:
        return self.quandle.size

    def checked(self) -> "SymmetricQuandle":
        self.quandle.checked()
        rep = verify_good_involution(self.quandle, self.rho)
        if not rep.ok:
            raise InputError(f"rho is not a good involution: {rep.violations[:3]}")
        return self

    def to_json(self) -> dict:
        d = self.quandle.to_json()
        d["rho"] = list(self.rho)
        return d


# -- symmetric double ---------------------------------------------------------


def signed_index(x: int, sign: int, n: int) -> int:
    return x if sign > 0 else x + n


def split_signed(i: int, n: int) -> tuple[int, int]:
    """Index in the double -> (base element, sign)."""
    return (i, 1) if i < n else (i - n, -1)


def symmetric_double(q: FiniteQuandle) -> SymmetricQuandle:
    """(D_X, rho) with x^e . y^d = (x * y^d)^e and rho(x^e) = x^{-e}."""
    n = q.size
    rows = []
    for i in range(2 * n):
        x, e = split_signed(i, n)
        rows.append(tuple(signed_index(q.op_signed(x, y, d), e, n)
                          for y, d in (split_signed(j, n) for j in range(2 * n))))
    rho = tuple((i + n) % (2 * n) for i in range(2 * n))
    return SymmetricQuandle(FiniteQuandle(tuple(rows)), rho)


# -- isomorphism search -------------------------------------------------------


def _element_signature(q: FiniteQuandle, rho=None):
    n = q.size
    sigs = []
    for y in range(n):
        # cycle type of right multiplication by y, plus left-multiplication image size
        seen, cycles = set(), []
        for x in range(n):
            if x in seen:
                continue
            k, z = 0, x
            while z not in seen:
                seen.add(z)
                z = q.op(z, y)
                k += 1
            cycles.append(k)
        fixed_by = sum(1 for z in range(n) if q.op(y, z) == y)
        extra = () if rho is None else (rho[y] == y,)
        sigs.append((tuple(sorted(cycles)), fixed_by, len({q.op(y, z) for z in range(n)})) + extra)
    return sigs


def quandle_isomorphic(q1: FiniteQuandle, q2: FiniteQuandle, rho1=None, rho2=None) -> tuple[int, ...] | None:
    """First isomorphism f: q1 -> q2 in lexicographic backtracking order, or None.

    If ``rho1``/``rho2`` are given, f must also satisfy f(rho1(x)) = rho2(f(x)).
    """
    n = q1.size
    if q2.size != n:
        return None
    limits().check("max_verify_size", n)
    symmetric = rho1 is not None or rho2 is not None
    if symmetric and (rho1 is None or rho2 is None):
        raise InputError("both involutions are needed for the symmetric variant")
    s1 = _element_signature(q1, rho1)
    s2 = _element_signature(q2, rho2)
    if sorted(s1) != sorted(s2):
        return None
    cands = [[y for y in range(n) if s2[y] == s1[x]] for x in range(n)]

    def assign(f, finv, x, y, stack):
        if f[x] != -1:
            return f[x] == y
        if finv[y] != -1:
            return False
        f[x], finv[y] = y, x
        stack.append(x)
        return True

    def propagate(f, finv, stack):
        # close the partial map under the operation and rho
        changed = True
        while changed:
            changed = False
            dom = [x for x in range(n) if f[x] != -1]
            for a in dom:
                if symmetric:
                    if f[rho1[a]] == -1:
                        if not assign(f, finv, rho1[a], rho2[f[a]], stack):
                            return False
                        changed = True
                    elif f[rho1[a]] != rho2[f[a]]:
                        return False
                for b in dom:
                    x, y = q1.op(a, b), q2.op(f[a], f[b])
                    if f[x] == -1:
                        if not assign(f, finv, x, y, stack):
                            return False
                        changed = True
                    elif f[x] != y:
                        return False
        return True

    f, finv = [-1] * n, [-1] * n

    def search():
        try:
            x = f.index(-1)
        except ValueError:
            return True
        for y in cands[x]:
            if finv[y] != -1:
                continue
            stack = []
            ok = assign(f, finv, x, y, stack) and propagate(f, finv, stack)
            if ok and all(f[z] == -1 or s2[f[z]] == s1[z] for z in stack) and search():
                return True
            for z in stack:
                finv[f[z]] = -1
                f[z] = -1
        return False

    if not search():
        return None
    return tuple(f)


def is_homomorphism(f: Sequence[int], q1: FiniteQuandle, q2: FiniteQuandle) -> bool:
    return all(f[q1.op(x, y)] == q2.op(f[x], f[y]) for x in range(q1.size) for y in range(q1.size))


# -- X-sets -------------------------------------------------------------------


@dataclass(frozen=True)
class XSetAction:
    """Right action of the generators (and their inverses) of G_X on Y.

    ``act[r][x] = r * x`` and ``act_inv[r][x] = r * x^{-1}``.  If ``act_inv``
    is omitted it is derived by inverting each column of ``act``.
    """

    act: Table
    act_inv: Table | None = None

    def __post_init__(self):
        act = _as_table(self.act, ncols=len(self.act[0]) if self.act else 0, bound=len(self.act))
        if not act:
            raise InputError("X-set must be non-empty")
        object.__setattr__(self, "act", act)
        if self.act_inv is None:
            m, n = len(act), len(act[0])
            inv = [[-1] * n for _ in range(m)]
            for x in range(n):
                for r in range(m):
                    s = act[r][x]
                    if inv[s][x] != -1:
                        raise InputError(f"action of generator {x} is not a bijection")
                    inv[s][x] = r
            object.__setattr__(self, "act_inv", tuple(tuple(row) for row in inv))
        else:
            object.__setattr__(self, "act_inv", _as_table(self.act_inv, ncols=len(act[0]), bound=len(act)))
            if len(self.act_inv) != len(act):
                raise InputError("act and act_inv have different numbers of rows")

    @property
    def ysize(self) -> int:
        return len(self.act)

    @property
    def ngens(self) -> int:
        return len(self.act[0])

    def signed(self, r: int, x: int, eps: int) -> int:
        return self.act[r][x] if eps > 0 else self.act_inv[r][x]

    def to_json(self) -> dict:
        return {"ysize": self.ysize, "act": [list(r) for r in self.act], "act_inv": [list(r) for r in self.act_inv]}


def self_action(q: FiniteQuandle) -> XSetAction:
    """Y = X acted on by the quandle operation."""
    return XSetAction(q.table, q.inv_table)


def point_action(q: FiniteQuandle) -> XSetAction:
    """Y a singleton."""
    return XSetAction(((0,) * q.size,), ((0,) * q.size,))


def verify_xset(q: FiniteQuandle, a: XSetAction, rho: Sequence[int] | None = None) -> Report:
    """Bijectivity, inverse consistency and the four signed compatibility identities.

    With ``rho`` the (X, rho)-set condition r * rho(x) = r * x^{-1} is checked too.
    """
    n, m = q.size, a.ysize
    if a.ngens != n:
        raise InputError(f"action has {a.ngens} generator columns, quandle has {n} elements")
    rep = Report()
    for x in range(n):
        if len({a.act[r][x] for r in range(m)}) != m:
            rep.fail("bijective", (x,))
        for r in range(m):
            if a.act_inv[a.act[r][x]][x] != r or a.act[a.act_inv[r][x]][x] != r:
                rep.fail("inverse", (r, x))
    if not rep.ok:
        return rep
    for r, x, y in itertools.product(range(m), range(n), range(n)):
        for e, d in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            lhs = a.signed(a.signed(r, x, e), y, d)
            rhs = a.signed(a.signed(r, y, d), q.op_signed(x, y, d), e)
            if lhs != rhs:
                rep.fail("compat", (r, x, y, e, d))
    if rho is not None:
        rr = _as_perm(rho, n)
        for r in range(m):
            for x in range(n):
                if a.act[r][rr[x]] != a.act_inv[r][x]:
                    rep.fail("rho-set", (r, x))
    return rep


def induced_double_action(q: FiniteQuandle, a: XSetAction) -> XSetAction:
    """Y as a (D_X, rho)-set: r . x^{+1} = r * x, r . x^{-1} = r * x^{-1}."""
    rep = verify_xset(q, a)
    if not rep.ok:
        raise InputError(f"invalid X-set: {rep.violations[:3]}")
    act = tuple(row + irow for row, irow in zip(a.act, a.act_inv))
    act_inv = tuple(irow + row for row, irow in zip(a.act, a.act_inv))
    return XSetAction(act, act_inv)

"""Quandle and symmetric-quandle chain complexes with coefficients in Y.

A generator of ``C_n(X)_Y`` is a plain tuple ``(r, x_1, ..., x_n)``.  Over
the symmetric double the ``x_i`` are signed indices (see
:mod:`symquandle.algebra`).  Chains are sparse ``{generator: coefficient}``
maps.

Two quotient complexes are provided:

* the quandle complex ``C^Q``, which is free on the nondegenerate tuples, and
* the symmetric-quandle complex ``C^SQ``, kept as a presentation (free basis
  of all tuples plus relation columns) because good involutions with fixed
  points give 2-torsion chain groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg
from .algebra import (
    FiniteQuandle,
    SymmetricQuandle,
    XSetAction,
    induced_double_action,
    signed_index,
    split_signed,
    symmetric_double,
    verify_xset,
)
from .config import InputError, limits

Gen = tuple[int, ...]


class UnsupportedModulusError(ValueError):
    pass


class Chain(dict):
    """Sparse integer chain; zero coefficients are never stored."""

    def add(self, gen: Gen, coef: int) -> None:
        if not coef:
            return
        v = self.get(gen, 0) + coef
        if v:
            self[gen] = v
        else:
            self.pop(gen, None)

    def __add__(self, other: Mapping) -> "Chain":
        out = Chain(self)
        for g, c in other.items():
            out.add(g, c)
        return out

    def __sub__(self, other: Mapping) -> "Chain":
        out = Chain(self)
        for g, c in other.items():
            out.add(g, -c)
        return out

    def __neg__(self) -> "Chain":
        return Chain({g: -c for g, c in self.items()})

    def scale(self, k: int) -> "Chain":
        return Chain({g: k * c for g, c in self.items()}) if k else Chain()

    @classmethod
    def of(cls, terms: Iterable[tuple[int, Gen]]) -> "Chain":
        out = cls()
        for c, g in terms:
            out.add(g, c)
        return out

    def sorted_items(self) -> list[tuple[Gen, int]]:
        return sorted(self.items())


def is_degenerate(gen: Gen) -> bool:
    xs = gen[1:]
    return any(xs[i] == xs[i + 1] for i in range(len(xs) - 1))


def boundary_terms(q: FiniteQuandle, a: XSetAction, gen: Gen) -> list[tuple[int, Gen]]:
    """The full boundary in C_{n-1}(X)_Y (no quotient), as (coef, gen) terms."""
    r, xs = gen[0], gen[1:]
    n = len(xs)
    if n <= 1:
        return []
    out = []
    for i in range(n):
        s = -1 if i % 2 == 0 else 1  # (-1)^{i+1} with 1-based i+1
        xi = xs[i]
        out.append((s, (r,) + xs[:i] + xs[i + 1:]))
        moved = tuple(q.op(x, xi) for x in xs[:i])
        out.append((-s, (a.act[r][xi],) + moved + xs[i + 1:]))
    return out


def boundary_chain(q: FiniteQuandle, a: XSetAction, c: Mapping[Gen, int], drop_degenerate: bool = False) -> Chain:
    out = Chain()
    for g, k in c.items():
        for s, h in boundary_terms(q, a, g):
            if drop_degenerate and is_degenerate(h):
                continue
            out.add(h, s * k)
    return out


def all_tuples(nx: int, ny: int, n: int) -> list[Gen]:
    return [(r,) + xs for r in range(ny) for xs in itertools.product(range(nx), repeat=n)]


def nondegenerate_basis(nx: int, ny: int, n: int) -> list[Gen]:
    if n < 1:
        return []
    return [g for g in all_tuples(nx, ny, n) if not is_degenerate(g)]


@dataclass
class BoundaryMatrix:
    source: list[Gen]
    target: list[Gen]
    matrix: list[list[int]]  # rows = target, columns = source


def boundary_q(q: FiniteQuandle, a: XSetAction, n: int) -> BoundaryMatrix:
    """∂_n of C^Q(X)_Y on the nondegenerate bases (degenerate terms dropped)."""
    if n < 1:
        return BoundaryMatrix([], [], [])
    src = nondegenerate_basis(q.size, a.ysize, n)
    tgt = nondegenerate_basis(q.size, a.ysize, n - 1)
    limits().check("max_matrix_entries", max(1, len(src)) * max(1, len(tgt)))
    idx = {g: i for i, g in enumerate(tgt)}
    mat = linalg.zeros(len(tgt), len(src))
    for j, g in enumerate(src):
        for s, h in boundary_terms(q, a, g):
            if not is_degenerate(h):
                mat[idx[h]][j] += s
    return BoundaryMatrix(src, tgt, mat)


# -- canonicalization and the T maps -----------------------------------------


def canonicalize(gen: Gen, q: FiniteQuandle, a: XSetAction, sign: int = 1) -> tuple[int, Gen]:
    """Rewrite a signed tuple over D_X to ±(s, y_1^{+1}, ..., y_n^{+1}).

    Sweeps i = n down to 1; each negative sign at position i is flipped with
    the relation coming from rho at that position, which acts by y_i^{-1} on
    the Y-entry and the entries to its left and negates the coefficient.
    ``a`` is the action of X on Y (not the induced double action).
    """
    n = q.size
    s, ys = gen[0], list(gen[1:])
    for i in range(len(ys) - 1, -1, -1):
        yi, di = split_signed(ys[i], n)
        if di > 0:
            continue
        s = a.act_inv[s][yi]
        for k in range(i):
            yk, dk = split_signed(ys[k], n)
            ys[k] = signed_index(q.inv(yk, yi), dk, n)
        ys[i] = yi
        sign = -sign
    return sign, (s, *ys)


def t_down(c: Mapping[Gen, int], q: FiniteQuandle, a: XSetAction) -> Chain:
    """T^{D_X -> X}: canonicalize, strip signs, drop degenerate tuples."""
    out = Chain()
    for g, k in c.items():
        if len(g) < 2:
            continue
        sgn, h = canonicalize(g, q, a)
        if not is_degenerate(h):
            out.add(h, sgn * k)
    return out


def t_up(c: Mapping[Gen, int], q: FiniteQuandle | None = None) -> Chain:
    """T^{X -> D_X}: (r, x_1, ..., x_n) -> (r, x_1^{+1}, ..., x_n^{+1}).

    Positive signed indices coincide with the base indices, so the tuples are
    unchanged; the map only changes which complex they live in.
    """
    out = Chain()
    for g, k in c.items():
        if len(g) >= 2 and not is_degenerate(g):
            out.add(tuple(g), k)
    return out


def rho_relation(sq: SymmetricQuandle, a: XSetAction, gen: Gen, i: int) -> Chain:
    """(r, x_1..x_n) + (r*x_i, x_1*x_i, .., x_{i-1}*x_i, rho(x_i), x_{i+1}, ..), 0-based i."""
    q, rho = sq.quandle, sq.rho
    r, xs = gen[0], gen[1:]
    xi = xs[i]
    other = (a.act[r][xi],) + tuple(q.op(x, xi) for x in xs[:i]) + (rho[xi],) + xs[i + 1:]
    return Chain.of([(1, gen), (1, other)])


# -- presented complexes ------------------------------------------------------


@dataclass
class _Reduced:
    """A chain group after eliminating generators through unit relations."""

    survivors: list[int]
    pos: dict[int, int]
    expr: dict[int, dict[int, int]]
    residual: list[dict[int, int]]

    def resolve(self, vec: Mapping[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, c in vec.items():
            for j, d in _resolve_index(self.expr, i).items():
                v = out.get(j, 0) + c * d
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
        return out

    def dense(self, vec: Mapping[int, int]) -> list[int]:
        d = [0] * len(self.survivors)
        for i, c in self.resolve(vec).items():
            d[self.pos[i]] += c
        return d


def _resolve_index(expr: dict[int, dict[int, int]], i: int) -> dict[int, int]:
    if i not in expr:
        return {i: 1}
    e = expr[i]
    if all(j not in expr for j in e):
        return e
    out: dict[int, int] = {}
    for j, c in e.items():
        for k, d in _resolve_index(expr, j).items():
            v = out.get(k, 0) + c * d
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    expr[i] = out
    return out


def _reduce(nbasis: int, relations: Sequence[Mapping[int, int]]) -> _Reduced:
    expr: dict[int, dict[int, int]] = {}
    residual: list[dict[int, int]] = []
    tmp = _Reduced([], {}, expr, [])
    for col in relations:
        v = tmp.resolve(col)
        if not v:
            continue
        units = [i for i, c in v.items() if c in (1, -1)]
        if units:
            u = min(units)
            c = v.pop(u)
            expr[u] = {k: -c * val for k, val in v.items()}
        else:
            residual.append(v)
    survivors = [i for i in range(nbasis) if i not in expr]
    pos = {s: k for k, s in enumerate(survivors)}
    red = _Reduced(survivors, pos, expr, [])
    red.residual = [r for r in (red.resolve(v) for v in residual) if r]
    return red


@dataclass
class HomologyResult:
    degree: int
    modulus: int
    free_rank: int
    torsion: list[int]
    _lattice: list[list[int]] = field(default_factory=list, repr=False)
    _u: list[list[int]] = field(default_factory=list, repr=False)
    _diag: list[int] = field(default_factory=list, repr=False)
    _to_dense: Callable | None = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        """Dimension over Z_p when the modulus is prime."""
        if self.modulus and linalg.is_prime(self.modulus):
            return len(self.torsion)
        raise ValueError("dimension is only defined for prime moduli")

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return self.free_rank, tuple(self.torsion)

    def class_of(self, cycle: Mapping[Gen, int]) -> tuple[int, ...]:
        """Coordinates of the homology class of a cycle.

        Torsion coordinates come first (reduced modulo their orders) followed
        by free coordinates, in the order of the Smith form of this result.
        """
        z = self._to_dense(cycle)
        c = linalg.solve_in_basis(self._lattice, z) if self._lattice else ([] if not any(z) else None)
        if c is None:
            raise ValueError("chain is not a cycle")
        y = linalg.matvec(self._u, c) if self._u else []
        tors, free = [], []
        for i, yi in enumerate(y):
            d = self._diag[i] if i < len(self._diag) else 0
            if d == 1:
                continue
            if d == 0:
                free.append(yi)
            else:
                tors.append(yi % d)
        return tuple(tors + free)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        counts: dict[int, int] = {}
        for t in self.torsion:
            counts[t] = counts.get(t, 0) + 1
        for t, k in sorted(counts.items()):
            parts.append(f"Z/{t}" if k == 1 else f"(Z/{t})^{k}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"degree": self.degree, "modulus": self.modulus, "free_rank": self.free_rank,
                "torsion": list(self.torsion), "group": str(self)}


class PresentedComplex:
    """Chain complex whose degree-n group is Z^{basis_n} / <relation columns>.

    Degrees run 1..top; C_n = 0 outside.  Boundaries are the lifted ∂_n on
    the free bases; generators outside the basis (e.g. degenerate tuples in
    the quandle complex) are treated as zero.
    """

    def __init__(self, q: FiniteQuandle, a: XSetAction, top: int,
                 bases: dict[int, list[Gen]], relations: dict[int, list[Chain]]):
        self.q, self.a, self.top = q, a, top
        self.bases = bases
        self.index = {n: {g: i for i, g in enumerate(b)} for n, b in bases.items()}
        self.relations = relations

    def basis(self, n: int) -> list[Gen]:
        return self.bases.get(n, [])

    def to_index(self, n: int, c: Mapping[Gen, int]) -> dict[int, int]:
        idx = self.index.get(n, {})
        out: dict[int, int] = {}
        for g, k in c.items():
            i = idx.get(g)
            if i is None:
                if n in self.bases and len(g) == n + 1 and is_degenerate(g):
                    continue
                if n not in self.bases:
                    continue
                raise KeyError(f"{g} is not a generator of degree {n}")
            out[i] = out.get(i, 0) + k
        return out

    def relation_matrix(self, n: int) -> list[list[int]]:
        """Dense R_n, columns = relation generators."""
        cols = []
        for rel in self.relations.get(n, []):
            v = [0] * len(self.basis(n))
            for i, k in self.to_index(n, rel).items():
                v[i] += k
            cols.append(v)
        return linalg.from_columns(cols, len(self.basis(n)))

    def boundary_matrix(self, n: int) -> list[list[int]]:
        """Dense lifted B_n : Z^{m_n} -> Z^{m_{n-1}}."""
        src, tgt = self.basis(n), self.basis(n - 1)
        cols = []
        for g in src:
            v = [0] * len(tgt)
            for i, k in self.to_index(n - 1, boundary_chain(self.q, self.a, {g: 1})).items():
                v[i] += k
            cols.append(v)
        return linalg.from_columns(cols, len(tgt))

    @cached_property
    def _reduced(self) -> dict[int, _Reduced]:
        out = {}
        for n in range(1, self.top + 1):
            rels = [self.to_index(n, r) for r in self.relations.get(n, [])]
            out[n] = _reduce(len(self.basis(n)), rels)
        return out

    def reduced(self, n: int) -> _Reduced:
        if n < 1 or n > self.top:
            return _Reduced([], {}, {}, [])
        return self._reduced[n]

    def dense(self, n: int, c: Mapping[Gen, int]) -> list[int]:
        return self.reduced(n).dense(self.to_index(n, c))

    def reduced_boundary(self, n: int) -> list[list[int]]:
        """B_n in survivor coordinates (rows = survivors of n-1)."""
        if n < 2 or n > self.top:
            rows = len(self.reduced(n - 1).survivors)
            return [[0] * len(self.reduced(n).survivors) for _ in range(rows)] if n >= 1 else []
        red_src, red_tgt = self.reduced(n), self.reduced(n - 1)
        limits().check("max_matrix_entries", max(1, len(red_src.survivors)) * max(1, len(red_tgt.survivors)))
        cols = []
        for s in red_src.survivors:
            img = boundary_chain(self.q, self.a, {self.bases[n][s]: 1})
            cols.append(red_tgt.dense(self.to_index(n - 1, img)))
        return linalg.from_columns(cols, len(red_tgt.survivors))

    def reduced_relations(self, n: int, modulus: int = 0) -> list[list[int]]:
        red = self.reduced(n)
        cols = []
        for r in red.residual:
            v = [0] * len(red.survivors)
            for i, k in r.items():
                v[red.pos[i]] += k
            cols.append(v)
        if modulus:
            for k in range(len(red.survivors)):
                v = [0] * len(red.survivors)
                v[k] = modulus
                cols.append(v)
        return cols  # list of columns

    def equal_in_quotient(self, n: int, c1: Mapping[Gen, int], c2: Mapping[Gen, int]) -> bool:
        diff = Chain(c1) - Chain(c2)
        v = self.dense(n, diff)
        return linalg.in_span(self.reduced_relations(n), v)

    def is_zero(self, n: int, c: Mapping[Gen, int]) -> bool:
        return self.equal_in_quotient(n, c, {})

    def homology(self, n: int, modulus: int = 0) -> HomologyResult:
        if modulus == 1 or modulus < 0:
            raise InputError("modulus must be 0 (integers) or >= 2")
        if n < 1 or n >= self.top:
            if n < 1:
                return HomologyResult(n, modulus, 0, [], _to_dense=lambda c: [])
            raise InputError(f"complex built up to degree {self.top}; need degree {n + 1}")
        m_n = len(self.reduced(n).survivors)
        m_prev = len(self.reduced(n - 1).survivors)
        b_n = self.reduced_boundary(n)
        r_prev = self.reduced_relations(n - 1, modulus)
        # L = {x : B_n x in col(R_{n-1})}
        if m_prev == 0 or m_n == 0:
            lgens = [[int(i == j) for i in range(m_n)] for j in range(m_n)]
        else:
            big = linalg.hstack(b_n, linalg.from_columns(r_prev, m_prev), nrows=m_prev) if r_prev else b_n
            ker = linalg.kernel_basis(big, m_n + len(r_prev))
            lgens = [k[:m_n] for k in ker]
        lat = linalg.lattice_basis(lgens, m_n)
        mgens = linalg.columns(self.reduced_boundary(n + 1)) + self.reduced_relations(n, modulus)
        coords = []
        for g in mgens:
            if not any(g):
                continue
            c = linalg.solve_in_basis(lat, g)
            if c is None:
                raise ArithmeticError("image of the next boundary is not inside the cycles")
            coords.append(c)
        r = len(lat)
        if coords and r:
            d, u, _ = linalg.smith_normal_form(linalg.from_columns(coords, r), len(coords))
            diag = [d[i][i] for i in range(min(r, len(coords)))]
        else:
            u, diag = linalg.identity(r), []
        nz = [x for x in diag if x]
        torsion = [x for x in nz if x > 1]
        return HomologyResult(n, modulus, r - len(nz), torsion, lat, u, diag,
                              lambda c, _n=n: self.dense(_n, c))


def _check_action(q: FiniteQuandle, a: XSetAction, rho=None) -> None:
    rep = verify_xset(q, a, rho)
    if not rep.ok:
        raise InputError(f"invalid action: {rep.violations[:3]}")


def complex_q(q: FiniteQuandle, a: XSetAction, n_max: int) -> PresentedComplex:
    """The free complex C^Q(X)_Y on nondegenerate tuples, degrees 1..n_max."""
    limits().check("max_degree", n_max)
    bases = {}
    for n in range(1, n_max + 1):
        limits().check("max_matrix_entries", a.ysize * q.size ** n)
        bases[n] = nondegenerate_basis(q.size, a.ysize, n)
    return PresentedComplex(q, a, n_max, bases, {})


def complex_sq(sq: SymmetricQuandle, a: XSetAction, n_max: int) -> PresentedComplex:
    """C^SQ(X, rho)_Y presented on all of Y x X^n with degenerate and rho relations."""
    limits().check("max_degree", n_max)
    _check_action(sq.quandle, a, sq.rho)
    bases, rels = {}, {}
    for n in range(1, n_max + 1):
        limits().check("max_matrix_entries", a.ysize * sq.size ** n)
        basis = all_tuples(sq.size, a.ysize, n)
        bases[n] = basis
        rel = [Chain({g: 1}) for g in basis if is_degenerate(g)]
        for g in basis:
            for i in range(n):
                rel.append(rho_relation(sq, a, g, i))
        rels[n] = rel
    return PresentedComplex(sq.quandle, a, n_max, bases, rels)


class CanonicalComplex(PresentedComplex):
    """C^SQ of a symmetric double on the basis Y x (X^{+1})^n.

    The boundary is computed in the double and every term is rewritten to
    canonical form, then projected (degenerate tuples dropped).
    """

    def __init__(self, q: FiniteQuandle, a: XSetAction, n_max: int):
        limits().check("max_degree", n_max)
        self.base_q, self.base_a = q, a
        dq = symmetric_double(q).quandle
        da = induced_double_action(q, a)
        bases = {n: nondegenerate_basis(q.size, a.ysize, n) for n in range(1, n_max + 1)}
        super().__init__(dq, da, n_max, bases, {})

    def _canon_boundary(self, g: Gen) -> Chain:
        return t_down(boundary_chain(self.q, self.a, {g: 1}), self.base_q, self.base_a)

    def boundary_matrix(self, n: int) -> list[list[int]]:
        src, tgt = self.basis(n), self.basis(n - 1)
        cols = []
        for g in src:
            v = [0] * len(tgt)
            for i, k in self.to_index(n - 1, self._canon_boundary(g)).items():
                v[i] += k
            cols.append(v)
        return linalg.from_columns(cols, len(tgt))

    def reduced_boundary(self, n: int) -> list[list[int]]:
        if n < 2 or n > self.top:
            return super().reduced_boundary(n)
        return self.boundary_matrix(n)


def complex_sq_canonical(q: FiniteQuandle, a: XSetAction, n_max: int) -> CanonicalComplex:
    return CanonicalComplex(q, a, n_max)


def homology_q(q: FiniteQuandle, a: XSetAction, n: int, modulus: int = 0) -> HomologyResult:
    return complex_q(q, a, max(n + 1, 1)).homology(n, modulus)


def homology_sq(sq: SymmetricQuandle, a: XSetAction, n: int, modulus: int = 0) -> HomologyResult:
    return complex_sq(sq, a, max(n + 1, 1)).homology(n, modulus)


def homology_sq_double(q: FiniteQuandle, a: XSetAction, n: int, modulus: int = 0) -> HomologyResult:
    """Homology of the symmetric double through the canonical basis."""
    return complex_sq_canonical(q, a, max(n + 1, 1)).homology(n, modulus)


# -- cocycles ------------------------------------------------------------------


@dataclass
class Cocycle:
    """A homomorphism on degree-n chains, stored by its values on tuples.

    ``theory`` is "q" (values on nondegenerate tuples of X) or "sq" (values
    on all tuples of the symmetric quandle).  Missing tuples are 0.
    """

    degree: int
    modulus: int
    values: dict[Gen, int]
    theory: str = "q"

    def __post_init__(self):
        m = self.modulus
        vals = {}
        for g, v in self.values.items():
            v = v % m if m else v
            if v:
                vals[tuple(g)] = v
        self.values = vals

    def __call__(self, c: Mapping[Gen, int]) -> int:
        total = sum(k * self.values.get(g, 0) for g, k in c.items())
        return total % self.modulus if self.modulus else total

    def value(self, g: Gen) -> int:
        return self.values.get(tuple(g), 0)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        vals = dict(self.values)
        for g, v in other.values.items():
            vals[g] = vals.get(g, 0) + v
        return Cocycle(self.degree, self.modulus, vals, self.theory)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "modulus": self.modulus,
            "theory": self.theory,
            "values": [{"r": g[0], "xs": list(g[1:]), "v": v} for g, v in sorted(self.values.items())],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "Cocycle":
        try:
            vals = {(int(e["r"]), *map(int, e["xs"])): int(e["v"]) for e in d.get("values", [])}
            deg = int(d["degree"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed cocycle: {exc}") from None
        for g in vals:
            if len(g) != deg + 1:
                raise InputError(f"tuple {g} does not have degree {deg}")
        return cls(deg, int(d.get("modulus", 0)), vals, d.get("theory", "q"))


def coboundary(f: Cocycle, q: FiniteQuandle, a: XSetAction, nx: int | None = None) -> Cocycle:
    """δf = f ∘ ∂, tabulated on all tuples of degree n+1."""
    nx = q.size if nx is None else nx
    vals = {}
    for g in all_tuples(nx, a.ysize, f.degree + 1):
        if f.theory == "q" and is_degenerate(g):
            continue
        vals[g] = f(boundary_chain(q, a, {g: 1}, drop_degenerate=(f.theory == "q")))
    return Cocycle(f.degree + 1, f.modulus, vals, f.theory)


def is_cocycle(theta: Cocycle, q: FiniteQuandle, a: XSetAction, rho: Sequence[int] | None = None) -> bool:
    """Check a quandle cocycle (rho None) or a symmetric-quandle cocycle.

    Works for any modulus.  The cochain must vanish on degenerate tuples (and,
    with rho, on the rho relation generators), and θ ∘ ∂ must vanish.
    """
    m = theta.modulus
    n = theta.degree
    if n < 1:
        return False

    def zero(v):
        return (v % m == 0) if m else v == 0

    for g, v in theta.values.items():
        if len(g) != n + 1:
            return False
        if is_degenerate(g) and not zero(v):
            return False
    if rho is not None:
        sq = SymmetricQuandle(q, tuple(rho))
        for g in all_tuples(q.size, a.ysize, n):
            for i in range(n):
                if not zero(theta(rho_relation(sq, a, g, i))):
                    return False
    for g in all_tuples(q.size, a.ysize, n + 1):
        if not zero(theta(boundary_chain(q, a, {g: 1}))):
            return False
    return True


@dataclass
class CocycleSpace:
    degree: int
    modulus: int
    cocycles: list[Cocycle]
    coboundaries: list[Cocycle]
    # for modulus 0: invariant factors of B^n inside Z^n (Z^n/B^n ~ Z^{free} + torsion)
    certificate: list[int] = field(default_factory=list)

    @property
    def cohomology_rank(self) -> int:
        if self.modulus:
            return len(self.cocycles) - len(self.coboundaries)
        return len(self.cocycles) - len(self.certificate)


def _expand(cx: PresentedComplex, n: int, vec: Sequence[int], modulus: int, theory: str) -> Cocycle:
    red = cx.reduced(n)
    vals = {}
    for i, g in enumerate(cx.basis(n)):
        v = sum(c * vec[red.pos[j]] for j, c in red.resolve({i: 1}).items())
        if modulus:
            v %= modulus
        if v:
            vals[g] = v
    return Cocycle(n, modulus, vals, theory)


def cocycle_space(cx: PresentedComplex, n: int, modulus: int, theory: str = "q") -> CocycleSpace:
    """Bases of Z^n and B^n for a complex built up to degree >= n+1."""
    if modulus < 0 or modulus == 1:
        raise InputError("modulus must be 0 or >= 2")
    if modulus and not linalg.is_prime(modulus):
        raise UnsupportedModulusError(
            f"solving for cocycles mod {modulus} (composite) is unsupported; use is_cocycle")
    if n + 1 > cx.top:
        raise InputError(f"complex built to degree {cx.top}; need {n + 1}")
    m_n = len(cx.reduced(n).survivors)
    m_prev = len(cx.reduced(n - 1).survivors)
    # conditions on θ: θ·R_n = 0 and θ·B_{n+1} = 0
    rows = cx.reduced_relations(n) + linalg.columns(cx.reduced_boundary(n + 1))
    rows = [r for r in rows if any(r)]
    # coboundaries: B_n^T f with f·R_{n-1} = 0
    if n >= 2 and m_prev:
        frows = [r for r in cx.reduced_relations(n - 1) if any(r)]
        bt = linalg.transpose(cx.reduced_boundary(n)) if m_n else []
    else:
        frows, bt = [], []
    if modulus:
        z = linalg.nullspace_mod(rows, modulus, m_n) if rows else [
            [int(i == j) for i in range(m_n)] for j in range(m_n)]
        if bt:
            fs = linalg.nullspace_mod(frows, modulus, m_prev) if frows else [
                [int(i == j) for i in range(m_prev)] for j in range(m_prev)]
            bgens = [linalg.matvec(bt, f) for f in fs]
            bgens = [[x % modulus for x in g] for g in bgens if any(x % modulus for x in g)]
            b = linalg.rref_mod(bgens, modulus, m_n)[0] if bgens else []
        else:
            b = []
        cert: list[int] = []
    else:
        z = linalg.kernel_basis(rows, m_n) if rows else [[int(i == j) for i in range(m_n)] for j in range(m_n)]
        z = linalg.lattice_basis(z, m_n)
        if bt:
            fs = linalg.kernel_basis(frows, m_prev) if frows else [
                [int(i == j) for i in range(m_prev)] for j in range(m_prev)]
            b = linalg.lattice_basis([linalg.matvec(bt, f) for f in fs], m_n)
        else:
            b = []
        coords = [linalg.solve_in_basis(z, g) for g in b]
        cert = [x for x in linalg.invariant_factors(linalg.from_columns(coords, len(z)))] if coords and z else []
    return CocycleSpace(
        n, modulus,
        [_expand(cx, n, v, modulus, theory) for v in z],
        [_expand(cx, n, v, modulus, theory) for v in b],
        cert,
    )


def cocycle_space_q(q: FiniteQuandle, a: XSetAction, n: int, modulus: int) -> CocycleSpace:
    return cocycle_space(complex_q(q, a, n + 1), n, modulus, "q")


def cocycle_space_sq(sq: SymmetricQuandle, a: XSetAction, n: int, modulus: int) -> CocycleSpace:
    return cocycle_space(complex_sq(sq, a, n + 1), n, modulus, "sq")


def transport_cocycle(theta_q: Cocycle, q: FiniteQuandle, a: XSetAction, check: bool = True) -> Cocycle:
    """θ^SQ = θ^Q ∘ T^{D_X -> X}, tabulated on all of Y x D_X^n."""
    if theta_q.theory != "q":
        raise InputError("expected a quandle cocycle")
    if check and not is_cocycle(theta_q, q, a):
        raise InputError("input is not a cocycle")
    vals = {}
    for g in all_tuples(2 * q.size, a.ysize, theta_q.degree):
        v = theta_q(t_down({g: 1}, q, a))
        if v:
            vals[g] = v
    return Cocycle(theta_q.degree, theta_q.modulus, vals, "sq")


def transport_cocycle_back(theta_sq: Cocycle, q: FiniteQuandle, a: XSetAction, check: bool = True) -> Cocycle:
    """θ^Q = θ^SQ ∘ T^{X -> D_X}."""
    if theta_sq.theory != "sq":
        raise InputError("expected a symmetric-quandle cocycle")
    if check:
        d = symmetric_double(q)
        if not is_cocycle(theta_sq, d.quandle, induced_double_action(q, a), d.rho):
            raise InputError("input is not a cocycle")
    vals = {g: theta_sq(t_up({g: 1})) for g in nondegenerate_basis(q.size, a.ysize, theta_sq.degree)}
    return Cocycle(theta_sq.degree, theta_sq.modulus, vals, "q")

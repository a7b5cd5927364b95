"""Crossing weights, weight chains and the cocycle / homology invariants.

Quandle weights live on oriented shadow colorings; symmetric-quandle weights
live on shadow (X, rho)-colorings with a chosen *specified region* at each
crossing.  The harness :func:`verify_theorems` checks that the oriented
theory and the theory of the symmetric double agree on a given diagram.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .algebra import (
    FiniteQuandle,
    SymmetricQuandle,
    XSetAction,
    induced_double_action,
    symmetric_double,
)
from .chain import (
    Chain,
    Cocycle,
    HomologyResult,
    boundary_chain,
    complex_q,
    complex_sq,
    is_cocycle,
    is_degenerate,
    t_down,
    transport_cocycle,
)
from .coloring import (
    QColoring,
    SQColoring,
    color_q,
    color_shadow,
    color_sq,
    color_sq_shadow,
    orientation_classes,
    to_oriented_colored,
)
from .config import InputError
from .diagram import CORNER_QUADRANT, QUADRANT_CORNER, Diagram


def multiset(values) -> tuple:
    """Canonical sorted encoding used for multiset comparisons."""
    return tuple(sorted(values))


@dataclass
class InvariantMultiset:
    values: tuple
    presentation: str | None = None  # the H_2 group, for homology-valued multisets

    def __len__(self) -> int:
        return len(self.values)

    def counts(self) -> dict:
        return dict(sorted(Counter(self.values).items()))

    def to_json(self) -> dict:
        d = {"values": [list(v) if isinstance(v, tuple) else v for v in self.values],
             "counts": [[list(k) if isinstance(k, tuple) else k, n] for k, n in self.counts().items()]}
        if self.presentation is not None:
            d["presentation"] = self.presentation
        return d


# -- quandle weights -----------------------------------------------------------


def crossing_weight_q(d: Diagram, o: Sequence[int], c: QColoring, ci: int) -> tuple[int, tuple[int, int, int]]:
    """(eps, (r, x1, x2)) at crossing ci of an oriented shadow coloring."""
    if c.regions is None:
        raise InputError("crossing weights need region labels")
    ox, uy = d.over_dir(ci, o), d.under_dir(ci, o)
    cr = d.crossings[ci]
    x1 = c.arcs[d.arc_of[cr[0] if ox > 0 else cr[2]]]
    x2 = c.arcs[d.arc_of[cr[1]]]
    r = c.regions[d.corner_region[(ci, QUADRANT_CORNER[(uy, -ox)])]]
    return ox * uy, (r, x1, x2)


def weight_sum_q(d: Diagram, o: Sequence[int], c: QColoring, project: bool = True) -> Chain:
    w = Chain()
    for ci in range(d.ncrossings):
        eps, t = crossing_weight_q(d, o, c, ci)
        if project and is_degenerate(t):
            continue
        w.add(t, eps)
    return w


def _check_theta(theta: Cocycle, q: FiniteQuandle, a: XSetAction, rho=None) -> None:
    if theta.degree != 2:
        raise InputError(f"cocycle invariants need a 2-cocycle, got degree {theta.degree}")
    if not is_cocycle(theta, q, a, rho):
        raise InputError("theta is not a cocycle")


def cocycle_invariant_q(d: Diagram, o: Sequence[int], q: FiniteQuandle, a: XSetAction, theta: Cocycle,
                        colorings: Sequence[QColoring] | None = None, check: bool = True) -> InvariantMultiset:
    if check:
        _check_theta(theta, q, a)
    cols = color_shadow(d, o, q, a) if colorings is None else colorings
    return InvariantMultiset(multiset(theta(weight_sum_q(d, o, c)) for c in cols))


def homology_invariant_q(d: Diagram, o: Sequence[int], q: FiniteQuandle, a: XSetAction,
                         h2: HomologyResult | None = None,
                         colorings: Sequence[QColoring] | None = None) -> InvariantMultiset:
    if h2 is None:
        h2 = complex_q(q, a, 3).homology(2)
    cols = color_shadow(d, o, q, a) if colorings is None else colorings
    vals = []
    for c in cols:
        w = weight_sum_q(d, o, c)
        if boundary_chain(q, a, w, drop_degenerate=True):
            raise ArithmeticError("weight chain is not a cycle")
        vals.append(h2.class_of(w))
    return InvariantMultiset(multiset(vals), str(h2))


# -- symmetric-quandle weights ------------------------------------------------------


def crossing_weight_sq(d: Diagram, sq: SymmetricQuandle, c: SQColoring, ci: int,
                       corner: int | None = None) -> tuple[int, tuple[int, int, int]]:
    """(eps, (r, x1, x2)) using the region at ``corner`` (0..3) as specified region.

    Labels are basic-inverted so that both normals point away from the
    specified region; eps is +1 when (over normal, under normal) is a
    right-handed frame, which keeps the sign aligned with the oriented case.
    """
    if c.regions is None:
        raise InputError("crossing weights need region labels")
    if corner is None:
        corner = default_corner(d, ci)
    if corner not in CORNER_QUADRANT:
        raise InputError(f"corner must be 0..3, got {corner}")
    qx, qy = CORNER_QUADRANT[corner]
    eidx = {e: i for i, e in enumerate(d.edges)}
    cr = d.crossings[ci]
    eu = cr[0] if qy < 0 else cr[2]
    eo = cr[1] if qx > 0 else cr[3]
    iu, io = eidx[eu], eidx[eo]
    # actual normals: under (nx, 0), over (0, ny)
    nx = -((-1) ** c.normals[iu])
    ny = d.over_ref[ci] * (-1) ** c.normals[io]
    x1 = c.labels[iu] if nx == -qx else sq.rho[c.labels[iu]]
    x2 = c.labels[io] if ny == -qy else sq.rho[c.labels[io]]
    r = c.regions[d.corner_region[(ci, corner)]]
    return -qx * qy, (r, x1, x2)


def default_corner(d: Diagram, ci: int) -> int:
    """Corner holding the lowest-index region around crossing ci."""
    regs = d.crossing_regions(ci)
    return min(range(4), key=lambda k: (regs[k], k))


def weight_sum_sq(d: Diagram, sq: SymmetricQuandle, c: SQColoring,
                  corners: Mapping[int, int] | Sequence[int] | None = None) -> Chain:
    """Unprojected weight chain over all tuples (the SQ quotient is applied by the complex)."""
    w = Chain()
    for ci in range(d.ncrossings):
        k = None if corners is None else corners[ci]
        eps, t = crossing_weight_sq(d, sq, c, ci, k)
        w.add(t, eps)
    return w


def cocycle_invariant_sq(d: Diagram, sq: SymmetricQuandle, a: XSetAction, theta: Cocycle,
                         colorings: Sequence[SQColoring] | None = None, check: bool = True) -> InvariantMultiset:
    if check:
        _check_theta(theta, sq.quandle, a, sq.rho)
    cols = color_sq_shadow(d, sq, a) if colorings is None else colorings
    return InvariantMultiset(multiset(theta(weight_sum_sq(d, sq, c)) for c in cols))


def homology_invariant_sq(d: Diagram, sq: SymmetricQuandle, a: XSetAction,
                          colorings: Sequence[SQColoring] | None = None) -> InvariantMultiset:
    cx = complex_sq(sq, a, 3)
    h2 = cx.homology(2)
    cols = color_sq_shadow(d, sq, a) if colorings is None else colorings
    vals = []
    for c in cols:
        w = weight_sum_sq(d, sq, c)
        if not cx.is_zero(1, boundary_chain(sq.quandle, a, w)):
            raise ArithmeticError("weight chain is not a cycle")
        vals.append(h2.class_of(w))
    return InvariantMultiset(multiset(vals), str(h2))


def class_restricted_invariants(d: Diagram, q: FiniteQuandle, a: XSetAction, theta_sq: Cocycle,
                                cls) -> InvariantMultiset:
    """Φ over one orientation class of shadow colorings of the symmetric double."""
    dbl = symmetric_double(q)
    for c in cls.colorings:
        if len(c.labels) != len(d.edges) or c.regions is None or len(c.regions) != d.nregions:
            raise InputError("orientation class does not belong to this diagram")
    return InvariantMultiset(multiset(theta_sq(weight_sum_sq(d, dbl, c)) for c in cls.colorings))


# -- the verification harness ---------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    witness: object = None

    def to_json(self) -> dict:
        d = {"name": self.name, "ok": self.ok}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        return d


def _jsonable(x):
    if isinstance(x, dict):
        return [[_jsonable(k), _jsonable(v)] for k, v in sorted(x.items())]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class TheoremReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name: str, ok: bool, detail: str = "", witness=None) -> None:
        self.checks.append(CheckResult(name, bool(ok), detail, witness))

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


CHECK_NAMES = (
    "class_sizes",          # #Col_X(D,o) = #[C]_ori
    "class_size_multiset",  # multiset over orientations
    "shadow_class_sizes",   # #Col_{X_Y}(D,o) = #[C]_ori for shadow colorings
    "weight_cycles",        # every weight chain is a 2-cycle
    "weight_transport",     # t_down(W_sq) = W_q termwise, and classes agree
    "weight_multisets",     # multiset of per-orientation homology multisets
    "cocycle_values",       # Φ_q(D,o) = Φ_sq(D,[C]_ori) per class and θ
    "cocycle_multisets",    # multiset of per-orientation Φ multisets
)


def verify_theorems(d: Diagram, q: FiniteQuandle, a: XSetAction, thetas: Cocycle | Sequence[Cocycle],
                    t_down_map: Callable = t_down) -> TheoremReport:
    """Machine-check the oriented / symmetric-double correspondences on d."""
    if isinstance(thetas, Cocycle):
        thetas = [thetas]
    for th in thetas:
        _check_theta(th, q, a)
    rep = TheoremReport()
    n = q.size
    dbl = symmetric_double(q)
    da = induced_double_action(q, a)
    orients = d.orientations()

    # plain colorings
    plain_classes = {cl.orientation: cl for cl in orientation_classes(d, color_sq(d, dbl), n)}
    bad = [(o, len(color_q(d, o, q)), len(plain_classes[o])) for o in orients
           if len(color_q(d, o, q)) != len(plain_classes[o])]
    rep.add("class_sizes", not bad, f"{len(orients)} orientations", bad or None)
    qcounts = multiset(len(color_q(d, o, q)) for o in orients)
    ccounts = multiset(len(cl) for cl in plain_classes.values())
    rep.add("class_size_multiset", qcounts == ccounts, f"{list(qcounts)} vs {list(ccounts)}")

    # shadow colorings
    sq_cols = color_sq_shadow(d, dbl, da)
    classes = {cl.orientation: cl for cl in orientation_classes(d, sq_cols, n)}
    q_cols = {o: color_shadow(d, o, q, a) for o in orients}
    bad = [(o, len(q_cols[o]), len(classes[o])) for o in orients if len(q_cols[o]) != len(classes[o])]
    rep.add("shadow_class_sizes", not bad, "", bad or None)

    # weight chains
    cq = complex_q(q, a, 3)
    h2 = cq.homology(2)
    csq = complex_sq(dbl, da, 2)
    wq = {o: [weight_sum_q(d, o, c) for c in q_cols[o]] for o in orients}
    wsq = {o: [weight_sum_sq(d, dbl, c) for c in classes[o].colorings] for o in orients}
    cyc_bad = None
    for o in orients:
        for c, w in zip(q_cols[o], wq[o]):
            if boundary_chain(q, a, w, drop_degenerate=True):
                cyc_bad = cyc_bad or ("q", o, c.to_json())
        for c, w in zip(classes[o].colorings, wsq[o]):
            if not csq.is_zero(1, boundary_chain(dbl.quandle, da, w)):
                cyc_bad = cyc_bad or ("sq", o, c.to_json())
    rep.add("weight_cycles", cyc_bad is None, "", cyc_bad)

    transport_bad = None
    per_orient_q, per_orient_sq = {}, {}
    for o in orients:
        by_q = dict(zip(q_cols[o], wq[o]))
        for c, w in zip(classes[o].colorings, wsq[o]):
            o2, qc = to_oriented_colored(d, c, n)
            down = t_down_map(w, q, a)
            if o2 != o or qc not in by_q or Chain(down) != Chain(by_q[qc]):
                transport_bad = transport_bad or {"coloring": c.to_json(), "t_down": dict(down),
                                                  "expected": dict(by_q.get(qc, {}))}
        per_orient_q[o] = multiset(h2.class_of(w) for w in wq[o])
        try:
            per_orient_sq[o] = multiset(h2.class_of(t_down_map(w, q, a)) for w in wsq[o])
        except ValueError:
            per_orient_sq[o] = None
        if per_orient_q[o] != per_orient_sq[o]:
            transport_bad = transport_bad or {"orientation": list(o), "classes_q": per_orient_q[o],
                                              "classes_sq": per_orient_sq[o]}
    rep.add("weight_transport", transport_bad is None, f"H_2 = {h2}", transport_bad)
    rep.add("weight_multisets",
            multiset(per_orient_q.values()) == multiset(v for v in per_orient_sq.values() if v is not None)
            and None not in per_orient_sq.values())

    val_bad = None
    multi_ok = True
    for ti, th in enumerate(thetas):
        th_sq = transport_cocycle(th, q, a, check=False)
        phi_q = {o: multiset(th(w) for w in wq[o]) for o in orients}
        phi_sq = {o: multiset(th_sq(w) for w in wsq[o]) for o in orients}
        for o in orients:
            if phi_q[o] != phi_sq[o]:
                val_bad = val_bad or {"theta": ti, "orientation": list(o), "q": phi_q[o], "sq": phi_sq[o]}
        if multiset(phi_q.values()) != multiset(phi_sq.values()):
            multi_ok = False
    rep.add("cocycle_values", val_bad is None, f"{len(thetas)} cocycle(s)", val_bad)
    rep.add("cocycle_multisets", multi_ok)
    return rep

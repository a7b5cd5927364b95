import random

import pytest

from conftest import xset
from oracles import quandle_pool
from symquandle.algebra import induced_double_action, make_dihedral, self_action, symmetric_double
from symquandle.chain import (
    Chain,
    Cocycle,
    boundary_chain,
    coboundary,
    cocycle_space_q,
    complex_sq,
    nondegenerate_basis,
    t_down,
    transport_cocycle,
)
from symquandle.coloring import QColoring, color_shadow, color_sq_shadow, orientation_classes
from symquandle.config import InputError
from symquandle.invariant import (
    CHECK_NAMES,
    class_restricted_invariants,
    cocycle_invariant_q,
    cocycle_invariant_sq,
    crossing_weight_q,
    crossing_weight_sq,
    homology_invariant_q,
    homology_invariant_sq,
    multiset,
    verify_theorems,
    weight_sum_q,
    weight_sum_sq,
)

POOL = quandle_pool()
PAIRS = [("R3", "pt"), ("R3", "self"), ("T2", "pt")]
KNOTS = ["trefoil", "figure8", "hopf"]


def pair(qname, kind):
    q = POOL[qname]
    return q, xset(q, kind)


def basis_cocycles(q, a):
    return cocycle_space_q(q, a, 2, 3).cocycles


# -- quandle weights ---------------------------------------------------------------


def test_crossing_weight_sign_follows_crossing(diagrams, r3):
    a = self_action(r3)
    for name in ("trefoil", "trefoil_mirror"):
        d = diagrams[name]
        c = color_shadow(d, (0,), r3, a)[5]
        for ci in range(d.ncrossings):
            eps, (r, x1, x2) = crossing_weight_q(d, (0,), c, ci)
            assert eps == d.crossing_sign(ci, (0,))
            assert x2 == c.arcs[d.arc_of[d.crossings[ci][1]]]


def test_constant_colorings_have_zero_weight(diagrams, r3):
    d = diagrams["trefoil"]
    a = self_action(r3)
    for c in color_shadow(d, (0,), r3, a):
        if len(set(c.arcs)) == 1:
            assert weight_sum_q(d, (0,), c) == {}
            assert weight_sum_q(d, (0,), c, project=False) != {}


def test_weight_needs_regions(diagrams):
    d = diagrams["trefoil"]
    with pytest.raises(InputError):
        crossing_weight_q(d, (0,), QColoring((0, 0, 0)), 0)


@pytest.mark.parametrize("name", KNOTS + ["trefoil_kink", "hopf_kink"])
@pytest.mark.parametrize("qname,kind", PAIRS)
def test_weight_chains_are_cycles(diagrams, name, qname, kind):
    d = diagrams[name]
    q, a = pair(qname, kind)
    dbl, da = symmetric_double(q), induced_double_action(q, a)
    csq = complex_sq(dbl, da, 2)
    for o in d.orientations():
        for c in color_shadow(d, o, q, a):
            assert boundary_chain(q, a, weight_sum_q(d, o, c), drop_degenerate=True) == {}
    for c in color_sq_shadow(d, dbl, da):
        assert csq.is_zero(1, boundary_chain(dbl.quandle, da, weight_sum_sq(d, dbl, c)))


def test_zero_and_coboundary_give_zero_multisets(diagrams, r3):
    d = diagrams["trefoil"]
    a = self_action(r3)
    assert cocycle_invariant_q(d, (0,), r3, a, Cocycle(2, 3, {})).counts() == {0: 27}
    f = Cocycle(1, 3, {g: (g[0] + 2 * g[1]) % 3 for g in nondegenerate_basis(3, 3, 1)})
    assert cocycle_invariant_q(d, (0,), r3, a, coboundary(f, r3, a)).counts() == {0: 27}


def test_trefoil_r3_self_value(diagrams):
    # frozen from the bundled nontrivial cocycle; the kink diagram must agree
    from symquandle.cli import load_cocycle
    r3 = make_dihedral(3)
    a = self_action(r3)
    theta = load_cocycle("theta.json")
    for name in ("trefoil", "trefoil_kink"):
        inv = cocycle_invariant_q(diagrams[name], (0,), r3, a, theta)
        assert inv.counts() == {0: 9, 2: 18}


def test_hopf_t2_value(diagrams, t2):
    from symquandle.cli import load_cocycle
    from symquandle.algebra import point_action
    theta = load_cocycle("theta_t2_pt.json")
    inv = cocycle_invariant_q(diagrams["hopf"], (0, 0), t2, point_action(t2), theta)
    assert inv.counts() == {0: 2, 1: 2}


def test_non_cocycle_rejected(diagrams, r3):
    with pytest.raises(InputError):
        cocycle_invariant_q(diagrams["trefoil"], (0,), r3, self_action(r3), Cocycle(2, 3, {(0, 0, 1): 1}))


@pytest.mark.parametrize("qname,kind", PAIRS)
def test_coboundary_invariance(diagrams, qname, kind):
    q, a = pair(qname, kind)
    rng = random.Random(2024)
    thetas = basis_cocycles(q, a)
    gens1 = nondegenerate_basis(q.size, a.ysize, 1)
    for name in KNOTS:
        d = diagrams[name]
        o = (0,) * d.ncomponents
        cols = color_shadow(d, o, q, a)
        base = {i: cocycle_invariant_q(d, o, q, a, th, cols) for i, th in enumerate(thetas)}
        for _ in range(20):
            i = rng.randrange(len(thetas))
            f = Cocycle(1, 3, {g: rng.randrange(3) for g in gens1})
            moved = thetas[i] + coboundary(f, q, a)
            assert cocycle_invariant_q(d, o, q, a, moved, cols) == base[i]


@pytest.mark.parametrize("qname,kind", PAIRS)
def test_diagram_invariance(diagrams, qname, kind):
    q, a = pair(qname, kind)
    for th in basis_cocycles(q, a):
        assert cocycle_invariant_q(diagrams["trefoil"], (0,), q, a, th) == \
            cocycle_invariant_q(diagrams["trefoil_kink"], (0,), q, a, th)
        h = {o: cocycle_invariant_q(diagrams["hopf"], o, q, a, th) for o in diagrams["hopf"].orientations()}
        hk = {o: cocycle_invariant_q(diagrams["hopf_kink"], o, q, a, th) for o in diagrams["hopf"].orientations()}
        assert h == hk


def test_homology_invariant_q(diagrams, r3):
    a = self_action(r3)
    inv = homology_invariant_q(diagrams["trefoil"], (0,), r3, a)
    assert inv.presentation == "Z/3"
    assert len(inv) == 27
    assert inv == homology_invariant_q(diagrams["trefoil_kink"], (0,), r3, a)


# -- symmetric-quandle weights ------------------------------------------------------------


@pytest.mark.parametrize("name", KNOTS)
@pytest.mark.parametrize("qname,kind", PAIRS)
def test_specified_region_independence(diagrams, name, qname, kind):
    d = diagrams[name]
    q, a = pair(qname, kind)
    dbl, da = symmetric_double(q), induced_double_action(q, a)
    csq = complex_sq(dbl, da, 2)
    for c in color_sq_shadow(d, dbl, da):
        for ci in range(d.ncrossings):
            ws = []
            for k in range(4):
                eps, t = crossing_weight_sq(d, dbl, c, ci, k)
                ws.append(Chain({t: eps}))
            for w in ws[1:]:
                assert csq.equal_in_quotient(2, ws[0], w)
            # and after projecting to the quandle complex
            assert len({tuple(sorted(t_down(w, q, a).items())) for w in ws}) == 1


def test_bad_corner_rejected(diagrams, r3):
    d = diagrams["trefoil"]
    dbl, da = symmetric_double(r3), induced_double_action(r3, self_action(r3))
    c = color_sq_shadow(d, dbl, da)[0]
    with pytest.raises(InputError):
        crossing_weight_sq(d, dbl, c, 0, 7)


def test_sq_zero_cocycle(diagrams, r3):
    d = diagrams["trefoil"]
    dbl, da = symmetric_double(r3), induced_double_action(r3, self_action(r3))
    assert cocycle_invariant_sq(d, dbl, da, Cocycle(2, 3, {}, "sq")).counts() == {0: 54}


@pytest.mark.parametrize("name", KNOTS)
@pytest.mark.parametrize("qname,kind", PAIRS)
def test_class_restricted_equals_oriented(diagrams, name, qname, kind):
    d = diagrams[name]
    q, a = pair(qname, kind)
    dbl, da = symmetric_double(q), induced_double_action(q, a)
    classes = orientation_classes(d, color_sq_shadow(d, dbl, da), q.size)
    for th in basis_cocycles(q, a):
        tsq = transport_cocycle(th, q, a)
        per_class = {cl.orientation: class_restricted_invariants(d, q, a, tsq, cl) for cl in classes}
        for o in d.orientations():
            assert per_class[o] == cocycle_invariant_q(d, o, q, a, th)
        full = cocycle_invariant_sq(d, dbl, da, tsq)
        union = multiset(v for cl in per_class.values() for v in cl.values)
        assert full.values == union
        assert multiset(per_class[o].values for o in d.orientations()) == \
            multiset(cocycle_invariant_q(d, o, q, a, th).values for o in d.orientations())


def test_homology_invariant_sq_counts(diagrams, t2):
    from symquandle.algebra import point_action
    d = diagrams["hopf"]
    dbl, da = symmetric_double(t2), induced_double_action(t2, point_action(t2))
    inv = homology_invariant_sq(d, dbl, da)
    assert len(inv) == len(color_sq_shadow(d, dbl, da))
    assert inv.presentation == "Z^2"


def test_class_mismatch_rejected(diagrams, r3):
    dbl, da = symmetric_double(r3), induced_double_action(r3, self_action(r3))
    classes = orientation_classes(diagrams["trefoil"], color_sq_shadow(diagrams["trefoil"], dbl, da), 3)
    with pytest.raises(InputError):
        class_restricted_invariants(diagrams["figure8"], r3, self_action(r3), Cocycle(2, 3, {}, "sq"), classes[0])


# -- the harness ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", KNOTS + ["trefoil_kink"])
@pytest.mark.parametrize("qname,kind", PAIRS)
def test_harness_passes(diagrams, name, qname, kind):
    q, a = pair(qname, kind)
    rep = verify_theorems(diagrams[name], q, a, basis_cocycles(q, a))
    assert rep.ok, rep.to_json()
    assert [c.name for c in rep.checks] == list(CHECK_NAMES)


def test_harness_catches_broken_t_down(diagrams, r3):
    a = self_action(r3)

    def broken(c, q, a):
        out = t_down(c, q, a)
        return Chain({g: -k for g, k in out.items()})

    rep = verify_theorems(diagrams["trefoil"], r3, a, basis_cocycles(r3, a), t_down_map=broken)
    assert not rep.ok
    res = rep.get("weight_transport")
    assert not res.ok and res.witness is not None
    assert rep.get("class_sizes").ok


def test_harness_rejects_non_cocycle(diagrams, r3):
    with pytest.raises(InputError):
        verify_theorems(diagrams["trefoil"], r3, self_action(r3), Cocycle(2, 3, {(0, 0, 1): 1}))

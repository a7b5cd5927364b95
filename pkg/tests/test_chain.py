import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import xset
from oracles import oracle_homology_q, quandle_pool, rewrite_to_positive
from symquandle import linalg
from symquandle.algebra import (
    SymmetricQuandle,
    induced_double_action,
    make_dihedral,
    make_trivial,
    point_action,
    self_action,
    signed_index,
    symmetric_double,
)
from symquandle.chain import (
    Chain,
    Cocycle,
    UnsupportedModulusError,
    all_tuples,
    boundary_chain,
    boundary_q,
    canonicalize,
    coboundary,
    cocycle_space_q,
    cocycle_space_sq,
    complex_q,
    complex_sq,
    complex_sq_canonical,
    homology_q,
    homology_sq,
    homology_sq_double,
    is_cocycle,
    is_degenerate,
    nondegenerate_basis,
    rho_relation,
    t_down,
    t_up,
    transport_cocycle,
    transport_cocycle_back,
)
from symquandle.config import InputError

POOL = quandle_pool()
PAIRS = [("T2", "pt"), ("R3", "pt"), ("R3", "self")]


def pair(qname, kind):
    q = POOL[qname]
    return q, xset(q, kind)


def double_pair(q, a):
    d = symmetric_double(q)
    return d, induced_double_action(q, a)


# -- boundary -----------------------------------------------------------------


def test_trivial_quandle_boundary_vanishes():
    bm = boundary_q(make_trivial(2), point_action(make_trivial(2)), 2)
    assert bm.source == [(0, 0, 1), (0, 1, 0)]
    assert all(x == 0 for row in bm.matrix for x in row)


def test_dihedral_boundary_example():
    q = make_dihedral(3)
    c = boundary_chain(q, point_action(q), {(0, 0, 1): 1}, drop_degenerate=True)
    assert c == {(0, 0): 1, (0, 2): -1}


def test_degree_one_boundary_is_zero():
    q = make_dihedral(3)
    bm = boundary_q(q, self_action(q), 1)
    assert bm.target == [] and bm.matrix == []
    assert boundary_chain(q, self_action(q), {(0, 1): 5}) == {}


@pytest.mark.parametrize("name", ["T2", "R3", "R4", "S4", "ConjS3"])
@pytest.mark.parametrize("kind", ["pt", "self"])
def test_boundary_squared_is_zero(name, kind):
    q, a = pair(name, kind)
    for n in (2, 3):
        for g in (all_tuples(q.size, a.ysize, n + 1) if q.size <= 4 else nondegenerate_basis(q.size, a.ysize, n + 1)[:200]):
            assert boundary_chain(q, a, boundary_chain(q, a, {g: 1})) == {}
            assert boundary_chain(q, a, boundary_chain(q, a, {g: 1}, True), True) == {}


@pytest.mark.parametrize("qname,kind", PAIRS)
def test_presented_complexes_are_complexes(qname, kind):
    q, a = pair(qname, kind)
    d, da = double_pair(q, a)
    for cx in (complex_q(q, a, 3), complex_sq(d, da, 3), complex_sq_canonical(q, a, 3)):
        prod = linalg.matmul(cx.reduced_boundary(2), cx.reduced_boundary(3))
        assert all(x == 0 for row in prod for x in row)
        # boundaries of relations are relations one degree down
        for n in (2, 3):
            for rel in cx.relations.get(n, [])[:300]:
                assert cx.is_zero(n - 1, boundary_chain(cx.q, cx.a, rel))


def test_degenerate_relation_present():
    q = make_trivial(2)
    d, da = double_pair(q, point_action(q))
    cx = complex_sq(d, da, 3)
    assert {(0, 1, 1, 2): 1} in cx.relations[3]


def test_chain_arithmetic():
    c = Chain.of([(2, (0, 1)), (-2, (0, 1)), (1, (0, 0))])
    assert c == {(0, 0): 1}
    assert (c - c) == {} and (-c).scale(3) == {(0, 0): -3}


# -- canonicalization ----------------------------------------------------------------


def test_canonical_form_frozen_value():
    q = make_dihedral(3)
    n = 3
    gen = (0, signed_index(1, -1, n), signed_index(2, 1, n), signed_index(0, -1, n))
    assert canonicalize(gen, q, self_action(q)) == (1, (1, 2, 1, 0))


@pytest.mark.parametrize("qname,kind", PAIRS + [("R5", "self"), ("ConjS3", "pt")])
def test_canonical_form_closed_formula(qname, kind):
    # (r, x1^-, x2^+, x3^-) -> +(r*x1^-1*x3^-1, x1*x3^-1, x2*x3^-1, x3)
    q, a = pair(qname, kind)
    n = q.size
    for r in range(a.ysize):
        for x1, x2, x3 in itertools.product(range(n), repeat=3):
            gen = (r, signed_index(x1, -1, n), x2, signed_index(x3, -1, n))
            expect = (a.act_inv[a.act_inv[r][x1]][x3], q.inv(x1, x3), q.inv(x2, x3), x3)
            assert canonicalize(gen, q, a) == (1, expect)


@pytest.mark.parametrize("qname,kind", PAIRS)
def test_canonical_form_agrees_with_rewriting_oracle(qname, kind):
    q, a = pair(qname, kind)
    d, da = double_pair(q, a)
    n = q.size
    for deg in (1, 2, 3):
        for g in all_tuples(2 * n, a.ysize, deg):
            forms = rewrite_to_positive(g, d.quandle, da, n)
            assert forms == {canonicalize(g, q, a)}


def test_positive_tuples_unchanged():
    q = make_dihedral(3)
    a = self_action(q)
    for g in all_tuples(3, 3, 3):
        assert canonicalize(g, q, a) == (1, g)
        assert t_down({g: 1}, q, a) == ({} if is_degenerate(g) else {g: 1})


def test_t_down_of_mixed_tuple_is_its_canonical_form():
    q = make_dihedral(3)
    a = self_action(q)
    gen = (0, 4, 2, 3)
    assert t_down({gen: 1}, q, a) == {(1, 2, 1, 0): 1}


# -- the T maps --------------------------------------------------------------------------


@pytest.mark.parametrize("qname,kind", PAIRS)
def test_t_maps_are_mutually_inverse(qname, kind):
    q, a = pair(qname, kind)
    d, da = double_pair(q, a)
    cx = complex_sq(d, da, 3)
    for n in (1, 2, 3):
        for g in nondegenerate_basis(q.size, a.ysize, n):
            assert t_down(t_up({g: 1}), q, a) == {g: 1}
        for g in all_tuples(2 * q.size, a.ysize, n):
            assert cx.equal_in_quotient(n, t_up(t_down({g: 1}, q, a)), {g: 1})


@pytest.mark.parametrize("qname,kind", PAIRS)
def test_t_maps_are_chain_maps(qname, kind):
    q, a = pair(qname, kind)
    d, da = double_pair(q, a)
    cx = complex_sq(d, da, 3)
    for n in (2, 3):
        for g in all_tuples(2 * q.size, a.ysize, n):
            lhs = boundary_chain(q, a, t_down({g: 1}, q, a), drop_degenerate=True)
            rhs = t_down(boundary_chain(d.quandle, da, {g: 1}), q, a)
            assert lhs == rhs
        for g in nondegenerate_basis(q.size, a.ysize, n):
            lhs = boundary_chain(d.quandle, da, t_up({g: 1}))
            rhs = t_up(boundary_chain(q, a, {g: 1}, drop_degenerate=True))
            assert cx.equal_in_quotient(n - 1, lhs, rhs)


@pytest.mark.parametrize("qname,kind", PAIRS)
def test_t_down_kills_rho_and_degenerate_relations(qname, kind):
    q, a = pair(qname, kind)
    d, da = double_pair(q, a)
    for n in (1, 2, 3):
        for g in all_tuples(2 * q.size, a.ysize, n):
            for i in range(n):
                assert t_down(rho_relation(d, da, g, i), q, a) == {}
            if is_degenerate(g):
                assert t_down({g: 1}, q, a) == {}


def test_t_down_t_up_on_random_chains():
    q = make_dihedral(3)
    a = self_action(q)
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 3)
        basis = nondegenerate_basis(3, 3, n)
        c = Chain.of((rng.randint(-4, 4), rng.choice(basis)) for _ in range(5))
        assert t_down(t_up(c), q, a) == c


# -- homology ----------------------------------------------------------------------------------


def test_homology_anchors():
    t2 = make_trivial(2)
    h = homology_q(t2, point_action(t2), 2)
    assert h.invariants() == (2, ()) and str(h) == "Z^2"
    r3 = make_dihedral(3)
    assert homology_q(r3, point_action(r3), 1).invariants() == (1, ())


@pytest.mark.parametrize("name", ["T2", "T3", "R3", "R4", "R5", "S4"])
@pytest.mark.parametrize("kind", ["pt", "self"])
def test_quandle_homology_against_sympy(name, kind):
    q, a = pair(name, kind)
    degrees = (1, 2) if q.size * a.ysize <= 9 or kind == "pt" else (1,)
    for n in degrees:
        betti, tors = oracle_homology_q(q, a, n)
        assert homology_q(q, a, n).invariants() == (betti, tuple(tors))


@pytest.mark.parametrize("qname,kind", PAIRS)
@pytest.mark.parametrize("modulus", [0, 3])
def test_double_homology_matches_quandle_homology(qname, kind, modulus):
    q, a = pair(qname, kind)
    d, da = double_pair(q, a)
    for n in (1, 2):
        hq = homology_q(q, a, n, modulus)
        assert homology_sq(d, da, n, modulus).invariants() == hq.invariants()
        assert homology_sq_double(q, a, n, modulus).invariants() == hq.invariants()


def test_frozen_homology_values():
    r3 = make_dihedral(3)
    assert str(homology_q(r3, self_action(r3), 2)) == "Z/3"
    assert str(homology_q(r3, self_action(r3), 1)) == "Z^3"
    assert str(homology_q(r3, point_action(r3), 2)) == "0"
    # universal coefficients: H_2 = Z/3 and H_1 is free, so one dimension mod 3
    assert homology_q(r3, self_action(r3), 2, 3).dimension == 1


def test_fixed_point_involution_gives_two_torsion():
    t1 = make_trivial(1)
    pt = point_action(t1)
    fixed = complex_sq(SymmetricQuandle(t1, (0,)), pt, 2)
    assert linalg.invariant_factors(fixed.relation_matrix(1)) == [2]
    # no degree-2 chains survive and ∂ vanishes, so H_1 is the chain group Z/2
    assert homology_sq(SymmetricQuandle(t1, (0,)), pt, 1).invariants() == (0, (2,))
    dpt = induced_double_action(t1, pt)
    dbl = complex_sq(symmetric_double(t1), dpt, 2)
    assert linalg.invariant_factors(dbl.relation_matrix(1)) == [1]
    assert homology_sq(symmetric_double(t1), dpt, 1).invariants() == (1, ())


def test_homology_rejects_bad_modulus():
    q = make_trivial(2)
    with pytest.raises(InputError):
        homology_q(q, point_action(q), 1, 1)


def test_class_of_cycles():
    q = make_dihedral(3)
    a = self_action(q)
    h = homology_q(q, a, 2)
    b3 = boundary_chain(q, a, {(0, 1, 2, 0): 1}, drop_degenerate=True)
    assert h.class_of(b3) == (0,)
    with pytest.raises(ValueError):
        h.class_of({(0, 0, 1): 1})


# -- cocycles ----------------------------------------------------------------------------------


def test_trivial_quandle_cocycles_rank_two():
    q = make_trivial(2)
    sp = cocycle_space_q(q, point_action(q), 2, 0)
    assert len(sp.cocycles) == 2 and sp.coboundaries == []
    assert sp.cohomology_rank == 2


@pytest.mark.parametrize("qname,kind", PAIRS)
def test_coboundaries_are_cocycles(qname, kind):
    q, a = pair(qname, kind)
    rng = random.Random(3)
    for _ in range(5):
        f = Cocycle(1, 3, {g: rng.randrange(3) for g in nondegenerate_basis(q.size, a.ysize, 1)})
        assert is_cocycle(coboundary(f, q, a), q, a)
    sp = cocycle_space_q(q, a, 2, 3)
    for th in sp.cocycles + sp.coboundaries:
        assert is_cocycle(th, q, a)


def test_degenerate_support_rejected():
    q = make_trivial(2)
    assert not is_cocycle(Cocycle(2, 0, {(0, 1, 1): 1}), q, point_action(q))
    assert is_cocycle(Cocycle(2, 0, {(0, 0, 1): 1}), q, point_action(q))


def test_composite_modulus_solver_unsupported():
    q = make_dihedral(3)
    with pytest.raises(UnsupportedModulusError):
        cocycle_space_q(q, point_action(q), 2, 6)
    # verification still works for composite moduli
    assert is_cocycle(Cocycle(2, 6, {}), q, point_action(q))


def test_cocycle_dimensions_match_cohomology():
    q = make_dihedral(3)
    for a, z, b in ((point_action(q), 2, 2), (self_action(q), 7, 6)):
        sp = cocycle_space_q(q, a, 2, 3)
        assert (len(sp.cocycles), len(sp.coboundaries)) == (z, b)


def test_sq_cocycle_space_of_double():
    q = make_dihedral(3)
    a = point_action(q)
    d, da = double_pair(q, a)
    sp = cocycle_space_sq(d, da, 2, 3)
    assert (len(sp.cocycles), len(sp.coboundaries)) == (2, 2)
    for th in sp.cocycles:
        assert is_cocycle(th, d.quandle, da, d.rho)


def test_cocycle_json_round_trip():
    th = Cocycle(2, 3, {(0, 1, 2): 4, (0, 2, 1): 3})
    assert th.values == {(0, 1, 2): 1}
    assert Cocycle.from_json(th.to_json()) == th
    with pytest.raises(InputError):
        Cocycle.from_json({"degree": 2, "values": [{"r": 0, "xs": [1], "v": 1}]})


# -- transport -----------------------------------------------------------------------------------


def test_zero_transports_to_zero():
    q = make_dihedral(3)
    assert transport_cocycle(Cocycle(2, 3, {}), q, point_action(q)).values == {}


@pytest.mark.parametrize("qname,kind,modulus", [("T2", "pt", 0), ("R3", "pt", 3), ("R3", "self", 3)])
def test_transport_round_trip(qname, kind, modulus):
    q, a = pair(qname, kind)
    d, da = double_pair(q, a)
    for th in cocycle_space_q(q, a, 2, modulus).cocycles:
        sq = transport_cocycle(th, q, a)
        assert is_cocycle(sq, d.quandle, da, d.rho)
        for g in nondegenerate_basis(q.size, a.ysize, 2):
            assert sq.value(g) == th.value(g)
        assert transport_cocycle_back(sq, q, a) == th


def test_transport_rejects_non_cocycles():
    q = make_dihedral(3)
    with pytest.raises(InputError):
        transport_cocycle(Cocycle(2, 3, {(0, 0, 1): 1}), q, point_action(q))


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 5), st.integers(0, 5), st.integers(-3, 3)), max_size=8))
def test_t_down_is_additive(terms):
    q = make_dihedral(3)
    a = self_action(q)
    c = Chain.of((k, (r, x, y)) for r, x, y, k in terms)
    total = Chain()
    for g, k in c.items():
        total = total + t_down({g: 1}, q, a).scale(k)
    assert t_down(c, q, a) == total

import random
from fractions import Fraction
from itertools import product

import pytest

from helpers import rand_frac, random_flat
from jumploci.aomoto import FlatConnection, aomoto_betti
from jumploci.errors import NotFlatError, PreconditionError
from jumploci.lie import lie_cochain_cdga
from jumploci.models import (abelian_lie, exterior_ring, heis3, heis3_standard_rep, pencil3, rank_one_rep,
                             solv2, torus2)
from jumploci.resonance import (LinearSubspaceQ, fn_degeneration, generic_betti, line_scan,
                                linear_components_rank_one, maximal_subspaces, resonance_membership)
from jumploci.group_side import pencil_presentation, z2_presentation

R1 = rank_one_rep()


def test_membership_examples():
    c = lie_cochain_cdga(solv2())
    assert resonance_membership(c, R1, FlatConnection.rank_one([0, 1]), 1, 1)
    assert not resonance_membership(c, R1, FlatConnection.rank_one([0, 2]), 1, 1)
    assert resonance_membership(c, R1, FlatConnection.rank_one([0, 5]), 1, 0)
    assert resonance_membership(pencil3(), R1, FlatConnection.rank_one([1, -1, 0]), 1, 1)
    with pytest.raises(NotFlatError):
        resonance_membership(c, R1, FlatConnection.rank_one([1, 0]), 1, 0)


def test_scan_examples():
    c = lie_cochain_cdga(solv2())
    pts = line_scan(c, R1, FlatConnection.rank_one([0, 1]), [0, 1, 2], 1)
    assert [p.betti for p in pts] == [1, 1, 0]
    samples = [1, 2, 3, 5, 7]
    for a, w in ((torus2(), [1, 2]), (pencil3(), [1, -1, 0]), (pencil3(), [2, 1, 5])):
        for weighted in (False, True):
            vals = {p.betti for p in line_scan(a, R1, FlatConnection.rank_one(w), samples, 1, weighted)}
            assert len(vals) == 1
    zero = line_scan(pencil3(), R1, FlatConnection.rank_one([0, 0, 0]), samples, 1)
    assert {p.betti for p in zero} == {3}


def test_scan_reports_nonflat_samples():
    # x (x) x + y (x) y in C(HEIS3) with HEIS3 coefficients: flat only at t = 0
    c = lie_cochain_cdga(heis3())
    w = FlatConnection.from_columns([[1, 0, 0], [0, 1, 0], [0, 0, 0]], 3)
    pts = line_scan(c, heis3_standard_rep(), w, [0, 1, 2], 1)
    assert [p.flat for p in pts] == [True, False, False]
    assert pts[1].betti is None


def test_generic_betti_examples():
    assert generic_betti(torus2(), R1, FlatConnection.rank_one([1, 0]), 1) == 0
    assert generic_betti(lie_cochain_cdga(solv2()), R1, FlatConnection.rank_one([0, 1]), 1) == 0
    assert generic_betti(pencil3(), R1, FlatConnection.rank_one([0, 0, 0]), 1) == 3


@pytest.mark.parametrize("make", [torus2, pencil3, lambda: lie_cochain_cdga(solv2()),
                                  lambda: lie_cochain_cdga(heis3())])
def test_generic_is_minimum_of_scan(make):
    a = make()
    rng = random.Random(8)
    for _ in range(5):
        w = random_flat(a, abelian_lie(1), rng)
        for i in range(a.top):
            g = generic_betti(a, R1, w, i)
            vals = [p.betti for p in line_scan(a, R1, w, [Fraction(k, 3) for k in range(-6, 7) if k], i)]
            assert g == min(vals)


def test_linear_subspace_basics():
    s = LinearSubspaceQ.span(3, [[1, 0, -1], [0, 1, -1]])
    assert s == LinearSubspaceQ.from_equations(3, [[2, 2, 2]])
    assert s.dim == 2 and s.codim == 1
    assert s.contains(LinearSubspaceQ.span(3, [[1, -1, 0]]))
    assert not LinearSubspaceQ.span(3, [[1, 0, 0]]).contains(s)
    zero = LinearSubspaceQ.span(3, [])
    assert zero.dim == 0 and s.contains(zero)
    assert maximal_subspaces([zero, s, LinearSubspaceQ.span(3, [[1, -1, 0]]), s]) == [s]


def test_components_pencil():
    rep = linear_components_rank_one(pencil3(), 1, 1)
    assert rep.complete
    assert rep.components == [LinearSubspaceQ.from_equations(3, [[1, 1, 1]])]
    assert rep.weighted_homogeneous == [True]


def test_components_torus_and_depth():
    rep = linear_components_rank_one(torus2(), 1, 1)
    assert rep.components == [LinearSubspaceQ.span(2, [])]
    rep = linear_components_rank_one(pencil3(), 1, 3)
    assert LinearSubspaceQ.span(3, []) in rep.components


def test_components_need_positive_weights():
    with pytest.raises(PreconditionError):
        linear_components_rank_one(lie_cochain_cdga(solv2()), 1, 1)


def test_components_budget_flag():
    rep = linear_components_rank_one(pencil3(), 1, 1, search_budget=10)
    assert not rep.complete


def test_fn_degeneration_examples():
    t = torus2()
    r = fn_degeneration(t, [1, 0], 2)
    assert r.e2 == [0, 0, 0] and r.degenerate
    r = fn_degeneration(pencil3(), [1, 0, 0], 2)
    assert r.e2[1] == 0 and r.generic[1] == 0 and r.degenerate
    r = fn_degeneration(pencil3(), [0, 0, 0], 2)
    assert r.e2 == [1, 3, 2] == r.generic and r.degenerate
    with pytest.raises(PreconditionError):
        fn_degeneration(lie_cochain_cdga(solv2()), [0, 1], 1)


def test_fn_degeneration_with_presentations():
    r = fn_degeneration(torus2(), [1, 1], 2, z2_presentation())
    assert r.group_generic == [0, 0] and r.group_degenerate
    r = fn_degeneration(pencil3(), [1, -1, 0], 2, pencil_presentation())
    assert r.group_generic == [0, 1] and r.group_degenerate
    r = fn_degeneration(pencil3(), [Fraction(1, 2), 1, 3], 2, pencil_presentation())
    assert r.group_generic == [0, 0] and r.group_degenerate


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fn_degeneration_exterior(n):
    rng = random.Random(n)
    a = exterior_ring(n)
    for _ in range(5):
        assert fn_degeneration(a, [rand_frac(rng) for _ in range(n)], n).degenerate


def test_weight_invariance_heis3_coefficients():
    rng = random.Random(12)
    a = pencil3()
    rep = heis3_standard_rep()
    from jumploci.resonance import _act
    for _ in range(5):
        w = random_flat(a, heis3(), rng)
        base = aomoto_betti(a, rep, w, 2)
        for t in (2, 3, -1, Fraction(1, 2)):
            assert aomoto_betti(a, rep, _act(a, w, Fraction(t), True), 2) == base


def test_grid_points_match_component_union():
    a = pencil3()
    comps = linear_components_rank_one(a, 1, 1).components
    for z in product(range(-2, 3), repeat=3):
        inside = any(c.contains_vector(z) for c in comps)
        assert inside == resonance_membership(a, R1, FlatConnection.rank_one(z), 1, 1)

import random
from fractions import Fraction

import pytest

from jumploci.errors import PreconditionError
from jumploci.exact_linalg import GaussianRational, SparseMatrix
from jumploci.group_side import (GroupRep, Presentation, commutator, cv_membership, exp_compare, fox_derivative,
                                 free_presentation, numeric_rank, pencil_presentation,
                                 presentation_cochain_matrices, twisted_betti_low, z2_presentation)
from jumploci.models import pencil3, torus2


def test_fox_examples():
    p = z2_presentation()
    s, t = Fraction(2), Fraction(5, 3)
    rho = GroupRep.rank_one([s, t])
    w = p.relators[0]
    assert fox_derivative((1,), 0, rho) == SparseMatrix.identity(1)
    assert fox_derivative(w, 0, rho).to_dense() == [[1 - t]]
    assert fox_derivative(w, 1, rho).to_dense() == [[s - 1]]


def test_cochain_matrices():
    p = z2_presentation()
    s, t = Fraction(2), Fraction(3)
    d0, d1 = presentation_cochain_matrices(p, GroupRep.rank_one([s, t]))
    assert d0.to_dense() == [[s - 1], [t - 1]]
    assert d1.to_dense() == [[1 - t, s - 1]]
    d0, d1 = presentation_cochain_matrices(p, GroupRep.trivial(2))
    assert d0.is_zero() and d1.is_zero()


def test_twisted_betti_examples():
    p = z2_presentation()
    assert twisted_betti_low(p, GroupRep.trivial(2)) == (1, 2)
    assert twisted_betti_low(p, GroupRep.rank_one([2, 3])) == (0, 0)
    f2 = free_presentation(2)
    assert twisted_betti_low(f2, GroupRep.trivial(2)) == (1, 2)
    assert twisted_betti_low(f2, GroupRep.rank_one([2, 1])) == (0, 1)
    assert twisted_betti_low(f2, GroupRep.trivial(2, 3)) == (3, 6)


def test_cv_membership():
    p = z2_presentation()
    assert cv_membership(p, GroupRep.trivial(2), 1, 2)
    assert not cv_membership(p, GroupRep.trivial(2), 1, 3)
    assert not cv_membership(p, GroupRep.rank_one([2, 3]), 1, 1)
    with pytest.raises(PreconditionError):
        cv_membership(p, GroupRep.trivial(2), 2, 1)


def test_invalid_inputs():
    with pytest.raises(PreconditionError):
        Presentation(2, ((1, -1, 2),))
    with pytest.raises(PreconditionError):
        Presentation(2, ((3,),))
    heis = Presentation(2, ())
    with pytest.raises(PreconditionError):
        GroupRep.rank_one([0, 1])
    # a non-commuting pair does not satisfy the torus relator
    a = SparseMatrix.from_dense([[1, 1], [0, 1]])
    b = SparseMatrix.from_dense([[1, 0], [1, 1]])
    with pytest.raises(PreconditionError):
        twisted_betti_low(z2_presentation(), GroupRep(2, (a, b)))
    assert twisted_betti_low(heis, GroupRep(2, (a, b))) == (0, 2)


def _random_rank_one(rng, g, gaussian=False):
    vals = []
    for _ in range(g):
        v = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        if gaussian and rng.random() < 0.5:
            v = GaussianRational(v, rng.randint(-2, 2))
        vals.append(v)
    return vals


def test_fundamental_identity():
    rng = random.Random(9)
    for p in (z2_presentation(), pencil_presentation(), free_presentation(3)):
        for _ in range(10):
            # characters of abelian quotients satisfy every commutator relator
            rho = GroupRep.rank_one(_random_rank_one(rng, p.num_generators, gaussian=True))
            d0, d1 = presentation_cochain_matrices(p, rho)
            assert (d1 @ d0).is_zero()


def test_matrix_rep_fundamental_identity():
    # commuting unipotent matrices give a rank-2 representation of Z^2
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[1, -3], [0, 1]])
    rho = GroupRep(2, (a, b))
    d0, d1 = presentation_cochain_matrices(z2_presentation(), rho)
    assert (d1 @ d0).is_zero()
    assert twisted_betti_low(z2_presentation(), rho) == (1, 2)


def test_tietze_invariance():
    p = z2_presentation()
    # add generator c with relator c b^-1 (so c = b), and a redundant relator
    q = Presentation(3, (commutator([1], [2]), (3, -2), commutator([1], [3])))
    rng = random.Random(3)
    for _ in range(10):
        s, t = _random_rank_one(rng, 2)
        assert twisted_betti_low(p, GroupRep.rank_one([s, t])) == twisted_betti_low(q, GroupRep.rank_one([s, t, t]))
    assert twisted_betti_low(p, GroupRep.trivial(2)) == twisted_betti_low(q, GroupRep.trivial(3))


def test_b0_detects_trivial():
    rng = random.Random(1)
    p = pencil_presentation()
    assert twisted_betti_low(p, GroupRep.trivial(3))[0] == 1
    for _ in range(10):
        vals = _random_rank_one(rng, 3)
        assert (twisted_betti_low(p, GroupRep.rank_one(vals))[0] == 1) == all(v == 1 for v in vals)


def test_pencil_characteristic_variety():
    p = pencil_presentation()
    assert twisted_betti_low(p, GroupRep.trivial(3)) == (1, 3)
    assert twisted_betti_low(p, GroupRep.rank_one([2, Fraction(1, 2), 1])) == (0, 1)
    assert twisted_betti_low(p, GroupRep.rank_one([2, 3, 1])) == (0, 0)


def test_numeric_rank_guard():
    assert numeric_rank([[1.0, 0.0], [0.0, 1e-15]], 2) == (1, False)
    assert numeric_rank([[1.0, 0.0], [0.0, 1e-8]], 2) == (2, True)
    assert numeric_rank([[1.0, 0.0], [0.0, 1e-10]], 2) == (1, True)
    assert numeric_rank([[1.0, 0.0], [0.0, 1e-3]], 2) == (2, False)


def test_exp_compare_examples():
    rep = exp_compare(torus2(), z2_presentation(), None, [[1, 0]], 1)
    assert all(s.beta == 0 == s.b for s in rep.samples)
    assert rep.violations == 0 and rep.germ_failures == 0
    rep = exp_compare(torus2(), z2_presentation(), None, [[0, 0]], 1, ts=[0], germ_ts=[])
    assert rep.samples[0].beta == 2 == rep.samples[0].b
    rep = exp_compare(pencil3(), pencil_presentation(), None, [[1, -1, 0]], 1)
    assert rep.violations == 0 and rep.germ_failures == 0
    assert all(s.beta == 1 and s.b >= 1 for s in rep.samples)
    assert rep.tolerances == {"rank_threshold": 1e-9, "guard_low": 1e-12, "guard_high": 1e-6}
    with pytest.raises(PreconditionError):
        exp_compare(torus2(), z2_presentation(), None, [[1, 0]], 2)

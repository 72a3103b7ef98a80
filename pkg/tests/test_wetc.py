import random
from fractions import Fraction
from itertools import product

import pytest

from jumploci.errors import InputError, PreconditionError
from jumploci.resonance import LinearSubspaceQ
from jumploci.wetc import LaurentPoly, WeightFrame, residual, wetc

S = LinearSubspaceQ


def test_examples():
    f = LaurentPoly.parse("t1*t2-1")
    assert wetc(f, WeightFrame.standard([1, 1])) == [S.from_equations(2, [[1, 1]])]
    assert wetc(LaurentPoly.parse("t1+t2-2"), WeightFrame.standard([1, 1])) == [S.span(2, [])]
    g = LaurentPoly.parse("t1-t2")
    assert wetc(g, WeightFrame.standard([1, 2])) == [S.span(2, [])]
    assert wetc(g, WeightFrame.standard([1, 1])) == [S.from_equations(2, [[1, -1]])]


def test_basepoint_and_limits():
    with pytest.raises(PreconditionError):
        wetc(LaurentPoly.parse("t1+t2-1"), WeightFrame.standard([1, 1]))
    big = LaurentPoly(1, tuple(((k,), 1 if k < 13 else -13) for k in range(14)))
    with pytest.raises(PreconditionError):
        wetc(big, WeightFrame.standard([1]))
    with pytest.raises(PreconditionError):
        WeightFrame(((1, 2), (2, 4)), (1, 1))
    with pytest.raises(PreconditionError):
        WeightFrame.standard([0, 1])


def test_parser():
    f = LaurentPoly.parse("3/2*t1^2*t3^-1 - t2 + 1/2 - t1^(-1)")
    assert f.nvars == 3
    assert dict(f.coeffs) == {(2, 0, -1): Fraction(3, 2), (0, 1, 0): -1, (0, 0, 0): Fraction(1, 2),
                              (-1, 0, 0): -1}
    with pytest.raises(InputError):
        LaurentPoly.parse("t1*x")


def test_nontrivial_frame_transforms_back():
    # M swaps coordinates: t.z = M D(t) M^-1 z with weights (1, 2)
    frame = WeightFrame(((0, 1), (1, 0)), (1, 2))
    f = LaurentPoly.parse("t1*t2-1")
    spaces = wetc(f, frame)
    for s in spaces:
        for v in s.basis():
            for t in (0.5, 1.0, 2.0):
                assert residual(f, frame, [float(x) for x in v], t) < 1e-9


def _numeric_in_cone(f, frame, z, ts, thresh):
    return all(residual(f, frame, z, t) < thresh for t in ts)


CASES = [("t1*t2-1", (1, 1)), ("t1+t2-2", (1, 1)), ("t1-t2", (1, 2)), ("t1-t2", (1, 1)),
         ("t1^2*t2-t1", (1, 1)), ("t1*t2+t1^-1*t2^-1-2", (1, 1)), ("t1-t2+t1*t2-t2^2", (1, 2))]


@pytest.mark.parametrize("poly,w", CASES)
def test_soundness_numeric(poly, w):
    f = LaurentPoly.parse(poly, 2)
    frame = WeightFrame.standard(w)
    rng = random.Random(poly)
    for s in wetc(f, frame):
        basis = s.basis()
        for _ in range(10):
            cs = [rng.randint(-3, 3) / 4 for _ in basis]
            z = [sum(c * float(v[k]) for c, v in zip(cs, basis)) for k in range(2)]
            for t in (1, 2, 3, 4, 5):
                assert residual(f, frame, [0.2 * x for x in z], t / 5) < 1e-9


@pytest.mark.parametrize("poly,w", CASES)
def test_completeness_grid(poly, w):
    f = LaurentPoly.parse(poly, 2)
    frame = WeightFrame.standard(w)
    spaces = wetc(f, frame)
    ts = [k / 10 for k in range(1, 11)]
    for i, j in product(range(-10, 11), repeat=2):
        z = [i / 10, j / 10]
        if _numeric_in_cone(f, frame, z, ts, 1e-7):
            exact = [Fraction(i, 10), Fraction(j, 10)]
            assert any(s.contains_vector(exact) for s in spaces), (poly, z)

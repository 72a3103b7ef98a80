from fractions import Fraction
from itertools import permutations

from hypothesis import given, settings, strategies as st

from jumploci.multipoly import MultiPoly, all_minors, determinant

NV = 3

coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 2)] * NV)
polys = st.dictionaries(exps, coef, max_size=4).map(lambda d: MultiPoly(NV, d))
points = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=3)] * NV)


@settings(max_examples=60, deadline=None)
@given(polys, polys, points)
def test_ring_operations_commute_with_evaluation(p, q, z):
    assert (p + q)(z) == p(z) + q(z)
    assert (p * q)(z) == p(z) * q(z)
    assert (p - q)(z) == p(z) - q(z)


@settings(max_examples=40, deadline=None)
@given(polys, polys, points)
def test_compose_then_evaluate(p, q, z):
    images = [q, MultiPoly.var(NV, 0), MultiPoly.const(NV, 2)]
    assert p.compose(images)(z) == p([q(z), z[0], Fraction(2)])


def _leibniz_det(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term = term * m[i][perm[i]]
        total = total + term
    return total


@settings(max_examples=25, deadline=None)
@given(st.lists(polys, min_size=9, max_size=9), points)
def test_determinant_against_permutation_expansion(entries, z):
    m = [entries[0:3], entries[3:6], entries[6:9]]
    assert determinant(m, NV) == _leibniz_det(m)
    minors = all_minors(m, 2, NV)
    assert len(minors) == 9
    for (rows, cols), val in minors.items():
        sub = [[m[r][c] for c in cols] for r in rows]
        assert val == _leibniz_det(sub)


def test_basic_api():
    x, y = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    p = 2 * x * x - 4 * y + 6
    assert p.degree() == 2
    assert p.monic() == x * x - 2 * y + 3
    assert p.to_str(["a", "b"]) == "2*a^2 - 4*b + 6"
    assert MultiPoly.from_json(2, p.to_json()) == p
    assert (x - x) == 0 and not (x - x)
    assert p.variables() == [0, 1]

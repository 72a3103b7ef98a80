"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest; in
pytest the lines are also collected into the terminal summary.
"""

import random
import sys
import time
from fractions import Fraction


from helpers import rand_frac, rand_int_frac, random_connection, random_flat, random_nonflat
from jumploci.aomoto import (FlatConnection, aomoto_betti, aomoto_matrices, jump_locus_generators,
                             mc_residual, universal_aomoto_matrices)
from jumploci.cdga import cohomology_dims
from jumploci.errors import NotFlatError
from jumploci.group_side import (GroupRep, exp_compare, free_presentation, pencil_presentation, twisted_betti_low,
                                 z2_presentation)
from jumploci.lie import connection_of_hom, hom_of_connection, lie_cochain_cdga
from jumploci.models import (abelian_lie, braid_arrangement, exterior_ring, heis3, heis3_standard_rep,
                             os_algebra, pencil3, rank_one_rep, solv2, solv2_standard_rep, torus2)
from jumploci.resonance import (LinearSubspaceQ, _act, fn_degeneration, line_scan, linear_components_rank_one,
                                resonance_membership)
from jumploci.wetc import LaurentPoly, WeightFrame, residual, wetc

RESULTS = []
R1 = rank_one_rep()


def record(number, budget):
    """Decorator: time the criterion, print one line, and re-raise failures."""
    def wrap(fn):
        def run():
            start = time.perf_counter()
            try:
                detail = fn()
                elapsed = time.perf_counter() - start
                ok = elapsed < budget
                if not ok:
                    detail = f"{detail}; over time budget {budget}s"
            except Exception as exc:  # reported, then re-raised below
                elapsed = time.perf_counter() - start
                ok, detail = False, f"{type(exc).__name__}: {exc}"
                line = f"FAIL criterion {number} ({elapsed:.2f}s): {detail}"
                RESULTS.append(line)
                print(line)
                raise
            line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({elapsed:.2f}s): {detail}"
            RESULTS.append(line)
            print(line)
            assert ok, line
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def c_solv2():
    return lie_cochain_cdga(solv2())


def c_heis3():
    return lie_cochain_cdga(heis3())


@record(1, 1)
def test_criterion_01_solv2_resonance_on_line():
    """R^1_1 of C(SOLV2) along s.y* is exactly {0, 1}."""
    a = c_solv2()
    ins = [0, 1]
    outs = [-2, -1, Fraction(1, 2), 2, 3, 7]
    for s in ins:
        assert resonance_membership(a, R1, FlatConnection.rank_one([0, s]), 1, 1), s
    for s in outs:
        assert not resonance_membership(a, R1, FlatConnection.rank_one([0, s]), 1, 1), s
    return f"member at s in {ins}, not at {[str(s) for s in outs]}"


@record(2, 10)
def test_criterion_02_weight_action_invariance():
    """Betti numbers are constant along the weight action when weights are positive."""
    rng = random.Random(2)
    ts = [2, 3, -1, Fraction(1, 2)]
    checks = 0
    for a in (torus2(), pencil3()):
        for k in range(50):
            # alternate rank-one and HEIS3-coefficient connections
            e, rep = (abelian_lie(1), R1) if k % 2 == 0 else (heis3(), heis3_standard_rep())
            w = random_flat(a, e, rng)
            base = aomoto_betti(a, rep, w, 2)
            for t in ts:
                assert aomoto_betti(a, rep, _act(a, w, Fraction(t), True), 2) == base
                checks += 1
    scan = [p.betti for p in line_scan(c_solv2(), R1, FlatConnection.rank_one([0, 1]), [0, 1, 2, 3], 1)]
    assert len(set(scan)) > 1
    return f"{checks} scaled comparisons equal; C(SOLV2) scan {scan} is not constant"


FIXTURES = [
    ("TORUS2", torus2, abelian_lie(1), R1),
    ("PENCIL3", pencil3, abelian_lie(1), R1),
    ("PENCIL3/HEIS3", pencil3, heis3(), heis3_standard_rep()),
    ("TORUS2/HEIS3", torus2, heis3(), heis3_standard_rep()),
    ("C(SOLV2)", c_solv2, abelian_lie(1), R1),
    ("C(SOLV2)/SOLV2", c_solv2, solv2(), solv2_standard_rep()),
    ("C(HEIS3)", c_heis3, abelian_lie(1), R1),
    ("C(HEIS3)/HEIS3", c_heis3, heis3(), heis3_standard_rep()),
]


@record(3, 30)
def test_criterion_03_covariant_square_zero():
    """D^2 = 0 on flat connections; non-flat connections break it."""
    rng = random.Random(3)
    flat = 0
    for k in range(200):
        _, make, e, rep = FIXTURES[k % len(FIXTURES)]
        a = make()
        w = random_flat(a, e, rng)
        assert aomoto_matrices(a, rep, w).square_defects() == []
        flat += 1
    nonflat_fixtures = [f for f in FIXTURES if random_nonflat(f[1](), f[2], random.Random(0)) is not None]
    broken = 0
    for k in range(50):
        _, make, e, rep = nonflat_fixtures[k % len(nonflat_fixtures)]
        a = make()
        w = random_nonflat(a, e, rng)
        assert any(v for row in mc_residual(a, e, w) for v in row)
        assert aomoto_matrices(a, rep, w).square_defects() != []
        broken += 1
    names = sorted({f[0] for f in nonflat_fixtures})
    return f"{flat} flat points square to zero; {broken} non-flat points on {names} all break D^2 = 0"


@record(4, 10)
def test_criterion_04_connection_hom_bijection():
    """Flat connections and algebra maps C(E) -> A round-trip."""
    rng = random.Random(4)
    algebras = [torus2, pencil3, c_solv2, c_heis3]
    lies = [heis3(), solv2(), abelian_lie(2), abelian_lie(1)]
    for k in range(100):
        a = algebras[k % 4]()
        e = lies[(k // 4) % 4]
        w = random_flat(a, e, rng)
        f = hom_of_connection(w, a, e)
        back = connection_of_hom(f, a, e)
        assert back.flat and back.omega == w
        assert hom_of_connection(back.omega, a, e) == f
    return "100 triples round-trip exactly"


@record(5, 60)
def test_criterion_05_pencil_resonance_components():
    """The only component of R^1_1(PENCIL3) is z1 + z2 + z3 = 0."""
    from itertools import product
    a = pencil3()
    rep = linear_components_rank_one(a, 1, 1)
    expected = LinearSubspaceQ.from_equations(3, [[1, 1, 1]])
    assert rep.components == [expected], rep.components
    assert rep.weighted_homogeneous == [True] and rep.complete
    disagreements = 0
    for z in product(range(-3, 4), repeat=3):
        member = aomoto_betti(a, R1, FlatConnection.rank_one(z), 1)[1] >= 1
        disagreements += member != any(c.contains_vector(z) for c in rep.components)
    assert disagreements == 0
    return "certified {z1+z2+z3=0}, weighted-homogeneous; 343 grid points, 0 disagreements"


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


@record(6, 10)
def test_criterion_06_braid_a3():
    a = os_algebra(braid_arrangement(4))
    got = cohomology_dims(a, 3)
    want = _poly_mul(_poly_mul([1, 1], [1, 2]), [1, 3])
    assert got == want == [1, 6, 11, 6]
    return f"Betti numbers {got} match (1+t)(1+2t)(1+3t)"


@record(7, 5)
def test_criterion_07_wetc():
    S = LinearSubspaceQ
    cases = [
        ("t1*t2-1", (1, 1), [S.from_equations(2, [[1, 1]])]),
        ("t1+t2-2", (1, 1), [S.span(2, [])]),
        ("t1-t2", (1, 1), [S.from_equations(2, [[1, -1]])]),
        ("t1-t2", (1, 2), [S.span(2, [])]),
    ]
    rng = random.Random(7)
    ts = [0.25, 0.5, 1.0, 2.0]
    worst_on, least_off = 0.0, float("inf")
    for poly, w, want in cases:
        f = LaurentPoly.parse(poly, 2)
        frame = WeightFrame.standard(w)
        got = wetc(f, frame)
        assert got == want, (poly, w, got)
        for s in got:
            basis = s.basis()
            for _ in range(20):
                cs = [rng.uniform(-1, 1) for _ in basis]
                z = [sum(c * float(v[k]) for c, v in zip(cs, basis)) for k in range(2)]
                for t in ts:
                    worst_on = max(worst_on, residual(f, frame, z, t))
        off = 0
        while off < 100:
            z = [rng.uniform(-1, 1), rng.uniform(-1, 1)]
            exact = [Fraction(x).limit_denominator(10 ** 6) for x in z]
            if any(s.contains_vector(exact) for s in got):
                continue
            least_off = min(least_off, max(residual(f, frame, z, t) for t in ts))
            off += 1
    assert worst_on < 1e-9 and least_off > 1e-3
    return f"4 cases exact; max |f| on cones {worst_on:.1e}, min over 400 off-cone points {least_off:.2e}"


@record(8, 30)
def test_criterion_08_fn_degeneration():
    runs = 0
    for nu in ([1, 0], [1, 1]):
        assert fn_degeneration(torus2(), nu, 2).degenerate
        runs += 1
    rng = random.Random(8)
    for _ in range(5):
        assert fn_degeneration(pencil3(), [rand_frac(rng) for _ in range(3)], 2).degenerate
        runs += 1
    for n in range(1, 5):
        for _ in range(20):
            assert fn_degeneration(exterior_ring(n), [rand_frac(rng) for _ in range(n)], n).degenerate
            runs += 1
    return f"{runs} instances degenerate at E2"


@record(9, 60)
def test_criterion_09_exp_compare_torus():
    rng = random.Random(9)
    omegas = [[rand_frac(rng), rand_frac(rng)] for _ in range(17)] + [[0, 0], [1, 0], [0, Fraction(1, 2)]]
    rep = exp_compare(torus2(), z2_presentation(), None, omegas, 1)
    n = len(rep.samples)
    germs = [s for s in rep.samples if s.germ]
    assert n >= 100
    assert rep.violations == 0
    assert all(s.germ_equal for s in germs)
    assert rep.indeterminate <= 0.05 * n
    return (f"{n} samples, {rep.violations} violations, {len(germs)} germ samples all equal, "
            f"{rep.indeterminate} indeterminate")


@record(10, 5)
def test_criterion_10_basepoint_bounds():
    checked = 0
    for name, make, e, rep in FIXTURES:
        a = make()
        b = cohomology_dims(a, min(2, a.top))
        zero = FlatConnection.zero(a.dim(1), e.dim)
        for i in range(min(2, a.top) + 1):
            bound = rep.dimV * b[i]
            for r in range(bound + 3):
                assert resonance_membership(a, rep, zero, i, r) == (r <= bound), (name, i, r)
                checked += 1
    for p in (z2_presentation(), pencil_presentation(), free_presentation(2)):
        for dim in (1, 2):
            triv = GroupRep.trivial(p.num_generators, dim)
            b = twisted_betti_low(p, GroupRep.trivial(p.num_generators))
            betti = twisted_betti_low(p, triv)
            for i in range(2):
                bound = dim * b[i]
                for r in range(bound + 3):
                    assert (betti[i] >= r) == (r <= bound)
                    checked += 1
    return f"{checked} (fixture, i, r) checks on both sides"


@record(11, 120)
def test_criterion_11_universal_specialization():
    rng = random.Random(11)
    specialised = 0
    for name, make, e, rep in FIXTURES:
        a = make()
        mats = universal_aomoto_matrices(a, rep)
        for _ in range(20):
            w = random_flat(a, e, rng, rand_int_frac if specialised % 2 else rand_frac)
            cx = aomoto_matrices(a, rep, w)
            assert [m.specialize(w.as_vector()) for m in mats] == list(cx.matrices)
            specialised += 1
    compared = members = 0
    for name, make, e, rep in FIXTURES:
        a = make()
        for i in range(min(2, a.top) + 1):
            for r in range(4):
                desc = jump_locus_generators(a, rep, i, r)
                for k in range(200):
                    if k % 4 == 3:
                        w = random_connection(a, e, rng, rand_int_frac)
                    elif k % 4 == 2:
                        w = FlatConnection.zero(a.dim(1), e.dim)
                    else:
                        w = random_flat(a, e, rng, rand_int_frac)
                    try:
                        truth = resonance_membership(a, rep, w, i, r)
                    except NotFlatError:
                        truth = False
                    assert desc.contains(w.as_vector()) == truth, (name, i, r, w)
                    members += truth
                    compared += 1
    return f"{specialised} specialisations identical; {compared} membership comparisons agree ({members} members)"


if __name__ == "__main__":
    failed = 0
    for key, fn in sorted(globals().items()):
        if key.startswith("test_criterion_"):
            try:
                fn()
            except Exception:
                failed += 1
    sys.exit(1 if failed else 0)

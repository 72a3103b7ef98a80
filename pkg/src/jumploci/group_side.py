"""Twisted cohomology of presentation 2-complexes in degrees 0 and 1.

Words are tuples of signed 1-based generator indices (``-2`` is the inverse
of generator 2).  Generator indices in the Python API are 0-based.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PreconditionError
from .exact_linalg import SparseMatrix, coerce, rank_exact, solve, variant_of
from .exact_linalg.scalars import Q

Word = Tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    num_generators: int
    relators: Tuple[Word, ...] = ()
    labels: Tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in w) for w in self.relators)
        object.__setattr__(self, "relators", rels)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{k + 1}" for k in range(self.num_generators)))
        if len(self.labels) != self.num_generators:
            raise PreconditionError("one label per generator required")
        for n, w in enumerate(rels):
            for pos, x in enumerate(w):
                if x == 0 or abs(x) > self.num_generators:
                    raise PreconditionError(f"relator {n + 1}: letter {x} out of range")
                if pos and w[pos - 1] == -x:
                    raise PreconditionError(f"relator {n + 1} is not freely reduced at position {pos}")


def free_reduce(w: Sequence[int]) -> Word:
    out: List[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """u v u^-1 v^-1, freely reduced."""
    inv = lambda w: [-x for x in reversed(w)]  # noqa: E731
    return free_reduce(list(u) + list(v) + inv(u) + inv(v))


def z2_presentation() -> Presentation:
    return Presentation(2, (commutator([1], [2]),), ("a", "b"), name="Z2PRES")


def pencil_presentation() -> Presentation:
    """<x1, x2, x3 | [x1, x2 x3], [x2, x3 x1]>."""
    return Presentation(3, (commutator([1], [2, 3]), commutator([2], [3, 1])), ("x1", "x2", "x3"), name="PENCIL3PRES")


def free_presentation(n: int) -> Presentation:
    return Presentation(n, (), name=f"F{n}")


@dataclass(frozen=True, eq=False)
class GroupRep:
    dimV: int
    images: Tuple[SparseMatrix, ...]
    inverses: Tuple[SparseMatrix, ...] = field(default=(), repr=False)

    def __post_init__(self):
        invs = []
        for k, m in enumerate(self.images):
            if m.shape != (self.dimV, self.dimV):
                raise PreconditionError(f"image of generator {k + 1} has the wrong shape")
            if rank_exact(m) < self.dimV:
                raise PreconditionError(f"image of generator {k + 1} is not invertible")
            invs.append(_inverse(m))
        object.__setattr__(self, "inverses", tuple(invs))

    @classmethod
    def rank_one(cls, values: Sequence) -> "GroupRep":
        tags = {variant_of(v) for v in values} - {None, Q}
        if len(tags) > 1:
            raise PreconditionError(f"character values mix scalar fields {sorted(tags)}")
        var = tags.pop() if tags else Q
        return cls(1, tuple(SparseMatrix.from_dense([[coerce(v, var)]], 1, var) for v in values))

    @classmethod
    def trivial(cls, ngens: int, dimV: int = 1) -> "GroupRep":
        return cls(dimV, tuple(SparseMatrix.identity(dimV) for _ in range(ngens)))

    @property
    def variant(self) -> str:
        return self.images[0].variant if self.images else Q

    def letter(self, x: int) -> SparseMatrix:
        return self.images[x - 1] if x > 0 else self.inverses[-x - 1]

    def word(self, w: Sequence[int]) -> SparseMatrix:
        out = SparseMatrix.identity(self.dimV, self.variant)
        for x in w:
            out = out @ self.letter(x)
        return out


def _inverse(m: SparseMatrix) -> SparseMatrix:
    n = m.nrows
    cols = [solve(m, [coerce(int(i == k), m.variant) for i in range(n)]) for k in range(n)]
    return SparseMatrix.from_dense([[cols[k][i] for k in range(n)] for i in range(n)], n, m.variant)


def _check(p: Presentation, rho: GroupRep) -> None:
    if len(rho.images) != p.num_generators:
        raise PreconditionError("representation needs one image per generator")
    ident = SparseMatrix.identity(rho.dimV, rho.variant)
    for n, w in enumerate(p.relators):
        if rho.word(w) != ident:
            raise PreconditionError(f"relator {n + 1} does not map to the identity")


def fox_derivative(w: Sequence[int], j: int, rho: GroupRep) -> SparseMatrix:
    """d w / d x_j under rho (j 0-based), via d(uv) = du + rho(u) dv."""
    v = rho.variant
    out = SparseMatrix.zeros(rho.dimV, rho.dimV, v)
    prefix = SparseMatrix.identity(rho.dimV, v)
    for x in w:
        if abs(x) - 1 == j:
            term = prefix if x > 0 else -(prefix @ rho.letter(x))
            out = out + term
        prefix = prefix @ rho.letter(x)
    return out


def presentation_cochain_matrices(p: Presentation, rho: GroupRep) -> Tuple[SparseMatrix, SparseMatrix]:
    """delta0: V -> V^g and delta1: V^g -> V^m in block form."""
    _check(p, rho)
    n, g = rho.dimV, p.num_generators
    ident = SparseMatrix.identity(n, rho.variant)
    d0 = SparseMatrix.vstack([rho.images[k] - ident for k in range(g)]) if g else SparseMatrix.zeros(0, n, rho.variant)
    if p.relators:
        rows = [SparseMatrix.hstack([fox_derivative(r, k, rho) for k in range(g)]) for r in p.relators]
        d1 = SparseMatrix.vstack(rows)
    else:
        d1 = SparseMatrix.zeros(0, g * n, rho.variant)
    return d0, d1


def twisted_betti_low(p: Presentation, rho: GroupRep) -> Tuple[int, int]:
    d0, d1 = presentation_cochain_matrices(p, rho)
    r0, r1 = rank_exact(d0), rank_exact(d1)
    return rho.dimV - r0, p.num_generators * rho.dimV - r1 - r0


def cv_membership(p: Presentation, rho: GroupRep, i: int, r: int) -> bool:
    if i > 1 or i < 0:
        raise PreconditionError("a presentation complex only determines twisted cohomology in degrees 0 and 1")
    return twisted_betti_low(p, rho)[i] >= r


# --- numeric comparison with the exponential map ------------------------------------

RANK_THRESHOLD = 1e-9
GUARD_LOW = 1e-12
GUARD_HIGH = 1e-6


def _numeric_fox_rank_one(w: Sequence[int], j: int, vals: Sequence[complex]) -> complex:
    out, prefix = 0j, 1 + 0j
    for x in w:
        val = vals[abs(x) - 1] if x > 0 else 1 / vals[abs(x) - 1]
        if abs(x) - 1 == j:
            out += prefix if x > 0 else -prefix * val
        prefix *= val
    return out


def numeric_rank(rows: List[List[complex]], ncols: int, threshold: float = RANK_THRESHOLD,
                 guard: Tuple[float, float] = (GUARD_LOW, GUARD_HIGH)) -> Tuple[int, bool]:
    """(rank, ambiguous) from singular values scaled by max(1, sigma_max)."""
    import numpy as np

    if not rows or not ncols:
        return 0, False
    s = np.linalg.svd(np.array(rows, dtype=complex), compute_uv=False)
    scale = max(1.0, float(s.max()) if s.size else 0.0)
    rel = s / scale
    rank = int((rel > threshold).sum())
    ambiguous = bool(((rel > guard[0]) & (rel < guard[1])).any())
    return rank, ambiguous


def numeric_twisted_betti_rank_one(p: Presentation, chars: Sequence[complex], **tol) -> Tuple[Tuple[int, int], bool]:
    g = p.num_generators
    d0 = [[c - 1] for c in chars]
    d1 = [[_numeric_fox_rank_one(r, k, chars) for k in range(g)] for r in p.relators]
    r0, a0 = numeric_rank(d0, 1, **tol)
    r1, a1 = numeric_rank(d1, g, **tol)
    return (1 - r0, g - r1 - r0), a0 or a1


@dataclass
class CompareSample:
    omega: Tuple[Fraction, ...]
    t: Fraction
    beta: int
    b: Optional[int]
    verdict: str  # "pass", "fail", "indeterminate"
    germ: bool = False
    germ_equal: Optional[bool] = None

    def to_json(self) -> dict:
        return {"omega": [str(x) for x in self.omega], "t": str(self.t), "beta": self.beta, "b": self.b,
                "verdict": self.verdict, "germ": self.germ, "germ_equal": self.germ_equal}


@dataclass
class CompareReport:
    degree: int
    samples: List[CompareSample]
    tolerances: Dict[str, float]
    claim: str = ""

    @property
    def violations(self) -> int:
        return sum(1 for s in self.samples if s.verdict == "fail")

    @property
    def indeterminate(self) -> int:
        return sum(1 for s in self.samples if s.verdict == "indeterminate")

    @property
    def germ_failures(self) -> int:
        return sum(1 for s in self.samples if s.germ and s.germ_equal is False)

    def to_json(self) -> dict:
        return {"degree": self.degree, "claim": self.claim, "tolerances": self.tolerances,
                "violations": self.violations, "indeterminate": self.indeterminate,
                "germ_failures": self.germ_failures, "samples": [s.to_json() for s in self.samples]}


def exp_compare(a, p: Presentation, dictionary: Optional[Sequence[Sequence]], omegas: Sequence[Sequence],
                i: int, ts: Sequence = (Fraction(1, 2), Fraction(1), Fraction(2)),
                germ_ts: Sequence = (Fraction(1, 100), Fraction(1, 50)),
                threshold: float = RANK_THRESHOLD, guard: Tuple[float, float] = (GUARD_LOW, GUARD_HIGH),
                claim: str = "") -> CompareReport:
    """beta_i(A, t omega) against b_i(p, exp(t omega)), rank-one abelian case.

    The character sends generator j to exp(sum_k dictionary[j][k] omega_k);
    the default dictionary is the identity.  Germ samples additionally record
    whether the two numbers agree.
    """
    from .aomoto import FlatConnection, aomoto_betti
    from .models import rank_one_rep

    if i > 1 or i < 0:
        raise PreconditionError("the group side is limited to degrees 0 and 1")
    g = p.num_generators
    n = a.dim(1)
    dic = dictionary or [[int(j == k) for k in range(n)] for j in range(g)]
    if len(dic) != g or any(len(row) != n for row in dic):
        raise PreconditionError("dictionary must be (generators) x (dim A^1)")
    rep = rank_one_rep()
    out = []
    for om in omegas:
        om = tuple(Fraction(x) for x in om)
        for t, germ in [(Fraction(x), False) for x in ts] + [(Fraction(x), True) for x in germ_ts]:
            w = FlatConnection.rank_one([t * x for x in om])
            beta = aomoto_betti(a, rep, w, i)[i]
            chars = [cmath.exp(float(sum((Fraction(c) * t * x for c, x in zip(row, om)), Fraction(0))))
                     for row in dic]
            bs, amb = numeric_twisted_betti_rank_one(p, chars, threshold=threshold, guard=guard)
            b = bs[i]
            if amb:
                verdict = "indeterminate"
            else:
                verdict = "pass" if beta <= b else "fail"
            out.append(CompareSample(om, t, beta, b, verdict, germ, (beta == b) if germ and not amb else None))
    tol = {"rank_threshold": threshold, "guard_low": guard[0], "guard_high": guard[1]}
    return CompareReport(i, out, tol, claim)

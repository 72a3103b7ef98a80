"""Flat connections, Aomoto complexes and determinantal jump-locus generators.

Tensor bases are A-major, V-minor: the basis element a_k (x) v_m of A^i (x) V
has index k * dim(V) + m.  Coordinates of A^1 (x) b are ordered the same way
(A^1-major), and the universal-connection variables are named
``z_{a-label}_{lie-label}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .cdga import Cdga
from .errors import IncompleteInputError, NotFlatError, PreconditionError
from .exact_linalg import SparseMatrix, rank_exact
from .exact_linalg.scalars import Q, coerce, variant_of
from .lie import LieAlgebra, LieRep
from .multipoly import MultiPoly, all_minors


@dataclass(frozen=True)
class FlatConnection:
    """omega = sum_{k, g} coeffs[k][g] a_k (x) e_g, a point of A^1 (x) b.

    Flatness is not enforced here; use :func:`is_flat`.
    """

    coeffs: Tuple[Tuple, ...]
    dim_a1: int = 0
    dim_lie: int = 0

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.coeffs)
        object.__setattr__(self, "coeffs", rows)
        if not self.dim_a1:
            object.__setattr__(self, "dim_a1", len(rows))
        if not self.dim_lie:
            object.__setattr__(self, "dim_lie", len(rows[0]) if rows else 0)
        if len(rows) != self.dim_a1 or any(len(r) != self.dim_lie for r in rows):
            raise PreconditionError("connection coefficient matrix has the wrong shape")

    @classmethod
    def zero(cls, dim_a1: int, dim_lie: int) -> "FlatConnection":
        return cls(tuple((Fraction(0),) * dim_lie for _ in range(dim_a1)), dim_a1, dim_lie)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], dim_a1: int) -> "FlatConnection":
        return cls(tuple(tuple(c[k] for c in cols) for k in range(dim_a1)), dim_a1, len(cols))

    @classmethod
    def rank_one(cls, vec: Sequence) -> "FlatConnection":
        """omega = vec (x) e for a one-dimensional b."""
        return cls(tuple((v if not isinstance(v, int) else Fraction(v),) for v in vec), len(vec), 1)

    @classmethod
    def from_flat_vector(cls, vec: Sequence, dim_a1: int, dim_lie: int) -> "FlatConnection":
        return cls(tuple(tuple(vec[k * dim_lie + g] for g in range(dim_lie)) for k in range(dim_a1)),
                   dim_a1, dim_lie)

    def column(self, g: int) -> List:
        return [r[g] for r in self.coeffs]

    def as_vector(self) -> List:
        return [v for r in self.coeffs for v in r]

    def scaled(self, t) -> "FlatConnection":
        return FlatConnection(tuple(tuple(v * t for v in r) for r in self.coeffs), self.dim_a1, self.dim_lie)

    def is_zero(self) -> bool:
        return not any(v for r in self.coeffs for v in r)


@lru_cache(maxsize=256)
def _left_mult_blocks(a: Cdga, deg: int) -> Tuple[SparseMatrix, ...]:
    """L(a_k): A^deg -> A^(deg+1) for each basis element a_k of A^1."""
    out = []
    for k in range(a.dim(1)):
        e = [0] * a.dim(1)
        e[k] = 1
        out.append(a.left_mult_matrix(1, e, deg))
    return tuple(out)


def kron(x: SparseMatrix, y: SparseMatrix) -> SparseMatrix:
    p, q = y.shape
    ents = [(i * p + r, j * q + s, u * v) for i, j, u in x.entries for r, s, v in y.entries]
    variant = x.variant if not x.is_zero() else y.variant
    return SparseMatrix(x.nrows * p, x.ncols * q, ents, variant)


def _check_shapes(a: Cdga, e: LieAlgebra, omega: FlatConnection) -> None:
    if omega.dim_a1 != a.dim(1) or omega.dim_lie != e.dim:
        raise PreconditionError(
            f"connection shape {(omega.dim_a1, omega.dim_lie)} does not match (dim A^1, dim b) = "
            f"{(a.dim(1), e.dim)}")


def mc_residual(a: Cdga, e: LieAlgebra, omega: FlatConnection) -> List[List]:
    """d omega + 1/2 [omega, omega] as a (dim A^2) x (dim b) coefficient matrix."""
    _check_shapes(a, e, omega)
    if not a.known(2):
        raise IncompleteInputError("the Maurer-Cartan equation needs degree 2")
    n2 = a.dim(2)
    out = [[0] * e.dim for _ in range(n2)]
    if n2 == 0:
        return out
    d1 = a.diff[1] if a.top >= 1 else SparseMatrix.zeros(0, 0)
    for g in range(e.dim):
        col = omega.column(g)
        for r, v in enumerate(d1.apply(col) if d1.ncols else []):
            out[r][g] = out[r][g] + v
    for (p, q), combo in e.brackets.items():
        prod = _bilinear(a, omega.column(p), omega.column(q))
        for g, c in combo.items():
            for r in range(n2):
                if prod[r]:
                    out[r][g] = out[r][g] + c * prod[r]
    return out


def _bilinear(a: Cdga, x: Sequence, y: Sequence) -> List:
    """x * y in A^2 for x, y in A^1 with arbitrary scalar coefficients."""
    out = [0] * a.dim(2)
    blocks = _left_mult_blocks(a, 1)
    for k, xk in enumerate(x):
        if xk:
            for r, v in enumerate(blocks[k].apply(y)):
                if v:
                    out[r] = out[r] + xk * v
    return out


def is_flat(a: Cdga, e: LieAlgebra, omega: FlatConnection) -> bool:
    return not any(v for row in mc_residual(a, e, omega) for v in row)


@dataclass(frozen=True)
class AomotoComplex:
    """D_i: A^i (x) V -> A^(i+1) (x) V for i = 0..len(matrices)-1."""

    matrices: Tuple[SparseMatrix, ...]
    dims: Tuple[int, ...]
    dimV: int

    def D(self, i: int) -> SparseMatrix:
        if i < 0:
            return SparseMatrix.zeros(self.dims[0], 0)
        return self.matrices[i]

    def square_defects(self) -> List[int]:
        """Degrees i with D_(i+1) D_i != 0."""
        return [i for i in range(len(self.matrices) - 1)
                if not (self.matrices[i + 1] @ self.matrices[i]).is_zero()]


def _degree_range(a: Cdga, q: int | None) -> int:
    """Highest i for which D_i is built."""
    if q is None:
        return a.top if a.complete else a.top - 1
    if not a.known(q + 1):
        raise IncompleteInputError(f"D_{q} needs degree {q + 1} of the CDGA")
    return q


def _variant_of_connection(omega: FlatConnection) -> str:
    for v in omega.as_vector():
        t = variant_of(v)
        if t is not None:
            return t
    return Q


def aomoto_matrices(a: Cdga, r: LieRep, omega: FlatConnection, q: int | None = None) -> AomotoComplex:
    """D_i(x (x) v) = dx (x) v + sum_g (omega_g x) (x) theta(e_g) v."""
    _check_shapes(a, r.lie, omega)
    top = _degree_range(a, q)
    variant = _variant_of_connection(omega)
    idV = SparseMatrix.identity(r.dimV)
    mats = []
    for i in range(top + 1):
        d = a.d_matrix(i) if i <= a.top else SparseMatrix.zeros(a.dim(i + 1), a.dim(i))
        D = kron(d, idV).map(lambda v: coerce(v, variant), variant)
        if i + 1 <= a.top:
            blocks = _left_mult_blocks(a, i)
            for k in range(a.dim(1)):
                for g in range(r.lie.dim):
                    c = omega.coeffs[k][g]
                    if c and not blocks[k].is_zero() and not r.matrices[g].is_zero():
                        D = D + kron(blocks[k], r.matrices[g]).map(lambda v, c=c: coerce(v * c, variant), variant)
        mats.append(D)
    dims = tuple(r.dimV * a.dim(i) for i in range(top + 2))
    return AomotoComplex(tuple(mats), dims, r.dimV)


def betti_from_complex(cx: AomotoComplex, q: int) -> List[int]:
    ranks = [rank_exact(cx.D(i)) for i in range(q + 1)]
    return [cx.dims[i] - ranks[i] - (ranks[i - 1] if i else 0) for i in range(q + 1)]


def aomoto_betti(a: Cdga, r: LieRep, omega: FlatConnection, q: int) -> List[int]:
    """Aomoto-Betti numbers beta_0..beta_q of a flat connection."""
    if not is_flat(a, r.lie, omega):
        raise NotFlatError("Aomoto-Betti numbers need a flat connection")
    cx = aomoto_matrices(a, r, omega, q)
    return betti_from_complex(cx, q)


# --- universal objects --------------------------------------------------------


def variable_names(a: Cdga, e: LieAlgebra) -> List[str]:
    a1 = [a.label(i) for i in a.basis.indices(1)]
    return [f"z_{x}_{y}" for x in a1 for y in e.labels]


def generic_connection(a: Cdga, e: LieAlgebra) -> List[List[MultiPoly]]:
    """coeffs[k][g] = z_{k,g} as polynomials in dim A^1 * dim b variables."""
    n = a.dim(1) * e.dim
    return [[MultiPoly.var(n, k * e.dim + g) for g in range(e.dim)] for k in range(a.dim(1))]


def mc_equations(a: Cdga, e: LieAlgebra) -> List[MultiPoly]:
    """Nonzero coordinates of d omega + 1/2[omega, omega] at the generic connection."""
    return [p for _, _, p in mc_coordinates(a, e) if p]


def mc_coordinates(a: Cdga, e: LieAlgebra) -> List[Tuple[str, str, MultiPoly]]:
    if not a.known(2):
        raise IncompleteInputError("the Maurer-Cartan equation needs degree 2")
    n = a.dim(1) * e.dim
    z = generic_connection(a, e)
    n2 = a.dim(2)
    out = [[MultiPoly.zero(n) for _ in range(e.dim)] for _ in range(n2)]
    if n2:
        d1 = a.diff[1]
        for (row, k, v) in d1.entries:
            for g in range(e.dim):
                out[row][g] = out[row][g] + z[k][g] * v
        blocks = _left_mult_blocks(a, 1)
        for (p, q), combo in e.brackets.items():
            for k in range(a.dim(1)):
                for row, l, v in blocks[k].entries:
                    term = z[k][p] * z[l][q] * v
                    for g, c in combo.items():
                        out[row][g] = out[row][g] + term * c
    a2 = [a.label(i) for i in a.basis.indices(2)]
    return [(a2[row], e.labels[g], out[row][g]) for row in range(n2) for g in range(e.dim)]


@dataclass(frozen=True)
class PolyMatrix:
    nrows: int
    ncols: int
    nvars: int
    entries: Dict[Tuple[int, int], MultiPoly] = field(default_factory=dict)

    def get(self, r: int, c: int) -> MultiPoly:
        return self.entries.get((r, c), MultiPoly.zero(self.nvars))

    def dense(self) -> List[List[MultiPoly]]:
        return [[self.get(r, c) for c in range(self.ncols)] for r in range(self.nrows)]

    def specialize(self, point: Sequence) -> SparseMatrix:
        ents = [(r, c, p.evaluate(point)) for (r, c), p in self.entries.items()]
        variant = None
        for v in point:
            variant = variant or variant_of(v)
        return SparseMatrix(self.nrows, self.ncols, ents, variant or Q)

    def substitute(self, images: Sequence[MultiPoly]) -> "PolyMatrix":
        m = images[0].nvars if images else self.nvars
        ents = {}
        for key, p in self.entries.items():
            s = p.compose(images)
            if s:
                ents[key] = s
        return PolyMatrix(self.nrows, self.ncols, m, ents)


def universal_aomoto_matrices(a: Cdga, r: LieRep, q: int | None = None) -> List[PolyMatrix]:
    """D_i of the universal complex; entries are affine-linear in the z variables."""
    e = r.lie
    n = a.dim(1) * e.dim
    top = _degree_range(a, q)
    idV = SparseMatrix.identity(r.dimV)
    mats = []
    for i in range(top + 1):
        ents: Dict[Tuple[int, int], MultiPoly] = {}
        d = a.d_matrix(i) if i <= a.top else SparseMatrix.zeros(a.dim(i + 1), a.dim(i))
        for row, col, v in kron(d, idV).entries:
            ents[(row, col)] = MultiPoly.const(n, v)
        if i + 1 <= a.top:
            blocks = _left_mult_blocks(a, i)
            for k in range(a.dim(1)):
                for g in range(e.dim):
                    var = MultiPoly.var(n, k * e.dim + g)
                    for row, col, v in kron(blocks[k], r.matrices[g]).entries:
                        ents[(row, col)] = ents.get((row, col), MultiPoly.zero(n)) + var * v
        ents = {key: p for key, p in ents.items() if p}
        mats.append(PolyMatrix(r.dimV * a.dim(i + 1), r.dimV * a.dim(i), n, ents))
    return mats


# --- jump loci ------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    split: Tuple[int, int]  # (a, b): rank D_(i-1) <= a and rank D_i <= b
    prev_generators: Tuple[MultiPoly, ...]
    cur_generators: Tuple[MultiPoly, ...]

    @property
    def generators(self) -> Tuple[MultiPoly, ...]:
        return self.prev_generators + self.cur_generators


@dataclass(frozen=True)
class JumpLocusDescription:
    """R^i_r as {mc = 0} intersected with a union of determinantal pieces.

    ``empty`` means no point qualifies; ``whole`` means every flat point does.
    ``infeasible_pieces`` counts splits dropped because a generator was a
    nonzero constant.
    """

    degree: int
    depth: int
    variables: Tuple[str, ...]
    mc: Tuple[MultiPoly, ...]
    pieces: Tuple[Piece, ...]
    empty: bool = False
    whole: bool = False
    infeasible_pieces: int = 0

    def contains(self, point: Sequence) -> bool:
        if any(p.evaluate(point) for p in self.mc):
            return False
        if self.empty:
            return False
        if self.whole:
            return True
        return any(all(not g.evaluate(point) for g in piece.generators) for piece in self.pieces)

    def piece_contains_subspace(self, piece: Piece, images: Sequence[MultiPoly]) -> bool:
        return all(not g.compose(images) for g in piece.generators)

    def to_json(self) -> dict:
        def polys(ps):
            return [p.to_json() for p in ps]

        return {
            "degree": self.degree,
            "depth": self.depth,
            "variables": list(self.variables),
            "mc": polys(self.mc),
            "empty": self.empty,
            "whole": self.whole,
            "infeasible_pieces": self.infeasible_pieces,
            "pieces": [{"split": list(p.split), "prev": polys(p.prev_generators),
                        "cur": polys(p.cur_generators)} for p in self.pieces],
        }


def _canonical_generators(polys) -> Tuple[Tuple[MultiPoly, ...], bool]:
    """Drop zeros, make monic, dedupe, sort.  Second value: a nonzero constant occurred."""
    seen = {}
    for p in polys:
        if not p:
            continue
        if p.is_constant():
            return (), True
        m = p.monic()
        seen[m] = m
    return tuple(sorted(seen.values(), key=MultiPoly.sort_key)), False


def jump_locus_generators(a: Cdga, r: LieRep, i: int, rr: int) -> JumpLocusDescription:
    """Minor generators for {flat omega : beta_i(omega) >= rr}.

    beta_i = n_i - rank D_i - rank D_(i-1), so beta_i >= rr iff for some split
    x + y = n_i - rr the (x+1)-minors of D_(i-1) and (y+1)-minors of D_i vanish.
    """
    e = r.lie
    names = tuple(variable_names(a, e))
    nv = len(names)
    mc = tuple(sorted({p.monic() for p in mc_equations(a, e)}, key=MultiPoly.sort_key))
    if rr <= 0:
        return JumpLocusDescription(i, rr, names, mc, (), whole=True)
    mats = universal_aomoto_matrices(a, r, i)
    n_i = r.dimV * a.dim(i)
    if rr > n_i:
        return JumpLocusDescription(i, rr, names, mc, (), empty=True)
    cur = mats[i]
    prev = mats[i - 1] if i > 0 else PolyMatrix(n_i, 0, nv)
    budget = n_i - rr
    minors_prev: Dict[int, Tuple] = {}
    minors_cur: Dict[int, Tuple] = {}

    def gens(cache, mat, k):
        if k not in cache:
            raw = all_minors(mat.dense(), k, nv).values() if k <= min(mat.nrows, mat.ncols) else []
            cache[k] = _canonical_generators(raw)
        return cache[k]

    pieces = {}
    infeasible = 0
    for x in range(0, min(budget, prev.ncols) + 1):
        y = budget - x
        gp, bad_p = gens(minors_prev, prev, x + 1)
        gc, bad_c = gens(minors_cur, cur, y + 1)
        if bad_p or bad_c:
            infeasible += 1
            continue
        key = (gp, gc)
        if key not in pieces:
            pieces[key] = Piece((x, y), gp, gc)
    ordered = sorted(pieces.values(), key=lambda p: p.split)
    # drop pieces whose generator set is identical to an earlier one
    uniq, seen = [], set()
    for p in ordered:
        gset = frozenset(p.generators)
        if gset in seen:
            continue
        seen.add(gset)
        uniq.append(p)
    empty = not uniq
    whole = any(not p.generators for p in uniq)
    return JumpLocusDescription(i, rr, names, mc, tuple(uniq), empty=empty, whole=whole,
                                infeasible_pieces=infeasible)

"""Resonance membership, one-parameter scans, generic Betti numbers along a
line, certified search for linear components, and the Novikov-type
degeneration check for rings with zero differential."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .aomoto import (FlatConnection, aomoto_betti, aomoto_matrices, betti_from_complex, is_flat,
                     jump_locus_generators)
from .cdga import Cdga, apply_weight_action, validate_weights
from .errors import NotFlatError, PreconditionError
from .exact_linalg import QT, RationalFunction, SparseMatrix, kernel_basis, rank_exact, rref_with_pivots
from .lie import LieRep
from .multipoly import MultiPoly


def resonance_membership(a: Cdga, r: LieRep, omega: FlatConnection, i: int, rr: int) -> bool:
    """beta_i(omega) >= rr for a flat omega."""
    if not is_flat(a, r.lie, omega):
        raise NotFlatError("membership is only defined for flat connections")
    if rr <= 0:
        return True
    return aomoto_betti(a, r, omega, i)[i] >= rr


# --- scans -----------------------------------------------------------------------


@dataclass(frozen=True)
class ScanPoint:
    t: object
    flat: bool
    betti: Optional[int]


def _act(a: Cdga, omega: FlatConnection, t, weighted: bool) -> FlatConnection:
    if not weighted:
        return omega.scaled(t)
    cols = [apply_weight_action(a, t, 1, omega.column(g)) for g in range(omega.dim_lie)]
    return FlatConnection.from_columns(cols, omega.dim_a1)


def line_scan(a: Cdga, r: LieRep, omega: FlatConnection, samples: Sequence, i: int,
              weighted: bool = False) -> List[ScanPoint]:
    """beta_i along t.omega; non-flat samples are reported with betti=None."""
    out = []
    for t in samples:
        w = _act(a, omega, t, weighted)
        if not is_flat(a, r.lie, w):
            out.append(ScanPoint(t, False, None))
            continue
        out.append(ScanPoint(t, True, aomoto_betti(a, r, w, i)[i]))
    return out


def generic_betti(a: Cdga, r: LieRep, omega: FlatConnection, i: int) -> int:
    """beta_i of D(t omega) computed over Q(t)."""
    two = omega.scaled(2)
    if not (is_flat(a, r.lie, omega) and is_flat(a, r.lie, two)):
        raise NotFlatError("t.omega is not flat for symbolic t (needs d omega = 0 and [omega, omega] = 0)")
    t = RationalFunction.t()
    cx = aomoto_matrices(a, r, omega.scaled(t), i)
    return betti_from_complex(cx, i)[i]


# --- linear subspaces -----------------------------------------------------------------


@dataclass(frozen=True)
class LinearSubspaceQ:
    """{z in Q^n : E z = 0} with E in reduced row echelon form."""

    ambient_dim: int
    equations: SparseMatrix

    @classmethod
    def from_equations(cls, n: int, rows: Sequence[Sequence]) -> "LinearSubspaceQ":
        m = SparseMatrix.from_dense([[Fraction(v) for v in row] for row in rows], n) if rows else SparseMatrix.zeros(0, n)
        red, pcols = rref_with_pivots(m)
        return cls(n, red.submatrix(range(len(pcols)), range(n)))

    @classmethod
    def span(cls, n: int, vectors: Sequence[Sequence]) -> "LinearSubspaceQ":
        vecs = [v for v in vectors if any(v)]
        if not vecs:
            return cls.from_equations(n, [[int(i == k) for i in range(n)] for k in range(n)])
        eqs = kernel_basis(SparseMatrix.from_dense([[Fraction(x) for x in v] for v in vecs], n))
        return cls.from_equations(n, eqs)

    @classmethod
    def whole(cls, n: int) -> "LinearSubspaceQ":
        return cls(n, SparseMatrix.zeros(0, n))

    @property
    def codim(self) -> int:
        return self.equations.nrows

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.codim

    def basis(self) -> List[Tuple[Fraction, ...]]:
        if self.codim == 0:
            return [tuple(Fraction(int(i == k)) for i in range(self.ambient_dim)) for k in range(self.ambient_dim)]
        return kernel_basis(self.equations)

    def contains_vector(self, v: Sequence) -> bool:
        return not any(self.equations.apply(v))

    def contains(self, other: "LinearSubspaceQ") -> bool:
        return all(self.contains_vector(v) for v in other.basis())

    def sort_key(self):
        return (self.codim, tuple((r, c, v) for r, c, v in self.equations.entries))

    def __eq__(self, other):
        return (isinstance(other, LinearSubspaceQ) and self.ambient_dim == other.ambient_dim
                and self.equations == other.equations)

    def __hash__(self):
        return hash((self.ambient_dim, self.equations))

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "dim": self.dim,
                "equations": [[str(x) for x in row] for row in self.equations.to_dense()],
                "basis": [[str(x) for x in v] for v in self.basis()]}

    def __repr__(self):
        rows = ["(" + ", ".join(str(x) for x in row) + ")" for row in self.equations.to_dense()]
        return f"LinearSubspaceQ(n={self.ambient_dim}, eqs=[{', '.join(rows)}])"


def maximal_subspaces(spaces: Sequence[LinearSubspaceQ]) -> List[LinearSubspaceQ]:
    """Deduplicate and drop every subspace contained in a larger (earlier) one."""
    ordered = sorted(set(spaces), key=LinearSubspaceQ.sort_key)
    keep: List[LinearSubspaceQ] = []
    for s in ordered:
        if not any(k.contains(s) for k in keep):
            keep.append(s)
    return keep


# --- certified component search -------------------------------------------------------


@dataclass
class ComponentReport:
    components: List[LinearSubspaceQ]
    weighted_homogeneous: List[bool]
    complete: bool
    points_checked: int
    resonant_points: int
    uncovered: List[Tuple[Fraction, ...]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "components": [dict(c.to_json(), weighted_homogeneous=w)
                           for c, w in zip(self.components, self.weighted_homogeneous)],
            "incomplete": not self.complete,
            "points_checked": self.points_checked,
            "resonant_points": self.resonant_points,
            "uncovered_points": [[str(x) for x in p] for p in self.uncovered],
        }


def _weight_homogeneous(a: Cdga, s: LinearSubspaceQ) -> bool:
    ws = [a.weights[k] for k in a.basis.indices(1)]
    for v in s.basis():
        for w in set(ws):
            part = [x if wk == w else 0 for x, wk in zip(v, ws)]
            if any(part) and not s.contains_vector(part):
                return False
    return True


def linear_components_rank_one(a: Cdga, i: int, rr: int, search_budget: int = 20000,
                               radius: int = 3) -> ComponentReport:
    """Maximal rational linear subspaces through 0 inside R^i_rr, rank-one case.

    Resonant points are collected on a grid of kernel coordinates in
    Z^1 = ker(d: A^1 -> A^2) with entries in [-radius, radius].  Spans are
    grown greedily and each candidate is certified by substituting a
    symbolic general point into the determinantal pieces.
    """
    from .models import rank_one_rep

    if a.weights is None or not validate_weights(a)[1] or validate_weights(a)[0]:
        raise PreconditionError("linear component search needs valid positive weights")
    rep = rank_one_rep()
    n = a.dim(1)
    z1 = kernel_basis(a.d_matrix(1)) if a.known(2) and a.dim(2) else \
        [tuple(Fraction(int(i == k)) for i in range(n)) for k in range(n)]
    desc = jump_locus_generators(a, rep, i, rr)
    budget = search_budget

    def certify(space: LinearSubspaceQ) -> bool:
        nonlocal budget
        budget -= 1
        basis = space.basis()
        k = len(basis)
        if k == 0:
            return desc.contains([0] * n)
        images = [sum((MultiPoly.var(k, j, basis[j][m]) for j in range(k)), MultiPoly.zero(k)) for m in range(n)]
        if any(p.compose(images) for p in desc.mc) or desc.empty:
            return False
        return desc.whole or any(desc.piece_contains_subspace(pc, images) for pc in desc.pieces)

    def point(coords):
        return tuple(sum((c * v[m] for c, v in zip(coords, z1)), Fraction(0)) for m in range(n))

    resonant: List[Tuple[Fraction, ...]] = []
    checked = 0
    complete = True
    origin_in = False
    for coords in product(range(-radius, radius + 1), repeat=len(z1)):
        if budget <= 0:
            complete = False
            break
        budget -= 1
        checked += 1
        p = point(coords)
        if resonance_membership(a, rep, FlatConnection.rank_one(p), i, rr):
            if any(p):
                resonant.append(p)
            else:
                origin_in = True
    found: List[LinearSubspaceQ] = []
    uncovered = []
    for p in resonant:
        if budget <= 0:
            complete = False
            break
        if any(s.contains_vector(p) for s in found):
            continue
        span = [p]
        cur = LinearSubspaceQ.span(n, span)
        if not certify(cur):
            uncovered.append(p)
            continue
        for q in resonant:
            if budget <= 0:
                complete = False
                break
            if cur.contains_vector(q):
                continue
            cand = LinearSubspaceQ.span(n, span + [q])
            if certify(cand):
                span.append(q)
                cur = cand
        found.append(cur)
    if origin_in or found:
        found.append(LinearSubspaceQ.span(n, []))
    comps = maximal_subspaces(found)
    if uncovered:
        complete = False
    return ComponentReport(comps, [_weight_homogeneous(a, c) for c in comps], complete, checked,
                           len(resonant) + int(origin_in), uncovered)


# --- degeneration check ---------------------------------------------------------------


@dataclass
class DegenerationReport:
    e2: List[int]
    generic: List[int]
    degenerate: bool
    group_generic: Optional[List[int]] = None
    group_degenerate: Optional[bool] = None

    def to_json(self) -> dict:
        out = {"E2dims": self.e2, "genericDims": self.generic, "degenerate": self.degenerate}
        if self.group_generic is not None:
            out["groupGenericDims"] = self.group_generic
            out["groupDegenerate"] = self.group_degenerate
        return out


def fn_degeneration(h: Cdga, nu: Sequence, q: int, presentation=None,
                    dictionary: Optional[Sequence[Sequence]] = None) -> DegenerationReport:
    """Compare E2 = H(h, nu.) with generic twisted Betti numbers along nu.

    The algebraic generic dimensions come from D(t nu) over Q(t).  With a
    group presentation, generic twisted Betti numbers in degrees <= 1 are also
    computed from Fox matrices at the character x_j -> t^(n_j), where n is an
    integral multiple of ``dictionary . nu`` (default: identity dictionary).
    """
    from .models import rank_one_rep

    if not h.is_zero_differential():
        raise PreconditionError("the degeneration check takes a ring with zero differential")
    rep = rank_one_rep()
    omega = FlatConnection.rank_one([Fraction(x) for x in nu])
    e2 = aomoto_betti(h, rep, omega, q)
    gen = [generic_betti(h, rep, omega, k) for k in range(q + 1)]
    rep_out = DegenerationReport(e2, gen, e2 == gen)
    if presentation is not None:
        from .group_side import GroupRep, twisted_betti_low

        exps = character_exponents(nu, presentation.num_generators, dictionary)
        t = RationalFunction.t()
        rho = GroupRep.rank_one([t ** k for k in exps])
        b = list(twisted_betti_low(presentation, rho))[: q + 1]
        rep_out.group_generic = b
        rep_out.group_degenerate = e2[: len(b)] == b
    return rep_out


def character_exponents(nu: Sequence, ngens: int, dictionary=None) -> List[int]:
    """Integral vector proportional to dictionary . nu."""
    from math import lcm

    vec = [Fraction(x) for x in nu]
    if dictionary is None:
        if len(vec) != ngens:
            raise PreconditionError("without a dictionary, nu needs one coordinate per generator")
        img = vec
    else:
        if len(dictionary) != ngens:
            raise PreconditionError("dictionary needs one row per generator")
        img = [sum((Fraction(c) * x for c, x in zip(row, vec)), Fraction(0)) for row in dictionary]
    den = lcm(*[x.denominator for x in img]) if img else 1
    return [int(x * den) for x in img]


from .wetc import LaurentPoly, WeightFrame, wetc  # noqa: E402  (re-export)

__all__ = [
    "ComponentReport", "DegenerationReport", "LaurentPoly", "LinearSubspaceQ", "ScanPoint", "WeightFrame",
    "character_exponents", "fn_degeneration", "generic_betti", "line_scan", "linear_components_rank_one",
    "maximal_subspaces", "resonance_membership", "wetc",
]

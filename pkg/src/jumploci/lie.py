"""Finite-dimensional Lie algebras, representations, Chevalley-Eilenberg cochains,
and the dictionary between CDGA maps C(E) -> A and flat connections in A^1 (x) E."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from .cdga import Cdga, Combo, Violation, exterior_algebra
from .errors import NotFlatError, PreconditionError
from .exact_linalg import SparseMatrix


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants c^g_{ab} for a < b; ``brackets[(a, b)] = {g: c}``."""

    dim: int
    brackets: Mapping[Tuple[int, int], Mapping[int, Fraction]] = field(default_factory=dict)
    labels: Tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{k + 1}" for k in range(self.dim)))
        if len(self.labels) != self.dim:
            raise PreconditionError("one label per basis element required")
        clean = {}
        for (a, b), combo in self.brackets.items():
            if not (0 <= a < b < self.dim):
                raise PreconditionError(f"bracket key {(a, b)} must satisfy 0 <= a < b < dim")
            c = {g: Fraction(v) for g, v in combo.items() if v}
            if any(not 0 <= g < self.dim for g in c):
                raise PreconditionError("bracket value index out of range")
            if c:
                clean[(a, b)] = c
        object.__setattr__(self, "brackets", clean)

    def bracket_basis(self, a: int, b: int) -> Dict[int, Fraction]:
        if a == b:
            return {}
        if a < b:
            return dict(self.brackets.get((a, b), {}))
        return {g: -v for g, v in self.brackets.get((b, a), {}).items()}

    def const(self, g: int, a: int, b: int) -> Fraction:
        return self.bracket_basis(a, b).get(g, Fraction(0))

    def bracket(self, x: Sequence, y: Sequence) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                for g, c in self.bracket_basis(a, b).items():
                    out[g] += xa * yb * c
        return out

    def is_abelian(self) -> bool:
        return not self.brackets

    def __repr__(self):
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class LieRep:
    lie: LieAlgebra
    dimV: int
    matrices: Tuple[SparseMatrix, ...]

    def __post_init__(self):
        if len(self.matrices) != self.lie.dim:
            raise PreconditionError("one representation matrix per Lie basis element required")
        for m in self.matrices:
            if m.shape != (self.dimV, self.dimV):
                raise PreconditionError("representation matrices must be dimV x dimV")

    def image(self, x: Sequence) -> SparseMatrix:
        out = SparseMatrix.zeros(self.dimV, self.dimV)
        for a, xa in enumerate(x):
            if xa:
                out = out + self.matrices[a].scale(xa)
        return out


def validate_lie(e: LieAlgebra) -> List[Violation]:
    """Jacobi identity on every triple of distinct basis elements."""
    out = []
    n = e.dim
    unit = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
    for a, b, c in combinations(range(n), 3):
        x, y, z = unit[a], unit[b], unit[c]
        t1 = e.bracket(x, e.bracket(y, z))
        t2 = e.bracket(y, e.bracket(z, x))
        t3 = e.bracket(z, e.bracket(x, y))
        total = [p + q + r for p, q, r in zip(t1, t2, t3)]
        if any(total):
            out.append(Violation("Jacobi", (e.labels[a], e.labels[b], e.labels[c])))
    return out


def validate_rep(r: LieRep) -> List[Violation]:
    """theta([x, y]) = [theta(x), theta(y)] on basis pairs."""
    e = r.lie
    out = []
    for a, b in combinations(range(e.dim), 2):
        ta, tb = r.matrices[a], r.matrices[b]
        lhs = r.image([e.const(g, a, b) for g in range(e.dim)])
        if lhs != (ta @ tb) - (tb @ ta):
            out.append(Violation("homomorphism", (e.labels[a], e.labels[b])))
    return out


def lie_cochain_cdga(e: LieAlgebra, check: bool = True) -> Cdga:
    """C(E): the exterior algebra on E* with d e_g* = -sum_{a<b} c^g_{ab} e_a* e_b*.

    With ``check=False`` the algebra is built even when Jacobi fails (then d^2 != 0).
    """
    bad = validate_lie(e) if check else []
    if bad:
        raise PreconditionError(f"Jacobi identity fails on {bad[0].witness}; d^2 would not vanish")
    d_gens: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for (a, b), combo in e.brackets.items():
        for g, c in combo.items():
            d_gens.setdefault(g, {})
            d_gens[g][(a, b)] = d_gens[g].get((a, b), 0) - c
    return exterior_algebra([f"{lab}*" for lab in e.labels], d_gens, name=f"C({e.name or 'E'})")


@dataclass(frozen=True)
class HomCheck:
    """Result of translating a degree-1 assignment into a connection."""

    omega: "FlatConnection"
    flat: bool
    failures: Tuple[Tuple[str, Tuple[Fraction, ...]], ...] = ()  # (generator, (df - fd)(gen) in A^2)


def _df_minus_fd(a: Cdga, e: LieAlgebra, cols: Sequence[Sequence]) -> List[List]:
    """(d f - f d)(e_g*) in A^2 for each g, where f(e_g*) = cols[g]."""
    out = []
    for g in range(e.dim):
        dfg: Combo = a.combo_d(a.vec_to_combo(1, cols[g])) if a.dim(2) else {}
        val = a.combo_to_vec(2, dfg)
        for (p, q), combo in e.brackets.items():
            c = combo.get(g)
            if c:
                prod = a.multiply(1, cols[p], 1, cols[q])
                val = [v + c * w for v, w in zip(val, prod)]
        out.append(val)
    return out


def connection_of_hom(f: Sequence[Sequence], a: Cdga, e: LieAlgebra) -> HomCheck:
    """omega = sum f(e_g*) (x) e_g, flat iff f commutes with the differentials.

    ``f[g]`` is the image of e_g* as a vector in A^1.  A graded-algebra map out of
    an exterior algebra commutes with d everywhere once it does on generators.
    """
    from .aomoto import FlatConnection

    if len(f) != e.dim:
        raise PreconditionError("need one image per Lie basis element")
    cols = [[Fraction(v) for v in col] for col in f]
    if any(len(c) != a.dim(1) for c in cols):
        raise PreconditionError("images must be vectors in A^1")
    if not a.known(2):
        raise PreconditionError("flatness needs degree 2 of the CDGA")
    omega = FlatConnection.from_columns(cols, a.dim(1))
    fails = tuple((f"{e.labels[g]}*", tuple(v)) for g, v in enumerate(_df_minus_fd(a, e, cols)) if any(v))
    return HomCheck(omega, not fails, fails)


def hom_of_connection(omega: "FlatConnection", a: Cdga, e: LieAlgebra) -> List[List[Fraction]]:
    """Inverse of connection_of_hom: f(e_g*) = omega_g."""
    cols = [omega.column(g) for g in range(e.dim)]
    if omega.dim_lie != e.dim or omega.dim_a1 != a.dim(1):
        raise PreconditionError("connection shape does not match (A^1, E)")
    if any(any(v) for v in _df_minus_fd(a, e, cols)):
        raise NotFlatError("connection is not flat, so it does not come from a CDGA map")
    return cols

"""Constructors for example algebras and the named fixture registry.

Fixtures: TORUS2 (exterior algebra on a, b), PENCIL3 (Orlik-Solomon algebra of
three concurrent lines), SOLV2 and HEIS3 (Lie algebras), and their cochain
algebras C(SOLV2), C(HEIS3).  Group presentations live in ``group_side``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from .cdga import Cdga, Combo, GradedBasis, Violation, exterior_algebra, validate_cdga, validate_weights
from .errors import InvariantBreach, PreconditionError
from .exact_linalg import SparseMatrix, rank_exact, rref_with_pivots
from .lie import LieAlgebra, LieRep, lie_cochain_cdga, validate_lie


# --- Lie algebras -----------------------------------------------------------------


def abelian_lie(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, tuple(f"e{k + 1}" for k in range(n)), name=f"abelian({n})")


def solv2() -> LieAlgebra:
    # [y, x] = x, i.e. [x, y] = -x
    return LieAlgebra(2, {(0, 1): {0: Fraction(-1)}}, ("x", "y"), name="SOLV2")


def heis3() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): {2: Fraction(1)}}, ("x", "y", "z"), name="HEIS3")


def preset_lie(name: str) -> LieAlgebra:
    key = name.strip().lower()
    if key == "solv2":
        return solv2()
    if key == "heis3":
        return heis3()
    if key.startswith("abelian"):
        inner = key[len("abelian"):].strip("() ")
        try:
            n = int(inner) if inner else 1
        except ValueError:
            raise PreconditionError(f"bad abelian dimension in {name!r}") from None
        return abelian_lie(n)
    raise PreconditionError(f"unknown Lie algebra preset {name!r} (solv2, heis3, abelian(n))")


# --- representations ---------------------------------------------------------------


def rank_one_rep() -> LieRep:
    """theta = id on C: b is one-dimensional abelian, V = C, theta(e) = [1]."""
    return LieRep(abelian_lie(1), 1, (SparseMatrix.identity(1),))


def trivial_rep(e: LieAlgebra, dimV: int = 1) -> LieRep:
    return LieRep(e, dimV, tuple(SparseMatrix.zeros(dimV, dimV) for _ in range(e.dim)))


def adjoint_rep(e: LieAlgebra) -> LieRep:
    mats = []
    for a in range(e.dim):
        ents = [(g, b, c) for b in range(e.dim) for g, c in e.bracket_basis(a, b).items()]
        mats.append(SparseMatrix(e.dim, e.dim, ents))
    return LieRep(e, e.dim, tuple(mats))


def heis3_standard_rep() -> LieRep:
    """x = E12, y = E23, z = E13 acting on Q^3."""
    e = heis3()
    mats = (SparseMatrix(3, 3, [(0, 1, 1)]), SparseMatrix(3, 3, [(1, 2, 1)]), SparseMatrix(3, 3, [(0, 2, 1)]))
    return LieRep(e, 3, mats)


def solv2_standard_rep() -> LieRep:
    """x -> E12, y -> -E11 on Q^2 (check: [y, x] = x)."""
    e = solv2()
    return LieRep(e, 2, (SparseMatrix(2, 2, [(0, 1, 1)]), SparseMatrix(2, 2, [(0, 0, -1)])))


# --- rings ------------------------------------------------------------------------------


def torus2() -> Cdga:
    return exterior_algebra(["a", "b"], weights=[1, 1], name="TORUS2")


def exterior_ring(n: int) -> Cdga:
    return exterior_algebra([f"a{k + 1}" for k in range(n)], weights=[1] * n, name=f"EXT{n}")


def ring_cdga(dims: Sequence[int], mult: Mapping[Tuple[int, int], Combo],
              labels: Sequence[str] = (), name: str = "") -> Cdga:
    """(H, d=0) with weight equal to degree; raises on any axiom violation."""
    basis = GradedBasis(tuple(dims), tuple(labels))
    weights = tuple(basis.degree_of(k) for k in range(basis.size))
    a = Cdga(basis, mult, (), complete=True, weights=weights, name=name)
    bad = validate_cdga(a)
    if bad:
        raise PreconditionError("ring tables violate CDGA axioms: " +
                                "; ".join(f"{v.axiom} at {v.witness}" for v in bad[:5]))
    return a


# --- arrangements and Orlik-Solomon algebras ---------------------------------------


@dataclass(frozen=True)
class Arrangement:
    """Central arrangement of hyperplanes given by rational normal vectors."""

    ambient_dim: int
    normals: Tuple[Tuple[Fraction, ...], ...]
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        normals = tuple(tuple(Fraction(x) for x in v) for v in self.normals)
        object.__setattr__(self, "normals", normals)
        for k, v in enumerate(normals):
            if len(v) != self.ambient_dim:
                raise PreconditionError(f"normal {k + 1} has the wrong length")
            if not any(v):
                raise PreconditionError(f"normal {k + 1} is zero")
        for i, j in combinations(range(len(normals)), 2):
            if rank_exact(SparseMatrix.from_dense([normals[i], normals[j]])) < 2:
                raise PreconditionError(f"hyperplanes {i + 1} and {j + 1} coincide")

    @property
    def size(self) -> int:
        return len(self.normals)

    def rank_of(self, subset: Sequence[int]) -> int:
        if not subset:
            return 0
        return rank_exact(SparseMatrix.from_dense([self.normals[k] for k in subset], self.ambient_dim))

    @property
    def rank(self) -> int:
        return self.rank_of(range(self.size))

    @classmethod
    def cone(cls, ambient_dim: int, affine: Sequence[Tuple[Sequence, object]]) -> "Arrangement":
        """Cone of affine hyperplanes {x : n.x = c}; the last hyperplane is the one at infinity."""
        normals = [tuple(Fraction(x) for x in n) + (-Fraction(c),) for n, c in affine]
        normals.append(tuple([Fraction(0)] * ambient_dim + [Fraction(1)]))
        return cls(ambient_dim + 1, tuple(normals), {"coned": True, "hyperplane_at_infinity": len(normals)})


def circuits(arr: Arrangement) -> List[Tuple[int, ...]]:
    """Minimal dependent subsets of the normals, as sorted index tuples."""
    found: List[Tuple[int, ...]] = []
    for k in range(2, arr.rank + 2):
        for s in combinations(range(arr.size), k):
            if any(set(c) <= set(s) for c in found):
                continue
            if arr.rank_of(s) < k:
                found.append(s)
    return found


def nbc_sets(arr: Arrangement, max_degree: int, circ: Sequence[Tuple[int, ...]] | None = None) -> List[Tuple[int, ...]]:
    """Subsets with no broken circuit (circuit minus its least element), by degree then lex."""
    circ = circuits(arr) if circ is None else circ
    broken = [set(c[1:]) for c in circ]
    out = []
    for k in range(max_degree + 1):
        for s in combinations(range(arr.size), k):
            if not any(b <= set(s) for b in broken):
                out.append(s)
    return out


def _boundary(c: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
    return {c[:j] + c[j + 1:]: (-1) ** j for j in range(len(c))}


def _ext_product(s: Tuple[int, ...], t: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    if set(s) & set(t):
        return 0, ()
    inv = sum(1 for x in s for y in t if x > y)
    return (-1 if inv % 2 else 1), tuple(sorted(s + t))


def os_algebra(arr: Arrangement, q: int | None = None) -> Cdga:
    """Orlik-Solomon algebra in the nbc basis, d = 0, weight = degree.

    Built through degree min(q + 1, rank); when that reaches the rank the
    algebra is complete (it vanishes above the rank).
    """
    rk = arr.rank
    top = rk if q is None else min(q + 1, rk)
    complete = top == rk
    circ = circuits(arr)
    nbc = nbc_sets(arr, top, circ)
    nbc_index = {s: k for k, s in enumerate(nbc)}
    reduce_map: Dict[Tuple[int, ...], Combo] = {s: {nbc_index[s]: Fraction(1)} for s in nbc}
    for k in range(1, top + 1):
        monos = list(combinations(range(arr.size), k))
        non = [m for m in monos if m not in nbc_index]
        if not non:
            continue
        deg_nbc = [m for m in monos if m in nbc_index]
        order = non + deg_nbc
        col = {m: j for j, m in enumerate(order)}
        rows = []
        for c in circ:
            if len(c) - 1 > k:
                continue
            for t in combinations(range(arr.size), k - len(c) + 1):
                vec: Dict[int, Fraction] = {}
                for face, sg in _boundary(c).items():
                    s2, m = _ext_product(t, face)
                    if s2:
                        vec[col[m]] = vec.get(col[m], 0) + sg * s2
                vec = {j: v for j, v in vec.items() if v}
                if vec:
                    rows.append(vec)
        mat = SparseMatrix(len(rows), len(order), ((r, j, v) for r, row in enumerate(rows) for j, v in row.items()))
        red, pcols = rref_with_pivots(mat)
        if pcols != list(range(len(non))):
            raise InvariantBreach("nbc monomials do not complement the Orlik-Solomon ideal")
        for r, m in enumerate(non):
            row = red.row(r)
            reduce_map[m] = {nbc_index[order[j]]: -v for j, v in row.items() if j >= len(non)}
    mult: Dict[Tuple[int, int], Combo] = {}
    for i, s in enumerate(nbc):
        for j in range(i, len(nbc)):
            t = nbc[j]
            if len(s) + len(t) > top:
                continue
            sg, m = _ext_product(s, t)
            if sg:
                mult[(i, j)] = {k: sg * v for k, v in reduce_map[m].items()}
    dims = tuple(sum(1 for s in nbc if len(s) == k) for k in range(top + 1))
    labels = tuple("1" if not s else "^".join(f"e{x + 1}" for x in s) for s in nbc)
    weights = tuple(len(s) for s in nbc)
    return Cdga(GradedBasis(dims, labels), mult, (), complete=complete, weights=weights,
                name=arr.metadata.get("name", "OS") if isinstance(arr.metadata, Mapping) else "OS")


def pencil_arrangement(n: int = 3) -> Arrangement:
    """n concurrent lines through the origin of C^2."""
    normals = [(1, 0), (0, 1)] + [(1, k) for k in range(1, n - 1)]
    return Arrangement(2, tuple(normals[:n]), {"name": f"PENCIL{n}"})


def boolean_arrangement(n: int) -> Arrangement:
    normals = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    return Arrangement(n, tuple(normals), {"name": f"BOOLEAN{n}"})


def braid_arrangement(n: int = 4) -> Arrangement:
    """Hyperplanes x_i = x_j in C^n (A_{n-1}, rank n - 1)."""
    normals = []
    for i, j in combinations(range(n), 2):
        v = [0] * n
        v[i], v[j] = 1, -1
        normals.append(tuple(v))
    return Arrangement(n, tuple(normals), {"name": f"BRAID{n - 1}"})


def pencil3() -> Cdga:
    return os_algebra(pencil_arrangement(3))


# --- Gysin-type bigradings ----------------------------------------------------------


def bigraded_weight_check(a: Cdga, bidegrees: Sequence[Tuple[int, int]]) -> List[Violation]:
    """Check a user-supplied (p, l) bigrading: p + l = degree, products add
    bidegrees, d: (p, l) -> (p + 2, l - 1), and weight p + 2l > 0 in degree 1."""
    b = a.basis
    if len(bidegrees) != b.size:
        raise PreconditionError("one bidegree per basis element required")
    bd = [tuple(x) for x in bidegrees]
    lab = b.labels
    out: List[Violation] = []
    for k, (p, l) in enumerate(bd):
        if p + l != b.degree_of(k):
            out.append(Violation("bidegree-total", (lab[k],), f"p + l = {p + l} != degree {b.degree_of(k)}"))
    for i in range(b.size):
        for j in range(i, b.size):
            for k in a.basis_product(i, j):
                want = (bd[i][0] + bd[j][0], bd[i][1] + bd[j][1])
                if bd[k] != want:
                    out.append(Violation("product bidegree", (lab[i], lab[j], lab[k]),
                                         f"expected {want}, got {bd[k]}"))
    for i in range(b.size):
        for k in a.d_basis(i):
            want = (bd[i][0] + 2, bd[i][1] - 1)
            if bd[k] != want:
                out.append(Violation("differential bidegree", (lab[i], lab[k]),
                                     f"expected {want}, got {bd[k]}"))
    for k in b.indices(1):
        p, l = bd[k]
        if p + 2 * l <= 0:
            out.append(Violation("positive weight", (lab[k],), f"weight {p + 2 * l} in degree 1"))
    return out


def weights_from_bidegrees(bidegrees: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    return tuple(p + 2 * l for p, l in bidegrees)


# --- registry ---------------------------------------------------------------------------

_CDGAS = {
    "torus2": torus2,
    "pencil3": pencil3,
    "c_solv2": lambda: lie_cochain_cdga(solv2()),
    "c_heis3": lambda: lie_cochain_cdga(heis3()),
}


def fixture_cdga(name: str) -> Cdga:
    key = name.strip().lower().replace("•", "").replace("(", "_").replace(")", "")
    if key in _CDGAS:
        return _CDGAS[key]()
    raise PreconditionError(f"unknown CDGA fixture {name!r}; known: {sorted(_CDGAS)}")


def check_constructors() -> List[str]:
    """Names of fixtures whose constructor output fails validation (should be empty)."""
    bad = []
    for name, make in _CDGAS.items():
        a = make()
        if validate_cdga(a):
            bad.append(name)
        if a.weights is not None and validate_weights(a)[0]:
            bad.append(name)
    for e in (solv2(), heis3(), abelian_lie(4)):
        if validate_lie(e):
            bad.append(e.name)
    return bad

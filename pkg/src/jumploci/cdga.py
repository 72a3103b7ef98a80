"""Finite connected commutative differential graded algebras over Q.

Basis elements carry global indices ordered by degree; ``GradedBasis`` maps
between global indices and (degree, position).  Elements of a fixed degree are
plain lists of Fractions in the basis of that degree.

The multiplication table is keyed by global index pairs ``(i, j)`` with
``i <= j``; products with ``i > j`` are derived by graded commutativity.  If a
caller supplies both orders the pair is checked, not trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Mapping, Sequence, Tuple

from .errors import IncompleteInputError, PreconditionError
from .exact_linalg import SparseMatrix, rank_exact

Vec = List[Fraction]
Combo = Dict[int, Fraction]  # global index -> coefficient


@dataclass(frozen=True)
class GradedBasis:
    dims: Tuple[int, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.dims or self.dims[0] < 1:
            raise PreconditionError("degree 0 must be non-empty")
        if any(d < 0 for d in self.dims):
            raise PreconditionError("negative dimension")
        if not self.labels:
            labels = []
            for deg, n in enumerate(self.dims):
                labels.extend(f"g{deg}_{k}" for k in range(n))
            object.__setattr__(self, "labels", tuple(labels))
        if len(self.labels) != sum(self.dims):
            raise PreconditionError("one label per basis element required")
        if len(set(self.labels)) != len(self.labels):
            raise PreconditionError("basis labels must be distinct")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    @property
    def size(self) -> int:
        return sum(self.dims)

    def dim(self, deg: int) -> int:
        return self.dims[deg] if 0 <= deg < len(self.dims) else 0

    def offset(self, deg: int) -> int:
        return sum(self.dims[:deg])

    def indices(self, deg: int) -> range:
        if not 0 <= deg < len(self.dims):
            return range(0)
        o = self.offset(deg)
        return range(o, o + self.dims[deg])

    def degree_of(self, idx: int) -> int:
        for deg in range(len(self.dims)):
            if idx < self.offset(deg + 1):
                return deg
        raise IndexError(idx)

    def position(self, idx: int) -> Tuple[int, int]:
        deg = self.degree_of(idx)
        return deg, idx - self.offset(deg)

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Tuple[str, ...]
    detail: str = ""

    def as_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


@dataclass(frozen=True, eq=False)
class Cdga:
    """A connected CDGA given up to degree ``basis.top``.

    ``complete=True`` declares every degree above ``basis.top`` zero; otherwise
    those degrees are unknown and computations needing them refuse to run.
    ``diff[i]`` is the matrix of d: A^i -> A^(i+1), shape dims[i+1] x dims[i];
    it may be omitted for the top degree.
    """

    basis: GradedBasis
    mult: Mapping[Tuple[int, int], Combo]
    diff: Tuple[SparseMatrix, ...] = ()
    unit: int = 0
    complete: bool = True
    weights: Tuple[int, ...] | None = None
    name: str = ""
    _table: Dict[Tuple[int, int], Combo] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        b = self.basis
        if b.dims[0] != 1:
            raise PreconditionError("only connected CDGAs (dim A^0 = 1) are supported")
        if self.unit != 0:
            raise PreconditionError("the unit must be the degree-0 basis element")
        diffs = list(self.diff)
        for deg in range(b.top + 1):
            target = b.dim(deg + 1)
            if deg < len(diffs):
                d = diffs[deg]
                if d.shape != (target, b.dims[deg]):
                    raise PreconditionError(f"d_{deg} has shape {d.shape}, expected {(target, b.dims[deg])}")
            else:
                diffs.append(SparseMatrix.zeros(target, b.dims[deg]))
        object.__setattr__(self, "diff", tuple(diffs[: b.top + 1]))
        if self.weights is not None and len(self.weights) != b.size:
            raise PreconditionError("one weight per basis element required")
        mult = {}
        for (i, j), combo in self.mult.items():
            di, dj = b.degree_of(i), b.degree_of(j)
            for k in combo:
                if b.degree_of(k) != di + dj:
                    raise PreconditionError(
                        f"product {b.labels[i]}*{b.labels[j]} has a term outside degree {di + dj}")
            mult[(i, j)] = {k: Fraction(v) for k, v in combo.items() if v}
        object.__setattr__(self, "mult", mult)
        table: Dict[Tuple[int, int], Combo] = {}
        for (i, j), combo in mult.items():
            if i <= j or (j, i) not in mult:
                table[(i, j)] = combo
        for (i, j), combo in list(table.items()):
            if (j, i) not in table:
                s = -1 if (b.degree_of(i) * b.degree_of(j)) % 2 else 1
                table[(j, i)] = {k: s * v for k, v in combo.items()}
        for x in range(b.size):
            table.setdefault((self.unit, x), {x: Fraction(1)})
            table.setdefault((x, self.unit), {x: Fraction(1)})
        object.__setattr__(self, "_table", table)

    # --- basic structure ------------------------------------------------------

    @property
    def top(self) -> int:
        return self.basis.top

    def dim(self, deg: int) -> int:
        return self.basis.dim(deg)

    def known(self, deg: int) -> bool:
        """Whether A^deg is known (possibly as zero)."""
        return deg <= self.top or self.complete

    def label(self, idx: int) -> str:
        return self.basis.labels[idx]

    def basis_product(self, i: int, j: int) -> Combo:
        b = self.basis
        if b.degree_of(i) + b.degree_of(j) > self.top:
            return {}
        return self._table.get((i, j), {})

    def d_matrix(self, deg: int) -> SparseMatrix:
        """d: A^deg -> A^(deg+1)."""
        if deg < 0:
            return SparseMatrix.zeros(self.dim(0), 0)
        if deg > self.top:
            if not self.complete:
                raise IncompleteInputError(f"degree {deg} is not part of the input")
            return SparseMatrix.zeros(0, 0)
        if deg == self.top and not self.complete:
            raise IncompleteInputError(f"d_{deg} needs degree {deg + 1}, which is not part of the input")
        return self.diff[deg]

    def d_basis(self, idx: int) -> Combo:
        deg, pos = self.basis.position(idx)
        if deg + 1 > self.top:
            return {}
        col = self.diff[deg]
        off = self.basis.offset(deg + 1)
        return {off + r: col[r, pos] for r in range(col.nrows) if col[r, pos]}

    def is_zero_differential(self) -> bool:
        return all(d.is_zero() for d in self.diff)

    # --- element arithmetic ------------------------------------------------------

    def combo_product(self, x: Combo, y: Combo) -> Combo:
        out: Combo = {}
        for i, a in x.items():
            for j, c in y.items():
                for k, v in self.basis_product(i, j).items():
                    out[k] = out.get(k, 0) + a * c * v
        return {k: v for k, v in out.items() if v}

    def combo_d(self, x: Combo) -> Combo:
        out: Combo = {}
        for i, a in x.items():
            for k, v in self.d_basis(i).items():
                out[k] = out.get(k, 0) + a * v
        return {k: v for k, v in out.items() if v}

    def vec_to_combo(self, deg: int, vec: Sequence) -> Combo:
        off = self.basis.offset(deg)
        return {off + p: Fraction(v) for p, v in enumerate(vec) if v}

    def combo_to_vec(self, deg: int, combo: Combo) -> Vec:
        off = self.basis.offset(deg)
        out = [Fraction(0)] * self.dim(deg)
        for k, v in combo.items():
            out[k - off] = v
        return out

    def multiply(self, deg_x: int, x: Sequence, deg_y: int, y: Sequence) -> Vec:
        return self.combo_to_vec(deg_x + deg_y,
                                 self.combo_product(self.vec_to_combo(deg_x, x), self.vec_to_combo(deg_y, y)))

    def left_mult_matrix(self, deg_x: int, x: Sequence, deg: int) -> SparseMatrix:
        """Matrix of y -> x*y from A^deg to A^(deg+deg_x)."""
        tgt = deg + deg_x
        if tgt > self.top:
            if not self.complete:
                raise IncompleteInputError(f"degree {tgt} is not part of the input")
            return SparseMatrix.zeros(0, self.dim(deg))
        xc = self.vec_to_combo(deg_x, x)
        off = self.basis.offset(tgt)
        entries: Dict[Tuple[int, int], Fraction] = {}
        for col, j in enumerate(self.basis.indices(deg)):
            for k, v in self.combo_product(xc, {j: Fraction(1)}).items():
                entries[(k - off, col)] = entries.get((k - off, col), 0) + v
        return SparseMatrix(self.dim(tgt), self.dim(deg), ((r, c, v) for (r, c), v in entries.items()))

    def __repr__(self):
        return f"Cdga({self.name or 'unnamed'}, dims={self.basis.dims}, complete={self.complete})"


# --- validation ----------------------------------------------------------------


def _sign(p: int, q: int) -> int:
    return -1 if (p * q) % 2 else 1


def validate_cdga(a: Cdga) -> List[Violation]:
    """Every violated CDGA axiom, with the basis elements that witness it."""
    b = a.basis
    lab = b.labels
    out: List[Violation] = []
    deg = b.degree_of
    n = b.size

    for x in range(n):
        if a._table.get((a.unit, x), {}) != {x: 1} and deg(x) <= a.top:
            out.append(Violation("unit", (lab[a.unit], lab[x]), "1*x != x"))
        if a._table.get((x, a.unit), {}) != {x: 1}:
            out.append(Violation("unit", (lab[x], lab[a.unit]), "x*1 != x"))

    for i in range(n):
        for j in range(i, n):
            if deg(i) + deg(j) > a.top:
                continue
            s = _sign(deg(i), deg(j))
            lhs = a.mult.get((i, j), a._table.get((i, j), {}))
            rhs = a.mult.get((j, i), a._table.get((j, i), {}))
            if lhs != {k: s * v for k, v in rhs.items()}:
                out.append(Violation("graded-commutativity", (lab[i], lab[j]),
                                     f"a*b != (-1)^{deg(i) * deg(j)} b*a"))

    for i, j, k in iproduct(range(n), repeat=3):
        if deg(i) + deg(j) + deg(k) > a.top:
            continue
        left = a.combo_product(a.basis_product(i, j), {k: Fraction(1)})
        right = a.combo_product({i: Fraction(1)}, a.basis_product(j, k))
        if left != right:
            out.append(Violation("associativity", (lab[i], lab[j], lab[k])))

    for d in range(a.top - 1):
        if not (a.diff[d + 1] @ a.diff[d]).is_zero():
            bad = [c for c in range(b.dims[d]) if any((a.diff[d + 1] @ a.diff[d])[r, c]
                                                      for r in range(b.dim(d + 2)))]
            for c in bad:
                out.append(Violation("d^2=0", (lab[b.offset(d) + c],)))

    for i in range(n):
        for j in range(i, n):
            if deg(i) + deg(j) + 1 > a.top:
                continue
            lhs = a.combo_d(a.basis_product(i, j))
            t1 = a.combo_product(a.d_basis(i), {j: Fraction(1)})
            t2 = a.combo_product({i: Fraction(1)}, a.d_basis(j))
            rhs = dict(t1)
            sg = _sign(deg(i), 1)
            for k, v in t2.items():
                rhs[k] = rhs.get(k, 0) + sg * v
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                out.append(Violation("Leibniz", (lab[i], lab[j]), "d(ab) != (da)b + (-1)^|a| a(db)"))

    if a.weights is not None:
        out.extend(_weight_violations(a))
    return out


def _weight_violations(a: Cdga) -> List[Violation]:
    w = a.weights
    lab = a.basis.labels
    out = []
    if w[a.unit] != 0:
        out.append(Violation("weight-multiplicative", (lab[a.unit],), "unit must have weight 0"))
    n = a.basis.size
    for i in range(n):
        for j in range(i, n):
            for k in a.basis_product(i, j):
                if w[k] != w[i] + w[j]:
                    out.append(Violation("weight-multiplicative", (lab[i], lab[j], lab[k]),
                                         f"weight {w[i]}+{w[j]} product has a term of weight {w[k]}"))
    for i in range(n):
        for k in a.d_basis(i):
            if w[k] != w[i]:
                out.append(Violation("weight-differential", (lab[i], lab[k]),
                                     f"d sends weight {w[i]} to a term of weight {w[k]}"))
    return out


def validate_weights(a: Cdga) -> Tuple[List[Violation], bool]:
    """(violations, positive) where positive means all degree-1 weights are > 0."""
    if a.weights is None:
        raise PreconditionError("the CDGA carries no weights")
    report = _weight_violations(a)
    positive = not report and all(a.weights[k] > 0 for k in a.basis.indices(1))
    return report, positive


def with_weights(a: Cdga, weights: Sequence[int] | None) -> Cdga:
    return Cdga(a.basis, a.mult, a.diff, a.unit, a.complete,
                None if weights is None else tuple(weights), a.name)


def cohomology_dims(a: Cdga, q: int) -> List[int]:
    """Betti numbers b_0..b_q; needs degree q+1 known."""
    if not a.known(q + 1):
        raise IncompleteInputError(f"b_{q} needs degree {q + 1}; declare the CDGA complete or supply it")
    ranks = [rank_exact(a.d_matrix(i)) if i <= a.top else 0 for i in range(q + 1)]
    return [a.dim(i) - ranks[i] - (ranks[i - 1] if i > 0 else 0) for i in range(q + 1)]


def euler_characteristic(a: Cdga) -> int:
    return sum((-1) ** i * n for i, n in enumerate(a.basis.dims))


def apply_weight_action(a: Cdga, t, deg: int, v: Sequence) -> list:
    """t . v = sum of t^w(k) v_k over the weight basis of A^deg."""
    if a.weights is None:
        raise PreconditionError("the CDGA carries no weights")
    idx = a.basis.indices(deg)
    if len(v) != len(idx):
        raise PreconditionError("element length does not match the degree")
    ws = [a.weights[k] for k in idx]
    if t == 0:
        _, positive = validate_weights(a)
        if not positive or any(w < 0 for w, x in zip(ws, v) if x):
            raise PreconditionError("t = 0 is a pole of the weight action without positive weights")
        return [x if w == 0 else 0 * x for w, x in zip(ws, v)]
    return [x * t ** w for w, x in zip(ws, v)]


# --- exterior algebras ------------------------------------------------------------


def _merge_sign(s: Tuple[int, ...], t: Tuple[int, ...]) -> int:
    inv = sum(1 for x in s for y in t if x > y)
    return -1 if inv % 2 else 1


def exterior_monomials(n: int) -> List[Tuple[int, ...]]:
    from itertools import combinations

    return [m for k in range(n + 1) for m in combinations(range(n), k)]


def exterior_algebra(gen_labels: Sequence[str], d_gens: Mapping[int, Mapping[Tuple[int, int], Fraction]] | None = None,
                     weights: Sequence[int] | None = None, name: str = "") -> Cdga:
    """Free graded-commutative algebra on degree-1 generators.

    ``d_gens[g]`` gives d of generator g as ``{(p, q): coeff}`` with p < q,
    meaning sum coeff * g_p g_q; d is extended as a derivation.  ``weights``
    are per generator and extended additively.
    """
    n = len(gen_labels)
    monos = exterior_monomials(n)
    index = {m: k for k, m in enumerate(monos)}
    dims = tuple(sum(1 for m in monos if len(m) == k) for k in range(n + 1))
    labels = tuple("1" if not m else "^".join(gen_labels[g] for g in m) for m in monos)
    mult: Dict[Tuple[int, int], Combo] = {}
    for i, s in enumerate(monos):
        for j in range(i, len(monos)):
            t = monos[j]
            if set(s) & set(t):
                continue
            mult[(i, j)] = {index[tuple(sorted(s + t))]: Fraction(_merge_sign(s, t))}
    basis = GradedBasis(dims, labels)
    plain = Cdga(basis, mult, name=name)
    d_gens = d_gens or {}
    dcombo: Dict[int, Combo] = {}
    for m in monos:
        total: Combo = {}
        for pos, g in enumerate(m):
            dg = {index[(p, q)]: Fraction(c) for (p, q), c in d_gens.get(g, {}).items() if c}
            if not dg:
                continue
            left = {index[m[:pos]]: Fraction(1)}
            right = {index[m[pos + 1:]]: Fraction(1)}
            term = plain.combo_product(plain.combo_product(left, dg), right)
            sgn = -1 if pos % 2 else 1
            for k, v in term.items():
                total[k] = total.get(k, 0) + sgn * v
        dcombo[index[m]] = {k: v for k, v in total.items() if v}
    diffs = []
    for deg in range(n + 1):
        src = basis.indices(deg)
        off = basis.offset(deg + 1)
        entries = [(k - off, c, v) for c, i in enumerate(src) for k, v in dcombo[i].items()]
        diffs.append(SparseMatrix(basis.dim(deg + 1), dims[deg], entries))
    w = None
    if weights is not None:
        w = tuple(sum(weights[g] for g in m) for m in monos)
    return Cdga(basis, mult, tuple(diffs), complete=True, weights=w, name=name)

"""Sparse exact matrices and elimination.

Rows are stored as ``{col: value}`` dicts.  Ranks over Q go through
fraction-free Bareiss elimination on integers (rows are rescaled to clear
denominators, which does not change rank).  Everything else uses Gaussian
elimination over the field of the entries, switching to dense rows once
fill-in passes half of the active block.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from ..errors import VariantMismatchError
from .scalars import QT, Q, RationalFunction, Scalar, bit_size, coerce, variant_of

Row = Dict[int, Scalar]

DENSE_FILL_THRESHOLD = 0.5


class SparseMatrix:
    """Immutable sparse matrix with entries of a single scalar variant."""

    __slots__ = ("nrows", "ncols", "variant", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Iterable[Tuple[int, int, Scalar]] = (),
                 variant: str | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        rows: Dict[int, Row] = {}
        raw = []
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside a {nrows}x{ncols} matrix")
            vt = variant_of(v)
            if vt is not None:
                if variant is None:
                    variant = vt
                elif vt != variant:
                    raise VariantMismatchError(f"entry ({r}, {c}) is {vt}, matrix is {variant}")
            raw.append((r, c, v))
        variant = variant or Q
        for r, c, v in raw:
            if not v:
                continue
            row = rows.setdefault(r, {})
            if c in row:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            row[c] = coerce(v, variant)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "_rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("SparseMatrix is immutable")

    # --- construction -----------------------------------------------------

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: int | None = None,
                   variant: str | None = None) -> "SparseMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = []
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            entries.extend((i, j, v) for j, v in enumerate(row) if v)
        return cls(nrows, ncols, entries, variant)

    @classmethod
    def from_rows(cls, nrows: int, ncols: int, rows: Dict[int, Row],
                  variant: str | None = None) -> "SparseMatrix":
        return cls(nrows, ncols, ((r, c, v) for r, row in rows.items() for c, v in row.items()), variant)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, variant: str = Q) -> "SparseMatrix":
        return cls(nrows, ncols, (), variant)

    @classmethod
    def identity(cls, n: int, variant: str = Q) -> "SparseMatrix":
        return cls(n, n, ((i, i, 1) for i in range(n)), variant)

    # --- access -----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> Tuple[Tuple[int, int, Scalar], ...]:
        return tuple((r, c, self._rows[r][c]) for r in sorted(self._rows) for c in sorted(self._rows[r]))

    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def row(self, r: int) -> Row:
        return dict(self._rows.get(r, {}))

    def __getitem__(self, rc: Tuple[int, int]) -> Scalar:
        r, c = rc
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(rc)
        return self._rows.get(r, {}).get(c, self._zero())

    def _zero(self):
        return coerce(0, self.variant)

    def to_dense(self) -> List[List[Scalar]]:
        z = self._zero()
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"SparseMatrix({self.nrows}, {self.ncols}, nnz={self.nnz()}, variant={self.variant})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.to_dense())

    # --- arithmetic ---------------------------------------------------------

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows,
                            ((c, r, v) for r, row in self._rows.items() for c, v in row.items()),
                            self.variant)

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        _check_same_variant(self, other)
        out: Dict[int, Row] = {}
        for r, row in self._rows.items():
            acc: Row = {}
            for k, a in row.items():
                for c, b in other._rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseMatrix.from_rows(self.nrows, other.ncols, out, self.variant)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        _check_same_variant(self, other)
        out = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            tgt = out.setdefault(r, {})
            for c, v in row.items():
                tgt[c] = tgt.get(c, 0) + v
        return SparseMatrix.from_rows(self.nrows, self.ncols, out, self.variant)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, s) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols,
                            ((r, c, v * s) for r, row in self._rows.items() for c, v in row.items()),
                            self.variant)

    def apply(self, vec: Sequence) -> List[Scalar]:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = [self._zero()] * self.nrows
        for r, row in self._rows.items():
            acc = 0
            for c, v in row.items():
                acc = acc + v * vec[c]
            out[r] = acc
        return out

    def map(self, fn: Callable[[Scalar], Scalar], variant: str | None = None) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols,
                            ((r, c, fn(v)) for r, row in self._rows.items() for c, v in row.items()),
                            variant)

    def specialize(self, t) -> "SparseMatrix":
        """Evaluate a Q(t) matrix at t (a Fraction or GaussianRational)."""
        if self.variant != QT:
            raise VariantMismatchError("specialize needs a Q(t) matrix")
        return self.map(lambda v: v(t), variant_of(t) or Q)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        cidx = {c: j for j, c in enumerate(cols)}
        entries = []
        for i, r in enumerate(rows):
            for c, v in self._rows.get(r, {}).items():
                if c in cidx:
                    entries.append((i, cidx[c], v))
        return SparseMatrix(len(rows), len(cols), entries, self.variant)

    @staticmethod
    def vstack(mats: Sequence["SparseMatrix"]) -> "SparseMatrix":
        ncols = mats[0].ncols
        variant = mats[0].variant
        entries, off = [], 0
        for m in mats:
            if m.ncols != ncols:
                raise ValueError("vstack column mismatch")
            _check_same_variant(mats[0], m)
            entries.extend((r + off, c, v) for r, c, v in m.entries)
            off += m.nrows
        return SparseMatrix(off, ncols, entries, variant)

    @staticmethod
    def hstack(mats: Sequence["SparseMatrix"]) -> "SparseMatrix":
        return SparseMatrix.vstack([m.transpose() for m in mats]).transpose()


def _check_same_variant(a: SparseMatrix, b: SparseMatrix) -> None:
    if a.variant != b.variant and not (a.is_zero() or b.is_zero()):
        raise VariantMismatchError(f"{a.variant} matrix combined with {b.variant} matrix")


# --- elimination ------------------------------------------------------------


def _bareiss_rank(rows: List[List[int]], ncols: int) -> int:
    m = [list(r) for r in rows if any(r)]
    prev = 1
    rank = 0
    nr = len(m)
    for c in range(ncols):
        if rank == nr:
            break
        piv = None
        for i in range(rank, nr):
            v = m[i][c]
            if v and (piv is None or abs(v).bit_length() < abs(m[piv][c]).bit_length()):
                piv = i
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        pc = p[c]
        for i in range(rank + 1, nr):
            row = m[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (pc * row[j] - a * p[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (pc * row[j]) // prev
            row[c] = 0
        prev = pc
        rank += 1
    return rank


def _integer_rows(m: SparseMatrix) -> List[List[int]]:
    out = []
    for r in sorted(m._rows):
        row = m._rows[r]
        den = lcm(*(v.denominator for v in row.values()))
        dense = [0] * m.ncols
        for c, v in row.items():
            dense[c] = int(v * den)
        out.append(dense)
    return out


def _forward(rows: List[Row], ncols: int, variant: str) -> Tuple[List[Row], List[int]]:
    """Echelon form with normalized pivots; pivot columns ascending."""
    active = [dict(r) for r in rows if r]
    pivots: List[Row] = []
    pcols: List[int] = []
    dense = False
    zero = coerce(0, variant)
    for c in range(ncols):
        if not active:
            break
        if not dense and sum(len(r) for r in active) > DENSE_FILL_THRESHOLD * len(active) * (ncols - c):
            dense = True
            active = [[r.get(j, zero) for j in range(ncols)] for r in active]
        if dense:
            cand = [i for i, r in enumerate(active) if r[c]]
        else:
            cand = [i for i, r in enumerate(active) if c in r]
        if not cand:
            continue
        pi = min(cand, key=lambda i: (bit_size(active[i][c]), i))
        prow = active.pop(pi)
        inv = 1 / prow[c] if variant == Q else coerce(1, variant) / prow[c]
        if dense:
            prow = [v * inv for v in prow]
            prow[c] = coerce(1, variant)
            nxt = []
            for r in active:
                a = r[c]
                if a:
                    r = [x - a * y if y else x for x, y in zip(r, prow)]
                    r[c] = zero
                if any(r[c + 1:]):
                    nxt.append(r)
            active = nxt
            pivots.append({j: v for j, v in enumerate(prow) if v})
        else:
            prow = {j: v * inv for j, v in prow.items()}
            prow[c] = coerce(1, variant)
            nxt = []
            for r in active:
                a = r.get(c)
                if a:
                    for j, v in prow.items():
                        nv = r.get(j, zero) - a * v
                        if nv:
                            r[j] = nv
                        else:
                            r.pop(j, None)
                    r.pop(c, None)
                if r:
                    nxt.append(r)
            active = nxt
            pivots.append(prow)
        pcols.append(c)
    return pivots, pcols


def _backward(pivots: List[Row], pcols: List[int]) -> List[Row]:
    rows = [dict(p) for p in pivots]
    for k in range(len(rows) - 1, -1, -1):
        c = pcols[k]
        prow = rows[k]
        for i in range(k):
            a = rows[i].get(c)
            if a:
                r = rows[i]
                for j, v in prow.items():
                    nv = r.get(j, 0) - a * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
    return rows


def _rows_of(m: SparseMatrix) -> List[Row]:
    return [m._rows[r] for r in sorted(m._rows)]


def rank_exact(m: SparseMatrix) -> int:
    """Rank over the fraction field of the entries' variant."""
    if m.is_zero():
        return 0
    if m.variant == Q:
        return _bareiss_rank(_integer_rows(m), m.ncols)
    return len(_forward(_rows_of(m), m.ncols, m.variant)[1])


def rank_generic(m: SparseMatrix) -> int:
    """Rank over Q(t) of a rational-function matrix."""
    if m.variant != QT and not m.is_zero():
        raise VariantMismatchError(f"rank_generic needs Q(t) entries, got {m.variant}")
    if m.is_zero():
        return 0
    return len(_forward(_rows_of(m), m.ncols, QT)[1])


def rref_with_pivots(m: SparseMatrix) -> Tuple[SparseMatrix, List[int]]:
    pivots, pcols = _forward(_rows_of(m), m.ncols, m.variant)
    rows = _backward(pivots, pcols)
    out = SparseMatrix.from_rows(m.nrows, m.ncols, dict(enumerate(rows)), m.variant)
    return out, pcols


def rref(m: SparseMatrix) -> SparseMatrix:
    """Reduced row echelon form; zero rows go to the bottom, shape is kept."""
    return rref_with_pivots(m)[0]


def kernel_basis(m: SparseMatrix) -> List[Tuple[Scalar, ...]]:
    """Canonical basis of the right kernel: the rows of the kernel's rref."""
    r, pcols = rref_with_pivots(m)
    one = coerce(1, m.variant)
    zero = coerce(0, m.variant)
    pset = set(pcols)
    free = [c for c in range(m.ncols) if c not in pset]
    vecs = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for k, c in enumerate(pcols):
            a = r._rows.get(k, {}).get(f)
            if a:
                v[c] = -a
        vecs.append(v)
    if not vecs:
        return []
    canon = rref(SparseMatrix.from_dense(vecs, m.ncols, m.variant))
    return [tuple(canon[i, j] for j in range(m.ncols)) for i in range(len(vecs))]


def row_space_contains(big: SparseMatrix, small: SparseMatrix) -> bool:
    """True iff every row of ``small`` lies in the row space of ``big``."""
    if small.is_zero():
        return True
    return rank_exact(SparseMatrix.vstack([big, small])) == rank_exact(big)


def solve(m: SparseMatrix, rhs: Sequence[Scalar]) -> List[Scalar] | None:
    """One solution x of m x = rhs, or None when inconsistent."""
    aug = SparseMatrix.hstack([m, SparseMatrix.from_dense([[v] for v in rhs], 1, m.variant)])
    r, pcols = rref_with_pivots(aug)
    if pcols and pcols[-1] == m.ncols:
        return None
    x = [coerce(0, m.variant)] * m.ncols
    for k, c in enumerate(pcols):
        x[c] = r[k, m.ncols]
    return x


def as_fraction_matrix(rows: Sequence[Sequence]) -> SparseMatrix:
    return SparseMatrix.from_dense([[Fraction(v) for v in row] for row in rows],
                                   len(rows[0]) if rows else 0, Q)


def rf_matrix(rows: Sequence[Sequence]) -> SparseMatrix:
    """Dense list of RationalFunction/int entries to a Q(t) matrix."""
    return SparseMatrix.from_dense(rows, len(rows[0]) if rows else 0, QT)


__all__ = [
    "SparseMatrix", "rank_exact", "rank_generic", "rref", "rref_with_pivots", "kernel_basis",
    "row_space_contains", "solve", "as_fraction_matrix", "rf_matrix", "RationalFunction",
]

"""Weighted exponential tangent cones of hypersurfaces in the character torus.

For f = sum_u c_u t^u with f(1) = 0 and a weight frame (M, w), the cone
{z : f(exp(t.z)) = 0 for all t}, where t.z = M D(t) M^-1 z and
D(t) = diag(t^w_j), is the union over partitions of the support into
zero-sum blocks of the subspaces where all exponents in a block agree as
polynomials in t.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import InputError, PreconditionError
from .exact_linalg import SparseMatrix, rank_exact, solve

MAX_SUPPORT = 12


@dataclass(frozen=True)
class LaurentPoly:
    """sum of coeffs[u] * t_1^u_1 ... t_n^u_n."""

    nvars: int
    coeffs: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        merged: Dict[Tuple[int, ...], Fraction] = {}
        for u, c in self.coeffs:
            u = tuple(int(x) for x in u)
            if len(u) != self.nvars:
                raise PreconditionError("exponent vector length mismatch")
            merged[u] = merged.get(u, Fraction(0)) + Fraction(c)
        clean = tuple(sorted((u, c) for u, c in merged.items() if c))
        if not clean:
            raise PreconditionError("the Laurent polynomial is zero")
        object.__setattr__(self, "coeffs", clean)

    @property
    def support(self) -> List[Tuple[int, ...]]:
        return [u for u, _ in self.coeffs]

    def at_one(self) -> Fraction:
        return sum((c for _, c in self.coeffs), Fraction(0))

    def evaluate(self, point: Sequence[complex]) -> complex:
        total = 0j
        for u, c in self.coeffs:
            term = complex(float(c))
            for x, k in zip(point, u):
                term *= x ** k
            total += term
        return total

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "LaurentPoly":
        """Parse sums of terms like ``3/2*t1^2*t3^-1`` (variables t1..tn)."""
        src = text.replace(" ", "").replace("**", "^")
        if not src:
            raise InputError("empty polynomial")
        # hide exponent signs from the term splitter
        src = re.sub(r"\^\(?-(\d+)\)?", r"^~\1", src)
        terms = re.findall(r"[+-]?[^+-]+", src)
        parsed = []
        top = 0
        for raw in terms:
            raw = raw.replace("~", "-")
            sign = -1 if raw.startswith("-") else 1
            body = raw.lstrip("+-")
            coef = Fraction(sign)
            exps: Dict[int, int] = {}
            for factor in body.split("*"):
                m = re.fullmatch(r"t(\d+)(?:\^\(?(-?\d+)\)?)?", factor)
                if m:
                    k = int(m.group(1))
                    if k < 1:
                        raise InputError(f"variable index must be >= 1 in {factor!r}")
                    exps[k] = exps.get(k, 0) + int(m.group(2) or 1)
                    top = max(top, k)
                    continue
                try:
                    coef *= Fraction(factor)
                except (ValueError, ZeroDivisionError):
                    raise InputError(f"cannot parse factor {factor!r} in {text!r}") from None
            parsed.append((exps, coef))
        n = nvars or top
        if top > n:
            raise InputError(f"polynomial uses t{top} but only {n} variables were declared")
        return cls(n, tuple((tuple(e.get(k + 1, 0) for k in range(n)), c) for e, c in parsed))

    def __str__(self):
        parts = []
        for u, c in self.coeffs:
            mono = "*".join(f"t{k + 1}" if x == 1 else f"t{k + 1}^{x}" for k, x in enumerate(u) if x)
            if not mono:
                parts.append(str(c))
            elif abs(c) == 1:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class WeightFrame:
    matrix: Tuple[Tuple[Fraction, ...], ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        n = len(self.weights)
        if len(m) != n or any(len(r) != n for r in m):
            raise PreconditionError("weight frame matrix must be n x n with n = number of weights")
        if any(w < 1 for w in self.weights):
            raise PreconditionError("weights must be positive integers")
        if rank_exact(SparseMatrix.from_dense(m, n)) < n:
            raise PreconditionError("weight frame matrix is not invertible")

    @classmethod
    def standard(cls, weights: Sequence[int]) -> "WeightFrame":
        n = len(weights)
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), tuple(weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    def inverse(self) -> List[List[Fraction]]:
        n = self.n
        mat = SparseMatrix.from_dense(self.matrix, n)
        cols = [solve(mat, [Fraction(int(i == k)) for i in range(n)]) for k in range(n)]
        return [[cols[k][i] for k in range(n)] for i in range(n)]

    def act_matrix(self, t: float) -> List[List[float]]:
        """M D(t) M^-1 as floats."""
        n = self.n
        inv = self.inverse()
        d = [float(t) ** w for w in self.weights]
        return [[sum(float(self.matrix[i][j]) * d[j] * float(inv[j][k]) for j in range(n)) for k in range(n)]
                for i in range(n)]


def _zero_sum_partitions(items: List[int], coeffs: Sequence[Fraction]) -> Iterator[List[List[int]]]:
    """Set partitions of ``items`` whose blocks all have coefficient sum 0.

    The block holding the first remaining item is chosen first, so each
    partition appears exactly once; non-zero-sum blocks are pruned at once.
    """
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for mask in range(1 << len(rest)):
        block = [head] + [x for k, x in enumerate(rest) if mask >> k & 1]
        if sum((coeffs[x] for x in block), Fraction(0)):
            continue
        remaining = [x for k, x in enumerate(rest) if not mask >> k & 1]
        for tail in _zero_sum_partitions(remaining, coeffs):
            yield [block] + tail


def wetc(f: LaurentPoly, frame: WeightFrame):
    """Maximal rational linear subspaces making up the weighted exponential tangent cone."""
    from .resonance import LinearSubspaceQ, maximal_subspaces

    if f.nvars != frame.n:
        raise PreconditionError("polynomial and weight frame have different numbers of variables")
    if f.at_one() != 0:
        raise PreconditionError("f(1) != 0: the identity character is not on the hypersurface")
    support = f.support
    if len(support) > MAX_SUPPORT:
        raise PreconditionError(f"support size {len(support)} exceeds the limit {MAX_SUPPORT}")
    n = frame.n
    m = frame.matrix
    # g_u = M^T u: the coefficient of z'_j t^(w_j) in f_u
    g = [[sum((m[i][j] * u[i] for i in range(n)), Fraction(0)) for j in range(n)] for u in support]
    coeffs = [c for _, c in f.coeffs]
    inv = frame.inverse()
    classes = sorted(set(frame.weights))
    spaces = []
    for part in _zero_sum_partitions(list(range(len(support))), coeffs):
        rows = []
        for block in part:
            base = block[0]
            for other in block[1:]:
                for k in classes:
                    row = [(g[other][j] - g[base][j]) if frame.weights[j] == k else Fraction(0) for j in range(n)]
                    if any(row):
                        # back to the original coordinates: z' = M^-1 z
                        rows.append([sum((row[j] * inv[j][c] for j in range(n)), Fraction(0)) for c in range(n)])
        spaces.append(LinearSubspaceQ.from_equations(n, rows))
    return maximal_subspaces(spaces)


def residual(f: LaurentPoly, frame: WeightFrame, z: Sequence[float], t: float) -> float:
    """|f(exp(t.z))| in double precision."""
    a = frame.act_matrix(t)
    n = frame.n
    point = [math.exp(sum(a[i][k] * float(z[k]) for k in range(n))) for i in range(n)]
    return abs(f.evaluate(point))

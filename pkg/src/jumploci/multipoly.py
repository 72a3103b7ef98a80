"""Sparse multivariate polynomials over Q with exponent-vector keys."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

Exp = Tuple[int, ...]


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exp, Fraction] | Iterable[Tuple[Exp, Fraction]] = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean: Dict[Exp, Fraction] = {}
        for e, c in items:
            if len(e) != nvars:
                raise ValueError("exponent vector length mismatch")
            c = Fraction(c)
            if c:
                e = tuple(e)
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, k: int, c=1) -> "MultiPoly":
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): Fraction(c)})

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> List[int]:
        return sorted({k for e in self.terms for k, x in enumerate(e) if x})

    def sorted_terms(self) -> List[Tuple[Exp, Fraction]]:
        """Terms by descending total degree, then descending exponent (grlex)."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1] if self.terms else Fraction(0)

    def monic(self) -> "MultiPoly":
        lc = self.leading_coefficient()
        if not lc:
            return self
        return MultiPoly(self.nvars, {e: c / lc for e, c in self.terms.items()})

    def sort_key(self):
        return (self.degree(), len(self.terms),
                tuple((tuple(-x for x in e), c) for e, c in self.sorted_terms()))

    def __call__(self, point: Sequence):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute variable k := images[k] (all over a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        m = images[0].nvars
        out = MultiPoly.zero(m)
        powers: Dict[Tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(m, c)
            for k, x in enumerate(e):
                if x:
                    key = (k, x)
                    if key not in powers:
                        p = MultiPoly.const(m, 1)
                        for _ in range(x):
                            p = p * images[k]
                        powers[key] = p
                    term = term * powers[key]
            out = out + term
        return out

    def to_json(self) -> List[list]:
        return [[list(e), str(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data) -> "MultiPoly":
        return cls(nvars, [(tuple(e), Fraction(c)) for e, c in data])

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"z{k}" for k in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"


def determinant(entries: Sequence[Sequence[MultiPoly]], nvars: int) -> MultiPoly:
    """Laplace expansion along the first row (small matrices)."""
    n = len(entries)
    if n == 0:
        return MultiPoly.const(nvars, 1)
    return all_minors(entries, n, nvars)[(tuple(range(n)), tuple(range(n)))]


def all_minors(entries: Sequence[Sequence[MultiPoly]], k: int, nvars: int) -> Dict[Tuple[Exp, Exp], MultiPoly]:
    """All k x k minors keyed by (row subset, column subset), built size by size."""
    from itertools import combinations

    m = len(entries)
    n = len(entries[0]) if m else 0
    if k > min(m, n):
        return {}
    prev: Dict[Tuple[Exp, Exp], MultiPoly] = {((), ()): MultiPoly.const(nvars, 1)}
    for s in range(1, k + 1):
        cur = {}
        # expansion along the first row of each row subset reuses the (s-1)-minors
        # on the remaining rows, which are exactly the row subsets R[1:]
        for rows in combinations(range(m), s):
            first, rest = rows[0], rows[1:]
            for cols in combinations(range(n), s):
                total = MultiPoly.zero(nvars)
                for j, c in enumerate(cols):
                    a = entries[first][c]
                    if not a:
                        continue
                    sub = prev.get((rest, cols[:j] + cols[j + 1:]))
                    if sub:
                        total = total + (a * sub if j % 2 == 0 else -(a * sub))
                cur[(rows, cols)] = total
        prev = cur
    return prev

"""Exact scalar types: rationals, Gaussian rationals, rational functions in t.

Rationals are plain :class:`fractions.Fraction`.  The two other variants are
small immutable value classes that interoperate with ``int`` and ``Fraction``
operands (which are promoted) but never with each other.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple, Union

from ..errors import VariantMismatchError

Q = "Q"
QI = "Q(i)"
QT = "Q(t)"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


class GaussianRational:
    """re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _lift(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


# --- univariate polynomials over Q, coefficient tuples low -> high ---------

Poly1 = Tuple[Fraction, ...]


def _ptrim(p: Sequence[Fraction]) -> Poly1:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p: Poly1, q: Poly1) -> Poly1:
    n = max(len(p), len(q))
    return _ptrim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                   for i in range(n)])


def _pneg(p: Poly1) -> Poly1:
    return tuple(-c for c in p)


def _pmul(p: Poly1, q: Poly1) -> Poly1:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _ptrim(out)


def _pdivmod(p: Poly1, q: Poly1) -> Tuple[Poly1, Poly1]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(r) <= dq:
        return (), _ptrim(r)
    quo = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k] / lead
        if c == 0:
            continue
        quo[k - dq] = c
        for j in range(dq + 1):
            r[k - dq + j] -= c * q[j]
    return _ptrim(quo), _ptrim(r[:dq])


def _pmonic(p: Poly1) -> Poly1:
    lead = p[-1]
    return tuple(c / lead for c in p)


def _pgcd(p: Poly1, q: Poly1) -> Poly1:
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pmonic(p) if p else ()


def _peval(p: Poly1, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


class RationalFunction:
    """num(t)/den(t) over Q with coprime parts and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence = (), den: Sequence = (1,), _normal: bool = False):
        n = _ptrim([_frac(c) for c in num])
        d = _ptrim([_frac(c) for c in den])
        if not d:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normal:
            if not n:
                d = (Fraction(1),)
            else:
                g = _pgcd(n, d)
                if len(g) > 1:
                    n = _pdivmod(n, g)[0]
                    d = _pdivmod(d, g)[0]
                lead = d[-1]
                n = tuple(c / lead for c in n)
                d = tuple(c / lead for c in d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def t(cls) -> "RationalFunction":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "RationalFunction":
        """c * t**k, negative k allowed."""
        if k >= 0:
            return cls([0] * k + [c])
        return cls((c,), [0] * (-k) + [1])

    @staticmethod
    def _lift(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return RationalFunction((x,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(_padd(self.num, o.num), self.den)
        return RationalFunction(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
                                _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den, _normal=True)

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
        return RationalFunction(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("rational function division by zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(_ppow(self.num, n), _ppow(self.den, n))

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if len(self.den) == 1 and len(self.num) <= 1:
            return hash(self.num[0] if self.num else 0)
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def degree_size(self) -> int:
        return len(self.num) + len(self.den)

    def __call__(self, x):
        """Specialize t := x.  Raises ZeroDivisionError at a pole."""
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at t={x}")
        return _peval(self.num, x) / d

    def __repr__(self):
        return f"RationalFunction({_pstr(self.num)!r}, {_pstr(self.den)!r})"

    def __str__(self):
        if self.den == (1,):
            return _pstr(self.num)
        return f"({_pstr(self.num)})/({_pstr(self.den)})"


def _ppow(p: Poly1, n: int) -> Poly1:
    out: Poly1 = (Fraction(1),)
    for _ in range(n):
        out = _pmul(out, p)
    return out


def _pstr(p: Poly1) -> str:
    if not p:
        return "0"
    terms = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append(f"{c}*t")
        else:
            terms.append(f"{c}*t^{k}")
    return " + ".join(reversed(terms))


Scalar = Union[Fraction, GaussianRational, RationalFunction]


def variant_of(x) -> str | None:
    """Variant tag of a scalar; ``None`` for plain ints (variant-neutral)."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return None
    if isinstance(x, Fraction):
        return Q
    if isinstance(x, GaussianRational):
        return QI
    if isinstance(x, RationalFunction):
        return QT
    raise TypeError(f"not an exact scalar: {x!r}")


def coerce(x, variant: str) -> Scalar:
    """Promote an int (or a value already of ``variant``) into ``variant``."""
    v = variant_of(x)
    if v == variant:
        return x
    if v is None or (v == Q and variant != Q):
        if variant == Q:
            return Fraction(x)
        if variant == QI:
            return GaussianRational(x)
        if variant == QT:
            return RationalFunction((x,))
    raise VariantMismatchError(f"cannot use {v} scalar {x!r} as {variant}")


def bit_size(x) -> int:
    """Cheap size measure used for pivot selection."""
    if isinstance(x, int):
        return abs(x).bit_length()
    if isinstance(x, Fraction):
        return abs(x.numerator).bit_length() + x.denominator.bit_length()
    if isinstance(x, GaussianRational):
        return bit_size(x.re) + bit_size(x.im)
    if isinstance(x, RationalFunction):
        return 64 * x.degree_size() + sum(bit_size(c) for c in x.num + x.den)
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_scalar(text: str) -> Scalar:
    """Read "3/7", "-2", "1/2+3/4*i", "i" or "-5*i" as an exact scalar."""
    s = text.strip().replace(" ", "")
    if "i" not in s:
        return Fraction(s)
    body = s[:-1] if s.endswith("i") else None
    if body is None:
        raise ValueError(f"cannot parse scalar {text!r}")
    if body.endswith("*"):
        body = body[:-1]
    # split at the last +/- that is not the leading sign or part of an exponent
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    if cut > 0 and body[cut - 1] != "/":
        re_part, im_part = body[:cut], body[cut:]
    else:
        re_part, im_part = "0", body
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    return GaussianRational(Fraction(re_part), Fraction(im_part))


def format_scalar(x) -> str:
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussianRational):
        return str(x)
    return str(x)

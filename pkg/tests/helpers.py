"""Random samplers for tests: rationals, cocycles, flat and non-flat connections."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from jumploci.aomoto import FlatConnection, is_flat
from jumploci.cdga import Cdga
from jumploci.exact_linalg import SparseMatrix, kernel_basis
from jumploci.lie import LieAlgebra


def rand_frac(rng: random.Random, bound: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def rand_int_frac(rng: random.Random, bound: int = 2) -> Fraction:
    return Fraction(rng.randint(-bound, bound))


def cocycle_basis(a: Cdga) -> List[tuple]:
    n = a.dim(1)
    if a.dim(2) == 0:
        return [tuple(Fraction(int(i == k)) for i in range(n)) for k in range(n)]
    return kernel_basis(a.d_matrix(1))


def coboundary_preimage_space(a: Cdga, x: List[Fraction]):
    """Kernel of (y, u) -> (d y, x*y - d u): pairs with y a cocycle and x*y = d u."""
    n = a.dim(1)
    m = a.dim(2)
    d1 = a.d_matrix(1)
    lx = a.left_mult_matrix(1, x, 1)
    top = SparseMatrix.hstack([d1, SparseMatrix.zeros(m, n)])
    bottom = SparseMatrix.hstack([lx, -d1])
    return kernel_basis(SparseMatrix.vstack([top, bottom]))


def random_cocycle(a: Cdga, rng: random.Random, sampler=rand_frac) -> List[Fraction]:
    basis = cocycle_basis(a)
    out = [Fraction(0)] * a.dim(1)
    for v in basis:
        c = sampler(rng)
        out = [o + c * x for o, x in zip(out, v)]
    return out


def _combine(rng, basis, sampler, length):
    out = [Fraction(0)] * length
    for v in basis:
        c = sampler(rng)
        out = [o + c * x for o, x in zip(out, v)]
    return out


def random_flat(a: Cdga, e: LieAlgebra, rng: random.Random, sampler=rand_frac) -> FlatConnection:
    """A random flat connection in A^1 (x) e.

    abelian e: independent cocycles per basis element;
    Heisenberg-type e (only [x, y] = z): x, y cocycles with x*y = d u and
    z = -u + cocycle; otherwise omega = c (x) v with c a cocycle.
    """
    n = a.dim(1)
    if e.is_abelian():
        cols = [random_cocycle(a, rng, sampler) for _ in range(e.dim)]
        return FlatConnection.from_columns(cols, n)
    if e.dim == 3 and set(e.brackets) == {(0, 1)} and dict(e.brackets[(0, 1)]) == {2: Fraction(1)}:
        x = random_cocycle(a, rng, sampler)
        pairs = coboundary_preimage_space(a, x)
        yu = _combine(rng, pairs, sampler, 2 * n)
        y, u = yu[:n], yu[n:]
        z = [c - ui for c, ui in zip(random_cocycle(a, rng, sampler), u)]
        w = FlatConnection.from_columns([x, y, z], n)
        assert is_flat(a, e, w)
        return w
    c = random_cocycle(a, rng, sampler)
    v = [sampler(rng) for _ in range(e.dim)]
    return FlatConnection.from_columns([[vi * ci for ci in c] for vi in v], n)


def random_connection(a: Cdga, e: LieAlgebra, rng: random.Random, sampler=rand_frac) -> FlatConnection:
    n = a.dim(1)
    return FlatConnection.from_columns([[sampler(rng) for _ in range(n)] for _ in range(e.dim)], n)


def random_nonflat(a: Cdga, e: LieAlgebra, rng: random.Random, tries: int = 200) -> Optional[FlatConnection]:
    for _ in range(tries):
        w = random_connection(a, e, rng)
        if not is_flat(a, e, w):
            return w
    return None

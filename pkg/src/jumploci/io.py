"""JSON formats for CDGAs, Lie algebras, representations, arrangements and presentations.

Scalars are written as strings (``"-3/7"``, ``"1/2+i"``); integers are accepted on input.
Every document carries ``schema`` and ``schema_version``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

from .cdga import Cdga, GradedBasis
from .errors import InputError
from .exact_linalg import SparseMatrix, format_scalar, parse_scalar
from .group_side import Presentation
from .lie import LieAlgebra, LieRep
from .models import Arrangement

SCHEMA_VERSION = 1


def _num(x, where: str):
    if isinstance(x, bool):
        raise InputError(f"{where}: expected a number, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return parse_scalar(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: cannot parse scalar {x!r} ({exc})") from None
    raise InputError(f"{where}: numbers must be strings or integers, got {type(x).__name__}")


def _rational(x, where: str) -> Fraction:
    v = _num(x, where)
    if not isinstance(v, Fraction):
        raise InputError(f"{where}: expected a rational number, got {x!r}")
    return v


def _field(doc: Dict[str, Any], key: str, where: str):
    if key not in doc:
        raise InputError(f"{where}: missing field {key!r}")
    return doc[key]


def _check_header(doc, kind: str) -> None:
    if not isinstance(doc, dict):
        raise InputError(f"{kind}: top level must be a JSON object")
    schema = doc.get("schema")
    if schema is not None and schema != f"jumploci.{kind}":
        raise InputError(f"{kind}: schema is {schema!r}, expected 'jumploci.{kind}'")
    ver = doc.get("schema_version", SCHEMA_VERSION)
    if ver != SCHEMA_VERSION:
        raise InputError(f"{kind}: unsupported schema_version {ver!r}")


def _header(kind: str) -> Dict[str, Any]:
    return {"schema": f"jumploci.{kind}", "schema_version": SCHEMA_VERSION}


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# --- CDGA --------------------------------------------------------------------------


def cdga_from_json(doc) -> Cdga:
    _check_header(doc, "cdga")
    dims = _field(doc, "dims", "cdga")
    if not isinstance(dims, list) or not all(isinstance(d, int) and d >= 0 for d in dims):
        raise InputError("cdga.dims must be a list of non-negative integers")
    basis = GradedBasis(tuple(dims), tuple(doc.get("labels", ())))
    mult = {}
    for n, entry in enumerate(doc.get("mult", [])):
        where = f"cdga.mult[{n}]"
        if not (isinstance(entry, list) and len(entry) == 3):
            raise InputError(f"{where}: expected [i, j, [coeffs]]")
        i, j, coeffs = entry
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < basis.size and 0 <= j < basis.size):
            raise InputError(f"{where}: basis index out of range")
        deg = basis.degree_of(i) + basis.degree_of(j)
        if deg > basis.top:
            if any(_rational(c, where) for c in coeffs):
                raise InputError(f"{where}: nonzero product above the top degree")
            continue
        if len(coeffs) != basis.dim(deg):
            raise InputError(f"{where}: expected {basis.dim(deg)} coefficients in degree {deg}")
        off = basis.offset(deg)
        mult[(i, j)] = {off + k: _rational(c, where) for k, c in enumerate(coeffs) if _rational(c, where)}
    cols: Dict[int, Dict[int, Fraction]] = {}
    for n, entry in enumerate(doc.get("diff", [])):
        where = f"cdga.diff[{n}]"
        if not (isinstance(entry, list) and len(entry) == 2):
            raise InputError(f"{where}: expected [i, [coeffs]]")
        i, coeffs = entry
        if not (isinstance(i, int) and 0 <= i < basis.size):
            raise InputError(f"{where}: basis index out of range")
        deg = basis.degree_of(i)
        if len(coeffs) != basis.dim(deg + 1):
            raise InputError(f"{where}: expected {basis.dim(deg + 1)} coefficients in degree {deg + 1}")
        cols[i] = {k: _rational(c, where) for k, c in enumerate(coeffs)}
    diffs = []
    for deg in range(basis.top + 1):
        ents = [(k, basis.position(i)[1], v) for i in basis.indices(deg) for k, v in cols.get(i, {}).items() if v]
        diffs.append(SparseMatrix(basis.dim(deg + 1), basis.dim(deg), ents))
    weights = doc.get("weights")
    if weights is not None and not all(isinstance(w, int) for w in weights):
        raise InputError("cdga.weights must be integers")
    return Cdga(basis, mult, tuple(diffs), doc.get("unit", 0), bool(doc.get("complete", True)),
                None if weights is None else tuple(weights), doc.get("name", ""))


def cdga_to_json(a: Cdga) -> Dict[str, Any]:
    b = a.basis
    mult = []
    for (i, j), combo in sorted(a.mult.items()):
        deg = b.degree_of(i) + b.degree_of(j)
        vec = a.combo_to_vec(deg, combo)
        mult.append([i, j, [format_scalar(x) for x in vec]])
    diff = []
    for i in range(b.size):
        dx = a.d_basis(i)
        if dx:
            diff.append([i, [format_scalar(x) for x in a.combo_to_vec(b.degree_of(i) + 1, dx)]])
    out = dict(_header("cdga"), name=a.name, dims=list(b.dims), labels=list(b.labels), unit=a.unit,
               complete=a.complete, mult=mult, diff=diff)
    if a.weights is not None:
        out["weights"] = list(a.weights)
    return out


# --- Lie algebras and representations --------------------------------------------------


def lie_from_json(doc) -> LieAlgebra:
    _check_header(doc, "lie")
    dim = _field(doc, "dim", "lie")
    if not isinstance(dim, int) or dim < 0:
        raise InputError("lie.dim must be a non-negative integer")
    brackets = {}
    for n, entry in enumerate(doc.get("brackets", [])):
        where = f"lie.brackets[{n}]"
        if not (isinstance(entry, list) and len(entry) == 3 and len(entry[2]) == dim):
            raise InputError(f"{where}: expected [a, b, [dim coefficients]]")
        a_, b_, coeffs = entry
        if not (isinstance(a_, int) and isinstance(b_, int)) or not (0 <= a_ < dim and 0 <= b_ < dim) or a_ == b_:
            raise InputError(f"{where}: bad index pair")
        combo = {g: _rational(c, where) for g, c in enumerate(coeffs)}
        if a_ > b_:
            a_, b_, combo = b_, a_, {g: -v for g, v in combo.items()}
        brackets[(a_, b_)] = combo
    return LieAlgebra(dim, brackets, tuple(doc.get("labels", ())), doc.get("name", ""))


def lie_to_json(e: LieAlgebra) -> Dict[str, Any]:
    br = [[a_, b_, [str(combo.get(g, 0)) for g in range(e.dim)]] for (a_, b_), combo in sorted(e.brackets.items())]
    return dict(_header("lie"), name=e.name, dim=e.dim, labels=list(e.labels), brackets=br)


def _matrix(rows, n: int, where: str) -> SparseMatrix:
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InputError(f"{where}: expected a {n} x {n} matrix")
    return SparseMatrix.from_dense([[_num(x, where) for x in r] for r in rows], n)


def rep_from_json(doc, lie: LieAlgebra | None = None) -> LieRep:
    _check_header(doc, "rep")
    if "lie" in doc:
        lie = lie_from_json(doc["lie"])
    if lie is None:
        raise InputError("rep: no Lie algebra given")
    dimV = _field(doc, "dimV", "rep")
    mats = _field(doc, "matrices", "rep")
    if len(mats) != lie.dim:
        raise InputError("rep.matrices: one matrix per Lie basis element required")
    return LieRep(lie, dimV, tuple(_matrix(m, dimV, f"rep.matrices[{k}]") for k, m in enumerate(mats)))


def rep_to_json(r: LieRep) -> Dict[str, Any]:
    return dict(_header("rep"), lie=lie_to_json(r.lie), dimV=r.dimV,
                matrices=[[[format_scalar(x) for x in row] for row in m.to_dense()] for m in r.matrices])


# --- arrangements and presentations ---------------------------------------------------


def arrangement_from_json(doc) -> Arrangement:
    _check_header(doc, "arrangement")
    n = _field(doc, "ambientDim", "arrangement")
    if "affine" in doc:
        hyps = []
        for k, h in enumerate(doc["affine"]):
            where = f"arrangement.affine[{k}]"
            if not isinstance(h, list) or len(h) != n + 1:
                raise InputError(f"{where}: expected {n} normal coordinates followed by the constant")
            hyps.append(([_rational(x, where) for x in h[:n]], _rational(h[n], where)))
        arr = Arrangement.cone(n, hyps)
    else:
        normals = []
        for k, v in enumerate(_field(doc, "normals", "arrangement")):
            where = f"arrangement.normals[{k}]"
            if not isinstance(v, list) or len(v) != n:
                raise InputError(f"{where}: expected {n} coordinates")
            normals.append(tuple(_rational(x, where) for x in v))
        arr = Arrangement(n, tuple(normals))
    meta = dict(arr.metadata)
    if "name" in doc:
        meta["name"] = doc["name"]
    return Arrangement(arr.ambient_dim, arr.normals, meta)


def arrangement_to_json(arr: Arrangement) -> Dict[str, Any]:
    return dict(_header("arrangement"), ambientDim=arr.ambient_dim,
                normals=[[str(x) for x in v] for v in arr.normals], metadata=dict(arr.metadata))


def presentation_from_json(doc) -> Presentation:
    _check_header(doc, "presentation")
    gens = _field(doc, "generators", "presentation")
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise InputError("presentation.generators must be a list of strings")
    rels = _field(doc, "relators", "presentation")
    for k, w in enumerate(rels):
        if not isinstance(w, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in w):
            raise InputError(f"presentation.relators[{k}]: expected a list of signed generator indices")
    return Presentation(len(gens), tuple(tuple(w) for w in rels), tuple(gens), doc.get("name", ""))


def presentation_to_json(p: Presentation) -> Dict[str, Any]:
    return dict(_header("presentation"), name=p.name, generators=list(p.labels),
                relators=[list(w) for w in p.relators])


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


__all__: List[str] = [
    "SCHEMA_VERSION", "arrangement_from_json", "arrangement_to_json", "cdga_from_json", "cdga_to_json",
    "dumps", "lie_from_json", "lie_to_json", "loads", "presentation_from_json", "presentation_to_json",
    "rep_from_json", "rep_to_json",
]

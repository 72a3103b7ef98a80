"""Command-line front end.

Every command prints one JSON report ``{command, config, result, diagnostics}``.
Exit status: 0 success, 2 unreadable input, 3 violated precondition,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from . import io as jio
from .errors import InputError, InvariantBreach, PreconditionError
from .exact_linalg import format_scalar, parse_scalar

EXIT_INPUT, EXIT_PRECONDITION, EXIT_BREACH = 2, 3, 4


class _Inputs:
    """Resolves fixture names or JSON paths and records a digest for each."""

    def __init__(self):
        self.digests: Dict[str, str] = {}

    def _read(self, key: str, spec: str):
        if os.path.exists(spec):
            with open(spec, "rb") as fh:
                raw = fh.read()
            self.digests[key] = "sha256:" + hashlib.sha256(raw).hexdigest()
            return jio.loads(raw.decode("utf-8"), spec)
        if spec.endswith(".json"):
            raise InputError(f"{key}: file not found: {spec}")
        self.digests[key] = f"fixture:{spec.lower()}"
        return None

    def cdga(self, spec: str):
        from .models import fixture_cdga

        doc = self._read("cdga", spec)
        return fixture_cdga(spec) if doc is None else jio.cdga_from_json(doc)

    def lie(self, spec: str):
        from .models import preset_lie

        doc = self._read("lie", spec)
        return preset_lie(spec) if doc is None else jio.lie_from_json(doc)

    def presentation(self, spec: str):
        from .group_side import free_presentation, pencil_presentation, z2_presentation

        doc = self._read("presentation", spec)
        if doc is not None:
            return jio.presentation_from_json(doc)
        key = spec.lower()
        if key == "z2pres":
            return z2_presentation()
        if key in ("pencil3pres", "pencil_pres"):
            return pencil_presentation()
        if key.startswith("free"):
            try:
                return free_presentation(int(key[4:].strip("() ")))
            except ValueError:
                pass
        raise PreconditionError(f"unknown presentation {spec!r} (z2pres, pencil3pres, free(n), or a JSON file)")

    def arrangement(self, spec: str):
        from .models import boolean_arrangement, braid_arrangement, pencil_arrangement

        doc = self._read("arrangement", spec)
        if doc is not None:
            return jio.arrangement_from_json(doc)
        key = spec.lower()
        for prefix, make in (("pencil", pencil_arrangement), ("braid", braid_arrangement),
                             ("boolean", boolean_arrangement)):
            if key.startswith(prefix):
                try:
                    return make(int(key[len(prefix):].strip("() ")))
                except ValueError:
                    break
        raise PreconditionError(f"unknown arrangement {spec!r} (pencilN, braidN, booleanN, or a JSON file)")

    def rep(self, theta: str, lie_spec: Optional[str]):
        from .models import (adjoint_rep, heis3_standard_rep, rank_one_rep, solv2_standard_rep,
                             trivial_rep)

        if lie_spec is None:
            if theta not in ("id", "rank1"):
                raise InputError("--theta other than 'id' needs --lie")
            return rank_one_rep()
        doc = self._read("rep", theta) if theta.endswith(".json") or os.path.exists(theta) else None
        e = self.lie(lie_spec)
        if doc is not None:
            return jio.rep_from_json(doc, e)
        if theta == "adjoint":
            return adjoint_rep(e)
        if theta.startswith("trivial"):
            n = int(theta.split(":", 1)[1]) if ":" in theta else 1
            return trivial_rep(e, n)
        if theta == "standard":
            name = e.name.lower()
            if name == "heis3":
                return heis3_standard_rep()
            if name == "solv2":
                return solv2_standard_rep()
            raise PreconditionError(f"no standard representation for {e.name or 'this Lie algebra'}")
        if theta in ("id", "rank1"):
            if e.dim == 1 and e.is_abelian():
                return rank_one_rep()
            raise PreconditionError("theta = id is the rank-one setting and needs a one-dimensional abelian b")
        raise InputError(f"unknown --theta {theta!r}")


def _scalars(text: str, where: str) -> List:
    try:
        return [parse_scalar(x) for x in text.replace(" ", "").split(",") if x != ""]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _rows(text: str, where: str) -> List[List]:
    return [_scalars(row, where) for row in text.split(";") if row.strip()]


def _omega(text: str, a, lie_dim: int):
    from .aomoto import FlatConnection

    n = a.dim(1)
    if ";" in text:
        rows = _rows(text, "--omega")
        if len(rows) != n or any(len(r) != lie_dim for r in rows):
            raise InputError(f"--omega: expected {n} rows of {lie_dim} values")
        return FlatConnection(tuple(tuple(r) for r in rows), n, lie_dim)
    vals = _scalars(text, "--omega")
    if len(vals) != n * lie_dim:
        raise InputError(f"--omega: expected {n * lie_dim} values (A^1-major), got {len(vals)}")
    return FlatConnection.from_flat_vector(vals, n, lie_dim)


def _fmt(x) -> str:
    return format_scalar(x)


# --- commands ------------------------------------------------------------------------


def cmd_validate(args, inp: _Inputs) -> Dict[str, Any]:
    from .cdga import validate_cdga, validate_weights
    from .lie import validate_lie, validate_rep
    from .models import bigraded_weight_check

    out: Dict[str, Any] = {}
    if args.cdga:
        a = inp.cdga(args.cdga)
        v = validate_cdga(a)
        out["cdga"] = {"dims": list(a.basis.dims), "violations": [x.as_dict() for x in v]}
        if a.weights is not None:
            wv, positive = validate_weights(a)
            out["cdga"]["weights"] = {"violations": [x.as_dict() for x in wv], "positive": positive}
        if args.bidegrees:
            bd = [tuple(int(x) for x in p.split(",")) for p in args.bidegrees.split(";")]
            out["cdga"]["bigrading"] = [x.as_dict() for x in bigraded_weight_check(a, bd)]
    if args.lie:
        e = inp.lie(args.lie)
        out["lie"] = {"dim": e.dim, "violations": [x.as_dict() for x in validate_lie(e)]}
        if args.theta:
            r = inp.rep(args.theta, args.lie)
            out["rep"] = {"dimV": r.dimV, "violations": [x.as_dict() for x in validate_rep(r)]}
    if args.arrangement:
        arr = inp.arrangement(args.arrangement)
        out["arrangement"] = {"size": arr.size, "rank": arr.rank, "violations": []}
    if args.presentation:
        p = inp.presentation(args.presentation)
        out["presentation"] = {"generators": p.num_generators, "relators": len(p.relators), "violations": []}
    if not out:
        raise InputError("validate needs at least one of --cdga, --lie, --arrangement, --presentation")
    out["violations"] = [v for part in out.values() if isinstance(part, dict) for v in part.get("violations", [])]
    out["valid"] = not out["violations"]
    return out


def cmd_betti(args, inp: _Inputs) -> Dict[str, Any]:
    from .aomoto import aomoto_betti, is_flat, mc_residual

    a = inp.cdga(args.cdga)
    r = inp.rep(args.theta, args.lie)
    w = _omega(args.omega, a, r.lie.dim)
    if not is_flat(a, r.lie, w):
        res = mc_residual(a, r.lie, w)
        raise PreconditionError("omega is not flat; MC residual "
                                + str([[_fmt(x) for x in row] for row in res]))
    return {"betti": aomoto_betti(a, r, w, args.q), "dimV": r.dimV}


def cmd_mc(args, inp: _Inputs) -> Dict[str, Any]:
    from .aomoto import is_flat, mc_coordinates, mc_residual, variable_names

    a = inp.cdga(args.cdga)
    e = inp.lie(args.lie) if args.lie else inp.rep("id", None).lie
    names = variable_names(a, e)
    eqs = [{"a2": a2, "b": b, "poly": p.to_json(), "text": p.to_str(names)} for a2, b, p in mc_coordinates(a, e)]
    out: Dict[str, Any] = {"variables": names, "equations": eqs}
    if args.omega:
        w = _omega(args.omega, a, e.dim)
        out["residual"] = [[_fmt(x) for x in row] for row in mc_residual(a, e, w)]
        out["flat"] = is_flat(a, e, w)
    return out


def cmd_jumploci(args, inp: _Inputs) -> Dict[str, Any]:
    from .aomoto import jump_locus_generators

    a = inp.cdga(args.cdga)
    r = inp.rep(args.theta, args.lie)
    return jump_locus_generators(a, r, args.i, args.r).to_json()


def cmd_scan(args, inp: _Inputs) -> Dict[str, Any]:
    from .resonance import generic_betti, line_scan

    a = inp.cdga(args.cdga)
    r = inp.rep(args.theta, args.lie)
    w = _omega(args.omega, a, r.lie.dim)
    samples = _scalars(args.samples, "--samples")
    pts = line_scan(a, r, w, samples, args.i, weighted=args.weighted)
    out: Dict[str, Any] = {"samples": [{"t": _fmt(p.t), "flat": p.flat, "betti": p.betti} for p in pts]}
    vals = {p.betti for p in pts if p.flat}
    out["constant"] = len(vals) <= 1
    if args.generic:
        out["generic"] = generic_betti(a, r, w, args.i)
    return out


def cmd_components(args, inp: _Inputs) -> Dict[str, Any]:
    from .resonance import linear_components_rank_one

    a = inp.cdga(args.cdga)
    return linear_components_rank_one(a, args.i, args.r, args.budget, args.radius).to_json()


def cmd_wetc(args, inp: _Inputs) -> Dict[str, Any]:
    from .wetc import LaurentPoly, WeightFrame, wetc

    weights = [int(x) for x in args.weights.split(",")] if args.weights else None
    f = LaurentPoly.parse(args.poly, len(weights) if weights else None)
    if weights is None:
        weights = [1] * f.nvars
    if args.matrix:
        frame = WeightFrame(tuple(tuple(r) for r in _rows(args.matrix, "--matrix")), tuple(weights))
    else:
        frame = WeightFrame.standard(weights)
    spaces = wetc(f, frame)
    return {"polynomial": str(f), "subspaces": [s.to_json() for s in spaces]}


def cmd_fndeg(args, inp: _Inputs) -> Dict[str, Any]:
    from .resonance import fn_degeneration

    h = inp.cdga(args.cdga)
    nu = _scalars(args.nu, "--nu")
    p = inp.presentation(args.presentation) if args.presentation else None
    dic = _rows(args.dictionary, "--dictionary") if args.dictionary else None
    return fn_degeneration(h, nu, args.q, p, dic).to_json()


def cmd_os(args, inp: _Inputs) -> Dict[str, Any]:
    from .cdga import cohomology_dims
    from .models import circuits, os_algebra

    arr = inp.arrangement(args.arrangement)
    a = os_algebra(arr, args.q)
    q = min(args.q, a.top) if args.q is not None else a.top
    return {"circuits": [[k + 1 for k in c] for c in circuits(arr)],
            "betti": cohomology_dims(a, q) if a.known(q + 1) else list(a.basis.dims[: q + 1]),
            "cdga": jio.cdga_to_json(a)}


def cmd_foxbetti(args, inp: _Inputs) -> Dict[str, Any]:
    from .group_side import GroupRep, presentation_cochain_matrices, twisted_betti_low

    p = inp.presentation(args.presentation)
    vals = _scalars(args.chars, "--chars") if args.chars else [1] * p.num_generators
    if len(vals) != p.num_generators:
        raise InputError(f"--chars: expected {p.num_generators} values")
    rho = GroupRep.rank_one(vals)
    d0, d1 = presentation_cochain_matrices(p, rho)
    b0, b1 = twisted_betti_low(p, rho)
    return {"b0": b0, "b1": b1, "delta0": [[_fmt(x) for x in r] for r in d0.to_dense()],
            "delta1": [[_fmt(x) for x in r] for r in d1.to_dense()]}


def cmd_expcompare(args, inp: _Inputs) -> Dict[str, Any]:
    from .group_side import exp_compare

    a = inp.cdga(args.cdga)
    p = inp.presentation(args.presentation)
    omegas = _rows(args.omegas, "--omegas") if args.omegas else []
    rng = random.Random(args.seed)
    for _ in range(args.random):
        omegas.append([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(a.dim(1))])
    if not omegas:
        raise InputError("expcompare needs --omegas or --random")
    dic = _rows(args.dictionary, "--dictionary") if args.dictionary else None
    rep = exp_compare(a, p, dic, omegas, args.i, _scalars(args.ts, "--ts"), _scalars(args.germ_ts, "--germ-ts"),
                      args.rank_threshold, (args.guard_low, args.guard_high), claim=args.claim)
    return rep.to_json()


COMMANDS = {
    "validate": cmd_validate, "betti": cmd_betti, "mc": cmd_mc, "jumploci": cmd_jumploci, "scan": cmd_scan,
    "components": cmd_components, "wetc": cmd_wetc, "fndeg": cmd_fndeg, "os": cmd_os, "foxbetti": cmd_foxbetti,
    "expcompare": cmd_expcompare,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jumploci", description="Exact cohomology jump loci of CDGAs and groups.")
    ap.add_argument("--version", action="version", version=f"jumploci {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_, *, cdga=False, lie=False, theta=False, omega=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--threads", type=int, default=1, help="worker cap (recorded; computations are serial)")
        p.add_argument("--seed", type=int, default=0)
        if cdga:
            p.add_argument("--cdga", required=True, help="cdga JSON file or fixture name")
        if lie:
            p.add_argument("--lie", help="lie JSON file or preset (solv2, heis3, abelian(n))")
        if theta:
            p.add_argument("--theta", default="id", help="id | adjoint | trivial[:n] | standard | rep JSON")
        if omega:
            p.add_argument("--omega", required=True, help="comma list, A^1-major; or rows separated by ';'")
        return p

    p = sub.add_parser("validate", help="check axioms of input objects")
    for flag in ("--cdga", "--lie", "--theta", "--arrangement", "--presentation", "--bidegrees"):
        p.add_argument(flag)
    p.add_argument("--out")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = add("betti", "Aomoto-Betti numbers at a flat connection", cdga=True, lie=True, theta=True, omega=True)
    p.add_argument("-q", type=int, default=1)
    p = add("mc", "Maurer-Cartan equations", cdga=True, lie=True)
    p.add_argument("--omega")
    p = add("jumploci", "determinantal generators of a resonance variety", cdga=True, lie=True, theta=True)
    p.add_argument("-i", type=int, default=1)
    p.add_argument("-r", type=int, default=1)
    p = add("scan", "Betti numbers along a one-parameter family", cdga=True, lie=True, theta=True, omega=True)
    p.add_argument("--samples", default="1,2,3")
    p.add_argument("-i", type=int, default=1)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--generic", action="store_true", help="also report the Betti number over Q(t)")
    p = add("components", "certified linear components (rank one)", cdga=True)
    p.add_argument("-i", type=int, default=1)
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--radius", type=int, default=3)
    p = add("wetc", "weighted exponential tangent cone of a Laurent polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--weights")
    p.add_argument("--matrix", help="frame matrix, rows separated by ';'")
    p = add("fndeg", "degeneration check for a ring with zero differential", cdga=True)
    p.add_argument("--nu", required=True)
    p.add_argument("-q", type=int, default=2)
    p.add_argument("--presentation")
    p.add_argument("--dictionary")
    p = add("os", "Orlik-Solomon algebra of an arrangement")
    p.add_argument("--arrangement", required=True)
    p.add_argument("-q", type=int)
    p = add("foxbetti", "twisted Betti numbers b0, b1 at a rank-one character")
    p.add_argument("--presentation", required=True)
    p.add_argument("--chars", help="exact character values, one per generator")
    p = add("expcompare", "compare resonance with characteristic varieties via exp", cdga=True)
    p.add_argument("--presentation", required=True)
    p.add_argument("--omegas")
    p.add_argument("--random", type=int, default=0, help="number of extra seeded random samples")
    p.add_argument("--dictionary")
    p.add_argument("-i", type=int, default=1)
    p.add_argument("--ts", default="1/2,1,2")
    p.add_argument("--germ-ts", default="1/100,1/50")
    p.add_argument("--rank-threshold", type=float, default=1e-9)
    p.add_argument("--guard-low", type=float, default=1e-12)
    p.add_argument("--guard-high", type=float, default=1e-6)
    p.add_argument("--claim", default="", help="free-text note that both inputs model the same space")
    return ap


def _config(args) -> Dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out",)}


def run(argv: Sequence[str]) -> tuple[int, Dict[str, Any], Optional[str]]:
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv))
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else 0), {}, None
    inp = _Inputs()
    report: Dict[str, Any] = {"schema": "jumploci.report", "schema_version": jio.SCHEMA_VERSION,
                              "command": args.command, "version": __version__,
                              "config": _config(args), "result": None,
                              "diagnostics": {}}
    status = 0
    try:
        report["result"] = COMMANDS[args.command](args, inp)
    except InputError as exc:
        status, kind = EXIT_INPUT, "input"
        report["diagnostics"]["error"] = {"kind": kind, "message": str(exc)}
    except PreconditionError as exc:
        status = EXIT_PRECONDITION
        report["diagnostics"]["error"] = {"kind": "precondition", "contract": type(exc).__name__,
                                          "message": str(exc)}
    except (InvariantBreach, AssertionError) as exc:
        status = EXIT_BREACH
        report["diagnostics"]["error"] = {"kind": "invariant", "message": str(exc)}
    report["config"]["inputs"] = dict(sorted(inp.digests.items()))
    report["diagnostics"]["exit_status"] = status
    return status, report, args.out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    status, report, out = run(argv)
    if not report:
        return status
    text = jio.dumps(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status:
        sys.stderr.write(f"jumploci: {report['diagnostics']['error']['message']}\n")
    return status


if __name__ == "__main__":
    sys.exit(main())

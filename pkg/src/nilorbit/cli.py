"""Command-line front end.

Every verb loads one algebra (``--builtin`` or ``--algebra FILE``), runs one
operation and prints either a plain-text report or, with ``--json``, a
single JSON object with sorted keys. Indices are 0-based throughout.

Exit status: 0 on success, 1 when the input violates a mathematical
precondition, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import linalg as la
from .algebra import (
    LieAlgebra,
    Subspace,
    algebra_from_json,
    algebra_to_json,
    build_n_m,
    center,
    format_scalar,
    parse_scalar,
    validate,
)
from .coadjoint import (
    Functional,
    coadjoint_act,
    darboux_basis,
    functional_from_json,
    functional_to_json,
    orbit_dim,
    orbit_sample,
    radical,
    weight,
)
from .enveloping import eigenspace, induce, weyl_generators
from .errors import FormatError, NilorbitError, PreconditionError
from .polarisation import is_polarisation, slice_verdict, vergne_polarisation
from .superalgebra import (
    build_glmn_plus,
    build_super_heisenberg,
    classify_lambda,
    classify_quotient,
    format_audit,
    graded_polarisation,
    s_bound,
    weight_range_audit,
)
from .weyl import format_operator, format_poly


class UsageError(Exception):
    pass


def load_builtin(spec: str) -> LieAlgebra:
    if m := re.fullmatch(r"n_m:(\d+)", spec):
        return build_n_m(int(m.group(1)))
    if m := re.fullmatch(r"glmn:(\d+),(\d+)", spec):
        return build_glmn_plus(int(m.group(1)), int(m.group(2)))
    if spec == "super_heisenberg":
        return build_super_heisenberg()
    raise UsageError(f"unknown builtin {spec!r}; expected n_m:<m>, glmn:<m>,<n> or super_heisenberg")


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from exc


def parse_vector(alg: LieAlgebra, text: str, what: str = "--x") -> la.Vector:
    data = _json_arg(text, what)
    if not isinstance(data, dict) or not isinstance(data.get("coords"), dict):
        raise FormatError(f'{what} must look like {{"coords": {{"index": "p/q"}}}}')
    return alg.vector(data["coords"])


def parse_subspace(alg: LieAlgebra, text: str, what: str) -> Subspace:
    data = _json_arg(text, what)
    if not isinstance(data, dict) or not isinstance(data.get("rows"), list):
        raise FormatError(f'{what} must look like {{"rows": [{{"index": "p/q"}}, ...]}}')
    rows = []
    for r in data["rows"]:
        if not isinstance(r, dict):
            raise FormatError(f"{what}: every row is an object of sparse coordinates")
        rows.append(alg.vector(r))
    return Subspace.span(alg, rows)


def parse_params(text: str) -> list[tuple[int, Fraction]]:
    data = _json_arg(text, "--params")
    if not isinstance(data, list) or not all(isinstance(p, list) and len(p) == 2 for p in data):
        raise FormatError('--params must look like [[index, "t"], ...]')
    return [(int(i), parse_scalar(t)) for i, t in data]


def vector_json(v: Sequence[Fraction]) -> dict:
    return {str(i): format_scalar(c) for i, c in enumerate(v) if c}


def subspace_json(s: Subspace) -> dict:
    return {"dim": s.dim, "rows": [vector_json(r) for r in s.rows]}


def vector_text(alg: LieAlgebra, v: Sequence[Fraction]) -> str:
    out = ""
    for i, c in enumerate(v):
        if not c:
            continue
        body = alg.basis[i] if abs(c) == 1 else f"{format_scalar(abs(c))}·{alg.basis[i]}"
        if not out:
            out = ("−" if c < 0 else "") + body
        else:
            out += (" − " if c < 0 else " + ") + body
    return out or "0"


def functional_text(f: Functional) -> str:
    alg = f.ambient
    dual = LieAlgebra(alg.name, tuple(b + "*" for b in alg.basis), alg.parity, {})
    return vector_text(dual, f.coords)


def subspace_text(s: Subspace) -> str:
    lines = [f"dim {s.dim}"]
    lines += [f"  {vector_text(s.ambient, r)}" for r in s.rows]
    return "\n".join(lines)


class Report:
    """Text lines plus the JSON payload for one verb."""

    def __init__(self, text: str, data: dict, ok: bool = True, figure: Callable[[str], object] | None = None):
        self.text, self.data, self.ok, self.figure = text, data, ok, figure


def _need(args, name: str) -> str:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"{args.verb} needs --{name.replace('_', '-')}")
    return value


def _functional(args, alg: LieAlgebra, name: str = "f") -> Functional:
    text = _need(args, name)
    return functional_from_json(alg, _json_arg(text, f"--{name}"))


def _polarisation(args, alg: LieAlgebra, f: Functional) -> Subspace:
    if args.polarisation is None:
        return vergne_polarisation(f)
    p = parse_subspace(alg, args.polarisation, "--polarisation")
    if not is_polarisation(p, f):
        raise PreconditionError("--polarisation is not a polarisation of f")
    return p


def _flag(alg: LieAlgebra, text: str) -> list[Subspace]:
    data = _json_arg(text, "--flag")
    if not isinstance(data, dict) or not isinstance(data.get("basis"), list):
        raise FormatError('--flag must look like {"basis": [{...}, ...]}; member i is the span of the first i vectors')
    vecs = [alg.vector(r) for r in data["basis"]]
    return [Subspace.span(alg, vecs[: i + 1]) for i in range(len(vecs))]


def do_validate(args, alg):
    rep = validate(alg)
    lines = [f"algebra {alg.name or '-'} dim {alg.dim}"]
    if rep.ok:
        lines.append("valid")
    for v in rep.violations:
        lines.append(f"violation {v.axiom} on ({', '.join(v.triple)}): {v.detail}")
    cls = rep.nilpotency_class
    lines.append(f"nilpotency class {cls}" if cls is not None else "not nilpotent")
    data = {
        "valid": rep.ok,
        "violations": [{"axiom": v.axiom, "triple": list(v.triple), "detail": v.detail} for v in rep.violations],
        "nilpotency_class": cls,
        "lcs_dims": list(rep.lcs_dims),
    }
    return Report("\n".join(lines), data, ok=rep.ok and cls is not None)


def do_lcs(args, alg):
    terms = alg.lower_central_series
    dims = [t.dim for t in terms]
    text = "dims " + " ".join(map(str, dims))
    if not alg.is_nilpotent:
        text += "\nnot nilpotent: the series stabilises at a nonzero term"
    return Report(text, {"dims": dims, "terms": [subspace_json(t) for t in terms], "nilpotent": alg.is_nilpotent})


def do_center(args, alg):
    c = center(alg)
    return Report(subspace_text(c), subspace_json(c))


def do_orbit_dim(args, alg):
    d = orbit_dim(_functional(args, alg))
    return Report(str(d), {"orbit_dim": d})


def do_weight(args, alg):
    w = weight(_functional(args, alg))
    return Report(str(w), {"weight": w})


def do_radical(args, alg):
    r = radical(_functional(args, alg))
    return Report(subspace_text(r), subspace_json(r))


def do_darboux(args, alg):
    db = darboux_basis(_functional(args, alg))
    lines = [f"pairs {db.n}"]
    for k, (x, y) in enumerate(db.pairs, start=1):
        lines.append(f"  x{k} = {vector_text(alg, x)}")
        lines.append(f"  y{k} = {vector_text(alg, y)}")
    lines.append(f"kernel {len(db.kernel)}")
    lines += [f"  {vector_text(alg, v)}" for v in db.kernel]
    data = {
        "pairs": [[vector_json(x), vector_json(y)] for x, y in db.pairs],
        "kernel": [vector_json(v) for v in db.kernel],
    }
    return Report("\n".join(lines), data)


def do_polarise(args, alg):
    if alg.is_graded:
        sf = classify_lambda(_functional(args, alg, "lambda" if args.f is None else "f"))
        if args.flag is not None:
            raise UsageError("--flag is only supported for ordinary Lie algebras")
        p = graded_polarisation(sf)
    else:
        f = _functional(args, alg)
        p = vergne_polarisation(f, _flag(alg, args.flag) if args.flag is not None else None)
    return Report(subspace_text(p), subspace_json(p))


def do_is_polarisation(args, alg):
    f = _functional(args, alg)
    p = parse_subspace(alg, _need(args, "subspace"), "--subspace")
    ok = is_polarisation(p, f)
    return Report("yes" if ok else "no", {"is_polarisation": ok})


def do_slice_verdict(args, alg):
    f = _functional(args, alg)
    k = parse_subspace(alg, _need(args, "subspace"), "--subspace")
    mu = _functional(args, alg, "orbit_of") if args.orbit_of is not None else None
    v = slice_verdict(f, k, mu)
    data = {
        "status": v.status,
        "detail": v.detail,
        "module_count": v.module_count,
        "slice_dim": v.slice_dim,
        "orbit_dim": v.orbit_dim,
        "intersection_dim": v.intersection_dim,
        "meeting": v.meeting,
    }
    lines = [f"{key} {'-' if data[key] is None else data[key]}" for key in
             ("status", "module_count", "slice_dim", "orbit_dim", "intersection_dim", "meeting")]
    lines.append(v.detail)
    return Report("\n".join(lines), data)


def do_induce(args, alg):
    f = _functional(args, alg)
    rep = induce(f, _polarisation(args, alg, f))
    ops = {alg.basis[i]: format_operator(w) for i, w in enumerate(rep.rho)}
    lines = [f"variables {rep.r}", "complement " + " ".join(alg.basis[i] for i in rep.complement)]
    lines += [f"rho({name}) = {op}" for name, op in ops.items()]
    data = {
        "variables": rep.r,
        "complement": rep.complement,
        "polarisation": subspace_json(rep.polarisation),
        "rho": [format_operator(w) for w in rep.rho],
    }
    return Report("\n".join(lines), data)


def do_act(args, alg):
    f = _functional(args, alg)
    if (args.x is None) == (args.params is None):
        raise UsageError("act needs exactly one of --x and --params")
    if args.x is not None:
        out = coadjoint_act(parse_vector(alg, args.x), f)
    else:
        out = orbit_sample(f, parse_params(args.params))
    return Report(functional_text(out), functional_to_json(out))


def do_eigenspace(args, alg):
    f = _functional(args, alg)
    k = parse_subspace(alg, _need(args, "subspace"), "--subspace")
    rep = induce(f, _polarisation(args, alg, f))
    es = eigenspace(rep, k, f, args.degree_cap)
    lines = [f"dim {es.dim} (degree <= {es.degree_cap})"]
    lines += [f"  {format_poly(q)}" for q in es.basis]
    return Report("\n".join(lines), {"dim": es.dim, "degree_cap": es.degree_cap,
                                      "basis": [format_poly(q) for q in es.basis]})


def do_weyl_check(args, alg):
    f = _functional(args, alg)
    rep = induce(f, _polarisation(args, alg, f))
    gens = weyl_generators(rep, darboux_basis(f))
    lines = [f"pairs {len(gens)}"]
    for k, (x, y) in enumerate(gens, start=1):
        lines.append(f"  X{k} = {format_operator(x)}")
        lines.append(f"  Y{k} = {format_operator(y)}")
    lines.append("Weyl relations hold")
    return Report("\n".join(lines), {
        "pairs": [[format_operator(x), format_operator(y)] for x, y in gens], "relations_hold": True})


def do_super_classify(args, alg):
    lam = _functional(args, alg, "lambda")
    sf = classify_lambda(lam)
    shape = classify_quotient(sf)
    text = f"{shape.render()}, provenance: {shape.provenance}"
    return Report(text, {
        "s": shape.s, "n": shape.n, "two_block": shape.two_block, "provenance": shape.provenance,
        "shape": shape.render(), "in_Lambda": sf.in_Lambda, "in_Lambda_prime": sf.in_Lambda_prime,
    })


def do_s_table(args, alg=None):
    if args.max < 1:
        raise PreconditionError("--max must be at least 1")
    rows = [(i, s_bound(i).value) for i in range(1, args.max + 1)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "s_i"])
    w.writerows(rows)

    def figure(path):
        from .plotting import s_table_plot
        return s_table_plot(args.max, path)

    return Report(buf.getvalue().rstrip("\n"), {"rows": [list(r) for r in rows]}, figure=figure)


def do_audit(args, alg):
    rec = weight_range_audit(alg, args.trials, args.seed)

    def figure(path):
        from .plotting import audit_histogram
        return audit_histogram(rec, path)

    return Report(format_audit(rec), rec.as_dict(), figure=figure)


VERBS: dict[str, tuple[Callable, tuple[str, ...], str]] = {
    "validate": (do_validate, (), "check grading, antisymmetry, Jacobi and nilpotency"),
    "lcs": (do_lcs, (), "lower central series"),
    "center": (do_center, (), "center of the algebra"),
    "orbit-dim": (do_orbit_dim, ("f",), "dimension of the coadjoint orbit of f"),
    "weight": (do_weight, ("f",), "half the orbit dimension"),
    "radical": (do_radical, ("f",), "radical of the Kirillov form of f"),
    "darboux": (do_darboux, ("f",), "symplectic basis for the Kirillov form"),
    "polarise": (do_polarise, ("f", "lambda", "flag"), "Vergne polarisation (graded: p_0 + g_1)"),
    "is-polarisation": (do_is_polarisation, ("f", "subspace"), "test a subspace"),
    "slice-verdict": (do_slice_verdict, ("f", "subspace", "orbit_of"), "what is decidable about orbit meet f + k^T"),
    "induce": (do_induce, ("f", "polarisation"), "induced module as differential operators"),
    "act": (do_act, ("f", "x", "params"), "coadjoint action on f"),
    "eigenspace": (do_eigenspace, ("f", "subspace", "polarisation", "degree_cap"), "common k-eigenvectors"),
    "weyl-check": (do_weyl_check, ("f", "polarisation"), "verify Weyl relations of a Darboux basis"),
    "super-classify": (do_super_classify, ("lambda",), "shape of U/P for lambda in Lambda"),
    "s-table": (do_s_table, ("max",), "table of s_i"),
    "audit": (do_audit, ("trials", "seed"), "sampled weight range against the family bound"),
}

_OPTIONS = {
    "f": dict(help='functional, e.g. \'{"coords": {"2": "1"}}\''),
    "lambda": dict(dest="lambda_", metavar="LAMBDA", help="functional on a superalgebra"),
    "flag": dict(help='{"basis": [...]}: member i of the flag is the span of the first i vectors'),
    "subspace": dict(help='{"rows": [{"1": "1"}, ...]}'),
    "orbit_of": dict(help="representative of the orbit to intersect (default: f)"),
    "polarisation": dict(help="polarisation to induce from (default: Vergne)"),
    "x": dict(help='algebra element, e.g. \'{"coords": {"0": "1/2"}}\''),
    "params": dict(help='[[index, "t"], ...]; the rightmost factor acts first'),
    "degree_cap": dict(type=int, default=8, help="largest polynomial degree searched (default 8)"),
    "max": dict(type=int, default=10, help="largest i (default 10)"),
    "trials": dict(type=int, default=200, help="number of sampled functionals (default 200)"),
    "seed": dict(type=int, default=0, help="random seed (default 0)"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilorbit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, (_, opts, help_) in VERBS.items():
        p = sub.add_parser(verb, help=help_, description=help_)
        if verb != "s-table":
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--builtin", help="n_m:<m>, glmn:<m>,<n> or super_heisenberg")
            src.add_argument("--algebra", type=Path, help="algebra JSON file")
        for name in opts:
            p.add_argument("--" + name.replace("_", "-"), **_OPTIONS[name])
        p.add_argument("--json", action="store_true", help="print one JSON object instead of text")
        if verb in ("s-table", "audit"):
            p.add_argument("--figure", type=Path, help="also render a figure to this path")
    return parser


def _load(args) -> LieAlgebra | None:
    if args.verb == "s-table":
        return None
    if args.builtin is not None:
        return load_builtin(args.builtin)
    try:
        data = json.loads(args.algebra.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.algebra}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{args.algebra} is not valid JSON: {exc}") from exc
    return algebra_from_json(data)


def input_hash(args, alg: LieAlgebra | None) -> str:
    inputs = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())
              if k not in ("json", "figure", "algebra", "builtin")}
    if alg is not None:
        inputs["algebra"] = algebra_to_json(alg)
    blob = json.dumps(inputs, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "lambda_"):
        args.__dict__["lambda"] = args.__dict__.pop("lambda_")
    for name in _OPTIONS:
        if not hasattr(args, name):
            setattr(args, name, None)
    func = VERBS[args.verb][0]
    try:
        alg = _load(args)
        report = func(args, alg)
        if getattr(args, "figure", None) is not None and report.figure is not None:
            report.figure(args.figure)
    except UsageError as exc:
        print(f"nilorbit {args.verb}: {exc}", file=err)
        return 2
    except (NilorbitError, ValueError, ZeroDivisionError) as exc:
        print(f"nilorbit {args.verb}: {exc}", file=err)
        return 1
    if args.json:
        payload = {
            "verb": args.verb,
            "algebra": alg.name if alg is not None else None,
            "input_hash": input_hash(args, alg),
            "result": report.data,
        }
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False), file=out)
    else:
        print(report.text, file=out)
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())

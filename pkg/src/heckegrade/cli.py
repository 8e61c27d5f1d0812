"""Command-line interface: ``heckegrade {binom,jw,grading-check,hecke,double0}``.

Exit codes: 0 success, 1 a cross-check or validation failed, 2 usage or
schema error, 3 the requested object does not exist (or exceeds a size guard).
Tables go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import jsonschema

from . import arith
from .errors import (ConfigError, NonIntegralAtP, PoleAtZero, ProjectorMissing,
                     SizeLimit, UnsupportedBackend)
from .grading import (BarInvolution, CartanSpec, CoxeterMatrix, GradingGroup, GradingSpec,
                      build_bigrading, build_equal_grading, build_p_adapted_grading, build_class_grading,
                      equivalence_relation, validate)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_ABSENT = 0, 1, 2, 3

_VEC = {"type": "array", "items": {"type": "integer"}}
_MAT = {"type": "array", "items": _VEC}
_RAT = {"type": ["string", "integer"]}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["coxeter_matrix"],
    "additionalProperties": False,
    "properties": {
        "coxeter_matrix": {"type": "array", "minItems": 1,
                           "items": {"type": "array", "items": {"anyOf": [
                               {"type": "integer", "minimum": 1}, {"const": "inf"}]}}},
        "characteristic": {"type": "integer", "minimum": 0},
        "cartan": {"type": "array", "items": {"type": "array", "items": _RAT}},
        "grading": {"oneOf": [
            {"type": "object", "required": ["preset"], "additionalProperties": False,
             "properties": {"preset": {"enum": ["bigrading", "equal", "p_adapted", "unequal_classes"]}}},
            {"type": "object", "required": ["rank", "f", "g", "root_degrees"], "additionalProperties": False,
             "properties": {
                 "rank": {"type": "integer", "minimum": 0},
                 "relations": _MAT,
                 "names": {"type": "array", "items": {"type": "string"}},
                 "f": _MAT, "g": _MAT, "root_degrees": _MAT,
                 "extra_V_degrees": _MAT,
                 "bar": _MAT,
                 "for": _VEC,
                 "pos": _VEC}},
        ]},
        "parameters": _MAT,
    },
}


@dataclass
class RealizationConfig:
    matrix: CoxeterMatrix
    characteristic: int
    cartan: CartanSpec
    spec: Optional[GradingSpec]
    parameters: Optional[List[List[int]]]


def _rational(x) -> Fraction:
    try:
        return arith.parse_rational(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {x!r}") from exc


def load_config(doc) -> RealizationConfig:
    """Validate a parsed JSON document and build the library objects."""
    try:
        jsonschema.validate(doc, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise ConfigError(f"{path}: {exc.message}") from exc
    try:
        matrix = CoxeterMatrix(doc["coxeter_matrix"])
    except ValueError as exc:
        raise ConfigError(f"coxeter_matrix: {exc}") from exc
    n = matrix.size
    p = int(doc.get("characteristic", 0))
    if p and not arith.is_prime(p):
        raise ConfigError(f"characteristic {p} is neither 0 nor prime")
    pairings = {}
    if "cartan" in doc:
        cm = doc["cartan"]
        if len(cm) != n or any(len(r) != n for r in cm):
            raise ConfigError("cartan must be an |S| x |S| matrix")
        for s in range(n):
            if _rational(cm[s][s]) != 2:
                raise ConfigError("cartan diagonal entries must be 2")
            for t in range(n):
                if s != t:
                    pairings[(s, t)] = _rational(cm[s][t])
    cartan = CartanSpec(pairings, p)
    spec = _load_grading(doc.get("grading"), matrix, cartan) if "grading" in doc else None
    params = doc.get("parameters")
    if params is not None:
        if spec is None:
            raise ConfigError("parameters need a grading block (they are vectors in its group)")
        if len(params) != n or any(len(v) != spec.group.rank for v in params):
            raise ConfigError("parameters must give one group vector per generator")
    return RealizationConfig(matrix, p, cartan, spec, params)


def _load_grading(block, matrix: CoxeterMatrix, cartan: CartanSpec) -> GradingSpec:
    S = range(matrix.size)
    if "preset" in block:
        preset = block["preset"]
        if preset == "bigrading":
            return build_bigrading(S)
        if preset == "equal":
            return build_equal_grading(S)
        if preset == "p_adapted":
            return build_p_adapted_grading(matrix, cartan.characteristic)
        return build_class_grading(matrix, equivalence_relation(matrix, kind="unequal"))
    rank = block["rank"]
    rels = block.get("relations", [])
    if any(len(c) != rank for c in rels):
        raise ConfigError("each relation column must have length rank")
    try:
        grp = GradingGroup(rank, rels, block.get("names"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    def vecs(key, count):
        vs = block.get(key, [])
        if count is not None and len(vs) != count:
            raise ConfigError(f"grading.{key} needs {count} vectors")
        if any(len(v) != rank for v in vs):
            raise ConfigError(f"grading.{key} vectors must have length {rank}")
        return [grp.element(v) for v in vs]

    f = vecs("f", matrix.size)
    g = vecs("g", matrix.size)
    roots = vecs("root_degrees", matrix.size)
    extra = vecs("extra_V_degrees", None)
    bar = None
    if "bar" in block:
        try:
            bar = BarInvolution(grp, block["bar"])
        except ValueError as exc:
            raise ConfigError(f"grading.bar: {exc}") from exc
    for key in ("for", "pos"):
        if key in block and len(block[key]) != rank:
            raise ConfigError(f"grading.{key} must have length {rank}")
    return GradingSpec(grp, {s: f[s] for s in S}, {s: g[s] for s in S}, {s: roots[s] for s in S}, extra,
                       tuple(block["for"]) if "for" in block else None,
                       tuple(block["pos"]) if "pos" in block else None, bar)


def _read_config(path: str) -> RealizationConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc.msg}") from exc
    return load_config(doc)


def system_from_matrix(matrix: CoxeterMatrix):
    from .coxeter import CoxeterSystem
    n = matrix.size
    if n == 2:
        return CoxeterSystem.dihedral(matrix(0, 1))
    if matrix.m == CoxeterMatrix.type_a(n).m:
        return CoxeterSystem.symmetric(n + 1)
    raise UnsupportedBackend("only dihedral and type A Coxeter matrices have a backend")


# ------------------------------------------------------------ output helpers

def _emit_table(rows: Sequence[Sequence], header: Sequence[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        for r in rows:
            out.write("\t".join(str(x) for x in r) + "\n")


def _err(msg: str) -> None:
    sys.stderr.write(f"heckegrade: {msg}\n")


# ------------------------------------------------------------ commands

def cmd_binom(args) -> int:
    p = args.char
    if p and not arith.is_prime(p):
        _err(f"--char must be 0 or a prime, got {p}")
        return EXIT_USAGE
    if args.max_n < 0:
        _err("--max-n must be >= 0")
        return EXIT_USAGE
    rows, bad = [], []
    for n in range(args.max_n + 1):
        oracle = arith.gaussian_binom_at_i(n)
        for k in range(n + 1):
            val = arith.quantum_binom(n, k)(0)
            if val != arith.binom_at_zero_formula(n, k) or val != oracle[k]:
                bad.append((n, k))
            rows.append((n, k, val % p if p else val))
    _emit_table(rows, ("n", "k", "value"), args.format, sys.stdout)
    if bad:
        _err(f"oracle mismatch at {bad[:5]}")
        return EXIT_CHECK
    return EXIT_OK


def _parse_degrees(text: Optional[str]):
    from .temperley_lieb import TwoColorDegreeData
    if text is None:
        return TwoColorDegreeData.symbolic()
    parts = [p for p in text.split(";")] if ";" in text else [p for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError("--degrees needs four entries f_s,g_s,f_t,g_t (use ';' between vectors)")
    vecs = [[int(x) for x in part.split(",")] for part in parts]
    if len({len(v) for v in vecs}) != 1:
        raise ValueError("--degrees vectors must have equal length")
    grp = GradingGroup(len(vecs[0]))
    return TwoColorDegreeData(grp, *(grp.element(v) for v in vecs))


def cmd_jw(args) -> int:
    from . import temperley_lieb as tl
    p = args.char
    if p and not arith.is_prime(p):
        _err(f"--char must be 0 or a prime, got {p}")
        return EXIT_USAGE
    try:
        data = _parse_degrees(args.degrees)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    n = args.n
    two_step_ok = p == 0 and n % 2 == 1 and n >= 3
    if args.method == "two-step" and not two_step_ok:
        _err("two-step recursion needs characteristic 0 and odd n >= 3")
        return EXIT_USAGE if n % 2 == 1 or p else EXIT_ABSENT
    try:
        if args.method == "two-step":
            J = tl.jw_two_step(n)
        else:
            J = tl.projector(n, p)
        if two_step_ok and args.cross_check:
            other = tl.projector(n, 0) if args.method == "two-step" else tl.jw_two_step(n)
            if other != J:
                _err("generic-specialize and two-step results differ")
                return EXIT_CHECK
    except (ProjectorMissing, PoleAtZero, NonIntegralAtP) as exc:
        _err(f"projector does not exist: {exc}")
        return EXIT_ABSENT
    except SizeLimit as exc:
        _err(str(exc))
        return EXIT_ABSENT
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    verdict = None
    if args.check_homogeneity:
        pairs = tl.degree_pairs(J)
        degs = [(data.g_s - data.f_t) * int(a) + (data.g_t - data.f_s) * int(b) for a, b in pairs]
        verdict = all(d.is_zero() for d in degs)
    if args.format == "json":
        doc = J.to_json()
        if verdict is not None:
            doc["homogeneous"] = verdict
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    else:
        rows = []
        terms = J.sorted_terms()
        for m, c in terms:
            arcs = " ".join(f"{a[0]}{a[1]}-{b[0]}{b[1]}" for a, b in m.arcs)
            row = [arith.format_scalar(c), arcs]
            if verdict is not None:
                row.append(",".join(map(str, tl.degree(m, data).vector())))
            rows.append(row)
        header = ["coeff", "arcs"] + (["degree"] if verdict is not None else [])
        _emit_table(rows, header, args.format, sys.stdout)
        if verdict is not None:
            sys.stdout.write(f"verdict: {'homogeneous' if verdict else 'NOT homogeneous'}\n")
    return EXIT_OK if verdict in (None, True) else EXIT_CHECK


def cmd_grading_check(args) -> int:
    try:
        cfg = _read_config(args.config)
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_USAGE
    if cfg.spec is None:
        _err("config has no grading block")
        return EXIT_USAGE
    try:
        report = validate(cfg.spec, cfg.matrix, cfg.cartan, check_jw=not args.skip_jw)
    except ProjectorMissing as exc:
        _err(f"projector does not exist: {exc}")
        return EXIT_ABSENT
    for line in report.lines():
        sys.stdout.write(line + "\n")
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_hecke(args) -> int:
    from .coxeter import CoxeterSystem, parse_expression
    from .hecke import HeckeAlgebra, ParameterMap, bott_samelson, deodhar_expand
    try:
        if args.config:
            cfg = _read_config(args.config)
            system = system_from_matrix(cfg.matrix)
            if cfg.parameters is not None:
                grp = cfg.spec.group
                params = ParameterMap(system, grp, {s: grp.element(v) for s, v in enumerate(cfg.parameters)})
            else:
                params = ParameterMap.free(system)
        else:
            kind, _, val = args.system.partition(":")
            system = CoxeterSystem(kind, val if kind == "dihedral" else int(val))
            params = ParameterMap.free(system)
        expr = parse_expression(args.expression)
        if any(s >= system.rank for s in expr):
            raise ValueError("expression uses a generator outside S")
    except (ConfigError, UnsupportedBackend, ValueError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    alg = HeckeAlgebra(params)
    try:
        results = {}
        if args.method in ("iterative", "both"):
            results["iterative"] = bott_samelson(alg, expr)
        if args.method in ("deodhar", "both"):
            results["deodhar"] = deodhar_expand(alg, expr)
    except SizeLimit as exc:
        _err(str(exc))
        return EXIT_ABSENT
    h = next(iter(results.values()))
    if len(results) == 2 and results["iterative"] != results["deodhar"]:
        _err("Deodhar expansion differs from the iterative product")
        return EXIT_CHECK
    if args.format == "json":
        sys.stdout.write(json.dumps({"expression": args.expression, "names": list(alg.group.names),
                                     "expansion": h.to_json()}, indent=1) + "\n")
    else:
        rows = [(system.word_string(w) or "e", c.format()) for w, c in h.sorted_terms()]
        _emit_table(rows, ("element", "coefficient"), args.format, sys.stdout)
    return EXIT_OK


def cmd_double0(args) -> int:
    from . import dihedral_double0 as d0
    N = args.max_length
    if N < 1:
        _err("--max-length must be >= 1")
        return EXIT_USAGE
    if (args.verify or args.cells) and N < 8:
        _err("--verify and --cells need --max-length >= 8")
        return EXIT_USAGE
    basis = d0.compute_basis(N)
    status = EXIT_OK
    if args.format == "json":
        sys.stdout.write(d0.to_json(basis) + "\n")
    elif args.format == "csv":
        sys.stdout.write(d0.to_csv(basis))
    elif not args.cells:
        for name, coeffs in d0.basis_rows(basis):
            sys.stdout.write(f"b[{name}] = " + " + ".join(f"({c})*d[{y}]" for y, c in coeffs) + "\n")
    if args.verify:
        for rep in (d0.verify_closed_form(basis), d0.structure_constant_check(basis)):
            for line in rep.lines():
                sys.stderr.write(line + "\n")
            if not rep.passed:
                status = EXIT_CHECK
        sys.stderr.write("verify: " + ("all checks pass" if status == EXIT_OK else "FAILED") + "\n")
    if args.cells:
        rep = d0.compute_cells(basis, N)
        stream = sys.stdout if args.format == "text" else sys.stderr
        for line in rep.lines(basis.algebra.system):
            stream.write(line + "\n")
    return status


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heckegrade", description="Graded Hecke category computations.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("binom", help="δ=0 specialization table of quantum binomials")
    b.add_argument("--max-n", type=int, default=12)
    b.add_argument("--char", type=int, default=0)
    b.add_argument("--format", choices=["text", "csv", "json"], default="text")
    b.set_defaults(func=cmd_binom)

    j = sub.add_parser("jw", help="Jones-Wenzl projector at δ=0")
    j.add_argument("--n", type=int, required=True)
    j.add_argument("--char", type=int, default=0)
    j.add_argument("--method", choices=["generic-specialize", "two-step"], default="generic-specialize")
    j.add_argument("--check-homogeneity", action="store_true")
    j.add_argument("--degrees", help="f_s,g_s,f_t,g_t as integers, or vectors separated by ';'")
    j.add_argument("--no-cross-check", dest="cross_check", action="store_false",
                   help="skip the comparison with the other method")
    j.add_argument("--format", choices=["text", "csv", "json"], default="text")
    j.set_defaults(func=cmd_jw)

    g = sub.add_parser("grading-check", help="validate a grading configuration")
    g.add_argument("--config", required=True)
    g.add_argument("--skip-jw", action="store_true", help="skip the Jones-Wenzl homogeneity clause")
    g.set_defaults(func=cmd_grading_check)

    h = sub.add_parser("hecke", help="standard-basis expansion of a Bott-Samelson element")
    h.add_argument("--config")
    h.add_argument("--system", default="dihedral:inf", help="dihedral:M or symmetric:N when no config is given")
    h.add_argument("--expression", default="")
    h.add_argument("--method", choices=["iterative", "deodhar", "both"], default="both")
    h.add_argument("--format", choices=["text", "csv", "json"], default="text")
    h.set_defaults(func=cmd_hecke)

    d = sub.add_parser("double0", help="double-0 canonical basis of the infinite dihedral group")
    d.add_argument("--max-length", type=int, default=20)
    d.add_argument("--verify", action="store_true")
    d.add_argument("--cells", action="store_true")
    d.add_argument("--format", choices=["text", "csv", "json"], default="csv")
    d.set_defaults(func=cmd_double0)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

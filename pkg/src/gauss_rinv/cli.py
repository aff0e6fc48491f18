"""Batch front-end: spec ingestion, subcommand dispatch, JSON reporting.

Subcommands: solve | scaled-solve | verify | opnorm | bounded |
counterexample | suite.  Reports are deterministic given (spec, seed):
exact quantities serialize as rational strings, floats with a fixed
17-significant-digit format, and timing goes to stderr so repeated runs
emit byte-identical JSON.  Exit codes: 0 all checks pass, 1 a check
failed, 2 spec/validation error, 3 numeric failure.

The environment variable GAUSS_RINV_THREADS caps parallel fan-out of
independent verification cases; results are assembled in input order so
the report does not depend on the thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import __version__
from .adjoint import run_identity_battery
from .domains import (
    BoxDomain,
    SampledFunction,
    counterexample_report,
    embedding_check,
    solve_bounded,
)
from .hermite import WeightSpec, gauss_hermite_rule
from .linalg import SingularMatrixError
from .polynomials import (
    Polynomial,
    format_rational,
    parse_rational,
    random_polynomial,
)
from .reporting import dump_json
from .rightinverse import (
    DegreeOverflowError,
    GramConditionError,
    apply_right_inverse,
    operator_norm,
    solve_min_norm,
    solve_scaled,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SPEC = 2
EXIT_NUMERIC = 3


class SpecValidationError(ValueError):
    """Problem-spec validation failure, with the offending location."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


POLYNOMIAL_SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "coef": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
                },
                "required": ["exp", "coef"],
            },
        },
    },
    "required": ["dim", "terms"],
}

PROBLEM_SPEC_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "ProblemSpec",
    "type": "object",
    "properties": {
        "dimension": {"type": "integer", "minimum": 1},
        "a": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
        "weight": {
            "type": "object",
            "properties": {
                "lambda": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
                "center": {
                    "type": "array",
                    "items": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
                },
            },
        },
        "f": {
            "oneOf": [
                {"type": "string", "description": "const:<rational> or a file path"},
                POLYNOMIAL_SCHEMA,
            ]
        },
        "truncation": {"type": "integer", "minimum": 0},
        "enrichment": {"enum": ["auto", "axes", "none"]},
        "quad_order": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
    },
    "required": ["dimension", "a"],
    "additionalProperties": False,
}


def _rational_field(value, location: str) -> Fraction:
    try:
        return parse_rational(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecValidationError(location, f"invalid rational {value!r} ({exc})")


@dataclass
class ProblemSpec:
    """Validated problem description echoed into every report."""

    dimension: int
    a: Fraction = Fraction(0)
    lam: Fraction = Fraction(1)
    center: tuple[Fraction, ...] = ()
    f_label: str = "const:1"
    truncation: int | None = None
    enrichment: str = "auto"
    quad_order: int = 40
    seed: int = 42

    def __post_init__(self):
        if self.dimension < 1:
            raise SpecValidationError("dimension", f"must be >= 1, got {self.dimension}")
        if self.lam <= 0:
            raise SpecValidationError("weight.lambda", f"must be positive, got {self.lam}")
        if not self.center:
            self.center = (Fraction(0),) * self.dimension
        if len(self.center) != self.dimension:
            raise SpecValidationError(
                "weight.center", f"length {len(self.center)} != dimension {self.dimension}"
            )
        if self.enrichment not in ("auto", "axes", "none"):
            raise SpecValidationError("enrichment", f"unknown policy {self.enrichment!r}")
        if self.quad_order < 1:
            raise SpecValidationError("quad_order", "must be >= 1")
        if self.truncation is not None and self.truncation < 0:
            raise SpecValidationError("truncation", "must be >= 0")

    def weight(self) -> WeightSpec:
        return WeightSpec(dim=self.dimension, lam=self.lam, center=self.center)

    @classmethod
    def from_json_dict(cls, data) -> "ProblemSpec":
        """Validate a problem-spec document against the published schema."""
        if not isinstance(data, dict):
            raise SpecValidationError("$", "problem spec must be a JSON object")
        allowed = set(PROBLEM_SPEC_SCHEMA["properties"])
        for key in data:
            if key not in allowed:
                raise SpecValidationError(key, "unknown field")
        for required in PROBLEM_SPEC_SCHEMA["required"]:
            if required not in data:
                raise SpecValidationError(required, "missing required field")

        def _int(value, location, minimum=None):
            if not isinstance(value, int) or isinstance(value, bool):
                raise SpecValidationError(location, f"expected an integer, got {value!r}")
            if minimum is not None and value < minimum:
                raise SpecValidationError(location, f"must be >= {minimum}, got {value}")
            return value

        dimension = _int(data["dimension"], "dimension", minimum=1)
        weight = data.get("weight", {})
        if not isinstance(weight, dict):
            raise SpecValidationError("weight", "expected an object")
        center_raw = weight.get("center", [])
        if not isinstance(center_raw, list):
            raise SpecValidationError("weight.center", "expected an array")
        f_field = data.get("f", "const:1")
        if isinstance(f_field, str):
            f_label = f_field
        else:
            polynomial_from_json(f_field, location="f")
            f_label = "inline-polynomial"
        truncation = data.get("truncation")
        return cls(
            dimension=dimension,
            a=_rational_field(data["a"], "a"),
            lam=_rational_field(weight.get("lambda", "1"), "weight.lambda"),
            center=tuple(
                _rational_field(c, f"weight.center[{i}]")
                for i, c in enumerate(center_raw)
            ),
            f_label=f_label,
            truncation=None if truncation is None else _int(truncation, "truncation", minimum=0),
            enrichment=data.get("enrichment", "auto"),
            quad_order=_int(data.get("quad_order", 40), "quad_order", minimum=1),
            seed=_int(data.get("seed", 42), "seed"),
        )

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "a": format_rational(self.a),
            "weight": {
                "lambda": format_rational(self.lam),
                "center": [format_rational(c) for c in self.center],
            },
            "f": self.f_label,
            "truncation": self.truncation,
            "enrichment": self.enrichment,
            "quad_order": self.quad_order,
            "seed": self.seed,
        }


def load_polynomial(arg: str, dimension: int) -> Polynomial:
    """Resolve --f arguments: 'const:<rational>' or a polynomial JSON path."""
    if arg.startswith("const:"):
        value = _rational_field(arg[len("const:") :], "f.const")
        return Polynomial.constant(dimension, value)
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecValidationError("f", f"cannot read polynomial file {arg!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise SpecValidationError("f", f"malformed JSON in {arg!r}: {exc}")
    return polynomial_from_json(data, location="f")


def polynomial_from_json(data, location: str = "f") -> Polynomial:
    if not isinstance(data, dict):
        raise SpecValidationError(location, "polynomial must be a JSON object")
    if "dim" not in data or "terms" not in data:
        raise SpecValidationError(location, "polynomial needs 'dim' and 'terms'")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise SpecValidationError(f"{location}.dim", f"invalid dimension {dim!r}")
    terms = {}
    for i, entry in enumerate(data["terms"]):
        loc = f"{location}.terms[{i}]"
        if not isinstance(entry, dict) or "exp" not in entry or "coef" not in entry:
            raise SpecValidationError(loc, "term needs 'exp' and 'coef'")
        exp = entry["exp"]
        if (
            not isinstance(exp, list)
            or len(exp) != dim
            or any(not isinstance(e, int) or e < 0 for e in exp)
        ):
            raise SpecValidationError(f"{loc}.exp", f"invalid multi-index {exp!r}")
        coef = _rational_field(entry["coef"], f"{loc}.coef")
        terms[tuple(exp)] = terms.get(tuple(exp), Fraction(0)) + coef
    return Polynomial(dim, terms)


# ----------------------------------------------------------------------
# subcommand runners (each returns a results dict plus pass verdict)
# ----------------------------------------------------------------------


def _run_solve(spec: ProblemSpec, f: Polynomial) -> tuple[dict, bool]:
    weight = spec.weight()
    if weight.is_unit:
        report = apply_right_inverse(
            f, spec.a, truncation=spec.truncation, enrichment=spec.enrichment
        )
    else:
        # plane-wave enrichment is a unit-weight construction
        report = solve_scaled(f, spec.a, weight, truncation=spec.truncation)
    passed = report.residual_exact and (spec.a != 0 or report.bound_satisfied)
    return {"solve": report.to_json_dict()}, passed


def _run_scaled_solve(spec: ProblemSpec, f: Polynomial) -> tuple[dict, bool]:
    report = solve_scaled(f, spec.a, spec.weight(), truncation=spec.truncation)
    passed = report.residual_exact and (spec.a != 0 or report.bound_satisfied)
    return {"scaled_solve": report.to_json_dict()}, passed


def _run_verify(spec: ProblemSpec, cases: int, weight_cases: int, threads: int) -> tuple[list, bool]:
    results = run_identity_battery(
        seed=spec.seed,
        cases_per_identity=cases,
        weight_cases=weight_cases,
        threads=threads,
    )
    passed = all(c["pass"] for c in results)
    return results, passed


def _run_opnorm(spec: ProblemSpec) -> tuple[dict, bool]:
    degree = spec.truncation if spec.truncation is not None else 8
    value = operator_norm(spec.dimension, spec.a, degree, enrichment=spec.enrichment if spec.a != 0 else "none")
    target = 1.0 / math.sqrt(8.0 * spec.dimension)
    return {
        "opnorm": {
            "dim": spec.dimension,
            "a": format_rational(spec.a),
            "degree": degree,
            "value": value,
            "reference_bound": target,
        }
    }, True


def _run_bounded(
    spec: ProblemSpec,
    box: BoxDomain,
    f: SampledFunction,
    quad_tol: float,
) -> tuple[dict, bool]:
    degree = spec.truncation if spec.truncation is not None else 30
    report = solve_bounded(
        box, f, a=spec.a, truncation=degree, quad_tol=quad_tol
    )
    passed = report.bound_satisfied and report.projection_adequate and report.residual_exact
    return {"bounded": report.to_json_dict()}, passed


def _run_counterexample(r_max: float, c1: Fraction, c2: Fraction) -> tuple[dict, bool]:
    report = counterexample_report(r_max, c1, c2)
    passed = (
        report.u1_closed == report.u1_integral
        and report.closed_vs_integral_max_rel <= 1e-12
        and report.second_derivative_max_abs <= 1e-12
        and report.strictly_increasing
        and report.weighted_finite
    )
    return {"counterexample": report.to_json_dict()}, passed


# ----------------------------------------------------------------------
# the bundled acceptance battery
# ----------------------------------------------------------------------


def _enriched_ratio_quadrature(order: int) -> float:
    """Oracle for the a=1 constant-data enriched ratio, by quadrature.

    ratio = 1 - <1, cos>^2 / (||1||^2 ||cos||^2) with all three integrals
    against e^{-x^2} evaluated by the Gauss-Hermite rule.
    """
    rule = gauss_hermite_rule(order)
    pair = sum(w * math.cos(t) for t, w in zip(rule.nodes, rule.weights))
    cos_sq = sum(w * math.cos(t) ** 2 for t, w in zip(rule.nodes, rule.weights))
    mass = sum(rule.weights)
    return 1.0 - pair * pair / (mass * cos_sq)


def run_suite(
    seed: int = 42,
    cases_per_identity: int = 200,
    weight_cases: int = 50,
    bound_cases: int = 100,
    quad_order: int = 40,
    threads: int = 1,
) -> tuple[list[dict], bool]:
    """One-command reproduction of the full acceptance battery."""
    results: list[dict] = []

    def record(criterion: str, passed: bool, **details):
        entry = {"criterion": criterion, "pass": bool(passed)}
        entry.update(details)
        results.append(entry)

    # sharp bound at constant data, every dimension
    for n in (1, 2, 3):
        rep = solve_min_norm(Polynomial.constant(n, 1))
        record(
            f"sharp-bound-n{n}",
            rep.ratio == Fraction(1, 8 * n) and rep.residual_exact,
            ratio=format_rational(rep.ratio),
            bound=format_rational(rep.bound),
        )

    # bound dominance over seeded random data
    rng = random.Random(seed)
    worst = Fraction(0)
    dominated = True
    equality_only_const = True
    for i in range(bound_cases):
        n = 1 + i % 3
        f = random_polynomial(rng, n, max_degree=8, max_terms=10, nonzero=True)
        rep = solve_min_norm(f)
        margin = rep.bound - rep.ratio
        dominated = dominated and margin >= 0 and rep.residual_exact
        if rep.ratio == rep.bound and f.total_degree() > 0:
            equality_only_const = False
        worst = max(worst, rep.ratio * Fraction(8 * n))
    record(
        "bound-dominance",
        dominated and equality_only_const,
        cases=bound_cases,
        worst_normalized_ratio=format_rational(worst),
    )

    # operator norm of the truncated right inverse
    op1 = operator_norm(1, 0, 20)
    op2 = operator_norm(2, 0, 8)
    record(
        "operator-norm",
        abs(op1 - 1 / math.sqrt(8)) <= 1e-10 and abs(op2 - 0.25) <= 1e-10,
        n1_value=op1,
        n2_value=op2,
    )

    # kernel-enriched solves for nonzero shift
    rep_pos = apply_right_inverse(Polynomial.constant(1, 1), a=1)
    closed = 1.0 - 2.0 * math.exp(-0.5) / (1.0 + math.exp(-1.0))
    quad = _enriched_ratio_quadrature(quad_order)
    rep_neg = apply_right_inverse(Polynomial.constant(1, 1), a=-1)
    record(
        "kernel-enrichment",
        abs(rep_pos.ratio_float - closed) <= 1e-10
        and abs(closed - quad) <= 1e-10
        and rep_pos.bound_satisfied
        and rep_pos.pre_enrichment_ratio == 1
        and rep_neg.bound_satisfied,
        ratio_pos=rep_pos.ratio_float,
        closed_form=closed,
        quadrature=quad,
        unenriched_ratio=format_rational(rep_pos.pre_enrichment_ratio),
        ratio_neg=rep_neg.ratio_float,
    )

    # exact identity battery
    cases = run_identity_battery(
        seed=seed,
        cases_per_identity=cases_per_identity,
        weight_cases=weight_cases,
        threads=threads,
    )
    record(
        "identity-battery",
        all(c["pass"] for c in cases),
        total=len(cases),
        failures=[c["id"] for c in cases if not c["pass"]],
    )

    # scaled weight
    w2 = WeightSpec(dim=1, lam=Fraction(2))
    rep_s = solve_scaled(Polynomial.constant(1, 1), 0, w2)
    rep_u = solve_scaled(Polynomial.constant(1, 1), 0, WeightSpec.unit(1))
    rep_base = solve_min_norm(Polynomial.constant(1, 1))
    record(
        "scaled-weight",
        rep_s.ratio == Fraction(1, 32)
        and rep_u.solution.coeffs == rep_base.solution.coeffs
        and rep_u.ratio == rep_base.ratio,
        ratio=format_rational(rep_s.ratio),
    )

    # bounded domain
    box = BoxDomain(((-1.0, 1.0),))
    rep_b = solve_bounded(box, SampledFunction.constant(box, 1.0), a=0, truncation=30, quad_tol=1e-10)
    record(
        "bounded-domain",
        rep_b.bound_satisfied and rep_b.projection_adequate and rep_b.residual_exact,
        norm_u_l2=rep_b.norm_u_l2,
        bound_value=rep_b.bound_value,
        weak_residual=rep_b.weak_residual_rel,
    )

    # counterexample
    _, passed_ce = _run_counterexample(1000.0, Fraction(0), Fraction(0))
    record("counterexample", passed_ce)

    # embeddings
    emb_const = embedding_check(Polynomial.constant(1, 1))
    pi_mass = math.pi**0.5
    equality_witness = abs(emb_const.weighted_sq - pi_mass * emb_const.sup_sq) <= 1e-12
    box01 = BoxDomain(((0.0, 1.0),))
    emb_chi = embedding_check(SampledFunction.constant(box01, 1.0))
    cut = BoxDomain(((-2.0, 2.0), (-1.0, 1.0)))
    poly = Polynomial(2, {(1, 0): Fraction(1), (0, 2): Fraction(1, 3)})
    emb_poly = embedding_check(SampledFunction.from_polynomial(poly, cut))
    record(
        "embeddings",
        emb_const.holds and equality_witness and emb_chi.holds and emb_poly.holds,
        const=emb_const.to_json_dict(),
        indicator=emb_chi.to_json_dict(),
        polynomial_cutoff=emb_poly.to_json_dict(),
    )

    return results, all(r["pass"] for r in results)


# ----------------------------------------------------------------------
# argument parsing and dispatch
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gauss-rinv",
        description="Right inverse of lap + a on Gaussian-weighted L2: solvers and exact identity checks.",
    )
    parser.add_argument(
        "--json-schema",
        action="store_true",
        help="print the problem-spec JSON schema and exit",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this path instead of stdout")
    common.add_argument("--seed", type=int, default=42, help="master seed for random corpora")
    common.add_argument("--quad-order", type=int, default=40, help="Gauss-Hermite order for float cross-checks")
    sub = parser.add_subparsers(dest="command")

    p_solve = sub.add_parser(
        "solve", parents=[common], help="minimal-norm solve of (lap+a)u = f"
    )
    p_solve.add_argument("--dim", type=int, required=True)
    p_solve.add_argument("--a", default="0", help="rational shift, e.g. 1, -2, 1/2")
    p_solve.add_argument("--lambda", dest="lam", default="1", help="rational weight scale")
    p_solve.add_argument("--center", default="", help="comma-separated rational weight center")
    p_solve.add_argument("--degree", type=int, default=None, help="truncation degree N")
    p_solve.add_argument("--enrich", choices=("auto", "axes", "none"), default="auto")
    p_solve.add_argument("--f", required=True, help="const:<rational> or polynomial JSON path")

    p_scaled = sub.add_parser("scaled-solve", parents=[common], help="solve under the weight lam*|x-x0|^2")
    p_scaled.add_argument("--dim", type=int, required=True)
    p_scaled.add_argument("--a", default="0")
    p_scaled.add_argument("--lambda", dest="lam", default="1", help="rational scale")
    p_scaled.add_argument("--center", default="", help="comma-separated rationals")
    p_scaled.add_argument("--degree", type=int, default=None)
    p_scaled.add_argument("--f", required=True)

    p_verify = sub.add_parser("verify", parents=[common], help="run the exact identity corpus")
    p_verify.add_argument("--cases", type=int, default=200, help="cases per identity")
    p_verify.add_argument("--weight-cases", type=int, default=50)

    p_opnorm = sub.add_parser("opnorm", parents=[common], help="operator norm of the truncated right inverse")
    p_opnorm.add_argument("--dim", type=int, required=True)
    p_opnorm.add_argument("--a", default="0")
    p_opnorm.add_argument("--degree", type=int, default=8)
    p_opnorm.add_argument("--enrich", choices=("auto", "axes", "none"), default="none")

    p_bounded = sub.add_parser("bounded", parents=[common], help="bounded-domain solve with the diameter constant")
    p_bounded.add_argument("--box", required=True, help="'lo1,hi1;lo2,hi2;...'")
    p_bounded.add_argument("--f", required=True, help="const:<v> | poly:<path> | expr-grid:<path>")
    p_bounded.add_argument("--a", default="0")
    p_bounded.add_argument("--degree", type=int, default=30)
    p_bounded.add_argument("--quad-tol", type=float, default=1e-10)

    p_ce = sub.add_parser("counterexample", parents=[common], help="unweighted-L2 failure demonstration")
    p_ce.add_argument("--R", type=float, default=1000.0)
    p_ce.add_argument("--c1", default="0")
    p_ce.add_argument("--c2", default="0")

    p_suite = sub.add_parser("suite", parents=[common], help="full acceptance battery, one command")
    p_suite.add_argument("--cases", type=int, default=200)
    p_suite.add_argument("--weight-cases", type=int, default=50)
    p_suite.add_argument("--bound-cases", type=int, default=100)

    return parser


def _load_bounded_f(arg: str, box: BoxDomain) -> SampledFunction:
    if arg.startswith("const:"):
        value = _rational_field(arg[len("const:") :], "f.const")
        return SampledFunction.constant(box, float(value))
    if arg.startswith("poly:"):
        poly = load_polynomial(arg[len("poly:") :], box.dim)
        if poly.dim != box.dim:
            raise SpecValidationError("f", f"polynomial dimension {poly.dim} != box dimension {box.dim}")
        return SampledFunction.from_polynomial(poly, box)
    if arg.startswith("expr-grid:"):
        path = arg[len("expr-grid:") :]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecValidationError("f", f"cannot read grid file {path!r}: {exc}")
        if "shape" not in data or "values" not in data:
            raise SpecValidationError("f", "grid file needs 'shape' and 'values'")
        return SampledFunction.from_grid(box, data["shape"], data["values"])
    raise SpecValidationError("f", f"unrecognized data descriptor {arg!r}")


def _threads_from_env() -> int:
    raw = os.environ.get("GAUSS_RINV_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.json_schema:
        sys.stdout.write(dump_json(PROBLEM_SPEC_SCHEMA, indent=2))
        return EXIT_OK
    if not args.command:
        parser.print_help()
        return EXIT_SPEC

    started = time.perf_counter()
    try:
        spec, results, passed = _dispatch(args)
    except SpecValidationError as exc:
        sys.stderr.write(f"spec error at {exc.location}: {exc}\n")
        return EXIT_SPEC
    except DegreeOverflowError as exc:
        sys.stderr.write(f"spec error: {exc}\n")
        return EXIT_SPEC
    except (GramConditionError, SingularMatrixError, OverflowError, ZeroDivisionError) as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC

    report = {
        "spec": spec,
        "subcommand": args.command,
        "results": results,
        "pass": passed,
        "version": __version__,
    }
    text = dump_json(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    elapsed = time.perf_counter() - started
    sys.stderr.write(f"gauss-rinv {args.command}: {'pass' if passed else 'FAIL'} ({elapsed:.2f}s)\n")
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _dispatch(args) -> tuple[dict, dict | list, bool]:
    threads = _threads_from_env()
    if args.command == "solve":
        center = (
            tuple(_rational_field(v, "weight.center") for v in args.center.split(","))
            if args.center
            else ()
        )
        spec = ProblemSpec(
            dimension=args.dim,
            a=_rational_field(args.a, "a"),
            lam=_rational_field(args.lam, "weight.lambda"),
            center=center,
            f_label=args.f,
            truncation=args.degree,
            enrichment=args.enrich,
            quad_order=args.quad_order,
            seed=args.seed,
        )
        f = load_polynomial(args.f, spec.dimension)
        if f.dim != spec.dimension:
            raise SpecValidationError("f", f"dimension {f.dim} != --dim {spec.dimension}")
        results, passed = _run_solve(spec, f)
        return spec.to_json_dict(), results, passed

    if args.command == "scaled-solve":
        center = (
            tuple(_rational_field(v, "weight.center") for v in args.center.split(","))
            if args.center
            else ()
        )
        spec = ProblemSpec(
            dimension=args.dim,
            a=_rational_field(args.a, "a"),
            lam=_rational_field(args.lam, "weight.lambda"),
            center=center,
            f_label=args.f,
            truncation=args.degree,
            quad_order=args.quad_order,
            seed=args.seed,
        )
        f = load_polynomial(args.f, spec.dimension)
        if f.dim != spec.dimension:
            raise SpecValidationError("f", f"dimension {f.dim} != --dim {spec.dimension}")
        results, passed = _run_scaled_solve(spec, f)
        return spec.to_json_dict(), results, passed

    if args.command == "verify":
        spec_echo = {
            "seed": args.seed,
            "cases_per_identity": args.cases,
            "weight_cases": args.weight_cases,
            "threads": threads,
        }
        spec = ProblemSpec(dimension=1, seed=args.seed, quad_order=args.quad_order)
        results, passed = _run_verify(spec, args.cases, args.weight_cases, threads)
        return spec_echo, results, passed

    if args.command == "opnorm":
        spec = ProblemSpec(
            dimension=args.dim,
            a=_rational_field(args.a, "a"),
            truncation=args.degree,
            enrichment=args.enrich,
            quad_order=args.quad_order,
            seed=args.seed,
        )
        results, passed = _run_opnorm(spec)
        return spec.to_json_dict(), results, passed

    if args.command == "bounded":
        try:
            box = BoxDomain.from_string(args.box)
        except (ValueError, IndexError) as exc:
            raise SpecValidationError("box", f"cannot parse {args.box!r}: {exc}")
        spec = ProblemSpec(
            dimension=box.dim,
            a=_rational_field(args.a, "a"),
            f_label=args.f,
            truncation=args.degree,
            quad_order=args.quad_order,
            seed=args.seed,
        )
        f = _load_bounded_f(args.f, box)
        results, passed = _run_bounded(spec, box, f, args.quad_tol)
        return spec.to_json_dict(), results, passed

    if args.command == "counterexample":
        c1 = _rational_field(args.c1, "c1")
        c2 = _rational_field(args.c2, "c2")
        if args.R < 1.0:
            raise SpecValidationError("R", f"must be >= 1, got {args.R}")
        spec_echo = {"R": args.R, "c1": format_rational(c1), "c2": format_rational(c2)}
        results, passed = _run_counterexample(args.R, c1, c2)
        return spec_echo, results, passed

    if args.command == "suite":
        spec_echo = {
            "seed": args.seed,
            "cases_per_identity": args.cases,
            "weight_cases": args.weight_cases,
            "bound_cases": args.bound_cases,
            "quad_order": args.quad_order,
            "threads": threads,
        }
        results, passed = run_suite(
            seed=args.seed,
            cases_per_identity=args.cases,
            weight_cases=args.weight_cases,
            bound_cases=args.bound_cases,
            quad_order=args.quad_order,
            threads=threads,
        )
        return spec_echo, {"criteria": results}, passed

    raise SpecValidationError("command", f"unknown subcommand {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())

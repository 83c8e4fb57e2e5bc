"""Command-line front end.

Exit codes: 0 success (or identity holds), 1 identity violated, 2 usage or
parse error, 3 invalid spec.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import product

from . import registry
from .algebroid import InvalidSpecError, differential, schouten_bracket
from .bv import (
    GeneratingOperator,
    all_frame_monomials,
    connection_recovery,
    curvature,
    curvature_vs_dsquared,
    derivation_check,
    extend,
    generator_check,
)
from .graded import Form, MultiVector
from .homology import (
    BaseDimensionError,
    NotFlatError,
    StarOperator,
    betti,
    duality_check,
    dw_contraction_identity,
    matrices_to_json,
    star,
)
from .parsing import ParseError, parse_expression, parse_poly, render, render_scalar
from .sampling import max_degree_from_env, random_form, random_multivector
from .specfile import load_spec, spec_to_dict

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3

# verb -> allowed counts of --expr
ARITY = {
    "validate": (0,),
    "bracket": (2,),
    "diff": (1,),
    "extend": (1,),
    "check-generator": (0, 2),
    "check-derivation": (0, 2),
    "curvature": (0, 2),
    "check-curvature-relation": (0, 2),
    "check-recovery": (0, 1, 2),
    "check-dw-identity": (0, 2),
    "star": (1,),
    "homology": (0,),
    "duality": (0,),
    "examples": (0,),
}


class UsageError(Exception):
    pass


class Violated(Exception):
    """An identity failed; carries the rendered report."""

    def __init__(self, payload):
        super().__init__("identity violated")
        self.payload = payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gerber", description="Exact BV-generator checks for Lie algebroids.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb in ARITY:
        p = sub.add_parser(verb)
        src = p.add_mutually_exclusive_group(required=verb != "examples")
        src.add_argument("--spec", help="path to a JSON algebroid spec")
        src.add_argument("--example", help="name of a built-in example")
        p.add_argument("--expr", action="append", default=[], help="expression argument (repeatable, ordered)")
        p.add_argument("--theta", help="comma-separated connection coefficients, overriding the spec")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("--samples", type=int, default=20, help="random samples per randomized check")
        if verb == "homology":
            p.add_argument("--direction", choices=("homology", "cohomology"), default="homology")
    return parser


def _load(args):
    if args.spec:
        try:
            spec, theta = load_spec(args.spec)
        except OSError as exc:
            raise UsageError(f"cannot read spec file: {exc}") from None
    else:
        try:
            spec, theta = registry.get(args.example)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if args.theta is not None:
        parts = [s for s in args.theta.split(",")]
        if len(parts) != spec.rank:
            raise UsageError(f"--theta needs {spec.rank} comma-separated polynomials")
        theta = tuple(parse_poly(s, spec.base_vars) for s in parts)
    return spec, theta


def _mv(text, spec):
    return parse_expression(text, spec, kind="multivector")


def _form(text, spec):
    return parse_expression(text, spec, kind="form")


def _pairs(spec, rng, samples, max_degree):
    """All frame-monomial pairs followed by random homogeneous pairs."""
    basis = all_frame_monomials(spec)
    yield from product(basis, basis)
    for _ in range(samples):
        yield (random_multivector(rng, spec, rng.randint(0, spec.rank), max_degree),
               random_multivector(rng, spec, rng.randint(0, spec.rank), max_degree))


def _run_check(spec, label, inputs, fn):
    failures = []
    count = 0
    for args in inputs:
        count += 1
        r = fn(*args)
        if r:
            failures.append({"inputs": [render(a, spec) for a in args], "residual": render(r, spec)})
    payload = {"check": label, "ok": not failures, "checked": count, "failures": failures}
    if failures:
        raise Violated(payload)
    return payload


def _text_check(payload):
    if payload["ok"]:
        return f"ok ({payload['checked']} checked)"
    lines = [f"{payload['check']}: {len(payload['failures'])} of {payload['checked']} inputs fail"]
    for f in payload["failures"][:10]:
        lines.append(f"  inputs {f['inputs']}: residual {f['residual']}")
    return "\n".join(lines)


def dispatch(args):
    """Run one verb; returns a JSON-able payload and its text rendering."""
    if args.verb == "examples":
        if args.example:
            spec, theta = _load(args)
            doc = spec_to_dict(spec, theta)
            return doc, json.dumps(doc, indent=2, sort_keys=True)
        return {"examples": list(registry.NAMES)}, "\n".join(registry.NAMES)

    spec, theta = _load(args)
    exprs = args.expr
    if len(exprs) not in ARITY[args.verb]:
        allowed = " or ".join(str(k) for k in ARITY[args.verb])
        raise UsageError(f"{args.verb} takes {allowed} --expr arguments, got {len(exprs)}")

    if args.verb == "validate":
        report = spec.validation
        payload = {
            "ok": report.ok,
            "violations": [
                {"identity": v.identity, "witness": list(v.witness), "residual": render_scalar(v.residual, spec)}
                for v in report.violations
            ],
        }
        if not report.ok:
            text = "\n".join(f"{v['identity']} fails at {v['witness']}: {v['residual']}" for v in payload["violations"])
            raise InvalidSpecError(text)
        return payload, "ok"

    spec.require_valid()
    op = GeneratingOperator.from_spec(spec, theta)
    rng = random.Random(args.seed)
    max_degree = max_degree_from_env()
    samples = args.samples

    def result(value):
        text = render_scalar(value, spec) if not isinstance(value, (MultiVector, Form)) else render(value, spec)
        return {"result": text}, text

    v = args.verb
    if v == "bracket":
        return result(schouten_bracket(spec, _mv(exprs[0], spec), _mv(exprs[1], spec)))
    if v == "diff":
        return result(differential(spec, _form(exprs[0], spec)))
    if v == "extend":
        return result(extend(op, _mv(exprs[0], spec)))
    if v == "star":
        return result(star(StarOperator(spec), _form(exprs[0], spec)))
    if v == "curvature":
        if exprs:
            return result(curvature(op.connection, _mv(exprs[0], spec), _mv(exprs[1], spec)))
        table = {}
        for i in range(spec.rank):
            for j in range(i + 1, spec.rank):
                r = curvature(op.connection, spec.frame_section(i), spec.frame_section(j))
                table[f"{spec.frame[i]},{spec.frame[j]}"] = render_scalar(r, spec)
        text = "\n".join(f"R({k}) = {val}" for k, val in table.items()) or "no frame pairs"
        return {"curvature": table}, text

    if v in ("check-generator", "check-derivation"):
        fn = generator_check if v == "check-generator" else derivation_check
        if exprs:
            inputs = [(_mv(exprs[0], spec), _mv(exprs[1], spec))]
        else:
            inputs = _pairs(spec, rng, samples, max_degree)
        payload = _run_check(spec, v, inputs, lambda a, b: fn(op, a, b))
        return payload, _text_check(payload)

    degree1 = [spec.frame_section(i) for i in range(spec.rank)]
    if v == "check-curvature-relation":
        if exprs:
            inputs = [(_mv(exprs[0], spec), _mv(exprs[1], spec))]
        else:
            inputs = [(a, b) for a in degree1 for b in degree1] + [
                (random_multivector(rng, spec, 1, max_degree), random_multivector(rng, spec, 1, max_degree))
                for _ in range(samples if spec.rank else 0)
            ]
        payload = _run_check(spec, v, inputs, lambda a, b: curvature_vs_dsquared(op, a, b))
        return payload, _text_check(payload)
    if v == "check-recovery":
        if exprs:
            lam = _mv(exprs[1], spec) if len(exprs) == 2 else spec.top()
            inputs = [(_mv(exprs[0], spec), lam)]
        else:
            inputs = [(X, spec.top()) for X in degree1] + [
                (random_multivector(rng, spec, 1, max_degree), random_multivector(rng, spec, spec.rank, max_degree))
                for _ in range(samples if spec.rank else 0)
            ]
        payload = _run_check(spec, v, inputs, lambda X, lam: connection_recovery(op, X, lam))
        return payload, _text_check(payload)
    if v == "check-dw-identity":
        if exprs:
            inputs = [(_form(exprs[0], spec), _mv(exprs[1], spec))]
        else:
            inputs = []
            for _ in range(samples if spec.rank else 0):
                q = rng.randint(1, spec.rank)
                p = rng.randint(0, q - 1)
                inputs.append((random_form(rng, spec, p, max_degree), random_multivector(rng, spec, q, max_degree)))
        payload = _run_check(spec, v, inputs, lambda w, u: dw_contraction_identity(op, w, u))
        return payload, _text_check(payload)

    if v == "homology":
        table, cx = betti(op, args.direction)
        payload = {"direction": table.direction, "dims": list(table.dims), "matrices": matrices_to_json(cx)}
        return payload, f"{table.direction}: {list(table.dims)}"
    if v == "duality":
        report = duality_check(spec)
        payload = report.to_json()
        text = f"homology {list(report.homology)}, cohomology {list(report.cohomology)}: " + (
            "pass" if report.passed else "FAIL\n" + "\n".join(report.witness_failures)
        )
        if not report.passed:
            raise Violated(payload | {"text": text})
        return payload, text
    raise UsageError(f"unknown verb {v}")


def _emit(stream, args, payload, text):
    if getattr(args, "json", False):
        stream.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        stream.write(text + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        payload, text = dispatch(args)
    except Violated as exc:
        payload = dict(exc.payload)
        text = payload.pop("text", None) or _text_check(payload)
        _emit(stdout, args, payload, text)
        return EXIT_VIOLATION
    except NotFlatError as exc:
        _emit(stdout, args, {"error": str(exc)}, f"error: {exc}")
        return EXIT_VIOLATION
    except InvalidSpecError as exc:
        _emit(stdout, args, {"error": "invalid spec", "detail": str(exc)}, f"invalid spec: {exc}")
        return EXIT_INVALID
    except (ParseError, UsageError, BaseDimensionError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    _emit(stdout, args, payload, text)
    return EXIT_OK


def main():
    sys.exit(run())

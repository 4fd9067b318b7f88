"""Command-line front end.

Every subcommand prints one JSON document on stdout.

Exit codes:
    0: success
    1: a verification returned false (the JSON still describes the failure)
    2: input error (diagnostic on stderr)
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import coxeter, functionals, graph, matrix_reps, spectral
from .errors import InvalidShapeError, StarcoxError
from .rational import format_number, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

SUBCOMMANDS = (
    "classify",
    "roots",
    "functional",
    "omega",
    "apply",
    "orbit",
    "reduce",
    "verify-periodicity",
    "verify-invariance",
    "rigidity",
    "commutant",
    "verify-tuple",
)


def _load_json_arg(value: str):
    """Inline JSON, or a path to a JSON file."""
    text = value.strip()
    if text[:1] in "[{" or not os.path.exists(value):
        return json.loads(text)
    return json.loads(Path(value).read_text())


def _parse_graph(value) -> graph.StarGraph:
    obj = _load_json_arg(value) if isinstance(value, str) else value
    if isinstance(obj, dict):
        obj = obj.get("branches")
    if not isinstance(obj, list):
        raise InvalidShapeError('graph must be a JSON list of branch lengths or {"branches": [...]}')
    return graph.make_graph(obj)


def _character_payload(obj):
    if isinstance(obj, dict):
        obj = obj.get("branches")
    if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
        raise InvalidShapeError('character must be [[...], ...] or {"branches": [[...], ...]}')
    return obj


def _graph_and_characters(args, generalized):
    g = _parse_graph(args.graph) if args.graph else None
    if args.character_dir:
        files = sorted(Path(args.character_dir).glob("*.json"))
        if not files:
            raise StarcoxError(f"no *.json files in {args.character_dir}")
        payloads = [(str(f), json.loads(f.read_text())) for f in files]
    elif args.character:
        payloads = [(None, _load_json_arg(args.character))]
    else:
        raise StarcoxError("--character or --character-dir is required")
    chars = []
    for name, obj in payloads:
        rows = _character_payload(obj)
        if g is None:
            g = graph.make_graph([len(r) for r in rows])
        chars.append((name, graph.make_character(g, rows, generalized=generalized)))
    return g, chars


def _need_lambda(args):
    if args.lam is None:
        raise StarcoxError("--lambda is required")
    return parse_rational(args.lam)


def _run_per_character(args, generalized, handler):
    g, chars = _graph_and_characters(args, generalized)
    results, code = [], EXIT_OK
    for name, chi in chars:
        out, rc = handler(g, chi)
        if name is not None:
            out = {"file": name, **out}
        results.append(out)
        code = max(code, rc)
    return (results if args.character_dir else results[0]), code


def cmd_classify(args):
    g = _parse_graph(args.graph)
    res = spectral.classify_analytic(g, args.tol or spectral.DEFAULT_TOL)
    structural = graph.classify_structural(g)
    out = {"class": res.kind, "name": structural.name, "roots": [r.to_json() for r in res.roots]}
    if structural.kind != res.kind:
        out["structural_class"] = structural.kind
        return out, EXIT_FAIL
    return out, EXIT_OK


def cmd_roots(args):
    g = _parse_graph(args.graph)
    res = spectral.classify_analytic(g, args.tol or spectral.DEFAULT_TOL)
    out = res.to_json()
    out["f(1)"] = format_number(spectral.eval_f(g, 1))
    out["f(2)"] = format_number(spectral.eval_f(g, 2))
    out["f'(2)"] = format_number(spectral.eval_f_prime(g, 2))
    return out, EXIT_OK


def cmd_functional(args):
    g = _parse_graph(args.graph)
    fs = functionals.build_functionals(g, args.tol or spectral.DEFAULT_TOL)
    return {"graph": list(g.branch_lengths), "functionals": [f.to_json() for f in fs]}, EXIT_OK


def cmd_omega(args):
    def handler(g, chi):
        fs = functionals.build_functionals(g, args.tol or spectral.DEFAULT_TOL)
        return {"values": [format_number(functionals.evaluate(f, chi)) for f in fs]}, EXIT_OK

    return _run_per_character(args, True, handler)


def cmd_apply(args):
    lam = _need_lambda(args)

    def handler(g, chi):
        trace = coxeter.orbit(graph.WeightedPair(chi, lam), args.word, args.steps)
        if trace[-1].op == coxeter.STEP_LIMIT:
            return {"error": "step limit", **trace[-2].pair.to_json()}, EXIT_FAIL
        return trace[-1].pair.to_json(), EXIT_OK

    return _run_per_character(args, True, handler)


def cmd_orbit(args):
    lam = _need_lambda(args)

    def handler(g, chi):
        trace = coxeter.orbit(graph.WeightedPair(chi, lam), args.word, args.steps)
        rc = EXIT_FAIL if trace[-1].op == coxeter.STEP_LIMIT else EXIT_OK
        return {"trace": [s.to_json() for s in trace]}, rc

    out, rc = _run_per_character(args, True, handler)
    # a single orbit prints as a bare array
    return (out["trace"] if isinstance(out, dict) else out), rc


def cmd_reduce(args):
    lam = _need_lambda(args)

    def handler(g, chi):
        res = coxeter.reduce(g, chi, lam, args.steps)
        out = res.to_json(with_trace=not args.no_trace)
        if res.terminal not in (coxeter.SPECIAL_POINT, coxeter.STEP_LIMIT):
            out["bound"] = coxeter.step_bound(g, chi, lam)
        return out, EXIT_FAIL if res.terminal == coxeter.STEP_LIMIT else EXIT_OK

    return _run_per_character(args, False, handler)


def cmd_verify_periodicity(args):
    lam = _need_lambda(args)
    if args.k is None:
        raise StarcoxError("--k is required")

    def handler(g, chi):
        res = coxeter.verify_periodicity(g, chi, lam, args.k)
        out = {
            "ok": res.ok,
            "character_residual": res.character_residual.to_json()["branches"],
            "lambda_residual": format_number(res.lambda_residual),
            "image": res.image.to_json(),
        }
        return out, EXIT_OK if res.ok else EXIT_FAIL

    return _run_per_character(args, True, handler)


def cmd_verify_invariance(args):
    tol = args.tol or matrix_reps.DEFAULT_TOL

    def handler(g, chi):
        fs = functionals.build_functionals(g)
        checks = [functionals.verify_invariance(f, chi, tol) for f in fs]
        out = {
            "ok": all(c.ok for c in checks),
            "checks": [
                {"s": f.to_json()["s"], "ok": c.ok, "residual": format_number(c.residual)}
                for f, c in zip(fs, checks)
            ],
        }
        return out, EXIT_OK if out["ok"] else EXIT_FAIL

    return _run_per_character(args, False, handler)


def _load_tuple(args) -> matrix_reps.OperatorTuple:
    if not args.tuple:
        raise StarcoxError("--tuple is required")
    return matrix_reps.OperatorTuple.from_json(_load_json_arg(args.tuple))


def cmd_rigidity(args):
    t = _load_tuple(args)
    rep = matrix_reps.rigidity_report(t, args.tol or matrix_reps.DEFAULT_TOL)
    return rep.to_json(), EXIT_OK if rep.verification.ok else EXIT_FAIL


def cmd_commutant(args):
    t = _load_tuple(args)
    tol = args.tol or matrix_reps.DEFAULT_TOL
    rep = matrix_reps.verify_tuple(t, tol)
    d = matrix_reps.joint_commutant_dim(t, tol)
    out = {"ok": rep.ok, "commutant_dim": d, "irreducible": d == 1, "verification": rep.to_json()}
    return out, EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify_tuple(args):
    t = _load_tuple(args)
    rep = matrix_reps.verify_tuple(t, args.tol or matrix_reps.DEFAULT_TOL)
    return rep.to_json(), EXIT_OK if rep.ok else EXIT_FAIL


_HANDLERS = {
    "classify": cmd_classify,
    "roots": cmd_roots,
    "functional": cmd_functional,
    "omega": cmd_omega,
    "apply": cmd_apply,
    "orbit": cmd_orbit,
    "reduce": cmd_reduce,
    "verify-periodicity": cmd_verify_periodicity,
    "verify-invariance": cmd_verify_invariance,
    "rigidity": cmd_rigidity,
    "commutant": cmd_commutant,
    "verify-tuple": cmd_verify_tuple,
}


def create_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="branch lengths, e.g. '[1,2,5]' (inline JSON or file)")
    common.add_argument("--character", help="character as inline JSON or a JSON file")
    common.add_argument("--character-dir", help="directory of character JSON files (batch)")
    common.add_argument("--lambda", dest="lam", help="root weight as 'p/q'")
    common.add_argument("--word", default="ST", help="functor word, applied right to left")
    common.add_argument("--k", type=int, help="period multiplier for verify-periodicity")
    common.add_argument("--steps", type=int, default=coxeter.DEFAULT_MAX_STEPS)
    common.add_argument(
        "--tol", type=float, help="tolerance (default 1e-12 for roots, 1e-9 for matrices)"
    )
    common.add_argument("--tuple", help="operator tuple JSON file (or inline JSON)")
    common.add_argument("--no-trace", action="store_true", help="omit the trace from reduce")
    common.add_argument("--pretty", action="store_true", help="indent JSON output")

    parser = argparse.ArgumentParser(
        prog="starcox",
        description="Star graphs, invariant functionals and Coxeter functors on characters.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=_HANDLERS[name].__name__.replace("cmd_", ""))
    return parser


def run(argv=None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        out, code = _HANDLERS[args.command](args)
    except (StarcoxError, ValueError, OSError) as exc:
        print(f"starcox {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    json.dump(out, sys.stdout, indent=2 if args.pretty else None)
    sys.stdout.write("\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

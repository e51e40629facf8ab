"""Command-line entry point.

    freeext run FILE                 run one problem file
    freeext corpus [DIR] --jobs 4    replay a directory of problem files
    freeext ann --dual "X*Y*T + X^[3]"
    freeext freeext --n 3 --fb "X*Y" --g1 "X^[3]" --g2 "X*Y^[3]"
    freeext jordan --dual "X^[2]+Y^[2]" --ell "x+y"

Exit status: 0 on success, 1 when an expectation fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from .algebra import NotArtinianError
from .duality import DegreeBoundError
from .extension import DegreeMismatchError, ShapeError
from .problem import Problem, ProblemError, load_problem, make_ring, run_problem
from .ring import ParseError

EXIT_OK, EXIT_EXPECT, EXIT_INPUT = 0, 1, 2
INPUT_ERRORS = (ProblemError, ParseError, DegreeMismatchError, ShapeError, NotArtinianError, DegreeBoundError, ValueError, KeyError, OSError)


def default_corpus() -> Path:
    return Path(str(resources.files("freeext") / "corpus"))


# output


def _fmt(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, dict):
        return " ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    if isinstance(v, list):
        if v and all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            return "(" + ",".join(map(str, v)) + ")"
        if any(isinstance(x, dict) for x in v):
            return " | ".join(_fmt(x) for x in v)
        return ", ".join(_fmt(x) for x in v) if v else "-"
    return str(v)


def _flatten(data: dict, prefix: str = ""):
    for k, v in data.items():
        if isinstance(v, dict):
            yield from _flatten(v, f"{prefix}{k}.")
        else:
            yield f"{prefix}{k}", v


def render_table(data: dict) -> str:
    rows = list(_flatten(data))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {_fmt(v)}" for k, v in rows)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)  # rationals and field elements go out as exact strings


def emit(data: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        print(json.dumps(_jsonable(data), indent=2), file=out)
    else:
        print(render_table(data), file=out)


def report_checks(results, out=None) -> bool:
    out = out or sys.stdout
    ok = True
    for r in results:
        e = r.expectation
        key = e.key + (f" {e.sub}" if e.sub else "")
        if r.ok:
            print(f"  ok    {key} = {e.value}", file=out)
        else:
            ok = False
            print(f"  FAIL  {key}: expected {e.value}, got {r.got}  (line {e.line})", file=out)
    return ok


# problem files


def cmd_run(args) -> int:
    prob = load_problem(args.file)
    outcome, results = run_problem(prob)
    data = dict(outcome.data)
    if args.json:
        data["expectations"] = [
            {"key": r.expectation.key, "sub": r.expectation.sub, "expected": r.expectation.value, "got": r.got, "ok": r.ok}
            for r in results
        ]
        emit(data, True)
        return EXIT_OK if all(r.ok for r in results) else EXIT_EXPECT
    emit(data, False)
    if results:
        print("expectations:")
    return EXIT_OK if report_checks(results) else EXIT_EXPECT


def _replay(path: str) -> dict:
    t0 = time.perf_counter()
    try:
        prob = load_problem(path)
        _, results = run_problem(prob)
    except INPUT_ERRORS as exc:
        return {"path": path, "status": "error", "error": str(exc), "seconds": time.perf_counter() - t0}
    failures = [
        {"key": r.expectation.key, "sub": r.expectation.sub, "expected": r.expectation.value, "got": r.got, "line": r.expectation.line}
        for r in results
        if not r.ok
    ]
    return {
        "path": path,
        "name": prob.name or Path(path).stem,
        "status": "fail" if failures else "pass",
        "checks": len(results),
        "failures": failures,
        "seconds": time.perf_counter() - t0,
    }


def corpus_run(directory: str | Path, jobs: int = 1) -> list[dict]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory {directory} does not exist")
    files = sorted(str(p) for p in directory.glob("*.fx"))
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_replay, files))
    return [_replay(f) for f in files]


def cmd_corpus(args) -> int:
    try:
        summary = corpus_run(args.dir or default_corpus(), args.jobs)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not summary:
        print("warning: 0 entries", file=sys.stderr)
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        for s in summary:
            label = s.get("name", Path(s["path"]).stem)
            print(f"{s['status'].upper():5} {label}  ({s['seconds']:.2f}s)")
            if s["status"] == "error":
                print(f"      {s['error']}")
            for f in s.get("failures", []):
                key = f["key"] + (f" {f['sub']}" if f["sub"] else "")
                print(f"      - expect {key} = {f['expected']}")
                print(f"      + got    {key} = {f['got']}")
        passed = sum(s["status"] == "pass" for s in summary)
        print(f"{passed}/{len(summary)} entries pass")
    if any(s["status"] == "error" for s in summary):
        return EXIT_INPUT
    return EXIT_OK if all(s["status"] == "pass" for s in summary) else EXIT_EXPECT


# direct subcommands build a Problem from flags


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def infer_vars(exprs) -> list[str]:
    names = set()
    for e in exprs:
        if e:
            names.update(m.group(0).lower() for m in _IDENT.finditer(e))
    names = sorted(names - {"t"}) + (["t"] if "t" in names else [])
    return names


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()] if text else None


def build_problem(task: str, args, exprs: list[str], with_t: bool | None = None) -> Problem:
    names = [v.strip() for v in args.vars.split(",")] if args.vars else infer_vars(exprs)
    if with_t and "t" not in names:
        names.append("t")
    weights = _ints(args.weights) or [1] * len(names)
    if len(weights) != len(names):
        raise ValueError(f"{len(weights)} weights for {len(names)} variables {', '.join(names)}")
    if args.t_weight is not None and names and names[-1] == "t":
        weights[-1] = args.t_weight
    prob = Problem(make_ring(names, weights, args.char), task=task)
    if args.bound is not None and task in ("ann", "hilbert"):
        prob.options["bound"] = str(args.bound)
    return prob


def _declare(prob: Problem, kind: str, name: str, text: str, flag: str):
    try:
        if kind == "dual":
            prob.duals[name] = prob.spec.dual(text)
        else:
            prob.polys[name] = prob.spec.poly(text)
    except ParseError as exc:
        raise ParseError(f"in --{flag} {text!r}: {str(exc).split(': ', 1)[1]}", exc.column, text) from None


def cmd_direct(args) -> int:
    task = args.command
    if task in ("ann", "jordan", "sl"):
        exprs = [args.dual, getattr(args, "ell", None)]
        prob = build_problem(task, args, exprs)
        _declare(prob, "dual", "F", args.dual, "dual")
        if task == "jordan":
            _declare(prob, "poly", "ell", args.ell, "ell")
            prob.options["ell"] = "ell"
        if task == "sl":
            prob.options["seed"] = str(args.seed)
    elif task == "hilbert":
        if bool(args.dual) == bool(args.ideal):
            raise ValueError("give exactly one of --dual or --ideal")
        prob = build_problem(task, args, [args.dual or args.ideal])
        if args.dual:
            _declare(prob, "dual", "F", args.dual, "dual")
        else:
            from .problem import _poly_list

            prob.ideals["I"] = _poly_list(prob.spec, args.ideal)
            prob.options["ideal"] = "I"
    elif task == "freeext":
        gs = [getattr(args, f"g{i}") for i in range(1, 10)]
        if args.dual:
            prob = build_problem(task, args, [args.dual], with_t=True)
            _declare(prob, "dual", "F", args.dual, "dual")
            prob.options["form"] = "F"
        else:
            if args.n is None or args.fb is None:
                raise ValueError("freeext needs --dual, or --n and --fb")
            prob = build_problem(task, args, [args.fb, *gs])
            if prob.spec.has_t:
                raise ValueError("with --fb the forms live over R; drop t from --vars and use --t-weight")
            prob.options.update(n=str(args.n), fb="FB", t_weight=str(args.t_weight or 1))
            _declare(prob, "dual", "FB", args.fb, "fb")
            for i, g in enumerate(gs, start=1):
                if g:
                    _declare(prob, "dual", f"G{i}", g, f"g{i}")
                    prob.options[f"g{i}"] = f"G{i}"
    elif task == "pbi":
        hs = [getattr(args, f"h{i}") for i in range(1, 10)]
        prob = build_problem(task, args, [args.theta, *hs], with_t=True)
        _declare(prob, "dual", "THETA", args.theta, "theta")
        prob.options.update(theta="THETA", k=str(args.k))
        for i, h in enumerate(hs, start=1):
            if h is None:
                break
            _declare(prob, "poly", f"h{i}", h, f"h{i}")
            prob.options[f"h{i}"] = f"h{i}"
    elif task == "admissible-g":
        prob = build_problem(task, args, [args.fb])
        _declare(prob, "dual", "FB", args.fb, "fb")
        if args.degree is not None:
            prob.options["degree"] = str(args.degree)
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(task)
    outcome, _ = run_problem(prob)
    emit(outcome.data, args.json)
    return EXIT_OK


def _common(p: argparse.ArgumentParser):
    p.add_argument("--vars", help="comma-separated variables (default: inferred, t last)")
    p.add_argument("--char", type=int, default=0, help="field characteristic, 0 for the rationals")
    p.add_argument("--weights", help="comma-separated variable weights (default all 1)")
    p.add_argument("--t-weight", type=int, dest="t_weight", help="weight of the t-variable")
    p.add_argument("--bound", type=int, help="override the degree bound for ideal computations")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freeext", description="Free extensions of Artinian Gorenstein algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a problem file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("corpus", help="replay every .fx file in a directory")
    p.add_argument("dir", nargs="?", help="directory (default: the bundled corpus)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("ann", help="annihilator and algebra invariants of a dual form")
    p.add_argument("--dual", required=True)
    _common(p)

    p = sub.add_parser("hilbert", help="Hilbert function of R/Ann F or R/I")
    p.add_argument("--dual")
    p.add_argument("--ideal", help="comma-separated generators")
    _common(p)

    p = sub.add_parser("freeext", help="free-extension certificates")
    p.add_argument("--dual", help="F over k[..., t]; split by powers of T")
    p.add_argument("--n", type=int)
    p.add_argument("--fb")
    for i in range(1, 10):
        p.add_argument(f"--g{i}")
    _common(p)

    p = sub.add_parser("jordan", help="Jordan type of multiplication by an element")
    p.add_argument("--dual", required=True)
    p.add_argument("--ell", required=True)
    _common(p)

    p = sub.add_parser("sl", help="decide the strong Lefschetz property")
    p.add_argument("--dual", required=True)
    p.add_argument("--seed", type=int, default=0)
    _common(p)

    p = sub.add_parser("pbi", help="projective bundle dual generator")
    p.add_argument("--theta", required=True)
    p.add_argument("--k", type=int, default=1)
    for i in range(1, 10):
        p.add_argument(f"--h{i}")
    _common(p)

    p = sub.add_parser("admissible-g", help="dimension of {G : (I_B)^2 o G = 0}")
    p.add_argument("--fb", required=True)
    p.add_argument("--degree", type=int)
    _common(p)

    for name in ("ann", "hilbert", "freeext", "jordan", "sl", "pbi", "admissible-g"):
        sub.choices[name].set_defaults(func=cmd_direct)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: solve, analyze, generate and compare.

Problems travel as JSON files:

    {"n": 2, "A": [[...], [...]], "b": [...],
     "known_solution": [...]?, "metadata": {...}?}

Reports are JSON too, with the residual always recomputed from the raw
inputs.  Exit codes: 0 on a converged/unique result, 2 on any
non-convergent solver status, 1 on I/O or validation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import analysis, oracle, problems, sge
from .errors import AvekitError, NotUnique, PivotBreakdown
from .newton import newton_solve
from .problems import AveProblem, residual
from .report import SolveReport, Status

GENERATOR_ALIASES = {
    "norm-lt-half": "norm_lt_half",
    "irreducible-half": "irreducible_half",
    "sdd-two-thirds": "sdd_two_thirds",
    "tridiag": "tridiag_abs_sym",
    "tridiag-abs-sym": "tridiag_abs_sym",
    "norm-lt-third": "norm_lt_third",
    "unconstrained": "unconstrained",
}
SPECIAL_CLASSES = ("sge-trap", "newton-cycle", "inflated-identity")
VALID_CLASSES = tuple(GENERATOR_ALIASES) + SPECIAL_CLASSES

MATCH_TOL = 1e-8


class CliError(Exception):
    """Validation or I/O failure; message names the offending field."""


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def load_problem(path: str) -> tuple[AveProblem, np.ndarray | None, dict]:
    try:
        with open(path) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError(f"{path}: top level must be an object")
    for name in ("n", "A", "b"):
        if name not in data:
            raise CliError(f"{path}: missing field '{name}'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise CliError(f"{path}: field 'n' must be a positive integer")
    try:
        a = np.asarray(data["A"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise CliError(f"{path}: field 'A' is not numeric: {exc}") from exc
    if a.shape != (n, n):
        raise CliError(f"{path}: field 'A' must be {n}x{n}, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise CliError(f"{path}: field 'A' contains non-finite entries")
    try:
        b = np.asarray(data["b"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise CliError(f"{path}: field 'b' is not numeric: {exc}") from exc
    if b.shape != (n,):
        raise CliError(f"{path}: field 'b' must have length {n}, got shape {b.shape}")
    if not np.isfinite(b).all():
        raise CliError(f"{path}: field 'b' contains non-finite entries")
    known = None
    if data.get("known_solution") is not None:
        known = np.asarray(data["known_solution"], dtype=float)
        if known.shape != (n,):
            raise CliError(f"{path}: field 'known_solution' must have length {n}")
    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise CliError(f"{path}: field 'metadata' must be an object")
    return AveProblem(a, b), known, metadata


def problem_to_dict(problem: AveProblem, known=None, metadata=None) -> dict:
    out = {
        "n": problem.n,
        "A": [[float(x) for x in row] for row in problem.a],
        "b": [float(x) for x in problem.b],
    }
    if known is not None:
        out["known_solution"] = [float(x) for x in known]
    if metadata:
        out["metadata"] = metadata
    return out


def _write_json(data: dict, out: str | None) -> None:
    text = json.dumps(data, indent=2)
    if out:
        with open(out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _parse_start(text: str, n: int):
    if text == "b":
        return None
    if text == "plus":
        return np.ones(n)
    if text == "minus":
        return -np.ones(n)
    if set(text) <= {"+", "-"}:
        if len(text) != n:
            raise CliError(f"start signature '{text}' has length {len(text)}, expected {n}")
        return np.array([1.0 if c == "+" else -1.0 for c in text])
    raise CliError(f"invalid --start {text!r}: use b, plus, minus or a +/- string")


def _report_dict(report: SolveReport, problem: AveProblem, elapsed_ms: float) -> dict:
    out = {
        "method": report.method,
        "status": report.status.value,
        "z": None if report.z is None else [float(x) for x in report.z],
        "residual": None if report.z is None else residual(problem, report.z),
        "iterations": report.iterations,
        "condition_profile": analysis.condition_profile(problem.a).as_dict(),
        "timings_ms": elapsed_ms,
    }
    if not report.guaranteed:
        out["warnings"] = ["no sufficient condition holds; result is not guaranteed"]
    if report.signs is not None:
        out["signs"] = [int(s) for s in report.signs]
    if report.elimination_trace is not None:
        out["trace"] = [
            {"index": r.index, "sign": r.sign, "round": r.round}
            for r in report.elimination_trace
        ]
    if report.newton_trace is not None:
        out["trace"] = {
            "signatures": ["".join("+" if s > 0 else "-" for s in sig)
                           for sig in report.newton_trace.signatures],
            "residuals": report.newton_trace.residuals,
        }
    return out


def _run_method(problem: AveProblem, method: str, start, max_iter: int, tol: float):
    """Returns (report_dict_fragment, status) for one solver run."""
    t0 = time.perf_counter()
    if method == "sge":
        try:
            report = sge.sge_solve(problem)
        except PivotBreakdown:
            return {
                "method": "sge",
                "status": Status.PIVOT_BREAKDOWN.value,
                "z": None,
                "residual": None,
                "iterations": 0,
                "condition_profile": analysis.condition_profile(problem.a).as_dict(),
                "timings_ms": (time.perf_counter() - t0) * 1e3,
            }, Status.PIVOT_BREAKDOWN
        return _report_dict(report, problem, (time.perf_counter() - t0) * 1e3), report.status
    if method == "newton":
        report = newton_solve(problem, start=start, max_iter=max_iter)
        return _report_dict(report, problem, (time.perf_counter() - t0) * 1e3), report.status
    # oracle
    result = oracle.enumerate_solutions(problem)
    elapsed = (time.perf_counter() - t0) * 1e3
    count = len(result.solutions)
    status = Status.CONVERGED if count == 1 else Status.NOT_UNIQUE
    z = result.solutions[0][1] if count == 1 else None
    out = {
        "method": "oracle",
        "status": status.value,
        "z": None if z is None else [float(x) for x in z],
        "residual": None if z is None else residual(problem, z),
        "iterations": 1 << problem.n,
        "solution_count": count,
        "singular_signatures": len(result.singular_signatures),
        "condition_profile": analysis.condition_profile(problem.a).as_dict(),
        "timings_ms": elapsed,
    }
    return out, status


def cmd_solve(args) -> int:
    try:
        problem, _known, _meta = load_problem(args.input)
        start = _parse_start(args.start, problem.n)
    except (CliError, AvekitError, ValueError) as exc:
        return _fail(str(exc))
    out, status = _run_method(problem, args.method, start, args.max_iter, args.tol)
    _write_json(out, args.out)
    return 0 if status == Status.CONVERGED else 2


def cmd_analyze(args) -> int:
    try:
        problem, _known, _meta = load_problem(args.input)
    except (CliError, AvekitError, ValueError) as exc:
        return _fail(str(exc))
    a = problem.a
    profile = analysis.condition_profile(a)
    out = {
        "n": problem.n,
        "condition_profile": profile.as_dict(),
        "irreducible": analysis.is_irreducible(a),
        "strictly_diag_dominant": analysis.is_strictly_diag_dominant(a),
        "tridiag_abs_symmetric": analysis.is_tridiag_abs_symmetric(a),
    }
    if problem.n > analysis.MAX_ENUM_DIM:
        out["note"] = (
            f"dimension cap: signature enumeration needs n <= {analysis.MAX_ENUM_DIM}; "
            "spectral-radius and determinant checks omitted"
        )
    else:
        if args.rho in ("enum", "both"):
            out["rho_sr_enum"] = analysis.rho_sr_enum(a, tol=min(args.tol, 1e-8))
        if args.rho in ("bisect", "both"):
            out["rho_sr_bisect"] = analysis.rho_sr_bisect(a, tol=min(args.tol, 1e-6))
        out["det_positive_all_signatures"] = analysis.det_positive_all_signatures(a)
    _write_json(out, args.out)
    return 0


def cmd_generate(args) -> int:
    name = args.cls
    if name not in VALID_CLASSES:
        return _fail(
            f"invalid class {name!r}; valid classes: {', '.join(VALID_CLASSES)}"
        )
    try:
        if name == "sge-trap":
            problem, known = problems.sge_trap_instance(args.eps)
            meta = {"class": name, "eps": args.eps}
        elif name == "newton-cycle":
            problem = problems.newton_cycle_instance(args.a)
            known, meta = None, {"class": name, "a": args.a}
        elif name == "inflated-identity":
            mat = problems.inflated_identity(args.eps, args.n)
            problem = AveProblem(mat, -np.ones(args.n))
            known, meta = None, {"class": name, "eps": args.eps, "n": args.n}
        else:
            problem, known = problems.random_instance(
                GENERATOR_ALIASES[name], args.n, args.seed, rhs=args.rhs, nu=args.nu
            )
            meta = {"class": name, "n": args.n, "seed": args.seed, "rhs": args.rhs}
            if args.nu is not None:
                meta["nu"] = args.nu
    except (AvekitError, ValueError) as exc:
        return _fail(str(exc))
    _write_json(problem_to_dict(problem, known, meta), args.out)
    return 0


def _compare_one(name: str, problem: AveProblem, newton_start) -> dict:
    row: dict = {"instance": name}
    try:
        z_true = oracle.unique_solution(problem)
        row["oracle"] = "unique"
    except NotUnique as exc:
        z_true = None
        row["oracle"] = str(exc)

    def matches(z) -> bool:
        if z is None or z_true is None:
            return False
        return bool(np.abs(z - z_true).max() <= MATCH_TOL * (1.0 + np.abs(z_true).max()))

    try:
        rep = sge.sge_solve(problem)
        row["sge_status"] = rep.status.value
        row["sge_ok"] = matches(rep.z)
    except PivotBreakdown:
        row["sge_status"] = Status.PIVOT_BREAKDOWN.value
        row["sge_ok"] = False
    rep = newton_solve(problem, start=newton_start, max_iter=max(problem.n + 1, 2 ** problem.n + 1))
    row["newton_status"] = rep.status.value
    row["newton_ok"] = rep.status == Status.CONVERGED and matches(rep.z)
    return row


def _demo_suite():
    trap, _ = problems.sge_trap_instance(0.01)
    circ = problems.newton_cycle_instance()
    return [
        ("trap-eps-0.01", trap, None),
        ("circulant-5-8-mixed-start", circ, np.array([1.0, -1.0, 1.0])),
    ]


def _random_suite():
    cases = []
    for cls in ("norm_lt_half", "irreducible_half", "sdd_two_thirds", "tridiag_abs_sym"):
        for i in range(5):
            n = 2 + (i % 5)
            problem, _z = problems.random_instance(cls, n, 1000 + i)
            cases.append((f"{cls}-n{n}-seed{1000 + i}", problem, None))
    return cases


def cmd_compare(args) -> int:
    skipped: list[str] = []
    cases = []
    if args.dir is not None:
        try:
            names = sorted(f for f in os.listdir(args.dir) if f.endswith(".json"))
        except OSError as exc:
            return _fail(f"cannot list {args.dir}: {exc}")
        for fname in names:
            path = os.path.join(args.dir, fname)
            try:
                problem, _known, _meta = load_problem(path)
            except (CliError, AvekitError, ValueError) as exc:
                skipped.append(f"{fname}: {exc}")
                continue
            cases.append((fname, problem, None))
    elif args.suite == "demo":
        cases = _demo_suite()
    else:
        cases = _random_suite()

    workers = int(os.environ.get("AVE_THREADS", "0") or "0")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda c: _compare_one(*c), cases))
    else:
        rows = [_compare_one(*case) for case in cases]
    rows.sort(key=lambda r: r["instance"])

    summary = {
        "both": sum(1 for r in rows if r["sge_ok"] and r["newton_ok"]),
        "sge_only": sum(1 for r in rows if r["sge_ok"] and not r["newton_ok"]),
        "newton_only": sum(1 for r in rows if r["newton_ok"] and not r["sge_ok"]),
        "neither": sum(1 for r in rows if not r["sge_ok"] and not r["newton_ok"]),
    }
    header = f"{'instance':40s} {'sge':>4s} {'newton':>7s}  oracle"
    lines = [header, "-" * len(header)]
    for r in rows:
        mark = lambda ok: "ok" if ok else "X"  # noqa: E731
        lines.append(
            f"{r['instance']:40s} {mark(r['sge_ok']):>4s} {mark(r['newton_ok']):>7s}  {r['oracle']}"
        )
    print("\n".join(lines))
    print(f"summary: {summary}")
    for s in skipped:
        print(f"skipped: {s}")
    _write_json({"instances": rows, "summary": summary, "skipped": skipped}, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avekit",
        description="Solvers and analysis for absolute value equations z - A|z| = b.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a problem file")
    p_solve.add_argument("input", help="problem JSON file")
    p_solve.add_argument("--method", choices=("sge", "newton", "oracle"), default="sge")
    p_solve.add_argument(
        "--start", default="b",
        help="newton start: 'b', 'plus', 'minus' or a +/- signature string",
    )
    p_solve.add_argument("--max-iter", type=int, default=100, dest="max_iter")
    p_solve.add_argument("--tol", type=float, default=1e-10)
    p_solve.add_argument("--out", default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_an = sub.add_parser("analyze", help="condition profile and spectral analysis")
    p_an.add_argument("input", help="problem JSON file")
    p_an.add_argument("--rho", choices=("enum", "bisect", "both"), default="both")
    p_an.add_argument("--tol", type=float, default=1e-10)
    p_an.add_argument("--out", default=None)
    p_an.set_defaults(func=cmd_analyze)

    p_gen = sub.add_parser("generate", help="write a problem file")
    p_gen.add_argument("--class", dest="cls", required=True,
                       help=f"one of: {', '.join(VALID_CLASSES)}")
    p_gen.add_argument("--n", type=int, default=4)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--rhs", choices=("from-random-z", "explicit"), default="from-random-z")
    p_gen.add_argument("--eps", type=float, default=0.01)
    p_gen.add_argument("--a", type=float, default=0.625)
    p_gen.add_argument("--nu", type=float, default=None)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_generate)

    p_cmp = sub.add_parser("compare", help="run all solvers across instances")
    group = p_cmp.add_mutually_exclusive_group(required=True)
    group.add_argument("--dir", default=None, help="directory of problem JSON files")
    group.add_argument("--suite", choices=("demo", "random"), default=None)
    p_cmp.add_argument("--out", default=None)
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

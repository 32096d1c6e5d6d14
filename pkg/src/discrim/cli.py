"""Command-line entry point: ``discrim <command> [options]``.

Exit codes: 0 success/agreement, 1 theorem-check failure, 2 invalid input,
3 scale guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb
from typing import Sequence

from . import arrangement, multiplicity, orlik_solomon, sl2_weight
from .exact_linalg import format_fraction

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_SCALE = 3

DEFAULT_MAX_DIM = 20000
SWEEP_COLUMNS = ["n", "k", "m", "|m|", "regime", "ker_computed", "ker_predicted", "coker_computed",
                 "coker_predicted", "w_tensor", "w_recursion", "pass"]


class InvalidInput(ValueError):
    pass


class ScaleGuard(RuntimeError):
    pass


def parse_nat_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise InvalidInput(f"entries must be nonnegative, got {text!r}")
    return values


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from None


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"expected comma-separated rationals, got {text!r}") from None


def max_dim_default() -> int:
    env = os.environ.get("DISCRIM_MAX_DIM")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInput(f"DISCRIM_MAX_DIM must be an integer, got {env!r}") from None
    return DEFAULT_MAX_DIM


def _require_k(k: int) -> None:
    if k < 1:
        raise InvalidInput(f"k must be at least 1, got {k}")


def _require_m(m: Sequence[int]) -> None:
    if not m:
        raise InvalidInput("m must have at least one entry")


# reports --------------------------------------------------------------------


def kernel_report(m: Sequence[int], k: int) -> dict:
    m = tuple(m)
    kernel, cokernel = sl2_weight.kernel_cokernel_dims(m, k)
    pred = sl2_weight.predicted_dims(m, k)
    j = sum(m) - k + 1
    wt, wr = multiplicity.w_via_tensor(m, j), multiplicity.w_via_recursion(m, j)
    agree = {"kernel": kernel == pred.kernel, "cokernel": cokernel == pred.cokernel, "w": wt == wr}
    return {
        "command": "kernel",
        "m": list(m),
        "n": len(m),
        "k": k,
        "kernel": kernel,
        "cokernel": cokernel,
        "predicted": {"kernel": pred.kernel, "cokernel": pred.cokernel, "regime": pred.regime},
        "j": j,
        "w_tensor": wt,
        "w_recursion": wr,
        "agree": agree,
        "pass": all(agree.values()),
    }


def multiplicity_report(m: Sequence[int], j: int | None = None) -> dict:
    m = tuple(m)
    if j is None:
        tensor = multiplicity.decomposition_vector(m, "tensor")
        recursion = multiplicity.decomposition_vector(m, "recursion")
        out = {
            "command": "w",
            "m": list(m),
            "decomposition": {str(i): c for i, c in recursion.items()},
            "tensor": {str(i): c for i, c in tensor.items()},
            "dimension_sum": multiplicity.dimension_sum(m),
            "agree": tensor == recursion,
        }
    else:
        wt, wr = multiplicity.w_via_tensor(m, j), multiplicity.w_via_recursion(m, j)
        out = {"command": "w", "m": list(m), "j": j, "w": wr, "tensor": wt, "agree": wt == wr}
    out["pass"] = out["agree"]
    return out


def aomoto_report(m: Sequence[int], k: int, z=None, skew: bool = False, verify: bool = False,
                  max_dim: int | None = None) -> dict:
    m = tuple(m)
    n = len(m)
    cap = max_dim_default() if max_dim is None else max_dim
    top = orlik_solomon.poincare_coefficients(k, n)[k]
    if top > cap:
        raise ScaleGuard(f"dim A^{k} = {top} exceeds the cap {cap}")
    spec = arrangement.build(k, n, z)
    lam = orlik_solomon.integer_weights(m, spec)
    dims = orlik_solomon.aomoto_cohomology_dims(spec, lam)
    out = {
        "command": "aomoto",
        "m": list(m),
        "n": n,
        "k": k,
        "os_dims": [orlik_solomon.algebra(spec).dim(q) for q in range(k + 1)],
        "cohomology": dims,
    }
    ok = True
    if skew or verify:
        out["skew_cohomology"] = orlik_solomon.skew_cohomology_dims(spec, lam)
    if verify:
        report = orlik_solomon.verify_main_theorem(spec, m).to_json_obj()
        out["verify"] = report
        ok = report["pass"]
        if sum(m) - k + 1 >= k and n >= 2:
            expected = [0] * k + [arrangement.euler_characteristic_magnitude(k, n)]
            out["nonresonant_check"] = {"expected": expected, "pass": dims == expected}
            ok = ok and dims == expected
    out["pass"] = ok
    return out


def dense_report(m: Sequence[int], k: int, shift: Sequence[int] | None = None, bruteforce: bool = False,
                 z=None) -> dict:
    m = tuple(m)
    n = len(m)
    chosen = "given"
    if shift is None:
        if sum(m) - k + 1 >= k:
            shift, chosen = arrangement.find_shift(m, k), "find_shift"
        else:
            shift, chosen = (0,) * n, "zero"
    shift = tuple(shift)
    if len(shift) != n:
        raise InvalidInput(f"shift needs {n} entries, got {len(shift)}")
    edges = arrangement.dense_edges_formula(k, n, m, shift)
    out = {
        "command": "dense",
        "m": list(m),
        "n": n,
        "k": k,
        "shift": list(shift),
        "shift_source": chosen,
        "edges": [e.to_json_obj() for e in edges],
        "verdict": {
            "comb": arrangement.nonresonance_verdict(edges, arrangement.COMB),
            "nonres": arrangement.nonresonance_verdict(edges, arrangement.NONRES),
        },
    }
    ok = True
    if chosen == "find_shift":
        ok = out["verdict"]["nonres"]
    if bruteforce:
        spec = arrangement.build(k, n, z)
        try:
            brute = arrangement.dense_edges_bruteforce(spec, m, shift)
        except arrangement.ScaleError as exc:
            raise ScaleGuard(str(exc)) from exc
        match = arrangement.weight_multiset(brute) == arrangement.weight_multiset(edges)
        out["bruteforce"] = {"count": len(brute), "formula_count": len(edges), "match": match}
        ok = ok and match
    out["pass"] = ok
    return out


def euler_report(k: int, n: int) -> dict:
    if n < 2:
        raise InvalidInput(f"n must be at least 2, got {n}")
    return {"command": "euler", "k": k, "n": n,
            "euler_characteristic_magnitude": arrangement.euler_characteristic_magnitude(k, n), "pass": True}


def dump_matrix_report(m: Sequence[int], k: int, op: str, q: int | None = None, z=None) -> dict:
    m = tuple(m)
    if op == "f":
        M = sl2_weight.f_matrix_dual(m, k)
    elif op == "e":
        M = sl2_weight.e_matrix_dual(m, k)
    elif op == "f-irreducible":
        M = sl2_weight.f_matrix_irreducible(m, k)
    elif op == "shapovalov":
        M = sl2_weight.shapovalov_matrix(m, k)
    elif op == "aomoto":
        if q is None:
            raise InvalidInput("--q is required for the aomoto matrix")
        spec = arrangement.build(k, len(m), z)
        if not 0 <= q < k:
            raise InvalidInput(f"--q must lie in 0..{k - 1}")
        M = orlik_solomon.aomoto_matrix(spec, orlik_solomon.integer_weights(m, spec), q)
    else:
        raise InvalidInput(f"unknown operator {op!r}")
    return M.to_json_obj()


# sweep ----------------------------------------------------------------------


def sweep_cases(n_max: int, m_max: int, k_max: int, max_source_dim: int) -> list[tuple[tuple[int, ...], int]]:
    cases = []
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            if comb(n + k - 2, k - 1) > max_source_dim:
                continue
            for m in itertools.product(range(m_max + 1), repeat=n):
                cases.append((m, k))
    return cases


def sweep_row(case: tuple[tuple[int, ...], int], with_aomoto: bool = False, max_dim: int = DEFAULT_MAX_DIM) -> dict:
    m, k = case
    rep = kernel_report(m, k)
    row = {
        "n": len(m),
        "k": k,
        "m": ",".join(map(str, m)),
        "|m|": sum(m),
        "regime": rep["predicted"]["regime"],
        "ker_computed": rep["kernel"],
        "ker_predicted": rep["predicted"]["kernel"],
        "coker_computed": rep["cokernel"],
        "coker_predicted": rep["predicted"]["cokernel"],
        "w_tensor": rep["w_tensor"],
        "w_recursion": rep["w_recursion"],
    }
    ok = rep["pass"]
    if with_aomoto:
        if orlik_solomon.poincare_coefficients(k, len(m))[k] > max_dim:
            row["skew_dims"] = "skipped"
            row["aomoto_pass"] = ""
        else:
            report = orlik_solomon.verify_main_theorem(arrangement.build(k, len(m)), m)
            row["skew_dims"] = ",".join(map(str, report.skew_dims))
            row["aomoto_pass"] = report.passed
            ok = ok and report.passed
    row["pass"] = ok
    return row


def _sweep_worker(args):
    case, with_aomoto, max_dim = args
    return sweep_row(case, with_aomoto, max_dim)


def run_sweep(n_max: int, m_max: int, k_max: int, with_aomoto: bool = False, parallelism: int = 1,
              max_source_dim: int = 2000, max_dim: int | None = None) -> tuple[list[str], list[dict], dict]:
    cap = max_dim_default() if max_dim is None else max_dim
    cases = sweep_cases(n_max, m_max, k_max, max_source_dim)
    jobs = [(c, with_aomoto, cap) for c in cases]
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            rows = list(pool.map(_sweep_worker, jobs, chunksize=max(1, len(jobs) // (4 * parallelism))))
    else:
        rows = [_sweep_worker(j) for j in jobs]
    rows.sort(key=lambda r: (r["n"], r["k"], tuple(int(x) for x in r["m"].split(","))))
    columns = list(SWEEP_COLUMNS)
    if with_aomoto:
        columns = columns[:-1] + ["skew_dims", "aomoto_pass", "pass"]
    failures = sum(1 for r in rows if not r["pass"])
    summary = {"cases": len(rows), "failures": failures, "pass": failures == 0}
    return columns, rows, summary


# output ---------------------------------------------------------------------


def _text(obj: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict) and any(isinstance(v, (dict, list)) for v in value.values()):
            lines.append(f"{pad}{key}:")
            lines.append(_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  - {_scalar_text(v)}" for v in value)
        else:
            lines.append(f"{pad}{key}: {_scalar_text(value)}")
    return "\n".join(lines)


def _scalar_text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_scalar_text(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_scalar_text(v) for v in value) + "]"
    if isinstance(value, Fraction):
        return format_fraction(value)
    return str(value)


def emit(obj: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    elif fmt == "csv":
        flat = {k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in obj.items()}
        writer = csv.DictWriter(out, fieldnames=list(flat), lineterminator="\n")
        writer.writeheader()
        writer.writerow(flat)
    else:
        out.write(_text(obj) + "\n")


def emit_sweep(columns: list[str], rows: list[dict], summary: dict, fmt: str, out, err) -> None:
    if fmt == "json":
        out.write(json.dumps({"columns": columns, "rows": rows, "summary": summary}, indent=2) + "\n")
        return
    if fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow(r)
        err.write(f"# cases={summary['cases']} failures={summary['failures']}\n")
        return
    for r in rows:
        status = "ok  " if r["pass"] else "FAIL"
        out.write(f"{status} n={r['n']} k={r['k']} m=({r['m']}) regime={r['regime']} "
                  f"ker={r['ker_computed']}/{r['ker_predicted']} coker={r['coker_computed']}/{r['coker_predicted']}\n")
    out.write(f"cases={summary['cases']} failures={summary['failures']}\n")


# argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discrim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, default="text"):
        p.add_argument("--output", choices=["json", "csv", "text"], default=default)

    p = sub.add_parser("kernel", help="kernel/cokernel of f versus the multiplicity prediction")
    p.add_argument("--m", required=True)
    p.add_argument("--k", type=int, required=True)
    add_output(p)

    p = sub.add_parser("w", help="tensor product multiplicities w(m, j)")
    p.add_argument("--m", required=True)
    p.add_argument("--j", type=int)
    add_output(p)

    p = sub.add_parser("aomoto", help="Aomoto complex cohomology of A_{k,n}")
    p.add_argument("--m", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--z", help="comma-separated distinct rationals (default 0..n-1)")
    p.add_argument("--skew", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--max-dim", type=int, help="cap on dim A^k (default DISCRIM_MAX_DIM or 20000)")
    add_output(p)

    p = sub.add_parser("dense", help="dense edges of the projective closure and nonresonance")
    p.add_argument("--m", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--shift", help="comma-separated integer shift a")
    p.add_argument("--z")
    p.add_argument("--bruteforce", action="store_true")
    add_output(p)

    p = sub.add_parser("euler", help="|Euler characteristic| of the complement")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    add_output(p)

    p = sub.add_parser("sweep", help="check the kernel theorem over a grid")
    p.add_argument("--n-max", type=int, default=0)
    p.add_argument("--m-max", type=int, default=0)
    p.add_argument("--k-max", type=int, default=0)
    p.add_argument("--aomoto", action="store_true", help="also verify skew Aomoto cohomology")
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--max-source-dim", type=int, default=2000)
    p.add_argument("--max-dim", type=int)
    add_output(p, default="csv")

    p = sub.add_parser("dump-matrix", help="print an operator matrix as JSON")
    p.add_argument("--m", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--op", choices=["f", "e", "f-irreducible", "shapovalov", "aomoto"], default="f")
    p.add_argument("--q", type=int)
    p.add_argument("--z")
    return parser


def run(args: argparse.Namespace, out, err) -> int:
    cmd = args.command
    if cmd == "sweep":
        for name in ("n_max", "m_max", "k_max", "parallelism"):
            if getattr(args, name) < 0:
                raise InvalidInput(f"--{name.replace('_', '-')} must be nonnegative")
        columns, rows, summary = run_sweep(args.n_max, args.m_max, args.k_max, args.aomoto,
                                           max(1, args.parallelism), args.max_source_dim, args.max_dim)
        emit_sweep(columns, rows, summary, args.output, out, err)
        return EXIT_OK if summary["pass"] else EXIT_FAIL
    if cmd == "euler":
        _require_k(args.k)
        report = euler_report(args.k, args.n)
        emit(report, args.output, out)
        return EXIT_OK

    m = parse_nat_list(args.m)
    _require_m(m)
    z = None
    if getattr(args, "z", None):
        z = parse_rational_list(args.z)
        if len(z) != len(m) or len(set(z)) != len(z):
            raise InvalidInput("--z must list len(m) distinct rationals")
    if cmd == "w":
        if args.j is not None and args.j < 0:
            raise InvalidInput("--j must be nonnegative")
        report = multiplicity_report(m, args.j)
    else:
        _require_k(args.k)
        if cmd == "kernel":
            report = kernel_report(m, args.k)
        elif cmd == "aomoto":
            report = aomoto_report(m, args.k, z, args.skew, args.verify, args.max_dim)
        elif cmd == "dense":
            shift = parse_int_list(args.shift) if args.shift else None
            report = dense_report(m, args.k, shift, args.bruteforce, z)
        elif cmd == "dump-matrix":
            out.write(json.dumps(dump_matrix_report(m, args.k, args.op, args.q, z)) + "\n")
            return EXIT_OK
        else:
            raise InvalidInput(f"unknown command {cmd!r}")
    emit(report, args.output, out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return run(args, out, err)
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except ScaleGuard as exc:
        err.write(f"scale guard: {exc}\n")
        return EXIT_SCALE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
precondition error.  Output is JSON (``--format json``, the default) with
integers rendered as decimal strings, or a plain table (``--format table``).
"""

from __future__ import annotations

import argparse
import cmath
import json
import statistics
import sys
import time
from importlib import resources

from . import __version__
from .circulant import (
    build_from_sequence,
    det_eigprod,
    det_exact,
    eig_oracle,
    norm_oracle,
    one_inf_norms,
)
from .closedform import det_closed, det_closed_preset, eig_closed_all, norm_closed
from .exceptions import ConfigInvalid, InexactBackstep, NonReversible, PlasticError
from .recurrence import (
    Preset,
    RecurrenceSpec,
    square_sum_constant,
    sum_first_identity,
    sum_squares_identity,
    terms,
)
from .verify import VerifyConfig, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def schema_path():
    """Location of the JSON schema every output document validates against."""
    return resources.files(__package__) / "schema" / "output.schema.json"


def _triple(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated integers, got {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated integers, got {text!r}")
    return parts


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _complex(z: complex) -> dict:
    if not cmath.isfinite(z):
        raise OverflowError(f"value {z!r} is outside double precision range")
    return {"re": float(z.real), "im": float(z.imag)}


def _spec_from_args(args) -> RecurrenceSpec:
    if args.preset and args.init:
        raise UsageError("--preset and --init are mutually exclusive")
    if args.preset:
        if args.coeffs:
            raise UsageError("--coeffs only applies with --init")
        return RecurrenceSpec.from_preset(args.preset)
    if not args.init:
        raise UsageError("one of --preset or --init is required")
    p, q, r = args.coeffs or (0, 1, 1)
    return RecurrenceSpec(*args.init, p=p, q=q, r=r)


def _spec_params(spec: RecurrenceSpec) -> dict:
    return {"preset": spec.preset.value, "seeds": list(spec.seeds), "coeffs": list(spec.coeffs)}


def _methods(text: str, allowed: tuple[str, ...]) -> list[str]:
    if text == "all":
        return list(allowed)
    picked = [m for m in text.split(",") if m]
    bad = [m for m in picked if m not in allowed]
    if bad or not picked:
        raise UsageError(f"--method must be 'all' or a comma list of {', '.join(allowed)}")
    return picked


def _discrepancy(values: list) -> float | None:
    """Largest pairwise relative difference; None when a value exceeds float range."""
    try:
        points = [complex(v) for v in values]
    except OverflowError:
        return None
    worst = 0.0
    for i, u in enumerate(points):
        for v in points[i + 1:]:
            worst = max(worst, abs(u - v) / (1 + abs(u)))
    return worst


def _meta(command: str, params: dict) -> dict:
    return {"tool": "plastic_circulant", "version": __version__, "command": command,
            "parameters": params}


# --- commands -------------------------------------------------------------------


def cmd_seq(args) -> dict:
    spec = _spec_from_args(args)
    if args.from_ > args.to:
        raise UsageError("--from must not exceed --to")
    try:
        values = terms(spec, args.from_, args.to)
    except (NonReversible, InexactBackstep) as exc:
        raise UsageError(str(exc)) from exc
    rows = []
    T = square_sum_constant(spec).anchor if args.squares else None
    prefix_sum = prefix_sq = 0
    if (args.sums or args.squares) and args.from_ > 0:
        head = terms(spec, 0, args.from_ - 1)
        prefix_sum, prefix_sq = sum(head), sum(v * v for v in head)
    for n, value in zip(range(args.from_, args.to + 1), values):
        row = {"n": n, "value": str(value)}
        if n >= 0:
            prefix_sum += value
            prefix_sq += value * value
            if args.sums:
                row["sum"] = str(prefix_sum)
                row["sumIdentity"] = str(sum_first_identity(spec, n))
            if args.squares:
                row["squares"] = str(prefix_sq)
                row["squaresIdentity"] = str(sum_squares_identity(spec, n, T))
        rows.append(row)
    params = dict(_spec_params(spec), **{"from": args.from_, "to": args.to,
                                         "sums": args.sums, "squares": args.squares})
    return {"meta": _meta("seq", params), "terms": rows}


def cmd_eig(args) -> dict:
    spec = _spec_from_args(args)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    params = dict(_spec_params(spec), n=args.n, method=args.method)
    doc = {"meta": _meta("eig", params)}
    closed = eig_closed_all(spec, args.n) if args.method in ("closed", "both") else None
    oracle = (eig_oracle(build_from_sequence(spec, args.n)).values
              if args.method in ("oracle", "both") else None)
    primary = closed if closed is not None else oracle
    rows = []
    worst = 0.0
    for j, value in enumerate(primary):
        row = {"j": j, **_complex(value)}
        if closed is not None and oracle is not None:
            err = abs(closed[j] - oracle[j]) / (1 + abs(oracle[j]))
            worst = max(worst, err)
            row["oracle"] = _complex(oracle[j])
            row["relErr"] = err
        rows.append(row)
    doc["spectrum"] = rows
    if args.method == "both":
        doc["discrepancy"] = worst
    return doc


def _scalar_doc(command: str, params: dict, entries: list[dict], raw: list) -> dict:
    doc = {"meta": _meta(command, params), "scalar": dict(entries[0])}
    if len(entries) > 1:
        doc["scalar"]["methods"] = entries
        doc["discrepancy"] = _discrepancy(raw)
    return doc


def cmd_norm(args) -> dict:
    spec = _spec_from_args(args)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    methods = _methods(args.method, ("closed", "oracle", "one", "inf"))
    m = build_from_sequence(spec, args.n)
    entries, raw = [], []
    for method in methods:
        if method == "closed":
            value = norm_closed(spec, args.n)
        elif method == "oracle":
            value = norm_oracle(m)
        else:
            one, inf = one_inf_norms(m)
            value = one if method == "one" else inf
        raw.append(value)
        entries.append({"method": method, "value": str(value) if isinstance(value, int) else value})
    params = dict(_spec_params(spec), n=args.n, method=methods)
    return _scalar_doc("norm", params, entries, raw)


def cmd_det(args) -> dict:
    spec = _spec_from_args(args)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    methods = _methods(args.method, ("closed", "eigprod", "exact"))
    m = build_from_sequence(spec, args.n)
    entries, raw = [], []
    for method in methods:
        if method == "exact":
            value = det_exact(m)
            entries.append({"method": method, "value": str(value)})
        elif method == "eigprod":
            value = det_eigprod(m)
            entries.append({"method": method, **_complex(value)})
        else:
            res = (det_closed_preset(spec.preset, args.n) if args.corollary
                   and spec.preset is not Preset.CUSTOM else det_closed(spec, args.n))
            value = res.value
            entries.append({"method": method, **_complex(value), "fallback": res.fallback})
        raw.append(value)
    params = dict(_spec_params(spec), n=args.n, method=methods, corollary=args.corollary)
    return _scalar_doc("det", params, entries, raw)


def cmd_verify(args) -> tuple[dict, int]:
    try:
        cfg = VerifyConfig(n_max=args.n_max, trials=args.trials, random_seed=args.seed,
                           tol_eig=args.tol_eig, tol_det=args.tol_det,
                           timestamp=args.timestamp)
    except ConfigInvalid as exc:
        raise UsageError(str(exc)) from exc
    report = run_suite(cfg)
    params = {"n_max": args.n_max, "trials": args.trials, "seed": args.seed,
              "tol_eig": args.tol_eig, "tol_det": args.tol_det}
    doc = {"meta": _meta("verify", params), "report": report.to_dict()}
    return doc, EXIT_OK if report.ok else EXIT_VERIFY


BENCH_METHODS = ("eig-closed", "eig-oracle", "det-exact", "norm-closed")


def _median_time(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def cmd_bench(args) -> dict:
    spec = _spec_from_args(args)
    if args.repeat < 1:
        raise UsageError("--repeat must be >= 1")
    if any(n < 1 for n in args.n_list):
        raise UsageError("--n-list entries must be >= 1")
    rows = []
    for n in args.n_list:
        m = build_from_sequence(spec, n)
        jobs = {
            "eig-closed": lambda: eig_closed_all(spec, n),
            "eig-oracle": lambda: eig_oracle(m),
            "det-exact": lambda: det_exact(m),
            "norm-closed": lambda: norm_closed(spec, n),
        }
        for method in BENCH_METHODS:
            if method == "det-exact" and n > args.det_cap:
                rows.append({"n": n, "method": method, "seconds": None, "skipped": True})
                continue
            rows.append({"n": n, "method": method, "seconds": _median_time(jobs[method], args.repeat)})
    params = dict(_spec_params(spec), n_list=args.n_list, repeat=args.repeat, det_cap=args.det_cap)
    return {"meta": _meta("bench", params), "bench": rows}


# --- rendering ------------------------------------------------------------------


def _table(doc: dict) -> str:
    lines = [f"# {doc['meta']['command']} {json.dumps(doc['meta']['parameters'], sort_keys=True)}"]
    if "terms" in doc:
        keys = [k for k in ("n", "value", "sum", "sumIdentity", "squares", "squaresIdentity")
                if any(k in row for row in doc["terms"])]
        lines.append("\t".join(keys))
        lines += ["\t".join(str(row.get(k, "")) for k in keys) for row in doc["terms"]]
    elif "spectrum" in doc:
        lines.append("j\tre\tim" + ("\trelErr" if "discrepancy" in doc else ""))
        for row in doc["spectrum"]:
            cells = [str(row["j"]), repr(row["re"]), repr(row["im"])]
            if "relErr" in row:
                cells.append(f"{row['relErr']:.3e}")
            lines.append("\t".join(cells))
    elif "scalar" in doc:
        for e in doc["scalar"].get("methods", [doc["scalar"]]):
            value = e["value"] if "value" in e else f"{e['re']!r}{e['im']:+}j"
            flag = " (fallback)" if e.get("fallback") else ""
            lines.append(f"{e['method']}\t{value}{flag}")
    elif "report" in doc:
        rep = doc["report"]
        for rec in rep["checks"]:
            lines.append(f"{rec['status']:<22}{rec['name']:<40}{rec['relErr']:.3e}  "
                         f"{json.dumps(rec['params'], sort_keys=True)}")
        lines.append(json.dumps(rep["summary"]["counts"], sort_keys=True))
    elif "bench" in doc:
        lines.append("n\tmethod\tseconds")
        for r in doc["bench"]:
            secs = "skipped" if r["seconds"] is None else f"{r['seconds']:.6g}"
            lines.append(f"{r['n']}\t{r['method']}\t{secs}")
    if doc.get("discrepancy") is not None:
        lines.append(f"discrepancy\t{doc['discrepancy']:.3e}")
    return "\n".join(lines) + "\n"


def _render(doc: dict, fmt: str) -> str:
    if fmt == "table":
        return _table(doc)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# --- parser ---------------------------------------------------------------------


def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=[x.value for x in Preset if x is not Preset.CUSTOM])
    p.add_argument("--init", type=_triple, metavar="A,B,C", help="seeds T0,T1,T2")
    p.add_argument("--coeffs", type=_triple, metavar="P,Q,R", help="default 0,1,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plastic-circulant", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--format", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="sequence terms, optionally with sum identities")
    _add_spec_flags(p)
    p.add_argument("--from", dest="from_", type=int, default=0)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--sums", action="store_true")
    p.add_argument("--squares", action="store_true")

    p = sub.add_parser("eig", help="circulant spectrum")
    _add_spec_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("closed", "oracle", "both"), default="both")

    p = sub.add_parser("norm", help="spectral norm (and 1/inf norms)")
    _add_spec_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", default="closed", help="closed|oracle|one|inf, comma list, or all")

    p = sub.add_parser("det", help="determinant")
    _add_spec_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", default="exact", help="closed|eigprod|exact, comma list, or all")
    p.add_argument("--corollary", action="store_true",
                   help="use the per-preset determinant formula for closed")

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol-eig", type=float, default=1e-9)
    p.add_argument("--tol-det", type=float, default=1e-6)
    p.add_argument("--timestamp", default=None, help="recorded verbatim in the report meta")
    p.add_argument("--out", default=None, help="write the document here instead of stdout")

    p = sub.add_parser("bench", help="time closed forms against oracles")
    _add_spec_flags(p)
    p.add_argument("--n-list", type=_int_list, default=[64, 128, 256])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--det-cap", type=int, default=128,
                   help="skip det-exact above this order (cost grows like n**5 in bit operations)")
    return parser


COMMANDS = {"seq": cmd_seq, "eig": cmd_eig, "norm": cmd_norm, "det": cmd_det, "bench": cmd_bench}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code = EXIT_OK
    try:
        if args.command == "verify":
            doc, code = cmd_verify(args)
        else:
            doc = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PlasticError, OverflowError) as exc:
        print(f"{parser.prog} {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = _render(doc, args.format)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

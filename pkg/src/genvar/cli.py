"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a reported check failed (or an
``--oracle`` cross-check disagreed), 3 an operation's precondition was not met.
"""

from __future__ import annotations

import argparse
import io
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import decomp, dvar, oracle, rvar
from .csvio import dumps_csv, dumps_json, read_table, read_xy, write_xy
from .errors import GenvarError, PreconditionError, ValidationError
from .funcspace import CORPUS, SampledFunction, corpus, power_phi
from .reports import CheckReport
from .svg import polyline_svg

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_PRECONDITION = 0, 1, 2, 3
ORACLE_RTOL = 1e-12


class _UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which means "check failed" here
        raise _UsageError(f"{self.prog}: {message}")


class _Report:
    def __init__(self, command: str, f: Optional[SampledFunction], source: Optional[str]):
        self.input: Dict = {}
        if f is not None:
            self.input = {"file": source, "rows": len(f), "a": f.a, "b": f.b}
        self.params: Dict = {"command": command}
        self.results: Dict = {}
        self.columns: Dict[str, np.ndarray] = {}
        self.checks: List[CheckReport] = []
        self.oracle_failed = False

    def as_dict(self) -> dict:
        return {
            "input": self.input,
            "params": self.params,
            "results": self.results,
            "columns": {k: np.asarray(v, dtype=float) for k, v in self.columns.items()},
            "checks": [c.as_dict() for c in self.checks],
        }

    @property
    def failed(self) -> bool:
        return self.oracle_failed or any(not c.passed for c in self.checks)


def _load(args) -> SampledFunction:
    try:
        with open(args.input, newline="") as fh:
            return read_xy(fh, header=not args.no_header, sort=args.sort)
    except OSError as exc:
        raise ValidationError(f"cannot read {args.input}: {exc.strerror or exc}") from None


def _oracle_compare(rep: _Report, f: SampledFunction, name: str, fast, slow_fn) -> None:
    """Adds ``<name>_oracle`` to the results; never alters reported values."""
    if len(f) > oracle.MAX_POINTS:
        rep.results[f"{name}_oracle"] = "skipped"
        return
    fast = np.asarray(fast, dtype=float)
    slow = np.asarray(slow_fn(), dtype=float)
    ok = bool(np.all(np.abs(fast - slow) <= ORACLE_RTOL * np.maximum(1.0, np.abs(slow))))
    rep.results[f"{name}_oracle"] = "verified" if ok else "mismatch"
    rep.oracle_failed |= not ok


# -- subcommands --------------------------------------------------------------

def cmd_rvar(args) -> _Report:
    f = _load(args)
    rep = _Report("rvar", f, args.input)
    rep.params.update(r=args.r)
    total = rvar.total_r_variation(f, args.r)
    prof = rvar.r_variation_profile(f, args.r)
    rep.results["total"] = total
    if args.partition_out:
        _, part = rvar.optimal_r_partition(f, args.r)
        rep.results["partition"] = list(part.idx)
    rep.columns = {"x": f.xs, "y": f.ys, "profile": prof.values}
    if args.oracle:
        _oracle_compare(rep, f, "total", total,
                        lambda: oracle.brute_force_total_r_variation(f, args.r))
    return rep


def cmd_dvar(args) -> _Report:
    f = _load(args)
    rep = _Report("dvar", f, args.input)
    rep.params.update(d=args.d)
    total = dvar.total_d_variation(f, args.d)
    rep.results["total"] = total
    if args.partition_out:
        _, part = dvar.optimal_d_partition(f, args.d)
        rep.results["partition"] = list(part.idx)
    rep.columns = {"x": f.xs, "y": f.ys, "profile": dvar.d_variation_profile(f, args.d).values}
    if args.oracle:
        _oracle_compare(rep, f, "total", total,
                        lambda: oracle.brute_force_total_d_variation(f, args.d))
    return rep


def cmd_phi(args) -> _Report:
    f = _load(args)
    rep = _Report("phi", f, args.input)
    rep.params.update(r=args.r)
    phi = rvar.phi_from_variation(f, args.r)
    concave = rvar.check_phi_concave(phi, args.tol)
    rep.results["concave"] = concave.passed
    rep.results["concavity_worst_violation"] = concave.worst_violation
    rep.columns = {"offset": phi.offsets, "phi": phi.phis,
                   "phi_concave_majorant": rvar.concave_majorant(phi).phis}
    rep.checks.append(rvar.check_phi_subadditive(phi, args.tol))
    return rep


def _origin(f: SampledFunction, rep: _Report, re_origin: bool) -> SampledFunction:
    if re_origin:
        rep.params["origin_shift"] = -f.a
        return f.shifted(-f.a)
    return f


def cmd_majorant(args) -> _Report:
    f0 = _load(args)
    rep = _Report("majorant", f0, args.input)
    f = _origin(f0, rep, args.re_origin)
    if args.r is not None:
        rep.params.update(r=args.r, regularize_concave=args.regularize_concave)
        phi = rvar.phi_from_variation(f, args.r)
        concave = rvar.check_phi_concave(phi, 0.0)
        if not concave.passed:
            if not args.regularize_concave:
                raise PreconditionError(
                    "error function built from the variation is not concave; "
                    "pass --regularize-concave to use its least concave majorant")
            phi = rvar.concave_majorant(phi)
        rep.results["regularized"] = not concave.passed
        g = decomp.monotone_majorant(f, phi)
    else:
        if args.c is None or args.p is None:
            raise _UsageError("majorant needs --r, or both --c and --p")
        rep.params.update(c=args.c, p=args.p)
        g = decomp.power_majorant(f, args.c, args.p)
        phi = power_phi(args.c, args.p)
    rep.columns = {
        "x": f0.xs, "y": f.ys, "g": g.ys, "gap": g.ys - f.ys,
        "lower": np.asarray(phi(f.xs), dtype=float),
        "upper": 2.0 * np.asarray(phi(f.xs / 2.0), dtype=float),
    }
    rep.checks.append(decomp.check_majorant_sandwich(f, g, phi, args.tol))
    return rep


def cmd_decompose(args) -> _Report:
    f = _load(args)
    rep = _Report("decompose", f, args.input)
    if args.r is not None:
        rep.params.update(r=args.r)
        pair = decomp.jordan_decompose(f, args.r, args.tol)
        if args.oracle:
            prof = rvar.r_variation_profile(f, args.r).values
            _oracle_compare(rep, f, "profile", prof,
                            lambda: oracle.brute_force_r_profile(f, args.r))
    elif args.d is not None:
        rep.params.update(d=args.d, method=args.method)
        pair = dvar.d_decompose(f, args.d, args.method, args.tol)
        if args.oracle:
            slow = (oracle.brute_force_least_d_monotone if args.method == "least"
                    else oracle.brute_force_d_envelope)
            _oracle_compare(rep, f, "part_a", pair.part_a.ys, lambda: slow(f, args.d))
    else:
        raise _UsageError("decompose needs --r or --d")
    rep.columns = {"x": f.xs, "y": f.ys, "part_a": pair.part_a.ys, "part_b": pair.part_b.ys}
    rep.checks.append(pair.report())
    return rep


def _phi_for_check(f: SampledFunction, args) -> rvar.ErrorFunctionTable:
    offsets = f.xs - f.xs[0]
    if args.c is not None and args.p is not None:
        return rvar.ErrorFunctionTable.from_function(power_phi(args.c, args.p), offsets)
    phi = rvar.phi_from_variation(f, args.r)
    if args.regularize_concave:
        phi = rvar.concave_majorant(phi)
    return phi


def cmd_check(args) -> _Report:
    f = _load(args)
    rep = _Report("check", f, args.input)
    rep.params.update(suite=args.suite, tol=args.tol)
    suite = args.suite
    if suite == "902":
        phi = _phi_for_check(f, args)
        rep.params.update(r=args.r, c=args.c, p=args.p)
        rep.columns = {"offset": phi.offsets, "phi": phi.phis}
        rep.checks.append(decomp.check_ineq_902(phi, args.tol))
    elif suite == "980":
        p = 1.0 if args.p is None else args.p
        rep.params.update(p=p)
        offs = f.xs - f.xs[0]
        i, j = np.triu_indices(offs.size)
        pairs = np.column_stack((offs[i], offs[j]))
        rep.results["pairs"] = int(pairs.shape[0])
        rep.checks.append(decomp.check_ineq_980(p, pairs, args.tol))
    elif suite == "holder":
        rep.params.update(r=args.r)
        phi = rvar.phi_from_variation(f, args.r)
        rep.checks.append(rvar.check_holder(f, phi, args.tol))
    elif suite in ("periodic", "bound258"):
        if args.d is None:
            raise _UsageError(f"suite {suite} needs --d")
        rep.params.update(d=args.d)
        if suite == "periodic":
            rep.checks.append(dvar.is_d_periodically_increasing(f, args.d, args.tol))
        else:
            rep.results["total_d_variation"] = dvar.total_d_variation(f, args.d)
            rep.checks.append(dvar.d_bound_check(f, args.d, args.tol))
    return rep


def _parse_params(items: Sequence[str]) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise _UsageError(f"expected key=value, got {item!r}")
        try:
            out[key] = int(raw)
        except ValueError:
            try:
                out[key] = float(raw)
            except ValueError:
                raise _UsageError(f"parameter {key} is not a number: {raw!r}") from None
    return out


def cmd_corpus(args) -> str:
    f = corpus(args.name, **_parse_params(args.params))
    buf = io.StringIO()
    write_xy(f, buf)
    return buf.getvalue()


def cmd_plot(args) -> str:
    try:
        with open(args.input, newline="") as fh:
            table = read_table(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    names = list(table)
    x_name = names[0]
    wanted = [c.strip() for c in args.columns.split(",")] if args.columns else names[1:]
    missing = [c for c in wanted if c not in table]
    if missing:
        raise ValidationError(f"unknown columns {missing}; available: {names}")
    return polyline_svg(table[x_name], {c: table[c] for c in wanted}, title=args.title or "")


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="check tolerance (default 1e-9)")
    common.add_argument("--oracle", action="store_true",
                        help="cross-check against brute force when the grid has at most 20 points")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    common.set_defaults(fmt="json")
    common.add_argument("--no-header", action="store_true", help="input CSV has no header line")
    common.add_argument("--sort", action="store_true", help="sort input rows by x")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = _Parser(prog="genvar", description="Generalized variation of sampled functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rvar", parents=[common], help="total r-variation and profile")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--partition-out", action="store_true", help="include a maximising partition")
    p.set_defaults(func=cmd_rvar)

    p = sub.add_parser("dvar", parents=[common], help="total d-variation and profile")
    p.add_argument("--input", required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--partition-out", action="store_true")
    p.set_defaults(func=cmd_dvar)

    p = sub.add_parser("phi", parents=[common], help="error function from the r-variation")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("majorant", parents=[common], help="nondecreasing majorant and sandwich report")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--regularize-concave", action="store_true")
    p.add_argument("--re-origin", action="store_true", help="shift the grid so it starts at 0")
    p.set_defaults(func=cmd_majorant)

    p = sub.add_parser("decompose", parents=[common], help="Jordan-type or d-periodic decomposition")
    p.add_argument("--input", required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--r", type=float)
    grp.add_argument("--d", type=float)
    p.add_argument("--method", choices=("least", "envelope"), default="least")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", parents=[common], help="run a named property suite")
    p.add_argument("--input", required=True)
    p.add_argument("--suite", required=True, choices=("902", "980", "holder", "periodic", "bound258"))
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--c", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--d", type=float)
    p.add_argument("--regularize-concave", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("corpus", parents=[common], help="emit a witness function as x,y CSV")
    p.add_argument("--name", required=True, choices=sorted(CORPUS))
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("plot", parents=[common], help="SVG polylines from a CSV report")
    p.add_argument("--input", required=True)
    p.add_argument("--columns", help="comma-separated column names (default: all but the first)")
    p.add_argument("--title")
    p.set_defaults(func=cmd_plot)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
        if isinstance(result, str):
            _emit(result, args.out)
            return EXIT_OK
        payload = result.as_dict()
        _emit(dumps_csv(payload) if args.fmt == "csv" else dumps_json(payload), args.out)
        return EXIT_CHECK if result.failed else EXIT_OK
    except PreconditionError as exc:
        print(f"genvar: precondition not met: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except GenvarError as exc:
        print(f"genvar: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())

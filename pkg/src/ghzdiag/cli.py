"""Command-line front end.

Exit codes: 0 fully separable (or check passed), 1 entangled, 2 undetermined,
3 invalid state or failed check, 64 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import models, oracle
from .core import EPS_VALID, StabCoeffs, SVectorFormatError, bits_to_str, random_state, read_svector, validate_state, write_svector
from .separability import EPS_SIGN, Verdict, casebook_alpha, alpha_state, certify, find_sign_vector
from .spectra import SCAN_CAP, npt_scan, state_spectrum

EXIT_SEPARABLE, EXIT_ENTANGLED, EXIT_UNDETERMINED, EXIT_INVALID, EXIT_USAGE = 0, 1, 2, 3, 64
ORACLE_CAP = 8

_VERDICT_EXIT = {
    Verdict.FULLY_SEPARABLE: EXIT_SEPARABLE,
    Verdict.ENTANGLED_NPT: EXIT_ENTANGLED,
    Verdict.UNDETERMINED: EXIT_UNDETERMINED,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _n_range(text: str) -> list[int]:
    lo, _, hi = text.partition(":")
    try:
        a, b = int(lo), int(hi or lo)
    except ValueError:
        raise UsageError(f"bad N range {text!r}; use N or A:B") from None
    if a < 2 or b < a:
        raise UsageError(f"invalid N range {text!r}")
    return list(range(a, b + 1))


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _load_state(args) -> tuple[StabCoeffs, str]:
    sources = [
        args.input is not None,
        args.beta is not None,
        args.p is not None,
        args.alpha is not None,
    ]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --input, --beta, --p, --alpha")
    if args.input is not None:
        return read_svector(args.input, args.tolerance), f"file {args.input}"
    if args.alpha is not None:
        return alpha_state(args.alpha), f"alpha-family alpha={_fmt(args.alpha)}"
    if args.n is None:
        raise UsageError("--n is required for model states")
    if args.beta is not None:
        deltas = args.delta or [1.0]
        if len(deltas) == 1:
            deltas = deltas * args.n
        if len(deltas) != args.n:
            raise UsageError(f"need 1 or {args.n} values for --delta")
        tp = models.ThermalParams(args.beta, tuple(deltas))
        return models.thermal_s(tp), f"thermal beta={_fmt(args.beta)} deltas={','.join(map(_fmt, deltas))}"
    dp = models.DepolarizingParams(args.p, args.n)
    return models.depolarized_s(dp), f"depolarizing p={_fmt(args.p)}"


def cmd_analyze(args) -> int:
    state, source = _load_state(args)
    if args.dump_svector:
        write_svector(state, args.dump_svector)
    n = state.n_qubits
    validity = validate_state(state, args.tolerance)
    lines = [
        f"source={source}",
        f"n_qubits={n}",
        f"valid={validity.valid}",
        f"state_min_eigenvalue={_fmt(validity.min_eigenvalue)}",
    ]
    if not validity.valid:
        lines.append(f"failing_index={validity.failing_index}")
        _emit("\n".join(lines) + "\n", args.output)
        return EXIT_INVALID
    if n <= args.scan_cap:
        report = npt_scan(state, eps=args.tolerance, scan_cap=args.scan_cap)
        for z, (fmin, x) in report.per_z.items():
            lines.append(
                f"pt_min[z={bits_to_str(z, n - 1)}]={_fmt(fmin / state.dim)} x={bits_to_str(x, n)}"
            )
        lines.append(f"npt={report.is_npt}")
    else:
        lines.append(f"npt=skipped (N above scan cap {args.scan_cap})")
    sv = find_sign_vector(state, args.sign_tolerance)
    lines.append(f"sign_condition={'holds' if sv.exists else 'fails'}")
    cert = certify(state, args.tolerance, args.sign_tolerance, args.scan_cap)
    lines.append(f"verdict={cert.verdict.value}")
    lines.append("")
    lines += cert.lines()
    _emit("\n".join(lines) + "\n", args.output)
    return _VERDICT_EXIT[cert.verdict]


def threshold_rows(ns, gap: float, field: float | None):
    for n in ns:
        beta_c = models.thermal_critical_beta([gap] * n)
        row = [n, beta_c, 1.0 / beta_c]
        if field is not None:
            row.append(models.perturbed_critical_beta(n, gap, field))
        row += [models.dephasing_critical_p(n), models.depolarizing_critical_p(n)]
        yield row


def cmd_thresholds(args) -> int:
    ns = _n_range(args.n)
    header = ["N", "beta_c", "T_c"]
    if args.delta_field is not None:
        header.append("beta_delta")
    header += ["p_c_dephasing", "p_c_depolarizing"]
    _emit(_csv(header, threshold_rows(ns, args.delta, args.delta_field)), args.output)
    return 0


def cmd_figure_data(args) -> int:
    ns = _n_range(args.n)
    out = Path(args.output or ".")
    out.mkdir(parents=True, exist_ok=True)
    fig1, fig2 = [], []
    for n in ns:
        beta_c = models.thermal_critical_beta([args.delta] * n)
        beta_d = models.perturbed_critical_beta(n, args.delta, args.delta_field)
        fig1.append([n, 1.0 / beta_c, 0.0 if math.isinf(beta_d) else 1.0 / beta_d])
        fig2.append([n, models.dephasing_critical_p(n), models.depolarizing_critical_p(n)])
    (out / "fig1.csv").write_text(_csv(["N", "T_c_PPT", "T_c_lower_bound_at_delta"], fig1))
    (out / "fig2.csv").write_text(_csv(["N", "p_c_dephasing", "p_c_depolarizing"], fig2))
    print(f"wrote {out / 'fig1.csv'}")
    print(f"wrote {out / 'fig2.csv'}")
    return 0


def cmd_oracle_check(args) -> int:
    n = args.n
    if n is None:
        raise UsageError("--n is required")
    if not 2 <= n <= ORACLE_CAP:
        raise UsageError(f"oracle check refused for N={n}: dense cap is {ORACLE_CAP}")
    rng = np.random.default_rng(args.seed)
    states = [StabCoeffs(n, np.ones(1 << n))]  # pure GHZ
    states += [random_state(n, rng) for _ in range(args.samples)]
    worst = 0.0
    for st in states:
        for z in range(1 << (n - 1)):
            worst = max(worst, oracle.cross_check(st, z))
    ok = worst < 1e-9
    text = "\n".join([
        f"seed={args.seed}",
        f"n_qubits={n}",
        f"samples={len(states)}",
        f"bipartitions={1 << (n - 1)}",
        f"max_discrepancy={worst:.3e}",
        f"status={'PASS' if ok else 'FAIL'}",
    ])
    _emit(text + "\n", args.output)
    return 0 if ok else EXIT_INVALID


def cmd_casebook(args) -> int:
    if args.alpha is None:
        raise UsageError("--alpha is required")
    if args.alpha < 0:
        raise UsageError("--alpha must be non-negative")
    rep = casebook_alpha(args.alpha, args.tolerance)
    _emit("\n".join(rep.lines()) + "\n", args.output)
    if rep.verdict is None:
        return EXIT_INVALID
    return _VERDICT_EXIT[rep.verdict]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ghzdiag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--tolerance", type=float, default=EPS_VALID, help="validity slack per normalized eigenvalue")
        p.add_argument("--output", help="write to PATH instead of stdout")

    p = sub.add_parser("analyze", help="certify a state as separable or entangled")
    p.add_argument("--input", help="s-vector file")
    p.add_argument("--n", type=int)
    p.add_argument("--beta", type=float, help="thermal state at inverse temperature BETA")
    p.add_argument("--delta", type=float, nargs="+", help="couplings (one value or one per qubit)")
    p.add_argument("--p", type=float, help="depolarized GHZ state")
    p.add_argument("--alpha", type=float, help="three-qubit alpha family")
    p.add_argument("--sign-tolerance", type=float, default=EPS_SIGN)
    p.add_argument("--scan-cap", type=int, default=SCAN_CAP)
    p.add_argument("--dump-svector", metavar="PATH", help="also write the analysed s-vector")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("thresholds", help="critical temperatures and noise rates as CSV")
    p.add_argument("--n", default="2:12", help="N or inclusive range A:B")
    p.add_argument("--delta", type=float, default=1.0, help="coupling (energy unit)")
    p.add_argument("--delta-field", type=float, help="uniform field strength for the perturbed bound")
    common(p)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("figure-data", help="write fig1.csv and fig2.csv")
    p.add_argument("--n", default="2:12")
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--delta-field", type=float, default=0.3)
    p.add_argument("--output", help="output directory (default: current)")
    p.set_defaults(func=cmd_figure_data)

    p = sub.add_parser("oracle-check", help="compare fast spectra with dense diagonalization")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=50)
    common(p)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("casebook", help="three-qubit alpha family report")
    p.add_argument("--alpha", type=float)
    common(p)
    p.set_defaults(func=cmd_casebook)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SVectorFormatError, ValueError) as exc:
        print(f"ghzdiag {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

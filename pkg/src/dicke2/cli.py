"""Command-line interface: ``dicke2 {sweep,figure,threshold,check,state}``."""
import argparse
import json
import math
import sys

from .dynamics import SystemParams
from .errors import DickeError, InvalidInputError
from .measures import negativity, squeezing_parameters
from .sweeps import (
    FIGURE_STEPS,
    FIGURES,
    KINDS,
    M_MODES,
    SOLVERS,
    Scenario,
    SweepRow,
    correlation_for,
    figure_sweep,
    find_threshold,
    run_scenario_sweep,
    self_check,
    steady_state_for,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def fmt(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def write_rows(rows, out, style="csv"):
    cols = SweepRow.columns()
    if style == "csv":
        out.write(",".join(cols) + "\n")
        for row in rows:
            out.write(",".join(fmt(v) for v in row.values()) + "\n")
    else:
        for row in rows:
            rec = {c: (fmt(v) if math.isinf(v) else v) for c, v in zip(cols, row.values())}
            out.write(json.dumps(rec) + "\n")


def _sign(text):
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"m-sign must be '+' or '-', got {text!r}")


def _add_output(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-", help="output path (default: stdout)")


def _add_field_args(p):
    p.add_argument("--omega", type=float, default=0.0, help="Rabi frequency in units of Gamma")
    p.add_argument("--n-ph", type=float, default=0.0, help="squeezed-field photon number N")
    p.add_argument("--m-mode", choices=M_MODES, default="quantum")
    p.add_argument("--m-sign", type=_sign, default=1, help="sign of M for classical/quantum modes")
    p.add_argument("--m-value", type=float, default=None, help="M for --m-mode custom")
    p.add_argument("--gamma", type=float, default=1.0, help="decay rate (sets the unit)")


def build_parser():
    parser = _Parser(prog="dicke2", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="sweep one scenario over a grid")
    sw.add_argument("--scenario", choices=KINDS, required=True)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--steps", type=int, default=FIGURE_STEPS)
    sw.add_argument("--solver", choices=SOLVERS, default=None)
    _add_field_args(sw)
    _add_output(sw)

    fig = sub.add_parser("figure", help="data for one of the four preset figures")
    fig.add_argument("number", type=int, choices=sorted(FIGURES))
    fig.add_argument("--steps", type=int, default=FIGURE_STEPS)
    fig.add_argument("--solver", choices=SOLVERS, default=None)
    _add_output(fig)

    th = sub.add_parser("threshold", help="locate the entanglement onset by bisection")
    th.add_argument("--scenario", choices=KINDS, required=True)
    th.add_argument("--start", type=float, required=True, help="bracket low end")
    th.add_argument("--stop", type=float, required=True, help="bracket high end")
    th.add_argument("--tol", type=float, default=1e-6)
    _add_field_args(th)

    sub.add_parser("check", help="run every cross-validation")

    st = sub.add_parser("state", help="print one steady state and its measures")
    st.add_argument("--solver", choices=SOLVERS, default="numeric")
    st.add_argument("--format", choices=("text", "json"), default="text")
    _add_field_args(st)
    return parser


def _scenario(args):
    return Scenario(
        args.scenario,
        n_ph=args.n_ph,
        m_mode=args.m_mode,
        m_sign=args.m_sign,
        m_value=args.m_value,
        gamma=args.gamma,
    )


def _open(path):
    return sys.stdout if path == "-" else open(path, "w", newline="")


def _emit_rows(rows, args):
    out = _open(args.output)
    try:
        write_rows(rows, out, args.format)
    finally:
        if out is not sys.stdout:
            out.close()


def _cmd_state(args):
    m = correlation_for(args.n_ph, args.m_mode, args.m_sign, args.m_value)
    params = SystemParams(args.omega * args.gamma, args.gamma, args.n_ph, m)
    rho = steady_state_for(params, args.solver)
    sq = squeezing_parameters(rho)
    ent = negativity(rho)
    record = {
        "omega": args.omega,
        "n_ph": args.n_ph,
        "m_corr": m,
        "rho": {k: float(getattr(rho, k).real) for k in ("ee", "ss", "gg", "es", "sg", "eg")},
        "alpha": sq.alpha,
        "u_param": float(sq.u_param),
        "xi_s_n1": sq.xi_s_n1,
        "xi_s_n2": sq.xi_s_n2,
        "xi_r_n1": fmt(sq.xi_r_n1) if sq.xi_r_unbounded else float(sq.xi_r_n1),
        "xi_r_n2": fmt(sq.xi_r_n2) if sq.xi_r_unbounded else float(sq.xi_r_n2),
        "pt_eigenvalues": [float(v) for v in ent.pt_eigenvalues],
        "measure_e": ent.measure_e,
    }
    if args.format == "json":
        print(json.dumps(record))
    else:
        for key, value in record.items():
            print(f"{key:>15}: {value}")
    return EXIT_OK


def _cmd_check(_args):
    results = self_check()
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.name:<{width}}  max residual {r.max_residual:.3e}"
        if r.detail:
            line += f"  ({r.detail})"
        print(line)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed: {'; '.join(failed)}", file=sys.stderr)
        return EXIT_NUMERIC
    print("all checks passed")
    return EXIT_OK


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"dicke2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "sweep":
            rows = run_scenario_sweep(_scenario(args), args.start, args.stop, args.steps, args.solver)
            _emit_rows(rows, args)
        elif args.command == "figure":
            _emit_rows(figure_sweep(args.number, args.steps, args.solver), args)
        elif args.command == "threshold":
            x = find_threshold(_scenario(args), args.start, args.stop, args.tol)
            print(format(x, ".12g"))
        elif args.command == "check":
            return _cmd_check(args)
        elif args.command == "state":
            return _cmd_state(args)
    except InvalidInputError as exc:
        print(f"dicke2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DickeError as exc:
        print(f"dicke2: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

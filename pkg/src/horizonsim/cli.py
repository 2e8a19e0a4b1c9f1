"""Command-line entry point: ``horizonsim validate|run|paper|ensemble``.

Exit codes: 0 success, 1 causality violations, 2 parse or input errors,
3 numeric or internal errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dsl, horizon, papermodel, report
from .errors import CausalityError, HorizonSimError, InvalidParameterError, NotNormalizedError

EXIT_OK = 0
EXIT_CAUSALITY = 1
EXIT_PARSE = 2
EXIT_NUMERIC = 3


class _InputError(Exception):
    pass


def _write(text, path, stdout):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _load(path, stderr):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise _InputError(f"{path}: {err}") from None
    return dsl.parse_circuit(text, source=str(path))


def _report_violations(doc, violations, stderr):
    for v in violations:
        names = ", ".join(doc.circuit.names[q] for q in v.qubits)
        d = dsl.Diagnostic(doc.line_of(v.event_index), 1, "error",
                           f"{v.kind.value} on ({names})", violation=v)
        print(d.format(doc.source), file=stderr)


def cmd_validate(args, stdout, stderr):
    doc = _load(args.file, stderr)
    violations = horizon.validate_circuit(doc.circuit)
    if violations:
        _report_violations(doc, violations, stderr)
        return EXIT_CAUSALITY
    c = doc.circuit
    print(f"{doc.source}: ok ({c.n_qubits} qubits, {len(c.events)} events, causal)", file=stdout)
    return EXIT_OK


def cmd_run(args, stdout, stderr):
    doc = _load(args.file, stderr)
    violations = horizon.validate_circuit(doc.circuit)
    if violations:
        _report_violations(doc, violations, stderr)
        return EXIT_CAUSALITY
    _, trace = horizon.run(doc.circuit)
    render = report.render_trace_json if args.json else report.render_trace_csv
    _write(render(trace, bits=args.bits), args.trace, stdout)
    return EXIT_OK


def _params(args):
    # unspecified coefficients default to the symmetric case 1/sqrt(2)
    r = papermodel.ModelParams.symmetric().lam
    given = (args.lam, args.mu, args.alpha, args.beta)
    lam, mu, alpha, beta = (complex(*v) if v else r for v in given)
    try:
        return papermodel.ModelParams(lam, mu, alpha, beta)
    except NotNormalizedError as err:
        raise _InputError(str(err)) from None


def _schedule(taus):
    try:
        return papermodel.Schedule(*taus)
    except InvalidParameterError as err:
        raise _InputError(str(err)) from None


def cmd_paper(args, stdout, stderr):
    params = _params(args)
    schedule = _schedule(args.tau) if args.tau else papermodel.DEFAULT_SCHEDULE
    circuit = papermodel.build_canonical(params, schedule, args.variant)
    _, trace = horizon.run(circuit, pairs=papermodel.PAIR_GROUPS)

    labels = ("Psi0 (initial)", "Psi1 (after stage 1)", "Psi2 (after stage 2)",
              "Psi3 (after stage 3)")
    for label, state in zip(labels, papermodel.run_stages(params, schedule, args.variant)):
        print(f"{label}: {report.format_state(state, circuit.names)}", file=stdout)
    s1 = papermodel.s_prime(params.lam, params.mu)
    s2 = papermodel.s_bis(params.alpha, params.beta)
    print(f"S_prime = {report.fmt_real(s1)}  S_bis = {report.fmt_real(s2)}", file=stdout)

    columns = tuple(papermodel.PAIR_GROUPS)
    render = report.render_trace_json if args.json else report.render_trace_csv
    _write(render(trace, columns, bits=args.bits), args.trace, stdout)
    return EXIT_OK


def cmd_ensemble(args, stdout, stderr):
    try:
        config = papermodel.EnsembleConfig(
            blocks=args.blocks,
            schedule=_schedule(args.tau),
            jitter=tuple(args.jitter),
            params=_params(args),
            seed=args.seed,
            samples=args.samples,
            t_end=args.t_end,
            mode=args.mode,
        )
    except InvalidParameterError as err:
        raise _InputError(str(err)) from None
    curve = papermodel.ensemble_page_curve(config)
    _write(report.render_page_curve_csv(curve), args.out, stdout)
    return EXIT_OK


def _add_param_flags(p):
    for flag, dest in (("--lambda", "lam"), ("--mu", "mu"), ("--alpha", "alpha"), ("--beta", "beta")):
        p.add_argument(flag, dest=dest, nargs=2, type=float, metavar=("RE", "IM"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="horizonsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a circuit file against the causality rules")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="simulate a circuit file and emit its entropy trace")
    p.add_argument("file")
    p.add_argument("--trace", metavar="OUT")
    p.add_argument("--json", action="store_true")
    p.add_argument("--bits", action="store_true", help="report entropy in bits")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("paper", help="run the canonical four-qubit evaporation circuit")
    p.add_argument("--variant", choices=papermodel.VARIANTS, default="A")
    _add_param_flags(p)
    p.add_argument("--tau", nargs=4, type=float, metavar=("T1", "T2", "T3", "T4"))
    p.add_argument("--trace", metavar="OUT")
    p.add_argument("--json", action="store_true")
    p.add_argument("--bits", action="store_true")
    p.set_defaults(func=cmd_paper)

    p = sub.add_parser("ensemble", help="Page curve from many jittered four-qubit blocks")
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tau", nargs=4, type=float, required=True, metavar=("T1", "T2", "T3", "T4"))
    p.add_argument("--jitter", nargs=4, type=float, required=True, metavar=("W1", "W2", "W3", "W4"))
    p.add_argument("--t-end", dest="t_end", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--mode", choices=papermodel.MODES, default="total")
    p.add_argument("--out", required=True)
    _add_param_flags(p)
    p.set_defaults(func=cmd_ensemble)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE
    try:
        return args.func(args, stdout, stderr)
    except dsl.DSLParseError as err:
        for d in err.diagnostics:
            print(d.format(err.source), file=stderr)
        return EXIT_PARSE
    except _InputError as err:
        print(f"error: {err}", file=stderr)
        return EXIT_PARSE
    except CausalityError as err:
        print(f"error: {err}", file=stderr)
        return EXIT_CAUSALITY
    except HorizonSimError as err:
        print(f"error: {err}", file=stderr)
        return EXIT_NUMERIC
    except Exception as err:  # noqa: BLE001 - any other failure is an internal error
        print(f"internal error: {type(err).__name__}: {err}", file=stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

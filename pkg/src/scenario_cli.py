#!/usr/bin/env python3
"""
Ququart Toolkit - Command-Line Front End

Subcommands:

  analyze   every measure of one coefficient set, numeric and closed form
  sweep     CSV/JSON table over a one-parameter state family
  figure    the curve set of one of the five figures
  verify    the invariant audit on a seeded random ensemble

Exit codes: 0 success, 1 verification failure, 2 configuration error.
Data goes to stdout (or --out); diagnostics go to stderr.

Licensed under GPL v3
"""

import argparse
import json
import sys
from typing import Callable, List, Optional

from audit import AuditResult, Auditor
from biphoton_core import describe
from console import make_logger, print_fail, print_header, print_pass
from correlation_report import StateAnalysis, analyze_coeffs
from datasets import FigureRunner, SweepRunner, analysis_table, format_number
from errors import (
    ConfigError,
    ConvergenceError,
    DimensionError,
    DomainError,
    InvariantError,
    NormalizationError,
)
from scenarios import (
    DEFAULT_GRID_POINTS,
    Family,
    FigureId,
    ScenarioConfig,
    SweepParameter,
    SweepSpec,
    load_config,
    parse_family,
    sweep_columns,
)

try:
    from build_config import DEFAULT_JOBS, DEFAULT_SEED, DEFAULT_TRIALS
except ImportError:
    DEFAULT_JOBS = 1
    DEFAULT_SEED = 42
    DEFAULT_TRIALS = 1000

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2

Logger = Callable[[str, str], None]


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def write_output(text: str, out: Optional[str]):
    if out in (None, '-'):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(out, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    except OSError as e:
        raise ConfigError(f"cannot write {out}: {e}")


def render_analysis_text(analysis: StateAnalysis) -> str:
    lines = []
    coeffs = analysis.coeffs
    lines.append("coefficients")
    for name, z in zip(('C1', 'C2', 'C3', 'C4'), coeffs.as_array()):
        lines.append(f"  {name:<10} {format_number(z.real)} {format_number(z.imag)}")
    for name, z in zip(('B_plus', 'B_minus'), (coeffs.mixed.b_plus, coeffs.mixed.b_minus)):
        lines.append(f"  {name:<10} {format_number(z.real)} {format_number(z.imag)}")

    for title, rep in (('polarization (frequency traced)', analysis.pol),
                       ('frequency (polarization traced)', analysis.freq)):
        lines.append(title)
        for key, value in rep.as_dict().items():
            if key == 'stokes':
                value = ' '.join(format_number(v) for v in value)
            else:
                value = format_number(value)
            lines.append(f"  {key:<10} {value}")

    lines.append("two-qubit model")
    tq = analysis.two_qubit
    for key, value in (('C_2qb', tq.C_2qb), ('K_2qb', tq.K_2qb), ('P_2qb', tq.P_2qb)):
        lines.append(f"  {key:<10} {format_number(value)}")

    lines.append("numeric vs closed form")
    lines.append(f"  {'measure':<10} {'numeric':<20} {'closed':<20} residual")
    for cmp in analysis.comparisons():
        lines.append(f"  {cmp.name:<10} {format_number(cmp.numeric):<20} "
                     f"{format_number(cmp.closed):<20} {format_number(cmp.residual)}")
    return '\n'.join(lines) + '\n'


def render_audit(result: AuditResult, stream=None):
    print_header(f"Invariant audit (seed={result.seed}, trials={result.trials})", stream)
    for check in result.checks:
        line = (f"{check.name}: max residual {format_number(check.max_residual)} "
                f"(tolerance {check.tolerance:g})")
        if check.detail:
            line += f" - {check.detail}"
        if check.passed:
            print_pass(line, stream)
        else:
            print_fail(line, stream)
    verdict = "ALL INVARIANTS HOLD" if result.all_passed else "SOME INVARIANTS FAILED"
    print(f"\nRESULT: {verdict}", file=stream if stream is not None else sys.stdout)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args, log: Logger) -> int:
    config = load_config(args.config)
    coeffs = config.coeffs()
    log(f"Analyzing {describe(coeffs)}", 'info')
    analysis = analyze_coeffs(coeffs)
    log(f"Analyzed state with |B-|^2 = {analysis.b_minus_sq:.6f}", 'info')
    if args.format == 'json':
        text = json.dumps(analysis.as_dict(), indent=2) + '\n'
    elif args.format == 'csv':
        text = analysis_table(analysis).to_csv()
    else:
        text = render_analysis_text(analysis)
    write_output(text, args.out)
    return EXIT_OK


def sweep_config_from_args(args) -> ScenarioConfig:
    if args.config:
        return load_config(args.config)
    if args.family is None:
        raise ConfigError("sweep needs --config or --family")
    phases = {'phi': args.phi, 'phi1': args.phi1, 'phi4': args.phi4}
    return ScenarioConfig(
        family=parse_family(args.family),
        b_minus=args.b_minus,
        phases=phases,
        sweep=SweepSpec(
            parameter=SweepParameter(args.parameter),
            start=args.start,
            stop=args.stop,
            steps=args.steps,
        ),
    )


def cmd_sweep(args, log: Logger) -> int:
    config = sweep_config_from_args(args)
    runner = SweepRunner(sweep_columns(config.outputs), jobs=args.jobs, on_log=log)
    table = runner.table(config.points())
    write_output(table.render(args.format), args.out)
    log(f"Wrote {len(table.rows)} rows", 'success')
    return EXIT_OK


def cmd_figure(args, log: Logger) -> int:
    runner = FigureRunner(FigureId(args.fig), jobs=args.jobs, on_log=log)
    table = runner.table(args.steps)
    write_output(table.render(args.format), args.out)
    log(f"Wrote {len(table.rows)} rows", 'success')
    return EXIT_OK


def cmd_verify(args, log: Logger) -> int:
    auditor = Auditor(seed=args.seed, trials=args.trials, inject_fault=args.inject_fault,
                      jobs=args.jobs, on_log=log)
    result = auditor.audit()
    render_audit(result, sys.stdout)
    return EXIT_OK if result.all_passed else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ququart',
        description='Correlation measures of biphoton polarization-frequency ququarts',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s analyze --config state.json            Every measure of one state
  %(prog)s sweep --family example1 --steps 101    |B-| sweep as CSV
  %(prog)s figure --fig 3 --out fig3.csv          Dataset of one figure
  %(prog)s verify --seed 42 --trials 1000         Invariant audit
        """,
    )
    parser.add_argument('--quiet', '-q', action='store_true',
                        help='Suppress informational messages on stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    analyze = sub.add_parser('analyze', help='Analyze one coefficient set')
    analyze.add_argument('--config', required=True, help='Scenario JSON file')
    analyze.add_argument('--format', choices=['text', 'csv', 'json'], default='text')
    analyze.add_argument('--out', default='-', help='Output file (default: stdout)')
    analyze.set_defaults(handler=cmd_analyze)

    sweep = sub.add_parser('sweep', help='Sweep a state family')
    source = sweep.add_mutually_exclusive_group()
    source.add_argument('--config', help='Scenario JSON file with family and sweep')
    source.add_argument('--family', choices=[f.value for f in Family])
    sweep.add_argument('--from', dest='start', type=float, default=0.0)
    sweep.add_argument('--to', dest='stop', type=float, default=1.0)
    sweep.add_argument('--steps', type=int, default=DEFAULT_GRID_POINTS)
    sweep.add_argument('--parameter', choices=[p.value for p in SweepParameter],
                       default=SweepParameter.BMinus.value)
    sweep.add_argument('--b-minus', dest='b_minus', type=float, default=0.0,
                       help='Fixed |B-| when sweeping a phase')
    sweep.add_argument('--phi', type=float, default=0.0, help='Phase of B+ (example1)')
    sweep.add_argument('--phi1', type=float, default=0.0, help='Phase of C1 (example2b)')
    sweep.add_argument('--phi4', type=float, default=0.0, help='Phase of C4 (example2b)')
    sweep.add_argument('--jobs', type=_positive_int, default=DEFAULT_JOBS)
    sweep.add_argument('--format', choices=['csv', 'json'], default='csv')
    sweep.add_argument('--out', default='-')
    sweep.set_defaults(handler=cmd_sweep)

    figure = sub.add_parser('figure', help='Emit a figure dataset')
    figure.add_argument('--fig', type=int, choices=[f.value for f in FigureId], required=True)
    figure.add_argument('--steps', type=int, default=DEFAULT_GRID_POINTS)
    figure.add_argument('--jobs', type=_positive_int, default=DEFAULT_JOBS)
    figure.add_argument('--format', choices=['csv', 'json'], default='csv')
    figure.add_argument('--out', default='-')
    figure.set_defaults(handler=cmd_figure)

    verify = sub.add_parser('verify', help='Run the invariant audit')
    verify.add_argument('--seed', type=int, default=DEFAULT_SEED)
    verify.add_argument('--trials', type=_positive_int, default=DEFAULT_TRIALS)
    verify.add_argument('--jobs', type=_positive_int, default=DEFAULT_JOBS)
    verify.add_argument('--inject-fault', action='store_true',
                        help='Feed a non-Hermitian matrix through validation')
    verify.set_defaults(handler=cmd_verify)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_CONFIG_ERROR

    log = make_logger(quiet=args.quiet)
    try:
        return args.handler(args, log)
    except (ConfigError, NormalizationError, DomainError, DimensionError) as e:
        log(str(e), 'error')
        return EXIT_CONFIG_ERROR
    except (InvariantError, ConvergenceError) as e:
        log(str(e), 'error')
        return EXIT_VERIFY_FAILED


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()

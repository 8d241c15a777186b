#!/usr/bin/env python3
"""
QRT Workbench - Command Line

Lists the catalogue, verifies examples, builds QRT maps from a user
invariant, iterates orbits and checks user-supplied reductions.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 singular or
degenerate input.
"""

import argparse
import csv
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

# Add repository root to Python path for imports
current_dir = Path(__file__).parent
root_dir = current_dir.parent.parent
sys.path.insert(0, str(root_dir))

from rich.console import Console

from config import CheckMode, ModePolicy, load_workbench_config
from src.qrtw.algebra import Certifier, FormulaFile, FunctionField, RationalFunction, parse_expression
from src.qrtw.maps import RationalMap, check_commuting_square, iterate_orbit
from src.qrtw.qrt import build_qrt, switch, validate_biquadratic
from src.qrtw.registry import ParameterAssignment, instantiate, list_examples, reduced
from src.qrtw.utils import (
    EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, ErrorHandler, QrtwError, parse_rational
)
from src.qrtw.verify import CheckResult, dump_json, print_report, reports_payload, run_suite, write_reports

logger = logging.getLogger(__name__)


@dataclass
class CliConfig:
    """Resolved options of one invocation."""
    command: str
    examples: List[str] = field(default_factory=list)
    params: ParameterAssignment = field(default_factory=ParameterAssignment)
    policy: ModePolicy = field(default_factory=ModePolicy.default)
    output: Optional[Path] = None
    format: str = 'json'
    verbose: bool = False
    timings: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'CliConfig':
        settings = load_workbench_config(args.config)
        policy = settings.get_mode_policy(seed=args.seed)
        if args.mode is not None:
            mode = CheckMode(args.mode)
            policy.mode_4d = policy.mode_6d = mode
            policy.exact_degree_cap = None
        if args.trials is not None:
            policy.trials = args.trials
        examples = list(getattr(args, 'examples', None) or [])
        if getattr(args, 'all', False):
            examples = [summary.name for summary in list_examples()]
        if args.command == 'verify' and not examples:
            raise ValueError("verify needs an example name or --all")
        return cls(
            command=args.command,
            examples=examples,
            params=ParameterAssignment.parse(args.param or [], seed=policy.seed),
            policy=policy,
            output=Path(args.output) if getattr(args, 'output', None) else None,
            format=getattr(args, 'format', None) or 'json',
            verbose=args.verbose,
            timings=getattr(args, 'timings', False),
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None,
                        help='Random seed (default: QRTW_SEED, then the config file)')
    common.add_argument('--mode', choices=[m.value for m in CheckMode], default=None,
                        help='Force one check mode for every dimension')
    common.add_argument('--trials', type=int, default=None, help='Trials per randomized check')
    common.add_argument('--param', action='append', metavar='NAME=VALUE',
                        help='Parameter value as p/q, or "symbolic" (repeatable)')
    common.add_argument('--config', default=None, help='Path to qrtw-config.yml')
    common.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')

    parser = argparse.ArgumentParser(
        prog='qrtw',
        description='QRT Workbench - exact verification of integrable maps',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  qrtw list
  qrtw verify mcm4d --format text
  qrtw verify --all --output reports/all.json --timings
  qrtw qrt --invariant h.qrt --u u --v v
  qrtw orbit mcm4d --map phi_red --start 1,5 --param a=1 --param k=2 --steps 20
  qrtw reduce-check --phi phi.qrt --psi psi.qrt --pi pi.qrt --variables x1,x2,y1,y2 --targets u1,v1
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    list_cmd = sub.add_parser('list', parents=[common], help='List catalogue examples')
    list_cmd.add_argument('--dim', type=int, default=None, help='Only examples of this ambient dimension')

    verify = sub.add_parser('verify', parents=[common], help='Run the check suite')
    verify.add_argument('examples', nargs='*', help='Example names')
    verify.add_argument('--all', action='store_true', help='Verify every catalogue example')
    verify.add_argument('--format', choices=['json', 'text'], default='json')
    verify.add_argument('--output', default=None, help='Write the JSON report here')
    verify.add_argument('--timings', action='store_true', help='Record wall time per check')

    qrt = sub.add_parser('qrt', parents=[common], help='Build the QRT map of a biquadratic invariant')
    qrt.add_argument('--invariant', required=True, help='Formula file defining the invariant')
    qrt.add_argument('--name', default=None, help='Definition to use (default: the last function)')
    qrt.add_argument('--u', required=True, help='Horizontal coordinate')
    qrt.add_argument('--v', required=True, help='Vertical coordinate')

    orbit = sub.add_parser('orbit', parents=[common], help='Iterate a catalogue map')
    orbit.add_argument('examples', nargs=1, help='Example name')
    orbit.add_argument('--map', required=True, help='Reduced or ambient map name')
    orbit.add_argument('--start', required=True, help='Comma separated start point, p/q entries')
    orbit.add_argument('--steps', type=int, default=None)
    orbit.add_argument('--float', action='store_true', help='Iterate in floating point')
    orbit.add_argument('--tol', type=float, default=None, help='Drift tolerance in float mode')
    orbit.add_argument('--output', default=None, help='CSV file (default: standard output)')

    check = sub.add_parser('reduce-check', parents=[common], help='Check pi o phi == psi o pi on user data')
    check.add_argument('--phi', required=True, help='Formula file of the ambient map')
    check.add_argument('--psi', required=True, help='Formula file of the reduced map')
    check.add_argument('--pi', required=True, help='Formula file of the projection')
    check.add_argument('--variables', required=True, help='Comma separated ambient coordinates')
    check.add_argument('--targets', required=True, help='Comma separated reduced coordinates')
    check.add_argument('--level', action='append', metavar='NAME=EXPR',
                       help='Level parameter of psi and the ambient function it equals')
    check.add_argument('--format', choices=['json', 'text'], default='text')
    return parser


def _configure_logging(verbose: bool):
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.INFO)


def _split_names(text: str) -> List[str]:
    return [part.strip() for part in text.split(',') if part.strip()]


# -- commands ------------------------------------------------------------------------


def cmd_list(args: argparse.Namespace, console: Console) -> int:
    for summary in list_examples(args.dim):
        console.print(f"{summary.name}\t{summary.ambient_dim}d\t{summary.title}: {summary.summary}",
                      soft_wrap=True, highlight=False, markup=False)
    return EXIT_OK


def cmd_verify(config: CliConfig, console: Console) -> int:
    logger.info(f"📋 Verifying {', '.join(config.examples)} with seed {config.policy.seed}")
    reports = [
        run_suite(name, config.params, config.policy, timings=config.timings)
        for name in config.examples
    ]
    if config.output:
        write_reports(reports, config.output)
    if config.format == 'text':
        for report in reports:
            print_report(report, console, verbose=config.verbose)
    elif not config.output:
        sys.stdout.write(dump_json(reports_payload(reports)))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def _invariant_from_file(path: str, u: str, v: str, name: Optional[str]) -> RationalFunction:
    formulas = FormulaFile.load(path)
    symbols = formulas.free_symbols()
    for coordinate in (u, v):
        if coordinate not in symbols:
            raise ValueError(f"{path} does not use the coordinate '{coordinate}'")
    function_field = FunctionField((u, v), [s for s in symbols if s not in (u, v)])
    env = formulas.evaluate(function_field)
    if name is None:
        functions = [n for n in formulas.names if not isinstance(env[n], tuple)]
        if not functions:
            raise ValueError(f"{path} defines no function")
        name = functions[-1]
    if name not in env or isinstance(env[name], tuple):
        raise ValueError(f"{path} has no function named '{name}'")
    return env[name]


def cmd_qrt(args: argparse.Namespace, console: Console) -> int:
    h = _invariant_from_file(args.invariant, args.u, args.v, args.name)
    invariant = validate_biquadratic(h, args.u, args.v)
    horizontal = switch(invariant, args.u, name='H')
    vertical = switch(invariant, args.v, name='V')
    qrt = build_qrt(invariant)
    for m in (horizontal, vertical, qrt):
        console.print(str(m), soft_wrap=True, highlight=False)
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace, config: CliConfig) -> int:
    name = config.examples[0]
    bundle = instantiate(name, config.params)
    if args.map in bundle.maps:
        m = bundle.maps[args.map]
        branch = next((b for b in bundle.branches if b.name == args.map), None)
        invariants = dict(branch.invariants) if branch else {}
    else:
        system = reduced(name, config.params)
        if args.map not in system.maps:
            known = sorted(list(bundle.maps) + list(system.maps))
            raise ValueError(f"{name} has no map named '{args.map}' (known: {', '.join(known)})")
        m = system.maps[args.map].map
        invariants = {system.invariant_name: system.invariant}

    values = [parse_rational(part) for part in args.start.split(',')]
    if len(values) != len(m.variables):
        raise ValueError(f"--start needs {len(m.variables)} values for {', '.join(m.variables)}")
    parameters = config.params.numeric()
    needed = [p for p in m.field.parameters if p not in parameters]
    used = set()
    for component in list(m.components) + list(invariants.values()):
        used.update(component.used_symbols())
    missing = [p for p in needed if p in used]
    if missing:
        raise ValueError(f"orbit needs numeric values for {', '.join(missing)} (use --param)")

    orbit_config = load_workbench_config(args.config).get_orbit_config()
    if args.float and args.tol is not None:
        orbit_config.float_tolerance = args.tol
    record = iterate_orbit(
        m, dict(zip(m.variables, values)), steps=args.steps, invariants=invariants,
        arithmetic='float' if args.float else 'exact', config=orbit_config, parameters=parameters,
    )
    if config.output:
        record.write_csv(config.output)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(record.variables + record.invariant_names)
        writer.writerows(record.rows())
    return EXIT_OK if record.invariants_constant else EXIT_CHECK_FAILED


def _map_from_file(path: str, function_field: FunctionField, variables: Sequence[str],
                   targets: Sequence[str]) -> RationalMap:
    formulas = FormulaFile.load(path)
    name = formulas.last_tuple()
    if name is None:
        raise ValueError(f"{path} defines no map")
    components = formulas.evaluate(function_field)[name]
    if len(components) != len(targets):
        raise ValueError(f"{name} in {path} has {len(components)} components, expected {len(targets)}")
    return RationalMap(name, tuple(variables), components, tuple(targets))


def cmd_reduce_check(args: argparse.Namespace, config: CliConfig, console: Console) -> int:
    variables = _split_names(args.variables)
    targets = _split_names(args.targets)
    level_specs: Dict[str, str] = {}
    for item in args.level or []:
        level, sep, expression = item.partition('=')
        if not sep:
            raise ValueError(f"expected NAME=EXPR, got {item!r}")
        level_specs[level.strip()] = expression.strip()

    symbols: List[str] = []
    for path in (args.phi, args.psi, args.pi):
        for symbol in FormulaFile.load(path).free_symbols():
            if symbol not in symbols and symbol not in variables and symbol not in targets:
                symbols.append(symbol)
    function_field = FunctionField(variables + [t for t in targets if t not in variables], symbols)

    phi = _map_from_file(args.phi, function_field, variables, variables)
    psi = _map_from_file(args.psi, function_field, targets, targets)
    pi = _map_from_file(args.pi, function_field, variables, targets)
    levels = {name: parse_expression(text, function_field) for name, text in level_specs.items()}

    policy = config.policy
    certifier = Certifier(function_field, policy.mode_for('reduce-check', len(variables)),
                          policy.trials, policy.seed, policy.sampling)
    outcome = check_commuting_square(phi, psi, pi, levels, certifier)
    result = CheckResult.from_outcome(
        f"square:{pi.name}:{psi.name}", 'square', f"{pi.name}:{psi.name}",
        certifier.mode.value, 'commutes', True, outcome
    )
    if config.format == 'json':
        sys.stdout.write(dump_json(result.to_dict()))
    else:
        mark = "✅" if result.positive else "❌"
        console.print(f"{mark} {pi.name}∘{phi.name} vs {psi.name}∘{pi.name}: {result.status}", highlight=False)
        if result.witness:
            console.print(f"  witness: {result.witness}", highlight=False)
    return EXIT_OK if result.positive else EXIT_CHECK_FAILED


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    _configure_logging(args.verbose)
    console = Console()
    handler = ErrorHandler()
    try:
        if args.command == 'list':
            return cmd_list(args, console)
        if args.command == 'qrt':
            return cmd_qrt(args, console)
        config = CliConfig.from_args(args)
        if args.command == 'verify':
            return cmd_verify(config, console)
        if args.command == 'orbit':
            return cmd_orbit(args, config)
        return cmd_reduce_check(args, config, console)
    except (QrtwError, ValueError, KeyError, FileNotFoundError) as exc:
        handler.record(exc, command=args.command)
        print(f"qrtw {args.command}: {exc}", file=sys.stderr)
        return handler.exit_code_for(exc)


def main():
    """Console script entry point."""
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

"""Command-line interface for Gauss HUP Verifier."""

import argparse
import logging
import math
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from . import __version__
from .config import ConfigManager, NumericsConfig, apply_env_overrides
from .core_numerics import InvalidInput, NonConvergence, NumericsError, PvConfig, TailNotControlled
from .interval_maps import wandering_bound, wandering_measure
from .kg_fourier import (
    HyperbolaMeasure,
    LatticeCross,
    QUADRANTS,
    critical_measure,
    f0_measure,
    lattice_residual_scan,
    spiral_samples,
)
from .models import (
    ClosedForm,
    DecayClass,
    GridFunction,
    LineFunction,
    MapFamily,
    MapParams,
    WanderingQuery,
    bump,
    constant,
    cosh_bump,
    indicator,
    kappa,
    lambda1,
    line_bump,
    monomial,
    poisson_kernel,
)
from .output_manager import OutputManager, format_report_summary
from .transfer_ops import OperatorConfig, OperatorKind, OpKind, iterate_path, l1_norm, sup_norm
from .verification_suite import (
    Campaign,
    UnknownCampaign,
    anchor_coverage,
    get_campaign,
    list_campaigns,
    run_all,
    run_campaign,
)

EXIT_PASS = 0
EXIT_NUMERICAL_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Raised when command-line arguments are inconsistent."""


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--out', '-o', '--output-dir',
        dest='out',
        help='Directory for result files (default: configured output directory)'
    )
    parser.add_argument(
        '--format',
        choices=['csv', 'json'],
        default='csv',
        help='Table format (default: csv); reports are always JSON'
    )
    parser.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Enable verbose output with detailed progress information'
    )
    parser.add_argument(
        '--quiet', '-q',
        action='store_true',
        help='Suppress non-essential output (errors only)'
    )
    parser.add_argument(
        '--timing',
        action='store_true',
        help='Record wall times (output files are then no longer byte-identical across runs)'
    )
    parser.add_argument('--grid', type=int, metavar='PANELS',
                        help='Panels of the composite output grid (default: configured)')
    parser.add_argument('--tol', type=float,
                        help='Series tail and principal-value tolerance (default: configured)')


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Args:
        argv: Argument list (defaults to sys.argv)

    Returns:
        Parsed arguments namespace
    """
    parser = argparse.ArgumentParser(
        prog='gauss-hup',
        description='Verify transfer-operator, Hilbert-transform and hyperbola Fourier identities numerically',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s verify all
  %(prog)s verify prop-kappa1 --seed 3 -o ./reports
  %(prog)s iterate --kind SubS --gamma 0.6 --f const1 --n-max 40
  %(prog)s wandering --gamma 0.5 --n-max 8
  %(prog)s spiral --x-min 0.1 --x-max 10 --step 0.1
  %(prog)s lattice --density f0 --m-max 8 --n-max 8
  %(prog)s campaigns
        """
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f'%(prog)s {__version__}'
    )

    common = argparse.ArgumentParser(add_help=False)
    _add_common_arguments(common)
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    verify = sub.add_parser('verify', parents=[common], help='Run verification campaigns')
    verify.add_argument('campaigns', nargs='+', metavar='ID',
                        help='Campaign ids, or "all"')
    verify.add_argument('--seed', type=int, help='Seed for randomized test functions')
    verify.add_argument('--beta', type=float, help='Restrict beta sweeps to this value')
    verify.add_argument('--gamma', type=float, help='Restrict gamma sweeps to this value')
    verify.add_argument('--alpha', type=float, help='Restrict alpha sweeps to this value')
    verify.add_argument('--mass', type=float, help='Restrict mass sweeps to this value')
    verify.add_argument('--n-max', type=int, dest='n_max', help='Iteration or depth limit')

    iterate = sub.add_parser('iterate', parents=[common], help='Tabulate norms of operator iterates')
    iterate.add_argument('--kind', required=True, choices=[k.value for k in OpKind])
    iterate.add_argument('--beta', type=float, help='Parameter of the tau family')
    iterate.add_argument('--gamma', type=float, help='Parameter of the sigma family')
    iterate.add_argument('--f', dest='f_spec', default='const1',
                         help='Input function: const1, const:C, lambda1, kappa1, kappa:A, x, x2, '
                              'monomial:K, cosh[:S], bump:C,W[,H], indicator:LO,HI (default: const1)')
    iterate.add_argument('--n-max', type=int, dest='n_max', default=10)
    iterate.add_argument('--sub', metavar='LO,HI', help='Measure L1 norms on this subinterval')

    wandering = sub.add_parser('wandering', parents=[common], help='Tabulate wandering-set measures')
    wandering.add_argument('--beta', type=float, help='Parameter of the tau family')
    wandering.add_argument('--gamma', type=float, help='Parameter of the sigma family')
    wandering.add_argument('--n-max', type=int, dest='n_max', default=8)
    wandering.add_argument('--weight', choices=['lambda1', 'kappa1'],
                           help='Weight (default: lambda1 for sigma, kappa1 for tau)')
    wandering.add_argument('--resolution', type=int, help='Midpoints across the core')

    spiral = sub.add_parser('spiral', parents=[common], help='Sample the sine/cosine-integral spiral')
    spiral.add_argument('--x-min', type=float, dest='x_min', default=0.1)
    spiral.add_argument('--x-max', type=float, dest='x_max', default=10.0)
    spiral.add_argument('--step', type=float, default=0.1)

    lattice = sub.add_parser('lattice', parents=[common], help='Scan hyperbola transforms on a lattice cross')
    lattice.add_argument('--density', default='f0',
                         help='f0, critical, poisson[:EPS] or bump[:C,W] (default: f0)')
    lattice.add_argument('--alpha', type=float, default=2.0, help='Horizontal spacing (default: 2)')
    lattice.add_argument('--beta', type=float, help='Vertical spacing (default: 2, or 4/alpha for critical)')
    lattice.add_argument('--mass', type=float, default=2 * math.pi, help='Hyperbola mass M (default: 2 pi)')
    lattice.add_argument('--m-max', type=int, dest='m_max', default=8)
    lattice.add_argument('--n-max', type=int, dest='n_max', default=8)
    lattice.add_argument('--quadrant', choices=list(QUADRANTS), default='full')

    sub.add_parser('campaigns', parents=[common], help='List registered campaigns')

    args = parser.parse_args(argv)

    if args.verbose and args.quiet:
        parser.error("--verbose and --quiet cannot be used together")
    if args.grid is not None and args.grid < 1:
        parser.error("--grid must be positive")
    if args.tol is not None and args.tol <= 0:
        parser.error("--tol must be positive")
    if getattr(args, 'n_max', None) is not None and args.n_max < 0:
        parser.error("--n-max must be nonnegative")

    return args


class ProgressIndicator:
    """Simple progress indicator for long-running operations."""

    def __init__(self, message: str, verbose: bool = False, quiet: bool = False):
        self.message = message
        self.verbose = verbose
        self.quiet = quiet
        self.start_time = None

    def __enter__(self):
        if not self.quiet:
            if self.verbose:
                print(f"[{time.strftime('%H:%M:%S')}] Starting: {self.message}", file=sys.stderr)
            else:
                print(f"⏳ {self.message}...", end='', flush=True, file=sys.stderr)

        self.start_time = time.time()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.start_time:
            duration = time.time() - self.start_time

            if not self.quiet:
                status = "Completed" if exc_type is None else "Failed"
                if self.verbose:
                    print(f"[{time.strftime('%H:%M:%S')}] {status}: {self.message} ({duration:.1f}s)",
                          file=sys.stderr)
                else:
                    mark = "✓" if exc_type is None else "✗"
                    print(f" {mark} ({duration:.1f}s)", file=sys.stderr)

    def update(self, status: str):
        """Update progress status."""
        if not self.quiet and self.verbose:
            print(f"[{time.strftime('%H:%M:%S')}] {self.message}: {status}", file=sys.stderr)


class MultilineFormatter(logging.Formatter):
    """Indents continuation lines of multiline messages."""

    def format(self, record):
        formatted = super().format(record)
        if '\n' in formatted:
            lines = formatted.split('\n')
            return '\n'.join([lines[0]] + ['  ' + line for line in lines[1:]])
        return formatted


def setup_logging(verbose: bool = False, quiet: bool = False,
                  log_dir: Optional[Path] = None) -> None:
    """
    Set up logging on stderr.

    Args:
        verbose: Enable DEBUG output and a log file
        quiet: Enable quiet mode (errors only)
        log_dir: Where verbose runs keep their log file (default ~/.gauss_hup/logs)
    """
    if quiet:
        level = logging.ERROR
        format_str = '%(levelname)s: %(message)s'
    elif verbose:
        level = logging.DEBUG
        format_str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    else:
        level = logging.WARNING
        format_str = '%(levelname)s: %(message)s'

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(MultilineFormatter(format_str, datefmt='%Y-%m-%d %H:%M:%S'))
    root.addHandler(handler)
    root.setLevel(level)
    logging.getLogger('gauss_hup').setLevel(level)

    if verbose:
        try:
            log_dir = Path(log_dir or Path.home() / '.gauss_hup' / 'logs')
            log_dir.mkdir(parents=True, exist_ok=True)

            log_file = log_dir / f"gauss_hup_{time.strftime('%Y%m%d_%H%M%S')}.log"

            file_handler = logging.FileHandler(log_file)
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(MultilineFormatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            ))

            root.addHandler(file_handler)
            logging.info(f"Detailed logs will be saved to: {log_file}")

        except OSError as e:
            logging.warning(f"Could not set up file logging: {e}")


@contextmanager
def progress_context(message: str, verbose: bool = False, quiet: bool = False):
    """Context manager for showing progress indicators during operations."""
    with ProgressIndicator(message, verbose, quiet) as indicator:
        yield indicator


def _floats(text: str, count: Tuple[int, ...], what: str) -> List[float]:
    try:
        values = [float(part) for part in text.split(',')]
    except ValueError:
        raise InvalidInput(f"{what} expects comma-separated numbers, got '{text}'")
    if len(values) not in count:
        raise InvalidInput(f"{what} expects {' or '.join(map(str, count))} numbers, got '{text}'")
    return values


def parse_function_spec(spec: str) -> ClosedForm:
    """
    Build a closed-form input from a short specification.

    Raises:
        InvalidInput: If the specification is not recognised
    """
    name, _, rest = spec.strip().partition(':')
    name = name.lower()
    if name == 'const1':
        return constant(1.0)
    if name == 'const':
        return constant(_floats(rest, (1,), 'const')[0])
    if name == 'lambda1':
        return lambda1()
    if name == 'kappa1':
        return kappa(1.0)
    if name == 'kappa':
        return kappa(_floats(rest, (1,), 'kappa')[0])
    if name == 'x':
        return monomial(1)
    if name == 'x2':
        return monomial(2)
    if name == 'monomial':
        return monomial(int(_floats(rest, (1,), 'monomial')[0]))
    if name == 'cosh':
        return cosh_bump(_floats(rest, (1,), 'cosh')[0] if rest else 1.0)
    if name == 'bump':
        return bump(*_floats(rest, (2, 3), 'bump'))
    if name == 'indicator':
        return indicator(*_floats(rest, (2,), 'indicator'))
    raise InvalidInput(
        f"unknown function '{spec}'; use const1, const:C, lambda1, kappa1, kappa:A, x, x2, "
        f"monomial:K, cosh[:S], bump:C,W[,H] or indicator:LO,HI"
    )


def parse_density_spec(spec: str, alpha: float, mass: float) -> HyperbolaMeasure:
    """Build the hyperbola measure named by a density specification."""
    name, _, rest = spec.strip().partition(':')
    name = name.lower()
    if name == 'f0':
        return f0_measure(mass)
    if name == 'critical':
        return critical_measure(alpha, mass=mass)
    if name == 'poisson':
        eps = _floats(rest, (1,), 'poisson')[0] if rest else 1.0
        kernel = poisson_kernel(eps)
        density = LineFunction(kernel, DecayClass.INVERSE_SQUARE, (0.0, math.inf),
                               name=f"poisson({eps:g}) on R+", check_decay=False)
        return HyperbolaMeasure(density, mass, density.name)
    if name == 'bump':
        center, width = _floats(rest, (2,), 'bump') if rest else (1.0, 0.5)
        if center - width < 0:
            raise InvalidInput("bump densities must live on the positive half-line")
        density = line_bump(center, width)
        return HyperbolaMeasure(density, mass, density.name)
    raise InvalidInput(f"unknown density '{spec}'; use f0, critical, poisson[:EPS] or bump[:C,W]")


def build_settings(args: argparse.Namespace, config: NumericsConfig) -> NumericsConfig:
    """Apply command-line flags on top of the file and environment configuration."""
    if args.grid is not None:
        config.grid_panels = args.grid
    if args.tol is not None:
        config.tail_tol = args.tol
        config.pv_tol = args.tol
    return config


# verify flag -> campaign parameters it overrides
OVERRIDE_FLAGS: Dict[str, Tuple[str, ...]] = {
    'beta': ('betas',),
    'gamma': ('gammas',),
    'alpha': ('alphas',),
    'mass': ('masses',),
    'n_max': ('n_max', 'depth_max'),
}


def campaign_overrides(args: argparse.Namespace,
                       campaigns: Optional[List[Campaign]] = None) -> Dict[str, Any]:
    """
    Map verify flags onto campaign parameters.

    Raises:
        UsageError: If a given flag matches no parameter of the selected campaigns
    """
    overrides: Dict[str, Any] = {}
    for flag, keys in OVERRIDE_FLAGS.items():
        value = getattr(args, flag)
        if value is None:
            continue
        if campaigns is not None and not any(key in c.defaults for c in campaigns for key in keys):
            ids = ", ".join(c.id for c in campaigns)
            raise UsageError(f"--{flag.replace('_', '-')} does not apply to campaign(s) {ids}")
        for key in keys:
            overrides[key] = value if key in ('n_max', 'depth_max') else [value]
    return overrides


def _map_params(args: argparse.Namespace, family: Optional[MapFamily] = None) -> MapParams:
    if family is None:
        if (args.beta is None) == (args.gamma is None):
            raise UsageError("give exactly one of --beta (tau family) or --gamma (sigma family)")
        family = MapFamily.TAU if args.beta is not None else MapFamily.SIGMA
    if family is MapFamily.TAU:
        if args.beta is None:
            raise UsageError("this operator acts with the tau family; pass --beta")
        return MapParams.tau(args.beta)
    if args.gamma is None:
        raise UsageError("this operator acts with the sigma family; pass --gamma")
    return MapParams.sigma(args.gamma)


def _write_table(output: OutputManager, stem: str, fmt: str, header: List[str],
                 rows: List[List[Any]], footer: Dict[str, Any]) -> str:
    if fmt == 'json':
        data = {"columns": header, "rows": rows, "provenance": footer}
        return output.write_json(f"{output._sanitize_filename(stem)}.json", data)
    return output.write_csv(f"{output._sanitize_filename(stem)}.csv", header, rows, footer)


def cmd_verify(args: argparse.Namespace, settings: NumericsConfig, output: OutputManager) -> int:
    """Run campaigns, write one JSON report each; 0 iff every campaign passes."""
    seed = args.seed if args.seed is not None else settings.seed
    ids = args.campaigns

    # Resolve every id before anything runs.
    if 'all' in ids:
        campaigns = list_campaigns()
    else:
        campaigns = [get_campaign(campaign_id) for campaign_id in ids]
    overrides = campaign_overrides(args, campaigns)

    if 'all' in ids:
        with progress_context("Running all campaigns", args.verbose, args.quiet):
            reports = run_all(seed, overrides=overrides, settings=settings)
    else:
        reports = []
        for campaign in campaigns:
            with progress_context(f"Running {campaign.id}", args.verbose, args.quiet):
                reports.append(run_campaign(campaign.id, overrides, seed, settings))

    for report in reports:
        path = output.write_report(report, include_timing=args.timing)
        if args.format == 'csv':
            rows = [[c.description, c.measured, c.bound, c.margin, c.passed] for c in report.checks]
            footer = output.provenance(report.overrides, seed)
            footer['passed'] = report.passed
            output.write_csv(f"{output._sanitize_filename(report.campaign_id)}_checks.csv",
                             ['description', 'measured', 'bound', 'margin', 'passed'], rows, footer)
        logging.getLogger(__name__).debug("report written to %s", path)

    if not args.quiet:
        print(format_report_summary(reports, args.timing))
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_NUMERICAL_FAILURE


def cmd_iterate(args: argparse.Namespace, settings: NumericsConfig, output: OutputManager) -> int:
    """Table of (n, l1, sup, elapsed_ms) for op^n f."""
    kind = OpKind(args.kind)
    family = MapFamily.TAU if kind in (OpKind.SUB_T, OpKind.TRANSFER_TP, OpKind.KOOPMAN_L) \
        else MapFamily.SIGMA
    params = _map_params(args, family)
    op = OperatorKind(kind, params)
    form = parse_function_spec(args.f_spec)
    cfg = OperatorConfig.from_settings(settings)
    f = GridFunction.from_closed_form(cfg.grid_for(params), form)
    sub = tuple(_floats(args.sub, (2,), '--sub')) if args.sub else None

    rows = []
    with progress_context(f"Iterating {kind.value}", args.verbose, args.quiet) as progress:
        clock = time.perf_counter()
        for n, g in iterate_path(op, f, args.n_max, cfg):
            now = time.perf_counter()
            elapsed = round(1000.0 * (now - clock), 3) if args.timing else None
            rows.append([n, l1_norm(g, sub), sup_norm(g), elapsed])
            progress.update(f"n={n}")
            clock = time.perf_counter()

    footer = output.provenance({
        'kind': kind.value, 'param': params.param, 'f': form.label, 'n_max': args.n_max,
        'grid_panels': settings.grid_panels, 'j_max': settings.j_max,
        'tail_tol': settings.tail_tol, 'sub': list(sub) if sub else 'full',
    })
    stem = f"iterate_{kind.value}_{params.param:g}_{form.name}"
    path = _write_table(output, stem, args.format, ['n', 'l1', 'sup', 'elapsed_ms'], rows, footer)
    if not args.quiet:
        print(f"Wrote {len(rows)} rows to {path}")
    return EXIT_PASS


def cmd_wandering(args: argparse.Namespace, settings: NumericsConfig, output: OutputManager) -> int:
    """Table of (N, measure, bound, violation); 1 if any bound is violated."""
    params = _map_params(args)
    if params.param >= 1:
        raise InvalidInput(
            "the wandering bounds need a parameter strictly below 1 "
            f"(got {params.param:g}); at 1 the geometric bound does not apply"
        )
    weight = args.weight or ('lambda1' if params.family is MapFamily.SIGMA else 'kappa1')
    resolution = args.resolution or settings.wandering_resolution

    rows = []
    with progress_context("Measuring wandering sets", args.verbose, args.quiet):
        for depth in range(1, args.n_max + 1):
            q = WanderingQuery(params, depth)
            measure = wandering_measure(q, weight, resolution)
            bound = wandering_bound(q)
            rows.append([depth, measure, bound, measure > bound + 1e-4])

    violations = sum(1 for row in rows if row[3])
    footer = output.provenance({
        'family': params.family.value, 'param': params.param, 'weight': weight,
        'resolution': resolution, 'n_max': args.n_max,
    })
    footer['violations'] = violations
    stem = f"wandering_{params.family.value}_{params.param:g}"
    path = _write_table(output, stem, args.format, ['N', 'measure', 'bound', 'violation'], rows, footer)
    if not args.quiet:
        print(f"Wrote {len(rows)} rows to {path}; {violations} violations")
    return EXIT_PASS if violations == 0 else EXIT_NUMERICAL_FAILURE


def cmd_spiral(args: argparse.Namespace, settings: NumericsConfig, output: OutputManager) -> int:
    """Table of (x, ci(pi x), si(pi x), modulus) with the minimum modulus in the footer."""
    rows, minimum = spiral_samples(args.x_min, args.x_max, args.step)
    footer = output.provenance({'x_min': args.x_min, 'x_max': args.x_max, 'step': args.step})
    footer['min_modulus'] = minimum
    path = _write_table(output, "spiral", args.format, ['x', 'ci', 'si', 'modulus'],
                        [list(r) for r in rows], footer)
    if not args.quiet:
        print(f"Wrote {len(rows)} rows to {path}; min |spiral| = {minimum:.6e}")
    return EXIT_PASS


def cmd_lattice(args: argparse.Namespace, settings: NumericsConfig, output: OutputManager) -> int:
    """Table of lattice-cross residuals; 1 if any point failed to converge."""
    spec = args.density.strip().lower()
    vertical = args.beta
    if vertical is None:
        vertical = 4.0 / args.alpha if spec.startswith('critical') else 2.0
    mu = parse_density_spec(args.density, args.alpha, args.mass)
    cross = LatticeCross(args.alpha, vertical, args.m_max, args.n_max, args.quadrant)

    with progress_context(f"Scanning {len(cross.points())} lattice points", args.verbose, args.quiet):
        entries, worst = lattice_residual_scan(mu, cross, PvConfig.from_settings(settings))

    rows = []
    for e in entries:
        re = e.value.real if e.value is not None else None
        im = e.value.imag if e.value is not None else None
        rows.append([e.label, e.point[0], e.point[1], re, im, e.residual, e.error or ''])
    failed = sum(1 for e in entries if e.error)
    footer = output.provenance({
        'density': args.density, 'alpha': args.alpha, 'beta': vertical, 'mass': args.mass,
        'm_max': args.m_max, 'n_max': args.n_max, 'quadrant': args.quadrant,
    })
    footer['max_residual'] = worst
    footer['nonconverged'] = failed
    stem = f"lattice_{mu.name}"
    path = _write_table(output, stem, args.format,
                        ['point', 'xi1', 'xi2', 're', 'im', 'residual', 'error'], rows, footer)
    if not args.quiet:
        print(f"Wrote {len(rows)} rows to {path}; max residual {worst:.3e}")
    return EXIT_PASS if failed == 0 else EXIT_NUMERICAL_FAILURE


def cmd_campaigns(args: argparse.Namespace, settings: NumericsConfig, output: OutputManager) -> int:
    """Print the registry and any anchors it misses; with --out also write it as a table."""
    campaigns = list_campaigns()
    missing, extra = anchor_coverage()
    if not args.quiet:
        for campaign in campaigns:
            print(f"{campaign.id:28s} {campaign.description}")
        if missing:
            print(f"Anchors without a campaign: {', '.join(missing)}")
        if extra:
            print(f"Campaigns without a listed anchor: {', '.join(extra)}")
    if args.out:
        rows = [[c.id, c.description] for c in campaigns]
        _write_table(output, "campaigns", args.format, ['id', 'description'], rows,
                     output.provenance({}))
    return EXIT_PASS if not (missing or extra) else EXIT_NUMERICAL_FAILURE


COMMANDS = {
    'verify': cmd_verify,
    'iterate': cmd_iterate,
    'wandering': cmd_wandering,
    'spiral': cmd_spiral,
    'lattice': cmd_lattice,
    'campaigns': cmd_campaigns,
}


def handle_user_friendly_errors(error: Exception, verbose: bool = False) -> str:
    """
    Convert technical errors into user-friendly error messages.

    Args:
        error: Exception to convert
        verbose: Whether to include technical details

    Returns:
        User-friendly error message
    """
    if isinstance(error, UnknownCampaign):
        return f"Unknown campaign: {error}"

    elif isinstance(error, TailNotControlled):
        return f"Series tail could not be certified: {error}. Try a larger j_max (GAUSS_HUP_J_MAX)."

    elif isinstance(error, NonConvergence):
        return f"Numerical method did not converge: {error}"

    elif isinstance(error, (InvalidInput, UsageError)):
        return f"Invalid input: {error}"

    elif isinstance(error, OSError):
        return f"File system error: {error}"

    else:
        if verbose:
            return f"Unexpected error: {error}"
        else:
            return "An unexpected error occurred. Use --verbose for more details."


def exit_code_for(error: Exception) -> int:
    """Usage problems exit 2, numerical failures 1."""
    if isinstance(error, (UnknownCampaign, InvalidInput, UsageError)):
        return EXIT_USAGE
    return EXIT_NUMERICAL_FAILURE


def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point for the Gauss HUP Verifier CLI."""
    args = parse_arguments(argv)
    code = EXIT_PASS

    try:
        config_manager = ConfigManager()
        config = apply_env_overrides(config_manager.get_config())
        settings = build_settings(args, config)

        verbose = args.verbose or settings.verbose_output
        setup_logging(verbose, args.quiet, config_manager.get_logs_dir() if verbose else None)

        output = OutputManager(args.out or settings.default_output_dir)
        code = COMMANDS[args.command](args, settings, output)

    except KeyboardInterrupt:
        if not args.quiet:
            print("\n⚠ Operation cancelled by user", file=sys.stderr)
        code = EXIT_NUMERICAL_FAILURE

    except (NumericsError, UsageError, OSError) as e:
        if args.verbose:
            logging.error(f"Error: {e}")
        print(f"Error: {handle_user_friendly_errors(e, args.verbose)}", file=sys.stderr)
        code = exit_code_for(e)

    except Exception as e:
        error_msg = handle_user_friendly_errors(e, args.verbose)

        if args.verbose:
            logging.error(f"Unexpected error: {e}")
            import traceback
            traceback.print_exc()
        else:
            print(f"Error: {error_msg}", file=sys.stderr)

        code = EXIT_NUMERICAL_FAILURE

    sys.exit(code)


if __name__ == "__main__":
    main()

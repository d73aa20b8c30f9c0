"""
Command-line front end for qqcheck

    qqcheck test --input data.csv --out results/
    qqcheck test --published 3.9443:14 --published 4.6539:18
    qqcheck calibrate --n 10-20 --reps 100000 --out calibration/
    qqcheck power --test correlation --alternative gumbel --n 20 --out power/
    qqcheck plot --input data.csv --positions blom --out plots/

Exit codes: 0 ok, 1 internal error, 2 data or usage error.
"""
import argparse
import csv
import json
import logging
import math
import re
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .config import Config
from .distributions import Family
from .exceptions import DataError, DegenerateSampleError, DomainError
from .models import (
    DatasetResults,
    GofResult,
    PositionMethod,
    PValueMethod,
    RunConfig,
    Sample,
    TestKind,
    Transform,
)
from .services import order_stats, qq_regression, report
from .services.gof_tests import NormalityTester
from .services.mc_calibration import POWER_ALTERNATIVES, MonteCarloEngine, fit_interpolation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_DATA = 2

ALL_FORMATS = ('text', 'csv', 'json', 'svg')
TABLE_EXTENSIONS = {'text': 'txt', 'csv': 'csv', 'json': 'json'}


class Column:
    """Values of one dataset column with the CSV line each value came from"""

    def __init__(self, name: str):
        self.name = name
        self.values: List[float] = []
        self.lines: List[int] = []


# ----------------------------------------------------------------------------
# Input
# ----------------------------------------------------------------------------

def _parse_number(cell: str, decimal_comma: bool) -> float:
    text = cell.strip()
    if decimal_comma:
        text = text.replace('.', '').replace(',', '.') if ',' in text else text
    return float(text)


def read_csv_columns(path: Path, decimal_comma: bool = False) -> Dict[str, Column]:
    """One dataset per column, dataset names in the header row.

    The separator is ';' when the header contains one, ',' otherwise.
    Columns may have different lengths; empty cells are skipped. All
    problems are collected and raised together as a DataError.
    """
    path = Path(path)
    try:
        with open(path, newline='', encoding='utf-8-sig') as handle:
            text = handle.read()
    except OSError as e:
        raise DataError(f"cannot read {path}: {e.strerror or e}") from e

    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise DataError(f"{path} is empty or has no header row", [(1, "missing header")])

    delimiter = ';' if ';' in lines[0] else ','
    if decimal_comma and delimiter == ',' and ',' in lines[0]:
        raise DataError(f"{path}: decimal commas need ';' as separator",
                        [(1, "header is comma separated")])

    reader = csv.reader(lines, delimiter=delimiter)
    header = [name.strip() for name in next(reader)]
    problems: List[Tuple[int, str]] = []
    if any(not name for name in header):
        problems.append((1, "empty column name in header"))
    duplicates = sorted({name for name in header if header.count(name) > 1})
    if duplicates:
        problems.append((1, f"duplicate column names {duplicates}"))

    columns = {name: Column(name) for name in header}
    for line_no, row in enumerate(reader, start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) > len(header):
            problems.append((line_no, f"{len(row)} cells but {len(header)} columns"))
            continue
        for name, cell in zip(header, row):
            if not cell.strip():
                continue
            try:
                value = _parse_number(cell, decimal_comma)
            except ValueError:
                problems.append((line_no, f"column {name!r}: cannot parse {cell.strip()!r}"))
                continue
            if not math.isfinite(value):
                problems.append((line_no, f"column {name!r}: non-finite value {cell.strip()!r}"))
                continue
            columns[name].values.append(value)
            columns[name].lines.append(line_no)

    if problems:
        raise DataError(f"{path}: {len(problems)} malformed entries", problems)
    logger.info("Read %d columns from %s", len(columns), path)
    return columns


def load_datasets(inputs: Sequence[Path], selected: Sequence[str],
                  decimal_comma: bool) -> Dict[str, Column]:
    datasets: Dict[str, Column] = {}
    for path in inputs:
        for name, column in read_csv_columns(path, decimal_comma).items():
            key = name if name not in datasets else f"{Path(path).stem}:{name}"
            datasets[key] = column
    if selected:
        missing = [name for name in selected if name not in datasets]
        if missing:
            raise DataError(f"unknown columns {missing}; available: {sorted(datasets)}")
        datasets = {name: datasets[name] for name in selected}
    if not datasets:
        raise DataError("no datasets found in the input")
    return datasets


def make_sample(column: Column, transform: Transform) -> Sample:
    """Sample from a column, reporting nonpositive values by CSV line under the log transform"""
    if transform is Transform.LOG:
        offenders = [(line, f"column {column.name!r}: nonpositive value {value!r}")
                     for line, value in zip(column.lines, column.values) if value <= 0]
        if offenders:
            raise DataError(f"log transform of {column.name!r} needs positive values", offenders)
    return Sample(column.values, transform, column.name)


# ----------------------------------------------------------------------------
# Output
# ----------------------------------------------------------------------------

def safe_name(name: str) -> str:
    return re.sub(r'[^A-Za-z0-9_.-]+', '_', name).strip('_') or 'dataset'


def write_artifact(out: Path, filename: str, content: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / filename
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(content)
    logger.info("Wrote %s", path)
    return path


def fit_summary(name: str, sample: Sample, fit_result, var_alpha: float) -> Dict:
    """Estimated parameters, VaR and (for log data) the implied lognormal model"""
    summary = {
        'dataset': name,
        'n': sample.n,
        'transform': sample.transform.value,
        'positions': fit_result.positions.method.value,
        'mu_hat': fit_result.mu_hat,
        'sigma_hat': fit_result.sigma_hat,
        'rho': fit_result.rho,
        'degenerate': fit_result.degenerate,
    }
    if fit_result.degenerate:
        return summary
    exponentiate = sample.transform is Transform.LOG
    var = qq_regression.var_estimate(fit_result, var_alpha, exponentiate=exponentiate)
    summary['var'] = {
        'alpha': var.alpha,
        'log_value': var.log_value,
        'value': var.value,
        'exponentiated': var.exponentiated,
        'upward_biased': var.upward_biased,
    }
    if exponentiate:
        moments = qq_regression.lognormal_moments(fit_result)
        summary['lognormal'] = {
            'mean': moments.mean,
            'variance': moments.variance,
            'median': moments.median,
            'std_dev': moments.std_dev,
        }
    return summary


def write_tables(rows: List[DatasetResults], out: Path, formats: Sequence[str], stem: str) -> None:
    for fmt in formats:
        if fmt in TABLE_EXTENSIONS:
            write_artifact(out, f"{stem}.{TABLE_EXTENSIONS[fmt]}", report.render_table(rows, fmt))


# ----------------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------------

def cmd_published(pairs: Sequence[Tuple[float, int]], alphas: Sequence[float],
                  out: Optional[Path], formats: Sequence[str], tester: NormalityTester) -> int:
    """Map published (T_n, n) pairs to normal-approximation p-values"""
    rows = []
    for statistic, n in pairs:
        p, params = tester.correlation_p_value(statistic, n)
        logger.info("T=%.4f, n=%d: mu_n=%.4f, sigma_n=%.4f (%s) -> p=%.4f",
                    statistic, n, params.mu_n, params.sigma_n, params.source.value, p)
        result = GofResult.decide(TestKind.CORRELATION_T, statistic, p,
                                  PValueMethod.NORMAL_APPROX, n, alphas)
        rows.append(DatasetResults(f"T={statistic:g}:n={n}", n, [result]))

    print(report.render_table(rows, 'text'), end='')
    if out is not None:
        write_tables(rows, out, formats, 'published')
    return EXIT_OK


def cmd_test(run: RunConfig, tester: NormalityTester) -> int:
    """Fit, test and plot every dataset; write plots, result tables and fits.json.

    A dataset the tests cannot handle (constant values, fewer than four
    observations) is skipped. The other datasets are still reported, then
    the run fails with a DataError naming the skipped ones.
    """
    if run.published:
        return cmd_published(run.published, run.alphas, run.out,
                             run.formats, tester)

    if run.transform is Transform.LOG:
        logger.warning("Testing log-transformed values: a normal fit here means lognormal data "
                       "(use --transform identity for the raw scale)")

    datasets = load_datasets(run.inputs, run.columns, run.decimal_comma)
    rows: List[DatasetResults] = []
    fits = []
    skipped: List[Tuple[str, str]] = []
    for name, column in datasets.items():
        sample = make_sample(column, run.transform)
        positions = order_stats.plotting_positions(Family.NORMAL, sample.n, run.positions)
        fit_result = qq_regression.fit(sample, positions)
        summary = fit_summary(name, sample, fit_result, run.var_alpha)
        fits.append(summary)

        results: List[GofResult] = []
        try:
            if fit_result.degenerate:
                raise DegenerateSampleError("zero variance, the tests are undefined")
            results = tester.run_battery(sample, run.p_method, run.alphas,
                                         reps=run.reps, seed=run.seed)
        except (DegenerateSampleError, DomainError) as e:
            logger.warning("Skipping tests for %s: %s", name, e)
            summary['skipped'] = str(e)
            skipped.append((name, str(e)))
        else:
            for result in results:
                logger.info("%s: %s", name, result)
            rows.append(DatasetResults(name, sample.n, results, fit_result))

        if 'svg' in run.formats:
            correlation = next((r for r in results if r.test is TestKind.CORRELATION_T), None)
            svg = report.render_qq_svg(fit_result, correlation, title=f"Q-Q plot: {name}")
            write_artifact(run.out, f"{safe_name(name)}_qq.svg", svg)

    if rows:
        write_tables(rows, run.out, run.formats, 'results')
        print(report.render_table(rows, 'text'), end='')
    write_artifact(run.out, 'fits.json', json.dumps(fits, indent=2, allow_nan=False) + "\n")
    if skipped:
        raise DataError(f"tests skipped for {len(skipped)} of {len(datasets)} datasets",
                        [(None, f"{name!r}: {reason}") for name, reason in skipped])
    return EXIT_OK


def cmd_calibrate(n_values: Sequence[int], reps: int, seed: int, out: Path,
                  formats: Sequence[str], engine: MonteCarloEngine) -> int:
    """Simulated null law of T_n per n: tables, histograms, interpolation coefficients"""
    tables = [engine.calibrate_null(n, reps, seed) for n in n_values]

    for fmt in ('csv', 'json'):
        if fmt in formats:
            write_artifact(out, f"calibration.{fmt}", report.render_calibration_tables(tables, fmt))
    if 'svg' in formats:
        for table in tables:
            svg = report.render_histogram_svg(
                table.histogram,
                title=f"Simulated T_n under normality, n={table.n}",
                x_label="T_n",
                normal_fit=(table.mu_n, table.sigma_n),
                legend=[f"reps = {table.reps}, seed = {table.seed}",
                        f"mu_n = {table.mu_n:.4f}, sigma_n = {table.sigma_n:.4f}"],
            )
            write_artifact(out, f"null_T_n{table.n}.svg", svg)

    if len(tables) >= 3:
        mu, sigma = fit_interpolation(tables)
        write_artifact(out, 'interpolation.json',
                       json.dumps({'mu': list(mu), 'sigma': list(sigma),
                                   'n': [t.n for t in tables]}, indent=2) + "\n")

    for table in tables:
        print(f"n={table.n:4d}  mu_n={table.mu_n:.4f}  sigma_n={table.sigma_n:.4f}")
    return EXIT_OK


def cmd_power(tests: Sequence[TestKind], alternatives: Sequence[Family], n: int,
              alphas: Sequence[float], reps: int, seed: int, out: Path,
              formats: Sequence[str], engine: MonteCarloEngine) -> int:
    """Type-II error rates per test, alternative and level"""
    rows = []
    for test in tests:
        for alternative in alternatives:
            rows.extend(engine.power_study(test, alternative, n, alphas, reps, seed))
            if 'svg' in formats:
                null_hist, alt_hist = engine.compare_histograms(test, alternative, n, reps, seed)
                svg = report.render_histogram_svg(
                    null_hist,
                    title=f"{test.symbol} under normal and {alternative.value}, n={n}",
                    x_label=test.symbol,
                    overlay=alt_hist,
                    legend=["red: normal", f"blue: {alternative.value}"],
                )
                write_artifact(out, f"power_{test.value}_{alternative.value}_n{n}.svg", svg)

    for fmt in ('csv', 'json'):
        if fmt in formats:
            write_artifact(out, f"power.{fmt}", report.render_power_rows(rows, fmt))
    for row in rows:
        print(f"{row.test.value:13s} {row.alternative.value:9s} n={row.n} alpha={row.alpha:<5g} "
              f"critical={row.critical_value:.4f} beta={row.beta:.2%}")
    return EXIT_OK


def cmd_plot(inputs: Sequence[Path], columns: Sequence[str], transform: Transform,
             method: PositionMethod, out: Path, decimal_comma: bool) -> int:
    """Q-Q plots without tests, for any plotting-position rule"""
    for name, column in load_datasets(inputs, columns, decimal_comma).items():
        sample = make_sample(column, transform)
        positions = order_stats.plotting_positions(Family.NORMAL, sample.n, method)
        fit_result = qq_regression.fit(sample, positions)
        write_artifact(out, f"{safe_name(name)}_qq.svg",
                       report.render_qq_svg(fit_result, title=f"Q-Q plot: {name}"))
    return EXIT_OK


# ----------------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------------

def parse_alphas(raw: str) -> Tuple[float, ...]:
    try:
        alphas = tuple(float(a) for a in raw.split(',') if a.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"alphas must be comma separated numbers, got {raw!r}")
    if not alphas or not all(0.0 < a < 1.0 for a in alphas):
        raise argparse.ArgumentTypeError(f"alphas must lie in (0, 1), got {raw!r}")
    return alphas


def parse_published(raw: str) -> Tuple[float, int]:
    try:
        statistic, n = raw.split(':')
        return float(statistic), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected T:n, e.g. 3.9443:14, got {raw!r}")


def parse_n_values(raw: str) -> List[int]:
    """'10-20' or '10,14,18' or a mix like '10-12,50'"""
    values: List[int] = []
    try:
        for part in raw.split(','):
            part = part.strip()
            if '-' in part:
                low, high = (int(v) for v in part.split('-'))
                values.extend(range(low, high + 1))
            elif part:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n values like 10-20 or 10,14,18, got {raw!r}")
    if not values:
        raise argparse.ArgumentTypeError("no sample sizes given")
    return sorted(set(values))


def parse_formats(raw: str) -> Tuple[str, ...]:
    formats = tuple(f.strip() for f in raw.split(',') if f.strip())
    unknown = [f for f in formats if f not in ALL_FORMATS]
    if unknown or not formats:
        raise argparse.ArgumentTypeError(f"formats are {ALL_FORMATS}, got {raw!r}")
    return formats


def _add_common(parser: argparse.ArgumentParser, config: Config) -> None:
    parser.add_argument('--reps', type=int, default=None,
                        help=f'Monte Carlo replications (default {config.DEFAULT_REPS})')
    parser.add_argument('--full', action='store_true',
                        help=f'Use {config.FULL_REPS} replications')
    parser.add_argument('--seed', type=int, default=config.DEFAULT_SEED, help='Master seed')
    parser.add_argument('--out', type=Path, default=Path('qqcheck-out'), help='Output directory')
    parser.add_argument('--format', dest='formats', type=parse_formats,
                        default=ALL_FORMATS, help='Comma separated subset of text,csv,json,svg')
    parser.add_argument('--workers', type=int, default=None, help='Threads for Monte Carlo blocks')


def _add_data(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--input', dest='inputs', type=Path, action='append', default=[],
                        help='CSV file, one dataset per column (repeatable)')
    parser.add_argument('--column', dest='columns', action='append', default=[],
                        help='Only use this column (repeatable)')
    parser.add_argument('--transform', choices=[t.value for t in Transform],
                        default=Transform.LOG.value, help='Transform before fitting (default log)')
    parser.add_argument('--positions', choices=[m.value for m in PositionMethod],
                        default=PositionMethod.FITTED_AB.value, help='Plotting-position rule')
    parser.add_argument('--decimal-comma', action='store_true',
                        help="Read ',' as decimal point (';' separated files)")


def build_parser(config: Optional[Config] = None) -> argparse.ArgumentParser:
    config = config or Config()
    parser = argparse.ArgumentParser(prog='qqcheck',
                                     description='Q-Q regression and tests of (log)normality')
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging')
    commands = parser.add_subparsers(dest='command', required=True)
    alphas = ",".join(f"{a:g}" for a in config.DEFAULT_ALPHAS)

    test = commands.add_parser('test', help='Fit and test datasets')
    _add_data(test)
    _add_common(test, config)
    test.add_argument('--p-method', choices=[m.value for m in PValueMethod],
                      default=PValueMethod.NORMAL_APPROX.value,
                      help='p-values of the correlation test')
    test.add_argument('--alphas', type=parse_alphas, default=config.DEFAULT_ALPHAS,
                      help=f'Test levels (default {alphas})')
    test.add_argument('--published', type=parse_published, action='append', default=[],
                      metavar='T:n', help='Map a published T_n and n to its p-value (repeatable)')

    calibrate = commands.add_parser('calibrate', help='Simulate the null law of T_n')
    calibrate.add_argument('--n', dest='n_values', type=parse_n_values, required=True,
                           help='Sample sizes, e.g. 10-20 or 10,14,18')
    _add_common(calibrate, config)

    power = commands.add_parser('power', help='Type-II error rates against alternatives')
    power.add_argument('--test', choices=[t.value for t in TestKind] + ['all'], default='all')
    power.add_argument('--alternative',
                       choices=[f.value for f in POWER_ALTERNATIVES] + ['all'],
                       default='all')
    power.add_argument('--n', type=int, default=20, help='Sample size')
    power.add_argument('--alphas', type=parse_alphas, default=config.DEFAULT_ALPHAS,
                       help=f'Test levels (default {alphas})')
    _add_common(power, config)

    plot = commands.add_parser('plot', help='Q-Q plots only')
    _add_data(plot)
    plot.add_argument('--out', type=Path, default=Path('qqcheck-out'), help='Output directory')
    return parser


def setup_logging(config: Config, verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else getattr(logging, str(config.LOG_LEVEL).upper(), logging.INFO)
    kwargs = {'filename': config.LOG_FILE, 'filemode': 'w'} if config.LOG_FILE else {}
    logging.basicConfig(level=level, format=config.LOG_FORMAT, **kwargs)


def _resolve_reps(args: argparse.Namespace, config: Config) -> int:
    reps = config.FULL_REPS if args.full else (args.reps or config.DEFAULT_REPS)
    if reps < config.MIN_REPS:
        raise DomainError(f"reps must be at least {config.MIN_REPS}, got {reps}")
    return reps


def run(args: argparse.Namespace, config: Config) -> int:
    if args.command == 'plot':
        if not args.inputs:
            raise DomainError("plot needs --input")
        return cmd_plot(args.inputs, args.columns, Transform(args.transform),
                        PositionMethod(args.positions), args.out, args.decimal_comma)

    reps = _resolve_reps(args, config)
    if args.command == 'test' and not args.inputs and not args.published:
        raise DomainError("test needs --input or --published")

    with MonteCarloEngine(config, workers=args.workers) as engine:
        return _dispatch(args, config, reps, engine)


def _dispatch(args: argparse.Namespace, config: Config, reps: int, engine: MonteCarloEngine) -> int:
    if args.command == 'test':
        run_config = RunConfig(
            inputs=args.inputs,
            out=args.out,
            seed=args.seed,
            reps=reps,
            min_reps=config.MIN_REPS,
            columns=args.columns,
            transform=args.transform,
            positions=args.positions,
            alphas=args.alphas,
            p_method=args.p_method,
            formats=args.formats,
            decimal_comma=args.decimal_comma,
            published=args.published,
            var_alpha=config.VAR_ALPHA,
        )
        return cmd_test(run_config, NormalityTester(config, engine))

    if args.command == 'calibrate':
        return cmd_calibrate(args.n_values, reps, args.seed, args.out, args.formats, engine)

    tests = list(TestKind) if args.test == 'all' else [TestKind(args.test)]
    alternatives = (list(POWER_ALTERNATIVES) if args.alternative == 'all'
                    else [Family(args.alternative)])
    return cmd_power(tests, alternatives, args.n, args.alphas, reps, args.seed,
                     args.out, args.formats, engine)


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = Config()
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_DATA

    setup_logging(config, args.verbose)
    try:
        return run(args, config)
    except (DataError, DomainError, DegenerateSampleError) as e:
        logger.error("%s", e)
        print(f"qqcheck: error: {e}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        logger.exception("Unexpected failure")
        return EXIT_INTERNAL


if __name__ == '__main__':
    sys.exit(main())

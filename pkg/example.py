"""
Example usage of qqcheck services
"""
import argparse
from pathlib import Path

from qqcheck import Config, Family, PositionMethod, PValueMethod, Sample, Transform
from qqcheck.cli import read_csv_columns
from qqcheck.models.fit import QQFit
from qqcheck.services import order_stats, qq_regression, report
from qqcheck.services.gof_tests import NormalityTester

SAMPLE_DATA = Path(__file__).parent / 'data' / 'synthetic_combined_ratios.csv'


def print_fit(name: str, fit_result: QQFit, var_alpha: float) -> None:
    """Print estimated parameters in a formatted way"""
    print(f"\n=== {name} ===")
    print(fit_result)
    var = qq_regression.var_estimate(fit_result, var_alpha, exponentiate=True)
    moments = qq_regression.lognormal_moments(fit_result)
    print(f"VaR {var_alpha:.1%} (log scale): {var.log_value:.4f}")
    print(f"VaR {var_alpha:.1%} (ratio):     {var.value:.4f}  (biased upwards)")
    print(f"Lognormal mean / median:  {moments.mean:.4f} / {moments.median:.4f}")


def compare_positions(n: int) -> None:
    """How far the plotting-position rules are from the exact expected order statistics"""
    exact = order_stats.expected_normal_order_stats(n)
    print(f"\nMax deviation from E(Z_(k)) for n={n}:")
    for method in (PositionMethod.HAZEN, PositionMethod.WEIBULL, PositionMethod.BLOM,
                   PositionMethod.FITTED_AB):
        q = order_stats.plotting_positions(Family.NORMAL, n, method).q
        print(f"  {method.value:12s} {abs(q - exact).max():.5f}")


def main(reps: int, out: Path) -> None:
    config = Config()
    tester = NormalityTester(config)
    for name, column in read_csv_columns(SAMPLE_DATA).items():
        sample = Sample(column.values, Transform.LOG, name)
        positions = order_stats.plotting_positions(Family.NORMAL, sample.n, PositionMethod.FITTED_AB)
        fit_result = qq_regression.fit(sample, positions)
        print_fit(name, fit_result, config.VAR_ALPHA)

        results = tester.run_battery(sample, PValueMethod.NORMAL_APPROX, config.DEFAULT_ALPHAS, reps=reps)
        for result in results:
            print(f"  {result}")

        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}_qq.svg").write_text(report.render_qq_svg(fit_result, results[0]))

    compare_positions(18)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description='qqcheck walk-through on synthetic combined ratios')
    parser.add_argument('--reps', type=int, default=20000, help='Monte Carlo replications')
    parser.add_argument('--out', type=Path, default=Path('example-out'), help='Where to write plots')
    args = parser.parse_args()
    main(args.reps, args.out)

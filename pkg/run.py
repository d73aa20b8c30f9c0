"""
Run script for qqcheck
"""
import argparse
import sys
from pathlib import Path

from qqcheck.cli import main as cli_main

SAMPLE_DATA = Path(__file__).parent / 'data' / 'synthetic_combined_ratios.csv'

# Statistics of the published case study with their inferred sample sizes
PUBLISHED_STATISTICS = ['3.9443:14', '4.6539:18', '3.3515:18', '2.1064:18']


def run_demo(out: str, reps: int) -> int:
    """Test the bundled synthetic combined ratios, then map the published statistics"""
    print(f"\nTesting {SAMPLE_DATA.name} (log combined ratios)...")
    status = cli_main(['test', '--input', str(SAMPLE_DATA), '--out', out, '--reps', str(reps)])
    if status != 0:
        print("\nDemo run failed.")
        return status

    print("\nPublished statistics:")
    published = []
    for pair in PUBLISHED_STATISTICS:
        published += ['--published', pair]
    return cli_main(['test', *published, '--out', out, '--format', 'text'])


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Run qqcheck on the bundled data or with CLI arguments')
    parser.add_argument('mode', choices=['demo', 'cli'], help='Run mode (demo or cli)')
    parser.add_argument('--out', default='qqcheck-demo', help='Output directory (demo mode only)')
    parser.add_argument('--reps', type=int, default=20000, help='Monte Carlo replications (demo mode only)')
    args, rest = parser.parse_known_args()

    if args.mode == 'demo':
        sys.exit(run_demo(args.out, args.reps))
    sys.exit(cli_main(rest))

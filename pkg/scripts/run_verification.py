#!/usr/bin/env python3
"""
QRT Workbench - Catalogue Verification

Runs the check suite on every catalogue example (or the ones named) and
writes one JSON report per example into a session directory.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

# Add parent directory to Python path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import CheckMode, load_workbench_config
from src.qrtw.registry import ParameterAssignment, list_examples
from src.qrtw.verify import print_report, run_suite, write_reports

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
)

logger = logging.getLogger(__name__)


def print_banner():
    print("""
╔══════════════════════════════════════════════════════════════╗
║                 🧮 QRT Workbench - Verification              ║
║                                                              ║
║  ✅ Invariants, involutions and factorizations               ║
║  📐 Volume forms, symmetry fields and reductions             ║
║  🔁 Reduced maps, QRT switches and commuting squares         ║
╚══════════════════════════════════════════════════════════════╝
    """)


def run_verification(names, output_dir: Path, seed=None, mode=None, timings: bool = False) -> bool:
    """Verify each example, write its report and return whether all passed."""
    policy = load_workbench_config().get_mode_policy(seed=seed)
    if mode is not None:
        policy.mode_4d = policy.mode_6d = CheckMode(mode)
        policy.exact_degree_cap = None
    session_dir = output_dir / f"session_{time.strftime('%Y%m%d_%H%M%S')}"

    all_passed = True
    for name in names:
        start = time.time()
        logger.info(f"🚀 Verifying {name}")
        report = run_suite(name, ParameterAssignment.symbolic(), policy, timings=timings)
        write_reports([report], session_dir / f"{name}.json")
        print_report(report)
        logger.info(f"⏱️ {name} finished in {time.time() - start:.1f}s")
        all_passed = all_passed and report.passed

    logger.info(f"📁 Reports in {session_dir}")
    return all_passed


def main():
    parser = argparse.ArgumentParser(description='Verify the QRT Workbench catalogue')
    parser.add_argument('examples', nargs='*', help='Example names (default: all)')
    parser.add_argument('--output-dir', default='reports', help='Directory for session reports')
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--mode', choices=[m.value for m in CheckMode], default=None)
    parser.add_argument('--timings', action='store_true')
    args = parser.parse_args()

    print_banner()
    names = args.examples or [summary.name for summary in list_examples()]
    passed = run_verification(names, Path(args.output_dir), args.seed, args.mode, args.timings)
    sys.exit(0 if passed else 1)


if __name__ == "__main__":
    main()

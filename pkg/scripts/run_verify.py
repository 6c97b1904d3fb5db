#!/usr/bin/env python3
"""Run the numerical self-check suites and print a report.

Exit code 0 when every suite is within tolerance, 3 otherwise (same
convention as `python3 -m vortex_twm verify`).
"""

import argparse
import sys

from vortex_twm.errors import VerificationError
from vortex_twm.verify import ensure_passing, print_report, run_verify


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--level", default="fast", choices=("fast", "full"))
    args = ap.parse_args(argv)

    results = run_verify(args.level)
    print_report(results)
    try:
        ensure_passing(results)
    except VerificationError:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

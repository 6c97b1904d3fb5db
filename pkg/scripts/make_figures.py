#!/usr/bin/env python3
"""Regenerate the bundled figure presets.

Each preset writes its cells (field CSVs, images, ring profiles) plus a
metrics.csv and manifest.json under <out>/<fig_id>/.  Runs everything by
default; pass --only to rebuild a single figure.
"""

import argparse
import sys
import time
from pathlib import Path

from vortex_twm.figures import FIGURE_IDS, reproduce_figure


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs/figures", help="output root")
    ap.add_argument(
        "--only",
        action="append",
        choices=FIGURE_IDS,
        help="rebuild just this preset (repeatable)",
    )
    args = ap.parse_args(argv)

    root = Path(args.out)
    for fig_id in tuple(args.only) if args.only else FIGURE_IDS:
        t0 = time.perf_counter()
        manifest = reproduce_figure(fig_id, root / fig_id)
        dt = time.perf_counter() - t0
        print(f"{fig_id}: {len(manifest['files'])} files in {dt:.1f}s -> {root / fig_id}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

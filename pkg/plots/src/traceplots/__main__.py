"""Render the standard figure set for a run directory.

Usage: python -m traceplots RUN_DIR [--out DIR] [--compare METRICS_JSON]
"""

import argparse
import sys

from .render import SchemaError, default_figure_set, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="traceplots", description=__doc__)
    parser.add_argument("run_dir", help="directory holding trace.csv, "
                        "trigger_trace.csv and metrics.json")
    parser.add_argument("--out", default=None, help="figure output directory")
    parser.add_argument("--compare", default=None,
                        help="second metrics.json for comparison bars")
    args = parser.parse_args(argv)
    try:
        specs = default_figure_set(args.run_dir, args.out, args.compare)
        for spec in specs:
            render(spec)
            print(f"wrote {spec.output}")
    except SchemaError as err:
        print(f"schema error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

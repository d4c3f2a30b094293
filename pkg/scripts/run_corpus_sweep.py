#!/usr/bin/env python3
"""Sweep every verification suite over the whole corpus and print the report.

Usage:
    python3 scripts/run_corpus_sweep.py [--suite all] [--csv norms.csv]

Equivalent to `germlab verify corpus`, kept as a script so the sweep is easy
to run from a checkout and to tweak (subset of subjects, extra timing).
"""

import argparse
import sys
import time

from germlab.builtins import corpus
from germlab.suites import SUITE_NAMES, global_reports, render_reports, run_suite


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    parser.add_argument("--csv", default=None)
    args = parser.parse_args()

    csv_rows = [] if args.csv else None
    start = time.perf_counter()
    reports = global_reports(args.suite)
    for name, S in corpus():
        t0 = time.perf_counter()
        reports += run_suite(name, S, args.suite, csv_rows)
        print(f"# {name}: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    sys.stdout.write(render_reports(reports))
    print(f"# total {time.perf_counter() - start:.2f}s", file=sys.stderr)

    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("subject,check,sample,norm_sq,norm_star,deviation\n")
            for row in csv_rows or []:
                fh.write(row + "\n")
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())

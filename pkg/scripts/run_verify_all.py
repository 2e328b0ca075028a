#!/usr/bin/env python3
"""Run the full statement-verification harness and save its artifacts.

Writes the JSON report array and a per-statement witness CSV next to each
other, then prints the summary table.  Exit code 2 signals a completed run
with at least one failed check.

    python3 scripts/run_verify_all.py [--seed 7] [--out-dir results]
"""

import argparse
import csv
import json
import pathlib
import sys
import time

from varlp.config import ExperimentConfig
from varlp.verify import run_all, summary_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--config", default=None)
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()

    cfg = ExperimentConfig.from_json_file(args.config) if args.config \
        else ExperimentConfig()
    cfg.seed = args.seed

    t0 = time.monotonic()
    reports = run_all(cfg)
    elapsed = time.monotonic() - t0

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "report.json", "w") as fh:
        json.dump([r.to_dict() for r in reports], fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(out / "witnesses.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("statement_id", "witness", "lhs", "rhs"))
        for r in reports:
            for desc, lhs, rhs in r.witnesses:
                w.writerow((r.statement_id, desc, lhs, rhs))

    print(summary_table(reports))
    print(f"\n{len(reports)} statements checked in {elapsed:.1f}s; "
          f"artifacts in {out}/")
    return 0 if all(r.passed for r in reports) else 2


if __name__ == "__main__":
    sys.exit(main())

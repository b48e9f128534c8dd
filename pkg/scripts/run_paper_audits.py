#!/usr/bin/env python3
"""Run the full audit battery: every claim on its shipped files plus random
batches, printing one summary line per run. Exit 0 when nothing binding
failed beyond the documented discrepancies (prop4.1's printed coefficients
are expected to fail and are reported but tolerated here).

Usage: python scripts/run_paper_audits.py [--seed N] [--trials N]
"""

from __future__ import annotations

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from opertuple.cli import main as cli_main

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"

FILE_CLAIMS = [
    ("thm2.1", "example_2_1_d1.json"),
    ("thm2.1", "example_2_1_d2.json"),
    ("thm2.1", "example_2_1_d3.json"),
    ("thm2.1", "example_2_2.json"),
    ("thm2.3", "example_2_1_d2.json"),
    ("thm3.1", "golden_ratio_d2.json"),
    ("prop3.2", "example_2_1_d2.json"),
    ("thm4.1", "example_4_1_corrected.json"),
    ("thm4.1", "scalar_counterexample_thm4_1.json"),
    ("prop4.1", "example_4_1_corrected.json"),
]

RANDOM_CLAIMS = [
    "thm2.1",
    "thm2.2",
    "thm2.3",
    "prop2.1",
    "prop2.4",
    "thm3.1",
    "prop3.2",
    "thm4.1",
    "thm4.2",
    "prop4.1",
]

# Runs that demonstrate a documented paper discrepancy; their nonzero exit is
# the finding, not a regression.
EXPECTED_FINDINGS = {
    ("thm4.1", "scalar_counterexample_thm4_1.json"),
    ("prop4.1", "random"),
}


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=20240811)
    parser.add_argument("--trials", type=int, default=10)
    args = parser.parse_args()

    failures = []
    for claim, name in FILE_CLAIMS:
        rc = cli_main(["audit", "--claim", claim, "--input", str(DATA / name), "--seed", str(args.seed)])
        expected = (claim, name) in EXPECTED_FINDINGS
        tag = "finding (expected)" if (rc == 1 and expected) else ("ok" if rc == 0 else "FAILURE")
        print(f"== {claim} on {name}: exit {rc} [{tag}]\n")
        if rc == 2 or (rc == 1 and not expected):
            failures.append((claim, name, rc))

    for claim in RANDOM_CLAIMS:
        rc = cli_main(
            ["audit", "--claim", claim, "--random", str(args.trials), "--seed", str(args.seed)]
        )
        expected = (claim, "random") in EXPECTED_FINDINGS
        tag = "finding (expected)" if (rc == 1 and expected) else ("ok" if rc == 0 else "FAILURE")
        print(f"== {claim} on {args.trials} random instances: exit {rc} [{tag}]\n")
        if rc == 2 or (rc == 1 and not expected):
            failures.append((claim, "random", rc))

    if failures:
        print("unexpected failures:", failures)
        return 1
    print("audit battery complete; all results as documented")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

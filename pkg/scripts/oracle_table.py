#!/usr/bin/env python3
"""
Unit-Cube Oracle Table

Compares bm_norm(χ_{[0,1)^n}) with its closed form from the two geometric
series over fine and coarse cubes, for every tuple of the oracle lattice.

Usage:
    python scripts/oracle_table.py
    python scripts/oracle_table.py --tolerance 1e-12
    python scripts/oracle_table.py --output output/oracle_table.csv
"""

import argparse
import csv
import os
import sys

from mixnorm_lab.grid import DyadicCube, StepFunction
from mixnorm_lab.norms import bm_norm, chi_bm_closed_form
from mixnorm_lab.verify import indicator_oracle_lattice


def oracle_rows() -> list[dict]:
    rows = []
    for params in indicator_oracle_lattice():
        chi = StepFunction.indicator(DyadicCube.standard(0, *([0] * params.n)))
        computed = bm_norm(chi, params)
        expected = chi_bm_closed_form(params)
        rows.append(
            {
                "params": params.label(),
                "n": params.n,
                "bm_norm": computed,
                "closed_form": expected,
                "relative_error": abs(computed - expected) / expected,
            }
        )
    return rows


def main():
    parser = argparse.ArgumentParser(
        description="Check bm_norm of χ_[0,1)^n against its closed form"
    )
    parser.add_argument(
        "--tolerance",
        type=float,
        default=1e-10,
        help="Largest accepted relative error (default: 1e-10)",
    )
    parser.add_argument(
        "--output",
        help="Optional CSV file for the table",
    )

    args = parser.parse_args()

    rows = oracle_rows()
    print(f"🔍 Checking {len(rows)} parameter tuples")
    print("=" * 70)
    failures = 0
    for row in rows:
        ok = row["relative_error"] <= args.tolerance
        failures += not ok
        status = "✅" if ok else "❌"
        print(
            f"{status} {row['params']:32} | {row['bm_norm']:.15g} | "
            f"{row['closed_form']:.15g} | {row['relative_error']:.2e}"
        )
    print("=" * 70)
    print(f"📈 {len(rows) - failures} of {len(rows)} tuples within {args.tolerance:g}")

    if args.output:
        directory = os.path.dirname(args.output)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(
                handle, fieldnames=list(rows[0]), lineterminator="\n"
            )
            writer.writeheader()
            writer.writerows(rows)
        print(f"💾 Table saved to: {args.output}")

    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Plot sweep CSVs produced by leo-cache-sim (convenience, untested).

Usage: python docs/plot_sweep.py out/sweep_*.csv [-o sweeps.png]

Draws weighted total power and required satellite SNR against the
fraction of data sent through the constellation.
"""

import argparse
import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_sweep(path):
    rows = []
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            if row["feasible"] != "true":
                continue
            rows.append(
                (
                    float(row["fraction"]),
                    float(row["total_weighted"]),
                    float(row["required_snr_db"]),
                )
            )
    scenario = path.stem.removeprefix("sweep_")
    return scenario, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csvs", nargs="+", type=Path)
    parser.add_argument("-o", "--output", default="sweeps.png")
    args = parser.parse_args()

    fig, (ax_total, ax_snr) = plt.subplots(1, 2, figsize=(11, 4.5))
    for path in args.csvs:
        scenario, rows = read_sweep(path)
        if not rows:
            continue
        f = [r[0] * 100 for r in rows]
        ax_total.plot(f, [r[1] for r in rows], marker=".", label=scenario)
        snr = [(x, r[2]) for x, r in zip(f, rows) if math.isfinite(r[2])]
        if snr:
            ax_snr.plot([x for x, _ in snr], [s for _, s in snr],
                        marker=".", label=scenario)

    ax_total.set_xlabel("data via constellation (%)")
    ax_total.set_ylabel("weighted total power")
    ax_total.set_yscale("log")
    ax_total.legend()
    ax_snr.set_xlabel("data via constellation (%)")
    ax_snr.set_ylabel("required satellite SNR (dB)")
    ax_snr.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()

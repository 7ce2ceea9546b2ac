"""File reports for verification runs: residual CSVs plus rendered figures.

Every report writes a delimited ``*.csv`` next to a ``*.png`` rendered with
the Agg backend, so runs on headless machines (CI, containers) work
unchanged.
"""

from __future__ import annotations

import csv
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def write_residual_report(outdir, name, residuals, tol):
    """Residual table and log-histogram for one verification run.

    Returns the paths written: ``<name>_residuals.csv`` and
    ``<name>_residuals.png``.
    """
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, f"{name}_residuals.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sample", "residual"])
        for i, r in enumerate(residuals):
            writer.writerow([i, repr(float(r))])

    png_path = os.path.join(outdir, f"{name}_residuals.png")
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    floor = 1e-18
    logs = [math.log10(max(abs(r), floor)) for r in residuals]
    if logs:
        ax.hist(logs, bins=min(40, max(10, len(logs) // 10)), color="#33658a")
    if tol and tol > 0:
        ax.axvline(math.log10(tol), color="#f26419", linestyle="--",
                   label=f"tolerance {tol:g}")
        ax.legend(loc="upper right", fontsize=8)
    ax.set_xlabel("log10 |residual|")
    ax.set_ylabel("samples")
    ax.set_title(f"{name}: {len(residuals)} samples")
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def write_invariant_report(outdir, name, contributions, total):
    """Per-tetrahedron contribution table and bar chart."""
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, f"{name}_contributions.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tetrahedron", "contribution"])
        for i, c in enumerate(contributions):
            writer.writerow([i, repr(float(c))])
        writer.writerow(["total", repr(float(total))])

    png_path = os.path.join(outdir, f"{name}_contributions.png")
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.bar(range(len(contributions)), contributions, color="#33658a")
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("tetrahedron")
    ax.set_ylabel("signed volume contribution")
    ax.set_title(f"{name}: total {total:.9g}")
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]

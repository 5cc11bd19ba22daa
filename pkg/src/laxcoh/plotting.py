"""Figure rendering for the CLI report path.

Two figures back the delimited/JSON outputs: a level-structure map of a
cocycle table (which degree pairs carry nonzero values, with magnitude)
and a pass/fail strip for a verification report.  Rendering is optional
at the CLI level; the JSON stays authoritative.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .cocycle import CocycleTable  # noqa: E402
from .report import Report  # noqa: E402

__all__ = ["save_table_figure", "save_report_figure"]

plt.rcParams.update({
    "figure.figsize": (6.0, 4.2),
    "font.size": 9,
    "axes.titlesize": 10,
})


def _magnitude(value) -> float:
    re = float(value.re)
    im = float(value.im)
    return math.hypot(re, im)


def save_table_figure(table: CocycleTable, path: str, title: str = ""):
    """Heat map of total entry magnitude per degree pair (n, m)."""
    lo, hi = table.window
    size = hi - lo + 1
    grid = [[0.0] * size for _ in range(size)]
    for (n, _, m, _), v in table.entries.items():
        grid[n - lo][m - lo] += _magnitude(v)
    fig, ax = plt.subplots()
    im = ax.imshow(
        grid, origin="lower", cmap="viridis",
        extent=(lo - 0.5, hi + 0.5, lo - 0.5, hi + 0.5),
    )
    ax.plot([lo, hi], [hi, lo], lw=0.8, ls="--", color="w", alpha=0.7)
    ax.set_xlabel("degree m")
    ax.set_ylabel("degree n")
    ax.set_title(title or "cocycle table level structure")
    fig.colorbar(im, ax=ax, label="summed entry magnitude")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_report_figure(report: Report, path: str):
    """One bar per check, green for pass, red for fail."""
    checks = sorted(report.checks, key=lambda c: c.check_id)
    if not checks:
        checks = []
    names = [c.check_id for c in checks]
    colors = ["#2a9d3f" if c.passed else "#c3342b" for c in checks]
    height = max(2.0, 0.28 * len(names) + 1.2)
    fig, ax = plt.subplots(figsize=(7.0, height))
    ax.barh(range(len(names)), [1.0] * len(names), color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xticks([])
    ax.invert_yaxis()
    npass = sum(1 for c in checks if c.passed)
    ax.set_title(f"suite '{report.suite}': {npass}/{len(checks)} checks pass")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

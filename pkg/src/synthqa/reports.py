"""Plot-ready report tables and their rendered figures.

Every report writes a tab-delimited text table; the figure renderer draws
the same numbers with error bars so a scoring run leaves both artifacts
side by side.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .scoring import StratifiedReport  # noqa: E402


def stratified_table(report: StratifiedReport) -> str:
    lines = ["difficulty\tmean\tstderr\tn"]
    for difficulty, b in report.buckets.items():
        lines.append(f"{difficulty}\t{b.mean:.6f}\t{b.standard_error:.6f}\t{b.n}")
    o = report.overall
    lines.append(f"overall\t{o.mean:.6f}\t{o.standard_error:.6f}\t{o.n}")
    return "\n".join(lines) + "\n"


def stratified_figure(report: StratifiedReport, path: str | Path, title: str = "Reward by difficulty") -> None:
    difficulties = list(report.buckets)
    means = [report.buckets[d].mean for d in difficulties]
    errs = [report.buckets[d].standard_error for d in difficulties]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(d) for d in difficulties], means, yerr=errs, capsize=3, color="#4878d0")
    ax.set_xlabel("difficulty")
    ax.set_ylabel("mean reward")
    ax.set_ylim(0, 1.05)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def scaling_table(rows: list[tuple[int, float, float, int]]) -> str:
    """Rows are (checkpoint_step, mean, stderr, n), ascending by step."""
    lines = ["step\tmean\tstderr\tn"]
    for step, mean, stderr, n in rows:
        lines.append(f"{step}\t{mean:.6f}\t{stderr:.6f}\t{n}")
    return "\n".join(lines) + "\n"


def scaling_figure(rows: list[tuple[int, float, float, int]], path: str | Path, title: str = "Reward by training step") -> None:
    steps = [r[0] for r in rows]
    means = [r[1] for r in rows]
    errs = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(steps, means, marker="o", color="#4878d0")
    ax.fill_between(
        steps,
        [m - e for m, e in zip(means, errs)],
        [m + e for m, e in zip(means, errs)],
        alpha=0.25,
        color="#4878d0",
    )
    ax.set_xlabel("training step")
    ax.set_ylabel("mean reward")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def groundedness_table(rows: list[tuple[int, float, int]]) -> str:
    lines = ["position\tfraction\tn"]
    for pos, frac, n in rows:
        lines.append(f"{pos}\t{frac:.6f}\t{n}")
    return "\n".join(lines) + "\n"


def groundedness_figure(rows: list[tuple[int, float, int]], path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(r[0]) for r in rows], [r[1] for r in rows], color="#6acc64")
    ax.set_xlabel("intermediate answer position")
    ax.set_ylabel("fraction of traces containing it")
    ax.set_ylim(0, 1.05)
    ax.set_title("Groundedness of reasoning traces")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)

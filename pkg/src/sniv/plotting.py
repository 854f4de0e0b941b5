"""Matplotlib figures written next to the CSV outputs of the CLI."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .mc import RunMetrics  # noqa: E402

__all__ = ["plot_section", "plot_metrics"]


def plot_section(
    path,
    polygons: Sequence[tuple],
    axis_names: Sequence[str],
    points: Optional[np.ndarray] = None,
    title: str = "",
) -> None:
    """Draw envelope cross-sections.

    ``polygons`` holds ``(label, vertices)`` pairs; ``points`` are optional
    sample members of the exact set drawn as dots.
    """
    fig, ax = plt.subplots(figsize=(5.0, 4.5))
    for label, verts in polygons:
        v = np.asarray(verts)
        if v.size == 0:
            continue
        closed = np.vstack([v, v[:1]])
        ax.fill(closed[:, 0], closed[:, 1], alpha=0.25, label=label)
        ax.plot(closed[:, 0], closed[:, 1], lw=1.0)
    if points is not None and len(points):
        p = np.asarray(points)
        ax.plot(p[:, 0], p[:, 1], ".", ms=2, color="k", alpha=0.5, label="set members")
    ax.set_xlabel(axis_names[0])
    ax.set_ylabel(axis_names[1])
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_metrics(path, metrics: Sequence[RunMetrics]) -> None:
    """Coverage (exact and envelope) and mean widths per design and method."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.8))
    labels = [f"{m.design}\n{m.method}" for m in metrics]
    x = np.arange(len(metrics))
    ax1.bar(x - 0.2, [m.coverage for m in metrics], 0.4, label="set")
    ax1.bar(x + 0.2, [m.coverage_envelope for m in metrics], 0.4, label="envelope")
    ax1.axhline(0.95, color="k", lw=0.8, ls="--")
    ax1.set_ylim(0, 1.05)
    ax1.set_ylabel("coverage")
    ax1.set_xticks(x, labels, fontsize=7)
    ax1.legend(fontsize=8)
    k = max((len(m.widths) for m in metrics), default=0)
    step = 0.8 / max(k, 1)
    for j in range(k):
        vals = [m.widths[j] if j < len(m.widths) else np.nan for m in metrics]
        ax2.bar(x - 0.4 + step * (j + 0.5), vals, step, label=f"beta{j + 1}")
    ax2.set_ylabel("mean width")
    ax2.set_xticks(x, labels, fontsize=7)
    if k:
        ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)

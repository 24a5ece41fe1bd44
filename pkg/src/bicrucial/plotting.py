"""Figures written to files: permutation plots and the count table chart."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_permutation(
    perm: Sequence[int],
    path: str | Path,
    title: Optional[str] = None,
    value_bands: Optional[Sequence[int]] = None,
) -> Path:
    """Scatter of ``(i, perm[i])`` joined in index order.

    ``value_bands`` are horizontal region boundaries drawn as dashed lines.
    """
    path = Path(path)
    n = len(perm)
    fig, ax = plt.subplots(figsize=(max(4.0, n / 8), 4.0))
    ax.plot(range(n), perm, color="0.6", linewidth=0.8, zorder=1)
    ax.scatter(range(n), perm, s=12, color="black", zorder=2)
    for b in value_bands or ():
        ax.axhline(b - 0.5, color="tab:blue", linestyle="--", linewidth=0.6)
    ax.set_xlabel("index")
    ax.set_ylabel("value")
    ax.set_xlim(-1, n)
    ax.set_ylim(-1, n)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_counts(rows: Mapping[int, Sequence[int]], path: str | Path,
                labels: Sequence[str] = ("square-free", "left-crucial", "bicrucial")) -> Path:
    """Log-scale chart of the counts per length; zero counts are left out."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    lengths = sorted(rows)
    for j, label in enumerate(labels):
        pts = [(n, rows[n][j]) for n in lengths if rows[n][j] > 0]
        if pts:
            xs, ys = zip(*pts)
            ax.plot(xs, ys, marker="o", markersize=3, label=label)
    ax.set_yscale("log")
    ax.set_xlabel("length n")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path

"""Heatmaps of operation tables and census bar charts, written to image files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_META = {"Software": None}


def _table_axis(ax, table: np.ndarray, labels: Sequence[str], title: str) -> None:
    n = table.shape[0]
    ax.imshow(table, cmap="viridis", interpolation="nearest", vmin=0, vmax=max(n - 1, 1))
    ax.set_title(title, fontsize=9)
    if n <= 12:
        for i in range(n):
            for j in range(n):
                ax.text(j, i, str(int(table[i, j])), ha="center", va="center", fontsize=6,
                        color="white" if table[i, j] < n / 2 else "black")
    if n <= 16:
        ax.set_xticks(range(n), labels, rotation=90, fontsize=6)
        ax.set_yticks(range(n), labels, fontsize=6)
    else:
        ax.set_xticks([])
        ax.set_yticks([])


def table_figure(tables: dict[str, np.ndarray], labels: Sequence[str], path: str | Path,
                 title: str = "") -> Path:
    """One heatmap panel per named table, side by side."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, axes = plt.subplots(1, len(tables), figsize=(3.2 * len(tables), 3.4), squeeze=False)
    for ax, (name, table) in zip(axes[0], tables.items()):
        _table_axis(ax, np.asarray(table), labels, name)
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=_META)
    plt.close(fig)
    return path


def semibrace_figure(B, path: str | Path, title: str = "") -> Path:
    return table_figure({"a o b": B.mul.table, "a + b": B.add}, B.mul.labels, path,
                        title or B.name)


def affine_figure(A, path: str | Path, title: str = "") -> Path:
    return table_figure({"a o b": A.group.table, "sigma_a(b)": A.sigma}, A.group.labels, path,
                        title or A.name)


def census_figure(census, path: str | Path) -> Path:
    """Orbit sizes of each class, coloured by whether the derived semi-brace is a brace."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    sizes = [c.orbit_size for c in census.classes]
    colors = ["tab:green" if c.semibrace.get("brace") else
              "tab:blue" if c.semibrace.get("skew") else "tab:gray" for c in census.classes]
    fig, ax = plt.subplots(figsize=(max(3.0, 0.4 * len(sizes) + 1.5), 3.0))
    ax.bar(range(len(sizes)), sizes, color=colors)
    ax.set_xlabel("class")
    ax.set_ylabel("orbit size")
    ax.set_title(f"{census.group} ({census.kind}): {len(sizes)} classes", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=_META)
    plt.close(fig)
    return path

"""Hasse-diagram figures for the CLI reports."""
from __future__ import annotations

from typing import Any, Callable

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .lattice import Lattice  # noqa: E402


def _levels(L: Lattice) -> list[int]:
    # longest chain from the bottom, so every cover edge points upward
    edges = L.covers()
    level = [0] * len(L)
    order = sorted(range(len(L)), key=lambda i: int(L.leq[:, i].sum()))
    below = {j: [i for i, jj in edges if jj == j] for j in range(len(L))}
    for j in order:
        if below[j]:
            level[j] = 1 + max(level[i] for i in below[j])
    return level


def plot_hasse(
    L: Lattice,
    path: str,
    labeler: Callable[[Any], str] = str,
    title: str | None = None,
) -> None:
    level = _levels(L)
    rows: dict[int, list[int]] = {}
    for i, lv in enumerate(level):
        rows.setdefault(lv, []).append(i)
    pos = {}
    for lv, members in rows.items():
        for k, i in enumerate(members):
            pos[i] = (k - (len(members) - 1) / 2.0, float(lv))
    width = max(len(m) for m in rows.values())
    fig, ax = plt.subplots(figsize=(max(4.0, 1.8 * width), max(3.0, 1.1 * (len(rows) + 1))))
    for i, j in L.covers():
        (x0, y0), (x1, y1) = pos[i], pos[j]
        ax.plot([x0, x1], [y0, y1], color="0.45", lw=1.0, zorder=1)
    for i, node in enumerate(L.nodes):
        x, y = pos[i]
        ax.text(x, y, labeler(node), ha="center", va="center", fontsize=8, zorder=2,
                bbox=dict(boxstyle="round,pad=0.3", fc="white", ec="0.2", lw=0.8))
    ax.set_xlim(-width / 2.0 - 0.5, width / 2.0 + 0.5)
    ax.set_ylim(-0.6, max(level) + 0.6)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)

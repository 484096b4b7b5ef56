"""Matplotlib figures for Betti tables (file output only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .homology import BettiTable  # noqa: E402
from .khovanov import GradingSystem  # noqa: E402

__all__ = ["plot_betti_table", "plot_diagonals"]


def _grid(t: BettiTable):
    cells = t.project()
    if not cells:
        return [], [], {}
    iss = sorted({i for i, _ in cells})
    jss = sorted({j for _, j in cells})
    irange = list(range(iss[0], iss[-1] + 1))
    jrange = list(range(jss[0], jss[-1] + 1))
    return irange, jrange, cells


def plot_betti_table(t: BettiTable, path: str | Path, title: str = "") -> Path:
    """Heat grid of the (i, j) projection with dimensions written in the cells.

    For the full system each cell also lists the multiple gradings present.
    """
    path = Path(path)
    irange, jrange, cells = _grid(t)
    fig, ax = plt.subplots(figsize=(1.0 + 0.7 * max(len(irange), 1), 1.0 + 0.45 * max(len(jrange), 1)),
                           constrained_layout=True)
    if cells:
        data = [[cells.get((i, j), 0) for i in irange] for j in jrange]
        ax.imshow(data, origin="lower", cmap="Blues", aspect="auto",
                  extent=(irange[0] - 0.5, irange[-1] + 0.5, jrange[0] - 0.5, jrange[-1] + 0.5))
        multis: dict[tuple[int, int], set[str]] = {}
        if t.system is GradingSystem.FULL:
            for k, v in t.entries.items():
                if v and k.multi:
                    multis.setdefault(k.plain(), set()).add(k.render_multi())
        top = max(cells.values())
        for (i, j), v in cells.items():
            label = str(v)
            if (i, j) in multis:
                label += "\n" + " ".join(sorted(multis[(i, j)]))
            ax.text(i, j, label, ha="center", va="center", fontsize=7,
                    color="white" if v > top / 2 else "black")
        ax.set_xticks(irange)
        ax.set_yticks(jrange[::2] if len(jrange) > 12 else jrange)
    else:
        ax.text(0.5, 0.5, "zero homology", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("homological degree i")
    ax.set_ylabel("quantum degree j")
    ax.set_title(title or f"{t.system.value} homology", fontsize=9)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_diagonals(tables: dict[str, BettiTable], path: str | Path) -> Path:
    """Total dimension on each diagonal j - 2i, one bar group per table."""
    path = Path(path)
    names = list(tables)
    fig, ax = plt.subplots(figsize=(6, 3.2), constrained_layout=True)
    width = 0.8 / max(len(names), 1)
    for k, name in enumerate(names):
        diag: dict[int, int] = {}
        for (i, j), v in tables[name].project().items():
            diag[j - 2 * i] = diag.get(j - 2 * i, 0) + v
        xs = sorted(diag)
        ax.bar([x + (k - (len(names) - 1) / 2) * width * 2 for x in xs], [diag[x] for x in xs],
               width=width * 2, label=name)
    ax.set_xlabel("diagonal j - 2i")
    ax.set_ylabel("total dimension")
    if names:
        ax.legend(fontsize=7)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

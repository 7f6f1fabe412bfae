"""Static figures of Hodge and Betti tables, written to image files."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .dolbeault import BettiTable, HodgeTable  # noqa: E402


def plot_hodge_diamond(table: HodgeTable, path: str | Path, title: Optional[str] = None) -> Path:
    """Draw ``h^{p,q}`` at ``(q - p, p + q)`` so that degree runs bottom to top.

    Zero entries are drawn faintly to keep the diamond's outline visible.
    """
    D = table.dimension
    size = max(3.0, 0.55 * (D + 1) + 1.5)
    fig, ax = plt.subplots(figsize=(size, size))
    for p in range(D + 1):
        for q in range(D + 1):
            v = table(p, q)
            ax.text(q - p, p + q, str(v), ha="center", va="center",
                    fontsize=11 if v else 8, color="black" if v else "0.75",
                    fontweight="bold" if v else "normal")
    ax.set_xlim(-D - 1, D + 1)
    ax.set_ylim(-1, 2 * D + 1)
    ax.set_xlabel("q - p")
    ax.set_ylabel("p + q")
    ax.set_aspect("equal")
    for spine in ("top", "right"):
        ax.spines[spine].set_visible(False)
    ax.set_title(title or f"Hodge numbers (complex dimension {D})")
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def plot_betti(betti: BettiTable, path: str | Path, title: Optional[str] = None) -> Path:
    fig, ax = plt.subplots(figsize=(max(4.0, 0.35 * len(betti.numbers) + 2), 3.2))
    ks = list(range(len(betti.numbers)))
    ax.bar(ks, betti.numbers, color="tab:blue", width=0.7)
    for k, b in zip(ks, betti.numbers):
        if b:
            ax.text(k, b, str(b), ha="center", va="bottom", fontsize=9)
    ax.set_xticks(ks)
    ax.set_xlabel("degree k")
    ax.set_ylabel("b_k")
    ax.set_title(title or "Betti numbers")
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out

"""Newton-support figures for F values (file output only, Agg backend)."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .ratfun import RatFun  # noqa: E402

plt.rcParams["figure.dpi"] = 110
plt.rcParams["font.size"] = 9
plt.rcParams["svg.hashsalt"] = "skein-f"  # stable ids if someone saves SVG


def safe_name(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.+-]+", "_", text).strip("_") or "figure"


def _support(ax, value: RatFun, title: str) -> None:
    terms = value.terms()
    if not terms:
        ax.text(0.5, 0.5, "0", ha="center", va="center", transform=ax.transAxes)
    else:
        xe = [m[0] for m, _ in terms]
        lo, hi = min(xe), max(xe)
        # nudge terms sideways by x-power so stacked monomials stay visible
        nudge = {e: 0.0 if hi == lo else 0.3 * ((e - lo) / (hi - lo) - 0.5) for e in set(xe)}
        xs = [m[2] + nudge[m[0]] for m, _ in terms]
        ws = [m[1] for m, _ in terms]
        size = [12 + 10 * min(abs(c), 12) for _, c in terms]
        sc = ax.scatter(xs, ws, c=xe, s=size, cmap="viridis", edgecolors="k", linewidths=0.3)
        neg = [(m[2] + nudge[m[0]], m[1]) for m, c in terms if c < 0]
        if neg:
            ax.scatter(*zip(*neg), marker="x", s=10, c="crimson", linewidths=0.6)
        bar = ax.figure.colorbar(sc, ax=ax, label="power of x", shrink=0.8)
        bar.locator = MaxNLocator(integer=True)
        bar.update_ticks()
    ax.set_xlabel("power of t")
    ax.set_ylabel("power of w")
    ax.set_title(f"{title}  (denominator (1-t)^{value.k})", fontsize=8)
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.grid(True, linewidth=0.3, alpha=0.5)


def plot_values(values: Sequence[tuple[str, RatFun]], path: str | Path, title: str = "") -> Path:
    """One panel per value, side by side; returns the written path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = max(len(values), 1)
    fig, axes = plt.subplots(1, n, figsize=(4.4 * n, 3.4), squeeze=False, layout="constrained")
    for ax, (label, value) in zip(axes[0], values):
        _support(ax, value, label)
    if title:
        fig.suptitle(title, fontsize=10)
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_table_row(directory: str | Path, key: str, expected: RatFun, computed: RatFun) -> Path:
    return plot_values(
        [("published", expected), ("computed", computed)],
        Path(directory) / f"{safe_name(key)}.png",
        title=key,
    )

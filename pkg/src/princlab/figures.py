"""Hasse diagrams and atlas summaries rendered with matplotlib."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .order import Poset  # noqa: E402


def hasse_layout(p: Poset, sweeps: int = 4) -> dict[str, tuple[float, float]]:
    """Height as y; within a level, elements ordered by the mean x of their neighbours."""
    h = p.heights()
    levels: dict[int, list[int]] = {}
    for k in range(p.n):
        levels.setdefault(h[k], []).append(k)
    x = {}
    for row in levels.values():
        for pos, k in enumerate(row):
            x[k] = pos - (len(row) - 1) / 2
    for sweep in range(sweeps):
        up = sweep % 2 == 0
        for lv in sorted(levels, reverse=not up):
            row = levels[lv]

            def centre(k):
                nb = p.lower_covers[k] if up else p.upper_covers[k]
                return sum(x[j] for j in nb) / len(nb) if nb else x[k]

            row.sort(key=lambda k: (centre(k), k))
            for pos, k in enumerate(row):
                x[k] = pos - (len(row) - 1) / 2
    return {p.elements[k]: (x[k], float(h[k])) for k in range(p.n)}


def draw_hasse(p: Poset, ax, highlight=(), title=None, labels=True):
    pos = hasse_layout(p)
    for a, b in p.cover_names():
        (x0, y0), (x1, y1) = pos[a], pos[b]
        ax.plot([x0, x1], [y0, y1], color="0.35", lw=1, zorder=1)
    hl = set(highlight)
    for name, (x, y) in pos.items():
        face = "black" if name in hl else "white"
        ax.scatter([x], [y], s=60, c=face, edgecolors="black", zorder=2)
        if labels:
            ax.annotate(name, (x, y), xytext=(6, 0), textcoords="offset points",
                        fontsize=7, va="center")
    if title:
        ax.set_title(title, fontsize=9)
    ax.set_axis_off()
    ax.margins(0.15)


def save_hasse(p: Poset, path, highlight=(), title=None) -> Path:
    """One Hasse diagram per file; ``highlight`` nodes are drawn filled."""
    fig, ax = plt.subplots(figsize=(3.2, 3.6))
    draw_hasse(p, ax, highlight, title, labels=p.n <= 24)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_pair(L: Poset, con: Poset, principal, path, title=None) -> Path:
    """L beside Con L, principal congruences filled."""
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(6.4, 3.6))
    draw_hasse(L, ax0, title=L.name or "L", labels=L.n <= 24)
    draw_hasse(con, ax1, principal, title="Con L (filled: principal)", labels=con.n <= 24)
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_atlas_summary(report, path) -> Path:
    """Stacked bars of witnessed versus unresolved candidates per D."""
    names = [e.d.name for e in report.entries]
    wit = [sum(r.found for r in e.reports) for e in report.entries]
    none = [len(e.reports) - w for e, w in zip(report.entries, wit)]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.28 * len(names)), 3.2))
    xs = range(len(names))
    ax.bar(xs, wit, color="0.3", label="witness")
    ax.bar(xs, none, bottom=wit, color="0.8", edgecolor="0.3", label=f"none up to {report.max_l_size}")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=90, fontsize=6)
    ax.set_ylabel("candidates")
    ax.legend(fontsize=7, frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

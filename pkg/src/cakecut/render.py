"""Figure rendering: one track per player, densities as column heights.

Output is byte-deterministic for identical inputs: fixed svg hash salt, no
date metadata, fixed geometry.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .model import Division, Instance, classify

_SALT = "cakecut"


def render_figure(instance: Instance, division: Division = None, title: str = None):
    """Build the figure; the caller saves it via save_figure."""
    n = instance.n
    plt.rcParams["svg.hashsalt"] = _SALT
    fig, axes = plt.subplots(
        n, 1, figsize=(9.0, 1.1 * n + 0.8), sharex=True, squeeze=False
    )
    axes = [row[0] for row in axes]
    leftovers = classify(division).leftovers if division is not None else ()
    for i, (ax, v) in enumerate(zip(axes, instance.players)):
        xs, ys = [], []
        for c in range(len(v.cell_masses)):
            xs.append(float(v.breakpoints[c]))
            ys.append(float(v.density(c)))
        xs.append(1.0)
        ys.append(ys[-1])
        ax.fill_between(xs, ys, step="post", color="tab:blue", alpha=0.55, linewidth=0)
        top = max(ys) if max(ys) > 0 else 1.0
        ax.set_ylim(0, 1.12 * top)
        ax.set_xlim(0, 1)
        ax.set_ylabel(f"player {i + 1}", rotation=0, ha="right", va="center", fontsize=9)
        ax.set_yticks([])
        if division is not None:
            piece = division.pieces[i]
            if not piece.empty:
                ax.axvspan(float(piece.left), float(piece.right), color="tab:green", alpha=0.25)
            for gap in leftovers:
                ax.axvspan(
                    float(gap.left),
                    float(gap.right),
                    color="grey",
                    alpha=0.3,
                    hatch="//",
                    linewidth=0,
                )
    axes[-1].set_xticks([0, 0.25, 0.5, 0.75, 1.0])
    fig.suptitle(title or instance.label or "cake instance", fontsize=11)
    fig.subplots_adjust(left=0.12, right=0.98, top=0.88, bottom=0.12, hspace=0.25)
    return fig


def save_figure(fig, path: str):
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)


def render_to_file(instance: Instance, division: Division, path: str, title: str = None):
    save_figure(render_figure(instance, division, title), path)

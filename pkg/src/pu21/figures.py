"""Matplotlib renderings of the scan and sphere-projection reports.

These accompany the delimited/SVG outputs of the CLI report commands when a
``--figure`` path is given.  matplotlib is imported lazily with the Agg
backend so the CLI works headless.
"""

from __future__ import annotations

import numpy as np

from .moduli import RegionTag

_REGION_ORDER = [
    RegionTag.E_ELLIPTIC.value,
    RegionTag.P_CURVE.value,
    RegionTag.L_OUTSIDE_Z.value,
    RegionTag.Z_BOUNDARY.value,
    RegionTag.Z_INTERIOR.value,
]
_REGION_COLORS = ["#6b4b16", "#cfa14e", "#cfa14e", "#f5e9cf", "#f5e9cf"]


def _mpl():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_scan(rows, n1, n2, bounds, traces, path):
    """Region colour map with the boundary curves, rendered to an image file."""
    plt = _mpl()
    from matplotlib.colors import ListedColormap

    codes = {name: i for i, name in enumerate(_REGION_ORDER)}
    img = np.array([codes[r[4]] for r in rows]).reshape(n1, n2)
    a1min, a1max, a2min, a2max = bounds
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.imshow(
        img.T,
        origin="lower",
        extent=(a1min, a1max, a2min, a2max),
        cmap=ListedColormap(_REGION_COLORS),
        vmin=0,
        vmax=len(_REGION_ORDER) - 1,
        interpolation="nearest",
        aspect="equal",
    )
    styles = {"Z": dict(color="#9f2d2d", ls="--"), "P": dict(color="#2d4d9f", ls="-")}
    for name, polylines in traces.items():
        for line in polylines:
            arr = np.asarray(line)
            ax.plot(arr[:, 0], arr[:, 1], lw=1.2, **styles.get(name, {}))
    ax.axhline(0.0, color="#555555", lw=0.6)
    ax.axvline(0.0, color="#555555", lw=0.6)
    ax.set_xlabel(r"$\alpha_1$")
    ax.set_ylabel(r"$\alpha_2$")
    ax.set_xlim(a1min, a1max)
    ax.set_ylim(a2min, a2max)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_spheres(discs, tangency_points, path):
    """Projection discs of the isometric spheres, rendered to an image file."""
    plt = _mpl()
    from matplotlib.patches import Circle

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for d in discs:
        color = "#4d7db5" if d["label"].endswith("+") else "#b55a4d"
        ax.add_patch(
            Circle(
                (d["center_re"], d["center_im"]),
                d["radius"],
                facecolor=color,
                alpha=0.25,
                edgecolor="#333333",
                lw=0.8,
            )
        )
        ax.annotate(
            d["label"],
            (d["center_re"], d["center_im"]),
            ha="center",
            va="center",
            fontsize=8,
            family="monospace",
        )
    for z, label in tangency_points:
        ax.plot([z.real], [z.imag], marker="x", color="#9f2d2d", ms=7)
        ax.annotate(label, (z.real, z.imag), fontsize=7, color="#9f2d2d",
                    xytext=(4, 4), textcoords="offset points")
    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.relim()
    ax.margins(0.1)
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

"""Shared figure defaults for the batch scripts."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

FIG_SIZE = (7.0, 4.2)
DPI = 150

TOY_STYLE = {"linestyle": "-", "color": "tab:blue"}
TABLE_STYLE = {"linestyle": "--", "color": "tab:orange"}


def new_axes():
    fig, ax = plt.subplots(figsize=FIG_SIZE, dpi=DPI)
    ax.grid(True, alpha=0.3)
    return fig, ax


def save(fig, out_path) -> None:
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)

"""Overlay alignment landscapes, one curve per run.

Reads ``landscape.csv`` files. When the manifest next to a CSV records a
toy run of size N, the curve is labeled N=<n> and a vertical marker is
drawn at the rephasing scale pi*(N-1).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .io import PlotInputError, read_landscape, sibling_manifest
from .style import new_axes, save


def render(inputs: list[str], out: str) -> dict:
    """Draw the figure and return what was drawn, for verification."""
    if not inputs:
        raise PlotInputError("at least one landscape CSV is required")
    fig, ax = new_axes()
    markers: dict[str, float] = {}
    curves = []
    for path in inputs:
        gammas, tas = read_landscape(path)
        manifest = sibling_manifest(path)
        toy_n = None
        if manifest and manifest.get("subcommand") == "landscape":
            toy_n = manifest.get("config", {}).get("n")
        label = f"N={toy_n}" if toy_n else Path(path).parent.name or str(path)
        (line,) = ax.plot(gammas, tas, linewidth=1.0, label=label)
        curves.append(label)
        if toy_n:
            marker = math.pi * (toy_n - 1)
            ax.axvline(
                marker, color=line.get_color(), linestyle=":", alpha=0.7
            )
            markers[label] = marker
    ax.set_xlabel("rotation scale (rad)")
    ax.set_ylabel("kernel-target alignment")
    ax.legend(loc="upper right", fontsize=8)
    save(fig, out)
    return {"curves": curves, "markers": markers, "out": out}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Overlay alignment landscape curves from tascope CSV output"
    )
    parser.add_argument("--inputs", nargs="+", required=True,
                        help="landscape.csv files, one curve each")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        info = render(args.inputs, args.out)
    except PlotInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {info['out']} ({len(info['curves'])} curve(s))")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

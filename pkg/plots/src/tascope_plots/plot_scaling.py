"""Mean alignment against dataset size on log-log axes, with the fitted line."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .io import PlotInputError, read_fit, read_scaling
from .style import new_axes, save


def render(data_csv: str, fit_json: str, out: str) -> dict:
    sizes, means = read_scaling(data_csv)
    fit = read_fit(fit_json)
    fig, ax = new_axes()
    ax.scatter(sizes, means, zorder=3, label="measured")
    grid = np.geomspace(sizes.min(), sizes.max(), 200)
    ax.plot(
        grid,
        fit["prefactor"] * grid ** fit["exponent"],
        linestyle="--",
        color="black",
        label=f"fit: exponent {fit['exponent']:.3f}",
    )
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("dataset size N")
    ax.set_ylabel("mean kernel-target alignment")
    ax.legend(fontsize=8)
    save(fig, out)
    return {"points": len(sizes), "exponent": fit["exponent"], "out": out}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Plot tascope scaling output with its power-law fit"
    )
    parser.add_argument("--data", required=True, help="scaling.csv path")
    parser.add_argument("--fit", required=True, help="fit.json path")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        info = render(args.data, args.fit, args.out)
    except PlotInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {info['out']} (exponent {info['exponent']:.3f})")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Incremental-experiment traces: one thin line per seed, bold seed means.

Toy-pool runs are drawn solid, ingested-table runs dashed; the styles
come from the manifest next to each trace file. If a run directory also
holds ``trace_mean.csv``, its seed-mean curve is drawn bold.
"""

from __future__ import annotations

import argparse
import glob
import sys
from pathlib import Path

from .io import PlotInputError, read_seed_mean, read_trace, sibling_manifest
from .style import TABLE_STYLE, TOY_STYLE, new_axes, save


def _expand(patterns: list[str]) -> list[str]:
    paths: list[str] = []
    for pattern in patterns:
        matched = sorted(glob.glob(pattern))
        paths.extend(matched if matched else [pattern])
    return paths


def _run_style(path: str) -> tuple[str, dict]:
    manifest = sibling_manifest(path)
    if manifest and manifest.get("config", {}).get("input"):
        return "table", TABLE_STYLE
    return "toy", TOY_STYLE


def render(inputs: list[str], out: str) -> dict:
    paths = _expand(inputs)
    if not paths:
        raise PlotInputError("at least one trace CSV is required")
    fig, ax = new_axes()
    kinds_seen: set[str] = set()
    mean_dirs: list[Path] = []
    for path in paths:
        sizes, means = read_trace(path)
        kind, line_style = _run_style(path)
        label = kind if kind not in kinds_seen else None
        kinds_seen.add(kind)
        ax.plot(sizes, means, linewidth=0.7, alpha=0.55, label=label, **line_style)
        parent = Path(path).parent
        if parent not in mean_dirs:
            mean_dirs.append(parent)
    mean_lines = 0
    for parent in mean_dirs:
        mean_csv = parent / "trace_mean.csv"
        if not mean_csv.exists():
            continue
        sizes, means = read_seed_mean(mean_csv)
        kind, line_style = _run_style(str(mean_csv))
        ax.plot(
            sizes, means, linewidth=2.2, label=f"{kind} seed mean", **line_style
        )
        mean_lines += 1
    ax.set_xlabel("training subset size")
    ax.set_ylabel("mean kernel-target alignment")
    ax.legend(fontsize=8)
    save(fig, out)
    return {"traces": len(paths), "mean_lines": mean_lines, "out": out}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Plot tascope incremental-experiment traces"
    )
    parser.add_argument("--inputs", nargs="+", required=True,
                        help="trace CSV paths or globs")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        info = render(args.inputs, args.out)
    except PlotInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(
        f"wrote {info['out']} ({info['traces']} trace(s), "
        f"{info['mean_lines']} mean line(s))"
    )
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

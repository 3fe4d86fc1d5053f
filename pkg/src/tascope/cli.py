"""Command-line entry point.

Four subcommands: ``landscape`` sweeps the alignment over a grid,
``scaling`` computes mean alignment per toy-dataset size and fits the
power law, ``incremental`` runs the seeded incremental-data experiment,
``ingest-check`` validates a sample table and summarizes its principal
component. Every run writes its data files plus a ``manifest.json``
holding the fully resolved configuration; re-running with the manifest's
configuration (see :func:`manifest_args`) reproduces the data files byte
for byte. Exit codes: 0 success, 2 configuration error, 3 data error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import GammaGrid, ToyDatasetSpec, build_toy_dataset, validate_dataset
from .errors import (
    ConfigurationError,
    DataError,
    DomainError,
    InvalidSpecError,
    TaScopeError,
)
from .experiments import (
    RNG_ALGORITHM,
    IncrementalConfig,
    incremental_experiment,
    scaling_experiment,
    seed_mean_curve,
)
from .ingest import balanced_subsample, fit_pca, load_samples, project_and_rescale
from .landscape import (
    DEFAULT_GRID_SPACING,
    analytic_gaussian_peak,
    find_global_peak,
    fit_power_law,
    odd_sample_count,
    one_period_range,
    sweep,
)

LANDSCAPE_CSV = "landscape.csv"
SCALING_CSV = "scaling.csv"
FIT_JSON = "fit.json"
TRACE_MEAN_CSV = "trace_mean.csv"
INGEST_SUMMARY_JSON = "ingest_summary.json"
MANIFEST_JSON = "manifest.json"


def trace_csv_name(seed: int) -> str:
    return f"trace_seed{seed}.csv"


# -------------------- deterministic file output --------------------


def format_float(value: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(value))


def _format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        raise ConfigurationError("booleans do not belong in CSV output")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def write_text_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(v) for v in row))
    write_text_atomic(path, "\n".join(lines) + "\n")


def write_json(path: Path, payload: dict) -> None:
    write_text_atomic(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_csv(path: Path) -> tuple[list[str], list[list[str]]]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise DataError(f"{path}: empty CSV")
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def _sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_manifest(
    out_dir: Path,
    subcommand: str,
    config: dict,
    outputs: list[str],
    rng: dict | None = None,
) -> None:
    manifest = {
        "artifact": {"name": "tascope", "version": __version__},
        "subcommand": subcommand,
        "config": config,
        "rng": rng,
        "outputs": outputs,
    }
    write_json(out_dir / MANIFEST_JSON, manifest)


def read_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def manifest_args(manifest: dict) -> list[str]:
    """Rebuild the argv that reproduces a manifest's run (minus --out-dir)."""
    sub = manifest["subcommand"]
    cfg = manifest["config"]
    args = [sub]

    def opt(flag: str, value) -> None:
        if value is None:
            return
        if isinstance(value, bool):
            if value:
                args.append(flag)
            return
        if isinstance(value, float):
            args.extend([flag, format_float(value)])
        else:
            args.extend([flag, str(value)])

    if sub == "landscape":
        opt("--n", cfg["n"])
        opt("--input", cfg["input"])
        if cfg["input"] is not None:
            opt("--delimiter", "tab" if cfg["delimiter"] == "\t" else cfg["delimiter"])
            opt("--has-header", cfg["has_header"])
            opt("--label-column", cfg["label_column"])
        opt("--gamma-start", cfg["gamma_start"])
        opt("--gamma-end", cfg["gamma_end"])
        opt("--samples", cfg["samples"])
        opt("--method", cfg["method"])
    elif sub == "scaling":
        opt("--sizes", ",".join(str(s) for s in cfg["sizes"]))
        opt("--spacing", cfg["spacing"])
        opt("--method", cfg["method"])
    elif sub == "incremental":
        opt("--toy-n", cfg["toy_n"])
        opt("--input", cfg["input"])
        if cfg["input"] is not None:
            opt("--delimiter", "tab" if cfg["delimiter"] == "\t" else cfg["delimiter"])
            opt("--has-header", cfg["has_header"])
            opt("--label-column", cfg["label_column"])
            opt("--per-class", cfg["per_class"])
            opt("--pool-seed", cfg["pool_seed"])
        opt("--seeds", cfg["seeds"])
        opt("--seed-base", cfg["seed_base"])
        opt("--points-per-class", cfg["points_per_class"])
        opt("--gamma-start", cfg["gamma_start"])
        opt("--gamma-end", cfg["gamma_end"])
        opt("--spacing", cfg["spacing"])
        opt("--method", cfg["method"])
    elif sub == "ingest-check":
        opt("--input", cfg["input"])
        opt("--delimiter", "tab" if cfg["delimiter"] == "\t" else cfg["delimiter"])
        opt("--has-header", cfg["has_header"])
        opt("--label-column", cfg["label_column"])
    else:
        raise ConfigurationError(f"unknown subcommand in manifest: {sub!r}")
    return args


# -------------------- argument parsing --------------------


def _add_table_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--delimiter", default=",", choices=[",", "tab"],
                        help="field delimiter of the input table")
    parser.add_argument("--has-header", action="store_true",
                        help="skip the first line of the input table")
    parser.add_argument("--label-column", type=int, default=-1,
                        help="index of the label column (default: last)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tascope",
        description="Kernel-target alignment landscapes for single-qubit "
        "fidelity kernels",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("landscape", help="sweep the alignment over a grid")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int, help="toy dataset size (even)")
    src.add_argument("--input", help="delimited sample table to ingest")
    _add_table_flags(p)
    p.add_argument("--gamma-start", type=float, default=None)
    p.add_argument("--gamma-end", type=float, default=None)
    p.add_argument("--samples", type=int, default=None,
                   help="number of grid samples (default: from --spacing)")
    p.add_argument("--spacing", type=float, default=DEFAULT_GRID_SPACING,
                   help="grid step in radians when --samples is not given")
    p.add_argument("--method", default="closed_form",
                   choices=["closed_form", "statevector"])
    p.add_argument("--out-dir", default=".")

    p = sub.add_parser("scaling", help="mean alignment per toy size + fit")
    p.add_argument("--sizes", required=True,
                   help="comma-separated even dataset sizes, e.g. 4,8,16")
    p.add_argument("--spacing", type=float, default=DEFAULT_GRID_SPACING)
    p.add_argument("--method", default="closed_form",
                   choices=["closed_form", "statevector"])
    p.add_argument("--out-dir", default=".")

    p = sub.add_parser("incremental", help="seeded incremental-data experiment")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--toy-n", type=int, help="toy pool size (even)")
    src.add_argument("--input", help="delimited sample table to ingest")
    _add_table_flags(p)
    p.add_argument("--per-class", type=int, default=None,
                   help="subsample the ingested pool to this many per class")
    p.add_argument("--pool-seed", type=int, default=None,
                   help="seed for the pool subsample (requires --per-class)")
    p.add_argument("--seeds", type=int, default=10, help="number of seeds")
    p.add_argument("--seed-base", type=int, default=0,
                   help="first seed; seeds are seed-base..seed-base+seeds-1")
    p.add_argument("--points-per-class", type=int, default=1,
                   help="points added per class per iteration")
    p.add_argument("--gamma-start", type=float, default=None)
    p.add_argument("--gamma-end", type=float, default=None)
    p.add_argument("--spacing", type=float, default=DEFAULT_GRID_SPACING)
    p.add_argument("--method", default="closed_form",
                   choices=["closed_form", "statevector"])
    p.add_argument("--out-dir", default=".")

    p = sub.add_parser("ingest-check",
                       help="validate a sample table and report its PCA")
    p.add_argument("--input", required=True)
    _add_table_flags(p)
    p.add_argument("--out-dir", default=".")

    return parser


def _delimiter_char(flag_value: str) -> str:
    return "\t" if flag_value == "tab" else flag_value


def _load_projected(args) -> tuple:
    """Ingest a table and reduce it to a 1-d dataset; returns (dataset, label)."""
    delimiter = _delimiter_char(args.delimiter)
    table = load_samples(
        args.input,
        delimiter=delimiter,
        has_header=args.has_header,
        label_column=args.label_column,
    )
    model = fit_pca(table)
    dataset = project_and_rescale(table, model)
    return dataset, f"table:sha256:{_sha256(Path(args.input))}"


# -------------------- subcommands --------------------


def cmd_landscape(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.n is not None:
        spec = ToyDatasetSpec(args.n)
        dataset = build_toy_dataset(spec)
    else:
        dataset, _ = _load_projected(args)
    start = 0.0 if args.gamma_start is None else args.gamma_start
    default_end = one_period_range(dataset.n_points)[1]
    end = default_end if args.gamma_end is None else args.gamma_end
    samples = (
        odd_sample_count(start, end, args.spacing)
        if args.samples is None
        else args.samples
    )
    grid = GammaGrid(start, end, samples)
    landscape = sweep(dataset, grid, args.method)
    write_csv(
        out_dir / LANDSCAPE_CSV,
        ["gamma", "ta"],
        zip(grid.values(), landscape.values),
    )
    config = {
        "n": args.n,
        "input": args.input,
        "delimiter": _delimiter_char(args.delimiter) if args.input else None,
        "has_header": bool(args.has_header) if args.input else None,
        "label_column": args.label_column if args.input else None,
        "gamma_start": start,
        "gamma_end": end,
        "samples": samples,
        "method": args.method,
    }
    _write_manifest(out_dir, "landscape", config, [LANDSCAPE_CSV])
    peak_gamma, peak_ta = find_global_peak(landscape)
    print(f"peak_gamma={format_float(peak_gamma)} peak_ta={format_float(peak_ta)}")
    if args.n is not None:
        peak = analytic_gaussian_peak(args.n)
        print(
            f"analytic_mu={format_float(peak.mu)} "
            f"analytic_sigma={format_float(peak.sigma)} "
            f"analytic_amplitude={format_float(peak.amplitude)}"
        )
    return 0


def cmd_scaling(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise ConfigurationError(f"--sizes must be integers, got {args.sizes!r}")
    if not sizes:
        raise ConfigurationError("--sizes must name at least one size")
    results = scaling_experiment(sizes, args.spacing, args.method)
    write_csv(out_dir / SCALING_CSV, ["n", "mean_ta"], results)
    outputs = [SCALING_CSV]
    if len(results) >= 3:
        fit = fit_power_law([n for n, _ in results], [m for _, m in results])
        write_json(
            out_dir / FIT_JSON,
            {
                "exponent": fit.exponent,
                "prefactor": fit.prefactor,
                "r_squared": fit.r_squared,
                "n_points": len(results),
            },
        )
        outputs.append(FIT_JSON)
        print(
            f"exponent={format_float(fit.exponent)} "
            f"prefactor={format_float(fit.prefactor)} "
            f"r_squared={format_float(fit.r_squared)}"
        )
    else:
        print("fit skipped: need at least 3 sizes", file=sys.stderr)
    config = {"sizes": sizes, "spacing": args.spacing, "method": args.method}
    _write_manifest(out_dir, "scaling", config, outputs)
    return 0


def cmd_incremental(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.pool_seed is not None and args.per_class is None:
        raise ConfigurationError("--pool-seed requires --per-class")
    if args.toy_n is not None:
        if args.per_class is not None:
            raise ConfigurationError(
                "--per-class applies to --input pools, not toy datasets"
            )
        pool = build_toy_dataset(ToyDatasetSpec(args.toy_n))
        label = f"toy:n={args.toy_n}"
    else:
        pool, label = _load_projected(args)
        if args.per_class is not None:
            pool_seed = 0 if args.pool_seed is None else args.pool_seed
            pool = balanced_subsample(pool, args.per_class, pool_seed)
            label += f";subsample:per_class={args.per_class},seed={pool_seed}"
    if args.seeds < 1:
        raise ConfigurationError("--seeds must be >= 1")
    seeds = tuple(range(args.seed_base, args.seed_base + args.seeds))
    gamma_range = None
    if args.gamma_start is not None or args.gamma_end is not None:
        if args.gamma_start is None or args.gamma_end is None:
            raise ConfigurationError(
                "--gamma-start and --gamma-end must be given together"
            )
        gamma_range = (args.gamma_start, args.gamma_end)
    cfg = IncrementalConfig(
        pool=pool,
        seeds=seeds,
        points_per_class_per_iteration=args.points_per_class,
        gamma_range=gamma_range,
        grid_spacing=args.spacing,
        method=args.method,
        dataset_label=label,
    )
    traces = incremental_experiment(cfg)
    outputs = []
    for trace in traces:
        name = trace_csv_name(trace.seed)
        write_csv(
            out_dir / name,
            ["iteration", "subset_size", "mean_ta"],
            ((r.iteration, r.subset_size, r.mean_ta) for r in trace.records),
        )
        outputs.append(name)
    write_csv(
        out_dir / TRACE_MEAN_CSV, ["subset_size", "mean_ta"], seed_mean_curve(traces)
    )
    outputs.append(TRACE_MEAN_CSV)
    start, end = cfg.resolved_range()
    config = {
        "toy_n": args.toy_n,
        "input": args.input,
        "delimiter": _delimiter_char(args.delimiter) if args.input else None,
        "has_header": bool(args.has_header) if args.input else None,
        "label_column": args.label_column if args.input else None,
        "per_class": args.per_class if args.input else None,
        "pool_seed": args.pool_seed if args.input else None,
        "seeds": args.seeds,
        "seed_base": args.seed_base,
        "points_per_class": args.points_per_class,
        "gamma_start": args.gamma_start,
        "gamma_end": args.gamma_end,
        "resolved_gamma_range": [start, end],
        "spacing": args.spacing,
        "method": args.method,
        "dataset": label,
    }
    rng = {"algorithm": RNG_ALGORITHM, "seeds": list(seeds)}
    _write_manifest(out_dir, "incremental", config, outputs, rng=rng)
    print(f"traces={len(traces)} subset_sizes={traces[0].subset_sizes()}")
    return 0


def cmd_ingest_check(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    delimiter = _delimiter_char(args.delimiter)
    table = load_samples(
        args.input,
        delimiter=delimiter,
        has_header=args.has_header,
        label_column=args.label_column,
    )
    model = fit_pca(table)
    dataset = project_and_rescale(table, model)
    report = validate_dataset(dataset)
    n_pos = int(np.sum(table.labels == 1))
    n_neg = int(np.sum(table.labels == -1))
    summary = {
        "input_sha256": _sha256(Path(args.input)),
        "n_rows": table.n_rows,
        "n_bands": table.n_bands,
        "class_counts": {"+1": n_pos, "-1": n_neg},
        "is_balanced": report.is_balanced,
        "pca": {
            "mean": [float(v) for v in model.mean],
            "component": [float(v) for v in model.component],
            "eigenvalue": model.eigenvalue,
        },
        "projected_valid": report.is_valid,
        "issues": report.issues(),
    }
    write_json(out_dir / INGEST_SUMMARY_JSON, summary)
    config = {
        "input": args.input,
        "delimiter": delimiter,
        "has_header": bool(args.has_header),
        "label_column": args.label_column,
    }
    _write_manifest(out_dir, "ingest-check", config, [INGEST_SUMMARY_JSON])
    print(f"rows={table.n_rows} bands={table.n_bands} "
          f"classes=+1:{n_pos}/-1:{n_neg} balanced={report.is_balanced}")
    print(f"pca_eigenvalue={format_float(model.eigenvalue)}")
    print("pca_component=" + ",".join(format_float(v) for v in model.component))
    print(f"projected_valid={report.is_valid}")
    return 0


_COMMANDS = {
    "landscape": cmd_landscape,
    "scaling": cmd_scaling,
    "incremental": cmd_incremental,
    "ingest-check": cmd_ingest_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](args)
    except (ConfigurationError, InvalidSpecError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TaScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

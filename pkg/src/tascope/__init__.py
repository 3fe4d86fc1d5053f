"""Kernel-target alignment landscapes for single-qubit fidelity kernels."""

from .core import (
    FeatureMapParams,
    GammaGrid,
    KernelMatrix,
    LabeledDataset,
    ToyDatasetSpec,
    ValidationReport,
    build_toy_dataset,
    validate_dataset,
)
from .alignment import (
    MAX_ALIGNMENT,
    ideal_kernel,
    target_alignment_general,
    target_alignment_toy,
)
from .experiments import (
    ExperimentTrace,
    IncrementalConfig,
    IterationRecord,
    incremental_experiment,
    scaling_experiment,
    seed_mean_curve,
    subset_schedule,
)
from .ingest import (
    PcaModel,
    RawSampleTable,
    balanced_subsample,
    fit_pca,
    load_samples,
    project_and_rescale,
    save_samples,
    synthetic_blob_table,
)
from .landscape import (
    DEFAULT_GRID_SPACING,
    AlignmentLandscape,
    GaussianPeak,
    PowerLawFit,
    analytic_gaussian_peak,
    curvature_sigma,
    find_global_peak,
    fit_power_law,
    mean_alignment,
    odd_sample_count,
    one_period_range,
    relative_peak_width,
    simpson_mean,
    sweep,
)
from .qkernel import (
    Statevector2,
    encode_point,
    kernel_entry_closed_form,
    kernel_entry_statevector,
    kernel_matrix,
    statevector_fidelity,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentLandscape",
    "DEFAULT_GRID_SPACING",
    "ExperimentTrace",
    "FeatureMapParams",
    "GammaGrid",
    "GaussianPeak",
    "IncrementalConfig",
    "IterationRecord",
    "KernelMatrix",
    "LabeledDataset",
    "MAX_ALIGNMENT",
    "PcaModel",
    "PowerLawFit",
    "RawSampleTable",
    "Statevector2",
    "ToyDatasetSpec",
    "ValidationReport",
    "analytic_gaussian_peak",
    "balanced_subsample",
    "build_toy_dataset",
    "curvature_sigma",
    "encode_point",
    "find_global_peak",
    "fit_pca",
    "fit_power_law",
    "ideal_kernel",
    "incremental_experiment",
    "kernel_entry_closed_form",
    "kernel_entry_statevector",
    "kernel_matrix",
    "load_samples",
    "mean_alignment",
    "odd_sample_count",
    "one_period_range",
    "project_and_rescale",
    "relative_peak_width",
    "save_samples",
    "scaling_experiment",
    "seed_mean_curve",
    "simpson_mean",
    "statevector_fidelity",
    "subset_schedule",
    "sweep",
    "synthetic_blob_table",
    "target_alignment_general",
    "target_alignment_toy",
    "validate_dataset",
]

"""Orientability thresholds and experiments for random hypergraphs."""

from ._core import (
    DegenerateFit,
    DomainError,
    Hypergraph,
    NoSupercriticalSolution,
    NumericalError,
    UnsupportedCase,
    core_appearance,
    fit_sigmoid,
    load_of_beta,
    matching_orient,
    mixed_threshold,
    optimal_distribution,
    orientation_threshold,
    peel,
    poisson_tail,
    predict_core,
    run_sweep,
    sample_mixed,
    sample_regular,
    selfless_orient,
    sigmoid,
    solve_xorsat,
)

__all__ = [
    "DegenerateFit",
    "DomainError",
    "Hypergraph",
    "NoSupercriticalSolution",
    "NumericalError",
    "UnsupportedCase",
    "core_appearance",
    "fit_sigmoid",
    "load_of_beta",
    "matching_orient",
    "mixed_threshold",
    "optimal_distribution",
    "orientation_threshold",
    "peel",
    "poisson_tail",
    "predict_core",
    "run_sweep",
    "sample_mixed",
    "sample_regular",
    "selfless_orient",
    "sigmoid",
    "solve_xorsat",
]

"""Symmetric divergence families, f-divergence bounds, and verification."""

from .errors import DomainError, InputError, SymdivError
from .simplex import (Distribution, NormalizationMode, NormalizationPolicy,
                      RatioBounds, load_weights, mixture, ratio_bounds,
                      sample_simplex, validate_distribution)
from .means import MeanQuery, log_power_mean
from .divergences import (MeasureKind, classic_divergence, vajda_abs_chi,
                          vajda_upper_bounds, vajda_variation_coefficients)
from .families import (FamilyParam, GeneratorFamilyKind,
                       ag_js_divergence_type_s, generator_eval,
                       j_divergence_type_s, relative_information_type_s)
from .csiszar import (BoundReport, ComparisonBounds, Curvature, Generator,
                      bound_report, compare_generators, csiszar_divergence,
                      curvature_ratio, endpoint_bounds, family_generator,
                      linearized_functionals, smoothness_bounds)
from .verify import (REGISTRY, ChainReport, InequalityCase, Severity,
                     SweepConfig, SweepSummary, check_bounds_suite,
                     check_chain, check_parametric, run_sweep)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "ChainReport", "ComparisonBounds", "Curvature",
    "Distribution", "DomainError", "FamilyParam", "Generator",
    "GeneratorFamilyKind", "InequalityCase", "InputError", "MeanQuery",
    "MeasureKind", "NormalizationMode", "NormalizationPolicy", "REGISTRY",
    "RatioBounds", "Severity", "SweepConfig", "SweepSummary", "SymdivError",
    "ag_js_divergence_type_s", "bound_report", "check_bounds_suite",
    "check_chain", "check_parametric", "classic_divergence",
    "compare_generators", "csiszar_divergence", "curvature_ratio",
    "endpoint_bounds", "family_generator", "generator_eval",
    "j_divergence_type_s", "linearized_functionals", "load_weights",
    "log_power_mean", "mixture", "ratio_bounds", "relative_information_type_s",
    "run_sweep", "sample_simplex", "smoothness_bounds", "validate_distribution",
    "vajda_abs_chi", "vajda_upper_bounds", "vajda_variation_coefficients",
]

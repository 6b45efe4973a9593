"""Closed-form evaluation of the classic divergence measures.

All logarithms are natural, including the Kullback-Leibler form: the
identity J = 4(JS + AG) only holds with a single consistent base.
HELLINGER here is the (1 - Bhattacharyya) normalization, so the affinity
measures BHATTACHARYYA and HARMONIC are <= 1 with equality iff P = Q,
while every other kind is >= 0 with equality iff P = Q. CHI2 and KL are
the only directional kinds; the first argument plays the role of P.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import DomainError, InputError
from .simplex import Distribution, RatioBounds, _require_same_dim


class MeasureKind(Enum):
    HELLINGER = "HELLINGER"
    BHATTACHARYYA = "BHATTACHARYYA"
    TRIANGULAR = "TRIANGULAR"
    HARMONIC = "HARMONIC"
    SYM_CHI2 = "SYM_CHI2"
    CHI2 = "CHI2"
    KL = "KL"
    J = "J"
    JS = "JS"
    AG = "AG"
    D_NEW = "D_NEW"
    TOTAL_VARIATION = "TOTAL_VARIATION"


DIRECTIONAL_KINDS = frozenset({MeasureKind.CHI2, MeasureKind.KL})
# affinities: <= 1 with equality iff P = Q, instead of >= 0
AFFINITY_KINDS = frozenset({MeasureKind.BHATTACHARYYA, MeasureKind.HARMONIC})


def is_symmetric(kind: MeasureKind) -> bool:
    return kind not in DIRECTIONAL_KINDS


def classic_divergence(kind: MeasureKind, p: Distribution, q: Distribution) -> float:
    """Evaluate one classic measure by direct summation of its formula."""
    _require_same_dim(p, q)
    a, b = p.weights, q.weights
    if kind is MeasureKind.HELLINGER:
        return float(((np.sqrt(a) - np.sqrt(b)) ** 2).sum() / 2.0)
    if kind is MeasureKind.BHATTACHARYYA:
        return float(np.sqrt(a * b).sum())
    if kind is MeasureKind.TRIANGULAR:
        return float(((a - b) ** 2 / (a + b)).sum())
    if kind is MeasureKind.HARMONIC:
        return float((2.0 * a * b / (a + b)).sum())
    if kind is MeasureKind.SYM_CHI2:
        return float(((a - b) ** 2 * (a + b) / (a * b)).sum())
    if kind is MeasureKind.CHI2:
        return float(((a - b) ** 2 / b).sum())
    if kind is MeasureKind.KL:
        return float((a * np.log(a / b)).sum())
    if kind is MeasureKind.J:
        return float(((a - b) * np.log(a / b)).sum())
    if kind is MeasureKind.JS:
        m = (a + b) / 2.0
        return float((a * np.log(a / m) + b * np.log(b / m)).sum() / 2.0)
    if kind is MeasureKind.AG:
        m = (a + b) / 2.0
        return float((m * np.log(m / np.sqrt(a * b))).sum())
    if kind is MeasureKind.D_NEW:
        # evaluated exactly as defined; the formula is numerically benign
        affinity = (((np.sqrt(a) + np.sqrt(b)) / 2.0) * np.sqrt((a + b) / 2.0)).sum()
        return float(1.0 - affinity)
    if kind is MeasureKind.TOTAL_VARIATION:
        return float(np.abs(a - b).sum())
    raise InputError("PARAMETER_OUT_OF_RANGE", f"unknown measure kind {kind!r}")


def vajda_abs_chi(m: float, p: Distribution, q: Distribution) -> float:
    """Absolute chi divergence of order m >= 1: sum |p - q|^m / q^(m-1).

    Order 1 is total variation, order 2 is Pearson chi-square, order 3 is
    the absolute cubic chi used by the third-derivative bounds.
    """
    if not (m >= 1.0 and np.isfinite(m)):
        raise InputError("PARAMETER_OUT_OF_RANGE", f"order must satisfy m >= 1, got {m}")
    _require_same_dim(p, q)
    a, b = p.weights, q.weights
    return float((np.abs(a - b) ** m / b ** (m - 1.0)).sum())


def vajda_upper_bounds(m: float, rb: RatioBounds) -> tuple[float, float]:
    """Two nested upper bounds on the order-m absolute chi divergence.

    For ratios confined to [r, R]:

        bound1 = ((1-r)(R-1)/(R-r)) * ((1-r)^(m-1) + (R-1)^(m-1))
        bound2 = ((R-r)/2)^m

    with bound1 <= bound2, and bound1 attained exactly by two-point pairs.
    """
    if not (m >= 1.0 and np.isfinite(m)):
        raise InputError("PARAMETER_OUT_OF_RANGE", f"order must satisfy m >= 1, got {m}")
    if rb.degenerate:
        raise DomainError("DEGENERATE_BOUNDS", "ratio bounds are degenerate (P = Q)")
    r, R = rb.r, rb.R
    bound1 = ((1.0 - r) * (R - 1.0) / (R - r)) * ((1.0 - r) ** (m - 1.0) + (R - 1.0) ** (m - 1.0))
    bound2 = ((R - r) / 2.0) ** m
    return bound1, bound2


def vajda_variation_coefficients(m: float, rb: RatioBounds) -> tuple[float, float]:
    """Coefficients c_lo, c_hi with the claim c_lo*V <= |chi|^m <= c_hi*V.

    The upper coefficient (R^m - 1)/(R - 1) is sound. The lower
    coefficient (1 - r^m)/(1 - r) overestimates in general (desk
    counterexample at m = 2 on two-point pairs), so callers must treat
    the lower claim as diagnostic only.
    """
    if not (m >= 1.0 and np.isfinite(m)):
        raise InputError("PARAMETER_OUT_OF_RANGE", f"order must satisfy m >= 1, got {m}")
    if rb.degenerate:
        raise DomainError("DEGENERATE_BOUNDS", "ratio bounds are degenerate (P = Q)")
    r, R = rb.r, rb.R
    return (1.0 - r ** m) / (1.0 - r), (R ** m - 1.0) / (R - 1.0)

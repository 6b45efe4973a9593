"""One-parameter divergence families and their convex generators.

Three families share the order parameter ``s``:

* ``relative_information_type_s`` -- the power-family deformation of
  Kullback-Leibler divergence (KL(Q||P) at s = 0, KL(P||Q) at s = 1).
* ``j_divergence_type_s`` -- its symmetrization V_s, equal to J at
  s in {0, 1}, 8*Hellinger at s = 1/2, half the symmetric chi-square at
  s in {-1, 2}. Symmetric under s <-> 1-s.
* ``ag_js_divergence_type_s`` -- the mixture family W_s, equal to
  triangular/4 at s = -1, JS at s = 0, 4*d at s = 1/2, AG at s = 1 and
  symmetric chi-square/16 at s = 2.

``generator_eval`` exposes the two convex normalized generators backing
these families (tags PHI for the V family, PSI for the W family) together
with their first three derivatives, which the bound engine consumes.

Evaluation near the removable singularities at s in {0, 1} dispatches to
the closed-form limit branch whenever ``|s - s0| <= limit_tolerance``.
The prefactor 1/(s(s-1)) amplifies float rounding near the poles, and the
near-pole contract (family values within 1e-8 of the limit at s0 +- 1e-5)
pins the default width at 1e-5: inside the window the limit form is both
the contract and the numerically accurate answer.

Family sums subtract the unit mass per term (e.g. ``p^s q^(1-s) - sp -
(1-s)q``) rather than subtracting 1 from the total, which keeps every
summand single-signed and avoids inheriting the small float defect of the
weight sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, InputError
from .simplex import Distribution, _require_same_dim

LIMIT_TOLERANCE = 1e-5


@dataclass(frozen=True)
class FamilyParam:
    """Family order plus the half-width of the limit-dispatch windows."""

    s: float
    limit_tolerance: float = LIMIT_TOLERANCE

    def __post_init__(self):
        if not np.isfinite(self.s):
            raise InputError("PARAMETER_OUT_OF_RANGE", f"family order must be finite, got {self.s}")
        if not (0.0 <= self.limit_tolerance < 0.5):
            raise InputError("PARAMETER_OUT_OF_RANGE",
                             f"limit tolerance must lie in [0, 0.5), got {self.limit_tolerance}")

    # window edges carry a 1e-6 relative cushion: decimal constants like
    # 1 + 1e-5 are not dyadic, so |s - 1| can exceed the literal tolerance
    # by representation error alone
    @property
    def near_zero(self) -> bool:
        return abs(self.s) <= self.limit_tolerance * (1.0 + 1e-6)

    @property
    def near_one(self) -> bool:
        return abs(self.s - 1.0) <= self.limit_tolerance * (1.0 + 1e-6)


class GeneratorFamilyKind(Enum):
    PHI = "PHI"  # generator of the V family
    PSI = "PSI"  # generator of the W family


def as_param(s: float | FamilyParam) -> FamilyParam:
    return s if isinstance(s, FamilyParam) else FamilyParam(float(s))


# ---------------------------------------------------------------------------
# families over distribution pairs
# ---------------------------------------------------------------------------

def relative_information_type_s(s: float | FamilyParam, p: Distribution,
                                q: Distribution) -> float:
    sp = as_param(s)
    _require_same_dim(p, q)
    a, b = p.weights, q.weights
    if sp.near_zero:
        return float((b * np.log(b / a)).sum())
    if sp.near_one:
        return float((a * np.log(a / b)).sum())
    sv = sp.s
    terms = a ** sv * b ** (1.0 - sv) - sv * a - (1.0 - sv) * b
    return float(terms.sum() / (sv * (sv - 1.0)))


def j_divergence_type_s(s: float | FamilyParam, p: Distribution,
                        q: Distribution) -> float:
    sp = as_param(s)
    _require_same_dim(p, q)
    a, b = p.weights, q.weights
    if sp.near_zero or sp.near_one:
        return float(((a - b) * np.log(a / b)).sum())
    sv = sp.s
    terms = a ** sv * b ** (1.0 - sv) + a ** (1.0 - sv) * b ** sv - (a + b)
    return float(terms.sum() / (sv * (sv - 1.0)))


def ag_js_divergence_type_s(s: float | FamilyParam, p: Distribution,
                            q: Distribution) -> float:
    sp = as_param(s)
    _require_same_dim(p, q)
    a, b = p.weights, q.weights
    m = (a + b) / 2.0
    if sp.near_zero:
        return float((a * np.log(a / m) + b * np.log(b / m)).sum() / 2.0)
    if sp.near_one:
        return float((m * np.log(m / np.sqrt(a * b))).sum())
    sv = sp.s
    terms = ((a ** (1.0 - sv) + b ** (1.0 - sv)) / 2.0) * m ** sv - m
    return float(terms.sum() / (sv * (sv - 1.0)))


# ---------------------------------------------------------------------------
# generator functions phi_s (V family) and psi_s (W family)
# ---------------------------------------------------------------------------

def generator_eval(family: GeneratorFamilyKind, s: float | FamilyParam,
                   x, order: int = 0):
    """Evaluate a family generator or one of its first three derivatives.

    ``x`` may be a positive scalar or array; the result matches its shape.
    Orders 2 and 3 have pole-free expressions valid for every ``s``; the
    value and first derivative dispatch to their limit branches near
    s in {0, 1}.
    """
    sp = as_param(s)
    if order not in (0, 1, 2, 3):
        raise InputError("UNSUPPORTED_ORDER", f"derivative order must be 0..3, got {order}")
    xv = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xv)) or np.any(xv <= 0.0):
        raise DomainError("NONPOSITIVE_ARGUMENT", "generator argument must be finite and > 0")
    if family is GeneratorFamilyKind.PHI:
        out = _phi_eval(sp, xv, order)
    elif family is GeneratorFamilyKind.PSI:
        out = _psi_eval(sp, xv, order)
    else:
        raise InputError("PARAMETER_OUT_OF_RANGE", f"unknown generator family {family!r}")
    return out if np.ndim(x) else float(out)


def _phi_eval(sp: FamilyParam, x: np.ndarray, order: int):
    sv = sp.s
    if order == 0:
        if sp.near_zero or sp.near_one:
            return (x - 1.0) * np.log(x)
        return (x ** sv + x ** (1.0 - sv) - (1.0 + x)) / (sv * (sv - 1.0))
    if order == 1:
        if sp.near_zero or sp.near_one:
            return 1.0 - 1.0 / x + np.log(x)
        return (sv * x ** (sv - 1.0) + (1.0 - sv) * x ** (-sv) - 1.0) / (sv * (sv - 1.0))
    if order == 2:
        return x ** (sv - 2.0) + x ** (-sv - 1.0)
    return -((2.0 - sv) * x ** (sv - 3.0) + (sv + 1.0) * x ** (-sv - 2.0))


def _psi_eval(sp: FamilyParam, x: np.ndarray, order: int):
    sv = sp.s
    half = (x + 1.0) / 2.0
    if order == 0:
        if sp.near_zero:
            return (x / 2.0) * np.log(x) - half * np.log(half)
        if sp.near_one:
            return half * np.log(half / np.sqrt(x))
        return (((x ** (1.0 - sv) + 1.0) / 2.0) * half ** sv - half) / (sv * (sv - 1.0))
    if order == 1:
        if sp.near_zero:
            return -0.5 * np.log(half / x)
        if sp.near_one:
            return (1.0 - 1.0 / x - np.log(x) + 2.0 * np.log(half)) / 4.0
        return (((1.0 - sv) / 2.0) * x ** (-sv) * half ** sv
                + (sv / 4.0) * (x ** (1.0 - sv) + 1.0) * half ** (sv - 1.0)
                - 0.5) / (sv * (sv - 1.0))
    if order == 2:
        return ((x ** (-sv - 1.0) + 1.0) / 8.0) * half ** (sv - 2.0)
    return -(half ** sv / (2.0 * (x + 1.0) ** 3)) * (
        3.0 * x ** (-sv - 1.0) + (sv + 1.0) * x ** (-sv - 2.0) + (2.0 - sv))

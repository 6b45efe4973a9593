"""Generic f-divergence evaluation and the bound engine built on it.

Given a convex normalized generator f (f(1) = 0), the divergence of P
against Q is ``sum q_i f(p_i/q_i)``. For a pair whose likelihood ratios
live in [r, R] with r < 1 < R, the engine assembles:

* the linearized functionals E = sum (p-q) f'(p/q) and its midpoint
  variant E* = sum (p-q) f'((p+q)/(2q));
* the endpoint bounds A = (R-r)(f'(R)-f'(r))/4 and the chord value
  B = ((R-1)f(r) + (1-r)f(R))/(R-r), with 0 <= C_f <= B <= A and
  C_f <= E <= A;
* the curvature drop delta = |f''(r) - f''(R)| (a valid spread of f''
  over [r, R] only when f'' is monotonic), the sup of |f'''| over [r, R],
  and the total variation of f' (= f'(R) - f'(r) for convex f);
* the Ostrowski-style deviation bounds

      |C_f - E/2|  <= min( delta*chi2/8, f3_sup*|chi|^3/12, variation*V )
      |C_f - E*|   <= min( delta*chi2/8, f3_sup*|chi|^3/24, variation*V/2 )

  where each min runs over the terms whose derivative data is available.

Generators are immutable evaluation bundles; all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .divergences import MeasureKind, classic_divergence, vajda_abs_chi
from .errors import DomainError, InputError
from .families import (FamilyParam, GeneratorFamilyKind, _phi_eval, _psi_eval,
                       as_param, generator_eval)
from .simplex import Distribution, RatioBounds, _require_same_dim, ratio_bounds

_SPOT_GRID = np.array([0.25, 0.5, 1.0, 2.0, 4.0])
_SUP_GRID_POINTS = 1024
_GOLDEN_TOL = 1e-10


class Curvature(Enum):
    DECREASING = "DECREASING"
    INCREASING = "INCREASING"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Generator:
    """A convex normalized generator with analytic derivatives.

    ``evaluate(order, x)`` must accept order 0..max_order and positive
    array arguments. ``curvature_monotonicity`` records whether f'' is
    monotonic on (0, inf); when it is UNKNOWN the curvature-drop bound is
    unavailable. ``third_sup_closed_form(r, R)`` may supply the exact sup
    of |f'''| over [r, R] (for the built-in families it is attained at r
    while the order parameter stays in ``smoothness_range``).
    """

    name: str
    evaluate: Callable[[int, np.ndarray], np.ndarray]
    max_order: int = 3
    curvature_monotonicity: Curvature = Curvature.UNKNOWN
    smoothness_range: Optional[tuple[float, float]] = None
    third_sup_closed_form: Optional[Callable[[float, float], float]] = None

    def __post_init__(self):
        if self.max_order < 2:
            raise DomainError("MISSING_DERIVATIVE",
                              "a generator must provide at least orders 0..2")
        at_one = float(self.evaluate(0, np.array([1.0]))[0])
        if abs(at_one) > 1e-12:
            raise DomainError("GENERATOR_DOMAIN",
                              f"generator {self.name!r} is not normalized: f(1) = {at_one!r}")
        curvature = np.asarray(self.evaluate(2, _SPOT_GRID), dtype=float)
        if not np.all(np.isfinite(curvature)) or np.any(curvature <= 0.0):
            raise DomainError("GENERATOR_DOMAIN",
                              f"generator {self.name!r} must have f'' > 0 (checked on a spot grid)")

    def eval(self, order: int, x):
        if not (0 <= order <= self.max_order):
            raise InputError("UNSUPPORTED_ORDER",
                             f"generator {self.name!r} supports orders 0..{self.max_order}, got {order}")
        xv = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(xv)) or np.any(xv <= 0.0):
            raise DomainError("NONPOSITIVE_ARGUMENT", "generator argument must be finite and > 0")
        out = np.asarray(self.evaluate(order, xv), dtype=float)
        if not np.all(np.isfinite(out)):
            raise DomainError("GENERATOR_DOMAIN",
                              f"generator {self.name!r} evaluation failed at order {order}")
        return out if np.ndim(x) else float(out)


def family_generator(kind: GeneratorFamilyKind, s: float | FamilyParam) -> Generator:
    """Bundle one of the built-in family generators at a fixed order s.

    f'' is monotonically decreasing exactly for s in [-1, 2] (both
    families), which is also the range where sup |f'''| over [r, R] is
    attained at the left endpoint.
    """
    sp = as_param(s)
    sv = sp.s
    in_range = -1.0 <= sv <= 2.0
    core = _phi_eval if kind is GeneratorFamilyKind.PHI else _psi_eval

    def evaluate(order: int, x: np.ndarray) -> np.ndarray:
        # Generator.eval has already validated order and domain
        return core(sp, np.asarray(x, dtype=float), order)

    closed_form = None
    if in_range:
        if kind is GeneratorFamilyKind.PHI:
            def closed_form(r: float, big_r: float) -> float:
                return (2.0 - sv) * r ** (sv - 3.0) + (sv + 1.0) * r ** (-sv - 2.0)
        else:
            def closed_form(r: float, big_r: float) -> float:
                return (((r + 1.0) / 2.0) ** sv / (2.0 * (r + 1.0) ** 3)) * (
                    3.0 * r ** (-sv - 1.0) + (sv + 1.0) * r ** (-sv - 2.0) + (2.0 - sv))

    return Generator(
        name=f"{kind.value}(s={sv:g})",
        evaluate=evaluate,
        max_order=3,
        curvature_monotonicity=Curvature.DECREASING if in_range else Curvature.UNKNOWN,
        smoothness_range=(-1.0, 2.0),
        third_sup_closed_form=closed_form,
    )


# ---------------------------------------------------------------------------
# divergence and linear functionals
# ---------------------------------------------------------------------------

def csiszar_divergence(gen: Generator, p: Distribution, q: Distribution) -> float:
    """sum q_i f(p_i / q_i); nonnegative for convex normalized f."""
    _require_same_dim(p, q)
    a, b = p.weights, q.weights
    return float((b * gen.eval(0, a / b)).sum())


def linearized_functionals(gen: Generator, p: Distribution,
                           q: Distribution) -> tuple[float, float]:
    """The pair (E, E*) of first-order functionals of the generator."""
    _require_same_dim(p, q)
    a, b = p.weights, q.weights
    e = float(((a - b) * gen.eval(1, a / b)).sum())
    e_star = float(((a - b) * gen.eval(1, (a + b) / (2.0 * b))).sum())
    return e, e_star


# ---------------------------------------------------------------------------
# endpoint and smoothness bounds over [r, R]
# ---------------------------------------------------------------------------

def endpoint_bounds(gen: Generator, rb: RatioBounds) -> tuple[float, float]:
    """(A, B): the quarter-spread slope bound and the chord evaluation."""
    if rb.degenerate:
        raise DomainError("DEGENERATE_BOUNDS", "ratio bounds are degenerate (P = Q)")
    r, big_r = rb.r, rb.R
    a_bound = 0.25 * (big_r - r) * (gen.eval(1, big_r) - gen.eval(1, r))
    b_bound = ((big_r - 1.0) * gen.eval(0, r) + (1.0 - r) * gen.eval(0, big_r)) / (big_r - r)
    return float(a_bound), float(b_bound)


def smoothness_bounds(gen: Generator, rb: RatioBounds
                      ) -> tuple[Optional[float], Optional[float], float]:
    """(delta, f3_sup, variation) for the deviation bounds.

    delta is |f''(r) - f''(R)|, reported only when f'' is known to be
    monotonic (otherwise the endpoint values do not bracket f''). f3_sup
    uses the closed form when available, else a geometric-grid sweep of
    |f'''| refined by golden section; it is None when the generator has
    no third order. variation is f'(R) - f'(r), always available.
    """
    if rb.degenerate:
        raise DomainError("DEGENERATE_BOUNDS", "ratio bounds are degenerate (P = Q)")
    if gen.max_order < 2:
        raise DomainError("MISSING_DERIVATIVE", "smoothness bounds need f''")
    r, big_r = rb.r, rb.R

    delta: Optional[float] = None
    if gen.curvature_monotonicity is not Curvature.UNKNOWN:
        delta = abs(float(gen.eval(2, r)) - float(gen.eval(2, big_r)))

    f3_sup: Optional[float] = None
    if gen.third_sup_closed_form is not None:
        f3_sup = float(gen.third_sup_closed_form(r, big_r))
    elif gen.max_order >= 3:
        # arguments stay inside [r, R]; use the raw evaluator in the loop
        f3_sup = _grid_max(
            lambda x: np.abs(np.asarray(gen.evaluate(3, x), dtype=float)), r, big_r)

    variation = float(gen.eval(1, big_r) - gen.eval(1, r))
    return delta, f3_sup, variation


# ---------------------------------------------------------------------------
# full report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """Every bound-engine quantity for one (generator, P, Q) triple.

    Bound fields are None when P = Q: the endpoint machinery requires
    r != R. ``half_E_bound`` bounds |value - linearized/2| and
    ``E_star_bound`` bounds |value - linearized_mid|.
    """

    generator: str
    value: float
    linearized: float
    linearized_mid: float
    endpoint_A: Optional[float]
    endpoint_B: Optional[float]
    delta: Optional[float]
    f3_sup: Optional[float]
    variation: Optional[float]
    chi2: float
    abs_chi3: float
    total_variation: float
    half_E_bound: Optional[float]
    E_star_bound: Optional[float]
    ratio_bounds: RatioBounds

    def to_json_dict(self) -> dict:
        out = {
            "generator": self.generator,
            "value": self.value,
            "linearized": self.linearized,
            "linearized_mid": self.linearized_mid,
            "endpoint_A": self.endpoint_A,
            "endpoint_B": self.endpoint_B,
            "delta": self.delta,
            "f3_sup": self.f3_sup,
            "variation": self.variation,
            "chi2": self.chi2,
            "abs_chi3": self.abs_chi3,
            "total_variation": self.total_variation,
            "half_E_bound": self.half_E_bound,
            "E_star_bound": self.E_star_bound,
            "ratio_bounds": {"r": self.ratio_bounds.r, "R": self.ratio_bounds.R,
                             "degenerate": self.ratio_bounds.degenerate},
        }
        return {k: v for k, v in out.items() if v is not None}


def bound_report(gen: Generator, p: Distribution, q: Distribution) -> BoundReport:
    """Assemble the divergence value and every applicable bound for a pair."""
    _require_same_dim(p, q)
    rb = ratio_bounds(p, q)
    value = csiszar_divergence(gen, p, q)
    e, e_star = linearized_functionals(gen, p, q)
    chi2 = classic_divergence(MeasureKind.CHI2, p, q)
    abs_chi3 = vajda_abs_chi(3.0, p, q)
    tv = classic_divergence(MeasureKind.TOTAL_VARIATION, p, q)
    if rb.degenerate:
        return BoundReport(gen.name, value, e, e_star, None, None, None, None,
                           None, chi2, abs_chi3, tv, None, None, rb)
    a_bound, b_bound = endpoint_bounds(gen, rb)
    delta, f3_sup, variation = smoothness_bounds(gen, rb)

    half_terms = [variation * tv]
    star_terms = [0.5 * variation * tv]
    if delta is not None:
        half_terms.append(delta * chi2 / 8.0)
        star_terms.append(delta * chi2 / 8.0)
    if f3_sup is not None:
        half_terms.append(f3_sup * abs_chi3 / 12.0)
        star_terms.append(f3_sup * abs_chi3 / 24.0)

    return BoundReport(gen.name, value, e, e_star, a_bound, b_bound, delta,
                       f3_sup, variation, chi2, abs_chi3, tv,
                       min(half_terms), min(star_terms), rb)


# ---------------------------------------------------------------------------
# generator comparison (curvature-ratio extremization)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonBounds:
    """Extrema of f1''/f2'' over [r, R], with the locations that attain them.

    They certify m_ratio * C_f2 <= C_f1 <= M_ratio * C_f2 for every pair
    whose likelihood ratios stay inside [r, R].
    """

    m_ratio: float
    M_ratio: float
    m_location: float
    M_location: float


def compare_generators(gen1: Generator, gen2: Generator, rb: RatioBounds,
                       grid_points: int = _SUP_GRID_POINTS) -> ComparisonBounds:
    """Extremize the curvature ratio by geometric grid plus golden section."""
    if rb.degenerate:
        raise DomainError("DEGENERATE_BOUNDS", "ratio bounds are degenerate (P = Q)")
    xs = np.geomspace(rb.r, rb.R, grid_points)
    denom = np.asarray(gen2.eval(2, xs), dtype=float)
    if np.any(denom <= 0.0):
        raise DomainError("NONCONVEX_REFERENCE",
                          f"reference generator {gen2.name!r} has f'' <= 0 on [r, R]")

    def ratio(x: np.ndarray) -> np.ndarray:
        # arguments stay inside the validated [r, R] bracket
        return (np.asarray(gen1.evaluate(2, x), dtype=float)
                / np.asarray(gen2.evaluate(2, x), dtype=float))

    values = np.asarray(gen1.eval(2, xs), dtype=float) / denom
    lo_x, lo_v = _refine(ratio, xs, values, int(np.argmin(values)), minimize=True)
    hi_x, hi_v = _refine(ratio, xs, values, int(np.argmax(values)), minimize=False)
    return ComparisonBounds(m_ratio=lo_v, M_ratio=hi_v, m_location=lo_x, M_location=hi_x)


def curvature_ratio(s: float | FamilyParam, t: float | FamilyParam, x) -> float:
    """psi_s'' / phi_t'' at x: the ratio extremized by the W-vs-V bounds."""
    num = generator_eval(GeneratorFamilyKind.PSI, s, x, 2)
    den = generator_eval(GeneratorFamilyKind.PHI, t, x, 2)
    return num / den


# internal extremization helpers --------------------------------------------

def _grid_max(fn, r: float, big_r: float, grid_points: int = _SUP_GRID_POINTS) -> float:
    xs = np.geomspace(r, big_r, grid_points)
    values = np.asarray(fn(xs), dtype=float)
    _, best = _refine(lambda x: np.asarray(fn(x), dtype=float), xs, values,
                      int(np.argmax(values)), minimize=False)
    return best


def _refine(fn, xs: np.ndarray, values: np.ndarray, idx: int, minimize: bool,
            tol: float = _GOLDEN_TOL) -> tuple[float, float]:
    """Golden-section polish inside the grid cells adjacent to the best point."""
    lo = xs[max(idx - 1, 0)]
    hi = xs[min(idx + 1, xs.size - 1)]
    sign = 1.0 if minimize else -1.0
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = sign * float(fn(np.array([c]))[0])
    fd = sign * float(fn(np.array([d]))[0])
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = sign * float(fn(np.array([c]))[0])
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = sign * float(fn(np.array([d]))[0])
    x_best = float((a + b) / 2.0)
    candidates = [(x_best, float(fn(np.array([x_best]))[0])), (float(xs[idx]), float(values[idx]))]
    if minimize:
        return min(candidates, key=lambda pair: pair[1])
    return max(candidates, key=lambda pair: pair[1])

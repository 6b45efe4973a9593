"""Registry and runner for the divergence inequality suite.

Every claim the library certifies is registered as an
:class:`InequalityCase` with a stable id, a severity, and a parameter
domain. ASSERT cases must hold on every sampled pair (their failures are
counted and carry a replayable witness); DIAGNOSTIC cases are evaluated
and reported but never fail a sweep. The single DIAGNOSTIC entry is the
lower variation bound of the order-m absolute chi divergence, whose
printed coefficient fails a desk check (see
:func:`symdiv.divergences.vajda_variation_coefficients`).

An inequality ``L <= R`` passes when ``L <= R + tol * max(1, |R|)``: the
relative part guards the large symmetric chi-square cases, the absolute
floor guards comparisons between near-zero values.

Sweeps are deterministic: the pair for (dim, index) is derived from
(seed, dim, index) alone, so sharding the work over any number of
workers would reproduce the same summary (assembly is an ordered merge).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence

import numpy as np

from .csiszar import bound_report, family_generator
from .divergences import (MeasureKind, classic_divergence, vajda_abs_chi,
                          vajda_upper_bounds, vajda_variation_coefficients)
from .errors import InputError
from .families import GeneratorFamilyKind, j_divergence_type_s, ag_js_divergence_type_s
from .simplex import Distribution, _require_same_dim, ratio_bounds, sample_simplex

DEFAULT_GRID = (-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0)
DEFAULT_TOL = 1e-10


class Severity(Enum):
    ASSERT = "ASSERT"
    DIAGNOSTIC = "DIAGNOSTIC"


@dataclass(frozen=True)
class InequalityCase:
    id: str
    description: str
    parameter_domain: str
    severity: Severity = Severity.ASSERT


def slack_violation(lhs: float, rhs: float, tol: float) -> float:
    """Signed violation of ``lhs <= rhs``; passes iff <= 0."""
    return lhs - rhs - tol * max(1.0, abs(rhs))


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _case(id_, description, domain, severity=Severity.ASSERT):
    return InequalityCase(id_, description, domain, severity)


CHAIN_CASES = (
    _case("EQ77", "hel <= j/8 <= sym_chi2/16", "none"),
    _case("EQ104", "tri/4 <= js <= 4d <= ag <= sym_chi2/16", "none"),
    _case("EQ130", "js <= j/8 <= ag", "none"),
    _case("EQ137", "js <= hel <= ag", "none"),
    _case("EQ138", "tri/4 <= js <= hel <= j/8 <= ag <= sym_chi2/16", "none"),
    _case("EQ139", "tri/4 <= js <= hel <= j/8 <= ag <= j/4", "none"),
    _case("EQ140", "tri/4 <= hel <= tri/2", "none"),
    _case("EQ141", "tri/4 <= js <= hel <= tri/2", "none"),
    _case("EQ172", "hel/4 <= d <= hel/2", "none"),
    _case("EQ182", "4d <= j/8", "none"),
    _case("EQ183", "tri/4 <= js <= hel <= 4d <= j/8 <= ag <= sym_chi2/16", "none"),
)

PARAMETRIC_CASES = (
    _case("EQ129_UPPER", "W_s <= j/8", "-2 <= s <= 0"),
    _case("EQ129_LOWER", "W_s >= j/8", "s >= 1"),
    _case("EQ136_UPPER", "W_s <= hel", "-2 <= s <= 0"),
    _case("EQ136_LOWER", "W_s >= hel", "s >= 1/2"),
    _case("EQ142_UPPER", "W_s <= sym_chi2/16", "-1 <= s <= 2"),
    _case("EQ142_LOWER", "W_s >= sym_chi2/16", "s >= 2"),
    _case("EQ143_UPPER", "V_t <= sym_chi2/2", "1/2 <= t <= 2"),
    _case("EQ143_LOWER", "V_t >= sym_chi2/2", "t >= 2 or t <= -1"),
    _case("EQ148", "tri <= V_t/2", "t >= 0 or t <= -1"),
    _case("EQ153", "js <= V_t/8", "all t"),
    _case("EQ159_UPPER", "ag <= V_t/8", "t >= 2 or t <= -1"),
    _case("EQ159_LOWER", "ag >= V_t/8", "0 <= t <= 1"),
    _case("EQ165_UPPER", "W_s <= V_s/8", "s >= 2 or s <= -1"),
    _case("EQ165_LOWER", "W_s >= V_s/8", "1/2 <= s <= 1"),
    _case("EQ170", "V_s >= 4 W_s", "all s"),
    _case("EQ171", "V_s/8 <= W_s <= V_s/4", "1/2 <= s <= 1"),
    _case("PROP42_MONO", "V_s nonincreasing for s <= 1/2, nondecreasing for s >= 1/2",
          "adjacent grid points on one side of 1/2"),
    _case("PROP44_MONO", "W_s nondecreasing", "adjacent grid points with s >= -1"),
)

BOUNDS_CASES = (
    _case("EQ32", "(R-1)(1-r) <= (R-r)^2/4", "none"),
    _case("EQ52", "abs_chi^m <= bound1 <= bound2", "m in {1,2,3}"),
    _case("EQ53_UPPER", "abs_chi^m <= ((R^m-1)/(R-1)) V", "m in {1,2,3}"),
    _case("EQ53_LOWER", "((1-r^m)/(1-r)) V <= abs_chi^m (printed form fails a desk check)",
          "m in {1,2,3}", Severity.DIAGNOSTIC),
    _case("EQ54", "chi2 <= (R-1)(1-r) <= (R-r)^2/4", "none"),
    _case("EQ55", "abs_chi3 <= order-3 ratio bound <= (R-r)^3/8", "none"),
    _case("EQ56", "V <= 2(R-1)(1-r)/(R-r) <= (R-r)/2", "none"),
    _case("EQ78", "V_s <= E <= A", "all s"),
    _case("EQ79", "V_s <= B <= A", "all s"),
    _case("EQ80", "|V_s - E/2| <= min(delta chi2/8, f3 chi3/12, var V)", "delta term needs -1 <= s <= 2"),
    _case("EQ81", "|V_s - E*| <= min(delta chi2/8, f3 chi3/24, var V/2)", "delta term needs -1 <= s <= 2"),
    _case("EQ105", "W_s <= E <= A", "all s"),
    _case("EQ106", "W_s <= B <= A", "all s"),
    _case("EQ107", "|W_s - E/2| <= min(delta chi2/8, f3 chi3/12, var V)", "delta term needs -1 <= s <= 2"),
    _case("EQ108", "|W_s - E*| <= min(delta chi2/8, f3 chi3/24, var V/2)", "delta term needs -1 <= s <= 2"),
)

REGISTRY: tuple[InequalityCase, ...] = CHAIN_CASES + PARAMETRIC_CASES + BOUNDS_CASES
_BY_ID = {case.id: case for case in REGISTRY}


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

@dataclass
class CaseResult:
    """Aggregated outcome of one registry case over any number of pairs."""

    case_id: str
    severity: Severity
    evaluations: int = 0
    violations: int = 0
    skipped: int = 0
    max_violation: Optional[float] = None
    witness: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, violation: float, witness: dict) -> None:
        self.evaluations += 1
        if violation > 0.0:
            self.violations += 1
        if self.max_violation is None or violation > self.max_violation:
            self.max_violation = violation
            self.witness = witness

    def skip(self, count: int = 1) -> None:
        self.skipped += count

    def merge(self, other: "CaseResult") -> None:
        self.evaluations += other.evaluations
        self.violations += other.violations
        self.skipped += other.skipped
        if other.max_violation is not None and (
                self.max_violation is None or other.max_violation > self.max_violation):
            self.max_violation = other.max_violation
            self.witness = other.witness

    def to_json_dict(self) -> dict:
        out = {
            "id": self.case_id,
            "severity": self.severity.value,
            "pass": self.passed,
            "evaluations": self.evaluations,
            "violations": self.violations,
            "skipped": self.skipped,
            "max_violation": self.max_violation,
        }
        if self.witness is not None and (self.violations > 0
                                         or self.severity is Severity.DIAGNOSTIC):
            out["witness"] = self.witness
        return out


@dataclass
class ChainReport:
    """check_chain outcome: the evaluated chain quantities plus per-case results."""

    values: dict[str, float]
    cases: list[CaseResult]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases if c.severity is Severity.ASSERT)

    @property
    def chain_values(self) -> tuple[float, ...]:
        v = self.values
        return (v["tri/4"], v["js"], v["hel"], v["4d"], v["j/8"], v["ag"],
                v["sym_chi2/16"])


@dataclass(frozen=True)
class SweepConfig:
    dims: tuple[int, ...] = (2, 3, 5, 10)
    samples_per_dim: int = 250
    seed: int = 7
    s_grid: tuple[float, ...] = DEFAULT_GRID
    t_grid: tuple[float, ...] = DEFAULT_GRID
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.dims or any(int(d) < 2 for d in self.dims):
            raise InputError("BAD_CONFIG", f"dims must all be >= 2, got {self.dims}")
        if self.samples_per_dim < 1:
            raise InputError("BAD_CONFIG",
                             f"samples_per_dim must be >= 1, got {self.samples_per_dim}")
        if len(self.s_grid) == 0 or len(self.t_grid) == 0:
            raise InputError("EMPTY_GRID", "s and t grids must be nonempty")
        if not (self.tol > 0):
            raise InputError("BAD_CONFIG", f"tol must be > 0, got {self.tol}")

    def to_json_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "samples_per_dim": self.samples_per_dim,
            "seed": self.seed,
            "s_grid": list(self.s_grid),
            "t_grid": list(self.t_grid),
            "tol": self.tol,
        }


@dataclass
class SweepSummary:
    config: SweepConfig
    cases: list[CaseResult]
    samples: int
    seed: int
    elapsed_ms: int

    @property
    def assert_failures(self) -> int:
        return sum(1 for c in self.cases
                   if c.severity is Severity.ASSERT and not c.passed)

    @property
    def ok(self) -> bool:
        return self.assert_failures == 0

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_json_dict(),
            "cases": [c.to_json_dict() for c in self.cases],
            "skipped_counts": {c.case_id: c.skipped for c in self.cases if c.skipped},
            "samples": self.samples,
            "seed": self.seed,
            "assert_failures": self.assert_failures,
            "elapsed_ms": self.elapsed_ms,
        }


# ---------------------------------------------------------------------------
# evaluation internals: each check yields (case_id, lhs, rhs, extra_witness)
# ---------------------------------------------------------------------------

def _witness(p: Distribution, q: Distribution, **extra) -> dict:
    out = {"p": [float(v) for v in p.weights], "q": [float(v) for v in q.weights],
           "s": None, "t": None}
    out.update(extra)
    return out


def _chain_quantities(p: Distribution, q: Distribution) -> dict[str, float]:
    tri = classic_divergence(MeasureKind.TRIANGULAR, p, q)
    hel = classic_divergence(MeasureKind.HELLINGER, p, q)
    j = classic_divergence(MeasureKind.J, p, q)
    d = classic_divergence(MeasureKind.D_NEW, p, q)
    return {
        "tri/4": tri / 4.0,
        "tri/2": tri / 2.0,
        "js": classic_divergence(MeasureKind.JS, p, q),
        "hel": hel,
        "hel/4": hel / 4.0,
        "hel/2": hel / 2.0,
        "d": d,
        "4d": 4.0 * d,
        "j/8": j / 8.0,
        "j/4": j / 4.0,
        "ag": classic_divergence(MeasureKind.AG, p, q),
        "sym_chi2/16": classic_divergence(MeasureKind.SYM_CHI2, p, q) / 16.0,
    }


_CHAIN_LINKS = {
    "EQ77": ("hel", "j/8", "sym_chi2/16"),
    "EQ104": ("tri/4", "js", "4d", "ag", "sym_chi2/16"),
    "EQ130": ("js", "j/8", "ag"),
    "EQ137": ("js", "hel", "ag"),
    "EQ138": ("tri/4", "js", "hel", "j/8", "ag", "sym_chi2/16"),
    "EQ139": ("tri/4", "js", "hel", "j/8", "ag", "j/4"),
    "EQ140": ("tri/4", "hel", "tri/2"),
    "EQ141": ("tri/4", "js", "hel", "tri/2"),
    "EQ172": ("hel/4", "d", "hel/2"),
    "EQ182": ("4d", "j/8"),
    "EQ183": ("tri/4", "js", "hel", "4d", "j/8", "ag", "sym_chi2/16"),
}


def _iter_chain(p, q) -> Iterator[tuple[str, float, float, dict]]:
    values = _chain_quantities(p, q)
    for case_id, keys in _CHAIN_LINKS.items():
        for lhs_key, rhs_key in zip(keys, keys[1:]):
            yield case_id, values[lhs_key], values[rhs_key], {}


def _iter_parametric(p, q, s_grid, t_grid, skips) -> Iterator[tuple[str, float, float, dict]]:
    v_on_s = {s: j_divergence_type_s(s, p, q) for s in s_grid}
    w_on_s = {s: ag_js_divergence_type_s(s, p, q) for s in s_grid}
    v_on_t = (v_on_s if tuple(t_grid) == tuple(s_grid)
              else {t: j_divergence_type_s(t, p, q) for t in t_grid})
    j8 = classic_divergence(MeasureKind.J, p, q) / 8.0
    hel = classic_divergence(MeasureKind.HELLINGER, p, q)
    psi = classic_divergence(MeasureKind.SYM_CHI2, p, q)
    tri = classic_divergence(MeasureKind.TRIANGULAR, p, q)
    js = classic_divergence(MeasureKind.JS, p, q)
    ag = classic_divergence(MeasureKind.AG, p, q)

    # (case_id, grid, in_domain, link builder); link builder returns the
    # (lhs, rhs) comparisons claimed at one grid value
    one_sided = (
        ("EQ129_UPPER", s_grid, lambda s: -2.0 <= s <= 0.0,
         lambda s: [(w_on_s[s], j8)]),
        ("EQ129_LOWER", s_grid, lambda s: s >= 1.0,
         lambda s: [(j8, w_on_s[s])]),
        ("EQ136_UPPER", s_grid, lambda s: -2.0 <= s <= 0.0,
         lambda s: [(w_on_s[s], hel)]),
        ("EQ136_LOWER", s_grid, lambda s: s >= 0.5,
         lambda s: [(hel, w_on_s[s])]),
        ("EQ142_UPPER", s_grid, lambda s: -1.0 <= s <= 2.0,
         lambda s: [(w_on_s[s], psi / 16.0)]),
        ("EQ142_LOWER", s_grid, lambda s: s >= 2.0,
         lambda s: [(psi / 16.0, w_on_s[s])]),
        ("EQ143_UPPER", t_grid, lambda t: 0.5 <= t <= 2.0,
         lambda t: [(v_on_t[t], psi / 2.0)]),
        ("EQ143_LOWER", t_grid, lambda t: t >= 2.0 or t <= -1.0,
         lambda t: [(psi / 2.0, v_on_t[t])]),
        ("EQ148", t_grid, lambda t: t >= 0.0 or t <= -1.0,
         lambda t: [(tri, v_on_t[t] / 2.0)]),
        ("EQ153", t_grid, lambda t: True,
         lambda t: [(js, v_on_t[t] / 8.0)]),
        ("EQ159_UPPER", t_grid, lambda t: t >= 2.0 or t <= -1.0,
         lambda t: [(ag, v_on_t[t] / 8.0)]),
        ("EQ159_LOWER", t_grid, lambda t: 0.0 <= t <= 1.0,
         lambda t: [(v_on_t[t] / 8.0, ag)]),
        ("EQ165_UPPER", s_grid, lambda s: s >= 2.0 or s <= -1.0,
         lambda s: [(w_on_s[s], v_on_s[s] / 8.0)]),
        ("EQ165_LOWER", s_grid, lambda s: 0.5 <= s <= 1.0,
         lambda s: [(v_on_s[s] / 8.0, w_on_s[s])]),
        ("EQ170", s_grid, lambda s: True,
         lambda s: [(4.0 * w_on_s[s], v_on_s[s])]),
        ("EQ171", s_grid, lambda s: 0.5 <= s <= 1.0,
         lambda s: [(v_on_s[s] / 8.0, w_on_s[s]), (w_on_s[s], v_on_s[s] / 4.0)]),
    )
    for case_id, grid, in_domain, links in one_sided:
        param_key = "t" if case_id.startswith(("EQ143", "EQ148", "EQ153", "EQ159")) else "s"
        for value in grid:
            if not in_domain(value):
                skips[case_id] += 1
                continue
            for lhs, rhs in links(value):
                yield case_id, lhs, rhs, {param_key: float(value)}

    ordered_s = sorted(s_grid)
    for s1, s2 in zip(ordered_s, ordered_s[1:]):
        if s2 <= 0.5:  # nonincreasing side
            yield "PROP42_MONO", v_on_s[s2], v_on_s[s1], {"s": float(s2)}
        elif s1 >= 0.5:  # nondecreasing side
            yield "PROP42_MONO", v_on_s[s1], v_on_s[s2], {"s": float(s2)}
        else:
            skips["PROP42_MONO"] += 1
        if s1 >= -1.0:
            yield "PROP44_MONO", w_on_s[s1], w_on_s[s2], {"s": float(s2)}
        else:
            skips["PROP44_MONO"] += 1


def _iter_bounds(p, q, s_grid, gens, skips) -> Iterator[tuple[str, float, float, dict]]:
    rb = ratio_bounds(p, q)
    if rb.degenerate:
        for case in BOUNDS_CASES:
            skips[case.id] += 1
        return
    r, big_r = rb.r, rb.R
    yield "EQ32", (big_r - 1.0) * (1.0 - r), (big_r - r) ** 2 / 4.0, {}

    tv = classic_divergence(MeasureKind.TOTAL_VARIATION, p, q)
    for m in (1.0, 2.0, 3.0):
        chi_m = vajda_abs_chi(m, p, q)
        bound1, bound2 = vajda_upper_bounds(m, rb)
        lo_coef, hi_coef = vajda_variation_coefficients(m, rb)
        extra = {"m": m}
        yield "EQ52", chi_m, bound1, extra
        yield "EQ52", bound1, bound2, extra
        yield "EQ53_UPPER", chi_m, hi_coef * tv, extra
        yield "EQ53_LOWER", lo_coef * tv, chi_m, extra

    chi2 = vajda_abs_chi(2.0, p, q)
    chi3 = vajda_abs_chi(3.0, p, q)
    b1_m2, b2_m2 = vajda_upper_bounds(2.0, rb)
    b1_m3, b2_m3 = vajda_upper_bounds(3.0, rb)
    b1_m1, b2_m1 = vajda_upper_bounds(1.0, rb)
    yield "EQ54", chi2, b1_m2, {}
    yield "EQ54", b1_m2, b2_m2, {}
    yield "EQ55", chi3, b1_m3, {}
    yield "EQ55", b1_m3, b2_m3, {}
    yield "EQ56", tv, b1_m1, {}
    yield "EQ56", b1_m1, b2_m1, {}

    for family, ids in ((GeneratorFamilyKind.PHI, ("EQ78", "EQ79", "EQ80", "EQ81")),
                        (GeneratorFamilyKind.PSI, ("EQ105", "EQ106", "EQ107", "EQ108"))):
        for s in s_grid:
            report = bound_report(gens[(family, s)], p, q)
            extra = {"s": float(s)}
            value_ordered, chord, deviation_half, deviation_star = ids
            yield value_ordered, report.value, report.linearized, extra
            yield value_ordered, report.linearized, report.endpoint_A, extra
            yield chord, report.value, report.endpoint_B, extra
            yield chord, report.endpoint_B, report.endpoint_A, extra
            yield deviation_half, abs(report.value - report.linearized / 2.0), \
                report.half_E_bound, extra
            yield deviation_star, abs(report.value - report.linearized_mid), \
                report.E_star_bound, extra


def _fresh_results(cases: Sequence[InequalityCase]) -> dict[str, CaseResult]:
    return {c.id: CaseResult(c.id, c.severity) for c in cases}


class _SkipCounter(dict):
    def __missing__(self, key):
        self[key] = 0
        return 0


def _run_pair(results, skips, iterator, p, q, tol) -> None:
    for case_id, lhs, rhs, extra in iterator:
        results[case_id].record(slack_violation(lhs, rhs, tol), _witness(p, q, **extra))


# ---------------------------------------------------------------------------
# public checks
# ---------------------------------------------------------------------------

def check_chain(p: Distribution, q: Distribution, tol: float = DEFAULT_TOL) -> ChainReport:
    """Evaluate the seven-measure chain (and its published sub-chains) once."""
    _require_same_dim(p, q)
    results = _fresh_results(CHAIN_CASES)
    skips = _SkipCounter()
    _run_pair(results, skips, _iter_chain(p, q), p, q, tol)
    return ChainReport(_chain_quantities(p, q), [results[c.id] for c in CHAIN_CASES])


def check_parametric(p: Distribution, q: Distribution,
                     s_grid: Sequence[float] = DEFAULT_GRID,
                     t_grid: Sequence[float] = DEFAULT_GRID,
                     tol: float = DEFAULT_TOL) -> list[CaseResult]:
    """Check every grid-parameterized claim on one pair; a sweep fragment."""
    _require_same_dim(p, q)
    if len(s_grid) == 0 or len(t_grid) == 0:
        raise InputError("EMPTY_GRID", "s and t grids must be nonempty")
    results = _fresh_results(PARAMETRIC_CASES)
    skips = _SkipCounter()
    _run_pair(results, skips,
              _iter_parametric(p, q, tuple(s_grid), tuple(t_grid), skips), p, q, tol)
    for case_id, count in skips.items():
        results[case_id].skip(count)
    return [results[c.id] for c in PARAMETRIC_CASES]


def check_bounds_suite(p: Distribution, q: Distribution,
                       s_grid: Sequence[float] = DEFAULT_GRID,
                       tol: float = DEFAULT_TOL) -> list[CaseResult]:
    """Check the ratio-range and bound-engine claims on one pair."""
    _require_same_dim(p, q)
    if len(s_grid) == 0:
        raise InputError("EMPTY_GRID", "s grid must be nonempty")
    gens = {(family, s): family_generator(family, s)
            for family in GeneratorFamilyKind for s in s_grid}
    results = _fresh_results(BOUNDS_CASES)
    skips = _SkipCounter()
    _run_pair(results, skips,
              _iter_bounds(p, q, tuple(s_grid), gens, skips), p, q, tol)
    for case_id, count in skips.items():
        results[case_id].skip(count)
    return [results[c.id] for c in BOUNDS_CASES]


def pair_for(seed: int, dim: int, index: int) -> tuple[Distribution, Distribution]:
    """The deterministic sampled pair for one (seed, dim, index) shard."""
    seeds = [int(np.random.SeedSequence((seed, dim, index, k)).generate_state(1)[0])
             for k in (0, 1)]
    return sample_simplex(dim, seeds[0]), sample_simplex(dim, seeds[1])


def run_sweep(config: SweepConfig = SweepConfig()) -> SweepSummary:
    """Run the whole registry over deterministic random pairs."""
    start = time.perf_counter()
    results = _fresh_results(REGISTRY)
    skips = _SkipCounter()
    gens = {(family, s): family_generator(family, s)
            for family in GeneratorFamilyKind for s in config.s_grid}
    samples = 0
    for dim in config.dims:
        for index in range(config.samples_per_dim):
            p, q = pair_for(config.seed, int(dim), index)
            samples += 1
            _run_pair(results, skips, _iter_chain(p, q), p, q, config.tol)
            _run_pair(results, skips,
                      _iter_parametric(p, q, config.s_grid, config.t_grid, skips),
                      p, q, config.tol)
            _run_pair(results, skips,
                      _iter_bounds(p, q, config.s_grid, gens, skips),
                      p, q, config.tol)
    for case_id, count in skips.items():
        results[case_id].skip(count)
    elapsed_ms = int(round((time.perf_counter() - start) * 1000.0))
    return SweepSummary(config=config,
                        cases=[results[c.id] for c in REGISTRY],
                        samples=samples, seed=config.seed, elapsed_ms=elapsed_ms)

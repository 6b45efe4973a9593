import numpy as np
import pytest

from symdiv import Distribution, sample_simplex, validate_distribution


def close(a, b, tol):
    """Tolerance convention used across the suite: |a-b| <= tol*max(1,|a|,|b|).

    The relative part guards large values, the absolute floor guards
    near-zero comparisons (a strict relative test is meaningless in
    float64 once the compared quantities are dominated by summation
    rounding).
    """
    a, b = float(a), float(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def assert_close(a, b, tol, label=""):
    assert close(a, b, tol), f"{label}: {a!r} vs {b!r} (tol {tol})"


@pytest.fixture
def pair():
    return validate_distribution([0.6, 0.4]), validate_distribution([0.4, 0.6])


@pytest.fixture
def pair3():
    return (validate_distribution([0.5, 0.3, 0.2]),
            validate_distribution([0.25, 0.25, 0.5]))


def sampled_pairs(dims=(2, 3, 5, 10), per_dim=25, seed=20240) -> list[tuple[Distribution, Distribution]]:
    out = []
    for dim in dims:
        for i in range(per_dim):
            ss = np.random.SeedSequence((seed, dim, i))
            s1, s2 = (int(v) for v in ss.generate_state(2))
            out.append((sample_simplex(dim, s1), sample_simplex(dim, s2)))
    return out

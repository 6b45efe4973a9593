import numpy as np
import pytest

import oracle
from conftest import assert_close, sampled_pairs
from symdiv import (DomainError, FamilyParam, GeneratorFamilyKind, InputError,
                    MeasureKind, ag_js_divergence_type_s, classic_divergence,
                    generator_eval, j_divergence_type_s, mixture,
                    relative_information_type_s, validate_distribution)

PHI, PSI = GeneratorFamilyKind.PHI, GeneratorFamilyKind.PSI
PAIRS = sampled_pairs(per_dim=15)
S_GRID = [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0]


class TestAgainstOracle:
    @pytest.mark.parametrize("s", [-2, -1, -0.5, 0.5, 1.5, 2, 3])
    def test_generic_branch(self, s, pair3):
        p, q = pair3
        pw, qw = p.as_tuple(), q.as_tuple()
        assert relative_information_type_s(s, p, q) == pytest.approx(
            float(oracle.phi_s(s, pw, qw)), rel=1e-12)
        assert j_divergence_type_s(s, p, q) == pytest.approx(
            float(oracle.v_s(s, pw, qw)), rel=1e-12)
        assert ag_js_divergence_type_s(s, p, q) == pytest.approx(
            float(oracle.w_s(s, pw, qw)), rel=1e-12)

    def test_limit_branches(self, pair3):
        p, q = pair3
        pw, qw = p.as_tuple(), q.as_tuple()
        assert relative_information_type_s(0, p, q) == pytest.approx(
            float(oracle.kl(qw, pw)), rel=1e-13)
        assert relative_information_type_s(1, p, q) == pytest.approx(
            float(oracle.kl(pw, qw)), rel=1e-13)
        for s in (0, 1):
            assert j_divergence_type_s(s, p, q) == pytest.approx(
                float(oracle.j_divergence(pw, qw)), rel=1e-13)
        assert ag_js_divergence_type_s(0, p, q) == pytest.approx(
            float(oracle.js_divergence(pw, qw)), rel=1e-13)
        assert ag_js_divergence_type_s(1, p, q) == pytest.approx(
            float(oracle.ag_divergence(pw, qw)), rel=1e-13)


class TestSpecialCases:
    def test_named_specializations(self):
        for p, q in PAIRS[:40]:
            measure = lambda kind: classic_divergence(kind, p, q)
            h = measure(MeasureKind.HELLINGER)
            psi = measure(MeasureKind.SYM_CHI2)
            cases = [
                (j_divergence_type_s(-1, p, q), psi / 2, "V_-1"),
                (j_divergence_type_s(2, p, q), psi / 2, "V_2"),
                (j_divergence_type_s(0.5, p, q), 8 * h, "V_1/2"),
                (ag_js_divergence_type_s(-1, p, q),
                 measure(MeasureKind.TRIANGULAR) / 4, "W_-1"),
                (ag_js_divergence_type_s(0.5, p, q),
                 4 * measure(MeasureKind.D_NEW), "W_1/2"),
                (ag_js_divergence_type_s(2, p, q), psi / 16, "W_2"),
                (relative_information_type_s(-1, p, q),
                 classic_divergence(MeasureKind.CHI2, q, p) / 2, "Phi_-1"),
                (relative_information_type_s(0.5, p, q), 4 * h, "Phi_1/2"),
                (relative_information_type_s(2, p, q),
                 measure(MeasureKind.CHI2) / 2, "Phi_2"),
            ]
            for got, want, label in cases:
                assert_close(got, want, 1e-10, label)

    def test_zero_at_equal_arguments(self):
        p = validate_distribution([0.2, 0.3, 0.5])
        for s in (-2, -1, 0, 0.5, 1, 2, 3):
            assert relative_information_type_s(s, p, p) == pytest.approx(0.0, abs=1e-15)
            assert j_divergence_type_s(s, p, p) == pytest.approx(0.0, abs=1e-15)
            assert ag_js_divergence_type_s(s, p, p) == pytest.approx(0.0, abs=1e-15)

    def test_canonical_pair_values(self, pair):
        p, q = pair
        assert relative_information_type_s(2, p, q) == pytest.approx(1 / 12, rel=1e-12)
        assert relative_information_type_s(0.5, p, q) == pytest.approx(
            0.0808164115469, rel=1e-10)
        assert j_divergence_type_s(0.5, p, q) == pytest.approx(0.161632823094, rel=1e-10)
        assert j_divergence_type_s(0, p, q) == pytest.approx(0.162186043243, rel=1e-10)
        assert ag_js_divergence_type_s(-1, p, q) == pytest.approx(0.02, rel=1e-12)
        assert ag_js_divergence_type_s(0.5, p, q) == pytest.approx(
            0.0202553879795, rel=1e-10)
        assert ag_js_divergence_type_s(2, p, q) == pytest.approx(1 / 48, rel=1e-12)


class TestSymmetryAndIdentities:
    def test_v_symmetric_in_order_and_arguments(self):
        for p, q in PAIRS[:40]:
            for s in S_GRID:
                assert_close(j_divergence_type_s(s, p, q),
                             j_divergence_type_s(1 - s, p, q), 1e-12, f"V s<->1-s s={s}")
                assert_close(j_divergence_type_s(s, p, q),
                             j_divergence_type_s(s, q, p), 1e-12, f"V args s={s}")
                assert_close(ag_js_divergence_type_s(s, p, q),
                             ag_js_divergence_type_s(s, q, p), 1e-12, f"W args s={s}")
                assert_close(relative_information_type_s(s, p, q),
                             relative_information_type_s(1 - s, q, p), 1e-12,
                             f"Phi swap s={s}")

    def test_w_construction_from_mixture(self):
        # W_s = (Phi_s(M||P) + Phi_s(M||Q)) / 2 with M the midpoint
        for p, q in PAIRS[:40]:
            m = mixture(p, q)
            for s in S_GRID:
                direct = ag_js_divergence_type_s(s, p, q)
                via_phi = (relative_information_type_s(s, m, p)
                           + relative_information_type_s(s, m, q)) / 2
                assert_close(direct, via_phi, 1e-12, f"W construction s={s}")

    def test_w_reflection_identity(self):
        # W_{1-s} = (Phi_s(P||M) + Phi_s(Q||M)) / 2
        for p, q in PAIRS[:40]:
            m = mixture(p, q)
            for s in S_GRID:
                lhs = ag_js_divergence_type_s(1 - s, p, q)
                rhs = (relative_information_type_s(s, p, m)
                       + relative_information_type_s(s, q, m)) / 2
                assert_close(lhs, rhs, 1e-12, f"W reflection s={s}")

    def test_csiszar_consistency(self):
        for p, q in PAIRS[:40]:
            x = p.weights / q.weights
            for s in S_GRID:
                v_sum = float((q.weights * generator_eval(PHI, s, x, 0)).sum())
                w_sum = float((q.weights * generator_eval(PSI, s, x, 0)).sum())
                assert_close(v_sum, j_divergence_type_s(s, p, q), 1e-12, f"phi sum s={s}")
                assert_close(w_sum, ag_js_divergence_type_s(s, p, q), 1e-12, f"psi sum s={s}")


class TestLimitWindow:
    def test_values_inside_window_equal_the_limit(self):
        for p, q in PAIRS[:25]:
            for fn, limit_at in ((relative_information_type_s, 0),
                                 (j_divergence_type_s, 0),
                                 (ag_js_divergence_type_s, 0),
                                 (relative_information_type_s, 1),
                                 (j_divergence_type_s, 1),
                                 (ag_js_divergence_type_s, 1)):
                at_limit = fn(limit_at, p, q)
                for eps in (-1e-5, 1e-5):
                    assert abs(fn(limit_at + eps, p, q) - at_limit) <= 1e-8

    def test_generic_branch_converges_to_limit(self, pair3):
        # just outside the window the generic branch sits within
        # |ds| * d/ds of the limit value
        p, q = pair3
        for fn, limit_at in ((relative_information_type_s, 0),
                             (j_divergence_type_s, 1),
                             (ag_js_divergence_type_s, 0)):
            at_limit = fn(limit_at, p, q)
            gap = abs(fn(limit_at + 2e-5, p, q) - at_limit)
            assert gap <= 1e-4

    def test_custom_window(self, pair3):
        p, q = pair3
        wide = FamilyParam(1e-3, limit_tolerance=1e-2)
        assert j_divergence_type_s(wide, *pair3) == j_divergence_type_s(0, p, q)


class TestMonotonicity:
    def test_v_decreases_then_increases_around_half(self):
        for p, q in PAIRS[:40]:
            values = [j_divergence_type_s(s, p, q) for s in S_GRID]
            for (s1, v1), (s2, v2) in zip(zip(S_GRID, values), zip(S_GRID[1:], values[1:])):
                if s2 <= 0.5:
                    assert v2 <= v1 + 1e-12 * max(1.0, abs(v1))
                if s1 >= 0.5:
                    assert v1 <= v2 + 1e-12 * max(1.0, abs(v2))

    def test_w_nondecreasing_from_minus_one(self):
        for p, q in PAIRS[:40]:
            values = [(s, ag_js_divergence_type_s(s, p, q)) for s in S_GRID if s >= -1]
            for (s1, v1), (s2, v2) in zip(values, values[1:]):
                assert v1 <= v2 + 1e-12 * max(1.0, abs(v2))

    def test_classic_orderings_at_special_orders(self):
        for p, q in PAIRS[:40]:
            h = classic_divergence(MeasureKind.HELLINGER, p, q)
            j = classic_divergence(MeasureKind.J, p, q)
            psi = classic_divergence(MeasureKind.SYM_CHI2, p, q)
            assert h <= j / 8 + 1e-12 * max(1.0, j / 8)
            assert j / 8 <= psi / 16 + 1e-12 * max(1.0, psi / 16)
            tri = classic_divergence(MeasureKind.TRIANGULAR, p, q)
            js = classic_divergence(MeasureKind.JS, p, q)
            d = classic_divergence(MeasureKind.D_NEW, p, q)
            ag = classic_divergence(MeasureKind.AG, p, q)
            chain = [tri / 4, js, 4 * d, ag, psi / 16]
            for lo, hi in zip(chain, chain[1:]):
                assert lo <= hi + 1e-12 * max(1.0, abs(hi))


class TestGeneratorEval:
    def test_point_values(self):
        assert generator_eval(PHI, 2, 2.0, 0) == pytest.approx(0.75, rel=1e-15)
        assert generator_eval(PHI, 2, 2.0, 2) == pytest.approx(1.125, rel=1e-15)
        for family in (PHI, PSI):
            for s in (-1, 0.3, 1, 2.5):
                assert generator_eval(family, s, 1.0, 0) == pytest.approx(0.0, abs=1e-14)
        for s in (-2, -0.5, 0, 1, 3):
            assert generator_eval(PSI, s, 1.0, 2) == pytest.approx(0.25, rel=1e-14)

    def test_second_order_positive(self):
        xs = np.geomspace(0.01, 100, 200)
        for family in (PHI, PSI):
            for s in (-2, -1, 0, 0.5, 1, 2, 3):
                assert np.all(generator_eval(family, s, xs, 2) > 0)

    @pytest.mark.parametrize("family", [PHI, PSI], ids=lambda f: f.value)
    @pytest.mark.parametrize("s", [-1, -0.3, 0.5, 1.7, 2])
    def test_derivatives_match_finite_differences(self, family, s):
        for x in (0.25, 0.5, 1.0, 2.0, 4.0):
            f = lambda t: generator_eval(family, s, t, 0)
            h1 = x * 1e-6
            fd1 = (f(x + h1) - f(x - h1)) / (2 * h1)
            h2 = x * 1e-4
            fd2 = (f(x + h2) - 2 * f(x) + f(x - h2)) / h2 ** 2
            h3 = x * 1e-3
            fd3 = (f(x + 2 * h3) - 2 * f(x + h3) + 2 * f(x - h3) - f(x - 2 * h3)) / (2 * h3 ** 3)
            for order, fd in ((1, fd1), (2, fd2), (3, fd3)):
                analytic = generator_eval(family, s, x, order)
                assert_close(analytic, fd, 1e-5, f"{family.value} s={s} x={x} order={order}")

    def test_derivatives_match_oracle(self):
        for family, gen in ((PHI, oracle.phi_gen), (PSI, oracle.psi_gen)):
            for s in (-1.5, -0.3, 0.5, 1.7, 2.5):
                for x in (0.3, 1.0, 2.7):
                    for order in (1, 2, 3):
                        expected = float(oracle.gen_derivative(gen, s, x, order))
                        assert_close(generator_eval(family, s, x, order), expected,
                                     1e-11, f"{family.value} s={s} x={x} o={order}")

    def test_rejects_bad_order_and_domain(self):
        with pytest.raises(InputError) as err:
            generator_eval(PHI, 1, 1.0, 4)
        assert err.value.code == "UNSUPPORTED_ORDER"
        with pytest.raises(DomainError) as err:
            generator_eval(PSI, 1, -1.0, 0)
        assert err.value.code == "NONPOSITIVE_ARGUMENT"

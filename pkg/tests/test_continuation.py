"""Functional equations, recursive continuation, singularity bookkeeping."""
import cmath
import math
import random

import pytest

from partialzeta.continuation import (GEvaluator, PartialZetaEvaluator,
                                      SingularityCatalog, SingularPoint,
                                      boundary_report, composite_feq_residual,
                                      continue_f_power, counting_functions,
                                      feq_residual, lambda_q_betas, mq_classes,
                                      omega_set)
from partialzeta.core import (ExplicitSystem, PrimeDatum, TruncationPolicy,
                              truncated_zeta_Pn)
from partialzeta.errors import (DomainError, InsufficientDataError,
                                InvalidConfigError, SingularityProximityError)
from partialzeta.numberfield import g_closed_form, kronecker_system


def order6_system():
    """Synthetic #G = 6 system with primes of every Frobenius order."""
    data = [PrimeDatum(norm=2, id=0, frob_class=0, frob_order=1),
            PrimeDatum(norm=3, id=1, frob_class=3, frob_order=2),
            PrimeDatum(norm=5, id=2, frob_class=2, frob_order=3),
            PrimeDatum(norm=7, id=3, frob_class=1, frob_order=6),
            PrimeDatum(norm=11, id=4, frob_class=4, frob_order=3),
            PrimeDatum(norm=13, id=5, frob_class=5, frob_order=6)]
    return ExplicitSystem(data, group_order=6)


class TestFeqResidual:
    def test_d5(self):
        sys5 = kronecker_system(5)
        assert feq_residual(sys5, 1.7 + 3.1j, 10**4) <= 1e-10

    def test_only_order1_primes_trivial(self):
        sys = ExplicitSystem([PrimeDatum(norm=2, id=0, frob_class=0,
                                         frob_order=1)], group_order=2)
        assert feq_residual(sys, 2.0, 10) <= 1e-14

    def test_against_numeric_L_oracle(self):
        # RHS evaluated with independent numeric zeta/L at X=1e5: the
        # difference is the truncation tail, well under 1e-4 at s=2
        from partialzeta.frobenius import Character, CyclicGroup, truncated_L
        from partialzeta.lfunctions import (dirichlet_L, kronecker_character,
                                            riemann_zeta)

        sys5 = kronecker_system(5)
        pol = TruncationPolicy(10**5)
        s = 2.0
        f, _ = truncated_zeta_Pn(sys5, 2, s, pol)
        fq, _ = truncated_zeta_Pn(sys5, 2, 2 * s, pol)
        lhs = f**2 / fq
        chi = kronecker_character(5)
        g_num = (riemann_zeta(s) / dirichlet_L(s, chi) * (1.0 - 5.0**-s))
        assert abs(lhs - g_num) < 1e-4


class TestCompositeFeq:
    def test_order6_residual(self):
        assert composite_feq_residual(order6_system(), 1.6 + 0.8j,
                                      100) <= 1e-10

    def test_order1_only_system(self):
        sys = ExplicitSystem([PrimeDatum(norm=2, id=0, frob_class=0,
                                         frob_order=1)], group_order=6)
        assert composite_feq_residual(sys, 2.0, 10) <= 1e-13

    def test_prime_order_rejected(self):
        sys5 = kronecker_system(5)
        with pytest.raises(InvalidConfigError):
            composite_feq_residual(sys5, 2.0, 100)

    def test_nested_reduction(self):
        # f(s) := zeta_P6(s)^{q2}/zeta_P6(q2 s) satisfies f(s)^{q1}/f(q1 s)
        # = zeta_P6(s)^{q1 q2} * zeta_P6(q1 q2 s) / [zeta_P6(q1 s)^{q2} zeta_P6(q2 s)^{q1}]
        sys6 = order6_system()
        pol = TruncationPolicy(100)
        q1, q2 = 2, 3
        s = 1.5

        def f(z):
            a, _ = truncated_zeta_Pn(sys6, 6, z, pol)
            b, _ = truncated_zeta_Pn(sys6, 6, q2 * z, pol)
            return a**q2 / b

        def z6(z):
            v, _ = truncated_zeta_Pn(sys6, 6, z, pol)
            return v

        lhs = f(s) ** q1 / f(q1 * s)
        rhs = z6(s) ** (q1 * q2) * z6(q1 * q2 * s) / (
            z6(q1 * s) ** q2 * z6(q2 * s) ** q1)
        assert abs(lhs - rhs) < 1e-12 * abs(rhs)


class TestContinueFPower:
    def test_depth0_is_truncated_product(self):
        sys5 = kronecker_system(5)
        pol = TruncationPolicy(10**3)
        ev = PartialZetaEvaluator(sys5, 2, g_closed_form(sys5), 0, pol)
        direct, _ = truncated_zeta_Pn(sys5, 2, 2.0, pol)
        assert ev(2.0) == direct

    def test_direct_substitution_oracle(self):
        # depth 1 at s = 0.75: value = g(0.75) * f(1.5) by Eq-level identity
        sys5 = kronecker_system(5)
        pol = TruncationPolicy(10**4)
        g = g_closed_form(sys5)
        ev = PartialZetaEvaluator(sys5, 2, g, 1, pol)
        f15, _ = truncated_zeta_Pn(sys5, 2, 1.5, pol)
        assert abs(ev(0.75) - g(0.75) * f15) < 1e-12

    def test_domain_guard(self):
        sys5 = kronecker_system(5)
        ev = PartialZetaEvaluator(sys5, 2, g_closed_form(sys5), 1,
                                  TruncationPolicy(10**3))
        with pytest.raises(DomainError):
            ev(0.5)

    def test_recursion_coherence_within_tails(self):
        sys5 = kronecker_system(5)
        pol = TruncationPolicy(10**6)
        g = g_closed_form(sys5)
        ev1 = PartialZetaEvaluator(sys5, 2, g, 1, pol)
        ev2 = PartialZetaEvaluator(sys5, 2, g, 2, pol)
        s = 0.95 + 2.0j
        v1, v2 = ev1(s), ev2(s)
        tails = (2 * pol.tail_bound(2 * s.real, sys5.count_coeff())
                 + pol.tail_bound(4 * s.real, sys5.count_coeff()))
        assert abs(cmath.log(v1**2 / v2)) <= 10 * tails

    def test_proximity_guard(self):
        sys5 = kronecker_system(5)
        cat = SingularityCatalog([SingularPoint(0.6 + 14.13j, 1)], 20.0)
        g = g_closed_form(sys5, catalog=cat)
        ev = PartialZetaEvaluator(sys5, 2, g, 2, TruncationPolicy(10**3))
        with pytest.raises(SingularityProximityError):
            ev(0.3 + 7.065j)  # 2s hits the cataloged point


class TestOmegaSet:
    def test_single_point_towers(self):
        cat = SingularityCatalog([SingularPoint(0.5 + 14.1347j, 1)], 20.0)
        pts = omega_set(cat, 2, 2)
        assert len(pts) == 3
        assert abs(pts[0] - (0.125 + 3.533675j)) < 1e-9
        assert abs(pts[2] - (0.5 + 14.1347j)) < 1e-12

    def test_empty(self):
        cat = SingularityCatalog([], 10.0)
        assert omega_set(cat, 2, 5) == []

    def test_kmax_zero_is_catalog(self):
        cat = SingularityCatalog([SingularPoint(0.3 + 2j, -1)], 10.0)
        assert omega_set(cat, 3, 0) == [0.3 + 2j]

    def test_nested_in_depth(self):
        cat = SingularityCatalog([SingularPoint(0.4 + 8j, 2)], 10.0)
        a = set(omega_set(cat, 2, 2))
        b = set(omega_set(cat, 2, 3))
        assert a <= b


class TestMqClasses:
    def test_singleton_class(self):
        cat = SingularityCatalog([SingularPoint(0.5 + 3j, 1)], 10.0)
        classes = mq_classes(cat, 2)
        assert len(classes) == 1
        assert classes[0][1] == pytest.approx(1.0)

    def test_designed_cancellation(self):
        # pair (sigma, m=1) and (q sigma, m=-q): M_q = 1 + (1/q)(-q) = 0
        q = 2
        sigma = 0.25 + 3.0j
        cat = SingularityCatalog([SingularPoint(sigma, 1),
                                  SingularPoint(q * sigma, -q)], 20.0)
        classes = mq_classes(cat, q)
        assert len(classes) == 1
        assert abs(classes[0][1]) < 1e-12
        assert lambda_q_betas(cat, q) == []

    def test_periodic_catalog_all_singletons(self):
        pts = [SingularPoint(complex(0.5, 1.1 + 2.0 * k), 1) for k in range(8)]
        cat = SingularityCatalog(pts, 20.0)
        classes = mq_classes(cat, 2)
        assert len(classes) == 8
        assert all(w == pytest.approx(1.0) for _, w in classes)


class TestCountingFunctions:
    def test_empty(self):
        cat = SingularityCatalog([], 10.0)
        assert counting_functions(cat, 2, 10.0, 0.25) == (0, 0, 0)

    def test_single_pole_counts_in_J(self):
        cat = SingularityCatalog([SingularPoint(0.2 + 5j, -1)], 10.0)
        i_t, j_t, _ = counting_functions(cat, 2, 10.0, 0.3)
        assert (i_t, j_t) == (0, 1)

    def test_alpha_range_validated(self):
        cat = SingularityCatalog([], 10.0)
        with pytest.raises(InvalidConfigError):
            counting_functions(cat, 2, 10.0, 0.7)

    def test_zero_on_critical_line_counts_in_I(self):
        cat = SingularityCatalog([SingularPoint(0.5 + 14.1347j, 1),
                                  SingularPoint(0.4 + 3j, 2)], 20.0)
        i_t, j_t, om = counting_functions(cat, 2, 20.0, 0.25)
        assert i_t == 1 and j_t == 0
        assert om >= 2  # both classes contribute at least their representative


class TestBoundaryReport:
    def test_linear_catalog_consistent(self):
        pts = [SingularPoint(complex(0.5, j + 1), 1) for j in range(999)]
        cat = SingularityCatalog(pts, 1000.0)
        rep = boundary_report(cat, 2, 1000.0)
        assert rep["verdict"] == "consistent-with-natural-boundary"
        assert rep["trend"]["last_ratio"] < 1.02

    def test_geometric_catalog_not_consistent(self):
        pts = [SingularPoint(complex(0.5, 2.0**j), 1) for j in range(10)]
        cat = SingularityCatalog(pts, 1100.0)
        rep = boundary_report(cat, 3, 1100.0)
        assert rep["verdict"] != "consistent-with-natural-boundary"
        assert rep["verdict"] == "gap-found"
        assert rep["largest_gap"]["ratio"] > 1.1

    def test_insufficient_data(self):
        pts = [SingularPoint(complex(0.5, j + 1.0), 1) for j in range(5)]
        cat = SingularityCatalog(pts, 10.0)
        with pytest.raises(InsufficientDataError):
            boundary_report(cat, 2, 10.0)

    def test_empty_catalog(self):
        with pytest.raises(InsufficientDataError):
            boundary_report(SingularityCatalog([], 10.0), 2, 10.0)

    def test_report_shape(self):
        pts = [SingularPoint(complex(0.5, j + 1), 1) for j in range(50)]
        cat = SingularityCatalog(pts, 60.0)
        rep = boundary_report(cat, 2, 60.0)
        assert set(rep) >= {"betas", "trend", "gaps", "largest_gap", "verdict"}
        assert all(g["t2"] > g["t1"] for g in rep["gaps"])


class TestCatalogSerialization:
    def test_roundtrip(self):
        pts = [SingularPoint(0.5 + 14.134725j, 1),
               SingularPoint(0.25 + 3.2j, -2)]
        cat = SingularityCatalog(pts, 20.0)
        clone = SingularityCatalog.from_csv(cat.to_csv(), 20.0)
        assert clone.points == pts

    def test_header_required(self):
        with pytest.raises(InvalidConfigError):
            SingularityCatalog.from_csv("x,y,z\n1,2,3\n", 10.0)

    def test_duplicate_points_rejected(self):
        with pytest.raises(InvalidConfigError):
            SingularityCatalog([SingularPoint(0.5 + 1j, 1),
                                SingularPoint(0.5 + 1j, 2)], 10.0)

    def test_zero_order_rejected(self):
        with pytest.raises(InvalidConfigError):
            SingularPoint(0.5 + 1j, 0)

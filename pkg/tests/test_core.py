"""Prime-datum model, truncated products and tail bounds."""
import cmath
import math

import numpy as np
import pytest

from partialzeta.core import (ExplicitSystem, PrimeDatum, TruncationPolicy,
                              local_factor, log_zeta_P, partition_Pn,
                              system_from_json, truncated_zeta_P,
                              truncated_zeta_Pn)
from partialzeta.errors import (BudgetExceededError, InvalidConfigError,
                                SingularLocalFactorError)
from partialzeta.numberfield import kronecker_system
from partialzeta.primes import SIEVE_CAP, primes_up_to


def simple_system():
    data = [PrimeDatum(norm=2, id=0, frob_class=1, frob_order=2),
            PrimeDatum(norm=3, id=1, frob_class=0, frob_order=1),
            PrimeDatum(norm=5, id=2, frob_class=1, frob_order=2)]
    return ExplicitSystem(data, group_order=2)


class TestPrimeDatum:
    def test_norm_must_exceed_one(self):
        with pytest.raises(InvalidConfigError):
            PrimeDatum(norm=1.0, id=0)

    def test_frob_order_positive(self):
        with pytest.raises(InvalidConfigError):
            PrimeDatum(norm=2.0, id=0, frob_order=0)


class TestLocalFactor:
    def test_norm2_s1(self):
        assert local_factor(PrimeDatum(norm=2, id=0), 1.0) == pytest.approx(2.0)

    def test_norm3_s2(self):
        assert local_factor(PrimeDatum(norm=3, id=0), 2.0) == pytest.approx(9 / 8)

    def test_imaginary_s_on_unit_circle(self):
        # 2^{-i pi/log 2} = e^{-i pi} = -1, so the factor is 1/2
        s = 1j * math.pi / math.log(2)
        assert local_factor(PrimeDatum(norm=2, id=0), s) == pytest.approx(0.5)

    def test_singular_factor_raises(self):
        with pytest.raises(SingularLocalFactorError):
            local_factor(PrimeDatum(norm=2, id=0), 0.0)


class TestPartition:
    def test_quadratic_d5_buckets(self):
        # squares mod 5 are {1, 4}: 11 = 1 splits; 2, 3, 7 inert; 5 ramified
        sys5 = kronecker_system(5)
        buckets = partition_Pn(sys5, 12)
        assert sorted(p.norm for p in buckets[1]) == [11]
        assert sorted(p.norm for p in buckets[2]) == [2, 3, 7]

    def test_singleton(self):
        sys = ExplicitSystem([PrimeDatum(norm=2, id=0, frob_class=1,
                                         frob_order=2)], group_order=2)
        assert set(partition_Pn(sys, 2.5)) == {2}

    def test_buckets_disjoint_and_complete(self):
        sys5 = kronecker_system(5)
        buckets = partition_Pn(sys5, 500)
        total = sum(len(v) for v in buckets.values())
        assert total == len(sys5.primes_up_to(500))


class TestTruncatedProducts:
    def test_empty_bucket_returns_one(self):
        sys = simple_system()
        val, tail = truncated_zeta_Pn(sys, 4, 2.0, TruncationPolicy(10))
        assert val == 1.0

    def test_product_over_buckets_equals_zeta_P(self):
        sys5 = kronecker_system(5)
        pol = TruncationPolicy(10**4)
        s = 2.0
        v1, _ = truncated_zeta_Pn(sys5, 1, s, pol)
        v2, _ = truncated_zeta_Pn(sys5, 2, s, pol)
        vp, _ = truncated_zeta_P(sys5, s, pol)
        assert abs(v1 * v2 - vp) <= 1e-12 * abs(vp)

    def test_cross_cutoff_against_high_cutoff_oracle(self):
        # frozen oracle: zeta_{P_2}(2) for d=5 at the 1e7 sieve cap
        # [value recomputed from the X=1e7 enumeration: direct log-sum]
        sys5 = kronecker_system(5)
        hi, _ = truncated_zeta_Pn(sys5, 2, 2.0, TruncationPolicy(10**7))
        lo, tail = truncated_zeta_Pn(sys5, 2, 2.0, TruncationPolicy(10**4))
        # the true gap at X=1e4 is ~5e-6; the certified tail must cover it
        assert abs(cmath.log(hi / lo)) <= tail
        assert abs(hi - lo) < 1e-4

    def test_monotone_truncation_real_s(self):
        sys5 = kronecker_system(5)
        cuts = [10**2, 10**3, 10**4, 10**5]
        vals, tails = [], []
        for x in cuts:
            v, t = truncated_zeta_Pn(sys5, 2, 1.5, TruncationPolicy(x))
            vals.append(v.real)
            tails.append(t)
        assert vals == sorted(vals)
        assert tails == sorted(tails, reverse=True)

    def test_tail_soundness_by_doubling(self):
        sys5 = kronecker_system(5)
        s = 1.3
        ref, _ = truncated_zeta_P(sys5, s, TruncationPolicy(2 * 10**6))
        for x in (10**3, 10**4, 10**5):
            v, tail = truncated_zeta_P(sys5, s, TruncationPolicy(x))
            assert abs(cmath.log(ref / v)) <= tail

    def test_tail_infinite_at_or_below_one(self):
        assert TruncationPolicy(100).tail_bound(1.0) == float("inf")

    def test_pnt_heuristic_smaller_than_geometric(self):
        g = TruncationPolicy(10**4, "geometric-bound").tail_bound(1.5)
        h = TruncationPolicy(10**4, "pnt-heuristic").tail_bound(1.5)
        assert 0 < h < g

    def test_bad_tail_mode_rejected(self):
        with pytest.raises(InvalidConfigError):
            TruncationPolicy(10, tail_mode="optimism")


class TestEnumeration:
    def test_increasing_cutoff_appends(self):
        sys5 = kronecker_system(5)
        small = sys5.primes_up_to(100)
        large = sys5.primes_up_to(1000)
        assert large[: len(small)] == small

    def test_deterministic(self):
        a = kronecker_system(5).primes_up_to(10**4)
        b = kronecker_system(5).primes_up_to(10**4)
        assert a == b

    def test_sieve_cap_enforced(self):
        with pytest.raises(BudgetExceededError):
            primes_up_to(SIEVE_CAP * 2)

    def test_sieve_values(self):
        assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


class TestSerialization:
    def test_json_roundtrip_quadratic(self):
        sys5 = kronecker_system(5)
        clone = system_from_json(sys5.to_json())
        assert clone.primes_up_to(200) == sys5.primes_up_to(200)

    def test_json_roundtrip_explicit(self):
        sys = simple_system()
        clone = system_from_json(sys.to_json())
        assert clone.primes_up_to(10) == sys.primes_up_to(10)
        assert clone.group_order == 2

    def test_csv_dump(self):
        sys = simple_system()
        lines = sys.dump_csv(4).splitlines()
        assert lines[0] == "id,norm,frob_class,frob_order"
        assert lines[1] == "0,2,1,2"
        assert len(lines) == 3

    def test_unknown_backend_rejected(self):
        with pytest.raises(InvalidConfigError):
            system_from_json('{"backend": "astral", "params": {}}')

    def test_bad_json_rejected(self):
        with pytest.raises(InvalidConfigError):
            system_from_json("not json")


class TestLogProductStability:
    def test_log_space_matches_direct_product(self):
        sys = simple_system()
        pol = TruncationPolicy(10)
        s = 1.5 + 2.0j
        direct = 1.0
        for p in sys.primes_up_to(10):
            direct *= local_factor(p, s)
        assert abs(cmath.exp(log_zeta_P(sys, s, pol)) - direct) < 1e-14

"""Dirichlet characters and L-function continuation, against mpmath oracles."""
import cmath
import math
import random

import mpmath
import pytest

from partialzeta.errors import InvalidConfigError, PoleAtOneError
from partialzeta.lfunctions import (DirichletCharacter, completed_zeta,
                                    dirichlet_L, fundamental_discriminant,
                                    hardy_Z, hurwitz_zeta, kronecker_character,
                                    kronecker_symbol, prime_order_character,
                                    riemann_siegel_theta, riemann_zeta,
                                    trivial_character)

mpmath.mp.dps = 30


class TestHurwitz:
    @pytest.mark.parametrize("s,a", [(2.0, 1.0), (3.5, 0.25), (0.5, 0.7),
                                     (-1.0, 1.0), (1.5 + 20j, 0.4),
                                     (0.2 + 95j, 1.0)])
    def test_against_mpmath(self, s, a):
        ours = hurwitz_zeta(s, a)
        ref = complex(mpmath.zeta(s, a))
        assert abs(ours - ref) < 1e-10 * max(1.0, abs(ref))

    def test_pole_rejected(self):
        with pytest.raises(PoleAtOneError):
            hurwitz_zeta(1.0, 0.5)


class TestZetaValues:
    def test_zeta2(self):
        assert abs(riemann_zeta(2.0) - math.pi**2 / 6) < 1e-10

    def test_zeta_minus_one(self):
        assert abs(riemann_zeta(-1.0) - (-1.0 / 12.0)) < 1e-10

    def test_zeta_zero(self):
        assert abs(riemann_zeta(0.0) - (-0.5)) < 1e-10

    def test_xi_functional_equation(self):
        rng = random.Random(20240817)
        for _ in range(20):
            s = complex(rng.uniform(0.05, 0.95), rng.uniform(-30, 30))
            xi1, xi2 = completed_zeta(s), completed_zeta(1 - s)
            assert abs(xi1 - xi2) < 1e-8 * max(1.0, abs(xi1))


class TestKronecker:
    def test_symbol_matches_legendre(self):
        # Legendre symbols mod 7 by direct square search
        squares = {pow(a, 2, 7) for a in range(1, 7)}
        for a in range(1, 7):
            expected = 1 if a in squares else -1
            assert kronecker_symbol(a, 7) == expected

    def test_multiplicativity(self):
        rng = random.Random(11)
        for _ in range(200):
            a, b, n = rng.randint(-30, 30), rng.randint(-30, 30), rng.randint(1, 40)
            assert (kronecker_symbol(a * b, n)
                    == kronecker_symbol(a, n) * kronecker_symbol(b, n))

    def test_fundamental_discriminant(self):
        assert fundamental_discriminant(5) == 5
        assert fundamental_discriminant(-1) == -4
        assert fundamental_discriminant(3) == 12

    def test_non_squarefree_rejected(self):
        with pytest.raises(InvalidConfigError):
            fundamental_discriminant(12)
        with pytest.raises(InvalidConfigError):
            fundamental_discriminant(1)


class TestCharacters:
    def test_cubic_mod7_residues(self):
        # frozen oracle: cubic residues mod 7 are {1, 6}
        chi = prime_order_character(7, 3, generator=3)
        trivial_on = sorted(a for a in range(1, 7) if chi.exponent(a) == 0)
        assert trivial_on == [1, 6]

    def test_orthogonality(self):
        for chi in (kronecker_character(5), prime_order_character(7, 3),
                    kronecker_character(-1)):
            total = sum(chi.value(a) for a in range(chi.modulus))
            assert abs(total) < 1e-12

    def test_kronecker_character_matches_symbol(self):
        chi = kronecker_character(5)
        for p in (2, 3, 7, 11, 13):
            assert chi.value(p) == pytest.approx(kronecker_symbol(5, p))

    def test_power_and_parity(self):
        chi = prime_order_character(7, 3, generator=3)
        assert chi.power(3).is_trivial
        assert chi.parity == 1  # cubic character is even
        assert kronecker_character(-1).parity == -1

    def test_nonprime_order_divisibility_guard(self):
        with pytest.raises(InvalidConfigError):
            prime_order_character(7, 5)


class TestDirichletL:
    def test_L_chi_minus4_at_1(self):
        # Leibniz: 1 - 1/3 + 1/5 - ... = pi/4
        chi = kronecker_character(-1)
        assert abs(dirichlet_L(1.0, chi) - math.pi / 4) < 1e-10

    def test_L_chi5_at_2_against_mpmath(self):
        chi = kronecker_character(5)
        ref = complex(sum(mpmath.mpf(kronecker_symbol(5, n)) / n**2
                          for n in range(1, 20000)))
        assert abs(dirichlet_L(2.0, chi) - ref) < 1e-6

    def test_cubic_L_against_hurwitz_oracle(self):
        chi = prime_order_character(7, 3, generator=3)
        s = 1.3 + 4.0j
        ref = mpmath.mpc(0)
        for a in range(1, 7):
            ref += complex(chi.value(a)) * mpmath.zeta(s, mpmath.mpf(a) / 7)
        ref *= mpmath.power(7, -s)
        assert abs(dirichlet_L(s, chi) - complex(ref)) < 1e-10

    def test_pole_for_trivial(self):
        with pytest.raises(PoleAtOneError):
            dirichlet_L(1.0, trivial_character())

    def test_nontrivial_finite_at_1(self):
        chi = kronecker_character(5)
        v1 = dirichlet_L(1.0, chi)
        v2 = dirichlet_L(1.0 + 1e-7, chi)
        assert abs(v1 - v2) < 1e-5

    def test_euler_product_consistency(self):
        # Re s = 2: truncated Euler product over actual primes matches
        from partialzeta.primes import primes_up_to

        chi = kronecker_character(5)
        s = 2.0
        prod = 1.0
        for p in primes_up_to(10**5):
            v = chi.value(int(p))
            if v:
                prod *= 1.0 / (1.0 - v * float(p)**-s)
        assert abs(prod - dirichlet_L(s, chi)) < 1e-9


class TestHardyZ:
    def test_real_valued(self):
        for t in (5.0, 14.0, 21.0):
            assert isinstance(hardy_Z(t), float)

    def test_sign_change_at_first_zero(self):
        assert hardy_Z(14.0) * hardy_Z(14.2) < 0

    def test_matches_abs_zeta(self):
        t = 17.5
        assert abs(abs(hardy_Z(t)) - abs(riemann_zeta(0.5 + 1j * t))) < 1e-10

    def test_theta_against_mpmath(self):
        t = 25.0
        ref = float(mpmath.siegeltheta(t))
        assert abs(riemann_siegel_theta(t) - ref) < 1e-9

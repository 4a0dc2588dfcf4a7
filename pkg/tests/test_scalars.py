from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quantum_clifford.exceptions import DivisionByZero, ExponentDenominatorMismatch, PoleAtParameter
from quantum_clifford.scalars import ScalarContext
from quantum_clifford.utils import linalg

SCALARS = ScalarContext()
HALF = ScalarContext(2)

binomial_pairs = st.integers(min_value=0, max_value=7).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(min_value=0, max_value=n))
)


class TestQuantumIntegers:
    def test_qnum_two(self, scalars):
        """Test [2] = q + q^-1."""
        assert scalars.qnum(2) == scalars.u + scalars.u**-1
        assert scalars.render(scalars.qnum(2)) == "(u^2 + 1)/u"

    def test_qnum_negative(self, scalars):
        """Test [-n] = -[n]."""
        assert scalars.qnum(-3) == -scalars.qnum(3)

    def test_qnum_in_q_d(self):
        """Test that [2]_{q^d} uses u^(D d)."""
        u = HALF.u
        assert HALF.qnum(2, 2) == u**4 + u**-4

    @given(binomial_pairs)
    def test_qbinom_symmetry(self, pair):
        """Test [n choose k] = [n choose n-k]."""
        n, k = pair
        assert SCALARS.qbinom(n, k) == SCALARS.qbinom(n, n - k)

    @given(binomial_pairs)
    def test_qbinom_classical_limit(self, pair):
        """Test that the Gaussian binomial specializes to the binomial at q = 1."""
        n, k = pair
        assert SCALARS.specialize(SCALARS.qbinom(n, k), 1) == comb(n, k)

    @given(st.integers(min_value=1, max_value=7), st.integers(min_value=1, max_value=6))
    def test_qbinom_pascal(self, n, k):
        """Test [n, k] = q^k [n-1, k] + q^-(n-k) [n-1, k-1]."""
        s = SCALARS
        expected = s.q_power(k) * s.qbinom(n - 1, k) + s.q_power(k - n) * s.qbinom(n - 1, k - 1)
        assert s.qbinom(n, k) == expected

    def test_qbinom_out_of_range(self, scalars):
        """Test that k outside 0..n gives zero."""
        assert scalars.qbinom(3, 4) == scalars.zero
        assert scalars.qbinom(3, -1) == scalars.zero


class TestPowers:
    def test_q_power_fractional(self):
        """Test q^(1/2) = u when D = 2."""
        assert HALF.q_power(Fraction(1, 2)) == HALF.u
        assert HALF.q_power(-1) == HALF.u**-2

    def test_q_power_off_lattice(self, scalars):
        """Test that q^(1/2) does not exist when D = 1."""
        with pytest.raises(ExponentDenominatorMismatch):
            scalars.q_power(Fraction(1, 2))

    def test_power_of_monomial(self, scalars):
        """Test (u^2)^(1/2) = u."""
        assert scalars.power(scalars.u**2, Fraction(1, 2)) == scalars.u

    def test_fractional_power_of_non_monomial(self, scalars):
        """Test that fractional powers need a pure power of u."""
        with pytest.raises(ExponentDenominatorMismatch):
            scalars.power(scalars.qnum(2), Fraction(1, 2))

    def test_division_by_zero(self, scalars):
        """Test that dividing by zero raises a library error."""
        with pytest.raises(DivisionByZero):
            scalars.divide(scalars.one, scalars.zero)
        with pytest.raises(ZeroDivisionError):
            scalars.inverse(scalars.zero)

    def test_monomial(self, scalars):
        """Test the decomposition c u^k."""
        assert scalars.monomial(-3 * scalars.u**-2) == (Fraction(-3), -2)
        assert scalars.monomial(scalars.qnum(2)) is None


class TestSpecialization:
    def test_exact_value(self, scalars):
        """Test [2] at q = 2."""
        assert scalars.specialize(scalars.qnum(2), 2) == Fraction(5, 2)

    def test_exact_root(self):
        """Test that u = 3/2 exactly when q = 9/4 and D = 2."""
        assert HALF.specialize(HALF.u, Fraction(9, 4)) == Fraction(3, 2)

    def test_irrational_root(self):
        """Test that u = sqrt(2) is evaluated in floating point."""
        assert HALF.specialize(HALF.u**2, 2) == pytest.approx(2.0)

    def test_pole(self, scalars):
        """Test that 1/(q - 1) has a pole at q = 1."""
        with pytest.raises(PoleAtParameter):
            scalars.specialize(scalars.one / (scalars.u - 1), 1)

    def test_pole_at_irrational_root(self):
        """Test pole detection when u0 = sqrt(2) is irrational."""
        with pytest.raises(PoleAtParameter):
            HALF.specialize(HALF.one / (HALF.u**2 - 2), 2)

    def test_nonpositive_parameter(self, scalars):
        """Test that q0 must be positive."""
        with pytest.raises(ValueError):
            scalars.specialize(scalars.u, 0)

    def test_specialize_matrix(self, scalars):
        """Test the numeric array of a field matrix."""
        matrix = linalg.diagonal([scalars.qnum(2), scalars.u], scalars.domain)
        array = scalars.specialize_matrix(matrix, 2)
        assert array.tolist() == [[2.5, 0.0], [0.0, 2.0]]


class TestRendering:
    @pytest.mark.parametrize(
        "value, expected",
        [
            (SCALARS.zero, "0"),
            (SCALARS.one, "1"),
            (-SCALARS.u, "-u"),
            (SCALARS.u**2 / 2, "u^2/2"),
            (-SCALARS.one / SCALARS.qnum(2), "-u/(u^2 + 1)"),
            (SCALARS.qnum(3), "(u^4 + u^2 + 1)/u^2"),
        ],
    )
    def test_render(self, value, expected):
        """Test canonical strings with coprime integer coefficients."""
        assert SCALARS.render(value) == expected

    @pytest.mark.parametrize(
        "context, value, expected",
        [
            (SCALARS, SCALARS.u**-1, "q^-1"),
            (SCALARS, SCALARS.u, "q"),
            (SCALARS, -2 * SCALARS.u**3, "-2*q^3"),
            (HALF, HALF.u, "q^(1/2)"),
            (HALF, HALF.u**-3, "q^(-3/2)"),
            (SCALARS, SCALARS.element(Fraction(1, 3)), "1/3"),
        ],
    )
    def test_render_q(self, context, value, expected):
        """Test q-exponent rendering of monomials."""
        assert context.render_q(value) == expected

    def test_render_q_non_monomial(self, scalars):
        """Test that sums fall back to the parenthesized canonical form."""
        assert scalars.render_q(scalars.qnum(2)) == "((u^2 + 1)/u)"

    @given(st.integers(min_value=-4, max_value=4), st.integers(min_value=1, max_value=5))
    def test_parse_inverts_render(self, k, n):
        """Test parse(render(x)) == x for ratios of quantum integers."""
        x = SCALARS.u**k * SCALARS.qnum(n) / SCALARS.qnum(n + 1)
        assert SCALARS.parse(SCALARS.render(x)) == x

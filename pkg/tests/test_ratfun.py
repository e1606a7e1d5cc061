"""
Rational function tests
"""

import random
from fractions import Fraction
from math import factorial

import pytest
from modules.errors import DivisionByZero, NotExpandable, ZeroDenominator
from modules.ratfun import (
    MINUS_INFINITY,
    IntPoly,
    RatFun,
    cyclotomic_orders,
    euler,
    expand,
    geom,
    in_cyclotomic_ring,
    pole_at_one,
    psi,
    rat_arith,
    rat_new,
    substitute_power,
)


def random_ratfun(rng: random.Random) -> RatFun:
    """Random element with nonzero constant term downstairs"""
    num = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))])
    den = [rng.choice([-3, -2, -1, 1, 2, 3])] + [rng.randint(-3, 3) for _ in range(rng.randint(0, 3))]
    return RatFun(num, IntPoly(den))


class TestCanonicalForm:
    """Canonical representation tests"""

    def test_common_factor_removed(self):
        """Test common factor removed"""
        f = rat_new(IntPoly([2, 2]), IntPoly([4]))
        assert f == RatFun(IntPoly([1, 1]), IntPoly([2]))

    def test_denominator_positive_leading(self):
        """Test denominator has positive leading coefficient"""
        f = geom(1, 1)
        assert f.den.leading > 0
        assert f.num.coefficients == (0, -1)
        assert f.den.coefficients == (-1, 1)

    def test_zero_denominator(self):
        """Test zero denominator rejected"""
        with pytest.raises(ZeroDenominator):
            RatFun(1, 0)

    def test_zero_function(self):
        """Test zero function"""
        f = RatFun(0, 7)
        assert f.is_zero
        assert f.degree == MINUS_INFINITY
        assert f.degree < -1000

    def test_str_prefers_one_minus(self):
        """Test printing uses 1 - T^j downstairs"""
        assert str(geom(1, 1)) == "(T)/(1 - T)"
        assert str(geom(3, 3)) == "(T^3)/(1 - T^3)"

    def test_to_json(self):
        """Test serialization as ascending arrays"""
        assert psi(1).to_json() == {"numerator": [0, 1], "denominator": [1, -2, 1]}


class TestArithmetic:
    """Field arithmetic tests"""

    def test_division_by_zero(self):
        """Test division by zero"""
        with pytest.raises(DivisionByZero):
            rat_arith(psi(0), RatFun(0), "div")

    def test_unknown_operation(self):
        """Test unknown operation"""
        with pytest.raises(ValueError):
            rat_arith(psi(0), psi(1), "pow")

    def test_round_trips(self):
        """Test (f+g)-g = f and (f*g)/g = f"""
        rng = random.Random(1234)
        for _ in range(30):
            f, g = random_ratfun(rng), random_ratfun(rng)
            assert rat_arith(rat_arith(f, g, "add"), g, "sub") == f
            if not g.is_zero:
                assert rat_arith(rat_arith(f, g, "mul"), g, "div") == f

    def test_sum_of_geometric_pieces(self):
        """Test the excluded-term identity for e=3, p=2"""
        total = geom(1, 3) + geom(2, 3) - geom(4, 6) - geom(2, 6)
        assert total == RatFun(IntPoly([0, 1, 0, 0, 0, 1]), IntPoly([1, 0, 0, 0, 0, 0, -1]))


class TestEulerAndPsi:
    """Euler operator and psi family tests"""

    def test_psi_zero(self):
        """Test psi(0) = T/(1-T)"""
        assert psi(0) == geom(1, 1)

    def test_psi_one(self):
        """Test psi(1) = T/(1-T)^2"""
        assert psi(1) == RatFun(IntPoly([0, 1]), IntPoly([1, -2, 1]))

    def test_psi_two(self):
        """Test psi(2) = (T + T^2)/(1-T)^3"""
        assert psi(2) == RatFun(IntPoly([0, 1, 1]), IntPoly([1, -3, 3, -1]))

    @pytest.mark.parametrize("a", range(9))
    def test_psi_expansion(self, a):
        """Test coefficients of psi(a) are d^a"""
        assert expand(psi(a), 200) == [Fraction(d ** a) if d else Fraction(0) for d in range(201)]

    @pytest.mark.parametrize("a", range(9))
    def test_psi_pole(self, a):
        """Test pole order a+1 and residue (-1)^(a+1) a!"""
        pole = pole_at_one(psi(a))
        assert pole.order == a + 1
        assert pole.leading == (-1) ** (a + 1) * factorial(a)

    def test_euler_composes(self):
        """Test euler(f, s+t) = euler(euler(f, s), t)"""
        rng = random.Random(99)
        for _ in range(10):
            f = random_ratfun(rng)
            s, t = rng.randint(0, 3), rng.randint(0, 3)
            assert euler(f, s + t) == euler(euler(f, s), t)

    def test_euler_scales_coefficients(self):
        """Test euler multiplies the d-th coefficient by d"""
        f = geom(2, 3)
        plain, scaled = expand(f, 12), expand(euler(f), 12)
        assert scaled == [d * c for d, c in enumerate(plain)]


class TestExpansion:
    """Power series expansion tests"""

    def test_geometric(self):
        """Test T/(1-T)"""
        assert expand(geom(1, 1), 4) == [0, 1, 1, 1, 1]

    def test_sparse(self):
        """Test 3T^3/(1-T^6)"""
        f = 3 * geom(3, 6)
        expected = [0] * 10
        expected[3] = expected[9] = 3
        assert expand(f, 9) == expected

    def test_pole_at_zero(self):
        """Test 1/T is not expandable"""
        with pytest.raises(NotExpandable):
            expand(RatFun(IntPoly([1]), IntPoly([0, 1])), 3)

    def test_substitute_power(self):
        """Test T -> T^a spreads coefficients"""
        assert substitute_power(geom(1, 1), 3) == geom(3, 3)
        assert substitute_power(psi(1), 1) == psi(1)
        coefficients = expand(substitute_power(psi(1), 2), 20)
        for i, c in enumerate(coefficients):
            assert c == (i // 2 if i % 2 == 0 else 0)

    def test_expansion_is_linear(self):
        """Test expansion of sums and products"""
        rng = random.Random(7)
        for _ in range(10):
            f, g = random_ratfun(rng), random_ratfun(rng)
            ef, eg = expand(f, 12), expand(g, 12)
            assert expand(f + g, 12) == [a + b for a, b in zip(ef, eg)]
            product = [sum(ef[i] * eg[k - i] for i in range(k + 1)) for k in range(13)]
            assert expand(f * g, 12) == product


class TestPoleAtOne:
    """Local analysis at T=1 tests"""

    def test_geometric(self):
        """Test T/(1-T)"""
        pole = pole_at_one(geom(1, 1))
        assert (pole.order, pole.leading, pole.degree) == (1, -1, 0)

    def test_psi_two(self):
        """Test psi(2)"""
        pole = pole_at_one(psi(2))
        assert (pole.order, pole.leading, pole.degree) == (3, -2, -1)

    def test_polynomial(self):
        """Test T^2 + 1 has no pole"""
        pole = pole_at_one(RatFun(IntPoly([1, 0, 1])))
        assert pole.order == 0
        assert pole.degree == 2

    def test_sum_of_nonnegative_series(self):
        """Test pole order of a sum is the larger order"""
        for a in range(4):
            for b in range(4):
                assert pole_at_one(psi(a) + psi(b)).order == max(a, b) + 1


class TestCyclotomicOrders:
    """Denominator membership tests"""

    def test_orders(self):
        """Test 1 - T^6 splits into orders 1, 2, 3, 6"""
        assert cyclotomic_orders(geom(1, 6), 24) == [1, 2, 3, 6]

    def test_bound(self):
        """Test order beyond the bound"""
        assert cyclotomic_orders(geom(1, 6), 3) is None

    def test_non_cyclotomic(self):
        """Test 1/(2+T) is not in the ring"""
        assert not in_cyclotomic_ring(RatFun(IntPoly([1]), IntPoly([2, 1])), 24)

    def test_content(self):
        """Test a constant denominator other than 1"""
        assert not in_cyclotomic_ring(RatFun(1, 2), 24)
        assert in_cyclotomic_ring(RatFun(IntPoly([0, 1])), 24)

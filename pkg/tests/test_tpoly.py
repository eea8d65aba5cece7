import itertools
import math
from fractions import Fraction

import pytest

from mallows_coloring.tpoly import (ONE, AlgebraicT, NoSolutionError, RatPoly,
                                    T, ZERO, eval_rational, interval_enclosure,
                                    poly_remainder, solve_tuning, t_binomial,
                                    t_factorial, t_int, tuning_poly)


def poly(*coeffs):
    return RatPoly(tuple(Fraction(c) for c in coeffs))


class TestTInt:
    def test_zero_is_empty_sum(self):
        assert t_int(0) == ZERO

    def test_one(self):
        assert t_int(1) == ONE

    def test_three(self):
        assert t_int(3) == poly(1, 1, 1)

    def test_evaluates_to_n_at_one(self):
        assert eval_rational(t_int(3), Fraction(1)) == 3


class TestTFactorial:
    def test_empty_product(self):
        assert t_factorial(0) == ONE

    def test_two(self):
        assert t_factorial(2) == poly(1, 1)

    def test_three(self):
        assert t_factorial(3) == poly(1, 2, 2, 1)

    def test_inversion_generating_function(self):
        # sum over S_n of t^inv equals the t-factorial
        for n in range(8):
            counts = [0] * (n * (n - 1) // 2 + 1)
            for sigma in itertools.permutations(range(n)):
                inv = sum(1 for i in range(n) for j in range(i + 1, n)
                          if sigma[i] > sigma[j])
                counts[inv] += 1
            assert RatPoly(tuple(Fraction(c) for c in counts)) == t_factorial(n)


class TestTBinomial:
    def test_basic(self):
        assert t_binomial(2, 1) == poly(1, 1)
        assert t_binomial(4, 2) == poly(1, 1, 2, 1, 1)

    def test_edge_is_one(self):
        for n in range(8):
            assert t_binomial(n, 0) == ONE
            assert t_binomial(n, n) == ONE

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            t_binomial(3, -1)
        with pytest.raises(ValueError):
            t_binomial(3, 4)

    def test_pascal_recurrence(self):
        for r in range(1, 13):
            for s in range(1, r + 1):
                lhs = t_binomial(r, s)
                rhs = (t_binomial(r - 1, s) if s <= r - 1 else ZERO) \
                    + T ** (r - s) * t_binomial(r - 1, s - 1)
                assert lhs == rhs


class TestTuningPoly:
    def test_5_1(self):
        assert tuning_poly(5, 1) == poly(-1, 3, -1)

    def test_4_2_factors(self):
        assert tuning_poly(4, 2) == poly(1, 1) * poly(-1, 3, -1)

    def test_value_at_one(self):
        for q in range(1, 10):
            for k in range(1, 6):
                assert eval_rational(tuning_poly(q, k), Fraction(1)) \
                    == q * k - 2 * (k + 1)

    def test_order_one_to_order_two_shift(self):
        # multiplying the order-1 polynomial at q by (1+t) gives order 2 at q-1
        for q in range(4, 13):
            assert t_int(2) * tuning_poly(q, 1) == tuning_poly(q - 1, 2)

    def test_rational_evaluation(self):
        assert eval_rational(tuning_poly(3, 1), Fraction(1, 2)) == Fraction(-3, 4)


class TestPolyRemainder:
    def test_self_is_zero(self):
        p = poly(-1, 3, -1)
        assert poly_remainder(p, p) == ZERO

    def test_multiple_reduces_to_zero(self):
        diff = 25 * t_int(3) - 20 * t_int(2) ** 2
        assert diff == 5 * poly(1, -3, 1)
        assert poly_remainder(diff, poly(1, -3, 1)) == ZERO

    def test_lower_degree_unchanged(self):
        a = poly(2, 7)
        assert poly_remainder(a, poly(1, 0, 1)) == a

    def test_rejects_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            poly_remainder(ONE, ZERO)

    def test_divmod_roundtrip(self):
        a = poly(3, -2, 0, 5, 1)
        p = poly(1, 1, 2)
        quot, rem = divmod(a, p)
        assert quot * p + rem == a
        assert rem.degree < p.degree


class TestSolveTuning:
    def test_5_1_matches_radical(self):
        root = solve_tuning(5, 1)
        scale = 10**35
        sqrt5 = math.isqrt(5 * scale * scale)
        ref = Fraction(3 * scale - sqrt5, 2 * scale)
        assert abs(root.midpoint - ref) < Fraction(2, 10**30)

    def test_4_2_same_root_as_5_1(self):
        a = solve_tuning(5, 1)
        b = solve_tuning(4, 2)
        assert abs(a.midpoint - b.midpoint) < Fraction(2, 10**30)

    def test_3_3_value(self):
        root = solve_tuning(3, 3)
        # quartic root; reciprocal-sum form: t + 1/t = (1 + sqrt 13)/2
        t = root.midpoint
        y = t + 1 / t
        assert abs(y * y - y - 3) < Fraction(1, 10**25)
        assert abs(root.to_float() - 0.5806918319929524) < 1e-12

    def test_rejects_inadmissible(self):
        for q, k in ((4, 1), (3, 1), (3, 2), (2, 5), (1, 1)):
            with pytest.raises(NoSolutionError):
                solve_tuning(q, k)

    def test_boundary_pair_rejected(self):
        # qk == 2(k+1) exactly
        with pytest.raises(NoSolutionError):
            solve_tuning(4, 1)
        with pytest.raises(NoSolutionError):
            solve_tuning(3, 2)

    def test_interval_invariants(self):
        root = solve_tuning(3, 4, Fraction(1, 10**12))
        assert 0 < root.lo < root.hi < 1
        assert root.hi - root.lo <= Fraction(1, 10**12)
        slo = root.poly.evaluate(root.lo)
        shi = root.poly.evaluate(root.hi)
        assert (slo < 0) != (shi < 0)

    def test_root_above_reciprocal_bound(self):
        # tuned parameter always exceeds 1/(q-1), checked at the low endpoint
        for q, k in ((5, 1), (4, 2), (3, 3), (6, 1), (3, 5), (7, 2)):
            root = solve_tuning(q, k)
            assert root.lo > Fraction(1, q - 1)

    def test_refine_halves_width(self):
        root = solve_tuning(5, 1, Fraction(1, 2**10))
        tighter = root.refine(Fraction(1, 2**40))
        assert tighter.hi - tighter.lo <= Fraction(1, 2**40)
        assert root.lo <= tighter.lo < tighter.hi <= root.hi


class TestAlgebraicT:
    def test_validates_sign_change(self):
        p = tuning_poly(5, 1)
        with pytest.raises(ValueError):
            AlgebraicT(5, 1, p, Fraction(1, 10), Fraction(2, 10), Fraction(1))

    def test_enclosure_contains_values(self):
        p = poly(-1, 3, -1)
        lo, hi = interval_enclosure(p, Fraction(1, 4), Fraction(1, 2))
        for x in (Fraction(1, 4), Fraction(3, 8), Fraction(1, 2)):
            assert lo <= p.evaluate(x) <= hi

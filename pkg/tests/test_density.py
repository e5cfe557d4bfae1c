from fractions import Fraction

import pytest
from mpmath import mp

from gammalattice import (
    BoundVariant,
    bivariate_bound,
    bivariate_min_sum,
    bivariate_shifted_bound,
    density_grid,
    fixed_order_bound,
    fixed_order_shifted_bound,
    prior_univariate_bound,
)


class TestPriorBound:
    def test_clamped_to_zero(self):
        bound = prior_univariate_bound(4)
        assert bound.value == 0
        assert bound.exact
        assert bound.branch == "clamped-zero"
        # sqrt(6) - 5/2 < 0 but sqrt(7) - 5/2 > 0
        assert prior_univariate_bound(6).value == 0
        assert prior_univariate_bound(7).value > 0

    def test_perfect_square(self):
        bound = prior_univariate_bound(25)
        assert bound.value == Fraction(1, 10)
        assert bound.exact
        assert bound.branch == "square-root-exact"

    def test_non_square_high_precision(self):
        bound = prior_univariate_bound(7, digits=50)
        assert not bound.exact
        # frozen from (sqrt(7) - 5/2)/7 at 50 digits
        with mp.workdps(60):
            reference = (mp.sqrt(7) - mp.mpf(5) / 2) / 7
            assert abs(bound.value - reference) < mp.mpf("1e-45")
            assert abs(bound.value - mp.mpf("0.0208216158663700843573736790913")) < mp.mpf("1e-25")

    def test_validation(self):
        with pytest.raises(ValueError):
            prior_univariate_bound(0)


class TestFixedOrderBounds:
    def test_plain_examples(self):
        assert fixed_order_bound(2, 1).value == 0
        assert fixed_order_bound(3, 10).value == Fraction(4, 5)
        assert fixed_order_bound(5, 3).value == 0
        assert fixed_order_bound(5, 3).branch == "M<=n-1"

    def test_shifted_examples(self):
        assert fixed_order_shifted_bound(1, 0).value == 0
        assert fixed_order_shifted_bound(2, 9).value == Fraction(4, 5)
        assert fixed_order_shifted_bound(4, 2).value == 0
        assert fixed_order_shifted_bound(4, 2).branch == "M+1<=n"

    def test_validation(self):
        with pytest.raises(ValueError):
            fixed_order_bound(1, 5)
        with pytest.raises(ValueError):
            fixed_order_bound(2, 0)
        with pytest.raises(ValueError):
            fixed_order_shifted_bound(0, 5)
        with pytest.raises(ValueError):
            fixed_order_shifted_bound(1, -1)

    def test_monotone_in_window_size(self):
        for n in range(2, 7):
            values = [fixed_order_bound(n, M).value for M in range(1, 31)]
            assert all(a <= b for a, b in zip(values, values[1:]))
        for n in range(1, 7):
            values = [fixed_order_shifted_bound(n, M).value for M in range(31)]
            assert all(a <= b for a, b in zip(values, values[1:]))


class TestBivariateBounds:
    def test_plain_examples(self):
        assert bivariate_bound(10, 10).value == Fraction(1, 2)
        assert bivariate_bound(10, 9).value == Fraction(4, 9)
        assert bivariate_bound(50, 10).value == Fraction(9, 98)

    def test_shifted_examples(self):
        assert bivariate_shifted_bound(4, 2).value == Fraction(1, 4)
        assert bivariate_shifted_bound(1, 0).value == 0

    def test_branch_continuity(self):
        # at M = N-1 both closed-form branches coincide
        for N in range(2, 60):
            M = N - 1
            low = Fraction(M - 1, 2 * (N - 1))
            high = 1 - Fraction(N, 2 * M) if M >= 1 else None
            if M >= 1:
                assert low == high
                assert bivariate_bound(N, M).value == low
        # at M + 1 = N both shifted branches coincide
        for N in range(1, 60):
            M = N - 1
            low = Fraction(M, 2 * N)
            high = 1 - Fraction(N + 1, 2 * (M + 1))
            assert low == high
            assert bivariate_shifted_bound(N, M).value == low

    def test_oracle_examples(self):
        assert bivariate_min_sum("plain", 10, 10) == Fraction(1, 2)
        assert bivariate_min_sum("shifted", 4, 2) == Fraction(1, 4)
        assert bivariate_min_sum("plain", 2, 1) == 0

    def test_closed_form_equals_oracle_moderate_grid(self):
        for N in range(2, 41):
            for M in range(1, 41):
                assert bivariate_bound(N, M).value == bivariate_min_sum("plain", N, M)
        for N in range(1, 41):
            for M in range(41):
                assert bivariate_shifted_bound(N, M).value == bivariate_min_sum(
                    "shifted", N, M
                )

    def test_values_within_unit_interval(self):
        samples = [bivariate_bound(N, M).value for N in (2, 7, 30) for M in (1, 6, 50)]
        samples += [
            bivariate_shifted_bound(N, M).value for N in (1, 7, 30) for M in (0, 6, 50)
        ]
        samples += [fixed_order_bound(n, M).value for n in (2, 9) for M in (1, 40)]
        samples += [prior_univariate_bound(N).value for N in (1, 25, 169)]
        assert all(0 <= value <= 1 for value in samples)

    def test_diagonal_approaches_one_half(self):
        for N in (10, 100, 200):
            value = bivariate_bound(N, N).value
            assert abs(value - Fraction(1, 2)) <= Fraction(1, 2 * (N - 1))
            assert value == Fraction(1, 2)

    def test_nonincreasing_in_order_window(self):
        for M in (1, 5, 20):
            values = [bivariate_bound(N, M).value for N in range(2, 50)]
            assert all(a >= b for a, b in zip(values, values[1:]))

    def test_degenerate_cells_rejected(self):
        with pytest.raises(ValueError):
            bivariate_bound(1, 5)
        with pytest.raises(ValueError):
            bivariate_bound(3, 0)
        with pytest.raises(ValueError):
            bivariate_shifted_bound(0, 3)
        with pytest.raises(ValueError):
            bivariate_min_sum("plain", 1, 1)
        with pytest.raises(ValueError):
            bivariate_min_sum("diagonal", 3, 3)


class TestDensityGrid:
    def test_three_by_three(self):
        rows = density_grid(BoundVariant.BIVARIATE, range(4, 7), range(2, 5))
        assert len(rows) == 9
        for row in rows:
            assert row.oracle == row.bound.value

    def test_empty_ranges(self):
        assert density_grid(BoundVariant.BIVARIATE, [], []) == []
        assert density_grid(BoundVariant.PRIOR, []) == []

    def test_sorted_by_coordinates(self):
        rows = density_grid(BoundVariant.FIXED_N, [4, 2], [9, 1])
        coords = [(r.bound.params["n"], r.bound.params["M"]) for r in rows]
        assert coords == [(2, 1), (2, 9), (4, 1), (4, 9)]

    def test_prior_rows(self):
        rows = density_grid(BoundVariant.PRIOR, [4, 25, 7])
        assert [r.bound.params["N"] for r in rows] == [4, 7, 25]
        assert rows[2].bound.value == Fraction(1, 10)
        assert rows[0].oracle is None

    def test_oracle_can_be_skipped(self):
        rows = density_grid(
            BoundVariant.BIVARIATE_SHIFTED, [3], [1], include_oracle=False
        )
        assert rows[0].oracle is None

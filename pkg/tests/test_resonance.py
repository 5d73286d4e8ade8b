"""Resonance, quasi-resonance, and the closed-form coarse bounds."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resonax.errors import DimensionMismatchError, InadmissibleActionError, InvalidInputError
from resonax.resonance import (
    exponents_up_to_degree,
    is_cartan_linear,
    nonneg_weight_bound,
    quasi_circular_bound,
    quasi_resonance,
    resonance,
)
from resonax.weights import WeightMatrix, check_admissible


def random_admissible(rng, count, max_n=4, max_r=2, bound=3):
    out = []
    while len(out) < count:
        n, r = rng.randint(1, max_n), rng.randint(1, max_r)
        matrix = WeightMatrix(tuple(tuple(rng.randint(-bound, bound) for _ in range(r)) for _ in range(n)))
        if check_admissible(matrix).admissible:
            out.append(matrix)
    return out


def test_exponent_stream_is_lexicographic_and_complete():
    exps = list(exponents_up_to_degree(2, 3))
    assert exps == sorted(exps)
    assert len(exps) == math.comb(2 + 3, 2)
    assert len(set(exps)) == len(exps)
    assert all(sum(e) <= 3 for e in exps)


class TestResonance:
    def test_weights_1_2(self):
        report = resonance(WeightMatrix(((1,), (2,))))
        assert report.sets == (((1, 0),), ((0, 1), (2, 0)))
        assert report.orders == (1, 2)
        assert report.order == 2

    def test_weights_2_3_is_order_one(self):
        report = resonance(WeightMatrix(((2,), (3,))))
        assert report.orders == (1, 1)
        assert report.order == 1

    def test_identity_weights(self):
        report = resonance(WeightMatrix(((1, 0), (0, 1))))
        assert report.orders == (1, 1)
        assert report.order == 1

    def test_each_coordinate_in_own_set(self):
        # e_i always solves alpha^T A = a_i, so mu_i >= 1
        report = resonance(WeightMatrix(((2, -1), (1, 1), (0, 1))))
        for i, basis in enumerate(report.sets):
            e_i = tuple(1 if j == i else 0 for j in range(3))
            assert e_i in basis
        assert all(mu >= 1 for mu in report.orders)

    def test_linear_characters_are_distinct_rows(self):
        report = resonance(WeightMatrix(((1,), (1,), (2,))))
        assert report.linear_characters == ((1,), (2,))


class TestQuasiResonance:
    def test_pair_1_2(self):
        report = quasi_resonance(WeightMatrix(((1,), (2,))), WeightMatrix(((1,), (2,))))
        assert report.orders == (2, 4)
        assert report.order == 4
        assert report.target_orders == (1, 2)
        assert report.sets[0] == ((0,), (1,), (2,))

    def test_ball_to_cubic_shear_weights(self):
        report = quasi_resonance(WeightMatrix(((1,), (1,))), WeightMatrix(((1,), (3,))))
        assert report.orders == (1, 3)

    def test_pair_2_3(self):
        report = quasi_resonance(WeightMatrix(((2,), (3,))), WeightMatrix(((2,), (3,))))
        assert report.orders == (1, 1)
        assert report.order == 1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            quasi_resonance(WeightMatrix(((1,), (2,))), WeightMatrix(((1,), (2,), (3,))))

    def test_inadmissible_source(self):
        with pytest.raises(InadmissibleActionError):
            quasi_resonance(WeightMatrix(((1,), (-1,))), WeightMatrix(((1,), (2,))))

    def test_self_pair_dominates_resonance(self):
        # nu_i >= mu_i when the target is the source itself
        for matrix in random_admissible(random.Random(11), 40):
            mus = resonance(matrix).orders
            nus = quasi_resonance(matrix, matrix).orders
            assert all(nu >= mu for nu, mu in zip(nus, mus)), matrix.rows

    def test_cartan_order_one(self):
        for matrix in random_admissible(random.Random(13), 60):
            if resonance(matrix).order == 1:
                assert quasi_resonance(matrix, matrix).order == 1, matrix.rows


class TestCartanPredicate:
    def test_true_for_2_3(self):
        flag, why = is_cartan_linear(WeightMatrix(((2,), (3,))), WeightMatrix(((2,), (3,))))
        assert flag
        assert "linear" in why

    def test_false_for_1_2(self):
        flag, _ = is_cartan_linear(WeightMatrix(((1,), (2,))), WeightMatrix(((1,), (2,))))
        assert not flag

    def test_true_for_identity(self):
        flag, _ = is_cartan_linear(WeightMatrix(((1, 0), (0, 1))), WeightMatrix(((1, 0), (0, 1))))
        assert flag


class TestQuasiCircularBound:
    def test_exact_meets_coarse_at_1_2(self):
        report = quasi_circular_bound((1, 2), (1, 2))
        assert report.coarse == Fraction(4)
        assert report.exact == 4

    def test_coarse_loose_at_2_3(self):
        report = quasi_circular_bound((2, 3), (2, 3))
        assert report.coarse == Fraction(9, 4)
        assert report.coarse_degree == 2
        assert report.exact == 1

    def test_circular_case(self):
        report = quasi_circular_bound((1, 1), (1, 1))
        assert report.coarse == Fraction(1)
        assert report.exact == 1

    def test_unsorted_input_records_permutation(self):
        report = quasi_circular_bound((3, 1, 2), (2, 2, 1))
        assert report.permutation == (1, 2, 0)
        assert report.coarse == Fraction(3 * 2, 1 * 1)

    @pytest.mark.parametrize("bad", [(0, 1), (-2, 3), ()])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(InvalidInputError):
            quasi_circular_bound(bad, (1, 1) if bad else ())

    def test_dominance_randomized(self):
        rng = random.Random(101)
        for _ in range(120):
            n = rng.randint(1, 4)
            m = tuple(rng.randint(1, 6) for _ in range(n))
            mp = tuple(rng.randint(1, 6) for _ in range(n))
            report = quasi_circular_bound(m, mp)
            assert report.exact <= report.coarse, (m, mp)


class TestNonnegativeBound:
    def test_bound_attained(self):
        report = nonneg_weight_bound(WeightMatrix(((1,), (3,))))
        assert report.coarse == (Fraction(3), Fraction(9))
        assert report.exact == (3, 9)

    def test_bound_loose(self):
        report = nonneg_weight_bound(WeightMatrix(((2,), (3,))))
        assert report.coarse == (Fraction(3, 2), Fraction(9, 4))
        assert report.exact == (1, 1)

    def test_identity(self):
        report = nonneg_weight_bound(WeightMatrix(((1, 0), (0, 1))))
        assert report.coarse == (Fraction(1), Fraction(1))
        assert report.exact == (1, 1)

    def test_rejects_negative_entry(self):
        with pytest.raises(InvalidInputError):
            nonneg_weight_bound(WeightMatrix(((1,), (-1,))))

    def test_rejects_zero_row(self):
        with pytest.raises(InvalidInputError):
            nonneg_weight_bound(WeightMatrix(((0, 0), (1, 2))))

    def test_dominance_randomized(self):
        rng = random.Random(202)
        done = 0
        while done < 100:
            n, r = rng.randint(1, 3), rng.randint(1, 2)
            rows = tuple(tuple(rng.randint(0, 4) for _ in range(r)) for _ in range(n))
            if any(all(x == 0 for x in row) for row in rows):
                continue
            report = nonneg_weight_bound(WeightMatrix(rows))
            assert all(e <= c for e, c in zip(report.exact, report.coarse)), rows
            done += 1


admissible_pairs = st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=1).map(tuple), min_size=n, max_size=n),
        st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=1).map(tuple), min_size=n, max_size=n),
    )
)


@given(admissible_pairs)
@settings(max_examples=150, deadline=None)
def test_quasi_resonance_bounds_are_monotone_in_target_order(pair):
    source = WeightMatrix(tuple(pair[0]))
    target = WeightMatrix(tuple(pair[1]))
    if not (check_admissible(source).admissible and check_admissible(target).admissible):
        return
    report = quasi_resonance(source, target)
    # K_i grows with mu'_i, so nu_i must be monotone in the target order
    for (mu_a, nu_a) in zip(report.target_orders, report.orders):
        for (mu_b, nu_b) in zip(report.target_orders, report.orders):
            if mu_a <= mu_b:
                assert nu_a <= nu_b

"""Monte Carlo verification layer: determinism, calibration, and the three checks."""

import itertools
import math
from fractions import Fraction
from math import factorial

import pytest

from resonax import (
    DegenerateDomainError,
    GaussianRational,
    InvalidInputError,
    MapImage,
    PolyMap,
    Polydisc,
    Polynomial,
    UnitBall,
    WeightMatrix,
    ball_monomial_norm,
    ball_norm_coefficient,
    check_change_of_variables,
    check_invariance,
    check_orthogonality,
    mc_inner_product,
    polydisc_monomial_norm,
    sample_domain,
    shear_pair,
)

BALL2 = UnitBall(2)
Z1 = Polynomial.monomial((1, 0))
Z2 = Polynomial.monomial((0, 1))
ONE2 = Polynomial.constant(1, 2)


def exponents_up_to(nvars, max_degree):
    ranges = [range(max_degree + 1)] * nvars
    return [e for e in itertools.product(*ranges) if sum(e) <= max_degree]


class TestDeterminism:
    def test_same_seed_is_bit_identical(self):
        a = mc_inner_product(BALL2, Z1, Z1, seed=7, count=50_000)
        b = mc_inner_product(BALL2, Z1, Z1, seed=7, count=50_000)
        assert a.value == b.value
        assert a.stderr == b.stderr
        assert a.accepted == b.accepted

    def test_different_seed_differs(self):
        a = mc_inner_product(BALL2, Z1, Z1, seed=7, count=50_000)
        b = mc_inner_product(BALL2, Z1, Z1, seed=8, count=50_000)
        assert a.value != b.value

    def test_seed_is_reduced_mod_2_64(self):
        a = mc_inner_product(BALL2, Z1, Z1, seed=-1, count=20_000)
        b = mc_inner_product(BALL2, Z1, Z1, seed=2**64 - 1, count=20_000)
        assert a.value == b.value
        assert a.seed == b.seed == 2**64 - 1

    @pytest.mark.parametrize("bad", [True, 1.5, "42"])
    def test_non_integer_seed_rejected(self, bad):
        with pytest.raises(InvalidInputError):
            mc_inner_product(BALL2, Z1, Z1, seed=bad, count=1000)

    def test_sample_domain_metadata(self):
        batch = sample_domain(BALL2, seed=3, count=40_000)
        assert batch.samples == 40_000
        assert batch.accepted == batch.points.shape[0]
        assert batch.acceptance_ratio == batch.accepted / 40_000
        assert batch.box_volume == pytest.approx(math.pi**2)
        # the ball fills half of its enclosing polydisc
        assert batch.acceptance_ratio == pytest.approx(0.5, abs=0.01)


class TestExactNorms:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_ball_coefficient_matches_closed_form(self, n):
        for alpha in exponents_up_to(n, 4):
            expected = Fraction(
                math.prod(factorial(a) for a in alpha), factorial(n + sum(alpha))
            )
            assert ball_norm_coefficient(alpha) == expected

    def test_ball_norm_examples(self):
        # constants: the volume of the ball itself
        assert ball_monomial_norm((0, 0)) == pytest.approx(math.pi**2 / 2)
        assert ball_monomial_norm((0, 0, 0)) == pytest.approx(math.pi**3 / 6)
        # <z1, z1> on the two-ball
        assert ball_monomial_norm((1, 0)) == pytest.approx(math.pi**2 / 6)

    def test_ball_coefficient_rejects_bad_exponents(self):
        with pytest.raises(InvalidInputError):
            ball_norm_coefficient(())
        with pytest.raises(InvalidInputError):
            ball_norm_coefficient((1, -1))

    def test_polydisc_norm(self):
        assert polydisc_monomial_norm((0,), (1.0,)) == pytest.approx(math.pi)
        assert polydisc_monomial_norm((1, 0), (1.0, 1.0)) == pytest.approx(
            math.pi / 2 * math.pi
        )
        assert polydisc_monomial_norm((2,), (2.0,)) == pytest.approx(
            math.pi * 2.0**6 / 3
        )
        with pytest.raises(InvalidInputError):
            polydisc_monomial_norm((1,), (0.0,))

    @pytest.mark.parametrize("n,count", [(2, 200_000), (3, 300_000)])
    def test_mc_matches_ball_norms(self, n, count):
        """Estimated squared monomial norms agree with the beta-integral values."""
        ball = UnitBall(n)
        for alpha in exponents_up_to(n, 3):
            mono = Polynomial.monomial(alpha)
            est = mc_inner_product(ball, mono, mono, seed=1234, count=count)
            exact = ball_monomial_norm(alpha)
            assert abs(est.value - exact) <= 4.0 * est.stderr, (alpha, est.value, exact)

    def test_mc_matches_polydisc_norm(self):
        disc = Polydisc((1.0, 1.0))
        est = mc_inner_product(disc, Z1, Z1, seed=5, count=100_000)
        assert abs(est.value - math.pi**2 / 2) <= 4.0 * est.stderr

    def test_constant_on_polydisc_has_zero_stderr(self):
        # nothing is rejected and the integrand is constant, so there is no variance
        est = mc_inner_product(Polydisc((1.0, 2.0)), ONE2, ONE2, seed=9, count=10_000)
        assert est.stderr == 0.0
        assert est.value == pytest.approx(math.pi**2 * 4.0)
        assert est.acceptance_ratio == 1.0


class TestOrthogonality:
    def test_ball_distinct_characters(self):
        report = check_orthogonality(
            BALL2, WeightMatrix(((1,), (1,))), max_degree=3, seed=42, count=100_000
        )
        assert report.passed
        assert report.worst_zscore < 4.0
        # characters are total degrees here: pairs must have distinct degree
        for pair in report.pairs:
            assert sum(pair.p_exponent) != sum(pair.q_exponent)
        assert report.expected_false_failures == pytest.approx(
            len(report.pairs) * math.erfc(4.0 / math.sqrt(2.0))
        )

    def test_constant_monomial_participates(self):
        report = check_orthogonality(
            BALL2, WeightMatrix(((1,), (1,))), max_degree=2, seed=11, count=50_000
        )
        assert any(pair.p_exponent == (0, 0) for pair in report.pairs)

    def test_full_torus_polydisc(self):
        # identity weights: every pair of distinct monomials is tested
        report = check_orthogonality(
            Polydisc((1.0, 1.0)),
            WeightMatrix(((1, 0), (0, 1))),
            max_degree=2,
            seed=4,
            count=50_000,
        )
        assert report.passed
        n_monomials = len(exponents_up_to(2, 2))
        assert len(report.pairs) == n_monomials * (n_monomials - 1) // 2

    def test_shear_image_orthogonality(self):
        forward, inverse = shear_pair(2)
        image = MapImage(BALL2, forward, inverse)
        report = check_orthogonality(
            image, WeightMatrix(((1,), (2,))), max_degree=3, seed=6, count=100_000
        )
        assert report.passed

    def test_report_json_shape(self):
        report = check_orthogonality(
            BALL2, WeightMatrix(((1,), (1,))), max_degree=1, seed=2, count=10_000
        )
        data = report.to_json()
        assert data["pass"] is True
        assert data["max_degree"] == 1
        assert "expected_false_failures" in data
        assert all("zscore" in p for p in data["pairs"])


class TestInvariance:
    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_shear_image_is_invariant_under_its_weights(self, k):
        forward, inverse = shear_pair(k)
        image = MapImage(BALL2, forward, inverse)
        report = check_invariance(
            image, WeightMatrix(((1,), (k,))), seed=21, count=50_000
        )
        assert report.passed
        assert report.violations == 0
        assert report.checked > 0

    def test_ball_full_torus(self):
        report = check_invariance(
            BALL2, WeightMatrix(((1, 0), (0, 1))), seed=8, count=50_000
        )
        assert report.passed

    def test_wrong_weights_produce_witnesses(self):
        forward, inverse = shear_pair(2)
        image = MapImage(BALL2, forward, inverse)
        report = check_invariance(
            image, WeightMatrix(((1,), (3,))), seed=21, count=50_000
        )
        assert not report.passed
        assert report.violations > 0
        assert 0 < len(report.witnesses) <= 10
        witness = report.witnesses[0]
        assert witness.defining_value >= 1.0
        # the witness data is self-consistent: rotating the point by the
        # recorded parameters reproduces the transformed point
        phase1 = complex(math.cos(2 * math.pi * witness.parameters[0]),
                         math.sin(2 * math.pi * witness.parameters[0]))
        assert witness.transformed[0] == pytest.approx(witness.point[0] * phase1)

    def test_dimension_mismatch(self):
        from resonax import DimensionMismatchError

        with pytest.raises(DimensionMismatchError):
            check_invariance(UnitBall(3), WeightMatrix(((1,), (1,))), seed=1, count=100)


class TestChangeOfVariables:
    def test_identity_map_sides_coincide(self):
        ident = PolyMap.identity(2)
        report = check_change_of_variables(
            BALL2, ident, ident, Z1, Z2, seed=3, count=20_000
        )
        assert report.passed
        assert report.difference == 0.0

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_volume_preserved_through_shear(self, k):
        forward, inverse = shear_pair(k)
        report = check_change_of_variables(
            BALL2, forward, inverse, ONE2, ONE2, seed=17, count=100_000
        )
        assert report.passed
        # the shear is unimodular, so both sides estimate the ball volume
        assert abs(report.lhs.value - math.pi**2 / 2) <= 5.0 * report.lhs.stderr
        assert report.tolerance == 4.0 * (report.lhs.stderr + report.rhs.stderr)

    def test_nontrivial_observables(self):
        forward, inverse = shear_pair(3)
        report = check_change_of_variables(
            BALL2, forward, inverse, Z2, Polynomial.monomial((3, 0)), seed=42, count=200_000
        )
        assert report.passed

    def test_bad_inverse_rejected(self):
        from resonax import MissingInverseError

        forward, _ = shear_pair(2)
        wrong = PolyMap([Z1, Z2 - Polynomial.monomial((3, 0))])
        with pytest.raises(MissingInverseError):
            check_change_of_variables(BALL2, forward, wrong, Z1, Z1, seed=1, count=100)

    def test_report_json_shape(self):
        ident = PolyMap.identity(2)
        data = check_change_of_variables(
            BALL2, ident, ident, ONE2, ONE2, seed=1, count=5_000
        ).to_json()
        assert data["pass"] is True
        assert set(data) == {
            "pass", "lhs", "rhs", "difference", "tolerance", "samples", "seed"
        }


class TestDegenerateDomains:
    def test_high_dimensional_ball_aborts(self):
        # acceptance ratio ~ 1/12! is far below the 1e-6 floor
        with pytest.raises(DegenerateDomainError):
            sample_domain(UnitBall(12), seed=0, count=5_000_000)

    def test_thin_but_workable_domain_is_fine(self):
        batch = sample_domain(UnitBall(5), seed=0, count=50_000)
        assert batch.accepted > 0

"""Monte Carlo verification of Hilbert-space identities on bounded domains.

Integrals over a domain D are estimated by rejection sampling from the
enclosing polydisc: with N candidate draws x_1..x_N and values g(x_j) for the
accepted points (rejected points contribute zero),

    integral over D of g dV  ~  vol(box) * (1/N) * sum_j g(x_j) * 1_D(x_j)

and the standard error comes from the per-candidate sample variance of the
same summands, component-wise in the real and imaginary parts.  All draws use
the counter-based chunk protocol in rng.py, so results are bit-reproducible
for a fixed (seed, count) regardless of scheduling.

`count` always means candidate draws, not accepted samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Sequence

import numpy as np

from .domains import DomainSpec, MapImage
from .errors import (
    DegenerateDomainError,
    DimensionMismatchError,
    InvalidInputError,
    MissingInverseError,
)
from .poly import Polynomial, PolyMap, jacobian_det
from .resonance import exponents_up_to_degree
from .rng import CHUNK_SIZE, chunk_points
from .weights import WeightMatrix

MIN_ACCEPTANCE_RATIO = 1e-6
INVARIANCE_SLACK = 1e-9

# two-sided tail mass of the standard normal beyond 4 sigma; used to report
# the expected false-failure rate of a batch of 4-sigma tests
FOUR_SIGMA_TAIL = math.erfc(4.0 / math.sqrt(2.0))


def _mask64(seed: int) -> int:
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise InvalidInputError("seed must be an integer")
    return seed & ((1 << 64) - 1)


@dataclass(frozen=True)
class MCEstimate:
    """One Monte Carlo integral estimate with its componentwise standard error."""

    value: complex
    stderr: float
    stderr_re: float
    stderr_im: float
    samples: int
    accepted: int
    acceptance_ratio: float
    box_volume: float
    seed: int

    def to_json(self) -> dict[str, Any]:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "stderr": self.stderr,
            "stderr_re": self.stderr_re,
            "stderr_im": self.stderr_im,
            "samples": self.samples,
            "accepted": self.accepted,
            "acceptance_ratio": self.acceptance_ratio,
            "box_volume": self.box_volume,
            "seed": self.seed,
        }


def _stream(
    spec: DomainSpec,
    seed: int,
    count: int,
    width: int,
    values: Callable[[np.ndarray], np.ndarray],
    extra_columns: int = 0,
    on_accepted: Callable[[np.ndarray, np.ndarray], None] | None = None,
):
    """Chunked accumulation of sums, squared sums and acceptance counts.

    values(points) returns an (m, width) complex array for accepted points;
    on_accepted(points, extras) sees each accepted batch (chunk order).
    Returns (sums, sq_re, sq_im, accepted).
    """
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise InvalidInputError("count must be a positive integer")
    seed = _mask64(seed)
    radii = spec.bounding_radii()
    sums = np.zeros(width, dtype=np.complex128)
    sq_re = np.zeros(width, dtype=np.float64)
    sq_im = np.zeros(width, dtype=np.float64)
    accepted = 0
    done = 0
    chunk_index = 0
    while done < count:
        take = min(CHUNK_SIZE, count - done)
        points, extras = chunk_points(radii, seed, chunk_index, extra_columns)
        points = points[:take]
        extras = extras[:take]
        mask = spec.contains(points)
        inside = points[mask]
        accepted += int(inside.shape[0])
        if inside.shape[0]:
            if width:
                vals = np.atleast_2d(np.asarray(values(inside), dtype=np.complex128))
                if vals.shape != (inside.shape[0], width):
                    vals = vals.reshape(inside.shape[0], width)
                sums += vals.sum(axis=0)
                sq_re += np.sum(vals.real**2, axis=0)
                sq_im += np.sum(vals.imag**2, axis=0)
            if on_accepted is not None:
                on_accepted(inside, extras[mask])
        done += take
        chunk_index += 1
        if done >= (1 << 20) and accepted < done * MIN_ACCEPTANCE_RATIO:
            break
    ratio = accepted / done
    if ratio < MIN_ACCEPTANCE_RATIO:
        raise DegenerateDomainError(
            f"acceptance ratio {ratio:.3g} after {done} candidates is below "
            f"{MIN_ACCEPTANCE_RATIO:g}; the domain spec is degenerate relative "
            f"to its enclosing polydisc (radii {tuple(radii)})"
        )
    return sums, sq_re, sq_im, accepted


def _estimates(spec, seed, count, sums, sq_re, sq_im, accepted) -> list[MCEstimate]:
    volume = spec.box_volume()
    n_f = float(count)
    out = []
    for k in range(sums.shape[0]):
        mean = sums[k] / n_f
        var_re = max(sq_re[k] - n_f * mean.real**2, 0.0) / max(n_f - 1.0, 1.0)
        var_im = max(sq_im[k] - n_f * mean.imag**2, 0.0) / max(n_f - 1.0, 1.0)
        se_re = volume * math.sqrt(var_re / n_f)
        se_im = volume * math.sqrt(var_im / n_f)
        out.append(
            MCEstimate(
                value=complex(volume * mean),
                stderr=math.hypot(se_re, se_im),
                stderr_re=se_re,
                stderr_im=se_im,
                samples=count,
                accepted=accepted,
                acceptance_ratio=accepted / count,
                box_volume=volume,
                seed=seed,
            )
        )
    return out


@dataclass(frozen=True)
class SampleBatch:
    points: np.ndarray
    samples: int
    accepted: int
    acceptance_ratio: float
    box_volume: float
    seed: int


def sample_domain(spec: DomainSpec, seed: int, count: int) -> SampleBatch:
    """Uniform points of the domain by rejection from its enclosing polydisc."""
    collected: list[np.ndarray] = []
    _, _, _, accepted = _stream(
        spec, seed, count, width=0, values=lambda pts: pts, on_accepted=lambda pts, _: collected.append(pts)
    )
    points = np.concatenate(collected, axis=0) if collected else np.zeros((0, spec.n), dtype=np.complex128)
    return SampleBatch(
        points=points,
        samples=count,
        accepted=accepted,
        acceptance_ratio=accepted / count,
        box_volume=spec.box_volume(),
        seed=_mask64(seed),
    )


def mc_inner_product(
    spec: DomainSpec, p: Polynomial, q: Polynomial, seed: int, count: int
) -> MCEstimate:
    """Estimate the weighted-volume pairing integral of p against conj(q) over the domain."""
    if p.nvars != spec.n or q.nvars != spec.n:
        raise DimensionMismatchError(
            f"polynomials on {p.nvars}/{q.nvars} variables against a domain in dimension {spec.n}"
        )

    def values(points: np.ndarray) -> np.ndarray:
        return (p.evaluate_array(points) * np.conj(q.evaluate_array(points)))[:, None]

    sums, sq_re, sq_im, accepted = _stream(spec, seed, count, 1, values)
    return _estimates(spec, _mask64(seed), count, sums, sq_re, sq_im, accepted)[0]


# ---------------------------------------------------------------------------
# exact reference norms


def ball_norm_coefficient(alpha: Sequence[int]) -> Fraction:
    """Rational part of the squared monomial norm on the unit ball.

    The norm is this coefficient times pi^n.  Computed by integrating out one
    coordinate at a time (each step is a one-dimensional beta integral), which
    is independent of the closed-form factorial expression and is used to
    cross-check it.
    """
    alpha = tuple(int(a) for a in alpha)
    if not alpha or any(a < 0 for a in alpha):
        raise InvalidInputError("exponent must be a nonempty tuple of nonnegative integers")
    coefficient = Fraction(1)
    total = 0
    for m, a in enumerate(alpha, start=1):
        coefficient *= Fraction(factorial(a) * factorial(m - 1 + total), factorial(m + total + a))
        total += a
    return coefficient


def ball_monomial_norm(alpha: Sequence[int]) -> float:
    """Squared norm of the monomial z^alpha on the unit ball, as a float."""
    return float(ball_norm_coefficient(alpha)) * math.pi ** len(tuple(alpha))


def polydisc_monomial_norm(alpha: Sequence[int], radii: Sequence[float]) -> float:
    """Squared norm of z^alpha on a polydisc: product of one-variable disc moments."""
    alpha = tuple(int(a) for a in alpha)
    radii = tuple(float(r) for r in radii)
    if len(alpha) != len(radii):
        raise DimensionMismatchError("exponent and radii lengths differ")
    if any(a < 0 for a in alpha) or any(r <= 0 for r in radii):
        raise InvalidInputError("need nonnegative exponents and positive radii")
    out = 1.0
    for a, r in zip(alpha, radii):
        out *= math.pi * r ** (2 * a + 2) / (a + 1)
    return out


# ---------------------------------------------------------------------------
# orthogonality of distinct-character monomials


@dataclass(frozen=True)
class PairResult:
    p_exponent: tuple[int, ...]
    q_exponent: tuple[int, ...]
    p_character: tuple[int, ...]
    q_character: tuple[int, ...]
    estimate: MCEstimate
    zscore: float
    passed: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "p_exponent": list(self.p_exponent),
            "q_exponent": list(self.q_exponent),
            "p_character": list(self.p_character),
            "q_character": list(self.q_character),
            "estimate": self.estimate.to_json(),
            "zscore": self.zscore,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class OrthogonalityReport:
    passed: bool
    pairs: tuple[PairResult, ...]
    worst_zscore: float
    max_degree: int
    samples: int
    seed: int
    expected_false_failures: float
    note: str = field(
        default="each pair is tested at 4 standard errors; with T pairs the "
        "chance of a spurious failure is about T * 6.3e-5"
    )

    @property
    def failures(self) -> tuple[PairResult, ...]:
        return tuple(p for p in self.pairs if not p.passed)

    def to_json(self) -> dict[str, Any]:
        return {
            "pass": self.passed,
            "pairs": [p.to_json() for p in self.pairs],
            "worst_zscore": self.worst_zscore,
            "max_degree": self.max_degree,
            "samples": self.samples,
            "seed": self.seed,
            "expected_false_failures": self.expected_false_failures,
            "note": self.note,
        }


def check_orthogonality(
    spec: DomainSpec, matrix: WeightMatrix, max_degree: int, seed: int, count: int
) -> OrthogonalityReport:
    """Test that monomials with different characters integrate to zero against each other.

    All ordered-up pairs (alpha, beta) with |alpha|,|beta| <= max_degree and
    alpha^T A != beta^T A are pooled into one candidate stream; each pairing
    integral must sit within 4 standard errors of zero.  The constant monomial
    participates, so orthogonality of 1 against every nonzero character is
    covered by the same sweep.
    """
    if matrix.n != spec.n:
        raise DimensionMismatchError(
            f"weight matrix on {matrix.n} coordinates against a domain in dimension {spec.n}"
        )
    if not isinstance(max_degree, int) or max_degree < 0:
        raise InvalidInputError("max_degree must be a nonnegative integer")
    monomials = list(exponents_up_to_degree(spec.n, max_degree))
    characters = [matrix.character_of(alpha) for alpha in monomials]
    pair_index = [
        (i, j)
        for i in range(len(monomials))
        for j in range(i + 1, len(monomials))
        if characters[i] != characters[j]
    ]
    exponent_arrays = [np.array(alpha, dtype=np.int64) for alpha in monomials]

    def values(points: np.ndarray) -> np.ndarray:
        mono = np.empty((points.shape[0], len(monomials)), dtype=np.complex128)
        for t, exponent in enumerate(exponent_arrays):
            mono[:, t] = np.prod(points**exponent, axis=1)
        out = np.empty((points.shape[0], len(pair_index)), dtype=np.complex128)
        for t, (i, j) in enumerate(pair_index):
            out[:, t] = mono[:, i] * np.conj(mono[:, j])
        return out

    sums, sq_re, sq_im, accepted = _stream(spec, seed, count, len(pair_index), values)
    estimates = _estimates(spec, _mask64(seed), count, sums, sq_re, sq_im, accepted)

    pairs = []
    worst = 0.0
    for (i, j), estimate in zip(pair_index, estimates):
        magnitude = abs(estimate.value)
        if estimate.stderr > 0:
            z = magnitude / estimate.stderr
        else:
            z = 0.0 if magnitude == 0.0 else math.inf
        worst = max(worst, z)
        pairs.append(
            PairResult(
                p_exponent=monomials[i],
                q_exponent=monomials[j],
                p_character=characters[i],
                q_character=characters[j],
                estimate=estimate,
                zscore=z,
                passed=magnitude <= 4.0 * estimate.stderr,
            )
        )
    return OrthogonalityReport(
        passed=all(p.passed for p in pairs),
        pairs=tuple(pairs),
        worst_zscore=worst,
        max_degree=max_degree,
        samples=count,
        seed=_mask64(seed),
        expected_false_failures=len(pairs) * FOUR_SIGMA_TAIL,
    )


# ---------------------------------------------------------------------------
# invariance of a domain under its torus action


@dataclass(frozen=True)
class InvarianceViolation:
    point: tuple[complex, ...]
    parameters: tuple[float, ...]
    transformed: tuple[complex, ...]
    defining_value: float

    def to_json(self) -> dict[str, Any]:
        return {
            "point": [{"re": z.real, "im": z.imag} for z in self.point],
            "parameters": list(self.parameters),
            "transformed": [{"re": z.real, "im": z.imag} for z in self.transformed],
            "defining_value": self.defining_value,
        }


@dataclass(frozen=True)
class InvarianceReport:
    passed: bool
    checked: int
    violations: int
    witnesses: tuple[InvarianceViolation, ...]
    slack: float
    samples: int
    seed: int

    def to_json(self) -> dict[str, Any]:
        return {
            "pass": self.passed,
            "checked": self.checked,
            "violations": self.violations,
            "witnesses": [w.to_json() for w in self.witnesses],
            "slack": self.slack,
            "samples": self.samples,
            "seed": self.seed,
        }


def check_invariance(
    spec: DomainSpec,
    matrix: WeightMatrix,
    seed: int,
    count: int,
    max_witnesses: int = 10,
) -> InvarianceReport:
    """Test that rotating sampled points by random torus elements keeps them in the domain.

    Each accepted point z gets its own parameter draw u in [0,1)^r; coordinate
    i is multiplied by exp(2*pi*1j * <a_i, u>).  The transformed point must
    satisfy the defining inequality up to slack 1e-9; any violation is
    returned with its witness data.
    """
    if matrix.n != spec.n:
        raise DimensionMismatchError(
            f"weight matrix on {matrix.n} coordinates against a domain in dimension {spec.n}"
        )
    rows = np.array(matrix.rows, dtype=np.float64)  # (n, r)
    state = {"checked": 0, "violations": 0}
    witnesses: list[InvarianceViolation] = []

    def on_accepted(points: np.ndarray, extras: np.ndarray) -> None:
        state["checked"] += points.shape[0]
        phases = np.exp(2j * np.pi * (extras @ rows.T))  # (m, n)
        transformed = points * phases
        defining = spec.defining_values(transformed)
        bad = np.nonzero(defining >= 1.0 + INVARIANCE_SLACK)[0]
        state["violations"] += int(bad.shape[0])
        for row in bad[: max(0, max_witnesses - len(witnesses))]:
            witnesses.append(
                InvarianceViolation(
                    point=tuple(complex(z) for z in points[row]),
                    parameters=tuple(float(x) for x in extras[row]),
                    transformed=tuple(complex(z) for z in transformed[row]),
                    defining_value=float(defining[row]),
                )
            )

    _stream(spec, seed, count, width=0, values=lambda pts: pts, extra_columns=matrix.r, on_accepted=on_accepted)
    return InvarianceReport(
        passed=state["violations"] == 0,
        checked=state["checked"],
        violations=state["violations"],
        witnesses=tuple(witnesses),
        slack=INVARIANCE_SLACK,
        samples=count,
        seed=_mask64(seed),
    )


# ---------------------------------------------------------------------------
# change of variables


@dataclass(frozen=True)
class ChangeOfVariablesReport:
    passed: bool
    lhs: MCEstimate
    rhs: MCEstimate
    difference: float
    tolerance: float
    samples: int
    seed: int

    def to_json(self) -> dict[str, Any]:
        return {
            "pass": self.passed,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "difference": self.difference,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "seed": self.seed,
        }


def check_change_of_variables(
    source: DomainSpec,
    forward: PolyMap,
    inverse: PolyMap,
    psi: Polynomial,
    phi: Polynomial,
    seed: int,
    count: int,
    image: DomainSpec | None = None,
) -> ChangeOfVariablesReport:
    """Test the pairing identity transported through a polynomial automorphism.

    With u the Jacobian determinant of the map f and U that of its inverse F,
    the integral of u * (psi o f) * conj(phi) over the source must equal the
    integral of psi * conj(U * (phi o F)) over the image domain.  Both sides
    are estimated from the same seed (common random numbers), and agreement is
    required within 4 * (stderr_lhs + stderr_rhs).
    """
    if forward.nvars != source.n or inverse.nvars != source.n:
        raise DimensionMismatchError("map dimension does not match the source domain")
    ident = PolyMap.identity(source.n)
    if forward.compose(inverse) != ident or inverse.compose(forward) != ident:
        raise MissingInverseError("the supplied inverse does not compose with the map to the identity")
    if image is None:
        image = MapImage(source, forward, inverse)
    if image.n != source.n:
        raise DimensionMismatchError("image domain dimension does not match the source")

    u = jacobian_det(forward)
    big_u = jacobian_det(inverse)
    lhs = mc_inner_product(source, u * psi.compose(forward), phi, seed, count)
    rhs = mc_inner_product(image, psi, big_u * phi.compose(inverse), seed, count)
    difference = abs(lhs.value - rhs.value)
    tolerance = 4.0 * (lhs.stderr + rhs.stderr)
    return ChangeOfVariablesReport(
        passed=difference <= tolerance,
        lhs=lhs,
        rhs=rhs,
        difference=difference,
        tolerance=tolerance,
        samples=count,
        seed=_mask64(seed),
    )

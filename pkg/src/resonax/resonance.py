"""Resonance and quasi-resonance invariants of admissible torus actions.

The i-th resonance set E_i collects the monomial exponents with the same
character as the coordinate z_i; its maximal degree μ_i, and μ = max_i μ_i,
measure how far the action is from forcing linearity.  Given a second action
(the target of a map), the i-th quasi-resonance set K_i collects all source
characters reachable in degree ≤ μ'_i, and ν_i = max{D_k : k ∈ K_i} bounds the
degree of the i-th component of any origin-fixing biholomorphism between
bounded domains invariant under the two actions.  ν = max_i ν_i is the global
degree bound; μ = μ' = 1 forces ν = 1, which is the classical linearity
statement for circular domains.

Everything here is exact integer/rational combinatorics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatchError, InvalidInputError
from .rational import format_rational
from .weights import (
    WeightMatrix,
    _require_admissible,
    degree_extremes,
    enumerate_weight_space,
)


def exponents_up_to_degree(n: int, max_degree: int):
    """Yield every α ∈ Nⁿ with |α| ≤ max_degree, in lexicographic order."""
    alpha = [0] * n

    def descend(i: int, remaining: int):
        if i == n - 1:
            for value in range(remaining + 1):
                alpha[i] = value
                yield tuple(alpha)
            return
        for value in range(remaining + 1):
            alpha[i] = value
            yield from descend(i + 1, remaining - value)

    yield from descend(0, max_degree)


@dataclass(frozen=True)
class ResonanceReport:
    """Per-coordinate resonance sets and orders of one admissible action."""

    matrix: WeightMatrix
    sets: tuple[tuple[tuple[int, ...], ...], ...]  # E_i, lexicographic
    orders: tuple[int, ...]  # μ_i = D at the character of z_i
    order: int  # μ = max_i μ_i
    linear_characters: tuple[tuple[int, ...], ...]  # characters with d = 1: the distinct rows

    def to_json(self) -> dict:
        return {
            "sets": [[list(a) for a in basis] for basis in self.sets],
            "orders": list(self.orders),
            "order": self.order,
            "linear_characters": [list(k) for k in self.linear_characters],
        }


def resonance(matrix: WeightMatrix) -> ResonanceReport:
    """Resonance sets E_i, orders μ_i, global order μ, and the degree-1 characters."""
    _require_admissible(matrix)
    sets = []
    orders = []
    for i, row in enumerate(matrix.rows):
        space = enumerate_weight_space(matrix, row)
        if space is None or space.d < 1:
            raise AssertionError(f"z_{i + 1} must lie in its own weight space")
        sets.append(space.basis)
        orders.append(space.D)
    return ResonanceReport(
        matrix=matrix,
        sets=tuple(sets),
        orders=tuple(orders),
        order=max(orders),
        linear_characters=tuple(sorted(set(matrix.rows))),
    )


@dataclass(frozen=True)
class QuasiResonanceReport:
    """Quasi-resonance data for an ordered pair of actions on the same C^n.

    sets[i] are the source characters reachable in degree ≤ μ'_i (the i-th
    resonance order of the target action); orders[i] = ν_i is the largest
    weight-space top degree over that set, and bounds the degree of the i-th
    component of any origin-fixing biholomorphism from a bounded source-
    invariant domain to a bounded target-invariant one.
    """

    source: WeightMatrix
    target: WeightMatrix
    sets: tuple[tuple[tuple[int, ...], ...], ...]  # K_i, characters in lexicographic order
    orders: tuple[int, ...]  # ν_i
    order: int  # ν = max_i ν_i
    target_orders: tuple[int, ...]  # μ'_i
    degree_bounds: tuple[int, ...]  # per-component bound, equal to orders

    def to_json(self) -> dict:
        return {
            "sets": [[list(k) for k in chars] for chars in self.sets],
            "orders": list(self.orders),
            "order": self.order,
            "target_orders": list(self.target_orders),
            "degree_bounds": list(self.degree_bounds),
        }


def quasi_resonance(source: WeightMatrix, target: WeightMatrix) -> QuasiResonanceReport:
    """Quasi-resonance sets and orders of (source, target); both must act on the same C^n.

    K_i is materialized as {αᵀA : |α| ≤ μ'_i}, which is exactly the set of
    source characters k with d_k ≤ μ'_i: any such k is realized by a monomial
    of degree d_k ≤ μ'_i, and conversely αᵀA has d ≤ |α|.
    """
    if source.n != target.n:
        raise DimensionMismatchError(
            f"actions live on different spaces: {source.n} vs {target.n} coordinates"
        )
    _require_admissible(source)
    target_orders = resonance(target).orders
    sets = []
    orders = []
    for mu_i in target_orders:
        characters = sorted({source.character_of(alpha) for alpha in exponents_up_to_degree(source.n, mu_i)})
        top = 0
        for k in characters:
            extremes = degree_extremes(source, k)
            if extremes is None:
                raise AssertionError("materialized characters are realized by construction")
            top = max(top, extremes[1])
        sets.append(tuple(characters))
        orders.append(top)
    return QuasiResonanceReport(
        source=source,
        target=target,
        sets=tuple(sets),
        orders=tuple(orders),
        order=max(orders),
        target_orders=target_orders,
        degree_bounds=tuple(orders),
    )


def is_cartan_linear(source: WeightMatrix, target: WeightMatrix) -> tuple[bool, str]:
    """True iff both resonance orders are 1, which forces every origin-fixing
    biholomorphism between bounded invariant domains of the pair to be linear."""
    if source.n != target.n:
        raise DimensionMismatchError(
            f"actions live on different spaces: {source.n} vs {target.n} coordinates"
        )
    mu = resonance(source).order
    mu_target = resonance(target).order
    if mu == 1 and mu_target == 1:
        return True, (
            "both resonance orders are 1, so the quasi-resonance order is 1 and any "
            "origin-fixing biholomorphism between bounded invariant domains is linear"
        )
    return False, f"resonance orders are ({mu}, {mu_target}); linearity is not forced"


def _column_matrix(weights) -> WeightMatrix:
    return WeightMatrix(tuple((int(w),) for w in weights))


@dataclass(frozen=True)
class QuasiCircularBoundReport:
    """Coarse ratio bound vs exact quasi-resonance order for a pair of rank-1 positive actions."""

    weights: tuple[int, ...]
    target_weights: tuple[int, ...]
    coarse: Fraction  # m_max·m'_max / (m_min·m'_min)
    coarse_degree: int  # its floor: the largest degree the coarse bound admits
    exact: int  # ν of the pair
    exact_orders: tuple[int, ...]  # ν_i in original coordinate order
    permutation: tuple[int, ...]  # ascending sort order of weights
    target_permutation: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "coarse": format_rational(self.coarse),
            "coarse_degree": self.coarse_degree,
            "exact": self.exact,
            "exact_orders": list(self.exact_orders),
            "permutation": list(self.permutation),
            "target_permutation": list(self.target_permutation),
        }


def quasi_circular_bound(weights, target_weights) -> QuasiCircularBoundReport:
    """Compare the closed-form degree bound for rank-1 positive weights with the exact one.

    For strictly positive weight tuples m and m' the quasi-resonance order is
    at most m_max·m'_max/(m_min·m'_min); the exact order is computed from the
    pair of column matrices and asserted to respect the coarse bound.
    """
    m = tuple(int(w) for w in weights)
    mp = tuple(int(w) for w in target_weights)
    for tup in (m, mp):
        if not tup:
            raise InvalidInputError("weight tuple must be nonempty")
        if any(w <= 0 for w in tup):
            raise InvalidInputError(f"weights must be strictly positive, got {list(tup)}")
    if len(m) != len(mp):
        raise DimensionMismatchError(f"weight tuples of different lengths: {len(m)} vs {len(mp)}")
    perm = tuple(sorted(range(len(m)), key=lambda i: m[i]))
    perm_target = tuple(sorted(range(len(mp)), key=lambda i: mp[i]))
    coarse = Fraction(max(m) * max(mp), min(m) * min(mp))
    report = quasi_resonance(_column_matrix(m), _column_matrix(mp))
    if report.order > coarse:
        raise AssertionError(f"exact order {report.order} exceeds coarse bound {coarse}")
    return QuasiCircularBoundReport(
        weights=m,
        target_weights=mp,
        coarse=coarse,
        coarse_degree=int(coarse),
        exact=report.order,
        exact_orders=report.orders,
        permutation=perm,
        target_permutation=perm_target,
    )


@dataclass(frozen=True)
class NonnegativeBoundReport:
    """Coarse per-coordinate bounds s_i·s_max/s_min² vs exact ν_i for a nonnegative matrix.

    s_i is the i-th row sum; coordinates are reported in input order, with the
    ascending-row-sum permutation recorded.
    """

    matrix: WeightMatrix
    row_sums: tuple[int, ...]
    coarse: tuple[Fraction, ...]
    exact: tuple[int, ...]
    permutation: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "row_sums": list(self.row_sums),
            "coarse": [format_rational(b) for b in self.coarse],
            "exact": list(self.exact),
            "permutation": list(self.permutation),
        }


def nonneg_weight_bound(matrix: WeightMatrix) -> NonnegativeBoundReport:
    """Per-coordinate coarse bounds for a matrix with nonnegative entries, vs exact ν_i.

    Degrees in the weight space at k satisfy d ≥ |k|/s_max and D ≤ |k|/s_min
    (|k| the entry sum), which gives deg f_i ≤ s_i·s_max/s_min² for any
    origin-fixing automorphism of a bounded invariant domain.
    """
    for row in matrix.rows:
        if any(x < 0 for x in row):
            raise InvalidInputError(f"nonnegative bound requires nonnegative entries, got row {list(row)}")
        if all(x == 0 for x in row):
            raise InvalidInputError("zero row: the action is inadmissible")
    sums = tuple(sum(row) for row in matrix.rows)
    s_min, s_max = min(sums), max(sums)
    coarse = tuple(Fraction(s * s_max, s_min * s_min) for s in sums)
    report = quasi_resonance(matrix, matrix)
    for nu_i, bound in zip(report.orders, coarse):
        if nu_i > bound:
            raise AssertionError(f"exact order {nu_i} exceeds coarse bound {bound}")
    return NonnegativeBoundReport(
        matrix=matrix,
        row_sums=sums,
        coarse=coarse,
        exact=report.orders,
        permutation=tuple(sorted(range(matrix.n), key=lambda i: sums[i])),
    )

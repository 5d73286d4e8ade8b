"""Weight matrices of diagonal torus actions and their weight spaces.

A torus of rank r acts on C^n coordinatewise, multiplying z_i by λ^{a_i} for
integer weight vectors a_i ∈ Z^r (the rows of an n×r matrix A).  A monomial
z^α then transforms by the character αᵀA ∈ Z^r, and the weight space V_k is
the span of monomials with character k.  The action is *admissible* when the
only invariant monomial is the constant (V_0 = C); equivalently when some
rational functional λ has a_i·λ > 0 for every row, which makes every V_k
finite-dimensional and gives the enumeration bound used here.

All invariants are computed exactly over Z and Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InadmissibleActionError, InvalidInputError
from .feasibility import solve_positivity
from .rational import dot, format_rational, rank


@dataclass(frozen=True)
class WeightMatrix:
    """Integer weight matrix of a diagonal torus action: one row per coordinate of C^n."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise InvalidInputError("weight matrix needs at least one row")
        r = len(self.rows[0])
        if r < 1:
            raise InvalidInputError("torus rank must be at least 1")
        for row in self.rows:
            if len(row) != r:
                raise InvalidInputError(f"ragged rows: expected length {r}, got {len(row)}")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise InvalidInputError(f"weight entries must be integers, got {x!r}")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def r(self) -> int:
        return len(self.rows[0])

    def character_of(self, alpha: tuple[int, ...]) -> tuple[int, ...]:
        """Character αᵀA of the monomial z^α."""
        if len(alpha) != self.n:
            raise InvalidInputError(f"exponent length {len(alpha)} != {self.n} coordinates")
        return tuple(sum(a * row[j] for a, row in zip(alpha, self.rows)) for j in range(self.r))

    def to_json(self) -> dict:
        return {"rows": [list(row) for row in self.rows]}

    @classmethod
    def from_json(cls, data) -> "WeightMatrix":
        if isinstance(data, dict):
            data = data.get("rows")
        if not isinstance(data, (list, tuple)):
            raise InvalidInputError("weight matrix JSON must be {'rows': [[...], ...]} or a row list")
        return cls(tuple(tuple(row) for row in data))


def validate_weight_matrix(rows) -> tuple[WeightMatrix, list[str]]:
    """Build a WeightMatrix, returning non-fatal warnings alongside it.

    Rank deficiency over Q and duplicate rows are legal (every invariant
    computed downstream depends only on the map α ↦ αᵀA) but worth flagging.
    """
    matrix = WeightMatrix.from_json(rows) if not isinstance(rows, WeightMatrix) else rows
    warnings = []
    rk = rank(matrix.rows)
    if rk < matrix.r:
        warnings.append(f"rank deficiency: rank {rk} < torus rank {matrix.r}")
    seen: dict[tuple[int, ...], int] = {}
    for i, row in enumerate(matrix.rows):
        if row in seen:
            warnings.append(f"rows {seen[row] + 1} and {i + 1} are equal")
        else:
            seen[row] = i
    return matrix, warnings


@dataclass(frozen=True)
class AdmissibilityCertificate:
    """Re-verifiable dual certificate for admissibility.

    Admissible: positive_functional λ ∈ Qʳ with a_i·λ ≥ 1 for every row.
    Inadmissible: witness α ∈ Nⁿ, α ≠ 0, with Σ α_i a_i = 0 (an invariant monomial z^α).
    """

    verdict: str  # "admissible" | "inadmissible"
    positive_functional: tuple[Fraction, ...] | None = None
    witness: tuple[int, ...] | None = None

    @property
    def admissible(self) -> bool:
        return self.verdict == "admissible"

    def reverify(self, matrix: WeightMatrix) -> bool:
        """Re-check the certificate against the matrix by exact arithmetic."""
        if self.admissible:
            if self.positive_functional is None or self.witness is not None:
                return False
            if len(self.positive_functional) != matrix.r:
                return False
            return all(dot(row, self.positive_functional) >= 1 for row in matrix.rows)
        if self.witness is None or self.positive_functional is not None:
            return False
        if len(self.witness) != matrix.n:
            return False
        if any(w < 0 for w in self.witness) or all(w == 0 for w in self.witness):
            return False
        return all(
            sum(w * row[j] for w, row in zip(self.witness, matrix.rows)) == 0
            for j in range(matrix.r)
        )

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.positive_functional is not None:
            out["positive_functional"] = [format_rational(x) for x in self.positive_functional]
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@lru_cache(maxsize=4096)
def _certificate(rows: tuple[tuple[int, ...], ...]) -> AdmissibilityCertificate:
    result = solve_positivity(rows)
    if result.feasible:
        return AdmissibilityCertificate("admissible", positive_functional=result.lam)
    return AdmissibilityCertificate("inadmissible", witness=result.witness)


def check_admissible(matrix: WeightMatrix) -> AdmissibilityCertificate:
    """Decide admissibility with an exact certificate in either direction."""
    return _certificate(matrix.rows)


def positive_functional(matrix: WeightMatrix) -> tuple[Fraction, ...]:
    """Canonical rational λ with a_i·λ ≥ 1 for every row of an admissible matrix."""
    cert = check_admissible(matrix)
    if not cert.admissible:
        raise InadmissibleActionError(
            f"no positive functional exists: invariant monomial exponent {list(cert.witness)}",
            certificate=cert,
        )
    return cert.positive_functional


@dataclass(frozen=True)
class WeightSpace:
    """Finite monomial basis of the weight space at one character.

    basis holds every α ∈ Nⁿ with αᵀA = character, in lexicographic order;
    d and D are the minimum and maximum total degree over the basis.
    """

    character: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    d: int
    D: int

    def to_json(self) -> dict:
        return {
            "character": list(self.character),
            "basis": [list(a) for a in self.basis],
            "dimension": len(self.basis),
            "d": self.d,
            "D": self.D,
        }


def _require_admissible(matrix: WeightMatrix) -> tuple[Fraction, ...]:
    cert = check_admissible(matrix)
    if not cert.admissible:
        raise InadmissibleActionError(
            "weight spaces of an inadmissible action may be infinite; "
            f"invariant monomial exponent {list(cert.witness)}",
            certificate=cert,
        )
    return cert.positive_functional


@lru_cache(maxsize=65536)
def _basis(rows: tuple[tuple[int, ...], ...], k: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    matrix = WeightMatrix(rows)
    lam = _require_admissible(matrix)
    weights = [dot(row, lam) for row in matrix.rows]  # each ≥ 1
    n = matrix.n
    out: list[tuple[int, ...]] = []
    prefix = [0] * n

    def descend(i: int, residual: tuple[int, ...], budget: Fraction):
        # budget = residual·λ, the exact remaining mass Σ_{m≥i} α_m (a_m·λ).
        if budget < 0:
            return
        if i == n - 1:
            # Last coordinate: t·a_n = residual has at most one solution t ∈ N.
            row = matrix.rows[i]
            j = next((j for j, x in enumerate(row) if x != 0), None)
            if j is None:
                return  # zero row cannot happen for admissible matrices
            t, rem = divmod(residual[j], row[j])
            if rem != 0 or t < 0:
                return
            if all(t * row[m] == residual[m] for m in range(matrix.r)):
                prefix[i] = t
                out.append(tuple(prefix))
            return
        row = matrix.rows[i]
        cap = int(budget / weights[i])
        for value in range(cap + 1):
            prefix[i] = value
            rest = tuple(residual[j] - value * row[j] for j in range(matrix.r))
            descend(i + 1, rest, budget - value * weights[i])

    descend(0, k, dot(k, lam))
    return tuple(sorted(out))


def enumerate_weight_space(matrix: WeightMatrix, character) -> WeightSpace | None:
    """All monomial exponents with character k, or None when the space is empty.

    Completeness rests on the positive functional λ: every solution satisfies
    α_i ≤ (k·λ)/(a_i·λ), so the depth-first search over coordinates with the
    residual budget k·λ terminates and misses nothing.  Output is in
    lexicographic order of α.
    """
    k = tuple(character)
    if len(k) != matrix.r:
        raise InvalidInputError(f"character length {len(k)} != torus rank {matrix.r}")
    for x in k:
        if not isinstance(x, int) or isinstance(x, bool):
            raise InvalidInputError(f"character entries must be integers, got {x!r}")
    basis = _basis(matrix.rows, k)
    if not basis:
        return None
    degrees = [sum(a) for a in basis]
    return WeightSpace(character=k, basis=basis, d=min(degrees), D=max(degrees))


def degree_extremes(matrix: WeightMatrix, character) -> tuple[int, int] | None:
    """(min, max) monomial degree at one character; None when the space is empty."""
    space = enumerate_weight_space(matrix, character)
    if space is None:
        return None
    return (space.d, space.D)

"""Exact feasibility of the strict positivity system  row_i · λ ≥ 1  over Q.

This is the decision core behind admissibility of a torus action: either a
rational functional λ with row_i·λ ≥ 1 for every row exists, or there is a
nonnegative, nonzero rational combination of the rows summing to zero
(theorem of alternatives).  Fourier–Motzkin elimination with a fixed variable
order produces one of the two certificates exactly; no floating point is
involved anywhere.

Every inequality carries its derivation history: the vector h ≥ 0 such that
the inequality is  Σ h_i (row_i·λ ≥ 1).  When elimination derives 0 ≥ c with
c > 0, that history is the infeasibility witness (Σ h_i row_i = 0, Σ h_i > 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rational import scale_to_primitive_integers


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of the positivity system. Exactly one of the two fields is set.

    lam      -- rational λ with row_i·λ ≥ 1 for all i
    witness  -- primitive nonnegative integer vector α ≠ 0 with Σ α_i row_i = 0
    """

    lam: tuple[Fraction, ...] | None
    witness: tuple[int, ...] | None

    @property
    def feasible(self) -> bool:
        return self.lam is not None


# An inequality is (coeffs, rhs, hist): coeffs·λ ≥ rhs, derived as Σ hist_i·(row_i·λ ≥ 1).
_Ineq = tuple[tuple[Fraction, ...], Fraction, tuple[Fraction, ...]]


def _normalized(ineq: _Ineq) -> _Ineq:
    coeffs, rhs, hist = ineq
    scale = max((abs(c) for c in coeffs if c != 0), default=Fraction(0))
    if scale == 0:
        return ineq
    return (
        tuple(c / scale for c in coeffs),
        rhs / scale,
        tuple(h / scale for h in hist),
    )


def _dedup(ineqs: list[_Ineq]) -> list[_Ineq]:
    # Same direction, keep the strongest rhs; histories stay attached to survivors.
    best: dict[tuple[Fraction, ...], _Ineq] = {}
    for ineq in ineqs:
        norm = _normalized(ineq)
        prev = best.get(norm[0])
        if prev is None or norm[1] > prev[1]:
            best[norm[0]] = norm
    return list(best.values())


def solve_positivity(rows: list[tuple[int, ...]] | tuple) -> FeasibilityResult:
    """Decide  ∃λ ∈ Qʳ : row_i·λ ≥ 1 ∀i,  with a certificate either way.

    The λ returned is canonical: variables are eliminated in reverse index
    order and re-solved in index order, picking for each variable the point of
    its feasible interval closest to 0.  Deterministic for fixed input.
    """
    nrows = len(rows)
    r = len(rows[0])
    unit = Fraction(1)
    system: list[_Ineq] = [
        (
            tuple(Fraction(x) for x in row),
            unit,
            tuple(unit if m == i else Fraction(0) for m in range(nrows)),
        )
        for i, row in enumerate(rows)
    ]

    # levels[t] holds the system over variables λ_1..λ_t.
    levels: list[list[_Ineq]] = [[] for _ in range(r + 1)]
    levels[r] = system

    for t in range(r, 0, -1):
        current = levels[t]
        kept: list[_Ineq] = []
        pos: list[_Ineq] = []
        neg: list[_Ineq] = []
        for coeffs, rhs, hist in current:
            if all(c == 0 for c in coeffs):
                if rhs > 0:
                    return FeasibilityResult(lam=None, witness=scale_to_primitive_integers(hist))
                continue  # 0 ≥ rhs with rhs ≤ 0: trivially true
            c_t = coeffs[t - 1]
            if c_t > 0:
                pos.append((coeffs, rhs, hist))
            elif c_t < 0:
                neg.append((coeffs, rhs, hist))
            else:
                kept.append((coeffs, rhs, hist))
        derived: list[_Ineq] = []
        for pc, pr, ph in pos:
            for nc, nr, nh in neg:
                mp = -nc[t - 1]  # > 0
                mn = pc[t - 1]  # > 0
                coeffs = tuple(mp * a + mn * b for a, b in zip(pc, nc))
                rhs = mp * pr + mn * nr
                hist = tuple(mp * a + mn * b for a, b in zip(ph, nh))
                if all(c == 0 for c in coeffs):
                    if rhs > 0:
                        return FeasibilityResult(lam=None, witness=scale_to_primitive_integers(hist))
                    continue
                derived.append((coeffs, rhs, hist))
        levels[t - 1] = _dedup(kept + derived)

    # Anything left at level 0 is all-zero and was screened above: feasible.
    lam = [Fraction(0)] * r
    for t in range(1, r + 1):
        lower: Fraction | None = None
        upper: Fraction | None = None
        for coeffs, rhs, _hist in levels[t]:
            c_t = coeffs[t - 1]
            if c_t == 0:
                continue
            bound = (rhs - sum((coeffs[j] * lam[j] for j in range(t - 1)), Fraction(0))) / c_t
            if c_t > 0:
                lower = bound if lower is None else max(lower, bound)
            else:
                upper = bound if upper is None else min(upper, bound)
        if lower is not None and upper is not None and lower > upper:
            raise AssertionError("elimination promised a nonempty interval")
        if lower is not None and lower > 0:
            lam[t - 1] = lower
        elif upper is not None and upper < 0:
            lam[t - 1] = upper
        else:
            lam[t - 1] = Fraction(0)
    return FeasibilityResult(lam=tuple(lam), witness=None)

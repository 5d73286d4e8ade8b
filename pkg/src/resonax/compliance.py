"""Necessary-condition checks for candidate biholomorphisms between invariant domains.

An origin-fixing biholomorphism f between bounded domains invariant under a
source action A and a target action A' must: fix the origin, have a constant
nonzero Jacobian determinant, keep every monomial of f_i inside the i-th
quasi-resonance character set, and satisfy deg f_i ≤ ν_i.  This module checks
those conditions exactly and reports witnesses for each failure.

A pass certifies consistency with the necessary conditions only — it never
certifies that f actually is a biholomorphism (injectivity/surjectivity are
out of scope for this representation).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError
from .gaussian import GaussianRational
from .poly import PolyMap, jacobian_det
from .resonance import QuasiResonanceReport, quasi_resonance
from .weights import WeightMatrix


@dataclass(frozen=True)
class ComponentVerdict:
    """Checks for one component f_i against the i-th quasi-resonance data."""

    index: int  # 0-based coordinate
    degree: int | float  # -inf for the zero component
    degree_bound: int  # ν_i
    degree_ok: bool
    offending: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # (exponent, character) outside K_i

    @property
    def characters_ok(self) -> bool:
        return not self.offending

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.characters_ok

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "degree": None if self.degree == float("-inf") else self.degree,
            "degree_bound": self.degree_bound,
            "degree_ok": self.degree_ok,
            "offending": [
                {"exp": list(exp), "character": list(k)} for exp, k in self.offending
            ],
        }


@dataclass(frozen=True)
class ComplianceReport:
    """Aggregate verdict; passes iff every individual check passes."""

    origin_fixed: bool
    jacobian_constant: bool
    jacobian_nonzero: bool
    jacobian_value: GaussianRational | None  # set iff constant
    components: tuple[ComponentVerdict, ...]
    quasi: QuasiResonanceReport

    @property
    def passed(self) -> bool:
        return (
            self.origin_fixed
            and self.jacobian_constant
            and self.jacobian_nonzero
            and all(c.ok for c in self.components)
        )

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "origin_fixed": self.origin_fixed,
            "jacobian_constant": self.jacobian_constant,
            "jacobian_nonzero": self.jacobian_nonzero,
            "jacobian_value": None if self.jacobian_value is None else self.jacobian_value.to_json(),
            "components": [c.to_json() for c in self.components],
            "quasi_resonance": self.quasi.to_json(),
            "note": (
                "necessary conditions only: a pass does not certify that the map "
                "is a biholomorphism"
            ),
        }


def check_compliance(
    poly_map: PolyMap, source: WeightMatrix, target: WeightMatrix
) -> ComplianceReport:
    """Check a candidate map from a source-invariant domain to a target-invariant one.

    Component f_i is checked against the character set K_i and bound ν_i built
    from source characters and the i-th resonance order of the target.
    """
    if poly_map.nvars != source.n:
        raise DimensionMismatchError(
            f"map on {poly_map.nvars} variables vs source action on {source.n} coordinates"
        )
    quasi = quasi_resonance(source, target)  # validates admissibility and equal n

    origin_fixed = poly_map.fixes_origin()
    det = jacobian_det(poly_map)
    jacobian_constant = det.is_constant()
    jacobian_nonzero = not det.is_zero()
    jacobian_value = det.constant_term() if jacobian_constant else None

    components = []
    for i, component in enumerate(poly_map.components):
        allowed = set(quasi.sets[i])
        offending = tuple(
            (exp, source.character_of(exp))
            for exp, _coef in component.sorted_terms()
            if source.character_of(exp) not in allowed
        )
        bound = quasi.orders[i]
        degree = component.degree()
        components.append(
            ComponentVerdict(
                index=i,
                degree=degree,
                degree_bound=bound,
                degree_ok=degree <= bound,
                offending=offending,
            )
        )
    return ComplianceReport(
        origin_fixed=origin_fixed,
        jacobian_constant=jacobian_constant,
        jacobian_nonzero=jacobian_nonzero,
        jacobian_value=jacobian_value,
        components=tuple(components),
        quasi=quasi,
    )

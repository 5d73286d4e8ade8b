"""Bounded domain specifications used by the Monte Carlo verifier.

Every domain is described by a defining value g with D = {z : g(z) < 1} and an
enclosing polydisc used for rejection sampling.  The enclosing radii are exact
for balls, polydiscs and weighted ellipsoids; for images of a domain under a
polynomial map they come from the triangle inequality applied to the map's
coefficients, which is a valid (if not tight) enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, MissingInverseError
from .poly import Polynomial, PolyMap


class DomainSpec:
    """Base class; concrete kinds implement radii and the defining value."""

    kind: str = "?"

    @property
    def n(self) -> int:
        raise NotImplementedError

    def bounding_radii(self) -> tuple[float, ...]:
        raise NotImplementedError

    def defining_values(self, points: np.ndarray) -> np.ndarray:
        """g evaluated on an (m, n) complex array; membership is g < 1."""
        raise NotImplementedError

    def contains(self, points: np.ndarray, slack: float = 0.0) -> np.ndarray:
        return self.defining_values(points) < 1.0 + slack

    def box_volume(self) -> float:
        return float(np.prod([math.pi * r * r for r in self.bounding_radii()]))

    def to_json(self) -> dict[str, Any]:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.to_json()})"


@dataclass(frozen=True, repr=False)
class UnitBall(DomainSpec):
    dimension: int
    kind = "unit-ball"

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise InvalidInputError("unit ball dimension must be a positive integer")

    @property
    def n(self) -> int:
        return self.dimension

    def bounding_radii(self) -> tuple[float, ...]:
        return (1.0,) * self.dimension

    def defining_values(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.complex128))
        return np.sum(points.real**2 + points.imag**2, axis=1)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "n": self.dimension}


@dataclass(frozen=True, repr=False)
class Polydisc(DomainSpec):
    radii: tuple[float, ...]
    kind = "polydisc"

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii or any(not math.isfinite(r) or r <= 0 for r in radii):
            raise InvalidInputError("polydisc radii must be finite and positive")
        object.__setattr__(self, "radii", radii)

    @property
    def n(self) -> int:
        return len(self.radii)

    def bounding_radii(self) -> tuple[float, ...]:
        return self.radii

    def defining_values(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.complex128))
        r = np.asarray(self.radii)
        return np.max((points.real**2 + points.imag**2) / r**2, axis=1)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "radii": list(self.radii)}


@dataclass(frozen=True, repr=False)
class WeightedEllipsoid(DomainSpec):
    """{z : sum_i c_i |z_i|^(2 p_i) < 1} with c_i > 0 and p_i >= 1."""

    coefficients: tuple[float, ...]
    exponents: tuple[float, ...]
    kind = "weighted-ellipsoid"

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        exps = tuple(float(p) for p in self.exponents)
        if not coeffs or len(coeffs) != len(exps):
            raise DimensionMismatchError("coefficients and exponents must have equal positive length")
        if any(not math.isfinite(c) or c <= 0 for c in coeffs):
            raise InvalidInputError("ellipsoid coefficients must be finite and positive")
        if any(not math.isfinite(p) or p < 1 for p in exps):
            raise InvalidInputError("ellipsoid exponents must be finite and >= 1")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "exponents", exps)

    @property
    def n(self) -> int:
        return len(self.coefficients)

    def bounding_radii(self) -> tuple[float, ...]:
        # c r^(2p) = 1  =>  r = (1/c)^(1/(2p))
        return tuple((1.0 / c) ** (1.0 / (2.0 * p)) for c, p in zip(self.coefficients, self.exponents))

    def defining_values(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.complex128))
        sq = points.real**2 + points.imag**2
        c = np.asarray(self.coefficients)
        p = np.asarray(self.exponents)
        return np.sum(c * sq**p, axis=1)

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "coefficients": list(self.coefficients),
            "exponents": list(self.exponents),
        }


@dataclass(frozen=True, repr=False)
class MapImage(DomainSpec):
    """Image f(base) of a domain under a polynomial automorphism with exact inverse.

    Membership of w is decided by pulling back: w in f(base) iff f_inv(w) in base,
    so the inverse must really be one; both compositions are checked symbolically
    at construction time.
    """

    base: DomainSpec
    forward: PolyMap
    inverse: PolyMap
    kind = "shear-image"

    def __post_init__(self):
        if self.forward.nvars != self.base.n or self.inverse.nvars != self.base.n:
            raise DimensionMismatchError("map dimension does not match the base domain")
        ident = PolyMap.identity(self.base.n)
        if self.forward.compose(self.inverse) != ident or self.inverse.compose(self.forward) != ident:
            raise MissingInverseError(
                "the supplied inverse does not compose with the map to the identity"
            )

    @property
    def n(self) -> int:
        return self.base.n

    def bounding_radii(self) -> tuple[float, ...]:
        base_radii = self.base.bounding_radii()
        out = []
        for component in self.forward.components:
            bound = 0.0
            for exponent, coeff in component.terms.items():
                magnitude = math.sqrt(float(coeff.abs_squared()))
                for r, e in zip(base_radii, exponent):
                    magnitude *= r**e
                bound += magnitude
            out.append(bound)
        if any(b <= 0 for b in out):
            raise InvalidInputError("image domain has a zero bounding radius (constant component)")
        return tuple(out)

    def defining_values(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.complex128))
        return self.base.defining_values(self.inverse.evaluate_array(points))

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "base": self.base.to_json(),
            "map": self.forward.to_json(),
            "inverse": self.inverse.to_json(),
        }


def shear_pair(exponent: int, nvars: int = 2) -> tuple[PolyMap, PolyMap]:
    """The triangular map (z1, z2 + z1^k) on C^2 together with its exact inverse."""
    if not isinstance(exponent, int) or exponent < 1:
        raise InvalidInputError("shear exponent must be a positive integer")
    if nvars != 2:
        raise InvalidInputError("shear maps are defined on two variables")
    z1 = Polynomial.variable(0, 2)
    z2 = Polynomial.variable(1, 2)
    forward = PolyMap([z1, z2 + z1**exponent])
    inverse = PolyMap([z1, z2 - z1**exponent])
    return forward, inverse


def domain_from_json(data: Any) -> DomainSpec:
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidInputError("domain spec must be an object with a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "unit-ball":
            return UnitBall(int(data["n"]))
        if kind == "polydisc":
            return Polydisc(tuple(data["radii"]))
        if kind == "weighted-ellipsoid":
            return WeightedEllipsoid(tuple(data["coefficients"]), tuple(data["exponents"]))
        if kind == "shear-image":
            base = domain_from_json(data["base"])
            if "exponent" in data:
                forward, inverse = shear_pair(int(data["exponent"]), base.n)
            else:
                forward = PolyMap.from_json(data["map"])
                if "inverse" not in data:
                    raise MissingInverseError("an image domain requires an exact inverse map")
                inverse = PolyMap.from_json(data["inverse"])
            return MapImage(base, forward, inverse)
    except KeyError as missing:
        raise InvalidInputError(f"domain spec is missing field {missing}") from None
    raise InvalidInputError(f"unknown domain kind {kind!r}")

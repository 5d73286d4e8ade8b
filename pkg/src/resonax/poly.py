"""Sparse multivariate polynomials over the Gaussian rationals, and polynomial maps.

Terms are stored as a map from exponent tuples to nonzero coefficients; every
operation returns canonical form (zero terms dropped).  Serialization orders
terms graded-lexicographically so equal polynomials serialize identically.

The degree of the zero polynomial is float("-inf"), keeping max/≤ logic total.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, SizeLimitError
from .gaussian import ONE, GaussianRational
from .rational import parse_rational

NEGATIVE_INFINITY = float("-inf")

_MAX_JACOBIAN_SIZE = 8


def _check_exponent(exp, nvars: int) -> tuple[int, ...]:
    exp = tuple(exp)
    if len(exp) != nvars:
        raise InvalidInputError(f"exponent length {len(exp)} != {nvars} variables")
    for e in exp:
        if not isinstance(e, int) or isinstance(e, bool) or e < 0:
            raise InvalidInputError(f"exponents must be nonnegative integers, got {e!r}")
    return exp


class Polynomial:
    """Immutable sparse polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, GaussianRational] | None = None):
        if nvars < 0:
            raise InvalidInputError("variable count must be nonnegative")
        canonical: dict[tuple[int, ...], GaussianRational] = {}
        for exp, coef in (terms or {}).items():
            coef = GaussianRational.of(coef)
            if coef.is_zero():
                continue
            canonical[_check_exponent(exp, nvars)] = coef
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, value, nvars: int) -> "Polynomial":
        return cls(nvars, {tuple([0] * nvars): GaussianRational.of(value)})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise InvalidInputError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, exp: Iterable[int], coef=1) -> "Polynomial":
        exp = tuple(exp)
        return cls(len(exp), {exp: GaussianRational.of(coef)})

    # -- ring operations ---------------------------------------------------

    def _require_same_vars(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise DimensionMismatchError(f"variable counts differ: {self.nvars} vs {other.nvars}")

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        self._require_same_vars(other)
        terms = dict(self.terms)
        for exp, coef in other.terms.items():
            total = terms.get(exp, GaussianRational()) + coef
            if total.is_zero():
                terms.pop(exp, None)
            else:
                terms[exp] = total
        return Polynomial(self.nvars, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {exp: -coef for exp, coef in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._require_same_vars(other)
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                total = terms.get(exp, GaussianRational()) + prod
                if total.is_zero():
                    terms.pop(exp, None)
                else:
                    terms[exp] = total
        return Polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def scale(self, value) -> "Polynomial":
        value = GaussianRational.of(value)
        return Polynomial(self.nvars, {exp: coef * value for exp, coef in self.terms.items()})

    def __pow__(self, power: int) -> "Polynomial":
        if not isinstance(power, int) or power < 0:
            raise InvalidInputError(f"polynomial power must be a nonnegative integer, got {power!r}")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base if power > 1 else base
            power >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- structure ---------------------------------------------------------

    def degree(self) -> int | float:
        """Total degree; float("-inf") for the zero polynomial."""
        if not self.terms:
            return NEGATIVE_INFINITY
        return max(sum(exp) for exp in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(exp) == 0 for exp in self.terms)

    def constant_term(self) -> GaussianRational:
        return self.terms.get(tuple([0] * self.nvars), GaussianRational())

    def partial(self, index: int) -> "Polynomial":
        """Partial derivative with respect to variable `index`."""
        if not 0 <= index < self.nvars:
            raise InvalidInputError(f"variable index {index} out of range for {self.nvars} variables")
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for exp, coef in self.terms.items():
            e = exp[index]
            if e == 0:
                continue
            lowered = list(exp)
            lowered[index] = e - 1
            terms[tuple(lowered)] = coef * e
        return Polynomial(self.nvars, terms)

    def compose(self, substitutions: "PolyMap | list[Polynomial]") -> "Polynomial":
        """Substitute substitutions[i] for variable i; exact symbolic result."""
        subs = list(substitutions.components) if isinstance(substitutions, PolyMap) else list(substitutions)
        if len(subs) != self.nvars:
            raise DimensionMismatchError(
                f"need {self.nvars} substitutions, got {len(subs)}"
            )
        inner_vars = subs[0].nvars
        for s in subs:
            if s.nvars != inner_vars:
                raise DimensionMismatchError("substitutions disagree on variable count")
        power_cache: dict[tuple[int, int], Polynomial] = {}

        def cached_power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = subs[i] ** e
            return power_cache[key]

        result = Polynomial.zero(inner_vars)
        for exp, coef in self.terms.items():
            term = Polynomial.constant(coef, inner_vars)
            for i, e in enumerate(exp):
                if e:
                    term = term * cached_power(i, e)
            result = result + term
        return result

    # -- numeric evaluation --------------------------------------------------

    def evaluate(self, point) -> complex:
        """Evaluate at a single complex point (floating point)."""
        if len(point) != self.nvars:
            raise DimensionMismatchError(f"point length {len(point)} != {self.nvars} variables")
        total = 0j
        for exp, coef in self.terms.items():
            value = coef.to_complex()
            for z, e in zip(point, exp):
                if e:
                    value *= complex(z) ** e
            total += value
        return total

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an (m, nvars) array of complex points; returns shape (m,)."""
        points = np.asarray(points, dtype=np.complex128)
        if points.ndim != 2 or points.shape[1] != self.nvars:
            raise DimensionMismatchError(
                f"expected points of shape (m, {self.nvars}), got {points.shape}"
            )
        total = np.zeros(points.shape[0], dtype=np.complex128)
        for exp, coef in self.terms.items():
            value = np.full(points.shape[0], coef.to_complex())
            for i, e in enumerate(exp):
                if e:
                    value = value * points[:, i] ** e
            total += value
        return total

    # -- serialization -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], GaussianRational]]:
        """Terms in graded-lexicographic order (degree first, then exponent lex)."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def to_json(self) -> list[dict]:
        return [{"exp": list(exp), **coef.to_json()} for exp, coef in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, nvars: int | None = None) -> "Polynomial":
        if not isinstance(data, list):
            raise InvalidInputError("polynomial JSON must be a list of term objects")
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for item in data:
            if not isinstance(item, dict) or "exp" not in item:
                raise InvalidInputError(f"bad polynomial term: {item!r}")
            exp = tuple(item["exp"])
            coef = GaussianRational(parse_rational(item.get("re", 0)), parse_rational(item.get("im", 0)))
            if nvars is None:
                nvars = len(exp)
            prev = terms.get(exp, GaussianRational())
            terms[exp] = prev + coef
        if nvars is None:
            raise InvalidInputError("cannot infer variable count of empty polynomial JSON")
        return cls(nvars, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coef in self.sorted_terms():
            factors = "".join(
                f"z{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e
            )
            parts.append(f"({coef}){factors}" if factors else f"({coef})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


class PolyMap:
    """A square polynomial self-map of C^n: n components in n variables."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Polynomial]):
        components = tuple(components)
        if not components:
            raise InvalidInputError("polynomial map needs at least one component")
        nvars = components[0].nvars
        for c in components:
            if c.nvars != nvars:
                raise DimensionMismatchError("components disagree on variable count")
        if len(components) != nvars:
            raise DimensionMismatchError(
                f"square map required: {len(components)} components in {nvars} variables"
            )
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMap is immutable")

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @classmethod
    def identity(cls, nvars: int) -> "PolyMap":
        return cls(Polynomial.variable(i, nvars) for i in range(nvars))

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """(self ∘ inner)(z) = self(inner(z))."""
        return PolyMap(c.compose(inner) for c in self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def fixes_origin(self) -> bool:
        return all(c.constant_term().is_zero() for c in self.components)

    def degree(self) -> int | float:
        return max(c.degree() for c in self.components)

    def evaluate(self, point) -> tuple[complex, ...]:
        return tuple(c.evaluate(point) for c in self.components)

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """Map an (m, n) array of points; returns (m, n)."""
        return np.stack([c.evaluate_array(points) for c in self.components], axis=1)

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]

    @classmethod
    def from_json(cls, data) -> "PolyMap":
        if isinstance(data, dict):
            data = data.get("components")
        if not isinstance(data, list):
            raise InvalidInputError("polynomial map JSON must be a list of polynomials")
        nvars = len(data)
        return cls(Polynomial.from_json(item, nvars=nvars) for item in data)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"PolyMap{self}"


def jacobian_matrix(poly_map: PolyMap) -> list[list[Polynomial]]:
    """Matrix of partial derivatives ∂f_i/∂z_j."""
    return [[c.partial(j) for j in range(poly_map.nvars)] for c in poly_map.components]


def jacobian_det(poly_map: PolyMap) -> Polynomial:
    """Exact symbolic Jacobian determinant, by cofactor expansion.

    Memoizes minors on column subsets; supported up to 8 variables, beyond
    which cofactor expansion is the wrong tool and the call is rejected.
    """
    n = poly_map.nvars
    if n > _MAX_JACOBIAN_SIZE:
        raise SizeLimitError(
            f"Jacobian determinant supports at most {_MAX_JACOBIAN_SIZE} variables, got {n}"
        )
    jac = jacobian_matrix(poly_map)
    cache: dict[tuple[int, ...], Polynomial] = {}

    def minor(columns: tuple[int, ...]) -> Polynomial:
        # Determinant of the submatrix on rows n-|columns| .. n-1 and `columns`.
        if not columns:
            return Polynomial.constant(1, n)
        cached = cache.get(columns)
        if cached is not None:
            return cached
        row = n - len(columns)
        total = Polynomial.zero(n)
        for pos, col in enumerate(columns):
            entry = jac[row][col]
            if entry.is_zero():
                continue
            rest = columns[:pos] + columns[pos + 1 :]
            cofactor = entry * minor(rest)
            total = total + (cofactor if pos % 2 == 0 else -cofactor)
        cache[columns] = total
        return total

    return minor(tuple(range(n)))


def project_character(poly: Polynomial, matrix, character) -> Polynomial:
    """Keep exactly the terms of `poly` whose monomial character under `matrix` is `character`.

    Summing the projections over all realized characters recovers the
    polynomial exactly.
    """
    if poly.nvars != matrix.n:
        raise DimensionMismatchError(
            f"polynomial in {poly.nvars} variables vs action on {matrix.n} coordinates"
        )
    k = tuple(character)
    if len(k) != matrix.r:
        raise InvalidInputError(f"character length {len(k)} != torus rank {matrix.r}")
    return Polynomial(
        poly.nvars,
        {exp: coef for exp, coef in poly.terms.items() if matrix.character_of(exp) == k},
    )


def realized_characters(poly: Polynomial, matrix) -> list[tuple[int, ...]]:
    """Distinct characters of the monomials of `poly`, in lexicographic order."""
    if poly.nvars != matrix.n:
        raise DimensionMismatchError(
            f"polynomial in {poly.nvars} variables vs action on {matrix.n} coordinates"
        )
    return sorted({matrix.character_of(exp) for exp in poly.terms})

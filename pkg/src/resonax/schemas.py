"""Request models for the HTTP service.

Weight matrices arrive either as bare row lists or as {"rows": [...]};
polynomials and maps arrive in the sparse term encoding understood by the
library parsers.  Fields that feed those parsers are typed loosely here on
purpose — the parsers produce better diagnostics than duplicate pydantic
validation would, and their errors are translated to HTTP 422 centrally.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

DEFAULT_SEED = 42
DEFAULT_COUNT = 10**6

WeightsJSON = Any  # [[...], ...] or {"rows": [[...], ...]}
PolyJSON = Any  # [{"exp": [...], "re": "p/q", "im": "p/q"}, ...]
MapJSON = Any  # [PolyJSON, ...] or {"components": [...]}
DomainJSON = Any  # {"kind": "...", ...}


class CheckRequest(BaseModel):
    rho: WeightsJSON


class WeightSpaceRequest(BaseModel):
    rho: WeightsJSON
    character: list[int]


class ResonanceRequest(BaseModel):
    rho: WeightsJSON


class QuasiResonanceRequest(BaseModel):
    rho: WeightsJSON
    rhop: WeightsJSON


class BoundRequest(BaseModel):
    """Coarse-vs-exact degree bounds; exactly one input form.

    m (+ optional mp, defaulting to m) selects the rank-1 positive-pair ratio
    bound; rho selects the row-sum bound for a nonnegative weight matrix.
    """

    m: list[int] | None = None
    mp: list[int] | None = None
    rho: WeightsJSON | None = None


class VerifyMapRequest(BaseModel):
    map: MapJSON
    rho: WeightsJSON
    rhop: WeightsJSON


class InnerProductRequest(BaseModel):
    domain: DomainJSON
    p: PolyJSON
    q: PolyJSON
    seed: int = DEFAULT_SEED
    count: int = Field(default=DEFAULT_COUNT, gt=0)


class OrthogonalityRequest(BaseModel):
    domain: DomainJSON
    rho: WeightsJSON
    max_degree: int = Field(default=3, ge=0)
    seed: int = DEFAULT_SEED
    count: int = Field(default=DEFAULT_COUNT, gt=0)


class InvarianceRequest(BaseModel):
    domain: DomainJSON
    rho: WeightsJSON
    seed: int = DEFAULT_SEED
    count: int = Field(default=DEFAULT_COUNT, gt=0)


class ChangeOfVariablesRequest(BaseModel):
    domain: DomainJSON
    map: MapJSON | None = None
    inverse: MapJSON | None = None
    shear: int | None = None  # shorthand: the k-th shear map and its inverse
    psi: PolyJSON
    phi: PolyJSON
    image: DomainJSON | None = None  # default: image of domain under the map
    seed: int = DEFAULT_SEED
    count: int = Field(default=DEFAULT_COUNT, gt=0)


class ReproduceRequest(BaseModel):
    criteria: list[int] | None = None

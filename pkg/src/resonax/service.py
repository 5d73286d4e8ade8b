"""HTTP service exposing the library over JSON.

Status mapping: 200 carries a mathematical answer (which may be a failing
verdict — inspect "pass"/"verdict"); 409 signals that the requested
computation is undefined because the action is inadmissible, with the dual
certificate in the body; 422 is a malformed or inconsistent request.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__, mc
from .compliance import check_compliance
from .domains import domain_from_json, shear_pair
from .errors import InadmissibleActionError, ResonaxError
from .poly import Polynomial, PolyMap
from .reproduce import format_table, run_criteria
from .resonance import nonneg_weight_bound, quasi_circular_bound, quasi_resonance, resonance
from .schemas import (
    BoundRequest,
    ChangeOfVariablesRequest,
    CheckRequest,
    InnerProductRequest,
    InvarianceRequest,
    OrthogonalityRequest,
    QuasiResonanceRequest,
    ReproduceRequest,
    ResonanceRequest,
    VerifyMapRequest,
    WeightSpaceRequest,
)
from .weights import WeightMatrix, check_admissible, enumerate_weight_space, validate_weight_matrix


def create_app() -> FastAPI:
    app = FastAPI(title="resonax", version=__version__)

    @app.exception_handler(InadmissibleActionError)
    async def _inadmissible(request, exc: InadmissibleActionError):
        body = {"error": "inadmissible-action", "detail": str(exc)}
        if exc.certificate is not None:
            body["certificate"] = exc.certificate.to_json()
        return JSONResponse(status_code=409, content=body)

    @app.exception_handler(ResonaxError)
    async def _bad_input(request, exc: ResonaxError):
        return JSONResponse(
            status_code=422, content={"error": type(exc).__name__, "detail": str(exc)}
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/check")
    def check(req: CheckRequest):
        matrix, warnings = validate_weight_matrix(req.rho)
        certificate = check_admissible(matrix)
        out = certificate.to_json()
        out["rows"] = [list(r) for r in matrix.rows]
        out["pass"] = certificate.admissible
        if warnings:
            out["warnings"] = warnings
        return out

    @app.post("/weight-space")
    def weight_space(req: WeightSpaceRequest):
        matrix = WeightMatrix.from_json(req.rho)
        space = enumerate_weight_space(matrix, tuple(req.character))
        if space is None:
            return {"character": list(req.character), "dimension": 0, "basis": [], "d": None, "D": None}
        return space.to_json()

    @app.post("/resonance")
    def resonance_report(req: ResonanceRequest):
        return resonance(WeightMatrix.from_json(req.rho)).to_json()

    @app.post("/quasi-resonance")
    def quasi_resonance_report(req: QuasiResonanceRequest):
        source = WeightMatrix.from_json(req.rho)
        target = WeightMatrix.from_json(req.rhop)
        return quasi_resonance(source, target).to_json()

    @app.post("/bound")
    def bound(req: BoundRequest):
        if (req.m is None) == (req.rho is None):
            return JSONResponse(
                status_code=422,
                content={
                    "error": "InvalidInputError",
                    "detail": "provide exactly one of 'm' (rank-1 positive pair) or 'rho' (nonnegative matrix)",
                },
            )
        if req.m is not None:
            report = quasi_circular_bound(req.m, req.mp if req.mp is not None else req.m)
            out = report.to_json()
            out["kind"] = "quasi-circular-ratio"
            out["pass"] = report.exact <= report.coarse
            return out
        report = nonneg_weight_bound(WeightMatrix.from_json(req.rho))
        out = report.to_json()
        out["kind"] = "row-sum"
        out["pass"] = all(e <= c for e, c in zip(report.exact, report.coarse))
        return out

    @app.post("/verify-map")
    def verify_map(req: VerifyMapRequest):
        poly_map = PolyMap.from_json(req.map)
        source = WeightMatrix.from_json(req.rho)
        target = WeightMatrix.from_json(req.rhop)
        return check_compliance(poly_map, source, target).to_json()

    @app.post("/mc/inner-product")
    def inner_product(req: InnerProductRequest):
        spec = domain_from_json(req.domain)
        estimate = mc.mc_inner_product(
            spec, Polynomial.from_json(req.p), Polynomial.from_json(req.q), req.seed, req.count
        )
        return estimate.to_json()

    @app.post("/mc/orthogonality")
    def orthogonality(req: OrthogonalityRequest):
        spec = domain_from_json(req.domain)
        matrix = WeightMatrix.from_json(req.rho)
        return mc.check_orthogonality(spec, matrix, req.max_degree, req.seed, req.count).to_json()

    @app.post("/mc/invariance")
    def invariance(req: InvarianceRequest):
        spec = domain_from_json(req.domain)
        matrix = WeightMatrix.from_json(req.rho)
        return mc.check_invariance(spec, matrix, req.seed, req.count).to_json()

    @app.post("/mc/change-of-variables")
    def change_of_variables(req: ChangeOfVariablesRequest):
        spec = domain_from_json(req.domain)
        if req.shear is not None:
            forward, inverse = shear_pair(int(req.shear))
        else:
            if req.map is None:
                return JSONResponse(
                    status_code=422,
                    content={
                        "error": "InvalidInputError",
                        "detail": "provide 'map' (with 'inverse') or the 'shear' shorthand",
                    },
                )
            forward = PolyMap.from_json(req.map)
            if req.inverse is None:
                return JSONResponse(
                    status_code=422,
                    content={
                        "error": "MissingInverseError",
                        "detail": "an exact inverse is required alongside 'map'",
                    },
                )
            inverse = PolyMap.from_json(req.inverse)
        image = domain_from_json(req.image) if req.image is not None else None
        report = mc.check_change_of_variables(
            spec,
            forward,
            inverse,
            psi=Polynomial.from_json(req.psi),
            phi=Polynomial.from_json(req.phi),
            seed=req.seed,
            count=req.count,
            image=image,
        )
        return report.to_json()

    @app.post("/reproduce")
    def reproduce(req: ReproduceRequest):
        try:
            results = run_criteria(req.criteria)
        except KeyError as bad:
            return JSONResponse(
                status_code=422,
                content={"error": "InvalidInputError", "detail": f"unknown criterion {bad}"},
            )
        return {
            "pass": all(r.passed and r.within_limit for r in results),
            "results": [r.to_json() for r in results],
            "table": format_table(results),
        }

    return app


app = create_app()

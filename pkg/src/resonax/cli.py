"""Command-line front end.

Every subcommand is a thin client of the HTTP service: by default the app is
mounted in process (no server needed), with --server pointing the same
requests at a remote instance.  Machine-readable JSON goes to stdout (or
--output), a one-line human summary to stderr.

Exit codes: 0 = success / verified; 1 = mathematical failure (inadmissible
action, non-compliant map, statistical violation, failing criterion);
2 = usage error (malformed JSON, inconsistent flags, bad request).
"""

from __future__ import annotations

import asyncio
import json
import os
import sys

import click
import httpx

DEFAULT_SEED = 42
DEFAULT_COUNT = 10**6

PASS_EXIT = 0
MATH_FAIL_EXIT = 1
USAGE_EXIT = 2


class ServiceClient:
    """POSTs to a remote service, or to an in-process app when no server is given."""

    def __init__(self, server: str | None):
        self.server = server.rstrip("/") if server else None

    def post(self, path: str, payload: dict) -> httpx.Response:
        if self.server is not None:
            try:
                with httpx.Client(base_url=self.server, timeout=600.0) as client:
                    return client.post(path, json=payload)
            except httpx.HTTPError as exc:
                click.echo(f"error: cannot reach {self.server}: {exc}", err=True)
                sys.exit(USAGE_EXIT)

        async def _go() -> httpx.Response:
            from .service import create_app

            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(transport=transport, base_url="http://service") as client:
                return await client.post(path, json=payload, timeout=None)

        return asyncio.run(_go())


def json_argument(text: str, flag: str):
    """Parse inline JSON, or the contents of a file when the value is @path."""
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise click.UsageError(f"{flag}: cannot read {text[1:]}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{flag}: malformed JSON at {exc.msg.lower()}: line {exc.lineno} column {exc.colno} (char {exc.pos})")


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("RESONAX_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise click.UsageError(f"RESONAX_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def emit(response: httpx.Response, summary, output: str | None) -> None:
    """Print the JSON body, summarize on stderr, exit with the mapped code."""
    try:
        body = response.json()
    except json.JSONDecodeError:
        click.echo(f"error: service returned non-JSON (status {response.status_code})", err=True)
        sys.exit(USAGE_EXIT)
    text = json.dumps(body, indent=2)
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        click.echo(text)
    if response.status_code == 200:
        if "pass" in body:
            ok = bool(body["pass"])
        elif "verdict" in body:
            ok = body["verdict"] == "admissible"
        else:
            ok = True
        line = summary(body) if callable(summary) else summary
        if line:
            click.echo(line, err=True)
        sys.exit(PASS_EXIT if ok else MATH_FAIL_EXIT)
    if response.status_code == 409:
        click.echo(f"mathematical failure: {body.get('detail', 'inadmissible action')}", err=True)
        sys.exit(MATH_FAIL_EXIT)
    click.echo(f"request rejected ({response.status_code}): {body.get('detail', body)}", err=True)
    sys.exit(USAGE_EXIT)


output_option = click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="write the JSON report to a file instead of stdout")
seed_option = click.option("--seed", type=int, default=None, help=f"RNG seed (default: $RESONAX_SEED or {DEFAULT_SEED})")
count_option = click.option("--count", type=int, default=DEFAULT_COUNT, show_default=True, help="Monte Carlo candidate draws")


@click.group()
@click.option("--server", default=None, metavar="URL", help="use a running service instead of in-process execution")
@click.version_option(package_name="resonax")
@click.pass_context
def main(ctx, server):
    """Exact torus-action invariants, degree bounds, and Monte Carlo verification."""
    ctx.obj = ServiceClient(server)


@main.command()
@click.option("--rho", required=True, help="weight matrix as JSON rows, e.g. '[[1],[2]]', or @file")
@output_option
@click.pass_obj
def check(client: ServiceClient, rho, output):
    """Decide admissibility; emits a re-verifiable certificate either way."""
    response = client.post("/check", {"rho": json_argument(rho, "--rho")})

    def summary(body):
        if body.get("verdict") == "admissible":
            return f"admissible; positive functional {body.get('positive_functional')}"
        return f"inadmissible; invariant-monomial witness {body.get('witness')}"

    emit(response, summary, output)


@main.command("weight-space")
@click.option("--rho", required=True, help="weight matrix JSON or @file")
@click.option("--character", "-k", required=True, help="character as a JSON integer vector, e.g. '[4]'")
@output_option
@click.pass_obj
def weight_space(client: ServiceClient, rho, character, output):
    """Enumerate the monomial basis of one weight space with its degree range."""
    payload = {"rho": json_argument(rho, "--rho"), "character": json_argument(character, "--character")}
    response = client.post("/weight-space", payload)

    def summary(body):
        if body.get("dimension"):
            return f"dimension {body['dimension']}, degrees {body['d']}..{body['D']}"
        return "empty weight space"

    emit(response, summary, output)


@main.command()
@click.option("--rho", required=True, help="weight matrix JSON or @file")
@output_option
@click.pass_obj
def resonance(client: ServiceClient, rho, output):
    """Resonance sets and orders of one action."""
    response = client.post("/resonance", {"rho": json_argument(rho, "--rho")})
    emit(response, lambda body: f"resonance orders {body['orders']}, overall {body['order']}", output)


@main.command("quasi-resonance")
@click.option("--rho", required=True, help="source weight matrix JSON or @file")
@click.option("--rhop", required=True, help="target weight matrix JSON or @file")
@output_option
@click.pass_obj
def quasi_resonance(client: ServiceClient, rho, rhop, output):
    """Quasi-resonance orders: per-component degree bounds for origin-fixing maps."""
    payload = {"rho": json_argument(rho, "--rho"), "rhop": json_argument(rhop, "--rhop")}
    response = client.post("/quasi-resonance", payload)
    emit(response, lambda body: f"degree bounds {body['orders']}, overall {body['order']}", output)


@main.command()
@click.option("--m", default=None, help="positive weight vector JSON for the rank-1 ratio bound")
@click.option("--mp", default=None, help="target weight vector (defaults to --m)")
@click.option("--rho", default=None, help="nonnegative weight matrix JSON for the row-sum bound")
@output_option
@click.pass_obj
def bound(client: ServiceClient, m, mp, rho, output):
    """Closed-form coarse degree bounds compared against the exact order."""
    payload = {}
    if m is not None:
        payload["m"] = json_argument(m, "--m")
    if mp is not None:
        payload["mp"] = json_argument(mp, "--mp")
    if rho is not None:
        payload["rho"] = json_argument(rho, "--rho")
    response = client.post("/bound", payload)

    def summary(body):
        if body.get("kind") == "quasi-circular-ratio":
            return f"exact order {body['exact']} <= coarse bound {body['coarse']}"
        return f"exact orders {body['exact']} <= coarse bounds {body['coarse']}"

    emit(response, summary, output)


@main.command("verify-map")
@click.option("--map", "map_json", required=True, help="polynomial map JSON (list of components) or @file")
@click.option("--rho", required=True, help="source weight matrix JSON or @file")
@click.option("--rhop", required=True, help="target weight matrix JSON or @file")
@output_option
@click.pass_obj
def verify_map(client: ServiceClient, map_json, rho, rhop, output):
    """Check a polynomial map against the necessary origin/Jacobian/character/degree conditions."""
    payload = {
        "map": json_argument(map_json, "--map"),
        "rho": json_argument(rho, "--rho"),
        "rhop": json_argument(rhop, "--rhop"),
    }
    response = client.post("/verify-map", payload)

    def summary(body):
        if body.get("pass"):
            degrees = [c["degree"] for c in body["components"]]
            bounds = [c["degree_bound"] for c in body["components"]]
            return f"compliant; component degrees {degrees} within bounds {bounds}"
        reasons = []
        if not body.get("origin_fixed", True):
            reasons.append("does not fix the origin")
        if not body.get("jacobian_constant", True) or not body.get("jacobian_nonzero", True):
            reasons.append("Jacobian determinant is not a nonzero constant")
        for component in body.get("components", []):
            if component.get("offending"):
                reasons.append(f"component {component['index'] + 1} has off-spectrum terms")
            elif not component.get("degree_ok", True):
                reasons.append(f"component {component['index'] + 1} exceeds its degree bound")
        return "not compliant: " + "; ".join(reasons)

    emit(response, summary, output)


@main.command()
@click.option("--check", "kind", required=True,
              type=click.Choice(["orthogonality", "invariance", "change-of-variables", "inner-product"]),
              help="which identity to verify")
@click.option("--domain", required=True, help="domain spec JSON or @file")
@click.option("--rho", default=None, help="weight matrix JSON (orthogonality, invariance)")
@click.option("--max-degree", type=int, default=3, show_default=True, help="monomial degree cap (orthogonality)")
@click.option("--map", "map_json", default=None, help="polynomial map JSON (change-of-variables)")
@click.option("--inverse", default=None, help="exact inverse map JSON (change-of-variables)")
@click.option("--shear", type=int, default=None, help="use the k-th shear map and inverse (change-of-variables)")
@click.option("--psi", default=None, help="test polynomial on the image side (change-of-variables)")
@click.option("--phi", default=None, help="test polynomial on the source side (change-of-variables)")
@click.option("--image", default=None, help="image domain spec JSON (default: image of --domain under the map)")
@click.option("--p", "p_json", default=None, help="left polynomial (inner-product)")
@click.option("--q", "q_json", default=None, help="right polynomial (inner-product)")
@seed_option
@count_option
@output_option
@click.pass_obj
def mc(client: ServiceClient, kind, domain, rho, max_degree, map_json, inverse, shear, psi, phi, image, p_json, q_json, seed, count, output):
    """Monte Carlo verification of orthogonality, invariance, or change of variables."""
    seed = resolve_seed(seed)
    domain_spec = json_argument(domain, "--domain")
    if kind == "orthogonality":
        if rho is None:
            raise click.UsageError("--check orthogonality requires --rho")
        payload = {"domain": domain_spec, "rho": json_argument(rho, "--rho"),
                   "max_degree": max_degree, "seed": seed, "count": count}
        response = client.post("/mc/orthogonality", payload)
        emit(response, lambda b: f"{len(b['pairs'])} pairs, worst z-score {b['worst_zscore']:.3f}", output)
    elif kind == "invariance":
        if rho is None:
            raise click.UsageError("--check invariance requires --rho")
        payload = {"domain": domain_spec, "rho": json_argument(rho, "--rho"), "seed": seed, "count": count}
        response = client.post("/mc/invariance", payload)
        emit(response, lambda b: f"{b['checked']} points checked, {b['violations']} violations", output)
    elif kind == "change-of-variables":
        if psi is None or phi is None:
            raise click.UsageError("--check change-of-variables requires --psi and --phi")
        payload = {"domain": domain_spec, "psi": json_argument(psi, "--psi"),
                   "phi": json_argument(phi, "--phi"), "seed": seed, "count": count}
        if shear is not None:
            payload["shear"] = shear
        if map_json is not None:
            payload["map"] = json_argument(map_json, "--map")
        if inverse is not None:
            payload["inverse"] = json_argument(inverse, "--inverse")
        if image is not None:
            payload["image"] = json_argument(image, "--image")
        response = client.post("/mc/change-of-variables", payload)
        emit(response, lambda b: f"|LHS-RHS| = {b['difference']:.3g} vs tolerance {b['tolerance']:.3g}", output)
    else:
        if p_json is None or q_json is None:
            raise click.UsageError("--check inner-product requires --p and --q")
        payload = {"domain": domain_spec, "p": json_argument(p_json, "--p"),
                   "q": json_argument(q_json, "--q"), "seed": seed, "count": count}
        response = client.post("/mc/inner-product", payload)
        emit(response, lambda b: f"estimate {b['value']['re']:.6g}{b['value']['im']:+.3g}i, stderr {b['stderr']:.3g}", output)


@main.command()
@click.option("--only", type=int, multiple=True, help="run only these criterion numbers (repeatable)")
@output_option
@click.pass_obj
def reproduce(client: ServiceClient, only, output):
    """Run the release acceptance suite and print the per-criterion table."""
    payload = {"criteria": sorted(only)} if only else {}
    response = client.post("/reproduce", payload)
    emit(response, lambda body: body.get("table", ""), output)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("resonax.service:app", host=host, port=port)


if __name__ == "__main__":
    main()

"""Command-line front end.

Exit codes are a stable contract: 0 success, 2 parse problem, 3 input too
large, 4 claim failed, 5 re-verification failed. Human-readable progress
goes to stderr; certificates are JSON on stdout or the --output path.
"""

from __future__ import annotations

import json
import random
import sys

import click

from . import corpus
from .certificate import certificate_to_json, parse_presentation, verify_certificate
from .construction import Bundle, Certificate, certify, construct
from .digraph import transversal_duality_check
from .errors import (
    ClaimFailed,
    GroundSetTooLarge,
    ParseError,
    ReverifyFailed,
    TooLarge,
    UnknownDemo,
)
from .matroid import MAX_GROUND

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_TOO_LARGE = 3
EXIT_CLAIM_FAILED = 4
EXIT_REVERIFY_FAILED = 5


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_json(path: str) -> object:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _say(msg: str) -> None:
    click.echo(msg, err=True)


def _report(bundle: Bundle, cert: Certificate) -> None:
    for name, verdict in cert.claims.items():
        if name == "ingleton_violated":
            _say(
                f"{name} {'OK' if verdict else 'FAILED'} "
                f"({cert.ingleton['lhs']} > {cert.ingleton['rhs']})"
            )
        else:
            _say(f"{name} {'OK' if verdict else 'FAILED'}")
    m = bundle.result
    status = "COMPLETE" if cert.complete else "INCOMPLETE"
    _say(
        f"certificate {status}: {m.size} elements, rank {m.rank}, "
        f"{2 * len(cert.minors)} minor presentations verified"
    )


@click.group()
def main() -> None:
    """Build and verify excluded-minor certificates for gammoids."""


@main.command()
@click.option("--input", "-i", "input_path", default="-", help="Presentation JSON, or - for stdin.")
@click.option("--output", "-o", "output_path", default="-", help="Certificate path, or - for stdout.")
@click.option("--branch", type=click.Choice(["1", "2", "both"]), default="both",
              help="Which branch backs the block element records.")
@click.option("--jobs", type=int, default=1, help="Parallel minor certifications.")
@click.option("--max-elements", type=int, default=MAX_GROUND,
              help="Cap on the result's ground set size.")
def build(input_path: str, output_path: str, branch: str, jobs: int, max_elements: int) -> None:
    """Build an excluded-minor certificate from a gammoid presentation."""
    try:
        doc = _load_json(input_path)
        presentation = parse_presentation(doc)
    except ParseError as exc:
        _say(f"parse error: {exc}")
        sys.exit(EXIT_PARSE)
    try:
        bundle = construct(presentation, max_elements=max_elements)
        cert = certify(bundle, branch=branch, jobs=jobs)
    except (TooLarge, GroundSetTooLarge) as exc:
        _say(f"too large: {exc}")
        sys.exit(EXIT_TOO_LARGE)
    except ClaimFailed as exc:
        _say(f"claim failed: {exc}")
        sys.exit(EXIT_CLAIM_FAILED)
    _write_text(output_path, certificate_to_json(cert))
    _report(bundle, cert)
    sys.exit(EXIT_OK if cert.complete else EXIT_CLAIM_FAILED)


@main.command()
@click.argument("certificate", default="-")
def verify(certificate: str) -> None:
    """Re-validate a certificate without rebuilding the construction."""
    try:
        doc = _load_json(certificate)
        verify_certificate(doc)
    except ParseError as exc:
        _say(f"parse error: {exc}")
        sys.exit(EXIT_PARSE)
    except ReverifyFailed as exc:
        _say(str(exc))
        sys.exit(EXIT_REVERIFY_FAILED)
    _say("certificate OK")
    sys.exit(EXIT_OK)


@main.command()
@click.argument("name")
def demo(name: str) -> None:
    """Run a named demo scenario: u24, rank3-gammoid, or strict-gammoid-duality."""
    if name not in corpus.DEMO_NAMES:
        _say(str(UnknownDemo(f"unknown demo {name!r}; choose from {corpus.DEMO_NAMES}")))
        sys.exit(EXIT_PARSE)
    if name == "strict-gammoid-duality":
        rng = random.Random(0x5717)
        count = 100
        for k in range(count):
            presentation = corpus.random_presentation(rng, max_vertices=6, strict=True)
            if not transversal_duality_check(presentation):
                click.echo(f"duality check FAILED on sample {k}")
                sys.exit(EXIT_CLAIM_FAILED)
        click.echo(f"{count} random strict presentations pass the duality cross-check")
        sys.exit(EXIT_OK)
    presentation = parse_presentation(corpus.PIPELINE_DEMOS[name])
    try:
        bundle = construct(presentation)
        cert = certify(bundle)
    except ClaimFailed as exc:
        click.echo(f"claim failed: {exc}")
        sys.exit(EXIT_CLAIM_FAILED)
    for claim, verdict in cert.claims.items():
        if claim == "ingleton_violated":
            click.echo(
                f"{claim} {'OK' if verdict else 'FAILED'} "
                f"({cert.ingleton['lhs']} > {cert.ingleton['rhs']})"
            )
        else:
            click.echo(f"{claim} {'OK' if verdict else 'FAILED'}")
    click.echo(
        f"certificate {'COMPLETE' if cert.complete else 'INCOMPLETE'}: "
        f"{bundle.result.size} elements, rank {bundle.result.rank}, "
        f"{2 * len(cert.minors)} minor presentations verified"
    )
    sys.exit(EXIT_OK if cert.complete else EXIT_CLAIM_FAILED)


if __name__ == "__main__":  # pragma: no cover
    main()

"""Certificate documents: JSON schema, round-tripping, and re-verification.

A certificate has exactly the top-level keys ``claims``, ``ingleton``,
``minors``, ``recipe``, and ``notes``. It embeds the excluded minor as a
basis family (rank tables are reconstructed on verify) and one gammoid
presentation per element and side. Re-verification rebuilds every
presentation's matroid from scratch through the linkage engine and
re-runs all equality and Ingleton checks without re-running the
construction.
"""

from __future__ import annotations

import json
from typing import Any

from .construction import CLAIM_NAMES, Certificate, MinorRecord, MinorSide
from .digraph import Digraph, Presentation
from .errors import AxiomViolation, GammoidError, ParseError, ReverifyFailed
from .matroid import MAX_GROUND, Matroid

_PRESENTATION_KEYS = ("vertices", "arcs", "ground", "targets")
_CERTIFICATE_KEYS = ("claims", "ingleton", "minors", "recipe", "notes")


def _string_list(doc: Any, where: str) -> list[str]:
    if not isinstance(doc, list) or not all(isinstance(x, str) for x in doc):
        raise ParseError(f"{where} must be a list of strings")
    return doc


def parse_presentation(doc: Any) -> Presentation:
    """Decode and validate one presentation document."""
    if not isinstance(doc, dict):
        raise ParseError("presentation must be a JSON object")
    if set(doc) != set(_PRESENTATION_KEYS):
        raise ParseError(
            f"presentation keys must be exactly {list(_PRESENTATION_KEYS)}, "
            f"got {sorted(doc)}"
        )
    vertices = _string_list(doc["vertices"], "vertices")
    ground = _string_list(doc["ground"], "ground")
    targets = _string_list(doc["targets"], "targets")
    if len(set(vertices)) != len(vertices):
        raise ParseError("duplicate vertices")
    if not isinstance(doc["arcs"], list):
        raise ParseError("arcs must be a list")
    arcs = []
    for entry in doc["arcs"]:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, str) for x in entry)
        ):
            raise ParseError(f"arc {entry!r} must be a pair of vertex labels")
        arcs.append((entry[0], entry[1]))
    if len(set(arcs)) != len(arcs):
        raise ParseError("duplicate arcs")
    vset = set(vertices)
    for u, v in arcs:
        if u == v:
            raise ParseError(f"self-loop at {u!r}")
        if u not in vset or v not in vset:
            raise ParseError(f"arc ({u!r}, {v!r}) uses an undeclared vertex")
    for name, part in (("ground", ground), ("targets", targets)):
        if len(set(part)) != len(part):
            raise ParseError(f"duplicate labels in {name}")
        for x in part:
            if x not in vset:
                raise ParseError(f"{name} label {x!r} is not a vertex")
    if not ground:
        raise ParseError("ground set must be nonempty")
    if len(ground) > MAX_GROUND:
        raise ParseError(f"ground set exceeds {MAX_GROUND} elements")
    return Presentation(Digraph(vertices, arcs), ground, targets)


def certificate_to_doc(cert: Certificate) -> dict:
    return {
        "claims": dict(cert.claims),
        "ingleton": dict(cert.ingleton),
        "minors": [
            {
                "x": rec.x,
                "deletion": {
                    "presentation": rec.deletion.presentation.to_doc(),
                    "verified": rec.deletion.verified,
                },
                "contraction": {
                    "presentation": rec.contraction.presentation.to_doc(),
                    "verified": rec.contraction.verified,
                },
            }
            for rec in cert.minors
        ],
        "recipe": dict(cert.recipe),
        "notes": list(cert.notes),
    }


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_doc(cert), indent=2) + "\n"


def certificate_from_doc(doc: Any) -> Certificate:
    """Decode a certificate document, checking schema only."""
    _check_certificate_schema(doc)
    minors = tuple(
        MinorRecord(
            x=entry["x"],
            deletion=MinorSide(
                parse_presentation(entry["deletion"]["presentation"]),
                entry["deletion"]["verified"],
            ),
            contraction=MinorSide(
                parse_presentation(entry["contraction"]["presentation"]),
                entry["contraction"]["verified"],
            ),
        )
        for entry in doc["minors"]
    )
    return Certificate(
        claims=dict(doc["claims"]),
        ingleton=dict(doc["ingleton"]),
        minors=minors,
        recipe=dict(doc["recipe"]),
        notes=tuple(doc["notes"]),
    )


def _check_certificate_schema(doc: Any) -> None:
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object")
    if set(doc) != set(_CERTIFICATE_KEYS):
        raise ParseError(
            f"certificate keys must be exactly {list(_CERTIFICATE_KEYS)}, "
            f"got {sorted(doc)}"
        )
    claims = doc["claims"]
    if not isinstance(claims, dict) or set(claims) != set(CLAIM_NAMES):
        raise ParseError("claims must map exactly the known claim names")
    if not all(isinstance(v, bool) for v in claims.values()):
        raise ParseError("claim verdicts must be booleans")
    ing = doc["ingleton"]
    if not isinstance(ing, dict) or set(ing) != {"A", "B", "C", "D", "lhs", "rhs", "violated"}:
        raise ParseError("ingleton record has wrong keys")
    for key in "ABCD":
        _string_list(ing[key], f"ingleton.{key}")
    if not isinstance(ing["lhs"], int) or not isinstance(ing["rhs"], int):
        raise ParseError("ingleton sides must be integers")
    if not isinstance(ing["violated"], bool):
        raise ParseError("ingleton.violated must be a boolean")
    recipe = doc["recipe"]
    if not isinstance(recipe, dict) or set(recipe) != {
        "excluded_minor",
        "delete",
        "contract",
        "input",
    }:
        raise ParseError("recipe record has wrong keys")
    em = recipe["excluded_minor"]
    if not isinstance(em, dict) or set(em) != {"ground", "bases"}:
        raise ParseError("recipe.excluded_minor must carry ground and bases")
    ground = _string_list(em["ground"], "recipe.excluded_minor.ground")
    if not ground or len(ground) > MAX_GROUND:
        raise ParseError("excluded minor ground set has a bad size")
    if not isinstance(em["bases"], list) or not em["bases"]:
        raise ParseError("excluded minor must list at least one basis")
    for basis in em["bases"]:
        _string_list(basis, "recipe.excluded_minor.bases[]")
    _string_list(recipe["delete"], "recipe.delete")
    _string_list(recipe["contract"], "recipe.contract")
    inp = recipe["input"]
    if not isinstance(inp, dict) or set(inp) != {"presentation", "bases"}:
        raise ParseError("recipe.input must carry presentation and bases")
    if not isinstance(inp["bases"], list):
        raise ParseError("recipe.input.bases must be a list")
    if not isinstance(doc["minors"], list):
        raise ParseError("minors must be a list")
    for k, entry in enumerate(doc["minors"]):
        if not isinstance(entry, dict) or set(entry) != {"x", "deletion", "contraction"}:
            raise ParseError(f"minors[{k}] has wrong keys")
        if not isinstance(entry["x"], str):
            raise ParseError(f"minors[{k}].x must be a string")
        for side in ("deletion", "contraction"):
            rec = entry[side]
            if not isinstance(rec, dict) or set(rec) != {"presentation", "verified"}:
                raise ParseError(f"minors[{k}].{side} has wrong keys")
            if not isinstance(rec["verified"], bool):
                raise ParseError(f"minors[{k}].{side}.verified must be a boolean")
    if not isinstance(doc["notes"], list) or not all(
        isinstance(x, str) for x in doc["notes"]
    ):
        raise ParseError("notes must be a list of strings")


def verify_certificate(doc: Any) -> None:
    """Re-validate a certificate document from scratch.

    Raises :class:`ParseError` on schema problems and
    :class:`ReverifyFailed` (with a location) on the first check that
    fails. Success means every recorded presentation re-materializes to
    the claimed minor and every recorded quantity recomputes.
    """
    _check_certificate_schema(doc)

    for name, verdict in doc["claims"].items():
        if verdict is not True:
            raise ReverifyFailed(f"claims.{name}", "certificate is not complete")

    em = doc["recipe"]["excluded_minor"]
    try:
        m = Matroid.from_bases(em["ground"], em["bases"])
    except (AxiomViolation, ValueError) as exc:
        raise ReverifyFailed("recipe.excluded_minor.bases", str(exc)) from None
    if m.to_doc()["bases"] != em["bases"]:
        raise ReverifyFailed(
            "recipe.excluded_minor.bases", "basis family is not in canonical form"
        )

    ing = doc["ingleton"]
    try:
        check = m.ingleton_check(ing["A"], ing["B"], ing["C"], ing["D"])
    except ValueError as exc:
        raise ReverifyFailed("ingleton", str(exc)) from None
    if check.lhs != ing["lhs"] or check.rhs != ing["rhs"] or check.holds == ing["violated"]:
        raise ReverifyFailed(
            "ingleton",
            f"recomputed {check.lhs} vs {check.rhs}, recorded "
            f"{ing['lhs']} vs {ing['rhs']}",
        )
    if not ing["violated"]:
        raise ReverifyFailed("ingleton", "certificate does not record a violation")

    recorded = [entry["x"] for entry in doc["minors"]]
    if recorded != list(m.ground):
        raise ReverifyFailed("minors", "element list does not match the ground set")
    for k, entry in enumerate(doc["minors"]):
        x = entry["x"]
        for side, minor in (("deletion", m.delete([x])), ("contraction", m.contract([x]))):
            where = f"minors[{k}].{side}"
            rec = entry[side]
            if rec["verified"] is not True:
                raise ReverifyFailed(where, "record is marked unverified")
            try:
                pres = parse_presentation(rec["presentation"])
                presented = pres.matroid
            except (GammoidError, ValueError) as exc:
                raise ReverifyFailed(where, f"presentation invalid: {exc}") from None
            if not presented.equals(minor):
                raise ReverifyFailed(where, "presentation does not present the minor")

    recipe = doc["recipe"]
    labels = set(m.ground)
    dels, cons = recipe["delete"], recipe["contract"]
    if not set(dels) <= labels or not set(cons) <= labels or set(dels) & set(cons):
        raise ReverifyFailed("recipe", "delete/contract lists are not disjoint subsets")
    try:
        source = parse_presentation(recipe["input"]["presentation"])
        source_matroid = source.matroid
    except (GammoidError, ValueError) as exc:
        raise ReverifyFailed("recipe.input.presentation", str(exc)) from None
    if not m.delete(dels).contract(cons).equals(source_matroid):
        raise ReverifyFailed("recipe", "recipe does not recover the input matroid")
    if source_matroid.to_doc()["bases"] != recipe["input"]["bases"]:
        raise ReverifyFailed("recipe.input.bases", "input basis family does not match")

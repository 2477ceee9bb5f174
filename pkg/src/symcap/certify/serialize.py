"""JSON round-trip for embedding certificates.

Schema (version symcap.certificate/1):

    {"format": "symcap.certificate/1",
     "source": ["1", "8", ...],
     "target": [...],
     "steps": [{"rule": "<name>", "params": {...}, "result": [...]}]}

Every number is an exact string: "p/q" or an expression in the canonical
grammar (root, pow, floor, + - * /).  Suspended certificates nest as full
certificate objects under params["inner"].
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List

from ..capacities import Ellipsoid
from ..errors import InvalidInput
from ..exact import format_expr, parse_expr
from .builders import PackCertificate
from .rules import (
    AxiomLambda35,
    AxiomMSg2,
    AxiomMSsqrt,
    AxiomTwoA1,
    BallPack4D,
    EmbeddingCertificate,
    EmbeddingStep,
    Inclusion,
    Permute,
    Rescale,
    Suspend,
)

CERT_FORMAT = "symcap.certificate/1"
PACK_FORMAT = "symcap.pack/1"


def _axes(e: Ellipsoid) -> List[str]:
    return [format_expr(a) for a in e.axes]


def _ellipsoid(axes: List[str]) -> Ellipsoid:
    return Ellipsoid.of(*(parse_expr(s) for s in axes))


def _rule_doc(rule) -> dict:
    if isinstance(rule, Inclusion):
        return {"rule": "Inclusion", "params": {}}
    if isinstance(rule, Permute):
        return {"rule": "Permute", "params": {"perm": list(rule.perm)}}
    if isinstance(rule, Rescale):
        return {"rule": "Rescale", "params": {"factor": format_expr(rule.factor)}}
    if isinstance(rule, AxiomMSsqrt):
        return {
            "rule": "AxiomMSsqrt",
            "params": {"b": format_expr(rule.b), "scale": format_expr(rule.scale)},
        }
    if isinstance(rule, AxiomMSg2):
        return {
            "rule": "AxiomMSg2",
            "params": {"b": format_expr(rule.b), "scale": format_expr(rule.scale)},
        }
    if isinstance(rule, AxiomTwoA1):
        return {"rule": "AxiomTwoA1", "params": {}}
    if isinstance(rule, AxiomLambda35):
        return {
            "rule": "AxiomLambda35",
            "params": {
                "lam": format_expr(rule.lam),
                "b": format_expr(rule.b),
                "scale": format_expr(rule.scale),
            },
        }
    if isinstance(rule, BallPack4D):
        return {
            "rule": "BallPack4D",
            "params": {
                "e": rule.e,
                "f": rule.f,
                "c": rule.c,
                "d": rule.d,
                "scale": format_expr(rule.scale),
            },
        }
    if isinstance(rule, Suspend):
        return {
            "rule": "Suspend",
            "params": {"m": rule.m, "inner": certificate_to_doc(rule.inner)},
        }
    raise InvalidInput(f"unknown rule {rule!r}")


def _rule_from_doc(doc: dict):
    name, params = doc["rule"], doc.get("params", {})
    if name == "Inclusion":
        return Inclusion()
    if name == "Permute":
        return Permute(tuple(int(i) for i in params["perm"]))
    if name == "Rescale":
        return Rescale(parse_expr(params["factor"]))
    if name == "AxiomMSsqrt":
        return AxiomMSsqrt(parse_expr(params["b"]), parse_expr(params["scale"]))
    if name == "AxiomMSg2":
        return AxiomMSg2(parse_expr(params["b"]), parse_expr(params["scale"]))
    if name == "AxiomTwoA1":
        return AxiomTwoA1()
    if name == "AxiomLambda35":
        return AxiomLambda35(
            parse_expr(params["lam"]),
            parse_expr(params["b"]),
            parse_expr(params["scale"]),
        )
    if name == "BallPack4D":
        return BallPack4D(
            int(params["e"]),
            int(params["f"]),
            int(params["c"]),
            int(params["d"]),
            parse_expr(params["scale"]),
        )
    if name == "Suspend":
        return Suspend(int(params["m"]), certificate_from_doc(params["inner"]))
    raise InvalidInput(f"unknown rule name {name!r}")


def certificate_to_doc(cert: EmbeddingCertificate) -> dict:
    return {
        "format": CERT_FORMAT,
        "source": _axes(cert.source),
        "target": _axes(cert.target),
        "steps": [
            {**_rule_doc(s.rule), "result": _axes(s.result)} for s in cert.steps
        ],
    }


def certificate_from_doc(doc: dict) -> EmbeddingCertificate:
    if doc.get("format", CERT_FORMAT) != CERT_FORMAT:
        raise InvalidInput(f"unsupported certificate format {doc.get('format')!r}")
    steps = tuple(
        EmbeddingStep(_rule_from_doc(s), _ellipsoid(s["result"]))
        for s in doc.get("steps", [])
    )
    return EmbeddingCertificate(
        _ellipsoid(doc["source"]), _ellipsoid(doc["target"]), steps
    )


def certificate_to_json(cert: EmbeddingCertificate, indent=2) -> str:
    return json.dumps(certificate_to_doc(cert), indent=indent)


def certificate_from_json(text: str) -> EmbeddingCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"not valid JSON: {exc}") from exc
    return certificate_from_doc(doc)


def pack_to_doc(pc: PackCertificate) -> dict:
    return {
        "format": PACK_FORMAT,
        "k": pc.k,
        "n": pc.n,
        "toric": {
            "explicit": pc.toric_explicit,
            "theta_linear": [list(row) for row in pc.theta.linear],
            "theta_translation": [
                format_expr_fraction(t) for t in pc.theta.translation
            ],
        },
        "ellipsoid": certificate_to_doc(pc.ellipsoid),
    }


def format_expr_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def pack_to_json(pc: PackCertificate, indent=2) -> str:
    return json.dumps(pack_to_doc(pc), indent=indent)

"""The map description document: a JSON text with one statically-known shape.

Scalars use the padic literal forms ("7", "-4", "1/3", "[c0,...]@p^v").
Canonical serialization is json with sorted keys and two-space indent, so
parse -> serialize -> parse is the identity and canonical files round-trip
byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .autos import AffineAuto, AutoWord, HenonFactor, TriangularAuto
from .errors import ParseError
from .padic import FieldSpec, PadicElement
from .poly import MultiPoly
from .rational import (
    RationalAffine,
    RationalHenon,
    RationalTriangular,
    RationalWord,
)

_FACTOR_TYPES = ("henon", "triangular", "affine")


@dataclass
class MapDocument:
    """Parsed, validated map description prior to field embedding."""

    prime: int
    extension_degree: int
    precision: int
    dimension: int
    factors: list[dict]
    conjugator: list[dict] | None
    defining_poly: tuple[int, ...] | None
    primes: list[int]
    rational_periodic_points: list[list[str]]

    def field_spec(self, precision: int | None = None) -> FieldSpec:
        try:
            return FieldSpec(
                self.prime,
                self.extension_degree,
                precision or self.precision,
                self.defining_poly,
            )
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def parse_document(text: str) -> MapDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object")
    try:
        prime = int(raw["prime"])
        precision = int(raw.get("precision", 10))
        extension = int(raw.get("extension_degree", 1))
        factors = raw["factors"]
    except KeyError as exc:
        raise ParseError(f"missing required field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad field value: {exc}") from exc
    if not isinstance(factors, list) or not factors:
        raise ParseError("factors must be a nonempty list")
    dimension = raw.get("dimension")
    parsed_factors = [_validate_factor(f) for f in factors]
    conjugator = raw.get("conjugator")
    parsed_conj = None
    if conjugator is not None:
        if not isinstance(conjugator, list) or not conjugator:
            raise ParseError("conjugator must be a nonempty factor list")
        parsed_conj = [_validate_factor(f) for f in conjugator]
    dims = {_factor_dim(f) for f in parsed_factors}
    if parsed_conj:
        dims |= {_factor_dim(f) for f in parsed_conj}
    if dimension is not None:
        dims.add(int(dimension))
    if len(dims) != 1:
        raise ParseError(f"inconsistent dimensions in document: {sorted(dims)}")
    dim = dims.pop()
    defining = raw.get("defining_poly")
    if defining is not None:
        defining = tuple(int(c) for c in defining)
    primes = [int(p) for p in raw.get("primes", [])]
    points = raw.get("rational_periodic_points", [])
    if not isinstance(points, list):
        raise ParseError("rational_periodic_points must be a list of points")
    points = [[str(c) for c in pt] for pt in points]
    return MapDocument(
        prime, extension, precision, dim, parsed_factors, parsed_conj, defining, primes, points
    )


def _factor_dim(f: dict) -> int:
    if f["type"] == "henon":
        return 2
    if f["type"] == "triangular":
        return len(f["a"])
    return len(f["matrix"])


def _validate_factor(f) -> dict:
    if not isinstance(f, dict) or "type" not in f:
        raise ParseError("each factor needs a 'type' field")
    kind = f["type"]
    if kind not in _FACTOR_TYPES:
        raise ParseError(f"unknown factor type {kind!r}")
    out = {"type": kind, "inverted": bool(f.get("inverted", False))}
    try:
        if kind == "henon":
            out["a"] = str(f["a"])
            out["poly"] = [str(c) for c in f["poly"]]
            if len(out["poly"]) < 3:
                raise ParseError("henon polynomial needs degree >= 2")
        elif kind == "triangular":
            out["a"] = [str(c) for c in f["a"]]
            r = len(out["a"])
            terms = f["F"]
            if not isinstance(terms, list) or len(terms) != r:
                raise ParseError("triangular factor needs one term list per coordinate")
            F = []
            for i, tlist in enumerate(terms):
                seen = set()
                parsed = []
                for term in tlist:
                    e = tuple(int(x) for x in term["e"])
                    if len(e) != r or any(x < 0 for x in e):
                        raise ParseError("bad exponent tuple in triangular term")
                    if any(e[j] and j <= i for j in range(r)):
                        raise ParseError(
                            f"F_{i + 1} may only involve variables after X_{i + 1}"
                        )
                    if e in seen:
                        raise ParseError("duplicate exponent tuple in term list")
                    seen.add(e)
                    parsed.append({"c": str(term["c"]), "e": list(e)})
                F.append(sorted(parsed, key=lambda t: tuple(t["e"])))
            out["F"] = F
        else:
            out["matrix"] = [[str(c) for c in row] for row in f["matrix"]]
            r = len(out["matrix"])
            if any(len(row) != r for row in out["matrix"]):
                raise ParseError("affine matrix must be square")
            out["translation"] = [str(c) for c in f["translation"]]
            if len(out["translation"]) != r:
                raise ParseError("affine translation length must match the matrix")
    except KeyError as exc:
        raise ParseError(f"factor is missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad factor data: {exc}") from exc
    return out


# ---------------------------------------------------------------------------
# embedding into a p-adic field

def build_word(doc: MapDocument, precision: int | None = None) -> tuple[FieldSpec, AutoWord]:
    spec = doc.field_spec(precision)
    factors = tuple(
        (_build_factor(f, spec, doc.dimension), f["inverted"]) for f in doc.factors
    )
    conj = None
    if doc.conjugator:
        conj_factors = tuple(
            (_build_factor(f, spec, doc.dimension), f["inverted"]) for f in doc.conjugator
        )
        conj = AutoWord(spec, doc.dimension, conj_factors, None)
    try:
        return spec, AutoWord(spec, doc.dimension, factors, conj)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _build_factor(f: dict, spec: FieldSpec, dim: int):
    try:
        if f["type"] == "henon":
            return HenonFactor(spec.parse(f["a"]), tuple(spec.parse(c) for c in f["poly"]))
        if f["type"] == "triangular":
            a = tuple(spec.parse(c) for c in f["a"])
            F = []
            for tlist in f["F"]:
                terms = {tuple(t["e"]): spec.parse(t["c"]) for t in tlist}
                F.append(MultiPoly(spec, dim, terms))
            return TriangularAuto(dim, a, tuple(F))
        return AffineAuto(
            tuple(tuple(spec.parse(c) for c in row) for row in f["matrix"]),
            tuple(spec.parse(c) for c in f["translation"]),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def build_rational_word(doc: MapDocument) -> RationalWord:
    """Exact-rational mirror of the word; digit-list literals are rejected."""
    factors = tuple((_build_rational_factor(f, doc.dimension), f["inverted"]) for f in doc.factors)
    conj = None
    if doc.conjugator:
        conj = RationalWord(
            doc.dimension,
            tuple((_build_rational_factor(f, doc.dimension), f["inverted"]) for f in doc.conjugator),
            None,
        )
    return RationalWord(doc.dimension, factors, conj)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{text!r} is not a rational literal") from exc


def _build_rational_factor(f: dict, dim: int):
    if f["type"] == "henon":
        return RationalHenon(_rational(f["a"]), tuple(_rational(c) for c in f["poly"]))
    if f["type"] == "triangular":
        a = tuple(_rational(c) for c in f["a"])
        F = tuple({tuple(t["e"]): _rational(t["c"]) for t in tlist} for tlist in f["F"])
        return RationalTriangular(dim, a, F)
    return RationalAffine(
        tuple(tuple(_rational(c) for c in row) for row in f["matrix"]),
        tuple(_rational(c) for c in f["translation"]),
    )


# ---------------------------------------------------------------------------
# canonical serialization

def document_dict(doc: MapDocument) -> dict:
    out = {
        "prime": doc.prime,
        "extension_degree": doc.extension_degree,
        "precision": doc.precision,
        "dimension": doc.dimension,
        "factors": doc.factors,
    }
    if doc.conjugator:
        out["conjugator"] = doc.conjugator
    if doc.defining_poly is not None:
        out["defining_poly"] = list(doc.defining_poly)
    if doc.primes:
        out["primes"] = doc.primes
    if doc.rational_periodic_points:
        out["rational_periodic_points"] = doc.rational_periodic_points
    return out


def serialize_document(doc: MapDocument) -> str:
    return canonical_json(document_dict(doc))


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def word_to_document(spec: FieldSpec, word: AutoWord) -> MapDocument:
    factors = [_factor_dict(g, inv) for g, inv in word.factors]
    conj = None
    if word.conjugator is not None:
        conj = [_factor_dict(g, inv) for g, inv in word.conjugator.factors]
    defining = None if spec.f == 1 else spec.h
    return MapDocument(
        spec.p, spec.f, spec.N, word.dim, factors, conj, defining, [], []
    )


def _factor_dict(g, inverted: bool) -> dict:
    if isinstance(g, HenonFactor):
        return {
            "type": "henon",
            "inverted": inverted,
            "a": g.a.to_literal(),
            "poly": [c.to_literal() for c in g.coeffs],
        }
    if isinstance(g, TriangularAuto):
        F = []
        for f in g.F:
            F.append(
                sorted(
                    ({"c": c.to_literal(), "e": list(e)} for e, c in f.terms.items()),
                    key=lambda t: tuple(t["e"]),
                )
            )
        return {
            "type": "triangular",
            "inverted": inverted,
            "a": [c.to_literal() for c in g.a],
            "F": F,
        }
    return {
        "type": "affine",
        "inverted": inverted,
        "matrix": [[c.to_literal() for c in row] for row in g.matrix],
        "translation": [c.to_literal() for c in g.translation],
    }

"""
Versioned JSON schemas for command input and report output.

Every document carries "schema": "boolmeas/1". On input a missing field
is accepted and any other value is rejected; on output it is always
stamped. Parse errors raise ValidationError with a pointer to the
offending field.

Rationals are accepted as [num, den], "num/den" or integers. A clopen
set is a list of [lo, hi] pairs or of [num-lo, den-lo, num-hi, den-hi]
quadruples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

from ..core.algebras import (
    CantorAlgebra,
    CantorClopen,
    FiniteCofinite,
    FiniteCofiniteAlgebra,
    FiniteSetAlgebra,
    Presentation,
)
from ..core.convergence import HomSequence
from ..core.interval_model import SHIFT_PIECE_LIMIT, ClopenSet, as_rational, normalize
from ..core.measures import Measure
from ..core.names import POINT_BIT_CAP, Homomorphism, SamplePoint
from ..errors import ValidationError

SCHEMA = "boolmeas/1"


def load_document(text: str) -> Dict[str, Any]:
    """Parse JSON text into an object and check the schema envelope."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}", pointer="/")
    if not isinstance(data, dict):
        raise ValidationError("input must be a JSON object", pointer="/")
    version = data.get("schema", SCHEMA)
    if version != SCHEMA:
        raise ValidationError(f"unsupported schema {version!r}; expected {SCHEMA!r}", pointer="/schema")
    return data


def envelope(command: str, payload: Mapping[str, Any]) -> Dict[str, Any]:
    return {"schema": SCHEMA, "command": command, **payload}


def dump_document(document: Mapping[str, Any]) -> str:
    return json.dumps(document, sort_keys=True)


def rational_json(q: Fraction) -> List[int]:
    return [q.numerator, q.denominator]


# ========== Field Helpers ==========

def require(data: Mapping, key: str, pointer: str = "") -> Any:
    if key not in data:
        raise ValidationError(f"missing field {key!r}", pointer=f"{pointer}/{key}")
    return data[key]


def natural(data: Mapping, key: str, pointer: str = "", default: Optional[int] = None, minimum: int = 0) -> int:
    value = data.get(key, default)
    if value is None:
        raise ValidationError(f"missing field {key!r}", pointer=f"{pointer}/{key}")
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ValidationError(f"expected an integer >= {minimum}, got {value!r}", pointer=f"{pointer}/{key}")
    return value


def parse_clopen(data, pointer: str) -> ClopenSet:
    if not isinstance(data, list):
        raise ValidationError("clopen set must be a list of intervals", pointer=pointer)
    if data and all(isinstance(item, list) and len(item) == 4 for item in data):
        return ClopenSet.from_json(data, pointer=pointer)
    return normalize(data, pointer=pointer)


def parse_algebra(data: Mapping, pointer: str = "") -> FiniteSetAlgebra:
    atoms = require(data, "atoms", pointer)
    if isinstance(atoms, int) and not isinstance(atoms, bool):
        if atoms < 1:
            raise ValidationError("an algebra needs at least one atom", pointer=f"{pointer}/atoms")
        return FiniteSetAlgebra.of_size(atoms)
    if not isinstance(atoms, list):
        raise ValidationError("atoms must be a list of labels or a count", pointer=f"{pointer}/atoms")
    return FiniteSetAlgebra(tuple(atoms))


def parse_weights(algebra: FiniteSetAlgebra, data: Mapping, pointer: str = "") -> Measure:
    weights = require(data, "weights", pointer)
    if not isinstance(weights, list):
        raise ValidationError("weights must be a list", pointer=f"{pointer}/weights")
    return Measure.from_weights(algebra, [as_rational(w, pointer=f"{pointer}/weights/{i}")
                                          for i, w in enumerate(weights)])


def parse_element(domain: Presentation, data, pointer: str):
    """
    finite set algebra : bitstring '101'
    Cantor algebra     : 'C3', '~C3', '0', '1' or {support: [...], patterns: ['01', ...]}
    finite-cofinite    : {finite: [...], cofinite: bool}
    """
    if isinstance(domain, FiniteSetAlgebra):
        return domain.parse(data, pointer=pointer)
    if isinstance(domain, CantorAlgebra):
        if isinstance(data, str):
            text = data.strip()
            if text in ("0", "1"):
                return domain.unit() if text == "1" else domain.zero()
            negated = text.startswith("~")
            body = text[1:] if negated else text
            body = body[2:] if body.startswith("C_") else body[1:] if body.startswith("C") else ""
            if not body.isdigit():
                raise ValidationError(f"cannot read Cantor element {data!r}", pointer=pointer)
            generator = domain.generator(int(body))
            return ~generator if negated else generator
        if isinstance(data, Mapping):
            return CantorClopen.build(require(data, "support", pointer), require(data, "patterns", pointer),
                                      pointer=pointer)
        raise ValidationError(f"cannot read Cantor element {data!r}", pointer=pointer)
    if isinstance(domain, FiniteCofiniteAlgebra):
        if not isinstance(data, Mapping):
            raise ValidationError("expected {finite: [...], cofinite: bool}", pointer=pointer)
        finite = data.get("finite", [])
        if not isinstance(finite, list):
            raise ValidationError("finite must be a list of naturals", pointer=f"{pointer}/finite")
        for i, n in enumerate(finite):
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise ValidationError(f"expected a natural number, got {n!r}", pointer=f"{pointer}/finite/{i}")
        cofinite = data.get("cofinite", False)
        if not isinstance(cofinite, bool):
            raise ValidationError(f"cofinite must be true or false, got {cofinite!r}",
                                  pointer=f"{pointer}/cofinite")
        return FiniteCofinite(frozenset(finite), cofinite)
    raise ValidationError(f"unsupported domain {type(domain).__name__}", pointer=pointer)


# ========== Command Inputs ==========

@dataclass
class KelleyInput:
    algebra: FiniteSetAlgebra
    family: List[str]
    N: Optional[int]


def parse_kelley(data: Mapping) -> KelleyInput:
    algebra = parse_algebra(data)
    family = require(data, "family")
    if not isinstance(family, list) or not family:
        raise ValidationError("family must be a nonempty list of bitstrings", pointer="/family")
    for i, member in enumerate(family):
        algebra.parse(member, pointer=f"/family/{i}")
    N = natural(data, "N", minimum=1) if "N" in data else None
    return KelleyInput(algebra, family, N)


@dataclass
class MixInput:
    a: ClopenSet
    b: ClopenSet
    N: int


def parse_mix(data: Mapping) -> MixInput:
    return MixInput(
        parse_clopen(require(data, "a"), "/a"),
        parse_clopen(require(data, "b"), "/b"),
        natural(data, "N"),
    )


@dataclass
class CenterInput:
    algebra: FiniteSetAlgebra
    measure: Measure
    depth: int
    N: Optional[int]


def parse_center(data: Mapping) -> CenterInput:
    algebra = parse_algebra(data)
    N = natural(data, "N") if "N" in data else None
    return CenterInput(algebra, parse_weights(algebra, data), natural(data, "depth"), N)


@dataclass
class SwapInput:
    phiA: Homomorphism
    phiB: Homomorphism
    m: int


def parse_swap(data: Mapping, shift_limit: int = SHIFT_PIECE_LIMIT) -> SwapInput:
    phiA = Homomorphism.from_dict(require(data, "phiA"), pointer="/phiA", shift_limit=shift_limit)
    phiB = Homomorphism.from_dict(require(data, "phiB"), pointer="/phiB", shift_limit=shift_limit)
    return SwapInput(phiA, phiB, natural(data, "m", minimum=1))


@dataclass
class NameInput:
    hom: Homomorphism
    point: SamplePoint
    queries: List[Any]
    labels: List[str]


def parse_name(data: Mapping, shift_limit: int = SHIFT_PIECE_LIMIT, bit_cap: int = POINT_BIT_CAP) -> NameInput:
    hom = Homomorphism.from_dict(require(data, "hom"), pointer="/hom", shift_limit=shift_limit)
    point = SamplePoint.from_dict(require(data, "point"), pointer="/point", bit_cap=bit_cap)
    raw = require(data, "queries")
    if not isinstance(raw, list) or not raw:
        raise ValidationError("queries must be a nonempty list", pointer="/queries")
    queries = [parse_element(hom.domain, q, f"/queries/{i}") for i, q in enumerate(raw)]
    labels = [q if isinstance(q, str) else str(e) for q, e in zip(raw, queries)]
    return NameInput(hom, point, queries, labels)


@dataclass
class ConvergeInput:
    sequence: HomSequence
    s: int
    N: int


def parse_converge(data: Mapping, shift_limit: int = SHIFT_PIECE_LIMIT) -> ConvergeInput:
    raw = require(data, "sequence")
    if not isinstance(raw, Mapping):
        raise ValidationError("sequence must be an object", pointer="/sequence")
    kind = require(raw, "kind", "/sequence")
    base = None
    if "base" in raw:
        base = Homomorphism.from_dict(raw["base"], pointer="/sequence/base", shift_limit=shift_limit)
    elif kind == "bit-flip":
        base = Homomorphism.digit_identity()
    sequence = HomSequence(kind, base)
    return ConvergeInput(sequence, natural(data, "s"), natural(data, "N"))



"""JSON documents describing decorated polytopes and deformation families.

Layout (keys in this canonical order, unknown keys rejected)::

    {
      "field": {"min_poly": [-2, 0, 1], "root_interval": ["1/1", "3/2"]},
      "quasilattice": {"torsion": [], "generators": [[elem, ...], ...]},
      "facets": [{"marker": [1, 0, 0], "offset": elem}, ...],
      "deformation": {"end_generators": [[elem, ...], ...], "end_offsets": [elem, ...]}
    }

``min_poly`` lists integer coefficients from the constant term up.  Each
generator is the image ``d(e_i)`` of one free generator of ``Q`` (a vector of
length ``n``).  A field element ``elem`` is the list of its rational
coordinates over ``1, alpha, ..., alpha^(D-1)``, each written ``"p/q"``.
The ``deformation`` section is optional.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

from .deformation import DeformationFamily
from .decorated import DecoratedPolytope
from .delzant import DelzantData
from .quasilattice import Quasilattice, QuasilatticeError
from .scalar import FieldElement, FieldError, RealAlgebraicField, format_rational


class DocumentError(ValueError):
    """The input is not a well-formed document."""


Datum = Union[DecoratedPolytope, DeformationFamily]

_TOP_KEYS = ("field", "quasilattice", "facets", "deformation")


def _keys(obj: Any, where: str, required: tuple, optional: tuple = ()) -> dict:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise DocumentError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise DocumentError(f"{where}: missing key(s) {missing}")
    return obj


def _rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DocumentError(f"{where}: rationals are written as 'p/q' strings, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad rational {x!r}") from exc


def _integer(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: expected an integer, got {x!r}")
    return x


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise DocumentError(f"{where}: expected a list")
    return x


def _element(K: RealAlgebraicField, x: Any, where: str) -> FieldElement:
    coeffs = _list(x, where)
    if len(coeffs) != K.degree:
        raise DocumentError(f"{where}: expected {K.degree} coefficients, got {len(coeffs)}")
    return K([_rational(c, where) for c in coeffs])


def _vectors(K, x, where) -> tuple:
    return tuple(
        tuple(_element(K, e, f"{where}[{i}][{j}]") for j, e in enumerate(_list(v, f"{where}[{i}]")))
        for i, v in enumerate(_list(x, where))
    )


def encode_element(x: FieldElement) -> list:
    return [format_rational(c) for c in x.coeffs]


def encode_field(K: RealAlgebraicField) -> dict:
    out: dict = {"min_poly": list(K.min_poly)}
    if K.root_interval is not None:
        out["root_interval"] = [format_rational(x) for x in K.root_interval]
    return out


def parse_field(obj: Any) -> RealAlgebraicField:
    _keys(obj, "field", ("min_poly",), ("root_interval",))
    poly = [_integer(c, "field.min_poly") for c in _list(obj["min_poly"], "field.min_poly")]
    interval = obj.get("root_interval")
    if interval is not None:
        interval = [_rational(x, "field.root_interval") for x in _list(interval, "field.root_interval")]
    try:
        return RealAlgebraicField(poly, interval)
    except FieldError as exc:
        raise DocumentError(f"field: {exc}") from exc


def parse(obj: Any) -> Datum:
    _keys(obj, "document", _TOP_KEYS[:3], _TOP_KEYS[3:])
    K = parse_field(obj["field"])
    ql = _keys(obj["quasilattice"], "quasilattice", ("generators",), ("torsion",))
    torsion = [_integer(t, "quasilattice.torsion") for t in _list(ql.get("torsion", []), "quasilattice.torsion")]
    gens = _vectors(K, ql["generators"], "quasilattice.generators")
    try:
        Q = Quasilattice(K, gens, tuple(torsion))
    except (QuasilatticeError, ValueError) as exc:
        raise DocumentError(f"quasilattice: {exc}") from exc

    markers, offsets = [], []
    for i, f in enumerate(_list(obj["facets"], "facets")):
        _keys(f, f"facets[{i}]", ("marker", "offset"))
        marker = [_integer(c, f"facets[{i}].marker") for c in _list(f["marker"], f"facets[{i}].marker")]
        if len(marker) != Q.m:
            raise DocumentError(f"facets[{i}].marker: expected {Q.m} entries")
        markers.append(tuple(marker))
        offsets.append(_element(K, f["offset"], f"facets[{i}].offset"))
    D = DecoratedPolytope(Q, tuple(markers), tuple(offsets))
    if "deformation" not in obj:
        return D

    deform = _keys(obj["deformation"], "deformation", ("end_generators", "end_offsets"))
    end_gens = _vectors(K, deform["end_generators"], "deformation.end_generators")
    end_offsets = [
        _element(K, e, f"deformation.end_offsets[{i}]")
        for i, e in enumerate(_list(deform["end_offsets"], "deformation.end_offsets"))
    ]
    if len(end_offsets) != D.d:
        raise DocumentError("deformation.end_offsets: need one offset per facet")
    try:
        return DeformationFamily.between(D, end_gens, end_offsets)
    except (QuasilatticeError, ValueError) as exc:
        raise DocumentError(f"deformation: {exc}") from exc


def loads(text: str) -> Datum:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return parse(obj)


def load(path) -> Datum:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def encode(datum: Datum) -> dict:
    if isinstance(datum, DeformationFamily):
        start = datum.start_datum()
        doc = encode(start)
        doc["deformation"] = {
            "end_generators": [[encode_element(x) for x in g] for g in datum.end.generators],
            "end_offsets": [encode_element(b) for _, b in datum.offset_paths],
        }
        return doc
    Q = datum.quasilattice
    return {
        "field": encode_field(Q.field),
        "quasilattice": {
            "torsion": list(Q.torsion),
            "generators": [[encode_element(x) for x in g] for g in Q.generators],
        },
        "facets": [
            {"marker": list(q), "offset": encode_element(L)}
            for q, L in zip(datum.markers, datum.offsets)
        ],
    }


def dumps(obj: Any) -> str:
    if isinstance(obj, (DecoratedPolytope, DeformationFamily)):
        obj = encode(obj)
    elif isinstance(obj, DelzantData):
        obj = encode_delzant(obj)
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def encode_delzant(data: DelzantData) -> dict:
    return {
        "field": encode_field(data.field),
        "n": data.n,
        "d": data.d,
        "normals": [[encode_element(x) for x in data.normal(i)] for i in range(data.d)],
        "offsets": [encode_element(x) for x in data.offsets],
        "kernel_basis": [[encode_element(x) for x in v] for v in data.kernel_basis],
        "quadrics": [
            {"coeffs": [encode_element(x) for x in q.coeffs], "rhs": encode_element(q.rhs)}
            for q in data.quadrics
        ],
        "level_set": "t_j = pi |z_j|^2 >= 0 for all j, subject to every quadric",
    }

"""Byte-stable JSON and CSV forms for every value the CLI emits.

One canonical encoding: json.dumps with sorted keys and no whitespace,
integers only (element coordinates are lists of residues, polynomials are
lists of coordinate lists, ascending degree).  Anything that round-trips
does so to an identical value, and identical values serialize to identical
bytes.
"""

from __future__ import annotations

import json

from .constructions import Certificate
from .curve import HyperellipticCurve, PointCount, new_curve
from .field import FieldSpec, canonical_nonsquare, make_field
from .poly import Poly, poly as poly_from_coeffs

__all__ = [
    "canonical_json",
    "certificate_to_dict",
    "count_to_dict",
    "curve_from_dict",
    "curve_to_dict",
    "missed_csv_lines",
    "poly_from_coordinate_lists",
    "poly_to_coordinate_lists",
    "row_to_dict",
    "summary_csv_lines",
]


def canonical_json(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def poly_to_coordinate_lists(f: Poly) -> list:
    """Ascending-degree list of coordinate lists (length r each)."""
    return [list(f.field.from_key(k).coords) for k in f.coeffs]


def poly_from_coordinate_lists(field: FieldSpec, data) -> Poly:
    if not isinstance(data, list):
        raise ValueError("polynomial must be a list of coefficient arrays")
    coeffs = []
    for entry in data:
        if not isinstance(entry, list) or len(entry) != field.r:
            raise ValueError(
                f"coefficient {entry!r} is not a length-{field.r} coordinate list"
            )
        if not all(isinstance(c, int) and 0 <= c < field.p for c in entry):
            raise ValueError(f"coordinates in {entry!r} must be residues mod {field.p}")
        # coordinate lists are constant-first, matching FieldElement.coords
        key = 0
        for c in entry:
            key = key * field.p + c
        coeffs.append(field.from_key(key))
    return poly_from_coeffs(field, coeffs)


def curve_to_dict(curve: HyperellipticCurve) -> dict:
    field = curve.field
    return {
        "p": field.p,
        "r": field.r,
        "modulus": list(field.modulus),
        "f": poly_to_coordinate_lists(curve.f),
    }


def _field_from_dict(d: dict) -> FieldSpec:
    p = d.get("p")
    r = d.get("r")
    if not isinstance(p, int) or not isinstance(r, int):
        raise ValueError("p and r must be integers")
    field = make_field(p, r)
    modulus = d.get("modulus")
    if modulus is not None and list(modulus) != list(field.modulus):
        raise ValueError(
            f"modulus {modulus} is not the canonical modulus "
            f"{list(field.modulus)} for GF({field.q})"
        )
    return field


def curve_from_dict(d: dict) -> HyperellipticCurve:
    if not isinstance(d, dict):
        raise ValueError("curve payload must be a JSON object")
    unknown = set(d) - {"p", "r", "modulus", "f"}
    if unknown:
        raise ValueError(f"unknown curve keys: {sorted(unknown)}")
    field = _field_from_dict(d)
    if "f" not in d:
        raise ValueError("curve payload lacks f")
    return new_curve(field, poly_from_coordinate_lists(field, d["f"]))


def count_to_dict(count: PointCount) -> dict:
    return {"N": count.total, "affine": count.affine, "infinity": count.at_infinity}


def certificate_to_dict(cert: Certificate) -> dict:
    """Certificate as JSON data.

    f is the maximal-side model, twist_f the pointless one (twist_f equals
    f scaled by the canonical nonsquare), N the point count of the
    pointless curve.  Field context (p, r, modulus) rides along so the
    certificate can be re-verified with no other input.
    """
    f = cert.construction_poly
    field = f.field
    if cert.curve is not None:
        twist = cert.curve.f
    else:
        twist = f * canonical_nonsquare(field)
    return {
        "method": cert.method,
        "params": dict(cert.params),
        "p": field.p,
        "r": field.r,
        "modulus": list(field.modulus),
        "f": poly_to_coordinate_lists(f),
        "twist_f": poly_to_coordinate_lists(twist),
        "N": cert.count.total if cert.count is not None else 0,
        "verified": {
            "squarefree": bool(cert.verified.get("squarefree")),
            "count": bool(cert.verified.get("count")),
        },
    }


def row_to_dict(row) -> dict:
    return {
        "p": row.p,
        "missed": list(row.missed),
        "count": row.count,
        "largest": row.largest,
    }


def missed_csv_lines(rows) -> list:
    """The missed-genus table: p,missed with semicolon-joined genera."""
    out = ["p,missed"]
    for row in rows:
        out.append(f"{row.p},{';'.join(str(g) for g in row.missed)}")
    return out


def summary_csv_lines(rows) -> list:
    """The summary table: p,count,largest."""
    out = ["p,count,largest"]
    for row in rows:
        out.append(f"{row.p},{row.count},{row.largest}")
    return out

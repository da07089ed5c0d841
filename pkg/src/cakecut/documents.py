"""JSON documents for instances and divisions.

Schema (canonical field order, rationals as lowest-terms "p/q"):

    instance: {"label": str, "n": int, "params": {str: "p/q"},
               "players": [{"segments": [{"left","right","mass"}]}]}
    division: {"pieces": [{"left": "p/q", "right": "p/q"}]}

Only non-zero-mass segments are serialized; parsing rebuilds the zero-mass
gap cells, so serialize followed by parse is the identity on valid documents.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .model import (
    Division,
    Instance,
    Interval,
    NotNormalized,
    OverlappingSegments,
    make_valuation,
)
from .rational import RationalFormatError, format_rational, parse_rational


class SchemaError(ValueError):
    """Document does not match the expected schema."""


def _rat(node, where: str) -> Fraction:
    try:
        return parse_rational(node)
    except RationalFormatError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def instance_to_dict(instance: Instance) -> dict:
    return {
        "label": instance.label,
        "n": instance.n,
        "params": {k: format_rational(v) for k, v in sorted(instance.params.items())},
        "players": [
            {
                "segments": [
                    {
                        "left": format_rational(l),
                        "right": format_rational(r),
                        "mass": format_rational(m),
                    }
                    for l, r, m in v.segments()
                ]
            }
            for v in instance.players
        ],
    }


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict) or "players" not in doc:
        raise SchemaError("instance document must be an object with a 'players' list")
    players_node = doc["players"]
    if not isinstance(players_node, list) or not players_node:
        raise SchemaError("'players' must be a non-empty list")
    players = []
    for pi, pnode in enumerate(players_node):
        where = f"players[{pi}]"
        if not isinstance(pnode, dict) or "segments" not in pnode:
            raise SchemaError(f"{where}: expected an object with 'segments'")
        segs = []
        for si, snode in enumerate(pnode["segments"]):
            sw = f"{where}.segments[{si}]"
            if not isinstance(snode, dict):
                raise SchemaError(f"{sw}: expected an object")
            try:
                segs.append(
                    (
                        _rat(snode["left"], sw + ".left"),
                        _rat(snode["right"], sw + ".right"),
                        _rat(snode["mass"], sw + ".mass"),
                    )
                )
            except KeyError as exc:
                raise SchemaError(f"{sw}: missing field {exc}") from None
        try:
            players.append(make_valuation(segs))
        except NotNormalized as exc:
            raise NotNormalized(exc.total, where=where) from None
        except OverlappingSegments as exc:
            raise OverlappingSegments(f"{where}: {exc}") from None
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    n = doc.get("n", len(players))
    if n != len(players):
        raise SchemaError(f"declared n={n} but {len(players)} players given")
    params = {}
    for key, val in (doc.get("params") or {}).items():
        params[str(key)] = _rat(val, f"params[{key}]")
    return Instance(tuple(players), label=str(doc.get("label", "")), params=params)


def division_to_dict(division: Division) -> dict:
    return {
        "pieces": [
            {"left": format_rational(p.left), "right": format_rational(p.right)}
            for p in division.pieces
        ]
    }


def division_from_dict(doc: dict) -> Division:
    if not isinstance(doc, dict) or "pieces" not in doc or not isinstance(doc["pieces"], list):
        raise SchemaError("division document must be an object with a 'pieces' list")
    pieces = []
    for i, node in enumerate(doc["pieces"]):
        where = f"pieces[{i}]"
        if not isinstance(node, dict):
            raise SchemaError(f"{where}: expected an object")
        try:
            left = _rat(node["left"], where + ".left")
            right = _rat(node["right"], where + ".right")
        except KeyError as exc:
            raise SchemaError(f"{where}: missing field {exc}") from None
        try:
            pieces.append(Interval(left, right))
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    return Division(tuple(pieces))


def serialize_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2) + "\n"


def parse_instance(document: str) -> Instance:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return instance_from_dict(doc)


def serialize_division(division: Division) -> str:
    return json.dumps(division_to_dict(division), indent=2) + "\n"


def parse_division(document: str) -> Division:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return division_from_dict(doc)

"""Read and write domain-spec JSON documents.

See the cli module docstring for the schema.  Serialization is canonical
(sorted keys, two-space indent, trailing newline), so a parsed document
round-trips byte-identically.
"""

from __future__ import annotations

import json
from functools import reduce
from pathlib import Path
from typing import Union

from .errors import SpecFormatError
from .geometry import ConvexRadii, Disc, DomainSpec, Rectangle
from .maps import (
    Affine,
    AnalyticMap,
    Compose,
    Exp,
    Identity,
    Mobius,
    Power,
    Sin,
    compose,
)


def _complex_from(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(part, (int, float)) for part in value)
    ):
        return complex(value[0], value[1])
    raise SpecFormatError(f"{where}: expected a number or [re, im] pair")


def _complex_to(value: complex) -> list:
    return [value.real, value.imag]


def map_from_dict(doc: dict) -> AnalyticMap:
    if not isinstance(doc, dict) or "type" not in doc:
        raise SpecFormatError("map description must be an object with a 'type'")
    kind = doc["type"]
    try:
        if kind == "identity":
            return Identity()
        if kind == "affine":
            return Affine(
                _complex_from(doc["a"], "affine.a"),
                _complex_from(doc.get("b", 0.0), "affine.b"),
            )
        if kind == "exp":
            return Exp()
        if kind == "sin":
            return Sin()
        if kind == "power":
            return Power(doc["n"])
        if kind == "mobius":
            return Mobius(
                *(_complex_from(doc[key], f"mobius.{key}") for key in "abcd")
            )
        if kind == "compose":
            maps = doc.get("maps")
            if not isinstance(maps, list) or len(maps) < 2:
                raise SpecFormatError("compose needs a list of at least two maps")
            # the list is applied right to left: the last entry acts first
            return reduce(compose, (map_from_dict(entry) for entry in maps))
    except KeyError as exc:
        raise SpecFormatError(f"map '{kind}' is missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise SpecFormatError(f"bad parameters for map '{kind}': {exc}") from exc
    raise SpecFormatError(f"unknown map type '{kind}'")


def _flatten_compose(map: AnalyticMap) -> list[AnalyticMap]:
    if isinstance(map, Compose):
        return _flatten_compose(map.outer) + _flatten_compose(map.inner)
    return [map]


def map_to_dict(map: AnalyticMap) -> dict:
    if isinstance(map, Identity):
        return {"type": "identity"}
    if isinstance(map, Affine):
        return {"type": "affine", "a": _complex_to(map.a), "b": _complex_to(map.b)}
    if isinstance(map, Exp):
        return {"type": "exp"}
    if isinstance(map, Sin):
        return {"type": "sin"}
    if isinstance(map, Power):
        return {"type": "power", "n": map.n}
    if isinstance(map, Mobius):
        return {
            "type": "mobius",
            "a": _complex_to(map.a),
            "b": _complex_to(map.b),
            "c": _complex_to(map.c),
            "d": _complex_to(map.d),
        }
    if isinstance(map, Compose):
        return {
            "type": "compose",
            "maps": [map_to_dict(part) for part in _flatten_compose(map)],
        }
    raise SpecFormatError(f"cannot serialize map {type(map).__name__}")


def base_from_dict(doc: dict):
    if not isinstance(doc, dict) or "type" not in doc:
        raise SpecFormatError("base description must be an object with a 'type'")
    kind = doc["type"]
    try:
        if kind == "rectangle":
            return Rectangle(doc["x0"], doc["x1"], doc["y0"], doc["y1"])
        if kind == "disc":
            return Disc(
                _complex_from(doc.get("center", [0.0, 0.0]), "disc.center"),
                doc.get("radius", 1.0),
            )
    except KeyError as exc:
        raise SpecFormatError(f"base '{kind}' is missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise SpecFormatError(f"bad parameters for base '{kind}': {exc}") from exc
    raise SpecFormatError(f"unknown base type '{kind}'")


def base_to_dict(base) -> dict:
    if isinstance(base, Rectangle):
        return {
            "type": "rectangle",
            "x0": base.x0,
            "x1": base.x1,
            "y0": base.y0,
            "y1": base.y1,
        }
    if isinstance(base, Disc):
        return {"type": "disc", "center": _complex_to(base.center), "radius": base.radius}
    raise SpecFormatError(f"cannot serialize base {type(base).__name__}")


def parse_spec(doc: dict) -> DomainSpec:
    if not isinstance(doc, dict):
        raise SpecFormatError("domain spec must be a JSON object")
    unknown = set(doc) - {"base", "map", "inradius", "convex_radii", "area"}
    if unknown:
        raise SpecFormatError(f"unknown spec fields: {sorted(unknown)}")
    if "base" not in doc or "map" not in doc:
        raise SpecFormatError("domain spec requires 'base' and 'map'")

    convex = None
    if "convex_radii" in doc:
        radii = doc["convex_radii"]
        if not isinstance(radii, dict) or set(radii) != {"ro", "ri", "rc"}:
            raise SpecFormatError("convex_radii must carry exactly ro, ri, rc")
        try:
            convex = ConvexRadii(outer=radii["ro"], inner=radii["ri"], curvature=radii["rc"])
        except (TypeError, ValueError) as exc:
            raise SpecFormatError(f"bad convex_radii: {exc}") from exc

    try:
        return DomainSpec(
            base=base_from_dict(doc["base"]),
            map=map_from_dict(doc["map"]),
            inradius=doc.get("inradius"),
            convex_radii=convex,
            area=doc.get("area"),
        )
    except (TypeError, ValueError) as exc:
        raise SpecFormatError(f"bad domain spec: {exc}") from exc


def spec_to_dict(spec: DomainSpec) -> dict:
    doc: dict = {"base": base_to_dict(spec.base), "map": map_to_dict(spec.map)}
    if spec.inradius is not None:
        doc["inradius"] = spec.inradius
    if spec.convex_radii is not None:
        doc["convex_radii"] = {
            "ro": spec.convex_radii.outer,
            "ri": spec.convex_radii.inner,
            "rc": spec.convex_radii.curvature,
        }
    if spec.area is not None:
        doc["area"] = spec.area
    return doc


def dump_spec(spec: DomainSpec) -> str:
    """Canonical JSON text for a spec (stable for round-trips)."""
    return json.dumps(spec_to_dict(spec), indent=2, sort_keys=True) + "\n"


def load_spec(path: Union[str, Path]) -> DomainSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecFormatError(f"cannot read spec file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON in {path}: {exc}") from exc
    return parse_spec(doc)


def save_spec(spec: DomainSpec, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_spec(spec))

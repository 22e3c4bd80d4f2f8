"""JSON schema of body spec files (draft 7).

Example::

    {"kind": "revolution",
     "params": {"profile": {"type": "ellipse", "radius": 1, "half_height": 2},
                "axis": {"point": [0, 0, 0], "direction": [0, 0, 1]}}}
"""

_pos = {"type": "number", "exclusiveMinimum": 0}
_vec3 = {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}


def _axes(n):
    return {"type": "array", "items": _pos, "minItems": n, "maxItems": n}


def _params(props, required=()):
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}


_profile = {
    "type": "object",
    "required": ["type"],
    "oneOf": [
        _params({"type": {"const": "ellipse"}, "radius": _pos, "half_height": _pos},
                ["type", "radius", "half_height"]),
        _params({"type": {"const": "power"}, "radius": _pos, "half_height": _pos, "exponent": _pos},
                ["type", "radius", "half_height", "exponent"]),
        _params({"type": {"const": "table"},
                 "heights": {"type": "array", "items": {"type": "number"}, "minItems": 3},
                 "radii": {"type": "array", "items": {"type": "number", "minimum": 0}, "minItems": 3}},
                ["type", "heights", "radii"]),
    ],
}

_axis = _params({"point": _vec3, "direction": _vec3}, ["point", "direction"])

PARAMS_BY_KIND = {
    "ball": _params({"radius": _pos, "dim": {"enum": [3, 4]}}),
    "ellipsoid": _params({"semi_axes": _axes(3)}, ["semi_axes"]),
    "ellipsoid4": _params({"semi_axes": _axes(4)}, ["semi_axes"]),
    "two_disc_hull": _params({"r1": _pos, "r2": _pos}),
    "revolution": _params({"profile": _profile, "axis": _axis}, ["profile"]),
}

BODY_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "tomoscope body spec",
    "type": "object",
    "required": ["kind"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": sorted(PARAMS_BY_KIND)},
        "params": {"type": "object"},
        "center": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 4},
        "orientation": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": k}}}, "then": {"properties": {"params": sch}}}
        for k, sch in sorted(PARAMS_BY_KIND.items())
    ],
}

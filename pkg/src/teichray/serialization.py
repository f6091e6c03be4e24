"""JSON wire formats.  Rationals travel as ``"p/q"`` strings, ``+inf`` as ``"+inf"``."""

from __future__ import annotations

import json
from fractions import Fraction

from .exactlog import INF, ExactLog, as_fraction
from .foliation import (BasisFoliation, Certificate, Component, ExtendedValue,
                        GeneralFoliation, Kind, RayDecomposition)
from .origami import Origami
from .pairs import LogDistance, LogSum


class SchemaError(ValueError):
    """Input does not match the expected JSON shape."""


def dumps(payload) -> str:
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


def rational(value) -> Fraction:
    if isinstance(value, float):
        raise SchemaError("rationals must be given as 'p/q' strings, not floats")
    try:
        return as_fraction(value)
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


def fmt(value) -> str:
    if value == INF:
        return "+inf"
    return str(Fraction(value))


def fmt_real(value):
    if value == INF:
        return "+inf"
    return float(value)


def _require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"field {key!r} has the wrong type")
    return val


def ray_from_json(obj) -> RayDecomposition:
    comps = _require(obj, "components", list)
    parsed = []
    for c in comps:
        try:
            kind = Kind(c.get("kind", "cylinder"))
        except (ValueError, AttributeError):
            raise SchemaError(f"bad component kind in {c!r}") from None
        parsed.append(Component(str(_require(c, "id")), rational(_require(c, "a")),
                                rational(_require(c, "h")), kind))
    normalized = obj.get("normalized", False)
    if not isinstance(normalized, bool):
        raise SchemaError("'normalized' must be a boolean")
    return RayDecomposition(tuple(parsed), normalized)


def ray_to_json(d: RayDecomposition) -> dict:
    return {
        "components": [
            {"id": c.id, "kind": c.kind.value, "a": fmt(c.a), "h": fmt(c.h)}
            for c in d.components
        ],
        "normalized": d.normalized,
    }


def pair_from_json(obj):
    return ray_from_json(_require(obj, "ray1", dict)), ray_from_json(_require(obj, "ray2", dict))


def foliation_from_json(obj):
    """``{"basis": [...]}`` or ``{"u": [...], "certificates": [{"pairing", "witness"}]}``."""
    if not isinstance(obj, dict):
        raise SchemaError("foliation must be an object")
    if "basis" in obj:
        return BasisFoliation(rational(v) for v in _require(obj, "basis", list))
    u = [rational(v) for v in _require(obj, "u", list)]
    certs = []
    for cert in obj.get("certificates", []):
        certs.append(Certificate(rational(_require(cert, "pairing")),
                                 [rational(v) for v in _require(cert, "witness", list)]))
    return GeneralFoliation(u, tuple(certs))


def origami_from_json(obj) -> Origami:
    n = _require(obj, "n", int)
    r = _require(obj, "r", list)
    u = _require(obj, "u", list)
    if len(r) != n or len(u) != n or not all(isinstance(k, int) for k in r + u):
        raise SchemaError("'r' and 'u' must list n integer images")
    return Origami.from_one_indexed(r, u)


def origami_to_json(o: Origami) -> dict:
    r, u = o.one_indexed()
    return {"n": o.n, "r": r, "u": u}


def distance_to_json(d: LogDistance) -> dict:
    if d.infinite:
        return {"value": "+inf", "log_argument": "+inf"}
    out = {"value": 0 if d.is_zero() else d.value, "log_argument": fmt(d.log_argument)}
    if d.coefficient != Fraction(1, 2):
        out["coefficient"] = fmt(d.coefficient)
    if d.argmax is not None:
        out["argmax"] = d.argmax
    return out


def logsum_to_json(s: LogSum) -> dict:
    if s.infinite:
        return {"value": "+inf", "max_ratio_forward": "+inf", "max_ratio_backward": "+inf",
                "coefficient": fmt(s.coefficient)}
    return {
        "value": 0 if s.is_zero() else s.value,
        "max_ratio_forward": fmt(s.forward),
        "max_ratio_backward": fmt(s.backward),
        "coefficient": fmt(s.coefficient),
    }


def exactlog_to_json(x: ExactLog) -> dict:
    return {"value": 0 if x.is_zero() else float(x), "log_argument": fmt(x.argument),
            "coefficient": fmt(x.coefficient)}


def extended_to_json(v: ExtendedValue) -> dict:
    if v.infinite:
        return {"kind": "infinite", "value": "+inf"}
    if v.lower_bound:
        return {"kind": "lower-bound", "value": fmt(v.value), "exactness": v.exactness}
    return {"kind": "exact", "value": fmt(v.value)}

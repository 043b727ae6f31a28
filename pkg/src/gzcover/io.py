"""
JSON encodings for matrices, GZ values, decomposition data, cover points
and Z_D elements.  Complex numbers are written as ``[re, im]`` pairs.
"""

import json
import math
import sys

import numpy as np

from .cover import CoverPoint, ZDElement
from .decomp import RegularDecompositionData
from .errors import DimensionMismatch, InvalidInput
from .gz_core import GZValue
from .linalg_core import as_cmatrix

__all__ = [
    "decode_cmatrix",
    "decode_cover_point",
    "decode_gz_value",
    "decode_stratum",
    "decode_zd_element",
    "dumps",
    "encode",
    "encode_cmatrix",
    "encode_cover_point",
    "encode_gz_value",
    "encode_stratum",
    "encode_zd_element",
    "load",
]


def _c(v):
    v = complex(v)
    # adding 0.0 turns -0.0 into 0.0
    return [v.real + 0.0, v.imag + 0.0]


def _uc(pair):
    if isinstance(pair, (int, float)):
        return complex(pair)
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise InvalidInput(f"expected a [re, im] pair, got {pair!r}")
    re, im = (float(v) for v in pair)
    if not (math.isfinite(re) and math.isfinite(im)):
        raise InvalidInput("complex entries must be finite")
    return complex(re, im)


def _cvec(values):
    return [_c(v) for v in values]


def _ucvec(values):
    if not isinstance(values, list):
        raise InvalidInput(f"expected a list of [re, im] pairs, got {values!r}")
    return [_uc(v) for v in values]


def _need(obj, *keys):
    if not isinstance(obj, dict):
        raise InvalidInput(f"expected a JSON object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InvalidInput(f"missing field(s): {', '.join(missing)}")


def encode_cmatrix(m):
    a = as_cmatrix(m)
    return {"dim": a.shape[0], "entries": [_cvec(row) for row in a]}


def decode_cmatrix(obj):
    _need(obj, "dim", "entries")
    rows = obj["entries"]
    if not isinstance(rows, list):
        raise InvalidInput("entries must be a list of rows")
    a = as_cmatrix([_ucvec(row) for row in rows]) if rows else None
    if a is None or a.shape[0] != obj["dim"]:
        raise DimensionMismatch(f"dim {obj['dim']} does not match the entries")
    return a


def encode_gz_value(c):
    return {"n": c.n, "levels": [_cvec(level) for level in c.levels]}


def decode_gz_value(obj):
    _need(obj, "n", "levels")
    c = GZValue(tuple(_ucvec(level) for level in obj["levels"]))
    if c.n != obj["n"]:
        raise DimensionMismatch(f"n = {obj['n']} but {c.n} levels given")
    return c


def encode_stratum(data):
    return {"n": data.n, "strata": [list(p) for p in data.strata]}


def decode_stratum(obj):
    _need(obj, "n", "strata")
    try:
        data = RegularDecompositionData(tuple(tuple(p) for p in obj["strata"]))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DimensionMismatch):
            raise
        raise InvalidInput(str(exc)) from exc
    if data.n != obj["n"]:
        raise DimensionMismatch(f"n = {obj['n']} but {data.n} partitions given")
    return data


def encode_cover_point(p):
    return {
        "x": encode_cmatrix(p.x),
        "z": [_cvec(zi) for zi in p.z],
        "stratum": encode_stratum(p.stratum),
    }


def decode_cover_point(obj):
    """The ``stratum`` field is optional; without it block sizes are inferred."""
    _need(obj, "x", "z")
    stratum = decode_stratum(obj["stratum"]) if obj.get("stratum") is not None else None
    return CoverPoint(decode_cmatrix(obj["x"]), tuple(tuple(_ucvec(zi)) for zi in obj["z"]), stratum)


def encode_zd_element(k):
    return {"levels": [{"s": _cvec(s), "t": _cvec(t)} for s, t in k.levels]}


def decode_zd_element(obj):
    _need(obj, "levels")
    levels = []
    for level in obj["levels"]:
        _need(level, "s", "t")
        levels.append((_ucvec(level["s"]), _ucvec(level["t"])))
    return ZDElement(tuple(levels))


def encode(obj):
    """JSON-ready form of any domain value (matrices, lists and scalars pass through)."""
    if isinstance(obj, GZValue):
        return encode_gz_value(obj)
    if isinstance(obj, RegularDecompositionData):
        return encode_stratum(obj)
    if isinstance(obj, CoverPoint):
        return encode_cover_point(obj)
    if isinstance(obj, ZDElement):
        return encode_zd_element(obj)
    if isinstance(obj, np.ndarray) and obj.ndim == 2:
        return encode_cmatrix(obj)
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return _c(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps(obj):
    return json.dumps(encode(obj), indent=2)


def load(path):
    """Parse a JSON file; ``-`` reads standard input."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from exc

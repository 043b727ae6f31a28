import json

import numpy as np
import pytest

from gzcover import io
from gzcover.cover import ZDElement
from gzcover.decomp import RegularDecompositionData as D
from gzcover.errors import DimensionMismatch, InvalidInput
from gzcover.gz_core import GZValue
from gzcover.sampling import random_zd_element, sample_cover_point


def roundtrip(obj):
    return json.loads(io.dumps(obj))


def test_cmatrix_format():
    m = np.array([[1, 2j], [-0.0, 3]])
    enc = roundtrip(m)
    assert enc == {"dim": 2, "entries": [[[1, 0], [0, 2]], [[0, 0], [3, 0]]]}
    assert np.array_equal(io.decode_cmatrix(enc), m)


def test_gz_value_format():
    c = GZValue(((-1,), (2, -3)))
    enc = roundtrip(c)
    assert enc == {"n": 2, "levels": [[[-1, 0]], [[2, 0], [-3, 0]]]}
    assert io.decode_gz_value(enc) == c


def test_stratum_and_point_roundtrip():
    data = D(((1,), (2,), (2, 1)))
    assert io.decode_stratum(roundtrip(data)) == data
    p = sample_cover_point(3, data, seed=1)
    q = io.decode_cover_point(roundtrip(p))
    assert np.array_equal(q.x, p.x) and q.z == p.z and q.stratum == data
    # the stratum field is optional
    enc = roundtrip(p)
    del enc["stratum"]
    assert io.decode_cover_point(enc).stratum == data


def test_zd_element_roundtrip():
    data = D(((1,), (2,), (2, 1)))
    k = random_zd_element(data, np.random.default_rng(0), 0.5)
    assert io.decode_zd_element(roundtrip(k)).distance(k) == 0
    assert io.decode_zd_element({"levels": [{"s": [[1, 0]], "t": []}]}).is_identity()


def test_encode_passes_plain_values():
    assert io.encode({"a": [np.int64(1), np.float64(0.5), np.bool_(True), 1 + 2j]}) == {"a": [1, 0.5, True, [1.0, 2.0]]}
    assert isinstance(io.encode(ZDElement.identity(D(((1,), (1, 1))))), dict)


@pytest.mark.parametrize(
    "decoder,obj,exc",
    [
        (io.decode_cmatrix, {"dim": 2}, InvalidInput),
        (io.decode_cmatrix, {"dim": 3, "entries": [[[1, 0]]]}, DimensionMismatch),
        (io.decode_cmatrix, {"dim": 1, "entries": [[[1, 0, 0]]]}, InvalidInput),
        (io.decode_cmatrix, {"dim": 1, "entries": [[[float("nan"), 0]]]}, InvalidInput),
        (io.decode_cmatrix, [1, 2], InvalidInput),
        (io.decode_gz_value, {"n": 3, "levels": [[[1, 0]]]}, DimensionMismatch),
        (io.decode_stratum, {"n": 2, "strata": [[1], [1]]}, DimensionMismatch),
        (io.decode_stratum, {"n": 1, "strata": [["a"]]}, InvalidInput),
        (io.decode_zd_element, {"levels": [{"s": [[0, 0]], "t": []}]}, Exception),
    ],
)
def test_decode_errors(decoder, obj, exc):
    with pytest.raises(exc):
        decoder(obj)


def test_load(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"dim": 1, "entries": [[[2, 0]]]}')
    assert io.load(str(path)) == {"dim": 1, "entries": [[[2, 0]]]}
    path.write_text("{not json")
    with pytest.raises(InvalidInput):
        io.load(str(path))
    with pytest.raises(OSError):
        io.load(str(tmp_path / "missing.json"))

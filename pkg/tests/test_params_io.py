import json

import pytest

from vertex_dwbc.determinant import z6_det
from vertex_dwbc.errors import ParseError, SingularWeight
from vertex_dwbc.params_io import dumps, loads, read_params, write_params
from vertex_dwbc.weights import ModelParams6, ModelParams19, sample_generic_params, sample_generic_params19


@pytest.mark.parametrize("params", [sample_generic_params(4, 3), sample_generic_params19(3, 2, eta=0.6 + 0.3j)])
def test_round_trip(tmp_path, params):
    path = tmp_path / "p.json"
    write_params(path, params)
    first = path.read_text()
    back = read_params(path)
    assert back == params
    write_params(path, back)
    assert path.read_text() == first


def test_type_detection():
    assert isinstance(loads('{"eta": [0.8, 0], "zs": [[0, 0]], "ws": [[0.1, 0]]}'), ModelParams19)
    assert isinstance(loads('{"eta": 0.8, "lambdas": [0.1], "nus": [0.2]}'), ModelParams6)


@pytest.mark.parametrize(
    "doc,fragment",
    [
        ({"eta": [0.8, 0], "lambdas": [[0, 0]], "nus": [[0, 0], [1, 0]]}, "lengths"),
        ({"lambdas": [[0, 0]], "nus": [[0, 0]]}, "'eta'"),
        ({"eta": [0.8, 0], "lambdas": [[0, 0]]}, "'nus'"),
        ({"eta": [0.8, 0], "lambdas": [[0, "x"]], "nus": [[0, 0]]}, "'lambdas'[0]"),
        ({"eta": [0.8], "lambdas": [[0, 0]], "nus": [[0, 0]]}, "'eta'"),
        ({"eta": [0.8, 0]}, "expected either"),
    ],
)
def test_parse_errors(doc, fragment):
    with pytest.raises(ParseError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        loads(json.dumps(doc))


def test_syntax_error_has_line():
    with pytest.raises(ParseError, match="line 2"):
        loads('{"eta": [0.8, 0],\n "lambdas": [,]}')


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        read_params(tmp_path / "absent.json")


def test_non_generic_accepted_then_rejected():
    p = loads(dumps(ModelParams6(0.8, [0.1, 0.1], [0.2, 0.3])))
    with pytest.raises(SingularWeight):
        z6_det(p)

import json
from fractions import Fraction

import pytest

from tverberg_kit.core.errors import ParseError
from tverberg_kit.core.rational import PointConfig
from tverberg_kit.finders.tverberg import find_tverberg3
from tverberg_kit.finders.vkf import find_vkf3
from tverberg_kit.utils.documents import (
    dump_document,
    parse_pointset,
    parse_witness,
    serialize_pointset,
    tverberg_document,
    verify_document,
    vkf_document,
)
from tverberg_kit.utils.generate import generate_instance

SQUARE_AND_AXIS = PointConfig.from_rows([[1, 1], [-1, -1], [-1, 1], [1, -1], [0, 0], [2, 0], [-2, 0]])


def test_parse_single_point():
    config = parse_pointset('{"dim": 2, "points": [["1/2", "-3"]]}')
    assert config.points == ((Fraction(1, 2), Fraction(-3)),)
    assert config.labels == ("P0",)


def test_parse_rejects_zero_denominator_with_location():
    with pytest.raises(ParseError) as info:
        parse_pointset('{"dim": 2, "points": [["1", "2"], ["3", "1/0"]]}')
    assert info.value.field == "points[1][1]"


def test_parse_rejects_floats_ragged_rows_and_duplicate_labels():
    with pytest.raises(ParseError):
        parse_pointset('{"dim": 2, "points": [[0.5, "1"]]}')
    with pytest.raises(ParseError):
        parse_pointset('{"dim": 2, "points": [["1", "2"], ["3"]]}')
    with pytest.raises(ParseError):
        parse_pointset('{"dim": 1, "points": [["1"], ["2"]], "labels": ["a", "a"]}')
    with pytest.raises(ParseError) as info:
        parse_pointset('{"dim": 2, "points": [}')
    assert info.value.line == 1


def test_seven_point_document_defaults_labels():
    text = serialize_pointset(PointConfig.from_rows([[i, i * i] for i in range(7)]))
    doc = json.loads(text)
    doc.pop("labels")
    config = parse_pointset(json.dumps(doc))
    assert len(config) == 7
    assert config.labels == tuple(f"P{i}" for i in range(7))


def test_serialize_then_parse_is_identity():
    config = generate_instance(3, 7, 2, 100)
    assert parse_pointset(serialize_pointset(config)) == config
    reduced = parse_pointset('{"dim": 1, "points": [["4/6"]]}')
    assert json.loads(serialize_pointset(reduced))["points"] == [["2/3"]]


def test_parse_csv_with_labels():
    config = parse_pointset("label,x0,x1\na,1/2,3\nb,-1,0\n")
    assert config.labels == ("a", "b")
    assert config.points == ((Fraction(1, 2), Fraction(3)), (Fraction(-1), Fraction(0)))


def test_parse_csv_without_labels():
    config = parse_pointset("x,y\n1,2\n3,4\n5,6\n")
    assert config.dim == 2
    assert config.labels == ("P0", "P1", "P2")


def test_parse_csv_errors_carry_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_pointset("label,x0,x1\na,1,2\nb,3,1/0\n")
    assert info.value.line == 3
    assert info.value.field == "x1"
    with pytest.raises(ParseError) as info:
        parse_pointset("name,x0\np,1\np,2\n")
    assert info.value.line == 3


def test_tverberg_document_round_trip_and_tamper():
    w = find_tverberg3(SQUARE_AND_AXIS)
    text = dump_document(tverberg_document(w))
    doc = parse_witness(text)
    assert doc.kind == "tverberg"
    assert doc.parts == w.parts
    assert verify_document(SQUARE_AND_AXIS, doc)

    raw = json.loads(text)
    raw["common_point"] = ["1/3", "0"]
    assert not verify_document(SQUARE_AND_AXIS, parse_witness(json.dumps(raw)))


def test_vkf_document():
    config = PointConfig.from_rows([
        [2, 0, 0], [-2, 2, 0], [-2, -2, 0],
        [-2, 0, 0], [2, 2, 0], [2, -2, 0],
        [0, 3, 0], [3, -3, 0], [-3, -3, 0],
        [0, 0, 5], [0, 0, 7],
    ])
    doc = parse_witness(dump_document(vkf_document(find_vkf3(config, 1))))
    assert doc.kind == "vkf" and doc.k == 1
    assert verify_document(config, doc)


def test_parse_witness_errors():
    with pytest.raises(ParseError):
        parse_witness('{"kind": "radon", "parts": []}')
    with pytest.raises(ParseError):
        parse_witness('[1, 2, 3]')
    raw = tverberg_document(find_tverberg3(SQUARE_AND_AXIS))
    raw["kind"] = "vkf"
    with pytest.raises(ParseError) as info:
        parse_witness(json.dumps(raw))
    assert info.value.field == "k"
    raw["kind"] = "reduction-trace"
    raw["k"] = 1
    with pytest.raises(ParseError):
        parse_witness(json.dumps(raw))

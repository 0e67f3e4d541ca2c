import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropres.io import ArrangementDocument, DocumentError, dumps_report, parse_rational


def test_parse_forms():
    assert parse_rational([1, 3]) == Fraction(1, 3)
    assert parse_rational(4) == 4
    assert parse_rational(" -2/5 ") == Fraction(-2, 5)


@pytest.mark.parametrize("bad", [[1, 0], True, 1.5, "x", [1, 2, 3], None, [1.0, 2]])
def test_parse_rejects(bad):
    with pytest.raises(DocumentError):
        parse_rational(bad)


@given(
    st.integers(1, 4).flatmap(
        lambda d: st.lists(st.lists(st.fractions(max_denominator=50), min_size=d, max_size=d), min_size=1, max_size=4)
    ),
    st.text(max_size=10),
    st.one_of(st.none(), st.integers(0, 10**9)),
)
def test_round_trip(points, name, seed):
    doc = ArrangementDocument(points, name=name, seed=seed)
    text = doc.dumps()
    back = ArrangementDocument.loads(text)
    assert back.points == doc.points
    assert back.dumps() == text


def test_unknown_fields_ignored():
    doc = ArrangementDocument.loads('{"points": [[[0,1],[3,1]]], "colour": "red"}')
    assert doc.points == [[0, 3]]


def test_pair_encoding():
    data = json.loads(ArrangementDocument([[Fraction(1, 2), 3]]).dumps())
    assert data["points"] == [[[1, 2], [3, 1]]]
    assert data["format"] == "tropres-arrangement"


@pytest.mark.parametrize(
    "text",
    ["", "{}", '{"points": []}', '{"points": [[1], [1, 2]]}', '{"points": [[]]}', '{"points": 3}', "[1]"],
)
def test_malformed(text):
    with pytest.raises(DocumentError):
        ArrangementDocument.loads(text)


def test_load_from_disk(tmp_path):
    path = tmp_path / "a.json"
    path.write_text(ArrangementDocument([[0, 3, 6], [0, 5, 2]], name="two").dumps())
    doc = ArrangementDocument.load(path)
    assert doc.name == "two" and doc.arrangement().n == 2


def test_report_is_stable():
    report = {"b": {Fraction(1, 2), Fraction(1, 3)}, "a": (Fraction(4), 1)}
    assert dumps_report(report) == '{\n  "a": [\n    4,\n    1\n  ],\n  "b": [\n    "1/2",\n    "1/3"\n  ]\n}\n'

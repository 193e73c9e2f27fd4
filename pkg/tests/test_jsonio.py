import json

import pytest

from singlat import (InputError, RatCycle, catalog, class_group, classify_singularity,
                     flat_annotation, full_sheaf_classes_rational, fundamental_cycle,
                     verify_all)
from singlat.jsonio import to_json
from singlat.schema import validate

from conftest import graph


def test_zero_cycle_on_a1():
    g = graph([("v", -2)])
    doc = json.loads(to_json(RatCycle.zero(), graph=g))
    assert doc["schema"] == "singlat/1"
    assert doc["coefficients"] == [{"num": "0", "den": "1"}]
    validate(doc)


def test_cycle_order_matches_vertices():
    g = catalog("paper-z7")
    dual4 = __import__("singlat").dual_cycle(g, "E4")
    doc = json.loads(to_json(dual4, graph=g))
    assert doc["vertices"] == list(g.ids)
    assert doc["coefficients"][4] == {"num": "4", "den": "7"}
    validate(doc)


def test_bare_cycle_requires_graph():
    with pytest.raises(InputError):
        to_json(RatCycle.zero())


def test_class_group_json():
    g = catalog("paper-z7")
    doc = json.loads(to_json(class_group(g)))
    assert doc["order"] == "7"
    assert doc["factors"] == ["7"]
    validate(doc)


def test_singularity_json():
    doc = json.loads(to_json(classify_singularity(catalog("gamma-2-3-7"))))
    assert doc["kind"] == "minimally-elliptic"
    validate(doc)


def test_report_json():
    g = catalog("paper-z7")
    report = flat_annotation(g, full_sheaf_classes_rational(g))
    doc = json.loads(to_json(report))
    assert doc["class_group"]["order"] == "7"
    assert len(doc["families"]) == 7
    validate(doc)


def test_sequence_json():
    g = catalog("paper-z7")
    doc = json.loads(to_json(fundamental_cycle(g), graph=g))
    assert doc["end"][0] == {"num": "1", "den": "1"}
    validate(doc)


def test_transcript_json():
    g = graph([("v", -2)])
    doc = json.loads(to_json(verify_all(g)))
    assert doc["passed"] is True
    validate(doc)


def test_graph_json():
    g = catalog("cusp-3x3")
    doc = json.loads(to_json(g))
    assert len(doc["vertices"]) == 3
    assert len(doc["edges"]) == 3
    validate(doc)


def test_byte_determinism():
    g = catalog("paper-z7")
    assert to_json(class_group(g)) == to_json(class_group(g))


def test_unsupported_type():
    with pytest.raises(InputError):
        to_json(object())

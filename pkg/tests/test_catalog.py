import json

import pytest

from psolv.catalog import (
    DEFAULT_CATALOG,
    REPORT_SCHEMA,
    TOOL_VERSION,
    Report,
    build_group,
    canonical_recipe,
    emit_group,
    emit_report,
    parse_group,
    parse_recipe,
    parse_report,
)
from psolv.errors import GroupParseError
from psolv.series import exponent, is_p_group

from oracles import elements_of


EXPECTED_ORDERS = {
    "cyclic:2": 2, "cyclic:3": 3, "cyclic:4": 4, "cyclic:8": 8,
    "cyclic:9": 9, "cyclic:15": 15, "cyclic:16": 16, "cyclic:27": 27,
    "elementary_abelian:2:2": 4, "elementary_abelian:2:3": 8,
    "elementary_abelian:2:4": 16, "elementary_abelian:3:2": 9,
    "elementary_abelian:3:3": 27,
    "dihedral:3": 6, "dihedral:4": 8, "dihedral:6": 12, "dihedral:8": 16,
    "symmetric:3": 6, "symmetric:4": 24, "symmetric:5": 120,
    "symmetric:6": 720,
    "alternating:4": 12, "alternating:5": 60,
    "sl2:2": 6, "sl2:3": 24, "gl2:3": 48,
    "affine:5": 20, "affine:7": 42,
    "extraspecial:2:plus": 8, "extraspecial:2:minus": 8,
    "extraspecial:3:plus": 27, "extraspecial:3:minus": 27,
    "extraspecial:5:plus": 125,
    "wreath_cyclic:2:3": 24, "wreath_cyclic:2:4": 64,
    "wreath_cyclic:2:5": 160, "wreath_cyclic:3:3": 81,
    "product(cyclic:9,cyclic:3)": 27,
    "product(symmetric:3,cyclic:3)": 18,
    "product(extraspecial:3:plus,cyclic:2)": 54,
}


def test_catalog_ids_are_exactly_the_expected_ones():
    assert list(DEFAULT_CATALOG) == list(EXPECTED_ORDERS)


@pytest.mark.parametrize("gid", list(EXPECTED_ORDERS))
def test_catalog_orders(gid):
    G = build_group(gid)
    assert G.order() == EXPECTED_ORDERS[gid]


def test_closure_of_small_entries_matches():
    for gid in ("dihedral:4", "symmetric:4", "sl2:3",
                "extraspecial:2:minus", "wreath_cyclic:2:3"):
        G = build_group(gid)
        assert len(elements_of(G)) == G.order()


def test_extraspecial_shapes():
    plus = build_group("extraspecial:2:plus")
    minus = build_group("extraspecial:2:minus")
    # D8 has five involutions, Q8 exactly one
    assert sum(1 for x in plus.elements() if x.order() == 2) == 5
    assert sum(1 for x in minus.elements() if x.order() == 2) == 1
    for gid, p in (("extraspecial:3:plus", 3), ("extraspecial:3:minus", 3),
                   ("extraspecial:5:plus", 5)):
        G = build_group(gid)
        assert is_p_group(G, p)
    assert exponent(build_group("extraspecial:3:plus")) == 3
    assert exponent(build_group("extraspecial:3:minus")) == 9


def test_recipe_parsing_and_canonical_form():
    assert canonical_recipe(" dihedral:4 ") == "dihedral:4"
    assert canonical_recipe("product( cyclic:9 , cyclic:3 )") == \
        "product(cyclic:9,cyclic:3)"
    kind, args = parse_recipe("elementary_abelian:3:2")
    assert kind == "elementary_abelian"
    assert args == [3, 2]


def test_nested_product():
    G = build_group("product(product(cyclic:2,cyclic:3),cyclic:5)")
    assert G.order() == 30


@pytest.mark.parametrize("bad", [
    "nosuch:4",
    "cyclic",
    "cyclic:x",
    "cyclic:0",
    "dihedral:2",
    "sl2:4",
    "extraspecial:2:zero",
    "product(cyclic:2)",
    "product(cyclic:2,cyclic:3",
    "elementary_abelian:4:2",
    "affine:9",
])
def test_bad_recipes(bad):
    with pytest.raises(GroupParseError):
        build_group(bad)


def test_group_document_round_trip():
    G = build_group("symmetric:4")
    doc = emit_group(G)
    H = parse_group(doc)
    assert H.degree == G.degree
    assert H.order() == G.order()


@pytest.mark.parametrize("text, where", [
    ("[]", "$"),
    ("{}", "degree"),
    ('{"degree": 0, "generators": []}', "degree"),
    ('{"degree": 2, "generators": 3}', "generators"),
    ('{"degree": 2, "generators": [[0]]}', "generators[0]"),
    ('{"degree": 2, "generators": [[1, 1]]}', "generators[0]"),
])
def test_group_document_errors_carry_location(text, where):
    with pytest.raises(GroupParseError) as e:
        parse_group(text)
    assert e.value.location == where


def test_group_document_json_error_has_line():
    with pytest.raises(GroupParseError) as e:
        parse_group('{"degree": 2,\n "generators": }')
    assert e.value.line == 2


def test_report_text_format():
    rep = Report(TOOL_VERSION, "cyclic:4", "analyze",
                 {"statement": "analyze", "hypothesis_holds": True,
                  "conclusion_holds": None, "parameters": {"p": 2},
                  "witnesses": [], "notes": [], "report_only": True,
                  "is_finding": False})
    text = emit_report([rep], "text")
    assert "cyclic:4 | analyze: report" in text
    assert text.endswith("1 report(s), 0 finding(s)\n")


def test_report_structured_round_trip():
    rep = Report(TOOL_VERSION, "cyclic:4", "analyze",
                 {"statement": "analyze", "hypothesis_holds": True,
                  "conclusion_holds": True, "parameters": {"p": 2},
                  "witnesses": [], "notes": [], "report_only": False,
                  "is_finding": False})
    blob = emit_report([rep], "structured")
    doc = json.loads(blob)
    assert doc["schema"] == REPORT_SCHEMA
    assert doc["reports"][0]["tool_version"] == TOOL_VERSION
    back = parse_report(blob)
    assert len(back) == 1
    assert back[0].group_id == "cyclic:4"
    assert back[0].verdict["conclusion_holds"] is True
    assert back[0].timing is None


def test_report_finding_is_flagged_in_text():
    rep = Report(TOOL_VERSION, "cyclic:4", "prop3",
                 {"statement": "prop3", "hypothesis_holds": True,
                  "conclusion_holds": False, "parameters": {},
                  "witnesses": [], "notes": [], "report_only": False,
                  "is_finding": True})
    text = emit_report([rep], "text")
    assert "FINDING" in text
    assert "1 finding(s)" in text


def test_structured_output_is_deterministic():
    reports = [Report(TOOL_VERSION, "cyclic:4", "analyze",
                      {"statement": "analyze", "hypothesis_holds": True,
                       "conclusion_holds": None,
                       "parameters": {"b": 2, "a": 1},
                       "witnesses": [], "notes": [], "report_only": True,
                       "is_finding": False})]
    assert emit_report(reports, "structured") == \
        emit_report(reports, "structured")


def test_emit_report_rejects_unknown_format():
    with pytest.raises(ValueError):
        emit_report([], "yaml")

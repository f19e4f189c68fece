"""Document parsing, serialization round trips, and rejection paths."""

import json

import pytest

from orbspark.document import (
    Document,
    DocumentError,
    cochain_to_doc,
    document_schema,
    document_to_json,
    int_cochain_to_doc,
    load_document,
    parse_document,
)
from orbspark.fixtures import BUILDERS


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_json_round_trip(name):
    doc = BUILDERS[name]()
    text = document_to_json(doc)
    doc2 = parse_document(text)
    assert doc2.model_dump(by_alias=True) == doc.model_dump(by_alias=True)
    assert document_to_json(doc2) == text


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_loaded_objects_match_after_round_trip(name):
    ws1 = load_document(BUILDERS[name]())
    ws2 = load_document(parse_document(document_to_json(BUILDERS[name]())))
    assert set(ws1.atlases) == set(ws2.atlases)
    for aname in ws1.atlases:
        a1, a2 = ws1.atlases[aname], ws2.atlases[aname]
        assert a1.dim == a2.dim
        assert set(a1.arrows) == set(a2.arrows)
        for key in a1.arrows:
            assert a1.arrows[key].pmap == a2.arrows[key].pmap
    for cname in ws1.cochains:
        # data dicts compare by value; whole-cochain equality needs one atlas
        assert ws1.cochains[cname].data == ws2.cochains[cname].data


def _minimal_doc(**overrides):
    base = {
        "atlases": {
            "a": {
                "vertices": ["1"],
                "dimension": 1,
                "charts": [{"index": ["1"]}],
            }
        }
    }
    base.update(overrides)
    return base


def test_minimal_document_loads():
    ws = load_document(Document.model_validate(_minimal_doc()))
    atlas = ws.atlas()
    assert atlas.dim == 1
    # omitted group defaults to the trivial group
    assert len(atlas.group(atlas.vset.singleton("1"))) == 1


def test_float_coefficients_rejected():
    doc = _minimal_doc(cochains={
        "c": {"atlas": "a", "kind": "form",
              "components": [{"string": [["1"]], "form": [[[], [[0.5, [0]]]]]}]}
    })
    with pytest.raises(DocumentError, match="float"):
        load_document(Document.model_validate(doc))


def test_malformed_json_reports_position():
    with pytest.raises(DocumentError, match=r"line 1"):
        parse_document("{ not json")


def test_schema_violation_reported():
    with pytest.raises(DocumentError, match="schema"):
        parse_document(json.dumps({"atlases": {"a": {"vertices": ["1"]}}}))


def test_unknown_extra_field_rejected():
    payload = _minimal_doc()
    payload["surprise"] = 1
    with pytest.raises(DocumentError, match="schema"):
        parse_document(json.dumps(payload))


def test_duplicate_chart_rejected():
    doc = _minimal_doc()
    doc["atlases"]["a"]["charts"].append({"index": ["1"]})
    with pytest.raises(DocumentError, match="duplicate chart"):
        load_document(Document.model_validate(doc))


def test_system_with_unknown_atlas_rejected():
    doc = _minimal_doc(systems={
        "s": {"source": "a", "target": "nowhere", "index_map": [], "liftings": []}
    })
    with pytest.raises(DocumentError, match="unknown atlas"):
        load_document(Document.model_validate(doc))


def test_cochain_kind_validation():
    bad_kind = _minimal_doc(cochains={"c": {"atlas": "a", "kind": "float"}})
    with pytest.raises(DocumentError, match="unknown kind"):
        load_document(Document.model_validate(bad_kind))
    no_value = _minimal_doc(cochains={
        "c": {"atlas": "a", "kind": "int", "components": [{"string": [["1"]]}]}
    })
    with pytest.raises(DocumentError, match="needs a value"):
        load_document(Document.model_validate(no_value))


def test_noncanonical_strings_normalize_with_sign():
    doc = {
        "atlases": {
            "a": {
                "vertices": ["1", "2"],
                "dimension": 1,
                "charts": [{"index": ["1"]}, {"index": ["2"]},
                           {"index": ["1", "2"]}],
                "embeddings": [
                    {"source": ["1", "2"], "target": [t],
                     "map": {"src": 1, "dst": 1, "comps": [[["1", [1]]]]}}
                    for t in ("1", "2")
                ],
            }
        },
        "cochains": {
            "c": {"atlas": "a", "kind": "int",
                  "components": [{"string": [["2"], ["1"]], "value": 1}]}
        },
    }
    ws = load_document(Document.model_validate(doc))
    c = ws.cochains["c"]
    a = ws.atlas()
    one, two = a.vset.singleton("1"), a.vset.singleton("2")
    assert c.value((one, two)) == -1
    assert c.value((two, one)) == 1
    assert c.value((one, one)) == 0


def test_workspace_atlas_lookup(chain):
    assert chain.atlas().name == "W"  # document default
    assert chain.atlas("V").name == "V"
    with pytest.raises(DocumentError, match="no atlas named"):
        chain.atlas("X")


def test_ambiguous_default_atlas_rejected():
    doc = _minimal_doc()
    doc["atlases"]["b"] = doc["atlases"]["a"]
    ws = load_document(Document.model_validate(doc))
    with pytest.raises(DocumentError, match="name one explicitly"):
        ws.atlas()


def test_cochain_doc_round_trip(s1):
    angle = s1.cochains["angle"]
    doc = cochain_to_doc(angle, "circle")
    rebuilt = load_document(Document.model_validate({
        "atlases": {"circle": BUILDERS["s1-arcs"]().atlases["circle"].model_dump()},
        "cochains": {"angle": doc.model_dump(exclude_none=True)},
    }))
    assert rebuilt.cochains["angle"].data == angle.data

    steps = s1.cochains["steps"]
    idoc = int_cochain_to_doc(steps, "circle")
    assert all(comp.value is not None for comp in idoc.components)


def test_schema_names_the_toplevel_sections():
    schema = document_schema()
    props = schema["properties"]
    for key in ("atlases", "systems", "transformations", "cochains"):
        assert key in props

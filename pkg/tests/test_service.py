"""HTTP endpoints, exercised in process."""

import json

import pytest
from fastapi.testclient import TestClient

from orbspark import __version__
from orbspark.document import document_to_json
from orbspark.fixtures import BUILDERS, PRODUCT_PAIRS
from orbspark.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def docs():
    return {name: json.loads(document_to_json(fn())) for name, fn in BUILDERS.items()}


def test_health(client):
    body = client.get("/health").json()
    assert body == {"tool": "orbspark", "version": __version__}


def test_schema_lists_the_document_sections(client):
    schema = client.get("/schema").json()
    for section in ("atlases", "systems", "transformations", "cochains"):
        assert section in schema["properties"]


def test_validate_reports_every_atlas_check(client, docs):
    report = client.post("/validate", json={"document": docs["s1-arcs"]}).json()
    assert report["command"] == "validate"
    assert report["summary"]["fail"] == 0
    names = [c["name"] for c in report["checks"]]
    assert "atlas-circle-chart-cover" in names
    assert all(c["status"] == "PASS" for c in report["checks"])


def test_validate_covers_systems_and_transformations(client, docs):
    report = client.post("/validate", json={"document": docs["mirror-interval"]}).json()
    names = [c["name"] for c in report["checks"]]
    assert any(n.startswith("system-flip-") for n in names)
    assert any(n.startswith("nt-mirror-") for n in names)


def test_cohomology_of_the_circle(client, docs):
    report = client.post("/cohomology", json={"document": docs["s1-arcs"]}).json()
    assert report["result"]["groups"] == {"0": "Z", "1": "Z", "2": "0"}
    assert report["result"]["dimensions"] == [6, 9, 3]
    assert report["result"]["complex"] == "big"


def test_cohomology_single_degree_and_small_complex(client, docs):
    report = client.post("/cohomology", json={
        "document": docs["s1-arcs"], "complex": "small", "degree": 1}).json()
    assert report["result"]["groups"] == {"1": "Z"}
    assert report["result"]["dimensions"] == [3, 3]


def test_cohomology_comparison_checks(client, docs):
    report = client.post("/cohomology", json={
        "document": docs["s1-arcs"], "phi": "min"}).json()
    checks = {c["name"]: c["status"] for c in report["checks"]}
    assert checks == {"quasi-iso-H0": "PASS", "quasi-iso-H1": "PASS",
                      "quasi-iso-H2": "PASS"}


def test_cohomology_input_errors(client, docs):
    r = client.post("/cohomology", json={
        "document": docs["s1-arcs"], "complex": "medium"})
    assert r.status_code == 422 and "medium" in r.json()["detail"]
    r = client.post("/cohomology", json={
        "document": docs["s1-arcs"], "atlas": "torus"})
    assert r.status_code == 422
    r = client.post("/cohomology", json={"document": docs["chain"], "phi": "avg"})
    assert r.status_code == 422


def test_verify_spark_suite_on_designated_pairs(client, docs):
    report = client.post("/verify", json={
        "document": docs["mirror-interval"], "suite": "spark",
        "product_pairs": PRODUCT_PAIRS["mirror-interval"]}).json()
    assert report["summary"]["fail"] == 0
    assert report["summary"]["unknown"] == 0
    assert report["params"]["suite"] == "spark"


def test_verify_rejects_unknown_suites(client, docs):
    r = client.post("/verify", json={"document": docs["s1-arcs"], "suite": "vibes"})
    assert r.status_code == 422
    assert "vibes" in r.json()["detail"]


def test_spark_decompose(client, docs):
    report = client.post("/spark", json={
        "document": docs["s1-arcs"], "op": "decompose",
        "cochains": ["angle"]}).json()
    res = report["result"]
    assert res["is_spark"] is True and res["degree"] == 0
    assert "mixed" not in res
    assert res["e"]["kind"] == "form" and res["r"]["kind"] == "int"
    assert report["checks"][0]["name"] == "decompose[angle]"


def test_spark_mul(client, docs):
    report = client.post("/spark", json={
        "document": docs["mirror-interval"], "op": "mul",
        "cochains": ["step", "xsq"]}).json()
    assert report["checks"][0]["name"] == "product-boundary[step*xsq]"
    assert report["checks"][0]["status"] == "PASS"
    assert set(report["result"]) == {"rep", "alt", "witness"}


def test_spark_equiv(client, docs):
    report = client.post("/spark", json={
        "document": docs["s1-arcs"], "op": "equiv",
        "cochains": ["angle", "angle"]}).json()
    assert report["result"]["status"] == "equivalent"
    assert report["checks"][0]["status"] == "PASS"
    report = client.post("/spark", json={
        "document": docs["mirror-interval"], "op": "equiv",
        "cochains": ["step", "xsq"]}).json()
    assert report["result"]["status"] == "unknown"
    assert report["checks"][0]["status"] == "UNKNOWN"


def test_spark_input_errors(client, docs):
    r = client.post("/spark", json={
        "document": docs["s1-arcs"], "op": "decompose", "cochains": ["nope"]})
    assert r.status_code == 422 and "angle" in r.json()["detail"]
    r = client.post("/spark", json={
        "document": docs["s1-arcs"], "op": "mul", "cochains": ["angle"]})
    assert r.status_code == 422 and "2" in r.json()["detail"]
    r = client.post("/spark", json={
        "document": docs["s1-arcs"], "op": "differentiate", "cochains": ["angle"]})
    assert r.status_code == 422
    r = client.post("/spark", json={
        "document": docs["s1-arcs"], "op": "decompose", "cochains": ["steps"]})
    assert r.status_code == 422 and "integer" in r.json()["detail"]


def test_malformed_document_is_rejected(client, docs):
    broken = json.loads(json.dumps(docs["s1-arcs"]))
    broken["atlases"]["circle"]["dimension"] = -2
    r = client.post("/validate", json={"document": broken})
    assert r.status_code == 422

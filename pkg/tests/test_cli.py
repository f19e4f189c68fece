"""Command line behaviour, run in process through main(argv)."""

import json

import pytest

from orbspark.cli import main
from orbspark.document import read_document
from orbspark.fixtures import BUILDERS


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_passes_on_a_bundled_scenario(capsys):
    code, out, _ = run_cli(capsys, "verify", "--fixture", "s1-arcs",
                           "--suite", "complex", "--probes", "4")
    assert code == 0
    assert "[PASS]" in out and "FAIL" not in out


def test_json_output_is_deterministic(capsys):
    argv = ("verify", "--fixture", "s1-arcs", "--suite", "cup",
            "--seed", "11", "--probes", "4", "--format", "json")
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["command"] == "verify"
    assert report["summary"]["fail"] == 0


def test_cohomology_single_degree(capsys):
    code, out, _ = run_cli(capsys, "cohomology", "--fixture", "s1-arcs",
                           "--degree", "1")
    assert code == 0
    assert '"1": "Z"' in out


def test_cohomology_rejects_a_bad_degree(capsys):
    code, _, err = run_cli(capsys, "cohomology", "--fixture", "s1-arcs",
                           "--degree", "one")
    assert code == 3 and "degree" in err


def test_validate_reports_failures_with_exit_one(tmp_path, capsys):
    doc = BUILDERS["mirror-interval"]().model_dump(by_alias=True, exclude_none=True)
    chart1 = doc["atlases"]["mirror"]["charts"][0]
    chart1["group"] = [g for g in chart1["group"] if g["matrix"] != [["1"]]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "validate", str(path))
    assert code == 1
    assert "[FAIL]" in out and "groups-finite" in out


def test_unreadable_and_unparsable_files_exit_three(tmp_path, capsys):
    code, _, err = run_cli(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 3 and "cannot read" in err

    bad = tmp_path / "bad.json"
    bad.write_text("this is { not json")
    code, _, err = run_cli(capsys, "validate", str(bad))
    assert code == 3 and "line 1" in err

    schema_bad = tmp_path / "schema.json"
    schema_bad.write_text(json.dumps({"format": "orbspark", "version": 1,
                                      "surprise": True}))
    code, _, err = run_cli(capsys, "validate", str(schema_bad))
    assert code == 3 and "schema" in err


def test_spark_decompose(capsys):
    code, out, _ = run_cli(capsys, "spark", "--fixture", "s1-arcs",
                           "decompose", "angle")
    assert code == 0
    assert "decompose[angle]" in out and "[PASS]" in out


def test_spark_equiv_strictness(capsys):
    plain = run_cli(capsys, "spark", "--fixture", "mirror-interval",
                    "equiv", "step", "xsq")
    assert plain[0] == 0 and "[UNKNOWN]" in plain[1]
    strict = run_cli(capsys, "spark", "--fixture", "mirror-interval",
                     "equiv", "step", "xsq", "--strict-unknown")
    assert strict[0] == 2


def test_spark_argument_errors(tmp_path, capsys):
    code, _, err = run_cli(capsys, "spark", "--fixture", "s1-arcs", "decompose")
    assert code == 3 and "cochain name" in err
    code, _, err = run_cli(capsys, "spark", str(tmp_path / "x.json"))
    assert code == 3 and "operation" in err
    code, _, err = run_cli(capsys, "spark", "--fixture", "s1-arcs",
                           "rotate", "angle")
    assert code == 3 and "rotate" in err


def test_spark_unknown_name_exits_three(capsys):
    code, _, err = run_cli(capsys, "spark", "--fixture", "s1-arcs",
                           "decompose", "nope")
    assert code == 3 and "angle" in err


def test_verify_all_pairs_strictness(capsys):
    scoped = run_cli(capsys, "verify", "--fixture", "mirror-interval",
                     "--suite", "spark")
    assert scoped[0] == 0 and "UNKNOWN" not in scoped[1]
    relaxed = run_cli(capsys, "verify", "--fixture", "mirror-interval",
                      "--suite", "spark", "--all-pairs")
    assert relaxed[0] == 0 and "[UNKNOWN]" in relaxed[1]
    strict = run_cli(capsys, "verify", "--fixture", "mirror-interval",
                     "--suite", "spark", "--all-pairs", "--strict-unknown")
    assert strict[0] == 2


def test_fixture_and_file_sources_agree(tmp_path, capsys):
    doc = BUILDERS["s1-arcs"]().model_dump(by_alias=True, exclude_none=True)
    path = tmp_path / "s1.json"
    path.write_text(json.dumps(doc))
    a = run_cli(capsys, "cohomology", str(path), "--format", "json")
    b = run_cli(capsys, "cohomology", "--fixture", "s1-arcs", "--format", "json")
    assert a[0] == b[0] == 0 and a[1] == b[1]


def test_fixtures_subcommand_writes_loadable_documents(tmp_path, capsys):
    target = tmp_path / "fx"
    code, out, _ = run_cli(capsys, "fixtures", str(target))
    assert code == 0
    paths = out.strip().splitlines()
    assert len(paths) == 4
    for p in paths:
        ws = read_document(p)
        assert ws.atlases


def test_schema_subcommand_prints_json(capsys):
    code, out, _ = run_cli(capsys, "schema")
    assert code == 0
    assert "atlases" in json.loads(out)["properties"]


def test_missing_document_and_unknown_command(capsys):
    code, _, err = run_cli(capsys, "validate")
    assert code == 3 and "required" in err
    code, _, err = run_cli(capsys, "frobnicate")
    assert code == 3

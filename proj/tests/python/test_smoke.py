import json
import os
import pathlib
import subprocess

import pytest

import dglakit

SOURCE = pathlib.Path(os.environ.get("DGLAKIT_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


def test_builtin_library():
    names = dglakit.builtin_fixture_names()
    for required in ["abelian", "heisenberg", "nonformal-control", "commuting-n2", "point-model",
                     "a2-simple", "a2-swap-equivariant"]:
        assert required in names


def test_heisenberg_dims_and_axioms():
    assert dglakit.cohomology_dims("heisenberg") == {1: 2, 2: 1}
    assert all(dglakit.check_axioms("heisenberg").values())


def test_nonformal_kuranishi():
    assert dglakit.kuranishi("nonformal", 3) == ["-x1^2*x2"]


def test_run_reports():
    r = dglakit.run("formality", "bmm", "commuting", "--pairing", "trace")
    assert r.exit_code == 0
    assert r.report["verdict"] == "Certified"
    r = dglakit.run("kuranishi", "--order", "3", "nonformal")
    assert r.report["ideal_generators"] == ["x1^2*x2"]
    assert r.report["quadraticity"] == "NotEqualAtOrder(3)"
    assert dglakit.run("nope").exit_code == 2


def test_errors_raise_with_kind():
    with pytest.raises(dglakit.DglakitError) as info:
        dglakit.normalize_fixture('{"kind": "dgla", "degrees": {"1": 1}, "differential": {"1": [["1"]]}}')
    assert dglakit.error_kind(info.value) == "SchemaViolation"
    with pytest.raises(ValueError):
        dglakit.normalize_fixture("{")


def test_shipped_files_match_the_library():
    for path in sorted((SOURCE / "fixtures").glob("*.json")):
        text = path.read_text()
        assert dglakit.normalize_fixture(text) == text
        assert dglakit.emit_fixture(path.stem) == text


def test_shipped_files_match_the_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((SOURCE / "docs" / "fixture.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    for path in sorted((SOURCE / "fixtures").glob("*.json")):
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        assert not errors, f"{path.name}: {errors[0].message}"


def test_cli_binary_is_deterministic():
    cli = os.environ.get("DGLAKIT_CLI")
    if not cli:
        pytest.skip("CLI binary not built")
    args = [cli, "quiver", "moment", "loop-n2", "--seed", "9", "--json"]
    first = subprocess.run(args, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(args, capture_output=True, text=True, check=True).stdout
    assert first == second
    env = dict(os.environ, DGLAKIT_FIXTURE_DIR=str(SOURCE / "fixtures"))
    out = subprocess.run([cli, "quiver", "compare", "two-vertex", "--json"], capture_output=True, text=True, env=env)
    assert out.returncode == 0
    assert json.loads(out.stdout)["span_equal"] is True

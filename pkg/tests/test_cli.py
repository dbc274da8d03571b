"""CLI surface: dispatch, exit codes, schema-stable JSON, determinism."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout
from importlib import resources

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from springer_cells.cli import run


def _schema_registry():
    registry = Registry()
    root = resources.files("springer_cells") / "schemas"
    schemas = {}
    for entry in root.iterdir():
        if entry.name.endswith(".json"):
            schema = json.loads(entry.read_text())
            schemas[entry.name] = schema
            registry = registry.with_resource(
                entry.name, Resource.from_contents(schema)
            )
            registry = registry.with_resource(
                schema["$id"], Resource.from_contents(schema)
            )
    return registry, schemas


REGISTRY, SCHEMAS = _schema_registry()


def validate(payload, schema_name):
    validator = Draft202012Validator(SCHEMAS[schema_name], registry=REGISTRY)
    validator.validate(payload)


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


def test_usage_error_exits_two():
    code, _, _ = invoke(["enumerate", "--N", "4"])
    assert code == 2
    code, _, _ = invoke(["bogus"])
    assert code == 2


def test_library_error_exits_one():
    # two arcs cannot fit a top block of size one
    code, _, err = invoke(
        ["cut", "--matching", "(1,2)(3,4)", "--n", "1", "--arcs", "(1,2)"]
    )
    assert code == 1
    assert "error" in err


def test_enumerate_json_schema():
    code, out, _ = invoke(["enumerate", "--N", "4", "--n", "2", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    validate(payload, "enumerate.json")
    assert payload["count"] == 6
    words = [m["word"] for m in payload["matchings"]]
    assert words == sorted(words)


def test_word_conversion_and_agreement():
    code, out, _ = invoke(["word", "--word", "BBTBBTTT", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    validate(payload, "matching.json")
    assert payload["arcs"] == [[1, 8], [2, 3], [4, 7], [5, 6]]
    assert payload["perm"] == [5, 6, 1, 7, 8, 2, 3, 4]

    code, _, _ = invoke(
        ["word", "--word", "BBTT", "--matching", "(1,4)(2,3)", "--format", "json"]
    )
    assert code == 0
    code, _, _ = invoke(
        ["word", "--word", "BBTT", "--matching", "(1,2)(3,4)", "--format", "json"]
    )
    assert code == 2


def test_cell_latex_golden():
    code, out, _ = invoke(
        ["cell", "--matching", "(1,8)(2,3)(4,7)(5,6)", "--n", "4", "--latex"]
    )
    assert code == 0
    assert out.splitlines()[1] == "a & b & 1 & 0 & 0 & 0 & 0 & 0 \\\\"
    assert out.splitlines()[2] == "0 & a & 0 & c & d & 1 & 0 & 0 \\\\"


def test_cell_json_schema():
    code, out, _ = invoke(
        ["cell", "--matching", "(1,4)(2,3)", "--n", "2", "--format", "json"]
    )
    assert code == 0
    validate(json.loads(out), "cell.json")


def test_cut_command():
    code, out, _ = invoke(
        [
            "cut",
            "--matching",
            "(1,8)(2,3)(4,7)(5,6)",
            "--n",
            "4",
            "--arcs",
            "(4,7),(5,6)",
            "--format",
            "json",
        ]
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload, "cut.json")
    assert payload["result"] == "(1,4)(2,3)(7,8)"

    code, out, _ = invoke(
        [
            "cut",
            "--matching",
            "(1,4)(2,3)",
            "--n",
            "2",
            "--arcs",
            "(2,3)",
            "--labels",
            "--format",
            "json",
        ]
    )
    payload = json.loads(out)
    validate(payload, "cut.json")
    assert payload["labels"] == {"(1,2)": "(1,4)", "(3,4)": "(1,4)"}


def test_closure_dot_mirrors_four_pieces():
    code, out, _ = invoke(["closure", "--matching", "(1,4)(2,3)", "--n", "2", "--dot", "-"])
    assert code == 0
    assert out.count("->") == 4
    assert out.count("label=") == 8  # 4 nodes + 4 edges
    assert "(1,2)↦a, (3,4)↦a" in out


def test_closure_json_certify_schema():
    code, out, _ = invoke(
        ["closure", "--matching", "(1,4)(2,3)", "--n", "2", "--certify", "--format", "json", "--seed", "5"]
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload, "closure.json")
    assert all(c["certified"] for c in payload["certificates"])
    assert sorted(payload["swap_candidates"]) == ["BBTT", "BTBT", "TBTB", "TTBB"]


def test_limit_command():
    code, out, _ = invoke(
        [
            "limit",
            "--matching",
            "(1,4)(2,3)",
            "--n",
            "2",
            "--arcs",
            "(1,4)",
            "--target",
            "(2,3)=7/3",
            "--format",
            "json",
        ]
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload, "limit.json")
    assert payload["certified"] is True
    assert payload["curve"]["(1,4)"] == ["0", "1"]
    assert payload["curve"]["(2,3)"] == ["0", "0", "-3/7"]


def test_fqcount_json_schema():
    code, out, _ = invoke(["fqcount", "--q", "2", "--N", "4", "--n", "2", "--json"])
    assert code == 0
    payload = json.loads(out)
    validate(payload, "fqcount.json")
    assert payload["total"] == 15
    assert payload["full_flag_count"] == 315


def test_verify_command_json():
    code, out, _ = invoke(
        ["verify", "--suite", "combinatorics", "--max-N", "5", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload, "verify.json")
    assert payload["passed"] is True


def test_json_determinism():
    argv = ["closure", "--matching", "(1,4)(2,3)", "--n", "2", "--certify", "--format", "json", "--seed", "9"]
    _, first, _ = invoke(argv)
    _, second, _ = invoke(argv)
    assert first == second

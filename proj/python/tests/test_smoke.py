import json
import os
from pathlib import Path

import pytest

import focml

SAMPLES = Path(os.environ.get("FOCML_SAMPLES_DIR", Path(__file__).resolve().parents[2] / "samples"))


def sample(*names):
    return [str(SAMPLES / n) for n in names]


@pytest.fixture(scope="module")
def example():
    return focml.compile_files(sample("example.fcl"))


def test_example_compiles(example):
    assert example.ok
    assert example.error_count == 0
    assert ("In_5_10", True) in example.entities


@pytest.mark.parametrize(
    "x,expected",
    [(3, (5, "Too_low")), (5, (5, "In_range")), (7, (7, "In_range")), (10, (10, "In_range")), (12, (10, "Too_high"))],
)
def test_filter(example, x, expected):
    assert example.eval("In_5_10", "filter", [x]) == expected


def test_eval_text_and_errors(example):
    assert example.eval_text("In_5_10", "filter", [12]) == "(10, Too_high)"
    assert example.eval("IntC", "id") == "native int"
    with pytest.raises(ValueError, match="ArityMismatch"):
        example.eval("In_5_10", "filter", [1, 2])


def test_rejections():
    wrong = focml.compile_files(sample("wrong.fcl"))
    assert not wrong.ok
    assert wrong.diagnostics[0]["kind"] == "WrongCarrierLeak"
    cycle = focml.compile_files(sample("evenodd.fcl"))
    d = [d for d in cycle.diagnostics if d["severity"] == "error"][0]
    assert d["kind"] == "CycleInDependencies"
    assert d["witness"] == ["even", "odd", "even"]


def test_deps_report(example):
    report = focml.deps(example)
    env = report["TheInt"]["ltNotGt"]["min_env"]
    assert [e["name"] for e in env] == ["rep", "eq", "lt", "gt"]
    assert env[-1]["keep"] == "TypeAndBody"


def test_emission_is_deterministic():
    a = focml.compile_files(sample("example.fcl"))
    b = focml.compile_files(sample("example.fcl"))
    assert a.emit_logical() == b.emit_logical()
    assert a.emit_computational() == b.emit_computational()
    assert a.emit_logical().startswith("Require Export basics.")


def test_compile_text_and_run():
    p = focml.compile_text("species A =\n  signature f : int -> int ;\nend ;;\n")
    assert p.ok
    code, out, err = focml.run(["deps", *sample("close.fcl")])
    assert code == 0
    assert len(json.loads(out)["B"]["th1"]["params"]["P"]) == 4
    assert focml.run(["check"])[0] == 2


def test_missing_file():
    with pytest.raises(ValueError):
        focml.compile_files(sample("nope.fcl"))

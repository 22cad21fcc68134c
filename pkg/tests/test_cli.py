import io
import json
import re

import pytest

from anncat import loader
from anncat.ann import AnnCat
from anncat.cli import run
from anncat.core import FinCategory
from anncat.errors import SchemaError, ValidationError
from anncat.structures import MonoidalData


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_fixture_listing():
    names = loader.fixture_names()
    for n in ("ring_z2", "ring_z6", "bimodule_z2_z2_trivial", "pic_z2_z2_xy", "broken"):
        assert n in names


def test_generator_expansion():
    A = loader.load("ring_z6")
    assert isinstance(A, AnnCat) and len(A.objects) == 6
    assert isinstance(loader.load("pic_z2_z2_xy.cat"), MonoidalData)
    assert isinstance(loader.load("bimodule_z2_z2_trivial"), AnnCat)


def test_raw_tables_load():
    A = loader.load("ring_z2_tables")
    assert A.plus.tensor.obj(1, 1) == 0
    assert A.family("L")(1, 1, 1) == "id0"


CAT_ONLY = """
objects: [a, b]
morphisms:
  ia: [a, a, identity]
  ib: [b, b, identity]
  f: [a, b]
"""


def test_bare_category():
    C = loader.loads(CAT_ONLY)
    assert isinstance(C, FinCategory)
    assert C.hom("a", "b") == ["f"]


@pytest.mark.parametrize("text, key", [
    (CAT_ONLY + "colour: red\n", "colour"),
    (CAT_ONLY + "compose: [[f, g, f]]\n", "compose.0"),
    ("objects: [a]\nmorphisms: {f: [a, a]}\n", "morphisms"),
    ("generator: {ring: {zmod: 2}, extra: 1}\n", "generator.extra"),
    ("generator: {ring: {zmod: 2}}\nobjects: [a]\n", "objects"),
])
def test_schema_errors(text, key):
    with pytest.raises(SchemaError) as info:
        loader.loads(text)
    assert info.value.key == key


def test_schema_error_has_line():
    with pytest.raises(SchemaError) as info:
        loader.loads("name: x\ncolour: red\n")
    assert info.value.position == 2


def test_invalid_ring_is_a_validation_error():
    with pytest.raises(ValidationError):
        loader.loads("generator: {ring: broken}\n")


def test_non_associative_tables_are_a_validation_error():
    text = """
objects: [a]
morphisms:
  i: [a, a, identity]
  s: [a, a]
compose: [[s, s, s]]
"""
    assert loader.loads(text).compose("s", "s") == "s"
    bad = text.replace("[[s, s, s]]", "[[s, s, i]]") + "plus:\n  unit: a\n  objects: [[a, a, a]]\n"
    with pytest.raises(ValidationError):
        loader.loads(bad)


def test_check_passes_with_counts():
    code, out, _ = call("check", "ring_z6", "--axioms", "all")
    assert code == 0
    assert re.search(r"ok +2\.10 +\(2\.10\) +1296 instances", out)
    assert out.rstrip().endswith("verdict: PASS")


def test_check_broken_exits_one_with_witness():
    code, out, _ = call("check", "broken")
    assert code == 1
    assert "FAIL 2.1+" in out
    assert "witness {'X': '0', 'Y': '0', 'Z': '1', 'W': '1'}" in out


def test_input_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text("objects: [a]\nmorphisms: {}\nwhat: 1\n")
    assert call("check", str(bad))[0] == 2
    assert call("check", "no_such_fixture")[0] == 2
    assert call("check", "pic_z2_z2_xy", "--axioms", "ann2")[0] == 2
    assert call("frobnicate", "ring_z2")[0] == 2
    assert call("search", "bimodule_z2_z2_trivial", "--families", "aplus", "--bound", "10")[0] == 2


def test_machine_report_is_json_lines():
    code, out, _ = call("check", "broken", "--report", "machine")
    recs = [json.loads(line) for line in out.splitlines()]
    fails = [r for r in recs if r.get("verdict") == "fail" and "binding" in r]
    assert code == 1 and fails
    assert set(fails[0]) >= {"diagram", "binding", "lhs", "rhs", "verdict"}
    heads = [r for r in recs if "cite" in r]
    assert all(r["cite"] for r in heads)


@pytest.mark.parametrize("argv", [
    ("zero", "ring_z6"),
    ("end", "ring_z3"),
    ("lambda", "bimodule_z2_z2_trivial"),
    ("transfer", "ring_z2", "--copies", "2"),
    ("strictify", "pic_z4_z2_coboundary", "--probe-depth", "2"),
    ("search", "bimodule_z2_z2_trivial", "--families", "c"),
    ("check", "ring_z2", "--axioms", "functor"),
    ("check", "pic_z2_z2_xy", "--axioms", "pic"),
])
def test_commands_pass(argv):
    code, out, err = call(*argv)
    assert code == 0, out + err


def test_end_on_non_strict_base_fails():
    code, out, _ = call("end", "pic_z4_z2_coboundary")
    assert code == 1 and "aplus=id" in out


def test_embed_prints_faithfulness_and_strictness():
    code, out, _ = call("embed", "bimodule_z2_z2_trivial", "--probe-depth", "3")
    assert code == 0
    assert "faithful: yes" in out
    assert "aplus*=id" in out and "c* is not the identity family" in out


def test_search_lists_valid_sets():
    code, out, _ = call("search", "bimodule_z2_z2_trivial", "--families", "c")
    assert code == 0 and "valid 1" in out and "valid: zero" in out


def test_plot_writes_figures(tmp_path):
    code, _, err = call("embed", "ring_z2", "--plot", str(tmp_path))
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert "embed-ring_z2-instances.png" in files
    assert any(f.endswith("strictness.png") for f in files)
    assert "figure:" in err

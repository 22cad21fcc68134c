import json

import pytest
from hypothesis import given, settings, strategies as st

from anncat import catalog
from anncat.ann import verify_ann
from anncat.examples import from_ring, mutate, zmod
from anncat.report import AxiomReport, DiagramReport, Failure, Report, label, machine_lines, text_lines
from anncat.terms import check_equation, free_variables


@pytest.mark.parametrize("key", sorted(catalog.CATALOG))
def test_catalog_entries_are_closed(key):
    entry = catalog.CATALOG[key]
    eq = entry.equation()
    assert entry.cite
    used = set(free_variables(eq.lhs)) | set(free_variables(eq.rhs))
    assert used <= set(entry.variables)


@pytest.mark.parametrize("key", [e.key for e in catalog.ANN + catalog.ANN1])
def test_ann_entries_typecheck_on_d6(dz6, key):
    rep = check_equation(dz6, catalog.equation(key))
    assert rep.passed and rep.instances == 6 ** len(rep.variables)


@settings(max_examples=6, deadline=None)
@given(st.integers(1, 7))
def test_every_cyclic_ring_passes(n):
    assert verify_ann(from_ring(zmod(n))).passed


def test_label_nests_tuples():
    assert label((1, (2, "x"))) == "(1,(2,x))"


def test_failures_are_sorted_by_enumeration_order():
    d = DiagramReport("t", "(t)", ("X",))
    d.failures = [Failure((2,), order=(2,)), Failure((0,), order=(0,))]
    assert [f.binding for f in d.sort().failures] == [(0,), (2,)]
    assert d.witness().binding == (0,)


def test_machine_and_text_rendering(bz2):
    rep = verify_ann(mutate(bz2, "c", (0, 1)), sections=["Pic"])
    lines = machine_lines(rep)
    recs = [json.loads(x) for x in lines]
    assert all(r.get("section") == "Pic" for r in recs)
    fail = next(r for r in recs if "binding" in r)
    assert fail["verdict"] == "fail" and isinstance(fail["binding"], dict)
    text = text_lines(rep, max_witnesses=1)
    assert text[0].startswith("Pic: FAIL")
    assert any(line.strip().startswith("... ") for line in text)


def test_axiom_report_merges():
    a = Report("a")
    a.add(DiagramReport("x", "(x)", ()))
    ax = AxiomReport({"a": a})
    assert ax.passed and ax.as_report().diagrams[0].diagram == "x"

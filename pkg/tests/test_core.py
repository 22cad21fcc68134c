import pytest
from hypothesis import given, settings, strategies as st

from anncat.core import Bifunctor, FinCategory, NatFamily, identity_functor, validate_bifunctor, validate_category
from anncat.errors import MissingComponent, NoInverse, NotComposable
from anncat.examples import AbelianGroup, skeletal_category


def arrow_category():
    # 0 -> 1, not invertible
    mors = {"i0": (0, 0), "i1": (1, 1), "f": (0, 1)}
    ident = {0: "i0", 1: "i1"}
    comp = {("i0", "i0"): "i0", ("i1", "i1"): "i1", ("f", "i0"): "f", ("i1", "f"): "f"}
    return FinCategory([0, 1], mors, ident, comp, "arrow")


def test_arrow_category_is_valid():
    C = arrow_category()
    rep = validate_category(C)
    assert rep.passed
    assert rep["associativity"].instances == 5  # composable triples
    assert C.hom(0, 1) == ["f"]
    assert not C.is_iso("f")
    with pytest.raises(NoInverse):
        C.inverse("f")


def test_compose_checks_endpoints():
    C = arrow_category()
    with pytest.raises(NotComposable):
        C.compose("f", "i1")


def test_missing_composite_is_reported():
    C = arrow_category().with_composition("i1", "f", "i0")
    rep = validate_category(C)
    assert not rep.passed
    assert rep.failed()[0].diagram in ("unit-laws", "composition")


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 4), m=st.integers(1, 4))
def test_skeletal_categories_are_groupoids(n, m):
    C = skeletal_category(tuple(range(n)), AbelianGroup.cyclic(m), "S")
    assert validate_category(C).passed
    assert all(C.is_iso(f) for f in C.morphisms())
    assert len(C.morphisms()) == n * m


def test_bifunctor_tables_and_interchange():
    C = skeletal_category((0,), AbelianGroup.cyclic(3), "Z3")
    good = Bifunctor(lambda x, y: 0, lambda f, g: (0, (f[1] + g[1]) % 3), "sum")
    assert validate_bifunctor(C, good).passed
    bad = Bifunctor(lambda x, y: 0, lambda f, g: (0, (f[1] * g[1]) % 3), "prod")
    rep = validate_bifunctor(C, bad)
    assert not rep.passed
    t = Bifunctor.from_tables({(0, 0): 0}, {}, "empty")
    with pytest.raises(MissingComponent):
        t.mor((0, 0), (0, 0))


def test_nat_family_table_and_override():
    fam = NatFamily("eta", ("X",), "X", "X", {(0,): "a", (1,): "b"})
    assert fam(0) == "a"
    assert fam.with_component((0,), "z")(0) == "z"
    assert fam(0) == "a"
    with pytest.raises(MissingComponent):
        fam(2)


def test_identity_functor_carries_identity_data(dz2):
    F = identity_functor(dz2)
    assert F.obj(1) == 1
    assert F.breve(1, 1) == dz2.category.identity(0)
    assert F.unit_times == dz2.category.identity(1)

import pytest
from hypothesis import given, settings, strategies as st

from anncat import catalog
from anncat.errors import ArityError, TermSyntaxError, UnknownName
from anncat.terms import (check_equation, eval_obj, eval_term, free_variables, parallel, parse_equation, parse_obj,
                          parse_term, to_text)

VARS = st.sampled_from(["X", "Y", "Z"])


def objexprs():
    leaf = st.one_of(VARS, st.sampled_from(["0", "1"]))
    return st.recursive(leaf, lambda t: st.tuples(st.sampled_from(["oplus", "otimes"]), t, t).map(
        lambda p: f"{p[0]}({p[1]},{p[2]})"), max_leaves=6)


@settings(max_examples=60, deadline=None)
@given(objexprs())
def test_object_round_trip(src):
    assert to_text(parse_obj(src)) == src


@settings(max_examples=40, deadline=None)
@given(objexprs(), objexprs())
def test_term_round_trip(a, b):
    src = f"comp(inv(c[{a},{b}]),oplus(id({a}),aplus[{a},{b},0]))"
    assert to_text(parse_term(src)) == src


def test_free_variables_in_order():
    assert free_variables(parse_term("L[A,oplus(X,A),Y]")) == ["A", "X", "Y"]


@pytest.mark.parametrize("src, exc", [
    ("aplus[X,Y]", ArityError),
    ("comp(id(X)", TermSyntaxError),
    ("id(X) junk", TermSyntaxError),
    ("nosuch[X]", UnknownName),
    ("id(X$)", TermSyntaxError),
])
def test_malformed_terms(src, exc):
    with pytest.raises(exc):
        parse_term(src)


def test_syntax_error_has_position():
    with pytest.raises(TermSyntaxError) as info:
        parse_term("comp(id(X),,id(Y))")
    assert info.value.pos == 11


def test_evaluation_on_discrete_ring(dz6):
    assert eval_obj(dz6, "otimes(oplus(X,Y),X)", {"X": 2, "Y": 3}) == 4
    m = eval_term(dz6, "comp(L[A,X,Y],id(otimes(A,oplus(X,Y))))", {"A": 2, "X": 1, "Y": 4})
    assert m == dz6.category.identity(4)


def test_ill_typed_composite_is_reported(dz6):
    eq = parse_equation("forall X Y : comp(id(X),id(Y)) = id(X)", id="bad")
    rep = check_equation(dz6, eq)
    assert rep.instances == 36
    assert len(rep.failures) == 30
    assert {f.kind for f in rep.failures} == {"ill-typed"}


def test_parallel_partition_gives_same_failures(bz2):
    from anncat.examples import mutate
    A = mutate(bz2, "L", (1, 1, 1))
    eq = catalog.equation("2.10")
    serial = check_equation(A, eq)
    with parallel(4):
        threaded = check_equation(A, eq)
    assert serial.failures and [f.order for f in serial.failures] == [f.order for f in threaded.failures]

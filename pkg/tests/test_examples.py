import itertools

import pytest
from hypothesis import given, settings, strategies as st

from anncat.ann import verify_ann
from anncat.errors import BoundExceeded, InvalidBimodule, InvalidRing
from anncat.examples import (AbelianGroup, BimoduleData, CochainSet, RingTable, broken_ring, f2t, from_bimodule,
                             from_ring, pic_from_cocycle, search_constraint_families, search_space_size, zmod)
from anncat.structures import check_pic


@pytest.mark.parametrize("R", [zmod(2), zmod(3), zmod(6), f2t()], ids=lambda R: R.name)
def test_ring_models_pass(R):
    A = from_ring(R)
    assert len(A.objects) == len(R.carrier)
    assert verify_ann(A).passed


def test_f2t_multiplication():
    R = f2t().validate()
    t = 2
    assert R.mul[(t, t)] == 0
    assert R.mul[(3, 3)] == 1  # (1 + t)^2 = 1


def test_broken_ring_is_rejected():
    with pytest.raises(InvalidRing) as info:
        from_ring(broken_ring())
    assert "distributivity" in info.value.axiom


def test_ring_without_unit_is_rejected():
    R = zmod(3)
    bad = RingTable(R.carrier, R.add, {k: 0 for k in R.mul}, 0, 1, "zero-mul")
    with pytest.raises(InvalidRing):
        bad.validate()


def test_bimodule_action_must_be_unital():
    R = zmod(2)
    B = BimoduleData(R, R.group, {k: 0 for k in R.mul}, dict(R.mul))
    with pytest.raises(InvalidBimodule):
        B.validate()


@pytest.mark.parametrize("n", [2, 4])
def test_trivial_bimodule_models_pass(n):
    A = from_bimodule(BimoduleData.regular(zmod(n)))
    assert A.name == f"B(Z/{n},Z/{n})"
    assert verify_ann(A).passed


def test_single_associator_value_can_break_the_pentagon():
    T = CochainSet({"aplus": {(0, 1, 1): 1}})
    rep = verify_ann(from_bimodule(BimoduleData.regular(zmod(2)), T))
    assert not rep["Pic"]["2.1+"].passed


def test_cochain_equality_ignores_zero_entries():
    assert CochainSet({"c": {(0, 0): 0}}) == CochainSet()
    assert hash(CochainSet({"c": {(1, 1): 0}})) == hash(CochainSet())


@settings(max_examples=20, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1)), st.integers(0, 1)))
def test_pic_commutativity_valid_iff_symmetric_bilinear(table):
    # with trivial associator on Z/2, c is valid exactly when it is a bicharacter with c(x,y)+c(y,x)=0
    z2 = AbelianGroup.cyclic(2)
    P = pic_from_cocycle(z2, z2, None, table)
    c = lambda x, y: table.get((x, y), 0)
    bilinear = all((c((x + y) % 2, z) - c(x, z) - c(y, z)) % 2 == 0 and (c(z, (x + y) % 2) - c(z, x) - c(z, y)) % 2 == 0
                   for x, y, z in itertools.product(range(2), repeat=3))
    symmetric = all((c(x, y) + c(y, x)) % 2 == 0 for x in range(2) for y in range(2))
    assert check_pic(P).passed == (bilinear and symmetric)


def test_search_commutativity_only():
    found = search_constraint_families(BimoduleData.regular(zmod(2)), {"c"})
    assert CochainSet() in found
    assert len(found) == 1


def test_search_associator_and_commutativity_regression():
    B = BimoduleData.regular(zmod(2))
    assert search_space_size(B, {"aplus", "c"}) == 2 ** 12
    found = search_constraint_families(B, {"aplus", "c"}, bound=2 ** 12)
    assert found == [CochainSet()]


def test_search_is_deterministic_across_jobs():
    B = BimoduleData.regular(zmod(2))
    a = search_constraint_families(B, {"l", "r"}, jobs=1)
    b = search_constraint_families(B, {"l", "r"}, jobs=3)
    assert a == b and a[0] == CochainSet()


def test_search_bound():
    with pytest.raises(BoundExceeded):
        search_constraint_families(BimoduleData.regular(zmod(2)), {"aplus", "a"}, bound=10)

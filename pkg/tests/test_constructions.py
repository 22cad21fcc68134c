import itertools

import pytest

from anncat.ann import FAMILY_NAMES, check_ann_functor, verify_ann
from anncat.constructions import (build_end, build_lambda, check_cxx_condition, check_equivalence, check_faithful,
                                  embed_almost_strict, enumerate_end, identity_equivalence, inflate, strictify_plus,
                                  strictness_report, transfer_structure, verify_end_almost_strict)
from anncat.constructions.strict import base_strictness
from anncat.errors import BoundExceeded, InvalidMultiplicity, PreconditionFailed
from anncat.examples import AbelianGroup, pic_from_cocycle, zmod, from_ring
from anncat.structures import check_ac_functor, check_au_functor, check_pic


def coboundary_pic():
    k = {(1, 1): 1}
    h = lambda x, y, z: (k.get((y, z), 0) - k.get(((x + y) % 4, z), 0) + k.get((x, (y + z) % 4), 0)
                         - k.get((x, y), 0)) % 2
    return pic_from_cocycle(AbelianGroup.cyclic(4), AbelianGroup.cyclic(2), h, None)


# equivalences and transport -------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3])
def test_inflation_is_an_equivalence(dz2, k):
    C, E = inflate(dz2, k)
    assert len(C.objects) == 2 * k
    assert check_equivalence(E).passed


def test_inflation_rejects_zero_copies(dz2):
    with pytest.raises(InvalidMultiplicity):
        inflate(dz2, 0)


def test_identity_transfer_is_exact(bz2):
    A2, _ = transfer_structure(bz2, bz2, identity_equivalence(bz2))
    for name in FAMILY_NAMES:
        k = len(bz2.family(name).variables)
        for t in itertools.product(bz2.objects, repeat=k):
            assert A2.family(name)(*t) == bz2.family(name)(*t)


@pytest.mark.parametrize("fixture", ["dz2", "bz2"])
def test_transfer_along_inflation(request, fixture):
    A = request.getfixturevalue(fixture)
    C, E = inflate(A, 2)
    B, F = transfer_structure(C, A, E)
    assert verify_ann(B).passed
    assert check_ann_functor(F).passed
    assert check_ac_functor(F, "plus").passed
    assert check_au_functor(F, "times").passed


def test_transfer_refuses_a_broken_equivalence(dz2):
    C, E = inflate(dz2, 2)
    from dataclasses import replace
    from anncat.core import NatFamily

    swapped = NatFamily("alpha'", ("X",), "X", "X", lambda x: dz2.category.identity(1 - x))
    bad = replace(E, alphaPrime=swapped)
    with pytest.raises(PreconditionFailed):
        transfer_structure(C, dz2, bad)


# strictification -------------------------------------------------------------


@pytest.mark.parametrize("fixture", ["dz2", "bz2"])
def test_strictify_ann(request, fixture):
    A = request.getfixturevalue(fixture)
    S = strictify_plus(A, 3)
    rep = strictness_report(S)
    assert rep.passed
    assert rep["aplus'=id"].instances == 15 ** 3
    assert rep["aplus'=id"].bounded
    assert check_ann_functor(S.F, [w for w in S.category.objects if len(w) <= 2]).passed


def test_strictify_non_strict_pic():
    P = coboundary_pic()
    assert check_pic(P).passed
    assert not base_strictness(P).passed
    S = strictify_plus(P, 2)
    assert strictness_report(S).passed


def test_word_sum_is_concatenation(dz2):
    S = strictify_plus(dz2, 2)
    W = S.structure
    assert W.plus.tensor.obj((1,), (1, 0)) == (1, 1, 0)
    assert W.zero == ()


def test_cross_stage_diagonal(dz6, pic_xy):
    assert check_cxx_condition(dz6).passed
    S = strictify_plus(dz6, 2)
    assert strictness_report(S).data["c_diagonal_identity"]
    rep = check_cxx_condition(pic_xy)
    assert not rep.passed and rep.diagrams[0].witness().binding == (1,)
    assert not strictness_report(strictify_plus(pic_xy, 2)).data["c_diagonal_identity"]


# End(A) --------------------------------------------------------------------


def test_end_counts(dz2, bz2, pic_xy):
    assert len(enumerate_end(dz2)) == 2
    assert len(enumerate_end(from_ring(zmod(3)))) == 3
    assert len(enumerate_end(bz2)) == 16
    assert len(enumerate_end(pic_xy)) == 8


def test_end_bound(bz2):
    with pytest.raises(BoundExceeded):
        enumerate_end(bz2, bound=10)


def test_end_needs_strict_sum():
    with pytest.raises(PreconditionFailed):
        build_end(coboundary_pic())


@pytest.mark.parametrize("n", [2, 3])
def test_end_is_almost_strict(n):
    E = build_end(from_ring(zmod(n)))
    rep = verify_end_almost_strict(E)
    assert rep.passed
    table = rep["strictness"].data["strict"]
    assert all(table[k] for k in ("aplus", "g", "d", "a", "l", "r", "R"))


def test_end_product_is_strictly_associative(bz2):
    E = build_end(bz2, check=False, objects=enumerate_end(bz2)[:6])
    cat = E.end
    for F, G, H in itertools.product(cat.objects, repeat=3):
        assert cat.product(cat.product(F, G), H) == cat.product(F, cat.product(G, H))
    for F in cat.objects:
        assert cat.product(cat.unit_obj, F) == F == cat.product(F, cat.unit_obj)


def test_end_commutativity_not_strict_for_product_cocycle(pic_xy):
    E = build_end(pic_xy)
    from anncat.constructions import strictness_table
    assert not strictness_table(E).data["strict"]["c"]


# Lambda and the embedding -------------------------------------------------


@pytest.mark.parametrize("fixture", ["dz2", "bz2", "dz6"])
def test_lambda_is_faithful_ann_functor(request, fixture):
    A = request.getfixturevalue(fixture)
    lam = build_lambda(A)
    assert check_faithful(lam.functor).passed
    assert check_ann_functor(lam.functor).passed
    assert check_ac_functor(lam.functor, "plus").passed
    assert check_au_functor(lam.functor, "times").passed


@pytest.mark.parametrize("fixture", ["dz2", "bz2"])
def test_embedding(request, fixture):
    A = request.getfixturevalue(fixture)
    emb = embed_almost_strict(A, 3)
    assert emb.report.passed, emb.report.failed_sections()
    assert emb.faithful
    assert emb.report["Ann-functor"]["2.15"].passed and emb.report["Ann-functor"]["2.15'"].passed
    assert emb.report["strictness"].data["strict"]["aplus"]

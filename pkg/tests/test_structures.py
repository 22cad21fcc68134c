import itertools

import pytest

from anncat.core import identity_functor
from anncat.examples import AbelianGroup, pic_from_cocycle
from anncat.structures import (build_v, check_ac_functor, check_acu, check_au, check_au_functor,
                               check_invertible, check_monoidal_morphism, check_pic, compose_monoidal_functors,
                               family_is_identity, find_inverse, sum_functors)

Z2, Z4 = AbelianGroup.cyclic(2), AbelianGroup.cyclic(4)


def coboundary_z4():
    def k(x, y):
        return 1 if (x, y) == (1, 1) else 0

    return lambda x, y, z: (k(y, z) - k((x + y) % 4, z) + k(x, (y + z) % 4) - k(x, y)) % 2


def test_pic_with_product_commutativity(pic_xy):
    rep = check_pic(pic_xy)
    assert rep.passed
    assert rep["2.1+"].instances == 16
    assert rep.data["inverses"] == {0: 0, 1: 1}


def test_trivial_pic_passes():
    assert check_pic(pic_from_cocycle(Z2, Z2, None, None)).passed


def test_non_cocycle_associator_fails_pentagon():
    P = pic_from_cocycle(Z2, Z2, {(0, 1, 1): 1}, None)
    rep = check_au(P)
    assert not rep["2.1+"].passed
    assert rep["2.1+"].witness().binding == (0, 0, 1, 1)


def test_coboundary_associator_on_z4():
    P = pic_from_cocycle(Z4, Z2, coboundary_z4(), None)
    rep = check_pic(P)
    assert rep.passed
    assert rep.data["inverses"] == {0: 0, 1: 3, 2: 2, 3: 1}
    assert not family_is_identity(P.category, P.families()["aplus"], P.objects).passed


def test_acu_needs_commutativity(dz2):
    no_c = dz2.times
    assert no_c.comm is None
    rep = check_acu(no_c)
    assert not rep.passed


def test_find_inverse_in_ring(dz6):
    assert find_inverse(dz6.plus, 2) == 4
    assert find_inverse(dz6.times, 2) is None
    assert not check_invertible(dz6.times).passed


def test_identity_functor_is_monoidal(bz2):
    F = identity_functor(bz2)
    assert check_ac_functor(F, "plus").passed
    assert check_au_functor(F, "times").passed
    G = compose_monoidal_functors(F, F)
    assert check_ac_functor(G, "plus").passed
    assert check_au_functor(G, "times").passed


def test_identity_morphism_between_identity_functors(bz2):
    F = identity_functor(bz2)
    C = bz2.category
    from anncat.core import NatFamily
    alpha = NatFamily("alpha", ("X",), "X", "X", lambda x: C.identity(x))
    assert check_monoidal_morphism(alpha, F, F, "plus").passed
    bad = NatFamily("alpha", ("X",), "X", "X", lambda x: (x, 1))
    assert not check_monoidal_morphism(bad, F, F, "plus").passed


def test_v_middle_four_interchange(bz2):
    v = build_v(bz2.plus)
    C = bz2.category
    for args in itertools.product(bz2.objects, repeat=4):
        m = v(*args)
        a, b, c, d = args
        assert C.dom(m) == (a + b + c + d) % 2 == C.cod(m)


def test_sum_of_identity_functors_is_additive(bz2):
    F = identity_functor(bz2)
    S = sum_functors(F, F)
    assert S.obj(1) == 0
    assert check_ac_functor(S, "plus").passed


@pytest.mark.parametrize("name", ["aplus", "c", "g", "d"])
def test_family_is_identity_on_trivial_data(dz2, name):
    assert family_is_identity(dz2.category, dz2.families()[name], dz2.objects).passed

import itertools

import pytest

from anncat.ann import FAMILY_NAMES, check_ann_functor, check_zero_properties, derive_zero_isos, verify_ann
from anncat.core import identity_functor
from anncat.errors import MultipleSolutions, NoSolution
from anncat.examples import broken_ring, from_ring, mutate

SECTIONS = ["structure", "Pic", "AU", "Ann-1/L^A", "Ann-1/R^A", "2.10", "2.10'", "2.11", "2.12", "2.13", "2.13'"]


def test_sections_and_counts(dz6):
    rep = verify_ann(dz6)
    assert rep.passed
    assert list(rep.sections) == SECTIONS
    assert rep["2.10"]["2.10"].instances == 6 ** 4
    assert rep["2.12"]["2.12"].instances == 6 ** 4
    assert rep["2.13"]["2.13"].instances == 36
    assert rep["2.10"]["2.10"].cite == "(2.10)"


def test_restricted_sections(bz2):
    rep = verify_ann(bz2, sections=["2.11"])
    assert list(rep.sections) == ["2.11"]


def test_probe_objects_flag_bounded(bz4):
    rep = verify_ann(bz4, [0, 1], structural=False)
    # 1 has its additive inverse 3 outside the probe set; nothing else fails
    assert [d.diagram for s in rep.sections.values() for d in s.failed()] == ["objects-invertible"]
    assert rep["2.10"]["2.10"].instances == 16
    assert rep["2.10"]["2.10"].bounded


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_every_single_mutation_is_caught(bz2, name):
    k = len(bz2.families()[name].variables)
    for args in itertools.product(bz2.objects, repeat=k):
        rep = verify_ann(mutate(bz2, name, args))
        assert not rep.passed, (name, args)
        failing = [d for s in rep.sections.values() for d in s.failed()]
        assert failing[0].witness() is not None


def test_broken_distributivity_fails_only_where_L_or_R_occur():
    A = from_ring(broken_ring(), check=False)
    rep = verify_ann(A)
    assert rep["Pic"].passed and rep["AU"].passed
    assert not rep["2.10"].passed
    bad = [d.diagram for s in rep.sections.values() for d in s.failed()]
    assert all(d.startswith(("L:", "R:", "Ann-1", "2.1")) for d in bad)


def test_zero_isos_unique_and_literal(dz6, bz4):
    for A in (dz6, bz4):
        Z = derive_zero_isos(A)
        assert set(Z.candidates.values()) == {1}
        assert len(Z.candidates) == 2 * len(A.objects)
        rep = check_zero_properties(A, Z)
        assert rep.passed
        for key in ("3.2iii-L", "3.2iii-R", "3.2i-g0=d0"):
            assert rep[key].instances == 1
        assert Z.Lhat(A.one) == A.family("l")(A.zero)
        assert Z.Rhat(A.one) == A.family("r")(A.zero)


@pytest.mark.parametrize("name, args, first", [("L", (1, 0, 1), "3.1a"), ("R", (0, 1, 1), "3.1c")])
def test_zero_squares_catch_bad_distributor(bz2, name, args, first):
    A = mutate(bz2, name, args)
    rep = check_zero_properties(A, derive_zero_isos(A))
    assert rep.failed()[0].diagram == first


def test_identity_is_an_ann_functor(bz4):
    rep = check_ann_functor(identity_functor(bz4))
    assert rep.passed
    assert [d.diagram for d in rep.diagrams] == ["2.15", "2.15'"]


def _with_plus_mor(A, mor):
    from anncat.ann import AnnCat
    from anncat.core import Bifunctor

    old = A.plus.tensor
    plus = A.plus.replace(tensor=Bifunctor(old.obj, mor, "oplus"))
    return AnnCat(A.category, plus, A.times, A.ldist, A.rdist, "skewed")


def test_solver_reports_ambiguity(bz2):
    # a sum that forgets the left morphism cannot pin down Lhat
    A = _with_plus_mor(bz2, lambda f, g: ((f[0] + g[0]) % 2, g[1]))
    with pytest.raises(MultipleSolutions):
        derive_zero_isos(A)


def test_solver_reports_absence(bz2):
    # a sum that shifts every M-part leaves the defining square unsolvable at A = 0
    A = _with_plus_mor(bz2, lambda f, g: ((f[0] + g[0]) % 2, 1))
    with pytest.raises(NoSolution):
        derive_zero_isos(A)

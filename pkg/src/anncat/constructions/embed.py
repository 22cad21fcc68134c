"""The embedding Lambda : A -> End(A) and the almost-strict embedding pipeline."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from ..ann import AnnCat, check_ann_functor, derive_zero_isos, left_mult
from ..core import FunctorData, NatFamily, category_of
from ..errors import PreconditionFailed
from ..report import AxiomReport, DiagramReport, Failure, Report
from ..structures import check_ac_functor, check_au_functor, compose_monoidal_functors
from ..terms import env_of
from .end import EndCat, EndMor, build_end, strictness_table, verify_end_almost_strict
from .strict import Strictification, strictify_plus


@dataclass
class LambdaResult:
    functor: FunctorData  # Lambda with breve, tilde and unit morphisms
    end: EndCat

    @property
    def breve(self) -> NatFamily:
        return self.functor.breve

    @property
    def tilde(self) -> NatFamily:
        return self.functor.tilde


def build_lambda(A: AnnCat, end: EndCat | None = None, check: bool = True) -> LambdaResult:
    """Lambda(X) = (L^X, L[X,-,-]), Lambda(f) = (f * id_Y)_Y into End of the additive part."""
    E = end or build_end(A.plus, check=check)
    cat = E.end
    C, times = A.category, A.times.tensor
    env = A.env()
    R, a, l = env.family("R"), env.family("a"), env.family("l")

    def obj(x):
        return cat.intern(left_mult(A, x).replace(source=A.plus, target=A.plus))

    def mor(f):
        return EndMor(obj(C.dom(f)), obj(C.cod(f)), lambda y: times.mor(f, C.identity(y)))

    breve = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))",
                      lambda x, y: EndMor(obj(env.plus.obj(x, y)), cat.sum(obj(x), obj(y)),
                                          lambda z: R(x, y, z)))
    tilde = NatFamily("Ftilde", ("X", "Y"), "F(otimes(X,Y))", "otimes(F(X),F(Y))",
                      lambda x, y: EndMor(obj(times.obj(x, y)), cat.product(obj(x), obj(y)),
                                          lambda z: C.inverse(a(x, y, z))))
    unit_times = EndMor(obj(A.one), cat.unit_obj, lambda z: l(z))
    zero = derive_zero_isos(A)
    unit_plus = EndMor(obj(A.zero), cat.zero_obj, lambda z: zero.Rhat(z))
    F = FunctorData(A, E, obj, mor, breve=breve, tilde=tilde, unit_plus=unit_plus, unit_times=unit_times,
                    name="Λ")
    return LambdaResult(F, E)


def check_faithful(F: FunctorData, objects: Sequence | None = None) -> Report:
    """F(f) != F(g) for every pair of distinct parallel morphisms."""
    C = category_of(F.source)
    objs = list(C.objects if objects is None else objects)
    rep = Report(f"faithful {F.name}")
    d = rep.add(DiagramReport("faithful", "F(f) = F(g) => f = g", ("f", "g"),
                              bounded=C.bounded or objects is not None))
    for (i, x), (j, y) in itertools.product(enumerate(objs), repeat=2):
        hom = list(C.hom(x, y))
        images = [F.mor(f) for f in hom]
        for (p, f), (q, g) in itertools.combinations(enumerate(hom), 2):
            d.instances += 1
            if images[p] == images[q]:
                d.failures.append(Failure((f, g), images[p], images[q], "violation", "equal images", (i, j, p, q)))
    return rep


def check_cxx_condition(A) -> Report:
    """c[X,X] = id for every object X; failures list the offending objects."""
    P = A.plus if isinstance(A, AnnCat) else A
    C = category_of(P)
    c = env_of(P).family("c")
    rep = Report("c[X,X]=id")
    d = rep.add(DiagramReport("c[X,X]=id", "Thm 2.4 ii", ("X",), bounded=C.bounded))
    for i, x in enumerate(C.objects):
        d.instances += 1
        m = c(x, x)
        e = C.identity(C.dom(m))
        if m != e:
            d.failures.append(Failure((x,), m, e, "mismatch", "", (i,)))
    return rep


@dataclass
class Embedding:
    strict: Strictification
    end: EndCat
    lam: LambdaResult
    composite: FunctorData
    report: AxiomReport = field(default_factory=AxiomReport)

    @property
    def faithful(self) -> bool:
        return self.report["faithful"].passed


def embed_almost_strict(A: AnnCat, depth: int = 3, *, verify_target: bool = True) -> Embedding:
    """Strictify the sum, then embed by Lambda into End of the word category.

    The composite Lambda . [-] : A -> End(W) is faithful and an Ann-functor;
    the report carries both checks, the checks of each stage and the
    strictness table of the target on the image of A.
    """
    S = strictify_plus(A, depth)
    W = S.structure
    if not isinstance(W, AnnCat):
        raise PreconditionFailed("embed_almost_strict needs an Ann-category")
    end = build_end(W.plus)
    lam = build_lambda(W, end)
    comp = compose_monoidal_functors(lam.functor, S.Fprime, name="Λ[-]")
    out = Embedding(S, end, lam, comp)
    rep = out.report
    rep.sections["inclusion"] = _functor_checks(S.Fprime)
    rep.sections["faithful"] = check_faithful(comp)
    rep.sections["Ann-functor"] = _functor_checks(comp)
    image = list(dict.fromkeys(comp.obj(x) for x in A.objects))
    end.category.objects = tuple(image)
    _register_images(A, comp, end.end)
    rep.sections["strictness"] = strictness_table(end, image)
    if verify_target:
        target = verify_end_almost_strict(end, image, structural=False)
        for key, sec in target.sections.items():
            if key != "strictness":
                sec.title = f"End/{key}"
                rep.sections[f"End/{key}"] = sec
    return out


def _functor_checks(F: FunctorData, objects=None) -> Report:
    rep = Report(f"Ann-functor {F.name}")
    rep.extend(check_ann_functor(F, objects))
    rep.extend(check_ac_functor(F, "plus", objects))
    rep.extend(check_au_functor(F, "times", objects))
    return rep



def _register_images(A: AnnCat, G: FunctorData, cat) -> None:
    """Hom-sets of End over the lazy word category: images of A and the inverse witnesses.

    For x + y ~ 0 in A the witness G(x) + G(y) -> theta is
    unit . G(f) . breve^-1 with f : x + y -> 0.
    """
    C, plus = A.category, A.plus.tensor
    for x in C.objects:
        for y in C.objects:
            for f in C.hom(x, y):
                cat.register(G.mor(f))
            for f in C.hom(plus.obj(x, y), A.zero):
                m = cat.compose(G.unit_plus, cat.compose(G.mor(f), cat.inverse(G.breve(x, y))))
                cat.register(m)

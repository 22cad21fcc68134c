"""End(A): additive endofunctors of a Pic category with strict sum.

Objects are pairs (F, F-breve) compared extensionally on the probe objects
of the base: the object map, the morphism map and F-breve must agree.
Morphisms are natural families F -> G compared componentwise on the probe.
Sum is (2.14), product is composition (2.7); the constraints are

    aplus*, g*, d* : the base ones at FX, GX, HX (identities for a strict base)
    c*[F,G]X = c[FX,GX]       L*[F,G,H]X = F-breve[GX,HX]
    a*, l*, r*, R* : identities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Sequence

from ..ann import AnnCat, make_family
from ..core import Bifunctor, Category, FunctorData, NatFamily
from ..errors import BoundExceeded, NotComposable, PreconditionFailed
from ..report import AxiomReport, Report, label
from ..structures import MonoidalData, check_ac_functor, compose_monoidal_functors, family_is_identity, sum_functors
from .strict import base_strictness


class EndObject:
    """An additive endofunctor, hashed by its values on the probe."""

    def __init__(self, functor: FunctorData, end: "EndCategory", name: str | None = None):
        self.functor = functor
        self.end = end
        self.name = name or functor.name
        self._sig = None

    def signature(self) -> tuple:
        if self._sig is None:
            F, probe = self.functor, self.end
            objs = tuple(F.obj(x) for x in probe.base_objects)
            mors = tuple(F.mor(f) for f in probe.base_morphisms)
            brev = tuple(F.breve(x, y) for x in probe.base_objects for y in probe.base_objects)
            self._sig = (objs, mors, brev)
        return self._sig

    def obj(self, x):
        return self.functor.obj(x)

    def __eq__(self, other):
        return self is other or (isinstance(other, EndObject) and self.signature() == other.signature())

    def __hash__(self):
        return hash(self.signature())

    def label(self) -> str:
        return self.name

    def __repr__(self):
        return f"EndObject({self.name})"


class EndMor:
    """A family (phi_X : FX -> GX)_X."""

    __slots__ = ("src", "tgt", "component", "_sig")

    def __init__(self, src: EndObject, tgt: EndObject, component):
        self.src, self.tgt, self.component = src, tgt, component
        self._sig = None

    def __call__(self, x):
        return self.component(x)

    def signature(self) -> tuple:
        if self._sig is None:
            self._sig = tuple(self.component(x) for x in self.src.end.base_objects)
        return self._sig

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, EndMor):
            return False
        return self.src == other.src and self.tgt == other.tgt and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def label(self) -> str:
        comps = ",".join(label(m) for m in self.signature())
        return f"{self.src.name}->{self.tgt.name}:<{comps}>"


class EndCategory(Category):
    def __init__(self, P: MonoidalData, probe: Sequence | None = None, name: str | None = None):
        self.P = P
        self.base = P.category
        self.base_objects = tuple(self.base.objects if probe is None else probe)
        self.base_morphisms = tuple(f for x in self.base_objects for y in self.base_objects
                                    for f in self.base.hom(x, y))
        self.bounded = self.base.bounded or probe is not None
        self.name = name or f"End({self.base.name})"
        self.objects: tuple = ()
        self._interned: dict = {}
        self._memo: dict = {}
        self._known: dict = {}
        env = P.env()
        self.v = env.family("v")
        self.zero_obj = self.intern(self._theta(), "θ")
        self.unit_obj = self.intern(self._identity_functor(), "Id")

    # objects -----------------------------------------------------------
    def intern(self, F: FunctorData, name: str | None = None) -> EndObject:
        obj = EndObject(F, self, name)
        sig = obj.signature()
        if sig in self._interned:
            return self._interned[sig]
        if name is None:
            obj.name = f"F{len(self._interned)}"
        self._interned[sig] = obj
        return obj

    def _theta(self) -> FunctorData:
        B, zero = self.base, self.P.unit
        g = self.P.env().family("g")
        breve = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))",
                          lambda x, y: B.inverse(g(zero)))
        return FunctorData(self.P, self.P, lambda x: zero, lambda f: B.identity(zero), breve=breve,
                           unit_plus=B.identity(zero), name="θ")

    def _identity_functor(self) -> FunctorData:
        B, plus = self.base, self.P.tensor
        breve = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))",
                          lambda x, y: B.identity(plus.obj(x, y)))
        return FunctorData(self.P, self.P, lambda x: x, lambda f: f, breve=breve,
                           unit_plus=B.identity(self.P.unit), name="Id")

    def sum(self, F: EndObject, G: EndObject) -> EndObject:
        key = ("+", id(F), id(G))
        if key not in self._memo:
            self._memo[key] = self.intern(sum_functors(F.functor, G.functor, self.v, name=f"({F.name}+{G.name})"))
        return self._memo[key]

    def product(self, F: EndObject, G: EndObject) -> EndObject:
        key = ("*", id(F), id(G))
        if key not in self._memo:
            self._memo[key] = self.intern(compose_monoidal_functors(F.functor, G.functor, name=f"{F.name}{G.name}"))
        return self._memo[key]

    # morphisms ---------------------------------------------------------
    def dom(self, f):
        return f.src

    def cod(self, f):
        return f.tgt

    def identity(self, F):
        B = self.base
        return EndMor(F, F, lambda x: B.identity(F.obj(x)))

    def compose(self, g, f):
        if f.tgt != g.src:
            raise NotComposable(g, f, f"{f.tgt.name} != {g.src.name}")
        B = self.base
        return EndMor(f.src, g.tgt, lambda x: B.compose(g(x), f(x)))

    def inverse(self, f):
        B = self.base
        return EndMor(f.tgt, f.src, lambda x: B.inverse(f(x)))

    def hom(self, F, G):
        """Additive natural families F -> G; enumerated only over a finite base.

        Over a lazy base the hom-set holds the identity and whatever was
        registered with ``register``.
        """
        if self.base.bounded:
            out = [self.identity(F)] if F == G else []
            return out + [m for m in self._known.get((F, G), []) if m not in out]
        B, plus = self.base, self.P.tensor
        objs = self.base_objects
        choices = [B.hom(F.obj(x), G.obj(x)) for x in objs]
        out = []
        for comps in itertools.product(*choices):
            table = dict(zip(objs, comps))
            if not all(B.compose(table[B.cod(f)], F.functor.mor(f)) == B.compose(G.functor.mor(f), table[B.dom(f)])
                       for f in self.base_morphisms):
                continue
            if not all(B.compose(G.functor.breve(x, y), table[plus.obj(x, y)])
                       == B.compose(plus.mor(table[x], table[y]), F.functor.breve(x, y))
                       for x in objs for y in objs):
                continue
            out.append(EndMor(F, G, table.__getitem__))
        return out

    def register(self, m: EndMor) -> None:
        """Record a morphism built elsewhere (e.g. an image under a functor)."""
        known = self._known.setdefault((m.src, m.tgt), [])
        if m not in known:
            known.append(m)

    # operations --------------------------------------------------------
    def plus_bifunctor(self) -> Bifunctor:
        plus = self.P.tensor
        return Bifunctor(self.sum, lambda f, g: EndMor(self.sum(f.src, g.src), self.sum(f.tgt, g.tgt),
                                                       lambda x: plus.mor(f(x), g(x))), "oplus")

    def times_bifunctor(self) -> Bifunctor:
        B = self.base

        def mor(f, g):
            # (f*g)_X = f_{G'X} . F(g_X) for f : F -> F', g : G -> G'
            F = f.src.functor
            return EndMor(self.product(f.src, g.src), self.product(f.tgt, g.tgt),
                          lambda x: B.compose(f(g.tgt.obj(x)), F.mor(g(x))))

        return Bifunctor(self.product, mor, "otimes")


@dataclass(eq=False)
class EndCat(AnnCat):
    end: Any = None


def _fam(name: str, cat: EndCategory, src, tgt, comp) -> NatFamily:
    """A constraint family of End(A) from source/target object maps and components."""
    return make_family(name, lambda *Fs: EndMor(src(*Fs), tgt(*Fs), lambda x: comp(x, *Fs)))


def build_end(A, objects: Sequence | None = None, probe: Sequence | None = None, check: bool = True,
              name: str | None = None) -> EndCat:
    """End(A) for a Pic structure (or the additive part of an AnnCat) with strict sum.

    ``objects`` are the functors enumerated as the object collection
    (FunctorData or EndObject); by default every additive endofunctor of a
    finite base, or just θ and Id over a lazy one.
    """
    P = A.plus if isinstance(A, AnnCat) else A
    if check:
        rep = base_strictness(P, probe)
        if not rep.passed:
            raise PreconditionFailed("aplus, g, d of the base are not identities", rep)
    E = EndCategory(P, probe, name)
    if objects is None:
        objects = [E.zero_obj, E.unit_obj] if E.base.bounded else enumerate_end(P, end=E)
    E.objects = tuple(dict.fromkeys(o if isinstance(o, EndObject) and o.end is E else
                                    E.intern(o.functor if isinstance(o, EndObject) else o) for o in objects))
    B = E.base
    env = P.env()
    aplus, g, d, c = (env.family(n) for n in ("aplus", "g", "d", "c"))
    s, p = E.sum, E.product
    fams = {
        "aplus": _fam("aplus", E, lambda F, G, H: s(F, s(G, H)), lambda F, G, H: s(s(F, G), H),
                      lambda x, F, G, H: aplus(F.obj(x), G.obj(x), H.obj(x))),
        "c": _fam("c", E, lambda F, G: s(F, G), lambda F, G: s(G, F), lambda x, F, G: c(F.obj(x), G.obj(x))),
        "g": _fam("g", E, lambda F: s(E.zero_obj, F), lambda F: F, lambda x, F: g(F.obj(x))),
        "d": _fam("d", E, lambda F: s(F, E.zero_obj), lambda F: F, lambda x, F: d(F.obj(x))),
        "a": _fam("a", E, lambda F, G, H: p(F, p(G, H)), lambda F, G, H: p(p(F, G), H),
                  lambda x, F, G, H: B.identity(F.obj(G.obj(H.obj(x))))),
        "l": _fam("l", E, lambda F: p(E.unit_obj, F), lambda F: F, lambda x, F: B.identity(F.obj(x))),
        "r": _fam("r", E, lambda F: p(F, E.unit_obj), lambda F: F, lambda x, F: B.identity(F.obj(x))),
        "L": _fam("L", E, lambda F, G, H: p(F, s(G, H)), lambda F, G, H: s(p(F, G), p(F, H)),
                  lambda x, F, G, H: F.functor.breve(G.obj(x), H.obj(x))),
        "R": _fam("R", E, lambda F, G, H: p(s(F, G), H), lambda F, G, H: s(p(F, H), p(G, H)),
                  lambda x, F, G, H: B.identity(P.tensor.obj(F.obj(H.obj(x)), G.obj(H.obj(x))))),
    }
    psum = MonoidalData(E, E.plus_bifunctor(), E.zero_obj, fams["aplus"], fams["g"], fams["d"], fams["c"],
                        side="plus")
    prod = MonoidalData(E, E.times_bifunctor(), E.unit_obj, fams["a"], fams["l"], fams["r"], side="times")
    return EndCat(E, psum, prod, fams["L"], fams["R"], E.name, end=E)


def _estimate(C: Category, plus: Bifunctor, objs, mors) -> int:
    total = 0
    for images in itertools.product(objs, repeat=len(objs)):
        omap = dict(zip(objs, images))
        size = 1
        for f in mors:
            size *= len(C.hom(omap[C.dom(f)], omap[C.cod(f)]))
            if not size:
                break
        for x, y in itertools.product(objs, repeat=2):
            if not size:
                break
            size *= len(C.hom(omap[plus.obj(x, y)], plus.obj(omap[x], omap[y])))
        total += size
    return total


def enumerate_end(A, bound: int = 10 ** 6, end: EndCategory | None = None) -> list[EndObject]:
    """Every additive functor (F, F-breve) of a finite base passing check_ac_functor."""
    P = A.plus if isinstance(A, AnnCat) else A
    C = P.category
    if C.bounded:
        raise PreconditionFailed("enumerate_end needs a finite base category")
    plus = P.tensor
    objs = list(C.objects)
    mors = C.morphisms()
    if len(objs) ** len(objs) > bound:
        raise BoundExceeded(len(objs) ** len(objs), bound)
    size = _estimate(C, plus, objs, mors)
    if size > bound:
        raise BoundExceeded(size, bound)
    E = end or EndCategory(P)
    found: list[EndObject] = []
    pairs = list(itertools.product(objs, repeat=2))
    for images in itertools.product(objs, repeat=len(objs)):
        omap = dict(zip(objs, images))
        mor_choices = [C.hom(omap[C.dom(f)], omap[C.cod(f)]) for f in mors]
        for mimages in itertools.product(*mor_choices):
            mmap = dict(zip(mors, mimages))
            if not _functorial(C, omap, mmap, objs, mors):
                continue
            breve_choices = [C.hom(omap[plus.obj(x, y)], plus.obj(omap[x], omap[y])) for x, y in pairs]
            for bimages in itertools.product(*breve_choices):
                btable = dict(zip(pairs, bimages))
                if not _natural(C, plus, omap, mmap, btable, mors):
                    continue
                F = FunctorData(P, P, omap.__getitem__, mmap.__getitem__,
                                breve=NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))",
                                                btable),
                                name="F")
                if check_ac_functor(F, "plus", fail_fast=True).passed:
                    obj = E.intern(F)
                    if obj not in found:
                        found.append(obj)
    return found


def _functorial(C, omap, mmap, objs, mors) -> bool:
    for x in objs:
        if mmap[C.identity(x)] != C.identity(omap[x]):
            return False
    for f in mors:
        for g in mors:
            if C.dom(g) == C.cod(f) and mmap[C.compose(g, f)] != C.compose(mmap[g], mmap[f]):
                return False
    return True


def _natural(C, plus, omap, mmap, btable, mors) -> bool:
    for f in mors:
        for g in mors:
            x, y, x2, y2 = C.dom(f), C.dom(g), C.cod(f), C.cod(g)
            lhs = C.compose(btable[(x2, y2)], mmap[plus.mor(f, g)])
            rhs = C.compose(plus.mor(mmap[f], mmap[g]), btable[(x, y)])
            if lhs != rhs:
                return False
    return True


STRICT_EXPECTED = ("aplus", "g", "d", "a", "l", "r", "R")


def strictness_table(E: EndCat, objects: Sequence | None = None) -> Report:
    """Which constraint families of End are identities on the object collection."""
    cat = E.category
    objs = list(cat.objects if objects is None else objects)
    rep = Report("strictness")
    env = E.env()
    table = {}
    for name in STRICT_EXPECTED + ("c", "L"):
        d = family_is_identity(cat, env.family(name), objs)
        d.diagram = f"{name}*=id"
        d.cite = "Thm 5.1"
        table[name] = d.passed
        if name in STRICT_EXPECTED:
            rep.add(d)
        else:
            witness = d.witness()
            extra = f" (first non-identity at {label(witness.binding)})" if witness else ""
            rep.notes.append(f"{name}* is {'' if d.passed else 'not '}the identity family{extra}")
    rep.data["strict"] = table
    return rep


def verify_end_almost_strict(E: EndCat, objects: Sequence | None = None, *, structural: bool | None = None):
    """Strictness of every constraint except c*, L*, then verify_ann on the collection."""
    from ..ann import verify_ann

    if structural is None:
        structural = not E.category.base.bounded
    out = AxiomReport()
    out.sections["strictness"] = strictness_table(E, objects)
    res = verify_ann(E, objects, structural=structural)
    out.sections.update(res.sections)
    return out


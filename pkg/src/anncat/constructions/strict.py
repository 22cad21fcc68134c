"""Strictification of the addition: the category of words.

Objects are finite words over the objects of A, added by concatenation, so
the associativity and unit constraints can be identities.  A word evaluates
by the left fold eval() = 0, eval(x) = x, eval(w y) = eval(w) + y, and
Hom(u, w) = Hom_A(eval u, eval w).  The canonical morphism
breve(u, w) : eval(uw) -> eval u + eval w is assembled from aplus, g and d;
every other piece of structure is transported along the equivalence
(eval, [-]) with transfer_structure, keeping concatenation as the sum.

The word category is infinite; checks run on the probe words of length at
most ``depth`` and reports are flagged bounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from ..ann import AnnCat
from ..core import Bifunctor, Category, FunctorData, NatFamily, category_of
from ..errors import NoInverse, NotComposable, PreconditionFailed
from ..report import Report, label
from ..structures import MonoidalData, family_is_identity
from ..terms import env_of
from .equivalence import Equivalence, Operation, _Transport, check_equivalence, transfer_structure


@dataclass(frozen=True)
class WordMor:
    dom: tuple
    cod: tuple
    base: Any

    def label(self) -> str:
        return f"{_word(self.dom)}->{_word(self.cod)}:{label(self.base)}"


def _word(w: tuple) -> str:
    return "[" + " ".join(label(x) for x in w) + "]"


class WordCategory(Category):
    """Words over the objects of a Pic structure, with morphisms from the base."""

    bounded = True

    def __init__(self, P: MonoidalData, depth: int = 3, name: str | None = None):
        self.P = P
        self.base = P.category
        self.depth = depth
        self.name = name or f"W({self.base.name})"
        letters = list(self.base.objects)
        self.objects = tuple(w for n in range(depth + 1) for w in itertools.product(letters, repeat=n))
        self._eval: dict = {(): P.unit}
        self._breve: dict = {}
        env = P.env()
        self._aplus, self._g, self._d = env.family("aplus"), env.family("g"), env.family("d")

    def eval(self, w: tuple):
        try:
            return self._eval[w]
        except KeyError:
            v = self._eval[w] = self.P.tensor.obj(self.eval(w[:-1]), w[-1]) if len(w) > 1 else w[0]
            return v

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, w):
        return WordMor(w, w, self.base.identity(self.eval(w)))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise NotComposable(g, f, f"cod {_word(f.cod)} != dom {_word(g.dom)}")
        return WordMor(f.dom, g.cod, self.base.compose(g.base, f.base))

    def inverse(self, f):
        try:
            return WordMor(f.cod, f.dom, self.base.inverse(f.base))
        except NoInverse:
            raise NoInverse(f) from None

    def hom(self, u, w):
        return [WordMor(u, w, m) for m in self.base.hom(self.eval(u), self.eval(w))]

    def breve(self, u: tuple, w: tuple):
        """Canonical eval(uw) -> eval(u) + eval(w) in the base."""
        key = (u, w)
        if key in self._breve:
            return self._breve[key]
        B, plus = self.base, self.P.tensor
        if not w:
            m = B.inverse(self._d(self.eval(u)))
        elif not u:
            m = B.inverse(self._g(self.eval(w)))
        elif len(w) == 1:
            m = B.identity(self.eval(u + w))
        else:
            w0, y = w[:-1], w[-1]
            step = plus.mor(self.breve(u, w0), B.identity(y))
            m = B.compose(B.inverse(self._aplus(self.eval(u), self.eval(w0), y)), step)
        self._breve[key] = m
        return m

    def concat(self) -> Bifunctor:
        B, plus = self.base, self.P.tensor

        def mor(f, g):
            inner = plus.mor(f.base, g.base)
            m = B.compose(B.inverse(self.breve(f.cod, g.cod)), B.compose(inner, self.breve(f.dom, g.dom)))
            return WordMor(f.dom + g.dom, f.cod + g.cod, m)

        return Bifunctor(lambda u, w: u + w, mor, "oplus")


@dataclass
class Strictification:
    structure: Any  # AnnCat or MonoidalData on the word category
    equivalence: Equivalence  # F = eval (with monoidal data), F' = [-]
    category: WordCategory

    @property
    def F(self) -> FunctorData:
        return self.equivalence.F

    @property
    def Fprime(self) -> FunctorData:
        return self.equivalence.Fprime

    def __iter__(self):
        return iter((self.structure, self.equivalence))


def word_equivalence(W: WordCategory, target) -> Equivalence:
    B = W.base
    F = FunctorData(W, target, W.eval, lambda f: f.base, name="eval")
    Fp = FunctorData(target, W, lambda x: (x,), lambda f: WordMor((B.dom(f),), (B.cod(f),), f), name="[-]")
    alpha = NatFamily("alpha", ("X",), "X", "X", lambda w: WordMor((W.eval(w),), w, B.identity(W.eval(w))))
    alpha_p = NatFamily("alpha'", ("X",), "X", "X", lambda x: B.identity(x))
    return Equivalence(F, Fp, alpha, alpha_p)


def strictify_plus(A, depth: int = 3, check: bool = True) -> Strictification:
    """Word category with concatenation as sum, and its equivalence to A.

    ``A`` is an AnnCat or a Pic structure.  The sum keeps the canonical
    compatibility ``breve``; the other constraints are transported.
    """
    P = A.plus if isinstance(A, AnnCat) else A
    if P.side != "plus":
        raise PreconditionFailed("strictify_plus needs the additive structure")
    W = WordCategory(P, depth)
    E = word_equivalence(W, A)
    B = W.base
    plus = Operation(W.concat(), (),
                     NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))", W.breve),
                     B.identity(P.unit))
    if check:
        rep = check_equivalence(E)
        if not rep.passed:
            raise PreconditionFailed("the word equivalence does not satisfy (4.1)", rep)
    if isinstance(A, AnnCat):
        structure, F = transfer_structure(W, A, E, plus=plus, check=False, name=W.name)
    else:
        tr = _Transport(E, plus, None)
        fams = {n: tr.family(n) for n in ("aplus", "g", "d", "c")}
        structure = MonoidalData(W, plus.tensor, (), fams["aplus"], fams["g"], fams["d"], fams["c"],
                                 side="plus", name=W.name)
        F = E.F.replace(source=structure, breve=plus.compat, unit_plus=plus.unit_compat)
    Fp = _inclusion_data(E.Fprime, W, A, structure)
    return Strictification(structure, Equivalence(F, Fp, E.alpha, E.alphaPrime), W)


def _inclusion_data(Fp: FunctorData, W: WordCategory, A, structure) -> FunctorData:
    """[-] with its compatibility morphisms, all carried by identities of the base."""
    B = W.base
    env = env_of(A)
    kw = {}
    kw["breve"] = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))",
                            lambda x, y: WordMor((env.plus.obj(x, y),), (x, y), B.identity(env.plus.obj(x, y))))
    kw["unit_plus"] = WordMor((env.zero,), (), B.identity(env.zero))
    if env.times is not None:
        kw["tilde"] = NatFamily("Ftilde", ("X", "Y"), "F(otimes(X,Y))", "otimes(F(X),F(Y))",
                                lambda x, y: W.identity((env.times.obj(x, y),)))
        kw["unit_times"] = W.identity((env.one,))
    return Fp.replace(target=structure, **kw)


def strictness_report(S: Strictification, objects=None) -> Report:
    """aplus', g', d' against identities on the probe words, and (4.1) on probes."""
    W = S.category
    objs = list(W.objects if objects is None else objects)
    env = env_of(S.structure)
    rep = Report("strictify")
    for name in ("aplus", "g", "d"):
        d = family_is_identity(W, env.family(name), objs)
        d.diagram, d.cite = f"{name}'=id", "Prop 4.4"
        rep.add(d)
    rep.extend(check_equivalence(S.equivalence, objs))
    cww = family_is_identity(W, _diagonal(env.family("c")), objs)
    rep.notes.append(f"c'[w,w] = id on {cww.instances - len(cww.failures)} of {cww.instances} probe words")
    rep.data["c_diagonal_identity"] = cww.passed
    return rep


def _diagonal(c: NatFamily) -> NatFamily:
    return NatFamily("c_diag", ("X",), "oplus(X,X)", "oplus(X,X)", lambda x: c(x, x))


def base_strictness(A, objects=None) -> Report:
    """Whether aplus, g, d of A itself are identities (the base usually fails)."""
    P = A.plus if isinstance(A, AnnCat) else A
    C = category_of(P)
    objs = list(C.objects if objects is None else objects)
    env = env_of(P)
    rep = Report("base strictness")
    for name in ("aplus", "g", "d"):
        d = family_is_identity(C, env.family(name), objs)
        d.diagram = f"{name}=id"
        rep.add(d)
    return rep


"""Equivalences of categories and transport of Ann-structure along them.

Conventions: F : A -> A', F' : A' -> A, alpha : F'F -> id_A and
alpha' : FF' -> id_A'.  Since F is full and faithful, a morphism
m : FX -> FY of A' has the unique preimage alpha_Y . F'(m) . alpha_X^-1.

Every constraint phi of A is defined by asking F to carry it to phi' up to
the compatibility morphisms: F(phi) = compat(target)^-1 . phi'(F args) .
compat(source), where compat(shape) : F(shape(X..)) -> shape'(FX..) is
assembled from F-breve, F-tilde and the unit morphisms.  For a this is
(2.3), for l and r (2.4), (2.4'), for c (2.6) and for L, R (2.15), (2.15').
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from ..ann import FAMILY_NAMES, SHAPES, AnnCat, make_family
from ..core import Bifunctor, Category, FunctorData, NatFamily, category_of
from ..errors import InvalidMultiplicity, PreconditionFailed
from ..report import DiagramReport, Failure, Report
from ..structures import MonoidalData
from ..terms import Const, ObjOp, Var, env_of, parse_obj


@dataclass
class Equivalence:
    F: FunctorData
    Fprime: FunctorData
    alpha: NatFamily
    alphaPrime: NatFamily

    def preimage(self, x, y, m):
        """The morphism x -> y that F sends to m : Fx -> Fy."""
        C = category_of(self.F.source)
        return C.compose(self.alpha(y), C.compose(self.Fprime.mor(m), C.inverse(self.alpha(x))))


def identity_equivalence(struct) -> Equivalence:
    C = category_of(struct)
    ident = FunctorData(struct, struct, lambda x: x, lambda f: f, name="Id")
    fam = NatFamily("alpha", ("X",), "X", "X", lambda x: C.identity(x))
    famp = NatFamily("alpha'", ("X",), "X", "X", lambda x: C.identity(x))
    return Equivalence(ident, ident.replace(name="Id'"), fam, famp)


def check_equivalence(E: Equivalence, objects: Sequence | None = None,
                      objects_prime: Sequence | None = None) -> Report:
    """Condition (4.1) on both sides, plus the endpoints of alpha and alpha'."""
    A, Ap = category_of(E.F.source), category_of(E.F.target)
    objs = list(A.objects if objects is None else objects)
    objs_p = list(Ap.objects if objects_prime is None else objects_prime)
    rep = Report("equivalence")
    bounded = A.bounded or Ap.bounded or objects is not None or objects_prime is not None

    def scan(key, cite, xs, check):
        d = rep.add(DiagramReport(key, cite, ("X",), bounded=bounded))
        for i, x in enumerate(xs):
            d.instances += 1
            try:
                lhs, rhs = check(x)
            except Exception as exc:  # noqa: BLE001 - violations are data
                d.failures.append(Failure((x,), kind="ill-typed", detail=f"{type(exc).__name__}: {exc}",
                                          order=(i,)))
                continue
            if lhs != rhs:
                d.failures.append(Failure((x,), lhs, rhs, "mismatch", "", (i,)))

    def ends_alpha(x):
        m = E.alpha(x)
        return (A.dom(m), A.cod(m)), (E.Fprime.obj(E.F.obj(x)), x)

    def ends_alpha_p(x):
        m = E.alphaPrime(x)
        return (Ap.dom(m), Ap.cod(m)), (E.F.obj(E.Fprime.obj(x)), x)

    scan("alpha:endpoints", "F'F -> id", objs, ends_alpha)
    scan("alpha':endpoints", "FF' -> id", objs_p, ends_alpha_p)
    scan("4.1", "(4.1)", objs, lambda x: (E.F.mor(E.alpha(x)), E.alphaPrime(E.F.obj(x))))
    scan("4.1'", "(4.1)", objs_p, lambda x: (E.Fprime.mor(E.alphaPrime(x)), E.alpha(E.Fprime.obj(x))))
    return rep


# ---------------------------------------------------------------------------
# inflation: a non-skeletal copy


def inflate(A, k: int) -> tuple[Category, Equivalence]:
    """k isomorphic copies (x, i) of every object, with the collapse equivalence onto A."""
    from ..core import FinCategory

    if k < 1:
        raise InvalidMultiplicity(f"multiplicity must be at least 1, got {k}")
    C = category_of(A)
    objs = [(x, i) for x in C.objects for i in range(k)]
    mors, ident, comp = {}, {}, {}
    for x in C.objects:
        for y in C.objects:
            for f in C.hom(x, y):
                for i in range(k):
                    for j in range(k):
                        mors[(f, i, j)] = ((x, i), (y, j))
    for (x, i) in objs:
        ident[(x, i)] = (C.identity(x), i, i)
    for (f, i, j), (src, tgt) in mors.items():
        y = tgt[0]
        for z in C.objects:
            for g in C.hom(y, z):
                for l in range(k):
                    comp[((g, j, l), (f, i, j))] = (C.compose(g, f), i, l)
    name = f"{C.name}x{k}"
    Ck = FinCategory(objs, mors, ident, comp, name)
    F = FunctorData(Ck, A, lambda x: x[0], lambda f: f[0], name="collapse")
    Fp = FunctorData(A, Ck, lambda x: (x, 0), lambda f: (f, 0, 0), name="copy0")
    alpha = NatFamily("alpha", ("X",), "X", "X", lambda x: (C.identity(x[0]), 0, x[1]))
    alpha_p = NatFamily("alpha'", ("X",), "X", "X", lambda x: C.identity(x))
    return Ck, Equivalence(F, Fp, alpha, alpha_p)


# ---------------------------------------------------------------------------
# transport


@dataclass
class Operation:
    """An operation on the source category together with F's compatibility data for it."""

    tensor: Bifunctor
    unit: Any
    compat: NatFamily  # F(X op Y) -> FX op' FY
    unit_compat: Any  # F(unit) -> unit'


def transferred_operation(E: Equivalence, side: str) -> Operation:
    """X op Y = F'(FX op' FY) with compatibility alpha'_{FX op' FY}."""
    tenv = env_of(E.F.target)
    op = tenv.plus if side == "plus" else tenv.times
    unit_p = tenv.zero if side == "plus" else tenv.one
    F, Fp = E.F, E.Fprime
    tensor = Bifunctor(lambda x, y: Fp.obj(op.obj(F.obj(x), F.obj(y))),
                       lambda f, g: Fp.mor(op.mor(F.mor(f), F.mor(g))),
                       "oplus" if side == "plus" else "otimes")
    name = "Fbreve" if side == "plus" else "Ftilde"
    sym = "oplus" if side == "plus" else "otimes"
    compat = NatFamily(name, ("X", "Y"), f"F({sym}(X,Y))", f"{sym}(F(X),F(Y))",
                       lambda x, y: E.alphaPrime(op.obj(F.obj(x), F.obj(y))))
    return Operation(tensor, Fp.obj(unit_p), compat, E.alphaPrime(unit_p))


class _Transport:
    def __init__(self, E: Equivalence, plus: Operation, times: Operation):
        self.E = E
        self.tenv = env_of(E.F.target)
        self.plus, self.times = plus, times
        self.S = category_of(E.F.source)
        self.T = self.tenv.category

    def compat(self, node, args, index):
        """(object of the source, morphism F(object) -> shape evaluated at F args)."""
        T, F = self.T, self.E.F
        if isinstance(node, Var):
            x = args[index[node.name]]
            return x, T.identity(F.obj(x))
        if isinstance(node, Const):
            op = self.plus if node.value == "0" else self.times
            return op.unit, op.unit_compat
        if isinstance(node, ObjOp):
            op = self.plus if node.op == "oplus" else self.times
            bf = self.tenv.bifunctor(node.op)
            xl, ml = self.compat(node.left, args, index)
            xr, mr = self.compat(node.right, args, index)
            return op.tensor.obj(xl, xr), T.compose(bf.mor(ml, mr), op.compat(xl, xr))
        raise TypeError(f"unexpected shape node {node!r}")

    def family(self, name: str) -> NatFamily:
        variables, source, target = SHAPES[name]
        src, tgt = parse_obj(source), parse_obj(target)
        index = {v: i for i, v in enumerate(variables)}
        phi = self.tenv.family(name)
        T, E = self.T, self.E

        def component(*args):
            x, ms = self.compat(src, args, index)
            y, mt = self.compat(tgt, args, index)
            m = T.compose(T.inverse(mt), T.compose(phi(*(E.F.obj(a) for a in args)), ms))
            return E.preimage(x, y, m)

        return make_family(name, component)


def transfer_structure(A, Aprime: AnnCat, E: Equivalence, *, plus: Operation | None = None,
                       check: bool = True, objects=None, name: str | None = None) -> tuple[AnnCat, FunctorData]:
    """Ann-structure on the source of E.F induced from ``Aprime``; returns it and F.

    By default both operations are transported (0 = F'0', 1 = F'1').  When
    ``plus`` is given, that operation and its compatibility data are kept
    and only the rest is induced.
    """
    if check:
        rep = check_equivalence(E, objects)
        if not rep.passed:
            raise PreconditionFailed("the equivalence does not satisfy (4.1)", rep)
    C = category_of(A)
    plus = plus or transferred_operation(E, "plus")
    times = transferred_operation(E, "times")
    tr = _Transport(E, plus, times)
    fams = {n: tr.family(n) for n in FAMILY_NAMES}
    psum = MonoidalData(C, plus.tensor, plus.unit, fams["aplus"], fams["g"], fams["d"], fams["c"], side="plus")
    prod = MonoidalData(C, times.tensor, times.unit, fams["a"], fams["l"], fams["r"], side="times")
    out = AnnCat(C, psum, prod, fams["L"], fams["R"], name or f"{C.name}*")
    F = E.F.replace(source=out, breve=plus.compat, tilde=times.compat, unit_plus=plus.unit_compat,
                    unit_times=times.unit_compat)
    return out, F

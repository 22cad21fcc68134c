"""Monoidal, symmetric and Pic structure bundles and their checkers.

Also: the functor-compatibility checks, composition and sums of monoidal
functors, and the interchange family v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from . import catalog
from .catalog import SIDES, V_TERM
from .core import Bifunctor, Category, FunctorData, NatFamily, category_of
from .errors import AnnCatError
from .report import DiagramReport, Failure, Report, label
from .terms import Env, check_equation, compile_term, env_of, parse_term

PLUS_NAMES = ("aplus", "g", "d")
TIMES_NAMES = ("a", "l", "r")


@dataclass(eq=False)
class MonoidalData:
    """One monoidal operation on a category, optionally symmetric.

    ``side`` says which names the structure answers to in terms: "plus"
    registers oplus/0/aplus/g/d/c, "times" registers otimes/1/a/l/r/c.
    """

    category: Category
    tensor: Bifunctor
    unit: Any
    assoc: NatFamily
    left: NatFamily
    right: NatFamily
    comm: NatFamily | None = None
    side: str = "times"
    name: str = ""
    _env: Env | None = field(default=None, repr=False)

    @property
    def objects(self):
        return self.category.objects

    def names(self) -> tuple[str, str, str]:
        return PLUS_NAMES if self.side == "plus" else TIMES_NAMES

    def families(self) -> dict[str, NatFamily]:
        a, l, r = self.names()
        out = {a: self.assoc, l: self.left, r: self.right}
        if self.comm is not None:
            out["c"] = self.comm
        return out

    def env(self) -> Env:
        if self._env is None:
            if self.side == "plus":
                env = Env(self.category, plus=self.tensor, zero=self.unit)
            else:
                env = Env(self.category, times=self.tensor, one=self.unit)
            for name, fam in self.families().items():
                env.register(fam, name)
            if self.side == "plus" and self.comm is not None:
                env.register(build_v(env), "v")
            self._env = env
        return self._env

    def replace(self, **changes) -> "MonoidalData":
        kw = dict(category=self.category, tensor=self.tensor, unit=self.unit, assoc=self.assoc,
                  left=self.left, right=self.right, comm=self.comm, side=self.side, name=self.name)
        kw.update(changes)
        return MonoidalData(**kw)


def PicData(category, tensor, zero, aplus, g, d, c, name: str = "") -> MonoidalData:
    """A symmetric structure read with the additive names."""
    return MonoidalData(category, tensor, zero, aplus, g, d, c, side="plus", name=name)


def _domain(struct, objects):
    return list(category_of(struct).objects if objects is None else objects)


def _bounded(struct, objects):
    return category_of(struct).bounded or objects is not None


def run_entries(env, keys: Sequence[str], title: str, objects=None, bounded: bool = False,
                fail_fast: bool = False) -> Report:
    rep = Report(title)
    for key in keys:
        d = check_equation(env, catalog.equation(key), objects, bounded=bounded or None, fail_fast=fail_fast)
        if bounded:
            d.bounded = True
        rep.add(d)
        if fail_fast and not d.passed:
            break
    return rep


def check_au(M: MonoidalData, objects=None, fail_fast: bool = False) -> Report:
    """Pentagon and triangle of one monoidal operation."""
    keys = [catalog.side_key("2.1", M.side), catalog.side_key("2.2", M.side)]
    return run_entries(M.env(), keys, f"AU{SIDES[M.side]['tag']}", objects, _bounded(M, objects), fail_fast)


def check_acu(M: MonoidalData, objects=None, fail_fast: bool = False) -> Report:
    """Involution c.c = id and the hexagon."""
    if M.comm is None:
        rep = Report(f"ACU{SIDES[M.side]['tag']}")
        d = rep.add(DiagramReport("c", "commutativity", ()))
        d.failures.append(Failure((), kind="violation", detail="no commutativity constraint"))
        return rep
    keys = [catalog.side_key("cc=id", M.side), catalog.side_key("2.5", M.side)]
    return run_entries(M.env(), keys, f"ACU{SIDES[M.side]['tag']}", objects, _bounded(M, objects), fail_fast)


def find_inverse(M: MonoidalData, x, objects=None):
    """First object y (in enumeration order) with a morphism x*y -> unit, or None."""
    cat = M.category
    for y in _domain(M, objects):
        if cat.hom(M.tensor.obj(x, y), M.unit):
            return y
    return None


def check_invertible(M: MonoidalData, objects=None) -> Report:
    """Every object has an inverse for the operation; every morphism is iso."""
    cat = M.category
    objs = _domain(M, objects)
    bounded = _bounded(M, objects)
    op = SIDES[M.side]["op"]
    rep = Report("Pic" if M.side == "plus" else "invertible")
    inv = rep.add(DiagramReport("objects-invertible", f"X {op} X* ~ {SIDES[M.side]['unit']}", ("X",),
                                bounded=bounded))
    inverses = {}
    for i, x in enumerate(objs):
        inv.instances += 1
        y = find_inverse(M, x, objs)
        if y is None:
            inv.failures.append(Failure((x,), kind="violation", detail="no inverse object found", order=(i,)))
        else:
            inverses[x] = y
    iso = rep.add(DiagramReport("morphisms-iso", "every morphism is iso", ("f",), bounded=bounded))
    mors = [f for x in objs for y in objs for f in cat.hom(x, y)]
    for i, f in enumerate(mors):
        iso.instances += 1
        if not cat.is_iso(f):
            iso.failures.append(Failure((f,), kind="violation", detail="not invertible", order=(i,)))
    rep.data["inverses"] = inverses
    if inverses:
        shown = ", ".join(f"{label(x)}->{label(y)}" for x, y in inverses.items())
        rep.notes.append(f"inverses: {shown}")
    return rep


def check_pic(M: MonoidalData, objects=None, full: bool = True, fail_fast: bool = False) -> Report:
    """Pic-category check; ``full`` also runs the AU and ACU diagrams."""
    rep = Report("Pic")
    if full:
        rep.extend(check_au(M, objects, fail_fast))
        rep.extend(check_acu(M, objects, fail_fast))
    rep.extend(check_invertible(M, objects))
    return rep


# ---------------------------------------------------------------------------
# functors


def _nullary(name: str, value, source: str, target: str) -> NatFamily:
    return NatFamily(name, (), source, target, lambda: value)


def functor_families(F: FunctorData, prefix: str = "F") -> dict[str, NatFamily]:
    out = {}
    if F.breve is not None:
        out[f"{prefix}breve"] = F.breve
    if F.tilde is not None:
        out[f"{prefix}tilde"] = F.tilde
    if F.unit_plus is not None:
        out[f"{prefix}zero"] = _nullary(f"{prefix}zero", F.unit_plus, f"{prefix}(0)", "0")
    if F.unit_times is not None:
        out[f"{prefix}unit"] = _nullary(f"{prefix}unit", F.unit_times, f"{prefix}(1)", "1")
    return out


def functor_env(F: FunctorData, G: FunctorData | None = None, alpha: NatFamily | None = None) -> Env:
    """Target environment with F (and G, alpha) available to terms."""
    senv, tenv = env_of(F.source), env_of(F.target)
    fams = functor_families(F, "F")
    functors = {"F": (F, senv)}
    if G is not None:
        fams.update(functor_families(G, "G"))
        functors["G"] = (G, env_of(G.source))
    if alpha is not None:
        fams["alpha"] = alpha
    return tenv.extend(fams, functors, arg_env=senv)


def _functor_report(F: FunctorData, keys, title, objects, fail_fast=False, G=None, alpha=None) -> Report:
    env = functor_env(F, G, alpha)
    src = category_of(F.source)
    objs = _domain(F.source, objects)
    bounded = src.bounded or objects is not None or category_of(F.target).bounded
    rep = Report(title)
    for key in keys:
        d = check_equation(env, catalog.equation(key), objs, bounded=bounded, fail_fast=fail_fast)
        rep.add(d)
        if fail_fast and not d.passed:
            break
    return rep


def check_au_functor(F: FunctorData, side: str = "times", objects=None, fail_fast: bool = False) -> Report:
    """Diagrams (2.3), (2.4), (2.4') for the given operation."""
    unit = F.unit_times if side == "times" else F.unit_plus
    keys = [catalog.side_key("2.3", side)]
    if unit is not None:
        keys += [catalog.side_key("2.4", side), catalog.side_key("2.4'", side)]
    return _functor_report(F, keys, f"AU-functor {F.name}", objects, fail_fast)


def check_ac_functor(F: FunctorData, side: str = "plus", objects=None, fail_fast: bool = False) -> Report:
    """Diagrams (2.3) and (2.6) for the given operation."""
    keys = [catalog.side_key("2.3", side), catalog.side_key("2.6", side)]
    return _functor_report(F, keys, f"AC-functor {F.name}", objects, fail_fast)


def check_monoidal_morphism(alpha: NatFamily, F: FunctorData, G: FunctorData, side: str = "plus",
                            objects=None, naturality: bool = False) -> Report:
    """Diagram (2.9) for alpha : F -> G (components FX -> GX)."""
    rep = _functor_report(F, [catalog.side_key("2.9", side)], f"morphism {alpha.name}", objects,
                          G=G, alpha=alpha)
    if naturality:
        from .core import validate_nat_family

        env = functor_env(F, G, alpha)
        fam = NatFamily("alpha", ("X",), "F(X)", "G(X)", alpha, alpha.iso)
        nat = validate_nat_family(category_of(F.source), fam, env, objects=objects)
        rep.extend(nat)
    return rep


def compose_monoidal_functors(G: FunctorData, F: FunctorData, name: str | None = None) -> FunctorData:
    """G after F, with compatibility data by (2.7) and unit morphisms by (2.8)."""
    T = category_of(G.target)
    Gobj, Gmor, Fobj, Fmor = G.obj, G.mor, F.obj, F.mor
    kw = {}
    if F.tilde is not None and G.tilde is not None:
        Ft, Gt = F.tilde, G.tilde
        kw["tilde"] = NatFamily("Ftilde", ("X", "Y"), "F(otimes(X,Y))", "otimes(F(X),F(Y))",
                                lambda x, y: T.compose(Gt(Fobj(x), Fobj(y)), Gmor(Ft(x, y))))
    if F.breve is not None and G.breve is not None:
        Fb, Gb = F.breve, G.breve
        kw["breve"] = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))",
                                lambda x, y: T.compose(Gb(Fobj(x), Fobj(y)), Gmor(Fb(x, y))))
    if F.unit_times is not None and G.unit_times is not None:
        kw["unit_times"] = T.compose(G.unit_times, Gmor(F.unit_times))
    if F.unit_plus is not None and G.unit_plus is not None:
        kw["unit_plus"] = T.compose(G.unit_plus, Gmor(F.unit_plus))
    return FunctorData(F.source, G.target, lambda x: Gobj(Fobj(x)), lambda f: Gmor(Fmor(f)),
                       name=name or f"{G.name}.{F.name}", **kw)


def build_v(P) -> NatFamily:
    """v[A,B,C,D] : (A+B)+(C+D) -> (A+C)+(B+D), the fixed aplus/c composite."""
    env = env_of(P)
    fn = compile_term(parse_term(V_TERM), env, {"A": 0, "B": 1, "C": 2, "D": 3})
    return NatFamily("v", ("A", "B", "C", "D"), "oplus(oplus(A,B),oplus(C,D))",
                     "oplus(oplus(A,C),oplus(B,D))", lambda *xs: fn(xs))


def sum_functors(F: FunctorData, G: FunctorData, v: NatFamily | None = None, name: str | None = None) -> FunctorData:
    """(F+G)X = FX + GX with breve v . (F-breve + G-breve), as in (2.14)."""
    tenv = env_of(F.target)
    T = tenv.category
    plus = tenv.plus
    if v is None:
        v = tenv.family("v")
    kw = {}
    if F.breve is not None and G.breve is not None:
        Fb, Gb = F.breve, G.breve

        def breve(x, y):
            fx, fy, gx, gy = F.obj(x), F.obj(y), G.obj(x), G.obj(y)
            return T.compose(v(fx, fy, gx, gy), plus.mor(Fb(x, y), Gb(x, y)))

        kw["breve"] = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))", breve)
    if F.unit_plus is not None and G.unit_plus is not None:
        g0 = tenv.family("g")(tenv.zero)
        kw["unit_plus"] = T.compose(g0, plus.mor(F.unit_plus, G.unit_plus))
    return FunctorData(F.source, F.target, lambda x: plus.obj(F.obj(x), G.obj(x)),
                       lambda f: plus.mor(F.mor(f), G.mor(f)), name=name or f"({F.name}+{G.name})", **kw)


def family_is_identity(cat: Category, fam: NatFamily, objects, arity: int | None = None) -> DiagramReport:
    """Report whether every component on ``objects`` is an identity morphism."""
    import itertools

    k = fam.arity if arity is None else arity
    d = DiagramReport(f"{fam.name}=id", "strict", fam.variables, bounded=cat.bounded)
    objs = list(objects)
    for order in itertools.product(range(len(objs)), repeat=k):
        args = tuple(objs[i] for i in order)
        d.instances += 1
        try:
            m = fam(*args)
            ok = cat.dom(m) == cat.cod(m) and m == cat.identity(cat.dom(m))
        except AnnCatError as exc:
            d.failures.append(Failure(args, kind="ill-typed", detail=str(exc), order=order))
            continue
        if not ok:
            d.failures.append(Failure(args, m, cat.identity(cat.dom(m)), "mismatch", "", order))
    return d

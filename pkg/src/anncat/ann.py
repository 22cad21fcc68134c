"""Ann-categories: the bundle, the axiom verifier and the zero-object theory."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import catalog
from .core import (Category, FunctorData, NatFamily, category_of, validate_bifunctor, validate_category,
                   validate_nat_family)
from .errors import MultipleSolutions, NoSolution
from .report import AxiomReport, DiagramReport, Failure, Report, label
from .structures import MonoidalData, build_v, check_au, check_pic, functor_env, run_entries
from .terms import Env, check_equation, compile_term

FAMILY_NAMES = ("aplus", "c", "g", "d", "a", "l", "r", "L", "R")

SHAPES = {
    "aplus": (("X", "Y", "Z"), "oplus(X,oplus(Y,Z))", "oplus(oplus(X,Y),Z)"),
    "c": (("X", "Y"), "oplus(X,Y)", "oplus(Y,X)"),
    "g": (("X",), "oplus(0,X)", "X"),
    "d": (("X",), "oplus(X,0)", "X"),
    "a": (("X", "Y", "Z"), "otimes(X,otimes(Y,Z))", "otimes(otimes(X,Y),Z)"),
    "l": (("X",), "otimes(1,X)", "X"),
    "r": (("X",), "otimes(X,1)", "X"),
    "L": (("A", "X", "Y"), "otimes(A,oplus(X,Y))", "oplus(otimes(A,X),otimes(A,Y))"),
    "R": (("X", "Y", "A"), "otimes(oplus(X,Y),A)", "oplus(otimes(X,A),otimes(Y,A))"),
    "v": (("A", "B", "C", "D"), "oplus(oplus(A,B),oplus(C,D))", "oplus(oplus(A,C),oplus(B,D))"),
    "Lhat": (("A",), "otimes(A,0)", "0"),
    "Rhat": (("A",), "otimes(0,A)", "0"),
}


def make_family(name: str, component) -> NatFamily:
    """A NatFamily with the standard shape of ``name``."""
    variables, source, target = SHAPES[name]
    return NatFamily(name, variables, source, target, component)


@dataclass(eq=False)
class AnnCat:
    """A category with Pic structure ``plus``, monoidal ``times`` and distributivity L, R."""

    category: Category
    plus: MonoidalData
    times: MonoidalData
    ldist: NatFamily
    rdist: NatFamily
    name: str = "A"
    _env: Env | None = field(default=None, repr=False)

    @property
    def objects(self):
        return self.category.objects

    @property
    def zero(self):
        return self.plus.unit

    @property
    def one(self):
        return self.times.unit

    def families(self) -> dict[str, NatFamily]:
        out = dict(self.plus.families())
        out.update(self.times.families())
        out["L"], out["R"] = self.ldist, self.rdist
        return {k: out[k] for k in FAMILY_NAMES if k in out}

    def family(self, name: str) -> NatFamily:
        return self.env().family(name)

    def env(self) -> Env:
        if self._env is None:
            env = Env(self.category, plus=self.plus.tensor, times=self.times.tensor,
                      zero=self.plus.unit, one=self.times.unit)
            for name, fam in self.families().items():
                env.register(fam, name)
            env.register(build_v(env), "v")
            self._env = env
        return self._env

    def with_family(self, name: str, fam: NatFamily) -> "AnnCat":
        """A copy with one constraint family replaced."""
        if name in ("aplus", "g", "d", "c"):
            key = {"aplus": "assoc", "g": "left", "d": "right", "c": "comm"}[name]
            return AnnCat(self.category, self.plus.replace(**{key: fam}), self.times, self.ldist, self.rdist,
                          self.name)
        if name in ("a", "l", "r"):
            key = {"a": "assoc", "l": "left", "r": "right"}[name]
            return AnnCat(self.category, self.plus, self.times.replace(**{key: fam}), self.ldist, self.rdist,
                          self.name)
        if name == "L":
            return AnnCat(self.category, self.plus, self.times, fam, self.rdist, self.name)
        if name == "R":
            return AnnCat(self.category, self.plus, self.times, self.ldist, fam, self.name)
        raise KeyError(name)


# ---------------------------------------------------------------------------
# Ann-1 functors


def left_mult(A: AnnCat, a) -> FunctorData:
    """L^a : X -> a*X with breve L[a,-,-]."""
    cat, times, L = A.category, A.times.tensor, A.ldist
    ida = cat.identity(a)
    breve = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))", lambda x, y: L(a, x, y))
    return FunctorData(A, A, lambda x: times.obj(a, x), lambda f: times.mor(ida, f), breve=breve,
                       name=f"L^{label(a)}")


def right_mult(A: AnnCat, a) -> FunctorData:
    """R^a : X -> X*a with breve R[-,-,a]."""
    cat, times, R = A.category, A.times.tensor, A.rdist
    ida = cat.identity(a)
    breve = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))", lambda x, y: R(x, y, a))
    return FunctorData(A, A, lambda x: times.obj(x, a), lambda f: times.mor(f, ida), breve=breve,
                       name=f"R^{label(a)}")


# ---------------------------------------------------------------------------
# verification


def check_structure(A: AnnCat, objects=None, naturality: bool = True) -> Report:
    """Category, bifunctor and family validity (endpoints, naturality, isos)."""
    cat = A.category
    rep = Report("structure")
    if objects is None:
        rep.extend(validate_category(cat))
        rep.extend(validate_bifunctor(cat, A.plus.tensor))
        rep.extend(validate_bifunctor(cat, A.times.tensor))
    env = A.env()
    for name, fam in A.families().items():
        rep.extend(validate_nat_family(cat, fam.renamed(name) if fam.name != name else fam, env,
                                       objects=objects, naturality=naturality))
    return rep


SECTIONS = {
    "Ann-1/L^A": ("Ann-1/L:2.3+", "Ann-1/L:2.6+"),
    "Ann-1/R^A": ("Ann-1/R:2.3+", "Ann-1/R:2.6+"),
    "2.10": ("2.10",),
    "2.10'": ("2.10'",),
    "2.11": ("2.11",),
    "2.12": ("2.12",),
    "2.13": ("2.13",),
    "2.13'": ("2.13'",),
}

AXIOM_GROUPS = {
    "pic": ("Pic",),
    "au": ("AU",),
    "ann1": ("Ann-1/L^A", "Ann-1/R^A"),
    "ann2": ("2.10", "2.10'", "2.11", "2.12"),
    "ann3": ("2.13", "2.13'"),
}


def verify_ann(A: AnnCat, objects=None, *, sections=None, structural: bool = True,
               fail_fast: bool = False) -> AxiomReport:
    """Run every axiom diagram over all bindings of objects (or over ``objects``).

    Sections: "structure", "Pic", "AU", then Ann-1, Ann-2 and Ann-3 keyed by
    diagram.  ``sections`` restricts the run; ``fail_fast`` stops at the
    first failing section (used by searches).
    """
    cat = A.category
    bounded = cat.bounded or objects is not None
    wanted = None if sections is None else set(sections)
    out = AxiomReport()

    def want(key):
        return wanted is None or key in wanted

    def done():
        return fail_fast and not out.passed

    if structural and want("structure"):
        out.sections["structure"] = check_structure(A, objects)
    if want("Pic") and not done():
        rep = check_pic(A.plus, objects, fail_fast=fail_fast)
        rep.title = "Pic"
        out.sections["Pic"] = rep
    if want("AU") and not done():
        rep = check_au(A.times, objects, fail_fast=fail_fast)
        rep.title = "AU"
        out.sections["AU"] = rep
    env = A.env()
    for key, entries in SECTIONS.items():
        if not want(key) or done():
            continue
        out.sections[key] = run_entries(env, entries, key, objects, bounded, fail_fast)
    return out


def check_ann_functor(F: FunctorData, objects=None) -> Report:
    """Diagrams (2.15) and (2.15') for F with breve and tilde."""
    env = functor_env(F)
    src = category_of(F.source)
    objs = list(src.objects if objects is None else objects)
    bounded = src.bounded or objects is not None or category_of(F.target).bounded
    rep = Report(f"Ann-functor {F.name}")
    for key in ("2.15", "2.15'"):
        rep.add(check_equation(env, catalog.equation(key), objs, bounded=bounded))
    return rep


# ---------------------------------------------------------------------------
# zero isomorphisms


class _Cell:
    """A family returning one mutable value, used while scanning candidates."""

    def __init__(self):
        self.value = None

    def __call__(self, *args):
        return self.value


@dataclass
class ZeroIsoPair:
    Lhat: NatFamily
    Rhat: NatFamily
    candidates: dict = field(default_factory=dict)  # (name, A) -> solutions found by the scan

    def env(self, A: AnnCat) -> Env:
        return A.env().extend({"Lhat": self.Lhat, "Rhat": self.Rhat})


def _solver(A: AnnCat, name: str, entry: catalog.Entry, source, probe):
    """A function solving ``entry`` for the ``name`` component at one object."""
    cat = A.category
    cell = _Cell()
    env = A.env().extend({name: cell})
    index = {v: i for i, v in enumerate(entry.variables)}
    eq = entry.equation()
    lhs, rhs = compile_term(eq.lhs, env, index), compile_term(eq.rhs, env, index)

    def solve(a):
        sols = []
        for f in cat.hom(source(a), A.zero):
            cell.value = f
            try:
                if lhs((a, probe)) == rhs((a, probe)):
                    sols.append(f)
            except Exception:  # noqa: BLE001 - a candidate that does not typecheck is not a solution
                continue
        if not sols:
            raise NoSolution(f"{name}[{label(a)}]: no morphism {label(source(a))} -> {label(A.zero)} "
                             f"satisfies {entry.cite} at X={label(probe)}")
        if len(sols) > 1:
            raise MultipleSolutions(f"{name}[{label(a)}]: {len(sols)} solutions "
                                    f"({', '.join(label(s) for s in sols)})")
        return sols[0]

    return solve


def derive_zero_isos(A: AnnCat, probe=None) -> ZeroIsoPair:
    """Solve for the zero isomorphisms at the probe X (default 1), uniquely.

    Every enumerated object is solved eagerly, so a missing or ambiguous
    solution raises here; other objects of a lazy category are solved on
    demand.
    """
    probe = A.one if probe is None else probe
    times = A.times.tensor
    lsolve = _solver(A, "Lhat", catalog.CATALOG["3.1a"], lambda a: times.obj(a, A.zero), probe)
    rsolve = _solver(A, "Rhat", catalog.CATALOG["3.1c"], lambda a: times.obj(A.zero, a), probe)
    Lhat, Rhat = make_family("Lhat", lsolve), make_family("Rhat", rsolve)
    counts = {}
    for a in A.objects:
        Lhat(a)
        Rhat(a)
        counts[("Lhat", a)] = counts[("Rhat", a)] = 1
    return ZeroIsoPair(Lhat, Rhat, counts)


def check_zero_properties(A: AnnCat, Z: ZeroIsoPair, objects=None) -> Report:
    """The four defining squares at every X, then the properties i-iii."""
    cat = A.category
    times = A.times.tensor
    env = Z.env(A)
    bounded = cat.bounded or objects is not None
    rep = run_entries(env, [e.key for e in catalog.ZERO], "zero", objects, bounded)
    objs = list(cat.objects if objects is None else objects)
    mors = [f for x in objs for y in objs for f in cat.hom(x, y)]
    id0 = cat.identity(A.zero)
    for key, side in (("3.2i-nat-L", "L"), ("3.2i-nat-R", "R")):
        d = rep.add(DiagramReport(key, "Prop 3.2 i", ("f",), bounded=bounded))
        fam = Z.Lhat if side == "L" else Z.Rhat
        for i, f in enumerate(mors):
            d.instances += 1
            try:
                fx = times.mor(f, id0) if side == "L" else times.mor(id0, f)
                lhs = cat.compose(fam(cat.cod(f)), fx)
                rhs = fam(cat.dom(f))
            except Exception as exc:  # noqa: BLE001
                d.failures.append(Failure((f,), kind="ill-typed", detail=str(exc), order=(i,)))
                continue
            if lhs != rhs:
                d.failures.append(Failure((f,), lhs, rhs, "mismatch", "", (i,)))
    rep.extend(run_entries(env, [e.key for e in catalog.ZERO_PROPS], "zero", objects, bounded))
    rep.title = "zero"
    return rep

"""Concrete Ann- and Pic-categories from finite algebraic data.

The skeletal model B(R, M): objects are the elements of a finite ring R,
Hom(x, x) = {(x, m) : m in M} for an R-bimodule M and no other morphisms.
Composition adds M-parts, (x,m)+(y,n) = (x+y, m+n) and
(x,m)*(y,n) = (xy, x.n + m.y).  Constraint components carry the M-values of
a cochain set (zero where absent).  D(R) is B(R, 0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .ann import FAMILY_NAMES, SHAPES, AnnCat, verify_ann
from .core import Bifunctor, FinCategory, NatFamily
from .errors import BoundExceeded, InvalidBimodule, InvalidRing
from .structures import MonoidalData
from .terms import Env, ObjShape, parallel

# ---------------------------------------------------------------------------
# algebraic input


@dataclass(frozen=True)
class AbelianGroup:
    elements: tuple
    add: Mapping  # (x, y) -> x + y
    zero: object
    name: str = "M"

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        els = tuple(range(n))
        return cls(els, {(x, y): (x + y) % n for x in els for y in els}, 0, f"Z/{n}")

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls((0,), {(0, 0): 0}, 0, "0")

    def plus(self, x, y):
        return self.add[(x, y)]

    def neg(self, x):
        return next(y for y in self.elements if self.add[(x, y)] == self.zero)

    def validate(self, err=InvalidBimodule):
        els = self.elements
        for x in els:
            if self.plus(self.zero, x) != x:
                raise err("group unit", (x,))
            if not any(self.plus(x, y) == self.zero for y in els):
                raise err("group inverse", (x,))
            for y in els:
                if self.plus(x, y) != self.plus(y, x):
                    raise err("group commutativity", (x, y))
                for z in els:
                    if self.plus(x, self.plus(y, z)) != self.plus(self.plus(x, y), z):
                        raise err("group associativity", (x, y, z))


@dataclass(frozen=True)
class RingTable:
    carrier: tuple
    add: Mapping
    mul: Mapping
    zero: object
    one: object
    name: str = "R"

    @property
    def group(self) -> AbelianGroup:
        return AbelianGroup(self.carrier, self.add, self.zero, self.name)

    def neg(self, x):
        return self.group.neg(x)

    def validate(self) -> "RingTable":
        """Raise InvalidRing naming the first violated axiom and its witness."""
        els = self.carrier
        for k, table in (("add", self.add), ("mul", self.mul)):
            for x in els:
                for y in els:
                    if (x, y) not in table or table[(x, y)] not in els:
                        raise InvalidRing(f"{k} closed", (x, y))
        self.group.validate(InvalidRing)
        m, a = self.mul, self.add
        for x in els:
            if m[(self.one, x)] != x or m[(x, self.one)] != x:
                raise InvalidRing("multiplicative unit", (x,))
        for x, y, z in itertools.product(els, repeat=3):
            if m[(x, m[(y, z)])] != m[(m[(x, y)], z)]:
                raise InvalidRing("multiplicative associativity", (x, y, z))
            if m[(x, a[(y, z)])] != a[(m[(x, y)], m[(x, z)])]:
                raise InvalidRing("left distributivity", (x, y, z))
            if m[(a[(x, y)], z)] != a[(m[(x, z)], m[(y, z)])]:
                raise InvalidRing("right distributivity", (x, y, z))
        return self


def zmod(n: int) -> RingTable:
    els = tuple(range(n))
    return RingTable(els, {(x, y): (x + y) % n for x in els for y in els},
                     {(x, y): (x * y) % n for x in els for y in els}, 0, 1 % n, f"Z/{n}")


def f2t() -> RingTable:
    """F2[t]/(t^2); element a + b t is encoded as a + 2b."""
    els = (0, 1, 2, 3)

    def split(x):
        return x & 1, x >> 1

    def mul(x, y):
        (a, b), (c, d) = split(x), split(y)
        return (a * c) % 2 + 2 * ((a * d + b * c) % 2)

    return RingTable(els, {(x, y): x ^ y for x in els for y in els},
                     {(x, y): mul(x, y) for x in els for y in els}, 0, 1, "F2[t]/(t^2)")


def broken_ring() -> RingTable:
    """{0,1} with xor for addition and OR for multiplication (unit 0): not distributive."""
    els = (0, 1)
    return RingTable(els, {(x, y): x ^ y for x in els for y in els},
                     {(x, y): x | y for x in els for y in els}, 0, 0, "broken")


@dataclass(frozen=True)
class BimoduleData:
    ring: RingTable
    module: AbelianGroup
    left: Mapping  # (r, m) -> r.m
    right: Mapping  # (m, r) -> m.r

    @classmethod
    def regular(cls, R: RingTable) -> "BimoduleData":
        """R as a bimodule over itself."""
        return cls(R, R.group, dict(R.mul), dict(R.mul))

    @classmethod
    def zero(cls, R: RingTable) -> "BimoduleData":
        M = AbelianGroup.trivial()
        return cls(R, M, {(r, 0): 0 for r in R.carrier}, {(0, r): 0 for r in R.carrier})

    def validate(self) -> "BimoduleData":
        R, M = self.ring, self.module
        R.validate()
        M.validate(InvalidBimodule)
        add, mul = R.add, R.mul
        for m in M.elements:
            if self.left[(R.one, m)] != m or self.right[(m, R.one)] != m:
                raise InvalidBimodule("unital action", (m,))
        for r, s in itertools.product(R.carrier, repeat=2):
            for m in M.elements:
                if self.left[(r, self.left[(s, m)])] != self.left[(mul[(r, s)], m)]:
                    raise InvalidBimodule("left associativity", (r, s, m))
                if self.right[(self.right[(m, r)], s)] != self.right[(m, mul[(r, s)])]:
                    raise InvalidBimodule("right associativity", (m, r, s))
                if self.right[(self.left[(r, m)], s)] != self.left[(r, self.right[(m, s)])]:
                    raise InvalidBimodule("bimodule compatibility", (r, m, s))
                if self.left[(add[(r, s)], m)] != M.plus(self.left[(r, m)], self.left[(s, m)]):
                    raise InvalidBimodule("left additivity in R", (r, s, m))
                if self.right[(m, add[(r, s)])] != M.plus(self.right[(m, r)], self.right[(m, s)]):
                    raise InvalidBimodule("right additivity in R", (m, r, s))
        for r in R.carrier:
            for m, n in itertools.product(M.elements, repeat=2):
                if self.left[(r, M.plus(m, n))] != M.plus(self.left[(r, m)], self.left[(r, n)]):
                    raise InvalidBimodule("left additivity in M", (r, m, n))
                if self.right[(M.plus(m, n), r)] != M.plus(self.right[(m, r)], self.right[(n, r)]):
                    raise InvalidBimodule("right additivity in M", (m, n, r))
        return self


@dataclass
class CochainSet:
    """M-values of constraint components, per family name and object tuple."""

    values: dict = field(default_factory=dict)  # name -> {tuple: m}

    def get(self, name: str, args: tuple, zero=0):
        return self.values.get(name, {}).get(args, zero)

    def nonzero(self, zero=0) -> dict:
        return {n: {k: v for k, v in t.items() if v != zero} for n, t in self.values.items()
                if any(v != zero for v in t.values())}

    def __eq__(self, other):
        return isinstance(other, CochainSet) and self.nonzero() == other.nonzero()

    def __hash__(self):
        return hash(tuple(sorted((n, tuple(sorted(t.items()))) for n, t in self.nonzero().items())))


# ---------------------------------------------------------------------------
# skeletal categories


def skeletal_category(objects: Sequence, M: AbelianGroup, name: str) -> FinCategory:
    mors = {(x, m): (x, x) for x in objects for m in M.elements}
    ident = {x: (x, M.zero) for x in objects}
    comp = {((x, m), (x, n)): (x, M.plus(m, n)) for x in objects for m in M.elements for n in M.elements}
    return FinCategory(objects, mors, ident, comp, name)


def _bifunctor(objects, M: AbelianGroup, obj: Callable, mor_m: Callable, name: str) -> Bifunctor:
    obj_table = {(x, y): obj(x, y) for x in objects for y in objects}
    mor_table = {}
    for x, y in itertools.product(objects, repeat=2):
        for m, n in itertools.product(M.elements, repeat=2):
            mor_table[((x, m), (y, n))] = (obj_table[(x, y)], mor_m(x, m, y, n))
    return Bifunctor.from_tables(obj_table, mor_table, name)


def _family(name: str, env: Env, objects, value: Callable[[tuple], object]) -> NatFamily:
    variables, source, target = SHAPES[name]
    shape = ObjShape(source, variables, env)
    table = {}
    for args in itertools.product(objects, repeat=len(variables)):
        table[args] = (shape.objects(args), value(args))
    return NatFamily(name, variables, source, target, table)


def from_bimodule(B: BimoduleData, T: CochainSet | None = None, *, check: bool = True,
                  name: str | None = None) -> AnnCat:
    """The candidate Ann-category B(R, M) twisted by T; validity is for verify_ann."""
    if check:
        B.validate()
    T = T or CochainSet()
    R, M = B.ring, B.module
    objs = R.carrier
    name = name or (f"D({R.name})" if len(M.elements) == 1 else f"B({R.name},{M.name})")
    cat = skeletal_category(objs, M, name)
    plus = _bifunctor(objs, M, lambda x, y: R.add[(x, y)], lambda x, m, y, n: M.plus(m, n), "oplus")
    times = _bifunctor(objs, M, lambda x, y: R.mul[(x, y)],
                       lambda x, m, y, n: M.plus(B.left[(x, n)], B.right[(m, y)]), "otimes")
    env = Env(cat, plus=plus, times=times, zero=R.zero, one=R.one)
    fams = {n: _family(n, env, objs, lambda args, n=n: T.get(n, args, M.zero)) for n in FAMILY_NAMES}
    psum = MonoidalData(cat, plus, R.zero, fams["aplus"], fams["g"], fams["d"], fams["c"], side="plus")
    prod = MonoidalData(cat, times, R.one, fams["a"], fams["l"], fams["r"], side="times")
    return AnnCat(cat, psum, prod, fams["L"], fams["R"], name)


def from_ring(R: RingTable, *, check: bool = True, name: str | None = None) -> AnnCat:
    """The discrete Ann-category D(R) with identity constraints."""
    if check:
        R.validate()
    return from_bimodule(BimoduleData.zero(R), None, check=False, name=name)


def pic_from_cocycle(M: AbelianGroup, N: AbelianGroup, h, cc, name: str | None = None) -> MonoidalData:
    """Skeletal Pic candidate: objects M, Hom(x,x) = N, aplus from h, c from cc, g = d = id."""
    h, cc = ({} if v is None else v for v in (h, cc))
    h = h if callable(h) else (lambda *t, _h=h: _h.get(t, N.zero))
    cc = cc if callable(cc) else (lambda *t, _c=cc: _c.get(t, N.zero))
    objs = M.elements
    name = name or f"Pic({M.name},{N.name})"
    cat = skeletal_category(objs, N, name)
    plus = _bifunctor(objs, N, lambda x, y: M.plus(x, y), lambda x, m, y, n: N.plus(m, n), "oplus")
    env = Env(cat, plus=plus, zero=M.zero)
    values = {"aplus": lambda t: h(*t), "c": lambda t: cc(*t), "g": lambda t: N.zero, "d": lambda t: N.zero}
    fams = {n: _family(n, env, objs, values[n]) for n in values}
    return MonoidalData(cat, plus, M.zero, fams["aplus"], fams["g"], fams["d"], fams["c"], side="plus", name=name)


# ---------------------------------------------------------------------------
# search


def search_space_size(B: BimoduleData, names: Iterable[str]) -> int:
    n = len(B.ring.carrier)
    slots = sum(n ** len(SHAPES[name][0]) for name in names)
    return len(B.module.elements) ** slots


def search_constraint_families(B: BimoduleData, names: Iterable[str], bound: int = 10 ** 5,
                               jobs: int = 1) -> list[CochainSet]:
    """All cochain sets over ``names`` whose generated category passes verify_ann.

    Candidates are enumerated in lexicographic order of their values, the
    zero set first; the verifier is the only acceptance test.
    """
    names = [n for n in FAMILY_NAMES if n in set(names)]
    size = search_space_size(B, names)
    if size > bound:
        raise BoundExceeded(size, bound)
    B.validate()
    objs = B.ring.carrier
    slots = [(n, args) for n in names for args in itertools.product(objs, repeat=len(SHAPES[n][0]))]
    M = B.module.elements
    found = []
    with parallel(jobs):
        for values in itertools.product(M, repeat=len(slots)):
            T = CochainSet()
            for (n, args), m in zip(slots, values):
                T.values.setdefault(n, {})[args] = m
            A = from_bimodule(B, T, check=False)
            if verify_ann(A, structural=False, fail_fast=True).passed:
                found.append(T)
    return found


# ---------------------------------------------------------------------------
# mutation


def mutate(A: AnnCat, name: str, args: tuple) -> AnnCat:
    """Replace the component of ``name`` at ``args`` by the next morphism of its hom-set."""
    cat = A.category
    fam = A.families()[name]
    f = fam(*args)
    hom = list(cat.hom(cat.dom(f), cat.cod(f)))
    if len(hom) < 2:
        raise ValueError(f"hom-set of {name}{args!r} has a single morphism; nothing to mutate")
    g = hom[(hom.index(f) + 1) % len(hom)]
    return A.with_family(name, fam.with_component(args, g))

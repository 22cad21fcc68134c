"""Finite categories, bifunctors, natural families and functors as explicit data.

Everything here is immutable after construction.  ``FinCategory`` keeps its
composition as a table; lazy categories (words, endofunctors) subclass
``Category`` and compute the same protocol procedurally, exposing a finite
probe set of objects on which checks are evaluated.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .errors import MissingComponent, NoInverse, NotComposable
from .report import DiagramReport, Failure, Report, label

Obj = Hashable
Mor = Hashable


class Category:
    """Protocol shared by table-driven and lazy categories.

    ``objects`` is the enumerated object collection: every object for a
    finite category, a probe set when ``bounded`` is true.
    """

    objects: tuple = ()
    bounded: bool = False
    name: str = "C"

    def dom(self, f: Mor) -> Obj:
        raise NotImplementedError

    def cod(self, f: Mor) -> Obj:
        raise NotImplementedError

    def identity(self, x: Obj) -> Mor:
        raise NotImplementedError

    def compose(self, g: Mor, f: Mor) -> Mor:
        raise NotImplementedError

    def inverse(self, f: Mor) -> Mor:
        raise NotImplementedError

    def hom(self, x: Obj, y: Obj) -> Sequence[Mor]:
        raise NotImplementedError

    def is_iso(self, f: Mor) -> bool:
        try:
            self.inverse(f)
        except NoInverse:
            return False
        return True

    def object_index(self, x: Obj) -> int:
        try:
            return self._object_index[x]
        except AttributeError:
            self._object_index = {o: i for i, o in enumerate(self.objects)}
            return self._object_index.get(x, len(self.objects))
        except KeyError:
            return len(self.objects)

    def morphisms(self) -> list[Mor]:
        """All morphisms between enumerated objects, in canonical order."""
        return [f for x in self.objects for y in self.objects for f in self.hom(x, y)]

    def compose_all(self, *fs: Mor) -> Mor:
        """Compose in diagrammatic order: ``compose_all(f, g, h) = h . g . f``."""
        out = fs[0]
        for g in fs[1:]:
            out = self.compose(g, out)
        return out


class FinCategory(Category):
    """A finite category given by object, morphism and composition tables."""

    def __init__(
        self,
        objects: Iterable[Obj],
        morphisms: Mapping[Mor, tuple[Obj, Obj]],
        identity: Mapping[Obj, Mor],
        composition: Mapping[tuple[Mor, Mor], Mor],
        name: str = "C",
    ):
        self.objects = tuple(objects)
        self._mors = dict(morphisms)
        self._identity = dict(identity)
        self._comp = dict(composition)
        self.name = name
        self._hom: dict[tuple[Obj, Obj], list[Mor]] = {}
        for f, (x, y) in self._mors.items():
            self._hom.setdefault((x, y), []).append(f)
        self._inv: dict[Mor, Mor] | None = None

    # tables -------------------------------------------------------------
    @property
    def morphism_table(self) -> dict:
        return dict(self._mors)

    @property
    def identity_table(self) -> dict:
        return dict(self._identity)

    @property
    def composition_table(self) -> dict:
        return dict(self._comp)

    def __len__(self) -> int:
        return len(self._mors)

    # protocol -----------------------------------------------------------
    def dom(self, f):
        try:
            return self._mors[f][0]
        except KeyError:
            raise MissingComponent(f"unknown morphism {f!r}") from None

    def cod(self, f):
        try:
            return self._mors[f][1]
        except KeyError:
            raise MissingComponent(f"unknown morphism {f!r}") from None

    def identity(self, x):
        try:
            return self._identity[x]
        except KeyError:
            raise MissingComponent(f"no identity for object {x!r}") from None

    def compose(self, g, f):
        if self.cod(f) != self.dom(g):
            raise NotComposable(g, f, f"cod {label(self.cod(f))} != dom {label(self.dom(g))}")
        try:
            return self._comp[(g, f)]
        except KeyError:
            raise MissingComponent(f"composition {g!r} . {f!r} not tabulated") from None

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def _inverse_table(self) -> dict:
        if self._inv is None:
            inv = {}
            for f, (x, y) in self._mors.items():
                idx, idy = self._identity.get(x), self._identity.get(y)
                for g in self.hom(y, x):
                    if self._comp.get((g, f)) == idx and self._comp.get((f, g)) == idy:
                        inv[f] = g
                        break
            self._inv = inv
        return self._inv

    def inverse(self, f):
        try:
            return self._inverse_table()[f]
        except KeyError:
            raise NoInverse(f) from None

    def morphisms(self):
        return [f for x in self.objects for y in self.objects for f in self.hom(x, y)]

    # mutation helpers (return new categories) --------------------------
    def with_composition(self, g, f, h) -> "FinCategory":
        comp = dict(self._comp)
        comp[(g, f)] = h
        return FinCategory(self.objects, self._mors, self._identity, comp, self.name)


# ---------------------------------------------------------------------------


class Bifunctor:
    """A functor C x C -> C given by object and morphism maps."""

    def __init__(self, obj: Callable, mor: Callable, name: str = "T",
                 obj_table: Mapping | None = None, mor_table: Mapping | None = None):
        self._obj = obj
        self._mor = mor
        self.name = name
        self.obj_table = obj_table
        self.mor_table = mor_table

    @classmethod
    def from_tables(cls, obj_table: Mapping, mor_table: Mapping, name: str = "T") -> "Bifunctor":
        obj_table, mor_table = dict(obj_table), dict(mor_table)

        def obj(x, y):
            try:
                return obj_table[(x, y)]
            except KeyError:
                raise MissingComponent(f"{name}: no object entry for {(x, y)!r}") from None

        def mor(f, g):
            try:
                return mor_table[(f, g)]
            except KeyError:
                raise MissingComponent(f"{name}: no morphism entry for {(f, g)!r}") from None

        return cls(obj, mor, name, obj_table, mor_table)

    def obj(self, x, y):
        return self._obj(x, y)

    def mor(self, f, g):
        return self._mor(f, g)

    def with_mor(self, f, g, value) -> "Bifunctor":
        base = self._mor

        def mor(a, b):
            if (a, b) == (f, g):
                return value
            return base(a, b)

        table = None
        if self.mor_table is not None:
            table = dict(self.mor_table)
            table[(f, g)] = value
        return Bifunctor(self._obj, mor, self.name, self.obj_table, table)


class NatFamily:
    """An indexed family of morphisms ``name[X1..Xk]`` with declared shapes.

    ``source`` and ``target`` are object terms over ``variables`` in the term
    grammar; ``component`` maps an argument tuple to a morphism.
    """

    def __init__(self, name: str, variables: Sequence[str], source: str, target: str,
                 component: Callable | Mapping, iso: bool = True):
        self.name = name
        self.variables = tuple(variables)
        self.arity = len(self.variables)
        self.source = source
        self.target = target
        self.iso = iso
        if isinstance(component, Mapping):
            table = dict(component)

            def lookup(*args):
                try:
                    return table[args]
                except KeyError:
                    raise MissingComponent(f"{name}: no component at {args!r}") from None

            self._fn = lookup
            self.table = table
        else:
            self._fn = component
            self.table = None
        self._cache: dict = {}

    def __call__(self, *args):
        try:
            return self._cache[args]
        except KeyError:
            value = self._fn(*args)
            self._cache[args] = value
            return value

    def with_component(self, args: tuple, value) -> "NatFamily":
        args = tuple(args)
        base = self._fn

        def fn(*a):
            if a == args:
                return value
            return base(*a)

        out = NatFamily(self.name, self.variables, self.source, self.target, fn, self.iso)
        if self.table is not None:
            out.table = dict(self.table)
            out.table[args] = value
        return out

    def renamed(self, name: str) -> "NatFamily":
        return NatFamily(name, self.variables, self.source, self.target, self._fn, self.iso)

    def __repr__(self):
        return f"NatFamily({self.name}[{','.join(self.variables)}]: {self.source} -> {self.target})"


class FunctorData:
    """A functor between two structures, with optional monoidal data.

    ``breve`` is the family F(X+Y) -> FX+FY, ``tilde`` the family
    F(X*Y) -> FX*FY; ``unit_plus`` and ``unit_times`` are the morphisms
    F0 -> 0' and F1 -> 1'.  Families take source objects and return target
    morphisms.
    """

    def __init__(self, source, target, obj: Callable, mor: Callable, *, breve: NatFamily | None = None,
                 tilde: NatFamily | None = None, unit_plus=None, unit_times=None, name: str = "F"):
        self.source = source
        self.target = target
        self._obj = obj
        self._mor = mor
        self.breve = breve
        self.tilde = tilde
        self.unit_plus = unit_plus
        self.unit_times = unit_times
        self.name = name
        self._ocache: dict = {}
        self._mcache: dict = {}

    def obj(self, x):
        try:
            return self._ocache[x]
        except KeyError:
            v = self._ocache[x] = self._obj(x)
            return v

    def mor(self, f):
        try:
            return self._mcache[f]
        except KeyError:
            v = self._mcache[f] = self._mor(f)
            return v

    def replace(self, **changes) -> "FunctorData":
        kw = dict(breve=self.breve, tilde=self.tilde, unit_plus=self.unit_plus,
                  unit_times=self.unit_times, name=self.name)
        obj, mor = changes.pop("obj", self._obj), changes.pop("mor", self._mor)
        source, target = changes.pop("source", self.source), changes.pop("target", self.target)
        kw.update(changes)
        return FunctorData(source, target, obj, mor, **kw)

    def __repr__(self):
        return f"FunctorData({self.name})"


def category_of(struct) -> Category:
    """The underlying category of a category or any structure bundle."""
    if isinstance(struct, Category):
        return struct
    return struct.category


def identity_functor(struct, name: str = "Id", with_families: bool = True) -> FunctorData:
    cat = category_of(struct)
    kw = {}
    if with_families:
        from .terms import env_of
        env = env_of(struct)
        if env.plus is not None:
            kw["breve"] = NatFamily("Fbreve", ("X", "Y"), "F(oplus(X,Y))", "oplus(F(X),F(Y))",
                                    lambda x, y: cat.identity(env.plus.obj(x, y)))
            kw["unit_plus"] = cat.identity(env.zero)
        if env.times is not None:
            kw["tilde"] = NatFamily("Ftilde", ("X", "Y"), "F(otimes(X,Y))", "otimes(F(X),F(Y))",
                                    lambda x, y: cat.identity(env.times.obj(x, y)))
            kw["unit_times"] = cat.identity(env.one)
    return FunctorData(struct, struct, lambda x: x, lambda f: f, name=name, **kw)


# ---------------------------------------------------------------------------
# validation


def _violation(d: DiagramReport, witness: tuple, order: tuple, detail: str, lhs=None, rhs=None):
    d.failures.append(Failure(witness, lhs, rhs, "violation", detail, order))


def validate_category(C: Category) -> Report:
    """Scan identity, unit, associativity and totality laws exhaustively."""
    rep = Report(f"category {C.name}")
    mors = C.morphisms()
    index = {f: i for i, f in enumerate(mors)}
    bounded = C.bounded

    ident = rep.add(DiagramReport("identity", "id_X : X -> X", ("X",), bounded=bounded))
    for i, x in enumerate(C.objects):
        ident.instances += 1
        try:
            e = C.identity(x)
            if C.dom(e) != x or C.cod(e) != x:
                _violation(ident, (x,), (i,), "identity has wrong endpoints", e)
        except Exception as exc:  # noqa: BLE001 - violations are data
            _violation(ident, (x,), (i,), f"{type(exc).__name__}: {exc}")

    units = rep.add(DiagramReport("unit-laws", "id.f = f = f.id", ("f",), bounded=bounded))
    for f in mors:
        units.instances += 1
        try:
            left = C.compose(C.identity(C.cod(f)), f)
            right = C.compose(f, C.identity(C.dom(f)))
            if left != f:
                _violation(units, (f,), (index[f], 0), "id_cod . f != f", left, f)
            if right != f:
                _violation(units, (f,), (index[f], 1), "f . id_dom != f", right, f)
        except Exception as exc:  # noqa: BLE001
            _violation(units, (f,), (index[f], 2), f"{type(exc).__name__}: {exc}")

    total = rep.add(DiagramReport("composition", "total on composable pairs", ("g", "f"), bounded=bounded))
    assoc = rep.add(DiagramReport("associativity", "h.(g.f) = (h.g).f", ("h", "g", "f"), bounded=bounded))
    for f in mors:
        for g in _out_of(C, C.cod(f)):
            total.instances += 1
            try:
                gf = C.compose(g, f)
                if C.dom(gf) != C.dom(f) or C.cod(gf) != C.cod(g):
                    _violation(total, (g, f), (index[f], index[g]), "composite has wrong endpoints", gf)
                    continue
            except Exception as exc:  # noqa: BLE001
                _violation(total, (g, f), (index[f], index[g]), f"{type(exc).__name__}: {exc}")
                continue
            for h in _out_of(C, C.cod(g)):
                assoc.instances += 1
                try:
                    lhs = C.compose(h, gf)
                    rhs = C.compose(C.compose(h, g), f)
                except Exception as exc:  # noqa: BLE001
                    _violation(assoc, (h, g, f), (index[f], index[g], index[h]), f"{type(exc).__name__}: {exc}")
                    continue
                if lhs != rhs:
                    _violation(assoc, (h, g, f), (index[f], index[g], index[h]), "associativity", lhs, rhs)
    for d in rep.diagrams:
        d.sort()
    return rep


def _out_of(C: Category, x) -> list:
    return [g for y in C.objects for g in C.hom(x, y)]


def validate_bifunctor(C: Category, T: Bifunctor) -> Report:
    """Endpoint, identity and interchange laws of T over all morphism pairs."""
    rep = Report(f"bifunctor {T.name}")
    mors = C.morphisms()
    index = {f: i for i, f in enumerate(mors)}
    bounded = C.bounded

    ends = rep.add(DiagramReport("endpoints", "T(f,g) : T(A,C) -> T(B,D)", ("f", "g"), bounded=bounded))
    for f, g in itertools.product(mors, mors):
        ends.instances += 1
        order = (index[f], index[g])
        try:
            t = T.mor(f, g)
            want_dom = T.obj(C.dom(f), C.dom(g))
            want_cod = T.obj(C.cod(f), C.cod(g))
            if C.dom(t) != want_dom or C.cod(t) != want_cod:
                _violation(ends, (f, g), order, "wrong endpoints", t)
        except Exception as exc:  # noqa: BLE001
            _violation(ends, (f, g), order, f"{type(exc).__name__}: {exc}")

    ids = rep.add(DiagramReport("identities", "T(id,id) = id", ("A", "C"), bounded=bounded))
    objs = list(C.objects)
    for i, a in enumerate(objs):
        for j, c in enumerate(objs):
            ids.instances += 1
            try:
                t = T.mor(C.identity(a), C.identity(c))
                e = C.identity(T.obj(a, c))
                if t != e:
                    _violation(ids, (a, c), (i, j), "T(id,id) != id", t, e)
            except Exception as exc:  # noqa: BLE001
                _violation(ids, (a, c), (i, j), f"{type(exc).__name__}: {exc}")

    inter = rep.add(DiagramReport("interchange", "T(f'.f, g'.g) = T(f',g').T(f,g)",
                                  ("f'", "f", "g'", "g"), bounded=bounded))
    pairs = [(f, f2) for f in mors for f2 in _out_of(C, C.cod(f))]
    for (f, f2), (g, g2) in itertools.product(pairs, pairs):
        inter.instances += 1
        order = (index[f], index[f2], index[g], index[g2])
        try:
            lhs = T.mor(C.compose(f2, f), C.compose(g2, g))
            rhs = C.compose(T.mor(f2, g2), T.mor(f, g))
        except Exception as exc:  # noqa: BLE001
            _violation(inter, (f2, f, g2, g), order, f"{type(exc).__name__}: {exc}")
            continue
        if lhs != rhs:
            _violation(inter, (f2, f, g2, g), order, "interchange", lhs, rhs)
    for d in rep.diagrams:
        d.sort()
    return rep


def validate_functor(F: FunctorData, objects: Sequence | None = None) -> Report:
    """Functoriality of F on the source's enumerated objects."""
    S, T = category_of(F.source), category_of(F.target)
    rep = Report(f"functor {F.name}")
    objs = list(S.objects if objects is None else objects)
    bounded = S.bounded or objects is not None
    ids = rep.add(DiagramReport("identities", "F(id) = id", ("X",), bounded=bounded))
    for i, x in enumerate(objs):
        ids.instances += 1
        try:
            lhs, rhs = F.mor(S.identity(x)), T.identity(F.obj(x))
            if lhs != rhs:
                _violation(ids, (x,), (i,), "F(id) != id", lhs, rhs)
        except Exception as exc:  # noqa: BLE001
            _violation(ids, (x,), (i,), f"{type(exc).__name__}: {exc}")
    comp = rep.add(DiagramReport("composition", "F(g.f) = F(g).F(f)", ("g", "f"), bounded=bounded))
    mors = [f for x in objs for y in objs for f in S.hom(x, y)]
    for i, f in enumerate(mors):
        try:
            Ff = F.mor(f)
            if T.dom(Ff) != F.obj(S.dom(f)) or T.cod(Ff) != F.obj(S.cod(f)):
                _violation(comp, (f,), (i, -1), "F(f) has wrong endpoints", Ff)
        except Exception as exc:  # noqa: BLE001
            _violation(comp, (f,), (i, -1), f"{type(exc).__name__}: {exc}")
            continue
        for j, g in enumerate(mors):
            if S.dom(g) != S.cod(f):
                continue
            comp.instances += 1
            try:
                lhs = F.mor(S.compose(g, f))
                rhs = T.compose(F.mor(g), Ff)
            except Exception as exc:  # noqa: BLE001
                _violation(comp, (g, f), (i, j), f"{type(exc).__name__}: {exc}")
                continue
            if lhs != rhs:
                _violation(comp, (g, f), (i, j), "F(g.f) != F(g).F(f)", lhs, rhs)
    for d in rep.diagrams:
        d.sort()
    return rep


def validate_nat_family(C: Category, eta: NatFamily, env=None, functor_env=None,
                        objects: Sequence | None = None, naturality: bool = True) -> Report:
    """Endpoints, naturality and (if flagged) invertibility of a family.

    ``env`` evaluates the shapes; its variables range over ``objects``
    (default: the enumerated objects of ``C``).
    """
    from .terms import ObjShape, env_of

    if env is None:
        env = env_of(C)
    target_cat = env.category
    objs = list(C.objects if objects is None else objects)
    src = ObjShape(eta.source, eta.variables, env)
    tgt = ObjShape(eta.target, eta.variables, env)
    bounded = C.bounded or objects is not None
    rep = Report(f"family {eta.name}")

    ends = rep.add(DiagramReport(f"{eta.name}:endpoints", "shape", eta.variables, bounded=bounded))
    inv = rep.add(DiagramReport(f"{eta.name}:iso", "invertible", eta.variables, bounded=bounded)) if eta.iso else None
    for order in itertools.product(range(len(objs)), repeat=eta.arity):
        args = tuple(objs[i] for i in order)
        ends.instances += 1
        try:
            m = eta(*args)
            want_s, want_t = src.objects(args), tgt.objects(args)
            got_s, got_t = target_cat.dom(m), target_cat.cod(m)
        except Exception as exc:  # noqa: BLE001
            _violation(ends, args, order, f"{type(exc).__name__}: {exc}")
            continue
        if got_s != want_s or got_t != want_t:
            _violation(ends, args, order,
                       f"component {label(got_s)} -> {label(got_t)}, shape {label(want_s)} -> {label(want_t)}", m)
            continue
        if inv is not None:
            inv.instances += 1
            try:
                target_cat.inverse(m)
            except NoInverse:
                _violation(inv, args, order, "component is not invertible", m)

    if naturality:
        nat = rep.add(DiagramReport(f"{eta.name}:naturality", "eta_Y . S(f) = T(f) . eta_X",
                                    eta.variables, bounded=bounded))
        mors = [f for x in objs for y in objs for f in C.hom(x, y)]
        for order in itertools.product(range(len(mors)), repeat=eta.arity):
            fs = tuple(mors[i] for i in order)
            nat.instances += 1
            try:
                xs = tuple(C.dom(f) for f in fs)
                ys = tuple(C.cod(f) for f in fs)
                lhs = target_cat.compose(eta(*ys), src.morphisms(fs))
                rhs = target_cat.compose(tgt.morphisms(fs), eta(*xs))
            except Exception as exc:  # noqa: BLE001
                _violation(nat, fs, order, f"{type(exc).__name__}: {exc}")
                continue
            if lhs != rhs:
                _violation(nat, fs, order, "naturality square", lhs, rhs)
    for d in rep.diagrams:
        d.sort()
    return rep

"""Category files: YAML documents declaring a category, its operations and constraints.

Top-level sections::

    name:        display name (optional)
    objects:     [x, y, ...]
    morphisms:   {f: [dom, cod]} ; identities are marked [dom, cod, identity]
    compose:     [[g, f, g.f], ...]
    plus:        {unit: 0, objects: [[x, y, x+y], ...], morphisms: [[f, g, f+g], ...]}
    times:       same shape as plus, unit 1
    constraints: {family: identity | [[x, y, ..., morphism], ...]}
    generator:   ring / bimodule / cochains / pic clauses, instead of raw tables

A file with only a category loads to a FinCategory, with ``plus`` to a Pic
structure, with both to an AnnCat.
"""

from __future__ import annotations

import itertools
from pathlib import Path
from typing import Any

import yaml

from .ann import FAMILY_NAMES, SHAPES, AnnCat
from .core import Bifunctor, FinCategory, NatFamily, validate_bifunctor, validate_category
from .errors import InvalidRing, SchemaError, ValidationError
from .examples import (AbelianGroup, BimoduleData, CochainSet, RingTable, broken_ring, f2t, from_bimodule,
                       pic_from_cocycle, zmod)
from .report import Report
from .structures import MonoidalData
from .terms import Env, ObjShape

SECTIONS = ("name", "objects", "morphisms", "compose", "plus", "times", "constraints", "generator")
GENERATOR_KEYS = ("ring", "bimodule", "cochains", "pic", "check")
FIXTURES = Path(__file__).parent / "fixtures"
PIC_FAMILIES = ("aplus", "g", "d", "c")


def resolve(path: str | Path) -> Path:
    """A path as given, or a bundled fixture by bare name (with or without .cat)."""
    p = Path(path)
    if p.exists():
        return p
    for cand in (FIXTURES / p.name, FIXTURES / f"{p.name}.cat"):
        if cand.exists():
            return cand
    raise SchemaError(f"no such file or fixture: {path}")


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURES.glob("*.cat"))


def load(path: str | Path):
    """Load and validate a category file; returns AnnCat, a Pic MonoidalData or FinCategory."""
    p = resolve(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {p}: {exc}") from None
    return loads(text, default_name=p.stem)


def loads(text: str, default_name: str = "C"):
    try:
        node = yaml.compose(text)
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise SchemaError(f"not a YAML document: {getattr(exc, 'problem', exc)}",
                          position=mark.line + 1 if mark else None) from None
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a mapping", position=1)
    lines = _key_lines(node)
    return _Loader(doc, lines, default_name).build()


def _key_lines(node) -> dict:
    out = {}
    if isinstance(node, yaml.MappingNode):
        for k, _ in node.value:
            out[k.value] = k.start_mark.line + 1
    return out


class _Loader:
    def __init__(self, doc: dict, lines: dict, default_name: str):
        self.doc, self.lines = doc, lines
        for key in doc:
            if key not in SECTIONS:
                self.fail(f"unknown section {key!r}", key)
        self.name = str(doc.get("name", default_name))

    def fail(self, message: str, key: str, sub: Any = None):
        where = key if sub is None else f"{key}.{sub}"
        raise SchemaError(message, key=where, position=self.lines.get(key))

    def build(self):
        doc = self.doc
        if "generator" in doc:
            extra = [k for k in doc if k not in ("generator", "name")]
            if extra:
                self.fail(f"a generator file cannot also declare {', '.join(map(str, extra))}", extra[0])
            return self.generator(doc["generator"])
        for key in ("objects", "morphisms"):
            if key not in doc:
                self.fail(f"missing section {key!r}", key)
        cat = self.category()
        rep = validate_category(cat)
        if not rep.passed:
            raise ValidationError(f"{self.name}: composition tables do not form a category", rep)
        if "plus" not in doc:
            if "times" in doc or "constraints" in doc:
                self.fail("times and constraints need a plus section", "times" if "times" in doc else "constraints")
            return cat
        plus, zero = self.operation(cat, "plus", "oplus")
        times = one = None
        if "times" in doc:
            times, one = self.operation(cat, "times", "otimes")
        env = Env(cat, plus=plus, times=times, zero=zero, one=one)
        names = FAMILY_NAMES if times is not None else PIC_FAMILIES
        fams = self.constraints(cat, env, names)
        psum = MonoidalData(cat, plus, zero, fams["aplus"], fams["g"], fams["d"], fams["c"], side="plus",
                            name=self.name)
        if times is None:
            return psum
        prod = MonoidalData(cat, times, one, fams["a"], fams["l"], fams["r"], side="times", name=self.name)
        return AnnCat(cat, psum, prod, fams["L"], fams["R"], self.name)

    # raw tables ----------------------------------------------------------
    def category(self) -> FinCategory:
        doc = self.doc
        objects = doc["objects"]
        if not isinstance(objects, list) or not objects:
            self.fail("objects must be a non-empty list", "objects")
        if len(set(map(_hashable, objects))) != len(objects):
            self.fail("duplicate object", "objects")
        objects = [_hashable(x) for x in objects]
        obj_set = set(objects)
        mors, ident = {}, {}
        raw = doc["morphisms"]
        if not isinstance(raw, dict):
            self.fail("morphisms must map names to [dom, cod] or [dom, cod, identity]", "morphisms")
        for f, spec in raw.items():
            if not isinstance(spec, list) or len(spec) not in (2, 3):
                self.fail(f"morphism {f!r} must be [dom, cod] or [dom, cod, identity]", "morphisms", f)
            dom, cod = _hashable(spec[0]), _hashable(spec[1])
            for x in (dom, cod):
                if x not in obj_set:
                    self.fail(f"morphism {f!r} refers to unknown object {x!r}", "morphisms", f)
            mors[f] = (dom, cod)
            if len(spec) == 3:
                if spec[2] != "identity" or dom != cod:
                    self.fail(f"third entry of {f!r} must be 'identity' on an endomorphism", "morphisms", f)
                if dom in ident:
                    self.fail(f"object {dom!r} has two identities", "morphisms", f)
                ident[dom] = f
        for x in objects:
            if x not in ident:
                self.fail(f"object {x!r} has no identity morphism", "morphisms")
        comp = {}
        for i, entry in enumerate(doc.get("compose") or []):
            if not isinstance(entry, list) or len(entry) != 3:
                self.fail("compose entries are [g, f, g.f]", "compose", i)
            for m in entry:
                if m not in mors:
                    self.fail(f"composition entry {i} references unknown morphism {m!r}", "compose", i)
            g, f, h = entry
            comp[(g, f)] = h
        for f, (x, y) in mors.items():
            comp.setdefault((f, ident[x]), f)
            comp.setdefault((ident[y], f), f)
        return FinCategory(objects, mors, ident, comp, self.name)

    def operation(self, cat: FinCategory, key: str, name: str):
        spec = self.doc[key]
        if not isinstance(spec, dict):
            self.fail(f"{key} must be a mapping", key)
        for k in spec:
            if k not in ("unit", "objects", "morphisms"):
                self.fail(f"unknown key {k!r}", key, k)
        for k in ("unit", "objects"):
            if k not in spec:
                self.fail(f"missing key {k!r}", key, k)
        unit = _hashable(spec["unit"])
        if unit not in cat.objects:
            self.fail(f"unit {unit!r} is not an object", key, "unit")
        obj_table = {}
        for i, row in enumerate(spec["objects"]):
            if not isinstance(row, list) or len(row) != 3:
                self.fail("object entries are [x, y, value]", key, "objects")
            x, y, z = map(_hashable, row)
            for v in (x, y, z):
                if v not in cat.objects:
                    self.fail(f"unknown object {v!r} in entry {i}", key, "objects")
            obj_table[(x, y)] = z
        mor_table = {}
        for i, row in enumerate(spec.get("morphisms") or []):
            if not isinstance(row, list) or len(row) != 3:
                self.fail("morphism entries are [f, g, value]", key, "morphisms")
            for m in row:
                if m not in cat.morphism_table:
                    self.fail(f"unknown morphism {m!r} in entry {i}", key, "morphisms")
            mor_table[(row[0], row[1])] = row[2]
        # T(id, id) = id need not be listed
        for x, y in itertools.product(cat.objects, repeat=2):
            if (x, y) in obj_table:
                mor_table.setdefault((cat.identity(x), cat.identity(y)), cat.identity(obj_table[(x, y)]))
        bf = Bifunctor.from_tables(obj_table, mor_table, name)
        rep = validate_bifunctor(cat, bf)
        if not rep.passed:
            raise ValidationError(f"{self.name}: {key} is not a bifunctor", rep)
        return bf, unit

    def constraints(self, cat: FinCategory, env: Env, names) -> dict[str, NatFamily]:
        spec = self.doc.get("constraints") or {}
        if not isinstance(spec, dict):
            self.fail("constraints must be a mapping", "constraints")
        allowed = set(names)
        for k in spec:
            if k not in allowed:
                self.fail(f"unknown constraint family {k!r}", "constraints", k)
        fams = {}
        for n in names:
            if n not in spec:
                self.fail(f"missing constraint family {n!r} (use 'identity' for the identity family)",
                          "constraints", n)
            variables, source, target = SHAPES[n]
            value = spec[n]
            if value == "identity":
                shape = ObjShape(source, variables, env)
                table = {args: cat.identity(shape.objects(args))
                         for args in itertools.product(cat.objects, repeat=len(variables))}
            else:
                if not isinstance(value, list):
                    self.fail(f"{n} must be 'identity' or a list of [args..., morphism]", "constraints", n)
                table = {}
                for row in value:
                    if not isinstance(row, list) or len(row) != len(variables) + 1:
                        self.fail(f"{n} entries have {len(variables)} objects and a morphism", "constraints", n)
                    *args, m = row
                    args = tuple(map(_hashable, args))
                    if m not in cat.morphism_table or any(a not in cat.objects for a in args):
                        self.fail(f"{n} entry {row!r} names an unknown object or morphism", "constraints", n)
                    table[args] = m
            fams[n] = NatFamily(n, variables, source, target, table)
        return fams

    # generators ------------------------------------------------------------
    def generator(self, spec):
        if not isinstance(spec, dict):
            self.fail("generator must be a mapping", "generator")
        for k in spec:
            if k not in GENERATOR_KEYS:
                self.fail(f"unknown generator key {k!r}", "generator", k)
        check = spec.get("check", True)
        if "pic" in spec:
            if set(spec) - {"pic", "check"}:
                self.fail("a pic generator takes no ring or bimodule", "generator", "pic")
            return self.pic(spec["pic"])
        if "ring" not in spec:
            self.fail("generator needs a ring or pic clause", "generator")
        try:
            R = self.ring(spec["ring"])
            if check:
                R.validate()
            module = spec.get("bimodule", "zero")
            if module == "regular":
                B = BimoduleData.regular(R)
            elif module == "zero":
                B = BimoduleData.zero(R)
            else:
                self.fail("bimodule must be 'regular' or 'zero'", "generator", "bimodule")
            if check:
                B.validate()
            T = self.cochains(spec.get("cochains"), B)
            name = self.doc.get("name")
            return from_bimodule(B, T, check=False, name=str(name) if name is not None else None)
        except InvalidRing as exc:
            raise ValidationError(f"{self.name}: {exc}", Report(str(exc))) from None

    def ring(self, spec) -> RingTable:
        if spec == "f2t":
            return f2t()
        if spec == "broken":
            return broken_ring()
        if isinstance(spec, dict) and set(spec) == {"zmod"}:
            n = spec["zmod"]
            if not isinstance(n, int) or n < 1:
                self.fail("zmod takes a positive integer", "generator", "ring")
            return zmod(n)
        if isinstance(spec, dict):
            need = {"carrier", "add", "mul", "zero", "one"}
            if set(spec) - need - {"name"} or need - set(spec):
                self.fail("a ring table has carrier, add, mul, zero, one (and optional name)", "generator", "ring")
            els = tuple(_hashable(x) for x in spec["carrier"])
            tables = {}
            for k in ("add", "mul"):
                rows = spec[k]
                if not isinstance(rows, list) or len(rows) != len(els) or any(
                        not isinstance(r, list) or len(r) != len(els) for r in rows):
                    self.fail(f"{k} must be a {len(els)}x{len(els)} table", "generator", "ring")
                tables[k] = {(x, y): _hashable(rows[i][j]) for i, x in enumerate(els) for j, y in enumerate(els)}
            return RingTable(els, tables["add"], tables["mul"], _hashable(spec["zero"]), _hashable(spec["one"]),
                             str(spec.get("name", "R")))
        self.fail("ring must be f2t, broken, {zmod: n} or a table", "generator", "ring")

    def cochains(self, spec, B: BimoduleData) -> CochainSet:
        T = CochainSet()
        if spec is None:
            return T
        if not isinstance(spec, dict):
            self.fail("cochains must map family names to entries", "generator", "cochains")
        for n, rows in spec.items():
            if n not in FAMILY_NAMES:
                self.fail(f"unknown constraint family {n!r}", "generator", "cochains")
            k = len(SHAPES[n][0])
            for row in rows or []:
                if not isinstance(row, list) or len(row) != k + 1:
                    self.fail(f"{n} entries have {k} ring elements and a module element", "generator", "cochains")
                *args, m = map(_hashable, row)
                if any(a not in B.ring.carrier for a in args) or m not in B.module.elements:
                    self.fail(f"{n} entry {row!r} is outside the ring or module", "generator", "cochains")
                T.values.setdefault(n, {})[tuple(args)] = m
        return T

    def pic(self, spec) -> MonoidalData:
        if not isinstance(spec, dict) or set(spec) - {"M", "N", "h", "c"} or not {"M", "N"} <= set(spec):
            self.fail("pic takes M and N (cyclic orders) and optional h, c tables", "generator", "pic")
        M, N = AbelianGroup.cyclic(spec["M"]), AbelianGroup.cyclic(spec["N"])
        tables = {}
        for key, k in (("h", 3), ("c", 2)):
            rows = spec.get(key) or []
            if rows == "product":
                tables[key] = {t: (t[0] * t[1]) % spec["N"] for t in itertools.product(M.elements, repeat=2)}
                continue
            table = {}
            for row in rows:
                if not isinstance(row, list) or len(row) != k + 1:
                    self.fail(f"{key} entries have {k} elements of M and one of N", "generator", "pic")
                *args, n = row
                if any(a not in M.elements for a in args) or n not in N.elements:
                    self.fail(f"{key} entry {row!r} is outside M or N", "generator", "pic")
                table[tuple(args)] = n
            tables[key] = table
        name = self.doc.get("name")
        return pic_from_cocycle(M, N, tables["h"], tables["c"], str(name) if name is not None else None)


def _hashable(x):
    if isinstance(x, list):
        return tuple(_hashable(v) for v in x)
    return x


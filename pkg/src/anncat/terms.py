"""Term language for objects and morphisms, its evaluator and the equation checker.

Grammar (ASCII)::

    objexpr  := VAR | "0" | "1" | "oplus(" objexpr "," objexpr ")"
              | "otimes(" objexpr "," objexpr ")" | FUNCTOR "(" objexpr ")"
    term     := "id(" objexpr ")" | NAME "[" objexpr ("," objexpr)* "]"
              | "inv(" term ")" | "comp(" term "," term ")"
              | "oplus(" term "," term ")" | "otimes(" term "," term ")"
              | FUNCTOR "(" term ")"
    equation := "forall" VAR+ ":" term "=" term

``comp(g, f)`` is g after f.  ``FUNCTOR(...)`` and nullary ``NAME[]`` only
occur in functor-check contexts, where F, G name the functors under test.

Terms are compiled once into closures over an ``Env`` and then evaluated on
every binding of the variables to objects.
"""

from __future__ import annotations

import contextlib
import contextvars
import itertools
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Mapping, Sequence

from .core import Category, NatFamily
from .errors import AnnCatError, ArityError, TermSyntaxError, UnknownName
from .report import DiagramReport, Failure

# ---------------------------------------------------------------------------
# abstract syntax


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: str  # "0" or "1"


@dataclass(frozen=True)
class ObjOp:
    op: str  # "oplus" | "otimes"
    left: Any
    right: Any


@dataclass(frozen=True)
class ObjApp:
    functor: str
    arg: Any


@dataclass(frozen=True)
class Id:
    obj: Any


@dataclass(frozen=True)
class Fam:
    name: str
    args: tuple


@dataclass(frozen=True)
class Inv:
    term: Any


@dataclass(frozen=True)
class Comp:
    outer: Any
    inner: Any


@dataclass(frozen=True)
class MorOp:
    op: str
    left: Any
    right: Any


@dataclass(frozen=True)
class MorApp:
    functor: str
    arg: Any


OPS = ("oplus", "otimes")
BUILTINS = ("id", "inv", "comp") + OPS

ARITIES = {
    "aplus": 3, "c": 2, "g": 1, "d": 1, "a": 3, "l": 1, "r": 1, "L": 3, "R": 3,
    "v": 4, "Lhat": 1, "Rhat": 1,
    "Fbreve": 2, "Ftilde": 2, "Fzero": 0, "Funit": 0,
    "Gbreve": 2, "Gtilde": 2, "Gzero": 0, "Gunit": 0,
    "alpha": 1,
}
FUNCTORS = frozenset({"F", "G"})


@dataclass(frozen=True)
class Registry:
    arities: Mapping[str, int] = field(default_factory=lambda: dict(ARITIES))
    functors: frozenset = FUNCTORS

    def __hash__(self):
        return hash((tuple(sorted(self.arities.items())), self.functors))


DEFAULT_REGISTRY = Registry()


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<digit>[01])|(?P<punct>[()\[\],:=]))")


class _Parser:
    def __init__(self, src: str, registry: Registry):
        self.src = src
        self.registry = registry
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(src):
            if src[pos:].strip() == "":
                break
            m = _TOKEN.match(src, pos)
            if not m or m.end() == pos:
                raise TermSyntaxError("unexpected character", src, pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    # token helpers
    def peek(self, k: int = 0):
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else ("eof", "", len(self.src))

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            raise TermSyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", self.src, tok[2])
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    # grammar
    def obj(self):
        kind, value, pos = self.peek()
        if kind == "digit":
            self.i += 1
            return Const(value)
        if kind != "ident":
            raise TermSyntaxError("object expression expected", self.src, pos)
        self.i += 1
        if self.peek()[1] == "(":
            self.take("(")
            if value in OPS:
                left = self.obj()
                self.take(",")
                right = self.obj()
                self.take(")")
                return ObjOp(value, left, right)
            if value in self.registry.functors:
                arg = self.obj()
                self.take(")")
                return ObjApp(value, arg)
            raise UnknownName(f"unknown object operation {value!r} at position {pos}")
        if self.peek()[1] == "[":
            raise TermSyntaxError(f"morphism {value!r} where an object was expected", self.src, pos)
        return Var(value)

    def term(self):
        kind, value, pos = self.peek()
        if kind != "ident":
            raise TermSyntaxError("morphism term expected", self.src, pos)
        self.i += 1
        nxt = self.peek()[1]
        if nxt == "[":
            self.take("[")
            if value not in self.registry.arities:
                raise UnknownName(f"unregistered constraint name {value!r} at position {pos}")
            args = []
            if self.peek()[1] != "]":
                args.append(self.obj())
                while self.peek()[1] == ",":
                    self.take(",")
                    args.append(self.obj())
            self.take("]")
            want = self.registry.arities[value]
            if len(args) != want:
                raise ArityError(f"{value} takes {want} arguments, got {len(args)} at position {pos}")
            return Fam(value, tuple(args))
        if nxt != "(":
            raise TermSyntaxError(f"expected '[' or '(' after {value!r}", self.src, self.peek()[2])
        self.take("(")
        if value == "id":
            o = self.obj()
            self.take(")")
            return Id(o)
        if value == "inv":
            t = self.term()
            self.take(")")
            return Inv(t)
        if value == "comp" or value in OPS:
            left = self.term()
            self.take(",")
            right = self.term()
            self.take(")")
            return Comp(left, right) if value == "comp" else MorOp(value, left, right)
        if value in self.registry.functors:
            t = self.term()
            self.take(")")
            return MorApp(value, t)
        raise UnknownName(f"unknown morphism operation {value!r} at position {pos}")


@lru_cache(maxsize=4096)
def _parse_term_cached(src: str, registry: Registry):
    p = _Parser(src, registry)
    t = p.term()
    if not p.at_end():
        raise TermSyntaxError("trailing input", src, p.peek()[2])
    return t


@lru_cache(maxsize=4096)
def _parse_obj_cached(src: str, registry: Registry):
    p = _Parser(src, registry)
    o = p.obj()
    if not p.at_end():
        raise TermSyntaxError("trailing input", src, p.peek()[2])
    return o


def parse_term(src: str, registry: Registry = DEFAULT_REGISTRY):
    """Parse a morphism term."""
    return _parse_term_cached(src, registry)


def parse_obj(src: str, registry: Registry = DEFAULT_REGISTRY):
    """Parse an object expression."""
    return _parse_obj_cached(src, registry)


def to_text(node) -> str:
    """Print a term or object expression back in the input grammar."""
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return node.value
    if isinstance(node, (ObjOp, MorOp)):
        return f"{node.op}({to_text(node.left)},{to_text(node.right)})"
    if isinstance(node, (ObjApp, MorApp)):
        return f"{node.functor}({to_text(node.arg)})"
    if isinstance(node, Id):
        return f"id({to_text(node.obj)})"
    if isinstance(node, Fam):
        return f"{node.name}[{','.join(to_text(a) for a in node.args)}]"
    if isinstance(node, Inv):
        return f"inv({to_text(node.term)})"
    if isinstance(node, Comp):
        return f"comp({to_text(node.outer)},{to_text(node.inner)})"
    raise TypeError(f"not a term: {node!r}")


def free_variables(node) -> list[str]:
    out: list[str] = []

    def walk(n):
        if isinstance(n, Var):
            if n.name not in out:
                out.append(n.name)
        elif isinstance(n, (ObjOp, MorOp)):
            walk(n.left)
            walk(n.right)
        elif isinstance(n, (ObjApp, MorApp)):
            walk(n.arg)
        elif isinstance(n, Id):
            walk(n.obj)
        elif isinstance(n, Fam):
            for a in n.args:
                walk(a)
        elif isinstance(n, Inv):
            walk(n.term)
        elif isinstance(n, Comp):
            walk(n.outer)
            walk(n.inner)

    walk(node)
    return out


# ---------------------------------------------------------------------------
# evaluation environments


class Env:
    """What names mean: a category, its operations, families and functors.

    ``families`` maps a name to ``(NatFamily, arg_env)``; arguments of the
    family are evaluated in ``arg_env`` (None means this env).  ``functors``
    maps a name to ``(FunctorData, source_env)``.
    """

    def __init__(self, category: Category, plus=None, times=None, zero=None, one=None,
                 families: Mapping | None = None, functors: Mapping | None = None):
        self.category = category
        self.plus = plus
        self.times = times
        self.zero = zero
        self.one = one
        self.families: dict[str, tuple[NatFamily, Env | None]] = dict(families or {})
        self.functors: dict[str, tuple[Any, Env]] = dict(functors or {})

    def register(self, family: NatFamily, name: str | None = None, arg_env: "Env | None" = None) -> "Env":
        self.families[name or family.name] = (family, arg_env)
        return self

    def extend(self, families: Mapping[str, Any] = (), functors: Mapping[str, tuple] = (),
               arg_env: "Env | None" = None) -> "Env":
        """A copy with extra families (evaluated with ``arg_env``) and functors."""
        out = Env(self.category, self.plus, self.times, self.zero, self.one, self.families, self.functors)
        for name, fam in dict(families).items():
            out.families[name] = (fam, arg_env)
        out.functors.update(dict(functors))
        return out

    def family(self, name: str) -> NatFamily:
        try:
            return self.families[name][0]
        except KeyError:
            raise UnknownName(f"family {name!r} is not available here") from None

    def bifunctor(self, op: str):
        bf = self.plus if op == "oplus" else self.times
        if bf is None:
            raise UnknownName(f"operation {op!r} is not available here")
        return bf

    def constant(self, value: str):
        obj = self.zero if value == "0" else self.one
        if obj is None:
            raise UnknownName(f"object {value!r} is not available here")
        return obj


def env_of(struct) -> Env:
    """The evaluation environment of a category or structure bundle."""
    if isinstance(struct, Env):
        return struct
    if isinstance(struct, Category):
        return Env(struct)
    if hasattr(struct, "env"):
        return struct.env()
    raise TypeError(f"no environment for {struct!r}")


def compile_obj(node, env: Env, index: Mapping[str, int]) -> Callable[[tuple], Any]:
    """Compile an object expression; variables read positions of the binding."""
    if isinstance(node, Var):
        try:
            i = index[node.name]
        except KeyError:
            raise UnknownName(f"unbound variable {node.name!r}") from None
        return lambda b: b[i]
    if isinstance(node, Const):
        obj = env.constant(node.value)
        return lambda b: obj
    if isinstance(node, ObjOp):
        bf = env.bifunctor(node.op)
        left, right = compile_obj(node.left, env, index), compile_obj(node.right, env, index)
        fn = bf.obj
        return lambda b: fn(left(b), right(b))
    if isinstance(node, ObjApp):
        functor, src_env = _functor(env, node.functor)
        inner = compile_obj(node.arg, src_env, index)
        fo = functor.obj
        return lambda b: fo(inner(b))
    raise TypeError(f"not an object expression: {node!r}")


def compile_obj_on_morphisms(node, env: Env, index: Mapping[str, int]) -> Callable[[tuple], Any]:
    """Compile an object expression as a functor in its variables: variables bind morphisms."""
    cat = env.category
    if isinstance(node, Var):
        i = index[node.name]
        return lambda b: b[i]
    if isinstance(node, Const):
        e = cat.identity(env.constant(node.value))
        return lambda b: e
    if isinstance(node, ObjOp):
        bf = env.bifunctor(node.op)
        left = compile_obj_on_morphisms(node.left, env, index)
        right = compile_obj_on_morphisms(node.right, env, index)
        fn = bf.mor
        return lambda b: fn(left(b), right(b))
    if isinstance(node, ObjApp):
        functor, src_env = _functor(env, node.functor)
        inner = compile_obj_on_morphisms(node.arg, src_env, index)
        fm = functor.mor
        return lambda b: fm(inner(b))
    raise TypeError(f"not an object expression: {node!r}")


def _functor(env: Env, name: str):
    try:
        return env.functors[name]
    except KeyError:
        raise UnknownName(f"functor {name!r} is not available here") from None


def compile_term(node, env: Env, index: Mapping[str, int]) -> Callable[[tuple], Any]:
    """Compile a morphism term to a closure ``binding -> morphism``."""
    cat = env.category
    if isinstance(node, Id):
        o = compile_obj(node.obj, env, index)
        ident = cat.identity
        return lambda b: ident(o(b))
    if isinstance(node, Fam):
        fam = env.family(node.name)
        arg_env = env.families[node.name][1] or env
        args = [compile_obj(a, arg_env, index) for a in node.args]
        if not args:
            return lambda b: fam()
        if len(args) == 1:
            a0 = args[0]
            return lambda b: fam(a0(b))
        if len(args) == 2:
            a0, a1 = args
            return lambda b: fam(a0(b), a1(b))
        if len(args) == 3:
            a0, a1, a2 = args
            return lambda b: fam(a0(b), a1(b), a2(b))
        return lambda b: fam(*(a(b) for a in args))
    if isinstance(node, Inv):
        t = compile_term(node.term, env, index)
        inv = cat.inverse
        return lambda b: inv(t(b))
    if isinstance(node, Comp):
        g, f = compile_term(node.outer, env, index), compile_term(node.inner, env, index)
        comp = cat.compose
        return lambda b: comp(g(b), f(b))
    if isinstance(node, MorOp):
        bf = env.bifunctor(node.op)
        left, right = compile_term(node.left, env, index), compile_term(node.right, env, index)
        fn = bf.mor
        return lambda b: fn(left(b), right(b))
    if isinstance(node, MorApp):
        functor, src_env = _functor(env, node.functor)
        inner = compile_term(node.arg, src_env, index)
        fm = functor.mor
        return lambda b: fm(inner(b))
    raise TypeError(f"not a morphism term: {node!r}")


def eval_term(env, t, binding: Mapping[str, Any] | None = None):
    """Evaluate a morphism term (text or AST) at a binding of variables to objects."""
    env = env_of(env)
    node = parse_term(t) if isinstance(t, str) else t
    binding = dict(binding or {})
    names = list(binding)
    fn = compile_term(node, env, {n: i for i, n in enumerate(names)})
    return fn(tuple(binding[n] for n in names))


def eval_obj(env, o, binding: Mapping[str, Any] | None = None):
    env = env_of(env)
    node = parse_obj(o) if isinstance(o, str) else o
    binding = dict(binding or {})
    names = list(binding)
    fn = compile_obj(node, env, {n: i for i, n in enumerate(names)})
    return fn(tuple(binding[n] for n in names))


class ObjShape:
    """An object expression in fixed variables, evaluable on objects or morphisms."""

    def __init__(self, src: str, variables: Sequence[str], env: Env):
        self.node = parse_obj(src)
        index = {v: i for i, v in enumerate(variables)}
        self.objects = compile_obj(self.node, env, index)
        self._env, self._index = env, index
        self._mor = None

    def morphisms(self, fs: tuple):
        if self._mor is None:
            self._mor = compile_obj_on_morphisms(self.node, self._env, self._index)
        return self._mor(fs)


# ---------------------------------------------------------------------------
# equations


@dataclass(frozen=True)
class Equation:
    id: str
    variables: tuple
    lhs: Any
    rhs: Any
    cite: str = ""

    @property
    def text(self) -> str:
        head = "forall " + " ".join(self.variables) + " : " if self.variables else ""
        return f"{head}{to_text(self.lhs)} = {to_text(self.rhs)}"


def parse_equation(src: str, id: str = "", cite: str = "", registry: Registry = DEFAULT_REGISTRY) -> Equation:
    p = _Parser(src, registry)
    p.take("forall")
    variables = []
    while p.peek()[0] == "ident":
        variables.append(p.take(kind="ident")[1])
    if not variables:
        raise TermSyntaxError("forall needs at least one variable", src, p.peek()[2])
    p.take(":")
    lhs = p.term()
    p.take("=")
    rhs = p.term()
    if not p.at_end():
        raise TermSyntaxError("trailing input", src, p.peek()[2])
    return Equation(id, tuple(variables), lhs, rhs, cite)


_JOBS: contextvars.ContextVar[int] = contextvars.ContextVar("anncat_jobs", default=1)


@contextlib.contextmanager
def parallel(jobs: int):
    """Partition equation checks across ``jobs`` worker threads."""
    token = _JOBS.set(max(1, int(jobs)))
    try:
        yield
    finally:
        _JOBS.reset(token)


def check_equation(env, eq: Equation, domain: Sequence | None = None, *, bounded: bool | None = None,
                   fail_fast: bool = False, jobs: int | None = None) -> DiagramReport:
    """Evaluate both sides of ``eq`` at every binding of its variables.

    Bindings range over ``domain`` (default: the objects enumerated by the
    environment's category), in lexicographic order of object indices.
    """
    env = env_of(env)
    cat = env.category
    objs = list(cat.objects if domain is None else domain)
    if bounded is None:
        bounded = cat.bounded
    report = DiagramReport(eq.id, eq.cite, tuple(eq.variables), bounded=bounded)
    index = {v: i for i, v in enumerate(eq.variables)}
    try:
        lhs = compile_term(eq.lhs, env, index)
        rhs = compile_term(eq.rhs, env, index)
    except AnnCatError as exc:
        report.failures.append(Failure((), None, None, "ill-typed", f"{type(exc).__name__}: {exc}"))
        return report

    k = len(eq.variables)
    n = len(objs)
    orders = list(itertools.product(range(n), repeat=k))

    def run(chunk):
        failures = []
        for order in chunk:
            b = tuple(objs[i] for i in order)
            try:
                left = lhs(b)
                right = rhs(b)
                ends = (cat.dom(left), cat.cod(left)), (cat.dom(right), cat.cod(right))
            except AnnCatError as exc:
                failures.append(Failure(b, None, None, "ill-typed", f"{type(exc).__name__}: {exc}", order))
                if fail_fast:
                    break
                continue
            if ends[0] != ends[1]:
                failures.append(Failure(b, left, right, "endpoint", "", order))
            elif left != right:
                failures.append(Failure(b, left, right, "mismatch", "", order))
            else:
                continue
            if fail_fast:
                break
        return failures

    jobs = jobs or _JOBS.get()
    if jobs > 1 and len(orders) > 1 and not fail_fast:
        size = -(-len(orders) // jobs)
        chunks = [orders[i:i + size] for i in range(0, len(orders), size)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(run, chunks):
                report.failures.extend(part)
    else:
        report.failures.extend(run(orders))
    report.instances = len(orders)
    return report.sort()

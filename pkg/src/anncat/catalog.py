"""The coherence diagrams, as equations in the term language.

Each entry carries the diagram label it encodes, e.g. ``(2.12)``.  The
monoidal diagrams come in two variants: keys without suffix use the
multiplicative names (otimes, a, l, r, 1); keys ending in ``+`` use the
additive ones (oplus, aplus, g, d, 0).

Readings that differ from the printed diagrams:

* (2.5): the lower-left edge is a[X,Z,Y]; it is the only index making the
  composite well typed.
* (2.12): the lower-left object is read as ((AX)+(BX))+((AY)+(BY)), the
  source of v.
* Prop 3.1: the squares combine the zero isomorphisms with identities by
  oplus, since the morphisms live in a sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .terms import Equation, parse_term


def seq(*steps: str) -> str:
    """Compose steps in diagrammatic order: ``seq(f, g, h)`` is h after g after f."""
    out = steps[0]
    for s in steps[1:]:
        out = f"comp({s},{out})"
    return out


@dataclass(frozen=True)
class Entry:
    key: str
    cite: str
    variables: tuple
    lhs: str
    rhs: str

    @property
    def text(self) -> str:
        head = "forall " + " ".join(self.variables) + " : " if self.variables else ""
        return f"{head}{self.lhs} = {self.rhs}"

    def equation(self) -> Equation:
        return _equation(self)


@lru_cache(maxsize=None)
def _equation(entry: Entry) -> Equation:
    return Equation(entry.key, entry.variables, parse_term(entry.lhs), parse_term(entry.rhs), entry.cite)


SIDES = {
    "times": dict(op="otimes", a="a", l="l", r="r", c="c", unit="1", tag="", Ft="Ftilde", Gt="Gtilde",
                  Fu="Funit", sym="*"),
    "plus": dict(op="oplus", a="aplus", l="g", r="d", c="c", unit="0", tag="+", Ft="Fbreve", Gt="Gbreve",
                 Fu="Fzero", sym="+"),
}

V_TERM = seq(
    "inv(aplus[A,B,oplus(C,D)])",
    "oplus(id(A),aplus[B,C,D])",
    "oplus(id(A),oplus(c[B,C],id(D)))",
    "oplus(id(A),inv(aplus[C,B,D]))",
    "aplus[A,C,oplus(B,D)]",
)
"""v[A,B,C,D] : (A+B)+(C+D) -> (A+C)+(B+D), built from aplus, c and id."""


def _monoidal(side: str) -> list[Entry]:
    s = SIDES[side]
    op, a, l, r, c, u, tag = s["op"], s["a"], s["l"], s["r"], s["c"], s["unit"], s["tag"]
    return [
        Entry(f"2.1{tag}", "(2.1)", ("X", "Y", "Z", "W"),
              seq(f"{op}(id(X),{a}[Y,Z,W])", f"{a}[X,{op}(Y,Z),W]", f"{op}({a}[X,Y,Z],id(W))"),
              seq(f"{a}[X,Y,{op}(Z,W)]", f"{a}[{op}(X,Y),Z,W]")),
        Entry(f"2.2{tag}", "(2.2)", ("X", "Y"),
              seq(f"{a}[X,{u},Y]", f"{op}({r}[X],id(Y))"),
              f"{op}(id(X),{l}[Y])"),
        # symmetric part; (2.5) with the type-correct a[X,Z,Y]
        Entry(f"2.5{tag}", "(2.5)", ("X", "Y", "Z"),
              seq(f"{a}[X,Y,Z]", f"{c}[{op}(X,Y),Z]", f"{a}[Z,X,Y]"),
              seq(f"{op}(id(X),{c}[Y,Z])", f"{a}[X,Z,Y]", f"{op}({c}[X,Z],id(Y))")),
        Entry(f"cc=id{tag}", "c.c=id", ("X", "Y"),
              f"comp({c}[X,Y],{c}[Y,X])", f"id({op}(Y,X))"),
    ]


def _functor(side: str) -> list[Entry]:
    s = SIDES[side]
    op, a, l, r, c, u, tag, Ft, Gt, Fu = (s[k] for k in ("op", "a", "l", "r", "c", "unit", "tag", "Ft", "Gt", "Fu"))
    return [
        Entry(f"2.3{tag}", "(2.3)", ("X", "Y", "Z"),
              seq(f"{Ft}[X,{op}(Y,Z)]", f"{op}(id(F(X)),{Ft}[Y,Z])", f"{a}[F(X),F(Y),F(Z)]"),
              seq(f"F({a}[X,Y,Z])", f"{Ft}[{op}(X,Y),Z]", f"{op}({Ft}[X,Y],id(F(Z)))")),
        Entry(f"2.4{tag}", "(2.4)", ("X",),
              seq(f"{Ft}[{u},X]", f"{op}({Fu}[],id(F(X)))", f"{l}[F(X)]"),
              f"F({l}[X])"),
        Entry(f"2.4'{tag}", "(2.4')", ("X",),
              seq(f"{Ft}[X,{u}]", f"{op}(id(F(X)),{Fu}[])", f"{r}[F(X)]"),
              f"F({r}[X])"),
        Entry(f"2.6{tag}", "(2.6)", ("X", "Y"),
              seq(f"{Ft}[X,Y]", f"{c}[F(X),F(Y)]"),
              seq(f"F({c}[X,Y])", f"{Ft}[Y,X]")),
        Entry(f"2.9{tag}", "(2.9)", ("X", "Y"),
              seq(f"{Ft}[X,Y]", f"{op}(alpha[X],alpha[Y])"),
              seq(f"alpha[{op}(X,Y)]", f"{Gt}[X,Y]")),
    ]


ANN = [
    Entry("2.10", "(2.10)", ("A", "B", "X", "Y"),
          seq("a[A,B,oplus(X,Y)]", "L[otimes(A,B),X,Y]"),
          seq("otimes(id(A),L[B,X,Y])", "L[A,otimes(B,X),otimes(B,Y)]", "oplus(a[A,B,X],a[A,B,Y])")),
    Entry("2.10'", "(2.10')", ("A", "B", "X", "Y"),
          seq("a[oplus(X,Y),B,A]", "otimes(R[X,Y,B],id(A))", "R[otimes(X,B),otimes(Y,B),A]"),
          seq("R[X,Y,otimes(B,A)]", "oplus(a[X,B,A],a[Y,B,A])")),
    Entry("2.11", "(2.11)", ("A", "X", "Y", "B"),
          seq("otimes(id(A),R[X,Y,B])", "L[A,otimes(X,B),otimes(Y,B)]", "oplus(a[A,X,B],a[A,Y,B])"),
          seq("a[A,oplus(X,Y),B]", "otimes(L[A,X,Y],id(B))", "R[otimes(A,X),otimes(A,Y),B]")),
    Entry("2.12", "(2.12)", ("A", "B", "X", "Y"),
          seq("L[oplus(A,B),X,Y]", "oplus(R[A,B,X],R[A,B,Y])",
              "v[otimes(A,X),otimes(B,X),otimes(A,Y),otimes(B,Y)]"),
          seq("R[A,B,oplus(X,Y)]", "oplus(L[A,X,Y],L[B,X,Y])")),
    Entry("2.13", "(2.13)", ("X", "Y"),
          seq("L[1,X,Y]", "oplus(l[X],l[Y])"), "l[oplus(X,Y)]"),
    Entry("2.13'", "(2.13')", ("X", "Y"),
          seq("R[X,Y,1]", "oplus(r[X],r[Y])"), "r[oplus(X,Y)]"),
]

# Ann-1 with the functors written out: L^A = A*-, breve L[A,-,-];
# R^A = -*A, breve R[-,-,A].  These are (2.3) and (2.6) for the operation oplus.
ANN1 = [
    Entry("Ann-1/L:2.3+", "(2.3)", ("A", "X", "Y", "Z"),
          seq("L[A,X,oplus(Y,Z)]", "oplus(id(otimes(A,X)),L[A,Y,Z])",
              "aplus[otimes(A,X),otimes(A,Y),otimes(A,Z)]"),
          seq("otimes(id(A),aplus[X,Y,Z])", "L[A,oplus(X,Y),Z]", "oplus(L[A,X,Y],id(otimes(A,Z)))")),
    Entry("Ann-1/L:2.6+", "(2.6)", ("A", "X", "Y"),
          seq("L[A,X,Y]", "c[otimes(A,X),otimes(A,Y)]"),
          seq("otimes(id(A),c[X,Y])", "L[A,Y,X]")),
    Entry("Ann-1/R:2.3+", "(2.3)", ("A", "X", "Y", "Z"),
          seq("R[X,oplus(Y,Z),A]", "oplus(id(otimes(X,A)),R[Y,Z,A])",
              "aplus[otimes(X,A),otimes(Y,A),otimes(Z,A)]"),
          seq("otimes(aplus[X,Y,Z],id(A))", "R[oplus(X,Y),Z,A]", "oplus(R[X,Y,A],id(otimes(Z,A)))")),
    Entry("Ann-1/R:2.6+", "(2.6)", ("A", "X", "Y"),
          seq("R[X,Y,A]", "c[otimes(X,A),otimes(Y,A)]"),
          seq("otimes(c[X,Y],id(A))", "R[Y,X,A]")),
]

ANN_FUNCTOR = [
    Entry("2.15", "(2.15)", ("X", "Y", "Z"),
          seq("Ftilde[X,oplus(Y,Z)]", "otimes(id(F(X)),Fbreve[Y,Z])", "L[F(X),F(Y),F(Z)]"),
          seq("F(L[X,Y,Z])", "Fbreve[otimes(X,Y),otimes(X,Z)]", "oplus(Ftilde[X,Y],Ftilde[X,Z])")),
    Entry("2.15'", "(2.15')", ("X", "Y", "Z"),
          seq("Ftilde[oplus(X,Y),Z]", "otimes(Fbreve[X,Y],id(F(Z)))", "R[F(X),F(Y),F(Z)]"),
          seq("F(R[X,Y,Z])", "Fbreve[otimes(X,Z),otimes(Y,Z)]", "oplus(Ftilde[X,Z],Ftilde[Y,Z])")),
]

ZERO_SOLVE = Entry("3.1a", "Prop 3.1", ("A", "X"),
                   seq("L[A,0,X]", "oplus(Lhat[A],id(otimes(A,X)))", "g[otimes(A,X)]"),
                   "otimes(id(A),g[X])")

ZERO = [
    ZERO_SOLVE,
    Entry("3.1b", "Prop 3.1", ("A", "X"),
          seq("L[A,X,0]", "oplus(id(otimes(A,X)),Lhat[A])", "d[otimes(A,X)]"),
          "otimes(id(A),d[X])"),
    Entry("3.1c", "Prop 3.1", ("A", "X"),
          seq("R[0,X,A]", "oplus(Rhat[A],id(otimes(X,A)))", "g[otimes(X,A)]"),
          "otimes(g[X],id(A))"),
    Entry("3.1d", "Prop 3.1", ("A", "X"),
          seq("R[X,0,A]", "oplus(id(otimes(X,A)),Rhat[A])", "d[otimes(X,A)]"),
          "otimes(d[X],id(A))"),
]

ZERO_PROPS = [
    Entry("3.2i-L", "Prop 3.2 i", ("X", "Y"),
          seq("R[X,Y,0]", "oplus(Lhat[X],Lhat[Y])", "g[0]"), "Lhat[oplus(X,Y)]"),
    Entry("3.2i-R", "Prop 3.2 i", ("X", "Y"),
          seq("L[0,X,Y]", "oplus(Rhat[X],Rhat[Y])", "g[0]"), "Rhat[oplus(X,Y)]"),
    Entry("3.2i-g0=d0", "Prop 3.2 i", (), "g[0]", "d[0]"),
    Entry("3.2ii-a", "Prop 3.2 ii", ("X", "Y"),
          seq("otimes(id(X),Lhat[Y])", "Lhat[X]"), seq("a[X,Y,0]", "Lhat[otimes(X,Y)]")),
    Entry("3.2ii-b", "Prop 3.2 ii", ("X", "Y"),
          "Rhat[otimes(X,Y)]", seq("a[0,X,Y]", "otimes(Rhat[X],id(Y))", "Rhat[Y]")),
    Entry("3.2ii-c", "Prop 3.2 ii", ("X", "Y"),
          seq("a[X,0,Y]", "otimes(Lhat[X],id(Y))", "Rhat[Y]"), seq("otimes(id(X),Rhat[Y])", "Lhat[X]")),
    Entry("3.2iii-L", "Prop 3.2 iii", (), "Lhat[1]", "l[0]"),
    Entry("3.2iii-R", "Prop 3.2 iii", (), "Rhat[1]", "r[0]"),
]

CATALOG: dict[str, Entry] = {}
for _side in ("times", "plus"):
    for _e in _monoidal(_side) + _functor(_side):
        CATALOG[_e.key] = _e
for _e in ANN + ANN1 + ANN_FUNCTOR + ZERO + ZERO_PROPS:
    CATALOG[_e.key] = _e


def equation(key: str) -> Equation:
    return CATALOG[key].equation()


def side_key(base: str, side: str) -> str:
    """Catalog key of a monoidal/functor diagram for the given operation."""
    return base + SIDES[side]["tag"]

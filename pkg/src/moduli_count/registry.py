"""Every closed-form point count and virtual Hodge polynomial, in one table.

Formulas are small expression trees.  Exponents and coefficients are short
integer expressions in ``m`` (number of generators), ``n`` (matrix size)
and ``k`` (index of an enclosing product).  Each leaf term carries a
``bump`` that is added to its coefficient; it is zero for the real
formulas and only set by :meth:`Registry.perturbed` for fault injection.

Counts are polynomials in ``q``; VHP and VHP_c are polynomials in
``z = xy``.  The VHP_c entries are transcribed separately from the counts
so that their agreement under q <-> z is a real check.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Iterator

from .laurent import LaurentPoly


def _int_expr(expr: str, m: int, n: int, k: int) -> int:
    value = eval(expr, {"__builtins__": {}}, {"m": m, "n": n, "k": k})  # noqa: S307
    if not isinstance(value, int):
        raise TypeError(f"{expr!r} did not evaluate to an integer")
    return value


class Node:
    def __add__(self, other):
        return Sum((self, _node(other)))

    def __radd__(self, other):
        return Sum((_node(other), self))

    def __sub__(self, other):
        return Sum((self, -_node(other)))

    def __rsub__(self, other):
        return Sum((_node(other), -self))

    def __mul__(self, other):
        return Prod((self, _node(other)))

    def __rmul__(self, other):
        return Prod((_node(other), self))

    def __truediv__(self, other):
        return Quot(self, _node(other))

    def __pow__(self, exp: str):
        return Power(self, str(exp))

    def __neg__(self):
        return Prod((Term("-1", "0"), self))


@dataclass(frozen=True)
class Term(Node):
    """``coef * x**exp``."""

    coef: str
    exp: str
    bump: int = 0

    def __neg__(self):
        return Term(f"-({self.coef})", self.exp, -self.bump)

    def show(self) -> str:
        c = self.coef if not self.bump else f"({self.coef}{self.bump:+d})"
        if self.exp == "0":
            return c
        mono = "x" if self.exp == "1" else f"x^({self.exp})"
        return mono if c == "1" else f"{c}*{mono}"


@dataclass(frozen=True)
class Sum(Node):
    parts: tuple

    def show(self) -> str:
        return "(" + " + ".join(p.show() for p in self.parts) + ")"


@dataclass(frozen=True)
class Prod(Node):
    parts: tuple

    def show(self) -> str:
        return "*".join(p.show() for p in self.parts)


@dataclass(frozen=True)
class Quot(Node):
    num: Node
    den: Node

    def show(self) -> str:
        return f"[{self.num.show()}] / [{self.den.show()}]"


@dataclass(frozen=True)
class Power(Node):
    base: Node
    exp: str

    def show(self) -> str:
        return f"{self.base.show()}^({self.exp})"


@dataclass(frozen=True)
class RangeProd(Node):
    """Product of ``body`` for k = lo .. hi inclusive."""

    lo: str
    hi: str
    body: Node

    def show(self) -> str:
        return f"prod[k={self.lo}..{self.hi}]{self.body.show()}"


def _node(v) -> Node:
    if isinstance(v, Node):
        return v
    if isinstance(v, int):
        return Term(str(v), "0")
    raise TypeError(f"cannot use {type(v).__name__} in a formula")


def x(exp: str | int = "1") -> Term:
    return Term("1", str(exp))


def const(expr: str | int) -> Term:
    return Term(str(expr), "0")


def evaluate(node: Node, var: str, m: int, n: int = 2, k: int = 0) -> LaurentPoly:
    if isinstance(node, Term):
        coef = _int_expr(node.coef, m, n, k) + node.bump
        return LaurentPoly.monomial(_int_expr(node.exp, m, n, k), coef, var)
    if isinstance(node, Sum):
        acc = LaurentPoly({}, var)
        for p in node.parts:
            acc = acc + evaluate(p, var, m, n, k)
        return acc
    if isinstance(node, Prod):
        acc = LaurentPoly.const(1, var)
        for p in node.parts:
            acc = acc * evaluate(p, var, m, n, k)
        return acc
    if isinstance(node, Quot):
        return evaluate(node.num, var, m, n, k).exact_div(evaluate(node.den, var, m, n, k))
    if isinstance(node, Power):
        return evaluate(node.base, var, m, n, k) ** _int_expr(node.exp, m, n, k)
    if isinstance(node, RangeProd):
        acc = LaurentPoly.const(1, var)
        for kk in range(_int_expr(node.lo, m, n, k), _int_expr(node.hi, m, n, k) + 1):
            acc = acc * evaluate(node.body, var, m, n, kk)
        return acc
    raise TypeError(f"unknown node {node!r}")


def terms_of(node: Node) -> Iterator[Term]:
    """Leaf terms in depth-first order."""
    if isinstance(node, Term):
        yield node
    elif isinstance(node, (Sum, Prod)):
        for p in node.parts:
            yield from terms_of(p)
    elif isinstance(node, Quot):
        yield from terms_of(node.num)
        yield from terms_of(node.den)
    elif isinstance(node, Power):
        yield from terms_of(node.base)
    elif isinstance(node, RangeProd):
        yield from terms_of(node.body)


def bump_term(node: Node, index: int, delta: int) -> Node:
    """Copy of node with ``delta`` added to the coefficient of leaf ``index``."""
    counter = iter(range(10**9))

    def walk(nd: Node) -> Node:
        if isinstance(nd, Term):
            return dataclasses.replace(nd, bump=nd.bump + delta) if next(counter) == index else nd
        if isinstance(nd, (Sum, Prod)):
            return type(nd)(tuple(walk(p) for p in nd.parts))
        if isinstance(nd, Quot):
            return Quot(walk(nd.num), walk(nd.den))
        if isinstance(nd, Power):
            return Power(walk(nd.base), nd.exp)
        if isinstance(nd, RangeProd):
            return RangeProd(nd.lo, nd.hi, walk(nd.body))
        raise TypeError(f"unknown node {nd!r}")

    out = walk(node)
    if index >= next(counter):
        raise IndexError(f"formula has no term {index}")
    return out


# -- keys ---------------------------------------------------------------------

class Space(str, enum.Enum):
    REP = "rep"
    CH = "ch"
    AUX = "aux"


class FStratum(str, enum.Enum):
    SC = "sc"
    SS = "ss"
    U = "u"
    BOREL = "borel"
    AIR = "air"
    TOTAL = "total"
    RK2 = "rk2"
    # auxiliary quantities
    AID = "aid"
    PGL2 = "pgl2"


class Kind(str, enum.Enum):
    COUNT = "count"
    VHP = "vhp"
    VHPC = "vhpc"


@dataclass(frozen=True)
class FormulaKey:
    """Identifies one formula.

    ``general`` selects the matrix-size-generic form, evaluated at ``n``;
    otherwise the dedicated n = 2 form is used and ``n`` must be 2.
    """

    space: Space
    stratum: FStratum
    kind: Kind
    n: int = 2
    general: bool = False

    def __post_init__(self):
        object.__setattr__(self, "space", Space(self.space))
        object.__setattr__(self, "stratum", FStratum(self.stratum))
        object.__setattr__(self, "kind", Kind(self.kind))
        if not self.general and self.n != 2:
            raise ValueError("only the general-n formulas accept n != 2")

    @property
    def var(self) -> str:
        return "q" if self.kind is Kind.COUNT else "z"

    def label(self) -> str:
        tail = f"[n={self.n}]" if self.general else ""
        return f"{self.kind.value}({self.space.value},{self.stratum.value}){tail}"

    def table_key(self) -> tuple:
        return (self.space, self.stratum, self.kind, self.general)


R, C, A = Space.REP, Space.CH, Space.AUX
SC, SS, U, B, AIR, TOT = FStratum.SC, FStratum.SS, FStratum.U, FStratum.BOREL, FStratum.AIR, FStratum.TOTAL
COUNT, VHP, VHPC = Kind.COUNT, Kind.VHP, Kind.VHPC

# Dedicated n = 2 forms.  The variable is x: q for counts, z otherwise.
_N2 = {
    # point counts over F_q
    (R, SC, COUNT): x("m"),
    (C, SC, COUNT): x("m"),
    (R, SS, COUNT): x("m+2") * (x("m") - 1),
    (C, SS, COUNT): x("m") * (x("m") - 1),
    (R, U, COUNT): x("m") * (x("m") - 1) * (x() + 1),
    (C, U, COUNT): x("m") * (x("m") - 1) / (x() - 1),
    (R, B, COUNT): (x("m") - x()) * x("m") * (x("m") - 1) * (x() + 1),
    (C, B, COUNT): x("m") * (x("m") - 1) * (x("m-1") - 1) / (x() - 1),
    (R, AIR, COUNT): x("2*m+1") * (x("m") - 1) * (x("m-1") - 1),
    (C, AIR, COUNT): x("2*m") * (x("m") - 1) * (x("m-1") - 1) / (x(2) - 1),
    (R, TOT, COUNT): x("4*m"),
    (C, TOT, COUNT): x("2*m+2") * (x("2*m-3") - x("m-2") - x("m-3") + 1) / (x(2) - 1),
    (A, FStratum.AID, COUNT): x("2*m-1") * (x("2*m") - 1) / (x(2) - 1),
    (A, FStratum.PGL2, COUNT): x() * (x(2) - 1),
    # compactly supported VHP
    (R, SC, VHPC): x("m"),
    (C, SC, VHPC): x("m"),
    (R, SS, VHPC): x("m+2") * (x("m") - 1),
    (C, SS, VHPC): x("m") * (x("m") - 1),
    (R, U, VHPC): x("m") * (x() + 1) * (x("m") - 1),
    (C, U, VHPC): x("m") * (x("m") - 1) / (x() - 1),
    (R, B, VHPC): (x("m") - x()) * x("m") * (x("m") - 1) * (x() + 1),
    (C, B, VHPC): (x("m-1") - 1) / (x() - 1) * x("m") * (x("m") - 1),
    (R, AIR, VHPC): x("2*m+1") * (x("m") - 1) * (x("m-1") - 1),
    (C, AIR, VHPC): x("2*m") * (x("m") - 1) * (x("m-1") - 1) / (x(2) - 1),
    (R, TOT, VHPC): x("4*m"),
    (C, TOT, VHPC): x("2*m+2") * (x("2*m-3") - x("m-2") - x("m-3") + 1) / (x(2) - 1),
    (R, FStratum.RK2, VHPC): x("m") * (x(2) + x() + 1) * (x("m") - 1),
    # ordinary VHP
    (R, SC, VHP): const(1),
    (C, SC, VHP): const(1),
    (R, SS, VHP): 1 - x("m"),
    (C, SS, VHP): 1 - x("m"),
    (R, U, VHP): (1 + x()) * (1 - x("m")),
    (C, U, VHP): (1 - x("m")) / (1 - x()),
    (R, B, VHP): (1 - x("m-1")) * (1 - x("m")) * (1 + x()),
    (C, B, VHP): (1 - x("m")) * (1 - x("m-1")) / (1 - x()),
    (R, AIR, VHP): (1 - x("m")) * (1 - x("m-1")),
    (C, AIR, VHP): (1 - x("m")) * (1 - x("m-1")) / (1 - x(2)),
}

# Forms valid for every matrix size n.
_GENERAL = {
    (R, SC, COUNT): x("m"),
    (C, SC, COUNT): x("m"),
    (R, SC, VHPC): x("m"),
    (C, SC, VHPC): x("m"),
    (R, SC, VHP): const(1),
    (C, SC, VHP): const(1),
    (C, SS, VHPC): x("m*(n-1)") * (x("m") - 1),
    (C, SS, VHP): 1 - x("m"),
    (R, B, COUNT): x("m*(n-1)*(n-2)//2")
    * (x("m") - x()) ** "n-1"
    * RangeProd("0", "n-1", x("m") - const("k"))
    * RangeProd("1", "n", x("k") - 1)
    / (x() - 1) ** "n",
    (R, B, VHPC): x("m*(n-1)*(n-2)//2")
    * (x("m") - x()) ** "n-1"
    * RangeProd("0", "n-1", x("m") - const("k"))
    * RangeProd("1", "n", x("k") - 1)
    / (x() - 1) ** "n",
    (R, B, VHP): (1 - x("m-1")) ** "n-1"
    * RangeProd("1", "n-1", 1 - Term("k", "m"))
    * RangeProd("1", "n", 1 - x("k"))
    / (1 - x()) ** "n",
    (C, B, COUNT): (x("m-1") - 1) ** "n-1"
    * x("(m-1)*(n-1)*(n-2)//2")
    * RangeProd("0", "n-1", x("m") - const("k"))
    / (x() - 1) ** "n-1",
    (C, B, VHPC): x("(m-1)*(n-1)*(n-2)//2")
    * (x("m-1") - 1) ** "n-1"
    * RangeProd("0", "n-1", x("m") - const("k"))
    / (x() - 1) ** "n-1",
    (C, B, VHP): (1 - x("m-1")) ** "n-1"
    * RangeProd("1", "n-1", 1 - Term("k", "m"))
    / (1 - x()) ** "n-1",
}


class Registry:
    """Immutable table FormulaKey -> expression tree."""

    def __init__(self, n2: dict | None = None, general: dict | None = None):
        self._n2 = dict(_N2 if n2 is None else n2)
        self._general = dict(_GENERAL if general is None else general)

    def keys(self) -> list[FormulaKey]:
        out = [FormulaKey(s, st, k) for (s, st, k) in self._n2]
        out += [FormulaKey(s, st, k, 2, True) for (s, st, k) in self._general]
        return out

    def tree(self, key: FormulaKey) -> Node:
        table = self._general if key.general else self._n2
        try:
            return table[(key.space, key.stratum, key.kind)]
        except KeyError:
            raise KeyError(f"no formula for {key.label()}") from None

    def has(self, key: FormulaKey) -> bool:
        table = self._general if key.general else self._n2
        return (key.space, key.stratum, key.kind) in table

    def evaluate(self, key: FormulaKey, m: int) -> LaurentPoly:
        if m < 1:
            raise ValueError("m must be >= 1")
        return evaluate(self.tree(key), key.var, m, key.n)

    def term_count(self, key: FormulaKey) -> int:
        return sum(1 for _ in terms_of(self.tree(key)))

    def perturbed(self, key: FormulaKey, term: int, delta: int = 1) -> "Registry":
        """A copy with one stored coefficient shifted by ``delta``."""
        n2, general = dict(self._n2), dict(self._general)
        table = general if key.general else n2
        k = (key.space, key.stratum, key.kind)
        table[k] = bump_term(table[k], term, delta)
        return Registry(n2, general)


DEFAULT = Registry()

"""2x2 matrices over F_q, PGL_2(F_q), and generated unital subalgebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyTuple, FieldMismatch
from .gf import FieldElement, FieldSpec


class Mat2:
    """A 2x2 matrix ``[[a11, a12], [a21, a22]]`` with entries in one field."""

    __slots__ = ("a11", "a12", "a21", "a22")

    def __init__(self, a11: FieldElement, a12: FieldElement, a21: FieldElement, a22: FieldElement):
        spec = a11.spec
        if not (a12.spec == spec and a21.spec == spec and a22.spec == spec):
            raise FieldMismatch("matrix entries from different fields")
        self.a11, self.a12, self.a21, self.a22 = a11, a12, a21, a22

    @property
    def spec(self) -> FieldSpec:
        return self.a11.spec

    @classmethod
    def from_indices(cls, spec: FieldSpec, entries: Sequence[int]) -> "Mat2":
        """Build from element indices in the order a11, a12, a21, a22."""
        if len(entries) != 4:
            raise ValueError("a 2x2 matrix needs four entries")
        return cls(*(spec.elem(i) for i in entries))

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls.from_indices(spec, (a, b, c, d))

    @classmethod
    def identity(cls, spec: FieldSpec) -> "Mat2":
        return cls.from_indices(spec, (1, 0, 0, 1))

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Mat2":
        return cls.from_indices(spec, (0, 0, 0, 0))

    @classmethod
    def unit(cls, spec: FieldSpec, i: int, j: int) -> "Mat2":
        """The matrix unit E_ij (1-based)."""
        entries = [0, 0, 0, 0]
        entries[2 * (i - 1) + (j - 1)] = 1
        return cls.from_indices(spec, entries)

    @classmethod
    def diag(cls, spec: FieldSpec, a: int, b: int) -> "Mat2":
        return cls.from_indices(spec, (a, 0, 0, b))

    @property
    def entries(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        return (self.a11, self.a12, self.a21, self.a22)

    @property
    def indices(self) -> tuple[int, int, int, int]:
        return (self.a11.index, self.a12.index, self.a21.index, self.a22.index)

    def __repr__(self) -> str:
        r = [e.render() for e in self.entries]
        return f"Mat2([[{r[0]}, {r[1]}], [{r[2]}, {r[3]}]], q={self.spec.q})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.indices == other.indices and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.indices)

    def _check(self, other: "Mat2") -> None:
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(*(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(*(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat2":
        return Mat2(*(-x for x in self.entries))

    def __matmul__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def scale(self, s) -> "Mat2":
        return Mat2(*(s * x for x in self.entries))

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def trace(self) -> FieldElement:
        return self.a11 + self.a22

    def det(self) -> FieldElement:
        return self.a11 * self.a22 - self.a12 * self.a21

    def adjugate(self) -> "Mat2":
        return Mat2(self.a22, -self.a12, -self.a21, self.a11)

    def inverse(self) -> "Mat2":
        return self.adjugate().scale(self.det().inv())

    def is_scalar(self) -> bool:
        return not self.a12 and not self.a21 and self.a11 == self.a22


def char_data(a: Mat2) -> tuple[FieldElement, FieldElement, FieldElement]:
    """Trace, determinant and discriminant ``t^2 - 4d`` of the characteristic polynomial."""
    t, d = a.trace(), a.det()
    return t, d, t * t - 4 * d


class PglElement:
    """A class in PGL_2(F_q), stored by its canonical GL_2 lift.

    The lift is scaled so that the first nonzero entry in the scan order
    a11, a12, a21, a22 equals 1.
    """

    __slots__ = ("rep",)

    def __init__(self, m: Mat2):
        if not m.det():
            raise ValueError("singular matrix has no class in PGL_2")
        lead = next(e for e in m.entries if e)
        self.rep = m.scale(lead.inv())

    def __repr__(self) -> str:
        return f"PglElement({self.rep!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PglElement):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.rep)

    def __matmul__(self, other: "PglElement") -> "PglElement":
        return PglElement(self.rep @ other.rep)

    def inverse(self) -> "PglElement":
        # the adjugate is a scalar multiple of the inverse
        return PglElement(self.rep.adjugate())


def conjugate(g: PglElement, a: Mat2) -> Mat2:
    """``g a g^{-1}`` for any lift of g."""
    return g.rep @ a @ g.rep.inverse()


def enumerate_pgl2(spec: FieldSpec) -> list[PglElement]:
    """All q^3 - q elements of PGL_2(F_q) in ascending order of entry indices."""
    out = []
    for entries in itertools.product(range(spec.q), repeat=4):
        # canonical lifts have their first nonzero entry equal to 1
        lead = next((e for e in entries if e), None)
        if lead != 1:
            continue
        m = Mat2.from_indices(spec, entries)
        if m.det():
            out.append(PglElement(m))
    return out


def pgl2_order(q: int) -> int:
    return q**3 - q


# -- generated subalgebras --------------------------------------------------

class _Echelon:
    """Reduced row-echelon basis of a subspace of F_q^4 (entries as indices)."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence[int]) -> list[int]:
        s = self.spec
        v = list(v)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                v = [s.sub_idx(x, s.mul_idx(c, r)) for x, r in zip(v, row)]
        return v

    def insert(self, v: Sequence[int]) -> bool:
        """Add v to the span; return True if the dimension grew."""
        s = self.spec
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = s.inv_idx(v[piv])
        v = [s.mul_idx(inv, x) for x in v]
        for k, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[k] = [s.sub_idx(x, s.mul_idx(c, y)) for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        order = sorted(range(len(self.rows)), key=self.pivots.__getitem__)
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))


@dataclass(frozen=True)
class SubalgebraBasis:
    dim: int
    basis: tuple[Mat2, ...]

    def contains(self, a: Mat2) -> bool:
        ech = _Echelon(a.spec)
        for b in self.basis:
            ech.insert(b.indices)
        return ech.contains(a.indices)


def subalgebra_dim(mats: Sequence[Mat2]) -> SubalgebraBasis:
    """Span closure of ``{I, A_1, ..., A_m}`` under multiplication.

    Every round multiplies all ordered pairs of current basis vectors and
    inserts the products; it stops once a round adds nothing.
    """
    if not mats:
        raise EmptyTuple("need at least one matrix")
    spec = mats[0].spec
    ech = _Echelon(spec)
    ech.insert(Mat2.identity(spec).indices)
    for a in mats:
        if a.spec != spec:
            raise FieldMismatch("tuple entries from different fields")
        ech.insert(a.indices)
    grew = True
    while grew and len(ech.rows) < 4:
        grew = False
        current = [Mat2.from_indices(spec, r) for r in ech.rows]
        for x in current:
            for y in current:
                grew |= ech.insert((x @ y).indices)
    basis = tuple(Mat2.from_indices(spec, r) for r in ech.rows)
    return SubalgebraBasis(len(basis), basis)

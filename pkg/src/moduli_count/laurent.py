"""Exact one-variable Laurent polynomials with integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InexactDivision


class LaurentPoly:
    """Immutable element of Z[x, 1/x]; the variable name is metadata only.

    >>> z = LaurentPoly.gen("z")
    >>> str((z**2 - 1).exact_div(z - 1))
    'z + 1'
    """

    __slots__ = ("_coeffs", "var")

    def __init__(self, coeffs: Mapping[int, int] | None = None, var: str = "z"):
        self._coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}
        self.var = var

    # -- constructors

    @classmethod
    def gen(cls, var: str = "z") -> "LaurentPoly":
        """The variable itself."""
        return cls({1: 1}, var)

    @classmethod
    def monomial(cls, exp: int, coef: int = 1, var: str = "z") -> "LaurentPoly":
        return cls({exp: coef}, var)

    @classmethod
    def const(cls, c: int, var: str = "z") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]], var: str = "z") -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e, c in terms:
            acc[e] = acc.get(e, 0) + c
        return cls(acc, var)

    # -- basic accessors

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def coeff(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    def valuation(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self._coeffs)

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in descending exponent order."""
        return sorted(self._coeffs.items(), reverse=True)

    def relabel(self, var: str) -> "LaurentPoly":
        return LaurentPoly(self._coeffs, var)

    # -- comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._coeffs == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs and self.var == other.var

    def __hash__(self) -> int:
        return hash((self.var, frozenset(self._coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # -- ring operations

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            # constants carry no meaningful label
            if other.var != self.var and not (other.is_constant() or self.is_constant()):
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.var)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._coeffs)

    def __add__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        acc = dict(self._coeffs)
        for e, c in other._coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc, self.var)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()}, self.var)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._coeffs) == 1:
                (e, c), = self._coeffs.items()
                if c in (1, -1):
                    return LaurentPoly({e * n: c ** (-n)}, self.var)
            raise ValueError("only monomial units have negative powers")
        result = LaurentPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()}, self.var)

    def substitute_power(self, n: int) -> "LaurentPoly":
        """x -> x^n; n = -1 is the reciprocal substitution x -> 1/x."""
        return LaurentPoly({e * n: c for e, c in self._coeffs.items()}, self.var)

    def reciprocal(self) -> "LaurentPoly":
        return self.substitute_power(-1)

    def divmod(self, divisor: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division after clearing both valuations.

        Returns ``(quot, rem)`` with ``self == quot * divisor + rem``.  The
        remainder is nonzero exactly when the divisor does not divide in
        Z[x, 1/x], including when a quotient coefficient would be fractional.
        """
        divisor = self._lift(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly({}, self.var), LaurentPoly({}, self.var)
        va, vb = self.valuation(), divisor.valuation()
        rem = dict(self.shift(-va)._coeffs)
        den = divisor.shift(-vb)._coeffs
        db = max(den)
        lead = den[db]
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top < db:
                break
            c, r = divmod(rem[top], lead)
            if r:
                break
            k = top - db
            quot[k] = c
            for e, d in den.items():
                v = rem.get(e + k, 0) - c * d
                if v:
                    rem[e + k] = v
                else:
                    rem.pop(e + k, None)
        shift = va - vb
        q = LaurentPoly(quot, self.var).shift(shift)
        r = LaurentPoly(rem, self.var).shift(va)
        return q, r

    def exact_div(self, divisor) -> "LaurentPoly":
        divisor = self._lift(divisor)
        quot, rem = self.divmod(divisor)
        if rem:
            raise InexactDivision(self, divisor, rem)
        return quot

    def __truediv__(self, divisor) -> "LaurentPoly":
        return self.exact_div(divisor)

    # -- evaluation and rendering

    def __call__(self, x):
        """Evaluate at an int or Fraction; negative powers give Fractions."""
        total = 0
        for e, c in self._coeffs.items():
            total += c * (Fraction(x) ** e if e < 0 else x**e)
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def render(self) -> str:
        if not self._coeffs:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if a == 1 else f"{a}{mono}"
            if i == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    __str__ = render

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self._coeffs.items())]

"""Arithmetic in finite fields F_q, q = p**k <= 2**16.

Elements are identified with their *index*: the power-basis coordinates
``(c_0, ..., c_{k-1})`` read as the base-p integer ``sum(c_i * p**i)``.
Index 0 is zero and index 1 is one, so for prime fields the index is the
residue itself.  Multiplication goes through exp/log tables which are
built once per field from direct polynomial multiplication modulo the
defining polynomial.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NotPrime, TooLarge, UnsupportedField

MAX_Q = 2**16
# q x q numpy tables are only built up to this size (32 MB of uint16).
MAX_TABLE_Q = 4096
# Fields the brute-force paths accept by default.
SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise NotPrime otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p = factors[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


# -- polynomials over F_p, coefficient tuples with the constant term first --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over F_p (b must have a nonzero lead)."""
    r = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    lead_inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        coef = r[-1] * lead_inv % p
        shift = len(r) - 1 - db
        for i, c in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * c) % p
        _trim(r)
    return r


def monic_polys(p: int, degree: int) -> Iterator[tuple[int, ...]]:
    """All monic polynomials of the given degree, lexicographic low-degree-first."""
    # product() varies the last slot fastest, so c_0 is the most significant
    for low in itertools.product(range(p), repeat=degree):
        yield low + (1,)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg(f) // 2."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for g in monic_polys(p, d):
            if not poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for f in monic_polys(p, k):
        if is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


class FieldSpec:
    """The field F_{p^k} together with its lookup tables.

    Instances are immutable and compare equal when they share
    ``(p, k, modulus)``.  Use :func:`make_field` rather than the constructor
    so that each field is built once.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        self._pow_p = [p**i for i in range(k)]
        self.digits = [self._coords_of(i) for i in range(self.q)]
        self._build_log_tables()

    def __repr__(self) -> str:
        if self.k == 1:
            return f"FieldSpec(F_{self.q})"
        return f"FieldSpec(F_{self.q}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return make_field, (self.p, self.k)

    # -- coordinates <-> index

    def _coords_of(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            index, c = divmod(index, self.p)
            out.append(c)
        return tuple(out)

    def index_of(self, coords: Sequence[int]) -> int:
        if len(coords) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(coords)}")
        return sum((c % self.p) * w for c, w in zip(coords, self._pow_p))

    # -- direct polynomial multiplication modulo the modulus

    def poly_mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        p = self.p
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        if self.k == 1:
            # placeholder modulus x: only the constant term survives
            r = [prod[0] % p] if prod else []
        else:
            r = poly_mod(prod, self.modulus, p)
        r = r + [0] * (self.k - len(r))
        return tuple(r)

    def _mul_direct(self, i: int, j: int) -> int:
        return self.index_of(self.poly_mul(self.digits[i], self.digits[j]))

    def _build_log_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = prime_factors(order) if order > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._pow_direct(g, order // f) != 1 for f in factors):
                gen = g
                break
        assert gen is not None
        exp = [0] * order
        log = [0] * q
        x = 1
        for e in range(order):
            exp[e] = x
            log[x] = e
            x = self._mul_direct(x, gen)
        assert x == 1
        self.primitive = gen
        self._exp = exp
        self._log = log

    def _pow_direct(self, i: int, n: int) -> int:
        result, base = 1, i
        while n:
            if n & 1:
                result = self._mul_direct(result, base)
            base = self._mul_direct(base, base)
            n >>= 1
        return result

    # -- index-level arithmetic (hot path)

    def add_idx(self, i: int, j: int) -> int:
        if self.k == 1:
            return (i + j) % self.p
        a, b, p = self.digits[i], self.digits[j], self.p
        return sum(((x + y) % p) * w for x, y, w in zip(a, b, self._pow_p))

    def neg_idx(self, i: int) -> int:
        if self.k == 1:
            return -i % self.p
        return sum((-x % self.p) * w for x, w in zip(self.digits[i], self._pow_p))

    def sub_idx(self, i: int, j: int) -> int:
        return self.add_idx(i, self.neg_idx(j))

    def mul_idx(self, i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        return self._exp[(self._log[i] + self._log[j]) % (self.q - 1)]

    def inv_idx(self, i: int) -> int:
        if i == 0:
            raise DivisionByZero(f"inverse of zero in F_{self.q}")
        return self._exp[-self._log[i] % (self.q - 1)]

    def pow_idx(self, i: int, n: int) -> int:
        if i == 0:
            if n < 0:
                raise DivisionByZero(f"negative power of zero in F_{self.q}")
            return 1 if n == 0 else 0
        return self._exp[self._log[i] * n % (self.q - 1)]

    # -- numpy tables for vectorised kernels

    @cached_property
    def dtype(self):
        return np.uint8 if self.q <= 256 else np.uint16

    def _require_tables(self) -> None:
        if self.q > MAX_TABLE_Q:
            raise TooLarge(f"q x q tables are limited to q <= {MAX_TABLE_Q}")

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        d = np.array(self.digits, dtype=np.int64)  # (q, k)
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return (s @ np.array(self._pow_p, dtype=np.int64)).astype(self.dtype)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        q = self.q
        log = np.array(self._log, dtype=np.int64)
        exp = np.array(self._exp, dtype=np.int64)
        t = exp[(log[:, None] + log[None, :]) % (q - 1)]
        t[0, :] = 0
        t[:, 0] = 0
        return t.astype(self.dtype)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg_idx(i) for i in range(self.q)], dtype=self.dtype)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverse lookup; entry 0 is 0 and must never be used."""
        t = [0] + [self.inv_idx(i) for i in range(1, self.q)]
        return np.array(t, dtype=self.dtype)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    # -- element constructors

    def elem(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for F_{self.q}")
        return FieldElement(self, index)

    def from_coeffs(self, coords: Sequence[int]) -> "FieldElement":
        return FieldElement(self, self.index_of(coords))

    def from_int(self, n: int) -> "FieldElement":
        """The image of the integer n under Z -> F_q."""
        return FieldElement(self, n % self.p)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x in F_p[x]/(modulus); equals 0 for prime fields."""
        if self.k == 1:
            return self.zero
        return FieldElement(self, self.p)


class FieldElement:
    __slots__ = ("spec", "index")

    def __init__(self, spec: FieldSpec, index: int):
        self.spec = spec
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits[self.index]

    def __repr__(self) -> str:
        return f"FieldElement({self.render()}, q={self.spec.q})"

    def render(self) -> str:
        if self.spec.k == 1:
            return str(self.index)
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.index == other.index and self.spec == other.spec
        if isinstance(other, int):
            return self.index == other % self.spec.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.q, self.index))

    def __bool__(self) -> bool:
        return self.index != 0

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other.index
        if isinstance(other, int):
            return other % self.spec.p
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add_idx(self.index, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub_idx(self.index, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub_idx(self._coerce(other), self.index))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_idx(self.index))

    def __mul__(self, other):
        if not isinstance(other, (FieldElement, int)):
            return NotImplemented  # lets Mat2 handle scalar * matrix
        return FieldElement(self.spec, self.spec.mul_idx(self.index, self._coerce(other)))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv_idx(self.index))

    def __truediv__(self, other):
        return self * FieldElement(self.spec, self._coerce(other)).inv()

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow_idx(self.index, n))

    def frobenius(self) -> "FieldElement":
        return frobenius(self)


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    """Build F_{p^k} with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > MAX_Q:
        raise TooLarge(f"{p}^{k} exceeds {MAX_Q}")
    modulus = (0, 1) if k == 1 else smallest_irreducible(p, k)
    return FieldSpec(p, k, modulus)


def field_for_q(q: int) -> FieldSpec:
    p, k = prime_power(q)
    return make_field(p, k)


def supported_field(q: int) -> FieldSpec:
    """Field for the brute-force paths; rejects q outside SUPPORTED_Q."""
    if q not in SUPPORTED_Q:
        raise UnsupportedField(f"q={q} not in supported set {SUPPORTED_Q}")
    return field_for_q(q)


def frobenius(a: FieldElement) -> FieldElement:
    """The absolute Frobenius a -> a**p."""
    return a ** a.spec.p


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    return [FieldElement(spec, i) for i in range(spec.q)]

"""Weil zeta functions as exponent multisets.

``Z(t) = prod_{a in num} (1 - q^a t) / prod_{a in den} (1 - q^a t)``.  Taking
``t d/dt log Z`` shows that ``|X(F_{q^n})| = sum_den q^(a n) - sum_num q^(a n)``,
so a factorization is checked by one Laurent identity in q.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .formulas import CheckResult, count
from .laurent import LaurentPoly
from .registry import DEFAULT, FStratum, Registry, Space


class ZetaSpace(str, enum.Enum):
    REP_AIR = "rep_air"
    CH_AIR = "ch_air"
    CH_TOTAL = "ch_total"

    @property
    def formula(self) -> tuple[Space, FStratum]:
        return {
            ZetaSpace.REP_AIR: (Space.REP, FStratum.AIR),
            ZetaSpace.CH_AIR: (Space.CH, FStratum.AIR),
            ZetaSpace.CH_TOTAL: (Space.CH, FStratum.TOTAL),
        }[self]


@dataclass(frozen=True)
class ZetaFactorization:
    numerator_exps: tuple[int, ...]
    denominator_exps: tuple[int, ...]

    def normalized(self) -> "ZetaFactorization":
        num, den = Counter(self.numerator_exps), Counter(self.denominator_exps)
        common = num & den
        return ZetaFactorization(
            tuple(sorted((num - common).elements())), tuple(sorted((den - common).elements()))
        )

    def point_count(self, var: str = "q") -> LaurentPoly:
        """``|X(F_q)|`` read off the exponents."""
        terms = [(a, 1) for a in self.denominator_exps] + [(a, -1) for a in self.numerator_exps]
        return LaurentPoly.from_terms(terms, var)


def zeta_factorization(space, m: int) -> ZetaFactorization:
    """Exponents exactly as in the closed-form products."""
    space = ZetaSpace(space)
    if m < 1:
        raise ValueError("m must be >= 1")
    if space is ZetaSpace.REP_AIR:
        return ZetaFactorization((3 * m + 1, 3 * m), (4 * m, 2 * m + 1))
    half = range(1, m // 2 + 1)
    num = tuple(2 * m + 2 * i - 2 for i in half)
    den = tuple(4 * m - 2 * i - 1 for i in half)
    if space is ZetaSpace.CH_TOTAL:
        den = den + (2 * m,)
    return ZetaFactorization(num, den)


def verify_counts(
    zf: ZetaFactorization,
    space,
    m: int,
    registry: Registry = DEFAULT,
    spot_q: tuple[int, ...] = (2, 3),
    spot_n: int = 5,
) -> CheckResult:
    """Compare the exponent sums with the closed-form count, symbolically and at q^n."""
    space = ZetaSpace(space)
    expected = count(*space.formula, m, registry)
    got = zf.point_count()
    ok = got == expected
    bad = []
    for q in spot_q:
        for n in range(1, spot_n + 1):
            lhs = expected.substitute_power(n)(q)
            rhs = sum(q ** (a * n) for a in zf.denominator_exps) - sum(
                q ** (a * n) for a in zf.numerator_exps
            )
            if lhs != rhs:
                bad.append((q, n))
    detail = f"{got} vs {expected}" + (f"; spot failures {bad}" if bad else "")
    return CheckResult(f"zeta_counts({space.value},m={m})", ok and not bad, detail)


FUNCTIONAL_SHIFT = {
    # completed zeta satisfies zeta(S - s) = zeta(s)^(+-1); on exponents a -> S - 1 - a
    ZetaSpace.REP_AIR: lambda m: 6 * m + 1,
    ZetaSpace.CH_AIR: lambda m: 6 * m - 3,
}


@dataclass
class FunctionalEquation:
    space: ZetaSpace
    m: int
    kind: str  # "symmetric" or "antisymmetric"
    shift: int
    ok: bool
    pairing: list[tuple[int, int]]

    def __bool__(self) -> bool:
        return self.ok


def functional_equation_check(space, m: int, shift: int | None = None) -> FunctionalEquation:
    """Exponent pairing behind the functional equation.

    rep_air: ``a -> shift - a`` must preserve num and den separately.
    ch_air: it must carry num onto den (and so den onto num).
    """
    space = ZetaSpace(space)
    if space not in FUNCTIONAL_SHIFT:
        raise ValueError(f"no functional equation recorded for {space.value}")
    if shift is None:
        shift = FUNCTIONAL_SHIFT[space](m)
    zf = zeta_factorization(space, m)
    num, den = Counter(zf.numerator_exps), Counter(zf.denominator_exps)
    mirror = lambda ms: Counter({shift - a: c for a, c in ms.items()})  # noqa: E731
    if space is ZetaSpace.REP_AIR:
        kind = "symmetric"
        ok = mirror(num) == num and mirror(den) == den
    else:
        kind = "antisymmetric"
        ok = mirror(num) == den
    pairing = [(a, shift - a) for a in (*zf.numerator_exps, *zf.denominator_exps)]
    return FunctionalEquation(space, m, kind, shift, ok, pairing)


def zeta_report(space, m: int) -> dict:
    space = ZetaSpace(space)
    zf = zeta_factorization(space, m)
    out = {
        "space": space.value,
        "m": m,
        "num": list(zf.numerator_exps),
        "den": list(zf.denominator_exps),
        "functional_equation": None,
        "shift": None,
    }
    if space in FUNCTIONAL_SHIFT:
        fe = functional_equation_check(space, m)
        out["functional_equation"] = fe.kind
        out["shift"] = fe.shift
    return out

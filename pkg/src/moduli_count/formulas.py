"""Closed-form counts and VHPs, and the identities that tie them together."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InexactDivision
from .laurent import LaurentPoly
from .registry import (
    DEFAULT,
    FormulaKey,
    FStratum,
    Kind,
    Registry,
    Space,
)

STRATA5 = (FStratum.SC, FStratum.SS, FStratum.U, FStratum.BOREL, FStratum.AIR)

# Complex dimension of each smooth stratum at n = 2.
DIMENSIONS = {
    (Space.REP, FStratum.SC): lambda m: m,
    (Space.REP, FStratum.SS): lambda m: 2 * m + 2,
    (Space.REP, FStratum.U): lambda m: 2 * m + 1,
    (Space.REP, FStratum.BOREL): lambda m: 3 * m + 1,
    (Space.REP, FStratum.AIR): lambda m: 4 * m,
    (Space.CH, FStratum.SC): lambda m: m,
    (Space.CH, FStratum.SS): lambda m: 2 * m,
    (Space.CH, FStratum.U): lambda m: 2 * m - 1,
    (Space.CH, FStratum.BOREL): lambda m: 3 * m - 2,
    (Space.CH, FStratum.AIR): lambda m: 4 * m - 3,
}

# VHP(1) predicted by the rational cohomology of each stratum.
EULER = {
    (Space.REP, FStratum.SC): lambda m: 1,
    (Space.CH, FStratum.SC): lambda m: 1,
    (Space.REP, FStratum.SS): lambda m: 0,
    (Space.CH, FStratum.SS): lambda m: 0,
    (Space.REP, FStratum.U): lambda m: 0,
    (Space.CH, FStratum.U): lambda m: m,
}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def formula_key(space, stratum, kind="count", n: int = 2, general: bool | None = None) -> FormulaKey:
    if general is None:
        general = n != 2
    return FormulaKey(Space(space), FStratum(stratum), Kind(kind), n, general)


def count_formula(key: FormulaKey, m: int, registry: Registry = DEFAULT) -> LaurentPoly:
    """Point count over F_q as a Laurent polynomial in q."""
    if key.kind is not Kind.COUNT:
        raise ValueError(f"{key.label()} is not a count formula")
    return registry.evaluate(key, m)


def vhp_formula(key: FormulaKey, m: int, registry: Registry = DEFAULT) -> LaurentPoly:
    """VHP or VHP_c as a Laurent polynomial in z."""
    if key.kind is Kind.COUNT:
        raise ValueError(f"{key.label()} is a count formula")
    return registry.evaluate(key, m)


def count(space, stratum, m: int, registry: Registry = DEFAULT) -> LaurentPoly:
    return registry.evaluate(formula_key(space, stratum, Kind.COUNT), m)


def vhpc(space, stratum, m: int, registry: Registry = DEFAULT) -> LaurentPoly:
    return registry.evaluate(formula_key(space, stratum, Kind.VHPC), m)


def vhp(space, stratum, m: int, registry: Registry = DEFAULT) -> LaurentPoly:
    return registry.evaluate(formula_key(space, stratum, Kind.VHP), m)


def _z(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e, 1, "z")


# -- identities ---------------------------------------------------------------

def duality_check(space, stratum, m: int, registry: Registry = DEFAULT) -> CheckResult:
    """VHP_c(z) == z^d VHP(1/z) with d the dimension of the stratum."""
    space, stratum = Space(space), FStratum(stratum)
    d = DIMENSIONS[(space, stratum)](m)
    c = vhpc(space, stratum, m, registry)
    o = vhp(space, stratum, m, registry)
    ok = c == o.reciprocal().shift(d)
    detail = f"d={d}"
    if c and c.degree() != d:
        ok = False
        detail += f", but deg VHP_c = {c.degree()}"
    return CheckResult(f"duality({space.value},{stratum.value},m={m})", ok, detail)


def additivity_check(m: int, registry: Registry = DEFAULT) -> list[CheckResult]:
    total = sum((vhpc(Space.REP, s, m, registry) for s in STRATA5), LaurentPoly({}, "z"))
    rk2 = vhpc(Space.REP, FStratum.SS, m, registry) + vhpc(Space.REP, FStratum.U, m, registry)
    return [
        CheckResult(f"additivity(m={m})", total == _z(4 * m), str(total)),
        CheckResult(f"rk2(m={m})", rk2 == vhpc(Space.REP, FStratum.RK2, m, registry), str(rk2)),
    ]


def rep_total_check(m: int, registry: Registry = DEFAULT) -> CheckResult:
    total = sum((count(Space.REP, s, m, registry) for s in STRATA5), LaurentPoly({}, "q"))
    return CheckResult(
        f"rep_total(m={m})", total == count(Space.REP, FStratum.TOTAL, m, registry), str(total)
    )


def free_action_identity(m: int, registry: Registry = DEFAULT) -> CheckResult:
    """|Rep_air| = |Ch_air| * |PGL_2|, and likewise for the Borel stratum."""
    pgl = count(Space.AUX, FStratum.PGL2, m, registry)
    ok = all(
        count(Space.REP, s, m, registry) == count(Space.CH, s, m, registry) * pgl
        for s in (FStratum.AIR, FStratum.BOREL)
    )
    return CheckResult(f"free_action(m={m})", ok)


def ch_total_check(m: int, registry: Registry = DEFAULT) -> CheckResult:
    parts = sum(
        (count(Space.CH, s, m, registry) for s in (FStratum.AIR, FStratum.SS, FStratum.SC)),
        LaurentPoly({}, "q"),
    )
    total = count(Space.CH, FStratum.TOTAL, m, registry)
    return CheckResult(f"ch_total(m={m})", parts == total, f"{parts} vs {total}")


def hua_check(m: int, registry: Registry = DEFAULT) -> CheckResult:
    aid = count(Space.AUX, FStratum.AID, m, registry)
    parts = sum(
        (count(Space.CH, s, m, registry) for s in (FStratum.U, FStratum.BOREL, FStratum.AIR)),
        LaurentPoly({}, "q"),
    )
    return CheckResult(f"hua(m={m})", aid == parts, f"{aid} vs {parts}")


def euler_check(space, stratum, m: int, registry: Registry = DEFAULT) -> CheckResult:
    space, stratum = Space(space), FStratum(stratum)
    expected = EULER[(space, stratum)](m)
    got = vhp(space, stratum, m, registry)(1)
    return CheckResult(
        f"euler({space.value},{stratum.value},m={m})", got == expected, f"{got} vs {expected}"
    )


def relabel_check(space, stratum, m: int, registry: Registry = DEFAULT) -> CheckResult:
    """The F_q count and VHP_c agree once q is renamed z."""
    space, stratum = Space(space), FStratum(stratum)
    c = count(space, stratum, m, registry).relabel("z")
    return CheckResult(
        f"count=vhpc({space.value},{stratum.value},m={m})",
        c == vhpc(space, stratum, m, registry),
    )


def general_n_check(m: int, registry: Registry = DEFAULT) -> list[CheckResult]:
    """General-n formulas at n = 2 reproduce the dedicated n = 2 ones."""
    out = []
    for key in registry.keys():
        if not key.general:
            continue
        dedicated = FormulaKey(key.space, key.stratum, key.kind)
        ok = registry.evaluate(key, m) == registry.evaluate(dedicated, m)
        out.append(CheckResult(f"general_n[{dedicated.label()}](m={m})", ok))
    return out


def _guarded(name: str, fn, *args) -> list[CheckResult]:
    # a corrupted formula may fail to divide exactly; that is a failed check
    try:
        r = fn(*args)
    except InexactDivision as e:
        return [CheckResult(name, False, f"inexact division: {e}")]
    return r if isinstance(r, list) else [r]


def symbolic_suite(m: int, registry: Registry = DEFAULT) -> list[CheckResult]:
    """Every formula identity at one m."""
    out = []
    out += _guarded(f"additivity(m={m})", additivity_check, m, registry)
    out += _guarded(f"rep_total(m={m})", rep_total_check, m, registry)
    for sp, st in DIMENSIONS:
        out += _guarded(f"duality({sp.value},{st.value},m={m})", duality_check, sp, st, m, registry)
    out += _guarded(f"free_action(m={m})", free_action_identity, m, registry)
    out += _guarded(f"ch_total(m={m})", ch_total_check, m, registry)
    out += _guarded(f"hua(m={m})", hua_check, m, registry)
    for sp, st in EULER:
        out += _guarded(f"euler({sp.value},{st.value},m={m})", euler_check, sp, st, m, registry)
    for sp in (Space.REP, Space.CH):
        for st in (*STRATA5, FStratum.TOTAL):
            name = f"count=vhpc({sp.value},{st.value},m={m})"
            out += _guarded(name, relabel_check, sp, st, m, registry)
    out += _guarded(f"general_n(m={m})", general_n_check, m, registry)
    return out

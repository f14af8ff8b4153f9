"""Acceptance gate: one test per criterion, each at its stated tolerance.

A summary line per criterion is printed at the end of the pytest run.
"""

import io
import json
import time

from moduli_count import cli
from moduli_count.formulas import (
    DIMENSIONS,
    additivity_check,
    count,
    duality_check,
    general_n_check,
    hua_check,
    vhpc,
)
from moduli_count.laurent import LaurentPoly
from moduli_count.orbits import check_free_action, orbit_census
from moduli_count.stratify import STRATA, Stratum, census
from moduli_count.verify import DEFAULT_GRID
from moduli_count.zeta import (
    FUNCTIONAL_SHIFT,
    ZetaSpace,
    functional_equation_check,
    verify_counts,
    zeta_factorization,
)

q = LaurentPoly.gen("q")
z = LaurentPoly.gen("z")


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def counts(c):
    return [c.counts[s] for s in STRATA]


def test_criterion_1_census_formula_agreement():
    for qq, m in DEFAULT_GRID:
        c = census(qq, m)
        assert c.total == sum(c.counts.values()) == qq ** (4 * m)
        for s in STRATA:
            assert c.counts[s] == count("rep", s.value, m)(qq), (qq, m, s)
    assert counts(census(2, 2)) == [4, 48, 36, 72, 96]
    assert counts(census(3, 2)) == [9, 648, 288, 1728, 3888]
    c24 = census(2, 4)
    assert (c24.counts[Stratum.AIR], c24.total) == (53760, 65536)

    c, t = timed(census, 5, 2, workers=1)
    assert t < 10, t
    c, t = timed(census, 3, 3, workers=1)
    assert t < 10, t
    c, t = timed(census, 4, 3, workers=8)
    assert t < 120, t
    assert [c.counts[s] for s in STRATA] == [count("rep", s.value, 3)(4) for s in STRATA]


def test_criterion_2_orbit_character_agreement():
    for qq, m in DEFAULT_GRID:
        if qq ** (4 * m) * (qq**3 - qq) > 5 * 10**9:
            continue
        o = orbit_census(qq, m)
        for s in STRATA:
            assert o.orbit_counts[s] == count("ch", s.value, m)(qq), (qq, m, s)
        assert o.closed_orbit_total() == count("ch", "total", m)(qq)
    o22 = orbit_census(2, 2)
    assert [o22.orbit_counts[s] for s in STRATA] == [4, 12, 12, 12, 16]
    assert o22.closed_orbit_total() == 32
    o31 = orbit_census(3, 1)
    assert (o31.orbit_counts[Stratum.SS], o31.orbit_counts[Stratum.U]) == (6, 3)
    assert orbit_census(3, 2).orbit_counts[Stratum.AIR] == 162
    _, t = timed(orbit_census, 5, 2)
    assert t < 120, t


def test_criterion_3_freeness():
    for qq, m in [(2, 2), (3, 2)]:
        prof = orbit_census(qq, m).stabilizer_profile
        # every orbit is recorded, so these sets cover every point
        assert set(prof[Stratum.AIR]) == {1}
        assert set(prof[Stratum.BOREL]) == {1}
        assert set(prof[Stratum.U]) == {qq}
        assert set(prof[Stratum.SS]) == {qq - 1, qq + 1}
        for stratum in (Stratum.AIR, Stratum.BOREL):
            # per-point stabilizers, independent of the orbit sweep
            r = check_free_action(qq, m, stratum)
            assert r.ok, (qq, m, stratum, r.counterexample)


def test_criterion_4_symbolic_identities():
    t0 = time.perf_counter()
    for m in range(1, 13):
        total, rk2 = additivity_check(m)
        assert total  # (a)
        for sp, st in DIMENSIONS:
            assert duality_check(sp, st, m)  # (b)
        assert rk2  # (c)
        assert vhpc("rep", "ss", m) + vhpc("rep", "u", m) == z**m * (z**2 + z + 1) * (z**m - 1)
        assert count("rep", "air", m) == count("ch", "air", m) * (q**3 - q)  # (d)
        ch_total = count("ch", "total", m)  # (e)
        assert ch_total == count("ch", "air", m) + count("ch", "ss", m) + count("ch", "sc", m)
        closed = (q ** (2 * m + 2) * (q ** (2 * m - 3) - q ** (m - 2) - q ** (m - 3) + 1)).exact_div(q**2 - 1)
        assert ch_total == closed
        assert hua_check(m)  # (f)
        assert all(general_n_check(m))  # (g)
    assert time.perf_counter() - t0 < 1.0


def test_criterion_5_zeta_suite():
    t0 = time.perf_counter()
    for m in range(1, 13):
        for space in ZetaSpace:
            assert verify_counts(zeta_factorization(space, m), space, m, spot_q=(2, 3), spot_n=5)
        rep = functional_equation_check(ZetaSpace.REP_AIR, m)
        ch = functional_equation_check(ZetaSpace.CH_AIR, m)
        assert rep.shift == 6 * m + 1 and rep
        assert ch.shift == 6 * m - 3 and ch
        for d in (-1, 1):
            assert not functional_equation_check(ZetaSpace.REP_AIR, m, FUNCTIONAL_SHIFT[ZetaSpace.REP_AIR](m) + d)
            if m >= 2:  # empty multisets at m = 1 pass under any shift
                assert not functional_equation_check(ZetaSpace.CH_AIR, m, FUNCTIONAL_SHIFT[ZetaSpace.CH_AIR](m) + d)
    assert time.perf_counter() - t0 < 1.0


def test_criterion_6_fault_injection():
    faults = [
        ("count:rep:air:0:1", "q=2,m=2", "count(rep,air)"),
        ("count:ch:u:0:1", "q=2,m=1", "count(ch,u)"),
        ("vhpc:rep:borel:2:1", "q=2,m=2", "vhpc(rep,borel)(q)"),
        ("count:ch:air:3:1", "q=3,m=2", "count(ch,air)"),
        ("vhpc:ch:ss:0:2", "q=5,m=1", "vhpc(ch,ss)(q)"),
        ("count:rep:sc:0:1", "q=9,m=1", "count(rep,sc)"),
    ]
    out = io.StringIO()
    assert cli.run(["--no-timings", "verify", "--format", "json"], out) == 0
    for fault, cell, quantity in faults:
        out = io.StringIO()
        assert cli.run(["--no-timings", "verify", "--format", "json", "--inject-fault", fault], out) == 1
        named = {(f["cell"], f["quantity"]) for f in json.loads(out.getvalue())["failures"]}
        assert (cell, quantity) in named, fault

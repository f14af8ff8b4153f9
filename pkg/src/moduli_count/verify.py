"""Cross-check brute force against the closed forms over a grid of (q, m)."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded, InexactDivision
from .formulas import CheckResult, count, symbolic_suite, vhpc
from .jsonfmt import json_number
from .orbits import OrbitCensus, orbit_census
from .registry import DEFAULT, FStratum, Registry, Space
from .stratify import STRATA, StratumCensus, Stratum, census
from .zeta import ZetaSpace, functional_equation_check, verify_counts, zeta_factorization

DEFAULT_GRID = ((2, 1), (3, 1), (4, 1), (5, 1), (7, 1), (9, 1), (2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (2, 4))
EXTENDED_GRID = DEFAULT_GRID + ((7, 2), (4, 3))
SYMBOLIC_M = range(1, 13)

_FS = {s: FStratum(s.value) for s in STRATA}


@dataclass
class Failure:
    cell: str
    quantity: str
    expected: object
    observed: object

    def to_dict(self) -> dict:
        return {
            "cell": self.cell,
            "quantity": self.quantity,
            "expected": str(self.expected),
            "observed": str(self.observed),
        }

    def __str__(self) -> str:
        return f"{self.cell}: {self.quantity} expected {self.expected}, observed {self.observed}"


@dataclass
class CellResult:
    q: int
    m: int
    census: StratumCensus | None = None
    orbits: OrbitCensus | None = None
    checks: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def name(self) -> str:
        return f"q={self.q},m={self.m}"

    def expect(self, quantity: str, expected, observed) -> None:
        self.checks += 1
        if expected != observed:
            self.failures.append(Failure(self.name, quantity, expected, observed))

    def to_dict(self, timings: bool = True) -> dict:
        out = {"q": self.q, "m": self.m, "checks": self.checks}
        if self.census:
            out["census"] = {s.value: json_number(self.census.counts[s]) for s in STRATA}
        if self.orbits:
            out["orbits"] = {s.value: json_number(self.orbits.orbit_counts[s]) for s in STRATA}
        out["failures"] = [f.to_dict() for f in self.failures]
        out["elapsed_ms"] = self.elapsed_ms if timings else 0
        return out


@dataclass
class VerificationReport:
    grid: list[tuple[int, int]]
    cells: list[CellResult]
    identity_checks: int
    failures: list[Failure]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, timings: bool = True) -> dict:
        return {
            "grid": [list(c) for c in self.grid],
            "cells": [c.to_dict(timings) for c in self.cells],
            "identity_checks": self.identity_checks,
            "overall": "pass" if self.passed else "fail",
            "failures": [f.to_dict() for f in self.failures],
        }


def _at(poly_fn, q: int):
    """Evaluate a formula at q; a failed exact division becomes a sentinel string."""
    try:
        return poly_fn()(q)
    except InexactDivision as e:
        return f"<inexact division: {e}>"


def _orbit_cell(q: int, m: int) -> bool:
    return q ** (4 * m) * (q**3 - q) <= 5 * 10**9


# Brute-force results do not depend on the formulas, so repeated runs reuse them.
_CENSUS_CACHE: dict[tuple[int, int], StratumCensus] = {}
_ORBIT_CACHE: dict[tuple[int, int], OrbitCensus] = {}


def _census(q: int, m: int, workers: int) -> StratumCensus:
    if (q, m) not in _CENSUS_CACHE:
        _CENSUS_CACHE[q, m] = census(q, m, workers=workers)
    return _CENSUS_CACHE[q, m]


def _orbits(q: int, m: int) -> OrbitCensus:
    if (q, m) not in _ORBIT_CACHE:
        _ORBIT_CACHE[q, m] = orbit_census(q, m)
    return _ORBIT_CACHE[q, m]


def check_cell(q: int, m: int, registry: Registry = DEFAULT, orbits: bool = True, workers: int = 1) -> CellResult:
    t0 = time.perf_counter()
    cell = CellResult(q, m)
    cen = _census(q, m, workers)
    cell.census = cen
    cell.expect("census total", q ** (4 * m), sum(cen.counts.values()))
    for s in STRATA:
        fs = _FS[s]
        observed = cen.counts[s]
        cell.expect(f"count(rep,{s.value})", _at(lambda: count(Space.REP, fs, m, registry), q), observed)
        cell.expect(f"vhpc(rep,{s.value})(q)", _at(lambda: vhpc(Space.REP, fs, m, registry), q), observed)

    if orbits and _orbit_cell(q, m):
        orb = _orbits(q, m)
        cell.orbits = orb
        g = q**3 - q
        for s in STRATA:
            fs = _FS[s]
            observed = orb.orbit_counts[s]
            cell.expect(f"count(ch,{s.value})", _at(lambda: count(Space.CH, fs, m, registry), q), observed)
            cell.expect(f"vhpc(ch,{s.value})(q)", _at(lambda: vhpc(Space.CH, fs, m, registry), q), observed)
            cell.expect(f"orbit points({s.value})", cen.counts[s], orb.point_counts[s])
        cell.expect("count(ch,total)", _at(lambda: count(Space.CH, FStratum.TOTAL, m, registry), q), orb.closed_orbit_total())
        prof = orb.stabilizer_profile
        for s in (Stratum.AIR, Stratum.BOREL):
            cell.expect(f"stabilizers({s.value})", set() if not prof[s] else {1}, set(prof[s]))
            cell.expect(f"free orbits({s.value})", cen.counts[s], orb.orbit_counts[s] * g)
        cell.expect("stabilizers(u)", {q} if prof[Stratum.U] else set(), set(prof[Stratum.U]))
        cell.expect("stabilizers(ss)", {q - 1, q + 1}, set(prof[Stratum.SS]))
        cell.expect("stabilizers(sc)", {g}, set(prof[Stratum.SC]))
    cell.elapsed_ms = round((time.perf_counter() - t0) * 1000)
    return cell


def identity_failures(registry: Registry = DEFAULT) -> tuple[int, list[Failure]]:
    """Symbolic and zeta identities for m = 1..12."""
    checks, failures = 0, []
    for m in SYMBOLIC_M:
        for r in symbolic_suite(m, registry):
            checks += 1
            if not r:
                failures.append(Failure(f"symbolic,m={m}", r.name, "identity holds", r.detail or "fails"))
        for space in ZetaSpace:
            try:
                r = verify_counts(zeta_factorization(space, m), space, m, registry)
            except InexactDivision as e:
                r = CheckResult(f"zeta_counts({space.value},m={m})", False, f"inexact division: {e}")
            checks += 1
            if not r:
                failures.append(Failure(f"zeta,m={m}", r.name, "identity holds", r.detail))
        for space in (ZetaSpace.REP_AIR, ZetaSpace.CH_AIR):
            fe = functional_equation_check(space, m)
            checks += 1
            if not fe:
                failures.append(Failure(f"zeta,m={m}", f"functional({space.value})", "pairing", fe.pairing))
    return checks, failures


def run_verification(
    grid=DEFAULT_GRID,
    registry: Registry = DEFAULT,
    budget_seconds: float | None = None,
    orbits: bool = True,
    workers: int = 1,
    progress=None,
) -> VerificationReport:
    t0 = time.perf_counter()
    n_checks, failures = identity_failures(registry)
    cells = []
    for q, m in grid:
        if budget_seconds is not None and time.perf_counter() - t0 > budget_seconds:
            raise BudgetExceeded(round(time.perf_counter() - t0), round(budget_seconds), what="seconds")
        cell = check_cell(q, m, registry, orbits=orbits, workers=workers)
        if progress:
            progress(cell)
        cells.append(cell)
        failures.extend(cell.failures)
    return VerificationReport(list(grid), cells, n_checks, failures)

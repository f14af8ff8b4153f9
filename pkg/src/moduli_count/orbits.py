"""PGL_2(F_q)-orbits of simultaneous conjugation on (M_2(F_q))^m.

Orbit counts come from an explicit sweep; the point-count / |PGL_2|
shortcut is only ever used as a cross-check.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, EmptyTuple
from .gf import FieldSpec, supported_field
from .jsonfmt import json_number
from .mat2 import Mat2, conjugate, enumerate_pgl2, pgl2_order
from .stratify import (
    STRATA,
    Stratum,
    classify_block,
    digits_block,
    split_ranges,
    tuple_budget,
)

DEFAULT_OP_BUDGET = 5 * 10**9


def stabilizer_order(mats: Sequence[Mat2]) -> int:
    """Number of g in PGL_2(F_q) fixing every matrix of the tuple (reference path)."""
    if not mats:
        raise EmptyTuple("need at least one matrix")
    return sum(
        all(conjugate(g, a) == a for a in mats) for g in enumerate_pgl2(mats[0].spec)
    )


class GroupArrays:
    """PGL_2(F_q) as parallel arrays of canonical-lift entries."""

    def __init__(self, spec: FieldSpec):
        elems = enumerate_pgl2(spec)
        ent = np.array([g.rep.indices for g in elems], dtype=spec.dtype).T
        self.spec = spec
        self.order = len(elems)
        self.p, self.b, self.c, self.s = ent
        dets = [g.rep.det().index for g in elems]
        self.dinv = spec.inv_table[np.array(dets)]


def conjugate_block(group: GroupArrays, block: np.ndarray) -> np.ndarray:
    """Entries of ``g A g^{-1}`` for every g and tuple; shape (m, 4, n, |G|)."""
    spec = group.spec
    mul, add, sub = spec.mul_table, spec.add_table, spec.sub_table
    p, b, c, s, dinv = (x[None, :] for x in (group.p, group.b, group.c, group.s, group.dinv))
    m, _, n = block.shape
    out = np.empty((m, 4, n, group.order), dtype=block.dtype)
    for i in range(m):
        a11, a12, a21, a22 = (x[:, None] for x in block[i])
        # P A
        x11 = add[mul[p, a11], mul[b, a21]]
        x12 = add[mul[p, a12], mul[b, a22]]
        x21 = add[mul[c, a11], mul[s, a21]]
        x22 = add[mul[c, a12], mul[s, a22]]
        # (P A) adj(P) / det P
        out[i, 0] = mul[dinv, sub[mul[x11, s], mul[x12, c]]]
        out[i, 1] = mul[dinv, sub[mul[x12, p], mul[x11, b]]]
        out[i, 2] = mul[dinv, sub[mul[x21, s], mul[x22, c]]]
        out[i, 3] = mul[dinv, sub[mul[x22, p], mul[x21, b]]]
    return out


def encode_block(q: int, digits: np.ndarray) -> np.ndarray:
    """Inverse of ``digits_block`` for arrays of shape (m, 4, ...)."""
    m = digits.shape[0]
    flat = digits.reshape(4 * m, *digits.shape[2:]).astype(np.int64)
    idx = np.zeros(flat.shape[1:], dtype=np.int64)
    for j in reversed(range(4 * m)):
        idx = idx * q + flat[j]
    return idx


class VisitedBits:
    """One bit per tuple index."""

    def __init__(self, n: int):
        self.n = n
        self.bits = np.zeros((n + 7) // 8, dtype=np.uint8)

    def mark(self, idx: np.ndarray) -> None:
        np.bitwise_or.at(self.bits, idx >> 3, (1 << (idx & 7)).astype(np.uint8))

    def __contains__(self, i: int) -> bool:
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    def unvisited_from(self, start: int, span: int = 1 << 16) -> np.ndarray:
        """Unvisited indices in [start, start + span), ascending."""
        lo = start >> 3
        hi = min((start + span + 7) >> 3, len(self.bits))
        unpacked = np.unpackbits(self.bits[lo:hi], bitorder="little")
        idx = np.flatnonzero(unpacked == 0) + (lo << 3)
        return idx[(idx >= start) & (idx < min(start + span, self.n))]


@dataclass
class OrbitCensus:
    q: int
    m: int
    orbit_counts: dict[Stratum, int]
    stabilizer_profile: dict[Stratum, dict[int, int]]
    point_counts: dict[Stratum, int]
    elapsed_ms: int = field(default=0, compare=False)

    @property
    def group_order(self) -> int:
        return pgl2_order(self.q)

    def closed_orbit_total(self) -> int:
        """Orbits in the strata whose orbits are closed: air, ss and sc."""
        return sum(self.orbit_counts[s] for s in (Stratum.AIR, Stratum.SS, Stratum.SC))

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "orbits": {s.value: json_number(self.orbit_counts[s]) for s in STRATA},
            "stabilizers": {
                s.value: {str(k): v for k, v in sorted(self.stabilizer_profile[s].items())}
                for s in STRATA
            },
            "elapsed_ms": self.elapsed_ms,
        }


def _check_budget(q: int, m: int, budget: int | None, op_budget: int | None) -> int:
    total = q ** (4 * m)
    budget = tuple_budget() if budget is None else budget
    if total > budget:
        raise BudgetExceeded(total, budget)
    ops = total * pgl2_order(q)
    op_budget = DEFAULT_OP_BUDGET if op_budget is None else op_budget
    if ops > op_budget:
        raise BudgetExceeded(ops, op_budget, what="group operations")
    return total


def _sweep(q: int, m: int, total: int):
    spec = supported_field(q)
    group = GroupArrays(spec)
    visited = VisitedBits(total)
    orbits = Counter()
    points = Counter()
    stabs = {s: Counter() for s in STRATA}
    pos = 0
    while pos < total:
        cands = visited.unvisited_from(pos)
        pos = int(cands[-1]) + 1 if len(cands) else min(pos + (1 << 16), total)
        for x in cands:
            x = int(x)
            if x in visited:
                continue
            block = digits_block(q, m, x, x + 1)
            images = conjugate_block(group, block)  # (m, 4, 1, G)
            idx = encode_block(q, images)[0]
            members, first = np.unique(idx, return_index=True)
            stab = int(np.count_nonzero(idx == x))
            size = len(members)
            if size * stab != group.order:
                raise AssertionError(f"orbit-stabilizer fails at index {x}")
            codes = classify_block(spec, images[:, :, 0, first])
            if np.any(codes != codes[0]):
                raise AssertionError(f"stratum not constant on the orbit of {x}")
            stratum = STRATA[codes[0]]
            orbits[stratum] += 1
            points[stratum] += size
            stabs[stratum][stab] += 1
            visited.mark(members)
    return orbits, points, stabs


def _canonical_range(q: int, m: int, start: int, stop: int, chunk: int = 4096):
    """Count orbits whose minimum index lies in [start, stop)."""
    spec = supported_field(q)
    group = GroupArrays(spec)
    orbits = Counter()
    points = Counter()
    stabs = {s: Counter() for s in STRATA}
    for a in range(start, stop, chunk):
        b = min(a + chunk, stop)
        block = digits_block(q, m, a, b)
        idx = encode_block(q, conjugate_block(group, block))  # (n, G)
        x = np.arange(a, b, dtype=np.int64)
        is_rep = idx.min(axis=1) == x
        if not is_rep.any():
            continue
        fixed = np.count_nonzero(idx[is_rep] == x[is_rep, None], axis=1)
        codes = classify_block(spec, block[:, :, is_rep])
        for code, stab in zip(codes.tolist(), fixed.tolist()):
            s = STRATA[code]
            orbits[s] += 1
            points[s] += group.order // stab
            stabs[s][stab] += 1
    return orbits, points, stabs


def orbit_census(
    q: int,
    m: int,
    workers: int = 1,
    budget: int | None = None,
    op_budget: int | None = None,
) -> OrbitCensus:
    """Count conjugation orbits per stratum.

    ``workers == 1`` runs the visited-set sweep; larger values count
    canonical representatives (orbit minima) over contiguous index ranges,
    which gives identical results.
    """
    if m < 1:
        raise EmptyTuple("m must be >= 1")
    supported_field(q)
    total = _check_budget(q, m, budget, op_budget)
    t0 = time.perf_counter()
    if workers <= 1:
        parts = [_sweep(q, m, total)]
    else:
        ranges = split_ranges(total, workers)
        with ProcessPoolExecutor(max_workers=len(ranges)) as ex:
            parts = list(ex.map(_canonical_range, *zip(*[(q, m, a, b) for a, b in ranges])))
    orbits, points = Counter(), Counter()
    stabs = {s: Counter() for s in STRATA}
    for o, p, st in parts:
        orbits.update(o)
        points.update(p)
        for s in STRATA:
            stabs[s].update(st[s])
    return OrbitCensus(
        q,
        m,
        {s: orbits[s] for s in STRATA},
        {s: dict(sorted(stabs[s].items())) for s in STRATA},
        {s: points[s] for s in STRATA},
        round((time.perf_counter() - t0) * 1000),
    )


@dataclass
class FreeActionReport:
    q: int
    m: int
    stratum: Stratum
    points: int
    orbits: int
    free: bool
    counterexample: int | None = None
    counterexample_stabilizer: int | None = None

    @property
    def ok(self) -> bool:
        return self.free and self.orbits * pgl2_order(self.q) == self.points


def point_stabilizers(q: int, m: int, chunk: int = 4096):
    """Yield (index array, stratum codes, stabilizer orders) over every tuple."""
    spec = supported_field(q)
    group = GroupArrays(spec)
    total = q ** (4 * m)
    for a in range(0, total, chunk):
        b = min(a + chunk, total)
        block = digits_block(q, m, a, b)
        idx = encode_block(q, conjugate_block(group, block))
        x = np.arange(a, b, dtype=np.int64)
        yield x, classify_block(spec, block), np.count_nonzero(idx == x[:, None], axis=1)


def check_free_action(q: int, m: int, stratum: Stratum, orbits: OrbitCensus | None = None):
    """Check every point of the stratum has trivial stabilizer and orbits * |PGL_2| = points."""
    stratum = Stratum(stratum)
    if stratum not in (Stratum.BOREL, Stratum.AIR):
        raise ValueError("free action is only asserted on the borel and air strata")
    _check_budget(q, m, None, None)
    points = 0
    bad = None
    for x, codes, stab in point_stabilizers(q, m):
        sel = codes == stratum.code
        points += int(sel.sum())
        if bad is None:
            wrong = np.flatnonzero(sel & (stab != 1))
            if len(wrong):
                bad = (int(x[wrong[0]]), int(stab[wrong[0]]))
    if orbits is None:
        orbits = orbit_census(q, m)
    return FreeActionReport(
        q,
        m,
        stratum,
        points,
        orbits.orbit_counts[stratum],
        bad is None,
        bad[0] if bad else None,
        bad[1] if bad else None,
    )

"""Stratification of (M_2(F_q))^m by the rank of the generated subalgebra.

``classify`` is the reference path: it builds the unital subalgebra by span
closure and reads the stratum off its dimension.  ``census`` walks all
q^(4m) tuples with a vectorised kernel, :func:`classify_block`, which uses
equivalent invariants instead of the closure:

* reduce every A_i to v_i = (a12, a21, a11 - a22), its image in M_2 / F_q I;
* ``r = rank(v_1, ..., v_m)`` gives dim span(I, A_i) = 1 + r;
* r = 0 is scalar, r = 1 is a commutative algebra F_q[B] which is split or
  non-split semisimple when disc(B) = (a11 - a22)^2 + 4 a12 a21 is nonzero
  and unipotent otherwise;
* r = 3, or any pair with det(A_i A_j - A_j A_i) != 0, generates M_2
  (no common eigenvector); the remaining r = 2 tuples have Borel mold.

The tests compare both paths exhaustively on small grids.
"""

from __future__ import annotations

import enum
import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, EmptyTuple, IndexOutOfRange
from .gf import FieldSpec, supported_field
from .jsonfmt import json_number
from .mat2 import Mat2, char_data, subalgebra_dim

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 18


class Stratum(str, enum.Enum):
    SC = "sc"
    SS = "ss"
    U = "u"
    BOREL = "borel"
    AIR = "air"

    @property
    def code(self) -> int:
        return STRATA.index(self)

    @classmethod
    def parse(cls, text: str) -> "Stratum":
        key = text.strip().lower()
        aliases = {"b": "borel", "rk3": "borel", "rk4": "air", "rk1": "sc", "scalar": "sc"}
        return cls(aliases.get(key, key))


STRATA = tuple(Stratum)


def tuple_budget() -> int:
    env = os.environ.get("MODULI_COUNT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# -- tuple indexing -----------------------------------------------------------

def decode_tuple(spec: FieldSpec, m: int, index: int) -> list[Mat2]:
    """Inverse of :func:`encode_tuple`.

    Base-q digit ``4*i + j`` of the index is entry j (order a11, a12, a21,
    a22) of matrix i; digit 0 is least significant.
    """
    q = spec.q
    if not 0 <= index < q ** (4 * m):
        raise IndexOutOfRange(f"index {index} outside [0, {q}^{4 * m})")
    digits = []
    for _ in range(4 * m):
        index, d = divmod(index, q)
        digits.append(d)
    return [Mat2.from_indices(spec, digits[4 * i : 4 * i + 4]) for i in range(m)]


def encode_tuple(mats: Sequence[Mat2]) -> int:
    if not mats:
        raise EmptyTuple("need at least one matrix")
    q = mats[0].spec.q
    index = 0
    for d in reversed([e for a in mats for e in a.indices]):
        index = index * q + d
    return index


def digits_block(q: int, m: int, start: int, stop: int) -> np.ndarray:
    """Entry indices of tuples start..stop-1 as an array of shape (m, 4, n)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((4 * m, stop - start), dtype=np.uint16 if q > 256 else np.uint8)
    for j in range(4 * m):
        idx, d = np.divmod(idx, q)
        out[j] = d
    return out.reshape(m, 4, -1)


# -- reference classifier -----------------------------------------------------

def classify(mats: Sequence[Mat2]) -> Stratum:
    alg = subalgebra_dim(mats)
    if alg.dim == 1:
        return Stratum.SC
    if alg.dim == 3:
        return Stratum.BOREL
    if alg.dim == 4:
        return Stratum.AIR
    b = next(x for x in alg.basis if not x.is_scalar())
    _, _, disc = char_data(b)
    return Stratum.SS if disc else Stratum.U


# -- vectorised kernel --------------------------------------------------------

class _Tables:
    def __init__(self, spec: FieldSpec):
        self.add = spec.add_table
        self.sub = spec.sub_table
        self.mul = spec.mul_table
        self.four = spec.from_int(4).index


def _cross(t: _Tables, u, v):
    mul, sub = t.mul, t.sub
    return (
        sub[mul[u[1], v[2]], mul[u[2], v[1]]],
        sub[mul[u[2], v[0]], mul[u[0], v[2]]],
        sub[mul[u[0], v[1]], mul[u[1], v[0]]],
    )


def classify_block(spec: FieldSpec, block: np.ndarray) -> np.ndarray:
    """Stratum codes (``Stratum.code``) for a block of shape (m, 4, n)."""
    t = _Tables(spec)
    mul, add = t.mul, t.add
    m, _, n = block.shape
    vs = [(a[1], a[2], t.sub[a[0], a[3]]) for a in block]

    nonscalar = np.zeros(n, dtype=bool)
    disc_nz = np.zeros(n, dtype=bool)
    for v in vs:
        nonscalar |= (v[0] != 0) | (v[1] != 0) | (v[2] != 0)
        # all nonzero v_i are proportional when r = 1, so any nonzero disc decides
        disc = add[mul[v[2], v[2]], mul[t.four, mul[v[0], v[1]]]]
        disc_nz |= disc != 0

    rank2 = np.zeros(n, dtype=bool)
    gen_all = np.zeros(n, dtype=bool)
    crosses = {}
    for i, j in itertools.combinations(range(m), 2):
        c = _cross(t, vs[i], vs[j])
        crosses[i, j] = c
        rank2 |= (c[0] != 0) | (c[1] != 0) | (c[2] != 0)
        # det[A_i, A_j] = -(c2^2 + c0 c1)
        gen_all |= add[mul[c[2], c[2]], mul[c[0], c[1]]] != 0
    for i, j, k in itertools.combinations(range(m), 3):
        c = crosses[j, k]
        v = vs[i]
        det3 = add[add[mul[v[0], c[0]], mul[v[1], c[1]]], mul[v[2], c[2]]]
        gen_all |= det3 != 0

    codes = np.full(n, Stratum.SC.code, dtype=np.uint8)
    codes[nonscalar & disc_nz] = Stratum.SS.code
    codes[nonscalar & ~disc_nz] = Stratum.U.code
    codes[rank2] = Stratum.BOREL.code
    codes[gen_all] = Stratum.AIR.code
    return codes


def classify_range(q: int, m: int, start: int, stop: int) -> np.ndarray:
    spec = supported_field(q)
    return classify_block(spec, digits_block(q, m, start, stop))


def _count_range(q: int, m: int, start: int, stop: int) -> list[int]:
    spec = supported_field(q)
    counts = np.zeros(len(STRATA), dtype=np.int64)
    for a in range(start, stop, CHUNK):
        b = min(a + CHUNK, stop)
        codes = classify_block(spec, digits_block(q, m, a, b))
        counts += np.bincount(codes, minlength=len(STRATA))
    return [int(c) for c in counts]


# -- census -------------------------------------------------------------------

@dataclass
class StratumCensus:
    q: int
    m: int
    counts: dict[Stratum, int]
    total: int
    elapsed_ms: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "counts": {s.value: json_number(self.counts[s]) for s in STRATA},
            "total": json_number(self.total),
            "elapsed_ms": self.elapsed_ms,
        }

    CSV_HEADER = ("q", "m", "sc", "ss", "u", "borel", "air", "total", "elapsed_ms")

    def csv_row(self) -> list[int]:
        return [self.q, self.m, *(self.counts[s] for s in STRATA), self.total, self.elapsed_ms]


def split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, a = [], 0
    for i in range(parts):
        b = a + step + (1 if i < extra else 0)
        out.append((a, b))
        a = b
    return out


def census(q: int, m: int, workers: int = 1, budget: int | None = None) -> StratumCensus:
    """Classify every tuple in (M_2(F_q))^m and count per stratum."""
    if m < 1:
        raise EmptyTuple("m must be >= 1")
    supported_field(q)
    total = q ** (4 * m)
    budget = tuple_budget() if budget is None else budget
    if total > budget:
        raise BudgetExceeded(total, budget)
    t0 = time.perf_counter()
    ranges = split_ranges(total, workers)
    if len(ranges) == 1:
        parts = [_count_range(q, m, 0, total)]
    else:
        with ProcessPoolExecutor(max_workers=len(ranges)) as ex:
            parts = list(ex.map(_count_range, *zip(*[(q, m, a, b) for a, b in ranges])))
    merged = [sum(col) for col in zip(*parts)]
    counts = dict(zip(STRATA, merged))
    assert sum(merged) == total
    return StratumCensus(q, m, counts, total, round((time.perf_counter() - t0) * 1000))

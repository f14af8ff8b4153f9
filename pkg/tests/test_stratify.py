import itertools
import random

import numpy as np
import pytest

from moduli_count.errors import BudgetExceeded, EmptyTuple, IndexOutOfRange, UnsupportedField
from moduli_count.gf import make_field, supported_field
from moduli_count.mat2 import Mat2, conjugate, enumerate_pgl2
from moduli_count.stratify import (
    STRATA,
    Stratum,
    census,
    classify,
    classify_range,
    decode_tuple,
    digits_block,
    encode_tuple,
    split_ranges,
)

F2 = make_field(2)


def counts(c):
    return [c.counts[s] for s in STRATA]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_single_diagonal_is_ss(q):
    spec = supported_field(q)
    assert classify([Mat2.diag(spec, 0, 1)]) is Stratum.SS


def test_classify_examples():
    assert classify([Mat2.unit(F2, 1, 2)]) is Stratum.U
    assert classify([Mat2.unit(F2, 1, 2), Mat2.unit(F2, 2, 1)]) is Stratum.AIR
    assert classify([Mat2.from_rows(F2, [[0, 1], [1, 1]])]) is Stratum.SS
    assert classify([Mat2.zero(F2), Mat2.identity(F2)]) is Stratum.SC
    assert classify([Mat2.unit(F2, 1, 2), Mat2.unit(F2, 1, 1)]) is Stratum.BOREL
    with pytest.raises(EmptyTuple):
        classify([])


def test_stratum_parse():
    assert Stratum.parse("Air") is Stratum.AIR
    assert Stratum.parse("B") is Stratum.BOREL
    assert [s.code for s in STRATA] == [0, 1, 2, 3, 4]


def test_encoding_examples():
    assert decode_tuple(F2, 1, 0) == [Mat2.zero(F2)]
    # digit 0 is a11, digit 1 is a12, digit 2 is a21, digit 3 is a22
    assert decode_tuple(F2, 1, 1) == [Mat2.unit(F2, 1, 1)]
    assert decode_tuple(F2, 1, 2) == [Mat2.unit(F2, 1, 2)]
    assert decode_tuple(F2, 1, 4) == [Mat2.unit(F2, 2, 1)]
    assert decode_tuple(F2, 1, 8) == [Mat2.unit(F2, 2, 2)]
    assert decode_tuple(F2, 2, 16) == [Mat2.zero(F2), Mat2.unit(F2, 1, 1)]
    with pytest.raises(IndexOutOfRange):
        decode_tuple(F2, 1, 16)
    with pytest.raises(IndexOutOfRange):
        decode_tuple(F2, 1, -1)


def test_encode_decode_roundtrip_q5():
    spec = supported_field(5)
    rng = random.Random(1)
    for _ in range(1000):
        mats = [Mat2.from_indices(spec, [rng.randrange(5) for _ in range(4)]) for _ in range(2)]
        i = encode_tuple(mats)
        assert 0 <= i < 5**8
        assert decode_tuple(spec, 2, i) == mats
    for i in rng.sample(range(5**8), 500):
        assert encode_tuple(decode_tuple(spec, 2, i)) == i


def test_digits_block_matches_decode():
    spec = supported_field(3)
    block = digits_block(3, 2, 100, 140)
    for j, i in enumerate(range(100, 140)):
        mats = decode_tuple(spec, 2, i)
        assert block[:, :, j].tolist() == [list(a.indices) for a in mats]


@pytest.mark.parametrize("q,m", [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)])
def test_kernel_matches_reference_exhaustive(q, m):
    spec = supported_field(q)
    codes = classify_range(q, m, 0, q ** (4 * m))
    for i, c in enumerate(codes):
        assert STRATA[c] is classify(decode_tuple(spec, m, i)), i


@pytest.mark.parametrize("q,m", [(4, 2), (5, 2), (8, 1), (9, 2), (13, 1), (2, 3), (3, 3)])
def test_kernel_matches_reference_sampled(q, m):
    spec = supported_field(q)
    rng = random.Random(q * 10 + m)
    total = q ** (4 * m)
    starts = rng.sample(range(total - 64), 12)
    for a in starts:
        codes = classify_range(q, m, a, a + 64)
        for j, c in enumerate(codes):
            assert STRATA[c] is classify(decode_tuple(spec, m, a + j))


def test_classify_conjugation_invariant_q2():
    group = enumerate_pgl2(F2)
    for m in (1, 2):
        for i in range(2 ** (4 * m)):
            t = decode_tuple(F2, m, i)
            s = classify(t)
            for g in group:
                assert classify([conjugate(g, a) for a in t]) is s


def test_classify_conjugation_invariant_q3_sampled():
    spec = supported_field(3)
    group = enumerate_pgl2(spec)
    rng = random.Random(3)
    for i in rng.sample(range(3**8), 150):
        t = decode_tuple(spec, 2, i)
        g = rng.choice(group)
        assert classify([conjugate(g, a) for a in t]) is classify(t)


def test_census_anchors():
    assert counts(census(2, 1)) == [2, 8, 6, 0, 0]
    c = census(2, 2)
    assert counts(c) == [4, 48, 36, 72, 96] and c.total == 256
    assert counts(census(3, 2)) == [9, 648, 288, 1728, 3888]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_single_matrix_is_never_borel_or_air(q):
    c = census(q, 1)
    assert c.counts[Stratum.BOREL] == c.counts[Stratum.AIR] == 0
    assert sum(c.counts.values()) == c.total == q**4


def test_census_workers_deterministic():
    ref = census(3, 2, workers=1)
    for w in (2, 8):
        assert census(3, 2, workers=w) == ref


def test_census_json_shape():
    d = census(2, 2).to_dict()
    assert list(d) == ["q", "m", "counts", "total", "elapsed_ms"]
    assert list(d["counts"]) == ["sc", "ss", "u", "borel", "air"]


def test_split_ranges_cover():
    for total, parts in [(10, 3), (7, 8), (256, 1), (1, 4)]:
        r = split_ranges(total, parts)
        assert r[0][0] == 0 and r[-1][1] == total
        assert all(a[1] == b[0] for a, b in zip(r, r[1:]))


def test_census_errors(monkeypatch):
    with pytest.raises(BudgetExceeded) as e:
        census(2, 2, budget=100)
    assert e.value.required == 256
    monkeypatch.setenv("MODULI_COUNT_BUDGET", "15")
    with pytest.raises(BudgetExceeded):
        census(2, 1)
    with pytest.raises(UnsupportedField):
        census(6, 1)
    with pytest.raises(EmptyTuple):
        census(2, 0)


def test_all_tuples_q2_m1_by_hand():
    # scalars {0, I}; trace 1 is ss; trace 0 and non-scalar is u
    for e in itertools.product(range(2), repeat=4):
        a = Mat2.from_indices(F2, e)
        if a.is_scalar():
            want = Stratum.SC
        elif a.trace().index == 1:
            want = Stratum.SS
        else:
            want = Stratum.U
        assert classify([a]) is want

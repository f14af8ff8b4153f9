import itertools
import pickle

import numpy as np
import pytest

from moduli_count.errors import DivisionByZero, FieldMismatch, NotPrime, TooLarge, UnsupportedField
from moduli_count.gf import (
    enumerate_elements,
    frobenius,
    is_irreducible,
    make_field,
    prime_power,
    smallest_irreducible,
    supported_field,
)


def test_prime_field_basics():
    f2 = make_field(2, 1)
    assert f2.q == 2
    one = f2.one
    assert one + one == f2.zero
    f5 = make_field(5)
    assert f5.elem(2).inv() == f5.elem(3)


def test_moduli_are_smallest_irreducibles():
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    # x^3 + x^2 + 1 precedes x^3 + x + 1 when c_0, c_1, ... are compared in turn
    assert make_field(2, 3).modulus == (1, 0, 1, 1)


def test_smallest_irreducible_is_minimal():
    # every lexicographically smaller monic candidate must be reducible
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)]:
        f = smallest_irreducible(p, k)
        assert is_irreducible(f, p)
        for lower in itertools.product(range(p), repeat=k):
            if list(lower) < list(f[:k]):
                assert not is_irreducible((*lower, 1), p)


def test_f4_multiplication():
    f4 = make_field(2, 2)
    x = f4.gen
    assert x * x == x + 1
    assert frobenius(x) == x + 1


def test_f9_frobenius():
    f9 = make_field(3, 2)
    x = f9.gen
    assert frobenius(x) == 2 * x


def test_prime_field_frobenius_is_identity():
    for p in (2, 3, 5, 7, 11, 13):
        for a in enumerate_elements(make_field(p)):
            assert frobenius(a) == a


def test_enumeration_order():
    assert [e.index for e in enumerate_elements(make_field(2))] == [0, 1]
    f4 = make_field(2, 2)
    els = enumerate_elements(f4)
    x = f4.gen
    assert els == [f4.zero, f4.one, x, x + 1]
    assert [e.coeffs for e in els] == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(TooLarge):
        make_field(2, 17)
    with pytest.raises(DivisionByZero):
        make_field(3).zero.inv()
    with pytest.raises(FieldMismatch):
        make_field(3).one + make_field(5).one
    with pytest.raises(UnsupportedField):
        supported_field(6)
    with pytest.raises(NotPrime):
        prime_power(12)


def test_inverse_exhaustive(field):
    one = field.one
    for a in enumerate_elements(field)[1:]:
        assert a * a.inv() == one


def test_fermat_exhaustive(field):
    for a in enumerate_elements(field):
        assert a ** field.q == a


def test_frobenius_order_is_k(field):
    for a in enumerate_elements(field):
        b = a
        for _ in range(field.k):
            b = frobenius(b)
        assert b == a


def test_frobenius_is_a_ring_map(field):
    if field.q > 9:
        pytest.skip("pairs checked exhaustively up to q = 9")
    els = enumerate_elements(field)
    for a, b in itertools.product(els, repeat=2):
        assert frobenius(a + b) == frobenius(a) + frobenius(b)
        assert frobenius(a * b) == frobenius(a) * frobenius(b)


def test_tables_match_direct_arithmetic(field):
    q = field.q
    idx = np.arange(q)
    for a in range(q):
        for b in range(q):
            assert field.mul_table[a, b] == field._mul_direct(a, b)
            assert field.add_table[a, b] == field.add_idx(a, b)
    assert all(field.add_table[idx, field.neg_table] == 0)
    assert all(field.mul_table[idx[1:], field.inv_table[1:]] == 1)


def test_field_axioms_sampled(field):
    rng = np.random.default_rng(field.q)
    els = enumerate_elements(field)
    for _ in range(200):
        a, b, c = (els[i] for i in rng.integers(0, field.q, 3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - b + b == a


def test_large_field_uses_log_tables():
    f = make_field(8191)
    a = f.elem(1234)
    assert (a * a.inv()) == f.one
    assert a ** 8191 == a


def test_pickle_roundtrip():
    f = make_field(3, 2)
    assert pickle.loads(pickle.dumps(f)) is f

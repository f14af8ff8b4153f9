import itertools
import random

import pytest

from moduli_count.errors import EmptyTuple, FieldMismatch
from moduli_count.gf import enumerate_elements, make_field, supported_field
from moduli_count.mat2 import (
    Mat2,
    PglElement,
    char_data,
    conjugate,
    enumerate_pgl2,
    pgl2_order,
    subalgebra_dim,
)

F2, F3, F5 = make_field(2), make_field(3), make_field(5)


def E(i, j, spec=F3):
    return Mat2.unit(spec, i, j)


def all_matrices(spec):
    for e in itertools.product(range(spec.q), repeat=4):
        yield Mat2.from_indices(spec, e)


def test_unit_products():
    assert E(1, 2) @ E(2, 1) == E(1, 1)
    assert E(1, 2) @ E(1, 2) == Mat2.zero(F3)


def test_unipotent_product_f3():
    a = Mat2.from_rows(F3, [[1, 2], [0, 1]])
    b = Mat2.from_rows(F3, [[1, 1], [0, 1]])
    assert a @ b == Mat2.identity(F3)


def test_arithmetic_mismatch():
    with pytest.raises(FieldMismatch):
        Mat2.identity(F2) + Mat2.identity(F3)


def test_scalar_multiplication():
    a = Mat2.from_rows(F5, [[1, 2], [3, 4]])
    assert (2 * a).indices == (2, 4, 1, 3)
    assert a - a == Mat2.zero(F5)


def test_char_data_examples():
    assert [c.index for c in char_data(E(1, 2, F2))] == [0, 0, 0]
    for spec in (F2, F3, F5, make_field(2, 2)):
        assert [c.index for c in char_data(Mat2.diag(spec, 0, 1))] == [1, 0, 1]
    a = Mat2.from_rows(F2, [[0, 1], [1, 1]])
    assert [c.index for c in char_data(a)] == [1, 1, 1]


def test_conjugate_examples():
    a = Mat2.diag(F5, 2, 3)
    assert conjugate(PglElement(Mat2.identity(F5)), a) == a
    swap = PglElement(Mat2.from_rows(F5, [[0, 1], [1, 0]]))
    assert conjugate(swap, a) == Mat2.diag(F5, 3, 2)
    u = PglElement(Mat2.from_rows(F2, [[1, 1], [0, 1]]))
    assert conjugate(u, E(1, 2, F2)) == E(1, 2, F2)


def test_pgl_normalization_is_scalar_invariant():
    g = Mat2.from_rows(F5, [[0, 3], [2, 4]])
    for s in range(1, 5):
        assert PglElement(F5.elem(s) * g) == PglElement(g)
    assert PglElement(g).rep.a12 == F5.one


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_pgl2_enumeration(q):
    spec = supported_field(q)
    group = enumerate_pgl2(spec)
    assert len(group) == q**3 - q == pgl2_order(q)
    assert len(set(group)) == len(group)
    for g in group:
        assert g.rep.det() != spec.zero
    # canonical form means no two representatives are proportional
    assert len({PglElement(s * g.rep) for g in group for s in enumerate_elements(spec)[1:]}) == len(group)


@pytest.mark.parametrize("spec", [F2, F3], ids=["q2", "q3"])
def test_conjugation_is_an_action_exhaustive(spec):
    group = enumerate_pgl2(spec)
    rng = random.Random(0)
    mats = list(all_matrices(spec))
    sample = mats if spec.q == 2 else rng.sample(mats, 8)
    for p, g in itertools.product(group, repeat=2):
        for a in sample:
            assert conjugate(p @ g, a) == conjugate(p, conjugate(g, a))


def test_conjugation_is_an_action_random_f5():
    group = enumerate_pgl2(F5)
    rng = random.Random(5)
    for _ in range(300):
        p, g = rng.choice(group), rng.choice(group)
        a = Mat2.from_indices(F5, [rng.randrange(5) for _ in range(4)])
        assert conjugate(p @ g, a) == conjugate(p, conjugate(g, a))
        assert conjugate(p.inverse(), conjugate(p, a)) == a


def test_subalgebra_examples():
    assert subalgebra_dim([Mat2.zero(F3)]).dim == 1
    sb = subalgebra_dim([E(1, 2)])
    assert sb.dim == 2
    assert sb.contains(Mat2.identity(F3)) and sb.contains(E(1, 2))
    assert subalgebra_dim([E(1, 2), E(2, 1)]).dim == 4
    assert subalgebra_dim([E(1, 2), E(1, 1)]).dim == 3


def test_subalgebra_errors():
    with pytest.raises(EmptyTuple):
        subalgebra_dim([])
    with pytest.raises(FieldMismatch):
        subalgebra_dim([Mat2.identity(F2), Mat2.identity(F3)])


def test_subalgebra_is_conjugation_invariant_q2():
    group = enumerate_pgl2(F2)
    mats = list(all_matrices(F2))
    for m in (1, 2):
        for tup in itertools.product(mats, repeat=m):
            d = subalgebra_dim(tup).dim
            for g in group:
                assert subalgebra_dim([conjugate(g, a) for a in tup]).dim == d


@pytest.mark.parametrize("spec", [F2, F3, make_field(2, 2)], ids=["q2", "q3", "q4"])
def test_subalgebra_closed_and_unital(spec):
    rng = random.Random(spec.q)
    for _ in range(150):
        m = rng.randint(1, 3)
        tup = [Mat2.from_indices(spec, [rng.randrange(spec.q) for _ in range(4)]) for _ in range(m)]
        sb = subalgebra_dim(tup)
        assert 1 <= sb.dim <= 4 and len(sb.basis) == sb.dim
        assert sb.contains(Mat2.identity(spec))
        assert all(sb.contains(a) for a in tup)
        for x, y in itertools.product(sb.basis, repeat=2):
            assert sb.contains(x @ y)

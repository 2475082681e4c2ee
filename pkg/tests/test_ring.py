import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import corpus_ring, small_rings
from sspring.config import Caps
from sspring.errors import CapExceeded, DescriptorError
from sspring.fixtures import CORPUS, SPARSE_MASK
from sspring.ring import (FiniteRing, arith, construct, corner, corner_ring, invertibility, matrix,
                          opposite, opposite_ring, pattern, predicted_size, product, table,
                          validate_axioms, zmod)


def test_corpus_sizes_match_prediction(corpus_name):
    desc = CORPUS[corpus_name]
    assert corpus_ring(corpus_name).size == predicted_size(desc)


def test_corpus_rings_satisfy_axioms(corpus_name):
    report = validate_axioms(corpus_ring(corpus_name))
    assert report.passed, report.first_violation


@given(small_rings)
def test_generated_rings_satisfy_axioms(R):
    assert validate_axioms(R).passed


def test_bad_table_reports_first_violation():
    # Z/3 addition with a multiplication that is not distributive
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    report = validate_axioms(construct(table(add, mul, 0, 1)))
    assert not report.passed
    name, where = report.first_violation
    assert name in ("mul_associativity", "left_distributivity")
    assert all(0 <= x < 3 for x in where)


def test_zero_equals_one_only_in_the_zero_ring():
    assert validate_axioms(construct(zmod(1))).passed
    add = [[0, 1], [1, 0]]
    report = validate_axioms(construct(table(add, [[0, 0], [0, 0]], 0, 0)))
    assert not report.passed


def test_matrix_labels_round_trip():
    R = corpus_ring("m2-f2")
    assert R.size == 16
    assert R.label(R.zero) == "0"
    assert R.label(R.one) == "e11+e22"
    for a in range(R.size):
        assert R.index_of(R.label(a)) == a


def test_matrix_multiplication_matches_oracle():
    R = construct(pattern(SPARSE_MASK, zmod(2)))
    ref = oracle.MatRing(2, SPARSE_MASK)
    # element numbering follows the oracle's row-major enumeration
    lookup = {m: i for i, m in enumerate(ref.elems)}
    for a, x in enumerate(ref.elems):
        for b, y in enumerate(ref.elems):
            assert R.mul[a, b] == lookup[ref.mul(x, y)]
            assert R.add[a, b] == lookup[ref.add(x, y)]


def test_product_is_componentwise():
    R = construct(product(zmod(2), zmod(3)))
    assert R.size == 6
    assert R.label(R.one) == "(1,1)"
    assert sum(R.units) == 2


def test_arith_dispatch():
    R = construct(zmod(7))
    assert arith(R, "add", 5, 4) == 2
    assert arith(R, "mul", 3, 5) == 1
    assert arith(R, "sub", 2, 5) == 4
    assert arith(R, "neg", 3) == 4
    assert arith(R, "pow", 3, 6) == 1
    with pytest.raises(ValueError):
        arith(R, "div", 1, 1)
    with pytest.raises(IndexError):
        R.plus(7, 0)


def test_invertibility_in_z6():
    R = construct(zmod(6))
    assert invertibility(R, 5).two_sided_inverse == 5
    assert invertibility(R, 2).two_sided_inverse is None
    assert [a for a in range(6) if R.units[a]] == [1, 5]


@given(small_rings, st.data())
def test_one_sided_inverses_coincide(R, data):
    a = data.draw(st.integers(0, R.size - 1))
    inv = invertibility(R, a)
    assert inv.left_inverses == inv.right_inverses


@given(small_rings)
def test_opposite_is_an_involution(R):
    op = opposite_ring(R)
    assert np.array_equal(op.mul, R.mul.T)
    assert opposite_ring(op) is R
    assert validate_axioms(op).passed


def test_corner_of_sparse_ring_has_oracle_size():
    R = construct(pattern(SPARSE_MASK, zmod(2)))
    ref = oracle.MatRing(2, SPARSE_MASK)
    e_ref = ref.from_units((1, 1), (3, 3))
    expected = len({ref.mul(ref.mul(e_ref, x), e_ref) for x in ref.elems})
    e = R.index_of("e11+e33")
    C, emb = corner_ring(R, e)
    assert C.size == expected == 8
    assert emb[C.one] == e
    assert validate_axioms(C).passed
    assert C.descriptor == corner(R.descriptor, e)
    assert construct(C.descriptor).same_tables(C)


def test_corner_needs_idempotent():
    R = construct(zmod(4))
    with pytest.raises(DescriptorError):
        corner_ring(R, 2)


def test_cap_is_enforced_before_building():
    with pytest.raises(CapExceeded):
        construct(matrix(3, zmod(4)), Caps().size)
    with pytest.raises(CapExceeded):
        construct(zmod(10), 8)


@pytest.mark.parametrize("desc, path", [
    (zmod(0), "n"),
    (pattern(((1, 0), (1, 0)), zmod(2)), "mask[1][1]"),
    (pattern(((1, 1, 0), (0, 1, 1), (0, 0, 1)), zmod(2)), "mask[0][2]"),
    (matrix(2, zmod(0)), "base.n"),
    (opposite(product()), "base.factors"),
])
def test_descriptor_errors_name_the_field(desc, path):
    with pytest.raises(DescriptorError) as err:
        construct(desc)
    assert err.value.path == path


def test_table_ring_rejects_out_of_range_entries():
    with pytest.raises(DescriptorError):
        FiniteRing(2, np.array([[0, 1], [1, 2]]), np.zeros((2, 2), dtype=int), 0, 1)

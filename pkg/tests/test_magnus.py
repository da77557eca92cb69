import random

import pytest

from hoinv.fields import GF, QQ
from hoinv.groupalg import graded_dims_from_group
from hoinv.magnus import (MemoryCapExceeded, TruncatedTensor, GradedDims,
                          enumerate_monomials, graded_dims, magnus_expand,
                          quotient_algebra)
from hoinv.words import GroupPresentation, Word, hom_space, parse_word


def test_expand_examples():
    a = parse_word("a", ["a", "b"])
    t = magnus_expand(a, 2, 3, QQ)
    assert t.coeffs == {(): QQ.one(), (0,): QQ.one()}
    tinv = magnus_expand(a.inverse(), 2, 2, QQ)
    assert tinv.coeffs == {(): QQ.one(), (0,): QQ.from_int(-1), (0, 0): QQ.one()}
    comm = magnus_expand(parse_word("[a,b]", ["a", "b"]), 2, 2, QQ)
    assert comm.coeffs == {(): QQ.one(), (0, 1): QQ.one(), (1, 0): QQ.from_int(-1)}


def test_expand_constant_term_and_inverse_law():
    rng = random.Random(9)
    for _ in range(20):
        w = Word([(rng.randrange(2), rng.choice((1, -1)))
                  for _ in range(rng.randrange(0, 7))])
        t = magnus_expand(w, 2, 4, GF(3))
        assert t.constant_term() == 1
        assert (t * magnus_expand(w.inverse(), 2, 4, GF(3))).is_one()


def test_expand_multiplicative():
    rng = random.Random(13)
    for _ in range(15):
        u = Word([(rng.randrange(2), rng.choice((1, -1))) for _ in range(4)])
        v = Word([(rng.randrange(2), rng.choice((1, -1))) for _ in range(4)])
        lhs = magnus_expand(u * v, 2, 3, QQ)
        rhs = magnus_expand(u, 2, 3, QQ) * magnus_expand(v, 2, 3, QQ)
        assert lhs == rhs


def test_quotient_algebra_free():
    qa = quotient_algebra(GroupPresentation(["a", "b"]), QQ, 3)
    assert qa.ideal.dim == 0
    assert qa.quotient_dim == 15  # 1 + 2 + 4 + 8
    assert list(qa.graded) == [1, 2, 4, 8]
    assert qa.filtration_dims() == [15, 14, 12, 8, 0]


def test_quotient_algebra_commutator_degree2():
    pres = GroupPresentation(["a", "b"], ["[a,b]"])
    qa = quotient_algebra(pres, QQ, 2)
    assert qa.quotient_dim == 6  # 1 + 2 + 3
    # the degree-2 part of the ideal is exactly span{AB - BA}
    deg2 = [row for row in qa.ideal.basis]
    assert qa.ideal.dim == 1
    monos = qa.monomials
    row = deg2[0]
    nz = {monos[j]: row[j] for j in range(len(monos)) if row[j]}
    assert nz == {(0, 1): QQ.one(), (1, 0): QQ.from_int(-1)}


def test_quotient_algebra_char2_fourth_power():
    qa = quotient_algebra(GroupPresentation(["a"], ["a^4"]), GF(2), 5)
    # (1+A)^4 - 1 = A^4 in characteristic 2; ideal is (A^4) truncated
    assert qa.ideal.pivots == (4, 5)
    assert list(qa.graded) == [1, 1, 1, 1, 0, 0]


def test_graded_dims_examples():
    assert list(graded_dims(GroupPresentation(["a", "b"]), QQ, 5)) \
        == [1, 2, 4, 8, 16, 32]
    assert list(graded_dims(GroupPresentation(["a", "b"], ["[a,b]"]), QQ, 4)) \
        == [1, 2, 3, 4, 5]
    assert list(graded_dims(GroupPresentation(["a"]), QQ, 6)) == [1] * 7
    genus2 = GroupPresentation(["a", "b", "c", "d"], ["[a,b][c,d]"])
    g = graded_dims(genus2, QQ, 2)
    assert g[1] == 4 and g[2] == 15


def test_graded_first_dim_is_hom_corank():
    for pres in (GroupPresentation(["a", "b"], ["a^2 b^-3"]),
                 GroupPresentation(["a", "b"], ["[a,b]"]),
                 GroupPresentation(["a"], ["a^5"])):
        for field in (QQ, GF(2), GF(5)):
            assert graded_dims(pres, field, 2)[1] == hom_space(pres, field).dim


def test_submultiplicativity():
    pres = GroupPresentation(["a", "b"], ["a^2"])
    values = list(graded_dims(pres, GF(2), 6))
    for q in range(1, 4):
        for r in range(1, 4):
            assert values[q + r] <= values[q] * values[r]


def test_cross_oracle_with_group_algebra(z4, s3):
    assert graded_dims_from_group(z4, GF(2), 5) \
        == list(graded_dims(GroupPresentation(["a"], ["a^4"]), GF(2), 5)) \
        == [1, 1, 1, 1, 0, 0]
    pres_s3 = GroupPresentation(["s", "t"], ["s^2", "t^3", "(s t)^2"])
    assert graded_dims_from_group(s3, GF(3), 3) \
        == list(graded_dims(pres_s3, GF(3), 3)) == [1, 0, 0, 0]
    assert graded_dims_from_group(s3, GF(2), 3) \
        == list(graded_dims(pres_s3, GF(2), 3))


def test_memory_cap(monkeypatch):
    pres = GroupPresentation(["a", "b"])
    with pytest.raises(MemoryCapExceeded) as err:
        quotient_algebra(pres, QQ, 10, memory_cap=100)
    assert err.value.required == sum(2 ** k for k in range(11))
    monkeypatch.setenv("HOI_MEMORY_CAP_SCALARS", "3")
    with pytest.raises(MemoryCapExceeded):
        quotient_algebra(pres, QQ, 2)
    monkeypatch.setenv("HOI_MEMORY_CAP_SCALARS", "1000")
    assert quotient_algebra(pres, QQ, 2).quotient_dim == 7


def test_monomial_order_and_graded_type():
    monos = enumerate_monomials(2, 2)
    assert monos == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(ValueError):
        GradedDims([2, 1])
    with pytest.raises(ValueError):
        GradedDims([1, -1])
    assert GradedDims([1, 2]) == [1, 2]


def test_tensor_type_invariants():
    t = TruncatedTensor(QQ, 2, 3, {(): QQ.one(), (0, 1): QQ.zero()})
    assert (0, 1) not in t.coeffs  # zero coefficients are dropped
    one = TruncatedTensor.one(QQ, 2, 3)
    assert (t * one) == t

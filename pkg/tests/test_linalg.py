import itertools
import random

import pytest

from hoinv.fields import GF, QQ
from hoinv.linalg import (DimensionMismatch, EchelonBasis, Matrix, Subspace,
                          kernel, matrix_from_columns, quotient_map, solve,
                          span_closure)


def all_vectors(field, n):
    return itertools.product(range(field.p), repeat=n)


def test_kernel_identity_and_zero():
    assert kernel(Matrix.identity(QQ, 2)).dim == 0
    assert kernel(Matrix.zeros(QQ, 3, 3)).dim == 3


def test_kernel_f2_matches_enumeration():
    f = GF(2)
    m = Matrix.from_values(f, [[1, 1], [0, 0]])
    k = kernel(m)
    expected = {v for v in all_vectors(f, 2) if not any(m.apply(v))}
    assert k.dim == 1 and k.basis == ((1, 1),)
    assert {v for v in all_vectors(f, 2) if k.contains(v)} == expected


@pytest.mark.parametrize("p,n", [(2, 5), (2, 8), (3, 4)])
def test_kernel_brute_force(p, n):
    f = GF(p)
    rng = random.Random(n * p)
    m = Matrix(f, [[rng.randrange(p) for _ in range(n)] for _ in range(3)])
    k = kernel(m)
    members = [v for v in all_vectors(f, n) if not any(m.apply(v))]
    assert len(members) == p ** k.dim
    assert all(k.contains(v) for v in members)
    assert k.dim + m.rank() == n  # rank-nullity


def test_rref_canonicity_under_row_ops():
    f = GF(3)
    rng = random.Random(11)
    base = [(1, 2, 0, 1), (0, 1, 1, 1), (2, 0, 1, 0)]
    reference = Subspace.from_vectors(f, 4, base)
    for _ in range(25):
        rows = [list(r) for r in base]
        for _ in range(6):
            i, j = rng.randrange(3), rng.randrange(3)
            c = rng.randrange(1, 3)
            if i != j:
                rows[i] = [(a + c * b) % 3 for a, b in zip(rows[i], rows[j])]
            else:
                rows[i] = [(c * a) % 3 for a in rows[i]]
        assert Subspace.from_vectors(f, 4, rows) == reference


def test_span_closure_examples():
    e1 = (1, 0, 0)
    ident = Matrix.identity(QQ, 3)
    assert span_closure([e1], [ident]).basis == ((1, 0, 0),)
    shift = Matrix.from_values(QQ, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert span_closure([e1], [shift]).dim == 3
    empty = span_closure([], [shift])
    assert empty.dim == 0 and empty.ambient_dim == 3


def test_span_closure_idempotent_and_mismatch():
    shift = Matrix.from_values(QQ, [[0, 1], [1, 0]])
    s = span_closure([(1, 2)], [shift])
    assert span_closure(s.basis, [shift]) == s
    with pytest.raises(DimensionMismatch):
        span_closure([(1, 0, 0)], [shift])


def test_quotient_map_examples():
    full2 = Subspace.full(QQ, 2)
    line = Subspace.from_vectors(QQ, 2, [(1, 0)])
    qm = quotient_map(full2, line)
    assert qm.dim == 1
    assert qm.project((0, 1)) == (1,)
    assert qm.project((1, 0)) == (0,)

    same = quotient_map(line, line)
    assert same.dim == 0 and same.coset_reps == ()

    big = Subspace.from_vectors(QQ, 4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    small = Subspace.from_vectors(QQ, 4, [(1, 0, 0, 0)])
    qm2 = quotient_map(big, small)
    assert qm2.dim == 2
    for i, rep in enumerate(qm2.coset_reps):
        coords = qm2.project(rep)
        assert coords == tuple(QQ.one() if j == i else QQ.zero() for j in range(2))

    with pytest.raises(ValueError):
        quotient_map(line, full2)


def test_quotient_lift_project_roundtrip():
    f = GF(5)
    big = Subspace.from_vectors(f, 3, [(1, 0, 2), (0, 1, 3), (0, 0, 1)])
    small = Subspace.from_vectors(f, 3, [(1, 2, 0)])
    qm = quotient_map(big, small)
    assert qm.dim == 2
    for coords in itertools.product(range(5), repeat=2):
        assert qm.project(qm.lift(coords)) == coords


def test_intersection_sum_brute_force():
    f = GF(2)
    n = 6
    rng = random.Random(3)
    a = Subspace.from_vectors(f, n, [[rng.randrange(2) for _ in range(n)] for _ in range(3)])
    b = Subspace.from_vectors(f, n, [[rng.randrange(2) for _ in range(n)] for _ in range(3)])
    inter = a.intersection(b)
    summed = a.sum(b)
    members_a = {v for v in all_vectors(f, n) if a.contains(v)}
    members_b = {v for v in all_vectors(f, n) if b.contains(v)}
    both = members_a & members_b
    assert len(both) == 2 ** inter.dim
    assert all(inter.contains(v) for v in both)
    assert summed.dim == a.dim + b.dim - inter.dim


def test_solve_consistent_and_inconsistent():
    m = Matrix.from_values(QQ, [[1, 2], [2, 4]])
    assert solve(m, (1, 2)) is not None
    assert solve(m, (1, 3)) is None
    x = solve(Matrix.from_values(QQ, [[2, 1], [1, 1]]), (3, 2))
    assert x == (QQ.one(), QQ.one())


def test_kron_compatibility():
    a = Matrix.from_values(QQ, [[1, 2], [0, 1]])
    b = Matrix.from_values(QQ, [[0, 1], [1, 1]])
    v, w = (3, 1), (1, 2)
    big = a.kron(b)
    vw = tuple(QQ.mul(QQ.from_int(x), QQ.from_int(y)) for x in v for y in w)
    av, bw = a.apply([QQ.from_int(x) for x in v]), b.apply([QQ.from_int(y) for y in w])
    assert big.apply(vw) == tuple(QQ.mul(x, y) for x in av for y in bw)


def test_subspace_kron_dimension():
    u = Subspace.from_vectors(QQ, 2, [(1, 1)])
    w = Subspace.from_vectors(QQ, 3, [(1, 0, 0), (0, 1, 0)])
    assert u.kron(w).dim == 2
    assert u.kron(w).ambient_dim == 6


def test_matrix_inverse_and_pow():
    m = Matrix.from_values(GF(7), [[2, 1], [1, 1]])
    assert (m * m.inverse()).is_identity()
    assert m ** 0 == Matrix.identity(GF(7), 2)
    assert m ** -2 == (m.inverse()) * (m.inverse())
    with pytest.raises(ZeroDivisionError):
        Matrix.from_values(QQ, [[1, 2], [2, 4]]).inverse()


@pytest.mark.parametrize("field", [QQ, GF(2), GF(7)])
def test_echelon_accumulator_matches_dense(field):
    rng = random.Random(17)
    n = 6
    vectors = []
    for _ in range(8):
        if field.p is None:
            vec = [QQ.parse_scalar(f"{rng.randrange(-4, 5)}/{rng.randrange(1, 4)}")
                   for _ in range(n)]
        else:
            vec = [rng.randrange(field.p) for _ in range(n)]
        vectors.append(tuple(vec))
    acc = EchelonBasis(field, n)
    for v in vectors:
        acc.insert({j: a for j, a in enumerate(v) if a})
    assert acc.to_subspace() == Subspace.from_vectors(field, n, vectors)


def test_matrix_from_columns_shapes():
    m = matrix_from_columns(QQ, [(1, 2), (3, 4)], 2)
    assert m.entries == ((1, 3), (2, 4))
    empty = matrix_from_columns(QQ, [], 3)
    assert empty.nrows == 3 and empty.ncols == 0
    wide = matrix_from_columns(QQ, [(), ()], 0)
    assert wide.nrows == 0 and wide.ncols == 2

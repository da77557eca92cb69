import pytest

from conftest import jordan_matrix

from hoinv.fields import GF, QQ
from hoinv.groupalg import AModule, ExtComplex, free_resolution
from hoinv.invariants import (Representation, h1_fox, invariants_direct,
                              invariants_filtration, lambda_power,
                              order_lowering, representation_hom_space,
                              restriction_check)
from hoinv.linalg import Matrix
from hoinv.words import GroupPresentation


def z_pres():
    return GroupPresentation(["a"])


def test_representation_relator_guard():
    pres = GroupPresentation(["a"], ["a^3"])
    with pytest.raises(ValueError):
        Representation(QQ, [Matrix.from_values(QQ, [[2]])], presentation=pres)
    # 3-cycle permutation matrix satisfies a^3
    rho = Matrix.from_values(GF(3), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    rep = Representation(GF(3), [rho], presentation=pres)
    assert rep.dim == 3


def test_filtration_jordan_examples():
    rep = Representation(QQ, [jordan_matrix(2)], presentation=z_pres())
    assert invariants_filtration(rep, 3).dims() == [1, 2, 2, 2]
    for k in (3, 4, 6):
        repk = Representation(QQ, [jordan_matrix(k)], presentation=z_pres())
        filt = invariants_filtration(repk, k + 1)
        assert filt.dims() == list(range(1, k + 1)) + [k, k]
        assert filt.graded_dims() == [1] * k + [0, 0]


def test_filtration_trivial_rep(commutator2):
    rep = Representation.trivial(QQ, 4, presentation=commutator2)
    assert invariants_filtration(rep, 3).dims() == [4, 4, 4, 4]


def test_filtration_regular_cyclic(z3):
    rep = Representation.regular(z3, GF(3))
    filt = invariants_filtration(rep, 3)
    assert filt.dims() == [1, 2, 3, 3]
    for q in range(4):
        assert invariants_direct(rep, q) == filt.spaces[q]


def test_direct_route_requires_group(commutator2):
    rep = Representation.trivial(QQ, 1, presentation=commutator2)
    with pytest.raises(ValueError):
        invariants_direct(rep, 1)


def test_direct_equals_recursive_everywhere(z3, z4, z2z2, s3, fields):
    cases = [(z3, fields["F3"]), (z4, fields["F2"]), (z2z2, fields["F2"]),
             (s3, fields["F2"]), (s3, fields["F3"]), (s3, fields["Q"])]
    for group, field in cases:
        for rep in (Representation.regular(group, field),
                    Representation.trivial(field, 1, group=group)):
            filt = invariants_filtration(rep, 4)
            for q in range(5):
                assert invariants_direct(rep, q) == filt.spaces[q]


def test_semisimple_collapse(s3):
    rep = Representation.regular(s3, QQ)
    filt = invariants_filtration(rep, 4)
    assert filt.dims() == [1, 1, 1, 1, 1]


def test_order_lowering_jordan():
    rep = Representation(QQ, [jordan_matrix(2)], presentation=z_pres())
    filt = invariants_filtration(rep, 1)
    ol = order_lowering(rep, filt, 1)
    assert ol.matrix.entries == ((QQ.one(),),)  # e2-bar maps to e1-bar
    assert ol.injective and ol.relator_consistent


def test_order_lowering_trivial_rep(commutator2):
    rep = Representation.trivial(QQ, 2, presentation=commutator2)
    filt = invariants_filtration(rep, 1)
    ol = order_lowering(rep, filt, 1)
    assert ol.matrix.ncols == 0  # empty map on a zero graded piece
    assert ol.injective


def test_order_lowering_relator_consistency(z3):
    pres = GroupPresentation(["a"], ["a^3"])
    rho = Matrix.from_values(GF(3), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    rep = Representation(GF(3), [rho], presentation=pres)
    filt = invariants_filtration(rep, 2)
    assert filt.dims() == [1, 2, 3]
    for q in (1, 2):
        ol = order_lowering(rep, filt, q)
        assert ol.injective and ol.relator_consistent


def test_lambda_power_jordan_chain():
    for k in (2, 4, 6):
        rep = Representation(QQ, [jordan_matrix(k)], presentation=z_pres())
        filt = invariants_filtration(rep, k)
        for q in range(1, k):
            lp = lambda_power(rep, q, filt)
            assert lp.injective
            assert filt.graded(q).dim == 1 <= lp.hom_dim ** q * lp.fixed_dim
            assert not lp.matrix.is_zero()


def test_lambda_power_free_group_example(free2):
    rep = Representation(QQ, [Matrix.from_values(QQ, [[1, 1], [0, 1]]),
                              Matrix.identity(QQ, 2)], presentation=free2)
    filt = invariants_filtration(rep, 1)
    assert filt.graded(1).dim == 1
    lp = lambda_power(rep, 1, filt)
    assert lp.injective
    assert lp.hom_dim == 2 and lp.fixed_dim == 1
    assert filt.graded(1).dim <= lp.hom_dim * lp.fixed_dim


def test_hom_space_for_both_sources(z3, free2):
    rep_p = Representation.trivial(QQ, 1, presentation=free2)
    assert representation_hom_space(rep_p).dim == 2
    rep_g = Representation.trivial(GF(3), 1, group=z3)
    assert representation_hom_space(rep_g).dim == 1


def test_restriction_examples():
    rep = Representation(QQ, [jordan_matrix(2)], presentation=z_pres())
    rr = restriction_check(rep, ["a^2"], 2)
    assert rr.group_dims == [1, 2, 2] and rr.subgroup_dims == [1, 2, 2]
    assert rr.all_contained and rr.all_injective

    same = restriction_check(rep, ["a"], 2)
    assert same.all_injective and same.subgroup_dims == same.group_dims

    triv = Representation.trivial(QQ, 3, presentation=z_pres())
    rt = restriction_check(triv, ["a^5"], 2)
    assert rt.group_dims == rt.subgroup_dims == [3, 3, 3]
    assert rt.all_injective


def test_h1_fox_examples(free2):
    pres3 = GroupPresentation(["a"], ["a^3"])
    assert h1_fox(Representation.trivial(GF(3), 1, presentation=pres3)).dim == 1
    assert h1_fox(Representation.trivial(QQ, 1, presentation=pres3)).dim == 0
    assert h1_fox(Representation.trivial(QQ, 1, presentation=free2)).dim == 2


def test_h1_fox_matches_ext_route(z3):
    # presentation <a | a^3> vs the enumerated cyclic group, same module
    f3 = GF(3)
    pres = GroupPresentation(["a"], ["a^3"])
    for dim_mats, module in (
        ([Matrix.identity(f3, 1)], AModule.trivial(z3, f3)),
        ([Matrix.from_values(f3, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])],
         AModule.regular(z3, f3)),
    ):
        rep = Representation(f3, dim_mats, presentation=pres)
        fox_dim = h1_fox(rep).dim
        triv = AModule.trivial(z3, f3)
        res = free_resolution(z3, f3, triv, 2)
        ext_dim = ExtComplex(res, module).group(1).dim
        assert fox_dim == ext_dim

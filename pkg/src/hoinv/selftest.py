"""Built-in self test: every operation of every module runs at least once
on the embedded corpus plus a few handmade cases."""

from __future__ import annotations

import random

from .checks import run_checks
from .corpus import CORPUS
from .fields import GF, QQ
from .groupalg import (AModule, EnumerationCapExceeded, ExtComplex,
                       aug_power, aug_power_chain, enumerate_group, ext,
                       ext_induced, free_resolution, graded_dims_from_group,
                       long_exact_sequence, augmentation_quotient_module)
from .instances import loads_instance
from .invariants import (Representation, invariants_direct,
                         invariants_filtration, lambda_power, order_lowering,
                         restriction_check, h1_fox)
from .linalg import Matrix, Subspace, kernel, matrix_from_columns, quotient_map, span_closure
from .magnus import graded_dims, magnus_expand, quotient_algebra
from .words import (GroupPresentation, WordSyntaxError, fox_derivative,
                    exponent_matrix, hom_space, parse_word)

_REGISTRY = []


def _item(name):
    def deco(fn):
        _REGISTRY.append((name, fn))
        return fn
    return deco


def _expect(cond, message):
    if not cond:
        raise AssertionError(message)


@_item("word grammar: parse, sugar, print round-trip, error positions")
def _t_words():
    gens = ["a", "b", "c", "d"]
    w = parse_word("[a,b][c,d]", gens)
    _expect(len(w) == 8, "commutator product should have length 8")
    _expect(parse_word(w.format(gens), gens) == w, "print/parse round trip")
    _expect(parse_word("a a^-1", ["a"]).is_identity(), "free reduction")
    _expect(parse_word("(a b)^-2", ["a", "b"]) ==
            parse_word("b^-1 a^-1 b^-1 a^-1", ["a", "b"]), "grouped powers")
    try:
        parse_word("a q", ["a"])
    except WordSyntaxError as exc:
        _expect(exc.pos == 2, f"error position, got {exc.pos}")
    else:
        raise AssertionError("unknown generator accepted")


@_item("fox derivative: base cases and the fundamental identity")
def _t_fox():
    gens = ["a", "b"]
    d = fox_derivative(parse_word("a b a^-1 b^-1", gens), 0)
    _expect([(s, w.format(gens)) for s, w in d.terms]
            == [(1, ""), (-1, "a b a^-1")], "commutator derivative terms")
    pres = GroupPresentation(gens)
    rep = Representation(QQ, [Matrix.from_values(QQ, [[1, 1], [0, 1]]),
                              Matrix.from_values(QQ, [[1, 0], [1, 1]])],
                         presentation=pres)
    rng = random.Random(7)
    ident = Matrix.identity(QQ, 2)
    for _ in range(25):
        letters = [(rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randrange(1, 9))]
        w = parse_word(" ".join((gens[g] if e == 1 else f"{gens[g]}^-1")
                                for g, e in letters), gens)
        lhs = rep.word_matrix(w) - ident
        rhs = Matrix.zeros(QQ, 2, 2)
        for i in range(2):
            rhs = rhs + rep.fox_matrix(fox_derivative(w, i)) * (rep.gen_matrices[i] - ident)
        _expect(lhs == rhs, "fundamental identity")


@_item("exponent matrix and hom space")
def _t_hom():
    pres = GroupPresentation(["a", "b"], ["a^2 b^-3"])
    _expect(exponent_matrix(pres) == ((2, -3),), "exponent sums")
    _expect(hom_space(pres, QQ).dim == 1, "corank over Q")
    _expect(hom_space(GroupPresentation(["a"], ["a^5"]), GF(5)).dim == 1,
            "corank mod 5")


@_item("exact linear algebra: kernel, closure, quotient coordinates")
def _t_linalg():
    m = Matrix.from_values(GF(3), [[1, 2, 0], [2, 1, 1]])
    k = kernel(m)
    _expect(k.dim + m.rank() == m.ncols, "rank-nullity")
    shift = Matrix.from_values(QQ, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    closed = span_closure([(1, 0, 0)], [shift])
    _expect(closed.dim == 3, "cyclic shift closure fills the space")
    _expect(span_closure(closed.basis, [shift]) == closed, "closure idempotent")
    big = Subspace.from_vectors(QQ, 3, [(1, 0, 0), (0, 1, 0)])
    small = Subspace.from_vectors(QQ, 3, [(1, 0, 0)])
    qm = quotient_map(big, small)
    _expect(qm.dim == 1 and qm.project((3, 5, 0)) == (5,), "quotient coordinates")


@_item("truncated expansion: letter series, product law, relator ideals")
def _t_magnus():
    pres_free = GroupPresentation(["a", "b"])
    w = parse_word("[a,b]", ["a", "b"])
    t = magnus_expand(w, 2, 2, QQ)
    _expect(t.coeffs == {(): QQ.one(), (0, 1): QQ.one(), (1, 0): -QQ.one()},
            "commutator expansion at depth 2")
    winv = magnus_expand(w.inverse(), 2, 4, QQ)
    _expect((magnus_expand(w, 2, 4, QQ) * winv).is_one(), "inverse law")
    _expect(quotient_algebra(pres_free, QQ, 3).quotient_dim == 15, "free quotient")
    _expect(list(graded_dims(GroupPresentation(["a", "b"], ["[a,b]"]), QQ, 4))
            == [1, 2, 3, 4, 5], "commutative growth")
    qa = quotient_algebra(GroupPresentation(["a"], ["a^4"]), GF(2), 5)
    _expect(qa.ideal.pivots == (4, 5), "char-2 fourth power ideal")


@_item("graded dimensions agree across the two routes")
def _t_cross_oracle():
    z4 = enumerate_group([(1, 2, 3, 0)], ["a"])
    via_group = graded_dims_from_group(z4, GF(2), 5)
    via_algebra = list(graded_dims(GroupPresentation(["a"], ["a^4"]), GF(2), 5))
    _expect(via_group == via_algebra == [1, 1, 1, 1, 0, 0], "cyclic 4 mod 2")
    s3 = enumerate_group([(1, 0, 2), (1, 2, 0)], ["s", "t"])
    pres = GroupPresentation(["s", "t"], ["s^2", "t^3", "(s t)^2"])
    _expect(graded_dims_from_group(s3, GF(3), 3)
            == list(graded_dims(pres, GF(3), 3)) == [1, 0, 0, 0],
            "symmetric group mod 3")


@_item("enumeration: order, determinism, cap guard")
def _t_enumerate():
    s3 = enumerate_group([(1, 0, 2), (1, 2, 0)], ["s", "t"])
    _expect(s3.size == 6, "S3 order")
    _expect(enumerate_group([(1, 2, 0)], ["a"]).size == 3, "cyclic order")
    try:
        enumerate_group([(1, 0)], ["a"], cap=1)
    except EnumerationCapExceeded:
        pass
    else:
        raise AssertionError("cap guard did not fire")


@_item("ideal powers of small group algebras")
def _t_aug():
    z3 = enumerate_group([(1, 2, 0)], ["a"])
    _expect([s.dim for s in aug_power_chain(z3, GF(3), 3)] == [3, 2, 1, 0],
            "cyclic 3 mod 3")
    _expect(aug_power(z3, GF(3), 2).dim == 1, "single power lookup")
    z2z2 = enumerate_group([(1, 0, 3, 2), (2, 3, 0, 1)], ["x", "y"])
    _expect([s.dim for s in aug_power_chain(z2z2, GF(2), 3)] == [4, 3, 1, 0],
            "Klein group mod 2")
    s3 = enumerate_group([(1, 0, 2), (1, 2, 0)], ["s", "t"])
    chain = aug_power_chain(s3, QQ, 3)
    _expect([s.dim for s in chain] == [6, 5, 5, 5], "semisimple stabilization")


@_item("resolutions and layer cohomology of the cyclic fixture")
def _t_ext():
    z3 = enumerate_group([(1, 2, 0)], ["a"])
    f3 = GF(3)
    triv = AModule.trivial(z3, f3)
    mod, _ = augmentation_quotient_module(z3, f3, 2)
    res = free_resolution(z3, f3, mod, 3)
    cx = ExtComplex(res, triv)
    _expect([cx.group(p).dim for p in range(3)] == [1, 1, 1], "periodic table")
    res_fat = free_resolution(z3, f3, mod, 3, reduce_generators=False)
    cx_fat = ExtComplex(res_fat, triv)
    _expect([cx_fat.group(p).dim for p in range(3)] == [1, 1, 1],
            "values independent of generator minimization")
    reg = AModule.regular(z3, f3)
    _expect(ext(z3, f3, reg, triv, 1).dim == 0, "free module is cohomologically trivial")


@_item("induced maps: functoriality and the vanishing layer map")
def _t_induced():
    z3 = enumerate_group([(1, 2, 0)], ["a"])
    f3 = GF(3)
    triv = AModule.trivial(z3, f3)
    mid, mid_qm = augmentation_quotient_module(z3, f3, 2)
    top, top_qm = augmentation_quotient_module(z3, f3, 1)
    res = free_resolution(z3, f3, mid, 2)
    ident = Matrix.identity(f3, mid.dim)
    ind = ext_induced(z3, f3, ident, mid, mid, triv, 1, src_res=res, dst_res=res)
    _expect(ind.matrix.is_identity(), "identity functoriality")
    pi = matrix_from_columns(f3, [top_qm.project(r) for r in mid_qm.coset_reps],
                             top.dim)
    ind2 = ext_induced(z3, f3, pi, mid, top, triv, 1)
    _expect(ind2.domain.dim == 1 and ind2.codomain.dim == 1
            and ind2.matrix.is_zero(), "layer map vanishes")


@_item("long exact sequence of the first augmentation layer")
def _t_les():
    z3 = enumerate_group([(1, 2, 0)], ["a"])
    f3 = GF(3)
    for V in (AModule.trivial(z3, f3), AModule.regular(z3, f3)):
        les = long_exact_sequence(z3, f3, 1, V, 2)
        _expect(les.all_exact and les.sub_dims_ok, "exactness")


@_item("filtration: recursive route equals the annihilator route")
def _t_filtration():
    z3 = enumerate_group([(1, 2, 0)], ["a"])
    rep = Representation.regular(z3, GF(3))
    filt = invariants_filtration(rep, 3)
    _expect(filt.dims() == [1, 2, 3, 3], "regular module layer dims")
    for q in range(4):
        _expect(invariants_direct(rep, q) == filt.spaces[q], f"oracle at q={q}")


@_item("order lowering and the tensor-power embedding")
def _t_lowering():
    pres = GroupPresentation(["a"])
    rep = Representation(QQ, [Matrix.from_values(
        QQ, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])], presentation=pres)
    filt = invariants_filtration(rep, 3)
    _expect(filt.dims() == [1, 2, 3, 3], "unipotent layer dims")
    for q in (1, 2):
        ol = order_lowering(rep, filt, q)
        _expect(ol.injective and ol.relator_consistent, f"lowering at q={q}")
        lp = lambda_power(rep, q, filt)
        _expect(lp.injective, f"tensor power at q={q}")


@_item("restriction to a finite-index subgroup of the integers")
def _t_restriction():
    pres = GroupPresentation(["a"])
    rep = Representation(QQ, [Matrix.from_values(QQ, [[1, 1], [0, 1]])],
                         presentation=pres)
    rr = restriction_check(rep, ["a^2"], 2)
    _expect(rr.all_contained and rr.all_injective, "restriction injective")
    _expect(h1_fox(Representation.trivial(QQ, 1, presentation=pres)).dim == 1,
            "free rank one has one-dimensional first cohomology")


@_item("full verification run on every corpus instance")
def _t_corpus():
    for name, text in CORPUS.items():
        spec = loads_instance(text, name=name)
        report = run_checks(spec)
        _expect(not report.has_violation,
                f"{name}: violations {[c.check_id for c in report.checks if c.status == 'violated']}")


@_item("report determinism: identical bytes on repeated runs")
def _t_determinism():
    spec = loads_instance(CORPUS["z3_f3"], name="z3_f3")
    a = run_checks(spec).to_json()
    b = run_checks(loads_instance(CORPUS["z3_f3"], name="z3_f3")).to_json()
    _expect(a == b, "byte-identical reports")


def run_selftest(out=print) -> bool:
    ok = True
    for name, fn in _REGISTRY:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report and keep going
            ok = False
            out(f"FAIL\t{name}\t{exc}")
        else:
            out(f"ok\t{name}")
    return ok

"""Invariant filtrations of group representations and their graded maps.

H_q is the annihilator of the (q+1)-st augmentation power: H_0 is the fixed
space, and H_q = {v : (s-1)v in H_{q-1} for every generator s}, which is
valid because the augmentation ideal is generated as a left ideal by the
s - 1 and every H_{q-1} is stable.  Graded pieces carry order-lowering maps
into generator-indexed tuples, iterated into tensor powers of the
homomorphism space.
"""

from __future__ import annotations

from typing import Sequence

from .fields import FieldSpec
from .groupalg import AModule, FiniteGroup, aug_power_chain, finite_hom_space
from .linalg import (Matrix, QuotientMap, Subspace, kernel, matrix_from_columns,
                     quotient_map, solve, vstack)
from .words import (FoxDerivative, GroupPresentation, Word, evaluate_word,
                    fox_derivative, hom_space)


class Representation:
    """Finite-dimensional representation: one invertible matrix per
    generator of a presentation or of an enumerated finite group.

    Presentation sources are checked exactly: every relator must evaluate
    to the identity.  Finite-group sources derive and verify the action of
    every element.
    """

    __slots__ = ("field", "dim", "gen_matrices", "inv_matrices",
                 "presentation", "group", "_amodule")

    def __init__(self, field: FieldSpec, gen_matrices: Sequence[Matrix],
                 presentation: GroupPresentation | None = None,
                 group: FiniteGroup | None = None):
        if (presentation is None) == (group is None):
            raise ValueError("exactly one of presentation/group required")
        num = presentation.num_generators if presentation else len(group.generators)
        if len(gen_matrices) != num:
            raise ValueError(f"need {num} generator matrices, got {len(gen_matrices)}")
        dims = {m.nrows for m in gen_matrices} | {m.ncols for m in gen_matrices}
        if len(dims) > 1:
            raise ValueError("generator matrices must be square of equal size")
        self.field = field
        self.dim = dims.pop() if dims else 0
        self.gen_matrices = tuple(gen_matrices)
        self.inv_matrices = tuple(m.inverse() for m in gen_matrices)
        self.presentation = presentation
        self.group = group
        self._amodule = None
        if presentation is not None:
            ident = Matrix.identity(field, self.dim)
            for rel, text in zip(presentation.relators, presentation.relator_texts):
                if self.word_matrix(rel) != ident:
                    raise ValueError(f"relator {text!r} does not act as the identity")
        else:
            self._amodule = AModule.from_generator_matrices(group, field, gen_matrices)

    @staticmethod
    def trivial(field: FieldSpec, dim: int = 1,
                presentation: GroupPresentation | None = None,
                group: FiniteGroup | None = None) -> "Representation":
        num = presentation.num_generators if presentation else len(group.generators)
        ident = Matrix.identity(field, dim)
        return Representation(field, [ident] * num, presentation, group)

    @staticmethod
    def regular(group: FiniteGroup, field: FieldSpec) -> "Representation":
        mats = [group.left_regular_matrix(field, s) for s in group.generators]
        return Representation(field, mats, group=group)

    @property
    def num_generators(self) -> int:
        return len(self.gen_matrices)

    @property
    def amodule(self) -> AModule:
        if self._amodule is None:
            raise ValueError("module form needs a finite-group source")
        return self._amodule

    def word_matrix(self, word: Word) -> Matrix:
        return evaluate_word(word, self.gen_matrices, self.inv_matrices)

    def fox_matrix(self, derivative: FoxDerivative) -> Matrix:
        return derivative.evaluate(self.word_matrix, self.field, self.dim)


# ---------------------------------------------------------------------------
# the filtration


def _membership_reducer(field: FieldSpec, space: Subspace) -> Matrix:
    """Matrix R with kernel exactly the subspace: R v = v reduced by the
    RREF basis (its pivot coordinates eliminated)."""
    n = space.ambient_dim
    rows = [list(r) for r in Matrix.identity(field, n).entries]
    for bvec, p in zip(space.basis, space.pivots):
        for r in range(n):
            if bvec[r]:
                rows[r][p] = field.sub(rows[r][p], bvec[r])
    return Matrix(field, rows)


def _recursive_filtration(field: FieldSpec, matrices: Sequence[Matrix],
                          dim: int, q_max: int) -> list[Subspace]:
    ident = Matrix.identity(field, dim)
    deltas = [m - ident for m in matrices]
    if not deltas:
        full = Subspace.full(field, dim)
        return [full] * (q_max + 1)
    spaces = [kernel(vstack(*deltas))]
    for _ in range(q_max):
        prev = spaces[-1]
        if prev.dim == dim:
            spaces.append(prev)
            continue
        reducer = _membership_reducer(field, prev)
        cond = vstack(*[reducer * delta for delta in deltas])
        spaces.append(kernel(cond))
    return spaces


class Filtration:
    """Nested chain H_0 <= H_1 <= ... of stable subspaces of the
    representation space, with the quotient coordinates of each layer."""

    __slots__ = ("rep", "spaces", "quotients")

    def __init__(self, rep: Representation, spaces: list[Subspace]):
        f = rep.field
        for prev, nxt in zip(spaces, spaces[1:]):
            if not nxt.contains_subspace(prev):
                raise RuntimeError("filtration is not nested")
        for space in spaces:
            for m in rep.gen_matrices:
                for v in space.basis:
                    if not space.contains(m.apply(v)):
                        raise RuntimeError("filtration layer is not stable")
        for k in range(1, len(spaces) - 1):
            if spaces[k].dim == spaces[k - 1].dim and \
                    spaces[k + 1].dim != spaces[k].dim:
                raise RuntimeError("filtration grew after stabilizing")
        self.rep = rep
        self.spaces = list(spaces)
        zero = Subspace.zero(f, rep.dim)
        self.quotients = [quotient_map(spaces[0], zero)]
        for q in range(1, len(spaces)):
            self.quotients.append(quotient_map(spaces[q], spaces[q - 1]))

    @property
    def depth(self) -> int:
        return len(self.spaces) - 1

    def dims(self) -> list[int]:
        return [s.dim for s in self.spaces]

    def graded_dims(self) -> list[int]:
        return [qm.dim for qm in self.quotients]

    def graded(self, q: int) -> QuotientMap:
        return self.quotients[q]


def invariants_filtration(rep: Representation, q_max: int) -> Filtration:
    """H_0..H_q_max by the recursive kernel construction."""
    if q_max < 0:
        raise ValueError("q_max must be >= 0")
    spaces = _recursive_filtration(rep.field, rep.gen_matrices, rep.dim, q_max)
    return Filtration(rep, spaces)


def invariants_direct(rep: Representation, q: int) -> Subspace:
    """Independent route for finite groups: the annihilator of a basis of
    I^(q+1) acting through the module structure."""
    if rep.group is None:
        raise ValueError("direct invariants need a finite-group source")
    module = rep.amodule
    chain = aug_power_chain(rep.group, rep.field, q + 1)
    ideal = chain[q + 1]
    if ideal.dim == 0:
        return Subspace.full(rep.field, rep.dim)
    conds = [module.algebra_action(a) for a in ideal.basis]
    return kernel(vstack(*conds))


# ---------------------------------------------------------------------------
# order-lowering maps


class OrderLowering:
    """Graded order-lowering map at level q: class of v goes to the tuple
    of classes of (s - 1)v over the generators s."""

    __slots__ = ("q", "matrix", "injective", "relator_defects")

    def __init__(self, q, matrix, injective, relator_defects):
        self.q = q
        self.matrix = matrix
        self.injective = injective
        self.relator_defects = relator_defects

    @property
    def relator_consistent(self) -> bool:
        return not self.relator_defects


def order_lowering(rep: Representation, filtration: Filtration, q: int) -> OrderLowering:
    """Build the level-q order-lowering map and check injectivity plus (for
    presentations) additivity across every relator."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if filtration.depth < q:
        raise ValueError("filtration too shallow")
    f = rep.field
    qm_q = filtration.graded(q)
    qm_prev = filtration.graded(q - 1)
    prev_space = filtration.spaces[q - 1]
    deltas = [m - Matrix.identity(f, rep.dim) for m in rep.gen_matrices]
    cols = []
    images = []  # images[j][s] = class of (s-1) v_j in the lower quotient
    for v in qm_q.coset_reps:
        col = []
        per_gen = []
        for delta in deltas:
            w = delta.apply(v)
            if not prev_space.contains(w):
                raise RuntimeError("order lowering left the filtration")
            coords = qm_prev.project(w)
            per_gen.append(coords)
            col.extend(coords)
        cols.append(col)
        images.append(per_gen)
    matrix = matrix_from_columns(f, cols, len(deltas) * qm_prev.dim)
    injective = matrix.rank() == qm_q.dim
    relator_defects = []
    if rep.presentation is not None:
        for rel, text in zip(rep.presentation.relators, rep.presentation.relator_texts):
            sums = rel.exponent_sums(rep.num_generators)
            for j in range(qm_q.dim):
                acc = [f.zero()] * qm_prev.dim
                for i, e in enumerate(sums):
                    if e:
                        c = f.from_int(e)
                        for t, x in enumerate(images[j][i]):
                            if x:
                                acc[t] = f.add(acc[t], f.mul(c, x))
                if any(acc):
                    relator_defects.append((text, j))
    return OrderLowering(q, matrix, injective, relator_defects)


def representation_hom_space(rep: Representation) -> Subspace:
    """Hom to the field as generator-value tuples, from either source."""
    if rep.presentation is not None:
        return hom_space(rep.presentation, rep.field)
    return finite_hom_space(rep.group, rep.field)


class LambdaPower:
    """Iterated order-lowering into hom-space tensor powers: an injection
    of the level-q graded piece into (dim Hom)^q x dim(fixed space)."""

    __slots__ = ("q", "matrix", "injective", "hom_dim", "fixed_dim")

    def __init__(self, q, matrix, injective, hom_dim, fixed_dim):
        self.q = q
        self.matrix = matrix
        self.injective = injective
        self.hom_dim = hom_dim
        self.fixed_dim = fixed_dim


def lambda_power(rep: Representation, q: int,
                 filtration: Filtration | None = None) -> LambdaPower:
    """Compose order-lowering maps, rewriting each generator-indexed tuple
    of lower classes through the hom-space basis; the identification is an
    exact solve and failure is an internal error."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if filtration is None or filtration.depth < q:
        filtration = invariants_filtration(rep, q)
    f = rep.field
    homs = representation_hom_space(rep)
    h = homs.dim
    n = rep.num_generators
    deltas = [m - Matrix.identity(f, rep.dim) for m in rep.gen_matrices]
    # phi_matrix[i][k] = value of the k-th hom basis vector on generator i
    phi = Matrix(f, [[homs.basis[k][i] for k in range(h)] for i in range(n)],
                 ncols=h)

    def level_map(level: int) -> Matrix:
        qm = filtration.graded(level)
        qm_prev = filtration.graded(level - 1)
        prev_space = filtration.spaces[level - 1]
        w = qm_prev.dim
        system = phi.kron(Matrix.identity(f, w)) if w else Matrix.zeros(f, n * w, h * w)
        cols = []
        for v in qm.coset_reps:
            rhs = []
            for delta in deltas:
                img = delta.apply(v)
                if not prev_space.contains(img):
                    raise RuntimeError("order lowering left the filtration")
                rhs.extend(qm_prev.project(img))
            x = solve(system, rhs)
            if x is None:
                raise RuntimeError(
                    "generator values do not factor through the hom space")
            cols.append(x)
        return matrix_from_columns(f, cols, h * w)

    if filtration.graded(q).dim == 0:
        fixed = filtration.spaces[0].dim
        total = (h ** q) * fixed
        return LambdaPower(q, Matrix.zeros(f, total, 0), True, h, fixed)
    full = level_map(q)
    for level in range(q - 1, 0, -1):
        step = level_map(level)
        power = h ** (q - level)
        full = Matrix.identity(f, power).kron(step) * full
    injective = full.rank() == filtration.graded(q).dim
    return LambdaPower(q, full, injective, h, filtration.spaces[0].dim)


# ---------------------------------------------------------------------------
# restriction to subgroups


class RestrictionReport:
    """Filtration of a subgroup (given by generator words) against the
    whole group's filtration: containments and injectivity of the induced
    graded maps.  The finite-index hypothesis is the caller's and is not
    verified here."""

    __slots__ = ("q_max", "group_dims", "subgroup_dims", "contained",
                 "graded_injective", "characteristic")

    def __init__(self, q_max, group_dims, subgroup_dims, contained,
                 graded_injective, characteristic):
        self.q_max = q_max
        self.group_dims = list(group_dims)
        self.subgroup_dims = list(subgroup_dims)
        self.contained = list(contained)
        self.graded_injective = list(graded_injective)
        self.characteristic = characteristic

    @property
    def all_contained(self) -> bool:
        return all(self.contained)

    @property
    def all_injective(self) -> bool:
        return all(self.graded_injective)


def restriction_check(rep: Representation, subgroup_words: Sequence[Word | str],
                      q_max: int) -> RestrictionReport:
    f = rep.field
    words = []
    for w in subgroup_words:
        if isinstance(w, str):
            if rep.presentation is not None:
                words.append(rep.presentation.parse(w))
            else:
                from .words import parse_word
                words.append(parse_word(w, rep.group.gen_names))
        else:
            words.append(w)
    sub_mats = [rep.word_matrix(w) for w in words]
    big = invariants_filtration(rep, q_max)
    sub_spaces = _recursive_filtration(f, sub_mats, rep.dim, q_max)
    zero = Subspace.zero(f, rep.dim)
    sub_quotients = [quotient_map(sub_spaces[0], zero)]
    for qq in range(1, q_max + 1):
        sub_quotients.append(quotient_map(sub_spaces[qq], sub_spaces[qq - 1]))
    contained = []
    injective = []
    for qq in range(q_max + 1):
        inside = sub_spaces[qq].contains_subspace(big.spaces[qq])
        contained.append(inside)
        if not inside:
            injective.append(False)
            continue
        cols = [sub_quotients[qq].project(v) for v in big.graded(qq).coset_reps]
        mat = matrix_from_columns(f, cols, sub_quotients[qq].dim)
        injective.append(mat.rank() == big.graded(qq).dim)
    return RestrictionReport(
        q_max, big.dims(), [s.dim for s in sub_spaces], contained, injective,
        f.characteristic)


# ---------------------------------------------------------------------------
# first cohomology by Fox calculus (presentation route)


class H1Result:
    __slots__ = ("dim", "cocycles", "coboundaries")

    def __init__(self, dim, cocycles, coboundaries):
        self.dim = dim
        self.cocycles = cocycles
        self.coboundaries = coboundaries


def h1_fox(rep: Representation) -> H1Result:
    """H^1 of a presented group: cocycles are generator-value tuples killed
    by the evaluated Fox derivatives of every relator, coboundaries are the
    tuples ((s-1)v)_s."""
    if rep.presentation is None:
        raise ValueError("Fox route needs a presentation source")
    f = rep.field
    pres = rep.presentation
    n = pres.num_generators
    d = rep.dim
    blocks = []
    for rel in pres.relators:
        row = [rep.fox_matrix(fox_derivative(rel, i)) for i in range(n)]
        blocks.append(row)
    if blocks:
        z_mat = vstack(*[_hjoin(f, row, d) for row in blocks])
        cocycles = kernel(z_mat)
    else:
        cocycles = Subspace.full(f, n * d)
    cols = []
    ident = Matrix.identity(f, d)
    for j in range(d):
        col = []
        for m in rep.gen_matrices:
            col.extend((m - ident).col(j))
        cols.append(col)
    cobound = Subspace.from_vectors(f, n * d, cols)
    if not cocycles.contains_subspace(cobound):
        raise RuntimeError("coboundaries are not cocycles")
    return H1Result(cocycles.dim - cobound.dim, cocycles, cobound)


def _hjoin(field: FieldSpec, mats: Sequence[Matrix], d: int) -> Matrix:
    rows = []
    nrows = mats[0].nrows if mats else 0
    for r in range(nrows):
        row = []
        for m in mats:
            row.extend(m.entries[r])
        rows.append(row)
    return Matrix(field, rows, ncols=sum(m.ncols for m in mats))

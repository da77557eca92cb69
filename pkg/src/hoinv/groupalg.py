"""Finite groups as explicit algebras over an exact field.

The group algebra of an enumerated group is field^|G| with left
multiplication operators; augmentation-ideal powers come from operator
closures, higher cohomology from free resolutions (Ext of the Hom complex),
induced maps from chain lifting, and the three-term extension of an
augmentation layer from a horseshoe resolution with explicit corner maps.
"""

from __future__ import annotations

import random
from typing import Sequence

from .fields import FieldSpec
from .linalg import (EchelonBasis, Matrix, Subspace, QuotientMap, close_under,
                     hstack, kernel, matrix_from_columns, quotient_map, solve,
                     span_closure, vstack)

DEFAULT_ENUMERATION_CAP = 512
_ASSOC_SAMPLE_LIMIT = 100_000


class EnumerationCapExceeded(ValueError):
    def __init__(self, partial_size: int, cap: int):
        self.partial_size = partial_size
        self.cap = cap
        super().__init__(
            f"group has more than {cap} elements (found {partial_size} so far)")


class FiniteGroup:
    """Enumerated finite group: element 0 is the identity.

    Carries the multiplication and inverse tables, the generator indices,
    optional permutation images, and a breadth-first factorization of every
    element as parent * generator (used to derive module actions and
    exponent vectors).
    """

    __slots__ = ("size", "mult", "inv", "generators", "gen_names", "perms",
                 "bfs_parent", "_cache")

    def __init__(self, mult, generators: Sequence[int],
                 gen_names: Sequence[str] | None = None,
                 perms=None, check_associativity: bool = True):
        table = tuple(tuple(row) for row in mult)
        n = len(table)
        if n == 0:
            raise ValueError("empty multiplication table")
        for row in table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise ValueError("multiplication table is not square over 0..n-1")
        for j in range(n):
            if table[0][j] != j or table[j][0] != j:
                raise ValueError("element 0 must be the identity")
        inv = [None] * n
        for i in range(n):
            for j in range(n):
                if table[i][j] == 0 and table[j][i] == 0:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise ValueError(f"element {i} has no inverse")
        if check_associativity and n > 1:
            rng = random.Random(0)
            samples = min(n ** 3, _ASSOC_SAMPLE_LIMIT)
            for _ in range(samples):
                a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ValueError(f"table is not associative at ({a},{b},{c})")
        gens = tuple(generators)
        if any(not (0 <= g < n) for g in gens):
            raise ValueError("generator index out of range")
        self.size = n
        self.mult = table
        self.inv = tuple(inv)
        self.generators = gens
        self.gen_names = tuple(gen_names) if gen_names is not None else tuple(
            f"g{i}" for i in range(len(gens)))
        self.perms = tuple(tuple(p) for p in perms) if perms is not None else None
        self.bfs_parent = self._bfs_factorize()
        self._cache = {}

    def _bfs_factorize(self):
        parent = [None] * self.size
        seen = [False] * self.size
        seen[0] = True
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for pos, s in enumerate(self.generators):
                    y = self.mult[x][s]
                    if not seen[y]:
                        seen[y] = True
                        parent[y] = (x, pos)
                        nxt.append(y)
            frontier = nxt
        if not all(seen):
            missing = seen.count(False)
            raise ValueError(f"generators do not generate ({missing} elements unreached)")
        return tuple(parent)

    def op(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse_of(self, a: int) -> int:
        return self.inv[a]

    def generator_word(self, g: int) -> tuple[int, ...]:
        """Positions of generators whose product (left to right) is g."""
        word = []
        while g != 0:
            parent, pos = self.bfs_parent[g]
            word.append(pos)
            g = parent
        return tuple(reversed(word))

    def exponent_vector(self, g: int) -> tuple[int, ...]:
        counts = [0] * len(self.generators)
        for pos in self.generator_word(g):
            counts[pos] += 1
        return tuple(counts)

    def evaluate_word(self, word) -> int:
        """Element of a words.Word in the group's generators."""
        out = 0
        for pos, e in word.letters:
            s = self.generators[pos]
            out = self.mult[out][s if e == 1 else self.inv[s]]
        return out

    def left_regular_matrix(self, field: FieldSpec, g: int) -> Matrix:
        key = ("reg", field.tag)
        mats = self._cache.get(key)
        if mats is None:
            mats = {}
            self._cache[key] = mats
        if g not in mats:
            zero, one = field.zero(), field.one()
            rows = [[zero] * self.size for _ in range(self.size)]
            for h in range(self.size):
                rows[self.mult[g][h]][h] = one
            mats[g] = Matrix(field, rows)
        return mats[g]

    def regular_action(self, field: FieldSpec) -> list[Matrix]:
        return [self.left_regular_matrix(field, g) for g in range(self.size)]

    def __repr__(self):
        return f"FiniteGroup(order {self.size}, generators {self.gen_names})"


def _compose(p, q):
    # apply q first, then p
    return tuple(p[q[t]] for t in range(len(p)))


def enumerate_group(perm_generators: Sequence[Sequence[int]],
                    gen_names: Sequence[str] | None = None,
                    cap: int = DEFAULT_ENUMERATION_CAP) -> FiniteGroup:
    """BFS closure of permutation generators (0-indexed image lists).

    Element order is deterministic: BFS layer, then lexicographic by
    permutation image; the identity is element 0.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    perms = [tuple(p) for p in perm_generators]
    if not perms:
        raise ValueError("no generators")
    degree = len(perms[0])
    for p in perms:
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise ValueError(f"not a permutation of 0..{degree - 1}: {p}")
    identity = tuple(range(degree))
    elements = [identity]
    seen = {identity: 0}
    frontier = [identity]
    while frontier:
        new = set()
        for x in frontier:
            for g in perms:
                y = _compose(x, g)
                if y not in seen and y not in new:
                    new.add(y)
        layer = sorted(new)
        for y in layer:
            seen[y] = len(elements)
            elements.append(y)
            if len(elements) > cap:
                raise EnumerationCapExceeded(len(elements), cap)
        frontier = layer
    mult = [[seen[_compose(a, b)] for b in elements] for a in elements]
    generators = [seen[p] for p in perms]
    return FiniteGroup(mult, generators, gen_names=gen_names, perms=elements,
                       check_associativity=False)


# ---------------------------------------------------------------------------
# modules over the group algebra


class AModule:
    """Module over the group algebra: one invertible matrix per element."""

    __slots__ = ("group", "field", "dim", "action")

    def __init__(self, group: FiniteGroup, field: FieldSpec, dim: int,
                 action: Sequence[Matrix], check: bool = True):
        action = list(action)
        if len(action) != group.size:
            raise ValueError("need one action matrix per group element")
        for m in action:
            if m.nrows != dim or m.ncols != dim:
                raise ValueError("action matrix shape mismatch")
        if check:
            if dim and not action[0].is_identity():
                raise ValueError("identity element must act as the identity")
            for x in range(group.size):
                for s in group.generators:
                    if action[group.mult[x][s]] != action[x] * action[s]:
                        raise ValueError(
                            f"action does not respect the table at ({x},{s})")
        self.group = group
        self.field = field
        self.dim = dim
        self.action = tuple(action)

    @staticmethod
    def regular(group: FiniteGroup, field: FieldSpec) -> "AModule":
        return AModule(group, field, group.size, group.regular_action(field),
                       check=False)

    @staticmethod
    def trivial(group: FiniteGroup, field: FieldSpec, dim: int = 1) -> "AModule":
        ident = Matrix.identity(field, dim)
        return AModule(group, field, dim, [ident] * group.size, check=False)

    @staticmethod
    def from_generator_matrices(group: FiniteGroup, field: FieldSpec,
                                gen_matrices: Sequence[Matrix]) -> "AModule":
        """Derive the action of every element along the BFS factorization,
        then verify it is a homomorphism (exactly, on all (g, generator)
        pairs, which determines all products)."""
        if len(gen_matrices) != len(group.generators):
            raise ValueError("need one matrix per group generator")
        dim = gen_matrices[0].nrows if gen_matrices else 0
        action: list = [None] * group.size
        action[0] = Matrix.identity(field, dim)
        order = sorted(range(group.size), key=lambda g: len(group.generator_word(g)))
        for g in order:
            if g == 0:
                continue
            parent, pos = group.bfs_parent[g]
            action[g] = action[parent] * gen_matrices[pos]
        return AModule(group, field, dim, action, check=True)

    def algebra_action(self, vec: Sequence) -> Matrix:
        """Action of the group-algebra element sum vec[g] * g."""
        f = self.field
        rows = [[f.zero()] * self.dim for _ in range(self.dim)]
        for g, c in enumerate(vec):
            if not c:
                continue
            mat = self.action[g].entries
            for i in range(self.dim):
                mi = mat[i]
                ri = rows[i]
                for j in range(self.dim):
                    if mi[j]:
                        ri[j] = f.add(ri[j], f.mul(c, mi[j]))
        return Matrix(f, rows, ncols=self.dim)

    def generator_matrices(self) -> list[Matrix]:
        return [self.action[s] for s in self.group.generators]


def subquotient_module(V: AModule, big: Subspace, small: Subspace):
    """The module big/small for stable subspaces big, small of V; returns
    (module on quotient coordinates, the QuotientMap used)."""
    f = V.field
    for s in V.group.generators:
        mat = V.action[s]
        for v in big.basis:
            if not big.contains(mat.apply(v)):
                raise ValueError("big subspace is not stable")
        for v in small.basis:
            if not small.contains(mat.apply(v)):
                raise ValueError("small subspace is not stable")
    qm = quotient_map(big, small)
    reps = qm.coset_reps
    action = []
    for g in range(V.group.size):
        cols = [qm.project(V.action[g].apply(rep)) for rep in reps]
        action.append(matrix_from_columns(f, cols, qm.dim))
    return AModule(V.group, f, qm.dim, action, check=False), qm


# ---------------------------------------------------------------------------
# augmentation ideal powers


def aug_power_chain(G: FiniteGroup, field: FieldSpec, q_max: int) -> list[Subspace]:
    """[I^0, I^1, ..., I^q_max] inside the group algebra.

    I^1 is spanned by g - 1; each next power is the span of (s - 1) x over
    generators s and basis vectors x, closed under left multiplication by
    the group (generators suffice: the closure is a left ideal).
    """
    f = field
    N = G.size
    chain = [Subspace.full(f, N)]
    if q_max == 0:
        return chain
    vecs = []
    one = f.one()
    for g in range(1, N):
        v = [f.zero()] * N
        v[g] = one
        v[0] = f.neg(one)
        vecs.append(v)
    chain.append(Subspace.from_vectors(f, N, vecs))
    ops = _free_module_ops(G)
    while len(chain) <= q_max:
        prev = chain[-1]
        if prev.dim == 0 or prev == chain[-2]:
            chain.append(prev)
            continue
        seed = []
        for s in G.generators:
            for x in prev.basis:
                w = _left_translate_dense(G, f, x, s)
                seed.append(tuple(f.sub(a, b) for a, b in zip(w, x)))
        nxt = span_closure(seed, ops, field=f, ambient_dim=N)
        if not prev.contains_subspace(nxt):
            raise RuntimeError("ideal powers failed to decrease")
        chain.append(nxt)
    return chain


def aug_power(G: FiniteGroup, field: FieldSpec, q: int) -> Subspace:
    """I^q as a subspace of the group algebra."""
    if q < 0:
        raise ValueError("q must be >= 0")
    return aug_power_chain(G, field, q)[q]


def graded_dims_from_group(G: FiniteGroup, field: FieldSpec, q_max: int) -> list[int]:
    """dim I^q/I^(q+1) for q = 0..q_max, straight from the ideal chain."""
    chain = aug_power_chain(G, field, q_max + 1)
    return [chain[q].dim - chain[q + 1].dim for q in range(q_max + 1)]


def finite_hom_space(G: FiniteGroup, field: FieldSpec) -> Subspace:
    """Hom(G, R) as generator-value tuples.

    A generator assignment extends along the BFS tree; it is a homomorphism
    iff every Cayley relation g*s = gs maps to zero, which gives integer
    constraint rows on the generator values.
    """
    n = len(G.generators)
    rows = set()
    for g in range(G.size):
        cg = G.exponent_vector(g)
        for pos, s in enumerate(G.generators):
            cgs = G.exponent_vector(G.mult[g][s])
            row = tuple(cg[i] + (1 if i == pos else 0) - cgs[i] for i in range(n))
            if any(row):
                rows.add(row)
    if not rows:
        return Subspace.full(field, n)
    m = Matrix(field, [[field.from_int(x) for x in row] for row in sorted(rows)],
               ncols=n)
    return kernel(m)


# ---------------------------------------------------------------------------
# free resolutions


def _translate_op(G: FiniteGroup, g: int):
    """Left multiplication by g on A^m as a sparse coordinate permutation
    (works for any m; coordinates are blocks of |G|)."""
    row = G.mult[g]
    N = G.size

    def op(vec: dict) -> dict:
        return {(j // N) * N + row[j % N]: c for j, c in vec.items()}

    return op


def _free_module_ops(G: FiniteGroup):
    """Left multiplication by each group generator on A^m."""
    return [_translate_op(G, s) for s in G.generators]


def _left_translate_dense(G: FiniteGroup, field: FieldSpec, w: Sequence, g: int) -> tuple:
    """g . w for w in A^m, given densely."""
    N = G.size
    row = G.mult[g]
    out = [field.zero()] * len(w)
    m = len(w) // N
    for i in range(m):
        base = i * N
        for h in range(N):
            c = w[base + h]
            if c:
                out[base + row[h]] = c
    return tuple(out)


def _module_generators(vectors, ops, field, ambient, reduce_generators=True):
    """Vectors whose module span (closure under ops) covers the span of all
    the input vectors; greedy, in input order."""
    if not reduce_generators:
        return list(vectors)
    chosen = []
    acc = EchelonBasis(field, ambient)
    for v in vectors:
        if acc.reduce({j: a for j, a in enumerate(v) if a}):
            chosen.append(v)
            close_under(acc, [v], ops)
    return chosen


class FreeResolution:
    """Exact sequence A^{m_P} -> ... -> A^{m_0} ->> M of free left modules.

    boundary_mats[k-1] is the field matrix of d_k on column vectors, with
    A^m laid out as m blocks of |G| coordinates; aug_mat maps A^{m_0} onto
    the module's coordinate space.  Boundary entries over the group algebra
    are recovered from the identity-position columns.
    """

    __slots__ = ("group", "field", "module", "ranks", "aug_mat", "boundary_mats")

    def __init__(self, group, field, module, ranks, aug_mat, boundary_mats,
                 verify: bool = True):
        self.group = group
        self.field = field
        self.module = module
        self.ranks = tuple(ranks)
        self.aug_mat = aug_mat
        self.boundary_mats = tuple(boundary_mats)
        if verify:
            self.verify_exactness()

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def generator_image(self, k: int, j: int) -> tuple:
        """Image in A^{m_{k-1}} of the j-th free generator of A^{m_k}."""
        return self.boundary_mats[k - 1].col(j * self.group.size)

    def algebra_entries(self, k: int) -> list[list[tuple]]:
        """Boundary d_k as a matrix over the group algebra: entry (i, j) is
        the coefficient vector of the algebra element acting from slot j
        into slot i."""
        N = self.group.size
        m_prev, m_k = self.ranks[k - 1], self.ranks[k]
        out = []
        for i in range(m_prev):
            row = []
            for j in range(m_k):
                col = self.generator_image(k, j)
                row.append(tuple(col[i * N:(i + 1) * N]))
            out.append(row)
        return out

    def verify_exactness(self):
        """d.d = 0 and image = kernel at every interior stage, checked by
        containment plus rank; failures are internal errors."""
        if self.aug_mat.rank() != self.module.dim:
            raise RuntimeError("augmentation is not surjective")
        maps = [self.aug_mat] + list(self.boundary_mats)
        for k in range(1, len(maps)):
            prod = maps[k - 1] * maps[k]
            if not prod.is_zero():
                raise RuntimeError(f"boundary composition not zero at stage {k}")
            ker_dim = kernel(maps[k - 1]).dim
            if maps[k].rank() != ker_dim:
                raise RuntimeError(
                    f"resolution not exact at stage {k - 1}: "
                    f"rank {maps[k].rank()} != kernel dim {ker_dim}")


def free_resolution(G: FiniteGroup, field: FieldSpec, module: AModule,
                    length: int, reduce_generators: bool = True) -> FreeResolution:
    """Resolve the module by free modules out to the given length.

    Syzygy generators are a greedy reduction of the kernel basis by default
    (keeping every kernel basis vector is supported and changes nothing but
    the ranks).
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    f = field
    N = G.size
    module_ops = [module.action[s] for s in G.generators]
    chosen = _module_generators(
        list(Matrix.identity(f, module.dim).entries), module_ops, f, module.dim)
    m0 = len(chosen)
    aug_cols = []
    for v in chosen:
        for g in range(N):
            aug_cols.append(module.action[g].apply(v))
    aug_mat = matrix_from_columns(f, aug_cols, module.dim)
    ranks = [m0]
    boundary_mats = []
    current = aug_mat
    for _ in range(length):
        ker = kernel(current)
        gens = _module_generators(list(ker.basis), _free_module_ops(G), f,
                                  ker.ambient_dim, reduce_generators)
        cols = []
        for w in gens:
            for g in range(N):
                cols.append(_left_translate_dense(G, f, w, g))
        mat = matrix_from_columns(f, cols, ranks[-1] * N)
        ranks.append(len(gens))
        boundary_mats.append(mat)
        current = mat
    return FreeResolution(G, f, module, ranks, aug_mat, boundary_mats)


# ---------------------------------------------------------------------------
# Ext via the Hom complex


class ExtGroup:
    """Ext^p as cocycles modulo coboundaries of the Hom complex.

    classes is the quotient map from the cocycle subspace; its coset
    representatives are the stored cocycle basis.
    """

    __slots__ = ("p", "cocycles", "coboundaries", "classes")

    def __init__(self, p: int, cocycles: Subspace, coboundaries: Subspace,
                 classes: QuotientMap):
        self.p = p
        self.cocycles = cocycles
        self.coboundaries = coboundaries
        self.classes = classes

    @property
    def dim(self) -> int:
        return self.classes.dim

    @property
    def cocycle_basis(self) -> tuple:
        return self.classes.coset_reps

    def project(self, cocycle) -> tuple:
        return self.classes.project(cocycle)


class ExtComplex:
    """Hom_A(F_., V) for a free resolution F of a module M; computes the
    cochain maps (V^{m_k} -> V^{m_{k+1}}) and the Ext groups."""

    def __init__(self, resolution: FreeResolution, V: AModule):
        self.resolution = resolution
        self.V = V
        self._deltas: dict[int, Matrix] = {}
        self._groups: dict[int, ExtGroup] = {}

    def _rank(self, k: int) -> int:
        ranks = self.resolution.ranks
        if k < len(ranks):
            return ranks[k]
        if ranks and ranks[-1] == 0:  # terminated: zero-extended forever
            return 0
        raise ValueError(f"resolution too short for cochain degree {k}")

    def delta(self, k: int) -> Matrix:
        if k not in self._deltas:
            res = self.resolution
            V = self.V
            d = V.dim
            m_k, m_next = self._rank(k), self._rank(k + 1)
            if k + 1 > res.length:
                self._deltas[k] = Matrix.zeros(self.V.field, m_next * d, m_k * d)
                return self._deltas[k]
            entries = res.algebra_entries(k + 1)
            blocks = [[V.algebra_action(entries[i][j]) for i in range(m_k)]
                      for j in range(m_next)]
            rows = []
            for j in range(m_next):
                for r in range(d):
                    row = []
                    for i in range(m_k):
                        row.extend(blocks[j][i].entries[r] if d else ())
                    rows.append(row)
            self._deltas[k] = Matrix(self.V.field, rows, ncols=m_k * d)
        return self._deltas[k]

    def group(self, p: int) -> ExtGroup:
        if p not in self._groups:
            f = self.V.field
            dim_p = self._rank(p) * self.V.dim
            cocycles = kernel(self.delta(p))
            if p == 0:
                cobound = Subspace.zero(f, dim_p)
            else:
                prev = self.delta(p - 1)
                cobound = Subspace.from_vectors(
                    f, dim_p, [prev.col(j) for j in range(prev.ncols)])
            if not cocycles.contains_subspace(cobound):
                raise RuntimeError("coboundaries escape cocycles")
            self._groups[p] = ExtGroup(p, cocycles, cobound,
                                       quotient_map(cocycles, cobound))
        return self._groups[p]


def ext(G: FiniteGroup, field: FieldSpec, M: AModule, V: AModule, p: int,
        resolution: FreeResolution | None = None) -> ExtGroup:
    """Ext^p over the group algebra of M against V."""
    if p < 0:
        raise ValueError("p must be >= 0")
    if resolution is None:
        resolution = free_resolution(G, field, M, p + 1)
    return ExtComplex(resolution, V).group(p)


def ext_dims(G: FiniteGroup, field: FieldSpec, M: AModule, V: AModule,
             p_max: int) -> list[int]:
    res = free_resolution(G, field, M, p_max + 1)
    cx = ExtComplex(res, V)
    return [cx.group(p).dim for p in range(p_max + 1)]


def augmentation_quotient_module(G: FiniteGroup, field: FieldSpec, q_plus_1: int,
                                 chain: list[Subspace] | None = None):
    """A/I^q1 as a module on quotient coordinates (q_plus_1 = q + 1)."""
    if chain is None:
        chain = aug_power_chain(G, field, q_plus_1)
    regular = AModule.regular(G, field)
    return subquotient_module(regular, chain[0], chain[q_plus_1])


# ---------------------------------------------------------------------------
# induced maps via chain lifting


def lift_chain_map(src: FreeResolution, dst: FreeResolution, f_mat: Matrix,
                   depth: int) -> list[Matrix]:
    """Chain map F -> G over a module map f: M -> M' (src resolves M, dst
    resolves M'), as field matrices for degrees 0..depth.

    Solved degree by degree; a lifting failure cannot happen over exact
    resolutions and is raised as an internal error.
    """
    G = src.group
    N = G.size
    f = src.field
    if depth > src.length or depth > dst.length:
        raise ValueError("resolutions too short for requested lifting depth")
    lifts = []
    images: list[list] = []  # images[k][j] = x_j in A^{m'_k}
    for k in range(depth + 1):
        xs = []
        for j in range(src.ranks[k]):
            if k == 0:
                rhs = f_mat.apply(src.aug_mat.col(j * N))
                x = solve(dst.aug_mat, rhs)
            else:
                col = src.boundary_mats[k - 1].col(j * N)
                rhs = lifts[k - 1].apply(col)
                x = solve(dst.boundary_mats[k - 1], rhs)
            if x is None:
                raise RuntimeError(f"chain lifting failed in degree {k}")
            xs.append(x)
        images.append(xs)
        cols = []
        for x in xs:
            for g in range(N):
                cols.append(_left_translate_dense(G, f, x, g))
        lifts.append(matrix_from_columns(f, cols, dst.ranks[k] * N))
    return lifts


def _cochain_pullback(src: FreeResolution, dst: FreeResolution, lift_k: Matrix,
                      V: AModule, k: int) -> Matrix:
    """Hom(G_k, V) -> Hom(F_k, V) induced by the chain map in degree k."""
    N = src.group.size
    d = V.dim
    m_src = src.ranks[k]
    m_dst = dst.ranks[k]
    rows = []
    for j in range(m_src):
        x = lift_k.col(j * N)  # image of the j-th free generator
        mats = [V.algebra_action(x[i * N:(i + 1) * N]) for i in range(m_dst)]
        for r in range(d):
            row = []
            for i in range(m_dst):
                row.extend(mats[i].entries[r] if d else ())
            rows.append(row)
    return Matrix(V.field, rows, ncols=m_dst * d)


class InducedMap:
    """Matrix between Ext groups in class coordinates: domain is
    Ext^p(M', V), codomain is Ext^p(M, V) for a module map f: M -> M'."""

    __slots__ = ("matrix", "domain", "codomain")

    def __init__(self, matrix: Matrix, domain: ExtGroup, codomain: ExtGroup):
        self.matrix = matrix
        self.domain = domain
        self.codomain = codomain


def ext_induced(G: FiniteGroup, field: FieldSpec, f_mat: Matrix,
                M: AModule, M2: AModule, V: AModule, p: int,
                src_res: FreeResolution | None = None,
                dst_res: FreeResolution | None = None) -> InducedMap:
    """Map Ext^p(M2, V) -> Ext^p(M, V) induced by a module map f: M -> M2
    (surjection or inclusion or any A-map), via chain lifting."""
    if src_res is None:
        src_res = free_resolution(G, field, M, p + 1)
    if dst_res is None:
        dst_res = free_resolution(G, field, M2, p + 1)
    for s in G.generators:
        if f_mat * M.action[s] != M2.action[s] * f_mat:
            raise ValueError("module map does not commute with the action")
    lifts = lift_chain_map(src_res, dst_res, f_mat, p)
    pullback = _cochain_pullback(src_res, dst_res, lifts[p], V, p)
    dom = ExtComplex(dst_res, V).group(p)
    cod_cx = ExtComplex(src_res, V)
    cod = cod_cx.group(p)
    cols = []
    for z in dom.cocycle_basis:
        w = pullback.apply(z)
        if not cod.cocycles.contains(w):
            raise RuntimeError("pullback of a cocycle is not a cocycle")
        cols.append(cod.project(w))
    return InducedMap(matrix_from_columns(field, cols, cod.dim), dom, cod)


# ---------------------------------------------------------------------------
# horseshoe resolution and the long exact sequence


class HorseshoeData:
    """Middle resolution of a short exact sequence of modules, built from
    resolutions of the ends, with the corner maps h_k: F''_k -> F'_{k-1}
    (h_mats[0] is the lift lambda: F''_0 -> M)."""

    __slots__ = ("sub_res", "top_res", "mid_res", "h_mats", "iota", "pi")

    def __init__(self, sub_res, top_res, mid_res, h_mats, iota, pi):
        self.sub_res = sub_res
        self.top_res = top_res
        self.mid_res = mid_res
        self.h_mats = h_mats
        self.iota = iota
        self.pi = pi


def horseshoe(G: FiniteGroup, field: FieldSpec, mid: AModule,
              iota: Matrix, pi: Matrix,
              sub_res: FreeResolution, top_res: FreeResolution) -> HorseshoeData:
    """Resolve the middle of 0 -> sub -> mid -> top -> 0 by the degreewise
    sums of the end resolutions.

    iota and pi are the field matrices of the inclusion and projection.
    Corner maps are solved degree by degree so that the block-triangular
    boundaries square to zero.
    """
    f = field
    N = G.size
    if not (pi * iota).is_zero():
        raise ValueError("pi . iota != 0")
    if iota.rank() != iota.ncols or pi.rank() != pi.nrows:
        raise ValueError("not a short exact sequence (corner ranks)")
    if iota.ncols + pi.nrows != mid.dim:
        raise ValueError("dimensions do not add up")
    length = min(sub_res.length, top_res.length)

    # lambda: F''_0 -> mid lifting the top augmentation through pi
    lam_gen = []
    for j in range(top_res.ranks[0]):
        target = top_res.aug_mat.col(j * N)
        x = solve(pi, target)
        if x is None:
            raise RuntimeError("projection is not surjective")
        lam_gen.append(x)
    lam_cols = []
    for x in lam_gen:
        for g in range(N):
            lam_cols.append(mid.action[g].apply(x))
    lam = matrix_from_columns(f, lam_cols, mid.dim)

    h_mats: list[Matrix] = [lam]
    for k in range(1, length + 1):
        gen_images = []
        for j in range(top_res.ranks[k]):
            dcol = top_res.boundary_mats[k - 1].col(j * N)
            if k == 1:
                t = lam.apply(dcol)
                t = tuple(f.neg(a) for a in t)
                u = solve(iota, t)
                if u is None:
                    raise RuntimeError("corner map target misses the submodule")
                h = solve(sub_res.aug_mat, u)
            else:
                rhs = h_mats[k - 1].apply(dcol)
                rhs = tuple(f.neg(a) for a in rhs)
                h = solve(sub_res.boundary_mats[k - 2], rhs)
            if h is None:
                raise RuntimeError(f"horseshoe corner unsolvable in degree {k}")
            gen_images.append(h)
        cols = []
        for h in gen_images:
            for g in range(N):
                cols.append(_left_translate_dense(G, f, h, g))
        h_mats.append(matrix_from_columns(f, cols, sub_res.ranks[k - 1] * N))

    # assemble the block-triangular middle resolution
    mid_aug = hstack(iota * sub_res.aug_mat, lam)
    ranks = [sub_res.ranks[0] + top_res.ranks[0]]
    boundaries = []
    for k in range(1, length + 1):
        top_rows = hstack(sub_res.boundary_mats[k - 1], h_mats[k])
        bottom_rows = hstack(
            Matrix.zeros(f, top_res.ranks[k - 1] * N, sub_res.ranks[k] * N),
            top_res.boundary_mats[k - 1])
        boundaries.append(vstack(top_rows, bottom_rows))
        ranks.append(sub_res.ranks[k] + top_res.ranks[k])
    mid_res = FreeResolution(G, f, mid, ranks, mid_aug, boundaries)
    return HorseshoeData(sub_res, top_res, mid_res, h_mats, iota, pi)


class LESNode:
    __slots__ = ("label", "p", "dim", "exact", "image_dim", "kernel_dim")

    def __init__(self, label, p, dim, exact, image_dim, kernel_dim):
        self.label = label
        self.p = p
        self.dim = dim
        self.exact = exact
        self.image_dim = image_dim
        self.kernel_dim = kernel_dim


class LESReport:
    """Verified long exact sequence of an augmentation layer.

    Sequence (q fixed): 0 -> Ext^0(top) -> Ext^0(mid) -> Ext^0(sub)
    -> Ext^1(top) -> ..., with top = A/I^q, mid = A/I^(q+1),
    sub = I^q/I^(q+1)."""

    __slots__ = ("q", "p_max", "nodes", "all_exact", "n_q",
                 "sub_dims_expected", "sub_dims_actual", "sub_dims_ok")

    def __init__(self, q, p_max, nodes, all_exact, n_q,
                 sub_dims_expected, sub_dims_actual):
        self.q = q
        self.p_max = p_max
        self.nodes = nodes
        self.all_exact = all_exact
        self.n_q = n_q
        self.sub_dims_expected = tuple(sub_dims_expected)
        self.sub_dims_actual = tuple(sub_dims_actual)
        self.sub_dims_ok = self.sub_dims_expected == self.sub_dims_actual

    def node_dims(self) -> list[int]:
        return [n.dim for n in self.nodes]


def long_exact_sequence(G: FiniteGroup, field: FieldSpec, q: int, V: AModule,
                        p_max: int) -> LESReport:
    """Build and verify the long exact sequence attached to
    0 -> I^q/I^(q+1) -> A/I^(q+1) -> A/I^q -> 0 against V, checking
    image = kernel at every node through degree p_max, plus the dimension
    identity dim Ext^p(I^q/I^(q+1), V) = N(q) * dim H^p(G, V)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    f = field
    chain = aug_power_chain(G, f, q + 1)
    regular = AModule.regular(G, f)
    mid_mod, mid_qm = subquotient_module(regular, chain[0], chain[q + 1])
    top_mod, top_qm = subquotient_module(regular, chain[0], chain[q])
    sub_mod, sub_qm = subquotient_module(regular, chain[q], chain[q + 1])
    n_q = sub_mod.dim

    iota = matrix_from_columns(
        f, [mid_qm.project(rep) for rep in sub_qm.coset_reps], mid_mod.dim)
    pi = matrix_from_columns(
        f, [top_qm.project(rep) for rep in mid_qm.coset_reps], top_mod.dim)
    if not (pi * iota).is_zero():
        raise RuntimeError("composite of corner maps is not zero")

    length = p_max + 2
    sub_res = free_resolution(G, f, sub_mod, length)
    top_res = free_resolution(G, f, top_mod, length)
    shoe = horseshoe(G, f, mid_mod, iota, pi, sub_res, top_res)
    mid_res = shoe.mid_res

    sub_cx = ExtComplex(sub_res, V)
    top_cx = ExtComplex(top_res, V)
    mid_cx = ExtComplex(mid_res, V)
    d = V.dim
    N = G.size

    def restrict_matrix(p):
        # Hom(F_p, V) -> Hom(F'_p, V): drop the top-block coordinates
        m_sub = sub_res.ranks[p] * d
        m_mid = mid_res.ranks[p] * d
        return hstack(Matrix.identity(f, m_sub),
                      Matrix.zeros(f, m_sub, m_mid - m_sub))

    def extend_matrix(p):
        # Hom(F''_p, V) -> Hom(F_p, V): zero on the sub-block coordinates
        m_top = top_res.ranks[p] * d
        m_mid = mid_res.ranks[p] * d
        return vstack(Matrix.zeros(f, m_mid - m_top, m_top),
                      Matrix.identity(f, m_top))

    def connecting_matrix(p):
        # Hom(F'_p, V) -> Hom(F''_{p+1}, V): compose with the corner map
        h = shoe.h_mats[p + 1]
        m_sub = sub_res.ranks[p]
        m_top_next = top_res.ranks[p + 1]
        rows = []
        for j in range(m_top_next):
            x = h.col(j * N)
            mats = [V.algebra_action(x[i * N:(i + 1) * N]) for i in range(m_sub)]
            for r in range(d):
                row = []
                for i in range(m_sub):
                    row.extend(mats[i].entries[r] if d else ())
                rows.append(row)
        return Matrix(f, rows, ncols=m_sub * d)

    def class_map(cochain_mat, dom: ExtGroup, cod: ExtGroup) -> Matrix:
        cols = []
        for z in dom.cocycle_basis:
            w = cochain_mat.apply(z)
            if not cod.cocycles.contains(w):
                raise RuntimeError("pullback of a cocycle is not a cocycle")
            cols.append(cod.project(w))
        return matrix_from_columns(f, cols, cod.dim)

    # nodes in sequence order with their class-level maps
    node_groups = []
    maps = []
    for p in range(p_max + 1):
        g_top, g_mid, g_sub = top_cx.group(p), mid_cx.group(p), sub_cx.group(p)
        node_groups += [("top", p, g_top), ("mid", p, g_mid), ("sub", p, g_sub)]
        maps.append(class_map(extend_matrix(p), g_top, g_mid))
        maps.append(class_map(restrict_matrix(p), g_mid, g_sub))
        g_top_next = top_cx.group(p + 1)
        maps.append(class_map(connecting_matrix(p), g_sub, g_top_next))

    nodes = []
    all_exact = True
    for i, (label, p, grp) in enumerate(node_groups):
        if i == 0:
            image = Subspace.zero(f, grp.dim)
        else:
            m_in = maps[i - 1]
            image = Subspace.from_vectors(
                f, grp.dim, [m_in.col(j) for j in range(m_in.ncols)])
        ker = kernel(maps[i])
        exact = image == ker
        all_exact = all_exact and exact
        nodes.append(LESNode(label, p, grp.dim, exact, image.dim, ker.dim))

    triv = AModule.trivial(G, f, 1)
    triv_res = free_resolution(G, f, triv, length)
    triv_cx = ExtComplex(triv_res, V)
    expected = [n_q * triv_cx.group(p).dim for p in range(p_max + 1)]
    actual = [sub_cx.group(p).dim for p in range(p_max + 1)]
    return LESReport(q, p_max, nodes, all_exact, n_q, expected, actual)


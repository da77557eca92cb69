"""Truncated tensor-algebra model of the augmentation filtration.

For a free group on n letters, s_i -> 1 + X_i extends to a ring map from the
group ring onto the tensor algebra on X_1..X_n truncated beyond degree Q,
with kernel the (Q+1)-st power of the augmentation ideal.  For a presented
group the same quotient is the truncated tensor algebra modulo the two-sided
ideal generated by the relator images minus 1, and the dimensions of the
graded pieces of the augmentation filtration can be read off the ideal's
echelon pivots, one degree block at a time.
"""

from __future__ import annotations

import itertools
import os
from typing import Sequence

from .fields import FieldSpec
from .linalg import EchelonBasis
from .words import GroupPresentation, Word

DEFAULT_MEMORY_CAP = 2_000_000
MEMORY_CAP_ENV = "HOI_MEMORY_CAP_SCALARS"


class MemoryCapExceeded(ValueError):
    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(
            f"truncated algebra needs {required} basis monomials, cap is {cap} "
            f"(override with {MEMORY_CAP_ENV})")


def effective_memory_cap(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(MEMORY_CAP_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_MEMORY_CAP


class TruncatedTensor:
    """Tensor-algebra element truncated beyond a fixed degree.

    Coefficients are a map from monomials (tuples of generator indices of
    length <= trunc) to nonzero scalars.
    """

    __slots__ = ("field", "num_gens", "trunc", "coeffs")

    def __init__(self, field: FieldSpec, num_gens: int, trunc: int, coeffs: dict):
        self.field = field
        self.num_gens = num_gens
        self.trunc = trunc
        self.coeffs = {m: c for m, c in coeffs.items() if c}

    @staticmethod
    def one(field: FieldSpec, num_gens: int, trunc: int) -> "TruncatedTensor":
        return TruncatedTensor(field, num_gens, trunc, {(): field.one()})

    @staticmethod
    def letter(field: FieldSpec, num_gens: int, trunc: int, i: int) -> "TruncatedTensor":
        coeffs = {(): field.one()}
        if trunc >= 1:
            coeffs[(i,)] = field.one()
        return TruncatedTensor(field, num_gens, trunc, coeffs)

    @staticmethod
    def letter_inverse(field: FieldSpec, num_gens: int, trunc: int, i: int) -> "TruncatedTensor":
        # (1 + X)^-1 = 1 - X + X^2 - ... truncated
        coeffs = {}
        sign = 1
        for k in range(trunc + 1):
            coeffs[(i,) * k] = field.from_int(sign)
            sign = -sign
        return TruncatedTensor(field, num_gens, trunc, coeffs)

    def __mul__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        f = self.field
        trunc = self.trunc
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            room = trunc - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) > room:
                    continue
                m = m1 + m2
                val = f.add(out.get(m, f.zero()), f.mul(c1, c2))
                if val:
                    out[m] = val
                elif m in out:
                    del out[m]
        return TruncatedTensor(f, self.num_gens, trunc, out)

    def __add__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        f = self.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            val = f.add(out.get(m, f.zero()), c)
            if val:
                out[m] = val
            elif m in out:
                del out[m]
        return TruncatedTensor(f, self.num_gens, self.trunc, out)

    def __sub__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        f = self.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            val = f.sub(out.get(m, f.zero()), c)
            if val:
                out[m] = val
            elif m in out:
                del out[m]
        return TruncatedTensor(f, self.num_gens, self.trunc, out)

    def constant_term(self):
        return self.coeffs.get((), self.field.zero())

    def is_one(self) -> bool:
        return self.coeffs == {(): self.field.one()}

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedTensor)
            and self.field == other.field
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return f"TruncatedTensor({dict(terms)})"


def magnus_expand(word: Word, num_gens: int, trunc: int, field: FieldSpec) -> TruncatedTensor:
    """Multiplicative expansion of a word, truncated beyond degree trunc."""
    if trunc < 0:
        raise ValueError("truncation degree must be >= 0")
    out = TruncatedTensor.one(field, num_gens, trunc)
    for g, e in word.letters:
        if e == 1:
            out = out * TruncatedTensor.letter(field, num_gens, trunc, g)
        else:
            out = out * TruncatedTensor.letter_inverse(field, num_gens, trunc, g)
    return out


class GradedDims:
    """Dimensions of the graded pieces of the augmentation filtration.

    values[q] is the dimension of (I^q)/(I^(q+1)); values[0] is always 1.
    """

    __slots__ = ("values",)

    def __init__(self, values: Sequence[int]):
        values = tuple(int(v) for v in values)
        if values and values[0] != 1:
            raise ValueError("degree-0 graded piece must have dimension 1")
        if any(v < 0 for v in values):
            raise ValueError("graded dimensions must be non-negative")
        self.values = values

    def __getitem__(self, q: int) -> int:
        return self.values[q]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if isinstance(other, GradedDims):
            return self.values == other.values
        return tuple(other) == self.values

    def __repr__(self):
        return f"GradedDims({list(self.values)})"


def enumerate_monomials(num_gens: int, trunc: int) -> list[tuple[int, ...]]:
    """All monomials of degree <= trunc, ordered by degree then lex."""
    monos: list[tuple[int, ...]] = []
    for d in range(trunc + 1):
        monos.extend(itertools.product(range(num_gens), repeat=d))
    return monos


class TruncatedQuotient:
    """The truncated algebra modulo the relator ideal.

    Carries the monomial basis of the ambient truncated algebra, the ideal
    as a canonical subspace, the surviving (non-pivot) monomials as the
    canonical quotient basis, and the graded dimensions.
    """

    __slots__ = ("presentation", "field", "trunc", "monomials", "index",
                 "ideal", "quotient_monomials", "graded")

    def __init__(self, presentation, field, trunc, monomials, index, ideal,
                 quotient_monomials, graded):
        self.presentation = presentation
        self.field = field
        self.trunc = trunc
        self.monomials = monomials
        self.index = index
        self.ideal = ideal
        self.quotient_monomials = quotient_monomials
        self.graded = graded

    @property
    def quotient_dim(self) -> int:
        return len(self.quotient_monomials)

    def filtration_dims(self) -> list[int]:
        """dim of the image of (monomials of degree >= k) in the quotient,
        for k = 0..trunc+1."""
        per_degree = [0] * (self.trunc + 1)
        for m in self.quotient_monomials:
            per_degree[len(m)] += 1
        out = []
        total = sum(per_degree)
        for k in range(self.trunc + 2):
            out.append(total)
            if k <= self.trunc:
                total -= per_degree[k]
        return out


def quotient_algebra(pres: GroupPresentation, field: FieldSpec, trunc: int,
                     memory_cap: int | None = None) -> TruncatedQuotient:
    """Quotient of the truncated tensor algebra by the two-sided ideal
    generated by the relator expansions minus 1.

    The ideal is saturated by left and right multiplication with the
    degree-1 letters; scalars are covered by linearity and higher monomials
    by iteration, and the ambient dimension bounds the loop.
    """
    if trunc < 0:
        raise ValueError("truncation degree must be >= 0")
    n = pres.num_generators
    cap = effective_memory_cap(memory_cap)
    required = sum(n ** k for k in range(trunc + 1))
    if required > cap:
        raise MemoryCapExceeded(required, cap)

    monomials = enumerate_monomials(n, trunc)
    index = {m: i for i, m in enumerate(monomials)}

    # left/right concatenation by one letter, as index maps (None = truncated)
    left_tables = []
    right_tables = []
    for i in range(n):
        left_tables.append([
            index.get((i,) + m) if len(m) < trunc else None for m in monomials])
        right_tables.append([
            index.get(m + (i,)) if len(m) < trunc else None for m in monomials])

    def shift_op(table):
        def op(vec: dict) -> dict:
            out = {}
            for j, c in vec.items():
                t = table[j]
                if t is not None:
                    out[t] = c
            return out
        return op

    operators = [shift_op(t) for t in left_tables + right_tables]

    acc = EchelonBasis(field, len(monomials))
    queue = []
    one = TruncatedTensor.one(field, n, trunc)
    for rel in pres.relators:
        image = magnus_expand(rel, n, trunc, field) - one
        sparse = {index[m]: c for m, c in image.coeffs.items()}
        res = acc.insert(sparse)
        if res is not None:
            queue.append(res)
    while queue:
        v = queue.pop()
        for op in operators:
            res = acc.insert(op(v))
            if res is not None:
                queue.append(res)

    ideal = acc.to_subspace()
    pivot_set = set(ideal.pivots)
    quotient_monomials = tuple(
        m for j, m in enumerate(monomials) if j not in pivot_set)
    per_degree = [0] * (trunc + 1)
    for m in quotient_monomials:
        per_degree[len(m)] += 1
    graded = GradedDims(per_degree)
    return TruncatedQuotient(pres, field, trunc, tuple(monomials), index,
                             ideal, quotient_monomials, graded)


def graded_dims(pres: GroupPresentation, field: FieldSpec, trunc: int,
                memory_cap: int | None = None) -> GradedDims:
    """N(q) = dim I^q/I^(q+1) for q = 0..trunc."""
    return quotient_algebra(pres, field, trunc, memory_cap).graded

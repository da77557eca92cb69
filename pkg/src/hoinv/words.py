"""Free-group words, group presentations, Fox derivatives, Hom(G, R).

Word grammar (normative for all input files):

    word := term+                      terms separated by whitespace or
    term := atom ('^' signed-integer)?  adjacency
    atom := generator-name | '(' word ')' | '[' word ',' word ']'

where [u, v] expands to u v u^-1 v^-1 and generator names are identifiers
matched greedily ([A-Za-z_][A-Za-z0-9_]*).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .fields import FieldSpec
from .linalg import Matrix, Subspace, kernel


class WordSyntaxError(ValueError):
    """Parse failure carrying the offending position (0-based)."""

    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


def _reduce_letters(letters: Iterable[tuple[int, int]]) -> tuple:
    stack: list[tuple[int, int]] = []
    for gen, exp in letters:
        if exp not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {exp}")
        if stack and stack[-1][0] == gen and stack[-1][1] == -exp:
            stack.pop()
        else:
            stack.append((gen, exp))
    return tuple(stack)


class Word:
    """Freely reduced word; letters are (generator index, +1 or -1)."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[int, int]] = ()):
        self.letters = _reduce_letters(letters)

    @staticmethod
    def identity() -> "Word":
        return Word(())

    @staticmethod
    def generator(i: int) -> "Word":
        return Word(((i, 1),))

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word.identity()
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def exponent_sums(self, num_generators: int) -> tuple[int, ...]:
        sums = [0] * num_generators
        for g, e in self.letters:
            sums[g] += e
        return tuple(sums)

    def format(self, names: Sequence[str]) -> str:
        """Inverse of parsing: parse(format(w)) == w."""
        if not self.letters:
            return ""
        parts = []
        i = 0
        letters = self.letters
        while i < len(letters):
            g, e = letters[i]
            j = i
            while j + 1 < len(letters) and letters[j + 1] == (g, e):
                j += 1
            count = (j - i + 1) * e
            parts.append(names[g] if count == 1 else f"{names[g]}^{count}")
            i = j + 1
        return " ".join(parts)

    def __repr__(self):
        return f"Word({self.letters})"


# ---------------------------------------------------------------------------
# parsing

_PUNCT = {"(": "LPAREN", ")": "RPAREN", "[": "LBRACK", "]": "RBRACK",
          ",": "COMMA", "^": "CARET"}


def _tokenize(text: str):
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            yield (_PUNCT[ch], ch, i)
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("NAME", text[i:j], i)
            i = j
            continue
        if ch.isdigit() or (ch in "+-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            yield ("INT", int(text[i:j]), i)
            i = j
            continue
        raise WordSyntaxError(f"unexpected character {ch!r}", text, i)
    yield ("END", None, n)


class _Parser:
    def __init__(self, text: str, generators: Sequence[str]):
        self.text = text
        self.index = {name: i for i, name in enumerate(generators)}
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.take()
        if tok[0] != kind:
            raise WordSyntaxError(f"expected {kind}, found {tok[1]!r}", self.text, tok[2])
        return tok

    def parse_word(self) -> Word:
        terms = []
        while self.peek()[0] in ("NAME", "LPAREN", "LBRACK"):
            terms.append(self.parse_term())
        if not terms:
            tok = self.peek()
            raise WordSyntaxError("expected a word", self.text, tok[2])
        out = Word.identity()
        for t in terms:
            out = out * t
        return out

    def parse_term(self) -> Word:
        atom = self.parse_atom()
        if self.peek()[0] == "CARET":
            self.take()
            tok = self.expect("INT")
            return atom ** tok[1]
        return atom

    def parse_atom(self) -> Word:
        kind, value, pos = self.take()
        if kind == "NAME":
            if value not in self.index:
                raise WordSyntaxError(f"unknown generator {value!r}", self.text, pos)
            return Word.generator(self.index[value])
        if kind == "LPAREN":
            inner = self.parse_word()
            self.expect("RPAREN")
            return inner
        if kind == "LBRACK":
            u = self.parse_word()
            self.expect("COMMA")
            v = self.parse_word()
            self.expect("RBRACK")
            return u * v * u.inverse() * v.inverse()
        raise WordSyntaxError(f"unexpected token {value!r}", self.text, pos)


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """Parse text against the word grammar; raises WordSyntaxError."""
    parser = _Parser(text, generators)
    word = parser.parse_word()
    parser.expect("END")
    return word


# ---------------------------------------------------------------------------
# presentations

class GroupPresentation:
    """Finitely presented group: named generators plus relator words."""

    __slots__ = ("generators", "relators", "relator_texts")

    def __init__(self, generators: Sequence[str], relators: Sequence[str | Word] = ()):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be distinct")
        for name in gens:
            if not name or not (name[0].isalpha() or name[0] == "_") \
                    or not all(c.isalnum() or c == "_" for c in name):
                raise ValueError(f"bad generator name {name!r}")
        words = []
        texts = []
        for rel in relators:
            if isinstance(rel, Word):
                word = rel
                text = rel.format(gens)
            else:
                word = parse_word(rel, gens)
                text = rel
            if word.is_identity():
                raise ValueError(f"relator {text!r} reduces to the identity")
            words.append(word)
            texts.append(text)
        self.generators = gens
        self.relators = tuple(words)
        self.relator_texts = tuple(texts)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def __repr__(self):
        rels = ", ".join(self.relator_texts)
        return f"<{' '.join(self.generators)} | {rels}>"


# ---------------------------------------------------------------------------
# Fox calculus

class FoxDerivative:
    """Formal sum of (sign, prefix word) terms in the free-group ring."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[int, Word]] = ()):
        self.terms = tuple(terms)

    def evaluate(self, word_matrix, field: FieldSpec, dim: int) -> Matrix:
        """Sum sign * word_matrix(prefix) as a dim x dim matrix."""
        acc = Matrix.zeros(field, dim, dim)
        for sign, prefix in self.terms:
            m = word_matrix(prefix)
            acc = acc + (m if sign > 0 else -m)
        return acc

    def __eq__(self, other):
        return isinstance(other, FoxDerivative) and self.terms == other.terms

    def __repr__(self):
        return f"FoxDerivative({self.terms})"


def fox_derivative(word: Word, gen_index: int) -> FoxDerivative:
    """Free derivative: d(uv) = du + u dv, ds_i/ds_j = delta_ij,
    d(s^-1)/ds = -s^-1."""
    terms = []
    prefix = Word.identity()
    for g, e in word.letters:
        letter = Word(((g, e),))
        if g == gen_index:
            if e == 1:
                terms.append((1, prefix))
            else:
                terms.append((-1, prefix * letter))
        prefix = prefix * letter
    return FoxDerivative(terms)


def exponent_matrix(pres: GroupPresentation) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of relator exponent sums, one row per relator."""
    n = pres.num_generators
    return tuple(rel.exponent_sums(n) for rel in pres.relators)


def hom_space(pres: GroupPresentation, field: FieldSpec) -> Subspace:
    """Hom(G, R) as generator-value tuples: the kernel of the exponent
    matrix over the field."""
    n = pres.num_generators
    rows = exponent_matrix(pres)
    if not rows:
        return Subspace.full(field, n)
    m = Matrix(field, [[field.from_int(x) for x in row] for row in rows])
    return kernel(m)


def evaluate_word(word: Word, gen_matrices: Sequence[Matrix],
                  inv_matrices: Sequence[Matrix] | None = None) -> Matrix:
    """Product of generator matrices along the word (left-to-right)."""
    if not gen_matrices:
        raise ValueError("no generator matrices")
    field = gen_matrices[0].field
    dim = gen_matrices[0].nrows
    if inv_matrices is None:
        inv_matrices = [m.inverse() for m in gen_matrices]
    out = Matrix.identity(field, dim)
    for g, e in word.letters:
        out = out * (gen_matrices[g] if e == 1 else inv_matrices[g])
    return out

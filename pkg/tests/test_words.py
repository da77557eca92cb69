import random

import pytest

from hoinv.fields import GF, QQ
from hoinv.linalg import Matrix
from hoinv.words import (GroupPresentation, Word, WordSyntaxError,
                         evaluate_word, exponent_matrix, fox_derivative,
                         hom_space, parse_word)

GENS = ["a", "b"]


def test_parse_examples():
    w = parse_word("a b a^-1 b^-1", GENS)
    assert len(w) == 4
    assert w == parse_word("[a,b]", GENS)
    assert len(parse_word("[a,b][c,d]", ["a", "b", "c", "d"])) == 8
    assert parse_word("a a^-1", ["a"]).is_identity()
    assert parse_word("(a b)^2", GENS) == parse_word("a b a b", GENS)
    assert parse_word("a^-3", ["a"]) == parse_word("a^-1 a^-1 a^-1", ["a"])
    assert parse_word("[a, b]^-1", GENS) == parse_word("b a b^-1 a^-1", GENS)


def test_parse_errors_report_position():
    with pytest.raises(WordSyntaxError) as err:
        parse_word("a c", GENS)
    assert err.value.pos == 2
    with pytest.raises(WordSyntaxError):
        parse_word("(a b", GENS)
    with pytest.raises(WordSyntaxError):
        parse_word("a ^ ^", GENS)
    with pytest.raises(WordSyntaxError):
        parse_word("", GENS)
    with pytest.raises(WordSyntaxError):
        parse_word("a %", GENS)


def test_print_parse_fixpoint():
    rng = random.Random(5)
    for _ in range(50):
        letters = [(rng.randrange(2), rng.choice((1, -1)))
                   for _ in range(rng.randrange(0, 12))]
        w = Word(letters)
        text = w.format(GENS)
        if w.is_identity():
            assert text == ""
            continue
        assert parse_word(text, GENS) == w


def test_free_reduction_confluence():
    # random cancelling-pair insertions reduce back to the original word
    rng = random.Random(23)
    for _ in range(100):
        base = Word([(rng.randrange(2), rng.choice((1, -1)))
                     for _ in range(rng.randrange(0, 8))])
        letters = list(base.letters)
        for _ in range(rng.randrange(1, 6)):
            pos = rng.randrange(len(letters) + 1)
            g, e = rng.randrange(2), rng.choice((1, -1))
            letters[pos:pos] = [(g, e), (g, -e)]
        assert Word(letters) == base


def test_word_group_laws():
    w = parse_word("a b^2 a^-1", GENS)
    assert (w * w.inverse()).is_identity()
    assert w ** 3 == w * w * w
    assert w ** -2 == (w.inverse()) * (w.inverse())
    assert (w ** 0).is_identity()


def test_fox_base_cases():
    a = parse_word("a", GENS)
    ainv = parse_word("a^-1", GENS)
    assert fox_derivative(a, 0).terms == ((1, Word()),)
    assert fox_derivative(a, 1).terms == ()
    assert fox_derivative(ainv, 0).terms == ((-1, ainv),)
    assert fox_derivative(Word(), 0).terms == ()
    comm = parse_word("a b a^-1 b^-1", GENS)
    assert [(s, w.format(GENS)) for s, w in fox_derivative(comm, 0).terms] \
        == [(1, ""), (-1, "a b a^-1")]


def _random_word(rng, n_gens, max_len=10):
    return Word([(rng.randrange(n_gens), rng.choice((1, -1)))
                 for _ in range(rng.randrange(1, max_len))])


def test_fox_product_rule_under_evaluation():
    f = GF(7)
    mats = [Matrix.from_values(f, [[1, 1], [0, 1]]),
            Matrix.from_values(f, [[1, 0], [3, 1]])]
    rng = random.Random(31)

    def word_matrix(w):
        return evaluate_word(w, mats)

    for _ in range(30):
        u, v = _random_word(rng, 2), _random_word(rng, 2)
        for i in range(2):
            lhs = fox_derivative(u * v, i).evaluate(word_matrix, f, 2)
            rhs = fox_derivative(u, i).evaluate(word_matrix, f, 2) \
                + word_matrix(u) * fox_derivative(v, i).evaluate(word_matrix, f, 2)
            assert lhs == rhs


def test_fox_fundamental_identity():
    mats = [Matrix.from_values(QQ, [[1, 1], [0, 1]]),
            Matrix.from_values(QQ, [[2, 0], [0, "1/2"]])]
    ident = Matrix.identity(QQ, 2)
    rng = random.Random(47)

    def word_matrix(w):
        return evaluate_word(w, mats)

    for _ in range(40):
        w = _random_word(rng, 2)
        total = Matrix.zeros(QQ, 2, 2)
        for i in range(2):
            total = total + fox_derivative(w, i).evaluate(word_matrix, QQ, 2) \
                * (mats[i] - ident)
        assert total == word_matrix(w) - ident


def test_exponent_matrix_examples():
    assert exponent_matrix(GroupPresentation(GENS)) == ()
    assert exponent_matrix(GroupPresentation(GENS, ["[a,b]"])) == ((0, 0),)
    assert exponent_matrix(GroupPresentation(GENS, ["a^2 b^-3"])) == ((2, -3),)


def test_hom_space_examples():
    assert hom_space(GroupPresentation(GENS), QQ).dim == 2
    za5 = GroupPresentation(["a"], ["a^5"])
    assert hom_space(za5, QQ).dim == 0
    assert hom_space(za5, GF(5)).dim == 1
    h = hom_space(GroupPresentation(GENS, ["a^2 b^-3"]), QQ)
    assert h.dim == 1
    phi = h.basis[0]
    # proportional to (3, 2)
    assert phi[0] * 2 == phi[1] * 3
    assert hom_space(GroupPresentation(GENS, ["a^2 b^-3"]), QQ).dim == \
        2 - len(exponent_matrix(GroupPresentation(GENS, ["a^2 b^-3"])))


def test_presentation_guards():
    with pytest.raises(ValueError):
        GroupPresentation(["a", "a"])
    with pytest.raises(ValueError):
        GroupPresentation(["a"], ["a a^-1"])
    with pytest.raises(ValueError):
        GroupPresentation(["1bad"])
    with pytest.raises(WordSyntaxError):
        GroupPresentation(["a"], ["b"])

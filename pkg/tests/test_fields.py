from fractions import Fraction

import pytest

from hoinv.fields import GF, QQ, FieldSpec


def test_parse_tags():
    assert FieldSpec.parse("Q").characteristic == 0
    assert FieldSpec.parse("F7").characteristic == 7
    for bad in ("F4", "F1", "q", "F", "GF(5)", "F-3"):
        with pytest.raises(ValueError):
            FieldSpec.parse(bad)


def test_prime_guards():
    with pytest.raises(ValueError):
        GF(91)  # 7 * 13
    with pytest.raises(ValueError):
        GF(2**31 + 11)
    assert GF(2147483647).p == 2147483647  # largest admissible prime


def test_rational_arithmetic():
    f = QQ
    a = f.parse_scalar("2/3")
    b = f.parse_scalar(5)
    assert f.add(a, b) == Fraction(17, 3)
    assert f.mul(a, f.inv(a)) == f.one()
    assert f.parse_scalar("-7/2") == Fraction(-7, 2)


def test_prime_field_arithmetic():
    f = GF(5)
    assert f.parse_scalar("2/3") == (2 * pow(3, -1, 5)) % 5
    assert f.inv(4) == 4
    assert f.add(3, 4) == 2
    with pytest.raises(ValueError):
        f.parse_scalar("1/5")  # denominator dies mod 5
    assert list(f.all_scalars()) == [0, 1, 2, 3, 4]


def test_scalar_rejects_junk():
    for bad in (True, "x", "1/0", None, 1.5):
        with pytest.raises((ValueError, TypeError)):
            QQ.parse_scalar(bad)

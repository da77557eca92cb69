"""Exact scalar fields: the rationals and prime fields F_p.

Scalars are `fractions.Fraction` over Q and plain ints in [0, p) over F_p.
All arithmetic is exact; there is no floating point anywhere downstream.
"""

from __future__ import annotations

from fractions import Fraction

MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldSpec:
    """The coefficient field: Q (characteristic 0) or F_p for a prime p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not isinstance(p, int) or not _is_prime(p):
                raise ValueError(f"not a prime: {p!r}")
            if p >= MAX_PRIME:
                raise ValueError(f"prime too large (must be < 2^31): {p}")
        self.p = p

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec(None)

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec(p)

    @staticmethod
    def parse(tag: str) -> "FieldSpec":
        """Parse a field tag: "Q" or "F<p>" (e.g. "F5")."""
        tag = tag.strip()
        if tag == "Q":
            return FieldSpec(None)
        if tag.startswith("F") and tag[1:].isdigit():
            return FieldSpec(int(tag[1:]))
        raise ValueError(f'bad field tag {tag!r}: expected "Q" or "F<p>"')

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def tag(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.p == other.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return f"FieldSpec({self.tag})"

    # scalar constructors -------------------------------------------------

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def from_int(self, n: int):
        return Fraction(n) if self.p is None else n % self.p

    def parse_scalar(self, value):
        """Accept an int, a Fraction, or a "num/den" / "num" string."""
        if isinstance(value, bool):
            raise ValueError(f"bad scalar {value!r}")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self._from_fraction(value)
        if isinstance(value, str):
            try:
                frac = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad scalar {value!r}") from exc
            return self._from_fraction(frac)
        raise ValueError(f"bad scalar {value!r}")

    def _from_fraction(self, frac: Fraction):
        if self.p is None:
            return frac
        den = frac.denominator % self.p
        if den == 0:
            raise ValueError(f"denominator of {frac} not invertible mod {self.p}")
        return frac.numerator * pow(den, -1, self.p) % self.p

    def format_scalar(self, a) -> str:
        return str(a)

    # arithmetic ----------------------------------------------------------

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    def all_scalars(self):
        """Iterate every field element; only available over F_p."""
        if self.p is None:
            raise ValueError("cannot enumerate Q")
        return range(self.p)


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)

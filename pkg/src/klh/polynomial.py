"""Dense integer polynomials in q."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = ["IntPolynomial", "Q", "ONE", "ZERO", "INT64_MAX", "CoefficientOverflow"]

INT64_MAX = 2**63 - 1


class CoefficientOverflow(ArithmeticError):
    pass


@dataclass(frozen=True)
class IntPolynomial:
    """Immutable polynomial with integer coefficients, lowest degree first.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``
    and degree -1.

    >>> IntPolynomial([1, 3, 5, 4, 1]).degree
    4
    >>> (IntPolynomial([1, 1]) * IntPolynomial([1, 1])).coeffs
    (1, 2, 1)
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(add_coeffs(self.coeffs, _coeffs(other)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-_as_poly(other))

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        return IntPolynomial(mul_coeffs(self.coeffs, _coeffs(other)))

    __rmul__ = __mul__

    def __call__(self, q):
        total = 0
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def truncate(self, max_degree: int) -> "IntPolynomial":
        return IntPolynomial(self.coeffs[: max_degree + 1])

    def reverse(self, d: int) -> "IntPolynomial":
        """Return q^d f(1/q); requires d >= degree."""
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        c = self.coeffs + (0,) * (d + 1 - len(self.coeffs))
        return IntPolynomial(tuple(reversed(c)))

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def check_int64(self) -> "IntPolynomial":
        for c in self.coeffs:
            if abs(c) > INT64_MAX:
                raise CoefficientOverflow(f"coefficient {c} exceeds int64")
        return self

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c)
            terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ")


def _coeffs(p) -> tuple[int, ...]:
    if isinstance(p, IntPolynomial):
        return p.coeffs
    if isinstance(p, int):
        return (p,) if p else ()
    return tuple(p)


def _as_poly(p) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial(_coeffs(p))


def add_coeffs(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return tuple(out)


def mul_coeffs(a: Iterable[int], b: Iterable[int]) -> tuple[int, ...]:
    a = tuple(a)
    b = tuple(b)
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


ZERO = IntPolynomial(())
ONE = IntPolynomial((1,))
Q = IntPolynomial((0, 1))

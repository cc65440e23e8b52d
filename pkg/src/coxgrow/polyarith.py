"""Exact integer polynomials and reduced rational functions.

Everything here works over Python's arbitrary-precision ``int``; rational
functions are kept as pairs of integer polynomials in lowest terms, so no
``Fraction`` coefficients ever appear.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence


class NotDivisibleError(ArithmeticError):
    """Raised by :func:`exact_divide` when the remainder is nonzero."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"{dividend} is not divisible by {divisor} (remainder {remainder})")


class NonIntegralSeriesError(ArithmeticError):
    """A power-series coefficient came out non-integral."""


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Polynomial in ``t`` with integer coefficients, stored in ascending order.

    The zero polynomial has an empty coefficient tuple and degree ``-1``
    (callers that need the -inf convention should test :attr:`is_zero`).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    # construction helpers
    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> IntPolynomial:
        return cls([0] * degree + [c])

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        return parse_poly(text)

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def content(self) -> int:
        """Gcd of the coefficients, signed like the leading coefficient."""
        if not self.coeffs:
            return 0
        g = reduce(gcd, self.coeffs)
        return -g if self.leading < 0 else g

    def primitive(self) -> IntPolynomial:
        c = self.content()
        if c in (0, 1):
            return self
        return IntPolynomial(a // c for a in self.coeffs)

    # arithmetic
    def __neg__(self):
        return IntPolynomial(-a for a in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] - other[k] for k in range(n))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> IntPolynomial:
        return IntPolynomial(c * a for a in self.coeffs)

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, float, complex, mpmath."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(k * a for k, a in enumerate(self.coeffs) if k)

    def reversed(self, degree: int | None = None) -> IntPolynomial:
        """``t^D p(1/t)`` with ``D = degree`` (default: own degree)."""
        D = self.degree if degree is None else degree
        if D < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        padded = list(self.coeffs) + [0] * (D + 1 - len(self.coeffs))
        return IntPolynomial(reversed(padded))

    def valuation(self) -> int:
        """Largest k with t^k dividing self (0 for the zero polynomial)."""
        for k, a in enumerate(self.coeffs):
            if a:
                return k
        return 0

    def shift_down(self, k: int) -> IntPolynomial:
        if any(self.coeffs[:k]):
            raise ValueError("t^k does not divide polynomial")
        return IntPolynomial(self.coeffs[k:])

    def pseudo_divmod(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial, int]:
        """Return (q, r, s) with ``lc(other)**s * self == q*other + r``."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lb = other.leading
        q = [0] * max(len(r) - db, 0)
        s = 0
        while len(r) - 1 >= db and any(r):
            k = len(r) - 1 - db
            lr = r[-1]
            if lr % lb == 0:
                f = lr // lb
            else:
                # scale everything so the step stays integral
                r = [lb * a for a in r]
                q = [lb * a for a in q]
                s += 1
                f = lr
            q[k] += f
            for j, b in enumerate(other.coeffs):
                r[k + j] -= f * b
            while r and r[-1] == 0:
                r.pop()
        return IntPolynomial(q), IntPolynomial(r), s

    def divmod_exact_lc(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Division over Q, returned only when the quotient is integral."""
        q, r, s = self.pseudo_divmod(other)
        if s:
            scale = other.leading ** s
            if any(a % scale for a in q.coeffs) or any(a % scale for a in r.coeffs):
                raise NotDivisibleError(self, other, r)
            q = IntPolynomial(a // scale for a in q.coeffs)
            r = IntPolynomial(a // scale for a in r.coeffs)
        return q, r

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self)


def _coerce(x) -> IntPolynomial | None:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial.constant(x)
    return None


ONE = IntPolynomial((1,))
ZERO = IntPolynomial(())
T = IntPolynomial((0, 1))
T_MINUS_1 = IntPolynomial((-1, 1))


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Gcd in Z[t], normalised to positive leading coefficient."""
    if a.is_zero:
        g = b
    elif b.is_zero:
        g = a
    else:
        c = gcd(a.content(), b.content())
        a, b = a.primitive(), b.primitive()
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero:
            _, r, _ = a.pseudo_divmod(b)
            a, b = b, r.primitive()
        g = a.primitive().scale(c)
    if g.leading < 0:
        g = -g
    return g


def exact_divide(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Return ``p / q``, raising :class:`NotDivisibleError` unless exact over Z."""
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    quo, rem = p.divmod_exact_lc(q)
    if not rem.is_zero:
        raise NotDivisibleError(p, q, rem)
    return quo


def bracket(n: int) -> IntPolynomial:
    """``[n] = 1 + t + ... + t^(n-1)``."""
    if n < 1:
        raise ValueError(f"invalid order {n}: bracket needs n >= 1")
    return IntPolynomial([1] * n)


def bracket_product(ns: Sequence[int]) -> IntPolynomial:
    """``[n1, n2, ...] = [n1][n2]...``; the empty product is 1."""
    out = ONE
    for n in ns:
        out = out * bracket(n)
    return out


class RationalFunction:
    """Reduced ratio of integer polynomials.

    Canonical form: gcd(num, den) is a unit in Z[t] and the denominator has
    a positive leading coefficient. Two equal rational functions therefore
    compare equal field by field.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = _coerce(num) if not isinstance(num, IntPolynomial) else num
        den = _coerce(den) if not isinstance(den, IntPolynomial) else den
        if num is None or den is None:
            raise TypeError("RationalFunction needs IntPolynomial or int parts")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            num, den = ZERO, ONE
        else:
            g = poly_gcd(num, den)
            if g != ONE:
                num = exact_divide(num, g)
                den = exact_divide(den, g)
            if den.leading < 0:
                num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and abs(self.den[0]) == 1

    def __eq__(self, other):
        if isinstance(other, (int, IntPolynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __call__(self, x):
        if isinstance(x, int):
            x = Fraction(x)
        return self.num(x) / self.den(x)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == ONE:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def _coerce_rf(x) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, IntPolynomial)):
        return RationalFunction(x)
    return None


def rational_sum(terms: Iterable[tuple[int, RationalFunction]]) -> RationalFunction:
    """Signed sum ``sum(sign * rf)``.

    Terms sharing a denominator are merged before any cross-multiplication,
    which keeps the Steinberg sums (many repeated ``1/f_T``) cheap.
    """
    by_den: dict[IntPolynomial, IntPolynomial] = {}
    for sign, rf in terms:
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        rf = _coerce_rf(rf)
        num = rf.num if sign == 1 else -rf.num
        by_den[rf.den] = by_den.get(rf.den, ZERO) + num
    total = RationalFunction(ZERO)
    for den, num in by_den.items():
        total = total + RationalFunction(num, den)
    return total


def reciprocal_substitution(rf: RationalFunction) -> RationalFunction:
    """``rf(1/t)`` written again as a ratio of polynomials in ``t``."""
    if rf.is_zero:
        raise ValueError("reciprocal substitution of the zero function")
    D = max(rf.num.degree, rf.den.degree)
    return RationalFunction(rf.num.reversed(D), rf.den.reversed(D))


def taylor_coefficients(rf: RationalFunction, n: int) -> list[int]:
    """First ``n`` power-series coefficients of ``rf`` at ``t = 0``."""
    q0 = rf.den[0]
    if q0 == 0:
        raise ZeroDivisionError("denominator vanishes at t=0: pole at the origin")
    den = rf.den.coeffs
    out: list[int] = []
    for k in range(n):
        acc = rf.num[k]
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        if acc % q0:
            raise NonIntegralSeriesError(
                f"coefficient of t^{k} is {Fraction(acc, q0)}, not an integer; not a growth function"
            )
        out.append(acc // q0)
    return out


# --- text syntax -----------------------------------------------------------

_TERM = re.compile(r"([+-]?)(\d*)(t(?:\^(\d+))?)?")


def parse_poly(text: str) -> IntPolynomial:
    """Parse ``5t^2+4t-1``-style input (ASCII, '^' powers, '*' optional)."""
    s = text.replace(" ", "").replace("**", "^").replace("*", "")
    if not s:
        raise ValueError("empty polynomial text")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing sign between terms in {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            k = int(m.group(4)) if m.group(4) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    deg = max(coeffs)
    return IntPolynomial(coeffs.get(k, 0) for k in range(deg + 1))


def format_poly(p: IntPolynomial) -> str:
    """Deterministic descending-power text, inverse of :func:`parse_poly`."""
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        a = p[k]
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("t" if k == 1 else f"t^{k}")
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out

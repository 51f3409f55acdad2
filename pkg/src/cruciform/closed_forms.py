"""Exact evaluation of the product formulas, transcribed as printed.

Values are ``ExactScaled`` numbers ``2**e * q`` with a rational exponent
``e`` and a positive rational ``q`` whose numerator and denominator are
odd.  Exponents of the cruciform family are quarter-integers in general,
so a formula can evaluate to a non-integer power of two; that is
representable here and reported by ``is_integer``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath


class FormulaDomainError(ValueError):
    """A hyperfactorial or factorial argument would be negative."""


def _split_two(x: int) -> tuple[int, int]:
    k = (x & -x).bit_length() - 1
    return k, x >> k


@dataclass(frozen=True)
class ExactScaled:
    e: Fraction
    q: Fraction

    def __post_init__(self):
        e, q = Fraction(self.e), Fraction(self.q)
        if q <= 0:
            raise ValueError(f"ExactScaled needs a positive rational part, got {q}")
        kn, num = _split_two(q.numerator)
        kd, den = _split_two(q.denominator)
        object.__setattr__(self, "e", e + kn - kd)
        object.__setattr__(self, "q", Fraction(num, den))

    @classmethod
    def of(cls, x) -> "ExactScaled":
        return cls(Fraction(0), Fraction(x))

    def __mul__(self, other):
        other = other if isinstance(other, ExactScaled) else ExactScaled.of(other)
        return ExactScaled(self.e + other.e, self.q * other.q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = other if isinstance(other, ExactScaled) else ExactScaled.of(other)
        return ExactScaled(self.e - other.e, self.q / other.q)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other <= 0:
                return False
            other = ExactScaled.of(other)
        if not isinstance(other, ExactScaled):
            return NotImplemented
        return self.e == other.e and self.q == other.q

    def __hash__(self):
        return hash((self.e, self.q))

    @property
    def exponent_is_integral(self) -> bool:
        return self.e.denominator == 1

    @property
    def is_power_of_two(self) -> bool:
        return self.q == 1

    @property
    def is_integer(self) -> bool:
        # after normalization q has odd numerator and denominator
        return self.exponent_is_integral and self.e >= 0 and self.q.denominator == 1

    def to_fraction(self) -> Fraction:
        if not self.exponent_is_integral:
            raise ValueError(f"2^{self.e} is irrational")
        return self.q * Fraction(2) ** int(self.e)

    def to_int(self) -> int:
        v = self.to_fraction()
        if v.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return v.numerator

    def __str__(self):
        if self.is_integer:
            return str(self.to_int())
        if self.q == 1:
            return f"2^({self.e})"
        return f"2^({self.e})*{self.q}"

    def to_dict(self) -> dict:
        out = {
            "pow2": int(self.e) if self.exponent_is_integral else str(self.e),
            "rational": f"{self.q.numerator}/{self.q.denominator}",
        }
        if self.is_integer:
            out["decimal"] = str(self.to_int())
        return out


@lru_cache(maxsize=None)
def hyperfactorial(n: int) -> int:
    """``0! 1! ... (n-1)!``; ``h(0) = 1``."""
    if n < 0:
        raise FormulaDomainError(f"hyperfactorial of negative argument {n}")
    return 1 if n == 0 else hyperfactorial(n - 1) * factorial(n - 1)


def _hratio(num_args, den_args) -> Fraction:
    bad = [x for x in (*num_args, *den_args) if x < 0]
    if bad:
        raise FormulaDomainError(f"negative hyperfactorial arguments {bad}")
    num = den = 1
    for x in num_args:
        num *= hyperfactorial(x)
    for x in den_args:
        den *= hyperfactorial(x)
    return Fraction(num, den)


def cruciform_exponent(m, n, a, b, c, d) -> Fraction:
    return (Fraction(m * (3 * m + 1) + n * (3 * n + 1), 4)
            + Fraction((a + c) * (b + d), 2)
            - Fraction((m - n) * (a - b + c - d), 4))


def cruciform_value(m, n, a, b, c, d) -> ExactScaled:
    """Tiling-count product formula for ``C_{m,n}^{a,b,c,d}``, as printed."""
    q = _hratio((m + n + 1, m + n + 1, m - a, n - b, m - c, n - d),
                (n + a + 1, m + b + 1, n + c + 1, m + d + 1))
    return ExactScaled(cruciform_exponent(m, n, a, b, c, d), q)


def elbow_value(n, a, b) -> ExactScaled:
    if a < 0 or b < 0 or n < 0:
        raise FormulaDomainError(f"elbow formula needs n, a, b >= 0: {(n, a, b)}")
    q = factorial(n) * _hratio((2 * n + 1, a, b), (n + a + 1, n + b + 1))
    return ExactScaled(Fraction(n * (n + 1), 2), q)


def t_region_exponent(m, n, b, c, d) -> Fraction:
    return (Fraction(m * (m - 1) + n * (3 * n + 1), 4)
            + Fraction((m + c) * (b + d), 2)
            - Fraction((m - n) * (m - b + c - d), 4))


def t_region_value(m, n, b, c, d) -> ExactScaled:
    """Printed formula for the T-region ``T_{m,n}^{b,c,d}``."""
    q = _hratio((m + n + 1, n - b, m - c, n - d), (m + b + 1, n + c + 1, m + d + 1))
    return ExactScaled(t_region_exponent(m, n, b, c, d), q)


def corollary_value(n) -> ExactScaled:
    """``2^{n(2n-1)} (n-1)!(2n-1)!/(3n-1)! * [0!...(4n-2)!] / [(n-1)!...(3n-2)!]^2``."""
    if n < 1:
        raise FormulaDomainError(f"corollary formula needs n >= 1, got {n}")
    middle = Fraction(hyperfactorial(3 * n - 1), hyperfactorial(n - 1))
    q = (Fraction(factorial(n - 1) * factorial(2 * n - 1), factorial(3 * n - 1))
         * hyperfactorial(4 * n - 1) / middle**2)
    return ExactScaled(Fraction(n * (2 * n - 1)), q)


def krattenthaler_exponent(m, n, a, b, c, d) -> Fraction:
    x = 2 * n + a + c
    if x < 0:
        raise FormulaDomainError(f"binomial top 2n+a+c = {x} < 0")
    return Fraction(comb(x, 2) + (m + n + 1) * (m - n - a - c + 1))


def krattenthaler_value(m, n, a, b, c, d) -> ExactScaled:
    """Printed count of the doubly intruded Aztec rectangle
    ``AR^{n+a}_{m+n, 2n+a+c+1}(n-d, n-b)``."""
    q = _hratio((m + n + 1, m + n + 1, m - a + 1, n - b + 1, m - c + 1, n - d + 1),
                (n + a, m + b, n + c, m + d))
    return ExactScaled(krattenthaler_exponent(m, n, a, b, c, d), q)


def complementation_exponent(m, n, a, b, c, d) -> int:
    """Printed power of two relating ``C_{m,n}^{a,b,c,d}`` to ``C_{m+1,n-1}^{a+1,b-1,c+1,d-1}``."""
    return n - a - c - 2


def chain_exponent(m, n, a, b, c, d) -> Fraction:
    """Printed exponent after collapsing ``n`` complementation steps."""
    return Fraction(n * (n - a - c - 2)) - Fraction(3 * n * (n - 1), 2)


def conjecture_value(n: int) -> int:
    """Conjectured tiling count of ``T_n``; always an integer."""
    if n < 1:
        raise FormulaDomainError(f"conjecture formula needs n >= 1, got {n}")
    v = Fraction(2 ** (n * (n - 1) // 2))
    for i in range(n):
        v *= Fraction(factorial(4 * i + 2), factorial(n + 2 * i + 1))
    if v.denominator != 1:
        raise ArithmeticError(f"conjecture value at n={n} is not an integer: {v}")
    return v.numerator


def aztec_value(n: int) -> int:
    if n < 0:
        raise FormulaDomainError(f"Aztec diamond order must be >= 0, got {n}")
    return 2 ** (n * (n + 1) // 2)


# --------------------------------------------------- high-precision diagnostics


@dataclass(frozen=True)
class Enclosure:
    """A rigorous real interval ``[lo, hi]`` (mpmath interval arithmetic)."""

    lo: mpmath.mpf
    hi: mpmath.mpf
    precision_bits: int

    @property
    def width(self):
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def certified_integer(self) -> int | None:
        """The unique integer in the interval, or None if there is none or
        the enclosure is too wide to decide."""
        lo_i = int(mpmath.ceil(self.lo))
        hi_i = int(mpmath.floor(self.hi))
        return lo_i if lo_i == hi_i else None

    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)


def _enclose(fn, precision_bits: int) -> Enclosure:
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    ctx = mpmath.iv
    old = ctx.prec
    ctx.prec = precision_bits
    try:
        v = fn(ctx)
        with mpmath.workprec(precision_bits):
            # endpoints are exact binary numbers, so no rounding happens here
            return Enclosure(mpmath.mpf(v.a.a), mpmath.mpf(v.b.b), precision_bits)
    finally:
        ctx.prec = old


def _cos2_grid(ctx, n):
    den = 2 * n + 1
    return [ctx.cos(ctx.pi * j / den) ** 2 for j in range(1, n + 1)]


def half_square_value(n: int, precision_bits: int = 128) -> Enclosure:
    """Printed ``2^{n(n-1)/2} sqrt(prod_{j,k<=n} (cos^2(pi j/(2n+1)) + cos^2(pi k/(2n+1))))``."""
    if n < 1:
        raise FormulaDomainError(f"n must be >= 1, got {n}")

    def f(ctx):
        cs = _cos2_grid(ctx, n)
        p = ctx.mpf(1)
        for x in cs:
            for y in cs:
                p *= x + y
        return ctx.mpf(2) ** (n * (n - 1) // 2) * ctx.sqrt(p)

    return _enclose(f, precision_bits)


def square_tfk_value(n: int, precision_bits: int = 128) -> Enclosure:
    """``prod_{j,k<=n} 4(cos^2(pi j/(2n+1)) + cos^2(pi k/(2n+1)))``: the
    tiling count of the ``2n x 2n`` square."""
    if n < 1:
        raise FormulaDomainError(f"n must be >= 1, got {n}")

    def f(ctx):
        cs = _cos2_grid(ctx, n)
        p = ctx.mpf(1)
        for x in cs:
            for y in cs:
                p *= 4 * (x + y)
        return p

    return _enclose(f, precision_bits)


FORMULAS = {
    "cruciform": (cruciform_value, ("m", "n", "a", "b", "c", "d")),
    "elbow": (elbow_value, ("n", "a", "b")),
    "t_region": (t_region_value, ("m", "n", "b", "c", "d")),
    "corollary": (corollary_value, ("n",)),
    "krattenthaler": (krattenthaler_value, ("m", "n", "a", "b", "c", "d")),
    "conjecture": (lambda n: ExactScaled.of(conjecture_value(n)), ("n",)),
    "aztec": (lambda n: ExactScaled.of(aztec_value(n)), ("n",)),
    "hyperfactorial": (lambda n: ExactScaled.of(hyperfactorial(n)), ("n",)),
}

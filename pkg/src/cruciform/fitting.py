"""Exact rational polynomial fits for power-of-two discrepancies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of all monomials of total degree <= ``degree``."""
    out = []
    for deg in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _eval_monomial(e, point) -> Fraction:
    v = Fraction(1)
    for x, k in zip(point, e):
        v *= Fraction(x) ** k
    return v


def solve_exact(A: list[list[Fraction]], y: list[Fraction]) -> list[Fraction] | None:
    """A particular solution of ``A x = y`` over the rationals (free
    variables set to zero), or None if the system is inconsistent."""
    rows = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(A, y)]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


@dataclass(frozen=True)
class PolyFit:
    variables: tuple[str, ...]
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]
    exact: bool          # zero residual on every sample
    samples: int

    def __call__(self, *point) -> Fraction:
        return sum((c * _eval_monomial(e, point) for e, c in self.terms), Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            if not mono:
                parts.append(str(c))
            elif c in (1, -1):
                parts.append(mono if c == 1 else f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_dict(self) -> dict:
        return {"variables": list(self.variables), "polynomial": str(self),
                "exact": self.exact, "samples": self.samples}


def fit_polynomial(points, values, variables, degree: int = 2) -> PolyFit:
    """Exact least-squares fit of ``values`` by a polynomial in ``variables``.

    Solves the normal equations over the rationals; ``exact`` reports
    whether the fitted polynomial reproduces every sample without residual.
    Integer sample points are assumed.
    """
    samples: dict[tuple, dict[Fraction, int]] = {}
    for p, v in zip(points, values):
        bucket = samples.setdefault(tuple(int(x) for x in p), {})
        v = Fraction(v)
        bucket[v] = bucket.get(v, 0) + 1
    total = sum(sum(b.values()) for b in samples.values())
    if not samples:
        return PolyFit(tuple(variables), (), True, 0)
    monos = monomials(len(variables), degree)
    # scale values to integers so the normal equations stay in int arithmetic
    scale = 1
    for b in samples.values():
        for v in b:
            scale = scale * v.denominator // gcd(scale, v.denominator)
    k = len(monos)
    XtX = [[0] * k for _ in range(k)]
    Xty = [0] * k
    for p, bucket in samples.items():
        row = [_int_monomial(e, p) for e in monos]
        w = sum(bucket.values())
        wy = sum(int(v * scale) * c for v, c in bucket.items())
        for i in range(k):
            ri = row[i]
            if ri == 0:
                continue
            Xty[i] += ri * wy
            XtX_i = XtX[i]
            wri = w * ri
            for j in range(k):
                XtX_i[j] += wri * row[j]
    coef = solve_exact(XtX, [Fraction(y, scale) for y in Xty])
    terms = tuple((e, c) for e, c in zip(monos, coef) if c != 0)
    fit = PolyFit(tuple(variables), terms, False, total)
    exact = all(len(b) == 1 and fit(*p) == next(iter(b)) for p, b in samples.items())
    return PolyFit(tuple(variables), terms, exact, total)


def _int_monomial(e, point) -> int:
    v = 1
    for x, k in zip(point, e):
        v *= x ** k
    return v

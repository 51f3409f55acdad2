from fractions import Fraction

from hypothesis import given, settings, strategies as st

from cruciform.fitting import fit_polynomial, monomials, solve_exact


def test_monomials():
    assert monomials(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_solve_exact():
    assert solve_exact([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_exact([[1, 1], [2, 2]], [1, 3]) is None


def test_recovers_known_polynomial():
    pts = [(x, y) for x in range(-3, 4) for y in range(-2, 3)]
    vals = [Fraction(1, 2) * x * y - 3 * x + y * y + 7 for x, y in pts]
    fit = fit_polynomial(pts, vals, ("x", "y"))
    assert fit.exact and fit.samples == len(pts)
    assert all(fit(*p) == v for p, v in zip(pts, vals))
    assert str(fit) == "7 - 3*x + 1/2*x*y + y^2"


def test_inexact_fit_flagged():
    pts = [(x,) for x in range(6)]
    fit = fit_polynomial(pts, [x ** 3 for (x,) in pts], ("x",), degree=2)
    assert not fit.exact


coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.lists(coef, min_size=6, max_size=6))
@settings(max_examples=40, deadline=None)
def test_fit_roundtrip(cs):
    pts = [(x, y) for x in range(4) for y in range(4)]
    mono = monomials(2, 2)
    f = lambda x, y: sum(c * x ** e[0] * y ** e[1] for c, e in zip(cs, mono))
    fit = fit_polynomial(pts, [f(*p) for p in pts], ("x", "y"))
    assert fit.exact
    assert all(fit(*p) == f(*p) for p in [(7, -2), (10, 3)])

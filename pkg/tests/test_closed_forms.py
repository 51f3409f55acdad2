import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from cruciform import closed_forms as cf
from cruciform.closed_forms import ExactScaled


def test_hyperfactorial():
    assert [cf.hyperfactorial(n) for n in (0, 1, 4, 7)] == [1, 1, 12, 24883200]
    for n in range(1, 15):
        assert cf.hyperfactorial(n) == math.prod(math.factorial(k) for k in range(n))
    with pytest.raises(cf.FormulaDomainError):
        cf.hyperfactorial(-1)


@pytest.mark.parametrize("params,expected", [
    ((1, 1, 1, 0, 0, 0), 8),
    ((1, 1, 0, 1, 1, -1), 4),
    ((2, 1, 1, 1, 0, 0), 96),
    ((3, 0, 2, 0, 0, 0), 64),
])
def test_cruciform_printed_values(params, expected):
    v = cf.cruciform_value(*params)
    assert v == expected and v.to_int() == expected


def test_cruciform_half_power_case():
    v = cf.cruciform_value(2, 0, 2, -1, 1, -1)
    assert v == ExactScaled(-1, 1)
    assert not v.is_integer and v.exponent_is_integral
    assert v.to_dict() == {"pow2": -1, "rational": "1/1"}


def test_elbow_values():
    assert cf.elbow_value(1, 0, 1) == 2
    assert cf.elbow_value(2, 1, 1) == 32
    assert cf.elbow_value(3, 1, 2) == 960
    for n in range(1, 31):
        assert cf.elbow_value(n, 0, n) == 2 ** (n * (n + 1) // 2)


def test_t_region_values():
    assert cf.t_region_value(1, 1, 0, 0, 0) == 4
    assert cf.t_region_value(2, 1, 0, 0, 0) == 6
    assert cf.cruciform_value(2, 1, 2, 0, 0, 0) == 48


def test_corollary():
    assert cf.corollary_value(1) == 2
    assert cf.corollary_value(2) == 960
    for n in range(1, 31):
        assert cf.corollary_value(n) == cf.elbow_value(2 * n - 1, n - 1, n)


def test_krattenthaler_printed():
    assert cf.krattenthaler_value(1, 1, 1, 0, 0, 0) == 32
    assert cf.krattenthaler_value(1, 0, 0, 0, 0, 0) == 16
    assert cf.krattenthaler_value(2, 1, 1, 1, 0, 0) == 18432


def test_conjecture_and_aztec():
    assert [cf.conjecture_value(n) for n in range(1, 6)] == [1, 4, 60, 3328, 678912]
    assert [cf.aztec_value(n) for n in (0, 2, 6)] == [1, 8, 2097152]
    with pytest.raises(cf.FormulaDomainError):
        cf.conjecture_value(0)


def test_domain_errors():
    with pytest.raises(cf.FormulaDomainError):
        cf.cruciform_value(1, 1, 2, 0, -1, 0)
    with pytest.raises(cf.FormulaDomainError):
        cf.elbow_value(2, -1, 3)


def test_half_square_diagnostic():
    e1 = cf.half_square_value(1)
    with mpmath.workprec(200):
        assert e1.contains(mpmath.sqrt(mpmath.mpf(1) / 2))
    assert e1.certified_integer() is None
    e2 = cf.half_square_value(2)
    assert e2.contains(mpmath.mpf(3) / 4) and e2.certified_integer() is None
    assert e2.width < mpmath.mpf(2) ** -100
    with pytest.raises(ValueError):
        cf.half_square_value(2, precision_bits=32)


def test_square_tfk_certified():
    assert cf.square_tfk_value(1).certified_integer() == 2
    assert cf.square_tfk_value(2).certified_integer() == 36
    assert cf.square_tfk_value(4).certified_integer() == 12988816


# ------------------------------------------------------------ ExactScaled

pos_frac = st.fractions(min_value=Fraction(1, 1000), max_value=1000).filter(lambda x: x > 0)
exps = st.fractions(min_value=-20, max_value=20, max_denominator=4)


@given(exps, pos_frac, exps, pos_frac)
def test_exact_scaled_arithmetic(e1, q1, e2, q2):
    x, y = ExactScaled(e1, q1), ExactScaled(e2, q2)
    assert x.q.numerator % 2 == 1 and x.q.denominator % 2 == 1
    assert (x * y) / y == x
    assert x * y == y * x
    assert hash(ExactScaled(e1, q1)) == hash(x)


@given(st.integers(1, 10**30))
def test_exact_scaled_of_integer(k):
    v = ExactScaled.of(k)
    assert v.is_integer and v.to_int() == k and str(v) == str(k) and v == k


# ------------------------------------------------------- formula invariants

@st.composite
def balanced_tuples(draw, max_mn=12):
    """Balanced tuples inside the domain where every hyperfactorial is defined."""
    m = draw(st.integers(0, max_mn))
    n = draw(st.integers(0, max_mn))
    a = draw(st.integers(0, m))
    c = draw(st.integers(0, m))
    rest = m + n - 1 - a - c            # = b + d
    lo, hi = max(-m, rest - n), min(n, rest + m)
    assume(lo <= hi)
    b = draw(st.integers(lo, hi))
    return (m, n, a, b, c, rest - b)


@given(balanced_tuples())
@settings(max_examples=300)
def test_dihedral_symmetry(p):
    m, n, a, b, c, d = p
    v = cf.cruciform_value(*p)
    assert v == cf.cruciform_value(m, n, c, d, a, b)
    if b >= 0 and d >= 0:
        assert v == cf.cruciform_value(n, m, b, a, d, c)


@given(balanced_tuples())
@settings(max_examples=300)
def test_exponent_integral_on_balanced(p):
    v = cf.cruciform_value(*p)
    assert v.exponent_is_integral
    if min(p[2:]) >= 0:
        assert v.is_integer


@given(st.integers(1, 12), st.data())
def test_aztec_specialization(m, data):
    a = data.draw(st.integers(0, m - 1))
    assert cf.cruciform_value(m, 0, a, 0, m - 1 - a, 0) == 2 ** (m * (m + 1) // 2)


@given(st.integers(1, 8), st.integers(0, 8), st.data())
def test_splitting_formula(m, n, data):
    c = data.draw(st.integers(0, m))
    b = data.draw(st.integers(-m, n))
    d = n - 1 - b - c
    assume(-m <= d <= n)
    lhs = cf.cruciform_value(m, n, m, b, c, d)
    assert lhs == ExactScaled(m * (m + 1) // 2, 1) * cf.t_region_value(m, n, b, c, d)

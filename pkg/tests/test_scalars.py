from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cfa.scalars import (I, ONE, ZERO, DPoly, GrassmannElement, as_scalar, dpoly_gcd, dpoly_xgcd,
                         gr_derive, gr_mul, parse_scalar, scalar_str)

D = DPoly([0, 1])


def xi(N, *idx):
    return GrassmannElement.xi(N, *idx)


def test_gaussian_arithmetic_exact():
    a = as_scalar(Fraction(1, 3)) + I
    b = as_scalar(2) - I / 2
    assert a * b == as_scalar(Fraction(7, 6)) + I * as_scalar(Fraction(11, 6))
    assert I * I == -ONE
    assert (a / a) == ONE


def test_parse_and_print_scalar():
    for text in ["0", "3/4", "-2/6", "i", "2i", "1/2+3/4i", "-i"]:
        v = parse_scalar(text)
        assert parse_scalar(scalar_str(v)) == v
    assert parse_scalar("-2/6") == as_scalar(Fraction(-1, 3))


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_grassmann_products():
    assert gr_mul(xi(2, 1), xi(2, 2)) == xi(2, 1, 2)
    assert gr_mul(xi(2, 2), xi(2, 1)) == xi(2, 1, 2).scale(-1)
    assert gr_mul(xi(2, 1), xi(2, 1)) == GrassmannElement(2)


def test_grassmann_derivatives():
    assert gr_derive(1, xi(2, 1, 2)) == xi(2, 2)
    assert gr_derive(2, xi(2, 1, 2)) == xi(2, 1).scale(-1)
    assert gr_derive(1, xi(2, 2)) == GrassmannElement(2)


def test_dpoly_basic():
    assert (D + 1) * (D - 1) == D * D - 1
    assert (D * D).divmod(D) == (D, DPoly())
    assert (D * D + 1).divmod(D + I) == (D - I, DPoly())
    assert DPoly().degree == -1


def test_gcd_and_xgcd():
    p = (D + 1) * (D - 2)
    q = (D + 1) * (D + I)
    assert dpoly_gcd(p, q) == D + 1
    g, s, t = dpoly_xgcd(p, q)
    assert s * p + t * q == g


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
gauss = st.builds(lambda a, b: as_scalar(a) + I * as_scalar(b), small, small)
polys = st.lists(gauss, max_size=5).map(DPoly)


@given(polys, polys)
def test_divmod_reconstructs(p, q):
    if not q:
        return
    quo, rem = p.divmod(q)
    assert q * quo + rem == p
    assert rem.degree < q.degree


def _grass(N):
    return st.dictionaries(
        st.frozensets(st.integers(1, N), max_size=N).map(lambda s: tuple(sorted(s))),
        st.integers(-3, 3), max_size=4,
    ).map(lambda t: GrassmannElement(N, t))


def _homog(N, k):
    subsets = st.lists(st.integers(1, N), min_size=k, max_size=k, unique=True).map(
        lambda s: tuple(sorted(s)))
    return st.dictionaries(subsets, st.integers(-3, 3), min_size=1, max_size=3).map(
        lambda t: GrassmannElement(N, t))


@st.composite
def homog_pair(draw):
    N = draw(st.integers(1, 6))
    f = draw(_homog(N, draw(st.integers(0, N))))
    g = draw(_homog(N, draw(st.integers(0, N))))
    return N, f, g


@given(homog_pair())
def test_supercommutativity(data):
    N, f, g = data
    sign = -1 if (f.parity() and g.parity()) else 1
    assert gr_mul(f, g) == gr_mul(g, f).scale(sign)


@given(homog_pair(), st.integers(1, 6))
def test_super_leibniz(data, i):
    N, f, g = data
    i = (i - 1) % N + 1
    sign = -1 if f.parity() else 1
    lhs = gr_derive(i, gr_mul(f, g))
    rhs = gr_mul(gr_derive(i, f), g) + gr_mul(f, gr_derive(i, g)).scale(sign)
    assert lhs == rhs


@given(st.integers(1, 6).flatmap(lambda N: st.tuples(st.just(N), _grass(N), st.integers(1, N))))
def test_derivative_squares_to_zero(data):
    N, f, i = data
    assert gr_derive(i, gr_derive(i, f)) == GrassmannElement(N)

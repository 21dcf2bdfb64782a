from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from shortstar.cones import SL2_CONE, GradedElement, poisson_bracket, symplectic_cone

X, Y, Z = sp.symbols("x y z")


def sl2_monomial(key):
    i, j, eps = key
    return GradedElement.monomial(SL2_CONE, key)


def sl2_to_sympy(el):
    return sp.expand(sum(sp.Rational(v.numerator, v.denominator) * X**i * Y**j * Z**e
                         for (i, j, e), v in ((k, Fraction(v)) for k, v in el.terms.items())))


def lie_poisson(a, b):
    """Ambient bracket on C[x, y, z] from {x,y} = z, {z,x} = 2x, {z,y} = -2y."""
    gens = [X, Y, Z]
    table = {(X, Y): Z, (Z, X): 2 * X, (Z, Y): -2 * Y}
    out = 0
    for u in gens:
        for v in gens:
            br = table.get((u, v)) or (-table[(v, u)] if (v, u) in table else 0)
            out += sp.diff(a, u) * sp.diff(b, v) * br
    return sp.expand(out)


def reduce_cone(expr):
    """Normal form modulo z^2 + 4xy."""
    return sp.expand(sp.reduced(sp.expand(expr), [Z**2 + 4 * X * Y], Z, X, Y)[1])


@pytest.mark.parametrize("d", range(0, 13, 2))
def test_sl2_basis_dimension(d):
    assert len(SL2_CONE.basis_of_degree(d)) == d + 1


def test_symplectic_basis_dimension():
    cone = symplectic_cone(2)
    assert [len(cone.basis_of_degree(d)) for d in range(5)] == [1, 4, 10, 20, 35]


def test_relation_reduces():
    z = GradedElement.generator(SL2_CONE, "z")
    xy = GradedElement.monomial(SL2_CONE, (1, 1, 0))
    assert z * z == xy.scale(-4)


def test_rendering():
    z = GradedElement.generator(SL2_CONE, "z")
    x = GradedElement.generator(SL2_CONE, "x")
    assert str(z * x + x.scale(Fraction(-1, 2))) == "xz-1/2*x"


keys = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 1))


@settings(max_examples=80, deadline=None)
@given(keys, keys)
def test_sl2_bracket_matches_ambient_oracle(ka, kb):
    a, b = sl2_monomial(ka), sl2_monomial(kb)
    got = sl2_to_sympy(poisson_bracket(a, b))
    assert got == reduce_cone(lie_poisson(sl2_to_sympy(a), sl2_to_sympy(b)))


@settings(max_examples=60, deadline=None)
@given(keys, keys, keys)
def test_sl2_jacobi(ka, kb, kc):
    a, b, c = (sl2_monomial(k) for k in (ka, kb, kc))
    total = (poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a))
             + poisson_bracket(c, poisson_bracket(a, b)))
    assert total.is_zero()


@settings(max_examples=60, deadline=None)
@given(keys, keys)
def test_bracket_lowers_degree_by_two(ka, kb):
    br = poisson_bracket(sl2_monomial(ka), sl2_monomial(kb))
    if not br.is_zero():
        assert br.degree() == SL2_CONE.key_degree(ka) + SL2_CONE.key_degree(kb) - 2


def test_symplectic_bracket_sign():
    cone = symplectic_cone(1)
    x, y = GradedElement.generator(cone, "x"), GradedElement.generator(cone, "y")
    assert poisson_bracket(y, x) == GradedElement.scalar(cone, 1)

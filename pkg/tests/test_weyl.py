from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_sympy
from shortstar.cones import GradedElement, symplectic_cone
from shortstar.scalars import RatFunc
from shortstar.errors import NotInSp, SingularTransform
from shortstar.weyl import (
    WeylElement,
    WeylTorus,
    WeylTrace,
    cayley,
    cayley_inv,
    diagonal,
    in_sp,
    is_symplectic,
    moyal_product,
    multiply_keys,
    weyl_key_trace,
    weyl_twisted_trace,
)

x1, x2, qs = sp.symbols("x1 x2 q")


def act(key, poly, xs):
    """X^i Y^j acting on polynomials: X = multiplication, Y = d/dx."""
    n = len(xs)
    for p in range(n):
        poly = sp.diff(poly, xs[p], key[n + p])
    for p in range(n):
        poly = poly * xs[p] ** key[p]
    return sp.expand(poly)


def act_terms(terms, poly, xs):
    return sp.expand(sum(c * act(k, poly, xs) for k, c in terms.items()))


small = st.integers(0, 3)


@settings(max_examples=60, deadline=None)
@given(st.tuples(small, small), st.tuples(small, small))
def test_weyl_product_rank_one_against_differential_operators(a, b):
    test_poly = 1 + x1 + 3 * x1**4 - x1**7
    lhs = act_terms(multiply_keys(a, b), test_poly, [x1])
    rhs = act(a, act(b, test_poly, [x1]), [x1])
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.tuples(small, small, small, small), st.tuples(small, small, small, small))
def test_weyl_product_rank_two_against_differential_operators(a, b):
    test_poly = (1 + x1 + x2) ** 5
    assert act_terms(multiply_keys(a, b), test_poly, [x1, x2]) == act(a, act(b, test_poly, [x1, x2]), [x1, x2])


def test_canonical_relation():
    X, Y = WeylElement.generator("X"), WeylElement.generator("Y")
    assert Y * X - X * Y == WeylElement.one()


def test_moyal_xy():
    cone = symplectic_cone(1)
    x, y = GradedElement.generator(cone, "x"), GradedElement.generator(cone, "y")
    assert [str(c) for c in moyal_product(x, y, [[0, 0], [0, 0]])] == ["xy", "-1/2"]
    assert [str(c) for c in moyal_product(y, x, [[0, 0], [0, 0]])] == ["xy", "1/2"]


def sympy_moyal(a_keys, b_keys, M, n):
    """Components of mu(exp(sum M_ij d_i x d_j / 2)) applied by explicit differentiation."""
    names_u = sp.symbols(f"a0:{2 * n}")
    names_v = sp.symbols(f"b0:{2 * n}")
    fa = sum(c * sp.Mul(*[s**e for s, e in zip(names_u, k)]) for k, c in a_keys.items())
    fb = sum(c * sp.Mul(*[s**e for s, e in zip(names_v, k)]) for k, c in b_keys.items())
    expr = fa * fb
    out = []
    k = 0
    while expr != 0:
        out.append(sp.expand(expr.subs(dict(zip(names_v, names_u))) / (2**k * sp.factorial(k))))
        expr = sp.expand(sum(M[i][j] * sp.diff(expr, names_u[i], names_v[j])
                             for i in range(2 * n) for j in range(2 * n) if M[i][j]))
        k += 1
    return out, names_u


def graded_to_sympy(el, names):
    return sp.expand(sum(to_sympy(v) * sp.Mul(*[s**e for s, e in zip(names, k)]) for k, v in el.terms.items()))


@pytest.mark.parametrize("B", [
    [[0, 0], [0, 0]],
    [[Fraction(1, 3), 2], [Fraction(-1, 2), Fraction(-1, 3)]],
    [[2, 0], [0, -2]],
])
@pytest.mark.parametrize("pair", [((2, 1), (1, 3)), ((3, 0), (0, 3)), ((1, 1), (2, 2))])
def test_moyal_against_sympy_differentiation(B, pair):
    cone = symplectic_cone(1)
    a = GradedElement.monomial(cone, pair[0])
    b = GradedElement.monomial(cone, pair[1])
    M = sp.Matrix([[sp.Rational(v) for v in row] for row in B]) + sp.eye(2)
    M = M * sp.Matrix([[0, -1], [1, 0]])
    expected, names = sympy_moyal(a.terms, b.terms, M.tolist(), 1)
    got = [graded_to_sympy(c, names) for c in moyal_product(a, b, B)]
    assert got == expected


def test_moyal_rejects_non_sp():
    cone = symplectic_cone(1)
    x = GradedElement.generator(cone, "x")
    with pytest.raises(NotInSp):
        moyal_product(x, x, [[1, 0], [0, 1]])


def test_cayley_round_trip():
    g = diagonal(Fraction(1, 3), Fraction(3))
    assert is_symplectic(g)
    B = cayley(g)
    assert in_sp(B)
    assert cayley_inv(B) == [[Fraction(1, 3), 0], [0, Fraction(3)]]
    with pytest.raises(SingularTransform):
        cayley(diagonal(1, 1))


@pytest.mark.parametrize("j", range(5))
def test_weyl_trace_against_truncated_series(j):
    # Tr(X^j Y^j g) on C[x] with x^n -> q^n x^n, times det(1 - g) on the polarization = 1 - q.
    N = 14
    partial = sum(sp.ff(n, j) * qs**n for n in range(N)) * (1 - qs)
    expected = sp.series(partial, qs, 0, N).removeO()
    value = sp.series(to_sympy(weyl_key_trace((j, j), RatFunc.var("q"))), qs, 0, N).removeO()
    assert sp.expand(value - expected) == 0


def test_weyl_trace_zero_off_diagonal_and_normalized():
    q = Fraction(1, 3)
    assert weyl_key_trace((2, 1), q) == 0
    assert weyl_key_trace((0, 0), q) == 1
    assert weyl_key_trace((1, 1), q) == Fraction(1, 2)


@settings(max_examples=40, deadline=None)
@given(st.tuples(small, small), st.tuples(small, small))
def test_weyl_trace_is_twisted(a, b):
    q = Fraction(2, 5)
    g = WeylTorus(q)
    u, v = WeylElement(1, {a: 1}), WeylElement(1, {b: 1})
    assert weyl_twisted_trace(u * v, q) == weyl_twisted_trace(v * g.apply(u), q)


def test_trace_table_cap():
    T = WeylTrace(Fraction(1, 3), 4)
    with pytest.raises(ValueError):
        T(WeylElement(1, {(3, 3): 1}))
    assert T(WeylElement(1, {(1, 1): 1})) == Fraction(1, 2)

from fractions import Fraction

import pytest
import sympy as sp

from conftest import l, module_matrices, represent, same, t, to_sympy, w
from shortstar import charlab
from shortstar.errors import NonzeroWeight, PoleAtOne
from shortstar.sl2quant import algebra, symbolic_algebra
from shortstar.traces import verma_trace


def insertions():
    alg = symbolic_algebra()
    e, f, h = alg.e, alg.f, alg.h
    return [alg.one(), h, h * h, f * e, f * e * h + h * h * h, h ** 4, f * f * e * e]


def oracle_series(a, N):
    """Sum over v_n of (v_n^*, a v_n) w^n t^(2n) from truncated module matrices."""
    rep = represent(a, module_matrices(l, N + 4))
    return sp.expand(sum(rep[n, n] * (w * t**2) ** n for n in range(N)))


@pytest.mark.parametrize("idx", range(7))
def test_series_against_module_matrices(idx):
    a = insertions()[idx]
    N = 8
    got = charlab.character_series(a, 2 * N).coefficients
    expected = sp.Poly(oracle_series(a, N), t)
    assert [sp.expand(to_sympy(c)) for c in got] == [sp.expand(expected.coeff_monomial(t**m)) for m in range(2 * N)]


@pytest.mark.parametrize("idx", range(7))
def test_rational_form_expands_to_oracle(idx):
    a = insertions()[idx]
    N = 9
    closed = to_sympy(charlab.character_rational(a))
    assert sp.expand(sp.series(closed, t, 0, 2 * N).removeO() - oracle_series(a, N)) == 0


def test_seed_values():
    alg = symbolic_algebra()
    s = w * t**2
    assert same(charlab.character_rational(alg.one()), 1 / (1 - s))
    assert same(charlab.character_rational(alg.h), l / (1 - s) - 2 * s / (1 - s) ** 2)


@pytest.mark.parametrize("idx", range(7))
def test_recursion_agrees_with_reconstruction(idx):
    a = insertions()[idx]
    assert charlab.character_by_recursion(a) == charlab.character_rational(a)


@pytest.mark.parametrize("idx", range(7))
def test_ode(idx):
    assert charlab.ode_check(insertions()[idx])


@pytest.mark.parametrize("idx", range(7))
def test_t1_specialization_is_verma_trace(idx):
    a = insertions()[idx]
    assert charlab.specialize_t1(a) == verma_trace(a)


def test_numeric_context():
    alg = algebra(Fraction(1, 3))
    ctx = charlab.CharacterContext(Fraction(1, 3), Fraction(1, 5))
    a = alg.h * alg.h
    assert charlab.character_by_recursion(a, ctx) == charlab.character_rational(a, ctx=ctx)
    assert charlab.specialize_t1(a, ctx) == verma_trace(a, w=Fraction(1, 5))


def test_nonzero_weight_rejected():
    alg = symbolic_algebra()
    with pytest.raises(NonzeroWeight):
        charlab.character_series(alg.e, 4)
    assert charlab.character_rational(alg.e) == 0


def test_pole_at_w_one():
    alg = algebra(Fraction(1, 3))
    with pytest.raises(PoleAtOne):
        charlab.specialize_t1(alg.h, charlab.CharacterContext(Fraction(1, 3), 1))

"""Reduced characters Tr(a g nu(t)) of the Verma module M_lambda with insertions.

The grading element is -h, so v_n = f^n v sits in layer 2n and the lowest
eigenvalue is -lambda.  The torus g_w acts on v_n by w^n, hence layer 2n of
the character of an insertion a contributes (v_n^*, a v_n) w^n t^(2n).

Two evaluators are provided: direct summation followed by rational
reconstruction, and a recursion that trades h^2 for 2 chi + 2h - 4ef and
moves e around the trace at the cost of a factor 1/(1 - w t^2).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NonzeroWeight, NotRational, PoleAtOne, RecursionStall
from .scalars import RatFunc, is_zero, reconstruct_rational, series, simplify
from .sl2quant import PBWElement, algebra, key_weight

T_VAR = RatFunc.var("t")
L_VAR = RatFunc.var("l")
W_VAR = RatFunc.var("w")

SURPLUS = 10


@dataclass(frozen=True)
class CharacterContext:
    """Parameters of the character: highest weight lambda and torus parameter w."""

    lam: object = L_VAR
    w: object = W_VAR
    grading: str = "-h"
    weights: tuple = (("e", -2), ("f", 2))

    @property
    def h_tau(self):
        return simplify(-self.lam)

    @property
    def mu(self):
        """The weight of f evaluated on g nu(t)."""
        return self.w * T_VAR ** 2

    @property
    def alg(self):
        return algebra(self.lam)


def _context(a, ctx):
    return CharacterContext(a.alg.lam) if ctx is None else ctx


@dataclass
class CharacterSeries:
    insertion: PBWElement
    coefficients: list  # coefficient of t^m at index m


def _weight_zero_part(a):
    return PBWElement(a.alg, {k: v for k, v in a.terms.items() if key_weight(k) == 0})


def _verma_diagonal(key, n, lam):
    """(v_n^*, f^a h^b e^a v_n) from the generator action on M_lambda."""
    a, b, c = key
    coeff = 1
    k = n
    for _ in range(c):
        if k == 0:
            return 0
        coeff = coeff * k * (lam - k + 1)
        k -= 1
    coeff = coeff * (lam - 2 * k) ** b
    return coeff


def character_series(a, N, ctx=None):
    """Coefficients of t^0 .. t^(N-1) of Tr(a g nu(t)) on M_lambda."""
    ctx = _context(a, ctx)
    if any(key_weight(k) for k in a.terms):
        raise NonzeroWeight("the insertion must commute with the grading")
    if N < 0:
        raise ValueError("N must be nonnegative")
    coeffs = []
    for m in range(N):
        if m % 2:
            coeffs.append(0)
            continue
        n = m // 2
        val = 0
        for k, v in a.terms.items():
            val = val + v * _verma_diagonal(k, n, ctx.lam)
        val = val * ctx.w ** n
        coeffs.append(simplify(val) if isinstance(val, RatFunc) else val)
    return CharacterSeries(a, coeffs)


def _layer_values(a, count, ctx):
    """p(n) with coefficient of t^(2n) equal to p(n) w^n, for n < count."""
    out = []
    for n in range(count):
        val = 0
        for k, v in a.terms.items():
            val = val + v * _verma_diagonal(k, n, ctx.lam)
        out.append(simplify(val) if isinstance(val, RatFunc) else val)
    return out


def character_rational(a, bounds=None, ctx=None):
    """Closed form of the character, reconstructed from the series and checked on surplus terms."""
    ctx = _context(a, ctx)
    a = _weight_zero_part(a)
    if a.is_zero():
        return 0
    half = a.degree() // 2
    num_bound, den_bound = bounds or (half, half + 1)
    prefix = num_bound + den_bound + 2
    values = _layer_values(a, prefix + SURPLUS, ctx)
    # The series in s = w t^2 has coefficients p(n); reconstruct in s, then put s = w t^2.
    in_s = reconstruct_rational(values[:prefix], num_bound, den_bound, variable="w")
    result = simplify(in_s.substitute(w=ctx.mu) if isinstance(in_s, RatFunc) else in_s)
    length = 2 * (prefix + SURPLUS)
    expected = character_series(a, length, ctx).coefficients
    got = series(result, "t", length)
    for m, (x, y) in enumerate(zip(got, expected)):
        if x != y:
            raise NotRational(f"surplus check fails at t^{m}")
    if isinstance(result, RatFunc) and not _denominator_is_power(result, ctx):
        raise NotRational("denominator is not a power of 1 - w t^2")
    return result


def _denominator_is_power(f, ctx):
    _, _, den = f.factor()
    base = 1 - ctx.mu
    base = base if isinstance(base, RatFunc) else RatFunc.const(base)
    # factors come back normalized, so compare up to a constant
    return all(not isinstance(simplify(base / p), RatFunc) or simplify(base / p).is_constant() for p, _ in den)


# -- the recursion ----------------------------------------------------------------------------


def _poly_mul(p, r):
    out = [0] * (len(p) + len(r) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(r):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_add(p, r, scale=1):
    n = max(len(p), len(r))
    out = [(p[i] if i < len(p) else 0) + scale * (r[i] if i < len(r) else 0) for i in range(n)]
    while out and is_zero(out[-1]):
        out.pop()
    return out


def _shift_power(s, k):
    """(h + s)^k as coefficients."""
    out = [1]
    for _ in range(k):
        out = _poly_mul(out, [s, 1])
    return out


@lru_cache(maxsize=None)
def _seed_one(ctx):
    return 1 / (1 - ctx.mu)


@lru_cache(maxsize=None)
def _h_power(k, ctx):
    """Ch(h^k) by the recursion; Ch(h) comes from Ch(1) through the ODE."""
    if k == 0:
        return _seed_one(ctx)
    if k == 1:
        one = as_rf(_seed_one(ctx))
        return simplify(ctx.lam * one - T_VAR * one.derivative("t"))
    chi = ctx.alg.chi
    E = [chi / 2, Fraction(1, 2), Fraction(-1, 4)]  # ef
    F = _poly_add(E, [0, 1], -1)  # fe = ef - h
    # h^k = h^(k-2)(2 chi + 2h) - 4 e (h+2)^(k-2) f
    first = [0] * (k - 2) + [2 * chi, 2]
    commutator = _poly_add(_poly_mul([0] * (k - 2) + [1], E), _poly_mul(_shift_power(2, k - 2), F), -1)
    if len(first) - 1 >= k or len(commutator) - 1 >= k:
        raise RecursionStall(f"degree did not drop below {k}")
    total = _evaluate(first, ctx) - 4 * _evaluate(commutator, ctx) / (1 - ctx.mu)
    return simplify(total)


def as_rf(x):
    return x if isinstance(x, RatFunc) else RatFunc.const(x)


def _evaluate(poly, ctx):
    total = 0
    for i, c in enumerate(poly):
        if not is_zero(c):
            total = total + c * _h_power(i, ctx)
    return total


def character_by_recursion(a, ctx=None):
    """Character of a weight-0 insertion via the recursion on powers of h."""
    ctx = _context(a, ctx)
    total = 0
    for k, v in a.terms.items():
        if key_weight(k):
            continue
        if k[0] or k[2]:
            raise ValueError(f"{k} is not a reduced weight-0 key")
        total = total + v * _h_power(k[1], ctx)
    return simplify(total) if isinstance(total, RatFunc) else total


# -- ODE and specialization -------------------------------------------------------------------


@dataclass
class OdeReport:
    passed: bool
    lhs: object
    rhs: object

    def __bool__(self):
        return self.passed


def ode_check(a, ctx=None):
    """t d/dt Ch(a) = Ch((grading - h_tau) a) with grading = -h, h_tau = -lambda."""
    ctx = _context(a, ctx)
    ch = as_rf(character_rational(a, ctx=ctx))
    lhs = simplify(T_VAR * ch.derivative("t"))
    alg = a.alg
    shifted = (alg.scalar(-ctx.h_tau) - alg.h) * a
    rhs = character_rational(shifted, ctx=ctx)
    return OdeReport(lhs == rhs, lhs, rhs)


def specialize_t1(a, ctx=None, normalize=True):
    """Value of the character at t = 1, optionally divided by the value at a = 1."""
    ctx = _context(a, ctx)
    if not isinstance(ctx.w, RatFunc) and ctx.w == 1:
        raise PoleAtOne("w = 1 puts a pole at t = 1")
    ch = as_rf(character_rational(a, ctx=ctx))
    try:
        value = ch.substitute(t=1)
    except Exception as exc:
        raise PoleAtOne(str(exc)) from exc
    value = simplify(value)
    if normalize:
        value = simplify(value * (1 - ctx.w))
    return value


__all__ = [
    "CharacterContext",
    "CharacterSeries",
    "character_series",
    "character_rational",
    "character_by_recursion",
    "ode_check",
    "specialize_t1",
]

"""Twisted traces on D_lambda: the Verma family, the untwisted and Jordan traces,
the derivative trace at lambda = -1, and generic verification tools.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .linalg import nullspace, rank
from .scalars import DensePolynomial, RatFunc, as_ratfunc, interpolate, is_zero, power_sum, simplify
from .sl2quant import (
    PBWElement,
    algebra,
    identity_auto,
    key_degree,
    key_weight,
    keys_up_to,
    torus,
    unipotent,
)

N = DensePolynomial("n", [0, 1])


def _is_symbol(x, name):
    return isinstance(x, RatFunc) and x == RatFunc.var(name)


def _at(f, **values):
    """Evaluate a rational function at scalar values (numbers or rational functions)."""
    f = RatFunc.const(f) if not isinstance(f, RatFunc) else f
    numeric = {k: v for k, v in values.items() if not isinstance(v, RatFunc)}
    symbolic = {k: v for k, v in values.items() if isinstance(v, RatFunc) and not _is_symbol(v, k)}
    if numeric:
        f = f.subs(**numeric)
    if symbolic:
        f = f.substitute(**symbolic)
    return simplify(f)


# -- Verma module ---------------------------------------------------------------------


class VermaModel:
    """M_lambda with basis v_n: h v_n = (lambda - 2n) v_n, f v_n = v_(n+1), e v_n = n(lambda - n + 1) v_(n-1)."""

    def __init__(self, lam):
        self.lam = lam

    def h_eigenvalue(self):
        return DensePolynomial("n", [self.lam, -2])

    def e_coefficient(self):
        return DensePolynomial("n", [0, 1]) * DensePolynomial("n", [self.lam + 1, -1])

    def matrix_element(self, key):
        """(v_n^*, f^a h^b e^c v_n) as a polynomial in n."""
        a, b, c = key
        if a != c:
            return DensePolynomial("n", [])
        # e^a v_n = prod_{j<a} (n - j)(lambda - n + j + 1) v_(n-a)
        poly = DensePolynomial("n", [1])
        for j in range(a):
            poly = poly * DensePolynomial("n", [-j, 1]) * DensePolynomial("n", [self.lam + j + 1, -1])
        h_val = DensePolynomial("n", [self.lam + 2 * a, -2])
        for _ in range(b):
            poly = poly * h_val
        return poly


@lru_cache(maxsize=None)
def _verma_key_symbolic(key):
    """T_l^w(key) with symbolic l and w."""
    poly = VermaModel(RatFunc.var("l")).matrix_element(key)
    w = RatFunc.var("w")
    total = RatFunc.const(0)
    for k, coeff in enumerate(poly.coeffs):
        if not is_zero(coeff):
            total = total + coeff * power_sum(k, "w")
    return simplify(total * (1 - w))


def verma_key_value(key, lam, w):
    return _at(_verma_key_symbolic(key), l=lam, w=w)


def verma_trace(a, lam=None, w=None):
    """T_lambda^w(a) = (1 - w) sum_n (v_n^*, a v_n) w^n, summed in closed form."""
    lam = a.alg.lam if lam is None else lam
    w = RatFunc.var("w") if w is None else w
    total = 0
    for k, v in a.terms.items():
        if key_weight(k):
            continue
        total = total + v * verma_key_value(k, lam, w)
    return simplify(total) if isinstance(total, RatFunc) else total


# -- finite-dimensional irreducibles -----------------------------------------------------


def _act_key(key, n, vec, lam_value):
    """Apply f^a h^b e^c to a vector on L_n given as {index: coeff}."""
    a, b, c = key
    out = {}
    for k, coeff in vec.items():
        if k - c < 0:
            continue
        m = 1
        for j in range(c):
            m *= (k - j) * (n - k + j + 1)
        if m == 0:
            continue
        m *= (n - 2 * (k - c)) ** b
        target = k - c + a
        if target > n or m == 0:
            continue
        out[target] = out.get(target, 0) + coeff * m
    return out


def _specialize(v, n):
    if isinstance(v, RatFunc):
        return _at(v, l=n)
    return v


def findim_trace(a, n, twist_series=None):
    """Trace of a (times an optional operator given as {power of e: scalar}) on L_n."""
    total = 0
    for key, v in a.terms.items():
        coeff = _specialize(v, n)
        if is_zero(coeff):
            continue
        for k in range(n + 1):
            if twist_series is None:
                vec = {k: 1}
            else:
                vec = {}
                for j, cj in twist_series.items():
                    for idx, val in _act_key((0, 0, j), n, {k: 1}, n).items():
                        vec[idx] = vec.get(idx, 0) + cj * val
            res = _act_key(key, n, vec, n)
            if k in res:
                total = total + coeff * res[k]
    return total


def _exp_e_series(c, n):
    """exp(c e) on L_n as {power of e: coefficient}; e^(n+1) = 0 there."""
    return {j: c ** j * Fraction(1, factorial(j)) for j in range(n + 1)}


@lru_cache(maxsize=None)
def _untwisted_key_symbolic(key):
    """Tr_{L_l}(key) / (l + 1), interpolated in l."""
    m = sum(key)
    bound = m + 1
    if key_weight(key):
        return RatFunc.const(0)
    alg0 = algebra(0)
    points = [(n, findim_trace(PBWElement(alg0, {key: 1}), n)) for n in range(bound + 3)]
    poly = interpolate(points, bound, "l").to_ratfunc()
    return simplify(poly / (RatFunc.var("l") + 1))


def untwisted_trace(a, lam=None):
    """T_lambda(a) = Tr_{L_lambda}(a) / (lambda + 1), extended from integer lambda by interpolation."""
    lam = a.alg.lam if lam is None else lam
    total = 0
    for k, v in a.terms.items():
        val = _untwisted_key_symbolic(k)
        if not is_zero(val):
            total = total + v * _at(val, l=lam)
    return simplify(total) if isinstance(total, RatFunc) else total


@lru_cache(maxsize=None)
def _jordan_key_symbolic(key, c):
    m = sum(key)
    bound = 2 * m + 1
    alg0 = algebra(0)
    elem = PBWElement(alg0, {key: 1})
    points = [(n, findim_trace(elem, n, _exp_e_series(c, n))) for n in range(bound + 3)]
    poly = interpolate(points, bound, "l").to_ratfunc()
    return simplify(poly / (RatFunc.var("l") + 1))


def jordan_trace(a, c, lam=None):
    """(1 / (lambda + 1)) Tr_{L_lambda}(a exp(c e)), a polynomial in lambda."""
    lam = a.alg.lam if lam is None else lam
    total = 0
    for k, v in a.terms.items():
        val = _jordan_key_symbolic(k, c)
        if not is_zero(val):
            total = total + v * _at(val, l=lam)
    return simplify(total) if isinstance(total, RatFunc) else total


def derivative_trace(a, w=None):
    """d/dlambda T_lambda^w(a) at lambda = -1."""
    w = RatFunc.var("w") if w is None else w
    total = 0
    for k, v in a.terms.items():
        if key_weight(k):
            continue
        d = as_ratfunc(_verma_key_symbolic(k)).derivative("l")
        total = total + v * _at(d, l=-1, w=w)
    return simplify(total) if isinstance(total, RatFunc) else total


# -- trace functionals ----------------------------------------------------------------------


@dataclass
class TraceFunctional:
    """A linear functional on D_lambda given by its values on reduced keys up to ``cap``."""

    alg: object
    twist: object
    cap: int
    values: dict
    normalized: bool = True
    name: str = "T"

    def __call__(self, u):
        total = 0
        for k, v in u.terms.items():
            if key_degree(k) > self.cap:
                raise ValueError(f"{self.name} is only known up to degree {self.cap}")
            val = self.values.get(k, 0)
            if not is_zero(val):
                total = total + v * val
        return simplify(total) if isinstance(total, RatFunc) else total

    @property
    def weight_graded(self):
        return all(is_zero(v) or key_weight(k) == 0 for k, v in self.values.items())


def _functional(alg, twist, cap, value_of, name):
    values = {}
    for k in keys_up_to(cap):
        val = value_of(k)
        if not is_zero(val):
            values[k] = val
    return TraceFunctional(alg, twist, cap, values, values.get((0, 0, 0)) == 1, name)


def verma_functional(alg, w=None, cap=12, lam=None):
    """T_lam^w on D_lambda with the torus twist g_w; lam defaults to the algebra's lambda."""
    w = RatFunc.var("w") if w is None else w
    lam = alg.lam if lam is None else lam
    return _functional(
        alg,
        torus(alg, w),
        cap,
        lambda k: verma_key_value(k, lam, w) if not key_weight(k) else 0,
        f"T_({lam})^({w})",
    )


def dual_verma_functional(alg, w=None, cap=12):
    """T_(-lambda-2)^w, a second g_w-twisted trace on the same algebra."""
    return verma_functional(alg, w, cap, lam=simplify(-alg.lam - 2))


def untwisted_functional(alg, cap=12):
    return _functional(alg, identity_auto(alg), cap, lambda k: _at(_untwisted_key_symbolic(k), l=alg.lam), "T_untwisted")


def jordan_functional(alg, c=1, cap=12):
    return _functional(alg, unipotent(alg, c), cap, lambda k: _at(_jordan_key_symbolic(k, c), l=alg.lam), f"T_jordan({c})")


def derivative_functional(w=None, cap=12):
    alg = algebra(-1)
    w = RatFunc.var("w") if w is None else w
    return _functional(
        alg,
        torus(alg, w),
        cap,
        lambda k: _at(as_ratfunc(_verma_key_symbolic(k)).derivative("l"), l=-1, w=w) if not key_weight(k) else 0,
        "T'_(-1)",
    )


# -- verification ---------------------------------------------------------------------------


@dataclass
class TraceReport:
    passed: bool
    checked: int
    witness: tuple = None
    difference: object = None

    def __bool__(self):
        return self.passed


def verify_twisted_trace(T, g=None, cap=None):
    """Check T(uv) = T(v g(u)) on all pairs of reduced keys with deg u + deg v <= cap."""
    g = T.twist if g is None else g
    cap = T.cap if cap is None else cap
    alg = T.alg
    graded = T.weight_graded and g.name.startswith(("torus", "identity"))
    checked = 0
    for ku in keys_up_to(cap):
        u = PBWElement(alg, {ku: 1})
        gu = g.apply(u)
        for kv in keys_up_to(cap - key_degree(ku)):
            if graded and key_weight(ku) + key_weight(kv):
                continue  # both sides vanish by weight
            v = PBWElement(alg, {kv: 1})
            lhs = T(u * v)
            rhs = T(v * gu)
            checked += 1
            if lhs != rhs:
                return TraceReport(False, checked, (ku, kv), simplify(lhs - rhs))
    return TraceReport(True, checked)


@dataclass
class ProbeReport:
    dimension: int
    independent: bool
    spanned: bool
    values_on_one: tuple = ()
    values_on_h: tuple = ()
    details: dict = field(default_factory=dict)


def constraint_matrix(alg, g, cap):
    keys = keys_up_to(cap)
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for ku in keys:
        u = PBWElement(alg, {ku: 1})
        gu = g.apply(u)
        for kv in keys_up_to(cap - key_degree(ku)):
            v = PBWElement(alg, {kv: 1})
            diff = u * v - v * gu
            if diff.is_zero():
                continue
            row = [0] * len(keys)
            for k, c in diff.terms.items():
                row[index[k]] = c
            rows.append(row)
    return keys, rows


def trace_space_probe(lam, w, cap=8):
    """Null space of the truncated twisted-trace constraints for the torus twist g_w."""
    alg = algebra(lam)
    g = torus(alg, w)
    keys, rows = constraint_matrix(alg, g, cap)
    basis = nullspace(rows, len(keys))
    T1 = verma_functional(alg, w, cap)
    T2 = dual_verma_functional(alg, w, cap)
    one, h = (0, 0, 0), (0, 1, 0)
    independent = rank([[T1.values.get(one, 0), T1.values.get(h, 0)], [T2.values.get(one, 0), T2.values.get(h, 0)]]) == 2
    low = [k for k in keys if key_degree(k) <= cap - 2]
    known = [[T.values.get(k, 0) for k in low] for T in (T1, T2)]
    spanned = all(
        rank(known + [[vec[keys.index(k)] for k in low]]) == rank(known) for vec in basis
    )
    return ProbeReport(
        dimension=len(basis),
        independent=independent,
        spanned=spanned,
        values_on_one=(T1.values.get(one, 0), T2.values.get(one, 0)),
        values_on_h=(T1.values.get(h, 0), T2.values.get(h, 0)),
    )


def kernel_ideal_check(n, cap=10, low=4):
    """At lambda = n, elements of F_low acting by zero on L_n are killed by T(a b)."""
    alg = algebra(n)
    T = untwisted_functional(alg, cap)
    keys = keys_up_to(low)
    cols = []
    for k in keys:
        col = []
        for j in range(n + 1):
            res = _act_key(k, n, {j: 1}, n)
            col.extend(res.get(i, 0) for i in range(n + 1))
        cols.append(col)
    matrix = [list(r) for r in zip(*cols)]
    kernel = nullspace(matrix, len(keys))
    for vec in kernel:
        a = PBWElement(alg, {k: c for k, c in zip(keys, vec)})
        for kb in keys_up_to(cap - low):
            b = PBWElement(alg, {kb: 1})
            if T(a * b) != 0 or T(b * a) != 0:
                return False, len(kernel)
    return True, len(kernel)


__all__ = [
    "VermaModel",
    "verma_trace",
    "untwisted_trace",
    "findim_trace",
    "jordan_trace",
    "derivative_trace",
    "TraceFunctional",
    "verma_functional",
    "dual_verma_functional",
    "untwisted_functional",
    "jordan_functional",
    "derivative_functional",
    "verify_twisted_trace",
    "trace_space_probe",
    "kernel_ideal_check",
]

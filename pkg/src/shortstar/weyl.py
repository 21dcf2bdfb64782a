"""The Weyl algebra, the Moyal-Weyl family of star-products and the torus-twisted trace.

Weyl monomials X1^i1..Xn^in Y1^j1..Yn^jn are stored as exponent tuples
(i1..in, j1..jn) with all X's to the left, and Y_k X_k - X_k Y_k = 1.
Matrices over V = span(x1..xn, y1..yn) use that same coordinate order.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .cones import GradedElement, symplectic_cone
from .errors import NotInSp, PoleAtParameter, SingularTransform
from .linalg import determinant, inverse, matmul
from .scalars import RatFunc, is_zero, power_sum, simplify


class WeylElement:
    """A normal-ordered element of the n-th Weyl algebra."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if not is_zero(v)}

    @classmethod
    def one(cls, n=1):
        return cls(n, {(0,) * (2 * n): 1})

    @classmethod
    def generator(cls, name, n=1):
        """``X`` / ``Y`` for n = 1, otherwise ``X1``, ``Y2`` and so on."""
        letter, idx = name[0], int(name[1:] or 1) - 1
        key = [0] * (2 * n)
        key[idx if letter == "X" else n + idx] = 1
        return cls(n, {tuple(key): 1})

    def degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def __add__(self, other):
        other = _coerce(other, self.n)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return WeylElement(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other, self.n))

    def __rsub__(self, other):
        return _coerce(other, self.n) - self

    def scale(self, c):
        return WeylElement(self.n, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.n == other.n and self.terms == other.terms
        return self == _coerce(other, self.n)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    def __repr__(self):
        return f"WeylElement({self.n}, {self.terms!r})"


def _coerce(x, n):
    if isinstance(x, WeylElement):
        return x
    return WeylElement(n, {(0,) * (2 * n): x})


@lru_cache(maxsize=None)
def _reorder(j, k):
    """Y^j X^k = sum_r coeff_r X^(k-r) Y^(j-r) for one conjugate pair."""
    return tuple((r, comb(j, r) * factorial(k) // factorial(k - r)) for r in range(min(j, k) + 1))


@lru_cache(maxsize=65536)
def multiply_keys(a, b):
    n = len(a) // 2
    partial = {(): 1}
    for p in range(n):
        i1, j1 = a[p], a[n + p]
        i2, j2 = b[p], b[n + p]
        nxt = {}
        for r, c in _reorder(j1, i2):
            for prefix, pc in partial.items():
                key = prefix + ((i1 + i2 - r, j1 + j2 - r),)
                nxt[key] = nxt.get(key, 0) + pc * c
        partial = nxt
    out = {}
    for pairs, c in partial.items():
        key = tuple(x for x, _ in pairs) + tuple(y for _, y in pairs)
        out[key] = c
    return out


def weyl_multiply(u, v):
    if u.n != v.n:
        raise ValueError("Weyl elements of different rank")
    terms = {}
    for ka, va in u.terms.items():
        for kb, vb in v.terms.items():
            c = va * vb
            for k, m in multiply_keys(ka, kb).items():
                terms[k] = terms.get(k, 0) + m * c
    return WeylElement(u.n, terms)


# -- symplectic matrices --------------------------------------------------------


def poisson_matrix(n=1):
    """Bivector matrix P with P[x_i][y_i] = -1 and P[y_i][x_i] = 1, so that {y,x} = 1."""
    size = 2 * n
    P = [[0] * size for _ in range(size)]
    for i in range(n):
        P[i][n + i] = -1
        P[n + i][i] = 1
    return P


def identity(size):
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def _transpose(M):
    return [list(r) for r in zip(*M)]


def _add(A, B, sb=1):
    return [[a + sb * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def in_sp(B):
    n = len(B) // 2
    P = poisson_matrix(n)
    S = _add(matmul(_transpose(B), P), matmul(P, B))
    return all(is_zero(v) for row in S for v in row)


def is_symplectic(g):
    n = len(g) // 2
    P = poisson_matrix(n)
    lhs = matmul(matmul(_transpose(g), P), g)
    return all(a == b for ra, rb in zip(lhs, P) for a, b in zip(ra, rb))


def cayley(g):
    """B = (1 + g)(1 - g)^-1."""
    one = identity(len(g))
    m = _add(one, g, -1)
    if is_zero(determinant(m)):
        raise SingularTransform("1 - g is not invertible")
    return [[simplify(v) for v in row] for row in matmul(_add(one, g), inverse(m))]


def cayley_inv(B):
    """g = (B + 1)^-1 (B - 1)."""
    one = identity(len(B))
    p = _add(B, one)
    if is_zero(determinant(p)):
        raise SingularTransform("B + 1 is not invertible")
    return [[simplify(v) for v in row] for row in matmul(inverse(p), _add(B, one, -1))]


def diagonal(*entries):
    size = len(entries)
    return [[entries[i] if i == j else 0 for j in range(size)] for i in range(size)]


# -- Moyal products --------------------------------------------------------------


def moyal_product(a, b, B):
    """Components [C_0, C_1, ...] of a*b = mu(exp(((B+1) x 1) pi / 2)(a x b)).

    The bidifferential operator has matrix M = (B + 1) P: the (i, j)
    entry multiplies d_i on the first factor and d_j on the second.
    """
    if not in_sp(B):
        raise NotInSp("B is not in sp(V)")
    cone = a.cone
    size = 2 * cone.n
    M = matmul(_add(B, identity(size)), poisson_matrix(cone.n))
    entries = [(i, j, M[i][j]) for i in range(size) for j in range(size) if not is_zero(M[i][j])]
    tensor = {(ka, kb): va * vb for ka, va in a.terms.items() for kb, vb in b.terms.items()}
    components = []
    k = 0
    while tensor:
        scale = Fraction(1, 2 ** k * factorial(k))
        terms = {}
        for (ka, kb), c in tensor.items():
            key = tuple(p + q for p, q in zip(ka, kb))
            terms[key] = terms.get(key, 0) + c * scale
        components.append(GradedElement(cone, terms))
        nxt = {}
        for (ka, kb), c in tensor.items():
            for i, j, m in entries:
                if ka[i] and kb[j]:
                    na = ka[:i] + (ka[i] - 1,) + ka[i + 1:]
                    nb = kb[:j] + (kb[j] - 1,) + kb[j + 1:]
                    nxt[(na, nb)] = nxt.get((na, nb), 0) + c * m * ka[i] * kb[j]
        tensor = {key: v for key, v in nxt.items() if not is_zero(v)}
        k += 1
    return components


def moyal_star(a, b, B):
    total = GradedElement(a.cone)
    for comp in moyal_product(a, b, B):
        total = total + comp
    return total


# -- quantization helpers ----------------------------------------------------------


def lift(element):
    """x^i y^j -> X^i Y^j (normal ordering)."""
    return WeylElement(element.cone.n, dict(element.terms))


def symbol(u):
    """Top-degree part of a Weyl element as a polynomial."""
    d = u.degree()
    cone = symplectic_cone(u.n)
    return GradedElement(cone, {k: v for k, v in u.terms.items() if sum(k) == d})


# -- twisted trace ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _falling_sum(j):
    """(1 - q) * sum_n n(n-1)...(n-j+1) q^n via power sums."""
    poly = [1]  # coefficients of the falling factorial in n
    for r in range(j):
        nxt = [0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= r * c
        poly = nxt
    q = RatFunc.var("q")
    total = RatFunc.const(0)
    for k, c in enumerate(poly):
        if c:
            total = total + c * power_sum(k, "q")
    return total * (1 - q)


class WeylTorus:
    """The torus element g = diag(q, 1/q) per pair, g(X) = qX, g(Y) = Y/q.

    On the polynomial module it acts by f(x) -> f(qx), i.e. x^n -> q^n x^n.
    """

    def __init__(self, q, n=1):
        self.q = tuple(q) if isinstance(q, (list, tuple)) else (q,) * n
        self.n = n

    def factor(self, key):
        c = 1
        for p in range(self.n):
            e = key[p] - key[self.n + p]
            if e:
                c = c * (self.q[p] ** e if e > 0 else 1 / self.q[p] ** (-e))
        return c

    def apply(self, u):
        return WeylElement(u.n, {k: v * self.factor(k) for k, v in u.terms.items()})

    def matrix(self):
        return diagonal(*self.q, *[1 / Fraction(x) if not isinstance(x, RatFunc) else 1 / x for x in self.q])


def weyl_key_trace(key, q):
    n = len(key) // 2
    qs = tuple(q) if isinstance(q, (list, tuple)) else (q,) * n
    value = 1
    for p in range(n):
        if key[p] != key[n + p]:
            return 0
        value = value * _evaluate(_falling_sum(key[p]), qs[p])
    return simplify(value) if isinstance(value, RatFunc) else value


def _evaluate(f, q):
    if isinstance(q, RatFunc) and q == RatFunc.var("q"):
        return f
    if isinstance(q, RatFunc):
        return f.substitute(q=q)
    try:
        return f.subs(q=q).to_fraction()
    except PoleAtParameter:
        raise
    except ZeroDivisionError as exc:
        raise PoleAtParameter(str(exc)) from exc


def weyl_twisted_trace(a, q):
    """T(a) = det_L(1 - g) Tr_M(a g) for the torus element with parameter q."""
    total = 0
    for k, v in a.terms.items():
        t = weyl_key_trace(k, q)
        if not is_zero(t):
            total = total + v * t
    return simplify(total) if isinstance(total, RatFunc) else total


class WeylTrace:
    """The twisted trace T(a) = det_L(1 - g) Tr_M(a g) tabulated on keys up to ``cap``."""

    def __init__(self, q, cap, n=1):
        self.n = n
        self.q = q
        self.cap = cap
        self.twist = WeylTorus(q, n)
        self.name = f"T_weyl({q})"
        self.values = {}
        cone = symplectic_cone(n)
        for d in range(cap + 1):
            for k in cone.basis_of_degree(d):
                v = weyl_key_trace(k, q)
                if not is_zero(v):
                    self.values[k] = v

    weight_graded = True

    def __call__(self, u):
        total = 0
        for k, v in u.terms.items():
            if sum(k) > self.cap:
                raise ValueError(f"{self.name} is only known up to degree {self.cap}")
            val = self.values.get(k, 0)
            if not is_zero(val):
                total = total + v * val
        return simplify(total) if isinstance(total, RatFunc) else total

"""PBW arithmetic in D_lambda = U(sl2) / (C - chi), chi = lambda(lambda+2)/2.

Elements are combinations of reduced keys (a, b, c) meaning f^a h^b e^c
with a*c = 0: every product f e is eliminated with
2fe = chi - h - h^2/2, which follows from the Casimir C = ef + fe + h^2/2.
Generators e, f, h all have filtration degree 2.
"""

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

from .cones import SL2_CONE, GradedElement, _reduce_sl2
from .errors import RelationViolation
from .scalars import RatFunc, as_ratfunc, conjugate, is_zero, simplify

# -- polynomials in h as coefficient lists ------------------------------------------


def _padd(p, r):
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] = out[i] + c
    return out


def _pmul(p, r):
    if not p or not r:
        return []
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if is_zero(a):
            continue
        for j, b in enumerate(r):
            out[i + j] = out[i + j] + a * b
    return out


def _pscale(p, c):
    return [c * a for a in p]


@lru_cache(maxsize=None)
def _shift_matrix(deg, s):
    """Row k: coefficients of (h + s)^k."""
    return tuple(tuple(comb(k, i) * s ** (k - i) for i in range(k + 1)) for k in range(deg + 1))


def _pshift(p, s):
    """p(h + s)."""
    if s == 0 or len(p) <= 1:
        return list(p)
    rows = _shift_matrix(len(p) - 1, s)
    out = [0] * len(p)
    for k, c in enumerate(p):
        if is_zero(c):
            continue
        for i, m in enumerate(rows[k]):
            if m:
                out[i] = out[i] + m * c
    return out


@lru_cache(maxsize=None)
def _linear_power(s, b):
    """(h + s)^b with integer coefficients."""
    return tuple(comb(b, i) * s ** (b - i) for i in range(b + 1))


@lru_cache(maxsize=None)
def _e_past_f(c, n):
    """e^c f^n = sum_k f^(n-k) R_k(h) e^(c-k); returns {k: R_k} with integer coefficients."""
    if c == 0 or n == 0:
        return {0: (1,)}
    prev = _e_past_f(c - 1, n)
    out = {k: list(r) for k, r in prev.items()}
    # e f^n = f^n e + n f^(n-1) (h - n + 1)
    for k, r in _e_past_f(c - 1, n - 1).items():
        factor = [n * (-(n - 1) - 2 * (c - 1 - k)), n]
        out[k + 1] = _padd(out.get(k + 1, []), _pmul(list(r), factor))
    return {k: tuple(r) for k, r in out.items()}


class SL2Algebra:
    """The algebra D_lambda for a fixed (symbolic or rational) lambda."""

    def __init__(self, lam):
        self.lam = lam
        self.chi = simplify(lam * (lam + 2) / 2) if isinstance(lam, RatFunc) else Fraction(lam) * (Fraction(lam) + 2) / 2
        # fe as a polynomial in h
        self.fe = [self.chi / 2, Fraction(-1, 2), Fraction(-1, 4)]
        self._cache = {}

    def __repr__(self):
        return f"SL2Algebra(lam={self.lam})"

    def _reduce(self, a, poly, c, scale, out):
        """Add scale * f^a poly(h) e^c, Casimir-reduced, into out."""
        while a > 0 and c > 0:
            poly = _pmul(_pshift(poly, 2), self.fe)
            a -= 1
            c -= 1
        for b, coeff in enumerate(poly):
            if not is_zero(coeff):
                key = (a, b, c)
                out[key] = out.get(key, 0) + scale * coeff

    def mul_keys(self, k1, k2):
        hit = self._cache.get((k1, k2))
        if hit is not None:
            return hit
        a1, b1, c1 = k1
        a2, b2, c2 = k2
        out = {}
        for k, r in _e_past_f(c1, a2).items():
            # f^(a1+a2-k) (h - 2(a2-k))^b1 R_k(h) (h - 2(c1-k))^b2 e^(c1-k+c2)
            poly = _pmul(list(_linear_power(-2 * (a2 - k), b1)), list(r))
            poly = _pmul(poly, list(_linear_power(-2 * (c1 - k), b2)))
            self._reduce(a1 + a2 - k, poly, c1 - k + c2, 1, out)
        out = {key: v for key, v in out.items() if not is_zero(v)}
        self._cache[(k1, k2)] = out
        return out

    # convenient constructors
    def element(self, terms):
        return PBWElement(self, terms)

    def one(self):
        return PBWElement(self, {(0, 0, 0): 1})

    def scalar(self, c):
        return PBWElement(self, {(0, 0, 0): c})

    @property
    def e(self):
        return PBWElement(self, {(0, 0, 1): 1})

    @property
    def f(self):
        return PBWElement(self, {(1, 0, 0): 1})

    @property
    def h(self):
        return PBWElement(self, {(0, 1, 0): 1})

    def key(self, key, coeff=1):
        a, b, c = key
        if a and c:
            out = {}
            self._reduce(a, [0] * b + [1], c, coeff, out)
            return PBWElement(self, out)
        return PBWElement(self, {key: coeff})

    def casimir(self):
        e, f, h = self.e, self.f, self.h
        return e * f + f * e + h * h * Fraction(1, 2)


_ALGEBRAS = {}
_LOCK = threading.Lock()


def algebra(lam):
    """Shared algebra instance (with its product cache) for a lambda value."""
    if isinstance(lam, int):
        lam = Fraction(lam)
    if isinstance(lam, RatFunc) and lam.is_constant():
        lam = lam.to_fraction()
    with _LOCK:
        alg = _ALGEBRAS.get(lam)
        if alg is None:
            alg = _ALGEBRAS[lam] = SL2Algebra(lam)
    return alg


def symbolic_algebra():
    return algebra(RatFunc.var("l"))


def key_degree(key):
    return 2 * sum(key)


def key_weight(key):
    """Weight under ad h: e has weight 2, f has weight -2."""
    return 2 * (key[2] - key[0])


def keys_of_degree(d):
    """Reduced keys of exact filtration degree d, ordered by decreasing weight."""
    if d % 2:
        return []
    m = d // 2
    keys = [(0, m - c, c) for c in range(m, 0, -1)]
    keys += [(a, m - a, 0) for a in range(0, m + 1)]
    return keys


def keys_up_to(d):
    return [k for e in range(0, d + 1, 2) for k in keys_of_degree(e)]


class PBWElement:
    """A combination of reduced PBW keys in a fixed algebra D_lambda."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if not is_zero(v)}

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return PBWElement(self.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        if is_zero(c):
            return PBWElement(self.alg)
        return PBWElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return pbw_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.terms == other.terms
        return self.terms == self._coerce(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((key_degree(k) for k in self.terms), default=-1)

    def weights(self):
        return {key_weight(k) for k in self.terms}

    def coefficient(self, key):
        return self.terms.get(key, 0)

    def part(self, keys):
        keys = set(keys)
        return PBWElement(self.alg, {k: v for k, v in self.terms.items() if k in keys})

    def map_coefficients(self, fn):
        return PBWElement(self.alg, {k: fn(v) for k, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (-key_degree(k), -key_weight(k), k)):
            a, b, c = k
            mono = "".join(
                s for s in (
                    f"f^{a}" if a > 1 else "f" if a else "",
                    f"h^{b}" if b > 1 else "h" if b else "",
                    f"e^{c}" if c > 1 else "e" if c else "",
                )
            )
            parts.append(f"({self.terms[k]})*{mono}" if mono else f"({self.terms[k]})")
        return " + ".join(parts)


def pbw_multiply(u, v):
    if u.alg is not v.alg:
        raise ValueError("elements of different algebras")
    alg = u.alg
    terms = {}
    for ka, va in u.terms.items():
        for kb, vb in v.terms.items():
            c = va * vb
            for k, m in alg.mul_keys(ka, kb).items():
                terms[k] = terms.get(k, 0) + m * c
    return PBWElement(alg, terms)


def commutator(u, v):
    return u * v - v * u


def filtration_degree(u):
    return u.degree()


def symbol(u):
    """Top-degree part, mapped to x = gr e, y = gr f, z = gr h on the cone."""
    d = u.degree()
    terms = {}
    for (a, b, c), v in u.terms.items():
        if key_degree((a, b, c)) != d:
            continue
        for k, m in _reduce_sl2(c, a, b).items():
            terms[k] = terms.get(k, 0) + m * v
    return GradedElement(SL2_CONE, terms)


def lift(alg, cone_key, coeff=1):
    """Reference lift x^i y^j z^eps -> f^j h^eps e^i (Casimir-reduced)."""
    i, j, eps = cone_key
    return alg.key((j, eps, i), coeff)


def lift_element(alg, element):
    out = PBWElement(alg)
    for k, v in element.terms.items():
        out = out + lift(alg, k, v)
    return out


# -- automorphisms, antipode, conjugations ------------------------------------------------


class AutoDescriptor:
    """Images of e, f, h under a (linear or antilinear) algebra automorphism."""

    def __init__(self, alg, e, f, h, linearity="linear", name="auto"):
        self.alg = alg
        self.images = {"e": e, "f": f, "h": h}
        self.linearity = linearity
        self.name = name
        self._key_cache = {}
        self._check()

    def _check(self):
        E, F, H = self.images["e"], self.images["f"], self.images["h"]
        if commutator(H, E) != E * 2:
            raise RelationViolation("[h,e] = 2e fails for the images")
        if commutator(H, F) != F * (-2):
            raise RelationViolation("[h,f] = -2f fails for the images")
        if commutator(E, F) != H:
            raise RelationViolation("[e,f] = h fails for the images")
        cas = E * F + F * E + H * H * Fraction(1, 2)
        if cas != self.alg.scalar(self.alg.chi):
            raise RelationViolation("the Casimir is not fixed")

    def apply_key(self, key):
        hit = self._key_cache.get(key)
        if hit is None:
            a, b, c = key
            hit = (self.images["f"] ** a) * (self.images["h"] ** b) * (self.images["e"] ** c)
            self._key_cache[key] = hit
        return hit

    def apply(self, u):
        out = {}
        anti = self.linearity == "antilinear"
        for k, v in u.terms.items():
            if anti:
                v = conjugate(v)
            for kk, m in self.apply_key(k).terms.items():
                out[kk] = out.get(kk, 0) + m * v
        return PBWElement(self.alg, out)

    def __repr__(self):
        return f"AutoDescriptor({self.name})"


def apply_auto(desc, u):
    return desc.apply(u)


def identity_auto(alg):
    return AutoDescriptor(alg, alg.e, alg.f, alg.h, name="identity")


def torus(alg, w):
    """g_w: e -> e/w, f -> w f, h -> h."""
    inv = 1 / w if not isinstance(w, int) else Fraction(1, w)
    return AutoDescriptor(alg, alg.e * inv, alg.f * w, alg.h, name=f"torus({w})")


def unipotent(alg, c):
    """exp(c ad e): e -> e, h -> h - 2ce, f -> f + ch - c^2 e."""
    e, f, h = alg.e, alg.f, alg.h
    return AutoDescriptor(alg, e, f + h * c - e * (c * c), h - e * (2 * c), name=f"unipotent({c})")


def split_conjugation(alg):
    return AutoDescriptor(alg, alg.e, alg.f, alg.h, linearity="antilinear", name="split")


def compact_conjugation(alg):
    return AutoDescriptor(alg, -alg.f, -alg.e, -alg.h, linearity="antilinear", name="compact")


def conjugation(form, u):
    if form == "split":
        desc = split_conjugation(u.alg)
    elif form == "compact":
        desc = compact_conjugation(u.alg)
    else:
        raise ValueError(f"unknown conjugation {form!r}")
    return desc.apply(u)


def antipode(u):
    """The antiautomorphism with e, f, h -> -e, -f, -h."""
    alg = u.alg
    out = PBWElement(alg)
    for (a, b, c), v in u.terms.items():
        sign = -1 if (a + b + c) % 2 else 1
        out = out + (alg.e ** c) * (alg.h ** b) * (alg.f ** a) * (sign * v)
    return out


def as_scalar(x):
    return as_ratfunc(x)

"""Graded Poisson algebras: polynomials on a symplectic space and the sl2 nilpotent cone.

The sl2 cone has coordinates x, y, z of degree 2 with relation
z^2 = -4xy and brackets {x,y} = z, {z,x} = 2x, {z,y} = -2y.  Its monomials
are stored as triples (i, j, eps) meaning x^i y^j z^eps with eps in {0, 1}.
For the symplectic space of dimension 2n, monomials are exponent tuples
over (x1..xn, y1..yn) and {y_i, x_i} = 1.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DescriptorMismatch
from .scalars import is_zero, render


@dataclass(frozen=True)
class ConeDescriptor:
    kind: str  # "symplectic" or "sl2"
    n: int = 1

    @property
    def names(self):
        if self.kind == "sl2":
            return ("x", "y", "z")
        if self.n == 1:
            return ("x", "y")
        return tuple(f"x{i + 1}" for i in range(self.n)) + tuple(f"y{i + 1}" for i in range(self.n))

    @property
    def generator_degree(self):
        return 2 if self.kind == "sl2" else 1

    def key_degree(self, key):
        return self.generator_degree * sum(key)

    def one_key(self):
        return (0, 0, 0) if self.kind == "sl2" else (0,) * (2 * self.n)

    def generator_key(self, name):
        idx = self.names.index(name)
        key = [0] * len(self.names)
        key[idx] = 1
        return tuple(key)

    def weight(self, key):
        """Weight under ad h (sl2) or under the torus x -> q x, y -> y/q (symplectic)."""
        if self.kind == "sl2":
            return 2 * (key[0] - key[1])
        return sum(key[: self.n]) - sum(key[self.n:])

    def basis_of_degree(self, d):
        if d < 0:
            raise ValueError("degree must be nonnegative")
        if self.kind == "sl2":
            if d % 2:
                return []
            m = d // 2
            keys = []
            for k in range(m, -m - 1, -1):
                eps = (m - abs(k)) % 2
                i = (m - eps + k) // 2
                j = (m - eps - k) // 2
                keys.append((i, j, eps))
            return keys
        return sorted(_compositions(d, 2 * self.n), reverse=True)

    def basis_up_to(self, d):
        return [k for e in range(d + 1) for k in self.basis_of_degree(e)]

    def multiply_keys(self, a, b):
        """Product of two monomials as {key: coefficient}."""
        if self.kind == "sl2":
            return _reduce_sl2(a[0] + b[0], a[1] + b[1], a[2] + b[2])
        return {tuple(p + q for p, q in zip(a, b)): 1}

    def render_key(self, key):
        if not any(key):
            return "1"
        parts = []
        for name, e in zip(self.names, key):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "".join(parts)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _reduce_sl2(i, j, k):
    # z^2 = -4xy
    coeff = Fraction(-4) ** (k // 2)
    return {(i + k // 2, j + k // 2, k % 2): coeff}


def symplectic_cone(n=1):
    return ConeDescriptor("symplectic", n)


SL2_CONE = ConeDescriptor("sl2")


_SIMPLE = re.compile(r"-?\d+(/\d+)?")


class GradedElement:
    """A finite linear combination of reduced monomials of a cone."""

    __slots__ = ("cone", "terms")

    def __init__(self, cone, terms=None):
        self.cone = cone
        self.terms = {k: v for k, v in (terms or {}).items() if not is_zero(v)}

    @classmethod
    def monomial(cls, cone, key, coeff=1):
        return cls(cone, {key: coeff})

    @classmethod
    def generator(cls, cone, name):
        return cls(cone, {cone.generator_key(name): 1})

    @classmethod
    def scalar(cls, cone, c):
        return cls(cone, {cone.one_key(): c})

    def _check(self, other):
        if not isinstance(other, GradedElement):
            return GradedElement.scalar(self.cone, other)
        if other.cone != self.cone:
            raise DescriptorMismatch(f"{self.cone} vs {other.cone}")
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return GradedElement(self.cone, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.cone, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def scale(self, c):
        return GradedElement(self.cone, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            return self.cone == other.cone and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.cone, frozenset(self.terms)))

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({self.cone.key_degree(k) for k in self.terms})

    def degree(self):
        return max(self.degrees(), default=-1)

    def homogeneous_part(self, d):
        return GradedElement(self.cone, {k: v for k, v in self.terms.items() if self.cone.key_degree(k) == d})

    def coefficient(self, key):
        return self.terms.get(key, 0)

    def __str__(self):
        if not self.terms:
            return "0"
        order = {k: i for i, k in enumerate(self.cone.basis_up_to(self.degree()))}
        keys = sorted(self.terms, key=lambda k: (-self.cone.key_degree(k), order.get(k, 0)))
        out = []
        for k in keys:
            c = render(self.terms[k])
            mono = self.cone.render_key(k)
            if mono == "1":
                body = c
            elif c == "1":
                body = mono
            elif c == "-1":
                body = "-" + mono
            else:
                if not _SIMPLE.fullmatch(c):
                    c = f"({c})"
                body = f"{c}*{mono}"
            out.append(body)
        text = out[0]
        for body in out[1:]:
            text += body if body.startswith("-") else "+" + body
        return text

    __repr__ = __str__


def multiply(a, b):
    """Commutative product, reduced modulo the cone relation."""
    b = a._check(b)
    terms = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            for k, c in a.cone.multiply_keys(ka, kb).items():
                terms[k] = terms.get(k, 0) + c * va * vb
    return GradedElement(a.cone, terms)


# Lie-Poisson brackets of the ambient coordinates of the sl2 cone.
_SL2_BRACKETS = {
    (0, 1): {(0, 0, 1): 1},  # {x,y} = z
    (1, 0): {(0, 0, 1): -1},
    (2, 0): {(1, 0, 0): 2},  # {z,x} = 2x
    (0, 2): {(1, 0, 0): -2},
    (2, 1): {(0, 1, 0): -2},  # {z,y} = -2y
    (1, 2): {(0, 1, 0): 2},
}


def _partials(key):
    """Partial derivatives of a monomial: list of (variable index, coefficient, key)."""
    out = []
    for idx, e in enumerate(key):
        if e:
            lowered = list(key)
            lowered[idx] -= 1
            out.append((idx, e, tuple(lowered)))
    return out


def poisson_bracket(a, b):
    b = a._check(b)
    cone = a.cone
    terms = {}

    def add(key_terms, scale):
        for k, c in key_terms.items():
            terms[k] = terms.get(k, 0) + c * scale

    for ka, va in a.terms.items():
        da = _partials(ka)
        for kb, vb in b.terms.items():
            db = _partials(kb)
            for ia, ca, ra in da:
                for ib, cb, rb in db:
                    if cone.kind == "sl2":
                        br = _SL2_BRACKETS.get((ia, ib))
                        if not br:
                            continue
                        base = (ra[0] + rb[0], ra[1] + rb[1], ra[2] + rb[2])
                        for kb2, cbr in br.items():
                            ambient = tuple(p + q for p, q in zip(base, kb2))
                            add(_reduce_sl2(*ambient), cbr * ca * cb * va * vb)
                    else:
                        n = cone.n
                        # {y_i, x_i} = 1, {x_i, y_i} = -1
                        if ia >= n and ib == ia - n:
                            sign = 1
                        elif ia < n and ib == ia + n:
                            sign = -1
                        else:
                            continue
                        key = tuple(p + q for p, q in zip(ra, rb))
                        add({key: 1}, sign * ca * cb * va * vb)
    return GradedElement(cone, terms)


def basis_of_degree(cone, d):
    return cone.basis_of_degree(d)

"""Exact scalars: rationals, Gaussian rationals and rational functions.

Rational numbers are plain :class:`fractions.Fraction` (or ``int``).
Rational functions in the parameters ``l`` (for lambda), ``w``, ``q``,
``t``, ``c`` and the summation index ``n`` are :class:`RatFunc` objects
backed by python-flint multivariate polynomials over Q.  Every value is
kept in a canonical form, so ``==`` is structural equality.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import flint

from .errors import InconsistentSamples, NotRational, PoleAtParameter

VARIABLES = ("l", "w", "q", "t", "c", "n")
_CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO_EXP = (0,) * len(VARIABLES)
_ONE = _CTX.from_dict({_ZERO_EXP: 1})


def _fmpq(x):
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpq):
        return x
    raise TypeError(f"not a rational number: {x!r}")


def _fraction(x):
    return Fraction(int(x.p), int(x.q))


def _poly(x):
    if isinstance(x, flint.fmpq_mpoly):
        return x
    return _CTX.from_dict({_ZERO_EXP: _fmpq(x)})


class RatFunc:
    """A quotient of two polynomials in lowest terms.

    The denominator is normalized to leading coefficient 1 in the
    degree-lexicographic order, which makes the representation unique.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _poly(num)
        den = _ONE if den is None else _poly(den)
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def var(cls, name):
        return cls._raw(_CTX.gen(_INDEX[name]), _ONE)

    @classmethod
    def const(cls, x):
        return cls._raw(_poly(x), _ONE)

    # -- inspection -------------------------------------------------------

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def to_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _fraction(self.num.coefficient(0)) if not self.num.is_zero() else Fraction(0)

    def variables(self):
        used = set()
        for poly in (self.num, self.den):
            for exps in poly.monoms():
                used.update(VARIABLES[i] for i, e in enumerate(exps) if e)
        return used

    def degree(self, name):
        """Degree of the numerator in one variable."""
        i = _INDEX[name]
        return max((e[i] for e in self.num.monoms()), default=-1)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, RatFunc):
            if self.den.is_one() and other.den.is_one():
                return RatFunc._raw(self.num + other.num, _ONE)
            if self.den == other.den:
                return _make(self.num + other.num, self.den)
            return _make(self.num * other.den + other.num * self.den, self.den * other.den)
        if isinstance(other, (int, Fraction)):
            # gcd(num + c*den, den) = gcd(num, den) = 1: still canonical.
            return RatFunc._raw(self.num + self.den * _fmpq(other), self.den)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            if self.den.is_one() and other.den.is_one():
                return RatFunc._raw(self.num * other.num, _ONE)
            return _make(self.num * other.num, self.den * other.den)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc._raw(_CTX.from_dict({}), _ONE)
            return RatFunc._raw(self.num * _fmpq(other), self.den)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return _normalize(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, RatFunc):
            if other.den.is_one() and self.den.is_one() and other.num.is_constant():
                return RatFunc._raw(self.num * (1 / other.num.coefficient(0)), _ONE)
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return RatFunc._raw(self.num * (1 / _fmpq(other)), self.den)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == _poly(other)
        if isinstance(other, GaussianRational):
            return other.im == 0 and self == other.re
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.to_fraction())
        return hash((tuple(self.num.to_dict().items()), tuple(self.den.to_dict().items())))

    def __bool__(self):
        return not self.num.is_zero()

    # -- calculus and substitution ---------------------------------------

    def derivative(self, name):
        dn = self.num.derivative(name)
        if self.den.is_one():
            return RatFunc._raw(dn, _ONE)
        dd = self.den.derivative(name)
        return _make(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, **values):
        """Substitute rational numbers for some variables."""
        vals = {k: _fmpq(v) for k, v in values.items()}
        den = self.den.subs(vals)
        if den.is_zero():
            raise PoleAtParameter(f"{self} has a pole at {values}")
        return _make(self.num.subs(vals), den)

    def substitute(self, **images):
        """Substitute arbitrary scalars (numbers or rational functions) for variables."""
        images = {k: as_ratfunc(v) for k, v in images.items()}
        if all(v.den.is_one() for v in images.values()):
            gens = [images[name].num if name in images else _CTX.gen(i) for i, name in enumerate(VARIABLES)]
            den = self.den.compose(*gens)
            if den.is_zero():
                raise PoleAtParameter(f"{self} has a pole under {images}")
            return _make(self.num.compose(*gens), den)
        num = _evaluate_poly(self.num, images)
        den = _evaluate_poly(self.den, images)
        if den == 0:
            raise PoleAtParameter(f"{self} has a pole under {images}")
        return div(num, den)

    def factor(self):
        """Return (constant, numerator factors, denominator factors)."""
        cn, fn = self.num.factor()
        cd, fd = self.den.factor()
        return _fraction(cn) / _fraction(cd), [(RatFunc._raw(p, _ONE), m) for p, m in fn], [
            (RatFunc._raw(p, _ONE), m) for p, m in fd
        ]

    def coefficients_in(self, name):
        """Split a polynomial into {power of ``name``: coefficient polynomial}."""
        if not self.den.is_one():
            raise ValueError("coefficients_in needs a polynomial")
        return {k: RatFunc._raw(v, _ONE) for k, v in _split(self.num, _INDEX[name]).items()}

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"RatFunc({render(self)})"


def _canonical(num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _CTX.from_dict({}), _ONE
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return num, den


def _make(num, den):
    num, den = _canonical(num, den)
    return RatFunc._raw(num, den)


def _normalize(num, den):
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return RatFunc._raw(num, den)


def _split(poly, index):
    parts = {}
    for exps, coeff in poly.terms():
        k = exps[index]
        rest = exps[:index] + (0,) + exps[index + 1:]
        parts.setdefault(k, {})[rest] = coeff
    return {k: _CTX.from_dict(d) for k, d in parts.items()}


def _evaluate_poly(poly, images):
    total = 0
    for exps, coeff in poly.terms():
        term = RatFunc.const(_fraction(coeff))
        for i, e in enumerate(exps):
            if e:
                name = VARIABLES[i]
                term = term * (images[name] ** e if name in images else RatFunc.var(name) ** e)
        total = total + term
    return total


def var(name):
    """The rational function consisting of a single variable."""
    return RatFunc.var(name)


def as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise TypeError("Gaussian rationals do not embed in RatFunc")
        x = x.re
    return RatFunc.const(x)


def simplify(x):
    """Demote constant rational functions to Fractions."""
    if isinstance(x, RatFunc) and x.is_constant():
        return x.to_fraction()
    return x


def div(a, b):
    """Exact quotient; never produces a float."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def is_zero(x):
    if isinstance(x, RatFunc):
        return x.num.is_zero()
    return x == 0


class GaussianRational:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(o.re / norm, -o.im / norm)

    def __rtruediv__(self, other):
        return GaussianRational._lift(other) / self

    def __pow__(self, k):
        result = GaussianRational(1)
        base = self if k >= 0 else 1 / self
        for _ in range(abs(k)):
            result = result * base
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)


def conjugate(x):
    """Complex conjugation with every parameter treated as real.

    Only lambda may appear in rational functions: the torus and grading
    parameters are not real in general, so conjugating them is refused.
    """
    from .errors import FieldNotConjugable

    if isinstance(x, GaussianRational):
        return x.conjugate()
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, RatFunc):
        if x.variables() <= {"l"}:
            return x
        raise FieldNotConjugable(f"cannot conjugate {x}: parameters other than l are not real")
    raise FieldNotConjugable(f"cannot conjugate {x!r}")


def mode_of(x):
    """The field tag of a scalar."""
    if isinstance(x, (int, Fraction)):
        return "rational"
    if isinstance(x, GaussianRational):
        return "gaussian-rational" if x.im else "rational"
    used = x.variables()
    if not used:
        return "rational"
    if "t" in used:
        return "ratfun-t-over-any"
    if used == {"l"}:
        return "ratfun-λ"
    if used <= {"w"} or used <= {"q"}:
        return "ratfun-w"
    return "ratfun-λw"


# -- rendering ---------------------------------------------------------------


def _render_int_poly(terms):
    """terms: list of (exps, int coeff), any order."""
    terms = sorted(terms, key=lambda t: (sum(t[0]), t[0]), reverse=True)
    out = []
    for exps, c in terms:
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(VARIABLES[i])
            elif e > 1:
                factors.append(f"{VARIABLES[i]}^{e}")
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("-" if c < 0 else "+") + body)
    return "".join(out) if out else "0"


def _is_atom(terms):
    if len(terms) != 1:
        return False
    exps, c = terms[0]
    nonzero = sum(1 for e in exps if e)
    return (c == 1 and nonzero <= 1) or nonzero == 0 and c > 0


def render(x):
    """Canonical ASCII rendering, e.g. ``(l^2+2*l)/3``."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussianRational):
        if not x.im:
            return str(x.re)
        im = "i" if x.im == 1 else "-i" if x.im == -1 else f"{x.im}*i"
        if not x.re:
            return im
        return f"{x.re}{'' if im.startswith('-') else '+'}{im}"
    if isinstance(x, RatFunc):
        num = [(e, _fraction(c)) for e, c in x.num.terms()]
        den = [(e, _fraction(c)) for e, c in x.den.terms()]
        if not num:
            return "0"
        scale = lcm(*(c.denominator for _, c in num + den))
        num = [(e, int(c * scale)) for e, c in num]
        den = [(e, int(c * scale)) for e, c in den]
        g = 0
        for _, c in num + den:
            g = gcd(g, c)
        num = [(e, c // g) for e, c in num]
        den = [(e, c // g) for e, c in den]
        top = _render_int_poly(num)
        if len(den) == 1 and not any(den[0][0]) and den[0][1] == 1:
            return top
        if len(num) > 1:
            top = f"({top})"
        bottom = _render_int_poly(den)
        if not _is_atom(den):
            bottom = f"({bottom})"
        return f"{top}/{bottom}"
    return str(x)


# -- dense univariate polynomials ---------------------------------------------


class DensePolynomial:
    """Univariate polynomial with scalar coefficients, lowest degree first."""

    def __init__(self, variable, coeffs):
        coeffs = list(coeffs)
        while coeffs and is_zero(coeffs[-1]):
            coeffs.pop()
        self.variable = variable
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other):
        if isinstance(other, DensePolynomial):
            if other.variable != self.variable:
                raise ValueError("polynomials in different variables")
            return other
        return DensePolynomial(self.variable, [other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return DensePolynomial(self.variable, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return DensePolynomial(self.variable, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return DensePolynomial(self.variable, [])
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return DensePolynomial(self.variable, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, DensePolynomial):
            return self.variable == other.variable and self.coeffs == other.coeffs
        return self.coeffs == DensePolynomial(self.variable, [other]).coeffs

    def __hash__(self):
        return hash((self.variable, self.coeffs))

    def to_ratfunc(self):
        x = RatFunc.var(self.variable)
        acc = RatFunc.const(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @classmethod
    def from_ratfunc(cls, f, variable):
        if not f.is_polynomial():
            raise ValueError(f"{f} is not a polynomial")
        parts = f.coefficients_in(variable)
        top = max(parts, default=-1)
        return cls(variable, [simplify(parts.get(k, 0)) for k in range(top + 1)])

    def __repr__(self):
        return f"DensePolynomial({self.variable!r}, {list(self.coeffs)!r})"

    def __str__(self):
        return render(self.to_ratfunc())


# -- power sums, interpolation, reconstruction ---------------------------------


@lru_cache(maxsize=None)
def power_sum(k, variable="w"):
    """Closed form of sum_{n>=0} n^k x^n as a rational function of x."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = RatFunc.var(variable)
    if k == 0:
        return 1 / (1 - x)
    return x * power_sum(k - 1, variable).derivative(variable)


def interpolate(points, degree_bound, variable="l"):
    """Fit a polynomial of degree <= degree_bound and check the leftover points."""
    points = list(points)
    if len(points) < degree_bound + 1:
        raise ValueError("not enough interpolation points")
    xs = [p[0] for p in points[: degree_bound + 1]]
    if len(set(xs)) != len(xs):
        raise ValueError("abscissae must be distinct")
    # Newton divided differences.
    table = [p[1] for p in points[: degree_bound + 1]]
    newton = [table[0]]
    for level in range(1, len(xs)):
        table = [div(table[i + 1] - table[i], xs[i + level] - xs[i]) for i in range(len(table) - 1)]
        newton.append(table[0])
    poly = DensePolynomial(variable, [newton[-1]])
    for i in range(len(newton) - 2, -1, -1):
        poly = poly * DensePolynomial(variable, [-xs[i], 1]) + newton[i]
    for x, y in points[degree_bound + 1:]:
        if poly(x) != y:
            raise InconsistentSamples(f"sample at {x} is {y}, fitted polynomial gives {poly(x)}")
    return poly


def series(f, variable, length):
    """Taylor coefficients of a rational function at ``variable = 0``."""
    f = as_ratfunc(f)
    i = _INDEX[variable]
    num = _split(f.num, i)
    den = _split(f.den, i)
    d0 = den.get(0)
    if d0 is None:
        raise PoleAtParameter(f"{f} has a pole at {variable}=0")
    d0 = RatFunc._raw(d0, _ONE)
    dens = {k: RatFunc._raw(v, _ONE) for k, v in den.items() if k}
    out = []
    for k in range(length):
        acc = RatFunc._raw(num[k], _ONE) if k in num else RatFunc.const(0)
        for j, dj in dens.items():
            if j <= k:
                acc = acc - dj * out[k - j]
        out.append(acc / d0)
    return [simplify(c) for c in out]


def reconstruct_rational(coeffs, num_bound, den_bound, variable="w"):
    """Recover P/Q from a series prefix, with deg P <= num_bound and deg Q <= den_bound.

    The denominator comes from the Hankel window right after the numerator
    degree; every later coefficient of the prefix is then checked.
    """
    from .linalg import nullspace

    coeffs = list(coeffs)
    if len(coeffs) < num_bound + den_bound + 2:
        raise ValueError("series prefix too short for the requested bounds")

    def c(i):
        return coeffs[i] if i >= 0 else 0

    window = [[c(k - j) for j in range(den_bound + 1)] for k in range(num_bound + 1, num_bound + den_bound + 1)]
    if window:
        basis = nullspace(window, den_bound + 1)
        if not basis:
            raise NotRational("no denominator within the bound annihilates the Hankel window")
        q = basis[0]
    else:
        q = [1]
    # Q * S must agree with a polynomial of degree <= num_bound on the whole prefix.
    prod = []
    for k in range(len(coeffs)):
        acc = 0
        for j, qj in enumerate(q):
            if j > k:
                break
            acc = acc + qj * coeffs[k - j]
        prod.append(acc)
    for k in range(num_bound + 1, len(prod)):
        if not is_zero(prod[k]):
            raise NotRational(f"coefficient {k} does not fit a rational function within the bounds")
    x = RatFunc.var(variable)
    p_poly = RatFunc.const(0)
    for k in range(num_bound, -1, -1):
        p_poly = p_poly * x + prod[k]
    q_poly = RatFunc.const(0)
    for v in reversed(q):
        q_poly = q_poly * x + v
    return p_poly / q_poly

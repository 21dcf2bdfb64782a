"""From a nondegenerate twisted trace to a quantization map and a short star-product.

The quantization map sends a graded basis element a of degree d to the
unique element phi(a) = lift(a) + (lower terms) that is orthogonal to the
previous filtration step under (u, v) -> T(uv).  The star-product is then
a * b = phi^-1(phi(a) phi(b)), read off by downward triangular substitution.
Both the sl2 quantizations D_lambda (generator degree 2) and the Weyl
algebra (generator degree 1) are supported through small backends.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import sl2quant
from .cones import SL2_CONE, GradedElement, multiply, poisson_bracket, symplectic_cone
from .errors import (
    DegenerateTrace,
    ExpansionFailure,
    NotProportional,
    OrthogonalityFailure,
    SingularMatrix,
)
from .linalg import block_solve, determinant, inverse, leading_principal_minors, matmul
from .scalars import DensePolynomial, RatFunc, conjugate, is_zero, simplify
from .weyl import WeylElement, WeylTrace, cayley, diagonal, moyal_product


# -- backends ---------------------------------------------------------------------------


class SL2Backend:
    """Filtered algebra D_lambda with PBW keys f^a h^b e^c over the sl2 cone."""

    cone = SL2_CONE
    step = 2

    def __init__(self, alg):
        self.alg = alg

    def keys_up_to(self, d):
        return sl2quant.keys_up_to(d) if d >= 0 else []

    def key_degree(self, key):
        return sl2quant.key_degree(key)

    def key_weight(self, key):
        return sl2quant.key_weight(key)

    def zero(self):
        return sl2quant.PBWElement(self.alg)

    def element(self, terms):
        return sl2quant.PBWElement(self.alg, terms)

    def lift(self, cone_key):
        return sl2quant.lift(self.alg, cone_key)

    def top_symbol(self, u, d):
        part = u.part([k for k in u.terms if sl2quant.key_degree(k) == d])
        if part.is_zero():
            return GradedElement(self.cone)
        return sl2quant.symbol(part)


class WeylBackend:
    """The Weyl algebra of rank n with normal-ordered keys over the symplectic space."""

    step = 1

    def __init__(self, n=1):
        self.n = n
        self.cone = symplectic_cone(n)

    def keys_up_to(self, d):
        return self.cone.basis_up_to(d) if d >= 0 else []

    def key_degree(self, key):
        return sum(key)

    def key_weight(self, key):
        return self.cone.weight(key)

    def zero(self):
        return WeylElement(self.n)

    def element(self, terms):
        return WeylElement(self.n, terms)

    def lift(self, cone_key):
        return WeylElement(self.n, {cone_key: 1})

    def top_symbol(self, u, d):
        return GradedElement(self.cone, {k: v for k, v in u.terms.items() if sum(k) == d})


def backend_for(T):
    if isinstance(T, WeylTrace):
        return WeylBackend(T.n)
    return SL2Backend(T.alg)


# -- reports ----------------------------------------------------------------------------------


@dataclass
class CheckReport:
    passed: bool
    checked: int
    witness: tuple = None
    detail: object = None

    def __bool__(self):
        return self.passed


class _PairTable:
    """Cached values T(u v) on basis keys, skipping pairs killed by the weight grading."""

    def __init__(self, T, backend):
        self.T = T
        self.backend = backend
        self.graded = getattr(T, "weight_graded", False)
        self.cache = {}

    def vanishes(self, ku, kv):
        return self.graded and self.backend.key_weight(ku) + self.backend.key_weight(kv) != 0

    def __call__(self, ku, kv):
        if self.vanishes(ku, kv):
            return 0
        hit = self.cache.get((ku, kv))
        if hit is None:
            b = self.backend
            hit = self.T(b.element({ku: 1}) * b.element({kv: 1}))
            self.cache[(ku, kv)] = hit
        return hit

    def against(self, u, kv, right=True):
        """T(u v) (right=True) or T(v u) for an element u and a basis key kv."""
        total = 0
        for ku, c in u.terms.items():
            val = self(ku, kv) if right else self(kv, ku)
            if not is_zero(val):
                total = total + c * val
        return simplify(total) if isinstance(total, RatFunc) else total


# -- quantization map -----------------------------------------------------------------------


@dataclass
class QuantizationMap:
    backend: object
    trace: object
    cap: int
    images: dict
    orthogonalized: bool = True

    @property
    def cone(self):
        return self.backend.cone

    def degrees(self):
        return list(range(0, self.cap + 1, self.backend.step))

    def image(self, a):
        """phi of a cone key or of a graded element."""
        if isinstance(a, GradedElement):
            out = self.backend.zero()
            for k, v in a.terms.items():
                out = out + self.images[k].scale(v)
            return out
        return self.images[a]

    def matrix(self, d):
        """Rows phi(a) for the basis of A_d, columns the quantum keys of F_d."""
        cols = self.backend.keys_up_to(d)
        return cols, [[self.images[a].terms.get(k, 0) for k in cols] for a in self.cone.basis_of_degree(d)]

    def expand(self, u):
        """phi^-1(u) as {degree: homogeneous component}, by downward substitution."""
        rest = u
        comps = {}
        d = u.degree()
        if d > self.cap:
            raise ExpansionFailure(f"degree {d} exceeds the map's cap {self.cap}")
        while d >= 0 and rest.terms:
            top = self.backend.top_symbol(rest, d)
            if top.terms:
                comps[d] = top
                for k, v in top.terms.items():
                    rest = rest - self.images[k].scale(v)
                if any(self.backend.key_degree(k) >= d for k in rest.terms):
                    raise ExpansionFailure(f"top part at degree {d} did not cancel")
            d -= 1
        if rest.terms:
            raise ExpansionFailure("nonzero remainder below degree 0")
        return comps

    def symbols_ok(self):
        return all(self.backend.top_symbol(u, self.cone.key_degree(k)) == GradedElement.monomial(self.cone, k)
                   for k, u in self.images.items())

    def s_equivariant(self):
        """phi commutes with s, i.e. phi(a) only has terms of the parity of deg a."""
        for k, u in self.images.items():
            d = self.cone.key_degree(k)
            if any((self.backend.key_degree(q) - d) % 2 for q in u.terms):
                return False
        return True


def build_quantization_map(T, backend=None, cap=None, lift=None):
    """Orthogonalize reference lifts against the previous filtration step under T."""
    backend = backend or backend_for(T)
    step = backend.step
    cap = T.cap // 2 if cap is None else cap
    if 2 * cap - step > T.cap:
        raise ValueError(f"trace known to degree {T.cap}, need {2 * cap - step}")
    lift = lift or backend.lift
    pairs = _PairTable(T, backend)
    images = {}
    for d in range(0, cap + 1, step):
        lower = backend.keys_up_to(d - step)
        cone_keys = backend.cone.basis_of_degree(d)
        lifts = [lift(k) for k in cone_keys]
        if lower:
            matrix = [[pairs(kj, ki) for kj in lower] for ki in lower]
            rhs = [[-pairs.against(L, ki) for ki in lower] for L in lifts]
            try:
                solution, _ = block_solve(matrix, rhs)
            except SingularMatrix:
                raise DegenerateTrace(d, determinant(matrix)) from None
            for k, L, coeffs in zip(cone_keys, lifts, solution):
                images[k] = L + backend.element(dict(zip(lower, coeffs)))
            for k in cone_keys:
                for ki in lower:
                    if not is_zero(pairs.against(images[k], ki, right=False)):
                        raise OrthogonalityFailure(f"T(u phi(a)) != 0 for a = {k}, u = {ki}")
        else:
            for k, L in zip(cone_keys, lifts):
                images[k] = L
    return QuantizationMap(backend, T, cap, images)


def reference_quantization_map(T, backend=None, cap=None):
    """The reference lifts themselves, without orthogonalization."""
    backend = backend or backend_for(T)
    cap = T.cap // 2 if cap is None else cap
    images = {k: backend.lift(k) for d in range(0, cap + 1, backend.step) for k in backend.cone.basis_of_degree(d)}
    return QuantizationMap(backend, T, cap, images, orthogonalized=False)


# -- star-product tables --------------------------------------------------------------------


@dataclass
class StarProductTable:
    cone: object
    cap: int
    entries: dict  # (a, b) -> {degree: GradedElement}

    def total_degree(self, a, b):
        return self.cone.key_degree(a) + self.cone.key_degree(b)

    def component(self, a, b, k):
        """C_k(a, b), the component of degree deg a + deg b - 2k."""
        d = self.total_degree(a, b) - 2 * k
        return self.entries[(a, b)].get(d, GradedElement(self.cone))

    def components(self, a, b):
        top = self.total_degree(a, b)
        return [self.component(a, b, k) for k in range(top // 2 + 1)]

    def odd_components(self, a, b):
        top = self.total_degree(a, b)
        return {d: c for d, c in self.entries[(a, b)].items() if (top - d) % 2}

    def star(self, a, b):
        total = GradedElement(self.cone)
        for c in self.entries[(a, b)].values():
            total = total + c
        return total


def star_table(phi, cap=None):
    cap = phi.cap if cap is None else cap
    cone = phi.cone
    keys = phi.backend.cone.basis_up_to(cap)
    entries = {}
    for a in keys:
        for b in keys:
            if cone.key_degree(a) + cone.key_degree(b) > cap:
                continue
            entries[(a, b)] = phi.expand(phi.images[a] * phi.images[b])
    table = StarProductTable(cone, cap, entries)
    for (a, b), comps in entries.items():
        if comps.get(table.total_degree(a, b), GradedElement(cone)) != multiply(
            GradedElement.monomial(cone, a), GradedElement.monomial(cone, b)
        ):
            raise ExpansionFailure(f"C_0({a}, {b}) is not the commutative product")
    return table


def moyal_table(B, cap, n=1):
    """The Moyal star-product with parameter B as a StarProductTable."""
    cone = symplectic_cone(n)
    keys = cone.basis_up_to(cap)
    entries = {}
    for a in keys:
        for b in keys:
            if sum(a) + sum(b) > cap:
                continue
            comps = moyal_product(GradedElement.monomial(cone, a), GradedElement.monomial(cone, b), B)
            top = sum(a) + sum(b)
            entries[(a, b)] = {top - 2 * k: c for k, c in enumerate(comps) if c.terms}
    return StarProductTable(cone, cap, entries)


def check_short(table):
    checked = 0
    for (a, b), comps in table.entries.items():
        checked += 1
        gap = abs(table.cone.key_degree(a) - table.cone.key_degree(b))
        for d, c in sorted(comps.items()):
            if d < gap and c.terms:
                return CheckReport(False, checked, (a, b, d), c)
    return CheckReport(True, checked)


def check_even(table):
    checked = 0
    for (a, b) in table.entries:
        if (b, a) not in table.entries:
            continue
        checked += 1
        odd = table.odd_components(a, b)
        if odd:
            d = min(odd)
            return CheckReport(False, checked, (a, b, d), odd[d])
        for k, (c, r) in enumerate(zip(table.components(a, b), table.components(b, a))):
            if c != (r if k % 2 == 0 else -r):
                return CheckReport(False, checked, (a, b, k), c - (r if k % 2 == 0 else -r))
    return CheckReport(True, checked)


def check_bracket(table):
    """C_1(a,b) - C_1(b,a) = {a,b} on every pair."""
    cone = table.cone
    checked = 0
    for (a, b) in table.entries:
        if (b, a) not in table.entries:
            continue
        checked += 1
        lhs = table.component(a, b, 1) - table.component(b, a, 1)
        rhs = poisson_bracket(GradedElement.monomial(cone, a), GradedElement.monomial(cone, b))
        if lhs != rhs:
            return CheckReport(False, checked, (a, b), lhs - rhs)
    return CheckReport(True, checked)


def compare_tables(left, right):
    """Pairwise equality of two tables on their common pairs."""
    checked = 0
    for pair, comps in left.entries.items():
        if pair not in right.entries:
            continue
        checked += 1
        other = right.entries[pair]
        for d in set(comps) | set(other):
            c1 = comps.get(d, GradedElement(left.cone))
            c2 = other.get(d, GradedElement(left.cone))
            if c1 != c2:
                return CheckReport(False, checked, (pair, d), (c1, c2))
    return CheckReport(True, checked)


# -- round trip -------------------------------------------------------------------------------


def ct_recovery(phi, cap=None):
    """Check CT(phi^-1(u)) = T(u) on every quantum key of degree <= cap."""
    cap = phi.cap if cap is None else cap
    T = phi.trace
    one = phi.cone.one_key()
    checked = 0
    for k in phi.backend.keys_up_to(cap):
        u = phi.backend.element({k: 1})
        comps = phi.expand(u)
        ct = comps[0].coefficient(one) if 0 in comps else 0
        checked += 1
        if ct != T(u):
            return CheckReport(False, checked, k, simplify(ct - T(u)))
    return CheckReport(True, checked)


@dataclass
class GramData:
    keys: dict
    matrices: dict
    determinants: dict
    orthogonal: bool
    factored: dict = field(default_factory=dict)

    def singular_locus(self, d):
        """Rational roots in l of the numerator of the degree-d determinant."""
        det = self.determinants[d]
        if not isinstance(det, RatFunc):
            return set()
        _, num, _ = det.factor()
        roots = set()
        for p, _m in num:
            if p.degree("l") == 1:
                parts = p.coefficients_in("l")
                roots.add(simplify(-parts.get(0, 0) / parts[1]))
        return roots


def gram(phi, cap=None, check_orthogonal=True):
    """Gram matrices (a, b) -> T(phi(a) phi(b)) per degree, with determinants."""
    cap = phi.cap if cap is None else cap
    T = phi.trace
    pairs = _PairTable(T, phi.backend)
    cone = phi.cone
    keys, matrices, dets, factored = {}, {}, {}, {}

    def pairing(a, b):
        if pairs.graded and cone.weight(a) + cone.weight(b):
            return 0
        return T(phi.images[a] * phi.images[b])

    for d in range(0, cap + 1, phi.backend.step):
        basis = cone.basis_of_degree(d)
        keys[d] = basis
        matrices[d] = [[pairing(a, b) for b in basis] for a in basis]
        dets[d] = simplify(determinant(matrices[d]))
        if isinstance(dets[d], RatFunc):
            factored[d] = dets[d].factor()
    orthogonal = True
    if check_orthogonal:
        allkeys = cone.basis_up_to(cap)
        for a in allkeys:
            for b in allkeys:
                if cone.key_degree(a) != cone.key_degree(b) and cone.key_degree(a) + cone.key_degree(b) <= 2 * cap:
                    if not is_zero(pairing(a, b)):
                        orthogonal = False
                        break
            if not orthogonal:
                break
    return GramData(keys, matrices, dets, orthogonal, factored)


def recover_twist(phi, gram_data=None):
    """Rebuild g degree by degree from M = G^-1 G^T and compare with the declared twist."""
    gram_data = gram_data or gram(phi, check_orthogonal=False)
    T = phi.trace
    checked = 0
    for d, basis in gram_data.keys.items():
        G = gram_data.matrices[d]
        Gt = [list(r) for r in zip(*G)]
        M = matmul(inverse(G), Gt)
        for i, a in enumerate(basis):
            image = GradedElement(phi.cone, {basis[k]: M[k][i] for k in range(len(basis))})
            checked += 1
            if phi.image(image) != T.twist.apply(phi.images[a]):
                return CheckReport(False, checked, a, image)
    return CheckReport(True, checked)


# -- P_m and unitarity -------------------------------------------------------------------------


LAMBDA_REF = Fraction(-1, 2)


def untwisted_gram(m):
    """Symbolic-lambda Gram data of the untwisted even product up to degree 2m."""
    from .traces import untwisted_functional

    alg = sl2quant.symbolic_algebra()
    T = untwisted_functional(alg, cap=4 * m)
    phi = build_quantization_map(T, SL2Backend(alg), cap=2 * m)
    return gram(phi, check_orthogonal=False)


def pm_factor(m, gram_data=None):
    """P_m(lambda): ratio of the degree-2m pairing to its value at lambda = -1/2."""
    gram_data = gram_data or untwisted_gram(m)
    G = gram_data.matrices[2 * m]
    ratio = None
    for row in G:
        for entry in row:
            ref = entry.subs(l=LAMBDA_REF).to_fraction() if isinstance(entry, RatFunc) else entry
            if is_zero(ref):
                if not is_zero(entry):
                    raise NotProportional("entry vanishes at the reference point only")
                continue
            r = simplify(entry / ref)
            if ratio is None:
                ratio = r
            elif r != ratio:
                raise NotProportional(f"ratios {ratio} and {r} differ")
    if ratio is None:
        raise NotProportional("pairing vanishes identically")
    if not isinstance(ratio, RatFunc):
        return DensePolynomial("l", [ratio])
    return DensePolynomial.from_ratfunc(ratio, "l")


def expected_pm_roots(m):
    return set(range(m)) | {-j - 2 for j in range(m)}


@dataclass
class DegreeSignature:
    degree: int
    hermitian: bool
    minors: list
    positive_definite: bool


@dataclass
class HermitianReport:
    form: str
    lam: object
    degrees: list

    @property
    def positive_definite(self):
        return all(d.positive_definite for d in self.degrees)

    @property
    def hermitian(self):
        return all(d.hermitian for d in self.degrees)

    @property
    def first_failure(self):
        return next((d.degree for d in self.degrees if not d.positive_definite), None)


def hermitian_report(form, lam, cap=12):
    """Sesquilinear Gram H(a, b) = CT(a * rho(b)) per degree for the untwisted even product."""
    from .traces import untwisted_functional

    alg = sl2quant.algebra(lam)
    T = untwisted_functional(alg, cap=2 * cap)
    phi = build_quantization_map(T, SL2Backend(alg), cap=cap)
    desc = {"split": sl2quant.split_conjugation, "compact": sl2quant.compact_conjugation}[form](alg)
    out = []
    for d in range(0, cap + 1, 2):
        basis = SL2_CONE.basis_of_degree(d)
        images = [phi.images[a] for a in basis]
        rho = [desc.apply(u) for u in images]
        H = [[T(u * r) for r in rho] for u in images]
        herm = all(H[i][j] == conjugate(H[j][i]) for i in range(len(basis)) for j in range(len(basis)))
        minors = leading_principal_minors(H)
        pd = herm and all(_positive(v) for v in minors)
        out.append(DegreeSignature(d, herm, minors, pd))
    return HermitianReport(form, lam, out)


def _positive(v):
    if isinstance(v, RatFunc):
        v = v.to_fraction()
    return v > 0


# -- Weyl calibration -------------------------------------------------------------------------


# The trace twisted by g = diag(q, 1/q) matches Moyal with B = MOYAL_SIGN * cayley(g),
# as determined by calibrate_moyal_sign on the degree-1 Gram matrix.
MOYAL_SIGN = -1


def moyal_parameter(q, sign=MOYAL_SIGN):
    B = cayley(diagonal(q, 1 / Fraction(q) if not isinstance(q, RatFunc) else 1 / q))
    return [[sign * v for v in row] for row in B]


def calibrate_moyal_sign(q=Fraction(1, 3)):
    """Compare the degree-1 Gram of the trace-built product with CT(a * b) for B = +-cayley(g)."""
    T = WeylTrace(q, 2)
    phi = build_quantization_map(T, WeylBackend(1), cap=1)
    cone = phi.cone
    basis = cone.basis_of_degree(1)
    trace_gram = [[T(phi.images[a] * phi.images[b]) for b in basis] for a in basis]
    for sign in (1, -1):
        B = moyal_parameter(q, sign)
        one = cone.one_key()
        moyal_gram = [
            [
                sum((c.coefficient(one) for c in moyal_product(
                    GradedElement.monomial(cone, a), GradedElement.monomial(cone, b), B)), 0)
                for b in basis
            ]
            for a in basis
        ]
        if moyal_gram == trace_gram:
            return sign
    raise ExpansionFailure("no sign reconciles the trace with the Moyal family")


__all__ = [
    "SL2Backend",
    "WeylBackend",
    "QuantizationMap",
    "StarProductTable",
    "GramData",
    "build_quantization_map",
    "reference_quantization_map",
    "star_table",
    "moyal_table",
    "check_short",
    "check_even",
    "check_bracket",
    "compare_tables",
    "ct_recovery",
    "recover_twist",
    "gram",
    "pm_factor",
    "untwisted_gram",
    "expected_pm_roots",
    "hermitian_report",
    "calibrate_moyal_sign",
    "MOYAL_SIGN",
    "moyal_parameter",
]

"""The acceptance suite, shared by ``shortstar verify-all`` and the test-suite.

Each criterion takes a degree cap and never exceeds its own stated cap.
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import bridge, charlab, traces
from .cones import GradedElement, symplectic_cone
from .linalg import determinant
from .scalars import RatFunc, interpolate, render, simplify
from .sl2quant import algebra, key_weight, keys_up_to, symbolic_algebra
from .weyl import WeylElement, WeylTrace, moyal_product

L = RatFunc.var("l")
W = RatFunc.var("w")


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None
    value: object = None
    error: str = None

    @property
    def status(self):
        if self.error:
            return "error"
        return "pass" if self.passed else "fail"


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self):
        return all(c.status == "pass" for c in self.checks)


def _eq(name, got, expected):
    return Check(name, got == expected, None if got == expected else render(expected), render(got))


def _report(name, report):
    return Check(name, bool(report), None if report else repr(report.witness), str(report.checked))


def _components(elem):
    return [str(c) for c in elem]


# -- criteria -----------------------------------------------------------------------------------


def moyal_ground_truth(cap=12):
    cone = symplectic_cone(1)
    x, y = GradedElement.generator(cone, "x"), GradedElement.generator(cone, "y")
    comps = moyal_product(x, y, [[0, 0], [0, 0]])
    checks = [Check("x*y = xy - 1/2", _components(comps) == ["xy", "-1/2"], value=" + ".join(_components(comps)))]
    T = WeylTrace(-1, 4)
    phi = bridge.build_quantization_map(T, bridge.WeylBackend(1), cap=2)
    expected = WeylElement(1, {(1, 1): 1, (0, 0): Fraction(1, 2)})
    checks.append(Check("phi(xy) = XY + 1/2", phi.images[(1, 1)] == expected, value=repr(phi.images[(1, 1)].terms)))
    return checks


def verma_values(cap=12):
    alg = symbolic_algebra()
    e, f, h = alg.e, alg.f, alg.h
    cas = f * e * 2 + h + h * h * Fraction(1, 2)
    return [
        _eq("T(1) = 1", traces.verma_trace(alg.one()), 1),
        _eq("T(h) = l - 2w/(1-w)", traces.verma_trace(h), simplify(L - 2 * W / (1 - W))),
        _eq("T(2fe+h+h^2/2) = l(l+2)/2", traces.verma_trace(cas), simplify(L * (L + 2) / 2)),
    ]


def untwisted_values(cap=12):
    alg = symbolic_algebra()
    h2 = alg.h * alg.h
    points = [(n, traces.findim_trace(h2, n)) for n in range(6)]
    character = simplify(interpolate(points, 3, "l").to_ratfunc())
    return [
        _eq("T(h^2) = l(l+2)/3", traces.untwisted_trace(h2), simplify(L * (L + 2) / 3)),
        _eq("Tr_L(h^2) = l(l+1)(l+2)/3", character, simplify(L * (L + 1) * (L + 2) / 3)),
        _eq("T(h) = 0", traces.untwisted_trace(alg.h), 0),
    ]


def twisted_trace_law(cap=12):
    cap = min(cap, 12)
    alg = symbolic_algebra()
    families = [
        ("verma", traces.verma_functional(alg, cap=cap)),
        ("dual verma", traces.dual_verma_functional(alg, cap=cap)),
        ("untwisted", traces.untwisted_functional(alg, cap=cap)),
        ("jordan", traces.jordan_functional(alg, 1, cap=cap)),
    ]
    return [_report(f"{name} law to degree {cap}", traces.verify_twisted_trace(T)) for name, T in families]


def _round_trip(label, T, cap):
    phi = bridge.build_quantization_map(T, cap=cap)
    table = bridge.star_table(phi)
    return [
        _report(f"{label}: short", bridge.check_short(table)),
        _report(f"{label}: CT recovery", bridge.ct_recovery(phi)),
        _report(f"{label}: twist recovery", bridge.recover_twist(phi)),
    ]


def round_trip(cap=12):
    cap = min(cap, 12)
    sym = symbolic_algebra()
    num = algebra(Fraction(1, 3))
    return _round_trip("untwisted", traces.untwisted_functional(sym, 2 * cap), cap) + _round_trip(
        "verma(1/3, 1/5)", traces.verma_functional(num, Fraction(1, 5), 2 * cap), cap
    )


def random_sp2(rng):
    while True:
        a, b, c = (Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
        if a or b or c:
            return [[a, b], [c, -a]]


def evenness(cap=12, seed=2024):
    cap = min(cap, 12)
    sym = symbolic_algebra()
    untw = bridge.star_table(bridge.build_quantization_map(traces.untwisted_functional(sym, 2 * cap), cap=cap))
    num = algebra(Fraction(1, 3))
    small = min(cap, 8)
    verma = bridge.star_table(
        bridge.build_quantization_map(traces.verma_functional(num, Fraction(1, 5), 2 * small), cap=small)
    )
    B = random_sp2(random.Random(seed))
    moyal_cap = min(cap, 6)
    bad = bridge.check_even(bridge.moyal_table(B, moyal_cap))
    good = bridge.check_even(bridge.moyal_table([[0, 0], [0, 0]], moyal_cap))
    odd = bridge.check_even(verma)
    return [
        _report("untwisted table even", bridge.check_even(untw)),
        Check("verma table not even", not odd.passed and odd.witness is not None, repr(odd.witness)),
        Check("moyal random B not even", not bad.passed, repr(bad.witness), str(B)),
        _report("moyal B=0 even", good),
    ]


def pm_zeros(cap=12):
    checks = []
    for m in range(1, min(3, cap // 2) + 1):
        data = bridge.untwisted_gram(m)
        expected = {Fraction(r) for r in bridge.expected_pm_roots(m)}
        locus = data.singular_locus(2 * m)
        _, num, den = data.factored[2 * m]
        linear = all(p.degree("l") == 1 for p, _ in num) and not den
        checks.append(Check(f"m={m}: det zeros", locus == expected and linear, value=str(sorted(locus))))
        pm = bridge.pm_factor(m, data)
        prod = RatFunc.const(1)
        for j in range(m):
            prod = prod * (L - j) * (L + j + 2)
        ratio = simplify(pm.to_ratfunc() / prod)
        constant = not isinstance(ratio, RatFunc) and ratio != 0
        checks.append(Check(f"m={m}: P_m multiple of product", constant, value=str(pm)))
        checks.append(Check(f"m={m}: P_m(-1) != 0", pm(-1) != 0, value=str(pm(-1))))
    return checks


def weyl_cross_oracle(cap=12):
    cap = min(cap, 8)
    q = Fraction(1, 3)
    sign = bridge.calibrate_moyal_sign(q)
    T = WeylTrace(q, 2 * cap)
    table = bridge.star_table(bridge.build_quantization_map(T, bridge.WeylBackend(1), cap=cap))
    moyal = bridge.moyal_table(bridge.moyal_parameter(q, bridge.MOYAL_SIGN), cap)
    return [
        Check("calibrated sign is the recorded constant", sign == bridge.MOYAL_SIGN, value=str(sign)),
        _report(f"trace table = Moyal table to degree {cap}", bridge.compare_tables(table, moyal)),
    ]


def trace_space(cap=12):
    cap = min(cap, 12)
    sym = symbolic_algebra()
    T1 = traces.verma_functional(sym, cap=2)
    T2 = traces.dual_verma_functional(sym, cap=2)
    one, h = (0, 0, 0), (0, 1, 0)
    det = simplify(determinant([[T1.values[one], T1.values[h]], [T2.values[one], T2.values[h]]]))
    checks = [Check("T_l^w, T_(-l-2)^w independent", det != 0, value=render(det))]
    alg = algebra(-1)
    base = traces.verma_functional(alg, cap=cap)
    deriv = traces.derivative_functional(cap=cap)
    checks.append(_report("T_(-1)^w law", traces.verify_twisted_trace(base)))
    checks.append(_report("(T_(-1)^w)' law", traces.verify_twisted_trace(deriv)))
    det2 = simplify(determinant([[base.values[one], base.values[h]], [deriv.values.get(one, 0), deriv.values[h]]]))
    checks.append(Check("lambda=-1 basis independent", det2 != 0, value=render(det2)))
    probe = traces.trace_space_probe(Fraction(1, 3), Fraction(1, 5), min(cap, 8))
    checks.append(Check("probe dimension 2", probe.dimension == 2 and probe.spanned, value=str(probe.dimension)))
    return checks


def unitarity(cap=12):
    cap = min(cap, 12)
    split_neg = bridge.hermitian_report("split", Fraction(-1, 2), cap)
    split_pos = bridge.hermitian_report("split", Fraction(1, 2), cap)
    compact_neg = bridge.hermitian_report("compact", Fraction(-1, 2), cap)
    return [
        Check("split, l=-1/2 positive definite", split_neg.positive_definite, split_neg.first_failure,
              str(split_neg.positive_definite).lower()),
        Check("split, l=1/2 fails", split_pos.first_failure is not None, split_pos.first_failure,
              str(split_pos.positive_definite).lower()),
        Check("compact, l=-1/2 fails", compact_neg.first_failure is not None, compact_neg.first_failure,
              str(compact_neg.positive_definite).lower()),
    ]


def character_lab(cap=12):
    cap = min(cap, 12)
    alg = symbolic_algebra()
    keys = [k for k in keys_up_to(cap) if key_weight(k) == 0]
    agree, ode, special = [], [], []
    for k in keys:
        a = alg.key(k)
        rational = charlab.character_rational(a)
        agree.append(charlab.character_by_recursion(a) == rational)
        ode.append(bool(charlab.ode_check(a)))
        special.append(charlab.specialize_t1(a) == traces.verma_trace(a))
    fe = alg.f * alg.e
    try:
        charlab.character_rational(fe)
        surplus = True
    except Exception:
        surplus = False
    return [
        Check("recursion = rational", all(agree), value=str(len(keys))),
        Check("ODE identity", all(ode), value=str(len(keys))),
        Check("t=1 specialization = verma trace", all(special), value=str(len(keys))),
        Check("surplus terms", surplus),
    ]


CRITERIA = [
    (1, "Moyal ground truth", moyal_ground_truth),
    (2, "Verma trace values", verma_values),
    (3, "Untwisted trace", untwisted_values),
    (4, "Twisted-trace law", twisted_trace_law),
    (5, "Round trip", round_trip),
    (6, "Evenness criterion", evenness),
    (7, "P_m zeros", pm_zeros),
    (8, "Weyl cross-oracle", weyl_cross_oracle),
    (9, "Trace space", trace_space),
    (10, "Unitarity", unitarity),
    (11, "Character lab", character_lab),
]


def run_criterion(number, cap=12):
    _, title, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        checks = fn(cap)
    except Exception as exc:  # reported, not raised
        checks = [Check(title, False, error=f"{type(exc).__name__}: {exc}")]
    return CriterionResult(number, title, checks, int((time.perf_counter() - start) * 1000))

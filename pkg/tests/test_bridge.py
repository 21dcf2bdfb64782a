import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import same, l
from shortstar import bridge
from shortstar.cones import SL2_CONE, GradedElement
from shortstar.errors import DegenerateTrace
from shortstar.scalars import DensePolynomial
from shortstar.sl2quant import algebra, keys_up_to, lift, symbolic_algebra
from shortstar.traces import untwisted_functional, verma_functional
from shortstar.weyl import WeylElement, WeylTrace, in_sp


@pytest.fixture(scope="module")
def untwisted_phi():
    alg = symbolic_algebra()
    return bridge.build_quantization_map(untwisted_functional(alg, 16), cap=8)


@pytest.fixture(scope="module")
def verma_phi():
    alg = algebra(Fraction(1, 3))
    return bridge.build_quantization_map(verma_functional(alg, Fraction(1, 5), 12), cap=6)


def test_weyl_phi_xy():
    phi = bridge.build_quantization_map(WeylTrace(-1, 4), bridge.WeylBackend(1), cap=2)
    assert phi.images[(1, 1)] == WeylElement(1, {(1, 1): 1, (0, 0): Fraction(1, 2)})
    assert phi.images[(1, 0)] == WeylElement.generator("X")


def test_untwisted_low_degree_images(untwisted_phi):
    alg = untwisted_phi.backend.alg
    assert untwisted_phi.images[(0, 0, 1)] == alg.h
    table = bridge.star_table(untwisted_phi, 4)
    x, y, z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert table.component(x, y, 1) == GradedElement.monomial(SL2_CONE, z).scale(Fraction(1, 2))


def test_untwisted_table_properties(untwisted_phi):
    table = bridge.star_table(untwisted_phi)
    assert bridge.check_short(table)
    assert bridge.check_even(table)
    assert bridge.check_bracket(table)
    assert untwisted_phi.symbols_ok() and untwisted_phi.s_equivariant()


def test_untwisted_recovery(untwisted_phi):
    assert bridge.ct_recovery(untwisted_phi)
    data = bridge.gram(untwisted_phi)
    assert data.orthogonal
    assert bridge.recover_twist(untwisted_phi, data)


def test_verma_short_but_not_even(verma_phi):
    table = bridge.star_table(verma_phi)
    assert bridge.check_short(table)
    odd = bridge.check_even(table)
    assert not odd.passed and odd.witness is not None
    assert bridge.check_bracket(table)
    assert bridge.ct_recovery(verma_phi)
    assert bridge.recover_twist(verma_phi)


def noisy_lift(alg, seed):
    rng = random.Random(seed)

    def make(cone_key):
        base = lift(alg, cone_key)
        d = SL2_CONE.key_degree(cone_key)
        for k in keys_up_to(d - 2):
            base = base + alg.element({k: Fraction(rng.randint(-5, 5), rng.randint(1, 4))})
        return base
    return make


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_map_independent_of_lower_order_lift_noise(verma_phi, seed):
    alg = verma_phi.backend.alg
    other = bridge.build_quantization_map(verma_phi.trace, cap=6, lift=noisy_lift(alg, seed))
    assert other.images == verma_phi.images


def test_unorthogonalized_lifts_are_not_short(verma_phi):
    ref = bridge.reference_quantization_map(verma_phi.trace, cap=6)
    report = bridge.check_short(bridge.star_table(ref))
    assert not report.passed


def test_ct_recovery_detects_wrong_trace(verma_phi):
    alg = verma_phi.backend.alg
    wrong = bridge.QuantizationMap(verma_phi.backend, verma_functional(alg, Fraction(1, 7), 12), 6, verma_phi.images)
    assert not bridge.ct_recovery(wrong)


def test_degenerate_trace_at_pm_zero():
    with pytest.raises(DegenerateTrace):
        bridge.build_quantization_map(untwisted_functional(algebra(0), 8), cap=4)


sp_entries = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=20, deadline=None)
@given(sp_entries, sp_entries, sp_entries)
def test_moyal_tables_are_short(a, b, c):
    B = [[a, b], [c, -a]]
    assert in_sp(B)
    assert bridge.check_short(bridge.moyal_table(B, 4))
    assert bridge.check_bracket(bridge.moyal_table(B, 4))


def test_moyal_evenness_only_at_zero():
    assert bridge.check_even(bridge.moyal_table([[0, 0], [0, 0]], 4))
    assert not bridge.check_even(bridge.moyal_table([[1, 0], [0, -1]], 4))


def test_weyl_cross_oracle_and_sign():
    q = Fraction(1, 3)
    assert bridge.calibrate_moyal_sign(q) == bridge.MOYAL_SIGN
    phi = bridge.build_quantization_map(WeylTrace(q, 10), bridge.WeylBackend(1), cap=5)
    table = bridge.star_table(phi)
    assert bridge.compare_tables(table, bridge.moyal_table(bridge.moyal_parameter(q), 5))
    assert not bridge.compare_tables(table, bridge.moyal_table(bridge.moyal_parameter(q, -bridge.MOYAL_SIGN), 5))


def test_weyl_rank_two_cross_oracle():
    q = (Fraction(1, 3), Fraction(2, 5))
    T = WeylTrace(q, 6, n=2)
    table = bridge.star_table(bridge.build_quantization_map(T, bridge.WeylBackend(2), cap=3))
    B1, B2 = bridge.moyal_parameter(q[0]), bridge.moyal_parameter(q[1])
    B = [[B1[0][0], 0, B1[0][1], 0], [0, B2[0][0], 0, B2[0][1]],
         [B1[1][0], 0, B1[1][1], 0], [0, B2[1][0], 0, B2[1][1]]]
    assert bridge.compare_tables(table, bridge.moyal_table(B, 3, n=2))


def test_p1_closed_form():
    assert bridge.pm_factor(1) == DensePolynomial("l", [0, Fraction(-8, 3), Fraction(-4, 3)])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_pm_roots(m):
    data = bridge.untwisted_gram(m)
    pm = bridge.pm_factor(m, data)
    assert data.singular_locus(2 * m) == set(map(Fraction, bridge.expected_pm_roots(m)))
    assert pm.degree == 2 * m
    for r in bridge.expected_pm_roots(m):
        assert pm(r) == 0
    assert pm(bridge.LAMBDA_REF) == 1


def test_gram_degree_two_symbolic(untwisted_phi):
    data = bridge.gram(untwisted_phi, cap=2, check_orthogonal=False)
    assert same(data.determinants[0], 1)
    assert data.determinants[2] != 0


# The positivity statements below record what the exact forms actually give.
# Under the split form every off-weight-zero vector is isotropic, so no
# positive-definite split form exists; the compact form is positive at -1/2.


def test_split_form_is_isotropic():
    report = bridge.hermitian_report("split", Fraction(-1, 2), 4)
    deg2 = report.degrees[1]
    assert deg2.hermitian and not deg2.positive_definite
    assert report.first_failure == 2


def test_compact_form_positive_at_minus_half():
    report = bridge.hermitian_report("compact", Fraction(-1, 2), 6)
    assert report.positive_definite
    assert report.degrees[1].minors == [Fraction(1, 8), Fraction(1, 32), Fraction(1, 256)]


def test_split_form_fails_at_half():
    assert bridge.hermitian_report("split", Fraction(1, 2), 4).first_failure == 2


@pytest.mark.parametrize("lam", [Fraction(-1, 3), Fraction(-3, 2), Fraction(1, 2), Fraction(-5, 2), Fraction(1, 3)])
def test_compact_positivity_tracks_sign_of_chi(lam):
    chi = lam * (lam + 2) / 2
    assert bridge.hermitian_report("compact", lam, 8).positive_definite == (chi < 0)
    assert not bridge.hermitian_report("split", lam, 4).positive_definite

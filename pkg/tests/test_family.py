import math

import mpmath as mp
import numpy as np
import pytest

from jordan_strata.family import (
    HALF_PI,
    PI,
    SINC_TAYLOR_CUTOFF,
    DomainError,
    FamilyKind,
    FamilySpec,
    Interval01,
    coeff_A,
    coeff_B,
    dphi_dp,
    dphi_dq,
    dphi_dx,
    dphiA_dq,
    dphiA_dx,
    dphiB_dq,
    dphiB_dx,
    endpoint_limits,
    f_k,
    gA,
    gB,
    h_k,
    k1,
    k2,
    k3,
    phi,
    phi_limit_at_zero,
    sinc,
    sinc_derivative,
)

from conftest import mp_coeff_A, mp_coeff_B, mp_phi, mp_sinc

Q_A1 = 2 / (PI - 2)
Q_B1 = PI**2 / 4 - 1

# 50-digit oracle values (mpmath), frozen
SINC_PI_4 = 0.90031631615710606955519919100674058
PHI_TWO_PARAM = 0.10661691111003506455653196835270799
DPHI_DQ_TWO_PARAM = -1.0183795455542598433817522739632711
DPHIA_DQ_1 = -0.12593799012732106131215962861109059
DPHIA_DX2_Q19_X07 = -0.012708524090355439610610232075030858
DPHIB_DX_Q2_X05 = -0.033530892903268612122900364900371494
GA_PI_4 = 1.8660506315749379319137318898583178


# ---------------------------------------------------------------- sinc

def test_sinc_at_zero_and_endpoint():
    assert sinc(0.0) == 1.0
    assert sinc(HALF_PI) == pytest.approx(2 / PI, abs=1e-16)


def test_sinc_quarter_pi_oracle():
    assert sinc(PI / 4) == pytest.approx(SINC_PI_4, rel=1e-15)


def test_sinc_continuous_across_taylor_switch():
    for x in (SINC_TAYLOR_CUTOFF * (1 - 1e-9), SINC_TAYLOR_CUTOFF, SINC_TAYLOR_CUTOFF * (1 + 1e-9)):
        assert sinc(x) == pytest.approx(float(mp_sinc(x)), rel=2e-16)


def test_sinc_relative_accuracy_sampled(rng):
    xs = np.concatenate([10 ** rng.uniform(-12, 0, 200), rng.uniform(0, HALF_PI, 200)])
    got = sinc(xs)
    for x, g in zip(xs, got):
        assert g == pytest.approx(float(mp_sinc(x)), rel=4e-16)


def test_sinc_vectorized_shape():
    xs = np.linspace(0, HALF_PI, 7)
    assert np.asarray(sinc(xs)).shape == (7,)
    assert isinstance(sinc(0.3), float)


# ---------------------------------------------------------------- coefficients

@pytest.mark.parametrize("fn,q,ref", [
    (coeff_A, 1, 0.11566),
    (coeff_A, 2, 0.036818),
    (coeff_B, 2, 0.032251),
    (coeff_B, 4, 0.0016338),
])
def test_coefficients_reference_digits(fn, q, ref):
    assert fn(q) - ref == pytest.approx(0, abs=1e-5)
    assert 0 <= fn(q) - ref < 10 ** (-len(str(ref).split(".")[1]))


def test_coefficients_match_oracle():
    for q in (0.3, 1, 1.7, 2, 5.5):
        assert coeff_A(q) == pytest.approx(float(mp_coeff_A(q)), rel=1e-14)
        assert coeff_B(q) == pytest.approx(float(mp_coeff_B(q)), rel=1e-14)


def test_coefficients_positive_decreasing():
    qs = np.linspace(0.01, 10, 1000)
    for fn in (coeff_A, coeff_B):
        v = fn(qs)
        assert np.all(v > 0)
        assert np.all(np.diff(v) < 0)


# ---------------------------------------------------------------- FamilySpec

def test_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec.fixed_q(5, 0.1)
    with pytest.raises(ValueError):
        FamilySpec(FamilyKind.TWO_PARAM, q=1.0)
    with pytest.raises(ValueError):
        FamilySpec(FamilyKind.A_TYPE, q=2.0, p=0.1)
    with pytest.raises(ValueError):
        FamilySpec.a_type(0)
    with pytest.raises(ValueError):
        FamilySpec.two_param(-0.1, 1)


def test_spec_coefficient():
    assert FamilySpec.a_type(2).coefficient == coeff_A(2)
    assert FamilySpec.b_type(3).coefficient == coeff_B(3)
    assert FamilySpec.fixed_q(2, 0.03).coefficient == 0.03


def test_interval01_checks():
    Interval01(0.1, 0.0)
    with pytest.raises(ValueError):
        Interval01(0.0, 0.0, lo=1.0, hi=0.5)
    with pytest.raises(ValueError):
        Interval01(float("nan"), 0.0)


# ---------------------------------------------------------------- phi

def test_phi_a_type_spot_values():
    assert phi(FamilySpec.a_type(Q_A1), PI / 4) == pytest.approx(0.0082048, abs=1e-5)
    assert phi(FamilySpec.a_type(2), PI / 4) == pytest.approx(-0.0088386, abs=1e-5)


def test_phi_two_param_oracle():
    assert phi(FamilySpec.two_param(0.1, 1), PI / 4) == pytest.approx(PHI_TWO_PARAM, rel=1e-14)


def test_phi_kinds_agree_where_parameters_coincide(rng):
    for _ in range(50):
        q = rng.uniform(0.2, 5)
        x = rng.uniform(0.01, HALF_PI - 0.01)
        a = phi(FamilySpec.a_type(q), x)
        b = phi(FamilySpec.b_type(q), x)
        assert a == pytest.approx(phi(FamilySpec.two_param(coeff_A(q), q), x), abs=1e-14)
        assert b == pytest.approx(phi(FamilySpec.two_param(coeff_B(q), q), x), abs=1e-14)
    for q in (1, 2, 3, 4):
        spec = FamilySpec.fixed_q(q, 0.01)
        assert phi(spec, 0.7) == phi(FamilySpec.two_param(0.01, q), 0.7)


def test_phi_matches_oracle_across_kinds(rng):
    for _ in range(100):
        q = float(rng.uniform(0.2, 5))
        x = float(rng.uniform(1e-6, HALF_PI - 1e-6))
        for kind, spec in (("a_type", FamilySpec.a_type(q)), ("b_type", FamilySpec.b_type(q))):
            ref = float(mp_phi(kind, q, x))
            assert phi(spec, x) == pytest.approx(ref, abs=1e-15)


def test_phi_vanishes_at_half_pi():
    x = HALF_PI - 1e-12
    for spec in (FamilySpec.a_type(1.9), FamilySpec.b_type(1.6), FamilySpec.fixed_q(3, 0.01),
                 FamilySpec.two_param(0.3, 0.7)):
        assert abs(phi(spec, x)) < 1e-10


@pytest.mark.parametrize("x", [0.0, HALF_PI, -0.1, 2.0])
def test_phi_domain(x):
    with pytest.raises(DomainError):
        phi(FamilySpec.a_type(2), x)


def test_phi_limit_at_zero():
    for spec in (FamilySpec.b_type(1.6), FamilySpec.fixed_q(2, 0.03), FamilySpec.a_type(1.9)):
        assert phi(spec, 1e-9) == pytest.approx(phi_limit_at_zero(spec), abs=1e-9)


# ---------------------------------------------------------------- derivatives

def test_dphi_dp_closed_form():
    assert dphi_dp(FamilySpec.fixed_q(1, 0.1), PI / 4) == pytest.approx(-PI / 2, rel=1e-15)
    assert abs(dphi_dp(FamilySpec.fixed_q(3, 0.1), HALF_PI - 1e-12)) < 1e-9


def test_dphi_dq_oracle():
    spec = FamilySpec.two_param(0.1, 2)
    assert dphi_dq(spec, PI / 4) == pytest.approx(DPHI_DQ_TWO_PARAM, rel=1e-13)


def test_dphi_dq_rejects_one_parameter_kinds():
    with pytest.raises(ValueError):
        dphi_dq(FamilySpec.a_type(2), 0.5)


def test_partial_derivatives_negative(rng):
    xs = rng.uniform(0.01, HALF_PI - 0.01, 200)
    for q in (0.5, 1, 2.5):
        spec = FamilySpec.two_param(0.2, q)
        assert np.all(dphi_dp(spec, xs) < 0)
        assert np.all(dphi_dq(spec, xs) < 0)


def test_dphiA_dq_oracle_and_limit():
    assert dphiA_dq(1, PI / 4) == pytest.approx(DPHIA_DQ_1, rel=1e-14)
    assert abs(dphiA_dq(1.7, HALF_PI - 1e-12)) < 1e-11


def test_dphiA_dq_negative_dphiB_dq_positive(rng):
    for _ in range(200):
        q = rng.uniform(0.1, 6)
        x = rng.uniform(1e-3, HALF_PI - 1e-3)
        assert dphiA_dq(q, x) < 0
        assert dphiB_dq(q, x) > 0
    assert dphiB_dq(1, PI / 4) > 0


def test_dphiA_dx_order2_oracle():
    assert dphiA_dx(1.9, 0.7, 2) == pytest.approx(DPHIA_DX2_Q19_X07, rel=1e-12)


def test_dphiB_dx_oracle():
    assert dphiB_dx(2, 0.5) == pytest.approx(DPHIB_DX_Q2_X05, rel=1e-12)


def test_dphiA_dx_limit_at_half_pi():
    for q in (1.8, 1.9, 2.5):
        lim = endpoint_limits(q).dphiA_dx_at_pi2
        assert lim == pytest.approx(2 * (q * (PI - 2) - 2) / PI**2)
        assert dphiA_dx(q, HALF_PI - 1e-9) == pytest.approx(lim, abs=1e-7)


def test_dphiB_dx_vanishes_at_half_pi_for_qB1():
    assert abs(dphiB_dx(Q_B1, HALF_PI - 1e-8)) < 1e-14


def test_dphiA_dx_order4_positive_on_crossing_range(rng):
    xs = np.linspace(1e-3, HALF_PI - 1e-3, 500)
    for q in rng.uniform(Q_A1, 2, 20):
        assert np.all(dphiA_dx(q, xs, 4) > 0)


def test_dphiA_dx_rejects_bad_order():
    with pytest.raises(ValueError):
        dphiA_dx(1.9, 0.5, 5)
    with pytest.raises(ValueError):
        h_k(0.5, 0)
    with pytest.raises(ValueError):
        f_k(1.9, 0)


def test_decomposition_pieces():
    # d^k phi_A / dx^k = (x^(q+1) f_k(q) + h_k(x)) / x^(k+1)
    q, x = 1.9, 0.8
    for k in (1, 2, 3, 4):
        lhs = dphiA_dx(q, x, k)
        rhs = (x ** (q + 1) * f_k(q, k) + h_k(x, k)) / x ** (k + 1)
        assert lhs == pytest.approx(rhs, rel=1e-12)
    assert f_k(q, 1) == pytest.approx(PI ** (-q - 1) * 2**q * q * (PI - 2))


def _central(f, t, h):
    return (f(t + h) - f(t - h)) / (2 * h)


def _central4(f, t, h):
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h)


def test_finite_differences(rng):
    # closed forms vs central differences, relative error <= 1e-6
    h = 1e-5
    for _ in range(40):
        x = float(rng.uniform(0.1, HALF_PI - 0.1))
        q = float(rng.uniform(0.5, 4))
        p = float(rng.uniform(0.01, 0.3))
        spec = FamilySpec.two_param(p, q)

        def rel(a, b):
            return abs(a - b) / max(abs(b), 1e-300)

        fd = _central(lambda t: phi(FamilySpec.two_param(t, q), x), p, h)
        assert rel(dphi_dp(spec, x), fd) < 1e-6
        fd = _central(lambda t: phi(FamilySpec.two_param(p, t), x), q, h)
        assert rel(dphi_dq(spec, x), fd) < 1e-6
        fd = _central(lambda t: phi(FamilySpec.a_type(t), x), q, h)
        assert rel(dphiA_dq(q, x), fd) < 1e-6
        fd = _central(lambda t: phi(FamilySpec.b_type(t), x), q, h)
        assert rel(dphiB_dq(q, x), fd) < 1e-6
        fd = _central(lambda t: phi(FamilySpec.b_type(q), t), x, h)
        assert rel(dphiB_dx(q, x), fd) < 1e-6
        fd = _central(lambda t: phi(spec, t), x, h)
        assert rel(dphi_dx(spec, x), fd) < 1e-6
        # higher orders: difference the next-lower closed form
        fd = _central(lambda t: phi(FamilySpec.a_type(q), t), x, h)
        assert rel(dphiA_dx(q, x, 1), fd) < 1e-6
        for k in (2, 3, 4):
            fd = _central4(lambda t: dphiA_dx(q, t, k - 1), x, 1e-3)
            assert rel(dphiA_dx(q, x, k), fd) < 1e-6


def test_dphiA_dx_order2_fourth_order_difference():
    # 4th-order stencil at step 1e-4, in 50-digit arithmetic to avoid cancellation
    h, x = mp.mpf("1e-4"), mp.mpf("0.7")
    f = lambda t: mp_phi("a_type", "1.9", t)
    fd2 = (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)
    assert dphiA_dx(1.9, 0.7, 2) == pytest.approx(float(fd2), rel=1e-6)


def test_sinc_derivative_series_matches_direct():
    # both branches agree across the series cutoff
    for k in (1, 2, 3, 4):
        for x in (0.2, 0.2499, 0.2501, 0.3):
            ref = mp.diff(mp_sinc, x, k)
            assert sinc_derivative(x, k) == pytest.approx(float(ref), rel=1e-9)


# ---------------------------------------------------------------- stratification

def test_stratification_two_param(rng):
    for _ in range(1000):
        x = float(rng.uniform(1e-4, HALF_PI - 1e-4))
        q = float(rng.uniform(0.1, 6))
        p1, p2 = sorted(rng.uniform(0.001, 1, 2))
        assert phi(FamilySpec.two_param(p1, q), x) > phi(FamilySpec.two_param(p2, q), x)
        p = float(rng.uniform(0.01, 0.5))
        qa, qb = sorted(rng.uniform(0.1, 6, 2))
        assert phi(FamilySpec.two_param(p, qa), x) > phi(FamilySpec.two_param(p, qb), x)


def test_stratification_one_param(rng):
    for _ in range(1000):
        x = float(rng.uniform(1e-3, HALF_PI - 1e-3))
        q1, q2 = sorted(rng.uniform(0.1, 6, 2))
        if q2 - q1 < 1e-6:
            continue
        assert phi(FamilySpec.a_type(q1), x) > phi(FamilySpec.a_type(q2), x)
        assert phi(FamilySpec.b_type(q1), x) < phi(FamilySpec.b_type(q2), x)


# ---------------------------------------------------------------- gA, gB

def test_gA_root_property(rng):
    for x in rng.uniform(1e-3, HALF_PI - 1e-3, 100):
        assert abs(phi(FamilySpec.a_type(gA(x)), x)) < 1e-12


def test_gB_root_property(rng):
    for x in rng.uniform(1e-3, HALF_PI - 1e-3, 100):
        assert abs(dphiB_dx(gB(x), x)) < 1e-12


def test_gA_quarter_pi_oracle():
    ref = mp.findroot(lambda q: mp_phi("a_type", q, mp.pi / 4), 1.9)
    assert float(ref) == pytest.approx(GA_PI_4, rel=1e-15)
    assert gA(PI / 4) == pytest.approx(GA_PI_4, abs=1e-12)


def test_g_monotone_decreasing():
    xs = np.linspace(1e-3, HALF_PI - 1e-3, 1000)
    assert np.all(np.diff(gA(xs)) < 0)
    assert np.all(np.diff(gB(xs)) < 0)


def test_g_limits():
    # gA(0+) = 2 with a 1/ln(1/x) approach: (2 - gA(x)) ln(pi/2x) is constant
    assert gA(1e-300) == pytest.approx(2, abs=2e-4)
    tails = [(2 - gA(x)) * math.log(PI / (2 * x)) for x in (1e-9, 1e-100, 1e-300)]
    assert max(tails) - min(tails) < 1e-9
    assert gA(HALF_PI - 1e-7) == pytest.approx(Q_A1, abs=1e-6)
    assert gB(HALF_PI - 1e-7) == pytest.approx(Q_B1, abs=1e-6)


# ---------------------------------------------------------------- endpoint limits

def test_h4_positive():
    xs = np.linspace(1e-3, HALF_PI, 1000)
    assert np.all(h_k(xs, 4) > 0)
    # h4'(x) = x^4 cos x
    x = 0.9
    fd = _central(lambda t: h_k(t, 4), x, 1e-5)
    assert fd == pytest.approx(x**4 * math.cos(x), rel=1e-8)


def test_k_values_at_qA1():
    el = endpoint_limits(Q_A1)
    assert el.k3 == pytest.approx(0.19968, abs=1e-5)
    assert el.k2 == pytest.approx(0.073414, abs=1e-5)
    assert el.k1 == pytest.approx(-0.0053418, abs=1e-5)
    assert (el.k1, el.k2, el.k3) == (k1(Q_A1), k2(Q_A1), k3(Q_A1))


def test_phiB_at_zero_qB1():
    assert endpoint_limits(Q_B1).phiB_at_0 == pytest.approx(-0.070461, abs=1e-5)


def test_k1_is_first_derivative_at_quarter_pi():
    for q in (1.6, 1.9, 2.3):
        assert k1(q) == pytest.approx(dphiA_dx(q, PI / 4, 1), rel=1e-12)


def test_k2_k3_are_limits_at_half_pi():
    x = HALF_PI - 1e-7
    for q in (1.6, 1.9, 2.3):
        assert dphiA_dx(q, x, 2) == pytest.approx(k2(q), abs=1e-6)
        assert dphiA_dx(q, x, 3) == pytest.approx(k3(q), abs=1e-6)


def test_phiB_quadratic_coefficient():
    for q in (1.3, 1.6, 2.0):
        c = endpoint_limits(q).phiB_pi2_coeff
        h = 1e-3
        # phi_B(pi/2 - h) ~ phiB_x * (-h) + c h^2, linear term from dphiB_dx limit
        lin = dphiB_dx(q, HALF_PI - 1e-9)
        approx = -lin * h + c * h * h
        assert phi(FamilySpec.b_type(q), HALF_PI - h) == pytest.approx(approx, abs=1e-8)


def test_extrapolated_limits_at_zero():
    for q in (1.3, 1.6, 2.0):
        lim = endpoint_limits(q).phiB_at_0
        assert phi(FamilySpec.b_type(q), 1e-8) == pytest.approx(lim, abs=1e-6)


def test_endpoint_limits_rejects_nonpositive():
    with pytest.raises(ValueError):
        endpoint_limits(0)

"""Density catalog: hand-computed values, finite-difference oracles, Hessian identities."""

import math

import numpy as np
import pytest

from pqlab.integrand import (
    Anisotropic,
    Ball,
    Coefficient,
    DoublePhase,
    Exponential,
    LogPxLaplacian,
    MultiPhase,
    PLaplacian,
    ProfileDomainError,
    PxLaplacian,
    SaturationError,
    VeryDegenerate,
    eval_f,
    eval_grad_xi,
    exp_profile,
    hessian_quadratic_form,
    power_profile,
    radial_bounds,
)

RNG = np.random.default_rng(20240811)


def catalog_families():
    one = Coefficient.constant(1.0)
    a_lin = Coefficient(lambda x, y: 0.5 + 0.1 * x, lipschitz=0.1, source="0.5+0.1*x")
    a_quad = Coefficient(lambda x, y: x * x + y * y, lipschitz=3.0, source="x^2+y^2")
    p_var = Coefficient(lambda x, y: 2.0 + 0.25 * (x + 1) / 2, lipschitz=0.125, source="2+0.25*(x+1)/2")
    return [
        PLaplacian(2.0),
        PLaplacian(3.5),
        Exponential(a_lin, 2.0),
        Exponential(Coefficient.constant(0.3), 3.0),
        PxLaplacian(p_var),
        LogPxLaplacian(p_var),
        DoublePhase(2.0, 3.0, a_quad),
        MultiPhase(2.0, 3.0, a_quad, 0.7),
        VeryDegenerate(2.0),
        VeryDegenerate(3.0),
        Anisotropic(2.5, aij=(Coefficient.constant(1.0), Coefficient.constant(0.1), a_lin)),
        Anisotropic(3.0, base_p=2.5),
    ]


def fd_grad(family, x, xi, step):
    g = np.zeros(2)
    for i in range(2):
        e = np.zeros(2)
        e[i] = step
        g[i] = (eval_f(family, x, xi + e) - eval_f(family, x, xi - e)) / (2 * step)
    return g


# --- hand-evaluated examples -------------------------------------------------


def test_eval_f_plaplacian_quadratic():
    assert eval_f(PLaplacian(2), (0.3, 0.4), (3.0, 4.0)) == pytest.approx(25.0)


def test_eval_f_exponential_at_zero():
    fam = Exponential(Coefficient.constant(1.0), 2.0)
    assert eval_f(fam, (0.1, 0.2), (0.0, 0.0)) == pytest.approx(1.0)


def test_eval_f_double_phase_hand_value():
    # |xi|^p + a |xi|^q at xi = (1, 0), p=2, q=4, a = 0.5: 1 + 0.5 = 1.5
    fam = DoublePhase(2.0, 4.0, Coefficient.constant(0.5))
    assert eval_f(fam, (0.0, 0.0), (1.0, 0.0)) == pytest.approx(1.5)


def test_eval_f_exponential_saturates_not_inf():
    fam = Exponential(Coefficient.constant(1.0), 2.0)
    with pytest.raises(SaturationError):
        eval_f(fam, (0.0, 0.0), (40.0, 0.0))


def test_grad_plaplacian_p2():
    np.testing.assert_allclose(eval_grad_xi(PLaplacian(2), (0.0, 0.0), (3.0, 4.0)), [6.0, 8.0])


def test_grad_zero_at_origin_for_radial_families():
    for fam in catalog_families():
        if not fam.radial:
            continue
        g = eval_grad_xi(fam, (0.4, 0.6), (0.0, 0.0))
        np.testing.assert_allclose(g, [0.0, 0.0], err_msg=fam.describe())


def test_grad_exponential_hand_value():
    # d/dxi exp(|xi|^2) at (1, 0) is (2e, 0)
    fam = Exponential(Coefficient.constant(1.0), 2.0)
    np.testing.assert_allclose(
        eval_grad_xi(fam, (0.0, 0.0), (1.0, 0.0)), [2 * math.e, 0.0], rtol=1e-12
    )


def test_gradient_matches_finite_differences_on_catalog():
    # analytic gradient vs central differences, 100 random probes per family
    for fam in catalog_families():
        for _ in range(100):
            x = RNG.uniform(0.1, 0.9, size=2)
            r = RNG.uniform(0.1, 5.0)
            th = RNG.uniform(0, 2 * math.pi)
            xi = np.array([r * math.cos(th), r * math.sin(th)])
            if fam.kind == "very_degenerate" and abs(r - 1.0) < 0.05:
                continue  # kink of (t-1)_+ breaks the FD oracle only at t = 1
            step = 1e-5 * max(1.0, r)
            ana = eval_grad_xi(fam, x, xi)
            num = fd_grad(fam, x, xi, step)
            scale = max(1.0, float(np.linalg.norm(ana)))
            np.testing.assert_allclose(ana, num, atol=1e-6 * scale, err_msg=fam.describe())


# --- Hessian quadratic form --------------------------------------------------


def test_plaplacian_identity_p2_constant():
    for _ in range(10):
        xi = RNG.normal(size=2)
        if np.linalg.norm(xi) < 1e-3:
            continue
        assert hessian_quadratic_form(PLaplacian(2), (0, 0), xi, (1.0, 0.0)) == pytest.approx(2.0)


@pytest.mark.parametrize("p", [2.0, 2.5, 3.0, 4.0])
def test_plaplacian_aligned_and_orthogonal(p):
    xi = np.array([1.0, 0.0])
    par = hessian_quadratic_form(PLaplacian(p), (0, 0), xi, (1.0, 0.0))
    perp = hessian_quadratic_form(PLaplacian(p), (0, 0), xi, (0.0, 1.0))
    assert par == pytest.approx(p * (p - 1), rel=1e-12)
    assert perp == pytest.approx(p, rel=1e-12)


@pytest.mark.parametrize("p", [2.0, 2.5, 3.0, 4.5])
def test_plaplacian_identity_general(p):
    # QF == p [ |xi|^2 |lam|^2 + (p-2) (xi.lam)^2 ] |xi|^(p-4)
    fam = PLaplacian(p)
    for _ in range(50):
        xi = RNG.normal(size=2)
        lam = RNG.normal(size=2)
        t = np.linalg.norm(xi)
        if t < 1e-3:
            continue
        expected = p * (t**2 * lam @ lam + (p - 2) * (xi @ lam) ** 2) * t ** (p - 4)
        got = hessian_quadratic_form(fam, (0, 0), xi, lam)
        assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_hessian_sandwich_on_radial_catalog():
    # radial_bounds.lower |lam|^2 <= QF <= radial_bounds.upper |lam|^2
    for fam in catalog_families():
        if not fam.radial:
            continue
        prof = fam.profile()
        for _ in range(60):
            x = RNG.uniform(0.1, 0.9, size=2)
            t = RNG.uniform(0.05, 4.0)
            th = RNG.uniform(0, 2 * math.pi)
            xi = t * np.array([math.cos(th), math.sin(th)])
            lam = RNG.normal(size=2)
            lo, up, _ = radial_bounds(prof, x, t)
            qf = hessian_quadratic_form(fam, x, xi, lam)
            lam2 = float(lam @ lam)
            slack = 1e-12 * max(1.0, abs(up) * lam2)
            assert lo * lam2 - slack <= qf <= up * lam2 + slack, fam.describe()


def test_convexity_spot_check():
    for fam in catalog_families():
        for _ in range(40):
            x = RNG.uniform(0.1, 0.9, size=2)
            xi = RNG.normal(size=2) * RNG.uniform(0.1, 3.0)
            lam = RNG.normal(size=2)
            if np.linalg.norm(xi) < 1e-6:
                xi = np.array([0.5, 0.1])
            qf = hessian_quadratic_form(fam, x, xi, lam)
            assert qf >= -1e-12, fam.describe()


# --- radial bounds and profile cases -----------------------------------------


def test_radial_bounds_power_p_ge_2():
    prof = power_profile(3.0)
    lo, up, case = radial_bounds(prof, (0.2, 0.3), 2.0)
    assert case == "ii"
    assert lo == pytest.approx(3 * 2.0)        # p t^(p-2)
    assert up == pytest.approx(6 * 2.0)        # p (p-1) t^(p-2)


def test_radial_bounds_power_p_below_2_is_case_iii():
    prof = power_profile(1.5)
    lo, up, case = radial_bounds(prof, (0.0, 0.0), 1.0)
    assert case == "iii"
    assert lo == pytest.approx(1.5 * 0.5)      # g_tt = p (p-1) t^(p-2)
    assert up == pytest.approx(1.5)            # g_t / t


def test_radial_bounds_exponential():
    prof = exp_profile()
    t = 1.3
    lo, up, case = radial_bounds(prof, (0.4, 0.5), t)
    assert case == "ii"
    assert lo == pytest.approx(2 * math.exp(t * t), rel=1e-12)
    assert up == pytest.approx((4 * t * t + 2) * math.exp(t * t), rel=1e-12)


def test_radial_bounds_requires_positive_t():
    with pytest.raises(ProfileDomainError):
        radial_bounds(power_profile(3.0), (0, 0), 0.0)


def test_multi_phase_third_exponent_is_derived():
    fam = MultiPhase(2.0, 3.0, Coefficient.constant(0.0), 1.0)
    assert fam.r == pytest.approx(4.0)
    # with a == 0 and b = 1: f = t^2 + t^4
    assert eval_f(fam, (0, 0), (2.0, 0.0)) == pytest.approx(4.0 + 16.0)


def test_family_parameter_validation():
    with pytest.raises(ValueError):
        PLaplacian(1.5)
    with pytest.raises(ValueError):
        Exponential(Coefficient.constant(1.0), 1.0)
    with pytest.raises(ValueError):
        DoublePhase(3.0, 2.0, Coefficient.constant(0.0))
    with pytest.raises(ValueError):
        MultiPhase(2.0, 3.0, Coefficient.constant(0.0), -1.0)
    with pytest.raises(ValueError):
        Anisotropic(1.0, base_p=2.0)


def test_very_degenerate_zero_inside_unit_ball():
    fam = VeryDegenerate(2.0)
    assert eval_f(fam, (0, 0), (0.5, 0.5)) == 0.0
    np.testing.assert_array_equal(eval_grad_xi(fam, (0, 0), (0.5, 0.5)), [0.0, 0.0])
    assert hessian_quadratic_form(fam, (0, 0), (0.5, 0.5), (1.0, 1.0)) == 0.0


def test_coefficient_range_on_ball():
    a = Coefficient(lambda x, y: x + y, lipschitz=math.sqrt(2), source="x+y")
    lo, hi = a.range_on_ball(Ball(0.0, 0.0, 1.0))
    assert lo == pytest.approx(-math.sqrt(2), abs=5e-3)
    assert hi == pytest.approx(math.sqrt(2), abs=5e-3)

import json
import math
import random

import pytest
from scipy import optimize

from ntate.laurent import LaurentPoly, lp_parse
from ntate.polylog import QuadratureError, QuadratureSpec, gamma_convolve
from ntate.radiation import (
    GaussianSpec,
    GaussianTerm,
    PhysConstants,
    leading_digits,
    pairing_eval,
    planck_core_integral,
    planck_spectral,
    planck_table,
    stefan_boltzmann,
    stefan_boltzmann_sigma,
)

SI = PhysConstants.from_config()
NATURAL = SI.with_units("natural")


def test_constants_from_packaged_config():
    assert SI.h == 6.62607015e-34 and SI.k_B == 1.380649e-23 and SI.c_light == 2.99792458e8
    assert SI.kappa == pytest.approx(SI.k_B / SI.h, rel=1e-15)
    assert leading_digits(SI.kappa, 5) == 20836
    assert NATURAL.c_eff == 1.0


def test_constants_from_user_config(tmp_path):
    path = tmp_path / "consts.json"
    path.write_text(json.dumps({"h": 2.0, "k_B": 3.0, "c_light": 5.0}))
    k = PhysConstants.from_config(path, units="natural")
    assert (k.kappa, k.c_eff) == (1.5, 1.0)
    with pytest.raises(ValueError):
        PhysConstants(1.0, 1.0, 1.0, units="cgs")


def test_leading_digits():
    assert leading_digits(20836619123.3, 5) == 20836
    assert leading_digits(0.0012, 4) == 1200


def test_rayleigh_jeans_limit():
    T = 300.0
    nu = 0.005 * SI.k_B * T / SI.h
    rj = 2 * nu**2 * SI.k_B * T / SI.c_light**2
    assert abs(planck_spectral(nu, T, SI) / rj - 1) < 0.01


def test_wien_peak():
    x_peak = optimize.brentq(lambda x: 3 * (1 - math.exp(-x)) - x, 1.0, 5.0)
    assert x_peak == pytest.approx(2.8214, abs=1e-4)
    res = optimize.minimize_scalar(
        lambda nu: -planck_spectral(nu * 1e10, 1.0, SI), bounds=(1.0, 20.0), method="bounded",
        options={"xatol": 1e-9},
    )
    assert res.x * 1e10 == pytest.approx(5.8789e10, rel=1e-4)
    assert res.x * 1e10 == pytest.approx(x_peak * SI.kappa, rel=1e-6)


def test_wien_tail_decays():
    T = 10.0
    nus = [x * SI.kappa * T for x in (31, 35, 40, 50, 800)]
    vals = [planck_spectral(nu, T, SI) for nu in nus]
    assert all(b < a for a, b in zip(vals, vals[1:-1]))
    assert vals[-1] == 0.0 or vals[-1] < vals[-2]


def test_natural_units_drop_c_squared():
    nu, T = 1e13, 500.0
    assert planck_spectral(nu, T, NATURAL) == pytest.approx(planck_spectral(nu, T, SI) * SI.c_light**2, rel=1e-14)


def test_planck_domain():
    with pytest.raises(ValueError):
        planck_spectral(0.0, 1.0, SI)
    with pytest.raises(ValueError):
        planck_spectral(1.0, -1.0, SI)


def test_core_integral():
    r = planck_core_integral()
    assert abs(r.value - math.pi**4 / 15) < 1e-8
    assert abs(r.value - math.gamma(4) * math.pi**4 / 90) < 1e-8
    assert r.error < 1e-9


@pytest.mark.parametrize("units", ["si", "natural"])
@pytest.mark.parametrize("T", [1.0, 300.0, 5772.0, 1e4])
def test_stefan_boltzmann_relative_error(T, units):
    r = stefan_boltzmann(T, SI.with_units(units))
    assert r.relative_error < 1e-6


def test_stefan_boltzmann_sigma_and_scaling():
    T = 5772.0
    r = stefan_boltzmann(T, SI)
    sigma = stefan_boltzmann_sigma(SI)
    assert sigma == pytest.approx(5.670e-8, rel=1e-3)
    assert abs(math.pi * r.quadrature / (sigma * T**4) - 1) < 1e-6
    r2 = stefan_boltzmann(2 * T, SI)
    assert r2.quadrature / r.quadrature == pytest.approx(16.0, rel=1e-12)


def test_closed_form_uses_divided_moment():
    r = stefan_boltzmann(1.0, NATURAL)
    z4 = gamma_convolve(4, "d_li1", 0.0)
    assert r.zeta4.value == z4.value
    assert r.closed_form == pytest.approx(12 * NATURAL.h * NATURAL.kappa**4 * math.pi**4 / 90, rel=1e-9)
    # the direct route (core integral / Gamma(4)) and the divided moment agree
    core = planck_core_integral()
    assert abs(core.value / 6 - z4.value) <= core.error / 6 + z4.error


def test_planck_table():
    rows = planck_table(300.0, SI, n=10)
    assert len(rows) == 10
    assert rows[-1][0] == pytest.approx(20 * SI.kappa * 300.0)


# pairing


def test_pairing_examples():
    phi = GaussianSpec.single(amplitude=1 / math.sqrt(math.pi))
    assert abs(pairing_eval(phi, lp_parse("c^-1")).value + 1) < 1e-8
    r = pairing_eval(GaussianSpec.single(), lp_parse("1"))
    assert abs(r.value + math.sqrt(math.pi) * math.exp(0.25)) < 1e-8
    assert r.value == pytest.approx(-2.27588, abs=1e-5)
    assert pairing_eval(GaussianSpec.single(), LaurentPoly.zero()).value == 0.0


def gaussian_closed_form(phi, p):
    # -sum a A w sqrt(pi) exp(-(k+1) mu + (k+1)^2 w^2 / 4)
    total = 0.0
    for g in phi.terms:
        for k, a in p:
            m = k + 1
            total -= float(a) * g.amplitude * g.width * math.sqrt(math.pi) * math.exp(-m * g.center + (m * g.width) ** 2 / 4)
    return total


def random_gaussian(rng):
    return GaussianSpec(tuple(
        GaussianTerm(rng.uniform(-1, 1), rng.uniform(0.3, 1.2), rng.uniform(-2, 2)) for _ in range(rng.randint(1, 3))
    ))


def random_form(rng):
    return LaurentPoly({rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(rng.randint(1, 3))}, "c", "Q")


def test_pairing_against_closed_form():
    rng = random.Random(7)
    for _ in range(20):
        phi, p = random_gaussian(rng), random_form(rng)
        r = pairing_eval(phi, p)
        assert abs(r.value - gaussian_closed_form(phi, p)) <= r.error + 1e-12


def test_pairing_bilinear():
    rng = random.Random(11)
    spec = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-10)
    for _ in range(10):
        f1, f2 = random_gaussian(rng), random_gaussian(rng)
        p1, p2 = random_form(rng), random_form(rng)
        a = rng.uniform(-2, 2)
        lhs = pairing_eval(f1 + f2.scaled(a), p1, spec)
        rhs1, rhs2 = pairing_eval(f1, p1, spec), pairing_eval(f2, p1, spec)
        assert abs(lhs.value - (rhs1.value + a * rhs2.value)) <= lhs.error + rhs1.error + abs(a) * rhs2.error + 1e-12
        lhs = pairing_eval(f1, p1 + p2, spec)
        r1, r2 = pairing_eval(f1, p1, spec), pairing_eval(f1, p2, spec)
        assert abs(lhs.value - r1.value - r2.value) <= lhs.error + r1.error + r2.error + 1e-12


def test_pairing_rejects_other_test_functions():
    with pytest.raises(TypeError):
        pairing_eval(lambda e: math.exp(-e * e), lp_parse("1"))
    with pytest.raises(ValueError):
        pairing_eval(GaussianSpec.single(), lp_parse("q"))


def test_pairing_failure_carries_certificate():
    spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-300, max_subdivisions=1)
    with pytest.raises(QuadratureError):
        pairing_eval(GaussianSpec.single(0.2, 0.5, 1.0), lp_parse("c^2 + c^-3"), spec)

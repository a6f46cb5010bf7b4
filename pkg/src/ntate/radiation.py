"""Blackbody radiance, the T^4 law, and the Gaussian pairing on Z[c^±1] dc.

Physical constants come from ``data/constants.json`` (or a user config in
the same format) and nowhere else. In ``natural`` units the speed of light
is 1, which makes the closed form literally ``12 h kappa^4 zeta(4) T^4``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from decimal import Decimal
from importlib import resources
from pathlib import Path

from scipy import integrate, special

from .laurent import LaurentPoly
from .polylog import Certified, QuadratureError, QuadratureSpec, gamma_convolve

UNITS = ("si", "natural")


@dataclass(frozen=True)
class PhysConstants:
    h: float
    k_B: float
    c_light: float
    units: str = "si"

    def __post_init__(self):
        if self.units not in UNITS:
            raise ValueError(f"units must be one of {UNITS}")
        if min(self.h, self.k_B, self.c_light) <= 0:
            raise ValueError("physical constants must be positive")

    @property
    def kappa(self) -> float:
        """k_B / h in Hz per kelvin."""
        return self.k_B / self.h

    @property
    def c_eff(self) -> float:
        return self.c_light if self.units == "si" else 1.0

    @classmethod
    def from_config(cls, path: str | Path | None = None, units: str = "si") -> "PhysConstants":
        if path is None:
            text = resources.files("ntate").joinpath("data/constants.json").read_text()
        else:
            text = Path(path).read_text()
        data = json.loads(text)
        return cls(float(data["h"]), float(data["k_B"]), float(data["c_light"]), units)

    def with_units(self, units: str) -> "PhysConstants":
        return PhysConstants(self.h, self.k_B, self.c_light, units)


def leading_digits(value: float, n: int) -> int:
    """First ``n`` significant decimal digits of ``value``, truncated."""
    digits = Decimal(repr(abs(value))).as_tuple().digits
    digits = digits + (0,) * max(0, n - len(digits))
    return int("".join(map(str, digits[:n])))


def planck_spectral(nu: float, T: float, consts: PhysConstants) -> float:
    """``(2h / c^2) nu^3 / (e^{h nu / k_B T} - 1)``, per Hz per steradian."""
    if not nu > 0 or not T > 0:
        raise ValueError("planck_spectral needs nu > 0 and T > 0")
    x = consts.h * nu / (consts.k_B * T)
    pre = 2 * consts.h * nu**3 / consts.c_eff**2
    if x > 700:
        return pre * math.exp(-x)
    return pre / math.expm1(x)


def stefan_boltzmann_sigma(consts: PhysConstants) -> float:
    """``2 pi^5 k_B^4 / (15 c^2 h^3)``."""
    return 2 * math.pi**5 * consts.k_B**4 / (15 * consts.c_eff**2 * consts.h**3)


def planck_core_integral(spec: QuadratureSpec = QuadratureSpec()) -> Certified:
    """``int_0^inf x^3 / (e^x - 1) dx`` with tail cutoff."""

    def tail(U):
        return 6 * float(special.gammaincc(4, U)) / -math.expm1(-U)

    U = spec.cutoff or 8.0
    if spec.cutoff is None:
        while tail(U) > spec.abs_tol / 2:
            U *= 1.25
    tail_bound = tail(U)

    def f(x):
        return x**3 / math.expm1(x) if x > 0 else 0.0

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, qerr = integrate.quad(f, 0.0, U, epsabs=spec.abs_tol / 2, epsrel=spec.rel_tol,
                                     limit=spec.max_subdivisions)
    err = qerr + tail_bound
    if err > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise QuadratureError("planck core integral", err)
    return Certified(value, err, quad_error=qerr, tail_bound=tail_bound, cutoff=U)


@dataclass(frozen=True)
class RadianceResult:
    temperature: float
    units: str
    quadrature: float
    closed_form: float
    relative_error: float
    certificate: Certified
    zeta4: Certified = field(repr=False)

    def to_json(self) -> dict:
        return {
            "temperature": self.temperature,
            "units": self.units,
            "integral": self.quadrature,
            "closed_form": self.closed_form,
            "relative_error": self.relative_error,
            "quad_error": self.certificate.error,
            "zeta4": self.zeta4.value,
            "zeta4_error": self.zeta4.error,
        }


def stefan_boltzmann(T: float, consts: PhysConstants, spec: QuadratureSpec = QuadratureSpec()) -> RadianceResult:
    """Integrated Planck radiance versus ``12 h kappa^4 zeta(4) T^4 / c^2``.

    The integral substitutes ``x = h nu / (k_B T)``; the zeta(4) in the
    closed form is the value at 0 of the fourth divided moment of d li1.
    """
    if not T > 0:
        raise ValueError("temperature must be positive")
    core = planck_core_integral(spec)
    scale = 2 * consts.h * (consts.kappa * T) ** 4 / consts.c_eff**2
    integrated = scale * core.value
    zeta4 = gamma_convolve(4, "d_li1", 0.0, spec)
    closed = 12 * consts.h * consts.kappa**4 * zeta4.value * T**4 / consts.c_eff**2
    cert = Certified(integrated, scale * core.error, quad_error=scale * core.quad_error,
                     tail_bound=scale * core.tail_bound, cutoff=core.cutoff)
    return RadianceResult(T, consts.units, integrated, closed, abs(integrated - closed) / abs(closed), cert, zeta4)


def planck_table(T: float, consts: PhysConstants, n: int = 50, x_max: float = 20.0) -> list[tuple[float, float]]:
    """Spectral radiance on an evenly spaced frequency grid up to ``x_max k_B T / h``."""
    nu_max = x_max * consts.kappa * T
    grid = [nu_max * (i + 1) / n for i in range(n)]
    return [(nu, planck_spectral(nu, T, consts)) for nu in grid]


# ------------------------------------------------------------------ pairing


@dataclass(frozen=True)
class GaussianTerm:
    center: float
    width: float
    amplitude: float

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("Gaussian width must be positive")

    def __call__(self, eps: float) -> float:
        return self.amplitude * math.exp(-(((eps - self.center) / self.width) ** 2))


@dataclass(frozen=True)
class GaussianSpec:
    """Test function ``sum A exp(-((eps - mu) / w)^2)``."""

    terms: tuple[GaussianTerm, ...]

    @classmethod
    def single(cls, center=0.0, width=1.0, amplitude=1.0) -> "GaussianSpec":
        return cls((GaussianTerm(center, width, amplitude),))

    def __call__(self, eps: float) -> float:
        return math.fsum(t(eps) for t in self.terms)

    def __add__(self, other: "GaussianSpec") -> "GaussianSpec":
        return GaussianSpec(self.terms + other.terms)

    def scaled(self, a: float) -> "GaussianSpec":
        return GaussianSpec(tuple(GaussianTerm(t.center, t.width, a * t.amplitude) for t in self.terms))


def pairing_eval(phi: GaussianSpec, form: LaurentPoly, spec: QuadratureSpec = QuadratureSpec()) -> Certified:
    """Pair ``p(c) dc`` with phi after ``c = e^-eps``.

    The pulled-back density is ``-p(e^-eps) e^-eps phi(eps)``. Each
    (Gaussian, monomial) pair is a shifted Gaussian; it is integrated over
    a window around its peak and the window's complement is bounded with erfc.
    """
    if not isinstance(phi, GaussianSpec):
        raise TypeError("pairing is defined for finite Gaussian combinations only")
    if form.var != "c":
        raise ValueError("form must be a Laurent polynomial in c")
    pairs = [(g, k, float(a)) for g in phi.terms for k, a in form]
    if not pairs:
        return Certified(0.0, 0.0)
    budget = spec.abs_tol / (2 * len(pairs))
    value, qerr, tail_total = 0.0, 0.0, 0.0
    for g, k, a in pairs:
        m, mu, w = k + 1, g.center, g.width
        peak = mu - m * w * w / 2
        log_scale = -m * mu + (m * w) ** 2 / 4
        mass = abs(a * g.amplitude) * w * math.sqrt(math.pi) * math.exp(log_scale)
        if mass == 0:
            continue
        ratio = budget / mass
        R = float(special.erfcinv(ratio)) if ratio < 1 else 1.0
        R = max(R, 1.0)

        def density(eps, a=a, g=g, m=m):
            return -a * g.amplitude * math.exp(-(((eps - g.center) / g.width) ** 2) - m * eps)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            v, e = integrate.quad(density, peak - R * w, peak + R * w,
                                  epsabs=budget, epsrel=spec.rel_tol, limit=spec.max_subdivisions)
        value += v
        qerr += e
        tail_total += mass * float(special.erfc(R))
    err = qerr + tail_total
    if err > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise QuadratureError("pairing_eval", err)
    return Certified(value, err, quad_error=qerr, tail_bound=tail_total)

"""Polylogarithms on the negative real line and gamma-kernel convolutions.

``li_s(x) = Li_s(e^x) = sum_{n>=1} e^{nx} / n^s`` for x < 0 (and x = 0 when
s > 1, where it is zeta(s)). ``gamma_convolve`` integrates against the
kernel ``u^(s-1) / Gamma(s)``, i.e. performs s-fold integration, and every
quadrature result carries its error estimate and tail bound.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, special

from .series import PowerSeries, bernoulli

_DIRECT_TERMS_MAX = 200_000
_EM_START = 32
_EM_ORDER = 6  # Bernoulli corrections B_2 .. B_12


class DomainError(ValueError):
    pass


class QuadratureError(RuntimeError):
    """Requested tolerance not met; ``achieved`` is the certified error."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error {achieved:.3e})")
        self.achieved = achieved


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    cutoff: float | None = None

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.cutoff is not None and self.cutoff <= 0:
            raise ValueError("cutoff must be positive")


@dataclass(frozen=True)
class Certified:
    """A float with a certificate: ``|value - exact| <= error``."""

    value: float
    error: float
    quad_error: float = 0.0
    tail_bound: float = 0.0
    cutoff: float = math.inf

    def __float__(self):
        return self.value


def li0(x: float) -> float:
    """``-(1 - e^-x)^-1 = sum_{n>=1} e^{nx}`` for x < 0."""
    if not x < 0:
        raise DomainError("li0 is defined for x < 0")
    return math.exp(x) / -math.expm1(x)


def li1(x: float) -> float:
    """``-log(1 - e^x)`` for x < 0."""
    if not x < 0:
        raise DomainError("li1 is defined for x < 0")
    return -math.log1p(-math.exp(x))


def _em_tail(s: int, x: float, N: int) -> tuple[float, float]:
    """Euler-Maclaurin estimate of ``sum_{n>N} e^{nx} n^-s`` and its error bound.

    The summand is completely monotone in n, so the remainder is bounded by
    the first omitted correction term.
    """
    a = -x

    def deriv(j: int, u: float) -> float:
        # d^j/du^j [e^{-a u} u^{-s}] via Leibniz
        total = 0.0
        for i in range(j + 1):
            falling = 1.0
            for m in range(i):
                falling *= -s - m
            total += math.comb(j, i) * (-a) ** (j - i) * falling * u ** (-s - i)
        return total * math.exp(-a * u)

    if a == 0:
        integral = N ** (1 - s) / (s - 1)
    else:
        integral = N ** (1 - s) * float(special.expn(s, a * N))
    f_N = math.exp(-a * N) * N ** (-s)
    # sum_{n>=N} f(n) = int_N^inf f + f(N)/2 - sum_k B_2k/(2k)! f^(2k-1)(N) + R
    value = integral + f_N / 2
    for k in range(1, _EM_ORDER + 1):
        value -= float(bernoulli(2 * k)) / math.factorial(2 * k) * deriv(2 * k - 1, N)
    k = _EM_ORDER + 1
    bound = abs(float(bernoulli(2 * k)) / math.factorial(2 * k) * deriv(2 * k - 1, N))
    return value - f_N, bound


def li_s_certified(s: float, x: float, tol: float = 1e-14) -> Certified:
    if x > 0 or (x == 0 and s <= 1):
        raise DomainError("li_s needs x < 0, or x = 0 with s > 1")
    if s < 0:
        raise DomainError("only s >= 0 is supported")
    if x < 0:
        r = math.exp(x)
        # tail after N terms <= r^(N+1) / (1 - r) since n^-s <= 1
        need = math.log(tol * (1 - r)) / x - 1 if r < 1 else math.inf
        N = max(int(math.ceil(need)), 1)
        if N <= _DIRECT_TERMS_MAX:
            n = np.arange(1, N + 1, dtype=float)
            terms = np.exp(n * x) / n**s
            value = float(math.fsum(terms[::-1]))
            bound = float(r ** (N + 1) / (1 - r))
            return Certified(value, bound, tail_bound=bound)
    if float(s) != int(s) or s < 1:
        raise DomainError("tail bound not satisfiable for non-integer s this close to x = 0")
    s = int(s)
    n = np.arange(1, _EM_START + 1, dtype=float)
    head = float(math.fsum((np.exp(n * x) / n**s)[::-1]))
    tail, bound = _em_tail(s, x, _EM_START)
    bound += 4 * float(np.finfo(float).eps) * abs(head + tail)
    return Certified(head + tail, bound, tail_bound=bound)


def li_s(s: float, x: float) -> float:
    """``sum_{n>=1} e^{nx} n^-s`` with certified tail."""
    if s == 0 and x < 0:
        return li0(x)
    if s == 1 and x < 0:
        return li1(x)
    return li_s_certified(s, x).value


_INTEGRANDS = {"li0": li0, "d_li1": li0, "li1": li1}


def gamma_convolve(s: int, f: str, x: float, spec: QuadratureSpec = QuadratureSpec()) -> Certified:
    """``int_0^inf u^(s-1)/Gamma(s) f(x - u) du`` for integer s >= 1.

    ``f`` names the integrand: ``"li0"``, ``"d_li1"`` (the density of
    ``d li1``, which is li0) or ``"li1"``. The tail past the cutoff U is
    bounded using ``f(y) <= e^y / (1 - e^-1)`` for y <= -1.
    """
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)) or s < 1:
        raise DomainError("gamma_convolve supports integer s >= 1 only")
    if f not in _INTEGRANDS:
        raise ValueError(f"unknown integrand {f!r}; choose from {sorted(_INTEGRANDS)}")
    if x > 0:
        raise DomainError("x must be <= 0")
    if x == 0 and s < 2:
        raise DomainError("at x = 0 the convolution needs s >= 2")
    fn = _INTEGRANDS[f]
    s = int(s)
    log_gamma = math.lgamma(s)

    def tail(U: float) -> float:
        return math.exp(x) / (1 - math.exp(-1)) * float(special.gammaincc(s, U))

    budget = spec.abs_tol / 2
    if spec.cutoff is not None:
        U = spec.cutoff
    else:
        U = max(1.0 + x, 1.0)
        while tail(U) > budget:
            U *= 1.5
    if x - U > -1:
        raise ValueError("cutoff must reach x - U <= -1 for the tail bound")
    tail_bound = tail(U)

    def integrand(u: float) -> float:
        if u > 0:
            return math.exp((s - 1) * math.log(u) - log_gamma) * fn(x - u)
        if x < 0:
            return fn(x) if s == 1 else 0.0
        # li0(-u) ~ 1/u, so the product tends to u^(s-2) / Gamma(s)
        return 1.0 if s == 2 else 0.0

    breaks = [b for b in (1.0, 4.0, 16.0, 64.0) if b < U]
    value, qerr = 0.0, 0.0
    edges = [0.0, *breaks, U]
    for lo, hi in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings():
            # a missed budget surfaces as QuadratureError below
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            v, e = integrate.quad(
                integrand, lo, hi,
                epsabs=spec.abs_tol / (2 * len(edges)), epsrel=spec.rel_tol,
                limit=spec.max_subdivisions,
            )
        value += v
        qerr += e
    total_err = qerr + tail_bound
    allowed = max(spec.abs_tol, spec.rel_tol * abs(value))
    if total_err > allowed:
        raise QuadratureError(f"gamma_convolve(s={s}, {f}, x={x})", total_err)
    return Certified(value, total_err, quad_error=qerr, tail_bound=tail_bound, cutoff=U)


def zeta_neg(k: int) -> Fraction:
    """``zeta(1 - k) = -B+_k / k`` exactly."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return -bernoulli(k, "plus") / k


def log_bernoulli_kernel(x: float) -> float:
    """``log|x / (e^x - 1)|``, continuous through x = 0."""
    if x == 0:
        return 0.0
    return math.log(abs(x / math.expm1(x)))


def log_bernoulli_series(K: int) -> PowerSeries:
    """Taylor series of ``log(x / (e^x - 1))`` to order K, with exact coefficients."""
    return PowerSeries([0] + [zeta_neg(k) / math.factorial(k) for k in range(1, K + 1)], K)


@dataclass(frozen=True)
class S1Report:
    x: float
    K: int
    residual_closed_form: float
    residual_series: float
    tail_bound: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual_closed_form < self.tol and self.residual_series < self.tol

    def to_json(self) -> dict:
        return {
            "x": self.x, "K": self.K, "pass": self.passed,
            "residual_closed_form": self.residual_closed_form,
            "residual_series": self.residual_series,
            "tail_bound": self.tail_bound, "tol": self.tol,
        }


def s1_expansion_check(x: float, K: int, tol: float = 1e-6) -> S1Report:
    """Check the constant term of li_s at s = 1 two ways.

    (i) ``li1(x) = -log(-x) + log|x/(e^x - 1)|`` and (ii) the Taylor
    polynomial ``sum_{k<=K} zeta(1-k) x^k / k!`` of ``log|x/(e^x-1)|``.
    """
    if not x < 0:
        raise DomainError("x must be negative")
    r = abs(x) / (2 * math.pi)
    # |B_k| / k! <= 2 zeta(2) / (2 pi)^k, so the tail is below this geometric sum
    tail = (math.pi**2 / 3) / (K + 1) * r ** (K + 1) / (1 - r) if r < 1 else math.inf
    if not tail < tol:
        raise DomainError(f"truncation tail bound {tail:.3e} exceeds tolerance at x={x}, K={K}")
    kernel = log_bernoulli_kernel(x)
    res_i = abs(li1(x) - (-math.log(-x) + kernel))
    coeffs = log_bernoulli_series(K).coeffs
    approx = math.fsum(float(coeffs[k]) * x**k for k in range(1, K + 1))
    res_ii = abs(kernel - approx)
    return S1Report(x, K, res_i, res_ii, tail, tol)

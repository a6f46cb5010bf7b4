"""Truncated power series in an inert variable T over exact rings.

Coefficients are either ``Fraction`` or Q-tagged :class:`LaurentPoly`
(in c or in b). Every series keeps all coefficients of ``T^0 .. T^order``;
arithmetic is exact modulo ``T^(order+1)`` and the order only changes
through :meth:`PowerSeries.retruncate`.

Also here: Bernoulli numbers in both index-1 conventions, the generating
series ``b = -T^-1 log(1 - c^-1 T)`` and the identities it satisfies, the
degrading functor, uniform-distribution cumulants, and Cartier characters
of one-dimensional formal group laws.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from .divided_power import DividedPower
from .laurent import LaurentPoly, format_rational


class SeriesError(ValueError):
    """A series operation's precondition does not hold."""


def _coeff_inverse(a):
    if isinstance(a, LaurentPoly):
        return a.inverse()
    if not a:
        raise SeriesError("constant term is not a unit")
    return 1 / Fraction(a)


def _is_one(a) -> bool:
    if isinstance(a, LaurentPoly):
        return a == LaurentPoly.one(a.var, a.ring)
    return a == 1


def _coeff_json(a):
    if isinstance(a, LaurentPoly):
        return a.to_json()
    return format_rational(a)


def _coeff_from_json(data):
    if isinstance(data, dict):
        return LaurentPoly.from_json(data)
    return Fraction(data)


class PowerSeries:
    """``sum_{k<=order} a_k T^k`` with exact coefficients.

    ``one`` fixes the coefficient ring: ``Fraction(1)`` for Q, or the unit
    Laurent polynomial of Q[c^±1] / Q[b^±1].
    """

    __slots__ = ("coeffs", "order", "one")

    def __init__(self, coeffs: Iterable, order: int, one=Fraction(1)):
        if order < 0:
            raise SeriesError("order must be >= 0")
        if isinstance(one, LaurentPoly) and one.ring != "Q":
            raise SeriesError("series coefficients must be Q-tagged; rationalize() first")
        zero = one - one
        cs = []
        for a in coeffs:
            if len(cs) > order:
                break
            if not isinstance(one, LaurentPoly):
                a = Fraction(a)
            elif not isinstance(a, LaurentPoly):
                a = one * a
            cs.append(a)
        cs.extend([zero] * (order + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "one", one)

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    # constructors

    @classmethod
    def constant(cls, a, order: int, one=Fraction(1)) -> "PowerSeries":
        return cls([a], order, one)

    @classmethod
    def variable(cls, order: int, one=Fraction(1)) -> "PowerSeries":
        """The series ``T``."""
        return cls([one - one, one], order, one)

    @classmethod
    def from_function(cls, f: Callable[[int], object], order: int, one=Fraction(1)) -> "PowerSeries":
        return cls([f(k) for k in range(order + 1)], order, one)

    @property
    def zero(self):
        return self.one - self.one

    def __getitem__(self, k: int):
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient T^{k} is outside the truncation 0..{self.order}")
        return self.coeffs[k]

    def _like(self, coeffs) -> "PowerSeries":
        return PowerSeries(coeffs, self.order, self.one)

    def _check(self, other: "PowerSeries") -> None:
        if self.order != other.order:
            raise SeriesError(f"order mismatch {self.order} vs {other.order}; retruncate explicitly")
        if type(self.one) is not type(other.one) or (
            isinstance(self.one, LaurentPoly) and self.one != other.one
        ):
            raise SeriesError("coefficient ring mismatch")

    def retruncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise SeriesError("cannot raise precision beyond the known coefficients")
        return PowerSeries(self.coeffs[: order + 1], order, self.one)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check(other)
        return self._like(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return self._like(-a for a in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return self._like(a * other for a in self.coeffs)
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        nz_a = [i for i in range(n + 1) if a[i]]
        out = [self.zero] * (n + 1)
        for i in nz_a:
            ai = a[i]
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] = out[i + j] + ai * b[j]
        return self._like(out)

    def __rmul__(self, other):
        return self._like(other * a for a in self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = PowerSeries.constant(self.one, self.order, self.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def shift(self, d: int) -> "PowerSeries":
        """Multiply by ``T^d`` (d >= 0) modulo ``T^(order+1)``."""
        if d < 0:
            raise SeriesError("negative shifts leave the power series ring")
        return self._like([self.zero] * d + list(self.coeffs))

    def inverse(self) -> "PowerSeries":
        inv0 = _coeff_inverse(self.coeffs[0])
        a = self.coeffs
        g = [inv0]
        for n in range(1, self.order + 1):
            acc = self.zero
            for k in range(1, n + 1):
                if a[k]:
                    acc = acc + a[k] * g[n - k]
            g.append(-(acc * inv0))
        return self._like(g)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(T))``; ``inner`` must have zero constant term."""
        self._check(inner)
        if inner.coeffs[0]:
            raise SeriesError("inner series must have zero constant term")
        result = PowerSeries.constant(self.coeffs[self.order], self.order, self.one)
        for k in range(self.order - 1, -1, -1):
            result = result * inner + PowerSeries.constant(self.coeffs[k], self.order, self.one)
        return result

    def derivative(self) -> "PowerSeries":
        """Formal d/dT; the top coefficient becomes unknown and is set to 0."""
        return self._like([a * k for k, a in enumerate(self.coeffs)][1:])

    def map_coefficients(self, f: Callable) -> "PowerSeries":
        return self._like(f(a) for a in self.coeffs)

    def exp(self) -> "PowerSeries":
        if self.coeffs[0]:
            raise SeriesError("exp requires zero constant term")
        f = self.coeffs
        g = [self.one]
        for n in range(1, self.order + 1):
            acc = self.zero
            for k in range(1, n + 1):
                if f[k]:
                    acc = acc + (f[k] * k) * g[n - k]
            g.append(acc * Fraction(1, n))
        return self._like(g)

    def log(self) -> "PowerSeries":
        if not _is_one(self.coeffs[0]):
            raise SeriesError("log requires constant term 1")
        a = self.coeffs
        out = [self.zero]
        for n in range(1, self.order + 1):
            acc = self.zero
            for k in range(1, n):
                if out[k] and a[n - k]:
                    acc = acc + (out[k] * k) * a[n - k]
            out.append(a[n] - acc * Fraction(1, n))
        return self._like(out)

    def __repr__(self):
        shown = ", ".join(str(a) for a in self.coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"PowerSeries([{shown}{more}], order={self.order})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_coeff_json(a) for a in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "PowerSeries":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = [_coeff_from_json(a) for a in data["coeffs"]]
        one = Fraction(1)
        for a in coeffs:
            if isinstance(a, LaurentPoly):
                one = LaurentPoly.one(a.var, "Q")
                coeffs = [x.rationalize() for x in coeffs]
                break
        return cls(coeffs, data["order"], one)


def ps_arith(a: PowerSeries, b: PowerSeries | None, op: str) -> PowerSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "compose":
        return a.compose(b)
    if op == "invert":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


def ps_exp_log(a: PowerSeries, which: str) -> PowerSeries:
    if which == "exp":
        return a.exp()
    if which == "log":
        return a.log()
    raise ValueError(f"unknown function {which!r}")


# ------------------------------------------------------------ Bernoulli

_BERNOULLI: list[Fraction] = []


def _extend_bernoulli(n: int) -> None:
    # n! [D^n] D/(e^D - 1), by inverting (e^D - 1)/D
    size = max(n + 1, 2 * len(_BERNOULLI), 16)
    denom = PowerSeries.from_function(lambda k: Fraction(1, factorial(k + 1)), size - 1)
    inv = denom.inverse()
    _BERNOULLI[:] = [inv[k] * factorial(k) for k in range(size)]


def bernoulli(n: int, convention: str = "minus") -> Fraction:
    """Bernoulli number ``B_n``.

    ``convention="minus"`` reads coefficients of ``D/(e^D - 1)``
    (``B_1 = -1/2``); ``"plus"`` flips index 1 only (``B_1 = +1/2``).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if convention not in ("minus", "plus"):
        raise ValueError("convention is 'minus' or 'plus'")
    if n >= len(_BERNOULLI):
        _extend_bernoulli(n)
    value = _BERNOULLI[n]
    if n == 1 and convention == "plus":
        return -value
    return value


def bernoulli_operator(order: int) -> PowerSeries:
    """``D/(e^D - 1)`` as a series in D over Q."""
    return PowerSeries.from_function(lambda k: bernoulli(k) / factorial(k), order)


# ------------------------------------------------- the b/c generating series

C_ONE = LaurentPoly.one("c", "Q")


def _c(k: int, coeff=1) -> LaurentPoly:
    return LaurentPoly.monomial(k, coeff, "c", "Q")


def b_series(N: int) -> PowerSeries:
    """``b = -T^-1 log(1 - c^-1 T) = sum_{k>=1} c^-k T^(k-1) / k`` to order N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return PowerSeries([_c(-(j + 1), Fraction(1, j + 1)) for j in range(N + 1)], N, C_ONE)


def one_minus_cinv_T(N: int) -> PowerSeries:
    return PowerSeries([C_ONE, _c(-1, -1)], N, C_ONE)


def exp_bT(N: int) -> PowerSeries:
    """``exp(T * b)``; its T^k coefficient should be ``c^-k``."""
    return b_series(N).shift(1).exp()


def c_from_b(N: int, sign: int = 1) -> PowerSeries:
    """``sign * b^-1 * B(-bT)`` with ``b := b_series(N)``, B = D/(e^D - 1)."""
    if N < 2:
        raise ValueError("N must be >= 2")
    b = b_series(N)
    b_inv = b.inverse()
    # b^-1 B(-bT) = sum_n B_n (-1)^n / n! * b^(n-1) T^n
    total = b_inv
    power = PowerSeries.constant(C_ONE, N, C_ONE)  # b^(n-1), starting at n = 1
    for n in range(1, N + 1):
        scalar = bernoulli(n) * (-1) ** n / factorial(n)
        if scalar:
            total = total + (power * scalar).shift(n)
        power = power * b
    return total * sign


def c_from_b_check(N: int, sign: int = 1) -> bool:
    return c_from_b(N, sign) == PowerSeries.constant(_c(1), N, C_ONE)


def series_weight(ps: PowerSeries) -> int | None:
    """Common weight of all terms (c and T weight +1, b weight -1), or None.

    Returns None when the series mixes weights; zero series have weight 0.
    """
    weights = set()
    for j, a in enumerate(ps.coeffs):
        if not isinstance(a, LaurentPoly):
            if a:
                weights.add(j)
            continue
        sign = -1 if a.var == "b" else 1
        for k, _ in a:
            weights.add(sign * k + j)
    if len(weights) > 1:
        return None
    return weights.pop() if weights else 0


# -------------------------------------------------------------- one-forms


@dataclass(frozen=True)
class OneFormSeries:
    """``series * dc`` where the series has Q[c^±1] coefficients."""

    series: PowerSeries

    @classmethod
    def d(cls, f: PowerSeries) -> "OneFormSeries":
        """Exterior derivative in c with T inert."""
        return cls(f.map_coefficients(LaurentPoly.derivative))

    def __add__(self, other: "OneFormSeries") -> "OneFormSeries":
        return OneFormSeries(self.series + other.series)

    def __rmul__(self, f: PowerSeries) -> "OneFormSeries":
        return OneFormSeries(f * self.series)


def one_form_check(N: int) -> bool:
    """``d(bT) == -d log(1 - c^-1 T) == -sum c^(-k-1) T^k dc`` mod T^(N+1)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    lhs = OneFormSeries.d(b_series(N).shift(1))
    rhs = OneFormSeries.d(-one_minus_cinv_T(N).log())
    expected = OneFormSeries(PowerSeries([C_ONE - C_ONE] + [_c(-k - 1, -1) for k in range(1, N + 1)], N, C_ONE))
    return lhs == expected and rhs == expected


# ------------------------------------------------------------- degrading


@dataclass(frozen=True)
class Degraded:
    """Weight-0 collapse: finite map slot exponent -> element, meaning sum x_i T^i."""

    slots: tuple

    @classmethod
    def from_dict(cls, d: dict) -> "Degraded":
        return cls(tuple(sorted((i, x) for i, x in d.items() if x)))

    def as_dict(self) -> dict:
        return dict(self.slots)

    def times_T(self, d: int) -> "Degraded":
        return Degraded(tuple((i + d, x) for i, x in self.slots))

    def __str__(self):
        if not self.slots:
            return "0"
        return " + ".join(f"({x})*T^{i}" for i, x in self.slots)


def degrade(parts: Sequence[tuple[object, int]]) -> Degraded:
    """Place each part of weight ``w`` in slot ``T^-w``.

    Weight is cohomological degree / 2, so ``c`` has weight +1 and
    ``b_k`` weight -k.
    """
    out: dict[int, object] = {}
    for element, w in parts:
        if isinstance(w, bool) or not isinstance(w, int):
            raise TypeError(f"weight must be an integer, got {w!r}")
        slot = -w
        out[slot] = out[slot] + element if slot in out else element
    return Degraded.from_dict(out)


def degrade_map(phi: Callable, degree: int) -> Callable[[Degraded], Degraded]:
    """Action of a map on degraded modules: ``sum v_i T^i -> T^degree sum phi(v_i) T^i``.

    With the slot convention above a map that raises weight by ``r`` must
    be given ``degree = -r`` to commute with :func:`degrade`.
    """

    def act(x: Degraded) -> Degraded:
        return Degraded.from_dict({i + degree: phi(v) for i, v in x.slots})

    return act


def laurent_weight_parts(p: LaurentPoly) -> list[tuple[LaurentPoly, int]]:
    """Split into homogeneous monomials with their weights."""
    sign = -1 if p.var == "b" else 1
    return [(LaurentPoly.monomial(k, v, p.var, p.ring), sign * k) for k, v in p]


def divided_weight_parts(x: DividedPower) -> list[tuple[DividedPower, int]]:
    return [(DividedPower.basis(k, a), -k) for k, a in x]


# -------------------------------------------------------------- cumulants


def uniform_cumulants(n: int) -> Fraction:
    """n-th cumulant of the uniform distribution on [0, 1]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mgf = PowerSeries.from_function(lambda j: Fraction(1, factorial(j + 1)), n)
    return mgf.log()[n] * factorial(n)


# ----------------------------------------------------- formal group laws

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class TruncatedPoly:
    """Multivariate polynomial over Q truncated at total degree ``order``."""

    nvars: int
    order: int
    terms: tuple

    @classmethod
    def make(cls, nvars: int, order: int, d: dict) -> "TruncatedPoly":
        keep = {e: Fraction(v) for e, v in d.items() if v and sum(e) <= order}
        return cls(nvars, order, tuple(sorted(keep.items())))

    @classmethod
    def var(cls, i: int, nvars: int, order: int) -> "TruncatedPoly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls.make(nvars, order, {e: 1})

    @classmethod
    def constant(cls, a, nvars: int, order: int) -> "TruncatedPoly":
        return cls.make(nvars, order, {(0,) * nvars: a})

    def __add__(self, other):
        out = dict(self.terms)
        for e, v in other.terms:
            out[e] = out.get(e, 0) + v
        return TruncatedPoly.make(self.nvars, self.order, out)

    def __mul__(self, other):
        if not isinstance(other, TruncatedPoly):
            return TruncatedPoly.make(self.nvars, self.order, {e: v * other for e, v in self.terms})
        out: dict = {}
        for e1, v1 in self.terms:
            d1 = sum(e1)
            for e2, v2 in other.terms:
                if d1 + sum(e2) > self.order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + v1 * v2
        return TruncatedPoly.make(self.nvars, self.order, out)

    def constant_term(self) -> Fraction:
        return dict(self.terms).get((0,) * self.nvars, Fraction(0))

    def as_dict(self) -> dict:
        return dict(self.terms)


def substitute_univariate(chi: PowerSeries, g: TruncatedPoly) -> TruncatedPoly:
    """``chi(g)`` for g with zero constant term, by Horner's rule."""
    if g.constant_term():
        raise SeriesError("substituted series must have zero constant term")
    n = min(chi.order, g.order)
    result = TruncatedPoly.constant(chi[n], g.nvars, g.order)
    for k in range(n - 1, -1, -1):
        result = result * g + TruncatedPoly.constant(chi[k], g.nvars, g.order)
    return result


@dataclass(frozen=True)
class FormalGroupLaw:
    """``F(T0, T1) = sum a_ij T0^i T1^j`` with a_ij stored for i + j <= order."""

    order: int
    a: tuple

    @classmethod
    def from_coeffs(cls, order: int, a: dict) -> "FormalGroupLaw":
        keep = {(i, j): Fraction(v) for (i, j), v in a.items() if v and i + j <= order}
        return cls(order, tuple(sorted(keep.items())))

    @classmethod
    def additive(cls, order: int) -> "FormalGroupLaw":
        return cls.from_coeffs(order, {(1, 0): 1, (0, 1): 1})

    @classmethod
    def multiplicative(cls, order: int) -> "FormalGroupLaw":
        return cls.from_coeffs(order, {(1, 0): 1, (0, 1): 1, (1, 1): 1})

    def coeff(self, i: int, j: int) -> Fraction:
        return dict(self.a).get((i, j), Fraction(0))

    def evaluate(self, x: TruncatedPoly, y: TruncatedPoly) -> TruncatedPoly:
        """``F(x, y)`` for truncated polynomials x, y without constant term."""
        order = min(self.order, x.order)
        nv = x.nvars
        xp = [TruncatedPoly.constant(1, nv, order)]
        yp = [TruncatedPoly.constant(1, nv, order)]
        for _ in range(order):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        out = TruncatedPoly.make(nv, order, {})
        for (i, j), v in self.a:
            out = out + xp[i] * yp[j] * v
        return out

    def as_poly(self, order: int | None = None) -> TruncatedPoly:
        order = self.order if order is None else order
        return self.evaluate(TruncatedPoly.var(0, 2, order), TruncatedPoly.var(1, 2, order))

    def is_unital(self) -> bool:
        N = self.order
        T = TruncatedPoly.var(0, 1, N)
        zero = TruncatedPoly.make(1, N, {})
        return self.evaluate(T, zero) == T and self.evaluate(zero, T) == T

    def is_commutative(self) -> bool:
        return all(self.coeff(i, j) == self.coeff(j, i) for (i, j), _ in self.a)

    def is_associative(self) -> bool:
        N = self.order
        x, y, z = (TruncatedPoly.var(i, 3, N) for i in range(3))
        return self.evaluate(self.evaluate(x, y), z) == self.evaluate(x, self.evaluate(y, z))

    def to_json(self) -> dict:
        return {"order": self.order, "a": {f"{i},{j}": format_rational(v) for (i, j), v in self.a}}

    @classmethod
    def from_json(cls, data) -> "FormalGroupLaw":
        if isinstance(data, str):
            data = json.loads(data)
        a = {}
        for key, v in data["a"].items():
            i, j = (int(s) for s in key.split(","))
            a[(i, j)] = Fraction(v)
        return cls.from_coeffs(data["order"], a)


def exp_character(N: int, rate=1) -> PowerSeries:
    """``exp(rate * T)`` over Q."""
    return (PowerSeries.variable(N) * Fraction(rate)).exp()


def fgl_character_check(F: FormalGroupLaw, chi: PowerSeries, N: int) -> bool:
    """``chi(F(T0, T1)) == chi(T0) chi(T1)`` modulo total degree N+1."""
    if isinstance(chi.one, LaurentPoly):
        raise SeriesError("characters are checked over Q")
    if chi[0] != 1:
        raise SeriesError("a character has constant term 1")
    if N > F.order or N > chi.order:
        raise SeriesError(f"N={N} exceeds the known precision")
    t0, t1 = TruncatedPoly.var(0, 2, N), TruncatedPoly.var(1, 2, N)
    lhs = substitute_univariate(chi, F.evaluate(t0, t1))
    rhs = substitute_univariate(chi, t0) * substitute_univariate(chi, t1)
    return lhs == rhs

"""Boundary map from Z[c^±1] onto the divided power algebra.

``boundary`` sends ``c^-k`` to ``b_{k-1}`` and kills ``Z[c]``. The checks
here verify the resulting short exact sequence on a finite exponent window
and the weight -1 Rota-Baxter identity of the negative-part projector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .divided_power import DividedPower
from .laurent import LaurentPoly, RingMismatch


def as_tate_element(p: LaurentPoly) -> LaurentPoly:
    if p.var != "c" or p.ring != "Z":
        raise RingMismatch(f"expected an element of Z[c^±1], got {p.ring}[{p.var}]")
    return p


def boundary(p: LaurentPoly) -> DividedPower:
    as_tate_element(p)
    out = {}
    for k, a in p:
        if k < 0:
            out[-k - 1] = a.numerator
    return DividedPower(out)


def section(x: DividedPower) -> LaurentPoly:
    """Splitting of ``boundary``: ``b_j -> c^{-j-1}``."""
    return LaurentPoly({-j - 1: a for j, a in x}, "c", "Z")


def _c(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(k, var="c", ring="Z")


@dataclass
class ExactnessReport:
    window: int
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"window": self.window, "pass": self.passed, "violations": self.violations}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def exactness_check(N: int, boundary_map: Callable[[LaurentPoly], DividedPower] = boundary) -> ExactnessReport:
    """Verify the sequence on exponents ``[-N, N]``.

    ``boundary_map`` defaults to :func:`boundary`; passing a faulty map is how
    the harness is exercised. Violations are listed in increasing exponent
    order so the report is deterministic.
    """
    if N < 1:
        raise ValueError("window N must be >= 1")
    report = ExactnessReport(N)

    def flag(k, check, got, expected):
        report.violations.append(
            {"element": str(_c(k)), "check": check, "got": str(got), "expected": str(expected)}
        )

    images = {}
    for k in range(-N, N + 1):
        got = boundary_map(_c(k))
        if k >= 0:
            if got:
                flag(k, "kernel", got, 0)
        else:
            expected = DividedPower.basis(-k - 1)
            if got != expected:
                flag(k, "bijection", got, expected)
            images[k] = got

    target = {DividedPower.basis(j) for j in range(N)}
    if set(images.values()) != target and not report.violations:
        report.violations.append({"element": "window", "check": "bijection", "got": "", "expected": ""})

    # splitting: p = pi+(p) + pi-(p) and pi-(p) is recovered from the boundary
    probes = [_c(k) for k in range(-N, N + 1)]
    probes.append(LaurentPoly({k: k + N + 1 for k in range(-N, N + 1)}, "c", "Z"))
    for p in probes:
        plus, minus = p.project("nonneg"), p.project("neg")
        if plus + minus != p:
            report.violations.append({"element": str(p), "check": "split", "got": str(plus + minus), "expected": str(p)})
        recovered = section(boundary_map(p))
        if recovered != minus:
            report.violations.append(
                {"element": str(p), "check": "split", "got": str(recovered), "expected": str(minus)}
            )
    return report


def negative_part(p: LaurentPoly) -> LaurentPoly:
    return p.project("neg")


def rota_baxter_check(x: LaurentPoly, y: LaurentPoly, R: Callable[[LaurentPoly], LaurentPoly] = negative_part) -> bool:
    """``R(x)R(y) == R(R(x)y + xR(y) - xy)`` (weight -1)."""
    Rx, Ry = R(x), R(y)
    return Rx * Ry == R(Rx * y + x * Ry - x * y)

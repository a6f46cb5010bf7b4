"""The free divided power algebra on one generator.

Basis symbols ``b_k`` (k >= 0) multiply by ``b_i * b_k = C(i+k, i) b_{i+k}``
and ``b_0`` is the unit. Coefficients are integers; rational questions are
answered after :func:`dp_rationalize`, which sends ``b_k`` to ``b^k / k!``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb, factorial
from typing import Mapping

from .laurent import LaurentPoly


class DividedPower:
    """Finite integer combination ``sum a_k b_k``."""

    __slots__ = ("_terms",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        terms = {}
        for k, a in (coeffs or {}).items():
            if isinstance(k, bool) or not isinstance(k, int) or k < 0:
                raise ValueError(f"basis index must be a non-negative int, got {k!r}")
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise ValueError("divided power coefficients are integers")
                a = a.numerator
            if isinstance(a, bool) or not isinstance(a, int):
                raise TypeError("divided power coefficients are integers")
            if a:
                terms[k] = a
        object.__setattr__(self, "_terms", tuple(sorted(terms.items())))

    def __setattr__(self, name, value):
        raise AttributeError("DividedPower is immutable")

    @classmethod
    def basis(cls, k: int, coeff: int = 1) -> "DividedPower":
        return cls({k: coeff})

    @classmethod
    def one(cls) -> "DividedPower":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "DividedPower":
        return cls()

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, k: int) -> int:
        return dict(self._terms).get(k, 0)

    def homological_degrees(self) -> list[int]:
        return [2 * k for k, _ in self._terms]

    def __add__(self, other):
        if not isinstance(other, DividedPower):
            return NotImplemented
        out = dict(self._terms)
        for k, a in other._terms:
            out[k] = out.get(k, 0) + a
        return DividedPower(out)

    def __neg__(self):
        return DividedPower({k: -a for k, a in self._terms})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return DividedPower({k: a * other for k, a in self._terms})
        if not isinstance(other, DividedPower):
            return NotImplemented
        out: dict[int, int] = {}
        for i, a in self._terms:
            for k, b in other._terms:
                out[i + k] = out.get(i + k, 0) + comb(i + k, i) * a * b
        return DividedPower(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, DividedPower):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(("divided", self._terms))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for k, a in self._terms:
            body = f"b_{k}" if abs(a) == 1 else f"{abs(a)}*b_{k}"
            if not pieces:
                pieces.append(body if a > 0 else f"-{body}")
            else:
                pieces.append(("+ " if a > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"DividedPower({str(self)!r})"

    def to_json(self) -> dict:
        return {"basis": "divided", "coeffs": {str(k): str(a) for k, a in self._terms}}

    @classmethod
    def from_json(cls, data) -> "DividedPower":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("basis") != "divided":
            raise ValueError("not a divided-power JSON object")
        return cls({int(k): int(a) for k, a in data["coeffs"].items()})


def dp_mul(x: DividedPower, y: DividedPower) -> DividedPower:
    return x * y


def dp_rationalize(x: DividedPower) -> LaurentPoly:
    """Image in Q[b] under ``b_k -> b^k / k!``."""
    return LaurentPoly({k: Fraction(a, factorial(k)) for k, a in x}, var="b", ring="Q")


def dp_integral_preimage(p: LaurentPoly) -> DividedPower:
    """Inverse of :func:`dp_rationalize` on its image; raises off the lattice."""
    if p.var != "b":
        raise ValueError("expected a polynomial in b")
    out = {}
    for k, v in p:
        if k < 0:
            raise ValueError("negative powers of b have no divided-power preimage")
        a = v * factorial(k)
        if a.denominator != 1:
            raise ValueError(f"b^{k} coefficient {v} is not in the divided-power lattice")
        out[k] = a.numerator
    return DividedPower(out)


def times_b(p: LaurentPoly) -> LaurentPoly:
    """Multiplication operator M on Q[b]."""
    return p.shift(1)


def d_db(p: LaurentPoly) -> LaurentPoly:
    """Formal derivative D on Q[b]."""
    return p.derivative()


def commutator_D_M(p: LaurentPoly) -> LaurentPoly:
    """``[D, M] p = D(M p) - M(D p)``; equals ``p`` on Q[b]."""
    return d_db(times_b(p)) - times_b(d_db(p))

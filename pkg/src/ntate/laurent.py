"""Laurent polynomials in one variable over Z or Q.

Coefficients are ``fractions.Fraction``; Python ints play the role of
arbitrary-precision integers. A polynomial carries a ring tag ("Z" or "Q")
and moving from Z to Q is always an explicit call to :meth:`LaurentPoly.rationalize`.

The module also hosts the (1 - q)-localized ring used for circle-equivariant
K-theory of a point, and a small parser/printer for the text grammar::

    expr  := term (('+'|'-') term)*
    term  := coeff ('*'? var ('^' int)?)? | var ('^' int)?
    coeff := int ('/' posint)?
    var   := c | q | b
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping

VARIABLES = ("c", "q", "b")
RINGS = ("Z", "Q")


class RingMismatch(ValueError):
    """Operands live in different rings (variable or coefficient tag)."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class LaurentPoly:
    """Immutable sparse Laurent polynomial ``sum a_k var^k``.

    >>> c = LaurentPoly.monomial(1)
    >>> (c + c**-1) * c
    LaurentPoly('1 + c^2')
    """

    __slots__ = ("_terms", "_var", "_ring", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None, var: str = "c", ring: str = "Z"):
        if var not in VARIABLES:
            raise ValueError(f"variable must be one of {VARIABLES}, got {var!r}")
        if ring not in RINGS:
            raise ValueError(f"ring must be 'Z' or 'Q', got {ring!r}")
        terms = {}
        for k, v in (coeffs or {}).items():
            if isinstance(k, bool) or not isinstance(k, int):
                raise TypeError("exponents must be integers")
            v = _as_fraction(v)
            if v:
                terms[k] = v
        if ring == "Z":
            for k, v in terms.items():
                if v.denominator != 1:
                    raise ValueError(f"non-integral coefficient {v} in Z-tagged polynomial")
        object.__setattr__(self, "_terms", tuple(sorted(terms.items())))
        object.__setattr__(self, "_var", var)
        object.__setattr__(self, "_ring", ring)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # construction helpers

    @classmethod
    def zero(cls, var: str = "c", ring: str = "Z") -> "LaurentPoly":
        return cls({}, var, ring)

    @classmethod
    def one(cls, var: str = "c", ring: str = "Z") -> "LaurentPoly":
        return cls({0: 1}, var, ring)

    @classmethod
    def monomial(cls, k: int, coeff=1, var: str = "c", ring: str = "Z") -> "LaurentPoly":
        return cls({k: coeff}, var, ring)

    @classmethod
    def _raw(cls, terms: dict, var: str, ring: str) -> "LaurentPoly":
        # trusted fast path: terms already hold Fractions
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_terms", tuple(sorted((k, v) for k, v in terms.items() if v)))
        object.__setattr__(obj, "_var", var)
        object.__setattr__(obj, "_ring", ring)
        object.__setattr__(obj, "_hash", None)
        return obj

    # accessors

    @property
    def var(self) -> str:
        return self._var

    @property
    def ring(self) -> str:
        return self._ring

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def __getitem__(self, k: int) -> Fraction:
        for e, v in self._terms:
            if e == k:
                return v
        return Fraction(0)

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def exponents(self) -> list[int]:
        return [k for k, _ in self._terms]

    def degree(self) -> int | None:
        return self._terms[-1][0] if self._terms else None

    def valuation(self) -> int | None:
        return self._terms[0][0] if self._terms else None

    def cohomological_degrees(self) -> list[int]:
        """Degrees of the monomials present; ``c^k`` sits in degree ``2k``."""
        return [2 * k for k in self.exponents()]

    # ring structure

    def _check(self, other: "LaurentPoly") -> None:
        if self._var != other._var or self._ring != other._ring:
            raise RingMismatch(
                f"cannot combine {self._ring}[{self._var}] with {other._ring}[{other._var}]"
            )

    def _scalar(self, s) -> Fraction:
        s = _as_fraction(s)
        if self._ring == "Z" and s.denominator != 1:
            raise RingMismatch(f"scalar {s} is not integral; rationalize() first")
        return s

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms:
            out[k] = out.get(k, 0) + v
        return LaurentPoly._raw(out, self._var, self._ring)

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._terms}, self._var, self._ring)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            out: dict[int, Fraction] = {}
            for i, a in self._terms:
                for j, b in other._terms:
                    out[i + j] = out.get(i + j, 0) + a * b
            return LaurentPoly._raw(out, self._var, self._ring)
        try:
            s = self._scalar(other)
        except TypeError:
            return NotImplemented
        return LaurentPoly._raw({k: v * s for k, v in self._terms}, self._var, self._ring)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly.one(self._var, self._ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        v = self._terms[0][1]
        return self._ring == "Q" or abs(v) == 1

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit (a monomial with invertible coefficient)."""
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit in {self._ring}[{self._var}^±1]")
        k, v = self._terms[0]
        return LaurentPoly._raw({-k: 1 / v}, self._var, self._ring)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms and self._var == other._var and self._ring == other._ring
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self._var, self._ring, self._terms)))
        return self._hash

    # structure maps

    def rationalize(self) -> "LaurentPoly":
        """Promote Z -> Q (no-op on Q-tagged values)."""
        return LaurentPoly._raw(dict(self._terms), self._var, "Q")

    def integralize(self) -> "LaurentPoly":
        """Demote Q -> Z; raises if a coefficient is not an integer."""
        return LaurentPoly(dict(self._terms), self._var, "Z")

    def project(self, part: str) -> "LaurentPoly":
        if part == "nonneg":
            keep = {k: v for k, v in self._terms if k >= 0}
        elif part == "neg":
            keep = {k: v for k, v in self._terms if k < 0}
        else:
            raise ValueError("part must be 'nonneg' or 'neg'")
        return LaurentPoly._raw(keep, self._var, self._ring)

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly._raw({k - 1: k * v for k, v in self._terms if k}, self._var, self._ring)

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by ``var^d``."""
        return LaurentPoly._raw({k + d: v for k, v in self._terms}, self._var, self._ring)

    def evaluate(self, x):
        return sum(float(v) * x**k for k, v in self._terms) if self._terms else 0.0

    # text and JSON

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k, v in self._terms:
            mag = abs(v)
            if k == 0:
                body = format_rational(mag)
            else:
                mono = self._var if k == 1 else f"{self._var}^{k}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            if not pieces:
                pieces.append(body if v > 0 else f"-{body}")
            else:
                pieces.append(("+ " if v > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        tag = "" if (self._var, self._ring) == ("c", "Z") else f", var={self._var!r}, ring={self._ring!r}"
        return f"LaurentPoly({str(self)!r}{tag})"

    def to_json(self) -> dict:
        return {
            "var": self._var,
            "ring": self._ring,
            "coeffs": {str(k): format_rational(v) for k, v in self._terms},
        }

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = {int(k): Fraction(v) for k, v in data["coeffs"].items()}
        ring = data.get("ring")
        if ring is None:
            ring = "Z" if all(v.denominator == 1 for v in coeffs.values()) else "Q"
        return cls(coeffs, data["var"], ring)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_project(p: LaurentPoly, part: str) -> LaurentPoly:
    return p.project(part)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[A-Za-z_]\w*)|(?P<op>[-+*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.var: str | None = None

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def accept(self, kind: str, value: str | None = None):
        tok = self.tokens[self.i]
        if tok[0] == kind and (value is None or tok[1] == value):
            self.i += 1
            return tok
        return None

    def variable(self) -> str:
        _, name, pos = self.take("var")
        if name not in VARIABLES:
            raise ParseError(f"unknown variable {name!r}", pos)
        if self.var is None:
            self.var = name
        elif self.var != name:
            raise ParseError(f"mixed variables {self.var!r} and {name!r}", pos)
        return name

    def exponent(self) -> int:
        if not self.accept("op", "^"):
            return 1
        sign = -1 if self.accept("op", "-") else 1
        if sign == 1:
            self.accept("op", "+")
        _, digits, _ = self.take("int")
        return sign * int(digits)

    def term(self) -> tuple[int, Fraction]:
        kind, value, pos = self.peek()
        if kind == "int":
            self.i += 1
            coeff = Fraction(int(value))
            if self.accept("op", "/"):
                _, den, dpos = self.take("int")
                if int(den) == 0:
                    raise ParseError("zero denominator", dpos)
                coeff /= int(den)
            if self.accept("op", "*"):
                self.variable()
                return self.exponent(), coeff
            if self.peek()[0] == "var":
                self.variable()
                return self.exponent(), coeff
            return 0, coeff
        if kind == "var":
            self.variable()
            return self.exponent(), Fraction(1)
        raise ParseError(f"expected a term, got {value or 'end of input'!r}", pos)

    def parse(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        sign = -1 if self.accept("op", "-") else 1
        while True:
            k, v = self.term()
            out[k] = out.get(k, 0) + sign * v
            if self.accept("op", "+"):
                sign = 1
            elif self.accept("op", "-"):
                sign = -1
            else:
                break
        self.take("end")
        return out


def lp_parse(text: str, var: str | None = None, ring: str | None = None) -> LaurentPoly:
    """Parse the text grammar into a normal-form polynomial.

    The ring tag is inferred (Z when every coefficient is integral) unless
    given. ``var`` fixes the variable of expressions that mention none.
    """
    parser = _Parser(text)
    coeffs = parser.parse()
    found = parser.var
    if var is not None and found is not None and var != found:
        raise ParseError(f"expected variable {var!r}, found {found!r}", 0)
    v = found or var or "c"
    if ring is None:
        ring = "Z" if all(x.denominator == 1 for x in coeffs.values()) else "Q"
    return LaurentPoly(coeffs, v, ring)


# ------------------------------------------------------ (1 - q) localization


def _poly_divmod_one_minus_q(coeffs: dict[int, Fraction]) -> tuple[dict[int, Fraction], bool]:
    """Divide a Laurent polynomial by (1 - q) exactly over Z.

    Returns (quotient, exact). Works on the ordinary polynomial q^-v p(q).
    """
    if not coeffs:
        return {}, True
    v = min(coeffs)
    top = max(coeffs) - v
    a = [coeffs.get(v + i, Fraction(0)) for i in range(top + 1)]
    # p = (1 - q) * s  <=>  s_i = a_0 + ... + a_i; exact iff the full sum vanishes
    quotient = {}
    running = Fraction(0)
    for i in range(top):
        running += a[i]
        if running:
            quotient[v + i] = running
    exact = running + a[top] == 0
    return quotient, exact


class LocalizedLaurent:
    """An element ``num / (1 - q)^m`` of Z[q^±1] localized at (1 - q).

    Always stored in normal form: when ``m > 0`` the numerator is not
    divisible by ``1 - q``.
    """

    __slots__ = ("num", "pole_order")

    def __init__(self, num: LaurentPoly, pole_order: int = 0):
        if num.var != "q" or num.ring != "Z":
            raise RingMismatch("numerator must be a Z-polynomial in q")
        if pole_order < 0:
            raise ValueError("pole order must be non-negative")
        terms = num.coeffs
        m = pole_order if terms else 0
        while m > 0:
            quotient, exact = _poly_divmod_one_minus_q(terms)
            if not exact:
                break
            terms, m = quotient, m - 1
        object.__setattr__(self, "num", LaurentPoly(terms, "q", "Z"))
        object.__setattr__(self, "pole_order", m)

    def __setattr__(self, name, value):
        raise AttributeError("LocalizedLaurent is immutable")

    @staticmethod
    def _one_minus_q_power(m: int) -> LaurentPoly:
        return LaurentPoly({0: 1, 1: -1}, "q", "Z") ** m

    def __add__(self, other: "LocalizedLaurent") -> "LocalizedLaurent":
        m = max(self.pole_order, other.pole_order)
        a = self.num * self._one_minus_q_power(m - self.pole_order)
        b = other.num * self._one_minus_q_power(m - other.pole_order)
        return LocalizedLaurent(a + b, m)

    def __neg__(self):
        return LocalizedLaurent(-self.num, self.pole_order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LocalizedLaurent") -> "LocalizedLaurent":
        return LocalizedLaurent(self.num * other.num, self.pole_order + other.pole_order)

    def __eq__(self, other):
        if not isinstance(other, LocalizedLaurent):
            return NotImplemented
        return self.num == other.num and self.pole_order == other.pole_order

    def __hash__(self):
        return hash((self.num, self.pole_order))

    def __repr__(self):
        if self.pole_order == 0:
            return f"LocalizedLaurent({self.num})"
        return f"LocalizedLaurent(({self.num}) / (1 - q)^{self.pole_order})"


def loc_normalize(num: LaurentPoly, m: int) -> LocalizedLaurent:
    return LocalizedLaurent(num, m)

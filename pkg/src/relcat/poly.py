"""Univariate polynomials in t with exact rational coefficients.

Composition in the formal category scales by powers of t, and every
identity asserted downstream is exact, so coefficients are Fractions and
nothing is ever rounded.  The zero polynomial has degree() == -1 (an
integer sentinel standing in for minus infinity).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ScalarParseError


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class PolyQ:
    """Finitely supported map degree -> Fraction; no stored zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        data = {}
        if coeffs:
            for deg, c in dict(coeffs).items():
                c = _coerce(c)
                if c:
                    data[int(deg)] = c
        self.coeffs = data

    @classmethod
    def zero(cls) -> "PolyQ":
        return cls()

    @classmethod
    def const(cls, c) -> "PolyQ":
        return cls({0: _coerce(c)})

    @classmethod
    def one(cls) -> "PolyQ":
        return cls.const(1)

    @classmethod
    def t_power(cls, d: int, c=1) -> "PolyQ":
        return cls({d: _coerce(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def constant_value(self) -> Fraction:
        """The value of a degree <= 0 polynomial; raises otherwise."""
        if self.degree() > 0:
            raise ValueError(f"{self} is not constant")
        return self.coeffs.get(0, Fraction(0))

    def __eq__(self, other):
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, Fraction(0)) + c
        return PolyQ(out)

    def __neg__(self):
        return PolyQ({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                out[d] = out.get(d, Fraction(0)) + c1 * c2
        return PolyQ(out)

    __rmul__ = __mul__

    def scale(self, c) -> "PolyQ":
        c = _coerce(c)
        return PolyQ({d: c * v for d, v in self.coeffs.items()})

    def evaluate(self, value) -> Fraction:
        value = _coerce(value)
        return sum((c * value**d for d, c in self.coeffs.items()), Fraction(0))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs, reverse=True):
            c = self.coeffs[d]
            if d == 0:
                body = str(c)
            else:
                tpow = "t" if d == 1 else f"t^{d}"
                body = tpow if c == 1 else (f"-{tpow}" if c == -1 else f"{c}*{tpow}")
            parts.append(body)
        out = parts[0]
        for body in parts[1:]:
            out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
        return out

    __repr__ = __str__


def parse_poly(text: str) -> PolyQ:
    """Parse polynomial literals like "3/2*t^2 - 1" or "t" or "-4/3"."""
    s = text.replace(" ", "")
    if not s:
        raise ScalarParseError("empty polynomial literal")
    # split into signed monomials
    monomials = []
    start = 0
    for i in range(1, len(s)):
        if s[i] in "+-" and s[i - 1] not in "+-*/^":
            monomials.append(s[start:i])
            start = i
    monomials.append(s[start:])
    out = PolyQ.zero()
    for mono in monomials:
        sign = 1
        while mono and mono[0] in "+-":
            if mono[0] == "-":
                sign = -sign
            mono = mono[1:]
        coeff = Fraction(sign)
        deg = 0
        for factor in mono.split("*"):
            if not factor:
                raise ScalarParseError(f"bad monomial in {text!r}")
            if factor[0] == "t":
                if factor == "t":
                    deg += 1
                elif factor.startswith("t^"):
                    try:
                        deg += int(factor[2:])
                    except ValueError as exc:
                        raise ScalarParseError(f"bad power {factor!r} in {text!r}") from exc
                else:
                    raise ScalarParseError(f"bad power {factor!r} in {text!r}")
            else:
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ScalarParseError(f"bad coefficient {factor!r} in {text!r}") from exc
        out = out + PolyQ.t_power(deg, coeff)
    return out


def det_poly(mat: list[list[PolyQ]]) -> PolyQ:
    """Determinant of a square matrix of polynomials, by cofactor expansion."""
    n = len(mat)
    if n == 0:
        return PolyQ.one()
    if n == 1:
        return mat[0][0]
    out = PolyQ.zero()
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in mat[1:]]
        term = mat[0][j] * det_poly(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def rational_roots(p: PolyQ) -> list[Fraction]:
    """All rational roots of p (nonzero p), found exactly.

    Clears denominators, strips the t^v factor (reporting 0 when v > 0),
    and tests the rational-root-theorem candidates.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    roots = []
    v = min(p.coeffs)
    if v > 0:
        roots.append(Fraction(0))
        p = PolyQ({d - v: c for d, c in p.coeffs.items()})
    if p.degree() == 0:
        return sorted(roots)
    denom_lcm = 1
    for c in p.coeffs.values():
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = {d: int(c * denom_lcm) for d, c in p.coeffs.items()}
    a0 = ints.get(0)
    an = ints[max(ints)]
    assert a0, "t factor was stripped"
    seen = set()
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand in seen:
                    continue
                seen.add(cand)
                if p.evaluate(cand) == 0:
                    roots.append(cand)
    return sorted(roots)

"""Exact Laurent polynomials in ``q`` with rational coefficients.

The deformation parameter is real, so conjugation acts trivially on these
scalars.  Division is only available by monomial units ``c q^k``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Laurent:
    """Immutable Laurent polynomial ``sum_k c_k q^k``, ``c_k`` rational."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif isinstance(terms, Laurent):
            terms = terms._terms
        elif isinstance(terms, (int, Fraction)):
            terms = {0: terms} if terms else {}
        clean = {}
        for k, c in terms.items():
            if c:
                clean[int(k)] = _norm(Fraction(c) if not isinstance(c, int) else c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff=1, exp=0):
        return cls._raw({exp: _norm(coeff)} if coeff else {})

    @classmethod
    def coerce(cls, x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        if isinstance(x, (int, Rational)):
            return cls._raw({0: _norm(Fraction(x))} if x else {})
        raise TypeError(f"cannot coerce {type(x).__name__} to Laurent")

    # -- inspection -------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self):
        return len(self._terms) == 1

    def min_exp(self):
        return min(self._terms)

    def max_exp(self):
        return max(self._terms)

    def constant(self):
        """Value as a rational if the scalar does not depend on ``q``."""
        if not self._terms:
            return 0
        if set(self._terms) == {0}:
            return self._terms[0]
        raise ValueError(f"{self} depends on q")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if type(other) is not Laurent and not isinstance(other, Laurent):
            try:
                other = Laurent.coerce(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return Laurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            try:
                other = Laurent.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Laurent.coerce(other) - self

    def __mul__(self, other):
        if type(other) is not Laurent and not isinstance(other, Laurent):
            if isinstance(other, (int, Rational)):
                if not other:
                    return ZERO
                return Laurent._raw({k: _norm(c * other) for k, c in self._terms.items()})
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) == 1 and len(b) == 1:
            (ka, ca), = a.items()
            (kb, cb), = b.items()
            return Laurent._raw({ka + kb: _norm(ca * cb)})
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Laurent._raw({k: _norm(c) for k, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        """Inverse of a monomial unit ``c q^k``."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        (k, c), = self._terms.items()
        return Laurent._raw({-k: _norm(Fraction(1) / c)})

    def __truediv__(self, other):
        other = Laurent.coerce(other)
        return self * other.inverse()

    def conjugate(self):
        return self

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation / printing ---------------------------------------------
    def evaluate(self, q):
        """Evaluate at a numeric ``q`` (float, complex or Fraction)."""
        exact = isinstance(q, (int, Fraction))
        total = 0
        for k, c in self._terms.items():
            total += (c if exact else float(c)) * q ** k
        return total

    def __call__(self, q):
        return self.evaluate(q)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                qs = "q" if k == 1 else f"q^{k}"
                body = qs if a == 1 else f"{a} {qs}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Laurent({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Laurent":
        """Parse strings such as ``"q^-2 - 1"`` or ``"3/2 q + q^4"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if s[0] not in "+-":
            s = "+" + s
        term_re = re.compile(r"([+-])(\d+(?:/\d+)?)?(q(?:\^(-?\d+))?)?")
        pos = 0
        total = ZERO
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse scalar {text!r} at position {pos}")
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                coeff = -coeff
            exp = 0
            if m.group(3):
                exp = int(m.group(4)) if m.group(4) is not None else 1
            total = total + Laurent.monomial(coeff, exp)
            pos = m.end()
        return total


ZERO = Laurent._raw({})
ONE = Laurent._raw({0: 1})
Q = Laurent._raw({1: 1})


def qpow(k: int, coeff=1) -> Laurent:
    return Laurent.monomial(coeff, k)

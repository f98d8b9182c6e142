"""A small expression grammar for algebra elements.

    expr    := [+|-] term ((+|-) term)*
    term    := legprod (⊗ legprod)*
    legprod := factor+                    (juxtaposition is the product)
    factor  := atom [^ int]
    atom    := number | q | name[*] | ( expr )[*]

Parsing yields *free* polynomials: a dict from tuples of words (one word
per tensor leg) to Laurent scalars, with no rewriting applied.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import ONE, Laurent

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[*^()+\-⊗@·])
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, message, position, text):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _mul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(k)
            s = ca * cb if s is None else s + ca * cb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _add(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = sign * c if s is None else s + sign * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _star(a, P):
    out = {}
    for (w,), c in a.items():
        out[(tuple(x ^ 1 for x in reversed(w)),)] = c.conjugate()
    return out


class _Parser:
    def __init__(self, text, legs):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.legs = list(legs)

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            self.error(f"expected {value!r}")
        self.i += 1
        return tok

    def error(self, msg):
        _, val, pos = self.peek()
        raise ParseError(msg + (f" near {val!r}" if val else ""), pos, self.text)

    # rank-1 pieces live in a single leg and use 1-tuples as keys
    def expr(self, leg=None):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        total = _add({}, self.term(leg), sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            total = _add(total, self.term(leg), sign)
        return total

    def term(self, leg):
        if leg is not None:
            return self.legprod(leg)
        pieces = [self.legprod(0)]
        while self.peek()[1] in ("⊗", "@"):
            self.take()
            if len(pieces) >= len(self.legs):
                self.error("too many tensor legs")
            pieces.append(self.legprod(len(pieces)))
        r = len(self.legs)
        if len(pieces) == 1 and r > 1:
            (only,) = pieces
            if any(w for (w,) in only):
                self.error(f"expected {r} tensor legs")
            pieces = pieces + [{((),): ONE}] * (r - 1)
        elif len(pieces) != r:
            self.error(f"expected {r} tensor legs, got {len(pieces)}")
        acc = {(): ONE}
        for p in pieces:
            nxt = {}
            for pre, c in acc.items():
                for (w,), d in p.items():
                    nxt[pre + (w,)] = c * d
            acc = nxt
        return {k: c for k, c in acc.items() if c}

    def legprod(self, leg):
        acc = None
        while True:
            kind, val, _ = self.peek()
            if kind in ("num", "name") or val == "(":
                f = self.factor(leg)
                acc = f if acc is None else _mul(acc, f)
            elif val == "·":
                self.take()
            else:
                break
        if acc is None:
            self.error("expected a factor")
        return acc

    def factor(self, leg):
        base, is_scalar = self.atom(leg)
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, val, _ = self.peek()
            if kind != "num" or "/" in val:
                self.error("expected an integer exponent")
            self.take()
            n = sign * int(val)
            if n < 0:
                if not is_scalar:
                    self.error("negative powers are only allowed for q and numbers")
                if not base:
                    self.error("zero to a negative power")
                (c,) = base.values()
                return {((),): c ** n}
            out = {((),): ONE}
            for _ in range(n):
                out = _mul(out, base)
            return out
        return base

    def atom(self, leg):
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            c = Laurent.coerce(Fraction(val))
            return ({((),): c} if c else {}), True
        if kind == "name":
            self.take()
            if val == "q":
                return {((),): Laurent.monomial(1, 1)}, True
            P = self.legs[leg]
            name = val
            if self.peek()[1] == "*":
                self.take()
                name += "*"
            if not P.has_letter(name):
                self.i -= 2 if name.endswith("*") else 1
                self.error(f"unknown generator {name!r} in {P.name}")
            return {((P.letter(name),),): ONE}, False
        if val == "(":
            self.take()
            inner = self.expr(leg)
            self.take(")")
            if self.peek()[1] == "*":
                self.take()
                inner = _star(inner, self.legs[leg])
            scalar = all(w == () for (w,) in inner) and len(inner) <= 1
            return inner, scalar
        self.error("expected a factor")


def parse_free(text: str, legs) -> dict:
    """Parse into a free polynomial keyed by tuples of words (one per leg)."""
    p = _Parser(text, legs)
    if p.peek()[0] == "end":
        p.error("empty expression")
    out = p.expr()
    if p.peek()[0] != "end":
        p.error("unexpected token")
    return out


def parse_element(text: str, algebra):
    """Parse and normalise into an element of ``algebra``."""
    return element_from_free(parse_free(text, algebra.legs), algebra)


def element_from_free(free, algebra):
    """Normalise a free polynomial keyed by per-leg word tuples."""
    out = {}
    for parts, c in free.items():
        acc = {(): c}
        for P, w in zip(algebra.legs, parts):
            nf = P._nf_concat((), w)
            acc = {pre + (v,): a * b for pre, a in acc.items() for v, b in nf.items()}
        for p, c2 in acc.items():
            k = algebra.from_parts(p)
            s = out.get(k)
            s = c2 if s is None else s + c2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return algebra.element(out)


def parse_word(text: str, P) -> tuple:
    free = parse_free(text, (P,))
    if len(free) != 1:
        raise ValueError(f"{text!r} is not a single word")
    ((w,), c), = free.items()
    if c != 1:
        raise ValueError(f"{text!r} is not a bare word")
    return w

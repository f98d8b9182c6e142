"""Presented *-algebras, tensor products of them, and their elements.

Generators are encoded as letters ``2*i`` (unstarred) and ``2*i + 1``
(starred); a word is a tuple of letters and the empty tuple is the unit.
Every element stores only normal words, i.e. words that contain no
left-hand side of a rewrite rule as a factor.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field

from .scalars import ONE, ZERO, Laurent

Word = tuple

_MAX_DEPTH = 4000
if sys.getrecursionlimit() < 4 * _MAX_DEPTH:
    sys.setrecursionlimit(4 * _MAX_DEPTH)


class NonTerminationError(RuntimeError):
    """Rewriting exceeded its step budget; the rule set is mis-oriented."""


def _acc(out, key, c):
    s = out.get(key)
    s = c if s is None else s + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def _scale_into(out, terms, c):
    for k, d in terms.items():
        _acc(out, k, c * d)


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: dict = field(hash=False, compare=False)


class Algebra:
    """Shared element-level interface of presentations and tensor algebras."""

    legs: tuple

    @property
    def rank(self):
        return len(self.legs)

    def element(self, terms=None) -> "Element":
        return Element(self, dict(terms or {}))

    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {self.unit_key(): ONE})

    def scalar(self, c):
        c = Laurent.coerce(c)
        return Element(self, {self.unit_key(): c} if c else {})

    def multiply(self, x: "Element", y: "Element") -> "Element":
        out = {}
        for k1, c1 in x.terms.items():
            for k2, c2 in y.terms.items():
                _scale_into(out, self.mul_keys(k1, k2), c1 * c2)
        return Element(self, out)

    def star(self, x: "Element") -> "Element":
        out = {}
        for k, c in x.terms.items():
            _scale_into(out, self.star_key(k), c.conjugate())
        return Element(self, out)

    def parts(self, key):
        """Split a key into a tuple of per-leg words."""
        raise NotImplementedError

    def from_parts(self, parts):
        raise NotImplementedError


class Presentation(Algebra):
    """A *-algebra given by generators and an oriented rewriting system.

    ``rules`` are applied left to right; ``relations`` keep the defining
    relations verbatim (as ``lhs - rhs``) so that morphisms can be checked
    against them independently of the chosen orientation.
    """

    def __init__(self, name, generators, rules, relations=(), *, title=None,
                 grading=None, basis_patterns=(), sections=None, params=None):
        self.name = name
        self.title = title or name
        self.generators = list(generators)
        self.legs = (self,)
        self.params = dict(params or {})
        self.grading = dict(grading or {})
        self.basis_patterns = list(basis_patterns)
        self.sections = dict(sections or {})
        self._index = {}
        for i, g in enumerate(self.generators):
            self._index[g] = 2 * i
            self._index[g + "*"] = 2 * i + 1
        self.relations = list(relations)
        self._set_rules(rules)
        # inter-reduce right-hand sides so every rule maps into normal words
        self._set_rules([Rule(r.lhs, self.normal_form_free(r.rhs)) for r in self.rules])

    def _set_rules(self, rules):
        self.rules = list(rules)
        self._by_last = {}
        for r in self.rules:
            if not r.lhs:
                raise ValueError("rule with empty left-hand side")
            self._by_last.setdefault(r.lhs[-1], []).append(r)
        self._append_cache = {}
        self._concat_cache = {}
        self._depth = 0

    # -- letters ------------------------------------------------------------
    @property
    def letters(self):
        return list(range(2 * len(self.generators)))

    def letter(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r} in {self.name}") from None

    def has_letter(self, name: str) -> bool:
        return name in self._index

    def letter_name(self, x: int) -> str:
        g = self.generators[x >> 1]
        return g + "*" if x & 1 else g

    def degree_of_letter(self, x: int) -> int:
        return self.grading.get(self.generators[x >> 1], 1)

    def word_degree(self, w) -> int:
        return sum(self.degree_of_letter(x) for x in w)

    def gen(self, name: str) -> "Element":
        """Normal form of a single generator, e.g. ``gen("z0*")``."""
        return self.normal_form_word((self.letter(name),))

    # -- rewriting ----------------------------------------------------------
    def _suffix_rule(self, w):
        for r in self._by_last.get(w[-1], ()):
            n = len(r.lhs)
            if n <= len(w) and w[len(w) - n:] == r.lhs:
                return r
        return None

    def _nf_append(self, u, x):
        key = (u, x)
        hit = self._append_cache.get(key)
        if hit is not None:
            return hit
        w = u + (x,)
        rule = self._suffix_rule(w)
        if rule is None:
            out = {w: ONE}
        else:
            self._depth += 1
            if self._depth > _MAX_DEPTH:
                self._depth = 0
                raise NonTerminationError(
                    f"rewriting in {self.name} exceeded the step budget at {self.format_word(w)}")
            try:
                prefix = w[: len(w) - len(rule.lhs)]
                out = {}
                for rw, c in rule.rhs.items():
                    _scale_into(out, self._nf_concat(prefix, rw), c)
            finally:
                self._depth -= 1
        self._append_cache[key] = out
        return out

    def _nf_concat(self, u, v):
        """Normal form of ``u v`` for a normal word ``u`` and any word ``v``."""
        if not v:
            return {u: ONE}
        key = (u, v)
        hit = self._concat_cache.get(key)
        if hit is not None:
            return hit
        cur = {u: ONE}
        for x in v:
            nxt = {}
            for w, c in cur.items():
                _scale_into(nxt, self._nf_append(w, x), c)
            cur = nxt
            if not cur:
                break
        self._concat_cache[key] = cur
        return cur

    def normal_form_word(self, w) -> "Element":
        return Element(self, dict(self._nf_concat((), tuple(w))))

    def normal_form_free(self, free) -> dict:
        """Normalise a dict ``word -> scalar`` whose words need not be normal."""
        out = {}
        for w, c in free.items():
            _scale_into(out, self._nf_concat((), tuple(w)), Laurent.coerce(c))
        return out

    def normalize(self, free) -> "Element":
        if isinstance(free, Element):
            free = free.terms
        return Element(self, self.normal_form_free(free))

    def is_normal(self, w) -> bool:
        for i in range(1, len(w) + 1):
            if self._suffix_rule(w[:i]) is not None:
                return False
        return True

    # -- Algebra interface --------------------------------------------------
    def unit_key(self):
        return ()

    def mul_keys(self, k1, k2):
        return self._nf_concat(k1, k2)

    def star_key(self, k):
        return self._nf_concat((), tuple(x ^ 1 for x in reversed(k)))

    def parts(self, key):
        return (key,)

    def from_parts(self, parts):
        (w,) = parts
        return w

    def key_degree(self, k):
        return len(k)

    def sort_key(self, k):
        return (len(k), k)

    # -- enumeration --------------------------------------------------------
    def basis(self, d: int):
        """All normal words of length at most ``d``, in graded order."""
        level = [()]
        out = [()]
        for _ in range(d):
            nxt = []
            for w in level:
                for x in self.letters:
                    v = w + (x,)
                    if self._suffix_rule(v) is None:
                        nxt.append(v)
            level = sorted(nxt)
            out.extend(level)
        return out

    # -- printing -----------------------------------------------------------
    def format_word(self, w) -> str:
        if not w:
            return "1"
        parts = []
        for x, run in itertools.groupby(w):
            n = len(list(run))
            name = self.letter_name(x)
            parts.append(name if n == 1 else f"{name}^{n}")
        return " ".join(parts)

    def format_key(self, k) -> str:
        return self.format_word(k)

    def __repr__(self):
        return f"<Presentation {self.title}>"


class TensorAlgebra(Algebra):
    """Tensor product of presentations with legwise multiplication."""

    _cache: dict = {}

    def __new__(cls, legs):
        legs = tuple(legs)
        key = tuple(id(p) for p in legs)
        hit = cls._cache.get(key)
        if hit is not None:
            return hit
        obj = super().__new__(cls)
        obj.legs = legs
        obj._mul_cache = {}
        cls._cache[key] = obj
        return obj

    def __init__(self, legs):
        pass

    def unit_key(self):
        return tuple(() for _ in self.legs)

    def mul_keys(self, k1, k2):
        hit = self._mul_cache.get((k1, k2))
        if hit is not None:
            return hit
        acc = {(): ONE}
        for P, a, b in zip(self.legs, k1, k2):
            leg = P._nf_concat(a, b)
            nxt = {}
            for pre, c in acc.items():
                for w, d in leg.items():
                    nxt[pre + (w,)] = c * d
            acc = nxt
        out = {k: c for k, c in acc.items() if c}
        self._mul_cache[(k1, k2)] = out
        return out

    def star_key(self, k):
        acc = {(): ONE}
        for P, a in zip(self.legs, k):
            leg = P.star_key(a)
            acc = {pre + (w,): c * d for pre, c in acc.items() for w, d in leg.items()}
        return acc

    def parts(self, key):
        return key

    def from_parts(self, parts):
        return tuple(parts)

    def key_degree(self, k):
        return sum(len(w) for w in k)

    def sort_key(self, k):
        return tuple((len(w), w) for w in k)

    def format_key(self, k):
        return " ⊗ ".join(P.format_word(w) for P, w in zip(self.legs, k))

    def __repr__(self):
        return "<TensorAlgebra " + " ⊗ ".join(P.title for P in self.legs) + ">"


def algebra_on(legs) -> Algebra:
    """The presentation itself for one leg, else the tensor algebra."""
    legs = tuple(legs)
    if len(legs) == 1:
        return legs[0]
    return TensorAlgebra(legs)


def _coerce_scalar(c):
    if isinstance(c, Laurent):
        return c
    return Laurent.coerce(c)


class Element:
    """Finite linear combination of normal keys with Laurent coefficients."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: Algebra, terms: dict):
        self.parent = parent
        self.terms = terms

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if other.parent is not self.parent:
            raise TypeError(f"parent mismatch: {self.parent!r} vs {other.parent!r}")

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.parent.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Element(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.parent, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = self.parent.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return self.parent.multiply(self, other)
        c = _coerce_scalar(other)
        if not c:
            return Element(self.parent, {})
        return Element(self.parent, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = _coerce_scalar(other)
        if not c:
            return Element(self.parent, {})
        return Element(self.parent, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int):
        out = self.parent.one()
        for _ in range(n):
            out = out * self
        return out

    def star(self):
        return self.parent.star(self)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Element):
            return self.parent is other.parent and self.terms == other.terms
        try:
            return self == self.parent.scalar(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((id(self.parent), frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, key):
        return self.terms.get(key, ZERO)

    def support(self):
        return sorted(self.terms, key=self.parent.sort_key)

    def degree(self):
        return max((self.parent.key_degree(k) for k in self.terms), default=0)

    def scalar_part(self):
        return self.terms.get(self.parent.unit_key(), ZERO)

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k in self.support():
            c = self.terms[k]
            word = self.parent.format_key(k)
            unit = k == self.parent.unit_key()
            if c.is_monomial():
                (e, v), = c.items()
                sign = "-" if v < 0 else "+"
                mag = Laurent.monomial(abs(v), e)
                if unit:
                    body = str(mag)
                elif mag == 1:
                    body = word
                else:
                    body = f"{mag} {word}"
            else:
                sign = "+"
                body = f"({c})" + ("" if unit else f" {word}")
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Element({self})"


def tensor(*xs: Element) -> Element:
    """Tensor product of elements; legs are concatenated."""
    legs = tuple(P for x in xs for P in x.parent.legs)
    target = algebra_on(legs)
    acc = {(): ONE}
    for x in xs:
        nxt = {}
        for pre, c in acc.items():
            for k, d in x.terms.items():
                nxt[pre + x.parent.parts(k)] = c * d
        acc = nxt
    return Element(target, {target.from_parts(p): c for p, c in acc.items() if c})


def split_key(key, parent: Algebra, slots):
    """Split a key of ``parent`` into sub-keys for consecutive slot algebras."""
    parts = parent.parts(key)
    out = []
    i = 0
    for S in slots:
        r = S.rank
        out.append(S.from_parts(parts[i:i + r]))
        i += r
    if i != len(parts):
        raise ValueError("slots do not cover the tensor legs")
    return out


def tensor_map(x: Element, slots, maps) -> Element:
    """Apply ``maps[i]`` to slot ``i`` of ``x`` and tensor the results.

    ``slots`` lists the algebras whose legs concatenate to those of
    ``x.parent``.  A map is a callable from a slot key to an Element, or
    ``None`` for the identity.
    """
    if sum(S.rank for S in slots) != x.parent.rank:
        raise ValueError("slots do not match the tensor rank")
    target = None
    out = {}
    cache = [dict() for _ in slots]
    for key, c in x.terms.items():
        subs = split_key(key, x.parent, slots)
        images = []
        for i, (S, k) in enumerate(zip(slots, subs)):
            f = maps[i]
            if f is None:
                images.append((S, {k: ONE}))
                continue
            img = cache[i].get(k)
            if img is None:
                img = f(k)
                cache[i][k] = img
            images.append((img.parent, img.terms))
        if target is None:
            target = algebra_on(tuple(P for A, _ in images for P in A.legs))
        acc = {(): c}
        for A, terms in images:
            nxt = {}
            for pre, a in acc.items():
                for k, b in terms.items():
                    nxt[pre + A.parts(k)] = a * b
            acc = nxt
        for p, v in acc.items():
            _acc(out, target.from_parts(p), v)
    if target is None:
        # zero input: infer the target from a probe on the unit keys
        legs = []
        for S, f in zip(slots, maps):
            if f is None:
                legs.extend(S.legs)
            else:
                legs.extend(f(S.unit_key()).parent.legs)
        target = algebra_on(legs)
    return Element(target, out)


def multiply_slots(x: Element, slots, i: int) -> Element:
    """Multiply slot ``i`` into slot ``i + 1`` (both must be the same algebra)."""
    A = slots[i]
    if slots[i + 1] is not A:
        raise ValueError("can only multiply slots over the same algebra")
    new_slots = list(slots[:i]) + [A] + list(slots[i + 2:])
    target = algebra_on(tuple(P for S in new_slots for P in S.legs))
    out = {}
    for key, c in x.terms.items():
        subs = split_key(key, x.parent, slots)
        prod = A.mul_keys(subs[i], subs[i + 1])
        for k, d in prod.items():
            parts = []
            for j, (S, s) in enumerate(zip(new_slots, subs[:i] + [k] + subs[i + 2:])):
                parts.extend(S.parts(s))
            _acc(out, target.from_parts(tuple(parts)), c * d)
    return Element(target, out)


def permute_slots(x: Element, slots, perm) -> Element:
    """Reorder slots: output slot ``j`` is input slot ``perm[j]``."""
    new_slots = [slots[p] for p in perm]
    target = algebra_on(tuple(P for S in new_slots for P in S.legs))
    out = {}
    for key, c in x.terms.items():
        subs = split_key(key, x.parent, slots)
        parts = []
        for p in perm:
            parts.extend(slots[p].parts(subs[p]))
        out[target.from_parts(tuple(parts))] = c
    return Element(target, out)


def contract_slot(x: Element, slots, i: int, scalar) -> Element:
    """Apply a scalar-valued map (e.g. a counit) to slot ``i`` and drop it."""
    new_slots = list(slots[:i]) + list(slots[i + 1:])
    target = algebra_on(tuple(P for S in new_slots for P in S.legs))
    out = {}
    for key, c in x.terms.items():
        subs = split_key(key, x.parent, slots)
        s = scalar(subs[i])
        if not s:
            continue
        parts = []
        for S, k in zip(new_slots, subs[:i] + subs[i + 1:]):
            parts.extend(S.parts(k))
        _acc(out, target.from_parts(tuple(parts)), c * s)
    return Element(target, out)

"""Basis enumeration, confluence probing and bounded-degree inverse search."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import linalg
from .algebra import Element, Presentation
from .scalars import ONE, Laurent


def basis_enumerate(P: Presentation, d: int):
    """Normal words of length <= d in deterministic graded order."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return P.basis(d)


def pattern_words(P: Presentation, d: int):
    """Words of length <= d in the declared normal-monomial family."""
    out = set()
    for alt in P.basis_patterns:
        ranges = []
        for name, kind in alt:
            x = P.letter(name)
            if kind == "Z":
                opts = [(x,) * k for k in range(d + 1)]
                opts += [(x ^ 1,) * k for k in range(1, d + 1)]
            elif kind == "N":
                opts = [(x,) * k for k in range(d + 1)]
            else:
                lo, hi = kind
                opts = [(x,) * k for k in range(lo, min(hi, d) + 1)]
            ranges.append(opts)
        _extend(out, ranges, 0, (), d)
    return out


def _extend(out, ranges, i, w, d):
    if i == len(ranges):
        out.add(w)
        return
    for piece in ranges[i]:
        if len(w) + len(piece) <= d:
            _extend(out, ranges, i + 1, w + piece, d)


def graded_counts(words, d):
    counts = [0] * (d + 1)
    for w in words:
        counts[len(w)] += 1
    return counts


def critical_pairs(P: Presentation):
    """Overlap and inclusion ambiguities of the rule set, as (word, rule1, rule2, i)."""
    out = []
    for r1, r2 in itertools.product(P.rules, repeat=2):
        a, b = r1.lhs, r2.lhs
        # overlaps: a proper suffix of a equals a proper prefix of b
        for k in range(1, min(len(a), len(b))):
            if a[len(a) - k:] == b[:k]:
                out.append(("overlap", a + b[k:], r1, r2, k))
        # inclusions: b strictly inside a
        if r1 is not r2 and len(b) < len(a):
            for i in range(len(a) - len(b) + 1):
                if a[i:i + len(b)] == b:
                    out.append(("inclusion", a, r1, r2, i))
    return out


def _resolve(P, kind, w, r1, r2, k):
    # reduce w once with r1 at the front, once with r2, then normalise both
    if kind == "overlap":
        tail = w[len(r1.lhs):]
        head = w[: len(w) - len(r2.lhs)]
        left = {rw + tail: c for rw, c in r1.rhs.items()}
        right = {head + rw: c for rw, c in r2.rhs.items()}
    else:
        left = dict(r1.rhs)
        i = k
        pre, post = w[:i], w[i + len(r2.lhs):]
        right = {pre + rw + post: c for rw, c in r2.rhs.items()}
    a = P.normal_form_free(left)
    b = P.normal_form_free(right)
    diff = dict(a)
    for key, c in b.items():
        s = diff.get(key, 0) - c
        if s:
            diff[key] = s
        else:
            diff.pop(key, None)
    return diff


def random_element(P: Presentation, d: int, rng: random.Random, terms=3, parity=None):
    """A random combination of normal words of length <= d with small Laurent coefficients."""
    words = [w for w in P.basis(d) if parity is None or len(w) % 2 == parity]
    out = {}
    for w in rng.sample(words, min(terms, len(words))):
        c = Laurent.monomial(rng.choice([-2, -1, 1, 2, 3]), rng.randint(-2, 2))
        out[w] = c
    return Element(P, out)


@dataclass
class ConfluenceReport:
    algebra: str
    degree: int
    dimensions: list
    predicted: list
    missing: list = field(default_factory=list)
    unexpected: list = field(default_factory=list)
    ambiguities: int = 0
    unresolved: list = field(default_factory=list)
    associativity: list = field(default_factory=list)
    star: list = field(default_factory=list)

    @property
    def ok(self):
        return (self.dimensions == self.predicted and not self.missing and not self.unexpected
                and not self.unresolved and not any(self.associativity) and not any(self.star))

    def as_dict(self):
        return {
            "algebra": self.algebra, "degree": self.degree,
            "dimensions": self.dimensions, "predicted": self.predicted,
            "missing": self.missing, "unexpected": self.unexpected,
            "ambiguities": self.ambiguities, "unresolved": self.unresolved,
            "associativity_residuals": [str(r) for r in self.associativity],
            "star_residuals": [str(r) for r in self.star],
            "ok": self.ok,
        }


def confluence_probe(P: Presentation, d: int, trials: int = 20, seed: int = 0) -> ConfluenceReport:
    words = P.basis(d)
    dims = graded_counts(words, d)
    if P.basis_patterns:
        fam = pattern_words(P, d)
        predicted = graded_counts(fam, d)
        got = set(words)
        missing = sorted(P.format_word(w) for w in fam - got)
        unexpected = sorted(P.format_word(w) for w in got - fam)
    else:
        predicted, missing, unexpected = list(dims), [], []
    pairs = critical_pairs(P)
    unresolved = []
    for kind, w, r1, r2, k in pairs:
        diff = _resolve(P, kind, w, r1, r2, k)
        if diff:
            unresolved.append(P.format_word(w))
    rng = random.Random(seed)
    assoc, star = [], []
    small = max(1, min(d, 3))
    for _ in range(trials):
        x, y, z = (random_element(P, small, rng) for _ in range(3))
        assoc.append((x * y) * z - x * (y * z))
        star.append((x * y).star() - y.star() * x.star())
        star.append(x.star().star() - x)
    return ConfluenceReport(P.name, d, dims, predicted, missing, unexpected,
                            len(pairs), unresolved, [r for r in assoc if r], [r for r in star if r])


def solve_right_inverse(x: Element, P: Presentation, D: int):
    """A two-sided inverse y of x with word length <= D, or None if there is none up to D."""
    unknowns = P.basis(D)
    rows = {}
    for side in ("right", "left"):
        for w in unknowns:
            prod = x * P.normal_form_word(w) if side == "right" else P.normal_form_word(w) * x
            for u, c in prod.terms.items():
                rows.setdefault((side, u), {})[w] = c
    keys = sorted(rows, key=lambda k: (k[0], len(k[1]), k[1]))
    for side in ("right", "left"):
        if (side, ()) not in rows:
            rows[(side, ())] = {}
            keys.append((side, ()))
    eqs = [rows[k] for k in keys]
    rhs = [ONE if k[1] == () else 0 for k in keys]
    sol = linalg.solve(eqs, rhs, col_key=P.sort_key)
    if sol is None:
        return None
    y = Element(P, linalg.solution_to_laurent(sol))
    if x * y != 1 or y * x != 1:  # pragma: no cover - defensive
        raise AssertionError("linear solve returned a non-inverse")
    return y

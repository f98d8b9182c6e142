"""Exact sparse linear algebra over Q[q, q^-1].

Rows are dicts ``column -> Laurent``.  Every row is first multiplied by a
power of q so that its entries are honest polynomials; elimination is then
fraction-free over Q[q] (sympy polynomial ring), dividing each new row by the
gcd of its entries.  Pivots prefer the lowest q-degree, then the sparsest row,
so the output is deterministic.  Independent blocks (connected components of
the row/column incidence graph) are eliminated separately.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .scalars import Laurent

R, _q = ring("q", QQ)

RHS = ("~rhs",)  # sentinel column for augmented systems


def to_poly(c: Laurent, shift: int = 0):
    return R({(e + shift,): QQ(v.numerator, v.denominator) for e, v in c.items()})


def to_laurent(p, shift: int = 0) -> Laurent:
    return Laurent({e - shift: Fraction(int(v.numerator), int(v.denominator))
                    for (e,), v in p.terms()})


def _poly_row(row):
    row = {k: Laurent.coerce(c) for k, c in row.items()}
    shift = -min(c.min_exp() for c in row.values())
    return {k: to_poly(c, shift) for k, c in row.items()}


def _primitive(row):
    g = reduce(lambda a, b: a.gcd(b), row.values())
    if g != 1:
        row = {k: v.exquo(g) for k, v in row.items()}
    return row


def _components(rows):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        cols = [c for c in row if c != RHS]
        for c in cols:
            find(c)
        for c in cols[1:]:
            a, b = find(cols[0]), find(c)
            if a != b:
                parent[a] = b
    groups = {}
    lonely = []
    for i, row in enumerate(rows):
        cols = [c for c in row if c != RHS]
        if not cols:
            lonely.append(i)
            continue
        groups.setdefault(find(cols[0]), []).append(i)
    return list(groups.values()), lonely


def _sortable(c):
    return (1, ()) if c == RHS else (0, c)


def _eliminate(rows, col_key):
    """Gauss-Jordan elimination of polynomial rows.

    Returns a list of ``(pivot_column, row)`` in pivot order plus the rows
    reduced to zero in the regular columns (only possibly holding RHS).
    """
    rows = [r for r in rows if r]
    active = list(range(len(rows)))
    by_col = {}
    for i, r in enumerate(rows):
        for c in r:
            by_col.setdefault(c, set()).add(i)
    pivots = []
    cols = sorted((c for c in by_col if c != RHS), key=col_key)
    used = set()
    for col in cols:
        cand = [i for i in by_col.get(col, ()) if i not in used and col in rows[i]]
        if not cand:
            continue
        p = min(cand, key=lambda i: (rows[i][col].degree(), len(rows[i]), i))
        used.add(p)
        prow = rows[p]
        pc = prow[col]
        for i in list(by_col.get(col, ())):
            if i == p or col not in rows[i]:
                continue
            r = rows[i]
            c = r[col]
            g = pc.gcd(c)
            a, b = pc.exquo(g), c.exquo(g)
            new = {}
            for k, v in r.items():
                new[k] = a * v
            for k, v in prow.items():
                w = new.get(k, R.zero) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            for k in r:
                if k not in new:
                    by_col[k].discard(i)
            for k in new:
                by_col.setdefault(k, set()).add(i)
            rows[i] = _primitive(new) if new else new
        pivots.append((col, p))
    out = [(col, rows[p]) for col, p in pivots]
    rest = [rows[i] for i in active if i not in used and rows[i]]
    return out, rest


def _prepare(rows):
    return [_primitive(_poly_row(r)) for r in rows if r]


def rank(rows) -> int:
    rows = [{k: v for k, v in r.items() if v} for r in rows]
    comps, _ = _components(rows)
    total = 0
    for comp in comps:
        piv, _ = _eliminate(_prepare([rows[i] for i in comp]), _sortable)
        total += len(piv)
    return total


def nullspace(rows, columns, col_key=None):
    """Basis of ``{x : sum_c row[c] x_c = 0 for every row}`` with Laurent entries.

    ``columns`` lists every unknown (columns missing from all rows are free).
    Vectors are returned as dicts ``column -> Laurent``, one per free column,
    in column order.
    """
    col_key = col_key or (lambda c: c)
    order = {c: i for i, c in enumerate(sorted(columns, key=col_key))}
    key = lambda c: order[c]  # noqa: E731
    rows = [{k: v for k, v in r.items() if v} for r in rows]
    comps, _ = _components(rows)
    pivot_rows = {}
    for comp in comps:
        piv, _ = _eliminate(_prepare([rows[i] for i in comp]), key)
        for col, r in piv:
            pivot_rows[col] = r
    free = [c for c in sorted(columns, key=key) if c not in pivot_rows]
    # pivot rows mentioning each free column
    touching = {}
    for col, r in pivot_rows.items():
        for k in r:
            if k != col:
                touching.setdefault(k, []).append(col)
    basis = []
    for f in free:
        deps = touching.get(f, [])
        den = reduce(lambda a, b: a.lcm(b), (pivot_rows[c][c] for c in deps), R.one)
        vec = {f: den}
        for c in deps:
            r = pivot_rows[c]
            vec[c] = -(r[f] * den.exquo(r[c]))
        vec = _primitive(vec)
        basis.append({k: to_laurent(v) for k, v in vec.items()})
    return basis


def solve(rows, rhs, columns=None, col_key=None):
    """Solve ``rows . x = rhs``; returns ``{column: (num, den)}`` or None.

    ``rhs`` is a list aligned with ``rows``.  Free unknowns are set to zero.
    ``num``/``den`` are sympy polynomials in q (the solution lives in Q(q)).
    """
    col_key = col_key or (lambda c: c)
    aug = []
    for r, b in zip(rows, rhs):
        r = {k: v for k, v in r.items() if v}
        if b:
            r[RHS] = Laurent.coerce(b)
        if r:
            aug.append(r)
    comps, lonely = _components(aug)
    if lonely:
        return None
    sol = {}
    key = lambda c: (1, ()) if c == RHS else (0, col_key(c))  # noqa: E731
    for comp in comps:
        piv, rest = _eliminate(_prepare([aug[i] for i in comp]), key)
        if any(rest):
            return None
        for col, r in piv:
            if col == RHS:
                return None
            b = r.get(RHS)
            if b:
                num, den = b, r[col]
                g = num.gcd(den)
                sol[col] = (num.exquo(g), den.exquo(g))
    return sol


def solution_to_laurent(sol):
    """Convert a Q(q) solution to Laurent scalars if every denominator is a monomial."""
    out = {}
    for col, (num, den) in sol.items():
        if len(den.terms()) != 1:
            raise ValueError(f"coefficient of {col!r} is not a Laurent polynomial")
        ((e,), c), = den.terms()
        out[col] = to_laurent(num.quo_ground(c), e)
    return out


def in_span(vectors, target) -> bool:
    """Whether ``target`` (dict) is a Q(q)-combination of ``vectors`` (dicts)."""
    # transpose: one row per coordinate, one column per vector
    coords = {}
    for j, v in enumerate(vectors):
        for k, c in v.items():
            if c:
                coords.setdefault(k, {})[j] = c
    for k in target:
        coords.setdefault(k, {})
    keys = sorted(coords, key=repr)
    rows = [coords[k] for k in keys]
    rhs = [target.get(k, 0) for k in keys]
    return solve(rows, rhs) is not None

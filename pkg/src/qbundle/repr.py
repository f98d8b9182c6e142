"""Truncated Fock-space *-representations of A^{2n} and of odd spheres ⊗ U(1).

Operators are complex scipy.sparse matrices on the span of
``|k_0, …, k_{r-1}⟩`` with every ``k_i < K``.  Lowering operators leave the
truncated space only at the bottom, raising ones (adjoints) at the top, so
relations are asserted on interior vectors (all ``k_i < K - margin``).
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .ncalg import Element, load_presentation
from .ncalg.probe import random_element


def evaluate_scalar(s, q: float) -> float:
    """Value of a Laurent scalar at a numeric ``0 < q < 1``."""
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    return float(s.evaluate(q))


class FockBasis:
    """Multi-indices ``(k_0, …, k_{r-1})``, ``0 ≤ k_i < K``, in lexicographic order."""

    def __init__(self, r: int, K: int):
        if r < 0 or K < 1:
            raise ValueError("need r ≥ 0 and K ≥ 1")
        self.r = r
        self.K = K
        self.dim = K ** r

    def index(self, k) -> int:
        out = 0
        for ki in k:
            if not 0 <= ki < self.K:
                raise IndexError(f"{k} outside the truncation")
            out = out * self.K + ki
        return out

    def multi_index(self, i: int):
        k = []
        for _ in range(self.r):
            i, ki = divmod(i, self.K)
            k.append(ki)
        return tuple(reversed(k))

    def __iter__(self):
        return itertools.product(range(self.K), repeat=self.r)

    def interior(self, margin: int):
        """Ordinals of vectors with every ``k_i < K - margin``."""
        top = self.K - margin
        if top <= 0:
            raise ValueError("margin must be smaller than the cutoff")
        return np.array([self.index(k) for k in itertools.product(range(top), repeat=self.r)],
                        dtype=int)

    def __len__(self):
        return self.dim


@dataclass
class RepresentationSpec:
    """``family="phi"``: the π_{φ,±} series; ``family="zero"``: π_{λ,μ} with ζ_n = 0.

    ``literal=True`` on the zero branch uses the variant with n
    indices and exponent ``Σk + n`` (it does not satisfy the sphere relation);
    the default uses n−1 indices and exponent ``k_0+…+k_{n-2} + n−1``, the
    standard odd-sphere representation.
    """
    family: str
    n: int
    q: float
    K: int
    phi: float = 0.0
    sign: int = 1
    lam: complex = 1.0
    mu: complex = 1.0
    literal: bool = False

    def __post_init__(self):
        if self.family not in ("phi", "zero"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 < self.q < 1:
            raise ValueError("q must lie in (0, 1)")
        if self.K < 1:
            raise ValueError("cutoff must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be ±1")
        for name in ("lam", "mu"):
            if abs(abs(getattr(self, name)) - 1) > 1e-12:
                raise ValueError(f"|{name}| must be 1")

    @property
    def indices(self) -> int:
        if self.family == "zero" and not self.literal:
            return self.n - 1
        return self.n

    def basis(self) -> FockBasis:
        return FockBasis(self.indices, self.K)

    def with_cutoff(self, K: int) -> "RepresentationSpec":
        d = dict(self.__dict__)
        d["K"] = K
        return RepresentationSpec(**d)


def _lowering(B: FockBasis, l: int, q: float):
    # |k⟩ ↦ (1 - q^{2k_l})^{1/2} q^{k_0+…+k_{l-1}+l} |k - e_l⟩
    rows, cols, vals = [], [], []
    for k in B:
        if k[l] == 0:
            continue
        c = math.sqrt(1 - q ** (2 * k[l])) * q ** (sum(k[:l]) + l)
        j = list(k)
        j[l] -= 1
        rows.append(B.index(j))
        cols.append(B.index(k))
        vals.append(c)
    return sp.csr_matrix((np.array(vals, dtype=complex), (rows, cols)), shape=(B.dim, B.dim))


def _diagonal(B: FockBasis, scale: complex, q: float, shift: int):
    # |k⟩ ↦ scale q^{Σk + shift} |k⟩
    vals = [scale * q ** (sum(k) + shift) for k in B]
    return sp.diags(np.array(vals, dtype=complex), format="csr")


def build_rep(spec: RepresentationSpec) -> dict:
    """Generator name → sparse operator, for the generators of A^{2n}."""
    n, q = spec.n, spec.q
    B = spec.basis()
    ident = sp.identity(B.dim, dtype=complex, format="csr")
    ops = {}
    if spec.family == "phi":
        for l in range(n):
            ops[f"zeta{l}"] = _lowering(B, l, q)
        ops[f"zeta{n}"] = _diagonal(B, spec.sign * cmath.exp(1j * spec.phi), q, n)
        ops["xi"] = cmath.exp(-2j * spec.phi) * ident
    else:
        for l in range(n - 1):
            ops[f"zeta{l}"] = _lowering(B, l, q)
        if spec.literal:
            ops[f"zeta{n - 1}"] = _diagonal(B, spec.lam, q, n)
        else:
            ops[f"zeta{n - 1}"] = _diagonal(B, spec.lam, q, n - 1)
        ops[f"zeta{n}"] = sp.csr_matrix((B.dim, B.dim), dtype=complex)
        ops["xi"] = spec.mu * ident
    return ops


def _letter_ops(P, ops):
    out = {}
    for g in P.generators:
        x = P.letter(g)
        out[x] = ops[g]
        out[x ^ 1] = ops[g].conj().T.tocsr()
    return out


def represent_free(free: dict, P, ops, q: float):
    """Operator of a free linear combination of words (no normalisation)."""
    letters = _letter_ops(P, ops)
    dim = next(iter(ops.values())).shape[0]
    out = sp.csr_matrix((dim, dim), dtype=complex)
    ident = sp.identity(dim, dtype=complex, format="csr")
    for w, c in free.items():
        m = ident
        for x in w:
            m = m @ letters[x]
        out = out + evaluate_scalar(c, q) * m
    return out


def represent(x: Element, spec_or_ops, q: float | None = None):
    """Multiplicative extension; starred letters act by adjoints."""
    if isinstance(spec_or_ops, RepresentationSpec):
        ops, q = build_rep(spec_or_ops), spec_or_ops.q
    else:
        ops = spec_or_ops
    return represent_free(x.terms, x.parent, ops, q)


@dataclass
class ResidualReport:
    name: str
    margin: int
    tolerance: float
    residuals: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def ok(self) -> bool:
        return self.max_residual < self.tolerance

    def failures(self):
        return {k: v for k, v in self.residuals.items() if v >= self.tolerance}

    def as_dict(self):
        return {"name": self.name, "margin": self.margin, "tolerance": self.tolerance,
                "max_residual": self.max_residual, "ok": self.ok,
                "failures": {k: v for k, v in sorted(self.failures().items())}}


def interior_norm(M, cols) -> float:
    """Largest column norm of ``M`` restricted to the given columns."""
    sub = M[:, cols]
    if sub.nnz == 0:
        return 0.0
    return float(np.sqrt(np.asarray(abs(sub).power(2).sum(axis=0))).max())


def relations_residuals(P, ops, q, B: FockBasis, margin: int, name="relations",
                        tolerance=1e-10) -> ResidualReport:
    cols = B.interior(margin)
    rep = ResidualReport(name, margin, tolerance)
    for text, free in P.relations:
        rep.residuals[text] = interior_norm(represent_free(free, P, ops, q), cols)
    return rep


def verify_relations_numeric(spec: RepresentationSpec, margin: int = 4, ops=None,
                             tolerance=1e-10) -> ResidualReport:
    """Every defining relation of A^{2n} on interior basis vectors."""
    if margin >= spec.K:
        raise ValueError("margin must be smaller than the cutoff")
    P = load_presentation("a2n", n=spec.n)
    ops = ops if ops is not None else build_rep(spec)
    label = f"{spec.family} n={spec.n} q={spec.q} K={spec.K}"
    return relations_residuals(P, ops, spec.q, spec.basis(), margin, label, tolerance)


def adjoint_consistency(spec: RepresentationSpec, trials=20, degree=3, margin=4, seed=0) -> float:
    """max ‖π(x*) − π(x)†‖ on interior vectors over random x of degree ≤ 3."""
    P = load_presentation("a2n", n=spec.n)
    ops = build_rep(spec)
    cols = spec.basis().interior(margin)
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        x = random_element(P, degree, rng)
        diff = represent(x.star(), ops, spec.q) - represent(x, ops, spec.q).conj().T
        worst = max(worst, interior_norm(diff.tocsr(), cols))
    return worst


# -- odd spheres and U(1) characters -------------------------------------------

def odd_sphere_rep(n: int, lam: complex, q: float, K: int) -> dict:
    """π_λ of O(S^{2n-1}_q): z_l lowers k_l (l < n-1), z_{n-1} = λ q^{Σk + n-1}."""
    spec = RepresentationSpec("zero", n, q, K, lam=lam)
    ops = build_rep(spec)
    return {f"z{i}": ops[f"zeta{i}"] for i in range(n)}


def prolonged_rep(n: int, lam: complex, c: complex, q: float, K: int):
    """π_λ ⊗ χ_c on O(S^{2n-1}_q) ⊗ O(U(1)) (χ_c(v) = c); returns a key → operator function."""
    S, U = load_presentation("sphere", m=2 * n - 1), load_presentation("u1")
    ops = odd_sphere_rep(n, lam, q, K)
    v = U.letter("v")

    def on_element(x: Element):
        out = None
        for (zw, vw), coeff in x.terms.items():
            chi = 1.0
            for l in vw:
                chi *= c if l == v else c.conjugate()
            m = chi * represent_free({zw: coeff}, S, ops, q)
            out = m if out is None else out + m
        return out

    return on_element


def prolongation_consistency(n: int, lam: complex, c: complex, q: float, K: int,
                             margin: int = 4) -> float:
    """Zero-branch π_{λc, c̄²} against (π_λ ⊗ χ_c)∘Φ, largest interior deviation.

    The two agree after the unitary change of basis ``|k⟩ ↦ c^{Σk}|k⟩``.
    """
    from .ncalg import tensor
    S, U = load_presentation("sphere", m=2 * n - 1), load_presentation("u1")
    spec = RepresentationSpec("zero", n, q, K, lam=lam * c, mu=c.conjugate() ** 2)
    B = spec.basis()
    ops = build_rep(spec)
    rho = prolonged_rep(n, lam, c, q, K)
    W = sp.diags(np.array([c ** sum(k) for k in B], dtype=complex), format="csr")
    Winv = W.conj().T
    cols = B.interior(margin)
    v = U.gen("v")
    images = {f"zeta{i}": tensor(S.gen(f"z{i}"), v) for i in range(n)}
    images["xi"] = tensor(S.one(), v.star() ** 2)
    worst = 0.0
    for g, img in images.items():
        worst = max(worst, interior_norm((ops[g] - W @ rho(img) @ Winv).tocsr(), cols))
    return worst


def odd_sphere_relations(n: int, lam: complex, q: float, K: int, margin: int = 4) -> ResidualReport:
    S = load_presentation("sphere", m=2 * n - 1)
    ops = odd_sphere_rep(n, lam, q, K)
    return relations_residuals(S, ops, q, FockBasis(n - 1, K), margin, f"S^{2 * n - 1} λ={lam}")


__all__ = [
    "evaluate_scalar", "FockBasis", "RepresentationSpec", "build_rep", "represent",
    "represent_free", "ResidualReport", "interior_norm", "relations_residuals",
    "verify_relations_numeric", "adjoint_consistency", "odd_sphere_rep", "prolonged_rep",
    "prolongation_consistency", "odd_sphere_relations",
]

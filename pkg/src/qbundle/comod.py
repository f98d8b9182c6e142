"""Comodule algebras: coactions, coinvariants, cotensor products and κ."""

from __future__ import annotations

import itertools
import random

from .hopf import HopfMap, HopfStructure, Report, hopf_algebra
from .ncalg import Element, Presentation, TensorAlgebra, load_presentation, tensor, tensor_map
from .ncalg import linalg
from .ncalg.algebra import contract_slot
from .ncalg.morphism import AlgebraMorphism, verify_morphism
from .ncalg.scalars import Laurent


class ComoduleAlgebra:
    """An algebra ``M`` (possibly a tensor algebra) with a right H-coaction on keys.

    ``coact_key(k)`` returns an element whose legs are ``M.legs + (H.P,)``.
    """

    def __init__(self, M, H: HopfStructure, coact_key, name="M", origin=None):
        self.M = M
        self.H = H
        self.coact_key = coact_key
        self.name = name
        self.origin = origin  # the Coaction / Cotensor this came from

    def coact(self, x: Element) -> Element:
        return tensor_map(x, [self.M], [self.coact_key])

    def __repr__(self):
        return f"<ComoduleAlgebra {self.name} over {self.H.name}>"


class Coaction:
    """A right coaction ``A → A ⊗ H`` fixed on generators of ``A``."""

    def __init__(self, A: Presentation, H: HopfStructure, images, name=None):
        self.A = A
        self.H = H
        self.AH = TensorAlgebra((A, H.P))
        self.name = name or f"ρ: {A.name} → {A.name}⊗{H.name}"
        self.morphism = AlgebraMorphism(A, self.AH, images, name=self.name)

    def key(self, w) -> Element:
        return self.morphism.on_word(w)

    def __call__(self, x) -> Element:
        return self.morphism(x)

    def comodule(self) -> ComoduleAlgebra:
        return ComoduleAlgebra(self.A, self.H, self.key, self.A.name, origin=self)

    def pushforward(self, pi: HopfMap) -> "Coaction":
        """``(id ⊗ π) ∘ ρ`` as a coaction of the target Hopf algebra of ``pi``."""
        if pi.source is not self.H:
            raise ValueError("Hopf map does not start at the coacting Hopf algebra")
        images = {x: tensor_map(self.key((x,)), [self.A, self.H.P], [None, pi.key])
                  for x in self.A.letters}
        return Coaction(self.A, pi.target, images, name=f"(id⊗{pi.name})∘ρ")

    def __repr__(self):
        return f"<Coaction {self.name}>"


def grouplike_coaction(A: Presentation, H: HopfStructure, g: str, name=None) -> Coaction:
    """``z ↦ z ⊗ g`` on every generator ``z`` of ``A``."""
    gx = H.P.gen(g)
    images = {name_: tensor(A.gen(name_), gx) for name_ in A.generators}
    return Coaction(A, H, images, name=name or f"z ↦ z⊗{g} on {A.name}")


def trivial_coaction(A: Presentation, H: HopfStructure) -> Coaction:
    return Coaction(A, H, {g: tensor(A.gen(g), H.P.one()) for g in A.generators},
                    name=f"trivial on {A.name}")


def sphere_z2_coaction(m: int) -> Coaction:
    return grouplike_coaction(load_presentation("sphere", m=m), hopf_algebra("z2"), "u")


def sphere_u1_coaction(m: int) -> Coaction:
    if m % 2 == 0:
        raise ValueError("the U(1)-coaction z ↦ z⊗v exists on odd spheres only")
    return grouplike_coaction(load_presentation("sphere", m=m), hopf_algebra("u1"), "v")


def sphere_zp_coaction(m: int, p: int) -> Coaction:
    return grouplike_coaction(load_presentation("sphere", m=m), hopf_algebra("zp", p=p), "w")


def s3_su2_coaction() -> Coaction:
    """O(S³_q) as a right O(SU_q(2))-comodule algebra through Δ (a = z0, b = z1*)."""
    A, H = load_presentation("s3"), hopf_algebra("su2")
    return Coaction(A, H, {"z0": "z0 ⊗ a - q^-1 z1* ⊗ b*", "z1": "z1 ⊗ a + z0* ⊗ b*"},
                    name="ρ = Δ on O(S³_q)")


def regular_coaction(H: HopfStructure) -> Coaction:
    return Coaction(H.P, H, {x: H.delta_key((x,)) for x in H.P.letters}, name=f"Δ_{H.name}")


def verify_comodule_algebra(rho: Coaction, d: int) -> Report:
    A, H = rho.A, rho.H
    rep = Report(f"comodule algebra {rho.name}")
    r = verify_morphism(rho.morphism)
    rep.checked += r.checked
    for f in r.failures:
        rep.failures.append({"check": "algebra map", "witness": f["relation"],
                             "residual": f["residual"]})
    slots = [A, H.P]
    for w in A.basis(d):
        name = A.format_word(w)
        rw = rho.key(w)
        rep.check("(ρ⊗id)ρ = (id⊗Δ)ρ", name,
                  tensor_map(rw, slots, [rho.key, None]) - tensor_map(rw, slots, [None, H.delta_key]))
        rep.check("(id⊗ε)ρ = id", name,
                  contract_slot(rw, slots, 1, H.counit_key) - A.normal_form_word(w))
    return rep


# -- coinvariants -----------------------------------------------------------

def _combine(vectors, coeffs, parent):
    out = parent.zero()
    for j, c in coeffs.items():
        out = out + c * vectors[j]
    return out


def invariants_in_span(vectors, act, unit_tensor):
    """Basis of ``{x ∈ span(vectors) : act(x) = unit_tensor(x)}``.

    ``vectors`` must be linearly independent; ``act`` and ``unit_tensor`` are
    linear maps given on single vectors.
    """
    rows = {}
    for j, v in enumerate(vectors):
        diff = act(v) - unit_tensor(v)
        for k, c in diff.terms.items():
            rows.setdefault(k, {})[j] = c
    keys = sorted(rows, key=repr)
    null = linalg.nullspace([rows[k] for k in keys], list(range(len(vectors))))
    if not vectors:
        return []
    parent = vectors[0].parent
    return [_combine(vectors, vec, parent) for vec in null]


def coinvariants(rho: Coaction, d: int):
    """Basis (normal-form elements) of ``{a : ρ(a) = a ⊗ 1}`` in degree ≤ d."""
    A, H = rho.A, rho.H
    one = H.P.one()
    vectors = [A.normal_form_word(w) for w in A.basis(d)]
    return invariants_in_span(vectors, rho, lambda x: tensor(x, one))


def in_span(x: Element, vectors) -> bool:
    return linalg.in_span([v.terms for v in vectors], x.terms)


def span_rank(vectors) -> int:
    cols = {}
    for j, v in enumerate(vectors):
        for k, c in v.terms.items():
            cols.setdefault(k, {})[j] = c
    return linalg.rank(list(cols.values()))


def subalgebra_products(gens, d: int, star_closed=True):
    """All products of ``gens`` (and their stars) of total degree ≤ d, starting with 1."""
    pool = list(gens)
    if star_closed:
        pool += [g.star() for g in gens]
    parent = pool[0].parent
    degs = [max(g.degree(), 1) for g in pool]
    out = [parent.one()]
    frontier = [(parent.one(), 0)]
    while frontier:
        nxt = []
        for x, deg in frontier:
            for g, dg in zip(pool, degs):
                if deg + dg <= d:
                    y = x * g
                    out.append(y)
                    nxt.append((y, deg + dg))
        frontier = nxt
    return out


def subalgebra_membership(x: Element, gens, d: int, star_closed=True) -> bool:
    if x.degree() > d:
        raise ValueError("element degree exceeds the bound")
    return in_span(x, subalgebra_products(gens, d, star_closed))


# -- cotensor products --------------------------------------------------------

class Cotensor:
    """The cotensor product ``Ā □_H̄ H`` inside ``Ā ⊗ H``.

    ``rho`` is the right H̄-coaction on Ā and ``pi: H → H̄`` a Hopf map; H is
    a left H̄-comodule via ``(π⊗id)Δ``.
    """

    def __init__(self, rho: Coaction, pi: HopfMap):
        if rho.H is not pi.target:
            raise ValueError("coaction and Hopf map disagree on H̄")
        self.rho = rho
        self.pi = pi
        self.A = rho.A
        self.Hb = pi.target
        self.H = pi.source
        self.AH = TensorAlgebra((self.A, self.H.P))

    def _left_coaction_key(self, h):
        # (π ⊗ id) Δ(h)
        return tensor_map(self.H.delta_key(h), [self.H.P, self.H.P], [self.pi.key, None])

    def defect(self, x: Element) -> Element:
        """``(ρ̄⊗id)x − (id⊗(π⊗id)Δ)x``; zero exactly on cotensor members."""
        slots = [self.A, self.H.P]
        return (tensor_map(x, slots, [self.rho.key, None])
                - tensor_map(x, slots, [None, self._left_coaction_key]))

    def contains(self, x: Element) -> bool:
        return not self.defect(x)

    def basis(self, dA: int, dH: int):
        """Basis of the cotensor product within the bidegree budget (dA, dH)."""
        A, HP = self.A, self.H.P
        vectors = [self.AH.element({(a, h): Laurent.coerce(1)})
                   for a in A.basis(dA) for h in HP.basis(dH)]
        rows = {}
        for j, v in enumerate(vectors):
            for k, c in self.defect(v).terms.items():
                rows.setdefault(k, {})[j] = c
        keys = sorted(rows, key=repr)
        null = linalg.nullspace([rows[k] for k in keys], list(range(len(vectors))))
        return [_combine(vectors, vec, self.AH) for vec in null]

    def prolonged_coaction(self, x: Element) -> Element:
        """``id ⊗ Δ_H`` on ``Ā ⊗ H``."""
        return tensor_map(x, [self.A, self.H.P], [None, self.H.delta_key])

    def comodule(self) -> ComoduleAlgebra:
        """The prolonged comodule algebra with coaction ``id ⊗ Δ_H``."""
        A, HP, H = self.A, self.H.P, self.H
        return ComoduleAlgebra(
            self.AH, H, lambda k: tensor(A.normal_form_word(k[0]), H.delta_key(k[1])),
            f"{A.name}□{H.name}", origin=self)

    def defect_key(self, k) -> Element:
        return self.defect(self.AH.element({k: Laurent.coerce(1)}))

    def coinvariants(self, dA: int, dH: int):
        one = self.H.P.one()
        return invariants_in_span(self.basis(dA, dH), self.prolonged_coaction,
                                  lambda x: tensor(x, one))

    def element(self, a: Element, h: Element) -> Element:
        return tensor(a, h)


def cotensor_basis(rho: Coaction, pi: HopfMap, bidegree):
    return Cotensor(rho, pi).basis(*bidegree)


def cotensor_membership(x: Element, rho: Coaction, pi: HopfMap) -> bool:
    return Cotensor(rho, pi).contains(x)


def check_coinvariant_iso(rho: Coaction, pi: HopfMap, dA: int, dH: int) -> Report:
    """Coinvariants of Ā□H under id⊗Δ equal {b⊗1 : b ∈ Ā^{co H̄}} (degree-bounded)."""
    C = Cotensor(rho, pi)
    rep = Report(f"coinvariants of {rho.A.name}□{pi.source.name}")
    prolonged = C.coinvariants(dA, dH)
    one = pi.source.P.one()
    base = [tensor(b, one) for b in coinvariants(rho, dA)]
    rep.check("dimension", f"{len(prolonged)} vs {len(base)}", len(prolonged) - len(base))
    both = span_rank(prolonged + base)
    rep.check("same span", f"rank {both}", both - len(base))
    return rep


# -- commutative H: A ⊗ coH̄H ≅ A □ H ------------------------------------------------

def _require_commutative(H: HopfStructure):
    if not H.is_commutative():
        raise ValueError(f"κ needs a commutative Hopf algebra, {H.name} is not")


def kappa(x: Element, rho: Coaction) -> Element:
    """``a ⊗ h ↦ a_(0) ⊗ a_(1) h`` for the H-coaction ``rho``."""
    H = rho.H
    _require_commutative(H)
    A = rho.A
    AH = TensorAlgebra((A, H.P))
    out = AH.zero()
    for (a, h), c in x.terms.items():
        r = rho.key(a)
        out = out + c * (r * tensor(A.one(), H.P.normal_form_word(h)))
    return out


def kappa_inv(x: Element, rho: Coaction) -> Element:
    """``Σ a ⊗ h ↦ a_(0) ⊗ S(a_(1)) h``."""
    H = rho.H
    _require_commutative(H)
    A = rho.A
    slots = [A, H.P]
    out = TensorAlgebra((A, H.P)).zero()
    for (a, h), c in x.terms.items():
        r = tensor_map(rho.key(a), slots, [None, H.antipode_key])
        out = out + c * (r * tensor(A.one(), H.P.normal_form_word(h)))
    return out


def left_coinvariant_words(pi: HopfMap, d: int):
    """Basis of ``{h : (π⊗id)Δ(h) = 1⊗h}`` among H-elements of degree ≤ d."""
    H = pi.source
    one = pi.target.P.one()
    vectors = [H.P.normal_form_word(w) for w in H.P.basis(d)]
    act = lambda h: tensor_map(H.coproduct(h), [H.P, H.P], [pi.key, None])  # noqa: E731
    return invariants_in_span(vectors, act, lambda h: tensor(one, h))


def random_tensor(A: Presentation, hs, dA: int, rng: random.Random, terms=3):
    """Random element of ``A ⊗ span(hs)`` with small Laurent coefficients."""
    words = A.basis(dA)
    AH = TensorAlgebra((A, hs[0].parent))
    out = AH.zero()
    for _ in range(terms):
        a = A.normal_form_word(rng.choice(words))
        h = rng.choice(hs)
        c = Laurent.monomial(rng.choice([-2, -1, 1, 2]), rng.randint(-2, 2))
        out = out + c * tensor(a, h)
    return out


def kappa_roundtrip_report(rho: Coaction, pi: HopfMap, d: int, trials=50, seed=0) -> Report:
    """κ⁻¹∘κ = id, κ∘κ⁻¹ = id on its image, κ multiplicative and landing in the cotensor product."""
    rng = random.Random(seed)
    rep = Report(f"κ for {rho.A.name}, {pi.name}")
    C = Cotensor(rho.pushforward(pi), pi)
    hs = left_coinvariant_words(pi, d)
    xs = [random_tensor(rho.A, hs, d, rng) for _ in range(trials)]
    for i, x in enumerate(xs):
        kx = kappa(x, rho)
        rep.check("κ lands in A□H", f"sample {i}", C.defect(kx))
        rep.check("κ⁻¹∘κ = id", f"sample {i}", kappa_inv(kx, rho) - x)
        rep.check("κ∘κ⁻¹ = id", f"sample {i}", kappa(kappa_inv(kx, rho), rho) - kx)
    for i, (x, y) in enumerate(itertools.islice(zip(xs, xs[1:]), 10)):
        rep.check("κ multiplicative", f"pair {i}", kappa(x * y, rho) - kappa(x, rho) * kappa(y, rho))
    return rep

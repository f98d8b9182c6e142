"""Strong connections, cleaving maps, crossed products, prolongation and Φ.

Everything here is exact: maps are evaluated on normal keys and compared
after normalisation.  Connections are checked on the degree-bounded basis of
the structure Hopf algebra; since every axiom is linear in h this covers the
whole truncation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .comod import (ComoduleAlgebra, Coaction, Cotensor, left_coinvariant_words, span_rank,
                    sphere_z2_coaction)
from .hopf import (HopfMap, HopfStructure, LinearMap, Report, convolution_inverse_report,
                   hopf_algebra, su2_sphere_maps)
from .ncalg import (Element, TensorAlgebra, algebra_on, load_presentation, multiply_slots,
                    parse_element, permute_slots, solve_right_inverse, tensor, tensor_map)
from .ncalg.algebra import split_key
from .ncalg.morphism import AlgebraMorphism, verify_morphism
from .ncalg.probe import random_element
from .ncalg.scalars import ONE, Laurent, qpow


def _unit(M, k) -> Element:
    return M.element({k: ONE})


# -- strong connections ----------------------------------------------------------

class StrongConnection:
    """``ℓ: H → M ⊗ M`` given on normal keys of H (closed rule or table)."""

    def __init__(self, comodule: ComoduleAlgebra, value_key, name="ℓ"):
        self.comodule = comodule
        self.H = comodule.H
        self.M = comodule.M
        self.MM = algebra_on(self.M.legs * 2)
        self.name = name
        self._map = LinearMap(self.H.P, self.MM, value_key, name)

    def key(self, w) -> Element:
        return self._map.on_key(w)

    def __call__(self, h) -> Element:
        if isinstance(h, str):
            h = parse_element(h, self.H.P)
        return self._map(h)

    def basis(self, d: int):
        return self.H.P.basis(d)

    def __repr__(self):
        return f"<StrongConnection {self.name} on {self.comodule.name}>"


def verify_strong_connection(ell: StrongConnection, d: int) -> Report:
    """The four axioms on every basis element of H of degree ≤ d."""
    H, M, rho = ell.H, ell.M, ell.comodule
    HP = H.P
    rep = Report(f"strong connection {ell.name} on {rho.name}")
    MM = [M, M]
    rep.check("ℓ(1) = 1⊗1", "1", ell.key(HP.unit_key()) - ell.MM.one())
    for w in ell.basis(d):
        name = HP.format_word(w)
        lw = ell.key(w)
        rep.check("μ∘ℓ = ηε", name, multiply_slots(lw, MM, 0) - H.counit_key(w) * M.one())
        dh = H.delta_key(w)
        right_l = tensor_map(dh, [HP, HP], [ell.key, None])
        right_r = tensor_map(lw, MM, [None, rho.coact_key])
        rep.check("(ℓ⊗id)Δ = (id⊗ρ)ℓ", name, right_l - right_r)
        left_l = tensor_map(dh, [HP, HP], [H.antipode_key, ell.key])
        left_r = permute_slots(tensor_map(lw, MM, [rho.coact_key, None]), [M, HP, M], (1, 0, 2))
        rep.check("(S⊗ℓ)Δ = (σ⊗id)(ρ⊗id)ℓ", name, left_l - left_r)
    return rep


def galois_report(ell: StrongConnection, d: int) -> Report:
    """``ℓ(h)¹ ℓ(h)²₍₀₎ ⊗ ℓ(h)²₍₁₎ = 1 ⊗ h``: the canonical map undoes ℓ."""
    H, M, rho = ell.H, ell.M, ell.comodule
    rep = Report(f"can∘ℓ for {ell.name}")
    for w in ell.basis(d):
        lhs = multiply_slots(tensor_map(ell.key(w), [M, M], [None, rho.coact_key]), [M, M, H.P], 0)
        rep.check("can∘ℓ(h) = 1⊗h", H.P.format_word(w), lhs - tensor(M.one(), H.P.normal_form_word(w)))
    return rep


def galois_check(ell: StrongConnection, d: int) -> bool:
    return galois_report(ell, d).ok


def sphere_connection(m: int, coaction: Coaction | None = None) -> StrongConnection:
    """``ℓ(1) = 1⊗1``, ``ℓ(u) = Σ z_i ⊗ z_i*`` on O(S^m_q) over O(ℤ₂)."""
    rho = coaction or sphere_z2_coaction(m)
    A, HP = rho.A, rho.H.P
    lu = sum((tensor(A.gen(g), A.gen(g).star()) for g in A.generators[1:]),
             tensor(A.gen(A.generators[0]), A.gen(A.generators[0]).star()))
    table = {(): tensor(A.one(), A.one()), (HP.letter("u"),): lu}
    return StrongConnection(rho.comodule(), table.__getitem__, f"Σz_i⊗z_i* on {A.name}")


def truncated_connection(m: int = 2) -> StrongConnection:
    """``ℓ(u) = z_0 ⊗ z_0*`` only; fails μ∘ℓ = ηε (negative control)."""
    rho = sphere_z2_coaction(m)
    A, HP = rho.A, rho.H.P
    z0 = A.gen("z0")
    table = {(): tensor(A.one(), A.one()), (HP.letter("u"),): tensor(z0, z0.star())}
    return StrongConnection(rho.comodule(), table.__getitem__, f"z0⊗z0* on {A.name}")


def grouplike_connection(comodule: ComoduleAlgebra, values: dict, name="ℓ") -> StrongConnection:
    """Extend ℓ from grouplike generators by ``ℓ(gw) = ℓ(g)¹ℓ(w)¹ ⊗ ℓ(w)²ℓ(g)²``.

    ``values`` maps H-letters to ℓ(letter) (elements of M⊗M).  Only valid when
    the letters are grouplike and every normal word is a product of them.
    """
    M = comodule.M
    MM = algebra_on(M.legs * 2)

    def value(w):
        if not w:
            return MM.one()
        head, rest = values[w[0]], value(w[1:])
        out = MM.zero()
        for k1, c1 in head.terms.items():
            g1, g2 = split_key(k1, MM, [M, M])
            for k2, c2 in rest.terms.items():
                w1, w2 = split_key(k2, MM, [M, M])
                out = out + (c1 * c2) * tensor(_unit(M, g1) * _unit(M, w1), _unit(M, w2) * _unit(M, g2))
        return out

    return StrongConnection(comodule, value, name)


def sphere_u1_connection(m: int) -> StrongConnection:
    """The odd-sphere U(1) connection built from ``ℓ(v) = Σ q^(-2i) z_i*⊗z_i``, ``ℓ(v*) = Σ z_i⊗z_i*``."""
    from .comod import sphere_u1_coaction
    rho = sphere_u1_coaction(m)
    A, HP = rho.A, rho.H.P
    gens = [A.gen(g) for g in A.generators]
    lv = sum((qpow(-2 * i) * tensor(z.star(), z) for i, z in enumerate(gens)), TensorAlgebra((A, A)).zero())
    lvs = sum((tensor(z, z.star()) for z in gens), TensorAlgebra((A, A)).zero())
    v = HP.letter("v")
    return grouplike_connection(rho.comodule(), {v: lv, v ^ 1: lvs}, f"U(1) connection on {A.name}")


# -- cleaving maps -----------------------------------------------------------------

@dataclass
class CleavingData:
    """A unital, convolution-invertible map ``f: H → M`` colinear along ``π: H → H̄``.

    ``comodule`` is M with its H̄-coaction; ``pi`` is None when H̄ = H.
    """
    f: LinearMap
    f_inv: LinearMap
    H: HopfStructure
    comodule: ComoduleAlgebra
    pi: HopfMap | None = None
    algebra_map: bool = False
    name: str = "f"

    def pi_key(self, w) -> Element:
        return self.pi.key(w) if self.pi is not None else self.H.P.normal_form_word(w)

    def verify(self, d: int) -> Report:
        H, M = self.H, self.comodule.M
        rep = Report(f"cleaving {self.name}")
        rep.check("f(1) = 1", "1", self.f.on_key(()) - M.one())
        rep.merge(convolution_inverse_report(self.f, self.f_inv, H, d))
        for w in H.P.basis(d):
            lhs = self.comodule.coact(self.f.on_key(w))
            rhs = tensor_map(H.delta_key(w), [H.P, H.P], [self.f.on_key, self.pi_key])
            rep.check("ρ∘f = (f⊗π)Δ", H.P.format_word(w), lhs - rhs)
        return rep


def f2_cleaving() -> CleavingData:
    """f₂: O(SU_q(2)) → O(S²_q) (a ↦ z0, b ↦ z1), with f₂⁻¹ = f₂∘S."""
    H = hopf_algebra("su2")
    f2 = su2_sphere_maps()["f2"]
    f = LinearMap.from_morphism(f2, "f₂")
    f_inv = LinearMap(H.P, f2.target, lambda k: f2(H.antipode_key(k)), "f₂∘S")
    from .hopf import bundled_hopf_maps
    return CleavingData(f, f_inv, H, sphere_z2_coaction(2).comodule(),
                        bundled_hopf_maps()["pi"], algebra_map=True, name="f₂")


def s3_identity_cleaving() -> CleavingData:
    """j = id: O(SU_q(2)) ≅ O(S³_q), with j⁻¹ = S."""
    from .comod import s3_su2_coaction
    H = hopf_algebra("su2")
    to_s3 = su2_sphere_maps()["to_s3"]
    f = LinearMap.from_morphism(to_s3, "j")
    f_inv = LinearMap(H.P, to_s3.target, lambda k: to_s3(H.antipode_key(k)), "j∘S")
    return CleavingData(f, f_inv, H, s3_su2_coaction().comodule(), None, algebra_map=True,
                        name="id")


def z2_identity_cleaving() -> CleavingData:
    """O(ℤ₂) over itself with the regular coaction and j = id."""
    from .comod import regular_coaction
    H = hopf_algebra("z2")
    return CleavingData(H.id_map(), H.antipode_map(), H, regular_coaction(H).comodule(),
                        None, algebra_map=True, name="id_z2")


def connection_from_cleaving(j: CleavingData, d: int | None = None) -> StrongConnection:
    """``ℓ = (j⁻¹ ⊗ j)∘Δ`` for an H-cleaving (no reduction)."""
    if j.pi is not None:
        raise ValueError("connection_from_cleaving needs an H-colinear cleaving; use "
                         "connection_from_section or theta_cleaving for reductions")
    if d is not None:
        rep = j.verify(d)
        if not rep.ok:
            raise ValueError(f"cleaving fails verification: {rep.failures[0]}")
    H = j.H
    return StrongConnection(
        j.comodule, lambda w: tensor_map(H.delta_key(w), [H.P, H.P], [j.f_inv.on_key, j.f.on_key]),
        f"(j⁻¹⊗j)Δ for {j.name}")


def connection_from_section(f: CleavingData, iota: LinearMap) -> StrongConnection:
    """``h ↦ f⁻¹(ι(h)₍₁₎) ⊗ f(ι(h)₍₂₎)`` over H̄."""
    H = f.H
    Hb = f.comodule.H

    def value(w):
        return tensor_map(H.coproduct(iota.on_key(w)), [H.P, H.P], [f.f_inv.on_key, f.f.on_key])

    ell = StrongConnection(f.comodule, value, f"section connection via {iota.name}")
    if Hb is not f.pi.target:  # pragma: no cover - guarded by construction
        raise ValueError("section does not match the reduction")
    return ell


def invcov_report(f: CleavingData, d: int) -> Report:
    """``f⁻¹(h₍₂₎) ⊗ S(π(h₍₁₎)) = ρ̄(f⁻¹(h))`` on the degree-d basis of H."""
    H, M = f.H, f.comodule.M
    Hb = f.comodule.H
    rep = Report(f"covariance of {f.f_inv.name}")
    for w in H.P.basis(d):
        lhs = tensor_map(H.delta_key(w), [H.P, H.P],
                         [lambda k: Hb.antipode(f.pi_key(k)), f.f_inv.on_key])
        lhs = permute_slots(lhs, [Hb.P, M], (1, 0))
        rep.check("f⁻¹(h₂)⊗S(π(h₁)) = ρ̄(f⁻¹(h))", H.P.format_word(w),
                  lhs - f.comodule.coact(f.f_inv.on_key(w)))
    return rep


def invcov_check(f: CleavingData, d: int) -> bool:
    return invcov_report(f, d).ok


# -- θ, crossed and smash products --------------------------------------------------

def _twist(x: Element, f: CleavingData, g: LinearMap) -> Element:
    # a ⊗ h ↦ a g(h₍₁₎) ⊗ h₍₂₎
    H, A = f.H, f.comodule.M
    inner = lambda h: tensor_map(H.delta_key(h), [H.P, H.P], [g.on_key, None])  # noqa: E731
    return multiply_slots(tensor_map(x, [A, H.P], [None, inner]), [A, A, H.P], 0)


def theta(x: Element, f: CleavingData) -> Element:
    """``a⊗h ↦ a f⁻¹(h₍₁₎) ⊗ h₍₂₎``: Ā□H → B⊗H."""
    return _twist(x, f, f.f_inv)


def theta_inv(x: Element, f: CleavingData) -> Element:
    """``b⊗h ↦ b f(h₍₁₎) ⊗ h₍₂₎``: B⊗H → Ā□H."""
    return _twist(x, f, f.f)


def first_leg_defect(x: Element, f: CleavingData) -> Element:
    """Zero iff every first leg of ``x ∈ Ā⊗H`` is H̄-coinvariant."""
    A, HP = f.comodule.M, f.H.P
    one = f.comodule.H.P.one()
    return (tensor_map(x, [A, HP], [f.comodule.coact_key, None])
            - tensor_map(x, [A, HP], [lambda a: tensor(_unit(A, a), one), None]))


class CrossedProduct:
    """The product on B⊗H transported along θ; cocycle data from a cleaving f.

    ``(b⊗h)(c⊗g) = b f(h₍₁₎) c f(g₍₁₎) f⁻¹(h₍₂₎g₍₂₎) ⊗ h₍₃₎g₍₃₎``, evaluated as
    ``Σ (b f(h₁) c f(g₁) ⊗ 1)·(f⁻¹⊗id)Δ(h₂g₂)`` using coassociativity.
    """

    def __init__(self, f: CleavingData):
        self.f = f
        self.H = f.H
        self.A = f.comodule.M
        self.AH = TensorAlgebra((self.A, self.H.P))
        self._tail = {}

    def _tail_of(self, hr, gr):
        hit = self._tail.get((hr, gr))
        if hit is None:
            H = self.H
            prod = H.P.normal_form_word(hr) * H.P.normal_form_word(gr)
            hit = tensor_map(H.coproduct(prod), [H.P, H.P], [self.f.f_inv.on_key, None])
            self._tail[(hr, gr)] = hit
        return hit

    def multiply(self, x: Element, y: Element) -> Element:
        A, H, f = self.A, self.H, self.f.f
        # collect b f(h₁) c f(g₁) per (h₂, g₂) before multiplying by the tail
        heads = {}
        for (b, h), c1 in x.terms.items():
            dh = H.delta_key(h).terms.items()
            for (c, g), c2 in y.terms.items():
                dg = H.delta_key(g).terms.items()
                for (h1, hr), d1 in dh:
                    left_b = _unit(A, b) * f.on_key(h1) * _unit(A, c)
                    if not left_b:
                        continue
                    for (g1, gr), d2 in dg:
                        head = (c1 * c2 * d1 * d2) * (left_b * f.on_key(g1))
                        prev = heads.get((hr, gr))
                        heads[(hr, gr)] = head if prev is None else prev + head
        one = H.P.one()
        out = self.AH.zero()
        for (hr, gr), head in sorted(heads.items()):
            if head:
                out = out + tensor(head, one) * self._tail_of(hr, gr)
        return out

    def one(self) -> Element:
        return self.AH.one()


def crossed_multiply(x: Element, y: Element, f: CleavingData) -> Element:
    return CrossedProduct(f).multiply(x, y)


def smash_action(h: Element, x: Element, f: CleavingData) -> Element:
    """``h ▷ x = f(h₍₁₎) x f(S(h₍₂₎))`` for an algebra-map cleaving f."""
    H = f.H
    fS = lambda k: f.f(H.antipode_key(k))  # noqa: E731
    out = x.parent.zero()
    for (k1, k2), c in H.coproduct(h).terms.items():
        out = out + c * (f.f.on_key(k1) * x * fS(k2))
    return out


def smash_multiply(x: Element, y: Element, f: CleavingData) -> Element:
    """``(b⊗h)(c⊗g) = b (h₍₁₎▷c) ⊗ h₍₂₎ g``."""
    A, H = f.comodule.M, f.H
    out = TensorAlgebra((A, H.P)).zero()
    for (b, h), c1 in x.terms.items():
        for (c, g), c2 in y.terms.items():
            for (h1, h2), d in H.delta_key(h).terms.items():
                act = smash_action(H.P.normal_form_word(h1), _unit(A, c), f)
                out = out + (c1 * c2 * d) * tensor(_unit(A, b) * act,
                                                   H.P.normal_form_word(h2) * H.P.normal_form_word(g))
    return out


# P, R, T generate O(ℝℙ²_q); the expected actions of a and b on them
RP2_GENERATORS = {"P": "q^-2 z1^2", "R": "z0^2", "T": "q^-1 z1 z0"}
SMASH_FORMULAS = [
    ("a", "P", "q^2 P + q^2 (1 - q^2) P^2"),
    ("b", "P", "q (1 - q^2) P T"),
    ("a", "R", "R + q^4 (1 - q^2) P R"),
    ("b", "R", "q (1 - q^2) T R"),
    ("a", "T", "q T + q^3 (1 - q^2) P T"),
    ("b", "T", "(1 - q^2) T^2"),
]


def rp2_generators():
    A = load_presentation("s2")
    return {k: parse_element(v, A) for k, v in RP2_GENERATORS.items()}


def _in_rp2(text: str) -> Element:
    # evaluate an expression in P, R, T inside O(S²_q)
    A = load_presentation("s2")
    src = load_presentation("rp2")
    gens = rp2_generators()
    phi = AlgebraMorphism(src, A, {g: gens[g] for g in ("P", "R", "T")}, name="rp2→s2")
    return phi(parse_element(text, src))


def rp2_corpus_report() -> Report:
    """The defining relations of O(ℝℙ²_q) hold for P, R, T inside O(S²_q)."""
    A, src = load_presentation("s2"), load_presentation("rp2")
    gens = rp2_generators()
    phi = AlgebraMorphism(src, A, {g: gens[g] for g in ("P", "R", "T")}, name="rp2→s2")
    rep = Report("O(ℝℙ²_q) relations in O(S²_q)")
    for text, free in src.relations:
        rep.check("relation", text, phi.on_free(free))
    rep.check("relation count", f"{len(src.relations)} relations", len(src.relations) - 11)
    rho = sphere_z2_coaction(2)
    for g, x in gens.items():
        rep.check("generator is ℤ₂-invariant", g, rho(x) - tensor(x, rho.H.P.one()))
    return rep


def smash_report(f: CleavingData | None = None, d: int = 2, seed: int = 0) -> Report:
    """The six action formulas, the measuring law and unitality."""
    f = f or f2_cleaving()
    H, A = f.H, f.comodule.M
    rep = Report("smash action on O(ℝℙ²_q)")
    gens = rp2_generators()
    for h, x, rhs in SMASH_FORMULAS:
        rep.check(f"{h}▷{x}", f"{h}▷{x} = {rhs}",
                  smash_action(H.P.gen(h), gens[x], f) - _in_rp2(rhs))
    xs = list(gens.values()) + [g.star() for g in gens.values()]
    for x in xs:
        rep.check("1▷x = x", str(x), smash_action(H.P.one(), x, f) - x)
    rng = random.Random(seed)
    for w in H.P.basis(d):
        h = H.P.normal_form_word(w)
        rep.check("h▷1 = ε(h)1", H.P.format_word(w), smash_action(h, A.one(), f) - H.counit_key(w) * A.one())
        x, y = rng.choice(xs), rng.choice(xs)
        lhs = smash_action(h, x * y, f)
        rhs = A.zero()
        for (k1, k2), c in H.delta_key(w).terms.items():
            rhs = rhs + c * (smash_action(H.P.normal_form_word(k1), x, f)
                             * smash_action(H.P.normal_form_word(k2), y, f))
        rep.check("h▷(xy) = (h₁▷x)(h₂▷y)", f"{H.P.format_word(w)} on {x}·{y}", lhs - rhs)
    return rep


def random_b_tensor_h(f: CleavingData, rng: random.Random, dB=2, dH=2, terms=2) -> Element:
    """Random element of B⊗H with B = even part of Ā (the ℤ₂-coinvariants)."""
    A, H = f.comodule.M, f.H
    out = TensorAlgebra((A, H.P)).zero()
    for _ in range(terms):
        b = random_element(A, dB, rng, terms=2, parity=0)
        h = random_element(H.P, dH, rng, terms=1)
        out = out + tensor(b, h)
    return out


def random_cotensor_element(C: Cotensor, basis, rng: random.Random, terms=3) -> Element:
    out = C.AH.zero()
    for _ in range(terms):
        c = Laurent.monomial(rng.choice([-2, -1, 1, 2, 3]), rng.randint(-2, 2))
        out = out + c * rng.choice(basis)
    return out


def cleft_report(f: CleavingData | None = None, d: int = 3, trials: int = 30, seed: int = 0,
                 bidegree=(3, 3)) -> Report:
    """Cleaving checks, the covariance identity, θ round trips and crossed-product associativity."""
    f = f or f2_cleaving()
    rep = Report(f"cleft {f.name}")
    rep.merge(f.verify(d))
    rep.merge(invcov_report(f, d))
    C = Cotensor(f.comodule.origin, f.pi)
    basis = C.basis(*bidegree)
    rng = random.Random(seed)
    for i in range(trials):
        x = random_cotensor_element(C, basis, rng)
        tx = theta(x, f)
        rep.check("θ lands in B⊗H", f"sample {i}", first_leg_defect(tx, f))
        rep.check("θ⁻¹∘θ = id", f"sample {i}", theta_inv(tx, f) - x)
        y = random_b_tensor_h(f, rng)
        rep.check("θ∘θ⁻¹ = id", f"sample {i}", theta(theta_inv(y, f), f) - y)
    X = CrossedProduct(f)
    for i in range(trials):
        x, y, z = (random_b_tensor_h(f, rng, dB=2, dH=1, terms=2) for _ in range(3))
        xy = X.multiply(x, y)
        rep.check("associativity", f"triple {i}", X.multiply(xy, z) - X.multiply(x, X.multiply(y, z)))
        rep.check("left unit", f"triple {i}", X.multiply(X.one(), x) - x)
        rep.check("right unit", f"triple {i}", X.multiply(x, X.one()) - x)
        rep.check("θ transports the product", f"triple {i}",
                  xy - theta(theta_inv(x, f) * theta_inv(y, f), f))
        if f.algebra_map:
            rep.check("crossed = smash", f"triple {i}", xy - smash_multiply(x, y, f))
    return rep


# -- prolongation --------------------------------------------------------------------

def prolong_connection(lbar: StrongConnection, pi: HopfMap) -> StrongConnection:
    """``ℓ(h) = ℓ̄(π(h₍₂₎))¹ ⊗ S(h₍₁₎) ⊗ ℓ̄(π(h₍₂₎))² ⊗ h₍₃₎`` on Ā□_H̄ H."""
    rho = lbar.comodule.origin
    if not isinstance(rho, Coaction):
        raise TypeError("prolongation starts from a connection on a coaction")
    C = Cotensor(rho, pi)
    H, A = pi.source, rho.A
    HP = H.P

    def value(w):
        d2 = H.iterated_coproduct(HP.normal_form_word(w), 2)
        y = tensor_map(d2, [HP, HP, HP], [H.antipode_key, lambda k: lbar(pi.key(k)), None])
        return permute_slots(y, [HP, A, A, HP], (1, 0, 2, 3))

    ell = StrongConnection(C.comodule(), value, f"prolonged {lbar.name} along {pi.name}")
    ell.cotensor = C
    return ell


def cotensor_halves_report(ell: StrongConnection, d: int) -> Report:
    """Each tensor half of ℓ(h) lies in Ā□H."""
    C = ell.comodule.origin
    rep = Report(f"cotensor membership of {ell.name}")
    AH = C.AH
    for w in ell.basis(d):
        lw = ell.key(w)
        name = ell.H.P.format_word(w)
        rep.check("first half in Ā□H", name, tensor_map(lw, [AH, AH], [C.defect_key, None]))
        rep.check("second half in Ā□H", name, tensor_map(lw, [AH, AH], [None, C.defect_key]))
    return rep


def theta_cleaving(f: CleavingData) -> CleavingData:
    """The H-cleaving ``h ↦ θ⁻¹(1⊗h) = f(h₍₁₎) ⊗ h₍₂₎`` of Ā□H."""
    C = Cotensor(f.comodule.origin, f.pi)
    H, A = f.H, f.comodule.M
    HP = H.P
    j = LinearMap(HP, C.AH, lambda w: tensor_map(H.delta_key(w), [HP, HP], [f.f.on_key, None]),
                  f"θ⁻¹(1⊗·) for {f.name}")

    def inv(w):
        y = tensor_map(H.delta_key(w), [HP, HP], [H.antipode_key, f.f_inv.on_key])
        return permute_slots(y, [HP, A], (1, 0))

    j_inv = LinearMap(HP, C.AH, inv, f"j⁻¹ for {f.name}")
    return CleavingData(j, j_inv, H, C.comodule(), None, algebra_map=False,
                        name=f"θ-cleaving of {f.name}")


def cleft_cotensor_connection(f: CleavingData) -> StrongConnection:
    """``ℓ(h) = f⁻¹(h₍₂₎) ⊗ S(h₍₁₎) ⊗ f(h₍₃₎) ⊗ h₍₄₎`` on Ā□H."""
    C = Cotensor(f.comodule.origin, f.pi)
    H, A = f.H, f.comodule.M
    HP = H.P

    def value(w):
        d3 = H.iterated_coproduct(HP.normal_form_word(w), 3)
        y = tensor_map(d3, [HP] * 4, [H.antipode_key, f.f_inv.on_key, f.f.on_key, None])
        return permute_slots(y, [HP, A, A, HP], (1, 0, 2, 3))

    ell = StrongConnection(C.comodule(), value, f"cleft connection for {f.name}")
    ell.cotensor = C
    return ell


PROLONGATION_PAIRS = [(2, "u1"), (3, "u1"), (2, "su2"), (3, "su2")]


def prolongation_report(d: int = 3) -> Report:
    from .hopf import bundled_hopf_maps
    maps = bundled_hopf_maps()
    rep = Report("prolongations of Σz_i⊗z_i*")
    for m, group in PROLONGATION_PAIRS:
        pi = maps["pi2"] if group == "u1" else maps["pi"]
        ell = prolong_connection(sphere_connection(m), pi)
        rep.merge(verify_strong_connection(ell, d))
        rep.merge(cotensor_halves_report(ell, d))
    return rep


def section_connection_report(d: int = 4) -> Report:
    """The connection from f₂ and ι(u) = a passes and differs from Σz_i⊗z_i*."""
    from .hopf import bundled_hopf_maps
    f = f2_cleaving()
    ell = connection_from_section(f, bundled_hopf_maps()["iota"])
    rep = Report("connection from a section")
    rep.merge(verify_strong_connection(ell, d))
    rep.merge(galois_report(ell, d))
    A = f.comodule.M
    expected = tensor(A.gen("z0").star(), A.gen("z0")) + parse_element("q^-2", A).scalar_part() \
        * tensor(A.gen("z1"), A.gen("z1"))
    u = (f.comodule.H.P.letter("u"),)
    rep.check("ℓ(u) = z0*⊗z0 + q^-2 z1⊗z1", "u", ell.key(u) - expected)
    diff = ell.key(u) - sphere_connection(2).key(u)
    rep.check("differs from Σz_i⊗z_i*", "u", 0 if diff else "the two connections coincide")
    return rep


# -- Ψ and the Miyashita–Ulbrich action --------------------------------------------------

def left_coinvariant_defect(k: Element, pi: HopfMap) -> Element:
    H = pi.source
    one = pi.target.P.one()
    return tensor_map(H.coproduct(k), [H.P, H.P], [pi.key, None]) - tensor(one, k)


def psi_map(k: Element, f: CleavingData) -> Element:
    """``Ψ(k) = f⁻¹(k₍₁₎) ⊗ k₍₂₎`` for k left H̄-coinvariant."""
    if left_coinvariant_defect(k, f.pi):
        raise ValueError(f"{k} is not left coinvariant under {f.pi.name}")
    H = f.H
    return tensor_map(H.coproduct(k), [H.P, H.P], [f.f_inv.on_key, None])


def mu_action(x: Element, h, ell: StrongConnection) -> Element:
    """``x ◁ h = ℓ(h)¹ x ℓ(h)²``."""
    M = ell.M
    lh = ell(h)
    out = M.zero()
    for key, c in lh.terms.items():
        l1, l2 = split_key(key, lh.parent, [M, M])
        out = out + c * (_unit(M, l1) * x * _unit(M, l2))
    return out


def adjoint_action(k: Element, h: Element, H: HopfStructure) -> Element:
    """``k ◁ h = S(h₍₁₎) k h₍₂₎``."""
    out = H.P.zero()
    for (k1, k2), c in H.coproduct(h).terms.items():
        out = out + c * (H.antipode_key(k1) * k * H.P.normal_form_word(k2))
    return out


def mu_report(f: CleavingData | None = None, dk: int = 4, dh: int = 1, pairs: int = 12,
              seed: int = 0) -> Report:
    """Ψ: coinvariance, centralising B⊗1, multiplicativity, colinearity, MU-equivariance."""
    f = f or f2_cleaving()
    H, A = f.H, f.comodule.M
    HP = H.P
    rep = Report(f"Ψ for {f.name}")
    ks = left_coinvariant_words(f.pi, dk)
    X = CrossedProduct(f)
    ell = cleft_cotensor_connection(f)
    gens = rp2_generators()
    one = HP.one()
    psi_key = lambda w: psi_map(HP.normal_form_word(w), f)  # noqa: E731
    for i, k in enumerate(ks):
        pk = psi_map(k, f)
        name = str(k)
        rep.check("Ψ(k) ∈ B⊗H", name, first_leg_defect(pk, f))
        lhs = tensor_map(pk, [A, HP], [None, H.delta_key])
        rhs = tensor_map(H.coproduct(k), [HP, HP], [psi_key, None])
        rep.check("Ψ right colinear", name, lhs - rhs)
        if k.degree() <= 2:
            for g, b in gens.items():
                bb = tensor(b, one)
                rep.check("Ψ(k) centralises B⊗1", f"{name} vs {g}",
                          X.multiply(pk, bb) - X.multiply(bb, pk))
            for w in HP.basis(dh):
                h = HP.normal_form_word(w)
                lhs = psi_map(adjoint_action(k, h, H), f)
                rhs = theta(mu_action(theta_inv(pk, f), h, ell), f)
                rep.check("Ψ(k◁h) = Ψ(k)◁h", f"{name}, h={HP.format_word(w)}", lhs - rhs)
    rng = random.Random(seed)
    small = [k for k in ks if k.degree() <= 2]
    for i in range(pairs):
        k1, k2 = rng.choice(small), rng.choice(small)
        rep.check("Ψ multiplicative", f"{k1}·{k2}",
                  psi_map(k1 * k2, f) - X.multiply(psi_map(k1, f), psi_map(k2, f)))
    return rep


# -- the presentation A^{2n} and Φ ------------------------------------------------------

def phi_morphism(n: int) -> AlgebraMorphism:
    """``ζ_i ↦ z_i ⊗ v``, ``ξ ↦ 1 ⊗ v*²`` into O(S²ⁿ_q) ⊗ O(U(1))."""
    if n < 1:
        raise ValueError("n must be at least 1")
    src = load_presentation("a2n", n=n)
    S, U = load_presentation("sphere", m=2 * n), load_presentation("u1")
    T = TensorAlgebra((S, U))
    v = U.gen("v")
    images = {f"zeta{i}": tensor(S.gen(f"z{i}"), v) for i in range(n + 1)}
    images["xi"] = tensor(S.one(), v.star() ** 2)
    return AlgebraMorphism(src, T, images, name=f"Φ_{n}")


def phi_iso(x, n: int) -> Element:
    return phi_morphism(n)(x)


def phi_inverse_on_basis(y: Element, n: int) -> Element:
    """Preimage of a cotensor element written in monomials ``z-word ⊗ v^k``."""
    src = load_presentation("a2n", n=n)
    S, U = load_presentation("sphere", m=2 * n), load_presentation("u1")
    v = U.letter("v")
    xi = src.letter("xi")
    out = src.zero()
    for (zw, vw), c in y.terms.items():
        k = sum(1 if l == v else -1 for l in vw)
        letters = [src.letter(S.letter_name(l).replace("z", "zeta")) for l in zw]
        s = sum(-1 if l & 1 else 1 for l in zw)
        if (s - k) % 2:
            raise ValueError(f"{S.format_word(zw)} ⊗ {U.format_word(vw)} is not in the cotensor product")
        m = (s - k) // 2
        tail = (xi,) * m if m >= 0 else (xi ^ 1,) * (-m)
        out = out + c * src.normal_form_word(tuple(letters) + tail)
    return out


def cotensor_monomials(n: int, dA: int, dH: int):
    """``z-word ⊗ v^k`` with |z-word| ≤ dA, |k| ≤ dH and matching parity."""
    S, U = load_presentation("sphere", m=2 * n), load_presentation("u1")
    v = U.gen("v")
    out = []
    for zw in S.basis(dA):
        for k in range(-dH, dH + 1):
            if (len(zw) - k) % 2 == 0:
                out.append(tensor(S.normal_form_word(zw), v ** k if k >= 0 else v.star() ** -k))
    return out


def phi_report(n: int, bidegree=(4, 4)) -> Report:
    phi = phi_morphism(n)
    rep = Report(f"Φ for n={n}")
    r = verify_morphism(phi)
    rep.checked += r.checked
    for fl in r.failures:
        rep.failures.append({"check": "*-morphism", "witness": fl["relation"],
                             "residual": fl["residual"]})
    C = Cotensor(sphere_z2_coaction(2 * n), _pi2())
    gens = phi.source.generators
    for g in gens:
        rep.check("Φ(generator) ∈ cotensor", g, C.defect(phi(phi.source.gen(g))))
    monos = cotensor_monomials(n, *bidegree)
    pre = [phi_inverse_on_basis(y, n) for y in monos]
    images = [phi(x) for x in pre]
    for y, x, im in zip(monos, pre, images):
        rep.check("Φ(Φ⁻¹(y)) = y", str(y), im - y)
    r_img = span_rank(images)
    rep.check("images independent", f"rank {r_img} of {len(pre)}", r_img - len(pre))
    basis = C.basis(*bidegree)
    rep.check("dimension of cotensor truncation", f"{len(basis)} vs {len(pre)}", len(basis) - len(pre))
    both = span_rank(basis + images)
    rep.check("Φ onto cotensor truncation", f"rank {both}", both - len(basis))
    return rep


def _pi2():
    from .hopf import bundled_hopf_maps
    return bundled_hopf_maps()["pi2"]


# -- non-triviality evidence --------------------------------------------------------------

@dataclass
class Evidence:
    algebra: str
    bounded_degree: int
    candidates: list = field(default_factory=list)
    inverses_found: list = field(default_factory=list)
    controls: dict = field(default_factory=dict)
    note: str = ("degree-bounded evidence only: no two-sided inverse of degree ≤ bounded_degree "
                 "exists for the listed odd candidates; this is not a proof of non-triviality")

    @property
    def ok(self):
        return not self.inverses_found and all(self.controls.values())

    def as_dict(self):
        return {"algebra": self.algebra, "bounded_degree": self.bounded_degree,
                "candidates": len(self.candidates), "inverses_found": self.inverses_found,
                "controls": self.controls, "ok": self.ok, "note": self.note}


def control_inverses(D: int = 2) -> dict:
    """Units that must be found: v in O(U(1)), u in O(ℤ₂), 1."""
    out = {}
    for alg, g in (("u1", "v"), ("z2", "u")):
        P = load_presentation(alg)
        out[f"{g} in {P.name}"] = solve_right_inverse(P.gen(g), P, D) is not None
    P = load_presentation("s2")
    out["1 in s2"] = solve_right_inverse(P.one(), P, 0) == P.one()
    return out


def nontriviality_evidence(m: int, D: int = 6, trials: int = 20, seed: int = 0) -> Evidence:
    """Search for inverses of odd elements of O(S^m_q) up to degree D."""
    if m < 2:
        raise ValueError("m must be at least 2")
    A = load_presentation("sphere", m=m)
    rng = random.Random(seed)
    cands = [A.gen(g) for g in A.generators]
    cands += [x.star() for x in cands if x.star() != x]
    cands += [random_element(A, 3, rng, terms=3, parity=1) for _ in range(trials)]
    ev = Evidence(A.name, D, [str(x) for x in cands])
    for x in cands:
        y = solve_right_inverse(x, A, D)
        if y is not None:
            ev.inverses_found.append({"x": str(x), "inverse": str(y)})
    ev.controls = control_inverses()
    return ev


def connections_report(d: int = 4, spheres=range(1, 6)) -> Report:
    rep = Report("sphere connections")
    for m in spheres:
        ell = sphere_connection(m)
        rep.merge(verify_strong_connection(ell, d))
        rep.merge(galois_report(ell, d))
    return rep


__all__ = [
    "StrongConnection", "verify_strong_connection", "galois_report", "galois_check",
    "sphere_connection", "truncated_connection", "grouplike_connection", "sphere_u1_connection",
    "CleavingData", "f2_cleaving", "s3_identity_cleaving", "z2_identity_cleaving",
    "connection_from_cleaving", "connection_from_section", "invcov_report", "invcov_check",
    "theta", "theta_inv", "first_leg_defect", "CrossedProduct", "crossed_multiply",
    "smash_action", "smash_multiply", "rp2_generators", "SMASH_FORMULAS", "smash_report",
    "cleft_report", "rp2_corpus_report", "prolong_connection", "cotensor_halves_report", "theta_cleaving",
    "cleft_cotensor_connection", "prolongation_report", "section_connection_report",
    "psi_map", "mu_action", "adjoint_action", "mu_report", "phi_morphism", "phi_iso",
    "phi_inverse_on_basis", "cotensor_monomials", "phi_report", "Evidence", "control_inverses",
    "nontriviality_evidence", "connections_report",
]

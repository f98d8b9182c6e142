"""Hopf algebra structure maps, convolution, and the Hopf maps between the bundled algebras.

Structure maps are read from the ``coproduct``/``counit``/``antipode``
sections of a presentation file and extended (anti)multiplicatively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .ncalg import (Element, Presentation, TensorAlgebra, load_presentation, multiply_slots,
                    tensor_map)
from .ncalg.algebra import contract_slot
from .ncalg.morphism import AlgebraMorphism, verify_morphism
from .ncalg.parse import element_from_free
from .ncalg.scalars import ZERO, Laurent


class LinearMap:
    """A linear map given on normal keys of ``source``; values are cached."""

    def __init__(self, source, target, on_key, name="f"):
        self.source = source
        self.target = target
        self._on_key = on_key
        self.name = name
        self._cache = {}

    @classmethod
    def from_morphism(cls, phi: AlgebraMorphism, name=None):
        return cls(phi.source, phi.target, phi.on_word, name or phi.name)

    @classmethod
    def from_table(cls, source, target, table: dict, name="f"):
        """``table`` maps normal keys to images; unlisted keys raise KeyError."""
        return cls(source, target, lambda k: table[k], name)

    def on_key(self, k) -> Element:
        hit = self._cache.get(k)
        if hit is None:
            hit = self._on_key(k)
            if not isinstance(hit, Element):
                hit = self.target.scalar(hit)
            self._cache[k] = hit
        return hit

    def __call__(self, x) -> Element:
        if not isinstance(x, Element):
            x = self.source.scalar(x)
        out = {}
        for k, c in x.terms.items():
            for k2, d in self.on_key(k).terms.items():
                s = out.get(k2, ZERO) + c * d
                if s:
                    out[k2] = s
                else:
                    out.pop(k2, None)
        return Element(self.target, out)

    def compose(self, other: "LinearMap", name=None) -> "LinearMap":
        """``self ∘ other``."""
        return LinearMap(other.source, self.target, lambda k: self(other.on_key(k)),
                         name or f"{self.name}∘{other.name}")

    def __repr__(self):
        return f"<LinearMap {self.name}>"


class HopfStructure:
    """Coproduct, counit and antipode of a presentation with Hopf sections."""

    def __init__(self, P: Presentation):
        missing = [s for s in ("coproduct", "counit", "antipode") if s not in P.sections]
        if missing:
            raise ValueError(f"{P.name} has no {', '.join(missing)} section")
        self.P = P
        self.name = P.name
        self.ground = load_presentation("ground")
        self.T2 = TensorAlgebra((P, P))
        sec = P.sections
        self.delta = AlgebraMorphism(
            P, self.T2, {x: element_from_free(f, self.T2) for x, f in sec["coproduct"].items()},
            name=f"Δ_{P.name}")
        self.epsilon = AlgebraMorphism(
            P, self.ground,
            {x: self.ground.scalar(f.get(((),), ZERO)) for x, f in sec["counit"].items()},
            name=f"ε_{P.name}")
        self.S = AlgebraMorphism(
            P, P, {x: element_from_free(f, P) for x, f in sec["antipode"].items()},
            anti=True, star_compatible=False, name=f"S_{P.name}")

    # -- key level --------------------------------------------------------
    def delta_key(self, w) -> Element:
        return self.delta.on_word(w)

    def counit_key(self, w) -> Laurent:
        return self.epsilon.on_word(w).scalar_part()

    def antipode_key(self, w) -> Element:
        return self.S.on_word(w)

    def antipode_inv_key(self, w) -> Element:
        # S^-1 = * ∘ S ∘ * on a Hopf *-algebra
        return self.antipode(self.P.normal_form_word(w).star()).star()

    # -- element level ----------------------------------------------------
    def coproduct(self, h: Element) -> Element:
        return self.delta(h)

    def iterated_coproduct(self, h: Element, k: int) -> Element:
        """``Δ^(k)``: the element in the (k+1)-fold tensor power (k=1 is Δ)."""
        x = h
        slots = [self.P]
        for _ in range(k):
            x = tensor_map(x, slots, [None] * (len(slots) - 1) + [self.delta_key])
            slots.append(self.P)
        return x

    def counit(self, h: Element) -> Laurent:
        return self.epsilon(h).scalar_part()

    def antipode(self, h: Element) -> Element:
        return self.S(h)

    def antipode_inverse(self, h: Element) -> Element:
        return LinearMap(self.P, self.P, self.antipode_inv_key)(h)

    def is_commutative(self) -> bool:
        gens = [self.P.normal_form_word((x,)) for x in self.P.letters]
        return all(a * b == b * a for a in gens for b in gens)

    def id_map(self) -> LinearMap:
        return LinearMap(self.P, self.P, self.P.normal_form_word, f"id_{self.name}")

    def antipode_map(self) -> LinearMap:
        return LinearMap(self.P, self.P, self.antipode_key, f"S_{self.name}")

    def __repr__(self):
        return f"<HopfStructure {self.P.title}>"


@lru_cache(maxsize=None)
def _hopf(P):
    return HopfStructure(P)


def hopf_algebra(name: str, **params) -> HopfStructure:
    """Bundled Hopf algebra by id: ``z2``, ``zp`` (p=...), ``u1``, ``su2``."""
    return _hopf(load_presentation(name, **params))


@dataclass
class Report:
    """Outcome of a batch of exact checks; ``failures`` carry witnesses."""
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def check(self, label, witness, residual):
        self.checked += 1
        if residual:
            self.failures.append({"check": label, "witness": str(witness),
                                  "residual": str(residual)})
        return not residual

    def merge(self, other: "Report"):
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def as_dict(self):
        return {"name": self.name, "checked": self.checked, "ok": self.ok,
                "failures": self.failures[:5]}


def verify_hopf_axioms(H: HopfStructure, d: int) -> Report:
    P = H.P
    rep = Report(f"hopf {P.name}")
    for label, phi in (("Δ is a *-algebra map", H.delta), ("ε is a *-algebra map", H.epsilon),
                       ("S is an antialgebra map", H.S)):
        r = verify_morphism(phi)
        rep.checked += r.checked
        for f in r.failures:
            rep.failures.append({"check": label, "witness": f["relation"],
                                 "residual": f["residual"]})
    slots = [P, P]
    for w in P.basis(d):
        h = P.normal_form_word(w)
        name = P.format_word(w)
        dh = H.delta_key(w)
        left = tensor_map(dh, slots, [H.delta_key, None])
        right = tensor_map(dh, slots, [None, H.delta_key])
        rep.check("coassociativity", name, left - right)
        rep.check("left counit", name, contract_slot(dh, slots, 0, H.counit_key) - h)
        rep.check("right counit", name, contract_slot(dh, slots, 1, H.counit_key) - h)
        unit = H.counit_key(w) * P.one()
        rep.check("m(S⊗id)Δ = ηε", name,
                  multiply_slots(tensor_map(dh, slots, [H.antipode_key, None]), slots, 0) - unit)
        rep.check("m(id⊗S)Δ = ηε", name,
                  multiply_slots(tensor_map(dh, slots, [None, H.antipode_key]), slots, 0) - unit)
        rep.check("S bijective", name, H.antipode_inverse(H.antipode_key(w)) - h)
    return rep


# -- convolution ----------------------------------------------------------------

def convolution(f: LinearMap, g: LinearMap, H: HopfStructure) -> LinearMap:
    """``(f*g)(h) = f(h_(1)) g(h_(2))``."""
    if f.target is not g.target:
        raise TypeError("convolution needs a common target algebra")
    A = f.target

    def on_key(k):
        dh = H.delta_key(k)
        out = A.zero()
        for (k1, k2), c in dh.terms.items():
            out = out + c * (f.on_key(k1) * g.on_key(k2))
        return out

    return LinearMap(H.P, A, on_key, f"{f.name}*{g.name}")


def unit_map(H: HopfStructure, A) -> LinearMap:
    """The convolution unit ``η∘ε``."""
    return LinearMap(H.P, A, lambda k: H.counit_key(k) * A.one(), "ηε")


def is_convolution_inverse(f: LinearMap, g: LinearMap, H: HopfStructure, d: int) -> bool:
    return convolution_inverse_report(f, g, H, d).ok


def convolution_inverse_report(f, g, H, d) -> Report:
    rep = Report(f"{g.name} = {f.name}^-1")
    fg, gf, e = convolution(f, g, H), convolution(g, f, H), unit_map(H, f.target)
    for w in H.P.basis(d):
        name = H.P.format_word(w)
        rep.check("f*g = ηε", name, fg.on_key(w) - e.on_key(w))
        rep.check("g*f = ηε", name, gf.on_key(w) - e.on_key(w))
    return rep


# -- Hopf maps and sections -----------------------------------------------------

@dataclass
class HopfMap:
    name: str
    morphism: AlgebraMorphism
    source: HopfStructure
    target: HopfStructure

    def __call__(self, x):
        return self.morphism(x)

    def key(self, w):
        return self.morphism.on_word(w)

    def as_linear(self) -> LinearMap:
        return LinearMap.from_morphism(self.morphism, self.name)


def verify_hopf_map(pi: HopfMap, d: int) -> Report:
    H, Hb = pi.source, pi.target
    rep = Report(f"hopf map {pi.name}")
    r = verify_morphism(pi.morphism)
    rep.checked += r.checked
    for f in r.failures:
        rep.failures.append({"check": "algebra map", "witness": f["relation"],
                             "residual": f["residual"]})
    slots = [H.P, H.P]
    for w in H.P.basis(d):
        name = H.P.format_word(w)
        lhs = Hb.coproduct(pi.key(w))
        rhs = tensor_map(H.delta_key(w), slots, [pi.key, pi.key])
        rep.check("Δ∘π = (π⊗π)∘Δ", name, lhs - rhs)
        rep.check("ε∘π = ε", name, Hb.counit(pi.key(w)) - H.counit_key(w))
    return rep


def verify_section(iota: LinearMap, pi: HopfMap, d: int) -> Report:
    """π∘ι = id, ι(1) = 1, ε∘ι = ε, and left/right H̄-colinearity of ι."""
    H, Hb = pi.source, pi.target
    rep = Report(f"section {iota.name} of {pi.name}")
    rep.check("ι(1) = 1", "1", iota.on_key(()) - H.P.one())
    bslots, slots = [Hb.P, Hb.P], [H.P, H.P]
    for w in Hb.P.basis(d):
        name = Hb.P.format_word(w)
        h = Hb.P.normal_form_word(w)
        ih = iota.on_key(w)
        rep.check("π∘ι = id", name, pi(ih) - h)
        rep.check("ε∘ι = ε", name, H.counit(ih) - Hb.counit_key(w))
        dih = H.coproduct(ih)
        db = Hb.delta_key(w)
        rep.check("left colinear", name,
                  tensor_map(dih, slots, [pi.key, None]) - tensor_map(db, bslots, [None, iota.on_key]))
        rep.check("right colinear", name,
                  tensor_map(dih, slots, [None, pi.key]) - tensor_map(db, bslots, [iota.on_key, None]))
    return rep


def hopf_map(name, source: str, target: str, images: dict, *, source_params=None,
             target_params=None) -> HopfMap:
    H = hopf_algebra(source, **(source_params or {}))
    Hb = hopf_algebra(target, **(target_params or {}))
    return HopfMap(name, AlgebraMorphism(H.P, Hb.P, images, name=name), H, Hb)


def grouplike_section(name, pi: HopfMap, g: str, image: str, period=None) -> LinearMap:
    """``g^n ↦ image^n`` (``g*^n ↦ image*^n``) for a grouplike generator ``g``.

    For a finite cyclic group (``period`` p) the basis is ``g^0..g^(p-1)``.
    """
    Hb, H = pi.target, pi.source
    x = Hb.P.letter(g)
    y = H.P.gen(image)
    ys = y.star()

    def on_key(w):
        if any(l != w[0] for l in w):
            raise KeyError(f"{Hb.P.format_word(w)} is not a power of {g}")
        if not w:
            return H.P.one()
        return (y if w[0] == x else ys) ** len(w)

    return LinearMap(Hb.P, H.P, on_key, name)


def bundled_hopf_maps(p: int = 3) -> dict:
    """π₂, π, f₁∘f₂, π_p and the sections ι (into SU_q(2)) and ι_U(1)."""
    maps = {
        "pi2": hopf_map("π₂", "u1", "z2", {"v": "u"}),
        "pi": hopf_map("π", "su2", "z2", {"a": "u", "b": "0"}),
        "f1f2": hopf_map("f₁∘f₂", "su2", "u1", {"a": "v", "b": "0"}),
        "pi_p": hopf_map("π_p", "u1", "zp", {"v": "w"}, target_params={"p": p}),
    }
    maps["iota"] = grouplike_section("ι", maps["pi"], "u", "a")
    maps["iota_u1"] = grouplike_section("ι_U(1)", maps["f1f2"], "v", "a")
    maps["section_pi2"] = grouplike_section("u↦v", maps["pi2"], "u", "v")
    return maps


def identity_hopf_map(H: HopfStructure) -> HopfMap:
    from .ncalg.morphism import identity_morphism
    return HopfMap(f"id_{H.name}", identity_morphism(H.P), H, H)


def su2_sphere_maps():
    """The identification O(SU_q(2)) ≅ O(S³_q) (a = z0, b = z1*) and f₂: O(SU_q(2)) → O(S²_q)."""
    su2, s3, s2 = load_presentation("su2"), load_presentation("s3"), load_presentation("s2")
    to_s3 = AlgebraMorphism(su2, s3, {"a": "z0", "b": "z1*"}, name="a=z0,b=z1*")
    from_s3 = AlgebraMorphism(s3, su2, {"z0": "a", "z1": "b*"}, name="z0=a,z1=b*")
    f2 = AlgebraMorphism(su2, s2, {"a": "z0", "b": "z1"}, name="f₂")
    return {"to_s3": to_s3, "from_s3": from_s3, "f2": f2}


def sphere_map(m: int) -> AlgebraMorphism:
    """The hierarchy map f_m: O(S^{m+1}_q) → O(S^m_q)."""
    src, dst = load_presentation("sphere", m=m + 1), load_presentation("sphere", m=m)
    images = {}
    for i, g in enumerate(src.generators):
        images[g] = g if g in dst.generators else "0"
    return AlgebraMorphism(src, dst, images, name=f"f_{m}")


__all__ = [
    "LinearMap", "HopfStructure", "hopf_algebra", "Report", "verify_hopf_axioms",
    "convolution", "unit_map", "is_convolution_inverse", "convolution_inverse_report",
    "HopfMap", "verify_hopf_map", "verify_section", "hopf_map", "grouplike_section",
    "bundled_hopf_maps", "identity_hopf_map", "su2_sphere_maps", "sphere_map",
]

"""(Anti)multiplicative maps out of a presentation, fixed on generators."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Element, Presentation
from .parse import parse_element
from .scalars import ONE


class AlgebraMorphism:
    """Extend generator images multiplicatively (``anti=True``: antimultiplicatively).

    ``images`` maps generator names (``"z0"``, ``"z0*"``) to target elements or
    expression strings.  Missing starred images are filled in as stars of the
    unstarred ones when ``star_compatible`` is set.
    """

    def __init__(self, source: Presentation, target, images, *, anti=False,
                 star_compatible=True, name=None):
        self.source = source
        self.target = target
        self.anti = anti
        self.star_compatible = star_compatible
        self.name = name or f"{source.name}->{getattr(target, 'name', 'tensor')}"
        self.images = {}
        for g, img in images.items():
            x = source.letter(g) if isinstance(g, str) else g
            if isinstance(img, str):
                img = parse_element(img, target)
            elif not isinstance(img, Element):
                img = target.scalar(img)
            if img.parent is not target:
                raise TypeError(f"image of {g} lives in {img.parent!r}, expected {target!r}")
            self.images[x] = img
        for x in source.letters:
            if x not in self.images:
                if not star_compatible or (x ^ 1) not in self.images:
                    raise ValueError(f"no image for generator {source.letter_name(x)}")
                self.images[x] = self.images[x ^ 1].star()
        self._cache = {}

    def on_word(self, w) -> Element:
        w = tuple(w)
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        if not w:
            out = self.target.one()
        elif len(w) == 1:
            out = self.images[w[0]]
        else:
            head, last = self.on_word(w[:-1]), self.images[w[-1]]
            out = last * head if self.anti else head * last
        self._cache[w] = out
        return out

    def on_free(self, free: dict) -> Element:
        out = self.target.zero()
        for w, c in free.items():
            out = out + c * self.on_word(w)
        return out

    def __call__(self, x) -> Element:
        if isinstance(x, str):
            x = parse_element(x, self.source)
        if x.parent is not self.source:
            raise TypeError(f"expected an element of {self.source!r}")
        return self.on_free(x.terms)

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self ∘ other``."""
        return AlgebraMorphism(other.source, self.target,
                               {x: self(img) for x, img in other.images.items()},
                               anti=self.anti != other.anti,
                               star_compatible=self.star_compatible and other.star_compatible,
                               name=f"{self.name}∘{other.name}")

    def __repr__(self):
        return f"<AlgebraMorphism {self.name}>"


@dataclass
class MorphismReport:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)

    def first_failure(self):
        return self.failures[0] if self.failures else None


def verify_morphism(phi: AlgebraMorphism) -> MorphismReport:
    """Check every defining relation and rewrite rule maps to zero, and star-compatibility."""
    P = phi.source
    failures = []
    checked = 0
    for text, free in P.relations:
        checked += 1
        res = phi.on_free(free)
        if res:
            failures.append({"check": "relation", "relation": text, "residual": str(res)})
    for r in P.rules:
        checked += 1
        free = dict(r.rhs)
        free[r.lhs] = free.get(r.lhs, 0) - ONE
        res = phi.on_free(free)
        if res:
            failures.append({"check": "rule", "relation": P.format_word(r.lhs),
                             "residual": str(res)})
    if phi.star_compatible:
        for x in P.letters:
            checked += 1
            res = phi.images[x ^ 1] - phi.images[x].star()
            if res:
                failures.append({"check": "star", "relation": P.letter_name(x),
                                 "residual": str(res)})
    return MorphismReport(not failures, checked, failures)


def identity_morphism(P: Presentation) -> AlgebraMorphism:
    return AlgebraMorphism(P, P, {x: P.normal_form_word((x,)) for x in P.letters},
                           name=f"id_{P.name}")

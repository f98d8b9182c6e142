"""Noncommutative *-algebras by generators and oriented rewrite rules."""

from .algebra import (Element, NonTerminationError, Presentation, Rule, TensorAlgebra,
                      algebra_on, multiply_slots, permute_slots, tensor, tensor_map)
from .loader import BUNDLED, PresentationFileError, load_presentation, parse_presentation
from .morphism import AlgebraMorphism, MorphismReport, identity_morphism, verify_morphism
from .parse import ParseError, parse_element, parse_free
from .probe import (basis_enumerate, confluence_probe, random_element, solve_right_inverse)
from .scalars import ONE, Q, ZERO, Laurent, qpow


def normal_form(p, P: Presentation) -> Element:
    """Normal form of an element, a ``word -> scalar`` dict or an expression string."""
    if isinstance(p, str):
        return parse_element(p, P)
    return P.normalize(p)


def multiply(p: Element, r: Element, P: Presentation = None) -> Element:
    return p * r


def star(p: Element, P: Presentation = None) -> Element:
    return p.star()


__all__ = [
    "Element", "NonTerminationError", "Presentation", "Rule", "TensorAlgebra", "algebra_on",
    "multiply_slots", "permute_slots", "tensor", "tensor_map", "BUNDLED",
    "PresentationFileError", "load_presentation", "parse_presentation", "AlgebraMorphism",
    "MorphismReport", "identity_morphism", "verify_morphism", "ParseError", "parse_element",
    "parse_free", "basis_enumerate", "confluence_probe", "random_element",
    "solve_right_inverse", "ONE", "Q", "ZERO", "Laurent", "qpow", "normal_form", "multiply",
    "star",
]

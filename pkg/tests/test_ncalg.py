import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbundle.ncalg import (AlgebraMorphism, Laurent, ParseError, PresentationFileError,
                           basis_enumerate, confluence_probe, identity_morphism, load_presentation,
                           multiply, normal_form, parse_element, parse_presentation, qpow,
                           random_element, solve_right_inverse, star, verify_morphism)
from qbundle.ncalg import linalg


@pytest.fixture(scope="module")
def s2():
    return load_presentation("s2")


@pytest.fixture(scope="module")
def s3():
    return load_presentation("s3")


# -- scalars ---------------------------------------------------------------------

def test_laurent_arithmetic():
    x = Laurent.parse("q^-1 + 2q^2")
    assert x * qpow(1) == Laurent.parse("1 + 2q^3")
    assert x - x == 0
    assert not (x - x).terms
    assert qpow(3) * qpow(-3) == 1
    assert Laurent.parse("1/2 q").evaluate(0.5) == 0.25


def test_laurent_no_stored_zeros():
    x = Laurent({2: Fraction(0), 1: Fraction(3)})
    assert list(x.terms) == [1]


def test_laurent_star_is_identity():
    x = Laurent.parse("3q^-2 - q")
    assert x.conjugate() == x


@given(st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4),
       st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4))
def test_laurent_product_matches_evaluation(a, b):
    x, y = Laurent(a), Laurent(b)
    for q in (0.3, 0.7):
        assert abs((x * y).evaluate(q) - x.evaluate(q) * y.evaluate(q)) < 1e-9


# -- normal forms --------------------------------------------------------------------

def test_commutation_reoriented(s3):
    assert normal_form("z1 z0", s3) == qpow(-1) * s3.gen("z0") * s3.gen("z1")
    assert str(normal_form("z1 z0", s3)) == "q^-1 z0 z1"


def test_unit_fixed(s3):
    assert normal_form(s3.one(), s3) == 1
    assert str(s3.one()) == "1"


def test_radius_relation(s2):
    assert normal_form("z0 z0* + z1 z1*", s2) == 1


def test_z0_z0star_two_ways(s2):
    # z0 z0* = z0* z0 + (q^-2 - 1) z1², both sides in normal form
    z0, z1 = s2.gen("z0"), s2.gen("z1")
    lhs = multiply(z0, z0.star())
    rhs = z0.star() * z0 + (qpow(-2) - 1) * z1 * z1
    assert lhs == rhs


def test_su2_product_by_hand():
    P = load_presentation("su2")
    a, b = P.gen("a"), P.gen("b")
    # a*a = 1 - q^-2 b b*  =>  a (a* a) = a - q^-2 a b b*
    assert a.star() * a == 1 - qpow(-2) * b * b.star()
    assert a * (a.star() * a) == a - qpow(-2) * a * b * b.star()


def test_star(s3):
    z0, z1 = s3.gen("z0"), s3.gen("z1")
    # (z0 z1)* = z1* z0* = q z0* z1* (z_i* z_j* = q^-1 z_j* z_i* for i<j)
    assert star(z0 * z1) == qpow(1) * z0.star() * z1.star()
    assert star(s3.one()) == 1


def test_top_generator_self_adjoint():
    for m in (2, 4):
        P = load_presentation("sphere", m=m)
        top = P.gen(P.generators[-1])
        assert top.star() == top


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_associativity_and_star(seed):
    P = load_presentation("s3")
    rng = random.Random(seed)
    x, y, z = (random_element(P, 2, rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert (x * y).star() == y.star() * x.star()
    assert x.star().star() == x


# -- bases and confluence ----------------------------------------------------------

def _brute_rank(P, d):
    # rank of the normal forms of every word of length <= d
    words = [()]
    for k in range(1, d + 1):
        words += list(itertools.product(P.letters, repeat=k))
    rows = [dict(P.normal_form_word(w).terms) for w in words]
    return linalg.rank([r for r in rows if r])


def test_u1_basis():
    U = load_presentation("u1")
    assert [U.format_word(w) for w in basis_enumerate(U, 2)] == ["1", "v", "v*", "v^2", "v*^2"]


def test_z2_basis_stable():
    Z = load_presentation("z2")
    for d in (1, 2, 5):
        assert [Z.format_word(w) for w in basis_enumerate(Z, d)] == ["1", "u"]


def test_s2_basis_degree_two(s2):
    words = {s2.format_word(w) for w in basis_enumerate(s2, 2)}
    assert words == {"1", "z0", "z0*", "z1", "z0^2", "z0 z1", "z0*^2", "z0* z1", "z1^2"}
    assert len(words) == _brute_rank(s2, 2)


def test_s3_confluence(s3):
    rep = confluence_probe(s3, 4)
    assert rep.ok
    assert not rep.unresolved and not any(rep.associativity)
    assert len(basis_enumerate(s3, 3)) == _brute_rank(s3, 3)


def test_a2n_dimension_count():
    P = load_presentation("a2n", n=1)
    rep = confluence_probe(P, 3)
    assert rep.ok
    # ζ0^k (k ∈ Z), ζ1^{k1} (k1 ≥ 0), ξ^m (m ∈ Z); length |k| + k1 + |m|
    counts = [0] * 4
    for k in range(-3, 4):
        for k1 in range(4):
            for m in range(-3, 4):
                L = abs(k) + k1 + abs(m)
                if L <= 3:
                    counts[L] += 1
    assert rep.dimensions == counts


@pytest.mark.parametrize("name,params", [("s1", {}), ("s4", {}), ("s5", {}), ("su2", {}), ("zp", {"p": 3}),
                                         ("a2n", {"n": 2}), ("rp2", {})])
def test_bundled_presentations_confluent(name, params):
    assert confluence_probe(load_presentation(name, **params), 3).ok


# -- morphisms ------------------------------------------------------------------------

def test_f2_is_a_morphism():
    su2, s2 = load_presentation("su2"), load_presentation("s2")
    f2 = AlgebraMorphism(su2, s2, {"a": "z0", "b": "z1"})
    assert verify_morphism(f2).ok


def test_identity_morphism(s3):
    assert verify_morphism(identity_morphism(s3)).ok


def test_collapsing_map_fails(s3):
    bad = AlgebraMorphism(s3, s3, {"z0": "z0", "z1": "z0"})
    rep = verify_morphism(bad)
    assert not rep.ok
    assert rep.first_failure() is not None


# -- inverses ------------------------------------------------------------------------------

def test_right_inverse_controls():
    U, Z = load_presentation("u1"), load_presentation("z2")
    assert solve_right_inverse(U.gen("v"), U, 1) == U.gen("v").star()
    assert solve_right_inverse(Z.gen("u"), Z, 1) == Z.gen("u")


def test_no_inverse_of_z0(s3):
    assert solve_right_inverse(s3.gen("z0"), s3, 6) is None


# -- parsing and loading ---------------------------------------------------------------------

def test_parse_errors(s3):
    with pytest.raises(ParseError) as e:
        parse_element("z0 + w", s3)
    assert "w" in str(e.value)
    with pytest.raises(ParseError):
        parse_element("z0 +", s3)


def test_parse_powers_and_scalars(s3):
    assert parse_element("z0^2", s3) == s3.gen("z0") ** 2
    assert parse_element("q^-1 z0", s3) == qpow(-1) * s3.gen("z0")


def test_presentation_file_roundtrip():
    text = """name: toy
generators: u
basis: u^{0..1}
rules:
  u* -> u
  u u -> 1
relations:
  u u = 1
"""
    P = parse_presentation(text)
    assert len(P.basis(3)) == 2
    assert P.gen("u") * P.gen("u") == 1


def test_presentation_file_errors():
    with pytest.raises(PresentationFileError):
        parse_presentation("generators: u\n")
    with pytest.raises(PresentationFileError):
        load_presentation("no_such_algebra")


def test_linalg_rank_and_nullspace():
    assert linalg.rank([{0: 1, 1: 2}, {0: 2, 1: 4}]) == 1
    ns = linalg.nullspace([{0: 1, 1: 2}], [0, 1])
    assert len(ns) == 1
    v = ns[0]
    assert v[0] + 2 * v[1] == 0
    q = qpow(1)
    assert linalg.rank([{0: q, 1: 1}, {0: 1, 1: qpow(-1)}]) == 1

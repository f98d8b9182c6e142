import pytest

from qbundle import hopf
from qbundle.hopf import (LinearMap, bundled_hopf_maps, convolution, hopf_algebra, unit_map,
                          verify_hopf_axioms, verify_hopf_map, verify_section)
from qbundle.ncalg import multiply_slots, qpow, tensor, tensor_map


@pytest.fixture(scope="module")
def su2():
    return hopf_algebra("su2")


@pytest.fixture(scope="module")
def maps():
    return bundled_hopf_maps()


def test_grouplike_coproduct():
    U = hopf_algebra("u1")
    v = U.P.gen("v")
    assert U.coproduct(v) == tensor(v, v)
    assert U.coproduct(U.P.one()) == tensor(U.P.one(), U.P.one())
    for k in range(1, 5):
        assert U.antipode(v ** k) == v.star() ** k
        assert U.counit(v ** k) == 1


def test_su2_structure_maps(su2):
    P = su2.P
    a, b = P.gen("a"), P.gen("b")
    assert su2.coproduct(a) == tensor(a, a) - qpow(-1) * tensor(b, b.star())
    assert su2.antipode(b.star()) == -qpow(1) * b.star()
    assert su2.counit(a) == 1
    assert su2.counit(b) == 0


def test_iterated_coproduct_counts(su2):
    a = su2.P.gen("a")
    # Δ(a) has 2 terms, each further application doubles them
    assert len(su2.iterated_coproduct(a, 2).terms) == 4


def test_antipode_axiom_on_a(su2):
    P = su2.P
    x = tensor_map(su2.coproduct(P.gen("a")), [P, P], [su2.antipode_key, P.normal_form_word])
    assert multiply_slots(x, [P, P], 0) == 1


@pytest.mark.parametrize("name,params", [("z2", {}), ("zp", {"p": 3}), ("zp", {"p": 5}), ("u1", {}),
                                         ("su2", {})])
def test_axioms(name, params):
    rep = verify_hopf_axioms(hopf_algebra(name, **params), 4)
    assert rep.ok, rep.failures[:3]
    assert rep.checked > 0


def test_z2_basis():
    Z = hopf_algebra("z2")
    assert [Z.P.format_word(w) for w in Z.P.basis(3)] == ["1", "u"]


def test_convolution_unit(su2):
    A = su2.P
    e = unit_map(su2, A)
    ident = su2.id_map()
    c = convolution(e, ident, su2)
    for w in A.basis(3):
        assert c.on_key(w) == A.normal_form_word(w)


def test_f2_convolution_inverse(su2):
    f2 = hopf.su2_sphere_maps()["f2"]
    f = LinearMap.from_morphism(f2)
    g = LinearMap(su2.P, f2.target, lambda k: f2(su2.antipode_key(k)), "f₂∘S")
    assert hopf.is_convolution_inverse(f, g, su2, 3)
    z1 = f2.target.gen("z1")
    assert g(su2.P.gen("b")) == -qpow(-1) * z1


def test_not_convolution_inverse(su2):
    f2 = hopf.su2_sphere_maps()["f2"]
    f = LinearMap.from_morphism(f2)
    assert not hopf.is_convolution_inverse(f, f, su2, 1)


def test_bundled_maps_values(maps, su2):
    a, b = su2.P.gen("a"), su2.P.gen("b")
    u = maps["pi"].target.P.gen("u")
    assert maps["pi"](a) == u
    assert maps["pi"](b) == 0
    v = maps["pi2"].source.P.gen("v")
    assert maps["pi2"](v ** 2) == 1


@pytest.mark.parametrize("key", ["pi2", "pi", "f1f2", "pi_p"])
def test_hopf_maps(maps, key):
    assert verify_hopf_map(maps[key], 4).ok


@pytest.mark.parametrize("key,pi", [("iota", "pi"), ("iota_u1", "f1f2"), ("section_pi2", "pi2")])
def test_sections(maps, key, pi):
    assert verify_section(maps[key], maps[pi], 4).ok


def test_iota_u1_powers(maps, su2):
    U = maps["f1f2"].target.P
    v, a = U.gen("v"), su2.P.gen("a")
    for n in range(5):
        assert maps["iota_u1"](v ** n) == a ** n
        assert maps["iota_u1"](v.star() ** n) == a.star() ** n


def test_identity_section():
    U = hopf_algebra("u1")
    idm = hopf.identity_hopf_map(U)
    assert verify_section(U.id_map(), idm, 3).ok


def test_bad_section_fails(maps):
    bad = hopf.grouplike_section("u↦b", maps["pi"], "u", "b")
    rep = verify_section(bad, maps["pi"], 1)
    assert not rep.ok
    assert any(f["check"] == "π∘ι = id" for f in rep.failures)


def test_report_as_dict():
    rep = hopf.Report("demo")
    rep.check("zero", "w", 0)
    rep.check("nonzero", "w", "something")
    d = rep.as_dict()
    assert d["checked"] == 2
    assert not d["ok"]

import pytest

from qbundle import comod
from qbundle.comod import (Cotensor, check_coinvariant_iso, coinvariants, kappa, kappa_inv,
                           kappa_roundtrip_report, sphere_u1_coaction, sphere_z2_coaction,
                           subalgebra_membership, verify_comodule_algebra)
from qbundle.hopf import bundled_hopf_maps, hopf_algebra, identity_hopf_map
from qbundle.ncalg import load_presentation, tensor
from qbundle.principal import rp2_generators


@pytest.fixture(scope="module")
def maps():
    return bundled_hopf_maps()


@pytest.mark.parametrize("rho", [
    sphere_z2_coaction(2), sphere_z2_coaction(5), sphere_u1_coaction(3), sphere_u1_coaction(5),
    comod.sphere_zp_coaction(3, 3), comod.s3_su2_coaction(),
    comod.trivial_coaction(load_presentation("s2"), hopf_algebra("z2")),
], ids=lambda r: r.name)
def test_comodule_algebras(rho):
    rep = verify_comodule_algebra(rho, 3)
    assert rep.ok, rep.failures[:3]


def test_z2_coaction_on_generators():
    rho = sphere_z2_coaction(2)
    A, u = rho.A, rho.H.P.gen("u")
    for g in A.generators:
        assert rho(A.gen(g)) == tensor(A.gen(g), u)


def test_coinvariants_are_even_words():
    rho = sphere_z2_coaction(2)
    A = rho.A
    found = coinvariants(rho, 2)
    # the coaction is diagonal with eigenvalue u^{length}
    even = [w for w in A.basis(2) if len(w) % 2 == 0]
    assert len(found) == len(even) == 6
    assert comod.span_rank(found + [A.normal_form_word(w) for w in even]) == len(even)


def test_u1_coinvariants_under_z2(maps):
    U = hopf_algebra("u1")
    rho = comod.regular_coaction(U).pushforward(maps["pi2"])
    found = coinvariants(rho, 4)
    v = U.P.gen("v")
    expected = [U.P.one(), v ** 2, v.star() ** 2, v ** 4, v.star() ** 4]
    assert len(found) == 5
    assert comod.span_rank(found + expected) == 5


def test_trivial_coaction_fixes_everything():
    A = load_presentation("s2")
    rho = comod.trivial_coaction(A, hopf_algebra("z2"))
    assert len(coinvariants(rho, 2)) == len(A.basis(2))


def test_subalgebra_membership():
    A = load_presentation("s2")
    gens = list(rp2_generators().values())
    assert subalgebra_membership(A.gen("z1") ** 2, gens, 4)
    assert subalgebra_membership(A.one(), gens, 2)
    assert not subalgebra_membership(A.gen("z0"), gens, 4)


def test_cotensor_membership(maps):
    rho = sphere_z2_coaction(2)
    A, U = rho.A, maps["pi2"].source.P
    v = U.gen("v")
    assert comod.cotensor_membership(tensor(A.gen("z0"), v), rho, maps["pi2"])
    assert not comod.cotensor_membership(tensor(A.one(), v), rho, maps["pi2"])
    assert comod.cotensor_membership(tensor(A.one(), v.star() ** 2), rho, maps["pi2"])


def test_cotensor_basis_parity(maps):
    rho = sphere_z2_coaction(2)
    C = Cotensor(rho, maps["pi2"])
    basis = C.basis(2, 2)
    assert all(C.contains(x) for x in basis)
    # a ⊗ v^k lies in the cotensor product iff len(a) ≡ k mod 2, so the monomials span it
    A, U = rho.A, maps["pi2"].source.P
    count = sum(1 for a in A.basis(2) for h in U.basis(2) if (len(a) - len(h)) % 2 == 0)
    assert len(basis) == count


def test_cotensor_rejects_mismatched_map(maps):
    with pytest.raises(ValueError):
        Cotensor(sphere_u1_coaction(3), maps["pi2"])


def test_kappa_examples():
    rho = sphere_u1_coaction(3)
    A, U = rho.A, rho.H.P
    v = U.gen("v")
    assert kappa(tensor(A.gen("z0"), v ** 2), rho) == tensor(A.gen("z0"), v ** 3)
    one = tensor(A.one(), U.one())
    assert kappa(one, rho) == one
    assert kappa_inv(tensor(A.gen("z0"), v ** 3), rho) == tensor(A.gen("z0"), v ** 2)


def test_kappa_needs_commutative_h():
    rho = comod.s3_su2_coaction()
    A, H = rho.A, rho.H.P
    with pytest.raises(ValueError):
        kappa(tensor(A.one(), H.one()), rho)


@pytest.mark.parametrize("key", ["pi2", "pi_p"])
def test_kappa_roundtrip(maps, key):
    rep = kappa_roundtrip_report(sphere_u1_coaction(3), maps[key], 3, trials=50)
    assert rep.ok, rep.failures[:3]


@pytest.mark.parametrize("m,key", [(2, "pi2"), (2, "pi"), (3, "pi")])
def test_coinvariant_iso(maps, m, key):
    assert check_coinvariant_iso(sphere_z2_coaction(m), maps[key], 3, 3).ok


def test_coinvariant_iso_identity():
    U = hopf_algebra("u1")
    rho = sphere_u1_coaction(3)
    assert check_coinvariant_iso(rho, identity_hopf_map(U), 2, 2).ok

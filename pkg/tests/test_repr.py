import cmath
import math

import numpy as np
import pytest

from qbundle import repr as reps
from qbundle.ncalg import Laurent, load_presentation
from qbundle.repr import FockBasis, RepresentationSpec, build_rep


def test_fock_basis_roundtrip():
    B = FockBasis(2, 5)
    assert len(B) == 25
    for i in range(B.dim):
        assert B.index(B.multi_index(i)) == i
    with pytest.raises(IndexError):
        B.index((5, 0))
    assert len(B.interior(2)) == 9


def test_interior_margin_too_large():
    with pytest.raises(ValueError):
        FockBasis(1, 4).interior(4)


def test_evaluate_scalar():
    assert reps.evaluate_scalar(Laurent.parse("q^-1 + 2q^2"), 0.5) == pytest.approx(2.5)
    with pytest.raises(ValueError):
        reps.evaluate_scalar(Laurent.parse("q"), 1.5)


@pytest.mark.parametrize("kw", [dict(q=1.2), dict(K=0), dict(sign=2), dict(n=0),
                                dict(family="zero", lam=2.0), dict(family="other")])
def test_spec_validation(kw):
    args = dict(family="phi", n=1, q=0.5, K=10)
    args.update(kw)
    with pytest.raises(ValueError):
        RepresentationSpec(**args)


def test_matrix_elements_n1():
    q, phi, K = 0.5, 0.3, 12
    ops = build_rep(RepresentationSpec("phi", 1, q, K, phi=phi, sign=-1))
    B = FockBasis(1, K)
    z0, z1, xi = ops["zeta0"].toarray(), ops["zeta1"].toarray(), ops["xi"].toarray()
    for k in range(1, K):
        assert z0[B.index((k - 1,)), B.index((k,))] == pytest.approx(math.sqrt(1 - q ** (2 * k)))
    for k in range(K):
        assert z1[k, k] == pytest.approx(-cmath.exp(1j * phi) * q ** (k + 1))
    assert np.allclose(xi, cmath.exp(-2j * phi) * np.eye(K))


def test_adjoint_of_adjoint():
    ops = build_rep(RepresentationSpec("phi", 2, 0.5, 6, phi=0.7))
    for m in ops.values():
        assert (m.conj().T.conj().T != m).nnz == 0


@pytest.mark.parametrize("n,sign", [(1, 1), (1, -1), (2, 1), (2, -1)])
def test_phi_series_relations(n, sign):
    spec = RepresentationSpec("phi", n, 0.5, 20, phi=0.3, sign=sign)
    rep = reps.verify_relations_numeric(spec, 4)
    assert rep.ok, rep.failures()
    assert rep.max_residual < 1e-10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_zero_branch_relations(n):
    spec = RepresentationSpec("zero", n, 0.4, 15, lam=cmath.exp(0.7j), mu=cmath.exp(-1.1j))
    assert reps.verify_relations_numeric(spec, 4).ok


def test_literal_zero_branch_breaks_radius_relation():
    # the literal indexing keeps an extra lowering index, so Σ ζ_i ζ_i* misses 1
    spec = RepresentationSpec("zero", 2, 0.5, 20, lam=1.0, literal=True)
    rep = reps.verify_relations_numeric(spec, 4)
    assert not rep.ok
    assert rep.max_residual > 0.1


def test_adjoint_consistency():
    spec = RepresentationSpec("phi", 2, 0.5, 12, phi=1.1)
    assert reps.adjoint_consistency(spec, trials=10) < 1e-12


def test_represent_unit_is_identity():
    spec = RepresentationSpec("phi", 1, 0.5, 8)
    P = load_presentation("a2n", n=1)
    m = reps.represent(P.one(), spec)
    assert np.allclose(m.toarray(), np.eye(8))


def test_margin_must_be_below_cutoff():
    with pytest.raises(ValueError):
        reps.verify_relations_numeric(RepresentationSpec("phi", 1, 0.5, 4), margin=4)


def test_odd_sphere_and_prolongation():
    assert reps.odd_sphere_relations(2, cmath.exp(0.4j), 0.5, 15).ok
    dev = reps.prolongation_consistency(2, cmath.exp(0.4j), cmath.exp(1.3j), 0.5, 15)
    assert dev < 1e-12


def test_residual_report_dict():
    spec = RepresentationSpec("phi", 1, 0.5, 10)
    d = reps.verify_relations_numeric(spec, 3).as_dict()
    assert d["ok"] and d["margin"] == 3 and d["failures"] == {}

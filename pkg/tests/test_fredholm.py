import cmath

import pytest

from qbundle import fredholm as fr
from qbundle.ncalg import load_presentation, parse_element

Q = 0.5


@pytest.fixture(scope="module")
def a2():
    return load_presentation("a2n", n=1)


@pytest.fixture(scope="module")
def module_n1():
    return fr.build_fredholm(1, 0.3, Q, 60)


@pytest.mark.parametrize("n", [1, 2])
def test_structure_exact(n):
    inv = fr.build_fredholm(n, 0.3, Q, 20).invariants()
    assert all(inv.values()), inv


def test_trace_of_top_generator_geometric():
    M = fr.build_fredholm(1, 0.0, Q, 60)
    t = fr.chern_trace("zeta1", M)
    # (π₊ − π₋)(ζ1) = 2 q^{k+1} on |k⟩
    series = sum(2 * Q ** (k + 1) for k in range(200))
    assert abs(t.value - 2 * Q / (1 - Q)) < 1e-9
    assert abs(t.value - series) < 1e-9
    assert t.tail_bound < 1e-12


def test_trace_zeros(module_n1):
    assert abs(fr.chern_trace("1", module_n1).value) < 1e-12
    assert abs(fr.chern_trace("zeta1^2", module_n1).value) < 1e-12


def test_selection_rule_examples(a2):
    word = lambda s: next(iter(parse_element(s, a2).terms))  # noqa: E731
    assert not fr.selection_rule_check(word("zeta1 xi"), a2)
    assert fr.selection_rule_check(word("zeta0 zeta1"), a2)
    assert fr.selection_rule_check(word("xi"), a2)
    assert fr.basis_exponents(word("zeta0* zeta1^3 xi*^2"), a2) == {"k": -1, "k_i": [3], "l_i": [],
                                                                      "m": -2}


def test_selection_rule_rejects_non_normal(a2):
    zeta1, zeta0 = a2.letter("zeta1"), a2.letter("zeta0")
    with pytest.raises(ValueError):
        fr.selection_rule_check((zeta1, zeta0), a2)


def test_zeta1_xi_trace_and_oracle(a2, module_n1):
    x = parse_element("zeta1 xi", a2)
    t = fr.chern_trace(x, module_n1)
    # 2 e^{i(1-2)φ} q/(1-q)
    expected = 2 * cmath.exp(-0.3j) * Q / (1 - Q)
    assert abs(t.value - expected) < 1e-9
    assert abs(fr.closed_form_oracle(x, 1, Q, 0.3) - expected) < 1e-12


def test_oracle_n2():
    P = load_presentation("a2n", n=2)
    M = fr.build_fredholm(2, 0.3, Q, 40)
    for expr in ("zeta2", "zeta2^3 xi*", "zeta2^2"):
        x = parse_element(expr, P)
        assert abs(fr.chern_trace(x, M).value - fr.closed_form_oracle(x, 2, Q, 0.3)) < 1e-9


def test_oracle_declines_general_elements(a2):
    assert fr.closed_form_oracle(parse_element("zeta0 zeta1", a2), 1, Q, 0.3) is None
    assert fr.closed_form_oracle(parse_element("zeta1 + xi", a2), 1, Q, 0.3) is None


def test_truncation_convergence(a2):
    x = parse_element("zeta0 zeta0* zeta1^3", a2)
    t30 = fr.chern_trace(x, fr.build_fredholm(1, 0.3, Q, 30))
    t60 = fr.chern_trace(x, fr.build_fredholm(1, 0.3, Q, 60))
    assert abs(t30.value - t60.value) <= t30.tail_bound + 1e-15


def test_phase_rule(a2):
    w = next(iter(parse_element("zeta1^3 xi^2", a2).terms))
    x = a2.normal_form_word(w)
    vals = [fr.chern_trace(x, fr.build_fredholm(1, phi, Q, 40)).value / fr.predicted_phase(w, a2, phi)
            for phi in (0.3, 1.1, 2.5)]
    assert max(abs(v - vals[0]) for v in vals) < 1e-9
    assert abs(vals[0].imag) < 1e-9


def test_nu_difference(a2, module_n1):
    for expr in ("zeta1 xi", "zeta0 zeta1^2", "zeta0* zeta1 xi*"):
        assert fr.nu_difference_check(parse_element(expr, a2), module_n1) < 1e-12
    assert fr.nu_automorphism(parse_element("zeta1", a2)) == -parse_element("zeta1", a2)


def test_commutator_decay(a2):
    d30 = fr.commutator_decay(a2.gen("zeta1"), fr.build_fredholm(1, 0.3, Q, 30))
    d60 = fr.commutator_decay(a2.gen("zeta1"), fr.build_fredholm(1, 0.3, Q, 60))
    assert abs(d60["decay_ratio"] - Q) < 1e-9
    assert abs(d30["trace_norm"] - d60["trace_norm"]) < 1e-8
    assert fr.commutator_decay(a2.gen("xi"), fr.build_fredholm(1, 0.3, Q, 20))["commutator_zero"]


def test_trace_result_json_fields(module_n1):
    d = fr.chern_trace("zeta1", module_n1).as_dict()
    assert set(d) == {"value_re", "value_im", "tail_bound", "K", "q", "phi"}


def test_fredholm_report_small():
    rep = fr.fredholm_report(1, 0.3, Q, 40, samples=8, seed=2)
    assert rep["ok"], [r for r in rep["records"] if r["status"] != "pass"]

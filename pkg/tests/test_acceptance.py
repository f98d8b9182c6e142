"""The ten acceptance criteria, each at its stated tolerance.

Every test prints one ``PASS/FAIL criterion N: ...`` line; the lines are also
collected in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""

import cmath
import time

from qbundle import comod, fredholm, hopf, principal
from qbundle import repr as reps
from qbundle.ncalg import load_presentation, multiply_slots, qpow, solve_right_inverse, tensor_map

Q, PHI, K_TRACE, K_REP, MARGIN = 0.5, 0.3, 60, 30, 4


def _summ(rep):
    return f"{rep.checked} checks, {len(rep.failures)} failures" + (
        f"; first: {rep.failures[0]}" if rep.failures else "")


def test_criterion_01_strong_connections(acceptance_line):
    t0 = time.perf_counter()
    rep = principal.connections_report(4, range(1, 6))
    elapsed = time.perf_counter() - t0
    ok = rep.ok and elapsed < 30
    acceptance_line(1, "ℓ(u)=Σz_i⊗z_i* on S^m_q, m=1..5, four axioms + galois, degree ≤ 4", ok,
                    f"{_summ(rep)}, {elapsed:.1f}s")
    assert rep.ok, rep.failures[:3]
    assert elapsed < 30


def test_criterion_02_hopf_axioms(acceptance_line):
    rep = hopf.Report("criterion 2")
    for name, params in (("z2", {}), ("zp", {"p": 3}), ("u1", {}), ("su2", {})):
        rep.merge(hopf.verify_hopf_axioms(hopf.hopf_algebra(name, **params), 4))
    H = hopf.hopf_algebra("su2")
    P = H.P
    a, b = P.gen("a"), P.gen("b")
    # m(S⊗id)Δ(a), computed leg by leg
    x = tensor_map(H.coproduct(a), [P, P], [H.antipode_key, P.normal_form_word])
    rep.check("m(S⊗id)Δ(a) = 1", "a", multiply_slots(x, [P, P], 0) - P.one())
    rep.check("a*a + q^-2 bb* = 1", "a", a.star() * a + P.scalar(qpow(-2)) * b * b.star() - 1)
    acceptance_line(2, "Hopf axioms for Z2, Z3, U(1), SU_q(2) at degree ≤ 4", rep.ok, _summ(rep))
    assert rep.ok, rep.failures[:3]


def test_criterion_03_rp2_corpus(acceptance_line):
    rep = principal.rp2_corpus_report()
    acceptance_line(3, "the 11 O(RP²_q) relations vanish for P=q^-2 z1², R=z0², T=q^-1 z1 z0", rep.ok,
                    _summ(rep))
    assert rep.ok, rep.failures


def test_criterion_04_cleft(acceptance_line):
    f = principal.f2_cleaving()
    rep = f.verify(3)
    rep.merge(principal.invcov_report(f, 3))
    rep.merge(principal.cleft_report(f, d=3, trials=30, seed=0))
    acceptance_line(4, "f₂ cleaving, covariance of f₂⁻¹, θ round trips and crossed associativity (30 seeded)",
                    rep.ok, _summ(rep))
    assert rep.ok, rep.failures[:3]


def test_criterion_05_smash(acceptance_line):
    rep = principal.smash_report()
    six = len(principal.SMASH_FORMULAS) == 6
    acceptance_line(5, "six smash action formulas on O(RP²_q)", rep.ok and six, _summ(rep))
    assert six
    assert rep.ok, rep.failures[:3]


def test_criterion_06_prolongation(acceptance_line):
    rep = principal.prolongation_report(3)
    pairs = len(principal.PROLONGATION_PAIRS) == 4
    rep.merge(principal.section_connection_report(4))
    acceptance_line(6, "prolonged connections for 4 pairs; section connection passes and differs",
                    rep.ok and pairs, _summ(rep))
    assert pairs
    assert rep.ok, rep.failures[:3]


def test_criterion_07_presentation(acceptance_line):
    rep = hopf.Report("criterion 7")
    for n in (1, 2):
        rep.merge(principal.phi_report(n, (4, 4)))
    maps = hopf.bundled_hopf_maps()
    rho = comod.sphere_u1_coaction(3)
    for key in ("pi2", "pi_p"):
        rep.merge(comod.kappa_roundtrip_report(rho, maps[key], 4, seed=0))
    acceptance_line(7, "Φ for n=1,2 at bidegree (4,4); κ round trips for S³ with Z2 and Z3", rep.ok,
                    _summ(rep))
    assert rep.ok, rep.failures[:3]


def test_criterion_08_nontriviality(acceptance_line):
    evs = [principal.nontriviality_evidence(m, 6, trials=20, seed=0) for m in (2, 3)]
    U, Z = load_presentation("u1"), load_presentation("z2")
    v_inv = solve_right_inverse(U.gen("v"), U, 1)
    u_inv = solve_right_inverse(Z.gen("u"), Z, 1)
    controls = v_inv == U.gen("v").star() and u_inv == Z.gen("u")
    ok = all(e.ok for e in evs) and controls
    detail = "; ".join(f"{e.algebra}: {len(e.candidates)} candidates, {len(e.inverses_found)} inverses"
                       for e in evs)
    acceptance_line(8, "no inverse of odd candidates up to degree 6; controls found", ok, detail)
    for e in evs:
        assert not e.inverses_found, e.inverses_found
        assert len(e.candidates) >= 20
    assert controls


def test_criterion_09_representations(acceptance_line):
    specs = [reps.RepresentationSpec("phi", n, Q, K_REP, phi=PHI, sign=s) for n in (1, 2) for s in (1, -1)]
    specs.append(reps.RepresentationSpec("zero", 2, Q, K_REP, lam=cmath.exp(0.7j), mu=cmath.exp(-1.1j)))
    worst_rel = worst_adj = 0.0
    for spec in specs:
        worst_rel = max(worst_rel, reps.verify_relations_numeric(spec, MARGIN).max_residual)
        worst_adj = max(worst_adj, reps.adjoint_consistency(spec, margin=MARGIN))
    ok = worst_rel < 1e-10 and worst_adj < 1e-12
    acceptance_line(9, "relations on the interior (q=0.5, K=30, margin 4) and adjoint consistency", ok,
                    f"max residual {worst_rel:.2e}, max adjoint deviation {worst_adj:.2e}")
    assert worst_rel < 1e-10
    assert worst_adj < 1e-12


def test_criterion_10_fredholm(acceptance_line):
    t0 = time.perf_counter()
    problems = []
    for n in (1, 2):
        M = fredholm.build_fredholm(n, PHI, Q, K_TRACE)
        inv = M.invariants()
        if not (inv["F² = 1"] and inv["Fγ + γF = 0"]):
            problems.append(f"n={n} structure {inv}")
    # geometric oracle Σ_k 2 q^{k+1} = 2q/(1−q), independent of the library's oracle
    M0 = fredholm.build_fredholm(1, 0.0, Q, K_TRACE)
    t = fredholm.chern_trace("zeta1", M0)
    if abs(t.value - 2 * Q / (1 - Q)) >= 1e-9:
        problems.append(f"τ(ζ1) = {t.value}")
    zeros = phases = 0
    for n in (1, 2):
        rep = fredholm.fredholm_report(n, PHI, Q, K_TRACE, samples=20, seed=0, phis=(0.3, 1.1, 2.5))
        for r in rep["records"]:
            if ".selection." in r["id"]:
                zeros += 1
            if ".phase." in r["id"]:
                phases += 1
            if r["status"] != "pass":
                problems.append(r["id"])
    elapsed = time.perf_counter() - t0
    if elapsed >= 120:
        problems.append(f"runtime {elapsed:.0f}s")
    ok = not problems and zeros == 40 and phases > 0
    acceptance_line(10, "F²=1, Fγ+γF=0; τ(ζ1)=2.0; selection-rule zeros; phases at three φ", ok,
                    f"τ(ζ1)={t.value.real:.12f}, {zeros} zeros, {phases} phase checks, {elapsed:.1f}s"
                    + (f"; problems: {problems}" if problems else ""))
    assert not problems, problems
    assert zeros == 40 and phases > 0


if __name__ == "__main__":
    import sys

    def emit(number, title, ok, detail=""):
        print(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}" + (f" ({detail})" if detail else ""))
        return ok

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(emit)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

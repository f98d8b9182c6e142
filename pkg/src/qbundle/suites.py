"""Verification suites: each returns a list of check records for the CLI report."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from . import comod, fredholm, hopf, principal
from . import repr as reps
from .ncalg import confluence_probe, load_presentation

PRESENTATIONS = [("s1", {}), ("s2", {}), ("s3", {}), ("s4", {}), ("s5", {}), ("su2", {}),
                 ("u1", {}), ("z2", {}), ("zp", {"p": 3}), ("a2n", {"n": 1}), ("a2n", {"n": 2}),
                 ("rp2", {})]


@dataclass
class RunConfig:
    degree: int | None = None
    bidegree: tuple | None = None
    q: float = 0.5
    phi: float = 0.3
    cutoff: int | None = None
    margin: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.degree is not None and self.degree < 0:
            raise ValueError("degree must be non-negative")
        if self.bidegree is not None and min(self.bidegree) < 0:
            raise ValueError("bidegree must be non-negative")
        if not 0 < self.q < 1:
            raise ValueError("q must lie in (0, 1)")

    def d(self, default: int) -> int:
        return default if self.degree is None else self.degree

    def as_dict(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def from_report(cid: str, anchor: str, rep, expect_ok: bool = True) -> dict:
    """A record from an exact :class:`hopf.Report` (``expect_ok=False``: negative control)."""
    ok = rep.ok == expect_ok
    out = {"id": cid, "anchor": anchor, "status": "pass" if ok else "fail", "checked": rep.checked}
    if rep.failures:
        out["witness"] = rep.failures[0]
    return out


def record(cid, anchor, ok, **extra) -> dict:
    return {"id": cid, "anchor": anchor, "status": "pass" if ok else "fail", **extra}


# -- exact suites -----------------------------------------------------------------

def suite_hopf(cfg: RunConfig):
    d = cfg.d(4)
    out = []
    for name, params in (("z2", {}), ("zp", {"p": 3}), ("u1", {}), ("su2", {})):
        H = hopf.hopf_algebra(name, **params)
        out.append(from_report(f"hopf.axioms.{H.name}", "Hopf algebra axioms",
                               hopf.verify_hopf_axioms(H, d)))
    maps = hopf.bundled_hopf_maps()
    for key in ("pi2", "pi", "f1f2", "pi_p"):
        out.append(from_report(f"hopf.map.{key}", "Hopf algebra maps", hopf.verify_hopf_map(maps[key], d)))
    for key, pi in (("iota", "pi"), ("iota_u1", "f1f2"), ("section_pi2", "pi2")):
        out.append(from_report(f"hopf.section.{key}", "bicolinear sections",
                               hopf.verify_section(maps[key], maps[pi], d)))
    return out


def suite_comodule(cfg: RunConfig):
    d = cfg.d(4)
    out = []
    for name, params in PRESENTATIONS:
        P = load_presentation(name, **params)
        rep = confluence_probe(P, d, seed=cfg.seed)
        out.append(record(f"comodule.confluence.{P.name}", "normal-form basis (Diamond lemma)",
                          rep.ok, dimensions=rep.dimensions))
    coactions = [comod.sphere_z2_coaction(m) for m in range(1, 6)]
    coactions += [comod.sphere_u1_coaction(m) for m in (1, 3, 5)]
    coactions += [comod.sphere_zp_coaction(3, 3), comod.s3_su2_coaction()]
    for rho in coactions:
        out.append(from_report(f"comodule.coaction.{rho.A.name}.{rho.H.name}", "comodule algebra axioms",
                               comod.verify_comodule_algebra(rho, min(d, 3))))
    out.append(from_report("comodule.rp2.relations", "O(RP²_q) relations", principal.rp2_corpus_report()))
    maps = hopf.bundled_hopf_maps()
    for m, key in ((2, "pi2"), (3, "pi2"), (2, "pi"), (3, "pi")):
        rep = comod.check_coinvariant_iso(comod.sphere_z2_coaction(m), maps[key], 3, 3)
        out.append(from_report(f"comodule.prolonged_coinvariants.s{m}.{key}",
                               "coinvariants of a prolongation", rep))
    return out


def suite_connections(cfg: RunConfig):
    d = cfg.d(4)
    out = []
    for m in range(1, 6):
        ell = principal.sphere_connection(m)
        out.append(from_report(f"connections.sphere.s{m}.axioms", "strong connection axioms",
                               principal.verify_strong_connection(ell, d)))
        out.append(from_report(f"connections.sphere.s{m}.galois", "can∘ℓ(h) = 1⊗h",
                               principal.galois_report(ell, d)))
    bad = principal.truncated_connection(2)
    out.append(from_report("connections.truncated.s2.rejected", "strong connection axioms",
                           principal.verify_strong_connection(bad, d), expect_ok=False))
    out.append(from_report("connections.section.s2", "connection from a section",
                           principal.section_connection_report(d)))
    for m in (1, 3, 5):
        ell = principal.sphere_u1_connection(m)
        rep = principal.verify_strong_connection(ell, min(d, 3)).merge(principal.galois_report(ell, min(d, 3)))
        out.append(from_report(f"connections.u1.s{m}", "strong connection axioms", rep))
    for j in (principal.s3_identity_cleaving(), principal.z2_identity_cleaving()):
        ell = principal.connection_from_cleaving(j, 3)
        out.append(from_report(f"connections.cleaving.{j.comodule.M.name}", "ℓ = (j⁻¹⊗j)∘Δ",
                               principal.verify_strong_connection(ell, 3)))
    return out


def suite_cleft(cfg: RunConfig):
    out = []
    f = principal.f2_cleaving()
    d = cfg.d(3)
    out.append(from_report("cleft.f2.cleaving", "colinear convolution-invertible f₂", f.verify(d)))
    out.append(from_report("cleft.f2.covariance", "covariance of f⁻¹", principal.invcov_report(f, d)))
    rep = principal.cleft_report(f, d=d, seed=cfg.seed, bidegree=cfg.bidegree or (3, 3))
    out.append(from_report("cleft.f2.theta_crossed", "θ, θ⁻¹ and the crossed product", rep))
    for m in (2, 3):
        ev = principal.nontriviality_evidence(m, 6, seed=cfg.seed)
        out.append(record(f"cleft.nontriviality.s{m}", "non-triviality (degree-bounded evidence)",
                          ev.ok, bounded_degree=ev.bounded_degree, candidates=len(ev.candidates),
                          inverses_found=ev.inverses_found, note=ev.note))
    return out


def suite_prolong(cfg: RunConfig):
    d = cfg.d(3)
    out = []
    maps = hopf.bundled_hopf_maps()
    for m, group in principal.PROLONGATION_PAIRS:
        pi = maps["pi2"] if group == "u1" else maps["pi"]
        ell = principal.prolong_connection(principal.sphere_connection(m), pi)
        rep = principal.verify_strong_connection(ell, d).merge(principal.cotensor_halves_report(ell, d))
        out.append(from_report(f"prolong.s{m}.{group}", "prolongation of a strong connection", rep))
    f = principal.f2_cleaving()
    ell = principal.cleft_cotensor_connection(f)
    rep = principal.verify_strong_connection(ell, d).merge(principal.cotensor_halves_report(ell, d))
    out.append(from_report("prolong.cleft_connection.s2.su2", "connection from a cleaving of Ā□H", rep))
    other = principal.connection_from_cleaving(principal.theta_cleaving(f))
    agree = hopf.Report("θ-cleaving agreement")
    for w in ell.basis(d):
        agree.check("same value", f.H.P.format_word(w), ell.key(w) - other.key(w))
    out.append(from_report("prolong.cleft_connection.agreement", "ℓ = (j⁻¹⊗j)∘Δ", agree))
    return out


def suite_smash(cfg: RunConfig):
    return [from_report("smash.rp2.actions", "smash action on O(RP²_q)",
                        principal.smash_report(seed=cfg.seed))]


def suite_phi(cfg: RunConfig):
    out = []
    bid = cfg.bidegree or (4, 4)
    for n in (1, 2):
        out.append(from_report(f"phi.a{2 * n}", "Φ: A^{2n} ≅ O(S^{2n}_q)□O(U(1))",
                               principal.phi_report(n, bid)))
    maps = hopf.bundled_hopf_maps()
    rho = comod.sphere_u1_coaction(3)
    for key in ("pi2", "pi_p"):
        rep = comod.kappa_roundtrip_report(rho, maps[key], cfg.d(4), seed=cfg.seed)
        out.append(from_report(f"phi.kappa.s3.{key}", "κ: A ⊗ coH̄H ≅ A□H", rep))
    return out


def suite_mu(cfg: RunConfig):
    return [from_report("mu.f2.psi", "Ψ and the Miyashita–Ulbrich action",
                        principal.mu_report(seed=cfg.seed))]


# -- numeric suites ------------------------------------------------------------------

def suite_reps(cfg: RunConfig):
    K = cfg.cutoff or 30
    out = []
    specs = [
        ("phi.n1.plus", reps.RepresentationSpec("phi", 1, cfg.q, K, phi=cfg.phi, sign=1)),
        ("phi.n1.minus", reps.RepresentationSpec("phi", 1, cfg.q, K, phi=cfg.phi, sign=-1)),
        ("phi.n2.plus", reps.RepresentationSpec("phi", 2, cfg.q, K, phi=cfg.phi, sign=1)),
        ("phi.n2.minus", reps.RepresentationSpec("phi", 2, cfg.q, K, phi=cfg.phi, sign=-1)),
        ("zero.n2", reps.RepresentationSpec("zero", 2, cfg.q, K, lam=cmath.exp(0.7j),
                                            mu=cmath.exp(-1.1j))),
    ]
    for name, spec in specs:
        r = reps.verify_relations_numeric(spec, cfg.margin)
        out.append(record(f"reps.{name}.relations", "relations of A^{2n} on the interior", r.ok,
                          numeric={"max_residual": r.max_residual}, failures=r.failures()))
        adj = reps.adjoint_consistency(spec, margin=cfg.margin, seed=cfg.seed)
        out.append(record(f"reps.{name}.adjoint", "π(x*) = π(x)†", adj < 1e-12,
                          numeric={"max_deviation": adj}))
    dev = reps.prolongation_consistency(2, cmath.exp(0.4j), cmath.exp(1.3j), cfg.q, min(K, 20), cfg.margin)
    out.append(record("reps.zero.n2.prolongation", "odd sphere ⊗ U(1) character", dev < 1e-12,
                      numeric={"max_deviation": dev}))
    return out


def suite_fredholm(cfg: RunConfig):
    K = cfg.cutoff or 60
    out = []
    for n in (1, 2):
        rep = fredholm.fredholm_report(n, cfg.phi, cfg.q, K, seed=cfg.seed)
        for r in rep["records"]:
            r["anchor"] = "even Fredholm module and τ"
            out.append(r)
    M = fredholm.build_fredholm(1, cfg.phi, cfg.q, K)
    P = M.algebra
    dec = fredholm.commutator_decay(P.gen("zeta1"), M)
    out.append(record("fredholm.n1.decay.zeta1", "[F, π(a)] trace class",
                      abs(dec["decay_ratio"] - cfg.q) < 1e-9, numeric=dec))
    for g in ("xi",):
        dec = fredholm.commutator_decay(P.gen(g), M)
        out.append(record(f"fredholm.n1.decay.{g}", "[F, π(a)] trace class", dec["commutator_zero"]))
    return out


SUITES = {
    "hopf": suite_hopf, "comodule": suite_comodule, "connections": suite_connections,
    "cleft": suite_cleft, "prolong": suite_prolong, "smash": suite_smash, "phi": suite_phi,
    "mu": suite_mu, "reps": suite_reps, "fredholm": suite_fredholm,
}


def run_suite(name: str, cfg: RunConfig):
    names = list(SUITES) if name == "all" else [name]
    records = []
    for n in names:
        records.extend(SUITES[n](cfg))
    return sorted(records, key=lambda r: r["id"])

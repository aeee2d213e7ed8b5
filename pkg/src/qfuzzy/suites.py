"""Registry of named check suites and the runner behind ``qfuzzy check``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bicross, dga, hopf, spheres
from . import rmatrix as rm
from .freealg import Presentation
from .loader import load_algebra, load_rmatrix, shipped_algebras
from .report import CheckReport, ReportBuilder
from .scalars import ONE, Q, T, Scalar

__all__ = ["SuiteOptions", "SUITES", "suite_names", "run_suite", "run_all", "UnknownSuite"]


class UnknownSuite(KeyError):
    pass


@dataclass
class SuiteOptions:
    """Options shared by all suites.

    ``q_at`` specializes every residual at a rational q (a rational square,
    so that q^(1/2) stays rational); ``params`` sets suite parameters such as
    ``t``; ``rmatrix`` points the R-matrix suites at an ``.rmat`` file.
    """

    q_at: Fraction | None = None
    max_degree: int | None = None
    seed: int = 0
    params: dict = field(default_factory=dict)
    rmatrix: str | None = None

    @property
    def at(self) -> dict:
        return {} if self.q_at is None else {"q": self.q_at}

    def degree(self, default: int) -> int:
        return self.max_degree if self.max_degree is not None else default

    def param(self, name: str, default):
        v = self.params.get(name)
        return default if v is None else Scalar.coerce(v)


# ---------------------------------------------------------------------------
# dga suites


def _calculus_core(o: SuiteOptions) -> CheckReport:
    rb = ReportBuilder("dga:core", o.at)
    gp = dga.omega_bqsu2()
    g = gp.gens()
    al, be, ga, de = (g[x] for x in dga.FUNCS_B)
    ec = g["e_c"]
    rb.check("confluence", f"Ω(B_q[SU₂]) is locally confluent to degree {o.degree(5)}", [f.difference for f in gp.check_local_confluence(o.degree(5))])
    rb.check("d-det", "d(αδ - q²γβ) = 0", [gp.d(al * de - Q * Q * ga * be)])
    p = gp.p
    left = p.normalize((p.normalize((ec * ec).terms) * de).terms)
    right = p.normalize((ec * p.normalize((ec * de).terms)).terms)
    rb.check("ec2-delta", "e_c²δ = 0 in both evaluation orders", [left, right])
    rb.check("d-squared", "d² = 0 on generators", [gp.d(gp.d(g[x])) for x in gp.generators])
    fails = gp.leibniz_check(samples=60, seed=o.seed, max_len=3)
    rb.check("leibniz", "graded Leibniz rule on 60 random products of degree ≤ 3", [f[-1] for f in fails])
    rb.check("inner", "d = μ⁻¹[θ, ·] with θ = e_a + e_d", [gp.d(g["α"]) - (g["e_a"] + g["e_d"]) * al * mu_inv() + al * (g["e_a"] + g["e_d"]) * mu_inv()])
    return rb.finish()


def mu_inv() -> Scalar:
    return (1 - Q**-2).inverse()


def _eq9(o: SuiteOptions) -> CheckReport:
    rb = ReportBuilder("dga:eq9-crosscheck", o.at)
    fails = dga.eq9_crosscheck("quantum-group")
    rb.check("quantum-group", "R-matrix bimodule relations and the hand-written sixteen generate the same ideal", [f[2] for f in fails])
    ctrl = dga.eq9_crosscheck("hecke")
    rb.expect(
        "hecke-control",
        "Hecke normalization gives a different ideal (negative control)",
        bool(ctrl),
        detail=f"{len(ctrl)} non-members",
    )
    gp = dga.omega_bqsu2_from_eq9()
    rb.check("eq9-confluence", "calculus built from the R-matrix relations is locally confluent to degree 4", [f.difference for f in gp.check_local_confluence(o.degree(4))])
    return rb.finish()


def _localized(o: SuiteOptions) -> CheckReport:
    rb = ReportBuilder("dga:localized", o.at)
    W = dga.omega_uqsu2()
    free = rm.graded_alphabet(dga.FUNCS_B, dga.FORMS)
    fg = free.gens()
    img = dga.localization_images(W.p)
    from .freealg import substitute

    rb.check("confluence", "Ω(U_q(su₂)) is locally confluent to degree 5", [f.difference for f in W.check_local_confluence(o.degree(5))])
    rb.check("hand-relation-images", "localization maps every bimodule relation of Ω(B_q[SU₂]) to zero", [substitute(r, img, W.p) for r in dga.hand_bimodule_relations(fg)])
    rb.check("function-images", "localization maps the B_q[SU₂] relations to zero", [substitute(r, img, W.p) for r in dga.bqsu2_relations(fg)])
    g = W.gens()
    K, th = g["K"], g["e_a"] + g["e_d"]
    lh = dga.lambda_hat()
    rb.check("dK-K", "dK·K = (1 + λ̂)K dK + λ̂K²θ, λ̂ = q^(1/2)(1 - q^(-1/2))²", [W.d(K) * K - (1 + lh) * K * W.d(K) - lh * K * K * th])
    derived, _ = dga.derive_localized_rules()
    rb.check(
        "derived-agree",
        "e·x± relations derived from the e·K relations agree with the shipped ones",
        [derived.normalize(r) for r in dga.localized_relations(derived.gens())],
    )
    rb.check("d-squared", "d² = 0 on generators", [W.d(W.d(g[x])) for x in W.generators])
    audit = dga.localized_audit()
    rb.note("printed-relations-failing", {k: sorted(v) for k, v in audit.items() if k != "corrected"})
    rb.note("localization-c", dga.localization_c())
    return rb.finish()


def _trace_constraint(o: SuiteOptions) -> CheckReport:
    rb = ReportBuilder("dga:trace-constraint", o.at)
    rep = dga.trace_constraint_check()
    rb.expect("constraint-nonzero", "Tr_q(u)θ - q⁻¹(1 + q⁻¹)(αe_d + δe_a - q⁻¹βe_b - qγe_c) is nonzero in Ω(B_q[SU₂])", rep.constraint_nonzero)
    rb.expect(
        "d-trace",
        "d(Tr_q(u)) is a nonzero multiple of that element",
        rep.ok,
        rep.d_trace,
        detail=None if rep.ratio is None else f"ratio {rep.ratio}",
    )
    if rep.ratio is not None:
        rb.equal("ratio", "d(Tr_q(u)) = q²/(q + 1) times the constraint", rep.ratio, Q * Q / (Q + 1))
    gp = dga.omega_qfuzzy()
    fails = gp.check_local_confluence(4)
    rb.note("qfuzzy-critical-pairs", len(fails))
    t = o.param("t", None)
    if t is not None:
        comp, _ = dga.qfuzzy_completion(t)
        rb.note("surviving-forms", dga.surviving_forms(comp))
    return rb.finish()


def _appendix(o: SuiteOptions) -> CheckReport:
    rb = ReportBuilder("dga:appendix", o.at)
    h = hopf.cqsu2_hopf()
    ct = hopf.CalculusTwist(h)
    deg = o.degree(2)

    def rows(bad):
        return [b[-1] for b in bad] if bad else []

    rb.check("antipode", f"antipode axioms on words of degree ≤ {deg}", [ONE] * len(hopf.antipode_axiom_check(h, deg)))
    rb.check("cqt-welldefined", f"the coquasitriangular structure annihilates the FRT relations (degree ≤ {deg})", [ONE] * len(hopf.cqt_welldefined_check(h, deg)))
    rb.check("reflection", "transmuted generators satisfy the reflection equation", rows(hopf.transmuted_reflection_check(h)))
    rb.check("products", "transmuted and cotwisted products agree on generators", rows(ct.product_agreement_check()))
    rb.check("eq9-transmuted", "transmuted bimodule satisfies the R-matrix relations", rows(ct.eq9_transmuted_check()))
    rb.check("eq9-cotwist", "cotwisted bimodule relations match the R-matrix relations under Θ", rows(ct.eq9_cotwist_check()))
    rb.check("theta-roundtrip", "Θ⁻¹∘Θ = id on ω of words of degree ≤ 2 (4 invariant forms and 16 quadratic words)", [ONE] * len(ct.theta_roundtrip_check(2)))
    rb.check("differential", "da = a₍₁₎•Θ(ω(a₍₂₎)) on generators", rows(ct.differential_check()))
    ratio, bad = ct.inner_check()
    rb.expect("inner", "θ•a - a•θ is a fixed multiple of da", ratio is not None and not bad, detail=f"ratio {ratio}")
    gp = dga.omega_cqsu2()
    dt = dga.dt_formula(gp, "row")
    rb.check("dt", "dt^a_b = σ(t^a_c (R₂₁R)^c_b^m_n e_m^n - t^a_b θ) with (m, n) read as row and column", [dt[x] - gp.d(gp.gen(x)) for x in dt])
    rb.check("maurer-cartan", "dω + ωω = 0 on generators of Ω(C_q[SU₂])", [r for _, r in dga.maurer_cartan_check(gp)])
    rb.expect("mc-rank", "ω spans the four invariant forms at rational q", dga.mc_rank(gp) == [4, 4, 4])
    return rb.finish()


# ---------------------------------------------------------------------------
# R-matrix suites


def _rmatrices(o: SuiteOptions) -> dict:
    if o.rmatrix:
        R = load_rmatrix(o.rmatrix)
        return {R.name: R}
    return {n: load_rmatrix(n) for n in ("standard", "twisted", "gl11")}


def _ybe(o: SuiteOptions) -> CheckReport:
    rb = ReportBuilder("rmatrix:ybe", o.at)
    for name, R in _rmatrices(o).items():
        res = rm.ybe_check(R)
        rb.check(f"ybe:{name}", f"R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂ for {name}", list(res.residual.values()))
        if R.normalization == "hecke" and res.ok:
            rb.check(f"inverse:{name}", f"second inverse exists for {name}", rm.second_inverse_residuals(R))
    return rb.finish()


def _braided(o: SuiteOptions) -> CheckReport:
    rb = ReportBuilder("rmatrix:spheres", o.at)
    deg = o.degree(4)
    for name, R in _rmatrices(o).items():
        if not rm.ybe_check(R).ok or not rm.real_type_check(R):
            rb.skip(f"sphere:{name}", f"braided sphere for {name}", "R fails the braid relation or is not of real type")
            continue
        rels, p = rm.braided_sphere_relations(R)
        bare = Presentation(p.name + "_bare", p.generators, rels, star={"a": "a", "b": "b†"}, star_closure=False)
        rb.check(f"star-closed:{name}", f"the ideal of e² = e is closed under † for {name}", [bare.star(r) for r in rels])
        rb.check(f"confluence:{name}", f"braided sphere for {name} is locally confluent to degree {deg}", [f.difference for f in p.check_local_confluence(deg)])
        u = p.meta["u"]
        x = p.element(p.meta["x"])
        e = [[x, p.gen("b")], [p.gen("b†"), p.gen("a")]]
        tr = sum((e[i][j] * u[j][i] for i in range(2) for j in range(2)), p.zero())
        rb.check(f"trace-real:{name}", f"trace(eu) is star-fixed for {name}", [p.star(tr) - tr])
    return rb.finish()


# ---------------------------------------------------------------------------
# robustness


def shipped_presentations() -> dict[str, Callable]:
    out: dict = {n: (lambda n=n: load_algebra(n)) for n in shipped_algebras()}
    out.update(
        {
            "omega_bqsu2": dga.omega_bqsu2,
            "omega_cqsu2": dga.omega_cqsu2,
            "omega_uqsu2": dga.omega_uqsu2,
            "omega_qfuzzy": dga.omega_qfuzzy,
        }
    )
    return out


def _robustness(o: SuiteOptions) -> CheckReport:
    rb = ReportBuilder("robustness", o.at)
    deg = o.degree(5)
    for name, make in shipped_presentations().items():
        fails = make().check_local_confluence(deg)
        rb.check(f"confluence:{name}", f"{name} is locally confluent to degree {deg}", [f.difference for f in fails], detail=f"{len(fails)} failing ambiguities" if fails else None)
    controls = {
        "broken-ybe": run_suite("rmatrix:ybe", SuiteOptions(rmatrix="perturbed")),
        "wrong-normalization": _eq9_variant("hecke", "xy-pyx"),
        "wrong-commutator": _eq9_variant("quantum-group", "xy-p^-1yx"),
    }
    for cid, rep in controls.items():
        rb.expect(f"control:{cid}", f"perturbation '{cid}' produces a fail report", not rep.ok, detail=f"{len(rep.failures)} failing claims")
    return rb.finish()


def _eq9_variant(normalization: str, convention: str) -> CheckReport:
    rb = ReportBuilder(f"dga:eq9[{normalization},{convention}]")
    fails = dga.eq9_crosscheck(normalization, convention)
    rb.check("ideal", "R-matrix and hand-written bimodule relations agree", [f[2] for f in fails])
    return rb.finish()


# ---------------------------------------------------------------------------
# registry


def _spheres(kind):
    return lambda o: spheres.projector_suite(kind, o.at)


SUITES: dict[str, tuple[Callable[[SuiteOptions], CheckReport], str]] = {
    "spheres:classical": (_spheres("classical"), "classical sphere projector"),
    "spheres:fuzzy": (_spheres("fuzzy"), "fuzzy sphere projector"),
    "spheres:qsphere": (_spheres("qsphere"), "standard q-sphere projector"),
    "spheres:qfuzzy": (_spheres("qfuzzy"), "q-fuzzy sphere projector"),
    "spheres:pauli": (lambda o: spheres.pauli_form_check(o.at), "Pauli-matrix form of the fuzzy projector"),
    "spheres:prop1": (lambda o: spheres.prop1_suite(o.at), "q-fuzzy sphere versus Podleś sphere isomorphisms"),
    "spheres:prop3": (lambda o: spheres.prop3_suite(o.param("t", T), o.at), "Casimir quotient and the Podleś patch"),
    "spheres:prop4": (lambda o: spheres.prop4_suite(o.param("t", T), o.at), "time slices of B_q[SU₂] as q-fuzzy spheres"),
    "spheres:localization": (lambda o: spheres.localization_suite(o.at), "localization of B_q[SU₂] into U_q(su₂)"),
    "rmatrix:ybe": (_ybe, "braid relation for shipped or given R-matrices"),
    "rmatrix:spheres": (_braided, "braided spheres from real-type R-matrices"),
    "dga:core": (_calculus_core, "the 4D calculus on B_q[SU₂]"),
    "dga:eq9-crosscheck": (_eq9, "R-matrix versus hand-written bimodule relations"),
    "dga:localized": (_localized, "the calculus on U_q(su₂) by localization"),
    "dga:trace-constraint": (_trace_constraint, "d of the q-trace on the time slice"),
    "dga:appendix": (_appendix, "transmutation, cotwist and Maurer–Cartan checks"),
    "bicross:dga": (lambda o: bicross.dga_suite(o.at, o.degree(5), o.seed), "calculus on the bicrossproduct spacetime"),
    "bicross:limit": (lambda o: bicross.limit_from_cqsu2(o.at), "leading-order limit from Ω(C_q[SU₂])"),
    "bicross:partials": (lambda o: bicross.partials_suite(o.at, o.degree(4)), "partial derivatives and the extended classical formula"),
    "bicross:laplacian": (lambda o: bicross.laplacian_suite(o.at), "plane-wave eigenvalues of the Laplacian"),
    "robustness": (_robustness, "confluence of all shipped presentations and negative controls"),
}


def suite_names() -> list[str]:
    return sorted(SUITES)


def run_suite(name: str, options: SuiteOptions | None = None) -> CheckReport:
    """Run one registered suite; a pole under ``q_at`` raises :class:`~qfuzzy.scalars.PoleError`."""
    if name not in SUITES:
        raise UnknownSuite(name)
    return SUITES[name][0](options or SuiteOptions())


def run_all(options: SuiteOptions | None = None, names=None) -> list[CheckReport]:
    """Run suites (all by default) and return reports ordered by suite name."""
    return [run_suite(n, options) for n in sorted(names or SUITES)]

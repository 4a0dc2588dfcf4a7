"""
Report assembly behind the command line.

Every builder takes a validated RunConfig and returns a ReportDocument with the
computed results and the list of audited identities. Results hold only JSON
scalars, field elements rendered as canonical strings.
"""

import logging
import time
from collections.abc import Callable, Mapping

from quantum_clifford import braiding as br
from quantum_clifford import clifford as cl
from quantum_clifford import dirac as dr
from quantum_clifford import quadratic as qa
from quantum_clifford.exceptions import NotCominuscule, QuantumCliffordError
from quantum_clifford.models.config import RunConfig
from quantum_clifford.models.documents import ModuleDocument, ReportDocument, RootSystemDocument
from quantum_clifford.modules import (
    GrothendieckElement,
    WeightModule,
    decompose,
    direct_sum,
    fundamental_module,
    probe_equal,
    seed_module,
    simple_module,
)
from quantum_clifford.roots import ParabolicDatum, RootSystem, abelian_radical, build_root_system
from quantum_clifford.scalars import FieldElement, ScalarContext
from quantum_clifford.utils import cache, linalg
from quantum_clifford.utils.helpers import content_hash, render_matrix

logger = logging.getLogger(__name__)

ReportBuilder = Callable[[RunConfig], ReportDocument]


# shared construction steps


def _root_system(config: RunConfig) -> RootSystem:
    return build_root_system(config.root_type, config.rank)


def _scalars(config: RunConfig, rs: RootSystem) -> ScalarContext:
    return rs.scalars(config.denominator)


def _weight(config: RunConfig, rs: RootSystem) -> tuple[int, ...]:
    return config.weight if config.weight is not None else rs.fundamental_weight(0)


def _grothendieck(element: GrothendieckElement) -> dict[str, int]:
    return {",".join(map(str, w)): m for w, m in element.multiplicities.items()}


def load_module(config: RunConfig, rs: RootSystem, scalars: ScalarContext) -> WeightModule:
    """
    V(lambda) for the configured weight, through the cache. A reloaded module
    is audited exactly like a fresh one.
    """
    weight = _weight(config, rs)
    digest = content_hash({"type": str(rs), "weight": list(weight), "D": scalars.D})
    document = cache.load(config.cache_dir, "module", digest)
    if document is not None:
        module = ModuleDocument.model_validate(document).to_module()
        module.verify_relations()
        return module
    module = simple_module(rs, weight, scalars)
    module.verify_relations()
    cache.store(config.cache_dir, "module", digest, ModuleDocument.from_module(module).model_dump())
    return module


def _context(config: RunConfig) -> cl.CominusculeContext:
    rs = _root_system(config)
    if config.node is None:
        raise NotCominuscule(
            f"a cominuscule node is required for {rs}",
            {"type": str(rs), "cominuscule": [s + 1 for s in rs.cominuscule_nodes]},
        )
    return cl.build_context(
        config.root_type,
        config.rank,
        config.node - 1,
        denominator=config.denominator,
        probe_degree=config.probe_degree,
        max_tensor_dim=config.max_tensor_dim,
    )


def _audit(report: ReportDocument, name: str, check: Callable[[], object]) -> bool:
    """Run one audit; a library failure is recorded as a failed verification."""
    try:
        outcome = check()
    except QuantumCliffordError as e:
        return report.check(name, False, f"{e.invariant}: {e.message}")
    return report.check(name, bool(outcome))


def _table(header: list[str], rows: list[list[object]]) -> dict[str, list]:
    return {"header": header, "rows": rows}


# root data


def roots_report(config: RunConfig) -> ReportDocument:
    rs = _root_system(config)
    report = ReportDocument(command="roots", config=config)
    report.results = RootSystemDocument.from_root_system(rs).model_dump()
    word = rs.longest_word()
    report.results["longest_word"] = [i + 1 for i in word]
    report.results["rho"] = list(rs.rho)
    report.check("longest word is reduced", rs.is_reduced(word))
    report.check("length of w0 equals |Phi+|", len(word) == len(rs.positive_roots))
    if config.weight is not None:
        report.results["weyl_dimension"] = rs.weyl_dimension(config.weight)
    report.results["table"] = _table(
        ["root", "height"], [[",".join(map(str, r)), rs.height(r)] for r in rs.positive_roots]
    )
    return report


def cominuscule_report(config: RunConfig) -> ReportDocument:
    rs = _root_system(config)
    report = ReportDocument(command="cominuscule", config=config)
    nodes = []
    for s in rs.cominuscule_nodes:
        parabolic = ParabolicDatum(rs, s)
        nodes.append(
            {
                "node": s + 1,
                "N": parabolic.N,
                "radical_roots": [list(xi) for xi in parabolic.radical_roots],
                "levi": [i + 1 for i in parabolic.levi_indices],
            }
        )
        report.check(f"u_+ is abelian for s={s + 1}", abelian_radical(parabolic))
        _audit(
            report, f"parabolic factorization for s={s + 1}", lambda p=parabolic: p.verify() or True
        )
    report.results = {
        "type": str(rs),
        "highest_root": list(rs.highest_root),
        "nodes": [n["node"] for n in nodes],
        "parabolics": nodes,
        "table": _table(["node", "N"], [[n["node"], n["N"]] for n in nodes]),
    }
    return report


# modules and braidings


def rep_report(config: RunConfig) -> ReportDocument:
    rs = _root_system(config)
    scalars = _scalars(config, rs)
    module = load_module(config, rs, scalars)
    report = ReportDocument(command="rep", config=config)
    weight = _weight(config, rs)
    report.results = {
        "weight": list(weight),
        "dimension": module.dim,
        "weights": [list(w) for w in module.weights],
        "module": ModuleDocument.from_module(module).model_dump(),
    }
    report.check(
        "dimension matches the Weyl dimension formula", module.dim == rs.weyl_dimension(weight)
    )
    report.check("module is simple", decompose(module) == GrothendieckElement({weight: 1}))
    report.results["table"] = _table(
        ["weight", "multiplicity"],
        [[",".join(map(str, w)), len(idx)] for w, idx in sorted(module.weight_spaces.items())],
    )
    return report


def braiding_report(config: RunConfig) -> ReportDocument:
    rs = _root_system(config)
    scalars = _scalars(config, rs)
    module = load_module(config, rs, scalars)
    report = ReportDocument(command="braiding", config=config)
    r_hat = br.braiding(module, module)
    sigma = br.commutor(module, module)
    report.results = {
        "dimension": module.dim,
        "braiding": render_matrix(scalars, r_hat.matrix),
        "commutor": render_matrix(scalars, sigma.matrix),
    }
    report.check("braiding is a module map", r_hat.is_module_map())
    report.check("commutor is a module map", sigma.is_module_map())
    report.check("commutor is involutive", br.symmetry_holds(module, module))
    report.check("Yang-Baxter equation", br.yang_baxter_holds(module))
    report.check("commutor is the flip at q = 1", br.classical_limit_is_flip(module, module))
    if module.dim <= 3:
        for key, holds in br.cactus_relations(module, 3).items():
            report.check(f"cactus relations on V^3: {key}", holds)
    return report


# quadratic algebras


def _algebras(config: RunConfig) -> tuple[ScalarContext, qa.QuadraticAlgebra, qa.QuadraticAlgebra]:
    rs = _root_system(config)
    scalars = _scalars(config, rs)
    module = load_module(config, rs, scalars)
    return (
        scalars,
        qa.symmetric_algebra(module, config.max_tensor_dim),
        qa.exterior_algebra(module, config.max_tensor_dim),
    )


def qsym_report(config: RunConfig) -> ReportDocument:
    scalars, symmetric, exterior = _algebras(config)
    report = ReportDocument(command="qsym", config=config)
    report.results = {
        "symmetric_relations": symmetric.rewrite_to_ordered().render(scalars),
        "exterior_relations": exterior.rewrite_to_ordered().render(scalars),
    }
    dual = symmetric.quadratic_dual()
    report.check(
        "S_q(V)^! has the relations of Lambda_q(V*)",
        qa.same_span(dual.relations, qa.sym_square(dual.module)),
    )
    return report


def hilbert_report(config: RunConfig) -> ReportDocument:
    _, symmetric, exterior = _algebras(config)
    report = ReportDocument(command="hilbert", config=config)
    sym = symmetric.hilbert_series(config.degree)
    ext = exterior.hilbert_series(config.degree)
    rows = [
        [n, sym[n], ext[n], symmetric.classical_dimension(n), exterior.classical_dimension(n)]
        for n in range(config.degree + 1)
    ]
    report.results = {
        "symmetric": list(sym.dimensions),
        "exterior": list(ext.dimensions),
        "table": _table(
            ["degree", "symmetric", "exterior", "classical_symmetric", "classical_exterior"], rows
        ),
    }
    report.check("degree one is V", sym[1] == ext[1] == symmetric.dim)
    return report


def flatness_report(config: RunConfig) -> ReportDocument:
    _, symmetric, exterior = _algebras(config)
    report = ReportDocument(command="flatness", config=config)
    degree = max(config.degree, 3)
    results = {}
    for name, algebra in (("symmetric", symmetric), ("exterior", exterior)):
        flat = algebra.is_flat(degree)
        results[name] = {
            "flat": flat.flat,
            "witness_degree": flat.witness_degree,
            "quantum": list(flat.quantum),
            "classical": list(flat.classical),
        }
    report.results = results
    report.check(
        "S_q(V) and Lambda_q(V) are flat together",
        results["symmetric"]["flat"] == results["exterior"]["flat"],
    )
    return report


def collapse3_report(config: RunConfig) -> ReportDocument:
    rs = _root_system(config)
    scalars = _scalars(config, rs)
    module = load_module(config, rs, scalars)
    report = ReportDocument(command="collapse3", config=config)
    collapse = qa.collapse_deficit_degree3(module)
    low = qa.low_cubes(module)
    report.results = {
        "quantum_symmetric": _grothendieck(collapse.quantum_symmetric),
        "quantum_exterior": _grothendieck(collapse.quantum_exterior),
        "classical_symmetric": _grothendieck(collapse.classical_symmetric),
        "classical_exterior": _grothendieck(collapse.classical_exterior),
        "symmetric_dimension": collapse.symmetric_dimension,
        "exterior_dimension": collapse.exterior_dimension,
        "low_symmetric": _grothendieck(low.symmetric_low),
        "low_exterior": _grothendieck(low.exterior_low),
        "koszul_defect": qa.koszul_numerical_defect(module),
    }
    report.check("[S3_q] - [L3_q] = [S3] - [L3]", collapse.equal)
    report.check(
        "dim S3_q - dim L3_q = (dim V)^2",
        collapse.symmetric_dimension - collapse.exterior_dimension == module.dim**2,
    )
    report.results["low_cubes_match"] = low.matches
    return report


# Clifford algebra and Dirac element


def _expansion(ctx: cl.CominusculeContext, expansion: Mapping) -> str:
    return cl.render_expansion(ctx, expansion)


def clifford_report(config: RunConfig) -> ReportDocument:
    ctx = _context(config)
    scalars = ctx.scalars
    report = ReportDocument(command="clifford", config=config)
    schubert = cl.verify_schubert_quadratic(ctx)
    plus = cl.exterior_algebra(ctx, "+")
    minus = cl.exterior_algebra(ctx, "-")
    star = cl.clifford_star(ctx, config.star_preset)
    report.results = {
        "context": str(ctx),
        "radical_roots": [list(xi) for xi in ctx.radical_roots],
        "schubert_generators": [str(e) for e in ctx.schubert],
        "schubert_scales": [scalars.render(c) for c in ctx.schubert_scales],
        "schubert_relations": [
            {
                "k": r.k + 1,
                "l": r.l + 1,
                "exponent": str(r.exponent),
                "middle_terms": len(r.coefficients),
            }
            for r in schubert
        ],
        "plus_relations": plus.render_relations(),
        "minus_relations": minus.render_relations(),
        "graded_dimensions": list(plus.graded_dimensions()),
        "pairing": render_matrix(scalars, ctx.pairing.matrix),
        "creation": [render_matrix(scalars, cl.creation(ctx, k).matrix) for k in range(ctx.N)],
        "annihilation": [
            render_matrix(scalars, cl.annihilation(ctx, k).matrix) for k in range(ctx.N)
        ],
        "gamma_rank": ctx.gamma.rank,
        "commutation_relations": {
            f"x{i + 1}*y{j + 1}": _expansion(ctx, e)
            for (i, j), e in cl.all_commutation_relations(ctx).items()
        },
        "star_preset": config.star_preset,
        "star_of_creation": {
            f"x{k + 1}": _expansion(ctx, ctx.gamma.expand(star(cl.creation(ctx, k).matrix)))
            for k in range(ctx.N)
        },
    }
    presets = list(cl.STAR_PRESETS)
    sweep = cl.star_sweep(ctx, [cl.preset_alpha(scalars, name) for name in presets])
    report.results["star_sweep"] = [
        {"preset": name, "alpha": scalars.render_q(point.alpha), "degree": point.degree}
        for name, point in zip(presets, sweep, strict=True)
    ]
    report.check("Lambda_q(u_+) is flat", plus.is_flat())
    report.check("Lambda_q(u_-) is flat", minus.is_flat())
    report.check("leading terms of Lambda_q(u_+)", cl.leading_term_law(ctx, "+"))
    report.check("leading terms of Lambda_q(u_-)", cl.leading_term_law(ctx, "-"))
    report.check("gamma_+ is an algebra map", cl.is_gamma_homomorphism(ctx, "+"))
    report.check("gamma_- is an algebra map", cl.is_gamma_homomorphism(ctx, "-"))
    report.check("gamma_+ is U_q(l)-equivariant", cl.is_gamma_equivariant(ctx, "+"))
    report.check("gamma_- is U_q(l)-equivariant", cl.is_gamma_equivariant(ctx, "-"))
    report.check(f"rank gamma = 4^{ctx.N}", ctx.gamma.is_isomorphism)
    report.check("Frobenius left-ideal criterion", plus.left_ideal_criterion())
    _audit(report, "Frobenius dual basis", lambda: cl.frobenius_dual_basis(ctx, "+"))
    report.check("star is compatible with the adjoint action", cl.is_star_compatible(ctx, star))
    report.check(
        "star is an involution",
        all(star.is_involution(cl.creation(ctx, k).matrix) for k in range(ctx.N)),
    )
    _audit(
        report,
        "u_- is isomorphic to u_+ over the semisimple Levi",
        lambda: cl.semisimple_isomorphism(ctx),
    )
    return report


def _dirac_module(config: RunConfig, ctx: cl.CominusculeContext) -> WeightModule:
    rs = ctx.root_system
    weight = config.weight if config.weight is not None else rs.fundamental_weight(ctx.node)
    return load_module(config.model_copy(update={"weight": weight}), rs, ctx.scalars)


def dirac_report(config: RunConfig) -> ReportDocument:
    ctx = _context(config)
    report = ReportDocument(command="dirac", config=config)
    boundary = dr.koszul_boundary(ctx)
    _audit(
        report, "Koszul boundary squares to zero", lambda: dr.verify_eth_squared_zero(ctx, boundary)
    )
    module = _dirac_module(config, ctx)
    dirac = dr.dirac_element(ctx, module, cl.clifford_star(ctx, config.star_preset), boundary)
    square = dr.dirac_square_report(dirac)
    report.check("eth^2 = 0", square.eth_squared_zero)
    report.check("(eth*)^2 = 0", square.eth_star_squared_zero)
    report.check("D^2 = eth eth* + eth* eth", square.laplacian_identity)
    report.check("D is self-adjoint", square.self_adjoint)
    q_values = config.q_values or (0.5, 2.0)
    spectra = {}
    rows = []
    for q0 in q_values:
        spectrum = dr.dirac_spectrum(dirac, q0)
        spectra[repr(q0)] = [round(v, 10) for v in spectrum]
        rows += [[q0, k, round(v, 10)] for k, v in enumerate(spectrum)]
        if dr.gram_is_positive(dirac, (q0,)):
            form = dr.orthonormal_form(dirac, q0)
            report.check(f"orthonormalized D is symmetric at q = {q0}", form.is_symmetric)
    report.results = {
        "context": str(ctx),
        "module": str(module),
        "dimension": dirac.dim,
        "boundary": boundary.render(ctx.scalars),
        "spectra": spectra,
        "gram_positive": dr.gram_is_positive(dirac, q_values),
        "table": _table(["q", "index", "eigenvalue"], rows),
    }
    return report


# reference examples


def _quantum_plane(report: ReportDocument) -> None:
    rs = build_root_system("A", 1)
    scalars = rs.scalars()
    q, u = scalars.q_power(1), scalars.u
    module = seed_module(rs, scalars)
    r_hat = br.braiding(module, module).matrix
    sigma = br.commutor(module, module).matrix
    expected_r = linalg.from_entries(
        {(0, 0): u, (1, 1): u - u**-3, (1, 2): u**-1, (2, 1): u**-1, (3, 3): u},
        (4, 4),
        scalars.domain,
    )
    a = (q**2 - 1) / (q**2 + 1)
    b = 2 * q / (q**2 + 1)
    expected_sigma = linalg.from_entries(
        {(0, 0): scalars.one, (1, 1): a, (1, 2): b, (2, 1): b, (2, 2): -a, (3, 3): scalars.one},
        (4, 4),
        scalars.domain,
    )
    rules = qa.symmetric_algebra(module).rewrite_to_ordered()
    report.results["quantum_plane"] = {
        "E": render_matrix(scalars, module.E(0)),
        "F": render_matrix(scalars, module.F(0)),
        "braiding": render_matrix(scalars, r_hat),
        "commutor": render_matrix(scalars, sigma),
        "relations": rules.render(scalars),
    }
    report.check("quantum plane: braiding matrix", linalg.equal(r_hat, expected_r))
    report.check("quantum plane: commutor matrix", linalg.equal(sigma, expected_sigma))
    report.check("quantum plane: x2 x1 = q^-1 x1 x2", rules[(1, 0)] == {(0, 1): scalars.inverse(q)})


def _non_flat(report: ReportDocument) -> None:
    rs = build_root_system("A", 1)
    scalars = rs.scalars()
    vector = seed_module(rs, scalars)
    doubled = direct_sum(vector, vector)
    algebra = qa.symmetric_algebra(doubled)
    series = algebra.hilbert_series(3)
    q = scalars.q_power(1)
    witness = qa.monomial_vector({(0, 0, 3): 1, (0, 1, 2): -q}, doubled)
    classical = algebra.classical_dimension(3)
    report.results["non_flat"] = {"hilbert": list(series.dimensions), "classical_h3": classical}
    report.check("S_q(V+V): h3 = 16 < 20", series[3] == 16 and classical == 20)
    report.check("S_q(V+V): x1^2 y2 = q x1 x2 y1", algebra.in_ideal(witness))


def _sl3_schubert(report: ReportDocument, ctx: cl.CominusculeContext) -> None:
    group, scalars = ctx.group, ctx.scalars
    q_inv = scalars.q_power(-1)
    e1, e2 = group.E(0), group.E(1)
    xi1, xi2 = ctx.schubert
    (relation,) = cl.verify_schubert_quadratic(ctx)
    report.results["sl3_schubert"] = {
        "E_xi1": str(xi1),
        "E_xi2": str(xi2),
        "exponent": str(relation.exponent),
    }
    report.check(
        "sl3: T2(E1) = q^-1 E1 E2 - E2 E1",
        probe_equal(xi1, q_inv * (e1 * e2) - e2 * e1, ctx.probes),
    )
    report.check(
        "sl3: E_xi2 E_xi1 = q^-1 E_xi1 E_xi2",
        relation.exponent == -1
        and not relation.coefficients
        and probe_equal(xi2 * xi1, q_inv * (xi1 * xi2), ctx.probes),
    )
    report.check(
        "sl3: E2 |> E_xi1 = 0",
        probe_equal(group.adjoint_action(e2, xi1), group.zero, ctx.probes),
    )
    report.check(
        "sl3: F2 |> E_xi1 = -E_xi2",
        probe_equal(group.adjoint_action(group.F(1), xi1), -xi2, ctx.probes),
    )


def _cp2(report: ReportDocument, ctx: cl.CominusculeContext) -> None:
    scalars, domain = ctx.scalars, ctx.scalars.domain
    q = scalars.q_power(1)
    one = scalars.one
    qq = q + scalars.inverse(q)

    def matrix(entries: dict[tuple[int, int], FieldElement]):
        return linalg.from_entries(entries, (4, 4), domain)

    creations = {0: matrix({(1, 0): one, (3, 2): one}), 1: matrix({(2, 0): one, (3, 1): -q})}
    annihilations = {
        0: matrix({(0, 1): one, (2, 3): one / (1 + q**2)}),
        1: matrix({(0, 2): one, (1, 3): -one / qq}),
    }
    plus, minus = cl.exterior_algebra(ctx, "+"), cl.exterior_algebra(ctx, "-")
    report.results["cp2"] = {
        "plus_relations": plus.render_relations(),
        "minus_relations": minus.render_relations(),
        "pairing": scalars.render(ctx.pairing((0, 1), (0, 1))),
    }
    report.check("CP2: relations of Lambda_q(u_+)", plus.relations()[(1, 0)] == {(0, 1): -q})
    report.check(
        "CP2: relations of Lambda_q(u_-)",
        minus.relations()[(1, 0)] == {(0, 1): -scalars.inverse(q)},
    )
    report.check("CP2: <y1 y2, x1 x2> = -1/(q + q^-1)", ctx.pairing((0, 1), (0, 1)) == -one / qq)
    for k in range(2):
        plus_k, minus_k = cl.creation(ctx, k).matrix, cl.annihilation(ctx, k).matrix
        report.check(f"CP2: gamma_+(x{k + 1})", linalg.equal(plus_k, creations[k]))
        report.check(f"CP2: gamma_-(y{k + 1})", linalg.equal(minus_k, annihilations[k]))

    relations = cl.all_commutation_relations(ctx)

    def combine(*terms: tuple[FieldElement, tuple[int, int]]) -> dict:
        total: dict = {}
        for c, key in terms:
            for term, v in relations[key].items():
                total[term] = total.get(term, scalars.zero) + c * v
        return {t: v for t, v in total.items() if v}

    e, y1, y2 = (), (0,), (1,)
    report.check(
        "CP2: x1 y1 + x2 y2 = 1 + (q + q^-1) y1 y2 x1 x2",
        combine((one, (0, 0)), (one, (1, 1))) == {(e, e): one, ((0, 1), (0, 1)): qq},
    )
    report.check(
        "CP2: q x1 y1 - q^-1 x2 y2 = (q + q^-1)(y2 x2 - y1 x1)",
        combine((q, (0, 0)), (-scalars.inverse(q), (1, 1))) == {(y1, y1): -qq, (y2, y2): qq},
    )
    report.check("CP2: x1 y2 = -(q + q^-1) y2 x1", relations[(0, 1)] == {(y2, y1): -qq})
    report.check("CP2: x2 y1 = -(q + q^-1) y1 x2", relations[(1, 0)] == {(y1, y2): -qq})
    for preset, scales in (("standard", (one, q)), ("rescaled", (scalars.inverse(q), one))):
        star = cl.clifford_star(ctx, preset)
        for k in range(2):
            report.check(
                f"CP2 {preset}: gamma_+(x{k + 1})* = "
                f"{scalars.render_q(scales[k])} gamma_-(y{k + 1})",
                linalg.equal(star(creations[k]), linalg.scale(annihilations[k], scales[k])),
            )
        report.check(f"CP2 {preset}: star compatibility", cl.is_star_compatible(ctx, star))
    report.check(f"CP2: rank gamma = {4**ctx.N}", ctx.gamma.is_isomorphism)
    _audit(report, "CP2: Koszul boundary squares to zero", lambda: dr.verify_eth_squared_zero(ctx))
    module = fundamental_module(ctx.root_system, scalars, 0)
    dirac = dr.dirac_element(ctx, module, cl.clifford_star(ctx))
    _audit(
        report,
        "CP2: Dirac identities on V(w1) (x) Lambda_q(u_+)",
        lambda: dr.verify_dirac_square(dirac),
    )
    report.results["cp2"]["dirac_dimension"] = dirac.dim


def examples_report(config: RunConfig) -> ReportDocument:
    """The reference examples: quantum plane, non-flat V+V, sl3 Schubert cell and CP2."""
    report = ReportDocument(command="report examples", config=config)
    _quantum_plane(report)
    _non_flat(report)
    ctx = cl.build_context("A", 2, 0, probe_degree=config.probe_degree)
    _sl3_schubert(report, ctx)
    _cp2(report, ctx)
    return report


COMMANDS: dict[str, ReportBuilder] = {
    "roots": roots_report,
    "cominuscule": cominuscule_report,
    "rep": rep_report,
    "braiding": braiding_report,
    "qsym": qsym_report,
    "hilbert": hilbert_report,
    "flatness": flatness_report,
    "collapse3": collapse3_report,
    "clifford": clifford_report,
    "dirac": dirac_report,
    "report": examples_report,
}


def run(command: str, config: RunConfig) -> ReportDocument:
    """
    Build the report of one command, reusing a cached report for the same config.

    Raises:
        QuantumCliffordError: when a construction fails outright
    """
    digest = config.content_hash()
    kind = f"report-{command}"
    cached = cache.load(config.cache_dir, kind, digest)
    if cached is not None:
        cached["config"] = config.model_dump()
        return ReportDocument.model_validate(cached)
    started = time.perf_counter()
    report = COMMANDS[command](config)
    elapsed = time.perf_counter() - started
    logger.info("%s for %s finished in %.2fs: %s", command, config, elapsed, report.status)
    cache.store(config.cache_dir, kind, digest, report.payload())
    return report


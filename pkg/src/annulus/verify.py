"""Self-check battery behind the ``verify`` CLI subcommand.

Each check exercises one documented invariant of a module and prints one
line. The instance-building checks honor the configured float tolerance, so
an absurd tolerance (say 1.0) makes them fail loudly rather than silently
reinterpret the geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds, generators, geometry, graphs, probe, sweep

__all__ = ["VerifyConfig", "run_verify", "CHECKS"]


@dataclass
class VerifyConfig:
    seed: int = 0
    tolerance: float = 1e-9


def _refit(inst: graphs.AnnulusInstance, tolerance: float) -> graphs.AnnulusInstance:
    """Rebuild a float instance with the configured tolerance."""
    if inst.mode == "exact":
        return inst
    return graphs.AnnulusInstance.from_floats(inst.points, inst.r1, inst.r2, tolerance)


def _random_instances(cfg: VerifyConfig, cases):
    for k, (n, d, r1, r2) in enumerate(cases):
        yield generators.random_points_instance(
            n, d, r1, r2, seed=cfg.seed + 7 * k, tolerance=cfg.tolerance
        )


# ---------------------------------------------------------------- geometry


def check_cap_closed_forms(cfg: VerifyConfig) -> str:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for theta in rng.uniform(1e-3, math.pi, size=20):
        worst = max(worst, abs(geometry.cap_fraction(3, theta) - (1 - math.cos(theta)) / 2))
        worst = max(worst, abs(geometry.cap_fraction(2, theta) - theta / math.pi))
    assert worst <= 1e-10, f"closed-form gap {worst:.3g}"
    return f"d=2 and d=3 closed forms, max gap {worst:.2g}"


def check_cap_monotone(cfg: VerifyConfig) -> str:
    assert geometry.cap_fraction(4, math.pi) == 1.0
    grid = np.linspace(0.05, math.pi, 40)
    vals = [geometry.cap_fraction(4, t) for t in grid]
    assert all(b > a for a, b in zip(vals, vals[1:])), "cap fraction not increasing"
    return "full sphere is 1, strictly increasing on a 40-point grid"


def check_ball_packing(cfg: VerifyConfig) -> str:
    w = geometry.greedy_ball_packing(3.0, 1.0, 1, seed=cfg.seed)
    w.validate()
    assert w.count == 3, f"interval packing count {w.count}"
    assert w.count <= 4, "volume bound ((R+r)/r)^d violated"
    w2 = geometry.greedy_ball_packing(2.5, 0.7, 2, seed=cfg.seed)
    w2.validate()
    assert w2.count <= ((2.5 + 0.7) / 0.7) ** 2
    return f"counts {w.count} (1d exact), {w2.count} (2d) within volume bounds"


def check_covering_witness(cfg: VerifyConfig) -> str:
    counts = []
    for T, d, expected in [(1.0, 3, 1), (2.0, 1, 2), (3.0, 1, 3)]:
        w = geometry.covering_number_witness(T, d, seed=cfg.seed)
        assert w.count == expected, f"T={T}, d={d}: count {w.count} != {expected}"
        counts.append(w.count)
    w2 = geometry.covering_number_witness(2.0, 2, seed=cfg.seed, n_probes=20_000)
    assert w2.verify(20_000, seed=cfg.seed + 1) == 0, "2d covering witness missed a probe"
    counts.append(w2.count)
    return f"counts {counts} for (T,d) in (1,3),(2,1),(3,1),(2,2); zero probe misses"


def check_far_point_witness(cfg: VerifyConfig) -> str:
    sizes = {}
    for d in (2, 3, 5):
        pts = geometry.n_gamma_witness(d, 0.99)
        sizes[d] = len(pts)
        assert np.all(np.linalg.norm(pts, axis=1) <= 0.99 + 1e-12), "point outside the ball"
        dm = np.linalg.norm(pts[:, None] - pts[None, :], axis=2)
        np.fill_diagonal(dm, 2.0)
        assert dm.min() > 1.0, f"pairwise distance {dm.min()} not > 1"
    assert sizes == {2: 5, 3: 8, 5: 12}, f"witness sizes {sizes}"
    return "sizes 5/8/12 for d=2/3/5, norms <= 0.99, pairwise > 1"


def check_spherical_codes(cfg: VerifyConfig) -> str:
    c5 = geometry.greedy_spherical_code(2, 2 * math.pi / 5, seed=cfg.seed)
    c5.validate()
    assert c5.size >= 5, f"circle code size {c5.size} < 5"
    c6 = geometry.greedy_spherical_code(3, math.pi / 2, seed=cfg.seed)
    c6.validate()
    assert c6.size >= 6, f"orthogonal code size {c6.size} < 6"
    return f"sizes {c5.size} (circle, angle 2pi/5) and {c6.size} (3d, angle pi/2)"


# ------------------------------------------------------------------ graphs


_C5_POINTS = np.array([[0.0], [2.0], [4.0], [2.99], [1.01]])
_C5_EDGES = [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


def check_cycle_edge_set(cfg: VerifyConfig) -> str:
    inst = graphs.AnnulusInstance.from_floats(_C5_POINTS, 1.0, 2.0, cfg.tolerance)
    g = graphs.build_graph(inst)
    assert g.edges == _C5_EDGES, f"edges {g.edges}"
    return "5 points on a line induce the chordless 5-cycle"


def check_exact_lattice_clique(cfg: VerifyConfig) -> str:
    inst = generators.gen_lattice(2, 2, 1, 1)
    g = graphs.build_graph(inst)
    assert inst.n == 5 and len(g.edges) == 10, f"n={inst.n}, edges={len(g.edges)}"
    return "integer lattice ball of 5 points forms a complete graph"


def check_rigid_motion_invariance(cfg: VerifyConfig) -> str:
    inst = generators.random_points_instance(25, 2, 0.8, 1.6, seed=cfg.seed, tolerance=cfg.tolerance)
    g0 = graphs.build_graph(inst)
    rng = np.random.default_rng(cfg.seed + 1)
    q, _ = np.linalg.qr(rng.standard_normal((2, 2)))
    moved = inst.points @ q.T + rng.uniform(-5, 5, size=2)
    g1 = graphs.build_graph(graphs.AnnulusInstance.from_floats(moved, 0.8, 1.6, cfg.tolerance))
    assert g0 == g1, "adjacency changed under a rigid motion"
    return "rotation plus translation preserves all 25 vertices' adjacency"


def check_exact_solvers_c5(cfg: VerifyConfig) -> str:
    g = graphs.AdjacencyGraph.from_edges(5, _C5_EDGES)
    w = graphs.max_clique(g)
    c = graphs.chromatic_number(g)
    a = graphs.max_independent_set(g)
    assert (w.value, c.value, a.value) == (2, 3, 2), f"({w.value},{c.value},{a.value})"
    assert all(g.adj[u, v] for u in w.witness for v in w.witness if u != v)
    assert graphs.is_proper(g, c.colors) and max(c.colors) == 3
    assert not any(g.adj[u, v] for u in a.witness for v in a.witness)
    return "5-cycle gives omega=2, chi=3, alpha=2 with certifying witnesses"


def _exhaustive(g: graphs.AdjacencyGraph) -> tuple[int, int, int]:
    n = g.n
    masks = range(1 << n)
    bits = lambda m: [v for v in range(n) if m >> v & 1]
    omega = alpha = 0
    indep = []
    for m in masks:
        vs = bits(m)
        if all(g.adj[u, v] for i, u in enumerate(vs) for v in vs[i + 1 :]):
            omega = max(omega, len(vs))
        if all(not g.adj[u, v] for i, u in enumerate(vs) for v in vs[i + 1 :]):
            alpha = max(alpha, len(vs))
            indep.append(m)
    full = (1 << n) - 1
    cover = {0: 0}
    frontier = {0}
    k = 0
    while full not in cover:
        k += 1
        new = set()
        for m in frontier:
            for ind in indep:
                u = m | ind
                if u not in cover:
                    cover[u] = k
                    new.add(u)
        frontier = new
    return omega, cover[full], alpha


def check_oracle_equivalence_small(cfg: VerifyConfig) -> str:
    rng = np.random.default_rng(cfg.seed)
    for _ in range(40):
        n = 7
        a = rng.random((n, n)) < rng.uniform(0.15, 0.85)
        a = np.triu(a, 1)
        g = graphs.AdjacencyGraph(a | a.T)
        ow, oc, oa = _exhaustive(g)
        assert graphs.max_clique(g).value == ow
        assert graphs.chromatic_number(g).value == oc
        assert graphs.max_independent_set(g).value == oa
    return "omega, chi, alpha match exhaustive enumeration on 40 random 7-vertex graphs"


def check_solver_inequalities(cfg: VerifyConfig) -> str:
    for inst in _random_instances(cfg, [(18, 2, 0.7, 1.5), (16, 1, 0.5, 1.4), (20, 3, 0.9, 1.8)]):
        g = graphs.build_graph(inst)
        w = graphs.max_clique(g).value
        c = graphs.chromatic_number(g).value
        a = graphs.max_independent_set(g).value
        assert c >= w and c >= math.ceil(g.n / a), "chromatic lower bounds violated"
        assert w <= bounds.clique_volume_bound(inst.dim, inst.r1, inst.r2)
    return "chi >= omega, chi >= n/alpha, omega within the volume bound on 3 instances"


def check_budget_guard(cfg: VerifyConfig) -> str:
    g = graphs.AdjacencyGraph(np.zeros((12, 12), dtype=bool))
    try:
        graphs.max_clique(g, budget=10)
    except Exception as e:
        assert "budget" in str(e).lower()
        return "max_clique refuses 12 vertices under a budget of 10"
    raise AssertionError("budget guard did not trip")


# ------------------------------------------------------------------- sweep


def check_sweep_invariants(cfg: VerifyConfig) -> str:
    cases = [(30, 2, 0.0, 1.0), (25, 2, 0.8, 1.7), (20, 1, 0.6, 1.3), (25, 3, 1.0, 2.0)] * 2
    for inst in _random_instances(cfg, cases):
        col = sweep.sweep_color(inst)
        ok, viol = sweep.verify_token_invariants(inst, col)
        assert ok, f"violations: {viol[:2]}"
    return "all token and properness invariants hold on 8 random instances"


def check_sweep_collinear_trace(cfg: VerifyConfig) -> str:
    inst = graphs.AnnulusInstance.from_floats(
        np.array([[0.0, 0.0], [0.5, 0.0], [1.0, 0.0]]), 0.0, 1.0, cfg.tolerance
    )
    col = sweep.sweep_color(inst)
    assert [col.colors[v] for v in col.order] == [1, 2, 3], f"colors {col.colors}"
    assert col.tokens == [0, 1, 2], "every vertex should be its own token at r1=0"
    return "collinear triangle is colored 1,2,3 in sweep order, all self-tokens"


def check_unit_disc_regression(cfg: VerifyConfig) -> str:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for k in range(20):
        n = int(rng.integers(5, 41))
        inst = generators.random_points_instance(
            n, 2, 0.0, 1.0, extent=3.5, seed=cfg.seed + 100 + k, tolerance=cfg.tolerance
        )
        g = graphs.build_graph(inst)
        col = sweep.sweep_color(inst)
        assert graphs.is_proper(g, col.colors), "sweep coloring not proper"
        omega = graphs.max_clique(g).value
        assert col.n_colors <= 3 * omega - 2, f"{col.n_colors} colors vs omega {omega}"
        worst = max(worst, col.n_colors / (3 * omega - 2))
    return f"unit-disc sweep stays within 3*omega-2 on 20 instances (worst ratio {worst:.2f})"


def check_bound_chain(cfg: VerifyConfig) -> str:
    details = []
    for d in (1, 2):
        report = bounds.sweep_chi_bound(d, 1.0, 2.0, seed=cfg.seed)
        for inst in _random_instances(cfg, [(25, d, 1.0, 2.0)] * 3):
            g = graphs.build_graph(inst)
            col = sweep.sweep_color(inst)
            omega = graphs.max_clique(g).value
            assert col.n_colors <= report.sweep_bound * omega, "bound chain violated"
            for v in range(inst.n):
                assert sweep.colors_in_ball(inst, col, v, inst.r1) <= 7**d
        details.append(f"d={d}: nu={report.nu_witness_count}")
    return "max color <= nu*7^d*omega and ball color counts <= 7^d (" + ", ".join(details) + ")"


# -------------------------------------------------------------- generators


def check_cycle_generator(cfg: VerifyConfig) -> str:
    for x, expected in [(2.0, [0.0, 2.0, 4.0, 2.99, 1.01]), (1.5, [0.0, 1.5, 3.0, 2.0, 1.0])]:
        inst = _refit(generators.gen_cycle_1d(x), cfg.tolerance)
        assert np.allclose(inst.points.ravel(), expected), f"x={x}: {inst.points.ravel()}"
        g = graphs.build_graph(inst)
        w, c = graphs.max_clique(g).value, graphs.chromatic_number(g).value
        assert (w, c) == (2, 3), f"x={x}: omega={w}, chi={c}"
    inst = _refit(generators.gen_cycle_1d(1.1), cfg.tolerance)
    assert inst.n == 21, f"x=1.1 gives {inst.n} points"
    g = graphs.build_graph(inst)
    assert graphs.max_clique(g).value == 2, "x=1.1 instance has a triangle"
    assert graphs.chromatic_number(g).value == 3
    return "x=2, 1.5, 1.1 all give triangle-free odd cycles with omega=2, chi=3"


def check_lattice_generator(cfg: VerifyConfig) -> str:
    inst1 = generators.gen_lattice(1, 2, 0.3, 1)
    assert inst1.n == 7, f"eps=0.3 ball has {inst1.n} points"
    inst2 = generators.gen_lattice(1, 2, 0.5, 2)
    assert inst2.n == 9
    g_exact = graphs.build_graph(inst2)
    g_float = graphs.build_graph(
        graphs.AnnulusInstance.from_floats(inst2.points, 1.0, 2.0, cfg.tolerance)
    )
    assert g_exact == g_float, "exact and float adjacency disagree"
    return "1d lattices have 7 and 9 points; exact adjacency matches the float build"


def check_sphere_net(cfg: VerifyConfig) -> str:
    inst = generators.gen_sphere_net(2, 2.0, eps=math.pi / 8, seed=cfg.seed)
    assert inst.n == 16, f"circle net has {inst.n} points"
    assert generators.net_covering_misses(inst, math.pi / 8, seed=cfg.seed + 1) == 0
    inst3 = generators.gen_sphere_net(3, 2.0, eps=math.pi / 6, seed=cfg.seed)
    assert generators.net_covering_misses(inst3, math.pi / 6, seed=cfg.seed + 1) == 0
    g = graphs.build_graph(inst3)
    dm = np.linalg.norm(inst3.points[:, None] - inst3.points[None, :], axis=2)
    want = dm >= 2.0 / 2.0
    np.fill_diagonal(want, False)
    assert np.array_equal(g.adj, want), "edges are not exactly the pairs at distance >= 2/x"
    pois = generators.gen_sphere_net(3, 2.0, method="poisson", intensity=2.0, seed=cfg.seed)
    assert pois.n >= 1 and np.allclose(np.linalg.norm(pois.points, axis=1), 1.0)
    return f"nets of 16 (d=2) and {inst3.n} (d=3) points cover all probes; poisson drew {pois.n}"


def check_easy_lemma_generator(cfg: VerifyConfig) -> str:
    for d, n in [(2, 5), (3, 8)]:
        inst = _refit(generators.gen_easy_lemma_instance(d), cfg.tolerance)
        g = graphs.build_graph(inst)
        assert inst.n == n and len(g.edges) == n * (n - 1) // 2, f"d={d} not complete"
        assert graphs.max_clique(g).value == n
    return "witness instances are K5 (d=2) and K8 (d=3) under radii (1, 2)"


# ------------------------------------------------------------------ bounds


def check_kl_exponent(cfg: VerifyConfig) -> str:
    assert bounds.kl_exponent(math.pi / 2) == 0.0
    grid = np.linspace(0.2, math.pi / 2, 30)
    vals = [bounds.kl_exponent(p) for p in grid]
    assert all(a > b for a, b in zip(vals, vals[1:])), "not decreasing up to pi/2"
    try:
        bounds.kl_exponent(0.0)
        raise AssertionError("phi=0 did not raise")
    except ValueError:
        pass
    return "zero at pi/2, strictly decreasing on (0, pi/2], rejects phi=0"


def check_analysis_function(cfg: VerifyConfig) -> str:
    t, v = bounds.analysis_grid_max(step=1e-3)
    assert t == bounds.ANALYSIS_DOMAIN[1], f"max at {t}, not the right endpoint"
    assert 0.996 < v < 0.997, f"max value {v}"
    return f"grid max {v:.6f} at the right endpoint arcsin(1/1.2)"


def check_ratio_exponent(cfg: VerifyConfig) -> str:
    val = bounds.ratio_exponent(1.2, 1e-4)
    floor = math.log(1.003)
    assert val > floor, f"{val} <= ln(1.003)"
    deltas = [0.0, 1e-5, 1e-4, 1e-3]
    vals = [bounds.ratio_exponent(1.2, dl) for dl in deltas]
    assert all(a > b for a, b in zip(vals, vals[1:])), "not decreasing in delta"
    return f"exponent {val:.6f} > ln(1.003) = {floor:.6f}, decreasing in delta"


def check_sweep_bound_values(cfg: VerifyConfig) -> str:
    r = bounds.sweep_chi_bound(1, 1.0, 1.0, seed=cfg.seed)
    assert (r.T, r.nu_witness_count, r.sweep_bound) == (3.0, 3, 21), r.to_dict()
    r0 = bounds.sweep_chi_bound(1, 0.0, 1.0, seed=cfg.seed)
    assert (r0.T, r0.nu_witness_count, r0.sweep_bound) == (2.0, 2, 14), r0.to_dict()
    r2 = bounds.sweep_chi_bound(2, 1.0, 2.0, seed=cfg.seed)
    assert r2.sweep_bound == r2.nu_witness_count * 49
    return f"1d bounds 21 and 14; 2d bound {r2.sweep_bound} = {r2.nu_witness_count} * 49"


def check_clique_volume_bound(cfg: VerifyConfig) -> str:
    assert bounds.clique_volume_bound(1, 1.0, 1.0) == 3
    assert bounds.clique_volume_bound(2, 1.0, 1.0) == 9
    return "ratio-1 bounds are 3 (d=1) and 9 (d=2)"


# ------------------------------------------------------------------- probe


def check_penalty_gradient(cfg: VerifyConfig) -> str:
    rng = np.random.default_rng(cfg.seed)
    cons = [
        probe.PairConstraint("ge", 0, 1, lo=1.3),
        probe.PairConstraint("le", 0, 2, hi=0.7, weight=5.0),
        probe.PairConstraint("out", 1, 2, lo=0.5, hi=1.5),
        probe.PairConstraint("out", 0, 3, lo=0.0, hi=2.0),
        probe.PairConstraint("ge", 2, 3, lo=1.1),
    ]
    x = rng.standard_normal((4, 3))
    _, grad = probe.penalty_value_grad(cons, x)
    h = 1e-7
    worst = 0.0
    for i in range(4):
        for k in range(3):
            xp, xm = x.copy(), x.copy()
            xp[i, k] += h
            xm[i, k] -= h
            fd = (probe.penalty_value_grad(cons, xp)[0] - probe.penalty_value_grad(cons, xm)[0]) / (2 * h)
            worst = max(worst, abs(fd - grad[i, k]) / max(1.0, abs(grad[i, k])))
    assert worst <= 1e-6, f"gradient gap {worst:.2g}"
    return f"hinge gradients match central differences (max relative gap {worst:.2g})"


def check_embed_witnesses(cfg: VerifyConfig) -> str:
    c5 = graphs.AdjacencyGraph.from_edges(5, _C5_EDGES)
    res = probe.embed_search(probe.EmbedProblem(c5, 1, 1.0, 2.0, restarts=10, seed=cfg.seed))
    assert res.residual < probe.FEASIBILITY_TOL, f"5-cycle residual {res.residual}"
    assert probe.embedding_round_trip(c5, res.coords, 1.0, 2.0), "round trip failed"
    k4 = graphs.AdjacencyGraph(~np.eye(4, dtype=bool))
    res4 = probe.embed_search(probe.EmbedProblem(k4, 1, 1.0, 1.5, restarts=10, seed=cfg.seed))
    assert min(res4.restart_stats) > 0.05, f"K4 on a line reached {min(res4.restart_stats)}"
    return (
        f"5-cycle embeds on the line (residual {res.residual:.1e}); "
        f"K4 in [1, 1.5] stays infeasible (floor {min(res4.restart_stats):.3f})"
    )


def check_forbidden_floor(cfg: VerifyConfig) -> str:
    res = probe.forbidden_config_residual(
        "bipartite-sphericity", 1, margin=0.1, restarts=10, seed=cfg.seed
    )
    assert min(res.restart_stats) >= 0.09, f"floor {min(res.restart_stats)}"
    relaxed = probe.forbidden_config_residual(
        "bipartite-sphericity", 1, margin=0.1, restarts=10, seed=cfg.seed, cross_bound=2.0
    )
    assert relaxed.residual < probe.FEASIBILITY_TOL, f"relaxed control {relaxed.residual}"
    return (
        f"two-part line configuration floor {min(res.restart_stats):.4f} >= 0.09; "
        f"relaxed control reaches {relaxed.residual:.1e}"
    )


def check_probe_determinism(cfg: VerifyConfig) -> str:
    a = probe.forbidden_config_residual("three-points", 2, margin=0.1, restarts=5, seed=cfg.seed)
    b = probe.forbidden_config_residual("three-points", 2, margin=0.1, restarts=5, seed=cfg.seed)
    assert a.restart_stats == b.restart_stats, "same seed gave different restart residuals"
    assert min(a.restart_stats) > 0.0, "three-point probe unexpectedly feasible"
    return f"seeded restart residuals reproduce exactly; planar floor {min(a.restart_stats):.3f}"


CHECKS = [
    ("geometry", "spherical cap fraction matches closed forms", check_cap_closed_forms),
    ("geometry", "cap fraction normalization and monotonicity", check_cap_monotone),
    ("geometry", "greedy ball packings are valid and within volume bounds", check_ball_packing),
    ("geometry", "covering witnesses are exact in 1d and probe-complete", check_covering_witness),
    ("geometry", "far-point witnesses fit the 0.99-ball pairwise beyond 1", check_far_point_witness),
    ("geometry", "spherical codes meet their seeded size floors", check_spherical_codes),
    ("graphs", "line points induce the chordless 5-cycle", check_cycle_edge_set),
    ("graphs", "exact integer lattice gives a complete graph", check_exact_lattice_clique),
    ("graphs", "adjacency is rigid-motion invariant", check_rigid_motion_invariance),
    ("graphs", "exact solvers certify the 5-cycle", check_exact_solvers_c5),
    ("graphs", "solvers match exhaustive enumeration", check_oracle_equivalence_small),
    ("graphs", "chromatic inequalities and clique volume bound", check_solver_inequalities),
    ("graphs", "solver budgets are enforced", check_budget_guard),
    ("sweep", "token invariants hold on random instances", check_sweep_invariants),
    ("sweep", "unit-radius collinear trace", check_sweep_collinear_trace),
    ("sweep", "unit-disc color count stays within 3*omega-2", check_unit_disc_regression),
    ("sweep", "color count bound chain via covering witness", check_bound_chain),
    ("generators", "1d odd cycles are triangle-free with chi/omega = 3/2", check_cycle_generator),
    ("generators", "lattice sizes and exact-vs-float adjacency", check_lattice_generator),
    ("generators", "sphere nets cover all probes", check_sphere_net),
    ("generators", "far-point witness instances are complete graphs", check_easy_lemma_generator),
    ("bounds", "code-size exponent shape", check_kl_exponent),
    ("bounds", "grid maximum of the cap analysis function", check_analysis_function),
    ("bounds", "measure ratio exponent exceeds ln(1.003)", check_ratio_exponent),
    ("bounds", "sweep color bounds from covering witnesses", check_sweep_bound_values),
    ("bounds", "clique volume bound values", check_clique_volume_bound),
    ("probe", "penalty gradients match finite differences", check_penalty_gradient),
    ("probe", "feasible and infeasible line embeddings", check_embed_witnesses),
    ("probe", "two-part configuration floor and relaxed control", check_forbidden_floor),
    ("probe", "probes are deterministic under a fixed seed", check_probe_determinism),
]


def run_verify(seed: int = 0, tolerance: float = 1e-9, only: str | None = None, writer=print) -> int:
    """Run the property battery; returns 0 if every check passes, else 2."""
    cfg = VerifyConfig(seed=seed, tolerance=tolerance)
    modules = {m for m, _, _ in CHECKS}
    if only is not None and only not in modules:
        writer(f"unknown module {only!r}; choose from {sorted(modules)}")
        return 2
    failures = ran = 0
    for module, name, fn in CHECKS:
        if only and module != only:
            continue
        ran += 1
        try:
            detail = fn(cfg)
            writer(f"[pass] {module}: {name} -- {detail}")
        except Exception as exc:  # report and keep going; the exit code tells the tale
            failures += 1
            writer(f"[FAIL] {module}: {name} -- {exc}")
    writer(f"{ran - failures}/{ran} checks passed")
    return 0 if failures == 0 else 2

"""
Spectral and energy bounds of a graph with a clique partition, evaluated as
records with slack; exhaustive partition scans; the seeded random corpus.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .cliques import (
    PARTITION,
    Clique,
    CliqueCover,
    clique_partition_graph,
    clique_signless_laplacian,
    edge_partition,
    enumerate_partitions,
    incidence,
    min_clique_partition,
)
from .config import DEFAULT_SEED, DEFAULT_TOLERANCES, Tolerances
from .errors import SizeGuardError
from .graph import Graph, random_graph
from .graph_io import GraphParser, to_graph6
from .linalg import exact_rank
from .spectral import SpectralContext

logger = logging.getLogger(__name__)

AT_LEAST = ">="
AT_MOST = "<="
EQUAL = "=="
IMPLIES = "=>"

SCAN_GUARD = 9
CORPUS_SIZES = (4, 10)
CORPUS_DENSITIES = (0.2, 0.5, 0.8)


@dataclass(frozen=True)
class BoundRecord:
    """
    One evaluated bound.

    ``slack`` is the margin in the direction of the claim: lhs - rhs for
    ``>=``, rhs - lhs for ``<=``, -|lhs - rhs| for ``==``. Implications carry
    0/1 values for premise (lhs) and conclusion (rhs). Records whose
    preconditions fail are kept with ``applicable=False``.
    """

    theorem_id: str
    description: str
    relation: str
    lhs: Optional[float]
    rhs: Optional[float]
    slack: Optional[float]
    holds: Optional[bool]
    applicable: bool = True
    note: str = ""

    @property
    def failed(self) -> bool:
        return self.applicable and not self.holds

    def to_dict(self, tol: Tolerances = DEFAULT_TOLERANCES) -> Dict[str, Any]:
        return {
            "theorem_id": self.theorem_id,
            "description": self.description,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "applicable": self.applicable,
            "note": self.note,
            "tolerances": {"inequality_slack": tol.inequality_slack, "equality": tol.equality},
        }


class _Recorder:
    def __init__(self, tol: Tolerances):
        self.tol = tol
        self.records: List[BoundRecord] = []

    @staticmethod
    def _scale(*values: float) -> float:
        return 1.0 + max((abs(float(v)) for v in values), default=0.0)

    def close(self, a: float, b: float) -> bool:
        return abs(float(a) - float(b)) <= self.tol.equality * self._scale(a, b)

    def _inequality(self, theorem_id, description, relation, lhs, rhs, slack, note):
        holds = slack >= -self.tol.inequality_slack * self._scale(lhs, rhs)
        self.records.append(BoundRecord(theorem_id, description, relation, float(lhs), float(rhs),
                                        float(slack), bool(holds), True, note))

    def at_least(self, theorem_id: str, description: str, lhs: float, rhs: float, note: str = "") -> None:
        self._inequality(theorem_id, description, AT_LEAST, lhs, rhs, float(lhs) - float(rhs), note)

    def at_most(self, theorem_id: str, description: str, lhs: float, rhs: float, note: str = "") -> None:
        self._inequality(theorem_id, description, AT_MOST, lhs, rhs, float(rhs) - float(lhs), note)

    def equal(self, theorem_id: str, description: str, lhs: float, rhs: float, note: str = "") -> None:
        diff = abs(float(lhs) - float(rhs))
        holds = diff <= self.tol.equality * self._scale(lhs, rhs)
        self.records.append(BoundRecord(theorem_id, description, EQUAL, float(lhs), float(rhs),
                                        -diff, bool(holds), True, note))

    def implies(self, theorem_id: str, description: str, premise: bool, conclusion: bool) -> None:
        if not premise:
            self.not_applicable(theorem_id, description, IMPLIES, "premise does not hold")
            return
        self.records.append(BoundRecord(theorem_id, description, IMPLIES, 1.0, float(bool(conclusion)),
                                        float(bool(conclusion)) - 1.0, bool(conclusion), True, ""))

    def not_applicable(self, theorem_id: str, description: str, relation: str, reason: str) -> None:
        self.records.append(BoundRecord(theorem_id, description, relation, None, None, None, None,
                                        False, reason))

    def worst(self, theorem_id: str, description: str, relation: str,
              rows: Sequence[Tuple[int, float, float]], empty_reason: str) -> None:
        """Record the index with the smallest slack among (i, lhs_i, rhs_i) rows."""
        if not rows:
            self.not_applicable(theorem_id, description, relation, empty_reason)
            return

        def slack(row):
            _, lhs, rhs = row
            if relation == AT_LEAST:
                return lhs - rhs
            if relation == AT_MOST:
                return rhs - lhs
            return -abs(lhs - rhs)

        i, lhs, rhs = min(rows, key=slack)
        note = f"worst at i={i} over {len(rows)} indices"
        if relation == AT_LEAST:
            self.at_least(theorem_id, description, lhs, rhs, note)
        elif relation == AT_MOST:
            self.at_most(theorem_id, description, lhs, rhs, note)
        else:
            self.equal(theorem_id, description, lhs, rhs, note)


def _smallest_eigenvalue_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    if n == 0:
        rec.not_applicable("smallest_eigenvalue_vs_max_clique_degree", "λ_n(G) ≥ -t_1", AT_LEAST,
                           "graph has no vertices")
        return
    lam_n, t1 = float(ctx.lam[-1]), float(ctx.t[0])
    tight = rec.close(lam_n, -t1)
    reg = ctx.regularity
    rec.at_least("smallest_eigenvalue_vs_max_clique_degree", "λ_n(G) ≥ -t_1", lam_n, -t1)
    rec.implies("smallest_eigenvalue_equality_forces_rank_drop",
                "λ_n(G) = -t_1 ⇒ rank(M_F) < n", tight, ctx.rank < n)
    rec.implies("clique_regular_rank_drop_attains_smallest_eigenvalue",
                "t-regular and rank(M_F) < n ⇒ λ_n(G) = -t_1", reg.t_regular and ctx.rank < n, tight)
    rec.implies("clique_regular_few_cliques_attains_smallest_eigenvalue",
                "t-regular and n > |F| ⇒ λ_n(G) = -t_1", reg.t_regular and n > k, tight)
    degrees = ctx.g.degrees
    regular_bipartite = ctx.m > 0 and bool(np.all(degrees == degrees[0])) and nx.is_bipartite(ctx.g.to_networkx())
    rec.implies("regular_bipartite_attains_smallest_eigenvalue",
                "regular bipartite ⇒ λ_n(G) = -t_1", regular_bipartite, tight)


def _negative_tail_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    _, nu_minus, _ = ctx.inertia
    rows = [(i, float(ctx.lam[n - i]), -float(ctx.t[i - 1])) for i in range(1, nu_minus + 1)]
    rec.worst("negative_tail_vs_clique_degrees", "λ_{n-i+1}(G) ≥ -t_i for i ≤ ν⁻", AT_LEAST, rows,
              "no negative eigenvalues")
    reg = ctx.regularity
    rec.implies("clique_regular_negative_tail_equality",
                "t-regular and ν⁻ = n - |F| ⇒ λ_{n-i+1}(G) = -t_i for i ≤ ν⁻",
                reg.t_regular and nu_minus == n - k and nu_minus > 0,
                all(rec.close(lhs, rhs) for _, lhs, rhs in rows))


def _window(ctx: SpectralContext, rec: _Recorder, prefix: str, start: int, label: str) -> None:
    """-t_1 ≤ λ_i(G) ≤ -t_n for start < i ≤ n."""
    n = ctx.n
    rows_low = [(i, float(ctx.lam[i - 1]), -float(ctx.t[0])) for i in range(start + 1, n + 1)]
    rows_high = [(i, float(ctx.lam[i - 1]), -float(ctx.t[-1])) for i in range(start + 1, n + 1)]
    reason = f"{label} ≥ n"
    rec.worst(f"{prefix}_lower", f"λ_i(G) ≥ -t_1 for i > {label}", AT_LEAST, rows_low, reason)
    rec.worst(f"{prefix}_upper", f"λ_i(G) ≤ -t_n for i > {label}", AT_MOST, rows_high, reason)


def _inertia_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    _, nu_minus, _ = ctx.inertia
    # an isolated vertex is a zero row of M_F and adds a zero eigenvalue, not a negative one
    isolated = n > 0 and ctx.t[-1] == 0
    if isolated:
        rec.not_applicable("negative_inertia_vs_incidence_rank", "ν⁻(G) ≥ n - rank(M_F)", AT_LEAST,
                           "graph has isolated vertices")
    else:
        rec.at_least("negative_inertia_vs_incidence_rank", "ν⁻(G) ≥ n - rank(M_F)", nu_minus, n - ctx.rank)
    _window(ctx, rec, "window_beyond_incidence_rank", ctx.rank, "rank(M_F)")

    if isolated:
        rec.not_applicable("negative_inertia_vs_cover_size", "ν⁻(G) ≥ n - |F|", AT_LEAST,
                           "graph has isolated vertices")
    elif n > k:
        rec.at_least("negative_inertia_vs_cover_size", "ν⁻(G) ≥ n - |F|", nu_minus, n - k)
    else:
        rec.not_applicable("negative_inertia_vs_cover_size", "ν⁻(G) ≥ n - |F|", AT_LEAST, "n ≤ |F|")
    _window(ctx, rec, "window_beyond_cover_size", min(k, n), "|F|")

    if ctx.cover.provenance == "exact":
        if isolated:
            rec.not_applicable("negative_inertia_vs_clique_partition_number", "ν⁻(G) ≥ n - cp(G)",
                               AT_LEAST, "graph has isolated vertices")
        elif n > k:
            rec.at_least("negative_inertia_vs_clique_partition_number", "ν⁻(G) ≥ n - cp(G)", nu_minus, n - k)
        else:
            rec.not_applicable("negative_inertia_vs_clique_partition_number", "ν⁻(G) ≥ n - cp(G)",
                               AT_LEAST, "n ≤ cp(G)")
        _window(ctx, rec, "window_beyond_clique_partition_number", min(k, n), "cp(G)")


def _independence_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n = ctx.n
    nu_plus, nu_minus, _ = ctx.inertia
    alpha = ctx.alpha
    rec.at_most("independence_vs_inertia", "α(G) ≤ min(n - ν⁻, n - ν⁺)", alpha,
                min(n - nu_minus, n - nu_plus))
    rec.at_most("negative_inertia_vs_independence", "ν⁻(G) ≤ n - α(G)", nu_minus, n - alpha)
    no_isolated = n > 0 and ctx.t[-1] > 0
    rec.implies("incidence_rank_equal_to_independence_fixes_inertia",
                "rank(M_F) = α(G), no isolated vertices ⇒ ν⁻(G) = n - α(G)",
                no_isolated and ctx.rank == alpha, nu_minus == n - alpha)


def _partition_graph_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    ids = ("partition_graph_smallest_vs_max_clique_size", "partition_graph_negative_tail",
           "partition_graph_window_beyond_n_lower", "partition_graph_window_beyond_n_upper",
           "partition_graph_negative_inertia")
    if k == 0:
        for theorem_id in ids:
            rec.not_applicable(theorem_id, "clique partition graph bound", AT_LEAST, "partition is empty")
        return
    lam, s = ctx.lam_pg, ctx.s
    _, nu_minus_pg, _ = ctx.inertia_pg
    rec.at_least(ids[0], "λ_k(P_G) ≥ -s_1", float(lam[-1]), -float(s[0]))
    rows = [(i, float(lam[k - i]), -float(s[i - 1])) for i in range(1, nu_minus_pg + 1)]
    rec.worst(ids[1], "λ_{k-i+1}(P_G) ≥ -s_i for i ≤ ν⁻(P_G)", AT_LEAST, rows,
              "P_G has no negative eigenvalues")
    low = [(i, float(lam[i - 1]), -float(s[0])) for i in range(n + 1, k + 1)]
    high = [(i, float(lam[i - 1]), -float(s[-1])) for i in range(n + 1, k + 1)]
    rec.worst(ids[2], "λ_i(P_G) ≥ -s_1 for i > n", AT_LEAST, low, "k ≤ n")
    rec.worst(ids[3], "λ_i(P_G) ≤ -s_k for i > n", AT_MOST, high, "k ≤ n")
    if k > n:
        rec.at_least(ids[4], "ν⁻(P_G) ≥ k - n", nu_minus_pg, k - n)
    else:
        rec.not_applicable(ids[4], "ν⁻(P_G) ≥ k - n", AT_LEAST, "k ≤ n")

    reg = ctx.regularity
    rec.implies("uniform_cover_attains_partition_graph_bound",
                "s-uniform and k > n ⇒ λ_k(P_G) = -s_1",
                reg.s_uniform and k > n, rec.close(float(lam[-1]), -float(s[0])))
    rec.implies("uniform_cover_partition_graph_tail_equality",
                "s-uniform and ν⁻(P_G) = k - n ⇒ λ_{k-i+1}(P_G) = -s_i for i ≤ ν⁻(P_G)",
                reg.s_uniform and k > n and nu_minus_pg == k - n,
                all(rec.close(lhs, rhs) for _, lhs, rhs in rows))


def _signless_gap_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    reg = ctx.regularity
    if reg.t_regular:
        rows = [(i, float(ctx.q[i - 1] - ctx.lam[i - 1]), float(reg.t)) for i in range(1, n + 1)]
        rec.worst("signless_gap_clique_regular", "q_i - λ_i(G) ≥ t", AT_LEAST, rows, "graph has no vertices")
    else:
        rec.not_applicable("signless_gap_clique_regular", "q_i - λ_i(G) ≥ t", AT_LEAST, "cover is not t-regular")
    if reg.s_uniform:
        rows = [(i, float(ctx.q[i - 1] - ctx.lam_pg[i - 1]), float(reg.s)) for i in range(1, min(n, k) + 1)]
        rec.worst("signless_gap_clique_uniform", "q_i - λ_i(P_G) ≥ s", AT_LEAST, rows, "partition is empty")
    else:
        rec.not_applicable("signless_gap_clique_uniform", "q_i - λ_i(P_G) ≥ s", AT_LEAST,
                           "cover is not s-uniform")


def _line_graph_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, m = ctx.n, ctx.m
    q, lam_lg = ctx.q, ctx.lam_lg
    rows = [(i, float(q[i - 1]), 2.0 + float(lam_lg[i - 1])) for i in range(1, min(n, m) + 1)]
    rec.worst("signless_vs_line_graph", "q_i(G) = 2 + λ_i(L_G) for i ≤ min(n, m)", EQUAL, rows,
              "graph has no edges")
    tail = [(i, float(lam_lg[i - 1]), -2.0) for i in range(n + 1, m + 1)]
    rec.worst("line_graph_tail", "λ_i(L_G) = -2 for i > n", EQUAL, tail, "m ≤ n")
    zeros = [(i, float(q[i - 1]), 0.0) for i in range(m + 1, n + 1)]
    rec.worst("signless_tail", "q_i(G) = 0 for i > m", EQUAL, zeros, "n ≤ m")


def _regular_shift_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    reg = ctx.regularity
    ids = ("st_regular_spectral_shift", "st_regular_partition_graph_tail", "st_regular_graph_tail")
    if not reg.st_regular:
        for theorem_id in ids:
            rec.not_applicable(theorem_id, "λ_i(G) - λ_i(P_G) = s - t", EQUAL, "cover is not (s, t)-regular")
        return
    s, t = float(reg.s), float(reg.t)
    rows = [(i, float(ctx.lam[i - 1] - ctx.lam_pg[i - 1]), s - t) for i in range(1, min(n, k) + 1)]
    rec.worst(ids[0], "λ_i(G) - λ_i(P_G) = s - t for i ≤ min(n, k)", EQUAL, rows, "partition is empty")
    rows = [(i, float(ctx.lam_pg[i - 1]), -s) for i in range(n + 1, k + 1)]
    rec.worst(ids[1], "λ_i(P_G) = -s for i > n", EQUAL, rows, "k ≤ n")
    rows = [(i, float(ctx.lam[i - 1]), -t) for i in range(k + 1, n + 1)]
    rec.worst(ids[2], "λ_i(G) = -t for i > k", EQUAL, rows, "n ≤ k")


def _graph_energy_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    nu_plus, nu_minus, _ = ctx.inertia
    energy = ctx.energies["E(G)"]
    t, d = ctx.t, ctx.d
    h = min(nu_plus, nu_minus)
    beyond = n - ctx.alpha
    clique_sum = 2.0 * float(t[:nu_minus].sum())
    rec.at_most("energy_vs_clique_degrees", "E(G) ≤ 2Σ_{i≤ν⁻} t_i", energy, clique_sum)
    rec.at_most("energy_vs_degrees", "E(G) ≤ 2Σ_{i≤h} d_i, h = min(ν⁺, ν⁻)", energy, 2.0 * float(d[:h].sum()))
    rec.at_most("energy_vs_clique_degrees_beyond_independence", "E(G) ≤ 2Σ_{i≤n-α} t_i",
                energy, 2.0 * float(t[:beyond].sum()))
    rec.at_most("clique_degrees_vs_degrees_beyond_independence", "2Σ_{i≤n-α} t_i ≤ 2Σ_{i≤n-α} d_i",
                2.0 * float(t[:beyond].sum()), 2.0 * float(d[:beyond].sum()))
    rows = [(i, float(t[i - 1]), float(d[i - 1])) for i in range(1, n + 1)]
    rec.worst("clique_degrees_dominated_by_degrees", "t_i ≤ d_i (both sorted)", AT_MOST, rows,
              "graph has no vertices")
    rec.implies("clique_regular_energy_equality",
                "t-regular and ν⁻ = n - |F| ⇒ E(G) = 2Σ_{i≤ν⁻} t_i",
                ctx.regularity.t_regular and nu_minus == n - k and nu_minus > 0,
                rec.close(energy, clique_sum))


def _partition_graph_energy_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    _, nu_minus_pg, _ = ctx.inertia_pg
    energy_pg = ctx.energies["E(P_G)"]
    size_sum = 2.0 * float(ctx.s[:nu_minus_pg].sum())
    if k:
        rec.at_most("partition_graph_energy_vs_clique_sizes", "E(P_G) ≤ 2Σ_{i≤ν⁻(P_G)} s_i", energy_pg, size_sum)
    else:
        rec.not_applicable("partition_graph_energy_vs_clique_sizes", "E(P_G) ≤ 2Σ_{i≤ν⁻(P_G)} s_i",
                           AT_MOST, "partition is empty")
    rec.implies("uniform_cover_partition_graph_energy_equality",
                "s-uniform and ν⁻(P_G) = k - n ⇒ E(P_G) = 2Σ_{i≤ν⁻(P_G)} s_i",
                ctx.regularity.s_uniform and k > n and nu_minus_pg == k - n,
                rec.close(energy_pg, size_sum))
    _, nu_minus_lg, _ = ctx.inertia_lg
    rec.at_most("line_graph_energy_vs_negative_inertia", "E(L_G) ≤ 4ν⁻(L_G)",
                ctx.energies["E(L_G)"], 4.0 * nu_minus_lg)


def _clique_laplacian_energy_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    energies = ctx.energies
    reg = ctx.regularity
    deviation = float(np.abs(ctx.cover.clique_degrees - ctx.tbar).sum())
    rec.at_most("clique_laplacian_energy_gap", "E(Q_F) - E(G) ≤ Σ|t_i - t̄|",
                energies["E(Q_F)"] - energies["E(G)"], deviation)
    if reg.t_regular:
        rec.equal("clique_regular_laplacian_energy", "t-regular ⇒ E(Q_F) = E(G)",
                  energies["E(Q_F)"], energies["E(G)"])
    else:
        rec.not_applicable("clique_regular_laplacian_energy", "t-regular ⇒ E(Q_F) = E(G)", EQUAL,
                           "cover is not t-regular")
    if reg.s_uniform:
        rec.equal("uniform_cover_companion_energy", "s-uniform ⇒ E(R_F) = E(P_G)",
                  energies["E(R_F)"], energies["E(P_G)"])
    else:
        rec.not_applicable("uniform_cover_companion_energy", "s-uniform ⇒ E(R_F) = E(P_G)", EQUAL,
                           "cover is not s-uniform")
    tau = ctx.tau
    formula = 2.0 * float(ctx.qf[:tau].sum()) - 2.0 * tau * ctx.tbar
    rec.equal("tau_energy_formula", "E(Q_F) = 2Σ_{i≤τ} λ_i(Q_F) - 2τt̄", energies["E(Q_F)"], formula,
              note=f"τ = {tau}")


def _uniform_energy_comparison(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    reg = ctx.regularity
    theorem_id = "uniform_cover_partition_graph_energy"
    if not reg.s_uniform or n == 0:
        rec.not_applicable(theorem_id, "E(P_G) vs E(Q_F) + 2ks/n - 2s", AT_MOST, "cover is not s-uniform")
        return
    s = float(reg.s)
    lhs = ctx.energies["E(P_G)"]
    rhs = ctx.energies["E(Q_F)"] + 2.0 * k * s / n - 2.0 * s
    if k < n:
        rec.at_most(theorem_id, "k < n ⇒ E(P_G) ≤ E(Q_F) + 2ks/n - 2s", lhs, rhs)
    elif k > n:
        rec.at_least(theorem_id, "k > n ⇒ E(P_G) ≥ E(Q_F) + 2ks/n - 2s", lhs, rhs)
    else:
        rec.equal(theorem_id, "k = n ⇒ E(P_G) = E(Q_F)", lhs, rhs)


def _clique_spectra_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    n, k = ctx.n, ctx.k
    rows = [(i, float(ctx.qf[i - 1]), float(ctx.rf[i - 1])) for i in range(1, min(n, k) + 1)]
    rec.worst("clique_spectra_coincide", "λ_i(Q_F) = λ_i(R_F) for i ≤ min(n, k)", EQUAL, rows,
              "partition is empty")
    rows = [(i, float(ctx.qf[i - 1]), 0.0) for i in range(k + 1, n + 1)]
    rec.worst("clique_laplacian_tail", "λ_i(Q_F) = 0 for i > k", EQUAL, rows, "n ≤ k")
    rows = [(i, float(ctx.rf[i - 1]), 0.0) for i in range(n + 1, k + 1)]
    rec.worst("clique_companion_tail", "λ_i(R_F) = 0 for i > n", EQUAL, rows, "k ≤ n")


def _incidence_energy_bounds(ctx: SpectralContext, rec: _Recorder) -> None:
    energies = ctx.energies
    rec.at_most("incidence_energy_vs_signless", "IE_F ≤ IE", energies["IE_F"], energies["IE"])
    rec.at_most("incidence_energy_vs_sqrt_clique_degrees", "IE_F ≤ Σ√t_i",
                energies["IE_F"], energies["sqrt_t_bound"])
    edges_only = ctx.k > 0 and bool(np.all(ctx.cover.sizes == 2))
    if edges_only:
        rec.equal("edge_partition_incidence_energy", "F = E ⇒ IE_F = IE", energies["IE_F"], energies["IE"])
        rec.equal("edge_partition_line_graph_energy", "F = E ⇒ E(R_F) = E(L_G)",
                  energies["E(R_F)"], energies["E(L_G)"])
    else:
        for theorem_id, description in (("edge_partition_incidence_energy", "F = E ⇒ IE_F = IE"),
                                        ("edge_partition_line_graph_energy", "F = E ⇒ E(R_F) = E(L_G)")):
            rec.not_applicable(theorem_id, description, EQUAL, "partition is not the edge set")


_SECTIONS = (
    _smallest_eigenvalue_bounds,
    _negative_tail_bounds,
    _inertia_bounds,
    _independence_bounds,
    _partition_graph_bounds,
    _signless_gap_bounds,
    _line_graph_bounds,
    _regular_shift_bounds,
    _graph_energy_bounds,
    _partition_graph_energy_bounds,
    _clique_laplacian_energy_bounds,
    _uniform_energy_comparison,
    _clique_spectra_bounds,
    _incidence_energy_bounds,
)


def bound_suite(g: Graph, cover: CliqueCover, tol: Tolerances = DEFAULT_TOLERANCES,
                context: Optional[SpectralContext] = None) -> List[BoundRecord]:
    """
    Evaluate every bound for a graph and one of its clique partitions.

    Args:
        g: Graph
        cover: Clique partition of g
        tol: Tolerances for slack and equality checks
        context: Precomputed spectra to reuse

    Returns:
        Records in a fixed order; failed preconditions give non-applicable
        records rather than omissions
    """
    ctx = context if context is not None else SpectralContext(g, cover, tol)
    rec = _Recorder(tol)
    for section in _SECTIONS:
        section(ctx, rec)
    failed = [r.theorem_id for r in rec.records if r.failed]
    if failed:
        logger.warning(f"{len(failed)} bound(s) failed on {g}: {', '.join(failed)}")
    logger.debug(f"Evaluated {len(rec.records)} bound records on {g}")
    return rec.records


@dataclass
class SpectralReport:
    """Spectra, energies and bound records of one graph with one partition."""

    graph: Dict[str, Any]
    cover: Dict[str, Any]
    regularity: Dict[str, Any]
    spectra: Dict[str, List[float]]
    inertia: Dict[str, List[int]]
    energies: Dict[str, float]
    rank: int
    alpha: int
    tau: int
    tbar: float
    clique_degrees: List[int]
    clique_sizes: List[int]
    bounds: List[BoundRecord]
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES)

    @property
    def failed_bounds(self) -> List[BoundRecord]:
        return [r for r in self.bounds if r.failed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph": self.graph,
            "cover": self.cover,
            "regularity": self.regularity,
            "spectra": self.spectra,
            "inertia": self.inertia,
            "energies": self.energies,
            "incidence_rank": self.rank,
            "independence_number": self.alpha,
            "tau": self.tau,
            "mean_clique_degree": self.tbar,
            "clique_degrees": self.clique_degrees,
            "clique_sizes": self.clique_sizes,
            "bounds": [r.to_dict(self.tolerances) for r in self.bounds],
            "all_bounds_hold": not self.failed_bounds,
        }


def spectral_report(g: Graph, cover: CliqueCover, tol: Tolerances = DEFAULT_TOLERANCES) -> SpectralReport:
    ctx = SpectralContext(g, cover, tol)
    bounds = bound_suite(g, cover, tol, context=ctx)
    return SpectralReport(
        graph=GraphParser().get_graph_info(g),
        cover=cover.to_dict(),
        regularity=ctx.regularity.to_dict(),
        spectra=ctx.spectra_dict(),
        inertia={
            "adjacency": list(ctx.inertia),
            "partition_graph": list(ctx.inertia_pg),
            "line_graph": list(ctx.inertia_lg),
        },
        energies=dict(ctx.energies),
        rank=ctx.rank,
        alpha=ctx.alpha,
        tau=ctx.tau,
        tbar=ctx.tbar,
        clique_degrees=[int(x) for x in cover.clique_degrees],
        clique_sizes=[int(x) for x in cover.sizes],
        bounds=bounds,
        tolerances=tol,
    )


@dataclass
class PartitionScan:
    """Minima over the enumerated clique partitions, each with a witness."""

    count: int
    complete: bool
    min_max_clique_degree: int
    min_max_clique_degree_partition: Tuple[Clique, ...]
    min_rank: int
    min_rank_partition: Tuple[Clique, ...]
    min_max_clique_size: int
    min_max_clique_size_partition: Tuple[Clique, ...]
    min_energy_bound: float
    min_energy_bound_partition: Tuple[Clique, ...]
    records: List[BoundRecord]

    def to_dict(self, tol: Tolerances = DEFAULT_TOLERANCES) -> Dict[str, Any]:
        def cliques(p):
            return [list(c) for c in p]

        return {
            "partitions_scanned": self.count,
            "complete": self.complete,
            "min_max_clique_degree": {"value": self.min_max_clique_degree,
                                      "partition": cliques(self.min_max_clique_degree_partition)},
            "min_incidence_rank": {"value": self.min_rank, "partition": cliques(self.min_rank_partition)},
            "min_max_clique_size": {"value": self.min_max_clique_size,
                                    "partition": cliques(self.min_max_clique_size_partition)},
            "min_energy_bound": {"value": self.min_energy_bound,
                                 "partition": cliques(self.min_energy_bound_partition)},
            "bounds": [r.to_dict(tol) for r in self.records],
        }


def scan_partitions(g: Graph, limit: int = 10000, tol: Tolerances = DEFAULT_TOLERANCES) -> PartitionScan:
    """
    Scan every clique partition of a small graph for the smallest t_1, rank,
    s_1 and energy bound.

    When more than ``limit`` partitions exist the scan stops and the minima
    are only upper bounds on the true minima (``complete`` is False).
    """
    if g.n > SCAN_GUARD:
        raise SizeGuardError("scan_partitions", g.n, SCAN_GUARD)
    if limit < 1:
        raise ValueError(f"Partition limit must be positive, got {limit}")
    ctx = SpectralContext(g, edge_partition(g), tol)
    _, nu_minus, _ = ctx.inertia

    best: Dict[str, Tuple[float, Tuple[Clique, ...]]] = {}

    def offer(key: str, value: float, partition: Tuple[Clique, ...]) -> None:
        if key not in best or value < best[key][0]:
            best[key] = (value, partition)

    count = 0
    complete = True
    for partition in enumerate_partitions(g):
        if count >= limit:
            complete = False
            break
        count += 1
        cover = CliqueCover(g, partition, PARTITION, "enumerated")
        t = cover.sorted_clique_degrees
        offer("t1", int(t[0]) if g.n else 0, partition)
        offer("rank", exact_rank(incidence(cover).matrix), partition)
        offer("s1", int(cover.sizes.max()) if cover.k else 0, partition)
        offer("energy", 2.0 * float(t[:nu_minus].sum()), partition)

    if not complete:
        logger.warning(f"Partition scan of {g} stopped after {limit} partitions; minima are upper bounds")
    logger.info(f"Scanned {count} clique partitions of {g}")

    rec = _Recorder(tol)
    note = "" if complete else "partial scan: minimum taken over the scanned partitions only"
    if g.n:
        rec.at_least("smallest_eigenvalue_vs_min_max_clique_degree", "λ_n(G) ≥ -min_F t_1",
                     float(ctx.lam[-1]), -best["t1"][0], note)
    if g.n and int(g.degrees.min()) == 0:
        rec.not_applicable("negative_inertia_vs_min_incidence_rank", "ν⁻(G) ≥ n - min_F rank(M_F)",
                           AT_LEAST, "graph has isolated vertices")
    else:
        rec.at_least("negative_inertia_vs_min_incidence_rank", "ν⁻(G) ≥ n - min_F rank(M_F)",
                     nu_minus, g.n - best["rank"][0], note)
    rec.at_most("energy_vs_min_clique_degree_sum", "E(G) ≤ min_F 2Σ_{i≤ν⁻} t_i",
                ctx.energies["E(G)"], best["energy"][0], note)

    return PartitionScan(
        count=count,
        complete=complete,
        min_max_clique_degree=int(best["t1"][0]),
        min_max_clique_degree_partition=best["t1"][1],
        min_rank=int(best["rank"][0]),
        min_rank_partition=best["rank"][1],
        min_max_clique_size=int(best["s1"][0]),
        min_max_clique_size_partition=best["s1"][1],
        min_energy_bound=float(best["energy"][0]),
        min_energy_bound_partition=best["energy"][1],
        records=rec.records,
    )


@dataclass
class CorpusResult:
    """Outcome of the random bound corpus."""

    graphs: int
    records: int
    failures: List[Dict[str, Any]]
    identity_failures: List[Dict[str, Any]]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.identity_failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graphs": self.graphs,
            "records": self.records,
            "failures": self.failures,
            "identity_failures": self.identity_failures,
            "ok": self.ok,
        }


def corpus_graph(index: int, base_seed: int = DEFAULT_SEED) -> Tuple[Graph, int]:
    """The index-th corpus graph and its seed (base_seed + index)."""
    seed = base_seed + index
    rng = np.random.default_rng(seed)
    n = int(rng.integers(*CORPUS_SIZES))
    p = float(rng.choice(CORPUS_DENSITIES))
    return random_graph(n, p, seed), seed


def incidence_identity_failures(cover: CliqueCover) -> List[str]:
    """Check MMᵀ - A = diag(t) and MᵀM - A(P_G) = diag(s) in integer arithmetic."""
    qf, rf = clique_signless_laplacian(incidence(cover))
    problems = []
    if not np.array_equal(qf - cover.graph.adjacency, np.diag(cover.clique_degrees)):
        problems.append("MMᵀ - A(G) != diag(t)")
    if not np.array_equal(rf - clique_partition_graph(cover).adjacency, np.diag(cover.sizes)):
        problems.append("MᵀM - A(P_G) != diag(s)")
    return problems


def _corpus_case(args: Tuple[int, int, Tolerances]) -> Dict[str, Any]:
    index, base_seed, tol = args
    g, seed = corpus_graph(index, base_seed)
    outcome: Dict[str, Any] = {"records": 0, "failures": [], "identity_failures": []}
    for cover in (edge_partition(g), min_clique_partition(g, "greedy", seed)):
        where = {"index": index, "seed": seed, "graph6": to_graph6(g), "provenance": cover.provenance}
        for problem in incidence_identity_failures(cover):
            outcome["identity_failures"].append({**where, "identity": problem})
        records = bound_suite(g, cover, tol)
        outcome["records"] += len(records)
        outcome["failures"].extend({**where, "record": r.to_dict(tol)} for r in records if r.failed)
    return outcome


def random_bound_corpus(count: int, base_seed: int = DEFAULT_SEED, workers: int = 1,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> CorpusResult:
    """
    Run the bound suite on ``count`` seeded G(n, p) graphs, n in 4..9 and
    p in {0.2, 0.5, 0.8}, with F = E and with a greedy partition.

    Args:
        count: Number of graphs
        base_seed: Graph i uses seed base_seed + i
        workers: Process count; 1 runs inline
        tol: Tolerances

    Returns:
        CorpusResult listing every failing record
    """
    jobs = [(i, base_seed, tol) for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_corpus_case, jobs))
    else:
        outcomes = [_corpus_case(job) for job in jobs]

    result = CorpusResult(
        graphs=count,
        records=sum(o["records"] for o in outcomes),
        failures=[f for o in outcomes for f in o["failures"]],
        identity_failures=[f for o in outcomes for f in o["identity_failures"]],
    )
    logger.info(f"Bound corpus: {result.graphs} graphs, {result.records} records, "
                f"{len(result.failures)} failures")
    return result

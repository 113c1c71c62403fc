"""Heuristic searches for separable witness values and CCNR records.

Two families live here.  The see-saw alternates closed-form block
updates (states are top-eigenvector projectors of their effective
operators, measurements are sign-projector products), driving the
witness monotonically upward.  The CCNR search does projected
subgradient ascent of sum_k s_k lambda_k over Bloch-diagonal PPT states
with an outer sign-refresh loop.

The feasible set of the CCNR search is handled in coefficient space.
The operators G_k (x) G_k pairwise commute (Pauli strings commute or
anticommute, and the sign cancels on the doubled copy), so they share
one eigenbasis: per qubit pair it is the Bell basis.  The matrix of
joint eigenvalues is the n-fold Kronecker power of a 4 x 4 sign table
and is orthogonal, which turns the positivity projections into exact
clip-in-eigenbasis maps: two matrix-vector products each.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg, pauli, protocol
from .protocol import Strategy, sep_upper_bound

MONOTONE_SLACK = 1e-10
SOUNDNESS_SLACK = 1e-9
PPT_ITERATE_TOL = -1e-8

_WITNESS_SCALE = 1.0 / 16**3


@dataclass(frozen=True)
class SeesawConfig:
    channel_dim: int
    n_restarts: int = 50
    max_iters: int = 500
    tol: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.tol <= 0 or self.n_restarts < 1 or self.max_iters < 1:
            raise ValueError("tol must be positive, restarts and iters >= 1")
        if not 2 <= self.channel_dim <= 16:
            raise ValueError("channel_dim must lie in 2..16")

    def to_dict(self) -> dict:
        return {
            "channel_dim": self.channel_dim,
            "n_restarts": self.n_restarts,
            "max_iters": self.max_iters,
            "tol": self.tol,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class AscentConfig:
    n_restarts: int = 20
    max_iters: int = 2000
    step0: float = 0.1
    dykstra_cap: int = 500
    dykstra_tol: float = 1e-11
    max_outer: int = 6
    seed: int = 0

    def __post_init__(self):
        if min(self.n_restarts, self.max_iters, self.dykstra_cap, self.max_outer) < 1:
            raise ValueError("restart, iteration and cap counts must be >= 1")
        if self.step0 <= 0 or self.dykstra_tol <= 0:
            raise ValueError("step0 and dykstra_tol must be positive")

    def to_dict(self) -> dict:
        return {
            "n_restarts": self.n_restarts,
            "max_iters": self.max_iters,
            "step0": self.step0,
            "dykstra_cap": self.dykstra_cap,
            "dykstra_tol": self.dykstra_tol,
            "max_outer": self.max_outer,
            "seed": self.seed,
        }


@dataclass
class OptimizationReport:
    best_value: float
    restart_values: list[float]
    best_restart: int
    converged: bool
    seed: int
    config: dict
    iterations_used: list[int] = field(default_factory=list)
    flagged_restarts: list[int] = field(default_factory=list)
    min_eig_seen: float | None = None
    best_strategy: Strategy | None = None
    best_lambdas: np.ndarray | None = None

    def to_dict(self) -> dict:
        out = {
            "best_value": self.best_value,
            "restart_values": [float(v) for v in self.restart_values],
            "best_restart": self.best_restart,
            "converged": self.converged,
            "seed": self.seed,
            "config": self.config,
            "iterations_used": [int(v) for v in self.iterations_used],
            "flagged_restarts": [int(v) for v in self.flagged_restarts],
        }
        if self.min_eig_seen is not None:
            out["min_eig_seen"] = self.min_eig_seen
        if self.best_lambdas is not None:
            out["best_lambdas"] = [float(v) for v in self.best_lambdas]
        return out


# ---------------------------------------------------------------------------
# see-saw over separable strategies


def _o_operators(taus: list[np.ndarray]) -> list[np.ndarray]:
    """O_z = sum_x f_xz tau_x for the 16 outputs."""
    stack = np.stack(taus)
    f = pauli.F_TABLE.astype(float)
    return list(np.einsum("xz,xab->zab", f, stack))


def _sign_operator(o: np.ndarray) -> tuple[np.ndarray, float]:
    """Matrix sign of a Hermitian operator and its trace norm.

    Zero eigenvalues get sign +1; any fixed choice is optimal and this
    one keeps runs reproducible.
    """
    spec = linalg.eigh(o)
    sgn = np.where(spec.eigenvalues < 0, -1.0, 1.0)
    v = spec.eigenvectors
    mat = (v * sgn) @ v.conj().T
    return mat, float(np.sum(np.abs(spec.eigenvalues)))


def optimal_measurement(
    states_a: list[np.ndarray],
    states_b: list[np.ndarray],
    signs: np.ndarray,
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Best product decoders for fixed message states.

    For each output z the optimal observable is the product of the
    matrix signs of O_z on either side, carrying the task sign on the
    A factor.  The witness this measurement attains is
    (1/16^3) sum_z ||O_a_z||_1 ||O_b_z||_1, independent of the signs.
    """
    signs = np.asarray(signs, dtype=np.int64)
    dec_a = []
    dec_b = []
    for z, (oa, ob) in enumerate(zip(_o_operators(states_a), _o_operators(states_b))):
        ma, _ = _sign_operator(oa)
        mb, _ = _sign_operator(ob)
        dec_a.append(float(signs[z]) * ma)
        dec_b.append(mb)
    return dec_a, dec_b


def _witness_product_decoders(
    states_a, states_b, dec_a, dec_b, signs
) -> float:
    """(1/16^3) sum_z s_z tr(O_a_z M_a_z) tr(O_b_z M_b_z)."""
    total = 0.0
    for z, (oa, ob) in enumerate(zip(_o_operators(states_a), _o_operators(states_b))):
        ta = np.trace(oa @ dec_a[z]).real
        tb = np.trace(ob @ dec_b[z]).real
        total += float(signs[z]) * ta * tb
    return _WITNESS_SCALE * total


def _effective_operators(
    other_states, dec_self, dec_other, signs
) -> np.ndarray:
    """Effective operators A_x such that W = sum_x tr(tau_x A_x).

    With product decoders the partial trace collapses to a scalar:
    A_x = (1/16^3) sum_z s_z f_xz tr(O_other_z M_other_z) M_self_z.
    """
    betas = np.array(
        [np.trace(o @ m).real for o, m in zip(_o_operators(other_states), dec_other)]
    )
    coeff = pauli.F_TABLE.astype(float) * (signs.astype(float) * betas)[None, :]
    dec_stack = np.stack(dec_self)
    return _WITNESS_SCALE * np.einsum("xz,zab->xab", coeff, dec_stack)


def optimal_states_given_measurement(
    dec_self: list[np.ndarray],
    dec_other: list[np.ndarray],
    other_states: list[np.ndarray],
    signs: np.ndarray,
) -> list[np.ndarray]:
    """Closed-form state half-step: rank-1 projector onto the top
    eigenvector of each effective operator.

    Ties inherit the eigendecomposition's deterministic ordering and
    phase convention.  The witness cannot decrease under this update.
    """
    eff = _effective_operators(other_states, dec_self, dec_other, signs)
    out = []
    for a in eff:
        vec = linalg.eigh(a).eigenvectors[:, 0]
        out.append(np.outer(vec, vec.conj()))
    return out


def _level_states(levels: np.ndarray, dim: int) -> list[np.ndarray]:
    out = []
    for level in levels:
        tau = np.zeros((dim, dim), dtype=complex)
        tau[level, level] = 1.0
        out.append(tau)
    return out


def _diag_o(levels: np.ndarray, dim: int) -> np.ndarray:
    """Diagonals of O_z for computational-basis encodings, shape (16, dim)."""
    diag = np.zeros((16, dim), dtype=np.int64)
    for x, level in enumerate(levels):
        diag[:, level] += pauli.F_TABLE[x, :]
    return diag


def _classical_sweep(
    levels: np.ndarray,
    other_norms: np.ndarray,
    dim: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """One coordinate-ascent sweep over the encoding x -> level.

    The objective is the witness with the measurement implicitly
    re-optimised: sum_z ||O_self_z||_1 ||O_other_z||_1, where for
    diagonal O the trace norm is just the absolute column sum.  Each
    input in turn moves to its best level.  Scores are integers, so
    exact ties are common; they are broken with the restart generator
    to keep restarts from collapsing onto one pattern.
    """
    diag = _diag_o(levels, dim)
    for x in range(16):
        f_row = pauli.F_TABLE[x, :]
        diag[:, levels[x]] -= f_row
        # candidate scores: remove-and-reinsert per level
        base = np.sum(np.abs(diag), axis=1)          # (16,)
        scores = np.empty(dim)
        for cand in range(dim):
            delta = np.abs(diag[:, cand] + f_row) - np.abs(diag[:, cand])
            scores[cand] = float(np.dot(other_norms, base + delta))
        tied = np.flatnonzero(scores == scores.max())
        best = int(tied[rng.integers(tied.size)])
        levels[x] = best
        diag[:, best] += f_row
    return levels


def _classical_fixed_step(
    levels: np.ndarray,
    other_norms: np.ndarray,
    dim: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Simultaneous per-input argmax against the current sign decoders.

    The decoder of each correlation observable is the diagonal sign of
    the observable itself, so the witness sign s_z cancels out of the
    score (s_z^2 = 1) and the update is the same for every sign
    pattern.  Ties are broken with the restart generator.
    """
    diag = _diag_o(levels, dim)
    dec = np.where(diag < 0, -1, 1).astype(float)
    weight = other_norms[None, :] * pauli.F_TABLE.astype(float)  # (x, z)
    scores = weight @ dec                                        # (x, level)
    out = np.empty(16, dtype=np.int64)
    for x in range(16):
        row = scores[x]
        tied = np.flatnonzero(row == row.max())
        out[x] = int(tied[rng.integers(tied.size)])
    return out


def _classical_swap_sweep(
    levels: np.ndarray,
    other_norms: np.ndarray,
    dim: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Greedy pass over input pairs, exchanging levels when that helps.

    Exchanges preserve the level occupancy profile, which single-input
    moves cannot fix once the ascent has balanced itself into a local
    optimum.  Only strictly improving exchanges are taken.
    """
    diag = _diag_o(levels, dim)
    for x1 in range(16):
        for x2 in range(x1 + 1, 16):
            l1, l2 = levels[x1], levels[x2]
            if l1 == l2:
                continue
            f1 = pauli.F_TABLE[x1, :]
            f2 = pauli.F_TABLE[x2, :]
            d1_new = diag[:, l1] + f2 - f1
            d2_new = diag[:, l2] + f1 - f2
            delta = (np.abs(d1_new) - np.abs(diag[:, l1])
                     + np.abs(d2_new) - np.abs(diag[:, l2]))
            if float(np.dot(other_norms, delta)) > 0:
                diag[:, l1] = d1_new
                diag[:, l2] = d2_new
                levels[x1], levels[x2] = l2, l1
    return levels


def _random_pure_states(rng: np.random.Generator, dim: int, count: int):
    out = []
    for _ in range(count):
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        v /= np.linalg.norm(v)
        out.append(np.outer(v, v.conj()))
    return out


def _classical_norms(levels: np.ndarray, dim: int) -> np.ndarray:
    return np.sum(np.abs(_diag_o(levels, dim)), axis=1).astype(float)


def _classical_restart(
    cfg: SeesawConfig, restart: int, signs: np.ndarray
) -> tuple[float, int, bool, bool, list, list, list, list]:
    """One classical restart: ascent over deterministic encodings.

    Tracks the witness with the measurement re-optimised after every
    update, so the value is monotone across all three move kinds: the
    argmax step against frozen decoders lower-bounds it and the sweep
    and exchange moves increase it directly.  Phases cycle until a full
    cycle brings no improvement.
    """
    rng = np.random.default_rng([cfg.seed, restart])
    d = cfg.channel_dim
    levels_a = rng.integers(0, d, size=16)
    levels_b = rng.integers(0, d, size=16)
    norms_a = _classical_norms(levels_a, d)
    norms_b = _classical_norms(levels_b, d)
    w = _WITNESS_SCALE * float(np.dot(norms_a, norms_b))
    converged = False
    flagged = False
    iters = 0
    phases = (_classical_fixed_step, _classical_sweep, _classical_swap_sweep)
    for _ in range(cfg.max_iters):
        w_cycle_start = w
        for step in phases:
            for _ in range(cfg.max_iters):
                if iters >= cfg.max_iters:
                    break
                iters += 1
                levels_a = step(levels_a, norms_b, d, rng)
                norms_a = _classical_norms(levels_a, d)
                levels_b = step(levels_b, norms_a, d, rng)
                norms_b = _classical_norms(levels_b, d)
                w_new = _WITNESS_SCALE * float(np.dot(norms_a, norms_b))
                if w_new < w - MONOTONE_SLACK:
                    flagged = True
                    break
                improved = w_new - w >= cfg.tol
                w = w_new
                if not improved:
                    break
            if flagged:
                break
        if flagged or iters >= cfg.max_iters:
            break
        if w - w_cycle_start < cfg.tol:
            converged = True
            break
    states_a = _level_states(levels_a, d)
    states_b = _level_states(levels_b, d)
    dec_a, dec_b = optimal_measurement(states_a, states_b, signs)
    w_final = _witness_product_decoders(states_a, states_b, dec_a, dec_b, signs)
    if abs(w_final - w) > 1e-9:
        flagged = True
    return w_final, iters, converged, flagged, states_a, states_b, dec_a, dec_b


def _seesaw_restart(
    cfg: SeesawConfig, restart: int, signs: np.ndarray
) -> tuple[float, int, bool, bool, list, list, list, list]:
    rng = np.random.default_rng([cfg.seed, restart])
    d = cfg.channel_dim
    states_a = _random_pure_states(rng, d, 16)
    states_b = _random_pure_states(rng, d, 16)
    update = optimal_states_given_measurement

    dec_a, dec_b = optimal_measurement(states_a, states_b, signs)
    w = _witness_product_decoders(states_a, states_b, dec_a, dec_b, signs)
    converged = False
    flagged = False
    iters = 0
    for iters in range(1, cfg.max_iters + 1):
        w_cycle_start = w
        states_a = update(dec_a, dec_b, states_b, signs)
        w_new = _witness_product_decoders(states_a, states_b, dec_a, dec_b, signs)
        if w_new < w - MONOTONE_SLACK:
            flagged = True
            break
        w = w_new
        # B-side effective operators use the A states and swapped decoders
        states_b = update(dec_b, dec_a, states_a, signs)
        w_new = _witness_product_decoders(states_a, states_b, dec_a, dec_b, signs)
        if w_new < w - MONOTONE_SLACK:
            flagged = True
            break
        w = w_new
        dec_a, dec_b = optimal_measurement(states_a, states_b, signs)
        w_new = _witness_product_decoders(states_a, states_b, dec_a, dec_b, signs)
        if w_new < w - MONOTONE_SLACK:
            flagged = True
            break
        w = w_new
        if abs(w - w_cycle_start) < cfg.tol:
            converged = True
            break
    return w, iters, converged, flagged, states_a, states_b, dec_a, dec_b


def _run_seesaw(
    cfg: SeesawConfig, signs: np.ndarray | None, classical: bool, workers: int
) -> OptimizationReport:
    signs = np.asarray(signs if signs is not None else protocol.default_signs())

    def run(idx: int):
        if classical:
            return _classical_restart(cfg, idx, signs)
        return _seesaw_restart(cfg, idx, signs)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(cfg.n_restarts)))
    else:
        results = [run(i) for i in range(cfg.n_restarts)]

    finals = [r[0] for r in results]
    best_idx = int(np.argmax(finals))
    best = results[best_idx]
    bound = float(sep_upper_bound(cfg.channel_dim, 1))
    if best[0] > bound + SOUNDNESS_SLACK:
        raise AssertionError(
            f"see-saw value {best[0]} exceeds the separable bound {bound}"
        )
    strategy = Strategy(
        kind="prepared_states",
        n_copies=1,
        channel_dim=cfg.channel_dim,
        decoders_a=best[6],
        decoders_b=best[7],
        states_a=best[4],
        states_b=best[5],
    )
    return OptimizationReport(
        best_value=float(finals[best_idx]),
        restart_values=finals,
        best_restart=best_idx,
        converged=bool(best[2]),
        seed=cfg.seed,
        config=cfg.to_dict(),
        iterations_used=[r[1] for r in results],
        flagged_restarts=[i for i, r in enumerate(results) if r[3]],
        best_strategy=strategy,
    )


def seesaw_quantum(
    cfg: SeesawConfig, signs: np.ndarray | None = None, workers: int = 1
) -> OptimizationReport:
    """Alternating maximisation over pure message states and decoders."""
    return _run_seesaw(cfg, signs, classical=False, workers=workers)


def seesaw_classical(
    cfg: SeesawConfig, signs: np.ndarray | None = None, workers: int = 1
) -> OptimizationReport:
    """Same loop with messages pinned to computational-basis levels."""
    return _run_seesaw(cfg, signs, classical=True, workers=workers)


# ---------------------------------------------------------------------------
# projected subgradient ascent of the CCNR over Bloch-diagonal PPT states


def _bell_sign_table() -> np.ndarray:
    """Eigenvalues of P_a (x) P_a (unnormalised Paulis) on the Bell basis."""
    bells = (
        np.array([1, 0, 0, 1]) / np.sqrt(2),
        np.array([1, 0, 0, -1]) / np.sqrt(2),
        np.array([0, 1, 1, 0]) / np.sqrt(2),
        np.array([0, 1, -1, 0]) / np.sqrt(2),
    )
    paulis = [2.0 * g for g in pauli.pauli_basis(1)]
    table = np.zeros((4, 4), dtype=np.int64)
    for m, b in enumerate(bells):
        for a, p in enumerate(paulis):
            val = np.real(b.conj() @ np.kron(p, p) @ b)
            assert abs(val - np.rint(val)) < 1e-9
            table[m, a] = int(np.rint(val))
    return table


def joint_eigenvalue_matrix(local_dim: int) -> np.ndarray:
    """Orthogonal matrix C with (C lam)_m = m-th eigenvalue of
    sum_k lam_k G_k (x) G_k, rows indexed by products of Bell labels."""
    n = local_dim.bit_length() - 1
    if 2**n != local_dim:
        raise ValueError("local dimension must be a power of two")
    base = _bell_sign_table() / 4.0
    c = base
    for _ in range(n - 1):
        c = np.kron(c, base)
    return c


class _BlochPolytope:
    """Feasible set {rho PSD, rho^T_B PSD, unit trace} in lambda space."""

    def __init__(self, local_dim: int):
        self.local_dim = local_dim
        self.c = joint_eigenvalue_matrix(local_dim)
        n = local_dim.bit_length() - 1
        self.t = pauli.pauli_transpose_signs(n).astype(float)
        self.id_coeff = 1.0 / local_dim

    def eigs(self, lam: np.ndarray) -> np.ndarray:
        return self.c @ lam

    def eigs_pt(self, lam: np.ndarray) -> np.ndarray:
        return self.c @ (self.t * lam)

    def project_psd(self, lam: np.ndarray) -> np.ndarray:
        e = self.c @ lam
        return self.c.T @ np.maximum(e, 0.0)

    def project_psd_pt(self, lam: np.ndarray) -> np.ndarray:
        e = self.c @ (self.t * lam)
        return self.t * (self.c.T @ np.maximum(e, 0.0))

    def project_trace(self, lam: np.ndarray) -> np.ndarray:
        out = lam.copy()
        out[0] = self.id_coeff
        return out

    def dykstra(
        self, lam: np.ndarray, cap: int, tol: float
    ) -> tuple[np.ndarray, bool]:
        """Projection onto the intersection; returns (point, converged)."""
        x = lam
        p1 = np.zeros_like(lam)
        p2 = np.zeros_like(lam)
        p3 = np.zeros_like(lam)
        for _ in range(cap):
            y1 = self.project_psd(x + p1)
            p1 = x + p1 - y1
            y2 = self.project_psd_pt(y1 + p2)
            p2 = y1 + p2 - y2
            y3 = self.project_trace(y2 + p3)
            p3 = y2 + p3 - y3
            drift = float(np.max(np.abs(y3 - x)))
            x = y3
            if drift < tol:
                return x, True
        return x, False

    def min_eig(self, lam: np.ndarray) -> float:
        return float(min(np.min(self.eigs(lam)), np.min(self.eigs_pt(lam))))

    # row-wise variants: one restart per row, identical maps

    def project_psd_rows(self, lam: np.ndarray) -> np.ndarray:
        return np.maximum(lam @ self.c.T, 0.0) @ self.c

    def project_psd_pt_rows(self, lam: np.ndarray) -> np.ndarray:
        return (np.maximum((lam * self.t) @ self.c.T, 0.0) @ self.c) * self.t

    def min_eig_rows(self, lam: np.ndarray) -> np.ndarray:
        plain = (lam @ self.c.T).min(axis=1)
        swapped = ((lam * self.t) @ self.c.T).min(axis=1)
        return np.minimum(plain, swapped)

    def dykstra_rows(
        self,
        lam: np.ndarray,
        cap: int,
        tol: float,
        active: np.ndarray | None = None,
    ) -> tuple[np.ndarray, np.ndarray]:
        """Dykstra on every row at once; rows freeze as they converge.

        Rows outside `active` are passed through untouched and count as
        converged.  Returns (points, converged mask).
        """
        out = lam.copy()
        rows = (
            np.arange(lam.shape[0])
            if active is None
            else np.flatnonzero(active)
        )
        converged = np.ones(lam.shape[0], bool)
        converged[rows] = False
        x = out[rows]
        p1 = np.zeros_like(x)
        p2 = np.zeros_like(x)
        p3 = np.zeros_like(x)
        for _ in range(cap):
            if rows.size == 0:
                break
            y1 = self.project_psd_rows(x + p1)
            p1 = x + p1 - y1
            y2 = self.project_psd_pt_rows(y1 + p2)
            p2 = y1 + p2 - y2
            y3 = y2 + p3
            y3[:, 0] = self.id_coeff
            p3 = y2 + p3 - y3
            drift = np.max(np.abs(y3 - x), axis=1)
            x = y3
            done = drift < tol
            if done.any():
                out[rows] = x
                converged[rows[done]] = True
                keep = ~done
                rows = rows[keep]
                x = x[keep]
                p1 = p1[keep]
                p2 = p2[keep]
                p3 = p3[keep]
        if rows.size:
            out[rows] = x
        return out, converged


# the random start sits far outside the polytope; the one-time pull-in
# projection gets a larger budget than the per-step projections
_INITIAL_PULL_FACTOR = 40


def _ascent_all(poly: _BlochPolytope, cfg: AscentConfig) -> dict:
    """All restarts in lockstep rows; per-restart math is unchanged."""
    r_count = cfg.n_restarts
    k = poly.c.shape[0]
    lam = np.empty((r_count, k))
    for r in range(r_count):
        rng = np.random.default_rng([cfg.seed, r])
        start = np.zeros(k)
        start[0] = poly.id_coeff
        lam[r] = start + 0.1 * rng.normal(size=k)

    lam, conv = poly.dykstra_rows(
        lam, cfg.dykstra_cap * _INITIAL_PULL_FACTOR, cfg.dykstra_tol
    )
    flagged = ~conv
    me = poly.min_eig_rows(lam)
    min_eig_seen = me.copy()
    start_ccnr = np.abs(lam).sum(axis=1)
    feasible = me >= PPT_ITERATE_TOL
    best_ccnr = np.where(feasible, start_ccnr, -np.inf)
    best_lam = lam.copy()
    signs = np.where(lam < 0, -1.0, 1.0)
    signs[:, 0] = 1.0
    active = np.ones(r_count, bool)
    iters_used = np.zeros(r_count, dtype=int)

    for _ in range(cfg.max_outer):
        for it in range(1, cfg.max_iters + 1):
            step = cfg.step0 / np.sqrt(it)
            g = signs / np.linalg.norm(signs, axis=1, keepdims=True)
            prop = np.where(active[:, None], lam + step * g, lam)
            lam_new, conv = poly.dykstra_rows(
                prop, cfg.dykstra_cap, cfg.dykstra_tol, active
            )
            flagged |= active & ~conv
            me = poly.min_eig_rows(lam_new)
            min_eig_seen = np.where(
                active, np.minimum(min_eig_seen, me), min_eig_seen
            )
            cc = np.abs(lam_new).sum(axis=1)
            better = active & (me >= PPT_ITERATE_TOL) & (cc > best_ccnr)
            best_ccnr = np.where(better, cc, best_ccnr)
            best_lam = np.where(better[:, None], lam_new, best_lam)
            lam = np.where(active[:, None], lam_new, lam)
        iters_used += np.where(active, cfg.max_iters, 0)
        new_signs = np.where(best_lam < 0, -1.0, 1.0)
        new_signs[:, 0] = 1.0
        unchanged = np.all(new_signs == signs, axis=1)
        active &= ~unchanged
        if not active.any():
            break
        signs = np.where(active[:, None], new_signs, signs)
        lam = np.where(active[:, None], best_lam, lam)

    # a restart with no feasible iterate reports its start and stays flagged
    never = ~np.isfinite(best_ccnr)
    best_ccnr = np.where(never, start_ccnr, best_ccnr)
    flagged |= never
    return {
        "ccnr": best_ccnr,
        "lambdas": best_lam,
        "flagged": flagged,
        "min_eig_seen": min_eig_seen,
        "iters_used": iters_used,
    }


def ccnr_ascent_bloch_ppt(
    local_dim: int, cfg: AscentConfig | None = None, workers: int = 1
) -> OptimizationReport:
    """Maximise sum |lambda_k| over Bloch-diagonal PPT states.

    Supported local dimensions are 4, 8 and 16, where the basis is a
    product of Pauli strings.  Inner loop: projected subgradient ascent
    of sum_k s_k lambda_k at fixed signs, projections by Dykstra's
    alternating scheme onto {rho >= 0} cap {rho^T_B >= 0} cap {unit
    trace}.  Outer loop refreshes s from the best iterate's signs.

    Restarts run as one vectorized batch (each restart is a row), so
    `workers` does not change the result; it is kept for interface
    parity with the see-saw searches.
    """
    if local_dim not in (4, 8, 16):
        raise ValueError(
            "CCNR search needs a Pauli-string product basis; "
            "local dimension must be one of 4, 8, 16"
        )
    if workers < 1:
        raise ValueError("workers must be positive")
    cfg = cfg or AscentConfig()
    poly = _BlochPolytope(local_dim)
    out = _ascent_all(poly, cfg)

    finals = [float(v) for v in out["ccnr"]]
    best_idx = int(np.argmax(out["ccnr"]))
    flagged = [i for i in range(cfg.n_restarts) if out["flagged"][i]]
    return OptimizationReport(
        best_value=finals[best_idx],
        restart_values=finals,
        best_restart=best_idx,
        converged=not out["flagged"][best_idx],
        seed=cfg.seed,
        config=cfg.to_dict(),
        iterations_used=[int(v) for v in out["iters_used"]],
        flagged_restarts=flagged,
        min_eig_seen=float(np.min(out["min_eig_seen"])),
        best_lambdas=out["lambdas"][best_idx].copy(),
    )

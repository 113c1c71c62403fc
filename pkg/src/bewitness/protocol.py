"""Strategies and witness evaluation for the communication task.

A strategy fixes what Alice and Bob send over the dimension-D channels
and how Charlie decodes.  Decoders are stored per copy in the product
form C_z = M_A (x) M_B (every decoder used here is of that form: the
entangled protocol measures G_z (x) G_z, the separable optimum is a
product of sign operators).  Multi-copy dense objects are assembled as
Kronecker products with Alice-side registers grouped before Bob-side
ones, matching the layout of densified Bloch-diagonal states.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg, pauli, states
from .states import BlochDiagonalState

UNITARITY_ATOL = 1e-10
OBSERVABLE_EIG_SLACK = 1e-9

_CHUNK_PAIRS = 16   # (x, y) pairs per reduction chunk, fixed for determinism


@dataclass(frozen=True)
class TaskSpec:
    """N parallel copies, channel dimension D, per-copy sign vector."""

    n_copies: int
    channel_dim: int
    signs: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.asarray(self.signs, dtype=np.int64)
        object.__setattr__(self, "signs", s)
        if self.n_copies < 1:
            raise ValueError("n_copies must be >= 1")
        if not 1 <= self.channel_dim <= 16**self.n_copies:
            raise ValueError("channel_dim must lie in 1..16^N")
        if s.shape != (16,) or not np.all(np.isin(s, (-1, 1))):
            raise ValueError("signs must be 16 entries of +-1 (per copy)")

    def flat_signs(self) -> np.ndarray:
        """Sign of each flat z-vector, s_z = prod of per-copy signs."""
        out = self.signs
        for _ in range(self.n_copies - 1):
            out = np.kron(out, self.signs)
        return out

    def to_dict(self) -> dict:
        return {
            "n_copies": self.n_copies,
            "channel_dim": self.channel_dim,
            "signs": [int(v) for v in self.signs],
        }


@dataclass(frozen=True)
class WitnessResult:
    value: float
    method: str
    task: TaskSpec

    def to_dict(self) -> dict:
        return {"value": self.value, "method": self.method, "task": self.task.to_dict()}


@dataclass
class Strategy:
    """Alice/Bob encodings plus Charlie's per-copy product decoders.

    kind "prepared_states": states_a/states_b hold 16 density matrices
    of dimension D each (single copy).  kind "entangled_unitaries":
    shared_state holds the Bloch-diagonal resource and encoders_a/b the
    16 per-copy unitaries.  decoders_a/b hold the per-copy factors of
    C_z = decoders_a[z] (x) decoders_b[z]; any task sign is folded into
    the A-side factor.
    """

    kind: str
    n_copies: int
    channel_dim: int
    decoders_a: list[np.ndarray]
    decoders_b: list[np.ndarray]
    states_a: list[np.ndarray] | None = None
    states_b: list[np.ndarray] | None = None
    encoders_a: list[np.ndarray] | None = None
    encoders_b: list[np.ndarray] | None = None
    shared_state: BlochDiagonalState | None = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.kind not in ("prepared_states", "entangled_unitaries"):
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if len(self.decoders_a) != 16 or len(self.decoders_b) != 16:
            raise ValueError("expected 16 per-copy decoder factors per side")
        for m in list(self.decoders_a) + list(self.decoders_b):
            h = linalg.require_hermitian(m)
            w = linalg.eigh(h).eigenvalues
            if w[0] > 1 + OBSERVABLE_EIG_SLACK or w[-1] < -1 - OBSERVABLE_EIG_SLACK:
                raise ValueError("decoder factor eigenvalues leave [-1, 1]")
        if self.kind == "prepared_states":
            if self.n_copies != 1:
                raise ValueError("prepared-state strategies are single copy here")
            if self.states_a is None or self.states_b is None:
                raise ValueError("prepared_states strategy needs state tables")
            for tau in list(self.states_a) + list(self.states_b):
                h = linalg.require_hermitian(tau)
                w = linalg.eigh(h).eigenvalues
                if w[-1] < states.PSD_EIG_TOL or abs(np.trace(h).real - 1) > 1e-10:
                    raise ValueError("prepared state is not a density matrix")
        else:
            if self.shared_state is None or self.encoders_a is None or self.encoders_b is None:
                raise ValueError("entangled strategy needs shared state and encoders")
            for u in list(self.encoders_a) + list(self.encoders_b):
                u = np.asarray(u)
                gram = u.conj().T @ u
                if np.max(np.abs(gram - np.eye(u.shape[0]))) > UNITARITY_ATOL:
                    raise ValueError("encoder is not unitary within tolerance")

    def dense_decoder(self, zs: tuple[int, ...]) -> np.ndarray:
        da = linalg.kron_all([self.decoders_a[z - 1] for z in zs])
        db = linalg.kron_all([self.decoders_b[z - 1] for z in zs])
        return linalg.kron(da, db)


def default_signs() -> np.ndarray:
    """Sign pattern matched to the bound entangled target state."""
    return states.rho_be().sign_pattern()


def matched_task(state: BlochDiagonalState, channel_dim: int | None = None) -> TaskSpec:
    """Task whose signs follow the state's per-copy coefficient signs."""
    stride = 16 ** (state.n_copies - 1)
    per_copy = state.lambdas[::stride]
    signs = np.where(per_copy < 0, -1, 1).astype(np.int64)
    d = channel_dim if channel_dim is not None else 4**state.n_copies
    return TaskSpec(n_copies=state.n_copies, channel_dim=d, signs=signs)


def be_strategy(state: BlochDiagonalState) -> Strategy:
    """The entangled protocol: Pauli encoders, G_z (x) G_z decoders."""
    basis = pauli.pauli_basis(2)
    encoders = [2.0 * g for g in basis]
    half = [2.0 * g for g in basis]   # 4 G_z (x) G_z = (2 G_z) (x) (2 G_z)
    return Strategy(
        kind="entangled_unitaries",
        n_copies=state.n_copies,
        channel_dim=4,
        decoders_a=half,
        decoders_b=[m.copy() for m in half],
        encoders_a=encoders,
        encoders_b=[u.copy() for u in encoders],
        shared_state=state,
    )


def _as_index_tuple(v, n_copies: int) -> tuple[int, ...]:
    if isinstance(v, (int, np.integer)):
        v = (int(v),)
    out = tuple(int(i) for i in v)
    if len(out) != n_copies:
        raise ValueError(f"expected {n_copies} per-copy indices, got {out}")
    for i in out:
        if not 1 <= i <= 16:
            raise ValueError(f"index {i} out of range [16]")
    return out


def _dense_shared(strategy: Strategy) -> np.ndarray:
    if strategy.shared_state is None:
        raise ValueError("strategy has no shared state")
    return states.densify(strategy.shared_state)


def _expectation_dense(strategy: Strategy, rho: np.ndarray | None,
                       xs, ys, zs) -> float:
    """Literal dense evaluation of one correlator."""
    xs = _as_index_tuple(xs, strategy.n_copies)
    ys = _as_index_tuple(ys, strategy.n_copies)
    zs = _as_index_tuple(zs, strategy.n_copies)
    c = strategy.dense_decoder(zs)
    if strategy.kind == "prepared_states":
        tau = linalg.kron(strategy.states_a[xs[0] - 1], strategy.states_b[ys[0] - 1])
        return float(np.sum(tau * c.T).real)
    u = linalg.kron_all([strategy.encoders_a[x - 1] for x in xs])
    v = linalg.kron_all([strategy.encoders_b[y - 1] for y in ys])
    uv = linalg.kron(u, v)
    rotated = uv @ rho @ uv.conj().T
    return float(np.sum(rotated * c.T).real)


def expectation(strategy: Strategy, xs, ys, zs) -> float:
    """Correlator E_xyz = tr[state . C] in [-1, 1] for one triple."""
    rho = _dense_shared(strategy) if strategy.kind == "entangled_unitaries" else None
    val = _expectation_dense(strategy, rho, xs, ys, zs)
    if abs(val) > 1 + 1e-9:
        raise AssertionError(f"correlator {val} outside [-1, 1]")
    return val


def sample_triples(n_copies: int, count: int, seed: int) -> np.ndarray:
    """Seeded uniform triples, shape (count, 3, n_copies), entries 1..16."""
    rng = np.random.default_rng(seed)
    return rng.integers(1, 17, size=(count, 3, n_copies))


def _pair_chunks(pairs: list) -> list[list]:
    return [pairs[i:i + _CHUNK_PAIRS] for i in range(0, len(pairs), _CHUNK_PAIRS)]


def witness_brute_force(
    strategy: Strategy,
    task: TaskSpec,
    samples: np.ndarray | None = None,
    workers: int = 1,
) -> WitnessResult:
    """Witness by explicit dense summation.

    One copy: the full 16^3-triple sum (no sampling accepted).  Two
    copies: a caller-supplied sample of triples, averaged.  Three or
    more copies are rejected; densification is off the table there.

    Chunked fixed-order reduction keeps the result bit-identical for
    any worker count.
    """
    if task.n_copies != strategy.n_copies:
        raise ValueError("task and strategy copy counts differ")
    if task.n_copies == 1:
        if samples is not None:
            raise ValueError("one-copy witness is a full sum; drop samples")
        return _witness_full_n1(strategy, task, workers)
    if task.n_copies == 2:
        if samples is None:
            raise ValueError("two-copy brute force needs a sampling plan")
        ev = expectations_dense(strategy, samples, workers=workers)
        w = np.array(
            [pauli.w_value(t[0], t[1], t[2], task.signs) for t in samples],
            dtype=float,
        )
        return WitnessResult(float(np.mean(w * ev)), "brute_force", task)
    raise ValueError("brute force is limited to one or two copies")


def _witness_full_n1(strategy: Strategy, task: TaskSpec, workers: int) -> WitnessResult:
    rho = _dense_shared(strategy) if strategy.kind == "entangled_unitaries" else None
    dense_c = [strategy.dense_decoder((z,)) for z in range(1, 17)]
    signs = task.signs

    def pair_term(xy) -> float:
        x, y = xy
        if strategy.kind == "prepared_states":
            state_xy = linalg.kron(strategy.states_a[x - 1], strategy.states_b[y - 1])
        else:
            uv = linalg.kron(strategy.encoders_a[x - 1], strategy.encoders_b[y - 1])
            state_xy = uv @ rho @ uv.conj().T
        total = 0.0
        for z in range(16):
            w = int(signs[z]) * int(pauli.F_TABLE[x - 1, z]) * int(pauli.F_TABLE[y - 1, z])
            total += w * float(np.sum(state_xy * dense_c[z].T).real)
        return total

    pairs = [(x, y) for x in range(1, 17) for y in range(1, 17)]
    chunks = _pair_chunks(pairs)

    def chunk_sum(chunk) -> float:
        acc = 0.0
        for xy in chunk:
            acc += pair_term(xy)
        return acc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(chunk_sum, chunks))
    else:
        partials = [chunk_sum(c) for c in chunks]
    value = math.fsum(partials) / 16**3
    return WitnessResult(value, "brute_force", task)


def expectations_dense(
    strategy: Strategy, samples: np.ndarray, workers: int = 1
) -> np.ndarray:
    """Dense per-triple correlators for a list of index triples."""
    rho = _dense_shared(strategy) if strategy.kind == "entangled_unitaries" else None
    rows = [tuple(map(tuple, t)) for t in np.asarray(samples)]
    chunks = _pair_chunks(rows)

    def chunk_vals(chunk) -> list[float]:
        return [_expectation_dense(strategy, rho, xs, ys, zs) for xs, ys, zs in chunk]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(chunk_vals, chunks))
    else:
        parts = [chunk_vals(c) for c in chunks]
    return np.array([v for part in parts for v in part])


def witness_closed_form(state: BlochDiagonalState, task: TaskSpec) -> WitnessResult:
    """Closed-form witness (sum_k s_k lambda_k) / 4 per copy.

    Valid only when the task signs match the coefficient signs at every
    nonzero coefficient; a mismatch is rejected with the first offending
    index.  A single-copy state with a multi-copy task is treated as the
    task-wide tensor power.
    """
    signs = task.signs
    if state.n_copies == 1:
        mism = np.nonzero(state.lambdas * signs < 0)[0]
        if mism.size:
            raise ValueError(
                f"task sign disagrees with coefficient at flat index {mism[0] + 1}"
            )
        per_copy = float(np.dot(signs, state.lambdas)) / 4.0
        return WitnessResult(per_copy**task.n_copies, "closed_form", task)
    if state.n_copies != task.n_copies:
        raise ValueError("multi-copy state must match the task copy count")
    lam = state.lambdas.reshape((16,) * state.n_copies)
    flat = state.lambdas
    fsigns = task.flat_signs() if state.n_copies <= 2 else None
    if fsigns is not None:
        mism = np.nonzero(flat * fsigns < 0)[0]
        if mism.size:
            raise ValueError(
                f"task sign disagrees with coefficient at flat index {mism[0] + 1}"
            )
        total = float(np.dot(fsigns, flat))
    else:
        stride = 16 ** (state.n_copies - 1)
        mism = np.nonzero(state.lambdas[::stride] * signs < 0)[0]
        if mism.size:
            raise ValueError(
                f"task sign disagrees with coefficient at flat index {mism[0] + 1}"
            )
        sgn = signs.astype(float)
        for _ in range(state.n_copies):
            lam = np.tensordot(lam, sgn, axes=([0], [0]))
        total = float(lam)
    return WitnessResult(total / 4.0**state.n_copies, "closed_form", task)


def single_copy_expectation_table(state: BlochDiagonalState) -> np.ndarray:
    """Dense table E1[x-1, y-1, z-1] for the entangled protocol, N=1."""
    if state.n_copies != 1:
        raise ValueError("expectation table is built from a single-copy state")
    strat = be_strategy(state)
    rho = states.densify(state)
    dense_c = [strat.dense_decoder((z,)) for z in range(1, 17)]
    table = np.zeros((16, 16, 16))
    for x in range(16):
        for y in range(16):
            uv = linalg.kron(strat.encoders_a[x], strat.encoders_b[y])
            state_xy = uv @ rho @ uv.conj().T
            for z in range(16):
                table[x, y, z] = float(np.sum(state_xy * dense_c[z].T).real)
    return table


def witness_factored(
    state: BlochDiagonalState, task: TaskSpec, samples: np.ndarray
) -> np.ndarray:
    """Per-triple correlators as products of per-copy correlators.

    Charlie measures each copy's share separately and multiplies the
    outcomes; for the product decoders used here this equals the joint
    dense measurement, which is what the dense oracle checks at N = 2.
    The state is the per-copy resource (single copy), reused on all
    task.n_copies copies.
    """
    table = single_copy_expectation_table(state)
    out = np.ones(len(samples))
    for i, (xs, ys, zs) in enumerate(np.asarray(samples)):
        acc = 1.0
        for x, y, z in zip(xs, ys, zs):
            acc *= table[x - 1, y - 1, z - 1]
        out[i] = acc
    return out


def sep_upper_bound(channel_dim: int, n_copies: int) -> Fraction:
    """Separable-strategy witness bound D / 16^N, exact."""
    if channel_dim < 1 or n_copies < 1:
        raise ValueError("channel_dim and n_copies must be >= 1")
    return Fraction(channel_dim, 16**n_copies)


def classical_optimal_strategy_d4() -> Strategy:
    """Computational-basis encoding saturating the D=4 bound.

    Per qubit the four inputs map pairwise onto |0><0|, |0><0|, |1><1|,
    |1><1|; the two-qubit message state is the product of its digit
    factors, and the decoders are the matched sign-projector optimum.
    """
    from .optimize import optimal_measurement

    q0 = np.array([[1, 0], [0, 0]], dtype=complex)
    q1 = np.array([[0, 0], [0, 1]], dtype=complex)
    per_digit = [q0, q0, q1, q1]
    taus = [
        linalg.kron(per_digit[a - 1], per_digit[b - 1])
        for a in range(1, 5)
        for b in range(1, 5)
    ]
    dec_a, dec_b = optimal_measurement(taus, taus, default_signs())
    return Strategy(
        kind="prepared_states",
        n_copies=1,
        channel_dim=4,
        decoders_a=dec_a,
        decoders_b=dec_b,
        states_a=taus,
        states_b=[t.copy() for t in taus],
    )


def critical_visibility(n_copies: int) -> Fraction:
    """Exact visibility threshold (4^N - 1) / (6^N - 1)."""
    if n_copies < 1:
        raise ValueError("n_copies must be >= 1")
    return Fraction(4**n_copies - 1, 6**n_copies - 1)


def critical_visibility_numeric(n_copies: int) -> float:
    """Visibility threshold solved from witness evaluations.

    The witness is affine in the visibility, so the threshold follows
    from the two endpoint values and the separable bound at D = 4^N; the
    endpoint witnesses come from closed-form evaluation of the states,
    not from the threshold formula.
    """
    rho = states.rho_be()
    task = TaskSpec(
        n_copies=n_copies, channel_dim=4**n_copies, signs=rho.sign_pattern()
    )
    if n_copies <= 2:
        full = states.tensor_power(rho, n_copies) if n_copies > 1 else rho
        w_be = witness_closed_form(full, task).value
        w_mixed = witness_closed_form(
            states.mix_with_white_noise(full, 0.0), task
        ).value
    else:
        w_be = witness_closed_form(rho, task).value
        w_mixed = witness_closed_form(
            states.mix_with_white_noise(rho, 0.0),
            TaskSpec(n_copies=1, channel_dim=4, signs=task.signs),
        ).value ** n_copies
    bound = float(sep_upper_bound(4**n_copies, n_copies))
    if w_be <= bound:
        return 1.0
    return (bound - w_mixed) / (w_be - w_mixed)


def overhead_dimension(n_copies: int) -> int:
    """Smallest channel dimension whose separable bound reaches the
    entangled witness value; exact integer arithmetic."""
    lams = states.rho_be_lambdas_exact()
    per_copy = sum(abs(v) for v in lams) / 4     # matched signs
    w_exact = per_copy**n_copies
    return math.ceil(w_exact * Fraction(16) ** n_copies)

"""Task combinatorics and the sub-normalised Pauli product basis.

Index conventions (normative for everything serialized by this package):

* per-copy inputs are flat indices in 1..16, decomposed into a pair
  (a, b) in [4]^2 via  flat = 4*(a - 1) + b;
* the dim-4 operator basis is G_k = sigma_i (x) sigma_j with the same
  flat rule k = 4*i + j + 1 over digits i, j in 0..3;
* the single-qubit order is (I, X, Y, Z)/sqrt(2).

All coefficient tables below are integer valued and exact.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .linalg import kron_all

# Hadamard-type sign matrix driving the task functions.  Row a, column b
# is +1 exactly when the a-th and b-th single-qubit Paulis commute.
T_MATRIX = np.array(
    [
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
    ],
    dtype=np.int64,
)

# f table over 0-based flat indices: F_TABLE[x, z] = T[x1,z1] * T[x2,z2].
F_TABLE = np.kron(T_MATRIX, T_MATRIX)

_SQ2 = np.sqrt(2.0)
_SIGMA = (
    np.eye(2, dtype=complex) / _SQ2,
    np.array([[0, 1], [1, 0]], dtype=complex) / _SQ2,
    np.array([[0, -1j], [1j, 0]], dtype=complex) / _SQ2,
    np.array([[1, 0], [0, -1]], dtype=complex) / _SQ2,
)

# Transpose signs of the sub-normalised Paulis: Y is antisymmetric.
SIGMA_TRANSPOSE_SIGNS = np.array([1, 1, -1, 1], dtype=np.int64)

_MAX_QUBITS = 8


def flat_from_pair(a: int, b: int) -> int:
    """Pair (a, b) in [4]^2 -> flat index in [16]."""
    if not (1 <= a <= 4 and 1 <= b <= 4):
        raise ValueError(f"pair ({a}, {b}) out of range [4]^2")
    return 4 * (a - 1) + b


def pair_from_flat(x: int) -> tuple[int, int]:
    """Flat index in [16] -> pair (a, b) in [4]^2."""
    if not (1 <= x <= 16):
        raise ValueError(f"flat index {x} out of range [16]")
    i, j = divmod(x - 1, 4)
    return i + 1, j + 1


def f_coeff(x: int, z: int) -> int:
    """f_{xz} = T_{x1,z1} * T_{x2,z2} for 1-based flat indices."""
    if not (1 <= x <= 16 and 1 <= z <= 16):
        raise ValueError(f"indices ({x}, {z}) out of range [16]")
    return int(F_TABLE[x - 1, z - 1])


def w_value(
    xs: Sequence[int], ys: Sequence[int], zs: Sequence[int], signs: Sequence[int]
) -> int:
    """Task weight s_z * prod_l f(x_l, z_l) * f(y_l, z_l).

    ``xs``, ``ys``, ``zs`` are per-copy flat indices of equal length N;
    ``signs`` is the per-copy sign vector of length 16, applied as
    s_z = prod_l signs[z_l].
    """
    if not (len(xs) == len(ys) == len(zs)):
        raise ValueError("index vectors must have equal length")
    if len(signs) != 16:
        raise ValueError("signs must have length 16 (per-copy)")
    out = 1
    for x, y, z in zip(xs, ys, zs):
        s = int(signs[z - 1])
        if s not in (1, -1):
            raise ValueError(f"sign entry {s} not in {{+1, -1}}")
        out *= s * f_coeff(x, z) * f_coeff(y, z)
    return out


def m_matrix(n_copies: int) -> np.ndarray:
    """Gram matrix M[x, x'] = sum_z prod_l f(x_l, z_l) f(x'_l, z_l).

    Materialised only for N in {1, 2}; the identity M = 16^N * I is what
    downstream bounds rest on.  Integer arithmetic throughout.
    """
    if n_copies not in (1, 2):
        raise ValueError("m_matrix is materialised only for 1 or 2 copies")
    if n_copies == 1:
        f = F_TABLE
    else:
        f = np.kron(F_TABLE, F_TABLE)
    return f @ f.T


def pauli_basis(n_qubits: int) -> list[np.ndarray]:
    """Orthonormal Hermitian basis of n-qubit Pauli strings.

    Element k is the product of sub-normalised single-qubit Paulis whose
    base-4 digit string (most significant digit first) spells k; element
    0 is I / 2^(n/2).  trace(G_k G_l) = delta_kl and 2^(n/2) * G_k is
    unitary for every k.
    """
    if not (1 <= n_qubits <= _MAX_QUBITS):
        raise ValueError(f"n_qubits must be in 1..{_MAX_QUBITS}")
    basis = []
    for k in range(4**n_qubits):
        digits = []
        rem = k
        for _ in range(n_qubits):
            rem, d = divmod(rem, 4)
            digits.append(d)
        digits.reverse()
        basis.append(kron_all([_SIGMA[d] for d in digits]))
    return basis


def pauli_transpose_signs(n_qubits: int) -> np.ndarray:
    """Signs t_k with G_k^T = t_k G_k for the n-qubit basis."""
    t = SIGMA_TRANSPOSE_SIGNS
    for _ in range(n_qubits - 1):
        t = np.kron(t, SIGMA_TRANSPOSE_SIGNS)
    return t

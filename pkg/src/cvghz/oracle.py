"""Dense clock-and-shift matrix oracle for the lattice Weyl algebra.

Every lattice Weyl word has a faithful image (up to phases that are d-th
roots of unity, which is all the symbolic algebra ever produces) in the
d-dimensional generalized Pauli group: X maps to the clock matrix
diag(1, w, w^2, ...) with w = exp(2*pi*i/d) and Y to the cyclic shift
|j> -> |j+1>, so that X Y = w Y X. This module re-verifies every symbolic
claim numerically on dense d^n x d^n matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .paradox import OperatorSet, verify
from .weyl import WeylWord, is_scalar, product

DEFAULT_DIM_CEILING = 4096


class DimensionCeilingError(ValueError):
    """Raised when d^n_parties exceeds the dense-matrix ceiling."""

    def __init__(self, dim: int, ceiling: int):
        self.dim = dim
        self.ceiling = ceiling
        super().__init__(
            f"dense dimension {dim} exceeds ceiling {ceiling}")


def clock_shift(d: int) -> tuple[np.ndarray, np.ndarray]:
    """The d x d clock matrix X and shift matrix Y with X Y = w Y X.

    X = diag(w^j) is the image of the position-phase translation
    exp(i*a0*x); Y, with Y|j> = |j+1 mod d>, is the image of the momentum
    translation. The pair matches the normal-form convention of
    `cvghz.weyl`: (m, n) maps to X^m Y^n.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    omega = np.exp(2j * np.pi / d)
    clock = np.diag(omega ** np.arange(d))
    shift = np.zeros((d, d), dtype=complex)
    shift[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    return clock, shift


def _site_matrix(d: int, m: int, n: int) -> np.ndarray:
    """X^m Y^n as a d x d matrix, built entrywise for any integer m, n."""
    omega = np.exp(2j * np.pi / d)
    mat = np.zeros((d, d), dtype=complex)
    cols = np.arange(d)
    rows_ = (cols + n) % d
    mat[rows_, cols] = omega ** (rows_ * m)
    return mat


def represent(word: WeylWord,
              dim_ceiling: int = DEFAULT_DIM_CEILING) -> np.ndarray:
    """Dense matrix e^{2*pi*i*phase} kron_j X^{m_j} Y^{n_j}."""
    d = word.params.d
    dim = d ** word.n_parties
    if dim > dim_ceiling:
        raise DimensionCeilingError(dim, dim_ceiling)
    mat = np.array([[word.phase.to_complex()]], dtype=complex)
    for m, n in word.exponents:
        mat = np.kron(mat, _site_matrix(d, m, n))
    return mat


@dataclass(frozen=True)
class OracleReport:
    dimension: int
    max_commutator_norm: float
    product_deviation: float
    max_unitarity_defect: float
    product_is_scalar: bool
    product_phase_turns: float  # symbolic product phase, as float turns


def check_set(op_set: OperatorSet,
              dim_ceiling: int = DEFAULT_DIM_CEILING) -> OracleReport:
    """Numerically confirm commutation, unitarity and the symbolic product."""
    mats = [represent(w, dim_ceiling) for w in op_set.operators]
    dim = mats[0].shape[0]
    eye = np.eye(dim)

    max_comm = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            max_comm = max(max_comm,
                           np.linalg.norm(mats[i] @ mats[j]
                                          - mats[j] @ mats[i]))
    max_unit = max(np.linalg.norm(m @ m.conj().T - eye) for m in mats)

    prod_mat = mats[0]
    for m in mats[1:]:
        prod_mat = prod_mat @ m
    prod_word = product(op_set.operators)
    phase = is_scalar(prod_word)
    if phase is not None:
        deviation = np.linalg.norm(prod_mat - phase.to_complex() * eye)
        phase_turns = phase.numerator / phase.denominator
    else:
        deviation = np.linalg.norm(prod_mat - represent(prod_word,
                                                        dim_ceiling))
        phase_turns = float("nan")
    return OracleReport(
        dimension=dim,
        max_commutator_norm=float(max_comm),
        product_deviation=float(deviation),
        max_unitarity_defect=float(max_unit),
        product_is_scalar=phase is not None,
        product_phase_turns=phase_turns,
    )


def joint_eigenvector(op_set: OperatorSet, seed: int = 0,
                      dim_ceiling: int = DEFAULT_DIM_CEILING,
                      tol: float = 1e-8) -> tuple[np.ndarray, list[complex]]:
    """One simultaneous eigenvector of a commuting set, with its eigenvalues.

    Diagonalizes a random (seeded) Hermitian combination of the Hermitian
    and anti-Hermitian parts of the set's matrices; a generic combination
    separates distinct joint eigenvalue tuples. Degenerate joint eigenspaces
    are resolved arbitrarily.
    """
    report = verify(op_set)
    if not report.is_commuting:
        raise ValueError("operator set is not commuting")
    mats = [represent(w, dim_ceiling) for w in op_set.operators]
    rng = np.random.default_rng(seed)
    for _ in range(8):
        herm = np.zeros_like(mats[0])
        for m in mats:
            a, b = rng.normal(size=2)
            herm += a * (m + m.conj().T) + b * 1j * (m - m.conj().T)
        _, vecs = np.linalg.eigh(herm)
        for col in range(vecs.shape[1]):
            v = vecs[:, col]
            vals = [complex(v.conj() @ m @ v) for m in mats]
            resid = max(np.linalg.norm(m @ v - lam * v)
                        for m, lam in zip(mats, vals))
            if resid < tol:
                return v, vals
    raise RuntimeError("no joint eigenvector isolated; "
                       "random-combination diagonalization failed")


def ghz_comb_eigenvalues(op_set: OperatorSet,
                         tol: float = 1e-8) -> list[complex]:
    """Eigenvalues of a d=2 set on the qudit image of the GHZ comb state.

    The comb states map to the qubit states (|0> +/- i|1>)/sqrt(2); the GHZ
    superposition (up...up - down...down)/sqrt(2) is their entangled
    combination. Raises if the state is not a joint eigenvector.
    """
    if op_set.params.d != 2:
        raise ValueError("GHZ comb reference state is defined for d = 2")
    up = np.array([1.0, 1j]) / np.sqrt(2)
    down = np.array([1.0, -1j]) / np.sqrt(2)
    up_all = np.array([1.0])
    down_all = np.array([1.0])
    for _ in range(op_set.n_parties):
        up_all = np.kron(up_all, up)
        down_all = np.kron(down_all, down)
    state = (up_all - down_all) / np.sqrt(2)
    vals = []
    for w in op_set.operators:
        m = represent(w)
        lam = complex(state.conj() @ m @ state)
        if np.linalg.norm(m @ state - lam * state) > tol:
            raise ValueError("GHZ comb state is not a joint eigenvector "
                             "of the given set")
        vals.append(lam)
    return vals

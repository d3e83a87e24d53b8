"""Finitely squeezed Gaussian comb states and closed-form Weyl expectations.

Unit conventions: positions are the dimensionless x with [x, p] = i/pi
(any physical length scale L drops out of these variables). On a comb of
Gaussian peaks a lattice Weyl word acts factor by factor:

    (X^{m*a0} Y^{n*b0} psi)(x) = exp(i*m*a0*x) * psi(x + n*b0/pi)

with a0 = b0 = pi*sqrt(2/d), so Y translates the wavefunction argument by
s = n*sqrt(2/d) (for d = 2, exactly the peak spacing) and X multiplies by a
position phase. All overlaps and matrix elements between equal-width
Gaussian peaks are evaluated in closed form; `quadrature_check` provides an
independent grid-integration oracle for the same quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .paradox import OperatorSet, builtin
from .weyl import WeylWord

OVERLAP_CUTOFF = 1e-16  # peak pairs below this Gaussian factor are dropped


@dataclass(frozen=True)
class GaussianComb:
    """One-party state: weighted sum of Gaussian peaks of common width delta.

    Each peak is the normalized wavefunction
    (2*pi*delta^2)^(-1/4) * exp(-(x - center)^2 / (4*delta^2)), so delta is
    the standard deviation of each peak's position distribution.
    """

    centers: tuple[float, ...]
    weights: tuple[complex, ...]
    delta: float

    def __post_init__(self):
        if not self.centers:
            raise ValueError("comb needs at least one peak")
        if len(self.centers) != len(self.weights):
            raise ValueError("centers and weights must have equal length")
        if self.delta <= 0:
            raise ValueError("peak width delta must be positive")


@dataclass(frozen=True)
class ProductStateSum:
    """Multi-party state: sum of coefficient * (product of one comb per party)."""

    terms: tuple[tuple[complex, tuple[GaussianComb, ...]], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("state needs at least one term")
        n = len(self.terms[0][1])
        if any(len(factors) != n for _, factors in self.terms):
            raise ValueError("all terms must have the same party count")

    @property
    def n_parties(self) -> int:
        return len(self.terms[0][1])


def comb_overlap(bra: GaussianComb, ket: GaussianComb) -> complex:
    """<bra|ket> in closed form, including all inter-peak cross terms."""
    if bra.delta != ket.delta:
        raise ValueError("overlap requires equal peak widths")
    return comb_matrix_element(bra, ket, mu=0.0, shift=0.0)


def comb_matrix_element(bra: GaussianComb, ket: GaussianComb,
                        mu: float, shift: float) -> complex:
    """<bra| e^{i*mu*x} T_shift |ket> where (T_s psi)(x) = psi(x + s).

    For equal-width Gaussians the integral per peak pair (a in bra,
    b in ket) is
        exp(-(a - b + s)^2 / (8 delta^2))
      * exp(i*mu*(a + b - s)/2) * exp(-mu^2 delta^2 / 2).
    """
    if bra.delta != ket.delta:
        raise ValueError("matrix element requires equal peak widths")
    d2 = bra.delta * bra.delta
    a = np.asarray(bra.centers)
    b = np.asarray(ket.centers) - shift  # shifted ket peak centers
    wa = np.asarray(bra.weights).conj()
    wb = np.asarray(ket.weights)
    gap = a[:, None] - b[None, :]
    gauss = np.exp(-gap * gap / (8.0 * d2))
    gauss[gauss < OVERLAP_CUTOFF] = 0.0
    phase = np.exp(0.5j * mu * (a[:, None] + b[None, :]))
    damping = math.exp(-0.5 * mu * mu * d2)
    return complex(damping * (wa[:, None] * wb[None, :]
                              * gauss * phase).sum())


def normalized_comb(comb: GaussianComb) -> GaussianComb:
    norm = math.sqrt(comb_overlap(comb, comb).real)
    if norm <= 0:
        raise ValueError("comb has zero norm")
    return GaussianComb(comb.centers,
                        tuple(w / norm for w in comb.weights), comb.delta)


def make_comb(kind: str, delta: float, n_peaks: int,
              envelope_width: float) -> GaussianComb:
    """Normalized up/down comb: peaks at integers k in [-n_peaks, n_peaks].

    Even-k peaks get weight 1; odd-k peaks get +i (up) or -i (down). All
    weights are damped by the envelope exp(-k^2 / (2*envelope_width^2)).
    """
    if kind not in ("up", "down"):
        raise ValueError(f"kind must be 'up' or 'down', got {kind!r}")
    if delta <= 0 or envelope_width <= 0:
        raise ValueError("delta and envelope_width must be positive")
    if n_peaks < 0:
        raise ValueError("n_peaks must be >= 0")
    odd_weight = 1j if kind == "up" else -1j
    centers = []
    weights = []
    for k in range(-n_peaks, n_peaks + 1):
        base = 1.0 if k % 2 == 0 else odd_weight
        centers.append(float(k))
        weights.append(base * math.exp(-k * k /
                                       (2.0 * envelope_width ** 2)))
    return normalized_comb(GaussianComb(tuple(centers), tuple(weights),
                                        delta))


def state_norm(state: ProductStateSum) -> float:
    """Norm from the closed-form Gram matrix of the product terms."""
    total = 0.0 + 0.0j
    for ct, ft in state.terms:
        for cu, fu in state.terms:
            ov = ct.conjugate() * cu
            for bra, ket in zip(ft, fu):
                ov *= comb_overlap(bra, ket)
            total += ov
    if total.real <= 0:
        raise ValueError("state has non-positive norm")
    return math.sqrt(total.real)


def normalized_state(state: ProductStateSum) -> ProductStateSum:
    norm = state_norm(state)
    return ProductStateSum(tuple((c / norm, f) for c, f in state.terms))


def ghz_state(delta: float, n_peaks: int,
              envelope_width: float) -> ProductStateSum:
    """The three-party comb GHZ state (up,up,up) - (down,down,down), normalized."""
    up = make_comb("up", delta, n_peaks, envelope_width)
    down = make_comb("down", delta, n_peaks, envelope_width)
    amp = 1.0 / math.sqrt(2.0)
    state = ProductStateSum((
        (amp, (up, up, up)),
        (-amp, (down, down, down)),
    ))
    return normalized_state(state)


def _word_action(word: WeylWord) -> list[tuple[float, float]]:
    """Per-party (mu, shift): multiply by e^{i*mu*x}, translate arg by shift."""
    base = math.sqrt(2.0 / word.params.d)
    return [(m * math.pi * base, n * base) for m, n in word.exponents]


def weyl_expectation(state: ProductStateSum, word: WeylWord) -> complex:
    """<state| word |state> by closed-form Gaussian integrals (no quadrature)."""
    if word.n_parties != state.n_parties:
        raise ValueError("word and state party counts differ")
    action = _word_action(word)
    total = 0.0 + 0.0j
    for ct, ft in state.terms:
        for cu, fu in state.terms:
            val = ct.conjugate() * cu
            for bra, ket, (mu, shift) in zip(ft, fu, action):
                val *= comb_matrix_element(bra, ket, mu, shift)
            total += val
    return word.phase.to_complex() * total


def _comb_wavefunction(comb: GaussianComb, x: np.ndarray) -> np.ndarray:
    norm = (2.0 * math.pi * comb.delta ** 2) ** -0.25
    psi = np.zeros_like(x, dtype=complex)
    for c, w in zip(comb.centers, comb.weights):
        psi += w * np.exp(-(x - c) ** 2 / (4.0 * comb.delta ** 2))
    return norm * psi


def quadrature_check(state: ProductStateSum, word: WeylWord,
                     x_max: float | None = None,
                     n_points: int = 40001) -> complex:
    """Same expectation as `weyl_expectation`, by direct grid integration.

    Independent oracle: evaluates the comb wavefunctions pointwise and
    integrates per party with the trapezoid rule. Raises if the grid is too
    coarse to resolve the peak width.
    """
    if word.n_parties != state.n_parties:
        raise ValueError("word and state party counts differ")
    action = _word_action(word)
    if x_max is None:
        reach = max(abs(c) for _, f in state.terms
                    for comb in f for c in comb.centers)
        delta = state.terms[0][1][0].delta
        shift_max = max(abs(s) for _, s in action)
        x_max = reach + shift_max + 12.0 * delta + 2.0
    x = np.linspace(-x_max, x_max, n_points)
    spacing = x[1] - x[0]
    min_delta = min(comb.delta for _, f in state.terms for comb in f)
    if spacing > min_delta / 4.0:
        raise ValueError(
            f"grid spacing {spacing:.3g} too coarse for peak width "
            f"{min_delta:.3g}; increase n_points")
    total = 0.0 + 0.0j
    for ct, ft in state.terms:
        for cu, fu in state.terms:
            val = ct.conjugate() * cu
            for bra, ket, (mu, shift) in zip(ft, fu, action):
                integrand = (np.conj(_comb_wavefunction(bra, x))
                             * np.exp(1j * mu * x)
                             * _comb_wavefunction(ket, x + shift))
                val *= np.trapezoid(integrand, x)
            total += val
    return word.phase.to_complex() * total


@dataclass(frozen=True)
class ConvergenceRow:
    delta: float
    expectations: tuple[complex, ...]
    deviation: float


def convergence_study(deltas: list[float], n_peaks: int = 20,
                      envelope_width: float = 10.0) -> list[ConvergenceRow]:
    """Expectation values of the built-in 3-party set on GHZ comb states.

    For each peak width delta (given positive and descending) computes all
    four operator expectations and the worst-case deviation from the exact
    eigenvalues of the corresponding qubit GHZ state.
    """
    if any(d <= 0 for d in deltas):
        raise ValueError("all delta values must be positive")
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("delta values must be strictly descending")
    if not deltas:
        return []
    op_set = builtin("v4")
    lam = oracle.ghz_comb_eigenvalues(op_set)
    rows = []
    for delta in deltas:
        state = ghz_state(delta, n_peaks, envelope_width)
        exps = tuple(weyl_expectation(state, w) for w in op_set.operators)
        deviation = max(abs(e - l) for e, l in zip(exps, lam))
        rows.append(ConvergenceRow(delta, exps, float(deviation)))
    return rows

"""Exact algebra of lattice Weyl (phase-space translation) operators.

Operators are words of the form

    e^{2*pi*i*phase} . prod_j X_j^{m_j * a0} Y_j^{n_j * b0}

where X = exp(i*a*x), Y = exp(i*b*p) are phase-space translations and the
exponents are restricted to the commensurate lattice a0 = b0 = pi*sqrt(2/d).
On that lattice the exchange X^{m a0} Y^{n b0} -> Y^{n b0} X^{m a0} costs the
phase factor exp(-2*pi*i*m*n/d), so every phase generated by reordering is a
rational number of turns and the whole algebra closes over exact rationals.
No operation in this module touches floating point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class RationalPhase:
    """A phase angle as an exact fraction of one full turn, reduced mod 1.

    The represented scalar is exp(2*pi*i * numerator/denominator).
    Always stored reduced with 0 <= numerator/denominator < 1.
    """

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("phase denominator must be nonzero")
        f = Fraction(self.numerator, self.denominator) % 1
        object.__setattr__(self, "numerator", f.numerator)
        object.__setattr__(self, "denominator", f.denominator)

    @property
    def turns(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    def __add__(self, other: "RationalPhase") -> "RationalPhase":
        f = self.turns + other.turns
        return RationalPhase(f.numerator, f.denominator)

    def __neg__(self) -> "RationalPhase":
        return RationalPhase(-self.numerator, self.denominator)

    def __sub__(self, other: "RationalPhase") -> "RationalPhase":
        return self + (-other)

    def scaled(self, k: int) -> "RationalPhase":
        return RationalPhase(k * self.numerator, self.denominator)

    def to_complex(self) -> complex:
        """The unit-modulus scalar this phase represents (floating point)."""
        return cmath.exp(2j * math.pi * self.numerator / self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


ZERO_PHASE = RationalPhase(0)


@dataclass(frozen=True)
class LatticeParams:
    """Lattice dimension parameter d; base exponents a0 = b0 = pi*sqrt(2/d).

    Only d is stored. The commutation phase of X^{m*a0} with Y^{n*b0} is
    exactly m*n/d turns. d=2 gives a0 = pi, d=4 gives a0 = pi/sqrt(2).
    """

    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"lattice dimension must be >= 2, got {self.d}")


@dataclass(frozen=True)
class WeylWord:
    """Normal-ordered multi-party Weyl operator.

    `exponents[j] = (m_j, n_j)` places X_j^{m_j*a0} Y_j^{n_j*b0} on party j,
    X left of Y. Equality of canonical forms is plain structural equality.
    """

    params: LatticeParams
    exponents: tuple[tuple[int, int], ...]
    phase: RationalPhase = ZERO_PHASE

    @property
    def n_parties(self) -> int:
        return len(self.exponents)

    @property
    def is_identity(self) -> bool:
        return self.phase.is_zero and all(e == (0, 0) for e in self.exponents)


def identity_word(params: LatticeParams, n_parties: int) -> WeylWord:
    return WeylWord(params, ((0, 0),) * n_parties)


def make_generator(params: LatticeParams, n_parties: int, party: int,
                   axis: str, exponent: int) -> WeylWord:
    """Single-party translation generator X_party^{exponent*a0} or Y^{...b0}.

    `axis` is "X" or "Y". The word carries phase 0.
    """
    if not 0 <= party < n_parties:
        raise IndexError(f"party {party} out of range for {n_parties} parties")
    if axis not in ("X", "Y"):
        raise ValueError(f"axis must be 'X' or 'Y', got {axis!r}")
    pair = (exponent, 0) if axis == "X" else (0, exponent)
    exps = [(0, 0)] * n_parties
    exps[party] = pair
    return WeylWord(params, tuple(exps))


def _check_compatible(a: WeylWord, b: WeylWord) -> None:
    if a.params != b.params:
        raise ValueError(f"mismatched lattice params: {a.params} vs {b.params}")
    if a.n_parties != b.n_parties:
        raise ValueError(
            f"mismatched party counts: {a.n_parties} vs {b.n_parties}")


def multiply(a: WeylWord, b: WeylWord) -> WeylWord:
    """Normal form of the operator product a*b.

    Per party, moving b's X^{m_b} left past a's Y^{n_a} contributes the
    exact phase -(m_b*n_a)/d turns; exponents add, phases add mod 1.
    """
    _check_compatible(a, b)
    d = a.params.d
    cross = 0  # accumulated numerator over denominator d
    exps = []
    for (ma, na), (mb, nb) in zip(a.exponents, b.exponents):
        cross -= mb * na
        exps.append((ma + mb, na + nb))
    phase = a.phase + b.phase + RationalPhase(cross, d)
    return WeylWord(a.params, tuple(exps), phase)


def product(words, params: Optional[LatticeParams] = None,
            n_parties: Optional[int] = None) -> WeylWord:
    """Left-to-right product of an iterable of words."""
    words = list(words)
    if not words:
        if params is None or n_parties is None:
            raise ValueError("empty product needs explicit params/n_parties")
        return identity_word(params, n_parties)
    acc = words[0]
    for w in words[1:]:
        acc = multiply(acc, w)
    return acc


def dagger(a: WeylWord) -> WeylWord:
    """Normal form of the Hermitian adjoint of a."""
    d = a.params.d
    # (X^m Y^n)^dag = Y^-n X^-m = e^{-2 pi i m n / d} X^-m Y^-n
    cross = -sum(m * n for m, n in a.exponents)
    exps = tuple((-m, -n) for m, n in a.exponents)
    return WeylWord(a.params, exps, -a.phase + RationalPhase(cross, d))


def commutation_phase(a: WeylWord, b: WeylWord) -> RationalPhase:
    """The phase phi with a*b = e^{2*pi*i*phi} * b*a.

    Equals sum_j (m_a,j*n_b,j - m_b,j*n_a,j)/d mod 1; zero iff a, b commute.
    """
    _check_compatible(a, b)
    num = sum(ma * nb - mb * na
              for (ma, na), (mb, nb) in zip(a.exponents, b.exponents))
    return RationalPhase(num, a.params.d)


def is_scalar(a: WeylWord) -> Optional[RationalPhase]:
    """The word's phase if it is a scalar multiple of the identity, else None."""
    if all(e == (0, 0) for e in a.exponents):
        return a.phase
    return None

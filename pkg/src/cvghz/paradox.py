"""GHZ paradox verdicts, local-hidden-variable evaluation and exhaustive search.

A set of lattice Weyl words is a GHZ paradox when three conditions hold:

  1. all pairs commute (every pairwise commutation phase is 0),
  2. every party's X- and Y-exponent column sums are zero, which forces any
     local-hidden-variable product to +1 regardless of the hidden values,
  3. the operator product of the set is a scalar with nonzero phase.

Conditions 2 and 3 together are the all-or-nothing contradiction: quantum
mechanics forces the eigenvalue product to the scalar of condition 3 while
classical assignments are stuck at +1.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from math import comb as binomial
from typing import Iterable, Optional, Sequence

from .weyl import (LatticeParams, RationalPhase, WeylWord, commutation_phase,
                   is_scalar, product)

DEFAULT_SPACE_CEILING = 2e13


class SearchSpaceError(ValueError):
    """Raised when the requested enumeration is too large to exhaust."""

    def __init__(self, estimate: float, ceiling: float):
        self.estimate = estimate
        self.ceiling = ceiling
        super().__init__(
            f"estimated enumeration size {estimate:.3g} exceeds ceiling "
            f"{ceiling:.3g}; tighten the bounds")


@dataclass(frozen=True)
class OperatorSet:
    """An ordered list of Weyl words sharing lattice params and party count."""

    params: LatticeParams
    n_parties: int
    operators: tuple[WeylWord, ...]
    name: Optional[str] = None

    def __post_init__(self):
        if not self.operators:
            raise ValueError("operator set must be non-empty")
        for w in self.operators:
            if w.params != self.params or w.n_parties != self.n_parties:
                raise ValueError("all operators must share params and parties")


@dataclass(frozen=True)
class ParadoxReport:
    pairwise_phases: tuple[tuple[RationalPhase, ...], ...]
    column_sums: tuple[tuple[int, int], ...]
    product: WeylWord
    is_commuting: bool
    is_lhv_trivial: bool
    product_phase: Optional[RationalPhase]
    is_paradox: bool


@dataclass(frozen=True)
class LhvAssignment:
    """Hidden outcome values (x_j, p_j) per party, in dimensionless units."""

    positions: tuple[float, ...]
    momenta: tuple[float, ...]

    def __post_init__(self):
        if len(self.positions) != len(self.momenta):
            raise ValueError("positions and momenta must have equal length")
        for v in (*self.positions, *self.momenta):
            if not math.isfinite(v):
                raise ValueError("hidden values must be finite")


def column_sums(op_set: OperatorSet) -> tuple[tuple[int, int], ...]:
    sums = []
    for j in range(op_set.n_parties):
        sm = sum(w.exponents[j][0] for w in op_set.operators)
        sn = sum(w.exponents[j][1] for w in op_set.operators)
        sums.append((sm, sn))
    return tuple(sums)


def verify(op_set: OperatorSet) -> ParadoxReport:
    """Run the three-condition paradox test and fill the full report."""
    ops = op_set.operators
    k = len(ops)
    phases = tuple(
        tuple(commutation_phase(ops[i], ops[j]) for j in range(k))
        for i in range(k))
    commuting = all(phases[i][j].is_zero
                    for i in range(k) for j in range(i + 1, k))
    sums = column_sums(op_set)
    lhv_trivial = all(s == (0, 0) for s in sums)
    prod = product(ops)
    phase = is_scalar(prod)
    paradox = (commuting and lhv_trivial
               and phase is not None and not phase.is_zero)
    return ParadoxReport(
        pairwise_phases=phases,
        column_sums=sums,
        product=prod,
        is_commuting=commuting,
        is_lhv_trivial=lhv_trivial,
        product_phase=phase,
        is_paradox=paradox,
    )


def lhv_value(op_set: OperatorSet, assignment: LhvAssignment) -> complex:
    """Product of the classical unit-modulus values assigned to the set.

    Convention: X_j^{m*a0} is assigned exp(2*pi*i*m*x_j/sqrt(2d)) and
    Y_j^{n*b0} is assigned exp(2*pi*i*n*p_j/sqrt(2d)), i.e. the operator
    exponentials evaluated at the hidden outcomes (global word prefactors
    are ignored; built-in and searched sets carry none). When all column
    sums vanish the total exponent cancels and the product is exactly 1.
    """
    if len(assignment.positions) != op_set.n_parties:
        raise ValueError("assignment does not cover all parties")
    scale = 2.0 * math.pi / math.sqrt(2.0 * op_set.params.d)
    total = 0.0
    for w in op_set.operators:
        for (m, n), x, p in zip(w.exponents, assignment.positions,
                                assignment.momenta):
            total += scale * (m * x + n * p)
    return cmath.exp(1j * total)


# ---------------------------------------------------------------------------
# Built-in sets

# 3 parties, d=2 (a0 = pi): rows of (m, n) lattice exponents per party.
_V4_ROWS = (
    ((1, 0), (1, 0), (1, 0)),
    ((-1, 0), (0, -1), (0, 1)),
    ((0, 1), (-1, 0), (0, -1)),
    ((0, -1), (0, 1), (-1, 0)),
)

# 5 parties, d=4 (a0 = q = pi/sqrt(2)).
_W6_ROWS = (
    ((1, 0), (1, 0), (1, 0), (1, 0), (1, 0)),
    ((-1, 0), (0, -3), (0, 1), (0, 1), (0, 1)),
    ((0, 1), (-1, 0), (0, -3), (0, 1), (0, 1)),
    ((0, 1), (0, 1), (-1, 0), (0, -3), (0, 1)),
    ((0, 1), (0, 1), (0, 1), (-1, 0), (0, -3)),
    ((0, -3), (0, 1), (0, 1), (0, 1), (-1, 0)),
)

_BUILTINS = {
    "v4": (2, _V4_ROWS),
    "w6": (4, _W6_ROWS),
}


def set_from_rows(d: int, rows: Sequence[Sequence[tuple[int, int]]],
                  name: Optional[str] = None) -> OperatorSet:
    params = LatticeParams(d)
    n_parties = len(rows[0])
    ops = tuple(WeylWord(params, tuple(tuple(p) for p in row))
                for row in rows)
    return OperatorSet(params, n_parties, ops, name=name)


def builtin(name: str) -> OperatorSet:
    """The built-in paradox sets: 'v4' (3 parties, d=2), 'w6' (5 parties, d=4)."""
    try:
        d, rows = _BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin set {name!r}; "
                       f"known: {sorted(_BUILTINS)}") from None
    return set_from_rows(d, rows, name=name)


# ---------------------------------------------------------------------------
# Canonicalization and search

def _rows_of(op_set: OperatorSet) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(w.exponents for w in op_set.operators)


def canonical_rows(rows: Iterable[tuple[tuple[int, int], ...]],
                   n_parties: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Lexicographically minimal representative of the exponent matrix.

    Quotient group: party relabeling, operator reordering, and joint
    (m, n) -> (-m, -n) negation per party. All three preserve pairwise
    commutation phases, column-sum triviality and the product phase.
    """
    rows = tuple(rows)
    best = None
    for perm in itertools.permutations(range(n_parties)):
        permuted = [tuple(row[p] for p in perm) for row in rows]
        for signs in itertools.product((1, -1), repeat=n_parties):
            cand = tuple(sorted(
                tuple((s * m, s * n) for s, (m, n) in zip(signs, row))
                for row in permuted))
            if best is None or cand < best:
                best = cand
    return best


def canonicalize(op_set: OperatorSet) -> OperatorSet:
    """Canonical representative of op_set's exponent matrix (phases dropped)."""
    rows = canonical_rows(_rows_of(op_set), op_set.n_parties)
    return set_from_rows(op_set.params.d, rows, name=op_set.name)


def _default_pairs(max_exponent: int) -> list[tuple[int, int]]:
    r = range(-max_exponent, max_exponent + 1)
    return [(m, n) for m in r for n in r]


def search(params: LatticeParams, n_parties: int, n_operators: int,
           max_exponent: int,
           allowed_pairs: Optional[Sequence[tuple[int, int]]] = None,
           space_ceiling: float = DEFAULT_SPACE_CEILING) -> list[OperatorSet]:
    """Exhaustively enumerate paradox sets, canonicalized and de-duplicated.

    Enumerates exponent matrices with per-party (m, n) entries drawn from
    [-max_exponent, max_exponent]^2 (or `allowed_pairs`), keeping sets that
    pass all three paradox conditions. Identity rows are excluded (an
    identity operator adds nothing to a paradox). Enumeration is a DFS over
    sorted row multisets; the last row is forced by the zero-column-sum
    condition, commutation is pruned incrementally via precomputed bitmasks,
    and partial column sums are bounded by what the remaining rows can still
    cancel.
    """
    if max_exponent < 1:
        raise ValueError("max_exponent must be >= 1")
    if n_operators < 1 or n_parties < 1:
        raise ValueError("n_operators and n_parties must be >= 1")
    d = params.d
    pairs = sorted(set(map(tuple, allowed_pairs))) if allowed_pairs \
        else _default_pairs(max_exponent)
    for m, n in pairs:
        if max(abs(m), abs(n)) > max_exponent:
            raise ValueError(f"allowed pair {(m, n)} exceeds max_exponent")

    zero_row = ((0, 0),) * n_parties
    rows = sorted(set(itertools.product(pairs, repeat=n_parties))
                  - {zero_row})
    n_rows = len(rows)
    if n_rows == 0 or n_operators < 2:
        return []

    estimate = float(binomial(n_rows + n_operators - 2, n_operators - 1))
    if estimate > space_ceiling:
        raise SearchSpaceError(estimate, space_ceiling)

    flat = [tuple(v for pair in row for v in pair) for row in rows]
    flat_index = {f: i for i, f in enumerate(flat)}

    # Commutation bitmasks: bit j of comm[i] set iff rows i and j commute.
    comm = [0] * n_rows
    for i in range(n_rows):
        ri = rows[i]
        mask = 0
        for j in range(i, n_rows):
            rj = rows[j]
            s = sum(ri[t][0] * rj[t][1] - rj[t][0] * ri[t][1]
                    for t in range(n_parties))
            if s % d == 0:
                mask |= 1 << j
                comm[j] |= 1 << i
        comm[i] |= mask
    all_from = [((1 << n_rows) - 1) ^ ((1 << i) - 1) for i in range(n_rows)]

    # Per-column bounds of a single row's contribution, for sum pruning.
    lo = [min(f[c] for f in flat) for c in range(2 * n_parties)]
    hi = [max(f[c] for f in flat) for c in range(2 * n_parties)]

    k_free = n_operators - 1  # last row is forced by the column sums
    found: dict = {}

    def emit(chosen_idx: list[int]) -> None:
        # Commutation and zero column sums hold by construction; only the
        # product phase (pure integer fold of the normal-ordering crossings)
        # decides paradox-hood here.
        chosen_rows = [rows[i] for i in chosen_idx]
        phase_num = 0
        acc_n = [0] * n_parties
        for row in chosen_rows:
            for t, (m, n) in enumerate(row):
                phase_num -= m * acc_n[t]
                acc_n[t] += n
        if phase_num % d != 0:
            key = canonical_rows(chosen_rows, n_parties)
            if key not in found:
                found[key] = set_from_rows(d, key)

    def extend(depth: int, start_mask: int, sums: tuple[int, ...]) -> None:
        if depth == k_free - 1:
            # last free row: the completion is forced, so skip the window
            # check (the lookup rejects out-of-alphabet completions) and
            # touch the candidate mask only on a hit
            mask = start_mask
            while mask:
                lsb = mask & -mask
                i = lsb.bit_length() - 1
                mask ^= lsb
                forced = tuple(-s - v for s, v in zip(sums, flat[i]))
                fi = flat_index.get(forced)
                if fi is not None and fi >= i \
                        and (start_mask & comm[i]) >> fi & 1:
                    _stack.append(i)
                    emit(_stack + [fi])
                    _stack.pop()
            return
        remaining = n_operators - depth - 1  # rows still to place after this one
        # future rows keep column c's reachable window in [-r*hi, -r*lo]
        win_lo = [-remaining * h for h in hi]
        win_hi = [-remaining * l for l in lo]
        mask = start_mask
        while mask:
            lsb = mask & -mask
            i = lsb.bit_length() - 1
            mask ^= lsb
            new_sums = tuple(map(int.__add__, sums, flat[i]))
            ok = True
            for s, wl, wh in zip(new_sums, win_lo, win_hi):
                if s < wl or s > wh:
                    ok = False
                    break
            if ok:
                _stack.append(i)
                extend(depth + 1, start_mask & comm[i] & all_from[i],
                       new_sums)
                _stack.pop()

    _stack: list[int] = []
    extend(0, (1 << n_rows) - 1, (0,) * (2 * n_parties))
    return [found[k] for k in sorted(found)]

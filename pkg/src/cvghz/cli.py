"""Command-line entry point: verify, search, oracle, simulate.

Exit codes are a stable contract:
  0  success (paradox confirmed / checks passed)
  1  well-formed negative result
  2  input error (bad flags, malformed file)
  3  resource refusal (search space or matrix dimension too large)

Operator-set files are JSON::

    {"name": "v4", "d": 2, "parties": 3,
     "operators": [[[1,0],[1,0],[1,0]], ...]}

storing lattice exponents only; every operator row has exactly `parties`
[m, n] integer pairs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import oracle as oracle_mod
from . import paradox, states
from .paradox import OperatorSet, SearchSpaceError
from .weyl import LatticeParams, RationalPhase, WeylWord

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_REFUSED = 3


class InputError(Exception):
    pass


def _fmt(x: float) -> str:
    """Fixed 12-significant-digit float rendering for deterministic output."""
    return format(float(x), ".12g")


def _fmt_complex(z: complex) -> str:
    return f"{_fmt(z.real)}{'+' if z.imag >= 0 else '-'}{_fmt(abs(z.imag))}j"


# ---------------------------------------------------------------------------
# Operator-set file format

def set_to_dict(op_set: OperatorSet) -> dict:
    data = {
        "d": op_set.params.d,
        "parties": op_set.n_parties,
        "operators": [[[m, n] for m, n in w.exponents]
                      for w in op_set.operators],
    }
    if op_set.name is not None:
        data["name"] = op_set.name
    return data


def set_from_dict(data: dict) -> OperatorSet:
    if not isinstance(data, dict):
        raise InputError("operator-set file must contain a JSON object")
    for field in ("d", "parties", "operators"):
        if field not in data:
            raise InputError(f"missing field {field!r}")
    d = data["d"]
    parties = data["parties"]
    if not isinstance(d, int) or d < 2:
        raise InputError(f"field 'd' must be an integer >= 2, got {d!r}")
    if not isinstance(parties, int) or parties < 1:
        raise InputError(f"field 'parties' must be a positive integer")
    ops = data["operators"]
    if not isinstance(ops, list) or not ops:
        raise InputError("field 'operators' must be a non-empty list")
    rows = []
    for i, row in enumerate(ops):
        if not isinstance(row, list) or len(row) != parties:
            raise InputError(
                f"operator {i}: expected {parties} [m, n] pairs")
        pairs = []
        for j, pair in enumerate(row):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(v, int) for v in pair)):
                raise InputError(
                    f"operator {i}, party {j}: entry must be an "
                    f"[m, n] integer pair, got {pair!r}")
            pairs.append((pair[0], pair[1]))
        rows.append(tuple(pairs))
    return paradox.set_from_rows(d, rows, name=data.get("name"))


def load_set(spec: Optional[str], path: Optional[str]) -> OperatorSet:
    if (spec is None) == (path is None):
        raise InputError("give exactly one of --set or --file")
    if spec is not None:
        try:
            return paradox.builtin(spec)
        except KeyError as exc:
            raise InputError(str(exc)) from None
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from None
    return set_from_dict(data)


# ---------------------------------------------------------------------------
# Rendering

_PARTY_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _unit_symbol(d: int) -> str:
    return {2: "pi", 4: "q"}.get(d, "a0")


def render_word(word: WeylWord) -> str:
    """Human-readable rendering, e.g. X_A^pi Y_B^-pi for d=2."""
    unit = _unit_symbol(word.params.d)
    parts = []
    for j, (m, n) in enumerate(word.exponents):
        label = _PARTY_LETTERS[j % len(_PARTY_LETTERS)]
        for sym, e in (("X", m), ("Y", n)):
            if e == 0:
                continue
            if e == 1:
                exp = unit
            elif e == -1:
                exp = f"-{unit}"
            else:
                exp = f"{e}{unit}"
            parts.append(f"{sym}_{label}^{exp}")
    if not word.phase.is_zero:
        parts.insert(0, f"e^(2*pi*i*{word.phase})")
    return " ".join(parts) if parts else "I"


def report_to_dict(op_set: OperatorSet,
                   report: paradox.ParadoxReport) -> dict:
    return {
        "name": op_set.name,
        "d": op_set.params.d,
        "parties": op_set.n_parties,
        "operators": [render_word(w) for w in op_set.operators],
        "pairwise_phases": [[str(p) for p in row]
                            for row in report.pairwise_phases],
        "column_sums": [list(s) for s in report.column_sums],
        "is_commuting": report.is_commuting,
        "is_lhv_trivial": report.is_lhv_trivial,
        "product_phase": (str(report.product_phase)
                          if report.product_phase is not None else None),
        "is_paradox": report.is_paradox,
    }


def print_report(op_set: OperatorSet, report: paradox.ParadoxReport,
                 out) -> None:
    name = op_set.name or "(unnamed)"
    print(f"operator set {name}: d={op_set.params.d}, "
          f"{op_set.n_parties} parties, {len(op_set.operators)} operators",
          file=out)
    for i, w in enumerate(op_set.operators, start=1):
        print(f"  [{i}] {render_word(w)}", file=out)
    print(f"  all pairs commute:   {report.is_commuting}", file=out)
    print(f"  column sums zero:    {report.is_lhv_trivial} "
          f"{list(map(list, report.column_sums))}", file=out)
    if report.product_phase is not None:
        scalar = report.product_phase.to_complex()
        print(f"  product:             scalar, phase "
              f"{report.product_phase} turn ({_fmt_complex(scalar)})",
              file=out)
    else:
        print(f"  product:             not scalar "
              f"({render_word(report.product)})", file=out)
    print(f"  GHZ paradox:         {report.is_paradox}", file=out)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_verify(args) -> int:
    op_set = load_set(args.set, args.file)
    report = paradox.verify(op_set)
    if args.json:
        print(json.dumps(report_to_dict(op_set, report), indent=2))
    else:
        print_report(op_set, report, sys.stdout)
    return EXIT_OK if report.is_paradox else EXIT_NEGATIVE


def cmd_search(args) -> int:
    params = LatticeParams(args.dim)
    try:
        results = paradox.search(params, args.parties, args.operators,
                                 args.max_exp,
                                 space_ceiling=args.max_space)
    except SearchSpaceError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    print(f"{len(results)} paradox class(es) found")
    for i, op_set in enumerate(results):
        print(f"-- class {i}:")
        for w in op_set.operators:
            print(f"   {render_word(w)}")
        if args.emit:
            import os
            os.makedirs(args.emit, exist_ok=True)
            path = os.path.join(args.emit, f"paradox_{i:04d}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(set_to_dict(op_set), fh, indent=2)
                fh.write("\n")
    return EXIT_OK if results else EXIT_NEGATIVE


def cmd_oracle(args) -> int:
    op_set = load_set(args.set, args.file)
    dim = op_set.params.d ** op_set.n_parties
    if dim > args.max_dim:
        print(f"refused: dense dimension {dim} exceeds ceiling "
              f"{args.max_dim}", file=sys.stderr)
        return EXIT_REFUSED
    report = oracle_mod.check_set(op_set, dim_ceiling=args.max_dim)
    sym = paradox.verify(op_set)
    lines = {
        "dimension": report.dimension,
        "max_commutator_norm": _fmt(report.max_commutator_norm),
        "product_deviation": _fmt(report.product_deviation),
        "max_unitarity_defect": _fmt(report.max_unitarity_defect),
        "product_phase": (str(sym.product_phase)
                          if sym.product_phase is not None else None),
    }
    ok = (report.max_commutator_norm < args.tol
          and report.product_deviation < args.tol
          and report.max_unitarity_defect < args.tol)
    eig_lines = None
    if sym.is_commuting:
        _, vals = oracle_mod.joint_eigenvector(op_set, seed=args.seed,
                                               dim_ceiling=args.max_dim)
        prod = 1.0 + 0.0j
        for v in vals:
            prod *= v
        eig_lines = {
            "eigenvalues": [_fmt_complex(v) for v in vals],
            "eigenvalue_product": _fmt_complex(prod),
        }
        ok = ok and all(abs(abs(v) - 1.0) < 1e-8 for v in vals)
    if args.json:
        data = dict(lines)
        if eig_lines:
            data.update(eig_lines)
        data["pass"] = ok
        print(json.dumps(data, indent=2))
    else:
        for key, val in lines.items():
            print(f"  {key}: {val}")
        if eig_lines:
            print(f"  joint eigenvalues: "
                  f"{', '.join(eig_lines['eigenvalues'])}")
            print(f"  eigenvalue product: {eig_lines['eigenvalue_product']}")
        print(f"  pass: {ok}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_simulate(args) -> int:
    try:
        deltas = [float(s) for s in args.delta.split(",") if s.strip()]
    except ValueError as exc:
        raise InputError(f"bad --delta list: {exc}") from None
    if not deltas:
        raise InputError("--delta list is empty")
    try:
        rows = states.convergence_study(deltas, n_peaks=args.peaks,
                                        envelope_width=args.envelope)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    header = ["delta"]
    for k in range(1, 5):
        header += [f"re_V{k}", f"im_V{k}"]
    header.append("deviation")
    lines = [",".join(header)]
    for row in rows:
        cells = [_fmt(row.delta)]
        for z in row.expectations:
            cells += [_fmt(z.real), _fmt(z.imag)]
        cells.append(_fmt(row.deviation))
        lines.append(",".join(cells))
    csv_text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    monotone = all(a.deviation >= b.deviation - 1e-12
                   for a, b in zip(rows, rows[1:]))
    final_ok = rows[-1].deviation < args.max_dev
    if not monotone:
        print("check failed: deviations are not non-increasing",
              file=sys.stderr)
    if not final_ok:
        print(f"check failed: final deviation {_fmt(rows[-1].deviation)} "
              f">= {_fmt(args.max_dev)}", file=sys.stderr)
    return EXIT_OK if (monotone and final_ok) else EXIT_NEGATIVE


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvghz",
        description="Continuous-variable GHZ paradox verifier, searcher "
                    "and simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a set for the GHZ paradox "
                                      "conditions (exact arithmetic)")
    p.add_argument("--set", help="built-in set name (v4 or w6)")
    p.add_argument("--file", help="operator-set JSON file")
    p.add_argument("--json", action="store_true",
                   help="machine-readable output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustively search for paradoxes")
    p.add_argument("--parties", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--operators", type=int, required=True)
    p.add_argument("--max-exp", type=int, required=True)
    p.add_argument("--emit", help="write each found set to this directory")
    p.add_argument("--max-space", type=float,
                   default=paradox.DEFAULT_SPACE_CEILING,
                   help="refuse enumerations estimated above this size")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("oracle", help="dense-matrix numerical re-check")
    p.add_argument("--set", help="built-in set name (v4 or w6)")
    p.add_argument("--file", help="operator-set JSON file")
    p.add_argument("--max-dim", type=int,
                   default=oracle_mod.DEFAULT_DIM_CEILING)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0,
                   help="eigensolver combination seed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("simulate",
                       help="GHZ comb-state convergence study (CSV)")
    p.add_argument("--delta", required=True,
                   help="comma-separated descending peak widths")
    p.add_argument("--peaks", type=int, default=20)
    p.add_argument("--envelope", type=float, default=10.0)
    p.add_argument("--max-dev", type=float, default=0.05)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, matching the input-error contract
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except oracle_mod.DimensionCeilingError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()

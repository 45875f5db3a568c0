"""Command-line reporting surface.

Evaluates named or file-backed states against every criterion and runs
the two parameter sweeps (Werner family vs. its separable counterpart,
and the two-qubit phase-gate pair).  Reports are emitted as CSV or JSON
with 12 significant digits and are byte-for-byte deterministic.

State files are JSON objects {"dimA": int, "dimB": int, "re": [[..]],
"im": [[..]]}, row-major with subsystem A as the slower index.  Exit
codes: 0 success, 2 usage error, 3 invalid state.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .criteria import (
    DEFAULT_ALPHA_GRID,
    criterion_report,
    ppt_criterion,
    reduction_criterion,
)
from .linalg import DEFAULT_TOL, BipartiteState, InvalidStateError, partial_trace
from .states import rank_counterexample, werner, werner_counterpart
from .twoqubit import (
    det_partial_transpose,
    family_state,
    family_transformed,
    qubit_pair_audit,
)

MAX_GRID_POINTS = 10_000

BUILDER_NAMES = ("werner", "counterpart", "family", "family-prime",
                 "rank-counterexample")


class CliUsageError(Exception):
    """Bad command line input; maps to exit code 2."""


class StateFileError(InvalidStateError):
    """Unreadable or malformed state file; maps to exit code 3."""


@dataclass
class ReportRow:
    """One output row: scenario id, numeric parameters and quantities,
    textual verdicts.  Key order is the construction order and fixed."""

    scenario: str
    parameters: Dict[str, float] = field(default_factory=dict)
    quantities: Dict[str, float] = field(default_factory=dict)
    verdicts: Dict[str, str] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# formatting

def _fmt(value: float) -> str:
    """12 significant digits; infinities spelled inf / -inf."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0.0:
        value = 0.0  # normalize -0.0
    return f"{value:.12g}"


def _json_value(value: float):
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0.0:
        value = 0.0
    return float(f"{value:.12g}")


def _alpha_key(alpha: float) -> str:
    if math.isinf(alpha):
        return "inf" if alpha > 0 else "-inf"
    if alpha == int(alpha):
        return str(int(alpha))
    return f"{alpha:g}"


def format_rows_csv(rows: Sequence[ReportRow]) -> str:
    if not rows:
        return ""
    first = rows[0]
    header = (["scenario"] + list(first.parameters) + list(first.quantities)
              + [f"verdict_{name}" for name in first.verdicts])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        record = ([row.scenario]
                  + [_fmt(v) for v in row.parameters.values()]
                  + [_fmt(v) for v in row.quantities.values()]
                  + list(row.verdicts.values()))
        writer.writerow(record)
    return buf.getvalue()


def format_rows_json(rows: Sequence[ReportRow]) -> str:
    payload = [
        {
            "scenario": row.scenario,
            "parameters": {k: _json_value(v) for k, v in row.parameters.items()},
            "quantities": {k: _json_value(v) for k, v in row.quantities.items()},
            "verdicts": dict(row.verdicts),
        }
        for row in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# state file I/O

def save_state(state: BipartiteState, path: str) -> None:
    """Write a state as JSON; floats keep full precision so a round trip
    reproduces every entry exactly."""
    payload = {
        "dimA": state.dim_a,
        "dimB": state.dim_b,
        "re": state.matrix.real.tolist(),
        "im": state.matrix.imag.tolist(),
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle)
        handle.write("\n")


def load_state(path: str, tol: float = DEFAULT_TOL) -> BipartiteState:
    """Read and validate a JSON state file.

    Raises :class:`StateFileError` for unreadable or malformed files and
    :class:`InvalidStateError` (with the violated invariant named) when
    the matrix fails density-matrix validation.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFileError(f"cannot read state file {path!r}: {exc}") from exc
    if not isinstance(payload, dict):
        raise StateFileError(f"state file {path!r} must hold a JSON object")
    for key in ("dimA", "dimB", "re", "im"):
        if key not in payload:
            raise StateFileError(f"state file {path!r} is missing key {key!r}")
    dim_a, dim_b = payload["dimA"], payload["dimB"]
    if not isinstance(dim_a, int) or not isinstance(dim_b, int):
        raise StateFileError("dimA and dimB must be integers")
    try:
        re = np.asarray(payload["re"], dtype=np.float64)
        im = np.asarray(payload["im"], dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"re/im entries are not numeric: {exc}") from exc
    n = dim_a * dim_b
    if re.shape != (n, n) or im.shape != (n, n):
        raise StateFileError(
            f"shape mismatch: dimA*dimB = {n} needs {n}x{n} re/im blocks, "
            f"got {re.shape} and {im.shape}")
    return BipartiteState(re + 1j * im, dim_a, dim_b, tol)


# ---------------------------------------------------------------------------
# state specs and grids

def _parse_spec(spec: str) -> Tuple[str, List[str]]:
    name, _, rest = spec.partition(":")
    return name, rest.split(":") if rest else []


def build_state(spec: str, tol: float) -> Tuple[BipartiteState, Dict[str, float]]:
    """Resolve a state spec (builder string or file path) to a state.

    Builder specs: werner:d:p, counterpart:d:p, family:r, family-prime:r,
    rank-counterexample.  Anything else is treated as a path to a JSON
    state file.
    """
    name, args = _parse_spec(spec)
    try:
        if name == "rank-counterexample":
            if args:
                raise CliUsageError("rank-counterexample takes no parameters")
            return rank_counterexample(tol), {}
        if name in ("werner", "counterpart"):
            if len(args) != 2:
                raise CliUsageError(f"{name} needs d and p, e.g. {name}:3:0.5")
            d, p = int(args[0]), float(args[1])
            builder = werner if name == "werner" else werner_counterpart
            return builder(d, p, tol), {"d": float(d), "p": p}
        if name in ("family", "family-prime"):
            if len(args) != 1:
                raise CliUsageError(f"{name} needs r, e.g. {name}:0.3")
            r = float(args[0])
            builder = family_state if name == "family" else family_transformed
            return builder(r, tol), {"r": r}
    except CliUsageError:
        raise
    except InvalidStateError:
        raise
    except (TypeError, ValueError) as exc:
        raise CliUsageError(f"invalid parameters for {name!r}: {exc}") from exc

    if os.path.exists(spec):
        return load_state(spec, tol), {}
    raise CliUsageError(
        f"unknown state spec {spec!r}: not one of {', '.join(BUILDER_NAMES)} "
        "and no such file")


def parse_grid(text: str) -> List[float]:
    """Grid spec: empty string, comma list, or start:stop:step inclusive."""
    text = text.strip()
    if not text:
        return []
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError("range grids need start:stop:step")
            start, stop, step = (float(p) for p in parts)
            if step <= 0:
                raise ValueError("step must be positive")
            if stop < start:
                raise ValueError("stop must be >= start")
            count = int(math.floor((stop - start) / step + 1e-9))
            values = [round(start + i * step, 12) for i in range(count + 1)]
        else:
            values = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise CliUsageError(f"bad grid {text!r}: {exc}") from exc
    if len(values) > MAX_GRID_POINTS:
        raise CliUsageError(
            f"grid has {len(values)} points, maximum is {MAX_GRID_POINTS}")
    return values


def parse_alphas(text: str) -> List[float]:
    values: List[float] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(float(token))
        except ValueError as exc:
            raise CliUsageError(f"bad alpha value {token!r}") from exc
    if not values:
        raise CliUsageError("alpha grid is empty")
    return values


# ---------------------------------------------------------------------------
# row builders

def eval_rows(spec: str, alphas: Sequence[float], tol: float) -> List[ReportRow]:
    state, params = build_state(spec, tol)
    return rows_for_state(spec, state, params, alphas)


def rows_for_state(scenario: str, state: BipartiteState,
                   params: Dict[str, float],
                   alphas: Sequence[float]) -> List[ReportRow]:
    report = criterion_report(state, alphas)
    row = ReportRow(scenario=scenario, parameters=dict(params))

    q = row.quantities
    q["ppt_min_eig"] = report.ppt_min_eig
    q["reduction_min_eig"] = report.reduction_min_eig
    if state.dim_a == 2 and state.dim_b == 2:
        q["det_pt"] = det_partial_transpose(state)
        q["chsh_m"] = report.chsh_m
    for alpha, gap in report.entropic_gaps.items():
        q[f"gap_{_alpha_key(alpha)}"] = gap
    for alpha, value in report.tsallis_values.items():
        q[f"tsallis_{_alpha_key(alpha)}"] = value
    for i, lam in enumerate(state.spectrum.values):
        q[f"lambda_{i:02d}"] = float(lam)

    row.verdicts.update(report.verdicts)
    row.verdicts["flags"] = ";".join(sorted(report.flags))
    return [row]


def werner_sweep_rows(d: int, p_grid: Sequence[float], tol: float) -> List[ReportRow]:
    rows = []
    for p in p_grid:
        state = werner(d, p, tol)
        counterpart = werner_counterpart(d, p, tol)
        spectrum_distance = float(np.max(np.abs(
            state.spectrum.values - counterpart.spectrum.values)))
        chaotic = np.eye(d) / d
        reduction_distance = 0.0
        for s in (state, counterpart):
            for trace_out in ("A", "B"):
                gap = np.max(np.abs(partial_trace(s, trace_out) - chaotic))
                reduction_distance = max(reduction_distance, float(gap))
        w_ppt = ppt_criterion(state)
        c_ppt = ppt_criterion(counterpart)
        w_red = reduction_criterion(state)
        c_red = reduction_criterion(counterpart)
        row = ReportRow(
            scenario=f"werner-sweep:{d}",
            parameters={"d": float(d), "p": p},
            quantities={
                "werner_ppt_min_eig": w_ppt,
                "counterpart_ppt_min_eig": c_ppt,
                "werner_reduction_min_eig": w_red,
                "counterpart_reduction_min_eig": c_red,
                "spectrum_distance": spectrum_distance,
                "reduction_distance": reduction_distance,
            },
            verdicts={
                "werner_ppt": "pass" if w_ppt >= -tol else "fail",
                "counterpart_ppt": "pass" if c_ppt >= -tol else "fail",
                "werner_reduction": "pass" if w_red >= -tol else "fail",
                "counterpart_reduction": "pass" if c_red >= -tol else "fail",
            },
        )
        rows.append(row)
    return rows


def family_sweep_rows(r_grid: Sequence[float], tol: float) -> List[ReportRow]:
    rows = []
    det_band = 1e-9
    for r in r_grid:
        audit = qubit_pair_audit(r, DEFAULT_ALPHA_GRID, tol)
        row = ReportRow(
            scenario="family-sweep",
            parameters={"r": r},
            quantities={
                "rho_min_eig": float(family_state(r, tol).spectrum.min),
                "rho_ppt_min_eig": audit.plain.ppt_min_eig,
                "prime_ppt_min_eig": audit.transformed.ppt_min_eig,
                "rho_det_pt": audit.det_pt_plain,
                "prime_det_pt": audit.det_pt_transformed,
                "rho_chsh_m": audit.plain.chsh_m,
                "prime_chsh_m": audit.transformed.chsh_m,
                "spectrum_distance": audit.spectrum_distance,
                "reduction_distance": audit.reduction_distance,
            },
            verdicts={
                "rho_ppt": audit.plain.verdicts["ppt"],
                "prime_ppt": audit.transformed.verdicts["ppt"],
                "rho_det_nonneg": "pass" if audit.det_pt_plain >= -det_band else "fail",
                "prime_det_nonneg": "pass" if audit.det_pt_transformed >= -det_band else "fail",
                "prime_chsh": audit.transformed.verdicts["chsh"],
            },
        )
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default csv)")
    common.add_argument("--out", metavar="PATH",
                        help="write the report here instead of stdout")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="validation tolerance (default 1e-10)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized harnesses (reserved; the "
                             "built-in commands are deterministic)")

    parser = argparse.ArgumentParser(
        prog="sepspectra",
        description="Spectrum-based separability criteria and isospectral "
                    "state constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser(
        "eval", parents=[common],
        help="evaluate all criteria on one state")
    p_eval.add_argument(
        "state", metavar="STATE",
        help="builder spec (werner:d:p, counterpart:d:p, family:r, "
             "family-prime:r, rank-counterexample) or a JSON state file")
    p_eval.add_argument("--alphas", metavar="LIST",
                        help="comma list of entropic orders (inf allowed); "
                             "default 0,0.25,0.5,0.75,1,1.5,2,3,5,inf")
    p_eval.add_argument("--dump-state", metavar="PATH",
                        help="also write the evaluated state as a JSON file")

    p_werner = sub.add_parser(
        "sweep-werner", parents=[common],
        help="compare werner(d, p) with its separable counterpart over a p grid")
    p_werner.add_argument("--d", type=int, required=True,
                          help="local dimension (odd, >= 3)")
    p_werner.add_argument("--p-grid", required=True, metavar="GRID",
                          help="grid: start:stop:step, comma list, or empty")

    p_family = sub.add_parser(
        "sweep-family", parents=[common],
        help="audit the two-qubit phase-gate pair over an r grid")
    p_family.add_argument("--r-grid", required=True, metavar="GRID",
                          help="grid: start:stop:step, comma list, or empty")

    return parser


def _dispatch(args: argparse.Namespace) -> List[ReportRow]:
    if args.tol <= 0:
        raise CliUsageError(f"tolerance must be positive, got {args.tol}")
    if args.command == "eval":
        alphas: Sequence[float] = DEFAULT_ALPHA_GRID
        if args.alphas is not None:
            alphas = parse_alphas(args.alphas)
        state, params = build_state(args.state, args.tol)
        if args.dump_state:
            save_state(state, args.dump_state)
        return rows_for_state(args.state, state, params, alphas)
    if args.command == "sweep-werner":
        if args.d < 3 or args.d % 2 == 0:
            raise CliUsageError(
                "sweep-werner needs odd d >= 3 (the counterpart requires it)")
        return werner_sweep_rows(args.d, parse_grid(args.p_grid), args.tol)
    if args.command == "sweep-family":
        return family_sweep_rows(parse_grid(args.r_grid), args.tol)
    raise CliUsageError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows = _dispatch(args)
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidStateError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = (format_rows_csv(rows) if args.format == "csv"
            else format_rows_json(rows))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

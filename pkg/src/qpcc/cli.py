"""Command-line interface: ``qpcc analyze``, ``qpcc sweep`` and ``qpcc verify``.

Exit codes: 0 success, 1 property violation (verify), 2 invalid input,
3 correlation undefined (pure product state).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import __version__, kernel, verify
from .correlations import MeasurementFrame, OptimizerOptions, negativity, total_correlations
from .entropy import mutual_information
from .errors import QPCCError, UndefinedPCC
from .linalg import purity
from .statespec import StateSpecError, parse_state_spec
from .states import horodecki, werner
from .statistics import pcc

SCHEMA_VERSION = 1
SWEEP_HEADER = "p,r_value,sum_pauli,pcc1,pcc2,pcc3,mutual_information,negativity"
SWEEP_FAMILIES = {"werner": werner, "horodecki": horodecki}
DEFAULT_P_MIN = {"werner": 0.0, "horodecki": 0.01}

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_UNDEFINED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """12 significant digits; NaN and None render as NA."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "NA"
    x = float(x)
    if x == 0.0:
        return "0"
    return f"{x:.12g}"


def _round(obj):
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    x = float(obj)
    if math.isnan(x) or math.isinf(x):
        return None
    return float(f"{x:.12g}") + 0.0


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _options(args) -> OptimizerOptions:
    return OptimizerOptions(restarts=args.restarts, seed=args.seed, tol=args.tol)


def _read_spec(text: str | None):
    if text is None or text == "-":
        raw = sys.stdin.read()
    elif Path(text).is_file():
        raw = Path(text).read_text()
    else:
        raw = text
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise StateSpecError(f"state spec is not valid JSON: {exc}") from None


def _pauli_pccs(state) -> list[float]:
    out = []
    for a, b in MeasurementFrame.pauli().observables():
        try:
            out.append(pcc(state, a, b))
        except UndefinedPCC:
            out.append(math.nan)
    return out


def analyze_state(state, opts: OptimizerOptions) -> dict:
    rep = total_correlations(state, opts)
    f = rep.fano
    pauli = _pauli_pccs(state)
    out = {"schema": SCHEMA_VERSION}
    out.update(rep.as_dict())
    out.update(
        {
            "sum_pauli": float(np.nansum(np.abs(pauli))),
            "pauli_pcc": pauli,
            "mutual_information": mutual_information(state),
            "negativity": negativity(state),
            "purity": purity(state),
            "fano": {"n": f.n.tolist(), "s": f.s.tolist(), "T": f.T.tolist(), "C": f.C.tolist()},
            "backend": kernel.backend_name(),
        }
    )
    return _round(out)


def cmd_analyze(args) -> int:
    state = parse_state_spec(_read_spec(args.state))
    try:
        report = analyze_state(state, _options(args))
    except UndefinedPCC as exc:
        print(f"error: correlations are not applicable to this state: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    with _output(args.out) as fh:
        if args.format == "csv":
            keys = [k for k, v in report.items() if not isinstance(v, (dict, list))]
            fh.write(",".join(keys) + "\n")
            fh.write(",".join(str(report[k]) if isinstance(report[k], str) else fmt(report[k]) for k in keys) + "\n")
        else:
            fh.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def sweep_rows(family: str, p_min: float, p_max: float, steps: int, opts: OptimizerOptions) -> list[list[str]]:
    make = SWEEP_FAMILIES[family]
    rows = []
    for p in np.linspace(p_min, p_max, steps):
        state = make(float(p))
        try:
            r = total_correlations(state, opts).r_value
        except UndefinedPCC:
            r = math.nan
        pccs = _pauli_pccs(state)
        total = math.nan if any(math.isnan(x) for x in pccs) else sum(abs(x) for x in pccs)
        rows.append([fmt(p), fmt(r), fmt(total), *map(fmt, pccs), fmt(mutual_information(state)), fmt(negativity(state))])
    return rows


def sweep_csv(family: str, p_min: float, p_max: float, steps: int, opts: OptimizerOptions) -> str:
    buf = io.StringIO()
    buf.write(SWEEP_HEADER + "\n")
    for row in sweep_rows(family, p_min, p_max, steps, opts):
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def cmd_sweep(args) -> int:
    p_min = DEFAULT_P_MIN[args.family] if args.p_min is None else args.p_min
    p_max = args.p_max
    if not (0.0 <= p_min <= p_max <= 1.0):
        raise UsageError(f"need 0 <= p_min <= p_max <= 1, got p_min={p_min}, p_max={p_max}")
    if args.steps < 1 or (args.steps == 1 and p_min != p_max):
        raise UsageError("steps must be >= 2 unless p_min == p_max")
    text = sweep_csv(args.family, p_min, p_max, args.steps, _options(args))
    if args.format == "json":
        lines = text.splitlines()
        keys = lines[0].split(",")
        rows = [dict(zip(keys, (None if v == "NA" else float(v) for v in line.split(",")))) for line in lines[1:]]
        text = json.dumps({"schema": SCHEMA_VERSION, "family": args.family, "rows": rows}, indent=2) + "\n"
    with _output(args.out) as fh:
        fh.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n is not None and args.n < 1:
        raise UsageError("n must be >= 1")
    results = verify.run(args.suite, args.n, args.seed, _options(args))
    ok = all(r.ok for r in results)
    with _output(args.out) as fh:
        if args.format == "json":
            payload = {
                "schema": SCHEMA_VERSION,
                "ok": ok,
                "suites": [
                    {
                        "name": r.name,
                        "n": r.n,
                        "checks": [
                            {"name": c.name, "passed": c.passed, "failed": c.failed, "worst": c.worst,
                             "tol": c.tol, "counterexample": c.counterexample}
                            for c in r.checks
                        ],
                    }
                    for r in results
                ],
            }
            fh.write(json.dumps(_round(payload), indent=2) + "\n")
        else:
            for r in results:
                for line in r.lines():
                    fh.write(line + "\n")
                for c in r.checks:
                    if c.counterexample is not None:
                        fh.write(f"counterexample {r.name}/{c.name}: {json.dumps(c.counterexample)}\n")
            fh.write(("ALL PASS" if ok else "FAILURES") + "\n")
    return EXIT_OK if ok else EXIT_VIOLATION


def _common(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument("--seed", type=int, default=42, help="PRNG seed (default 42)")
    p.add_argument("--restarts", type=int, default=32, help="random optimizer restarts (default 32)")
    p.add_argument("--tol", type=float, default=1e-6, help="classification tolerance (default 1e-6)")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=formats, default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpcc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="correlation report for one state (JSON)")
    p.add_argument("state", nargs="?", default=None, help="state spec: inline JSON, a JSON file, or - for stdin")
    _common(p, ("json", "csv"))
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="Werner/Horodecki parameter sweep (CSV)")
    p.add_argument("family", choices=sorted(SWEEP_FAMILIES))
    p.add_argument("--p-min", type=float, default=None, help="default 0 (werner) or 0.01 (horodecki)")
    p.add_argument("--p-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    _common(p, ("csv", "json"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run seeded property suites")
    p.add_argument("suite", nargs="?", default="all", choices=(*verify.SUITES, "all"))
    p.add_argument("--n", type=int, default=None, help="instances per suite (default: per-suite)")
    _common(p, ("text", "json"))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.restarts < 0 or not args.tol > 0:
            raise UsageError("--restarts must be >= 0 and --tol > 0")
        return args.func(args)
    except (UsageError, StateSpecError, QPCCError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 I/O error. Reports are JSON by default; ``--format csv`` writes the
result rows as CSV instead.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import __version__
from . import circuit as ir
from .analyzer import analyze_cghz, analyzer_circuit
from .encodings import (
    BlockLayout,
    LabelError,
    LogicBellLabel,
    LogicQubitCoeffs,
    NormalizationError,
    make_cghz,
    parse_state_label,
)
from .noise import retention_sweep
from .oracle import check_equivalence
from .protocols import swap, teleport
from .statevec import (
    DEFAULT_MAX_QUBITS,
    BranchAll,
    CapacityError,
    Sample,
    max_qubits,
    qubit_limit,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CSV_COLUMNS = {
    "analyze": ["label", "logic_bell", "bits", "probability", "reduction_outcomes", "corrections"],
    "verify": ["N", "m", "trials", "seed", "max_deviation", "passed"],
    "teleport": ["outcome", "probability", "fidelity", "correction"],
    "swap": ["outcome", "probability", "fidelity", "correction"],
    "noise-sweep": ["p", "trials", "retained", "retention"],
    "emit-circuit": ["line"],
}


class UsageError(ValueError):
    pass


def _complex(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _grid(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-qubits", type=_positive_int, default=None,
                        help=f"register cap (default: $CGHZ_MAX_QUBITS or {DEFAULT_MAX_QUBITS})")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="cghz", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="analyze a labelled basis state")
    p.add_argument("--state", required=True, help="N<N>m<m>k<k><+|-> or phi+/phi-/psi+/psi-")

    p = sub.add_parser("verify", parents=[common], help="analyzer vs oracle on random states")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--trials", type=int, default=50)

    p = sub.add_parser("teleport", parents=[common], help="teleport a logic qubit")
    p.add_argument("--alpha", type=_complex, default=1)
    p.add_argument("--beta", type=_complex, default=0)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--all-branches", action="store_true")

    p = sub.add_parser("swap", parents=[common], help="logic entanglement swapping")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--all-branches", action="store_true")

    p = sub.add_parser("noise-sweep", parents=[common], help="label retention under dephasing")
    p.add_argument("--state", default="N2m2k1+")
    p.add_argument("--p", type=_grid, default=[0.0, 0.1, 0.2, 0.3, 0.4, 0.5])
    p.add_argument("--trials", type=int, default=200)

    p = sub.add_parser("emit-circuit", parents=[common], help="write the analyzer gate list")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--circuit", default=None, help="also write the gate list to this file")
    return parser


# -- commands ---------------------------------------------------------------


def cmd_analyze(args):
    label = parse_state_label(args.state)
    results = analyze_cghz(make_cghz(label), label.layout, BranchAll(), Sample(args.seed))
    rows = []
    for r in results:
        logic = LogicBellLabel.from_cghz(r.label).value if label.layout.N == 2 else None
        rows.append({
            "label": str(r.label),
            "logic_bell": logic,
            "bits": list(r.bits),
            "probability": r.probability,
            "reduction_outcomes": [list(b) for b in r.flips.outcomes] if r.flips else None,
            "corrections": list(r.flips.corrections) if r.flips else None,
        })
    return {"state": str(label), "outcomes": rows}, rows, EXIT_OK


def cmd_verify(args):
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    report = check_equivalence(BlockLayout(args.N, args.m), args.trials, args.seed)
    passed = report.max_deviation < args.tolerance
    payload = {**report.to_dict(), "tolerance": args.tolerance, "passed": passed}
    row = {"N": args.N, "m": args.m, "trials": args.trials, "seed": args.seed,
           "max_deviation": report.max_deviation, "passed": passed}
    return payload, [row], EXIT_OK if passed else EXIT_FAILED


def _policy(args):
    if args.all_branches:
        return BranchAll(), "all-branches"
    return Sample(args.seed), f"sample(seed={args.seed})"


def _protocol_payload(name, m, policy_name, rows, tolerance):
    passed = all(abs(r["fidelity"] - 1.0) <= tolerance for r in rows)
    payload = {"protocol": name, "m": m, "policy": policy_name, "branches": rows, "passed": passed}
    return payload, rows, EXIT_OK if passed else EXIT_FAILED


def cmd_teleport(args):
    coeffs = LogicQubitCoeffs(args.alpha, args.beta)
    policy, policy_name = _policy(args)
    rows = [
        {"outcome": r.outcome.value, "probability": r.probability,
         "fidelity": r.fidelity, "correction": r.correction.to_list()}
        for r in teleport(coeffs, args.m, policy, Sample(args.seed))
    ]
    return _protocol_payload("teleport", args.m, policy_name, rows, args.tolerance)


def cmd_swap(args):
    policy, policy_name = _policy(args)
    rows = [
        {"outcome": r.outcome.value, "probability": r.probability,
         "fidelity": r.fidelity_after_correction, "correction": r.correction.to_list()}
        for r in swap(args.m, policy, Sample(args.seed))
    ]
    return _protocol_payload("swap", args.m, policy_name, rows, args.tolerance)


def cmd_noise_sweep(args):
    for p in args.p:
        if not 0.0 <= p <= 1.0:
            raise UsageError(f"--p values must lie in [0, 1], got {p}")
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    label = parse_state_label(args.state)
    points = retention_sweep(label, args.p, args.trials, args.seed)
    rows = [{"p": pt.p, "trials": pt.trials, "retained": pt.retained, "retention": pt.retention}
            for pt in points]
    return {"state": str(label), "points": rows}, rows, EXIT_OK


def cmd_emit_circuit(args):
    layout = BlockLayout(args.N, args.m)
    layout.check_capacity()
    text = ir.to_text(analyzer_circuit(layout))
    if args.circuit:
        with open(args.circuit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    lines = text.splitlines()
    payload = {"layout": {"N": layout.N, "m": layout.m}, "path": args.circuit, "lines": lines}
    return payload, [{"line": line} for line in lines], EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "teleport": cmd_teleport,
    "swap": cmd_swap,
    "noise-sweep": cmd_noise_sweep,
    "emit-circuit": cmd_emit_circuit,
}


# -- reporting --------------------------------------------------------------


def _config(args) -> dict:
    skip = {"command", "out", "format"}
    return {k: (str(v) if isinstance(v, complex) else v)
            for k, v in sorted(vars(args).items()) if k not in skip}


def render(report: dict, rows: list[dict], fmt: str, command: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS[command], lineterminator="\n",
                            extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                         for k, v in row.items()})
    return buf.getvalue()


def run(argv=None) -> tuple[int, dict | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    cap = args.max_qubits if args.max_qubits is not None else max_qubits()
    start = time.perf_counter()
    try:
        with qubit_limit(cap):
            results, rows, code = COMMANDS[args.command](args)
    except (UsageError, LabelError, NormalizationError, CapacityError, ValueError) as exc:
        print(f"cghz {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except OSError as exc:
        print(f"cghz {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO, None

    config = {**_config(args), "max_qubits": cap}
    report = {
        "command": args.command,
        "config": config,
        "results": results,
        "duration_s": time.perf_counter() - start,
        "version": __version__,
    }
    text = render(report, rows, args.format, args.command)
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"cghz {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO, report
    return code, report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())

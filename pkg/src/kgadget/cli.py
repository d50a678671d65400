"""Command-line interface.

Subcommands: build, spectrum, effective, bloch, sweep, diagrams, verify.
Exit codes: 0 success, 1 a verification check failed (or a whole sweep failed),
2 input/validation errors. Validation errors print {"error": code, "detail": ...}
as JSON on standard error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .bloch import bloch_series, enumerate_tuples
from .effective import error_ratio
from .errors import GadgetError
from .gadget import assemble, loose_coupling_norm_bound
from .hamiltonian import load_hamiltonian
from .matrixio import matrix_to_dict, write_matrix
from .sector import build_sector_basis, project_to_sector
from .sweep import geometric_lambdas, run_sweep, write_error_sidecar, write_sweep_csv
from .verify import run_verification

DEFAULT_MAX_QUBITS = 12
DIAGRAM_ORDER_CAP = 12


class UsageError(GadgetError):
    """Bad or missing command-line arguments."""


def _fail(exc: Exception) -> int:
    code = exc.code if isinstance(exc, GadgetError) else type(exc).__name__
    print(json.dumps({"error": code, "detail": str(exc)}), file=sys.stderr)
    return 2


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _parse_lambdas(args: argparse.Namespace, allow_many: bool) -> list[float]:
    if args.lam is not None and args.lambda_range is not None:
        raise UsageError("give either --lambda or --lambda-range, not both")
    if args.lambda_range is not None:
        pieces = args.lambda_range.split(":")
        if len(pieces) != 3:
            raise UsageError("--lambda-range must be start:factor:count")
        try:
            start, factor = float(pieces[0]), float(pieces[1])
            count = int(pieces[2])
        except ValueError as exc:
            raise UsageError(f"bad --lambda-range: {exc}") from exc
        return geometric_lambdas(start, factor, count)
    if args.lam is None:
        raise UsageError("--lambda is required")
    try:
        values = [float(x) for x in args.lam.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --lambda: {exc}") from exc
    if not values:
        raise UsageError("empty lambda list")
    if len(values) > 1 and not allow_many:
        raise UsageError("this subcommand takes a single lambda")
    if any(v <= 0 for v in values):
        raise UsageError("all lambda values must be positive")
    return values


def cmd_build(args: argparse.Namespace) -> int:
    _require(args, "input", "out")
    lam = _parse_lambdas(args, allow_many=False)[0]
    h = load_hamiltonian(args.input)
    system = assemble(h, lam, strict=args.strict, max_qubits=args.max_qubits)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(system.h_anc, out / "h_anc.json")
    write_matrix(system.v, out / "v.json")
    metadata = {
        "n": h.n,
        "k": h.k,
        "r": h.r,
        "total_qubits": system.layout.total_qubits,
        "lambda": lam,
        "lambda_bound": system.lam_bound,
        "coupling_norm_loose_bound": loose_coupling_norm_bound(h),
        "strict": bool(args.strict),
        "warnings": list(system.warnings),
    }
    (out / "metadata.json").write_text(
        json.dumps(metadata, indent=2) + "\n", encoding="utf-8"
    )
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    _require(args, "input")
    lam = _parse_lambdas(args, allow_many=False)[0]
    h = load_hamiltonian(args.input)
    system = assemble(h, lam, strict=args.strict, max_qubits=args.max_qubits)
    sector = build_sector_basis(system.layout, max_qubits=args.max_qubits)
    h_plus = project_to_sector(system.h_gad, sector)
    values = np.linalg.eigvalsh(h_plus)
    lines = [["index", "eigenvalue"]]
    lines += [[str(i), repr(float(v))] for i, v in enumerate(values)]
    target = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(target, lineterminator="\n")
        writer.writerows(lines)
    finally:
        if args.out:
            target.close()
    return 0


def cmd_effective(args: argparse.Namespace) -> int:
    _require(args, "input")
    lam = _parse_lambdas(args, allow_many=False)[0]
    h = load_hamiltonian(args.input)
    system = assemble(h, lam, strict=args.strict, max_qubits=args.max_qubits)
    report = error_ratio(system, mode=args.shift_mode, max_qubits=args.max_qubits)
    _emit_json(
        {
            "lambda": report.lam,
            "d": report.d,
            "shift_mode": report.shift_mode,
            "shift": report.shift_used,
            "error_norm": report.error_norm,
            "id_norm": report.id_norm,
            "ratio": report.ratio,
            "spectral_gap_at_cut": report.spectral_gap_at_cut,
        },
        args.out,
    )
    return 0


def cmd_bloch(args: argparse.Namespace) -> int:
    _require(args, "input")
    lam = _parse_lambdas(args, allow_many=False)[0]
    h = load_hamiltonian(args.input)
    system = assemble(h, lam, strict=args.strict, max_qubits=args.max_qubits)
    order = args.order if args.order is not None else h.k
    series = bloch_series(system, order=order, order_cap=max(order, 6),
                          max_qubits=args.max_qubits)
    cert = series.certificate
    _emit_json(
        {
            "k": h.k,
            "lambda": lam,
            "max_order": series.max_order,
            "shift_poly": [float(c) for c in series.shift_poly],
            "shift_at_lambda": series.shift_value(lam),
            "certificate": {
                "gap": cert.gap,
                "v_norm": cert.v_norm,
                "threshold": cert.threshold,
                "lambda_v_norm": cert.lambda_v_norm,
                "converges": cert.converges,
                "geometric_ratio": cert.geometric_ratio,
            },
            "a_terms": {
                str(m + 1): matrix_to_dict(a) for m, a in enumerate(series.a_terms)
            },
            "effective_order_k": matrix_to_dict(series.effective_k()),
        },
        args.out,
    )
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    _require(args, "input", "out")
    lambdas = _parse_lambdas(args, allow_many=True)
    h = load_hamiltonian(args.input)
    rows = run_sweep(h, lambdas, mode=args.shift_mode, jobs=args.jobs,
                     max_qubits=args.max_qubits)
    write_sweep_csv(rows, args.out)
    write_error_sidecar(rows, args.out)
    if args.plot:
        from .plotting import render_sweep_plot

        render_sweep_plot(rows, args.plot, label=Path(args.input).stem)
    if all(row.failed for row in rows):
        return 1
    return 0


def cmd_diagrams(args: argparse.Namespace) -> int:
    _require(args, "m")
    if args.m > DIAGRAM_ORDER_CAP:
        raise UsageError(f"order {args.m} exceeds cap {DIAGRAM_ORDER_CAP}")
    tuples = enumerate_tuples(args.kind, args.m)
    _emit_json(
        {
            "kind": args.kind,
            "m": args.m,
            "count": len(tuples),
            "tuples": [list(t) for t in tuples],
        },
        args.out,
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    _require(args, "input")
    lam = _parse_lambdas(args, allow_many=False)[0]
    h = load_hamiltonian(args.input)
    report = run_verification(h, lam, max_qubits=args.max_qubits)
    report["input"] = args.input
    _emit_json(report, args.out)
    return 0 if report["all_pass"] else 1


COMMANDS = {
    "build": cmd_build,
    "spectrum": cmd_spectrum,
    "effective": cmd_effective,
    "bloch": cmd_bloch,
    "sweep": cmd_sweep,
    "diagrams": cmd_diagrams,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="Hamiltonian JSON document")
    common.add_argument("--lambda", dest="lam",
                        help="coupling strength, or comma list for sweep")
    common.add_argument("--lambda-range", dest="lambda_range",
                        help="geometric sweep spec start:factor:count")
    common.add_argument("--shift-mode", choices=("mean", "bloch"), default="mean")
    common.add_argument("--strict", action="store_true",
                        help="reject lambda at or above the convergence bound")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", help="output path (directory for build)")
    common.add_argument("--max-qubits", dest="max_qubits", type=int,
                        default=DEFAULT_MAX_QUBITS)

    parser = argparse.ArgumentParser(
        prog="kgadget",
        description="Compile k-local Hamiltonians into 2-local gadgets and "
                    "verify their low-energy spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common])
    sub.add_parser("spectrum", parents=[common])
    sub.add_parser("effective", parents=[common])
    p_bloch = sub.add_parser("bloch", parents=[common])
    p_bloch.add_argument("--order", type=int, help="series order (default k)")
    p_sweep = sub.add_parser("sweep", parents=[common])
    p_sweep.add_argument("--plot", help="also render a log-log figure to this path")
    p_diagrams = sub.add_parser("diagrams", parents=[common])
    p_diagrams.add_argument("--kind", choices=("A", "U"), default="U")
    p_diagrams.add_argument("--m", type=int, help="expansion order")
    sub.add_parser("verify", parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GadgetError, ValueError, OSError) as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Operators are described by JSON files::

    {
      "dim": 2,
      "kind": "unitary",                 # "unitary" | "antiunitary" | "general"
      "matrix": [[[1.0, 0.0], [0.0, 0.0]],
                 [[0.0, 0.0], [1.0, 0.0]]],
      "conjugate_first": false           # optional, kind "general" only
    }

Every matrix entry is an explicit [re, im] pair, which keeps the format
locale-free and round-trip exact.  Kinds "unitary" and "antiunitary" are
validated at load time (unitarity defect at most 1e-8).

Commands print one record per line, tab-delimited, with floats rendered to
17 significant digits so output is byte-stable and parseable.

Exit codes: 0 success / theorem-conformant, 1 pipeline error or failed
conformance, 2 diagnostic-only reconstruction, 64 malformed input or usage.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .conformance import ConformanceReport, run_full_conformance
from .errors import OperatorFileError, RaySymError
from .oracles import SymmetryOperator, induced_map
from .rays import Tolerances
from .reconstruction import (
    DEFAULT_PROBE_GRID,
    AutomorphismKind,
    ProbeResult,
    ReconstructionResult,
    fix_phases,
    map_basis,
    probe_automorphism,
    reconstruct,
)

#: Unitarity defect accepted when loading kinds "unitary" and "antiunitary".
LOAD_UNITARY_TOL = 1e-8

_KINDS = ("unitary", "antiunitary", "general")

_KIND_LABEL = {
    AutomorphismKind.IDENTITY: "identity-automorphism",
    AutomorphismKind.CONJUGATION: "conjugation-automorphism",
}


class UsageError(Exception):
    """Bad flags or arguments; maps to exit code 64."""


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0
    return f"{x:.17g}"


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _require_number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise OperatorFileError(f"{field}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise OperatorFileError(f"{field}: must be finite, got {value!r}")
    return float(value)


def load_operator_file(path: str) -> SymmetryOperator:
    """Parse and validate an operator description file.

    Raises OperatorFileError with the failing field named.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise OperatorFileError(f"input: cannot read {path}: {err.strerror or err}") from err
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise OperatorFileError(f"input: not valid JSON: {err}") from err
    if not isinstance(data, dict):
        raise OperatorFileError("input: top level must be an object")

    allowed = {"dim", "kind", "matrix", "conjugate_first"}
    for key in data:
        if key not in allowed:
            raise OperatorFileError(f"{key}: unknown field")
    for key in ("dim", "kind", "matrix"):
        if key not in data:
            raise OperatorFileError(f"{key}: missing required field")

    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise OperatorFileError(f"dim: expected an integer, got {dim!r}")
    if dim < 2:
        raise OperatorFileError("dim: dimension must be at least 2")

    kind = data["kind"]
    if kind not in _KINDS:
        raise OperatorFileError(f"kind: must be one of {', '.join(_KINDS)}, got {kind!r}")

    conjugate_first = data.get("conjugate_first", False)
    if "conjugate_first" in data:
        if kind != "general":
            raise OperatorFileError("conjugate_first: only valid for kind \"general\"")
        if not isinstance(conjugate_first, bool):
            raise OperatorFileError(
                f"conjugate_first: expected a boolean, got {conjugate_first!r}"
            )

    rows = data["matrix"]
    if not isinstance(rows, list) or len(rows) != dim:
        raise OperatorFileError(f"matrix: expected {dim} rows")
    matrix = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise OperatorFileError(f"matrix: row {i + 1} must have {dim} entries")
        entries = []
        for j, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != 2:
                raise OperatorFileError(
                    f"matrix: entry ({i + 1}, {j + 1}) must be an [re, im] pair"
                )
            re = _require_number(entry[0], f"matrix: entry ({i + 1}, {j + 1}) re")
            im = _require_number(entry[1], f"matrix: entry ({i + 1}, {j + 1}) im")
            entries.append(complex(re, im))
        matrix.append(entries)

    antiunitary = kind == "antiunitary" or (kind == "general" and conjugate_first)
    op = SymmetryOperator(matrix=matrix, antiunitary=antiunitary)
    if kind in ("unitary", "antiunitary"):
        defect = op.unitarity_defect()
        if defect > LOAD_UNITARY_TOL:
            raise OperatorFileError(
                f"matrix: kind \"{kind}\" requires a unitary matrix "
                f"(defect {defect:.3e} exceeds {LOAD_UNITARY_TOL:.0e})"
            )
    return op


def parse_samples(text: str) -> tuple[complex, ...]:
    """Comma-separated complex numbers; accepts i or j for the imaginary unit."""
    samples = []
    for token in text.split(","):
        token = token.strip().replace(" ", "")
        if not token:
            raise UsageError("--samples: empty entry")
        try:
            value = complex(token.replace("i", "j"))
        except ValueError:
            raise UsageError(f"--samples: cannot parse {token!r} as a complex number") from None
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise UsageError(f"--samples: {token!r} is not finite")
        samples.append(value)
    return tuple(samples)


def _tolerances(args: argparse.Namespace) -> Tolerances:
    try:
        return Tolerances(orth_tol=args.tol_orth, recon_tol=args.tol_recon)
    except ValueError as err:
        raise UsageError(str(err)) from None


def render_reconstruction(result: ReconstructionResult) -> list[str]:
    op = result.operator
    lines = [
        "report\treconstruction",
        f"dim\t{op.dim}",
        f"status\t{'unitary-valid' if result.unitary_valid else 'diagnostic-only'}",
        f"kind\t{_KIND_LABEL[result.kind]}",
        f"antiunitary\t{_bool(op.antiunitary)}",
        f"max-scale-deviation\t{_fmt(result.max_scale_deviation)}",
        f"classification-residual\t{_fmt(result.classification_residual)}",
    ]
    for i, scale in enumerate(result.scales):
        lines.append(f"scale\t{i + 1}\t{_fmt(float(scale))}")
    for i in range(op.dim):
        for j in range(op.dim):
            entry = op.matrix[i, j]
            lines.append(f"matrix\t{i + 1}\t{j + 1}\t{_fmt(entry.real)}\t{_fmt(entry.imag)}")
    return lines


def render_conformance(report: ConformanceReport) -> list[str]:
    lines = [
        "report\tconformance",
        f"dim\t{report.dim}",
        f"seed\t{report.seed}",
    ]
    for entry in report.entries:
        status = "pass" if entry.passed else "fail"
        lines.append(
            f"check\t{entry.name}\t{status}\t{_fmt(entry.worst_residual)}"
            f"\t{entry.trials}\t{entry.seed}"
        )
    if report.error is not None:
        lines.append(f"error\t{report.error}")
    lines.append(f"overall\t{'pass' if report.overall else 'fail'}")
    return lines


def render_probe(probe: ProbeResult, dim: int, scale: float) -> list[str]:
    lines = [
        "report\tautomorphism-probe",
        f"dim\t{dim}",
        f"index\t{probe.index + 1}",
        f"scale\t{_fmt(scale)}",
    ]
    for z, f_z in probe.values:
        lines.append(f"probe\t{_fmt(z.real)}\t{_fmt(z.imag)}\t{_fmt(f_z.real)}\t{_fmt(f_z.imag)}")
    lines.append(f"additivity-residual\t{_fmt(probe.additivity_residual)}")
    lines.append(f"multiplicativity-residual\t{_fmt(probe.multiplicativity_residual)}")
    return lines


def _emit(lines: list[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def cmd_reconstruct(args: argparse.Namespace) -> int:
    op = load_operator_file(args.input)
    tol = _tolerances(args)
    oracle = induced_map(op)
    result = reconstruct(oracle, op.dim, tol)
    _emit(render_reconstruction(result))
    return 0 if result.unitary_valid else 2


def cmd_conformance(args: argparse.Namespace) -> int:
    op = load_operator_file(args.input)
    tol = _tolerances(args)
    if args.trials < 1:
        raise UsageError("--trials: must be at least 1")
    report = run_full_conformance(
        op, seed=args.seed, tol=tol, invariance_trials=args.trials
    )
    _emit(render_conformance(report))
    return 0 if report.overall else 1


def cmd_probe(args: argparse.Namespace) -> int:
    op = load_operator_file(args.input)
    tol = _tolerances(args)
    if args.index < 2:
        raise UsageError("--index: must be at least 2 (axis 1 is the reference axis)")
    if args.index > op.dim:
        raise UsageError(f"--index: must be at most the operator dimension ({op.dim})")
    samples = parse_samples(args.samples) if args.samples else DEFAULT_PROBE_GRID
    oracle = induced_map(op)
    basis = map_basis(oracle, op.dim, tol)
    fixed, scales = fix_phases(oracle, basis, tol)
    probe = probe_automorphism(oracle, fixed, scales, samples, args.index - 1, tol)
    _emit(render_probe(probe, op.dim, float(scales[args.index - 1])))
    return 0


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_tolerance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--tol-orth", type=float, default=1e-9, metavar="X",
        help="orthogonality tolerance on transition probabilities (default 1e-9)",
    )
    parser.add_argument(
        "--tol-recon", type=float, default=1e-8, metavar="X",
        help="reconstruction residual tolerance (default 1e-8)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="raysym",
        description="Reconstruct unitary/antiunitary symmetry operators from ray maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rec = sub.add_parser(
        "reconstruct", help="reconstruct the operator behind an induced ray map"
    )
    p_rec.add_argument("input", help="operator description file (JSON)")
    _add_tolerance_flags(p_rec)
    p_rec.set_defaults(func=cmd_reconstruct)

    p_conf = sub.add_parser(
        "conformance", help="run the full hypothesis and assertion check suite"
    )
    p_conf.add_argument("input", help="operator description file (JSON)")
    p_conf.add_argument(
        "--seed", type=int, default=0, help="master seed for randomized checks (default 0)"
    )
    p_conf.add_argument(
        "--trials", type=int, default=200,
        help="ray-pair trials for each randomized check (default 200)",
    )
    _add_tolerance_flags(p_conf)
    p_conf.set_defaults(func=cmd_conformance)

    p_probe = sub.add_parser(
        "probe", help="probe the coordinate automorphism pointwise"
    )
    p_probe.add_argument("input", help="operator description file (JSON)")
    p_probe.add_argument(
        "--samples", default=None, metavar="LIST",
        help="comma-separated complex probe points, e.g. \"1,i,1+i\" (default: built-in grid)",
    )
    p_probe.add_argument(
        "--index", type=int, default=2,
        help="coordinate axis to probe, 1-based, at least 2 (default 2)",
    )
    _add_tolerance_flags(p_probe)
    p_probe.set_defaults(func=cmd_probe)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        sys.stderr.write(f"error: {err}\n")
        return 64
    except OperatorFileError as err:
        sys.stderr.write(f"error: {err}\n")
        return 64
    except RaySymError as err:
        sys.stderr.write(f"error: {err}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

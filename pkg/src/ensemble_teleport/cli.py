"""Command-line harness: operator audits, single sessions, sweeps, convention checks.

Every command is deterministic given its full flag set (including --seed),
so repeated runs produce byte-identical output. Numeric fields are
serialized with 17 significant digits in CSV; JSON carries native floats
that round-trip exactly.

Exit status: 0 on success, 1 on an invariant violation or bad
configuration, 2 when a numerical audit exceeds its tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .bell import BELL_INDICES, bell_projector, ppt_entangled
from .conventions import compare_conventions
from .fidelity import fidelity_report, fidelity_trace, lazy_fidelity, sample_mixed_uniform
from .linalg import LAYOUT_AB, hermitian_spectrum, partial_transpose, spectral_norm
from .protocol import (
    ClassicalMessage,
    CoefficientVector,
    alice_prepare,
    automatic_preparation,
    effective_transformation,
    preparation_from_bell,
    renormalize,
    run_session,
    transformation_matrix,
)

DEFAULT_SEED = 42

_PREP_CHOICES = ("bell1", "bell2", "bell3", "bell4", "paut")
_MESSAGE_CHOICES = ("twobits", "onebit", "preagreed")

_TELEPORT_CSV_COLUMNS = (
    "c11",
    "c12_re",
    "c12_im",
    "prep",
    "bob_acts",
    "bits_sent",
    "fidelity_trace",
    "fidelity_vector",
    "agree",
)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _render_table(rows, columns) -> str:
    header = list(columns)
    body = [[_format_cell(row.get(col)) for col in columns] for row in rows]
    widths = [
        max(len(header[k]), *(len(line[k]) for line in body)) if body else len(header[k])
        for k in range(len(columns))
    ]
    out = io.StringIO()
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for line in body:
        out.write("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() + "\n")
    return out.getvalue()


def _render_csv(rows, columns) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(row.get(col)) for col in columns])
    return out.getvalue()


def _render_json(rows, columns) -> str:
    records = [{col: row.get(col) for col in columns if col in row} for row in rows]
    return json.dumps(records, indent=2) + "\n"


def _render(rows, columns, fmt: str) -> str:
    if fmt == "table":
        return _render_table(rows, columns)
    if fmt == "csv":
        return _render_csv(rows, columns)
    return _render_json(rows, columns)


def _resolve_prep_flag(name: str):
    if name == "paut":
        return automatic_preparation(), None
    index = int(name[-1])
    return preparation_from_bell(index), index


def _cmd_bell_audit(args) -> tuple[list[dict], tuple[str, ...], bool]:
    tol = args.tol
    columns = ("kind", "i", "j", "residual", "trace", "min_pt_eigenvalue", "entangled")
    rows: list[dict] = []
    ok = True
    projectors = {i: bell_projector(i) for i in BELL_INDICES}
    for i in BELL_INDICES:
        r = projectors[i]
        idem = float(np.max(np.abs(r @ r - r)))
        pt_min = float(hermitian_spectrum(partial_transpose(r, LAYOUT_AB, "B"))[-1])
        entangled = ppt_entangled(r)
        rows.append(
            {
                "kind": "operator",
                "i": i,
                "j": i,
                "residual": idem,
                "trace": float(np.trace(r).real),
                "min_pt_eigenvalue": pt_min,
                "entangled": entangled,
            }
        )
        ok = ok and idem < tol and entangled
    for i in BELL_INDICES:
        for j in BELL_INDICES:
            if i == j:
                continue
            residual = float(np.max(np.abs(projectors[i] @ projectors[j])))
            rows.append({"kind": "pair", "i": i, "j": j, "residual": residual})
            ok = ok and residual < tol
    completeness = float(
        np.max(np.abs(sum(projectors.values()) - np.eye(4, dtype=complex)))
    )
    rows.append({"kind": "completeness", "residual": completeness})
    ok = ok and completeness < tol
    return rows, columns, ok


def _cmd_teleport(args) -> tuple[list[dict], tuple[str, ...], bool]:
    c = CoefficientVector.from_components(args.c11, complex(args.c12re, args.c12im))
    u, bell_index = _resolve_prep_flag(args.prep)

    message_name = args.message
    if message_name is None:
        message_name = "twobits" if bell_index is not None else "preagreed"
    if message_name == "twobits":
        if bell_index is None:
            raise ValueError("a two-bit message needs a Bell preparation, not paut")
        message = ClassicalMessage.two_bits(bell_index)
    elif message_name == "onebit":
        message = ClassicalMessage.ping()
    else:
        message = ClassicalMessage.pre_agreed()

    record = run_session(c, u, message, bob_acts=args.correct)
    correction = bell_index if args.correct else None
    effective = effective_transformation(u, correction)
    report = fidelity_report(c, effective, record.bob_state)

    row = {
        "c11": c.c11,
        "c12_re": c.c12.real,
        "c12_im": c.c12.imag,
        "prep": args.prep,
        "bob_acts": bool(args.correct),
        "bits_sent": record.bits_sent,
        "fidelity_trace": report.trace_form,
        "fidelity_vector": report.vector_form,
        "agree": report.agree,
    }
    state = np.asarray(record.bob_state)
    for r in (1, 2):
        for col in (1, 2):
            entry = state[r - 1, col - 1]
            row[f"b{r}{col}_re"] = float(entry.real)
            row[f"b{r}{col}_im"] = float(entry.imag)
    row["note"] = report.note

    if args.format == "csv":
        columns = _TELEPORT_CSV_COLUMNS
    else:
        columns = _TELEPORT_CSV_COLUMNS + (
            "b11_re", "b11_im", "b12_re", "b12_im",
            "b21_re", "b21_im", "b22_re", "b22_im", "note",
        )
    return [row], columns, True


def _cmd_sweep(args) -> tuple[list[dict], tuple[str, ...], bool]:
    if args.resolution < 2:
        raise ValueError(f"sweep resolution must be at least 2, got {args.resolution}")
    mag_resolution = args.mag_resolution if args.mag_resolution is not None else args.resolution
    if mag_resolution < 1 or args.phase_resolution < 1:
        raise ValueError("magnitude and phase resolutions must be at least 1")
    u, _ = _resolve_prep_flag(args.prep)

    columns = ("c11", "c12_re", "c12_im", "lazy_fidelity", "trace_fidelity")
    rows: list[dict] = []
    for c11 in np.linspace(0.0, 1.0, args.resolution):
        mag_max = float(np.sqrt(max(c11 * (1.0 - c11), 0.0)))
        if args.slice == "zero":
            mags = [0.0]
        elif args.slice == "pure":
            mags = [mag_max]
        else:
            mags = list(np.linspace(0.0, mag_max, mag_resolution))
        phases = (
            [0.0]
            if args.slice == "zero"
            else list(np.linspace(0.0, 2.0 * np.pi, args.phase_resolution, endpoint=False))
        )
        for mag in mags:
            for phase in phases:
                raw12 = mag * np.exp(1j * phase)
                c12 = complex(raw12.real + 0.0, raw12.imag + 0.0)  # drop negative zeros
                c = CoefficientVector.from_components(float(c11), c12)
                bob = renormalize(alice_prepare(u, c))
                rows.append(
                    {
                        "c11": c.c11,
                        "c12_re": c.c12.real,
                        "c12_im": c.c12.imag,
                        "lazy_fidelity": lazy_fidelity(c),
                        "trace_fidelity": fidelity_trace(c, bob),
                    }
                )
    return rows, columns, True


def _cmd_paut_audit(args) -> tuple[list[dict], tuple[str, ...], bool]:
    tol = args.tol
    u = automatic_preparation()
    p = u.matrix()
    spectrum = hermitian_spectrum(p)
    norm = spectral_norm(p)
    p2 = p @ p
    factor = float((np.trace(p.conj().T @ p2) / np.trace(p.conj().T @ p)).real)
    tmat = transformation_matrix(u).matrix
    t_residual = float(np.max(np.abs(tmat - np.eye(4, dtype=complex))))
    spectrum_residual = float(np.max(np.abs(spectrum - np.array([2.0, 0.0, 0.0, 0.0]))))
    note = (
        "self-adjoint but not a projection: P@P = 2P forces eigenvalues into {0, 2}, "
        "and trace 2 then fixes the spectrum to {2, 0, 0, 0}; a +1/-1 eigenvalue pair "
        "would contradict both identities"
    )
    row = {
        "trace": float(np.trace(p).real),
        "idempotence_factor": factor,
        "spectral_norm": norm,
        "eig1": float(spectrum[0]),
        "eig2": float(spectrum[1]),
        "eig3": float(spectrum[2]),
        "eig4": float(spectrum[3]),
        "transformation_residual": t_residual,
        "spectrum_residual": spectrum_residual,
        "note": note,
    }
    columns = (
        "trace",
        "idempotence_factor",
        "spectral_norm",
        "eig1",
        "eig2",
        "eig3",
        "eig4",
        "transformation_residual",
        "spectrum_residual",
        "note",
    )
    ok = (
        abs(row["trace"] - 2.0) < tol
        and abs(factor - 2.0) < tol
        and abs(norm - 2.0) < tol
        and spectrum_residual < tol
        and t_residual < tol
    )
    return [row], columns, ok


def _cmd_appendix_check(args) -> tuple[list[dict], tuple[str, ...], bool]:
    if args.samples < 1:
        raise ValueError(f"need at least 1 sample, got {args.samples}")
    tol = args.tol
    rng = np.random.default_rng(args.seed)
    cases = [(name, *_resolve_prep_flag(name)) for name in _PREP_CHOICES]
    columns = (
        "prep",
        "samples",
        "max_abs_diff",
        "expected_prenorm_ratio",
        "max_ratio_deviation",
        "within_tol",
    )
    rows: list[dict] = []
    ok = True
    for name, u, bell_index in cases:
        expected_ratio = 1.0 if bell_index is not None else 2.0
        max_diff = 0.0
        max_ratio_dev = 0.0
        for _ in range(args.samples):
            c = sample_mixed_uniform(rng)
            result = compare_conventions(u, c)
            max_diff = max(max_diff, result.max_abs_diff)
            max_ratio_dev = max(max_ratio_dev, abs(result.prenorm_ratio - expected_ratio))
        within = max_diff < tol and max_ratio_dev < max(tol, 1e-12)
        rows.append(
            {
                "prep": name,
                "samples": args.samples,
                "max_abs_diff": max_diff,
                "expected_prenorm_ratio": expected_ratio,
                "max_ratio_deviation": max_ratio_dev,
                "within_tol": within,
            }
        )
        ok = ok and within
    return rows, columns, ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("table", "csv", "json"), default="table",
        help="output format (default: table)",
    )
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument(
        "--seed", type=int, default=DEFAULT_SEED,
        help=f"random seed for sampled commands (default: {DEFAULT_SEED})",
    )

    parser = argparse.ArgumentParser(
        prog="ensemble-teleport",
        description="Audits, sessions and sweeps for density-operator teleportation of qubit ensembles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "bell-audit", parents=[common],
        help="check idempotence, orthogonality, completeness and entanglement of the four Bell projectors",
    )
    p.add_argument("--tol", type=float, default=1e-12, help="residual tolerance (default: 1e-12)")
    p.set_defaults(func=_cmd_bell_audit)

    p = sub.add_parser(
        "teleport", parents=[common],
        help="run one session: coefficients in, receiver state and both fidelity forms out",
    )
    p.add_argument("--c11", type=float, required=True, help="first diagonal coefficient; c22 = 1 - c11")
    p.add_argument("--c12re", type=float, default=0.0, help="real part of c12 (default: 0)")
    p.add_argument("--c12im", type=float, default=0.0, help="imaginary part of c12 (default: 0)")
    p.add_argument("--prep", choices=_PREP_CHOICES, required=True, help="sender preparation")
    p.add_argument(
        "--message", choices=_MESSAGE_CHOICES, default=None,
        help="classical channel use (default: twobits for Bell preparations, preagreed for paut)",
    )
    p.add_argument(
        "--correct", action=argparse.BooleanOptionalAction, default=True,
        help="whether the receiver applies the correction (default: --correct)",
    )
    p.add_argument("--tol", type=float, default=1e-12, help="unused; kept for flag uniformity")
    p.set_defaults(func=_cmd_teleport)

    p = sub.add_parser(
        "sweep", parents=[common],
        help="tabulate lazy and trace fidelities over a coefficient grid",
    )
    p.add_argument("--resolution", type=int, default=51, help="points on the c11 axis (default: 51)")
    p.add_argument(
        "--mag-resolution", type=int, default=None,
        help="points on the |c12| axis (default: same as --resolution)",
    )
    p.add_argument(
        "--phase-resolution", type=int, default=1,
        help="points on the arg(c12) axis over [0, 2pi) (default: 1)",
    )
    p.add_argument(
        "--slice", choices=("grid", "zero", "pure"), default="grid",
        help="grid: full (resolution x mag x phase rows); zero: c12 = 0 (resolution rows); "
        "pure: |c12|^2 = c11*c22 (resolution x phase rows)",
    )
    p.add_argument("--prep", choices=_PREP_CHOICES, default="bell1",
                   help="preparation for the uncorrected trace fidelity column (default: bell1)")
    p.add_argument("--tol", type=float, default=1e-12, help="unused; kept for flag uniformity")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser(
        "paut-audit", parents=[common],
        help="spectrum, norm, squaring factor and coefficient map of the automatic preparation",
    )
    p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance (default: 1e-10)")
    p.set_defaults(func=_cmd_paut_audit)

    p = sub.add_parser(
        "appendix-check", parents=[common],
        help="compare one-sided and two-sided update conventions on random inputs",
    )
    p.add_argument("--samples", type=int, default=100, help="random inputs per preparation (default: 100)")
    p.add_argument("--tol", type=float, default=1e-12, help="agreement tolerance (default: 1e-12)")
    p.set_defaults(func=_cmd_appendix_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, columns, ok = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = _render(rows, columns, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())

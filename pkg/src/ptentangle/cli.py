"""Command-line front end.

Matrix files are plain text::

    # optional comment lines
    dim 2
    1 0  0 0
    0 0  0 0

i.e. ``dim <d>`` followed by ``d`` rows of ``d`` complex entries, each
written as a ``re im`` pair. Numbers are written with 17 significant digits
so files round-trip exactly.

Subsystems to transpose are chosen either with ``--ssys`` (0 = transpose,
1 = leave alone, one entry per subsystem) or with ``--mask`` (1/true =
transpose).

Exit codes: 0 success, 2 usage error, 3 parse/format or I/O error,
4 numerical or contract error (including an invalid state for ``validate``).
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import (
    ContractViolation,
    DimensionSpec,
    NumericalError,
    StructuralError,
    validate_density,
)
from .entanglement import hse, log_negativity, negativity
from .ptranspose import partial_transpose
from .states import werner

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_NUMERIC = 4

SWEEP_HEADER = "w,E_n,E_hs,d_plus_prime,oracle_lower_bound"


class MatrixFormatError(ValueError):
    def __init__(self, message: str, path=None, line: int | None = None, column: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.column = column


@dataclass
class MatrixFile:
    path: Path
    dim: int
    entries: np.ndarray


def parse_matrix(text: str, path=None) -> MatrixFile:
    """Parse the matrix text format; errors carry 1-based line/column."""
    dim = None
    rows: list[np.ndarray] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise MatrixFormatError("expected header 'dim <d>'", path, lineno, 1)
            try:
                dim = int(parts[1])
            except ValueError:
                raise MatrixFormatError(f"bad dimension {parts[1]!r}", path, lineno) from None
            if dim < 1:
                raise MatrixFormatError(f"dimension must be positive, got {dim}", path, lineno)
            continue
        if len(rows) == dim:
            raise MatrixFormatError(f"more than the declared {dim} rows", path, lineno, 1)
        tokens = line.split()
        if len(tokens) != 2 * dim:
            raise MatrixFormatError(
                f"row has {len(tokens)} numbers, expected {2 * dim} (re im pairs)", path, lineno
            )
        values = []
        for col, tok in enumerate(tokens, start=1):
            try:
                x = float(tok)
            except ValueError:
                raise MatrixFormatError(f"not a number: {tok!r}", path, lineno, col) from None
            if not math.isfinite(x):
                raise MatrixFormatError(f"non-finite value {tok!r}", path, lineno, col)
            values.append(x)
        pairs = np.array(values).reshape(dim, 2)
        row = np.empty(dim, dtype=np.complex128)
        row.real, row.imag = pairs[:, 0], pairs[:, 1]
        rows.append(row)
    if dim is None:
        raise MatrixFormatError("missing 'dim <d>' header", path)
    if len(rows) != dim:
        raise MatrixFormatError(f"declared dim {dim} but found {len(rows)} rows", path)
    return MatrixFile(Path(path) if path is not None else None, dim, np.array(rows, dtype=np.complex128))


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text(), path).entries


def format_matrix(m: np.ndarray, comment: str | None = None) -> str:
    m = np.asarray(m, dtype=np.complex128)
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"dim {m.shape[0]}")
    for row in m:
        lines.append("  ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"


def write_matrix(path, m: np.ndarray, comment: str | None = None) -> None:
    Path(path).write_text(format_matrix(m, comment))


def fmt(x: float) -> str:
    """12 significant digits; negative zero printed as 0."""
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _bool_list(text: str) -> list[bool]:
    truthy = {"1": True, "true": True, "t": True, "0": False, "false": False, "f": False}
    try:
        return [truthy[t.strip().lower()] for t in text.split(",")]
    except KeyError:
        raise argparse.ArgumentTypeError(f"expected comma-separated booleans, got {text!r}") from None


def ssys_to_mask(ssys: Sequence[int]) -> list[bool]:
    """Map the 0/1 ``ssys`` convention (0 = transpose) to a boolean mask."""
    bad = [s for s in ssys if s not in (0, 1)]
    if bad:
        raise StructuralError(f"ssys entries must be 0 or 1, got {bad}")
    return [s == 0 for s in ssys]


def _resolve(args) -> tuple[np.ndarray, DimensionSpec, list[bool]]:
    m = read_matrix(args.inp)
    dims = DimensionSpec(args.dims) if args.dims else DimensionSpec((m.shape[0],))
    if dims.total != m.shape[0]:
        raise StructuralError(f"dims {dims.dims} multiply to {dims.total}, matrix has dim {m.shape[0]}")
    if args.mask is not None:
        mask = list(args.mask)
    elif args.ssys is not None:
        mask = ssys_to_mask(args.ssys)
    else:
        raise StructuralError("one of --ssys or --mask is required")
    if len(mask) != dims.nss:
        raise StructuralError(f"mask has {len(mask)} entries but dims has {dims.nss}")
    return m, dims, mask


def cmd_pt(args) -> int:
    m, dims, mask = _resolve(args)
    out = partial_transpose(m, dims, mask)
    flags = ",".join("1" if f else "0" for f in mask)
    write_matrix(args.out, out, f"partial transpose, dims {','.join(map(str, dims))}, mask {flags}")
    return EXIT_OK


def cmd_report(args, stdout=None) -> int:
    stdout = stdout or sys.stdout
    m, dims, mask = _resolve(args)
    pt = partial_transpose(m, dims, mask)
    en = negativity(pt)
    rep = hse(pt, want_css=bool(args.css), dims=dims, mask=mask)
    rows = [
        ("E_n", fmt(en)),
        ("E_ln", fmt(log_negativity(pt))),
        ("E_hs", fmt(rep.e_hs)),
        ("d_plus_prime", str(rep.d_plus_prime)),
        ("xi", fmt(rep.xi)),
        ("min_pt_eigenvalue", fmt(rep.min_eigenvalue)),
        ("oracle_lower_bound", fmt(rep.oracle_lower_bound)),
    ]
    if args.css and rep.e_hs > 0:
        write_matrix(
            args.css,
            rep.css.matrix,
            f"closest separable state candidate; min eigenvalue {rep.css_min_eigenvalue:.17g}",
        )
        rows.append(("css_min_eigenvalue", fmt(rep.css_min_eigenvalue)))
        rows.append(("css_file", str(args.css)))
    if rep.trace_shift:
        rows.append(("warning", "negatives present while positives sum to 1; excess folded into xi"))
    if args.format == "csv":
        stdout.write(",".join(k for k, _ in rows) + "\n")
        stdout.write(",".join(v for _, v in rows) + "\n")
    else:
        for k, v in rows:
            stdout.write(f"{k}: {v}\n")
    return EXIT_OK


def sweep_rows(qubits: int, steps: int) -> list[str]:
    """CSV lines (without header) for the Werner sweep, in w order.

    The partial transpose acts on the first qubit; the remaining qubits form
    a single ``2^(n-1)``-dimensional party.
    """
    dims = DimensionSpec((2, 2 ** (qubits - 1)))
    mask = (True, False)
    lines = []
    for w in np.linspace(0.0, 1.0, steps):
        pt = partial_transpose(werner(qubits, float(w)).matrix, dims, mask)
        rep = hse(pt)
        lines.append(
            ",".join(
                [fmt(w), fmt(negativity(pt)), fmt(rep.e_hs), str(rep.d_plus_prime), fmt(rep.oracle_lower_bound)]
            )
        )
    return lines


def cmd_werner_sweep(args, stdout=None) -> int:
    if args.steps < 2:
        raise StructuralError("--steps must be at least 2")
    text = "\n".join([SWEEP_HEADER, *sweep_rows(args.qubits, args.steps)]) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        (stdout or sys.stdout).write(text)
    return EXIT_OK


def cmd_validate(args, stdout=None) -> int:
    stdout = stdout or sys.stdout
    m = read_matrix(args.inp)
    problems = validate_density(m, check_psd=not args.no_psd, dims=args.dims)
    if not problems:
        stdout.write("valid\n")
        return EXIT_OK
    for p in problems:
        stdout.write(f"{p}\n")
    return EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ptentangle", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def state_args(sp, need_selection=True):
        sp.add_argument("--in", dest="inp", required=True, help="input matrix file")
        sp.add_argument("--dims", type=_int_list, help="subsystem dimensions, e.g. 2,2")
        if need_selection:
            g = sp.add_mutually_exclusive_group(required=True)
            g.add_argument("--ssys", type=_int_list, help="0 = transpose, 1 = keep, per subsystem")
            g.add_argument("--mask", type=_bool_list, help="true = transpose, per subsystem")

    sp = sub.add_parser("pt", help="write the partial transpose of a matrix file")
    state_args(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_pt)

    sp = sub.add_parser("report", help="negativity, log-negativity and HS entanglement")
    state_args(sp)
    sp.add_argument("--css", metavar="PATH", help="write the closest separable state here (only if E_hs > 0)")
    sp.add_argument("--format", choices=("text", "csv"), default="text")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("werner-sweep", help="E_n and E_hs of Werner states on an even w grid")
    sp.add_argument("--qubits", type=int, choices=(2, 3), required=True)
    sp.add_argument("--steps", type=int, default=101)
    sp.add_argument("--out", help="CSV path (default: stdout)")
    sp.set_defaults(func=cmd_werner_sweep)

    sp = sub.add_parser("validate", help="check Hermiticity, unit trace and positivity")
    state_args(sp, need_selection=False)
    sp.add_argument("--no-psd", action="store_true", help="skip the positivity check")
    sp.set_defaults(func=cmd_validate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StructuralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (ContractViolation, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except IndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

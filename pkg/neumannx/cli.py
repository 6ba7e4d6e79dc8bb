"""Command line interface of neumannx.

Exit codes are 0 on success, 1 for usage errors, 2 for poles and boundary
failures, and 3 for insufficient resolution, exhausted budgets and failed
verification thresholds.
"""
from __future__ import annotations

import argparse
import io
import logging
import math
import sys
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
import pandas as pd

from neumannx.config import Config
from neumannx.constants import EXCLUSION_RADIUS, SCHEMA_VERSION
from neumannx.exceptions import (
    InsufficientResolution,
    NeumannxError,
    PoleAt,
    ProjectionWarning,
    QuadratureNotConverged,
    SubdivisionBudgetExceeded,
    ZeroOnBoundary,
)
from neumannx.quadrature.core import QuadratureSpec
from neumannx.util.util import dump_json, format_complex, parse_complex, validate_report

__all__ = ["RunConfig", "parse_s_values", "build_parser", "main"]

_log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_POLE = 2
EXIT_RESOLUTION = 3

B0_COLUMNS = [
    "s",
    "B0",
    "B0_im",
    "lower_theory",
    "upper_theory",
    "within_theory",
    "certified",
    "tail_M",
    "wallclock_ms",
    "status",
]


class UsageError(Exception):
    """Invalid command line input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def parse_s_values(text: str) -> list[float]:
    """Parse a single order ``s`` or an inclusive range ``start:stop:step``.

    Examples
    --------
    >>> parse_s_values("0.1:0.3:0.1")
    [0.1, 0.2, 0.3]

    """
    parts = text.split(":")
    try:
        numbers = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"Cannot parse s values from '{text}'.") from None
    if len(numbers) == 1:
        values = numbers
    elif len(numbers) == 3:
        start, stop, step = numbers
        if not step > 0:
            raise UsageError(f"The step of an s range must be positive, got {step}.")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        if count < 1:
            raise UsageError(f"The s range '{text}' is empty.")
        values = [round(start + k * step, 12) for k in range(count)]
    else:
        raise UsageError(f"Expected 's' or 'start:stop:step', got '{text}'.")
    for s in values:
        if not 0.0 < s < 1.0:
            raise UsageError(f"Orders must lie strictly inside (0, 1), got {s}.")
    return values


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by all commands.

    Runs are deterministic: nothing is random and sweep rows are sorted by ``s``.
    """

    s_values: tuple[float, ...]
    rel_tol: float = None
    abs_tol: float = None
    quadrature_limit: int = None
    profile: str = "default"
    output_format: str = "csv"
    output: Path = None
    workers: int = None
    timing: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        """Build the configuration from parsed arguments."""
        s_text = getattr(args, "s", None)
        return cls(
            s_values=tuple(parse_s_values(s_text)) if s_text else (),
            rel_tol=args.rel_tol,
            abs_tol=args.abs_tol,
            quadrature_limit=args.quadrature_limit,
            profile=args.profile,
            output_format=getattr(args, "format", "csv"),
            output=getattr(args, "output", None),
            workers=getattr(args, "workers", None),
            timing=getattr(args, "timing", False),
        )

    @property
    def s(self) -> float:
        """Get the single order of commands that take one ``s``."""
        if len(self.s_values) != 1:
            raise UsageError("This command takes a single value of --s.")
        return self.s_values[0]

    def quadrature_spec(self) -> QuadratureSpec:
        """Get the selected profile with the command line overrides applied."""
        try:
            spec = Config.quadrature_spec(self.profile)
        except KeyError:
            raise UsageError(f"Unknown quadrature profile '{self.profile}'.") from None
        overrides = dict(
            rel_tol=self.rel_tol, abs_tol=self.abs_tol, limit=self.quadrature_limit
        )
        return replace(spec, **{k: v for k, v in overrides.items() if v is not None})


def _write(text: str, path: Path = None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# commands -----------------------------------------------------------------------------


def cmd_symbol(args, config: RunConfig) -> int:
    """Print a symbol value with 15 significant digits and its pole flag."""
    from neumannx import symbols

    s = config.s
    beta = parse_complex(args.beta)
    is_pole = False
    try:
        if args.which == "f":
            result = symbols.f_symbol(s, beta, form=args.form)
            value, is_pole = result.value, result.is_pole
        elif args.which in ("f1", "f2"):
            f1, f2 = symbols.f1_f2_symbols(s, beta)
            result = f1 if args.which == "f1" else f2
            value, is_pole = result.value, result.is_pole
        elif args.which == "g":
            value = symbols.g_aux(s, beta)
        elif args.which == "F":
            value = symbols.F_entire(s, beta)
        else:
            value = symbols.c_beta(s, beta)
    except PoleAt:
        is_pole = True
        value = complex(math.inf, 0.0)

    value = complex(value)
    if is_pole:
        print(f"{args.which}(s={s:g}, β={format_complex(beta)}) = ∞")
        print("pole=true")
        return EXIT_POLE
    print(format_complex(value))
    print("pole=false")
    if value == 0:
        print("note: exact zero")
    return EXIT_OK


def _row(row, timing: bool) -> dict:
    record = dict.fromkeys(B0_COLUMNS)
    record["s"] = row.s
    if row.result is not None:
        record.update(row.result.as_row())
        for key in ("within_theory", "certified"):
            record[key] = "true" if record[key] else "false"
    if timing:
        record["wallclock_ms"] = row.wallclock_ms
    record["status"] = row.status
    return record


def cmd_b0_curve(args, config: RunConfig) -> int:
    """Write one CSV row per order with B₀ and the theory interval."""
    from neumannx.roots import b0_curve

    for s in config.s_values:
        if not 0.02 < s < 0.98:
            raise UsageError(f"b0-curve needs orders in (0.02, 0.98), got {s}.")
    workers = config.workers if config.workers is not None else Config.workers()
    rows = b0_curve(config.s_values, workers=workers)
    records = [_row(row, config.timing) for row in rows]
    for record in records:
        validate_report(record, "b0_curve")
    frame = pd.DataFrame(records, columns=B0_COLUMNS)

    buffer = io.StringIO()
    buffer.write(f"# schema_version={SCHEMA_VERSION}\n")
    frame.to_csv(buffer, float_format="%.15g", index=False, lineterminator="\n")
    _write(buffer.getvalue(), config.output)
    for row in rows:
        if row.status != "ok":
            _log.warning("B0(s=%g) failed: %s", row.s, row.status)
    return EXIT_OK


def cmd_certify(args, config: RunConfig) -> int:
    """Write a JSON certificate for the zeros of ``F(s, ·)`` in a window."""
    from neumannx.roots import StripWindow, tail_bound_M, winding_certificate

    s = config.s
    exclusions = ()
    if not args.no_exclusions:
        exclusions = ((0.0, EXCLUSION_RADIUS), (2.0 * s - 1.0, EXCLUSION_RADIUS))
    im_max = args.im_max
    if im_max is None:
        re_max = min(args.re_max, 2.0 * s + 1.0 - 1e-6)
        im_max = tail_bound_M(s, re_max=re_max if re_max > 0 else None)
    try:
        window = StripWindow(args.re_min, args.re_max, im_max, args.im_min, exclusions)
    except ValueError as err:
        raise UsageError(str(err)) from None

    report = dict(
        s=s,
        window=window.to_dict(),
        exclusions=[dict(center=c, radius=r) for c, r in exclusions],
    )
    code = EXIT_OK
    try:
        certificate = winding_certificate(s, window)
    except ZeroOnBoundary as err:
        report.update(winding=None, boundary_samples=None, verdict="BOUNDARY_FAILURE")
        report["message"] = str(err)
        code = EXIT_POLE
    else:
        n = certificate.winding
        report.update(
            winding=n,
            boundary_samples=certificate.boundary_samples,
            verdict="ZERO_FREE" if n == 0 else f"CONTAINS_ZEROS({n})",
        )
    validate_report(report, "certificate")
    _write(dump_json(report), config.output)
    return code


def _check(name: str, defect: float, threshold: float) -> dict:
    defect = float(defect)
    return dict(
        name=name,
        defect=defect,
        threshold=threshold,
        passed=bool(np.isfinite(defect) and defect <= threshold),
    )


def _symbol_checks(s: float, q: QuadratureSpec) -> list[dict]:
    from neumannx import symbols

    order = symbols.as_order(s)
    beta = complex(0.6 * s, 0.2)
    product = symbols.f_symbol(order, beta, form="product").value
    difference = symbols.f_symbol(order, beta, form="difference").value
    g = complex(symbols.g_aux(order, beta))
    F = complex(symbols.F_entire(order, beta))
    relation = F + (2 * s - beta) * order.sin_pi_s * g
    return [
        _check("f_trivial_zero_0", abs(symbols.f_symbol(order, 0.0).value), 1e-14),
        _check(
            "f_trivial_zero_2s-1",
            abs(symbols.f_symbol(order, 2 * s - 1.0).value),
            1e-14,
        ),
        _check("f_forms_agree", abs(product - difference) / abs(product), 1e-10),
        _check(
            "F_at_2s",
            abs(complex(symbols.F_entire(order, 2 * s)) + 2 * s * order.sin_pi_s),
            1e-12,
        ),
        _check("F_g_relation", abs(relation) / max(1.0, abs(F)), 1e-10),
    ]


def _kernel_checks(s: float, q: QuadratureSpec) -> list[dict]:
    from neumannx import quadrature, symbols

    order = symbols.as_order(s)
    row = quadrature.kernel_k_row_integral(order, 1.0, q)
    exact_row = order.c_1s / (2 * s)
    checks = [_check("kernel_row_integral", abs(row - exact_row) / exact_row, 1e-6)]
    for label, beta in (("real", 0.6 * s), ("complex", complex(0.5 * s, 0.3))):
        value = quadrature.apply_L_power(order, beta, 1.0, q)
        exact = symbols.f_symbol(order, beta).value
        checks.append(
            _check(f"L_power_{label}", abs(value - exact) / abs(exact), 1e-5)
        )
    value = quadrature.apply_fractional_laplacian_power(order, 0.6 * s, 1.0, q)
    exact = symbols.fractional_laplacian_symbol(order, 0.6 * s)
    checks.append(_check("fL_plus_power", abs(value - exact) / abs(exact), 1e-5))
    return checks


def _mellin_checks(s: float, q: QuadratureSpec) -> list[dict]:
    from neumannx import mellin

    phi = mellin.gaussian_profile()
    z0 = complex(0.5, 0.7)
    field = mellin.InverseMellinField(phi)
    round_trip = mellin.mellin_transform(field, z0, q)
    exact = complex(phi(z0))
    shifted = abs(
        mellin.inverse_mellin(phi, 1.8, 0.3, q) - mellin.inverse_mellin(phi, 1.8, 0.7, q)
    )
    lower = max(0.0, 2 * s - 1.0) + 0.05
    upper = 2 * s - 0.05
    return [
        _check("inversion_round_trip", abs(round_trip - exact) / abs(exact), 1e-6),
        _check("contour_independence", shifted, 1e-7),
        _check("dirac_pairing", mellin.dirac_pairing_check(0.0, 0, phi, q), 1e-6),
        _check(
            "mellin_magic",
            mellin.mellin_magic_check(s, phi, 0.5 * (lower + upper), q),
            1e-2,
        ),
    ]


_SUITES = {
    "symbols": [_symbol_checks],
    "kernel": [_kernel_checks],
    "mellin": [_mellin_checks],
    "all": [_symbol_checks, _kernel_checks, _mellin_checks],
}


def cmd_verify(args, config: RunConfig) -> int:
    """Run the oracle comparisons of a suite and write a JSON report."""
    s = config.s
    q = config.quadrature_spec()
    checks = []
    for suite in _SUITES[args.suite]:
        checks.extend(suite(s, q))
    report = dict(
        suite=args.suite,
        s=s,
        profile=config.profile,
        checks=checks,
        passed=all(c["passed"] for c in checks),
    )
    validate_report(report, "verify_report")
    _write(dump_json(report), config.output)
    return EXIT_OK if report["passed"] else EXIT_RESOLUTION


def _source(args):
    from neumannx.solver import SOURCE_PRESETS, SourceExpression

    if args.preset == "custom-file":
        if args.source_file is None:
            raise UsageError("--preset custom-file needs --source-file.")
        try:
            return SourceExpression(Path(args.source_file).read_text().strip())
        except (OSError, ValueError, TypeError) as err:
            raise UsageError(f"Invalid source file: {err}") from None
    return SOURCE_PRESETS[args.preset]


def _optional(func, *args):
    try:
        return func(*args)
    except InsufficientResolution as err:
        _log.info("Skipping boundary diagnostic: %s", err)
        return None


def cmd_solve(args, config: RunConfig) -> int:
    """Solve the Neumann problem and report the boundary diagnostics."""
    from neumannx.solver import (
        GradedMesh,
        fit_boundary_exponent,
        normal_derivative_check,
        solve_neumann,
    )

    s = config.s
    source = _source(args)
    try:
        mesh = GradedMesh.create(args.n, args.grading)
    except ValueError as err:
        raise UsageError(str(err)) from None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ProjectionWarning)
        field = solve_neumann(s, source, mesh, config.quadrature_spec())

    fits = {e: _optional(fit_boundary_exponent, field, e) for e in ("left", "right")}
    slopes = {e: _optional(normal_derivative_check, field, e) for e in ("left", "right")}
    report = dict(
        field.diagnostics,
        source=args.preset,
        fitted_exponent_left=fits["left"].exponent if fits["left"] else None,
        fitted_exponent_right=fits["right"].exponent if fits["right"] else None,
        fits={e: fit.to_dict() if fit else None for e, fit in fits.items()},
        boundary_slope=slopes["left"],
        boundary_slope_right=slopes["right"],
        warnings=list(field.warnings),
    )
    if args.output_field is not None:
        field.to_dataframe().to_csv(
            args.output_field, float_format="%.15g", index=False, lineterminator="\n"
        )
    validate_report(report, "solve_diagnostics")
    _write(dump_json(report), args.diagnostics)
    return EXIT_OK


# parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one sub-command per operation."""
    parser = _Parser(prog="neumannx", description=__doc__.splitlines()[0])
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Log progress (-vv: debug)."
    )
    parser.add_argument(
        "--profile", default="default", help="Quadrature profile (default, fast, fine)."
    )
    parser.add_argument("--rel-tol", type=float, default=None, dest="rel_tol")
    parser.add_argument("--abs-tol", type=float, default=None, dest="abs_tol")
    parser.add_argument(
        "--quadrature-limit", type=int, default=None, dest="quadrature_limit"
    )
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True

    symbol = commands.add_parser("symbol", help="Evaluate a symbol.")
    symbol.add_argument("--s", required=True)
    symbol.add_argument("--beta", required=True, help="Complex number 'a+bi'.")
    symbol.add_argument("--which", choices=["f", "g", "F", "f1", "f2", "C"], default="f")
    symbol.add_argument(
        "--form", choices=["product", "difference"], default="product"
    )
    symbol.set_defaults(handler=cmd_symbol)

    curve = commands.add_parser("b0-curve", help="Sweep B0 over a range of orders.")
    curve.add_argument("--s", required=True, help="'s' or 'start:stop:step'.")
    curve.add_argument("--output", type=Path, default=None)
    curve.add_argument("--workers", type=int, default=None)
    curve.add_argument("--timing", action="store_true", help="Fill wallclock_ms.")
    curve.set_defaults(handler=cmd_b0_curve)

    certify = commands.add_parser("certify", help="Count zeros of F in a window.")
    certify.add_argument("--s", required=True)
    certify.add_argument("--re-min", type=float, required=True, dest="re_min")
    certify.add_argument("--re-max", type=float, required=True, dest="re_max")
    certify.add_argument("--im-min", type=float, default=0.0, dest="im_min")
    certify.add_argument("--im-max", type=float, default=None, dest="im_max")
    certify.add_argument("--no-exclusions", action="store_true", dest="no_exclusions")
    certify.add_argument("--output", type=Path, default=None)
    certify.set_defaults(handler=cmd_certify)

    verify = commands.add_parser("verify", help="Run oracle comparisons.")
    verify.add_argument("--suite", choices=sorted(_SUITES), default="all")
    verify.add_argument("--s", default="0.5")
    verify.add_argument("--output", type=Path, default=None)
    verify.set_defaults(handler=cmd_verify)

    solve = commands.add_parser("solve", help="Solve the Neumann problem on (0, 1).")
    solve.add_argument("--s", required=True)
    solve.add_argument(
        "--preset", choices=["linear", "sine", "custom-file"], default="linear"
    )
    solve.add_argument("--source-file", default=None, dest="source_file")
    solve.add_argument("--n", type=int, default=256)
    solve.add_argument("--grading", type=float, default=3.0)
    solve.add_argument("--output-field", type=Path, default=None, dest="output_field")
    solve.add_argument("--diagnostics", type=Path, default=None)
    solve.set_defaults(handler=cmd_solve)
    return parser


def _exit_code(err: Exception) -> int:
    if isinstance(err, (PoleAt, ZeroOnBoundary)):
        return EXIT_POLE
    if isinstance(
        err,
        (InsufficientResolution, SubdivisionBudgetExceeded, QuadratureNotConverged),
    ):
        return EXIT_RESOLUTION
    return EXIT_RESOLUTION if isinstance(err, NeumannxError) else EXIT_USAGE


def main(argv: list[str] = None) -> int:
    """Run the command line interface.

    Examples
    --------
    >>> main(["symbol", "--s", "0.5", "--beta", "0", "--which", "f"])
    0+0i
    pole=false
    note: exact zero
    0

    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verbose:
            logging.basicConfig(
                level=logging.DEBUG if args.verbose > 1 else logging.INFO,
                format="%(levelname)s %(name)s: %(message)s",
            )
        config = RunConfig.from_args(args)
        return args.handler(args, config)
    except UsageError as err:
        print(err, file=sys.stderr)
        return EXIT_USAGE
    except (NeumannxError, ValueError) as err:
        print(f"neumannx: {type(err).__name__}: {err}", file=sys.stderr)
        return _exit_code(err)


if __name__ == "__main__":
    sys.exit(main())

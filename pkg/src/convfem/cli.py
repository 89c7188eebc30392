"""Command-line front end: single runs, table reproduction, stability reports.

Subcommands
-----------
solve      run one configuration and emit a CSV of nodal values
tables     regenerate one of the three result tables as aligned text
stability  report the critical step and, given a step, the verdict

Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.
CSV files are deterministic: header ``time,fem,onestep,exact,err_fem,
err_onestep``, 17 significant digits, '.' decimal point, LF line endings,
omitted columns left empty. Table cells are printed to 4 decimals with
banker's rounding.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
import warnings
from dataclasses import dataclass, fields

from .exact import exact_solution
from .marching import StabilityWarning, amplification_eigenvalues, march, stability_limit
from .model import Forcing, OscillatorProblem, SinusoidForcing, ZERO, uniform_mesh
from .solver import SingularSystemError, fem_trajectory

__all__ = ["RunConfig", "run_solve", "run_tables", "run_stability", "main", "entry"]

_CSV_HEADER = "time,fem,onestep,exact,err_fem,err_onestep"

# Shared constants of the published experiments.
_TABLE_TAUS = (0.1, 0.05, 0.025, 0.02, 0.0125, 0.01)
_TABLE_TIMES = tuple(range(1, 11))
_TABLE_HORIZON = 10.0
_TABLE3_TAUS = (0.5, 0.01)
_TABLE3_SCALES = (1e14, 1e12)


class _CliError(Exception):
    """Usage or configuration problem; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


@dataclass
class RunConfig:
    """One solve run. Exactly one of tau (step) and n (element count)."""

    m: float | None = None
    k: float | None = None
    u0: float = 0.0
    v0: float = 0.0
    horizon: float | None = None
    tau: float | None = None
    n: int | None = None
    forcing: str = "none"
    scheme: str = "both"
    out: str | None = None
    emit_exact: bool = False


def _parse_forcing(spec: str) -> Forcing:
    if spec == "none":
        return ZERO
    if spec.startswith("sin:"):
        body = spec[len("sin:") :]
        parts = body.split(",")
        if len(parts) != 2:
            raise _CliError("forcing grammar is 'none' or 'sin:F0,OMEGA'")
        try:
            amplitude, frequency = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise _CliError(f"bad forcing numbers in {spec!r}") from exc
        try:
            return SinusoidForcing(amplitude, frequency)
        except ValueError as exc:
            raise _CliError(str(exc)) from exc
    raise _CliError(f"unknown forcing {spec!r}; use 'none' or 'sin:F0,OMEGA'")


def _resolve_steps(config: RunConfig) -> tuple[int, float]:
    """Element count and step consistent with the horizon."""
    if (config.tau is None) == (config.n is None):
        raise _CliError("give exactly one of --tau and --n")
    horizon = config.horizon
    if config.n is not None:
        if int(config.n) != config.n or config.n < 1:
            raise _CliError("element count must be a positive integer")
        return int(config.n), horizon / config.n
    tau = config.tau
    if not tau > 0.0:
        raise _CliError("step must be positive")
    count = round(horizon / tau)
    if count < 1 or abs(count * tau - horizon) > 1e-9 * max(1.0, horizon):
        raise _CliError("step must divide the horizon into whole elements")
    return count, tau


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_text(path: str | None, text: str):
    """Atomic write (temp file then rename); None writes to stdout."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".convfem-")
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def run_solve(config: RunConfig) -> int:
    """Execute one run and emit the CSV."""
    for name in ("m", "k", "horizon"):
        if getattr(config, name) is None:
            raise _CliError(f"missing required parameter {name!r}")
    if config.scheme not in ("fem", "onestep", "both"):
        raise _CliError("scheme must be fem, onestep or both")
    forcing = _parse_forcing(config.forcing)
    try:
        problem = OscillatorProblem(
            mass=config.m,
            stiffness=config.k,
            initial_displacement=config.u0,
            initial_velocity=config.v0,
            horizon=config.horizon,
            forcing=forcing,
        )
    except ValueError as exc:
        raise _CliError(str(exc)) from exc
    count, tau = _resolve_steps(config)

    fem = None
    onestep = None
    if config.scheme in ("fem", "both"):
        fem = fem_trajectory(problem, uniform_mesh(problem.horizon, count))
    if config.scheme in ("onestep", "both"):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", StabilityWarning)
            onestep = march(problem, tau, count)
        for item in caught:
            if issubclass(item.category, StabilityWarning):
                print(f"warning: {item.message}", file=sys.stderr)

    times = fem.times if fem is not None else onestep.times
    reference = exact_solution(problem, times) if config.emit_exact else None

    lines = [_CSV_HEADER]
    for i, t in enumerate(times):
        fem_txt = _fmt(float(fem.displacements[i])) if fem is not None else ""
        one_txt = _fmt(float(onestep.displacements[i])) if onestep is not None else ""
        exact_txt = err_f = err_o = ""
        if reference is not None:
            exact_txt = _fmt(float(reference[i]))
            if fem is not None:
                err_f = _fmt(float(fem.displacements[i] - reference[i]))
            if onestep is not None:
                err_o = _fmt(float(onestep.displacements[i] - reference[i]))
        lines.append(f"{_fmt(float(t))},{fem_txt},{one_txt},{exact_txt},{err_f},{err_o}")
    _write_text(config.out, "\n".join(lines) + "\n")
    return 0


def _table_problem(forced: bool) -> OscillatorProblem:
    if forced:
        return OscillatorProblem(
            mass=1.0,
            stiffness=9.0,
            initial_displacement=0.0,
            initial_velocity=0.0,
            horizon=_TABLE_HORIZON,
            forcing=SinusoidForcing(5.0, 3.6),
        )
    return OscillatorProblem(
        mass=1.0,
        stiffness=9.0,
        initial_displacement=0.0,
        initial_velocity=2.0,
        horizon=_TABLE_HORIZON,
    )


def _scheme_values(problem: OscillatorProblem, tau: float):
    """FEM and one-step nodal values at the whole-number times."""
    count = round(_TABLE_HORIZON / tau)
    fem = fem_trajectory(problem, uniform_mesh(_TABLE_HORIZON, count))
    one = march(problem, tau, count)
    rows = [round(t / tau) for t in _TABLE_TIMES]
    return (
        [float(fem.displacements[i]) for i in rows],
        [float(one.displacements[i]) for i in rows],
    )


def run_tables(which: int, out: str | None = None) -> int:
    """Regenerate table 1 (free), 2 (forced) or 3 (scheme difference)."""
    if which not in (1, 2, 3):
        raise _CliError("table id must be 1, 2 or 3")
    buffer = io.StringIO()
    if which in (1, 2):
        problem = _table_problem(forced=which == 2)
        title = "free vibration" if which == 1 else "forced vibration (f0=5, omega=3.6)"
        buffer.write(f"Nodal displacement by time step, {title}\n")
        buffer.write("FEM and one-step values agree at this precision\n")
        header = "time" + "".join(f"{'tau=' + format(tau, 'g'):>11}" for tau in _TABLE_TAUS)
        buffer.write(header + "      exact\n")
        columns = []
        for tau in _TABLE_TAUS:
            fem_vals, one_vals = _scheme_values(problem, tau)
            for f_val, o_val in zip(fem_vals, one_vals):
                if f"{f_val:.4f}" != f"{o_val:.4f}":  # pragma: no cover
                    print(
                        f"warning: schemes disagree at 4 decimals for tau={tau}",
                        file=sys.stderr,
                    )
            columns.append(fem_vals)
        reference = [exact_solution(problem, float(t)) for t in _TABLE_TIMES]
        for r, t in enumerate(_TABLE_TIMES):
            cells = "".join(f"{col[r]:>11.4f}" for col in columns)
            buffer.write(f"{t:>4}{cells}{reference[r]:>11.4f}\n")
    else:
        problem = _table_problem(forced=True)
        buffer.write("FEM (F) versus one-step (O), forced vibration (f0=5, omega=3.6)\n")
        for tau, scale in zip(_TABLE3_TAUS, _TABLE3_SCALES):
            fem_vals, one_vals = _scheme_values(problem, tau)
            buffer.write(f"tau={tau:g}  (D = F - O, scaled by {scale:.0e})\n")
            buffer.write("time          F          O          D\n")
            for r, t in enumerate(_TABLE_TIMES):
                diff = (fem_vals[r] - one_vals[r]) * scale
                buffer.write(
                    f"{t:>4}{fem_vals[r]:>11.4f}{one_vals[r]:>11.4f}{diff:>11.4f}\n"
                )
    _write_text(out, buffer.getvalue())
    return 0


def run_stability(m: float, k: float, tau: float | None = None) -> int:
    """Print the critical step and, when a step is given, the verdict."""
    if not (math.isfinite(m) and m > 0.0 and math.isfinite(k) and k > 0.0):
        raise _CliError("m and k must be positive")
    critical = stability_limit(m, k)
    period = 2.0 * math.pi / math.sqrt(k / m)
    print(f"critical tau: {critical:.6f}")
    print(f"critical tau / period: {critical / period:.4f}")
    if tau is not None:
        if not tau > 0.0:
            raise _CliError("tau must be positive")
        lam1, lam2 = amplification_eigenvalues(m, k, tau)
        verdict = "STABLE" if tau < critical else "UNSTABLE"
        print(f"tau: {tau:.6f}")
        print(f"eigenvalues: {lam1:.6f} and {lam2:.6f}")
        print(f"|lambda|: {abs(lam1):.6f}, {abs(lam2):.6f}")
        print(f"verdict: {verdict}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="convfem", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one configuration and emit CSV")
    solve.add_argument("--m", type=float, default=None, help="mass")
    solve.add_argument("--k", type=float, default=None, help="stiffness")
    solve.add_argument("--u0", type=float, default=None, help="initial displacement")
    solve.add_argument("--v0", type=float, default=None, help="initial velocity")
    solve.add_argument("--t-end", type=float, default=None, dest="horizon", help="final time")
    solve.add_argument("--tau", type=float, default=None, help="time step")
    solve.add_argument("--n", type=int, default=None, help="element count")
    solve.add_argument("--forcing", default=None, help="'none' or 'sin:F0,OMEGA'")
    solve.add_argument("--scheme", choices=("fem", "onestep", "both"), default=None)
    solve.add_argument("--out", default=None, help="CSV path (default stdout)")
    solve.add_argument(
        "--exact", dest="emit_exact", action="store_const", const=True, default=None,
        help="add the closed-form column and signed errors",
    )
    solve.add_argument("--config", default=None, help="JSON file with RunConfig fields")

    tables = sub.add_parser("tables", help="regenerate a result table")
    tables.add_argument("which", type=int, help="table id: 1, 2 or 3")
    tables.add_argument("--out", default=None, help="output path (default stdout)")

    stability = sub.add_parser("stability", help="stability report")
    stability.add_argument("--m", type=float, required=True)
    stability.add_argument("--k", type=float, required=True)
    stability.add_argument("--tau", type=float, default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    valid = {f.name for f in fields(RunConfig)}
    if args.config is not None:
        try:
            with open(args.config) as handle:
                data = json.load(handle)
        except OSError as exc:
            raise _CliError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise _CliError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise _CliError("config file must hold a JSON object")
        for key, value in data.items():
            if key not in valid:
                raise _CliError(f"unknown config key {key!r}")
            setattr(config, key, value)
    # Command-line flags win over config-file values.
    for name in valid:
        value = getattr(args, name, None)
        if value is not None:
            setattr(config, name, value)
    return config


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return run_solve(_config_from_args(args))
        if args.command == "tables":
            return run_tables(args.which, args.out)
        return run_stability(args.m, args.k, args.tau)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SingularSystemError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry():  # pragma: no cover
    sys.exit(main())

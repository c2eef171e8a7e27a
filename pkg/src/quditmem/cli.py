"""Command-line interface.

Subcommands
-----------
curve      mutual information vs memory for product, maximally entangled,
           and optionally one custom input state
crossover  locate the memory value where the entangled-minus-product
           difference changes sign
sweep      crossover search over dimensions x marginal strengths x nu values
validate   run the built-in oracle and invariant suite

Options may come from flags, from a plain ``key = value`` config file
(``--config``), or both; flags win over file values, file values win over
built-in defaults. Output is deterministic: the same configuration produces
byte-identical text, whatever the worker count.

Exit codes: 0 success, 1 a check failed or the crossover was not unique,
2 bad usage or configuration.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from argparse import ArgumentParser
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import __version__
from .channels import ChannelSpec, Model
from .crossover import MultipleCrossingsError, find_crossover, sweep_point
from .entropy import mutual_information_ansatz
from .selfcheck import DEFAULT_SEED, run_validation
from .states import AnsatzParams, interpolating_params, max_entangled_params, product_params

WORKERS_ENV = "QUDITMEM_WORKERS"


class CliError(Exception):
    """Configuration or usage problem; the message names the offending field."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved configuration for one CLI invocation.

    Every run echoes all fields into the output metadata, so the output
    records how to reproduce it.
    """

    command: str
    model: Model | None = None
    d: int | None = None
    eta: float | None = None
    nu: float = 0.0
    mu_points: int = 101
    mu_list: tuple[float, ...] | None = None
    state: str | None = None
    alphas: tuple[float, ...] | None = None
    phis: tuple[float, ...] | None = None
    offset: int = 0
    dims: tuple[int, ...] | None = None
    etas: tuple[float, ...] | None = None
    nus: tuple[float, ...] = (0.0,)
    grid_n: int = 64
    tol: float = 1e-8
    method: str = "block"
    workers: int = 1
    d_max: int = 4
    seed: int = DEFAULT_SEED
    format: str = "csv"
    output: str | None = None


def _as_int(name: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{name}={raw!r} invalid: expected an integer") from None


def _as_float(name: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise CliError(f"{name}={raw!r} invalid: expected a number") from None


def _as_float_list(name: str, raw: str) -> tuple[float, ...]:
    parts = [part.strip() for part in raw.split(",") if part.strip()]
    if not parts:
        raise CliError(f"{name}={raw!r} invalid: expected a comma-separated list of numbers")
    return tuple(_as_float(name, part) for part in parts)


def _as_int_list(name: str, raw: str) -> tuple[int, ...]:
    parts = [part.strip() for part in raw.split(",") if part.strip()]
    if not parts:
        raise CliError(f"{name}={raw!r} invalid: expected a comma-separated list of integers")
    return tuple(_as_int(name, part) for part in parts)


def _as_model(name: str, raw: str) -> Model:
    try:
        return Model(raw)
    except ValueError:
        valid = ", ".join(m.value for m in Model)
        raise CliError(f"{name}={raw!r} invalid: valid models are {valid}") from None


def _as_str(name: str, raw: str) -> str:
    return raw


# field name -> coercer from raw string (shared by flags and config files)
_COERCERS = {
    "model": _as_model,
    "d": _as_int,
    "eta": _as_float,
    "nu": _as_float,
    "mu_points": _as_int,
    "mu_list": _as_float_list,
    "state": _as_str,
    "alphas": _as_float_list,
    "phis": _as_float_list,
    "offset": _as_int,
    "dims": _as_int_list,
    "etas": _as_float_list,
    "nus": _as_float_list,
    "grid_n": _as_int,
    "tol": _as_float,
    "method": _as_str,
    "workers": _as_int,
    "d_max": _as_int,
    "seed": _as_int,
    "format": _as_str,
    "output": _as_str,
}


def _read_config_file(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise CliError(f"config={path!r} unreadable: {exc}") from None
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, sep, raw = stripped.partition("=")
        if not sep:
            raise CliError(f"config={path!r} line {lineno}: expected 'key = value', got {line.strip()!r}")
        values[key.strip().replace("-", "_")] = raw.strip()
    return values


def _build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="quditmem", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"quditmem {__version__}")
    sub = parser.add_subparsers(dest="command")

    def add_common(p: ArgumentParser) -> None:
        p.add_argument("--config", help="key = value config file; flags override it")
        p.add_argument("--output", help="write to this path instead of stdout")
        p.add_argument("--format", help="output format: csv or json (validate also: text)")
        p.add_argument("--workers", help=f"parallel processes (default ${WORKERS_ENV} or 1)")

    p_curve = sub.add_parser("curve", help="mutual information vs memory table")
    p_curve.add_argument("--model", help="channel family: qd or qcd")
    p_curve.add_argument("--d", help="qudit dimension (>= 2)")
    p_curve.add_argument("--eta", help="marginal strength")
    p_curve.add_argument("--nu", help="anticorrelation weight in [0, 1] (default 0)")
    p_curve.add_argument("--mu-points", dest="mu_points", help="uniform memory grid size (default 101)")
    p_curve.add_argument("--mu-list", dest="mu_list", help="explicit memory values, comma separated")
    p_curve.add_argument("--state", help="extra input state: product, max-entangled, or alpha=<radians>")
    p_curve.add_argument("--alphas", help="extra input state: comma-separated amplitudes (squares sum to 1)")
    p_curve.add_argument("--phis", help="phases for --alphas (default all zero)")
    p_curve.add_argument("--offset", help="coordinate offset for --alphas (default 0)")
    add_common(p_curve)

    p_cross = sub.add_parser("crossover", help="locate the crossover memory value")
    p_cross.add_argument("--model", help="channel family: qd or qcd")
    p_cross.add_argument("--d", help="qudit dimension (>= 2)")
    p_cross.add_argument("--eta", help="marginal strength")
    p_cross.add_argument("--nu", help="anticorrelation weight in [0, 1] (default 0)")
    p_cross.add_argument("--grid-n", dest="grid_n", help="scan grid intervals (default 64, minimum 16)")
    p_cross.add_argument("--tol", help="bisection bracket width (default 1e-8)")
    p_cross.add_argument("--method", help="spectrum path: block (default) or dense")
    add_common(p_cross)

    p_sweep = sub.add_parser("sweep", help="crossover over dims x etas x nus")
    p_sweep.add_argument("--model", help="channel family: qd or qcd")
    p_sweep.add_argument("--dims", help="dimensions, comma separated")
    p_sweep.add_argument("--etas", help="marginal strengths, comma separated")
    p_sweep.add_argument("--nus", help="anticorrelation weights, comma separated (default 0)")
    p_sweep.add_argument("--grid-n", dest="grid_n", help="scan grid intervals (default 64)")
    p_sweep.add_argument("--tol", help="bisection bracket width (default 1e-8)")
    p_sweep.add_argument("--method", help="spectrum path: block (default) or dense")
    add_common(p_sweep)

    p_val = sub.add_parser("validate", help="run the built-in oracle and invariant suite")
    p_val.add_argument("--d-max", dest="d_max", help="largest dimension to check (default 4)")
    p_val.add_argument("--seed", help="seed for the randomized checks")
    add_common(p_val)

    return parser


def _merge_config(command: str, cli_values: dict[str, str | None]) -> RunConfig:
    """Layer CLI flags over config-file values over defaults."""
    file_values: dict[str, str] = {}
    config_path = cli_values.pop("config", None)
    if config_path is not None:
        file_values = _read_config_file(config_path)

    field_names = {f.name for f in fields(RunConfig)} - {"command"}
    for key in file_values:
        if key not in field_names:
            raise CliError(f"config key {key!r} unknown: valid keys are {', '.join(sorted(field_names))}")

    resolved: dict[str, object] = {"command": command}
    for name in field_names:
        raw = cli_values.get(name)
        if raw is None:
            raw = file_values.get(name)
        if raw is not None:
            resolved[name] = _COERCERS[name](name, raw)
    if "workers" not in resolved:
        env_raw = os.environ.get(WORKERS_ENV)
        if env_raw is not None:
            resolved["workers"] = _as_int(WORKERS_ENV, env_raw)
    if "format" not in resolved and command == "validate":
        resolved["format"] = "text"
    return RunConfig(**resolved)


def _require(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise CliError(f"{name} is required for '{cfg.command}' (flag --{name.replace('_', '-')} or config key {name})")


def _validate_common(cfg: RunConfig) -> None:
    if cfg.workers < 1:
        raise CliError(f"workers={cfg.workers} out of range: must be >= 1")
    allowed = ("csv", "json", "text") if cfg.command == "validate" else ("csv", "json")
    if cfg.format not in allowed:
        raise CliError(f"format={cfg.format!r} invalid for '{cfg.command}': valid formats are {', '.join(allowed)}")
    if cfg.method not in ("block", "dense"):
        raise CliError(f"method={cfg.method!r} invalid: valid methods are block, dense")


def _probe_spec(cfg: RunConfig, mu: float = 0.0) -> ChannelSpec:
    """Build a ChannelSpec so out-of-range d/eta/nu fail with a field-naming message."""
    try:
        return ChannelSpec(model=cfg.model, d=cfg.d, eta=cfg.eta, mu=mu, nu=cfg.nu)
    except (ValueError, TypeError) as exc:
        raise CliError(str(exc)) from None


def _echo_value(value: object) -> str:
    if value is None:
        return "none"
    if isinstance(value, Model):
        return value.value
    if isinstance(value, tuple):
        return ",".join(_echo_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _config_echo(cfg: RunConfig) -> str:
    return " ".join(f"{f.name}={_echo_value(getattr(cfg, f.name))}" for f in fields(cfg))


def _config_json(cfg: RunConfig) -> dict[str, object]:
    doc: dict[str, object] = {}
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if isinstance(value, Model):
            value = value.value
        elif isinstance(value, tuple):
            value = list(value)
        doc[f.name] = value
    return doc


def _fmt(value: float) -> str:
    """Full-precision float text: 17 significant digits round-trip exactly."""
    return f"{value:.17g}"


def _render_csv(cfg: RunConfig, columns: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    buffer.write(f"# quditmem {__version__}\n")
    buffer.write(f"# {_config_echo(cfg)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def _render_json(cfg: RunConfig, columns: list[str], rows: list[dict[str, object]]) -> str:
    doc = {
        "tool": "quditmem",
        "version": __version__,
        "config": _config_json(cfg),
        "columns": columns,
        "rows": rows,
    }
    return json.dumps(doc, indent=2) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise CliError(f"output={output!r} unwritable: {exc}") from None


def _map_ordered(task_fn, tasks: list, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [task_fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task_fn, tasks))


def _curve_task(task: tuple) -> tuple:
    model_value, d, eta, nu, mu, custom = task
    spec = ChannelSpec(model=Model(model_value), d=d, eta=eta, mu=mu, nu=nu)
    i_product = mutual_information_ansatz(spec, product_params(d))
    i_entangled = mutual_information_ansatz(spec, max_entangled_params(d))
    if custom is None:
        return (mu, i_product, i_entangled, i_entangled - i_product)
    params = AnsatzParams(np.asarray(custom[0]), np.asarray(custom[1]), custom[2])
    i_custom = mutual_information_ansatz(spec, params)
    return (mu, i_product, i_entangled, i_custom, i_entangled - i_product)


def _sweep_task(task: tuple):
    model_value, d, eta, nu, grid_n, tol, method = task
    return sweep_point(Model(model_value), d, eta, nu, grid_n=grid_n, tol=tol, method=method)


def _custom_state(cfg: RunConfig) -> tuple[tuple[float, ...], tuple[float, ...], int] | None:
    """Resolve --state / --alphas into a picklable parameter triple."""
    if cfg.state is not None and cfg.alphas is not None:
        raise CliError("state and alphas are mutually exclusive: give one or the other")
    d = cfg.d
    if cfg.state is not None:
        if cfg.state == "product":
            params = product_params(d)
        elif cfg.state == "max-entangled":
            params = max_entangled_params(d)
        elif cfg.state.startswith("alpha="):
            angle = _as_float("state", cfg.state[len("alpha="):])
            try:
                params = interpolating_params(d, angle)
            except ValueError as exc:
                raise CliError(str(exc)) from None
        else:
            raise CliError(
                f"state={cfg.state!r} invalid: valid forms are product, max-entangled, alpha=<radians>"
            )
    elif cfg.alphas is not None:
        phis = cfg.phis if cfg.phis is not None else tuple(0.0 for _ in cfg.alphas)
        try:
            params = AnsatzParams(np.asarray(cfg.alphas, dtype=float), np.asarray(phis, dtype=float), cfg.offset)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        if params.d != d:
            raise CliError(f"alphas length {params.d} does not match d={d}")
    else:
        if cfg.phis is not None:
            raise CliError("phis requires alphas")
        return None
    return (tuple(float(a) for a in params.alphas), tuple(float(p) for p in params.phis), params.offset)


def _mu_grid(cfg: RunConfig) -> list[float]:
    if cfg.mu_list is not None:
        grid = list(cfg.mu_list)
        if any(not 0.0 <= mu <= 1.0 for mu in grid):
            raise CliError(f"mu_list={cfg.mu_list} invalid: every value must lie in [0, 1]")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise CliError(f"mu_list={cfg.mu_list} invalid: values must be strictly increasing")
        return grid
    if cfg.mu_points < 2:
        raise CliError(f"mu_points={cfg.mu_points} out of range: must be >= 2")
    return [float(mu) for mu in np.linspace(0.0, 1.0, cfg.mu_points)]


def _run_curve(cfg: RunConfig) -> tuple[str, int]:
    _require(cfg, "model", "d", "eta")
    _probe_spec(cfg)
    custom = _custom_state(cfg)
    grid = _mu_grid(cfg)
    tasks = [(cfg.model.value, cfg.d, cfg.eta, cfg.nu, mu, custom) for mu in grid]
    results = _map_ordered(_curve_task, tasks, cfg.workers)

    columns = ["mu", "I_product", "I_entangled", "delta"]
    if custom is not None:
        columns = ["mu", "I_product", "I_entangled", "I_custom", "delta"]
    if cfg.format == "json":
        rows = [dict(zip(columns, result)) for result in results]
        return _render_json(cfg, columns, rows), 0
    rows = [[_fmt(value) for value in result] for result in results]
    return _render_csv(cfg, columns, rows), 0


def _run_crossover(cfg: RunConfig) -> tuple[str, int]:
    _require(cfg, "model", "d", "eta")
    spec = _probe_spec(cfg)
    try:
        result = find_crossover(spec, grid_n=cfg.grid_n, tol=cfg.tol, method=cfg.method)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    columns = ["mu_c", "delta_at_0", "delta_at_1", "iterations", "bracket_width"]
    if cfg.format == "json":
        row = {
            "mu_c": result.mu_c,
            "delta_at_0": result.delta_at_0,
            "delta_at_1": result.delta_at_1,
            "iterations": result.iterations,
            "bracket_width": result.bracket_width,
        }
        return _render_json(cfg, columns, [row]), 0
    row = [
        "none" if result.mu_c is None else _fmt(result.mu_c),
        _fmt(result.delta_at_0),
        _fmt(result.delta_at_1),
        str(result.iterations),
        _fmt(result.bracket_width),
    ]
    return _render_csv(cfg, columns, [row]), 0


def _run_sweep(cfg: RunConfig) -> tuple[str, int]:
    _require(cfg, "model", "dims", "etas")
    if not cfg.dims or not cfg.etas or not cfg.nus:
        raise CliError("dims, etas and nus must all be nonempty")
    if cfg.grid_n < 16:
        raise CliError(f"grid_n={cfg.grid_n} too coarse: minimum is 16")
    if cfg.tol <= 0.0:
        raise CliError(f"tol={cfg.tol} out of range: must be positive")
    tasks = [
        (cfg.model.value, d, eta, nu, cfg.grid_n, cfg.tol, cfg.method)
        for d in cfg.dims
        for eta in cfg.etas
        for nu in cfg.nus
    ]
    rows_out = _map_ordered(_sweep_task, tasks, cfg.workers)
    columns = ["model", "d", "eta", "nu", "mu_c", "parity", "error"]
    if cfg.format == "json":
        rows = [
            {
                "model": row.model.value,
                "d": row.d,
                "eta": row.eta,
                "nu": row.nu,
                "mu_c": row.mu_c,
                "parity": row.parity,
                "error": row.error,
            }
            for row in rows_out
        ]
        return _render_json(cfg, columns, rows), 0
    rows = [
        [
            row.model.value,
            str(row.d),
            _fmt(row.eta),
            _fmt(row.nu),
            "none" if row.mu_c is None else _fmt(row.mu_c),
            row.parity,
            row.error or "",
        ]
        for row in rows_out
    ]
    return _render_csv(cfg, columns, rows), 0


def _run_validate(cfg: RunConfig) -> tuple[str, int]:
    if not 2 <= cfg.d_max <= 6:
        raise CliError(f"d_max={cfg.d_max} out of range: valid range is [2, 6]")
    results = run_validation(d_max=cfg.d_max, seed=cfg.seed)
    code = 0 if all(r.passed for r in results) else 1
    columns = ["name", "passed", "detail"]
    if cfg.format == "json":
        rows = [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]
        return _render_json(cfg, columns, rows), code
    if cfg.format == "csv":
        rows = [[r.name, "true" if r.passed else "false", r.detail] for r in results]
        return _render_csv(cfg, columns, rows), code
    lines = [f"# quditmem {__version__}", f"# {_config_echo(cfg)}"]
    lines += [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
    passed = sum(1 for r in results if r.passed)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", code


_RUNNERS = {
    "curve": _run_curve,
    "crossover": _run_crossover,
    "sweep": _run_sweep,
    "validate": _run_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        cli_values = {key: value for key, value in vars(args).items() if key != "command"}
        cfg = _merge_config(args.command, cli_values)
        _validate_common(cfg)
        text, code = _RUNNERS[cfg.command](cfg)
        _emit(text, cfg.output)
        return code
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except MultipleCrossingsError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

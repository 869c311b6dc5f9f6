"""Command line driver: scenario execution and bit-stable data emission.

Subcommands
-----------
run       execute a built-in scenario or a JSON sweep config
jopt      print the closed-form optimal coupling for given damping rates
spectrum  print the dressed-state manifold tables
validate  run the built-in oracle suite

All rates and frequencies at this boundary are in units of gamma_c (fixed
to 1 internally); delays are in units of 1/gamma_c. CSV output uses
RFC-4180-style quoting, LF line endings and floats at 17 significant
digits, so identical inputs give byte-identical files. Exit codes: 0 ok,
1 validation error, 2 numerical failure.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from ._version import __version__
from .errors import (ConfigError, DegenerateSteadyStateError, QuadromechError,
                     SteadyStateResidualError, TruncationDivergenceError)
from .hilbert import TruncatedSpace, default_space
from .model import j_opt
from .sweep import Axis, SCENARIOS, SweepSpec, builtin_scenario, run_sweep
from . import selfcheck

ENV_THREADS = "QUADROMECH_THREADS"

_CONFIG_KEYS = {"scenario", "axes", "fixed", "links", "outputs", "truncation",
                "convergence_tol", "out_dir", "formats", "parallelism", "seed"}
_AXIS_KEYS = {"name", "start", "stop", "count", "spacing"}
_TRUNCATION_KEYS = {"n_photon_max", "n_phonon_max"}

_NUMERICAL_ERRORS = (SteadyStateResidualError, DegenerateSteadyStateError,
                     TruncationDivergenceError)


@dataclass
class RunConfig:
    """Validated execution settings for the `run` subcommand."""

    spec: SweepSpec
    space: TruncatedSpace = field(default_factory=default_space)
    convergence_tol: float = None
    out_dir: str = "."
    formats: tuple = ("csv",)
    parallelism: int = 1
    seed: int = None  # reserved; the deterministic paths never draw


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _write_csv(path, columns, rows):
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _row_cells(result, columns):
    spec = result.spec
    axis_names = [ax.name for ax in spec.axes]
    cells = []
    for row in result.rows:
        values = row.values or {}
        record_part = []
        for col in columns[len(axis_names):]:
            record_part.append(values.get(col))
        cells.append([row.point[name] for name in axis_names] + record_part)
    return cells


def _result_columns(result, convergence_tol):
    columns = result.spec.columns()
    if convergence_tol is not None and not result.spec.is_series:
        columns += ["n_photon_max", "n_phonon_max"]
    return columns


def emit(result, config: RunConfig):
    """Write the sweep result in every requested format; returns the paths."""
    os.makedirs(config.out_dir, exist_ok=True)
    base = os.path.join(config.out_dir, result.spec.scenario)
    columns = _result_columns(result, config.convergence_tol)
    paths = []
    if "csv" in config.formats:
        path = base + ".csv"
        _write_csv(path, columns, _row_cells(result, columns))
        paths.append(path)
    if "json" in config.formats:
        path = base + ".json"
        doc = {
            "provenance": result.provenance,
            "columns": columns,
            "rows": [{
                "point": row.point,
                "values": row.values,
                "error": row.error,
            } for row in result.rows],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
            fh.write("\n")
        paths.append(path)
    return paths


def _require_keys(mapping, allowed, context):
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in {context}")


def _spec_from_config(doc) -> SweepSpec:
    scenario = doc.get("scenario", "custom")
    if scenario != "custom" and "axes" not in doc:
        return builtin_scenario(scenario)
    axes = []
    for k, axis_doc in enumerate(doc.get("axes", [])):
        _require_keys(axis_doc, _AXIS_KEYS, f"axes[{k}]")
        for required in ("name", "start", "stop", "count"):
            if required not in axis_doc:
                raise ConfigError(f"axes[{k}] is missing {required!r}")
        axes.append(Axis(axis_doc["name"], float(axis_doc["start"]),
                         float(axis_doc["stop"]), int(axis_doc["count"]),
                         axis_doc.get("spacing", "linear")))
    links = {}
    for target, link in doc.get("links", {}).items():
        if (not isinstance(link, (list, tuple)) or len(link) != 2):
            raise ConfigError(f"links[{target!r}] must be [source, factor]")
        links[target] = (link[0], float(link[1]))
    kwargs = {}
    if "outputs" in doc:
        kwargs["outputs"] = tuple(doc["outputs"])
    return SweepSpec(scenario=scenario, axes=tuple(axes),
                     fixed={k: float(v) for k, v in doc.get("fixed", {}).items()},
                     links=links, **kwargs)


def load_config(path) -> RunConfig:
    """Parse and strictly validate a JSON run configuration."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}", code="CONFIG_NOT_FOUND")
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    _require_keys(doc, _CONFIG_KEYS, "config")
    spec = _spec_from_config(doc)

    space = default_space()
    if "truncation" in doc:
        _require_keys(doc["truncation"], _TRUNCATION_KEYS, "truncation")
        space = TruncatedSpace(
            int(doc["truncation"].get("n_photon_max", space.n_photon_max)),
            int(doc["truncation"].get("n_phonon_max", space.n_phonon_max)))
    formats = tuple(doc.get("formats", ("csv",)))
    bad = set(formats) - {"csv", "json"}
    if bad:
        raise ConfigError(f"unknown output formats {sorted(bad)}")
    tol = doc.get("convergence_tol")
    return RunConfig(
        spec=spec, space=space,
        convergence_tol=None if tol is None else float(tol),
        out_dir=str(doc.get("out_dir", ".")),
        formats=formats,
        parallelism=int(doc.get("parallelism", 1)),
        seed=doc.get("seed"))


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="quadromech",
        description="photon-phonon statistics of a quadratically coupled "
                    "optomechanical system")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario or JSON config")
    run_p.add_argument("--scenario", choices=sorted(SCENARIOS),
                       help="built-in figure scan")
    run_p.add_argument("--config", help="JSON sweep configuration file")
    run_p.add_argument("--out-dir", default=None)
    run_p.add_argument("--format", dest="formats", action="append",
                       choices=("csv", "json"),
                       help="output format (repeatable; default csv)")
    run_p.add_argument("--parallelism", type=int, default=None)
    run_p.add_argument("--photon-max", type=int, default=None,
                       help="photon Fock cutoff override")
    run_p.add_argument("--phonon-max", type=int, default=None,
                       help="phonon Fock cutoff override")
    run_p.add_argument("--convergence-tol", type=float, default=None,
                       help="enable per-point truncation convergence at this "
                            "relative tolerance")
    run_p.add_argument("--seed", type=int, default=None,
                       help="reserved; deterministic paths ignore it")

    jopt_p = sub.add_parser("jopt", help="closed-form optimal coupling")
    jopt_p.add_argument("--gamma-c", type=float, required=True)
    jopt_p.add_argument("--gamma-m", type=float, required=True)

    spec_p = sub.add_parser("spectrum", help="dressed-state manifold tables")
    spec_p.add_argument("--coupling", type=float, default=1.0,
                        help="effective coupling J in units of gamma_c")
    spec_p.add_argument("--manifold", type=int, action="append",
                        help="charge N = 2 n_a + n_b (repeatable; default 0..4)")

    sub.add_parser("validate", help="run the built-in oracle suite")
    return parser


def _cmd_run(args) -> int:
    if bool(args.scenario) == bool(args.config):
        raise ConfigError("run needs exactly one of --scenario or --config")
    if args.config:
        config = load_config(args.config)
    else:
        config = RunConfig(spec=builtin_scenario(args.scenario))
    if args.out_dir is not None:
        config.out_dir = args.out_dir
    if args.formats:
        config.formats = tuple(dict.fromkeys(args.formats))
    if args.parallelism is not None:
        config.parallelism = args.parallelism
    if ENV_THREADS in os.environ:
        config.parallelism = int(os.environ[ENV_THREADS])
    if args.photon_max is not None or args.phonon_max is not None:
        config.space = TruncatedSpace(
            args.photon_max if args.photon_max is not None else config.space.n_photon_max,
            args.phonon_max if args.phonon_max is not None else config.space.n_phonon_max)
    if args.convergence_tol is not None:
        config.convergence_tol = args.convergence_tol
    if config.parallelism < 1:
        raise ConfigError(f"parallelism must be >= 1, got {config.parallelism}")

    result = run_sweep(config.spec, parallelism=config.parallelism,
                       space=config.space,
                       convergence_tol=config.convergence_tol)
    for path in emit(result, config):
        print(path)
    failed = sum(1 for row in result.rows if row.error)
    if failed:
        print(f"warning: {failed} of {len(result.rows)} points failed; see "
              "the emitted rows for causes", file=sys.stderr)
    return 0


def _cmd_jopt(args) -> int:
    print(f"{j_opt(args.gamma_c, args.gamma_m):.5f}")
    return 0


def _cmd_spectrum(args) -> int:
    from .weakdrive import manifold_spectrum

    manifolds = args.manifold if args.manifold else list(range(5))
    for n in manifolds:
        report = manifold_spectrum(args.coupling, n)
        print(f"manifold N={n} (basis "
              + ", ".join(f"|{p},{m}>" for p, m in report.basis) + ")")
        for k, ev in enumerate(report.eigenvalues):
            comps = ", ".join(f"{c:+.6f}" for c in report.eigenvectors[:, k])
            print(f"  E = {ev:+.10f}   [{comps}]")
    return 0


def _cmd_validate(_args) -> int:
    results = selfcheck.run_all()
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return 0 if all(ok for _, ok, _ in results) else 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"run": _cmd_run, "jopt": _cmd_jopt,
                "spectrum": _cmd_spectrum, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except _NUMERICAL_ERRORS as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except QuadromechError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error[INVALID_ARGUMENT]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

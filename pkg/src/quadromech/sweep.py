"""Parameter-grid execution engine for the figure scans.

A sweep is a cartesian grid over one or two effective-model parameters (or a
delay grid for the time-resolved scenario), evaluated point by point with
the steady-state stack. Points are embarrassingly parallel; results are
collected by grid index so the output is bit-identical whatever the degree
of parallelism. Per-point failures are recorded on the row instead of
aborting the sweep.

Built-in scenarios pin the fixed parameters of the corresponding published
figure; axis ranges and densities beyond those stated there are package
defaults (see README scenario table).
"""

import concurrent.futures
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .correlations import record
from .errors import DomainError, SweepSpecError
from .hilbert import TruncatedSpace, default_space
from .model import EffectiveParams, build_liouvillian
from .regression import RK_ATOL, RK_RTOL, g2_tau
from .steady import RESIDUAL_FACTOR, converge_truncation, steady_state

#: sweepable parameter names (gamma_c stays fixed at 1 in CLI units)
PARAMETER_NAMES = ("delta", "delta_m", "J", "epsilon", "gamma_c", "gamma_m",
                   "n_th", "tau")

RECORD_FIELDS = ("n_a", "n_b", "g2_aa_0", "g2_bb_0", "g2_ab_0")
SERIES_FIELDS = ("g2_aa", "g2_bb", "g2_ab_pos_tau", "g2_ab_neg_tau")

#: CSV column name per axis parameter (rates and delays in gamma_c units)
AXIS_COLUMNS = {
    "delta": "delta_over_gc",
    "delta_m": "delta_m_over_gc",
    "J": "J_over_gc",
    "epsilon": "epsilon_over_gc",
    "gamma_c": "gamma_c",
    "gamma_m": "gamma_m_over_gc",
    "n_th": "n_th",
    "tau": "tau",
}

_BASE_FIXED = {"delta": 0.0, "delta_m": 0.0, "J": 0.0, "epsilon": 0.0,
               "gamma_c": 1.0, "gamma_m": 0.1, "n_th": 0.0}


@dataclass(frozen=True)
class Axis:
    """One swept parameter: `count` values from start to stop inclusive."""

    name: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.name not in PARAMETER_NAMES:
            raise SweepSpecError(f"unknown sweep parameter {self.name!r}")
        if self.count < 2:
            raise SweepSpecError(f"axis {self.name}: count must be >= 2")
        if not self.start < self.stop:
            raise SweepSpecError(
                f"axis {self.name}: start must be < stop, got "
                f"[{self.start}, {self.stop}]")
        if self.spacing not in ("linear", "log"):
            raise SweepSpecError(f"axis {self.name}: spacing must be linear or log")
        if self.spacing == "log" and self.start <= 0:
            raise SweepSpecError(f"axis {self.name}: log spacing needs start > 0")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """A validated grid scan: axes, fixed parameters and linked parameters.

    `links` maps a parameter to (source_axis, factor), e.g. delta locked to
    2 * delta_m for the detuning scans. A single "tau" axis selects the
    delay-resolved mode; it cannot be combined with parameter axes.
    """

    scenario: str
    axes: tuple
    fixed: dict = field(default_factory=dict)
    links: dict = field(default_factory=dict)
    outputs: tuple = RECORD_FIELDS

    def __post_init__(self):
        if not self.axes:
            raise SweepSpecError("at least one axis is required")
        names = [ax.name for ax in self.axes]
        if len(set(names)) != len(names):
            raise SweepSpecError(f"duplicate axes in {names}")
        if "tau" in names:
            if len(names) > 1:
                raise SweepSpecError("a tau axis cannot be combined with others")
            if self.axes[0].start < 0:
                raise SweepSpecError(
                    "tau axes start at 0; the negative cross-correlation "
                    "branch is emitted as its own column")
            bad = set(self.outputs) - set(SERIES_FIELDS)
        else:
            bad = set(self.outputs) - set(RECORD_FIELDS)
        if bad:
            raise SweepSpecError(f"unknown output fields {sorted(bad)}")
        for key in self.fixed:
            if key not in PARAMETER_NAMES or key == "tau":
                raise SweepSpecError(f"unknown fixed parameter {key!r}")
        for key, link in self.links.items():
            if key not in PARAMETER_NAMES or key == "tau":
                raise SweepSpecError(f"unknown linked parameter {key!r}")
            source, _factor = link
            if source not in names:
                raise SweepSpecError(
                    f"link target {key!r} references {source!r} which is not an axis")

    @property
    def is_series(self) -> bool:
        return self.axes[0].name == "tau"

    def columns(self):
        axis_cols = [AXIS_COLUMNS[ax.name] for ax in self.axes]
        return axis_cols + list(self.outputs)


@dataclass(frozen=True)
class SweepRow:
    point: dict
    values: dict = None
    error: str = None


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple
    provenance: dict


def _effective_params(point: dict) -> EffectiveParams:
    merged = dict(_BASE_FIXED)
    merged.update(point)
    return EffectiveParams(
        delta=merged["delta"], delta_m=merged["delta_m"], J=merged["J"],
        epsilon=merged["epsilon"], gamma_c=merged["gamma_c"],
        gamma_m=merged["gamma_m"], n_th=merged["n_th"])


def _eval_record_point(task):
    point, space_args, convergence_tol = task
    space = TruncatedSpace(*space_args)
    try:
        ep = _effective_params(point)
        if convergence_tol is not None:
            _rho, report = converge_truncation(ep, space, convergence_tol)
            space = report.final_space
        rec = record(ep, space)
        values = {name: getattr(rec, name) for name in RECORD_FIELDS}
        if convergence_tol is not None:
            values["n_photon_max"] = space.n_photon_max
            values["n_phonon_max"] = space.n_phonon_max
        return values, None
    except Exception as exc:  # per-point failures must not kill the sweep
        return None, f"{type(exc).__name__}: {exc}"


def _eval_series_kind(task):
    fixed, space_args, taus, kind = task
    space = TruncatedSpace(*space_args)
    try:
        ep = _effective_params(fixed)
        lv = build_liouvillian(ep, space)
        rho = steady_state(lv)
        if kind == "g2_ab_neg_tau":
            values = g2_tau(lv, rho, "ab", -taus[::-1]).values
            return values[::-1], None
        kind_map = {"g2_aa": "aa", "g2_bb": "bb", "g2_ab_pos_tau": "ab"}
        return g2_tau(lv, rho, kind_map[kind], taus).values, None
    except Exception as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _provenance(spec, space, convergence_tol):
    return {
        "code_version": __version__,
        "scenario": spec.scenario,
        "truncation": {"n_photon_max": space.n_photon_max,
                       "n_phonon_max": space.n_phonon_max},
        "solver": {"steady_residual_factor": RESIDUAL_FACTOR,
                   "rk_rtol": RK_RTOL, "rk_atol": RK_ATOL},
        "convergence_tol": convergence_tol,
        "gamma_c": 1.0,
    }


def _map_tasks(worker, tasks, parallelism):
    if parallelism <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(worker, tasks, chunksize=1))


def run_sweep(spec: SweepSpec, parallelism: int = 1,
              space: TruncatedSpace = None,
              convergence_tol: float = None) -> SweepResult:
    """Evaluate every grid point of a sweep.

    Results are deterministic and independent of `parallelism`; failed
    points carry their error cause on the row. `convergence_tol` switches
    every point to truncation-convergence mode starting from `space`.
    """
    if parallelism < 1:
        raise SweepSpecError(f"parallelism must be >= 1, got {parallelism}")
    space = space or default_space()
    space_args = (space.n_photon_max, space.n_phonon_max)

    if spec.is_series:
        taus = spec.axes[0].values()
        tasks = [(dict(spec.fixed), space_args, taus, kind)
                 for kind in spec.outputs]
        outcomes = _map_tasks(_eval_series_kind, tasks, min(parallelism, len(tasks)))
        rows = []
        for k, tau in enumerate(taus):
            values, errors = {}, []
            for kind, (vals, err) in zip(spec.outputs, outcomes):
                if err is not None:
                    errors.append(f"{kind}: {err}")
                else:
                    values[kind] = float(vals[k])
            rows.append(SweepRow(point={"tau": float(tau)},
                                 values=values or None,
                                 error="; ".join(errors) or None))
        return SweepResult(spec, tuple(rows), _provenance(spec, space, convergence_tol))

    axis_values = [ax.values() for ax in spec.axes]
    points = []
    for combo in itertools.product(*axis_values):
        point = dict(spec.fixed)
        for ax, value in zip(spec.axes, combo):
            point[ax.name] = float(value)
        for target, (source, factor) in spec.links.items():
            point[target] = factor * point[source]
        points.append(point)

    tasks = [(point, space_args, convergence_tol) for point in points]
    outcomes = _map_tasks(_eval_record_point, tasks, parallelism)
    rows = []
    for point, (values, err) in zip(points, outcomes):
        axis_point = {ax.name: point[ax.name] for ax in spec.axes}
        rows.append(SweepRow(point=axis_point, values=values, error=err))
    return SweepResult(spec, tuple(rows), _provenance(spec, space, convergence_tol))


def find_extrema(result: SweepResult, fieldname: str):
    """Interior strict local extrema of one output field of a 1-axis sweep.

    Three-point comparison; on plateaus the smaller parameter value wins;
    endpoints are never reported. Returns a list of (location, value, kind)
    with kind in {"min", "max"}.
    """
    spec = result.spec
    if spec.is_series or len(spec.axes) != 1:
        raise DomainError("find_extrema needs a single-parameter record sweep")
    if fieldname not in spec.outputs:
        raise DomainError(f"field {fieldname!r} was not recorded by this sweep")
    if len(result.rows) < 3:
        raise DomainError("need at least 3 grid points to classify extrema")
    failed = [row.error for row in result.rows if row.error]
    if failed:
        raise DomainError(f"sweep has failed points: {failed[0]}")
    axis = spec.axes[0].name
    xs = np.array([row.point[axis] for row in result.rows])
    ys = np.array([row.values[fieldname] for row in result.rows])
    out = []
    for i in range(1, len(ys) - 1):
        if ys[i] > ys[i - 1] and ys[i] >= ys[i + 1]:
            out.append((float(xs[i]), float(ys[i]), "max"))
        elif ys[i] < ys[i - 1] and ys[i] <= ys[i + 1]:
            out.append((float(xs[i]), float(ys[i]), "min"))
    return out


def builtin_scenario(name: str) -> SweepSpec:
    """A fresh SweepSpec for one of the published-figure scans."""
    if name not in SCENARIOS:
        raise SweepSpecError(
            f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}")
    return SCENARIOS[name]


def _make_scenarios():
    milli = {"epsilon": 0.05, "gamma_m": 0.1, "n_th": 1e-4}
    scenarios = {
        "fig2a": SweepSpec(
            scenario="fig2a",
            axes=(Axis("J", 0.05, 1.5, 60, "log"),),
            fixed={"delta": 0.0, "delta_m": 0.0, **milli}),
        "fig2b": SweepSpec(
            scenario="fig2b",
            axes=(Axis("delta", -2.0, 2.0, 101, "linear"),),
            fixed={"delta_m": 0.0, "J": 0.406, **milli}),
        "fig2c": SweepSpec(
            scenario="fig2c",
            axes=(Axis("delta_m", -1.0, 1.0, 101, "linear"),),
            links={"delta": ("delta_m", 2.0)},
            fixed={"J": 0.406, **milli}),
        "fig2ef": SweepSpec(
            scenario="fig2ef",
            axes=(Axis("tau", 0.0, 16.0 * math.pi, 257, "linear"),),
            fixed={"delta": 0.0, "delta_m": 0.0, "J": 0.406, **milli},
            outputs=SERIES_FIELDS),
        "fig3": SweepSpec(
            scenario="fig3",
            axes=(Axis("n_th", 1e-3, 1e-1, 3, "log"),
                  Axis("epsilon", 0.01, 0.5, 50, "log")),
            fixed={"delta": 0.0, "delta_m": 0.0, "J": 0.406, "gamma_m": 0.1}),
        "fig4": SweepSpec(
            scenario="fig4",
            axes=(Axis("gamma_m", 0.02, 1.0, 20, "linear"),
                  Axis("J", 0.2, 1.2, 20, "linear")),
            fixed={"delta": 0.0, "delta_m": 0.0, "epsilon": 0.05, "n_th": 1e-4}),
        "fig5": SweepSpec(
            scenario="fig5",
            axes=(Axis("delta_m", 3.0, 6.0, 150, "linear"),),
            links={"delta": ("delta_m", 2.0)},
            fixed={"J": 5.0, **milli}),
        "fig6": SweepSpec(
            scenario="fig6",
            axes=(Axis("n_th", 1e-4, 1e-2, 3, "log"),
                  Axis("epsilon", 0.01, 0.5, 50, "log")),
            fixed={"delta_m": 3.9, "delta": 7.8, "J": 5.0, "gamma_m": 0.1}),
    }
    return scenarios


SCENARIOS = _make_scenarios()

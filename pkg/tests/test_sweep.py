import numpy as np
import pytest

from quadromech import (Axis, SCENARIOS, SweepSpec, SweepSpecError,
                        TruncatedSpace, builtin_scenario, find_extrema,
                        run_sweep)
from quadromech.errors import DomainError

SMALL = TruncatedSpace(2, 6)

# fixed parameters as printed in the figure captions; one entry per scenario
CAPTION_TABLE = {
    "fig2a": {"delta": 0.0, "delta_m": 0.0, "epsilon": 0.05, "gamma_m": 0.1,
              "n_th": 1e-4},
    "fig2b": {"delta_m": 0.0, "J": 0.406, "epsilon": 0.05, "gamma_m": 0.1,
              "n_th": 1e-4},
    "fig2c": {"J": 0.406, "epsilon": 0.05, "gamma_m": 0.1, "n_th": 1e-4},
    "fig2ef": {"delta": 0.0, "delta_m": 0.0, "J": 0.406, "epsilon": 0.05,
               "gamma_m": 0.1, "n_th": 1e-4},
    "fig3": {"delta": 0.0, "delta_m": 0.0, "J": 0.406, "gamma_m": 0.1},
    "fig4": {"delta": 0.0, "delta_m": 0.0, "epsilon": 0.05, "n_th": 1e-4},
    "fig5": {"J": 5.0, "epsilon": 0.05, "gamma_m": 0.1, "n_th": 1e-4},
    "fig6": {"delta_m": 3.9, "delta": 7.8, "J": 5.0, "gamma_m": 0.1},
}

# detuning locks and multi-curve axes that captions state alongside
CAPTION_LINKS = {
    "fig2c": {"delta": ("delta_m", 2.0)},
    "fig5": {"delta": ("delta_m", 2.0)},
}
CAPTION_NTH_CURVES = {
    "fig3": (1e-3, 1e-2, 1e-1),
    "fig6": (1e-4, 1e-3, 1e-2),
}


class TestScenarioTable:
    @pytest.mark.parametrize("name", sorted(CAPTION_TABLE))
    def test_fixed_parameters_match_caption(self, name):
        spec = builtin_scenario(name)
        assert spec.fixed == CAPTION_TABLE[name]
        assert spec.links == CAPTION_LINKS.get(name, {})

    @pytest.mark.parametrize("name", sorted(CAPTION_NTH_CURVES))
    def test_thermal_curves_match_caption(self, name):
        spec = builtin_scenario(name)
        nth_axis = next(ax for ax in spec.axes if ax.name == "n_th")
        assert nth_axis.values() == pytest.approx(CAPTION_NTH_CURVES[name])

    def test_fig2a_axis_matches_acceptance_grid(self):
        axis = builtin_scenario("fig2a").axes[0]
        assert (axis.start, axis.stop, axis.count, axis.spacing) == \
            (0.05, 1.5, 60, "log")

    def test_unknown_scenario(self):
        with pytest.raises(SweepSpecError):
            builtin_scenario("fig9")


class TestSpecValidation:
    def test_degenerate_axis_rejected(self):
        with pytest.raises(SweepSpecError):
            Axis("J", 0.5, 0.5, 10)

    def test_too_few_points_rejected(self):
        with pytest.raises(SweepSpecError):
            Axis("J", 0.1, 1.0, 1)

    def test_log_axis_needs_positive_start(self):
        with pytest.raises(SweepSpecError):
            Axis("delta", -1.0, 1.0, 5, "log")

    def test_unknown_parameter_rejected(self):
        with pytest.raises(SweepSpecError):
            Axis("kappa", 0.1, 1.0, 5)

    def test_unknown_output_rejected(self):
        with pytest.raises(SweepSpecError):
            SweepSpec(scenario="custom",
                      axes=(Axis("J", 0.1, 1.0, 5),),
                      outputs=("g2_xy_0",))

    def test_tau_axis_cannot_mix(self):
        with pytest.raises(SweepSpecError):
            SweepSpec(scenario="custom",
                      axes=(Axis("tau", 0.0, 1.0, 5), Axis("J", 0.1, 1.0, 5)))

    def test_link_must_reference_an_axis(self):
        with pytest.raises(SweepSpecError):
            SweepSpec(scenario="custom",
                      axes=(Axis("J", 0.1, 1.0, 5),),
                      links={"delta": ("delta_m", 2.0)})


def tiny_spec(count=5):
    return SweepSpec(
        scenario="custom",
        axes=(Axis("J", 0.2, 0.8, count),),
        fixed={"delta": 0.0, "delta_m": 0.0, "epsilon": 0.05,
               "gamma_m": 0.1, "n_th": 1e-4})


class TestRunSweep:
    def test_row_count_and_grid(self):
        result = run_sweep(tiny_spec(), space=SMALL)
        assert len(result.rows) == 5
        xs = [row.point["J"] for row in result.rows]
        assert xs == pytest.approx(np.linspace(0.2, 0.8, 5))
        assert all(row.error is None for row in result.rows)
        assert all(set(row.values) == set(result.spec.outputs)
                   for row in result.rows)

    def test_parallelism_is_invisible(self):
        serial = run_sweep(tiny_spec(), parallelism=1, space=SMALL)
        parallel = run_sweep(tiny_spec(), parallelism=4, space=SMALL)
        for one, two in zip(serial.rows, parallel.rows):
            assert one.point == two.point
            assert one.values == two.values  # bit-identical floats

    def test_failed_points_are_recorded_not_fatal(self):
        spec = SweepSpec(
            scenario="custom",
            axes=(Axis("epsilon", 0.0, 0.04, 3),),  # epsilon = 0 is undefined
            fixed={"delta": 0.0, "delta_m": 0.0, "J": 0.4, "gamma_m": 0.1,
                   "n_th": 0.0})
        result = run_sweep(spec, space=SMALL)
        assert result.rows[0].error is not None
        assert "UndefinedCorrelation" in result.rows[0].error
        assert result.rows[1].error is None
        assert len(result.rows) == 3

    def test_two_axis_grid_is_row_major(self):
        spec = SweepSpec(
            scenario="custom",
            axes=(Axis("gamma_m", 0.1, 0.2, 2), Axis("J", 0.3, 0.5, 3)),
            fixed={"delta": 0.0, "delta_m": 0.0, "epsilon": 0.05, "n_th": 0.0})
        result = run_sweep(spec, space=SMALL)
        points = [(row.point["gamma_m"], row.point["J"]) for row in result.rows]
        expected = [(gm, J) for gm in (0.1, 0.2) for J in (0.3, 0.4, 0.5)]
        assert np.asarray(points) == pytest.approx(np.asarray(expected))

    def test_linked_parameter_follows_axis(self):
        spec = SweepSpec(
            scenario="custom",
            axes=(Axis("delta_m", 1.0, 2.0, 2),),
            links={"delta": ("delta_m", 2.0)},
            fixed={"J": 0.4, "epsilon": 0.05, "gamma_m": 0.1, "n_th": 0.0})
        by_link = run_sweep(spec, space=SMALL)
        explicit = run_sweep(SweepSpec(
            scenario="custom",
            axes=(Axis("delta_m", 1.0, 2.0, 2),),
            fixed={"delta": 2.0, "J": 0.4, "epsilon": 0.05, "gamma_m": 0.1,
                   "n_th": 0.0}), space=SMALL)
        assert by_link.rows[0].values == explicit.rows[0].values

    def test_series_sweep_shape(self):
        spec = SweepSpec(
            scenario="custom",
            axes=(Axis("tau", 0.0, 4.0, 9),),
            fixed={"delta": 0.0, "delta_m": 0.0, "J": 0.406, "epsilon": 0.05,
                   "gamma_m": 0.1, "n_th": 1e-4},
            outputs=("g2_aa", "g2_bb", "g2_ab_pos_tau", "g2_ab_neg_tau"))
        result = run_sweep(spec, space=SMALL, parallelism=2)
        assert len(result.rows) == 9
        first = result.rows[0]
        assert first.point["tau"] == 0.0
        # both cross-correlation branches coincide at zero delay
        assert first.values["g2_ab_pos_tau"] == pytest.approx(
            first.values["g2_ab_neg_tau"], rel=1e-9)

    def test_provenance_block(self):
        result = run_sweep(tiny_spec(), space=SMALL)
        prov = result.provenance
        assert prov["truncation"] == {"n_photon_max": 2, "n_phonon_max": 6}
        assert prov["scenario"] == "custom"
        assert "code_version" in prov and "solver" in prov


class TestFindExtrema:
    def _result(self, ys):
        xs = np.linspace(0.0, 1.0, len(ys))
        spec = SweepSpec(scenario="custom", axes=(Axis("J", 0.0 + 1e-9, 1.0,
                                                       len(ys)),),
                         outputs=("n_a",))
        from quadromech.sweep import SweepResult, SweepRow

        rows = tuple(SweepRow(point={"J": float(x)}, values={"n_a": float(y)})
                     for x, y in zip(xs, ys))
        return SweepResult(spec, rows, {})

    def test_monotone_series_has_no_extrema(self):
        assert find_extrema(self._result([1, 2, 3, 4, 5]), "n_a") == []

    def test_parabola_has_single_minimum(self):
        xs = np.linspace(-1, 1, 11)
        result = self._result(list(xs ** 2))
        found = find_extrema(result, "n_a")
        assert len(found) == 1
        location, value, kind = found[0]
        assert kind == "min"
        assert value == pytest.approx(0.0)
        assert location == pytest.approx(0.5)  # grid midpoint of [0, 1]

    def test_plateau_tie_breaks_to_smaller_parameter(self):
        found = find_extrema(self._result([0, 1, 1, 0, -1]), "n_a")
        assert len(found) == 1
        assert found[0][2] == "max"
        assert found[0][0] == pytest.approx(0.25)  # left edge of the plateau

    def test_endpoints_never_reported(self):
        found = find_extrema(self._result([5, 1, 2, 1, 5]), "n_a")
        locations = [loc for loc, _v, _k in found]
        assert 0.0 not in locations and 1.0 not in locations

    def test_needs_three_points(self):
        with pytest.raises(DomainError):
            find_extrema(self._result([1, 2]), "n_a")

    def test_needs_single_axis(self):
        spec = SweepSpec(
            scenario="custom",
            axes=(Axis("gamma_m", 0.1, 0.2, 2), Axis("J", 0.3, 0.5, 3)),
            fixed={"epsilon": 0.05, "n_th": 0.0})
        result = run_sweep(spec, space=SMALL)
        with pytest.raises(DomainError):
            find_extrema(result, "n_a")

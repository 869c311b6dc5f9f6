import numpy as np
import pytest

from quadromech import (CorrelationSeries, DomainError, TruncatedSpace,
                        UndefinedCorrelationError, build_liouvillian,
                        dominant_oscillation_frequency, expect, fock_density,
                        g2_tau, g2_zero, mode_operators, propagate,
                        steady_state)
from quadromech.model import _cached_ops
from conftest import make_params


@pytest.fixture(scope="module")
def decaying_system(small_space):
    """Undriven system: plain photon/phonon decay, no coupling."""
    ep = make_params(J=0.0, epsilon=0.0, n_th=0.0, gamma_c=1.0, gamma_m=0.1)
    return build_liouvillian(ep, small_space), small_space


@pytest.fixture(scope="module")
def fig2_steady(space, fig2a_params):
    lv = build_liouvillian(fig2a_params, space)
    return lv, steady_state(lv)


class TestPropagate:
    def test_zero_time_is_identity(self, decaying_system):
        lv, space = decaying_system
        x = fock_density(space, 1, 2)
        assert np.abs(propagate(lv, x, 0.0) - x).max() == 0.0

    def test_steady_state_is_fixed_point(self, fig2_steady):
        lv, rho = fig2_steady
        for t in (0.5, 3.0):
            out = propagate(lv, rho.entries, t)
            assert np.abs(out - rho.entries).max() < 1e-9

    def test_exponential_decay_law(self, decaying_system):
        # uncoupled decay: n_a(t) = e^{-gamma_c t} n_a(0), n_b likewise
        lv, space = decaying_system
        ops = _cached_ops(space)
        x = fock_density(space, 1, 2)
        for t in (0.3, 1.0, 2.5):
            out = propagate(lv, x, t)
            assert expect(ops["na"], out).real == pytest.approx(
                np.exp(-1.0 * t), rel=1e-8)
            assert expect(ops["nb"], out).real == pytest.approx(
                2.0 * np.exp(-0.1 * t), rel=1e-8)

    def test_negative_time_rejected(self, decaying_system):
        lv, space = decaying_system
        with pytest.raises(DomainError):
            propagate(lv, fock_density(space, 0, 0), -0.1)

    def test_semigroup_property(self, small_space):
        ep = make_params(n_th=0.01)
        lv = build_liouvillian(ep, small_space)
        rng = np.random.default_rng(31)
        x = rng.normal(size=(small_space.dim,) * 2) \
            + 1j * rng.normal(size=(small_space.dim,) * 2)
        one = propagate(lv, propagate(lv, x, 0.7), 1.1)
        once = propagate(lv, x, 1.8)
        assert np.abs(one - once).max() < 1e-8

    def test_expm_and_rk_paths_agree(self, small_space):
        ep = make_params(n_th=0.02, J=0.9)
        lv = build_liouvillian(ep, small_space)
        x = fock_density(small_space, 1, 3)
        via_expm = propagate(lv, x, 2.0, method="expm")
        via_rk = propagate(lv, x, 2.0, method="rk")
        assert np.abs(via_expm - via_rk).max() < 1e-7

    def test_trace_preserved_over_long_horizon(self, decaying_system):
        lv, space = decaying_system
        rng = np.random.default_rng(13)
        m = rng.normal(size=(space.dim,) * 2) + 1j * rng.normal(size=(space.dim,) * 2)
        rho = m @ m.conj().T
        rho = rho / np.trace(rho)
        out = propagate(lv, rho, 100.0, method="rk")
        assert abs(np.trace(out) - 1.0) < 1e-9


class TestG2Tau:
    def test_zero_delay_matches_equal_time(self, fig2_steady):
        lv, rho = fig2_steady
        for kind in ("aa", "bb", "ab"):
            series = g2_tau(lv, rho, kind, np.array([0.0]))
            assert series.values[0] == pytest.approx(g2_zero(rho, kind), abs=1e-8)

    def test_large_delay_factorizes(self, fig2_steady):
        # two-time correlators factor into products of steady means
        lv, rho = fig2_steady
        taus = np.array([0.0, 25.0, 50.0])
        for kind in ("aa", "bb", "ab"):
            series = g2_tau(lv, rho, kind, taus)
            assert series.values[-1] == pytest.approx(1.0, rel=0.02)

    def test_cross_correlation_asymmetry(self, fig2_steady):
        lv, rho = fig2_steady
        taus = np.linspace(0.0, 20.0, 41)
        pos = g2_tau(lv, rho, "ab", taus).values
        neg = g2_tau(lv, rho, "ab", -taus[::-1]).values[::-1]
        assert neg[0] == pos[0]  # both are tau = 0
        assert np.abs(pos - neg).max() > 0.01

    def test_negative_delay_equals_swapped_roles(self, fig2_steady):
        # g2_ab(-tau) must equal the phonon-seeded photon-observed branch
        lv, rho = fig2_steady
        ops = _cached_ops(rho.space)
        b = ops["b"].entries
        seed = b @ rho.entries @ b.conj().T.toarray()
        tau = 1.7
        out = propagate(lv, seed, tau)
        n_a = expect(ops["na"], rho.entries).real
        n_b = expect(ops["nb"], rho.entries).real
        expected = expect(ops["na"], out).real / (n_a * n_b)
        series = g2_tau(lv, rho, "ab", np.array([-tau]))
        assert series.values[0] == pytest.approx(expected, rel=1e-7)

    def test_taus_validation(self, fig2_steady):
        lv, rho = fig2_steady
        with pytest.raises(DomainError):
            g2_tau(lv, rho, "aa", np.array([-1.0, 0.0]))
        with pytest.raises(DomainError):
            g2_tau(lv, rho, "bb", np.array([0.0, 0.0]))
        with pytest.raises(DomainError):
            g2_tau(lv, rho, "ab", np.array([2.0, 1.0]))

    def test_empty_system_is_undefined(self, small_space):
        ep = make_params(epsilon=0.0, n_th=0.0)
        lv = build_liouvillian(ep, small_space)
        rho = steady_state(lv)
        with pytest.raises(UndefinedCorrelationError):
            g2_tau(lv, rho, "aa", np.array([0.0, 1.0]))


class TestOscillationPeriods:
    def test_synthetic_cosine_peak(self):
        taus = np.linspace(0.0, 10.0, 512)
        values = 1.0 + 0.3 * np.cos(2 * np.pi * 1.7 * taus)
        series = CorrelationSeries("bb", taus, values)
        freq = dominant_oscillation_frequency(series)
        assert abs(freq - 1.7) <= 1.0 / taus[-1]

    def test_fig5_oscillation_at_detuning_frequency(self, space, fig5_point_params):
        # delayed correlations at the correlated-pairs point oscillate with
        # period 2*pi/delta_m (and harmonics); the spectral peak must sit
        # within one bin of delta_m / 2 pi
        delta_m = fig5_point_params.delta_m
        lv = build_liouvillian(fig5_point_params, space)
        rho = steady_state(lv)
        window = 20.0 * 2.0 * np.pi / delta_m
        taus = np.linspace(0.0, window, 512)
        target = delta_m / (2.0 * np.pi)
        bin_width = 1.0 / window
        # photon series: the oscillation dominates the raw spectrum
        aa = g2_tau(lv, rho, "aa", taus)
        assert abs(dominant_oscillation_frequency(aa) - target) <= bin_width
        # phonon and cross series carry a slow relaxation baseline; the
        # oscillation peak is read above it
        for kind in ("bb", "ab"):
            series = g2_tau(lv, rho, kind, taus)
            freq = dominant_oscillation_frequency(series, min_frequency=0.3)
            assert abs(freq - target) <= bin_width

    def test_nonuniform_grid_rejected(self):
        taus = np.array([0.0, 0.1, 0.3, 0.35, 0.7, 1.0, 1.4, 1.9, 2.0])
        series = CorrelationSeries("aa", taus, np.ones_like(taus))
        with pytest.raises(DomainError):
            dominant_oscillation_frequency(series)

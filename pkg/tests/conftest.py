import numpy as np
import pytest

from quadromech import EffectiveParams, TruncatedSpace, default_space


def make_params(**overrides):
    """EffectiveParams with the package's canonical test defaults."""
    base = dict(delta=0.0, delta_m=0.0, J=0.406, epsilon=0.05,
                gamma_c=1.0, gamma_m=0.1, n_th=1e-4)
    base.update(overrides)
    return EffectiveParams(**base)


@pytest.fixture(scope="session")
def fig2a_params():
    """Operating point of the coupling scan: resonant, weak drive."""
    return make_params()


@pytest.fixture(scope="session")
def fig5_point_params():
    """Strong-coupling correlated-pairs point (coupling 5, detuning 3.9)."""
    return make_params(J=5.0, delta_m=3.9, delta=7.8)


@pytest.fixture(scope="session")
def space():
    return default_space()


@pytest.fixture(scope="session")
def small_space():
    """Cheap space for solver-path and propagation tests."""
    return TruncatedSpace(2, 8)


def random_params(rng: np.random.Generator, allow_zero_drive=True):
    """One draw from the published parameter ranges."""
    epsilon = rng.uniform(0.0 if allow_zero_drive else 0.005, 0.5)
    delta_m = rng.uniform(-1.0, 8.0)
    return make_params(
        J=rng.uniform(0.0, 6.0),
        epsilon=epsilon,
        delta_m=delta_m,
        delta=2.0 * delta_m,
        n_th=rng.uniform(0.0, 0.1),
    )

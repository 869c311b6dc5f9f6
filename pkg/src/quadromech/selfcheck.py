"""Built-in oracle suite backing the `quadromech validate` subcommand.

Fast consistency checks that exercise every solver path against an
independent reference: closed forms, exactly known fixed points, and the
dense null-space oracle. Each check returns (name, passed, detail).
"""

import math

import numpy as np

from .correlations import g2_zero
from .hilbert import TruncatedSpace, fock_density, unvec, vec
from .model import EffectiveParams, build_h_eff, build_liouvillian, j_opt
from .steady import DensityMatrix, occupations, steady_state
from .weakdrive import (equation_residuals, manifold_in_full_space,
                        manifold_spectrum, solve_coefficients)

_SMALL = TruncatedSpace(2, 8)


def _check_j_opt():
    value = j_opt(1.0, 0.1)
    ok = abs(value - 0.40620) < 5e-4
    return ok, f"j_opt(1, 0.1) = {value:.5f}"


def _check_vacuum():
    ep = EffectiveParams(delta=0.0, delta_m=0.0, J=0.7, epsilon=0.0,
                         gamma_c=1.0, gamma_m=0.1, n_th=0.0)
    rho = steady_state(build_liouvillian(ep, _SMALL))
    dev = np.abs(rho.entries - fock_density(_SMALL, 0, 0)).max()
    return dev < 1e-10, f"max deviation from vacuum {dev:.2e}"


def _check_thermal():
    ep = EffectiveParams(delta=0.0, delta_m=0.0, J=0.0, epsilon=0.0,
                         gamma_c=1.0, gamma_m=0.1, n_th=0.1)
    space = TruncatedSpace(2, 11)
    rho = steady_state(build_liouvillian(ep, space))
    _n_a, n_b = occupations(rho)
    g2 = g2_zero(rho, "bb")
    ok = abs(n_b - 0.1) < 1e-6 and abs(g2 - 2.0) < 1e-3
    return ok, f"n_b = {n_b:.8f}, g2_bb = {g2:.5f}"


def _check_spectrum():
    ep = EffectiveParams(delta=0.0, delta_m=0.0, J=1.3, epsilon=0.0,
                         gamma_c=1.0, gamma_m=0.1, n_th=0.0)
    h = build_h_eff(ep, TruncatedSpace(2, 4)).to_dense()
    worst = 0.0
    for n, expected in ((2, (-math.sqrt(2) * 1.3, math.sqrt(2) * 1.3)),
                        (4, (-4 * 1.3, 0.0, 4 * 1.3))):
        idx = manifold_in_full_space(TruncatedSpace(2, 4), n)
        block = h[np.ix_(idx, idx)]
        eig = np.linalg.eigvalsh(block)
        worst = max(worst, np.abs(eig - np.array(expected)).max())
        report = manifold_spectrum(1.3, n)
        worst = max(worst, np.abs(report.eigenvalues - np.array(expected)).max())
    return worst < 1e-10, f"worst eigenvalue deviation {worst:.2e}"


def _check_weakdrive():
    ep = EffectiveParams(delta=0.0, delta_m=0.0, J=j_opt(1.0, 0.1),
                         epsilon=0.005, gamma_c=1.0, gamma_m=0.1, n_th=0.0)
    coeffs = solve_coefficients(ep)
    res = equation_residuals(coeffs, ep).max()
    c01 = coeffs.c01
    expected = -2j * ep.epsilon / ep.gamma_m
    ok = res < 1e-12 * ep.epsilon and abs(c01 - expected) < 1e-12
    return ok, f"max residual {res:.2e}, c01 = {c01:.4f}"


def _check_solver_paths():
    ep = EffectiveParams(delta=0.3, delta_m=0.1, J=0.5, epsilon=0.04,
                         gamma_c=1.0, gamma_m=0.1, n_th=0.01)
    lv = build_liouvillian(ep, _SMALL)
    lu = steady_state(lv, method="lu")
    dense = steady_state(lv, method="dense")
    dev = np.abs(lu.entries - dense.entries).max()
    return dev < 1e-8, f"LU vs dense null space max deviation {dev:.2e}"


def _check_vec_roundtrip():
    rng = np.random.default_rng(7)
    m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    dev = np.abs(unvec(vec(m), 9) - m).max()
    return dev == 0.0, f"vec/unvec round-trip deviation {dev:.1e}"


def _check_coherent():
    # coherent state on the phonon mode: Poissonian, g2_bb = 1
    space = TruncatedSpace(2, 11)
    alpha = 0.3
    amps = np.array([alpha ** m / math.sqrt(math.factorial(m))
                     for m in range(space.phonon_dim)])
    amps = amps / np.linalg.norm(amps)
    ket = np.zeros(space.dim, dtype=complex)
    ket[[space.index(0, m) for m in range(space.phonon_dim)]] = amps
    rho = DensityMatrix(space, np.outer(ket, ket.conj()))
    g2 = g2_zero(rho, "bb")
    return abs(g2 - 1.0) < 1e-10, f"coherent-state g2_bb = {g2:.12f}"


CHECKS = (
    ("closed-form optimal coupling", _check_j_opt),
    ("vacuum steady state", _check_vacuum),
    ("thermal fixed point", _check_thermal),
    ("manifold spectrum", _check_spectrum),
    ("weak-drive coefficients", _check_weakdrive),
    ("LU vs dense steady state", _check_solver_paths),
    ("vectorization round-trip", _check_vec_roundtrip),
    ("coherent-state statistics", _check_coherent),
)


def run_all():
    """Run every check; returns a list of (name, passed, detail)."""
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))
    return results

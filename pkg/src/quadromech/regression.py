"""Time propagation and two-time correlations via the quantum regression theorem.

For a Markovian system the delayed correlators evolve under the same
Liouvillian as single-time expectations, seeded by operator-sandwiched
states: g2_aa(tau) = Tr[a+a e^{L tau}(a rho_ss a+)] / n_a^2 and analogously
for phonons. The photon-phonon cross-correlation is asymmetric in tau; its
negative branch swaps the roles of the two modes and propagates forward by
|tau| (Lindblad dynamics is never integrated backward).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm
from scipy.sparse.linalg import expm_multiply

from .errors import (DomainError, OperatorShapeError, SuperoperatorTypeError,
                     UndefinedCorrelationError)
from .hilbert import CsOperator, expect, unvec, vec
from .model import _cached_ops
from .steady import DensityMatrix, occupations

#: propagate() uses the dense matrix exponential up to this superoperator size
EXPM_MAX_SIZE = 4096

#: adaptive Runge-Kutta tolerances for the large-dimension path and series
RK_RTOL = 1e-9
RK_ATOL = 1e-12

#: tolerances on the real cast of correlation values
SERIES_IMAG_TOL = 1e-8
SERIES_NEG_TOL = -1e-8

DENOMINATOR_GUARD = 1e-12


@dataclass(frozen=True)
class CorrelationSeries:
    """Delay-resolved g2 values of one kind over an ascending tau grid."""

    kind: str
    taus: np.ndarray
    values: np.ndarray


def _as_matrix(x):
    if isinstance(x, CsOperator):
        if x.superop:
            raise SuperoperatorTypeError("cannot propagate a superoperator")
        return x.to_dense(), "csop", x.space
    if isinstance(x, DensityMatrix):
        return np.array(x.entries, dtype=complex), "dm", x.space
    return np.array(x, dtype=complex), "array", None


def _rk_segments(lv, y0, t_eval):
    """Integrate dv/dt = L v from 0, sampling at the ascending t_eval grid.

    The seed is scaled to unit magnitude first so the absolute tolerance is
    meaningful for the operator-sandwiched seeds, whose natural scale is the
    (possibly tiny) mode occupation.
    """
    mat = lv.entries
    scale = np.abs(y0).max()
    if scale == 0.0:
        return np.tile(y0[:, None], (1, len(t_eval)))
    w0 = y0 / scale

    def rhs(_t, v):
        return mat @ v

    tmax = float(t_eval[-1])
    if tmax == 0.0:
        return np.tile(y0[:, None], (1, len(t_eval)))
    sol = solve_ivp(rhs, (0.0, tmax), w0, t_eval=t_eval, method="RK45",
                    rtol=RK_RTOL, atol=RK_ATOL)
    if not sol.success:
        raise RuntimeError(f"propagation failed: {sol.message}")
    return scale * sol.y


def _exponential_grid(lv, y0, t_eval):
    """exp(t L) y0 over a uniform grid via exponential-action evaluation."""
    if t_eval.size == 1:
        t = float(t_eval[0])
        if t == 0.0:
            return y0[:, None].copy()
        return expm_multiply(lv.entries * t, y0)[:, None]
    out = expm_multiply(lv.entries, y0, start=float(t_eval[0]),
                        stop=float(t_eval[-1]), num=t_eval.size, endpoint=True)
    return out.T


def _propagate_grid(lv, y0, t_eval):
    steps = np.diff(t_eval)
    uniform = steps.size == 0 or np.allclose(steps, steps[0], rtol=1e-12, atol=0.0)
    if uniform:
        return _exponential_grid(lv, y0, t_eval)
    return _rk_segments(lv, y0, t_eval)


def propagate(lv: CsOperator, x, t: float, method: str = "auto"):
    """Evolve an operator-valued seed: unvec(e^{L t} vec(X)).

    Dense scaling-and-squaring expm while the superoperator is at most
    4096 x 4096, adaptive RK 5(4) (rtol 1e-9, atol 1e-12) beyond; `method`
    in {"auto", "expm", "rk"} forces a path. The input may be a CsOperator,
    a DensityMatrix or a plain array and the result matches its type.
    """
    if not isinstance(lv, CsOperator) or not lv.superop:
        raise SuperoperatorTypeError("propagate expects a Liouvillian superoperator")
    if t < 0:
        raise DomainError(f"propagation time must be >= 0, got {t}")
    seed, wrap, space = _as_matrix(x)
    dim = int(round(math.sqrt(lv.shape[0])))
    if seed.shape != (dim, dim):
        raise OperatorShapeError(
            f"seed shape {seed.shape} does not match superoperator dimension {dim}")

    if method == "auto":
        method = "expm" if lv.shape[0] <= EXPM_MAX_SIZE else "rk"
    if t == 0.0:
        out = seed
    elif method == "expm":
        out = unvec(expm((lv.entries * t).toarray()) @ vec(seed), dim)
    elif method == "rk":
        out = unvec(_rk_segments(lv, vec(seed), np.array([t]))[:, -1], dim)
    else:
        raise ValueError(f"unknown method {method!r}")

    if wrap == "csop":
        return CsOperator(out, space)
    if wrap == "dm":
        return DensityMatrix(space, out)
    return out


def _series_values(lv, seed, observable, taus, norm):
    dim = int(round(math.sqrt(lv.shape[0])))
    ys = _propagate_grid(lv, vec(seed), taus)
    raw = np.array([expect(observable, unvec(ys[:, k], dim))
                    for k in range(ys.shape[1])]) / norm
    worst_imag = np.abs(raw.imag).max()
    if worst_imag > SERIES_IMAG_TOL * max(1.0, np.abs(raw.real).max()):
        raise RuntimeError(
            f"correlation values are not real: max|Im| = {worst_imag:.3e}")
    values = raw.real
    if values.min() < SERIES_NEG_TOL:
        raise RuntimeError(
            f"correlation value {values.min():.3e} below zero tolerance")
    return values


def g2_tau(lv: CsOperator, rho_ss: DensityMatrix, kind: str, taus) -> CorrelationSeries:
    """Delay-resolved second-order correlation via the regression theorem.

    `taus` must be ascending; "aa" and "bb" require tau >= 0 while "ab"
    accepts negative delays through the operator-role swap. rho_ss must be
    the steady state of `lv` so that the single-time means are constants.
    """
    if kind not in ("aa", "bb", "ab"):
        raise ValueError(f"kind must be aa, bb or ab, got {kind!r}")
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise DomainError("taus must be a nonempty 1-d array")
    if np.any(np.diff(taus) <= 0):
        raise DomainError("taus must be strictly ascending")
    if kind in ("aa", "bb") and taus[0] < 0:
        raise DomainError(f"negative delays are undefined for kind {kind!r}")

    n_a, n_b = occupations(rho_ss)
    if kind == "aa" and n_a <= DENOMINATOR_GUARD:
        raise UndefinedCorrelationError(f"n_a = {n_a:.3e} below guard")
    if kind == "bb" and n_b <= DENOMINATOR_GUARD:
        raise UndefinedCorrelationError(f"n_b = {n_b:.3e} below guard")
    if kind == "ab" and min(n_a, n_b) <= DENOMINATOR_GUARD:
        raise UndefinedCorrelationError(
            f"occupation {min(n_a, n_b):.3e} below guard")

    ops = _cached_ops(rho_ss.space)
    a = ops["a"].entries
    b = ops["b"].entries
    rho = rho_ss.entries
    seed_a = a @ rho @ a.conj().T.toarray()
    seed_b = b @ rho @ b.conj().T.toarray()

    # seeds are Hermitian by construction; a violation means a bug upstream
    for name, seed in (("a rho a+", seed_a), ("b rho b+", seed_b)):
        dev = np.abs(seed - seed.conj().T).max()
        if dev > 1e-10:
            raise RuntimeError(f"regression seed {name} lost Hermiticity: {dev:.3e}")

    values = np.empty_like(taus)
    if kind == "aa":
        values[:] = _series_values(lv, seed_a, ops["na"], taus, n_a * n_a)
    elif kind == "bb":
        values[:] = _series_values(lv, seed_b, ops["nb"], taus, n_b * n_b)
    else:
        pos = taus >= 0
        if np.any(pos):
            values[pos] = _series_values(lv, seed_a, ops["nb"], taus[pos],
                                         n_a * n_b)
        if np.any(~pos):
            # negative branch: phonon first, photon later, forward in |tau|
            back = -taus[~pos][::-1]
            vals = _series_values(lv, seed_b, ops["na"], back, n_a * n_b)
            values[~pos] = vals[::-1]
    return CorrelationSeries(kind=kind, taus=taus, values=values)


def dominant_oscillation_frequency(series: CorrelationSeries,
                                   min_frequency: float = 0.0) -> float:
    """Frequency (cycles per unit delay) of the strongest spectral peak.

    Hann-windowed FFT of the mean-subtracted series on its uniform tau grid;
    `min_frequency` excludes the low-frequency relaxation baseline that can
    otherwise dominate slowly decaying correlators. Returns the peak-bin
    frequency; the bin width is 1 / (tau span).
    """
    taus, values = series.taus, series.values
    if taus.size < 8:
        raise DomainError("need at least 8 samples for a spectral estimate")
    steps = np.diff(taus)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise DomainError("spectral estimate needs a uniform tau grid")
    detrended = values - values.mean()
    windowed = np.hanning(values.size) * detrended
    amplitude = np.abs(np.fft.rfft(windowed))
    freqs = np.fft.rfftfreq(values.size, steps[0])
    mask = freqs >= max(min_frequency, 0.5 * freqs[1])  # always drop DC
    if not np.any(mask):
        raise DomainError("min_frequency excludes the entire spectrum")
    idx = np.flatnonzero(mask)
    return float(freqs[idx[np.argmax(amplitude[idx])]])

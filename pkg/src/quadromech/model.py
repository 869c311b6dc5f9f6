"""Parameter containers and generator assembly for the driven two-mode model.

The laboratory-frame description (optical mode quadratically coupled to a
mechanical mode, strong optical drive, weak mechanical drive) linearizes
around the optical mean field alpha into an effective rotating-frame model

    H = delta a+a + delta_m b+b + J a+ b b + conj(J) a b+ b+ + eps b+ + eps b

with photon decay gamma_c and a thermal mechanical bath (gamma_m, n_th).
`derive_effective` performs the laboratory -> effective map; `j_opt` is the
closed-form coupling at which destructive interference of the two two-photon
excitation paths suppresses photon pairs.

Units: hbar = 1 and, at the CLI boundary, all rates and frequencies are
quoted in units of gamma_c. Internally everything is a plain float.
"""

import functools
import math
import warnings
from dataclasses import dataclass, field

from .errors import DomainError, RateError
from .hilbert import (CsOperator, HERMITICITY_TOL, TruncatedSpace,
                      hamiltonian_superop, lindblad_superop, mode_operators)

#: advisory bound for the weak-mechanical-drive regime, as a fraction of gamma_c
WEAK_DRIVE_FRACTION = 0.5

#: advisory bound for |delta|, |delta_m| relative to omega_m
DETUNING_FRACTION = 0.1


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory-frame parameters of the driven optomechanical system.

    Frequencies and rates are angular and share one unit system; Omega is
    the (complex) strong optical drive amplitude and epsilon the real
    mechanical drive amplitude.
    """

    omega_c: float
    omega_L: float
    omega_m: float
    omega_d: float
    g: float
    Omega: complex
    epsilon: float
    gamma_c: float
    gamma_m: float
    n_th: float

    def __post_init__(self):
        if self.gamma_c <= 0:
            raise RateError(f"gamma_c must be positive, got {self.gamma_c}")
        if self.gamma_m <= 0:
            raise RateError(f"gamma_m must be positive, got {self.gamma_m}")
        if self.g <= 0:
            raise RateError(f"g must be positive, got {self.g}")
        if self.n_th < 0:
            raise DomainError(f"n_th must be >= 0, got {self.n_th}")
        if abs(self.epsilon) > WEAK_DRIVE_FRACTION * self.gamma_c:
            warnings.warn(
                f"mechanical drive epsilon={self.epsilon} is not small against "
                f"gamma_c={self.gamma_c}; the weak-drive regime is assumed",
                stacklevel=2)

    @property
    def delta_c(self) -> float:
        """Detuning of the strong optical drive from the cavity."""
        return self.omega_c - self.omega_L


@dataclass(frozen=True)
class EffectiveParams:
    """Rotating-frame effective parameters.

    Either constructed directly (the figure scans fix J as a real knob) or
    derived from PhysicalParams, in which case `alpha` and `omega_0` carry
    the mean field and the shifted mechanical frequency and any regime
    warnings are attached to `validity_warnings`.
    """

    delta: float
    delta_m: float
    J: complex
    epsilon: float
    gamma_c: float
    gamma_m: float
    n_th: float
    alpha: complex = None
    omega_0: float = None
    validity_warnings: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.gamma_c <= 0:
            raise RateError(f"gamma_c must be positive, got {self.gamma_c}")
        if self.gamma_m <= 0:
            raise RateError(f"gamma_m must be positive, got {self.gamma_m}")
        if self.n_th < 0:
            raise DomainError(f"n_th must be >= 0, got {self.n_th}")


def mean_field_alpha(Omega: complex, delta_c: float, gamma_c: float) -> complex:
    """Steady optical mean field -2i*Omega / (gamma_c + 2i*delta_c).

    The mechanical steady means vanish (Q_s = P_s = 0) and are not computed.
    """
    if gamma_c <= 0:
        raise RateError(f"gamma_c must be positive, got {gamma_c}")
    return -2j * Omega / (gamma_c + 2j * delta_c)


def derive_effective(p: PhysicalParams) -> EffectiveParams:
    """Map laboratory-frame parameters onto the effective rotating-frame model.

    alpha from `mean_field_alpha`, delta = (omega_c - omega_L) - 2*omega_d,
    delta_m = omega_m + 2 g |alpha|^2 - omega_d, J = g*alpha. Regime checks
    (detunings small against omega_m, mean field large) are advisory: they
    are emitted as warnings and attached to the result, never enforced.
    """
    alpha = mean_field_alpha(p.Omega, p.delta_c, p.gamma_c)
    omega_0 = p.omega_m + 2.0 * p.g * abs(alpha) ** 2
    delta = p.delta_c - 2.0 * p.omega_d
    delta_m = omega_0 - p.omega_d
    notes = []
    if abs(delta) > DETUNING_FRACTION * abs(p.omega_m):
        notes.append(f"|delta|={abs(delta):.3g} is not small against "
                     f"omega_m={p.omega_m:.3g}")
    if abs(delta_m) > DETUNING_FRACTION * abs(p.omega_m):
        notes.append(f"|delta_m|={abs(delta_m):.3g} is not small against "
                     f"omega_m={p.omega_m:.3g}")
    if abs(alpha) <= 10.0:
        notes.append(f"|alpha|={abs(alpha):.3g} is not large; the linearization "
                     "needs |alpha|^2 >> <a+a>")
    for note in notes:
        warnings.warn(note, stacklevel=2)
    return EffectiveParams(
        delta=delta, delta_m=delta_m, J=p.g * alpha, epsilon=p.epsilon,
        gamma_c=p.gamma_c, gamma_m=p.gamma_m, n_th=p.n_th,
        alpha=alpha, omega_0=omega_0, validity_warnings=tuple(notes))


@functools.lru_cache(maxsize=16)
def _cached_ops(space: TruncatedSpace):
    a, b = mode_operators(space)
    return {
        "a": a, "b": b, "ad": a.dag(), "bd": b.dag(),
        "na": a.dag() @ a, "nb": b.dag() @ b,
        "D_a": lindblad_superop(a),
        "D_b": lindblad_superop(b),
        "D_bd": lindblad_superop(b.dag()),
    }


def build_h_eff(ep: EffectiveParams, space: TruncatedSpace) -> CsOperator:
    """Assemble the effective Hamiltonian on the truncated space.

    delta a+a + delta_m b+b + J a+ b b + conj(J) a b+ b+ + (eps b+ + c.c.),
    Hermitian by construction and asserted so to 1e-12.
    """
    ops = _cached_ops(space)
    a, b, ad, bd = ops["a"], ops["b"], ops["ad"], ops["bd"]
    eps = complex(ep.epsilon)
    h = (ep.delta * ops["na"] + ep.delta_m * ops["nb"]
         + complex(ep.J) * (ad @ b @ b) + complex(ep.J).conjugate() * (a @ bd @ bd)
         + eps * bd + eps.conjugate() * b)
    if not h.is_hermitian(HERMITICITY_TOL):
        raise AssertionError("effective Hamiltonian assembly lost Hermiticity")
    return h


def build_liouvillian(ep: EffectiveParams, space: TruncatedSpace) -> CsOperator:
    """Assemble the Lindblad generator as a superoperator.

    -i[H, .] + gamma_c D[a] + gamma_m (n_th + 1) D[b] + gamma_m n_th D[b+].
    The photon bath is at zero temperature; only the mechanical bath is
    thermal.
    """
    ops = _cached_ops(space)
    h_part = hamiltonian_superop(build_h_eff(ep, space))
    lv = (h_part
          + ep.gamma_c * ops["D_a"]
          + ep.gamma_m * (ep.n_th + 1.0) * ops["D_b"])
    if ep.n_th > 0:
        lv = lv + ep.gamma_m * ep.n_th * ops["D_bd"]
    return lv


def j_opt(gamma_c: float, gamma_m: float) -> float:
    """Optimal coupling sqrt((2 gamma_m + gamma_c)(gamma_m + gamma_c) / 8).

    At this coupling the two-photon amplitude of the weak-drive ansatz
    vanishes and photon antibunching is deepest. gamma_m = 0 is accepted as
    the undamped-mechanics limit.
    """
    if gamma_c <= 0:
        raise RateError(f"gamma_c must be positive, got {gamma_c}")
    if gamma_m < 0:
        raise RateError(f"gamma_m must be >= 0, got {gamma_m}")
    return math.sqrt((2.0 * gamma_m + gamma_c) * (gamma_m + gamma_c) / 8.0)


def n_th_from_temperature(omega_m: float, temperature: float) -> float:
    """Bose-Einstein occupation [exp(omega_m / T) - 1]^-1 with hbar = k_B = 1."""
    if temperature <= 0:
        raise DomainError(f"temperature must be positive, got {temperature}")
    if omega_m <= 0:
        raise DomainError(f"omega_m must be positive, got {omega_m}")
    ratio = omega_m / temperature
    if ratio > 700.0:  # expm1 would overflow; the occupation underflows to 0
        return 0.0
    return 1.0 / math.expm1(ratio)

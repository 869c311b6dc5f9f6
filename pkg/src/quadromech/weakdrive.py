"""Analytic weak-driving machinery: ansatz coefficients and manifold spectra.

Under resonant driving (delta = delta_m = 0) and a drive weak enough that
n_a, n_b << 1, the state is well approximated by a superposition over the
two-photon / four-phonon ladder {|0,0> ... |0,4>, |1,2>, |2,0>}. Adding the
mode dampings to the Schroedinger dynamics and setting time derivatives to
zero turns the amplitudes into an 8x8 complex linear system (the vacuum
amplitude is pinned to 1, matching the perturbative bookkeeping). Setting
the two-photon amplitude to zero yields the closed-form optimal coupling of
`model.j_opt`; both the amplitude of |2,0> and of |1,2> vanish there, which
is the destructive-interference signature behind the unconventional photon
blockade.

The manifold spectrum utilities diagonalize the undriven coupling Hamiltonian
restricted to one conserved-charge manifold N = 2 n_a + n_b, reproducing the
dressed states that organize the resonance structure at strong coupling.
"""

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SingularSystemError
from .hilbert import TruncatedSpace
from .model import EffectiveParams

#: tolerance on |delta|, |delta_m| for the resonant-derivation precondition
RESONANCE_TOL = 1e-12

#: advisory tier ratio of the coefficient hierarchy
HIERARCHY_RATIO = 0.5

_STATE_ORDER = ("c00", "c01", "c02", "c10", "c03", "c11", "c04", "c12", "c20")
_UNKNOWNS = _STATE_ORDER[1:]

#: manifold basis states (photon, phonon), photon-major, per charge N
MANIFOLD_BASIS = {
    0: ((0, 0),),
    1: ((0, 1),),
    2: ((1, 0), (0, 2)),
    3: ((1, 1), (0, 3)),
    4: ((2, 0), (1, 2), (0, 4)),
}


@dataclass(frozen=True)
class AnsatzCoefficients:
    """Steady-state amplitudes C_nm of the truncated wavefunction."""

    c00: complex
    c01: complex
    c02: complex
    c10: complex
    c03: complex
    c11: complex
    c04: complex
    c12: complex
    c20: complex

    def tiers(self):
        """Magnitude tiers ordered from vacuum downward."""
        return (
            (abs(self.c00),),
            (abs(self.c01),),
            (abs(self.c02), abs(self.c10)),
            (abs(self.c03), abs(self.c11)),
            (abs(self.c04), abs(self.c12), abs(self.c20)),
        )

    def hierarchy_ok(self, ratio: float = HIERARCHY_RATIO) -> bool:
        """Whether each tier is at most `ratio` times the previous tier's max."""
        tiers = self.tiers()
        return all(max(low) <= ratio * max(high)
                   for high, low in zip(tiers, tiers[1:]))


class AnsatzG2(NamedTuple):
    g2_aa_0: float
    g2_bb_0: float
    g2_ab_0: float


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenstructure of one conserved-charge manifold."""

    manifold: int
    basis: tuple
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column k belongs to eigenvalues[k]


def _coefficient_system(ep: EffectiveParams):
    """The 8x8 system A x = rhs for the non-vacuum amplitudes, c00 = 1."""
    gc, gm, eps = ep.gamma_c, ep.gamma_m, ep.epsilon
    J = complex(ep.J)
    s2, s3, s6 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(6.0)
    col = {name: k for k, name in enumerate(_UNKNOWNS)}
    A = np.zeros((8, 8), dtype=complex)
    rhs = np.zeros(8, dtype=complex)

    A[0, col["c01"]] = -gm / 2
    rhs[0] = 1j * eps  # vacuum source term, c00 = 1

    A[1, col["c10"]] = -gc / 2
    A[1, col["c02"]] = -1j * s2 * J

    A[2, col["c02"]] = -gm
    A[2, col["c10"]] = -1j * s2 * J
    A[2, col["c01"]] = -1j * s2 * eps

    A[3, col["c11"]] = -(gc + gm) / 2
    A[3, col["c03"]] = -1j * s6 * J
    A[3, col["c10"]] = -1j * eps

    A[4, col["c03"]] = -3 * gm / 2
    A[4, col["c11"]] = -1j * s6 * J
    A[4, col["c02"]] = -1j * s3 * eps

    A[5, col["c20"]] = -gc
    A[5, col["c12"]] = -2j * J

    A[6, col["c12"]] = -(gc + 2 * gm) / 2
    A[6, col["c04"]] = -2j * s3 * J
    A[6, col["c20"]] = -2j * J
    A[6, col["c11"]] = -1j * s2 * eps

    A[7, col["c04"]] = -2 * gm
    A[7, col["c12"]] = -2j * s3 * J
    A[7, col["c03"]] = -2j * eps
    return A, rhs


def solve_coefficients(ep: EffectiveParams) -> AnsatzCoefficients:
    """Steady-state ansatz amplitudes at resonance (delta = delta_m = 0).

    The derivation assumes resonant driving; off-resonant parameters are
    rejected. The hierarchy |c00| >> |c01| >> ... is advisory and only
    warned about: near epsilon ~ gamma_m / 2 the first tier saturates.
    """
    scale = max(abs(ep.gamma_c), 1.0)
    if abs(ep.delta) > RESONANCE_TOL * scale or abs(ep.delta_m) > RESONANCE_TOL * scale:
        raise DomainError(
            f"the coefficient system is derived at resonance; got "
            f"delta={ep.delta}, delta_m={ep.delta_m}")
    if ep.epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {ep.epsilon}")
    A, rhs = _coefficient_system(ep)
    try:
        x = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"coefficient system is singular: {exc}") from exc
    coeffs = AnsatzCoefficients(1.0 + 0.0j, *x)
    if not coeffs.hierarchy_ok():
        warnings.warn(
            "ansatz coefficient hierarchy is violated; the weak-drive "
            "approximation is marginal at these parameters", stacklevel=2)
    return coeffs


def equation_residuals(coeffs: AnsatzCoefficients, ep: EffectiveParams) -> np.ndarray:
    """Absolute residuals of the eight steady-state amplitude equations."""
    A, rhs = _coefficient_system(ep)
    x = np.array([getattr(coeffs, name) for name in _UNKNOWNS], dtype=complex)
    return np.abs(A @ x - rhs * coeffs.c00)


def ansatz_occupations(coeffs: AnsatzCoefficients):
    """(n_a, n_b) of the normalized-to-vacuum ansatz state."""
    p = {name: abs(getattr(coeffs, name)) ** 2 for name in _STATE_ORDER}
    n_a = p["c10"] + p["c11"] + p["c12"] + 2 * p["c20"]
    n_b = p["c01"] + 2 * p["c02"] + 3 * p["c03"] + p["c11"] + 4 * p["c04"] + 2 * p["c12"]
    return n_a, n_b


def ansatz_g2(coeffs: AnsatzCoefficients) -> AnsatzG2:
    """Equal-time correlations predicted by the ansatz occupation probabilities.

    All truncation-level terms are kept (rather than only the leading order)
    so that order-counting mistakes cannot hide; the hierarchy check is the
    certificate that dropped higher states are negligible.
    """
    p = {name: abs(getattr(coeffs, name)) ** 2 for name in _STATE_ORDER}
    n_a, n_b = ansatz_occupations(coeffs)
    # <a+a+aa> = 2 p20; <b+b+bb> = sum m(m-1) p_nm; <a+a b+b> = sum n m p_nm
    g2_aa = 2 * p["c20"] / n_a ** 2 if n_a > 0 else 0.0
    g2_bb = ((2 * p["c02"] + 6 * p["c03"] + 12 * p["c04"] + 2 * p["c12"]) / n_b ** 2
             if n_b > 0 else 0.0)
    g2_ab = ((p["c11"] + 2 * p["c12"]) / (n_a * n_b)
             if n_a > 0 and n_b > 0 else 0.0)
    return AnsatzG2(g2_aa, g2_bb, g2_ab)


def manifold_hamiltonian(J: complex, N: int) -> np.ndarray:
    """Coupling Hamiltonian J a+ b b + conj(J) a b+ b+ restricted to charge N."""
    if N not in MANIFOLD_BASIS:
        raise DomainError(f"manifold must be one of {sorted(MANIFOLD_BASIS)}, got {N}")
    basis = MANIFOLD_BASIS[N]
    size = len(basis)
    h = np.zeros((size, size), dtype=complex)
    index = {state: k for k, state in enumerate(basis)}
    for (n, m), k in index.items():
        # a+ b b : (n, m) -> (n+1, m-2) with sqrt(n+1) sqrt(m (m-1))
        target = (n + 1, m - 2)
        if target in index:
            amp = J * math.sqrt(n + 1) * math.sqrt(m * (m - 1))
            h[index[target], k] += amp
            h[k, index[target]] += np.conj(amp)
    return h


def manifold_spectrum(J: float, N: int) -> SpectrumReport:
    """Diagonalize one conserved-charge manifold of the undriven Hamiltonian.

    Valid at delta = delta_m = 0 and epsilon = 0, where 2 a+a + b+b is
    conserved. Eigenvalues are sorted ascending; eigenvector columns are
    unit-norm coordinates over the photon-major manifold basis.
    """
    h = manifold_hamiltonian(J, N)
    eigvals, eigvecs = np.linalg.eigh(h)
    return SpectrumReport(
        manifold=N, basis=MANIFOLD_BASIS[N],
        eigenvalues=eigvals, eigenvectors=eigvecs)


def manifold_in_full_space(space: TruncatedSpace, N: int):
    """Indices of the manifold basis states inside a full truncated space."""
    if N not in MANIFOLD_BASIS:
        raise DomainError(f"manifold must be one of {sorted(MANIFOLD_BASIS)}, got {N}")
    return [space.index(n, m) for n, m in MANIFOLD_BASIS[N]]

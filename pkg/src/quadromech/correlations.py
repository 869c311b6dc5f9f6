"""Equal-time second-order statistics from a steady-state density matrix.

g2_aa(0) = <a+a+aa>/n_a^2 and g2_bb(0) likewise diagnose photon and phonon
blockade (g2 < 1) or bunching (g2 > 1); the cross statistic g2_ab(0) uses
the normally ordered form <a+a b+b>/(n_a n_b), which the general
cross-correlation reduces to at zero delay because operators of distinct
modes commute.
"""

import functools
from dataclasses import dataclass

from .errors import UndefinedCorrelationError
from .hilbert import TruncatedSpace, expect
from .model import EffectiveParams, build_liouvillian, _cached_ops
from .steady import DensityMatrix, occupations, steady_state

#: occupations below this make the normalized correlation undefined
DENOMINATOR_GUARD = 1e-12


@dataclass(frozen=True)
class CorrelationRecord:
    """All equal-time observables of one parameter point."""

    params: EffectiveParams
    n_a: float
    n_b: float
    g2_aa_0: float
    g2_bb_0: float
    g2_ab_0: float
    space: TruncatedSpace


@functools.lru_cache(maxsize=16)
def _correlator_ops(space: TruncatedSpace):
    ops = _cached_ops(space)
    a, b, ad, bd = ops["a"], ops["b"], ops["ad"], ops["bd"]
    return {
        "aa": ad @ ad @ a @ a,
        "bb": bd @ bd @ b @ b,
        "ab": ops["na"] @ ops["nb"],
    }


def g2_zero(rho: DensityMatrix, kind: str) -> float:
    """Equal-time second-order correlation of one kind ("aa", "bb" or "ab")."""
    if kind not in ("aa", "bb", "ab"):
        raise ValueError(f"kind must be aa, bb or ab, got {kind!r}")
    n_a, n_b = occupations(rho)
    if kind == "aa":
        denom = n_a * n_a
        guard = n_a
    elif kind == "bb":
        denom = n_b * n_b
        guard = n_b
    else:
        denom = n_a * n_b
        guard = min(n_a, n_b)
    if guard <= DENOMINATOR_GUARD:
        raise UndefinedCorrelationError(
            f"g2_{kind}(0) is undefined: occupation {guard:.3e} below guard")
    numer = expect(_correlator_ops(rho.space)[kind], rho.entries).real
    return numer / denom


def record(ep: EffectiveParams, space: TruncatedSpace) -> CorrelationRecord:
    """One steady-state solve feeding all five observables of a point."""
    rho = steady_state(build_liouvillian(ep, space))
    n_a, n_b = occupations(rho)
    return CorrelationRecord(
        params=ep, n_a=n_a, n_b=n_b,
        g2_aa_0=g2_zero(rho, "aa"),
        g2_bb_0=g2_zero(rho, "bb"),
        g2_ab_0=g2_zero(rho, "ab"),
        space=space)

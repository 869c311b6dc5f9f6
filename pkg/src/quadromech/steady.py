"""Steady states of the Liouvillian and truncation-convergence control.

The steady state solves L vec(rho) = 0 with Tr rho = 1. The primary path
replaces the Liouvillian row belonging to the vacuum-vacuum diagonal entry
with the trace functional and LU-factorizes the resulting nonsingular sparse
system; a dense SVD null-space extraction backs it up when the LU path is
singular or misses the residual target. Positivity is checked, never
projected: a steady state outside tolerance is a bug upstream, not something
to clean up silently.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (DegenerateSteadyStateError, OperatorShapeError,
                     SteadyStateResidualError, SuperoperatorTypeError,
                     TruncationDivergenceError)
from .hilbert import CsOperator, TruncatedSpace, trace_vector, unvec, vec, expect
from . import model

#: residual tolerance is RESIDUAL_FACTOR * dim in the max norm
RESIDUAL_FACTOR = 1e-10

#: Hermiticity / unit-trace tolerance of a returned density matrix
DM_TOL = 1e-10

#: most negative eigenvalue tolerated by the positivity check
PSD_TOL = -1e-8

#: null-space degeneracy threshold relative to the largest singular value
DEGENERACY_TOL = 1e-8

#: hard cap on the Hilbert dimension during convergence growth
DIM_CAP = 4096

#: occupations below this are treated as exact zeros by convergence control
OCCUPATION_GUARD = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Trace-one state on a truncated space, stored dense."""

    space: TruncatedSpace
    entries: np.ndarray

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def check(self):
        """Verify Hermiticity, unit trace and positivity; raise on violation."""
        rho = self.entries
        herm = np.abs(rho - rho.conj().T).max()
        if herm > DM_TOL:
            raise SteadyStateResidualError(
                f"density matrix is non-Hermitian: max|rho - rho+| = {herm:.3e}")
        tr = np.trace(rho)
        if abs(tr - 1.0) > DM_TOL:
            raise SteadyStateResidualError(
                f"density matrix trace deviates from 1 by {abs(tr - 1.0):.3e}")
        mineig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
        if mineig < PSD_TOL:
            raise SteadyStateResidualError(
                f"density matrix has negative eigenvalue {mineig:.3e}")
        return self


@dataclass(frozen=True)
class ConvergenceReport:
    """Outcome of the cutoff-growth loop."""

    final_space: TruncatedSpace
    observable_deltas: tuple
    converged: bool


def _require_liouvillian(lv):
    if not isinstance(lv, CsOperator) or not lv.superop:
        raise SuperoperatorTypeError("steady_state expects a Liouvillian superoperator")
    dim = int(round(math.sqrt(lv.shape[0])))
    if dim * dim != lv.shape[0]:
        raise OperatorShapeError(f"superoperator size {lv.shape[0]} is not a square")
    return dim


def _traced_system(lv, dim):
    # replace the row of the (vacuum, vacuum) diagonal entry (vec index 0)
    # with the trace functional; the system becomes square and nonsingular
    n2 = lv.shape[0]
    mat = lv.entries.tocsr(copy=True)
    keep = np.ones(n2)
    keep[0] = 0.0
    mat = sp.diags(keep) @ mat
    trace_row = sp.csr_matrix(
        (np.ones(dim), (np.zeros(dim, dtype=int), np.arange(0, n2, dim + 1))),
        shape=(1, n2), dtype=complex)
    mat = mat + sp.vstack(
        [trace_row, sp.csr_matrix((n2 - 1, n2), dtype=complex)]).tocsr()
    rhs = np.zeros(n2, dtype=complex)
    rhs[0] = 1.0
    return mat.tocsc(), rhs


def _lu_solve(lv, dim):
    mat, rhs = _traced_system(lv, dim)
    lu = spla.splu(mat)
    x = lu.solve(rhs)
    # one round of iterative refinement keeps the residual near roundoff
    x = x + lu.solve(rhs - mat @ x)
    return x


def _dense_null_solve(lv, dim):
    dense = lv.entries.toarray()
    svals = np.linalg.svd(dense, compute_uv=False)
    _, _, vh = np.linalg.svd(dense)
    smallest, second = svals[-1], svals[-2]
    scale = svals[0] if svals[0] > 0 else 1.0
    if second < DEGENERACY_TOL * scale:
        raise DegenerateSteadyStateError(
            f"Liouvillian null space is degenerate: two smallest singular "
            f"values {smallest:.3e}, {second:.3e} (largest {scale:.3e})",
            singular_values=(float(smallest), float(second)))
    x = vh[-1].conj()
    tr = trace_vector(dim) @ x
    if abs(tr) < 1e-12:
        raise DegenerateSteadyStateError(
            f"null vector is traceless (trace {abs(tr):.3e}); no normalizable "
            "steady state",
            singular_values=(float(smallest), float(second)))
    return x / tr


def steady_state(lv: CsOperator, method: str = "auto") -> DensityMatrix:
    """Unique steady state of a Liouvillian superoperator.

    Parameters
    ----------
    lv : CsOperator
        Superoperator built by `model.build_liouvillian` (or compatible).
    method : {"auto", "lu", "dense"}
        "lu" forces the trace-row sparse LU path, "dense" the SVD null-space
        oracle; "auto" tries LU and falls back to dense if LU is singular or
        misses the residual target.

    The result satisfies |L vec(rho)|_inf < 1e-10 * dim and passes the
    Hermiticity / trace / positivity checks of `DensityMatrix.check`.
    """
    dim = _require_liouvillian(lv)
    tol = RESIDUAL_FACTOR * dim

    x = None
    if method in ("auto", "lu"):
        try:
            x = _lu_solve(lv, dim)
        except RuntimeError as exc:  # splu signals exact singularity this way
            if method == "lu":
                raise SteadyStateResidualError(f"sparse LU failed: {exc}") from exc
            x = None
        if x is not None and np.abs(lv.entries @ x).max() >= tol:
            if method == "lu":
                raise SteadyStateResidualError(
                    f"LU steady state misses residual target {tol:.3e}")
            x = None
    if x is None:
        if method not in ("auto", "dense"):
            raise ValueError(f"unknown method {method!r}")
        x = _dense_null_solve(lv, dim)

    residual = float(np.abs(lv.entries @ x).max())
    if residual >= tol:
        raise SteadyStateResidualError(
            f"steady-state residual {residual:.3e} exceeds {tol:.3e}")
    rho = DensityMatrix(lv.space, unvec(x, dim))
    rho.check()
    return rho


def occupations(rho: DensityMatrix):
    """Mean photon and phonon numbers (n_a, n_b) of a state."""
    ops = model._cached_ops(rho.space)
    vals = []
    for key in ("na", "nb"):
        val = expect(ops[key], rho.entries)
        if abs(val.imag) > 1e-10 or val.real < -1e-10:
            raise SteadyStateResidualError(
                f"occupation <{key}> = {val} is not a nonnegative real")
        vals.append(val.real)
    return tuple(vals)


def _grow(cutoff: int) -> int:
    return cutoff + math.ceil(cutoff * 0.5)


def _observable_vector(ep, space):
    # n_a, n_b and the three equal-time g2 values; occupations below the
    # guard snap to exact zero and their g2 entries follow suit
    from .correlations import g2_zero

    rho = steady_state(model.build_liouvillian(ep, space))
    n_a, n_b = occupations(rho)
    if n_a <= OCCUPATION_GUARD:
        n_a = 0.0
    if n_b <= OCCUPATION_GUARD:
        n_b = 0.0
    vals = {"n_a": n_a, "n_b": n_b}
    vals["g2_aa_0"] = g2_zero(rho, "aa") if n_a else 0.0
    vals["g2_bb_0"] = g2_zero(rho, "bb") if n_b else 0.0
    vals["g2_ab_0"] = g2_zero(rho, "ab") if n_a and n_b else 0.0
    return rho, vals


def converge_truncation(ep, start: TruncatedSpace, tol: float = 1e-4,
                        max_dim: int = DIM_CAP):
    """Grow both cutoffs by 50% until the observables stop moving.

    Returns (DensityMatrix, ConvergenceReport) once n_a, n_b and the three
    equal-time g2 values each change by less than `tol` relative between
    successive spaces (exact zeros count as converged). Raises
    TruncationDivergenceError, with the report attached, if the next space
    would exceed `max_dim` before convergence. Solve cost grows steeply with
    dimension; the default cap is a hard stop, not a promise of feasibility.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    rho, prev = _observable_vector(ep, start)
    if all(v == 0.0 for v in prev.values()):
        # empty system (no drive): growing cutoffs cannot move exact zeros
        report = ConvergenceReport(start, tuple((k, 0.0) for k in prev),
                                   converged=True)
        return rho, report
    space = start
    while True:
        nxt = TruncatedSpace(_grow(space.n_photon_max), _grow(space.n_phonon_max))
        if nxt.dim > max_dim:
            report = ConvergenceReport(space, tuple(
                (k, float("nan")) for k in prev), converged=False)
            raise TruncationDivergenceError(
                f"next space {nxt} exceeds the dimension cap {max_dim} before "
                f"convergence at tol={tol}", report=report)
        rho, cur = _observable_vector(ep, nxt)
        deltas = []
        for key, value in cur.items():
            if value == 0.0 and prev[key] == 0.0:
                deltas.append((key, 0.0))
            else:
                denom = max(abs(value), abs(prev[key]))
                deltas.append((key, abs(value - prev[key]) / denom))
        if all(d < tol for _, d in deltas):
            return rho, ConvergenceReport(nxt, tuple(deltas), converged=True)
        space, prev = nxt, cur

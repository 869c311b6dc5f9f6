"""Photon-phonon statistics of a quadratically coupled optomechanical system.

Steady states of the linearized model, equal-time and delayed second-order
correlations, the weak-driving amplitude ansatz and the closed-form optimal
coupling for unconventional photon blockade, plus the figure-scan sweep
engine behind the ``quadromech`` command line tool.
"""

from ._version import __version__
from .correlations import CorrelationRecord, g2_zero, record
from .errors import (ConfigError, DegenerateSteadyStateError, DomainError,
                     OperatorShapeError, QuadromechError, RateError,
                     SingularSystemError, SteadyStateResidualError,
                     SuperoperatorTypeError, SweepSpecError,
                     TruncationDivergenceError, TruncationError,
                     UndefinedCorrelationError)
from .hilbert import (CsOperator, TruncatedSpace, annihilation, apply_superop,
                      basis_state, creation, default_space, embed, expect,
                      fock_density, hamiltonian_superop, identity,
                      lindblad_superop, mode_operators, number, trace_vector,
                      unvec, vec)
from .model import (EffectiveParams, PhysicalParams, build_h_eff,
                    build_liouvillian, derive_effective, j_opt,
                    mean_field_alpha, n_th_from_temperature)
from .regression import (CorrelationSeries, dominant_oscillation_frequency,
                         g2_tau, propagate)
from .steady import (ConvergenceReport, DensityMatrix, converge_truncation,
                     occupations, steady_state)
from .sweep import (Axis, SCENARIOS, SweepResult, SweepRow, SweepSpec,
                    builtin_scenario, find_extrema, run_sweep)
from .weakdrive import (AnsatzCoefficients, AnsatzG2, SpectrumReport,
                        ansatz_g2, ansatz_occupations, equation_residuals,
                        manifold_hamiltonian, manifold_in_full_space,
                        manifold_spectrum, solve_coefficients)

__all__ = [
    "__version__",
    "Axis", "AnsatzCoefficients", "AnsatzG2", "ConfigError",
    "ConvergenceReport", "CorrelationRecord", "CorrelationSeries",
    "CsOperator", "DegenerateSteadyStateError", "DensityMatrix",
    "DomainError", "EffectiveParams", "OperatorShapeError", "PhysicalParams",
    "QuadromechError", "RateError", "SCENARIOS", "SingularSystemError",
    "SpectrumReport", "SteadyStateResidualError", "SuperoperatorTypeError",
    "SweepResult", "SweepRow", "SweepSpec", "TruncatedSpace",
    "TruncationDivergenceError", "TruncationError",
    "UndefinedCorrelationError",
    "annihilation", "ansatz_g2", "ansatz_occupations", "apply_superop",
    "basis_state", "build_h_eff", "build_liouvillian", "builtin_scenario",
    "converge_truncation", "creation", "default_space", "derive_effective",
    "dominant_oscillation_frequency", "embed", "equation_residuals",
    "expect", "find_extrema", "fock_density", "g2_tau", "g2_zero",
    "hamiltonian_superop", "identity", "j_opt", "lindblad_superop",
    "manifold_hamiltonian", "manifold_in_full_space", "manifold_spectrum",
    "mean_field_alpha", "mode_operators", "n_th_from_temperature", "number",
    "occupations", "propagate", "record", "run_sweep", "solve_coefficients",
    "steady_state", "trace_vector", "unvec", "vec",
]

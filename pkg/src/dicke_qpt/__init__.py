"""Ground-state entanglement of the single-mode Dicke model.

Finite-N results come from exact diagonalization in a truncated Fock (x)
Dicke basis with certified cutoff convergence; thermodynamic-limit results
come from the exact bosonized solution of both coupling phases.
"""

from .eigensolver import GroundState, converge_cutoff, ground_state
from .entanglement import (ReducedDensityMatrix, average_linear_entropy_Q,
                           inverse_participation_ratio, linear_entropy,
                           meyer_wallach_Q_generic, partial_trace,
                           single_atom_rdm, von_neumann_entropy)
from .errors import (CapacityError, ConfigError, CutoffConvergenceError,
                     DickeError, FitError, GridCoverageError, IntegrityError,
                     ParameterError, PhaseError, SolverError)
from .model import (BasisIndex, ModelParams, assemble_hamiltonian, build_basis,
                    dump_matrix, make_params, parity_operator)
from .perturbative import (PerturbativeResult, perturbative_entropy,
                           strong_coupling_entropy_limit, strong_coupling_state)
from .sweep import (MeasureReport, ScalingFit, SweepConfig, SweepFailure, emit,
                    fit_critical_exponents, fit_entropy_scaling, run_sweep)
from .thermo import (GaussianRDMParams, NormalPhaseSolution, SRPhaseSolution,
                     ThermalOscillator, critical_asymptote,
                     effective_temperature, entropy_td, ipr_td,
                     linear_entropy_td, normal_solution, q_td,
                     q_td_derivative, rdm_params, sr_solution)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

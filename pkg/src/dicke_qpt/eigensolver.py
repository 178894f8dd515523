"""Ground-state extraction and boson-cutoff convergence certification.

The ground eigenpair is taken from the positive-parity sector by default
(the finite-N ground state has positive parity).  Dense diagonalization is
used up to DENSE_LIMIT; above that an implicitly restarted Lanczos solve
with a deterministic start vector keeps output reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import CutoffConvergenceError, SolverError
from .model import (DEFAULT_MAX_DIMENSION, BasisIndex, ModelParams,
                    assemble_hamiltonian, build_basis)

DENSE_LIMIT = 2000
DEFAULT_TOL = 1e-10
DEFAULT_ENERGY_TOL = 1e-9
TOP_WEIGHT_LIMIT = 1e-8


@dataclass(frozen=True)
class GroundState:
    """Ground eigenpair over a BasisIndex.

    amplitudes is the full-basis real vector (unit norm, deterministic sign:
    the largest-magnitude amplitude is positive).  parity is +1 when the
    solve was parity-projected.  converged marks cutoff certification by
    converge_cutoff, not the eigensolve itself; residual is ||Hv - Ev||_2.
    doublet_gap is reported for unprojected solves (lowest two levels).
    """

    energy: float
    amplitudes: np.ndarray
    parity: int
    n_max_used: int
    residual: float
    converged: bool
    basis: BasisIndex
    doublet_gap: float | None = None

    def reshape(self) -> np.ndarray:
        return self.basis.reshape(self.amplitudes)

    def top_fock_weight(self) -> float:
        return float((self.reshape()[-1] ** 2).sum())


def _lowest_eigenpairs(H: sp.spmatrix, k: int, tol: float):
    dim = H.shape[0]
    if dim <= DENSE_LIMIT or k >= dim - 1:
        w, v = np.linalg.eigh(H.toarray())
        return w[:k], v[:, :k]
    # deterministic start vector keeps repeated runs bit-identical
    v0 = np.full(dim, 1.0 / math.sqrt(dim))
    v0[0] += 0.5
    w, v = spla.eigsh(H, k=k, which="SA", v0=v0, tol=tol * 1e-2,
                      maxiter=max(5000, 40 * dim))
    order = np.argsort(w)
    return w[order], v[:, order]


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    if vec[np.argmax(np.abs(vec))] < 0:
        return -vec
    return vec


def ground_state(hamiltonian: sp.spmatrix, basis: BasisIndex,
                 tol: float = DEFAULT_TOL,
                 project_parity: bool = True) -> GroundState:
    """Certified lowest eigenpair of the (optionally parity-projected) Hamiltonian.

    Raises SolverError (carrying the best residual) if the residual check
    ||Hv - Ev|| <= tol * |E| cannot be met.
    """
    if project_parity:
        idx = basis.parity_indices(+1)
        Hp = hamiltonian[idx][:, idx]
        w, v = _lowest_eigenpairs(Hp, 1, tol)
        energy = float(w[0])
        amplitudes = np.zeros(basis.dim)
        amplitudes[idx] = v[:, 0]
        parity = +1
        gap = None
    else:
        w, v = _lowest_eigenpairs(hamiltonian, 2, tol)
        energy = float(w[0])
        amplitudes = v[:, 0]
        gap = float(w[1] - w[0])
        sector = float(np.sum(basis.parity * amplitudes**2))
        parity = int(round(sector)) if abs(sector) > 0.5 else 0

    amplitudes = _fix_sign(amplitudes / np.linalg.norm(amplitudes))
    residual = float(np.linalg.norm(hamiltonian @ amplitudes - energy * amplitudes))
    threshold = tol * (abs(energy) if energy != 0 else 1.0)
    if residual > threshold:
        raise SolverError(
            f"residual {residual:.3e} above tolerance {threshold:.3e} "
            f"(dim={basis.dim})", residual=residual)
    return GroundState(energy=energy, amplitudes=amplitudes, parity=parity,
                       n_max_used=basis.n_max, residual=residual,
                       converged=False, basis=basis, doublet_gap=gap)


def suggest_cutoff(params: ModelParams, floor: int = 8) -> int:
    """Starting cutoff from the coherent-displacement estimate.

    The field displacement amplitude is of order sqrt(2j) * coupling / omega;
    covering its Poisson tail needs n_max >= alpha^2 + 6 * alpha.
    """
    alpha = math.sqrt(2.0 * params.j) * params.coupling / params.omega
    return max(floor, math.ceil(alpha**2 + 6.0 * alpha))


def converge_cutoff(params: ModelParams,
                    n_max_start: int | None = None,
                    growth: float = 1.5,
                    energy_tol: float = DEFAULT_ENERGY_TOL,
                    tol: float = DEFAULT_TOL,
                    project_parity: bool = True,
                    max_dim: int = DEFAULT_MAX_DIMENSION) -> GroundState:
    """Escalate n_max until the ground energy and Fock tail are certified.

    Convergence requires successive ground energies to agree within
    energy_tol and the weight on the top Fock layer to stay below 1e-8.
    Returns the final GroundState with converged=True and n_max_used set.
    Raises CutoffConvergenceError (with the observed energy sequence) if the
    dimension ceiling is hit first.
    """
    if growth <= 1.0:
        raise ValueError(f"growth must exceed 1, got {growth}")
    n_max = n_max_start if n_max_start is not None else suggest_cutoff(params)
    history: list[float] = []
    prev: GroundState | None = None
    while True:
        try:
            basis = build_basis(params, n_max, max_dim=max_dim)
        except Exception as exc:
            raise CutoffConvergenceError(
                f"cutoff escalation hit capacity before convergence: {exc}",
                energy_history=history) from exc
        H = assemble_hamiltonian(params, basis)
        state = ground_state(H, basis, tol=tol, project_parity=project_parity)
        history.append(state.energy)
        tail_ok = state.top_fock_weight() < TOP_WEIGHT_LIMIT
        if params.coupling == 0.0 and tail_ok:
            # decoupled limit: the ground state is exact at any cutoff
            return _certified(state)
        if prev is not None and tail_ok and abs(state.energy - prev.energy) < energy_tol:
            return _certified(state)
        prev = state
        n_max = max(n_max + 2, math.ceil(n_max * growth))


def _certified(state: GroundState) -> GroundState:
    return GroundState(energy=state.energy, amplitudes=state.amplitudes,
                       parity=state.parity, n_max_used=state.n_max_used,
                       residual=state.residual, converged=True,
                       basis=state.basis, doublet_gap=state.doublet_gap)

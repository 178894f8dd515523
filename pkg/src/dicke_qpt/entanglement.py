"""Finite-N entanglement measures from the exact ground state.

Covers the bipartite atom-field reduced density matrices and their von
Neumann / linear entropies, the single-atom reduced state built from
collective expectations, the subsystem-averaged linear entropy Q, a generic
qubit-register Q evaluator, and the coordinate-space inverse participation
ratio built on harmonic-oscillator eigenfunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GridCoverageError, IntegrityError, ParameterError
from .eigensolver import GroundState
from .model import BasisIndex, ModelParams

TRACE_TOL = 1e-8
EIGVAL_FLOOR = 1e-14
NEG_EIGVAL_TOL = 1e-10


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """Dense Hermitian reduced state with cached, clipped eigenvalues.

    Eigenvalues are stored descending; negatives beyond -1e-10 raise, smaller
    ones are clipped to zero (clipped_weight records the total removed).
    """

    subsystem: str
    matrix: np.ndarray
    eigenvalues: np.ndarray = field(repr=False)
    clipped_weight: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        val = float(np.sum(self.matrix * self.matrix))
        if not (-1e-12 <= val <= 1.0 + 1e-10):
            raise IntegrityError(f"purity {val} outside [0, 1]")
        return val


def _make_rdm(subsystem: str, matrix: np.ndarray) -> ReducedDensityMatrix:
    trace = float(np.trace(matrix))
    if abs(trace - 1.0) > TRACE_TOL:
        raise IntegrityError(f"{subsystem} RDM trace {trace} deviates from 1")
    ev = np.linalg.eigvalsh(matrix)
    if ev.min() < -NEG_EIGVAL_TOL:
        raise IntegrityError(f"{subsystem} RDM eigenvalue {ev.min()} below -{NEG_EIGVAL_TOL}")
    clipped = float(np.abs(ev[ev < 0]).sum() + (ev[ev > 1.0] - 1.0).sum())
    ev = np.clip(ev, 0.0, 1.0)[::-1].copy()
    return ReducedDensityMatrix(subsystem=subsystem, matrix=matrix,
                                eigenvalues=ev, clipped_weight=clipped)


def partial_trace(state: GroundState, basis: BasisIndex,
                  keep: str = "atoms") -> ReducedDensityMatrix:
    """Reduced density matrix of the atoms or the field from a pure state.

    For keep="atoms": rho[m, m'] = sum_n psi(n, m) psi(n, m'); analogous for
    the field.  The amplitude matrix view makes both a single product.
    """
    A = basis.reshape(state.amplitudes)
    if keep == "atoms":
        rho = A.T @ A
    elif keep == "field":
        rho = A @ A.T
    else:
        raise ParameterError(f"keep must be 'atoms' or 'field', got {keep!r}")
    return _make_rdm(keep, rho)


def von_neumann_entropy(rdm: ReducedDensityMatrix) -> float:
    """-sum p log2 p over eigenvalues above the 1e-14 floor, in bits."""
    p = rdm.eigenvalues[rdm.eigenvalues > EIGVAL_FLOOR]
    return float(-(p * np.log2(p)).sum()) + 0.0


def linear_entropy(rdm: ReducedDensityMatrix, subsystem_dim: int | None = None) -> float:
    """Normalized linear entropy eta * (1 - Tr rho^2) in [0, 1].

    eta = d / (d - 1) where d is the normalization dimension: the maximally
    mixed d-level state maps to 1.  d defaults to the RDM dimension; pass
    the Schmidt-rank bound explicitly when the RDM lives in a larger space
    (e.g. the field mode traced against N atoms uses d = N + 1).
    """
    d = rdm.dim if subsystem_dim is None else int(subsystem_dim)
    if d < 2:
        raise ParameterError(f"normalization dimension must be >= 2, got {d}")
    eta = d / (d - 1.0)
    return float(eta * (1.0 - rdm.purity()))


def collective_expectations(state: GroundState, basis: BasisIndex) -> dict:
    """<Jz>, <Jz^2>, <J+>, <J-> in the collective basis (real amplitudes)."""
    A = basis.reshape(state.amplitudes)
    j = basis.j
    m = np.arange(basis.n_atoms + 1) - j
    w = A**2
    jz = float((w * m[None, :]).sum())
    jz2 = float((w * m[None, :] ** 2).sum())
    raise_m = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
    jp = float((A[:, 1:] * A[:, :-1] * raise_m[None, :]).sum())
    return {"jz": jz, "jz2": jz2, "jp": jp, "jm": jp}


def single_atom_rdm(state: GroundState, basis: BasisIndex) -> ReducedDensityMatrix:
    """2x2 reduced state of one atom from collective expectation values.

    rho_k = [[ (1 - 2<Jz>/N)/2,  <J->/N ],
             [ <J+>/N,  (1 + 2<Jz>/N)/2 ]]
    so Tr rho_k^2 = 1/2 + 2<Jz>^2/N^2 + 2<J-><J+>/N^2.  For a parity
    eigenstate <J+-> vanish identically (they flip the parity sector).
    """
    ex = collective_expectations(state, basis)
    N = basis.n_atoms
    z = 2.0 * ex["jz"] / N
    off = ex["jp"] / N
    rho = np.array([[0.5 * (1.0 - z), off], [off, 0.5 * (1.0 + z)]])
    return _make_rdm("single-atom", rho)


def average_linear_entropy_Q(state: GroundState, basis: BasisIndex) -> float:
    """Subsystem-averaged linear entropy Q = N/(N+1) L_k + 1/(N+1) L_b.

    L_k uses eta_2 = 2 on the single-atom purity; L_b uses eta = 1 + 1/N on
    the field purity (Schmidt bound N + 1).
    """
    N = basis.n_atoms
    rho_k = single_atom_rdm(state, basis)
    l_k = linear_entropy(rho_k, 2)
    rho_b = partial_trace(state, basis, keep="field")
    l_b = linear_entropy(rho_b, N + 1)
    return float((N * l_k + l_b) / (N + 1.0))


def meyer_wallach_Q_generic(qubit_state: np.ndarray) -> float:
    """Average single-qubit linear entropy of a pure n-qubit state.

    Q = 2 [1 - (1/n) sum_k Tr rho_k^2], evaluated through per-qubit partial
    traces; supports n <= 12 qubits and requires unit normalization.
    """
    psi = np.asarray(qubit_state, dtype=complex).ravel()
    n = psi.size.bit_length() - 1
    if psi.size != 2**n or n < 1:
        raise ParameterError(f"state length {psi.size} is not a power of two")
    if n > 12:
        raise ParameterError(f"register size {n} exceeds the 12-qubit limit")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ParameterError("qubit state must be normalized")
    tensor = psi.reshape([2] * n)
    purity_sum = 0.0
    for k in range(n):
        mat = np.moveaxis(tensor, k, 0).reshape(2, -1)
        rho = mat @ mat.conj().T
        purity_sum += float(np.real(np.sum(rho * rho.conj())))
    return float(2.0 * (1.0 - purity_sum / n))


def oscillator_eigenfunctions(xs: np.ndarray, k_max: int, freq: float) -> np.ndarray:
    """Orthonormal harmonic-oscillator eigenfunctions phi_k(x), k <= k_max.

    Unit mass, frequency freq; stable three-term recurrence on the scaled
    coordinate xi = sqrt(freq) * x.  Returns shape (len(xs), k_max + 1).
    """
    xi = np.sqrt(freq) * np.asarray(xs, dtype=float)
    out = np.empty((xi.size, k_max + 1))
    out[:, 0] = freq**0.25 * np.pi**-0.25 * np.exp(-0.5 * xi**2)
    if k_max >= 1:
        out[:, 1] = math.sqrt(2.0) * xi * out[:, 0]
    for k in range(1, k_max):
        out[:, k + 1] = (math.sqrt(2.0 / (k + 1)) * xi * out[:, k]
                         - math.sqrt(k / (k + 1.0)) * out[:, k - 1])
    return out


def default_grid(basis: BasisIndex, params: ModelParams,
                 padding: float = 6.0) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate grid covering the truncated state's oscillator support.

    Extents follow the classical turning point of the highest retained level
    plus padding; point counts resolve the shortest oscillation wavelength.
    """
    def axis(k_top: int, freq: float) -> np.ndarray:
        scale = math.sqrt(2 * k_top + 1)
        extent = (scale + padding) / math.sqrt(freq)
        n_pts = max(301, math.ceil(8.0 * scale * (scale + padding) / math.pi))
        return np.linspace(-extent, extent, n_pts)

    return axis(basis.n_max, params.omega), axis(basis.n_atoms, params.omega0)


def coordinate_wavefunction(state: GroundState, basis: BasisIndex,
                            params: ModelParams,
                            xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Psi(x, y) on the grid: field oscillator (omega) along x, the
    atomic-excitation boson n_b = m + j (omega0) along y."""
    fx = oscillator_eigenfunctions(xs, basis.n_max, params.omega)
    fy = oscillator_eigenfunctions(ys, basis.n_atoms, params.omega0)
    return fx @ basis.reshape(state.amplitudes) @ fy.T


def inverse_participation_ratio(state: GroundState, basis: BasisIndex,
                                params: ModelParams,
                                grid: tuple[np.ndarray, np.ndarray] | None = None) -> float:
    """Unnormalized coordinate-space IPR, integral of Psi^4 over the plane.

    Trapezoid quadrature on a tensor grid; raises GridCoverageError when the
    boundary amplitude exceeds 1e-6 of the peak (grid too small).
    """
    xs, ys = grid if grid is not None else default_grid(basis, params)
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    psi = coordinate_wavefunction(state, basis, params, xs, ys)
    peak = float(np.abs(psi).max())
    edge = max(np.abs(psi[0]).max(), np.abs(psi[-1]).max(),
               np.abs(psi[:, 0]).max(), np.abs(psi[:, -1]).max())
    if peak > 0 and edge > 1e-6 * peak:
        raise GridCoverageError(
            f"boundary amplitude {edge:.2e} exceeds 1e-6 of peak {peak:.2e}; "
            "enlarge the grid")
    wx = np.gradient(xs)
    wy = np.gradient(ys)
    return float(np.einsum("i,ij,j->", wx, psi**4, wy))

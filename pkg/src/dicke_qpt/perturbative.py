"""Weak- and strong-coupling closed-form limits for cross-validating the numerics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import BasisIndex, ModelParams

# weak-coupling form tracks the exact entropy up to roughly this ratio
VALIDITY_RATIO = 0.4


@dataclass(frozen=True)
class PerturbativeResult:
    """Weak-coupling entropy; N-independent by construction.

    sigma = coupling / (omega + omega0); trusted for coupling ratios up to
    validity_max_ratio times the critical coupling.
    """

    sigma: float
    entropy_bits: float
    validity_max_ratio: float = VALIDITY_RATIO


def perturbative_entropy(params: ModelParams) -> PerturbativeResult:
    """Second-order entropy: binary entropy of 1/(1 + sigma^2) in bits."""
    sigma = params.coupling / (params.omega + params.omega0)
    p = 1.0 / (1.0 + sigma**2)
    q = 1.0 - p
    s = 0.0 if q == 0.0 else -p * math.log2(p) - q * math.log2(q)
    return PerturbativeResult(sigma=sigma, entropy_bits=s)


def strong_coupling_entropy_limit() -> float:
    """Entropy of the strong-coupling limiting state: exactly one bit."""
    return 1.0


def coherent_amplitudes(alpha: float, n_max: int) -> np.ndarray:
    """Fock amplitudes of |alpha>, computed in log space to avoid overflow."""
    n = np.arange(n_max + 1)
    if alpha == 0.0:
        out = np.zeros(n_max + 1)
        out[0] = 1.0
        return out
    log_mag = (-alpha**2 / 2.0 + n * math.log(abs(alpha))
               - 0.5 * np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, n_max + 1))))))
    return np.exp(log_mag) * np.sign(alpha) ** n


def jx_extremal_amplitudes(n_atoms: int, sign: int) -> np.ndarray:
    """|j, m_x = sign * j> in the Jz basis: every atom polarized along +-x.

    Amplitude on |j, m> is 2^-j sqrt(C(N, j+m)), with alternating signs
    (-1)^(j - m) for the -x eigenstate.
    """
    j = n_atoms / 2.0
    n_up = np.arange(n_atoms + 1)
    log_binom = (math.lgamma(n_atoms + 1)
                 - np.array([math.lgamma(k + 1) + math.lgamma(n_atoms - k + 1) for k in n_up]))
    amps = np.exp(0.5 * log_binom - j * math.log(2.0))
    if sign < 0:
        amps = amps * (-1.0) ** (n_atoms - n_up)
    return amps


def suggested_strong_coupling_cutoff(params: ModelParams) -> int:
    """Cutoff covering the coherent Poisson tail: alpha^2 + 6 alpha."""
    alpha = math.sqrt(2.0 * params.j) * params.coupling / params.omega
    return math.ceil(alpha**2 + 6.0 * alpha)


def strong_coupling_state(params: ModelParams, basis: BasisIndex) -> np.ndarray:
    """Limiting ground state in the truncated basis, for overlap tests.

    (|+alpha, -j_x> + |-alpha, +j_x>)/sqrt(2) with alpha = sqrt(2j)
    * coupling / omega: a coherent field paired with the opposite-sign J_x
    eigenstate of the atoms.  Normalized after truncation.
    """
    alpha = math.sqrt(2.0 * params.j) * params.coupling / params.omega
    branch_plus = np.outer(coherent_amplitudes(alpha, basis.n_max),
                           jx_extremal_amplitudes(basis.n_atoms, -1))
    branch_minus = np.outer(coherent_amplitudes(-alpha, basis.n_max),
                            jx_extremal_amplitudes(basis.n_atoms, +1))
    psi = ((branch_plus + branch_minus) / math.sqrt(2.0)).ravel()
    return psi / np.linalg.norm(psi)

import pathlib
import sys

import pytest

SRC = pathlib.Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from dicke_qpt import converge_cutoff, make_params  # noqa: E402

_STATE_CACHE = {}


@pytest.fixture(scope="session")
def ground():
    """Memoized converged ground states keyed by model parameters."""

    def solve(omega, omega0, coupling, n_atoms, **kwargs):
        key = (omega, omega0, coupling, n_atoms, tuple(sorted(kwargs.items())))
        if key not in _STATE_CACHE:
            params = make_params(omega, omega0, coupling, n_atoms)
            _STATE_CACHE[key] = converge_cutoff(params, **kwargs)
        return _STATE_CACHE[key]

    return solve


@pytest.fixture(scope="session")
def resonant_ground(ground):
    """Converged ground state at omega = omega0 = 1 (lambda_c = 1/2)."""

    def solve(coupling_ratio, n_atoms, **kwargs):
        return ground(1.0, 1.0, 0.5 * coupling_ratio, n_atoms, **kwargs)

    return solve

"""Coupling/system-size sweeps, finite-size scaling fits, and dataset emission.

Sweep points are independent work items evaluated through one of three
backends: exact diagonalization at finite N ("ed"), the thermodynamic-limit
closed forms ("td"), or the weak-coupling expansion ("perturbative").
Reports are sorted canonically before emission so identical configurations
reproduce byte-identical output files.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import entanglement, thermo
from .eigensolver import converge_cutoff
from .errors import ConfigError, FitError
from .model import DEFAULT_MAX_DIMENSION, make_params
from .perturbative import perturbative_entropy

KNOWN_MEASURES = ("s_vn", "l_lin", "q_avg", "ipr_inv", "t_eff", "kappa")
KNOWN_BACKENDS = ("ed", "td", "perturbative")
BASE_COLUMNS = ("lambda", "lambda_rel", "n_atoms", "n_max", "s_vn", "l_lin",
                "q_avg", "ipr_inv", "jz_mean", "residual", "converged")
EXTRA_COLUMNS = ("t_eff", "kappa")
# relative half-width of the lambda_c hole punched into TD grids
CRITICAL_EXCLUSION = 1e-12


@dataclass(frozen=True)
class SweepConfig:
    """Sweep definition.  Coupling bounds are in units of lambda_c.

    lambda_scale "linear" spaces couplings uniformly on
    [lambda_min, lambda_max] * lambda_c; "log" spaces the relative offset
    |lambda - lambda_c| / lambda_c logarithmically on
    [lambda_min, lambda_max] and places points on both sides of lambda_c.
    n_atoms entries are positive ints; the string "inf" requests
    thermodynamic-limit rows.  tol is the cutoff-convergence energy
    tolerance.
    """

    omega: float = 1.0
    omega0: float = 1.0
    lambda_min: float = 0.0
    lambda_max: float = 3.0
    lambda_steps: int = 16
    lambda_scale: str = "linear"
    n_atoms: tuple = (8,)
    measures: tuple = ("s_vn", "l_lin", "q_avg", "ipr_inv")
    backend: str = "ed"
    cutoff_start: int | None = None
    cutoff_growth: float = 1.5
    tol: float = 1e-9
    solver_tol: float = 1e-10
    two_lobe: bool = True
    jobs: int = 1
    max_dim: int = DEFAULT_MAX_DIMENSION

    def validate(self) -> None:
        if self.omega <= 0 or self.omega0 <= 0:
            raise ConfigError("frequencies must be positive")
        if self.lambda_steps < 2:
            raise ConfigError("lambda grid needs at least 2 points")
        if self.lambda_scale not in ("linear", "log"):
            raise ConfigError(f"unknown lambda_scale {self.lambda_scale!r}")
        if self.lambda_scale == "linear":
            if not (0 <= self.lambda_min < self.lambda_max):
                raise ConfigError("need 0 <= lambda_min < lambda_max")
        else:
            if not (0 < self.lambda_min < self.lambda_max):
                raise ConfigError("log scale needs 0 < lambda_min < lambda_max "
                                  "(relative offsets from lambda_c)")
        if self.backend not in KNOWN_BACKENDS + ("all",):
            raise ConfigError(f"unknown backend {self.backend!r}")
        for meas in self.measures:
            if meas not in KNOWN_MEASURES:
                raise ConfigError(f"unknown measure {meas!r}")
        if self.cutoff_growth <= 1.0:
            raise ConfigError("cutoff_growth must exceed 1")
        for n in self.n_atoms:
            if n != "inf" and (int(n) != n or n < 1):
                raise ConfigError(f"bad n_atoms entry {n!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    @property
    def lambda_c(self) -> float:
        return math.sqrt(self.omega * self.omega0) / 2.0

    def lambda_grid(self) -> np.ndarray:
        """Absolute coupling values of the sweep grid, ascending."""
        lc = self.lambda_c
        if self.lambda_scale == "linear":
            return np.linspace(self.lambda_min, self.lambda_max, self.lambda_steps) * lc
        offsets = np.logspace(math.log10(self.lambda_min),
                              math.log10(self.lambda_max), self.lambda_steps)
        grid = np.concatenate([lc * (1.0 - offsets), lc * (1.0 + offsets)])
        return np.sort(grid)

    def td_lambda_grid(self) -> np.ndarray:
        """Sweep grid with the critical point excluded (divergence hole)."""
        grid = self.lambda_grid()
        lc = self.lambda_c
        return grid[np.abs(grid - lc) > CRITICAL_EXCLUSION * lc]

    def backends(self) -> tuple:
        if self.backend == "all":
            chosen = list(KNOWN_BACKENDS)
        else:
            chosen = [self.backend]
        if "inf" in self.n_atoms and "td" not in chosen:
            chosen.append("td")
        return tuple(b for b in KNOWN_BACKENDS if b in chosen)

    def integer_n_atoms(self) -> tuple:
        return tuple(int(n) for n in self.n_atoms if n != "inf")


@dataclass(frozen=True)
class MeasureReport:
    """One evaluated sweep point."""

    backend: str
    coupling: float
    coupling_rel: float
    n_atoms: object            # int, math.inf, or None (N-independent backend)
    n_max: int | None = None
    s_vn: float | None = None
    l_lin: float | None = None
    q_avg: float | None = None
    ipr_inv: float | None = None
    jz_mean: float | None = None
    residual: float | None = None
    converged: bool | None = None
    t_eff: float | None = None
    kappa: float | None = None

    def sort_key(self):
        backend_rank = KNOWN_BACKENDS.index(self.backend)
        n_key = (-1.0 if self.n_atoms is None
                 else float(self.n_atoms) if self.n_atoms != math.inf else 1e300)
        return (backend_rank, n_key, self.coupling)

    def as_dict(self, extras: bool) -> dict:
        out = {
            "lambda": self.coupling,
            "lambda_rel": self.coupling_rel,
            "n_atoms": self.n_atoms,
            "n_max": self.n_max,
            "s_vn": self.s_vn,
            "l_lin": self.l_lin,
            "q_avg": self.q_avg,
            "ipr_inv": self.ipr_inv,
            "jz_mean": self.jz_mean,
            "residual": self.residual,
            "converged": self.converged,
        }
        if extras:
            out["t_eff"] = self.t_eff
            out["kappa"] = self.kappa
        out["backend"] = self.backend
        return out


@dataclass(frozen=True)
class SweepFailure:
    """A per-point failure recorded without aborting the sweep."""

    backend: str
    coupling: float
    n_atoms: object
    message: str

    def as_dict(self) -> dict:
        return {"backend": self.backend, "lambda": self.coupling,
                "n_atoms": self.n_atoms, "message": self.message}


@dataclass(frozen=True)
class ScalingFit:
    """A fitted exponent with its uncertainty and diagnostics."""

    quantity: str
    exponent: float
    stderr: float
    window: tuple
    residual: float
    peaks: tuple = field(default=())

    def as_dict(self) -> dict:
        return {"quantity": self.quantity, "exponent": self.exponent,
                "stderr": self.stderr, "window": list(self.window),
                "residual": self.residual,
                "peaks": [list(p) for p in self.peaks]}


def measure_point_ed(config: SweepConfig, n_atoms: int, coupling: float) -> MeasureReport:
    params = make_params(config.omega, config.omega0, coupling, n_atoms)
    state = converge_cutoff(params, n_max_start=config.cutoff_start,
                            growth=config.cutoff_growth, energy_tol=config.tol,
                            tol=config.solver_tol, max_dim=config.max_dim)
    basis = state.basis
    values: dict = {}
    atoms_rdm = None
    if "s_vn" in config.measures or "l_lin" in config.measures:
        atoms_rdm = entanglement.partial_trace(state, basis, keep="atoms")
    if "s_vn" in config.measures:
        values["s_vn"] = entanglement.von_neumann_entropy(atoms_rdm)
    if "l_lin" in config.measures:
        values["l_lin"] = entanglement.linear_entropy(atoms_rdm, n_atoms + 1)
    if "q_avg" in config.measures:
        values["q_avg"] = entanglement.average_linear_entropy_Q(state, basis)
    if "ipr_inv" in config.measures:
        values["ipr_inv"] = entanglement.inverse_participation_ratio(state, basis, params)
    jz = entanglement.collective_expectations(state, basis)["jz"]
    return MeasureReport(backend="ed", coupling=coupling,
                         coupling_rel=coupling / params.lambda_c,
                         n_atoms=n_atoms, n_max=state.n_max_used,
                         jz_mean=jz / n_atoms, residual=state.residual,
                         converged=state.converged, **values)


def measure_point_td(config: SweepConfig, coupling: float) -> MeasureReport:
    # n_atoms is irrelevant to the closed forms; any valid value works
    params = make_params(config.omega, config.omega0, coupling, 2)
    lc = params.lambda_c
    values: dict = {}
    if "s_vn" in config.measures:
        values["s_vn"] = thermo.entropy_td(params, two_lobe=config.two_lobe)
    if "l_lin" in config.measures:
        values["l_lin"] = thermo.linear_entropy_td(params)
    if "q_avg" in config.measures:
        values["q_avg"] = thermo.q_td(params)
    if "ipr_inv" in config.measures:
        values["ipr_inv"] = thermo.ipr_td(params)
    if "t_eff" in config.measures or "kappa" in config.measures:
        rdmp = thermo.rdm_params(thermo.phase_solution(params))
        if "t_eff" in config.measures:
            values["t_eff"] = thermo.effective_temperature(rdmp).temperature
        if "kappa" in config.measures:
            values["kappa"] = rdmp.kappa
    mu = (lc / coupling) ** 2 if coupling > lc else 1.0
    return MeasureReport(backend="td", coupling=coupling,
                         coupling_rel=coupling / lc, n_atoms=math.inf,
                         jz_mean=-0.5 * mu, converged=True, **values)


def measure_point_perturbative(config: SweepConfig, coupling: float) -> MeasureReport:
    params = make_params(config.omega, config.omega0, coupling, 2)
    res = perturbative_entropy(params)
    return MeasureReport(backend="perturbative", coupling=coupling,
                         coupling_rel=coupling / params.lambda_c,
                         n_atoms=None, s_vn=res.entropy_bits, converged=True)


def run_sweep(config: SweepConfig) -> tuple[list[MeasureReport], list[SweepFailure]]:
    """Evaluate every (coupling, N, backend) point; failures are per-point.

    Returns (reports, failures), reports sorted canonically so downstream
    output is independent of scheduling order.
    """
    config.validate()
    tasks = []
    for backend in config.backends():
        if backend == "ed":
            for n in config.integer_n_atoms():
                for lam in config.lambda_grid():
                    tasks.append(("ed", n, float(lam)))
        elif backend == "td":
            for lam in config.td_lambda_grid():
                tasks.append(("td", None, float(lam)))
        else:
            for lam in config.lambda_grid():
                tasks.append(("perturbative", None, float(lam)))

    def evaluate(task):
        backend, n, lam = task
        try:
            if backend == "ed":
                return measure_point_ed(config, n, lam)
            if backend == "td":
                return measure_point_td(config, lam)
            return measure_point_perturbative(config, lam)
        except Exception as exc:
            return SweepFailure(backend=backend, coupling=lam,
                                n_atoms=n if backend == "ed" else None,
                                message=f"{type(exc).__name__}: {exc}")

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(evaluate, tasks))
    else:
        results = [evaluate(t) for t in tasks]

    reports = sorted((r for r in results if isinstance(r, MeasureReport)),
                     key=MeasureReport.sort_key)
    failures = sorted((r for r in results if isinstance(r, SweepFailure)),
                      key=lambda f: (f.backend, f.coupling))
    return reports, failures


def _parabola_peak(x: np.ndarray, y: np.ndarray, k: int) -> tuple[float, float]:
    """Vertex of the parabola through points k-1, k, k+1 (refines a grid max)."""
    x0, x1, x2 = x[k - 1], x[k], x[k + 1]
    y0, y1, y2 = y[k - 1], y[k], y[k + 1]
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    b = (x2**2 * (y0 - y1) + x1**2 * (y2 - y0) + x0**2 * (y1 - y2)) / denom
    if a >= 0:
        return float(x1), float(y1)
    xv = -b / (2 * a)
    c = y1 - a * x1**2 - b * x1
    return float(xv), float(a * xv**2 + b * xv + c)


def _line_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares slope with standard error and RMS residual."""
    coef, cov = np.polyfit(x, y, 1, cov=True)
    resid = y - np.polyval(coef, x)
    rms = float(np.sqrt(np.mean(resid**2)))
    return float(coef[0]), float(np.sqrt(cov[0, 0])), rms


def fit_entropy_scaling(reports: list[MeasureReport]) -> ScalingFit:
    """Fit the per-N entropy maximum against log2 N.

    Needs ED reports with s_vn for at least four system sizes, each with its
    peak resolved strictly inside the coupling grid; the grid maximum is
    refined by a local parabola.  Returns the exponent x of
    S_max ~ x * log2 N.
    """
    by_n: dict[int, list[MeasureReport]] = {}
    for rep in reports:
        if (rep.backend == "ed" and rep.s_vn is not None and rep.converged
                and rep.n_atoms not in (None, math.inf)):
            by_n.setdefault(int(rep.n_atoms), []).append(rep)
    if len(by_n) < 4:
        raise FitError(f"need >= 4 system sizes with entropy data, got {len(by_n)}")
    peaks = []
    for n in sorted(by_n):
        pts = sorted(by_n[n], key=lambda r: r.coupling)
        lam = np.array([p.coupling for p in pts])
        s = np.array([p.s_vn for p in pts])
        k = int(np.argmax(s))
        if k == 0 or k == len(s) - 1:
            raise FitError(f"entropy peak for N={n} sits on the grid boundary")
        lam_max, s_max = _parabola_peak(lam, s, k)
        peaks.append((n, lam_max, s_max))
    ns = np.array([p[0] for p in peaks], dtype=float)
    smax = np.array([p[2] for p in peaks])
    slope, stderr, rms = _line_fit(np.log2(ns), smax)
    return ScalingFit(quantity="s_vn_peak", exponent=slope, stderr=stderr,
                      window=(float(ns.min()), float(ns.max())),
                      residual=rms, peaks=tuple(peaks))


def fit_critical_exponents(reports: list[MeasureReport],
                           omega: float | None = None,
                           omega0: float | None = None) -> dict[str, ScalingFit]:
    """Log-log slopes of the gap, length scale, and entropy below lambda_c.

    Input: TD reports on a log-spaced window approaching lambda_c from
    below.  The gap eps- and length l- = eps-^-1/2 are recomputed from the
    coupling; the entropy slope is taken against log2|lambda_c - lambda|.
    Expected exponents: +1/2, -1/4, and -1/4.  Pass the sweep frequencies
    for exact gap values; without them an equivalent resonant model with
    the same lambda_c is used (identical exponents).
    """
    pts = [r for r in reports if r.backend == "td" and r.s_vn is not None]
    if not pts:
        raise FitError("no thermodynamic-limit entropy reports to fit")
    lcs = np.array([r.coupling / r.coupling_rel for r in pts if r.coupling_rel])
    if lcs.size == 0 or np.ptp(lcs) > 1e-12 * lcs.mean():
        raise FitError("reports mix different critical couplings")
    lc = float(lcs.mean())
    if omega is None or omega0 is None:
        omega = omega0 = 2.0 * lc
    elif abs(math.sqrt(omega * omega0) / 2.0 - lc) > 1e-9 * lc:
        raise FitError("given frequencies do not match the reports' lambda_c")
    below = sorted((r for r in pts if r.coupling < lc), key=lambda r: r.coupling)
    if len(below) < 3:
        raise FitError("need >= 3 points below lambda_c")
    delta = np.array([lc - r.coupling for r in below])
    if delta.min() / lc < 1e-12:
        raise FitError("window reaches too close to lambda_c for stable floats")
    s_vn = np.array([r.s_vn for r in below])
    eps_minus = np.array([
        thermo.normal_solution(make_params(omega, omega0, rep.coupling, 2)).eps_minus
        for rep in below])
    window = (float(delta.min() / lc), float(delta.max() / lc))
    out = {}
    slope, err, rms = _line_fit(np.log(delta), np.log(eps_minus))
    out["eps_minus"] = ScalingFit("eps_minus", slope, err, window, rms)
    slope, err, rms = _line_fit(np.log(delta), -0.5 * np.log(eps_minus))
    out["l_minus"] = ScalingFit("l_minus", slope, err, window, rms)
    slope, err, rms = _line_fit(np.log2(delta), s_vn)
    out["s_vn"] = ScalingFit("s_vn", slope, err, window, rms)
    return out


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def _json_safe(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
    return value


def emit(reports: list[MeasureReport], fits=None, path=None, fmt: str = "csv",
         failures: list[SweepFailure] = ()) -> str:
    """Write the dataset to path; returns the serialized text.

    CSV: fixed header with the base columns in order (t_eff/kappa appended
    only when some report carries them, backend always last).  JSON: object
    with "reports", "fits", and "errors" keys.  Output bytes are a pure
    function of the inputs.
    """
    reports = sorted(reports, key=MeasureReport.sort_key)
    extras = any(r.t_eff is not None or r.kappa is not None for r in reports)
    if fmt == "csv":
        columns = BASE_COLUMNS + (EXTRA_COLUMNS if extras else ()) + ("backend",)
        lines = [",".join(columns)]
        for rep in reports:
            row = rep.as_dict(extras)
            lines.append(",".join(_format_cell(row[c]) for c in columns))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        payload = {
            "reports": [{k: _json_safe(v) for k, v in r.as_dict(extras).items()}
                        for r in reports],
            "fits": ({name: fit.as_dict() for name, fit in sorted(fits.items())}
                     if isinstance(fits, dict) else
                     {fits.quantity: fits.as_dict()} if fits is not None else {}),
            "errors": [f.as_dict() for f in failures],
        }
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    else:
        raise ConfigError(f"unknown output format {fmt!r}")
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text

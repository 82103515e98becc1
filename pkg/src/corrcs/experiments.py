"""Monte-Carlo harness: trial execution, aggregation, persistence, sweeps.

A trial at grid point (N, M, K) generates a K-sparse signal and a Gaussian
ensemble from per-trial seed streams, produces measurements under the
configured noise mode, reconstructs with each requested method, and scores
the normalized mean squared error. The per-measurement signal power is
tracked per trial (sigma_t^2 = ||x||^2 / M, the exact variance of each entry
of A x given x) the way a receiver with automatic gain control would, so
noise levels, quantizer scaling, and fidelity radii all follow the realized
signal energy rather than its ensemble average.

Noise modes
-----------
artificial-correlated   y = alpha*ybar + w with w ~ N(0, alpha*(1-alpha)*sigma_t^2),
                        the statistics that distortion-matched quantization induces.
lloyd-max-quantized     y = sigma_t * Q(ybar / sigma_t) with Q the minimum-distortion
                        Lloyd-Max quantizer designed for a unit Gaussian.
uniform-quantized       same with the minimum-distortion uniform (equal-step) quantizer.

Methods
-------
bpdn         l1 recovery with fidelity radius from the sigma_q rule (total noise).
bpdn-scale   l1 recovery with radius from the sigma_r rule (uncorrelated part),
             solution divided by alpha.
bpdn-beta    like bpdn-scale but divided by a caller-chosen beta.
biht         1-bit baseline on sign measurements against unit-norm truth.

Reproducibility: results are bit-identical for a given config and master
seed regardless of worker count, because every trial derives its own seed
streams and aggregation always reduces the trial-ordered array with numpy's
fixed-shape pairwise summation.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ndtri

from . import __version__
from .biht import BihtProblem, sign_with_positive_zero, solve_biht
from .bpdn import BpdnProblem, epsilon_rule, solve_bpdn, solve_post_scaled
from .model import _as_float_vector
from .quantizers import (
    ScalarQuantizer,
    design_lloyd_max,
    design_uniform_mmse,
    gain_model_analytic,
    quantize,
    quantizer_from_json,
    quantizer_to_json,
)
from .siggen import InstanceConfig, generate_ensemble, generate_signal, purpose_rng

NOISE_MODES = ("artificial-correlated", "lloyd-max-quantized", "uniform-quantized")
METHODS = ("bpdn", "bpdn-scale", "bpdn-beta", "biht")
EPSILON_MODES = ("rule", "explicit")

CSV_HEADER = (
    "n,m,k,delta,rho,method,noise_mode,bits,trials,mean_nmse,ci99,nonconverged"
)

# Two-sided 99% normal quantile for confidence-interval half-widths.
CI99_FACTOR = float(ndtri(0.995))

MANIFEST_FORMAT = "corrcs-manifest/1"

#: Fraction of non-converged trials above which a grid point is flagged.
NONCONVERGED_FLAG_FRACTION = 0.01


def nmse(estimate: np.ndarray, truth: np.ndarray) -> float:
    """Normalized squared error ||estimate - truth||^2 / ||truth||^2."""
    estimate = _as_float_vector(estimate, "estimate")
    truth = _as_float_vector(truth, "truth")
    if estimate.size != truth.size:
        raise ValueError(
            f"length mismatch: estimate {estimate.size}, truth {truth.size}"
        )
    denom = float(truth @ truth)
    if denom <= 0.0:
        raise ValueError("truth must be nonzero")
    diff = estimate - truth
    return float(diff @ diff) / denom


def improvement_db(p_baseline: float, p_method: float) -> float:
    """Error-ratio improvement 10*log10(p_baseline / p_method) in dB."""
    if not p_baseline > 0.0:
        raise ValueError(f"p_baseline must be > 0, got {p_baseline}")
    if not p_method > 0.0:
        raise ValueError(f"p_method must be > 0, got {p_method}")
    return float(10.0 * np.log10(p_baseline / p_method))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to rerun an experiment bit-identically."""

    grid: Tuple[Tuple[int, int, int], ...]
    trials: int
    noise_mode: str
    methods: Tuple[str, ...]
    master_seed: int
    bits: int = 1
    alpha: Optional[float] = None
    sigma_w_sq: Optional[float] = None
    epsilon_mode: str = "rule"
    explicit_epsilon: Optional[float] = None
    beta: Optional[float] = None
    normalize_signals: bool = False
    retain_trials: bool = False

    def __post_init__(self):
        grid = tuple((int(n), int(m), int(k)) for n, m, k in self.grid)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "methods", tuple(self.methods))
        if not grid:
            raise ValueError("grid must contain at least one (n, m, k) point")
        for n, m, k in grid:
            if not (1 <= m <= n and 1 <= k <= m):
                raise ValueError(f"invalid grid point (n={n}, m={m}, k={k})")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.noise_mode not in NOISE_MODES:
            raise ValueError(
                f"noise_mode must be one of {NOISE_MODES}, got {self.noise_mode!r}"
            )
        if not self.methods:
            raise ValueError("methods must be non-empty")
        for method in self.methods:
            if method not in METHODS:
                raise ValueError(f"method must be one of {METHODS}, got {method!r}")
        if self.bits < 1:
            raise ValueError(f"bits must be >= 1, got {self.bits}")
        if self.alpha is not None and not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.sigma_w_sq is not None:
            if self.alpha is None:
                raise ValueError("sigma_w_sq requires an explicit alpha")
            if self.sigma_w_sq < 0.0:
                raise ValueError(f"sigma_w_sq must be >= 0, got {self.sigma_w_sq}")
            if self.noise_mode != "artificial-correlated":
                raise ValueError("sigma_w_sq only applies to artificial-correlated")
        if self.epsilon_mode not in EPSILON_MODES:
            raise ValueError(
                f"epsilon_mode must be one of {EPSILON_MODES}, got {self.epsilon_mode!r}"
            )
        if self.epsilon_mode == "explicit" and (
            self.explicit_epsilon is None or self.explicit_epsilon < 0.0
        ):
            raise ValueError("explicit epsilon_mode requires explicit_epsilon >= 0")
        if "bpdn-beta" in self.methods and (self.beta is None or not self.beta > 0.0):
            raise ValueError("method bpdn-beta requires beta > 0")


@dataclass(frozen=True)
class GridPointResult:
    """Aggregated NMSE for one (grid point, method) pair."""

    n: int
    m: int
    k: int
    delta: float
    rho: float
    method: str
    noise_mode: str
    bits: int
    trials: int
    mean_nmse: float
    ci99: float
    nonconverged: int
    trial_nmse: Optional[Tuple[float, ...]] = None

    @property
    def flagged(self) -> bool:
        """True when more than 1% of trials failed to converge."""
        return self.nonconverged > NONCONVERGED_FLAG_FRACTION * self.trials


@dataclass(frozen=True)
class ExperimentResult:
    """Config echo plus one GridPointResult per (grid point, method)."""

    config: ExperimentConfig
    points: Tuple[GridPointResult, ...]

    def point(self, n: int, m: int, k: int, method: str) -> GridPointResult:
        for p in self.points:
            if (p.n, p.m, p.k, p.method) == (n, m, k, method):
                return p
        raise KeyError(f"no result for (n={n}, m={m}, k={k}, method={method})")


def _default_alpha(noise_mode: str, bits: int, override: Optional[float]) -> float:
    """Correlation gain for the mode: explicit override, else the analytic
    value of the matching minimum-distortion quantizer at this bit depth
    (artificial mode mimics Lloyd-Max statistics)."""
    if override is not None:
        return float(override)
    if noise_mode == "uniform-quantized":
        q = design_uniform_mmse(bits, 1.0)
    else:
        q = design_lloyd_max(bits, 1.0)
    return gain_model_analytic(q, 1.0).alpha


def _design_quantizer(noise_mode: str, bits: int) -> Optional[ScalarQuantizer]:
    """Unit-sigma quantizer reused across all trials (gain control rescales)."""
    if noise_mode == "lloyd-max-quantized":
        return design_lloyd_max(bits, 1.0)
    if noise_mode == "uniform-quantized":
        return design_uniform_mmse(bits, 1.0)
    return None


@dataclass(frozen=True)
class _TrialTask:
    """Self-contained description of one trial (picklable for workers)."""

    point_index: int
    n: int
    m: int
    k: int
    trial_index: int
    master_seed: int
    noise_mode: str
    bits: int
    alpha: float
    sigma_w_sq: Optional[float]
    epsilon_mode: str
    explicit_epsilon: Optional[float]
    beta: Optional[float]
    methods: Tuple[str, ...]
    normalize_signals: bool
    quantizer_json: Optional[str]


def _run_trial(task: _TrialTask) -> Dict[str, Tuple[float, bool]]:
    """Execute one trial; returns method -> (nmse, converged)."""
    cfg = InstanceConfig(
        n=task.n,
        m=task.m,
        k=task.k,
        master_seed=task.master_seed,
        trial_index=task.trial_index,
    )
    x = generate_signal(cfg, purpose_rng(cfg, "signal"), normalize=task.normalize_signals)
    ensemble = generate_ensemble(cfg, purpose_rng(cfg, "matrix"))
    a = ensemble.system_matrix
    ybar = a @ x.values
    signal_energy = float(x.values @ x.values)
    sigma_t_sq = signal_energy / task.m
    sigma_t = float(np.sqrt(sigma_t_sq))

    alpha = task.alpha
    if task.noise_mode == "artificial-correlated":
        if task.sigma_w_sq is None:
            sigma_w = float(np.sqrt(alpha * (1.0 - alpha) * sigma_t_sq))
        else:
            sigma_w = float(np.sqrt(task.sigma_w_sq * sigma_t_sq))
        rng = purpose_rng(cfg, "noise")
        y = alpha * ybar + rng.normal(0.0, sigma_w, task.m)
    else:
        q = quantizer_from_json(task.quantizer_json)
        y = sigma_t * quantize(q, ybar / sigma_t)

    sigma_q = float(np.sqrt((1.0 - alpha) * sigma_t_sq))
    sigma_r = float(np.sqrt(alpha * (1.0 - alpha) * sigma_t_sq))
    if task.epsilon_mode == "explicit":
        # The explicit radius is interpreted at the ensemble reference scale
        # sqrt(K/M) and follows the per-trial gain like everything else.
        scale = sigma_t / float(np.sqrt(task.k / task.m))
        eps_bpdn = eps_scaled = float(task.explicit_epsilon) * scale
    else:
        eps_bpdn = epsilon_rule(task.m, sigma_q)
        eps_scaled = epsilon_rule(task.m, sigma_r)

    out: Dict[str, Tuple[float, bool]] = {}
    for method in task.methods:
        if method == "biht":
            signs = sign_with_positive_zero(ybar)
            report = solve_biht(BihtProblem(a, signs, k=task.k))
            truth = x.values / float(np.linalg.norm(x.values))
            out[method] = (nmse(report.solution, truth), report.converged)
            continue
        if method == "bpdn":
            report = solve_bpdn(BpdnProblem(a, y, eps_bpdn))
        elif method == "bpdn-scale":
            report = solve_post_scaled(BpdnProblem(a, y, eps_scaled), alpha)
        else:  # bpdn-beta
            report = solve_post_scaled(BpdnProblem(a, y, eps_scaled), task.beta)
        out[method] = (nmse(report.solution, x.values), report.converged)
    return out


def _aggregate(
    point: Tuple[int, int, int],
    method: str,
    config: ExperimentConfig,
    per_trial: np.ndarray,
    nonconverged: int,
    delta: Optional[float] = None,
    rho: Optional[float] = None,
) -> GridPointResult:
    n, m, k = point
    trials = per_trial.size
    mean = float(np.mean(per_trial))
    ci99 = (
        float(CI99_FACTOR * np.std(per_trial, ddof=1) / np.sqrt(trials))
        if trials > 1
        else 0.0
    )
    return GridPointResult(
        n=n,
        m=m,
        k=k,
        delta=float(m / n) if delta is None else float(delta),
        rho=float(k / m) if rho is None else float(rho),
        method=method,
        noise_mode=config.noise_mode,
        bits=config.bits,
        trials=trials,
        mean_nmse=mean,
        ci99=ci99,
        nonconverged=nonconverged,
        trial_nmse=tuple(float(v) for v in per_trial) if config.retain_trials else None,
    )


def run_experiment(
    config: ExperimentConfig,
    workers: int = 1,
    delta_rho: Optional[Sequence[Tuple[float, float]]] = None,
) -> ExperimentResult:
    """Run every (grid point, trial, method) and aggregate NMSE per point.

    workers > 1 distributes trials across processes; aggregation is ordered
    by trial index so the result does not depend on scheduling. delta_rho
    optionally overrides the recorded (delta, rho) per grid point (used by
    the phase sweep, where they are the swept coordinates).
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    alpha = _default_alpha(config.noise_mode, config.bits, config.alpha)
    quantizer = _design_quantizer(config.noise_mode, config.bits)
    quantizer_json = None if quantizer is None else quantizer_to_json(quantizer)

    tasks: List[_TrialTask] = []
    for point_index, (n, m, k) in enumerate(config.grid):
        for trial_index in range(config.trials):
            tasks.append(
                _TrialTask(
                    point_index=point_index,
                    n=n,
                    m=m,
                    k=k,
                    trial_index=trial_index,
                    master_seed=config.master_seed,
                    noise_mode=config.noise_mode,
                    bits=config.bits,
                    alpha=alpha,
                    sigma_w_sq=config.sigma_w_sq,
                    epsilon_mode=config.epsilon_mode,
                    explicit_epsilon=config.explicit_epsilon,
                    beta=config.beta,
                    methods=config.methods,
                    normalize_signals=config.normalize_signals,
                    quantizer_json=quantizer_json,
                )
            )

    if workers == 1:
        outcomes = [_run_trial(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_trial, tasks, chunksize=8))

    points: List[GridPointResult] = []
    for point_index, point in enumerate(config.grid):
        rows = [
            outcomes[i]
            for i, task in enumerate(tasks)
            if task.point_index == point_index
        ]
        for method in config.methods:
            per_trial = np.array([row[method][0] for row in rows])
            nonconverged = sum(1 for row in rows if not row[method][1])
            override = delta_rho[point_index] if delta_rho is not None else (None, None)
            points.append(
                _aggregate(point, method, config, per_trial, nonconverged, *override)
            )
    return ExperimentResult(config=config, points=tuple(points))


def run_phase_sweep(
    delta_step: float = 0.05,
    rho_step: float = 0.05,
    trials: int = 100,
    methods: Tuple[str, ...] = ("bpdn-scale", "biht"),
    nmse_cutoff: float = 1.0,
    n: int = 256,
    master_seed: int = 0,
    bits: int = 1,
    workers: int = 1,
) -> Tuple[GridPointResult, ...]:
    """Sweep the (delta, rho) = (M/N, K/M) phase plane bottom-up.

    For each undersampling column delta, sparsity rho ascends from the first
    step; a method stops contributing to the column once its mean NMSE
    exceeds nmse_cutoff (reconstruction quality only degrades with rho, so
    nothing of interest lies above). All methods see unit-norm signals;
    bpdn-* methods read 1-bit quantized measurements, biht reads signs.
    """
    if not 0.0 < delta_step <= 1.0 or not 0.0 < rho_step <= 1.0:
        raise ValueError("delta_step and rho_step must be in (0, 1]")
    if not nmse_cutoff > 0.0:
        raise ValueError(f"nmse_cutoff must be > 0, got {nmse_cutoff}")
    for method in methods:
        if method not in ("bpdn-scale", "biht"):
            raise ValueError(f"phase sweep supports bpdn-scale and biht, got {method!r}")

    cells: List[GridPointResult] = []
    deltas = np.arange(delta_step, 1.0 + 1e-12, delta_step)
    rhos = np.arange(rho_step, 1.0 + 1e-12, rho_step)
    for delta in deltas:
        m = int(round(delta * n))
        if m < 1 or m > n:
            continue
        active = list(methods)
        for rho in rhos:
            if not active:
                break
            k = int(round(rho * m))
            if k < 1:
                continue
            if k > m:
                break
            config = ExperimentConfig(
                grid=((n, m, k),),
                trials=trials,
                noise_mode="lloyd-max-quantized",
                methods=tuple(active),
                master_seed=master_seed,
                bits=bits,
                normalize_signals=True,
            )
            result = run_experiment(
                config, workers=workers, delta_rho=[(float(delta), float(rho))]
            )
            for point in result.points:
                cells.append(point)
                if point.mean_nmse > nmse_cutoff:
                    active.remove(point.method)
    return tuple(cells)


class TuningObjective:
    """Mean NMSE of beta-corrected recovery as a function of (beta, epsilon).

    Evaluations reuse one fixed set of trial seeds (common random numbers) so
    the surface is deterministic, as the simplex search requires. epsilon is
    interpreted at the ensemble reference scale sqrt(K/M) and rescaled to
    each trial's gain-controlled level. Because the l1 solve depends only on
    epsilon while beta is a closed-form rescaling of its solution, solves are
    cached per epsilon: each cache entry stores per-trial
    (||z||^2, <z, x>, ||x||^2) from which NMSE(beta) follows directly.
    """

    def __init__(
        self,
        m: int,
        k: int,
        trials: int,
        master_seed: int,
        n: int = 1000,
        alpha: Optional[float] = None,
        noise_mode: str = "artificial-correlated",
        bits: int = 1,
    ):
        if noise_mode not in NOISE_MODES:
            raise ValueError(
                f"noise_mode must be one of {NOISE_MODES}, got {noise_mode!r}"
            )
        self.n, self.m, self.k = int(n), int(m), int(k)
        self.trials = int(trials)
        self.master_seed = int(master_seed)
        self.noise_mode = noise_mode
        self.bits = int(bits)
        self.alpha = _default_alpha(noise_mode, bits, alpha)
        self._quantizer = _design_quantizer(noise_mode, bits)
        self._instances: Optional[List[Tuple[np.ndarray, np.ndarray, np.ndarray]]] = None
        self._solve_cache: Dict[float, List[Tuple[float, float, float]]] = {}
        self.solve_count = 0

    def _materialize(self) -> List[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        if self._instances is None:
            instances = []
            for t in range(self.trials):
                cfg = InstanceConfig(
                    n=self.n,
                    m=self.m,
                    k=self.k,
                    master_seed=self.master_seed,
                    trial_index=t,
                )
                x = generate_signal(cfg, purpose_rng(cfg, "signal")).values
                a = generate_ensemble(cfg, purpose_rng(cfg, "matrix")).system_matrix
                ybar = a @ x
                sigma_t = float(np.linalg.norm(x) / np.sqrt(self.m))
                if self.noise_mode == "artificial-correlated":
                    sigma_w = sigma_t * float(
                        np.sqrt(self.alpha * (1.0 - self.alpha))
                    )
                    rng = purpose_rng(cfg, "noise")
                    y = self.alpha * ybar + rng.normal(0.0, sigma_w, self.m)
                else:
                    y = sigma_t * quantize(self._quantizer, ybar / sigma_t)
                instances.append((x, a, y))
            self._instances = instances
        return self._instances

    def reference_epsilon(self) -> float:
        """The sigma_r fidelity-radius rule at the ensemble reference scale."""
        sigma_ref = float(np.sqrt(self.k / self.m))
        return epsilon_rule(
            self.m, sigma_ref * float(np.sqrt(self.alpha * (1.0 - self.alpha)))
        )

    def _solve_all(self, epsilon: float) -> List[Tuple[float, float, float]]:
        key = float(epsilon)
        if key not in self._solve_cache:
            sigma_ref = float(np.sqrt(self.k / self.m))
            stats = []
            for x, a, y in self._materialize():
                scale = float(np.linalg.norm(x) / np.sqrt(self.m)) / sigma_ref
                report = solve_bpdn(BpdnProblem(a, y, key * scale))
                z = report.solution
                stats.append((float(z @ z), float(z @ x), float(x @ x)))
            self._solve_cache[key] = stats
            self.solve_count += len(stats)
        return self._solve_cache[key]

    def __call__(self, beta: float, epsilon: float) -> float:
        if not beta > 0.0 or epsilon < 0.0:
            return float("inf")
        total = 0.0
        for zz, zx, xx in self._solve_all(epsilon):
            total += (zz / beta**2 - 2.0 * zx / beta + xx) / xx
        return total / self.trials


def tuning_objective(
    m: int,
    k: int,
    trials: int,
    master_seed: int,
    n: int = 1000,
    alpha: Optional[float] = None,
    noise_mode: str = "artificial-correlated",
    bits: int = 1,
) -> TuningObjective:
    """Convenience constructor for the cached (beta, epsilon) NMSE objective."""
    return TuningObjective(
        m=m,
        k=k,
        trials=trials,
        master_seed=master_seed,
        n=n,
        alpha=alpha,
        noise_mode=noise_mode,
        bits=bits,
    )


def write_results_csv(path: str, points: Sequence[GridPointResult]) -> None:
    """Write one CSV row per (grid point, method), floats at 17 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for p in points:
            writer.writerow(
                [
                    p.n,
                    p.m,
                    p.k,
                    format(p.delta, ".17g"),
                    format(p.rho, ".17g"),
                    p.method,
                    p.noise_mode,
                    p.bits,
                    p.trials,
                    format(p.mean_nmse, ".17g"),
                    format(p.ci99, ".17g"),
                    p.nonconverged,
                ]
            )


def read_results_csv(path: str) -> Tuple[GridPointResult, ...]:
    """Read back rows written by write_results_csv."""
    points = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER.split(","):
            raise ValueError(f"unexpected CSV header {header!r}")
        for row in reader:
            points.append(
                GridPointResult(
                    n=int(row[0]),
                    m=int(row[1]),
                    k=int(row[2]),
                    delta=float(row[3]),
                    rho=float(row[4]),
                    method=row[5],
                    noise_mode=row[6],
                    bits=int(row[7]),
                    trials=int(row[8]),
                    mean_nmse=float(row[9]),
                    ci99=float(row[10]),
                    nonconverged=int(row[11]),
                )
            )
    return tuple(points)


def _point_payload(points: Sequence[GridPointResult]) -> List[dict]:
    return [
        {key: value for key, value in asdict(p).items() if key != "trial_nmse"}
        for p in points
    ]


def write_manifest(path: str, result: ExperimentResult) -> None:
    """Persist config echo, library version, and per-point results as JSON."""
    payload = {
        "format": MANIFEST_FORMAT,
        "kind": "experiment",
        "library_version": __version__,
        "master_seed": result.config.master_seed,
        "config": asdict(result.config),
        "points": _point_payload(result.points),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_manifest(path: str, kind: str) -> dict:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("format") != MANIFEST_FORMAT:
        raise ValueError(f"unexpected manifest format {payload.get('format')!r}")
    if payload.get("kind", "experiment") != kind:
        raise ValueError(f"expected a {kind} manifest, got {payload.get('kind')!r}")
    return payload


def read_manifest(path: str) -> ExperimentResult:
    """Load a manifest written by write_manifest."""
    payload = _load_manifest(path, "experiment")
    raw = dict(payload["config"])
    raw["grid"] = tuple(tuple(point) for point in raw["grid"])
    raw["methods"] = tuple(raw["methods"])
    config = ExperimentConfig(**raw)
    points = tuple(GridPointResult(**point) for point in payload["points"])
    return ExperimentResult(config=config, points=points)


def write_sweep_manifest(
    path: str, params: dict, points: Sequence[GridPointResult]
) -> None:
    """Persist phase-sweep parameters and cells as JSON."""
    payload = {
        "format": MANIFEST_FORMAT,
        "kind": "phase-sweep",
        "library_version": __version__,
        "master_seed": params.get("master_seed"),
        "sweep": dict(params),
        "points": _point_payload(points),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_sweep_manifest(path: str) -> Tuple[dict, Tuple[GridPointResult, ...]]:
    """Load a manifest written by write_sweep_manifest."""
    payload = _load_manifest(path, "phase-sweep")
    points = tuple(GridPointResult(**point) for point in payload["points"])
    return dict(payload["sweep"]), points

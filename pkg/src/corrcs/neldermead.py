"""Derivative-free simplex search over (beta, epsilon) correction parameters.

The reconstruction error as a function of the post-solve scaling beta and the
fidelity radius epsilon is observed to be quasi-convex but is only available
through Monte-Carlo evaluation, so it is minimized with the Nelder-Mead
simplex method. Callers must make the objective deterministic (fix the trial
seeds - common random numbers) or the simplex ordering is meaningless.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

_FEASIBLE_FLOOR = 1e-9


@dataclass(frozen=True)
class SimplexConfig:
    """Nelder-Mead coefficients, initial simplex, and stopping controls."""

    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5
    init_point: Tuple[float, float] = (1.0, 1.0)
    init_spread: float = 0.2
    tol: float = 1e-3
    max_evals: int = 400

    def __post_init__(self):
        if not self.reflection > 0.0:
            raise ValueError(f"reflection must be > 0, got {self.reflection}")
        if not self.expansion > 1.0:
            raise ValueError(f"expansion must be > 1, got {self.expansion}")
        if not 0.0 < self.contraction < 1.0:
            raise ValueError(f"contraction must be in (0, 1), got {self.contraction}")
        if not 0.0 < self.shrink < 1.0:
            raise ValueError(f"shrink must be in (0, 1), got {self.shrink}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.max_evals < 3:
            raise ValueError(f"max_evals must be >= 3, got {self.max_evals}")


def _clamp(point: np.ndarray) -> np.ndarray:
    """Pull infeasible coordinates back to just inside the positive quadrant."""
    return np.maximum(point, _FEASIBLE_FLOOR)


def minimize(
    objective: Callable[[float, float], float], config: SimplexConfig
) -> Tuple[float, float, float]:
    """Minimize objective(beta, epsilon) over the positive quadrant.

    Returns (beta, epsilon, value) at the best vertex once the simplex
    diameter falls below tol relative to the best vertex's scale, or once
    max_evals objective evaluations have been spent. The best value never
    increases from one iteration to the next.
    """
    evals = 0

    def call(point: np.ndarray) -> float:
        nonlocal evals
        evals += 1
        value = float(objective(float(point[0]), float(point[1])))
        return value if np.isfinite(value) else np.inf

    base = _clamp(np.asarray(config.init_point, dtype=np.float64))
    if base.shape != (2,):
        raise ValueError(f"init_point must be a (beta, epsilon) pair, got {config.init_point}")
    vertices = [base]
    for i in range(2):
        step = config.init_spread * base[i]
        if step < config.init_spread * 1e-6:
            step = config.init_spread
        shifted = base.copy()
        shifted[i] += step
        vertices.append(_clamp(shifted))
    values = [call(v) for v in vertices]
    if not all(np.isfinite(values)):
        raise ValueError("objective is not finite on the initial simplex")

    while evals < config.max_evals:
        order = np.argsort(values, kind="stable")
        vertices = [vertices[i] for i in order]
        values = [values[i] for i in order]
        best, worst = vertices[0], vertices[-1]
        diameter = max(float(np.linalg.norm(v - best)) for v in vertices[1:])
        if diameter < config.tol * max(1.0, float(np.linalg.norm(best))):
            break

        centroid = (vertices[0] + vertices[1]) / 2.0
        reflected = _clamp(centroid + config.reflection * (centroid - worst))
        f_reflected = call(reflected)
        if values[0] <= f_reflected < values[1]:
            vertices[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[0]:
            expanded = _clamp(centroid + config.expansion * (reflected - centroid))
            f_expanded = call(expanded)
            if f_expanded < f_reflected:
                vertices[-1], values[-1] = expanded, f_expanded
            else:
                vertices[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[-1]:
            contracted = _clamp(centroid + config.contraction * (reflected - centroid))
            f_contracted = call(contracted)
            if f_contracted <= f_reflected:
                vertices[-1], values[-1] = contracted, f_contracted
                continue
        else:
            contracted = _clamp(centroid + config.contraction * (worst - centroid))
            f_contracted = call(contracted)
            if f_contracted < values[-1]:
                vertices[-1], values[-1] = contracted, f_contracted
                continue
        for i in (1, 2):
            vertices[i] = _clamp(best + config.shrink * (vertices[i] - best))
            values[i] = call(vertices[i])

    order = np.argsort(values, kind="stable")
    best = vertices[order[0]]
    return float(best[0]), float(best[1]), float(values[order[0]])

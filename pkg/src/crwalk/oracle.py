"""Independent eigenvalue verification by shooting on the first-order system.

The eigenvalue problem is the linear ODE d/dx (u, v) = M(lambda, S) (u, v)
with M = [[(-1-lambda)/S, 1/S], [-1/S, (1+lambda)/S]] and boundary conditions
u(-1/2) = v(1/2) = 0.  Integrating from x = -1/2 with (u, v) = (0, 1) gives
the shooting map F(lambda) = v(1/2), an entire function whose zeros are
exactly the eigenvalues.  Nothing here touches the transcendental formulas,
so agreement with the `spectrum` module is a genuine cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryTooClose, NoConvergence
from .params import ModelParams


@dataclass(frozen=True)
class ShootingResult:
    lam: complex
    boundary_value: complex
    converged: bool
    iterations: int


def _propagator(params: ModelParams, lam: complex, steps: int) -> np.ndarray:
    """One-step transfer matrix of classical RK4 with step 1/steps.

    For a constant-coefficient linear system, RK4 applied to the state equals
    multiplication by I + hM + (hM)^2/2 + (hM)^3/6 + (hM)^4/24.
    """
    S = params.S
    M = np.array([[(-1.0 - lam) / S, 1.0 / S],
                  [-1.0 / S, (1.0 + lam) / S]], dtype=complex)
    A = M / steps
    A2 = A @ A
    return (np.eye(2, dtype=complex) + A + A2 / 2.0
            + A2 @ A / 6.0 + A2 @ A2 / 24.0)


def default_steps(params: ModelParams, lam: complex, floor: int = 400) -> int:
    """Step count keeping the RK4 truncation error near an eigenvalue well
    below 1e-9, based on the size of the coefficient matrix."""
    m = (2.0 + 2.0 * abs(lam)) / params.S
    steps = int(math.ceil(m / (120.0 * 1e-10 / max(m, 1.0)) ** 0.25))
    return max(floor, steps)


def shoot(params: ModelParams, lam: complex, steps: int) -> complex:
    """F(lambda) = v(1/2) of the trajectory started at (0, 1)."""
    if steps < 100:
        raise ValueError("steps must be >= 100")
    P = np.linalg.matrix_power(_propagator(params, lam, steps), steps)
    return complex(P[1, 1])


def _shoot_with_supnorm(params: ModelParams, lam: complex, steps: int,
                        samples: int = 256) -> tuple:
    """(F(lambda), sup-norm of the trajectory sampled along the interval)."""
    P = _propagator(params, lam, steps)
    block = max(1, steps // samples)
    Q = np.linalg.matrix_power(P, block)
    y = np.array([0.0, 1.0], dtype=complex)
    sup = 1.0
    done = 0
    while done + block <= steps:
        y = Q @ y
        done += block
        sup = max(sup, abs(y[0]), abs(y[1]))
    if done < steps:
        y = np.linalg.matrix_power(P, steps - done) @ y
        sup = max(sup, abs(y[0]), abs(y[1]))
    return complex(y[1]), sup


def refine_eigenvalue(params: ModelParams, guess: complex,
                      steps: int = 0, maxiter: int = 50) -> ShootingResult:
    """Secant iteration on the shooting map, started from `guess`."""
    if steps <= 0:
        steps = default_steps(params, guess)
    z0 = complex(guess)
    z1 = z0 + 1e-5 * (1.0 + abs(z0))
    f0 = shoot(params, z0, steps)
    f1 = shoot(params, z1, steps)
    for it in range(1, maxiter + 1):
        if f1 == f0:
            break
        z2 = z1 - f1 * (z1 - z0) / (f1 - f0)
        z0, f0 = z1, f1
        z1 = z2
        f1, sup = _shoot_with_supnorm(params, z1, steps)
        if abs(f1) <= 1e-10 * sup:
            return ShootingResult(lam=z1, boundary_value=f1,
                                  converged=True, iterations=it)
    raise NoConvergence(
        f"shooting refinement failed from {guess} (S={params.S})")


def _shoot_batch(params: ModelParams, lams: np.ndarray, steps: int) -> np.ndarray:
    """Vectorized F(lambda) over an array of lambda values."""
    S = params.S
    k = lams.shape[0]
    M = np.empty((k, 2, 2), dtype=complex)
    M[:, 0, 0] = (-1.0 - lams) / S
    M[:, 0, 1] = 1.0 / S
    M[:, 1, 0] = -1.0 / S
    M[:, 1, 1] = (1.0 + lams) / S
    A = M / steps
    A2 = A @ A
    P = (np.eye(2, dtype=complex) + A + A2 / 2.0 + A2 @ A / 6.0
         + A2 @ A2 / 24.0)
    PN = np.linalg.matrix_power(P, steps)
    return PN[:, 1, 1]


def _rectangle_contour(re_min: float, re_max: float, im_min: float,
                       im_max: float, per_side: int) -> np.ndarray:
    t = np.arange(per_side) / per_side
    bottom = re_min + (re_max - re_min) * t + 1j * im_min
    right = re_max + 1j * (im_min + (im_max - im_min) * t)
    top = re_max - (re_max - re_min) * t + 1j * im_max
    left = re_min + 1j * (im_max - (im_max - im_min) * t)
    return np.concatenate((bottom, right, top, left))


def count_in_rectangle(params: ModelParams, re_min: float, re_max: float,
                       im_min: float, im_max: float, steps: int,
                       per_side: int = 256, max_doublings: int = 6) -> int:
    """Number of eigenvalues (with multiplicity) inside the rectangle, by the
    winding number of the shooting map around its boundary."""
    for _ in range(max_doublings + 1):
        pts = _rectangle_contour(re_min, re_max, im_min, im_max, per_side)
        vals = _shoot_batch(params, np.append(pts, pts[0]), steps)
        d = np.diff(np.angle(vals))
        d = (d + math.pi) % (2.0 * math.pi) - math.pi
        if np.max(np.abs(d)) < 0.5 * math.pi:
            return int(round(float(np.sum(d)) / (2.0 * math.pi)))
        per_side *= 2
    raise BoundaryTooClose(
        "argument increment exceeds pi/2 on the contour after refinement")

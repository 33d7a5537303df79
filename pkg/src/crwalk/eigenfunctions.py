"""Closed-form eigenfunctions and their geometry.

The (n, j) eigenfunction is u(x) = sin(nu (1/2 + x)), v(x) = +-sin(nu (1/2 - x))
with the sign set by parity; the lambda = -2 pair at S = 1 is (1 + 2x, 1 - 2x),
and the dominant pair for S > 1 uses sinh with the imaginary part of nu.  The
n-th eigenfunction oscillates exactly n times: n simple interior zeroes when
real, n complete half-turns of the argument around the origin when complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import GridTooCoarse
from .params import ModelParams
from .spectrum import (DoubleRootAtSOne, EigenPair, Parity, dominant,
                       lambda_from_nu, nu_root)


class Normalization(Enum):
    CANONICAL_COEFFICIENT = "canonical"
    UNIT_L2 = "unit_l2"


@dataclass(frozen=True)
class EigenfunctionGrid:
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    pair: EigenPair
    normalization: Normalization


@dataclass(frozen=True)
class RotationSummary:
    n_expected: int
    half_turns_u: int
    half_turns_v: int
    monotone_argument: bool


def _trapz_weights(x: np.ndarray) -> np.ndarray:
    w = np.empty_like(x)
    w[1:-1] = 0.5 * (x[2:] - x[:-2])
    w[0] = 0.5 * (x[1] - x[0])
    w[-1] = 0.5 * (x[-1] - x[-2])
    return w


def l2_norm(x: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
    w = _trapz_weights(x)
    return math.sqrt(float(np.sum(w * (np.abs(u) ** 2 + np.abs(v) ** 2))))


def evaluate(pair: EigenPair, grid: Sequence[float],
             normalization: Normalization = Normalization.CANONICAL_COEFFICIENT
             ) -> EigenfunctionGrid:
    """Sample the eigenfunction of `pair` on `grid` (sorted, in [-1/2, 1/2])."""
    x = np.asarray(grid, dtype=float)
    sgn = 1.0 if pair.parity is Parity.SYMMETRIC else -1.0
    if isinstance(pair.nu, DoubleRootAtSOne):
        u = (1.0 + 2.0 * x).astype(complex)
        v = (1.0 - 2.0 * x).astype(complex)
    else:
        nu = pair.nu.value
        if pair.n == 0 and not pair.nu.is_real:
            # dominant pair for S > 1: real sinh profile
            y = nu.imag
            u = np.sinh(y * (0.5 + x)).astype(complex)
            v = np.sinh(y * (0.5 - x)).astype(complex)
        else:
            u = np.sin(nu * (0.5 + x))
            v = sgn * np.sin(nu * (0.5 - x))
    # the boundary values vanish analytically; pin them against roundoff
    if x[0] == -0.5:
        u[0] = 0.0
    if x[-1] == 0.5:
        v[-1] = 0.0
    if normalization is Normalization.UNIT_L2:
        nrm = l2_norm(x, u, v)
        u = u / nrm
        v = v / nrm
    return EigenfunctionGrid(x=x, u=u, v=v, pair=pair,
                             normalization=normalization)


def _count_sign_changes(values: np.ndarray) -> int:
    s = np.sign(values)
    s = s[s != 0]
    return int(np.sum(s[1:] != s[:-1]))


def _half_turns(values: np.ndarray) -> tuple:
    """(half turns, strictly monotone?, max |increment|) of the unwrapped
    argument along a curve that avoids the origin.

    The curve must already include the limiting directions at the endpoints
    where the eigenfunction vanishes; the continuum total is then an exact
    multiple of pi, so the count is taken to the nearest integer.
    """
    arg = np.angle(values)
    d = np.diff(arg)
    d = (d + math.pi) % (2.0 * math.pi) - math.pi
    total = float(np.sum(d))
    monotone = bool(np.all(d > 0) or np.all(d < 0))
    return (int(math.floor(abs(total) / math.pi + 0.5)), monotone,
            float(np.max(np.abs(d))))


def rotation_number(fn: EigenfunctionGrid, max_refinements: int = 3
                    ) -> RotationSummary:
    """Count interior zeroes (real case) or argument half-turns (complex case).

    The grid is refined (re-sampling the eigenfunction) until consecutive
    argument increments stay below pi/2.
    """
    pair = fn.pair
    n = pair.n
    real_case = abs(complex(pair.lam).imag) == 0.0 and (
        isinstance(pair.nu, DoubleRootAtSOne) or pair.nu.is_real
        or pair.n == 0)
    if real_case:
        zu = _count_sign_changes(fn.u[1:-1].real)
        zv = _count_sign_changes(fn.v[1:-1].real)
        return RotationSummary(n_expected=n, half_turns_u=zu,
                               half_turns_v=zv, monotone_argument=True)

    nu = pair.nu.value
    sgn = 1.0 if pair.parity is Parity.SYMMETRIC else -1.0
    cur = fn
    for attempt in range(max_refinements + 1):
        # u vanishes at x = -1/2 like nu*(1/2+x): prepend the limit direction;
        # v vanishes at x = +1/2 like +-nu*(1/2-x): append it.
        u_curve = np.concatenate(([nu], cur.u[1:]))
        v_curve = np.concatenate((cur.v[:-1], [sgn * nu]))
        hu, mono_u, du = _half_turns(u_curve)
        hv, mono_v, dv = _half_turns(v_curve)
        if max(du, dv) < 0.5 * math.pi:
            return RotationSummary(n_expected=n, half_turns_u=hu,
                                   half_turns_v=hv,
                                   monotone_argument=mono_u and mono_v)
        if attempt < max_refinements:
            finer = np.linspace(-0.5, 0.5, 2 * (len(cur.x) - 1) + 1)
            cur = evaluate(pair, finer, cur.normalization)
    raise GridTooCoarse(
        f"argument increments exceed pi/2 after {max_refinements} refinements")


def dominant_positivity(params: ModelParams, grid_size: int) -> bool:
    """Strict interior positivity of the dominant eigenfunction (one grid
    cell excluded at each end, where the components vanish by construction)."""
    x = np.linspace(-0.5, 0.5, grid_size + 1)
    fn = evaluate(dominant(params), x)
    u = fn.u[1:-1].real
    v = fn.v[1:-1].real
    return bool(np.min(u) > 0.0 and np.min(v) > 0.0)


def simplicity_integral(params: ModelParams, grid_size: int) -> float:
    """Trapezoidal 2 * integral of u0*v0 over (-1/2, 1/2); strictly positive,
    which witnesses algebraic simplicity of the dominant eigenvalue."""
    x = np.linspace(-0.5, 0.5, grid_size + 1)
    fn = evaluate(dominant(params), x)
    w = _trapz_weights(x)
    return float(2.0 * np.sum(w * fn.u.real * fn.v.real))


def indexed_eigenfunction(params: ModelParams, n: int, j: int,
                          grid: Sequence[float],
                          normalization: Normalization = Normalization.CANONICAL_COEFFICIENT
                          ) -> EigenfunctionGrid:
    """Convenience: evaluate the (n, j) eigenfunction (n = 0 ignores j)."""
    pair = dominant(params) if n == 0 else lambda_from_nu(nu_root(params, n, j))
    return evaluate(pair, grid, normalization)

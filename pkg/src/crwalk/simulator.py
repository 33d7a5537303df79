"""Time-domain solver for the two-speed transport system.

The scheme is Strang splitting of two exactly solvable flows at unit CFL
(dt = dx / S): the pointwise turning reaction (u + v conserved, u - v damped
by e^(-2t)) and pure transport (u shifts one cell right, v one cell left,
zero inflow).  Transport at unit CFL is exact, so the only discretization
error is the splitting commutator; there is no numerical diffusion to bias
decay-rate fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import CFLViolation, DegenerateWindow, ZeroState
from .eigenfunctions import Normalization, evaluate
from .params import ModelParams
from .spectrum import dominant


@dataclass(frozen=True)
class State:
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    t: float

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])


@dataclass(frozen=True)
class DecayFit:
    rate: float
    amplitude: float
    r_squared: float
    window: Tuple[float, float]


@dataclass(frozen=True)
class SimulationResult:
    times: np.ndarray
    norms: np.ndarray
    snapshots: Dict[float, State]


@dataclass(frozen=True)
class WashoutReport:
    times: np.ndarray
    roughness: np.ndarray
    collapse_time: float
    expected_time: float


def _trapz_weights(n_points: int, dx: float) -> np.ndarray:
    w = np.full(n_points, dx)
    w[0] = w[-1] = 0.5 * dx
    return w


def state_norm(state: State) -> float:
    w = _trapz_weights(len(state.x), state.dx)
    return math.sqrt(float(np.sum(w * (state.u ** 2 + state.v ** 2))))


def _reaction_half(u: np.ndarray, v: np.ndarray, dt: float) -> tuple:
    """Exact reaction flow over dt/2: u+v conserved, u-v damped."""
    decay = math.exp(-dt)
    p = u + v
    q = (u - v) * decay
    return 0.5 * (p + q), 0.5 * (p - q)


def _transport(u: np.ndarray, v: np.ndarray) -> tuple:
    """Exact one-cell transport with zero inflow."""
    un = np.empty_like(u)
    un[1:] = u[:-1]
    un[0] = 0.0
    vn = np.empty_like(v)
    vn[:-1] = v[1:]
    vn[-1] = 0.0
    return un, vn


def step(state: State, params: ModelParams, dt: float,
         reaction: bool = True, transport: bool = True) -> State:
    """One Strang step: half reaction, exact transport, half reaction.

    dt must equal dx / S (unit CFL).  The reaction/transport switches exist
    only as test hooks for the exactness anchors.
    """
    expected = state.dx / params.S
    if abs(dt - expected) > 1e-12 * expected:
        raise CFLViolation(f"dt={dt} but dx/S={expected}")
    u, v = state.u, state.v
    if reaction:
        u, v = _reaction_half(u, v, dt)
    if transport:
        u, v = _transport(u, v)
    if reaction:
        u, v = _reaction_half(u, v, dt)
    # inflow boundary values are pinned by the boundary conditions
    u = u.copy() if u is state.u else u
    v = v.copy() if v is state.v else v
    u[0] = 0.0
    v[-1] = 0.0
    return State(x=state.x, u=u, v=v, t=state.t + dt)


def simulate(initial: State, params: ModelParams, t_end: float,
             snapshot_times: Sequence[float] = ()) -> SimulationResult:
    """March to t_end recording the discrete L2 norm at every step; snapshot
    states at the steps nearest the requested times."""
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    dt = initial.dx / params.S
    n_steps = int(round(t_end / dt))
    snap_idx = {int(round(ts / dt)): ts for ts in snapshot_times}
    times = np.empty(n_steps + 1)
    norms = np.empty(n_steps + 1)
    snapshots: Dict[float, State] = {}
    state = initial
    times[0] = state.t
    norms[0] = state_norm(state)
    if 0 in snap_idx:
        snapshots[snap_idx[0]] = state
    for k in range(1, n_steps + 1):
        state = step(state, params, dt)
        times[k] = state.t
        norms[k] = state_norm(state)
        if k in snap_idx:
            snapshots[snap_idx[k]] = state
    return SimulationResult(times=times, norms=norms, snapshots=snapshots)


def fit_decay(times: np.ndarray, norms: np.ndarray,
              window: Tuple[float, float]) -> DecayFit:
    """Least-squares line through (t, log norm) inside the window."""
    t0, t1 = window
    mask = (times >= t0) & (times <= t1)
    if np.count_nonzero(mask) < 2:
        raise ValueError("window contains fewer than 2 samples")
    t = times[mask]
    nr = norms[mask]
    if np.any(nr < 1e-300):
        raise DegenerateWindow("norms underflow inside the fit window")
    y = np.log(nr)
    A = np.vstack([t, np.ones_like(t)]).T
    (rate, logamp), res, _, _ = np.linalg.lstsq(A, y, rcond=None)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(res[0]) if res.size else 0.0
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return DecayFit(rate=float(rate), amplitude=math.exp(float(logamp)),
                    r_squared=r2, window=(t0, t1))


def dominant_profile(params: ModelParams, x: np.ndarray) -> State:
    """Dominant eigenfunction as a real, unit-L2 state at t = 0."""
    fn = evaluate(dominant(params), x, Normalization.UNIT_L2)
    return State(x=x, u=fn.u.real.copy(), v=fn.v.real.copy(), t=0.0)


def profile_distance(state: State, params: ModelParams) -> float:
    """L2 distance between the normalized state (sign-aligned) and the
    unit-L2 dominant eigenfunction on the same grid."""
    nrm = state_norm(state)
    if nrm == 0.0:
        raise ZeroState("profile distance undefined for the zero state")
    eig = dominant_profile(params, state.x)
    w = _trapz_weights(len(state.x), state.dx)
    inner = float(np.sum(w * (state.u * eig.u + state.v * eig.v)))
    sign = 1.0 if inner >= 0 else -1.0
    du = state.u / nrm - sign * eig.u
    dv = state.v / nrm - sign * eig.v
    return math.sqrt(float(np.sum(w * (du ** 2 + dv ** 2))))


def telegraph_residual(snapshots: Sequence[State], params: ModelParams) -> float:
    """Max interior residual of p_tt + 2 p_t - S^2 p_xx for p = u + v built
    from three consecutive, equally spaced states."""
    if len(snapshots) != 3:
        raise ValueError("exactly three consecutive states required")
    s0, s1, s2 = snapshots
    dt1 = s1.t - s0.t
    dt2 = s2.t - s1.t
    if abs(dt1 - dt2) > 1e-12 * dt1:
        raise ValueError("states are not equally spaced in time")
    dt = dt1
    dx = s1.dx
    p0 = s0.u + s0.v
    p1 = s1.u + s1.v
    p2 = s2.u + s2.v
    p_tt = (p2 - 2.0 * p1 + p0) / dt ** 2
    p_t = (p2 - p0) / (2.0 * dt)
    p_xx = np.zeros_like(p1)
    p_xx[1:-1] = (p1[2:] - 2.0 * p1[1:-1] + p1[:-2]) / dx ** 2
    res = p_tt + 2.0 * p_t - params.S ** 2 * p_xx
    # skip the cells touching the pinned boundary values, where the centered
    # second difference straddles the inflow kink and does not converge
    return float(np.max(np.abs(res[2:-2])))


def _roughness(state: State) -> float:
    dx = state.dx
    return float(max(np.max(np.abs(np.diff(state.u))),
                     np.max(np.abs(np.diff(state.v)))) / dx)


def washout_regularity(initial: State, params: ModelParams,
                       t_end: Optional[float] = None) -> WashoutReport:
    """Track the maximum first-difference quotient over time and report when
    it collapses to the smooth-background level (expected near t = 1/S: the
    jump rides a characteristic to the outflow boundary)."""
    S = params.S
    if t_end is None:
        t_end = 2.0 / S
    dt = initial.dx / S
    n_steps = int(round(t_end / dt))
    times = np.empty(n_steps + 1)
    rough = np.empty(n_steps + 1)
    state = initial
    times[0] = state.t
    rough[0] = _roughness(state)
    for k in range(1, n_steps + 1):
        state = step(state, params, dt)
        times[k] = state.t
        rough[k] = _roughness(state)
    # geometric-mean threshold between initial and final roughness; robust
    # because the drop at the wash-out time is by orders of magnitude
    threshold = math.sqrt(max(rough[0], 1e-300) * max(rough[-1], 1e-300))
    below = np.nonzero(rough <= threshold)[0]
    collapse = float(times[below[0]]) if below.size else float(times[-1])
    return WashoutReport(times=times, roughness=rough,
                         collapse_time=collapse, expected_time=1.0 / S)


def initial_state(kind: str, N: int, params: Optional[ModelParams] = None,
                  seed: int = 0) -> State:
    """Initial-data library: 'eigen', 'box', 'hat', 'random', 'jump'."""
    x = np.linspace(-0.5, 0.5, N + 1)
    if kind == "eigen":
        if params is None:
            raise ValueError("'eigen' initial data needs model parameters")
        return dominant_profile(params, x)
    if kind == "box":
        u = np.where(np.abs(x) < 0.25, 1.0, 0.0)
        v = u.copy()
    elif kind == "hat":
        u = np.maximum(0.0, 1.0 - 4.0 * np.abs(x))
        v = u.copy()
    elif kind == "random":
        rng = np.random.default_rng(seed)
        coeffs = rng.normal(0.0, 0.3, size=6)
        modes = sum(c * np.cos((k + 1) * math.pi * x) / (k + 1)
                    for k, c in enumerate(coeffs))
        u = np.exp(modes)
        v = u.copy()
    elif kind == "jump":
        # discontinuity at the inflow boundary: traverses the whole domain
        u = np.ones_like(x)
        v = np.zeros_like(x)
    else:
        raise ValueError(f"unknown initial data kind: {kind}")
    u = u.copy()
    v = v.copy()
    u[0] = 0.0
    v[-1] = 0.0
    return State(x=x, u=u, v=v, t=0.0)

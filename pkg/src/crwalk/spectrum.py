"""Roots of the characteristic equations sin(nu) = +-S*nu and the eigenvalues
they generate.

Every eigenvalue of the transport system comes from a nonzero solution nu of
one of the two transcendental families (symmetric: sin(nu) = S*nu with
lambda = -1 - cos(nu); antisymmetric: sin(nu) = -S*nu with
lambda = -1 + cos(nu)), except the lone lambda = -2 that exists only at S = 1.
Roots are indexed by the strip (n*pi, (n+1)*pi) they live in (or over, once
they turn complex) plus j in {1, 2}.  Real roots merge and become complex
conjugate pairs as S crosses the critical values S_m = |cos(e_m)|, where e_m
solves tan(x) = x in (m*pi, (m+1/2)*pi).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Union

from .errors import ConvergenceFailure
from .params import ModelParams

# Residual tolerance used by the solvers: |sin(nu) -+ S*nu| <= RES_TOL*(1+|nu|).
RES_TOL = 1e-13
# Switch to the local quadratic model this close to a double-root parameter.
DOUBLE_ROOT_BAND = 1e-6
# Margin by which Newton iterates may overshoot the closed strip Q_n.
STRIP_MARGIN = 0.1


class Parity(Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"

    @property
    def sign(self) -> int:
        """+1 for sin(nu) = S*nu, -1 for sin(nu) = -S*nu."""
        return 1 if self is Parity.SYMMETRIC else -1


def parity_of(n: int) -> Parity:
    return Parity.SYMMETRIC if n % 2 == 0 else Parity.ANTISYMMETRIC


@dataclass(frozen=True)
class NuRoot:
    n: int
    j: Optional[int]  # None for the n = 0 root
    value: complex
    parity: Parity
    is_real: bool


class DoubleRootAtSOne:
    """Marker for nu = 0 at S = 1, the one point where it is not spurious."""

    def __repr__(self):
        return "DoubleRootAtSOne"


DOUBLE_ROOT_AT_S_ONE = DoubleRootAtSOne()


@dataclass(frozen=True)
class EigenPair:
    lam: complex
    nu: Union[NuRoot, DoubleRootAtSOne]
    parity: Parity
    n: int
    j: Optional[int]
    # |cosine-form lambda - sqrt-form lambda|; only meaningful where the
    # sqrt form -1 - sqrt(1 - S^2 nu^2) applies (complex and double roots).
    sqrt_form_gap: float = math.nan


@dataclass(frozen=True)
class CriticalS:
    m: int
    nu_m: float
    S_m: float


def char_residual(value: complex, parity: Parity, S: float) -> float:
    """|sin(nu) - sign * S * nu| for the parity's characteristic equation."""
    return abs(cmath.sin(value) - parity.sign * S * value)


def _bisect(f, a: float, b: float, iters: int = 200) -> float:
    fa = f(a)
    if fa == 0.0:
        return a
    for _ in range(iters):
        c = 0.5 * (a + b)
        if c == a or c == b:
            break
        fc = f(c)
        if fc == 0.0:
            return c
        if (fa > 0) == (fc > 0):
            a, fa = c, fc
        else:
            b = c
    return 0.5 * (a + b)


@lru_cache(maxsize=None)
def critical_s(m: int) -> CriticalS:
    """Double-root datum: e_m solving tan(x) = x in (m*pi, (m+1/2)*pi) and
    the parameter S_m = |cos(e_m)| at which the n = m root pair merges."""
    if m < 1:
        raise ValueError("m must be >= 1")
    a = m * math.pi
    b = (m + 0.5) * math.pi

    def f(x):
        return math.tan(x) - x

    delta = 0.25 * (b - a)
    while not (f(a + delta) < 0 < f(b - delta)):
        delta *= 0.5
        if delta < 1e-14:
            raise ConvergenceFailure(f"could not bracket tan(x)=x for m={m}")
    nu_m = _bisect(f, a + delta, b - delta)
    return CriticalS(m=m, nu_m=nu_m, S_m=abs(math.cos(nu_m)))


def _is_unit_speed(S: float) -> bool:
    return abs(S - 1.0) <= 1e-12


def nu_zero(params: ModelParams) -> Union[NuRoot, DoubleRootAtSOne]:
    """The n = 0 root of sin(nu) = S*nu: real in (0, pi) for S < 1, the
    nu = 0 double root marker at S = 1, purely imaginary i*y0 for S > 1."""
    S = params.S
    if _is_unit_speed(S):
        return DOUBLE_ROOT_AT_S_ONE
    if S < 1:
        delta = 1e-13
        root = _bisect(lambda x: math.sin(x) - S * x, delta, math.pi)
        return NuRoot(n=0, j=None, value=complex(root, 0.0),
                      parity=Parity.SYMMETRIC, is_real=True)
    # S > 1: sinh(y) = S*y with y > 0
    delta = 1e-13
    hi = 2.0 * math.log(2.0 * S) + 2.0

    def g(y):
        return math.sinh(y) - S * y

    while g(hi) <= 0:
        hi *= 2.0
    y0 = _bisect(g, delta, hi)
    return NuRoot(n=0, j=None, value=complex(0.0, y0),
                  parity=Parity.SYMMETRIC, is_real=False)


def _in_inflated_strip(z: complex, n: int) -> bool:
    return (n * math.pi - STRIP_MARGIN <= z.real <= (n + 0.5) * math.pi + STRIP_MARGIN
            and z.imag >= -STRIP_MARGIN)


def _newton_in_strip(S: float, sign: int, n: int, seed: complex,
                     maxiter: int = 100) -> Optional[complex]:
    """Damped Newton for sin(nu) - sign*S*nu = 0, kept inside Q_n (inflated)."""
    z = seed
    for _ in range(maxiter):
        f = cmath.sin(z) - sign * S * z
        if abs(f) <= RES_TOL * (1.0 + abs(z)):
            return z
        fp = cmath.cos(z) - sign * S
        if fp == 0:
            return None
        step = f / fp
        zn = z - step
        halvings = 0
        while not _in_inflated_strip(zn, n):
            step *= 0.5
            zn = z - step
            halvings += 1
            if halvings > 60:
                return None
        z = zn
    return None


def _complex_root(S: float, n: int) -> complex:
    """The j = 1 complex root in Q_n: Newton from the asymptotic seed, with
    parameter continuation from large S as a fallback."""
    sign = parity_of(n).sign
    a = (n + 0.5) * math.pi
    seed = complex(a, math.log(2.0 * S * a))
    z = _newton_in_strip(S, sign, n, seed)
    if z is None:
        # continuation: at large S the asymptotic seed is reliable
        s_hi = max(8.0 * S, 20.0 / a, 2.0)
        z = _newton_in_strip(s_hi, sign, n, complex(a, math.log(2.0 * s_hi * a)))
        if z is not None:
            n_steps = 60
            ratio = (S / s_hi) ** (1.0 / n_steps)
            s_cur = s_hi
            for _ in range(n_steps):
                s_cur *= ratio
                z = _newton_in_strip(s_cur, sign, n, z)
                if z is None:
                    break
            if z is not None:
                z = _newton_in_strip(S, sign, n, z)
    if z is None or char_residual(z, parity_of(n), S) > 1e-10 * (1.0 + abs(z)):
        raise ConvergenceFailure(
            f"complex root solve failed for S={S}, n={n}")
    if z.imag < 0:
        z = z.conjugate()
    if not (n * math.pi < z.real < (n + 0.5) * math.pi and z.imag > 0):
        raise ConvergenceFailure(
            f"root left the strip Q_{n} for S={S}: {z}")
    return z


def _near_double_roots(S: float, n: int) -> tuple:
    """Both roots from a local quadratic model around e_n, polished by Newton.

    Used when |S - S_n| is tiny: the bisection sub-brackets degenerate and
    Newton's derivative nearly vanishes at the seed.
    """
    sign = parity_of(n).sign
    e = critical_s(n).nu_m
    f0 = math.sin(e) - sign * S * e
    f1 = math.cos(e) - sign * S
    f2 = -math.sin(e)
    disc = cmath.sqrt(complex(f1 * f1 - 2.0 * f0 * f2, 0.0))
    d1 = (-f1 + disc) / f2
    d2 = (-f1 - disc) / f2
    roots = []
    for d in (d1, d2):
        z = e + d
        for _ in range(20):
            f = cmath.sin(z) - sign * S * z
            if abs(f) <= RES_TOL * (1.0 + abs(z)):
                break
            fp = cmath.cos(z) - sign * S
            if abs(fp) < 1e-300:
                break
            z = z - f / fp
        roots.append(z)
    return tuple(roots)


def nu_root(params: ModelParams, n: int, j: int) -> NuRoot:
    """The indexed root nu_{n,j} for n >= 1, j in {1, 2}.

    Real sub-critical roots are bracketed by bisection on either side of the
    tangency point e_n; complex roots come from damped Newton inside Q_n.
    Labeling: real roots ordered nu_{n,1} < nu_{n,2}; complex roots have
    Im(nu_{n,1}) > 0 > Im(nu_{n,2}) with nu_{n,2} = conj(nu_{n,1}).
    """
    if n < 1:
        raise ValueError("n must be >= 1; use nu_zero for n = 0")
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    S = params.S
    par = parity_of(n)
    sign = par.sign
    crit = critical_s(n)

    if abs(S - crit.S_m) <= 1e-12:
        value = complex(crit.nu_m, 0.0)
        is_real = True
    elif abs(S - crit.S_m) < DOUBLE_ROOT_BAND:
        r1, r2 = _near_double_roots(S, n)
        if abs(r1.imag) < 1e-12 and abs(r2.imag) < 1e-12:
            lo, hi = sorted((r1.real, r2.real))
            value = complex(lo if j == 1 else hi, 0.0)
            is_real = True
        else:
            z = r1 if r1.imag > 0 else r2
            value = z if j == 1 else z.conjugate()
            is_real = False
    elif S < crit.S_m:
        delta = 1e-9 * (n + 1) * math.pi
        e = crit.nu_m

        def f(x):
            return math.sin(x) - sign * S * x

        if j == 1:
            value = complex(_bisect(f, n * math.pi + delta, e), 0.0)
        else:
            value = complex(_bisect(f, e, (n + 1) * math.pi - delta), 0.0)
        is_real = True
    else:
        z = _complex_root(S, n)
        value = z if j == 1 else z.conjugate()
        is_real = False

    if char_residual(value, par, S) > 1e-10 * (1.0 + abs(value)):
        raise ConvergenceFailure(
            f"residual too large for S={S}, n={n}, j={j}")
    return NuRoot(n=n, j=j, value=value, parity=par, is_real=is_real)


def _sqrt_branch(z: complex) -> complex:
    """Principal square root: sqrt(0) = 0 and -pi/2 < arg(sqrt(z)) <= pi/2."""
    w = cmath.sqrt(z)
    if w.real < 0 or (w.real == 0 and w.imag < 0):
        w = -w
    return w


def lambda_from_nu(root: Union[NuRoot, DoubleRootAtSOne]) -> EigenPair:
    """Map a characteristic root to its eigenvalue via the parity-correct
    cosine formula.  The alternative sqrt form -1 - sqrt(1 - S^2 nu^2) is
    evaluated too (using S^2 nu^2 = sin^2 nu) and its gap recorded; it only
    has to agree in the complex and double-root regimes."""
    if isinstance(root, DoubleRootAtSOne):
        return EigenPair(lam=complex(-2.0, 0.0), nu=root,
                         parity=Parity.SYMMETRIC, n=0, j=None,
                         sqrt_form_gap=0.0)
    nu = root.value
    lam = -1.0 - root.parity.sign * cmath.cos(nu)
    alt = -1.0 - _sqrt_branch(1.0 - cmath.sin(nu) ** 2)
    return EigenPair(lam=lam, nu=root, parity=root.parity,
                     n=root.n, j=root.j, sqrt_form_gap=abs(lam - alt))


def dominant(params: ModelParams) -> EigenPair:
    """The dominant (largest-real-part) eigenvalue; always real."""
    return lambda_from_nu(nu_zero(params))


def spectrum_slice(params: ModelParams, n_max: int) -> List[EigenPair]:
    """lambda_0 plus lambda_{n,j} for 1 <= n <= n_max, ordered by n then j."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    out = [dominant(params)]
    for n in range(1, n_max + 1):
        for j in (1, 2):
            out.append(lambda_from_nu(nu_root(params, n, j)))
    return out


def asymptotic_nu(params: ModelParams, n: int, j: int) -> complex:
    """Large-n approximation (n+1/2)pi - (-1)^j * i * log(2S(n+1/2)pi)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = (n + 0.5) * math.pi
    return complex(a, -((-1) ** j) * math.log(2.0 * params.S * a))


def asymptotic_lambda(params: ModelParams, n: int, j: int) -> complex:
    """Large-n approximation -1 - S log(2S(n+1/2)pi) - (-1)^j i S(n+1/2)pi."""
    if n < 1:
        raise ValueError("n must be >= 1")
    S = params.S
    a = (n + 0.5) * math.pi
    return complex(-1.0 - S * math.log(2.0 * S * a), -((-1) ** j) * S * a)

import cmath
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from crwalk import (DOUBLE_ROOT_AT_S_ONE, ConvergenceFailure, DoubleRootAtSOne,
                    ModelParams, Parity, asymptotic_lambda, asymptotic_nu,
                    char_residual, critical_s, dominant, lambda_from_nu,
                    nu_root, nu_zero, parity_of, spectrum_slice)

S_GRID = np.logspace(math.log10(0.01), math.log10(5.0), 40)


# ---------------------------------------------------------------- critical S

def test_critical_tangency_residual():
    for m in range(1, 12):
        c = critical_s(m)
        assert abs(math.tan(c.nu_m) - c.nu_m) < 1e-9
        assert m * math.pi < c.nu_m < (m + 0.5) * math.pi


def test_critical_matches_independent_brentq():
    for m in range(1, 8):
        c = critical_s(m)
        a = m * math.pi + 0.1
        b = (m + 0.5) * math.pi - 1e-9
        ref = brentq(lambda x: math.tan(x) - x, a, b, xtol=1e-14)
        assert abs(c.nu_m - ref) < 1e-10
        assert abs(c.S_m - abs(math.cos(ref))) < 1e-12


def test_critical_sequence_decreasing():
    vals = [critical_s(m).S_m for m in range(1, 12)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_critical_rejects_nonpositive_index():
    with pytest.raises(ValueError):
        critical_s(0)


# ------------------------------------------------------------------ n = 0 root

def test_nu_zero_subcritical_bracket_and_oracle():
    for S in (0.1, 0.5, 0.9, 0.99):
        root = nu_zero(ModelParams(S))
        assert root.is_real and 0.0 < root.value.real < math.pi
        ref = brentq(lambda x: math.sin(x) - S * x, 1e-9, math.pi, xtol=1e-14)
        assert abs(root.value.real - ref) < 1e-10


def test_nu_zero_at_unit_speed_is_marker():
    assert isinstance(nu_zero(ModelParams(1.0)), DoubleRootAtSOne)
    assert isinstance(nu_zero(ModelParams(1.0 + 5e-13)), DoubleRootAtSOne)


def test_nu_zero_supercritical_imaginary():
    for S in (1.1, 2.0, 5.0):
        root = nu_zero(ModelParams(S))
        assert not root.is_real
        assert root.value.real == 0.0 and root.value.imag > 0.0
        y = root.value.imag
        assert abs(math.sinh(y) - S * y) < 1e-10 * (1.0 + y)


def test_dominant_monotone_decreasing_in_speed():
    lams = [dominant(ModelParams(S)).lam.real for S in S_GRID]
    assert all(b < a for a, b in zip(lams, lams[1:]))


def test_dominant_strictly_negative_never_zero():
    for S in S_GRID:
        lam = dominant(ModelParams(S)).lam
        assert lam.imag == 0.0
        assert lam.real < -1e-4


# ------------------------------------------------------------- indexed roots

def test_characteristic_residual_over_speed_grid():
    for S in S_GRID:
        params = ModelParams(S)
        for n in range(1, 8):
            for j in (1, 2):
                root = nu_root(params, n, j)
                bound = 1e-10 * (1.0 + abs(root.value))
                assert char_residual(root.value, root.parity, S) <= bound


def test_real_roots_match_brentq_oracle():
    # S = 0.05 keeps the n <= 5 pairs real
    S = 0.05
    params = ModelParams(S)
    for n in range(1, 6):
        sign = parity_of(n).sign
        e = critical_s(n).nu_m
        f = lambda x: math.sin(x) - sign * S * x
        lo = brentq(f, n * math.pi + 1e-9, e, xtol=1e-14)
        hi = brentq(f, e, (n + 1) * math.pi - 1e-9, xtol=1e-14)
        assert abs(nu_root(params, n, 1).value.real - lo) < 1e-9
        assert abs(nu_root(params, n, 2).value.real - hi) < 1e-9
        assert lo < hi


def test_complex_roots_strip_and_conjugation():
    for S in (0.3, 0.8, 2.0, 5.0):
        params = ModelParams(S)
        for n in range(1, 8):
            if S <= critical_s(n).S_m:
                continue
            r1 = nu_root(params, n, 1)
            r2 = nu_root(params, n, 2)
            assert r1.value.imag > 0 > r2.value.imag
            assert r2.value == r1.value.conjugate()
            assert n * math.pi < r1.value.real < (n + 0.5) * math.pi


def test_real_complex_transition_follows_critical_sequence():
    # choosing S between consecutive critical values splits the spectrum:
    # pairs with index <= m stay real, higher pairs have merged and left axis
    for m in (1, 2, 3):
        S = 0.5 * (critical_s(m).S_m + critical_s(m + 1).S_m)
        params = ModelParams(S)
        for n in range(1, m + 3):
            root = nu_root(params, n, 1)
            assert root.is_real == (n <= m)


def test_near_double_root_band():
    c = critical_s(1)
    for ds in (1e-7, 1e-9, -1e-7, -1e-9):
        params = ModelParams(c.S_m + ds)
        r1 = nu_root(params, 1, 1)
        r2 = nu_root(params, 1, 2)
        # below the critical speed the pair is real, above it is conjugate
        assert r1.is_real == (ds < 0)
        assert abs(r1.value - c.nu_m) < 1e-2
        assert char_residual(r1.value, r1.parity, params.S) <= 1e-10 * (
            1.0 + abs(r1.value))
        if not r1.is_real:
            assert r2.value == r1.value.conjugate()


def test_exactly_critical_gives_real_double_root():
    c = critical_s(1)
    params = ModelParams(c.S_m)
    r1 = nu_root(params, 1, 1)
    r2 = nu_root(params, 1, 2)
    assert r1.is_real and r2.is_real
    assert abs(r1.value - c.nu_m) < 1e-12
    assert r1.value == r2.value


def test_index_validation():
    params = ModelParams(0.5)
    with pytest.raises(ValueError):
        nu_root(params, 0, 1)
    with pytest.raises(ValueError):
        nu_root(params, 1, 3)


# ------------------------------------------------------------------ eigenvalues

def test_eigenvalue_formula_parity():
    for S in (0.05, 0.8, 3.0):
        params = ModelParams(S)
        for n in (1, 2, 3, 4):
            pair = lambda_from_nu(nu_root(params, n, 1))
            nu = pair.nu.value
            sign = parity_of(n).sign
            assert abs(pair.lam - (-1.0 - sign * cmath.cos(nu))) < 1e-13


def test_sqrt_form_agrees_for_complex_and_double_roots():
    for S in (0.5, 1.0, 2.0):
        params = ModelParams(S)
        for pair in spectrum_slice(params, 6):
            nu = pair.nu
            if isinstance(nu, DoubleRootAtSOne) or not nu.is_real:
                assert pair.sqrt_form_gap < 1e-10 * (1.0 + abs(pair.lam))


def test_unit_speed_special_eigenvalue():
    pair = dominant(ModelParams(1.0))
    assert pair.lam == complex(-2.0, 0.0)
    assert pair.nu is DOUBLE_ROOT_AT_S_ONE


def test_spectrum_slice_shape_and_order():
    pairs = spectrum_slice(ModelParams(0.8), 4)
    assert len(pairs) == 9
    assert pairs[0].n == 0
    assert [(q.n, q.j) for q in pairs[1:]] == [
        (n, j) for n in range(1, 5) for j in (1, 2)]


def test_dominance_across_grid():
    for S in S_GRID:
        params = ModelParams(S)
        lam0 = dominant(params).lam.real
        for pair in spectrum_slice(params, 6)[1:]:
            assert pair.lam.real < lam0


def test_conjugate_eigenvalues():
    params = ModelParams(0.8)
    for n in (1, 2, 5):
        l1 = lambda_from_nu(nu_root(params, n, 1)).lam
        l2 = lambda_from_nu(nu_root(params, n, 2)).lam
        assert l2 == l1.conjugate()


# ------------------------------------------------------------------ asymptotics

def test_asymptotic_gap_shrinks():
    params = ModelParams(0.8)
    gaps_nu = []
    gaps_lam = []
    for n in (20, 80, 320):
        root = nu_root(params, n, 1)
        gaps_nu.append(abs(root.value - asymptotic_nu(params, n, 1)))
        gaps_lam.append(abs(lambda_from_nu(root).lam
                            - asymptotic_lambda(params, n, 1)))
    assert gaps_nu[0] > gaps_nu[1] > gaps_nu[2]
    assert gaps_lam[0] > gaps_lam[1] > gaps_lam[2]


def test_asymptotic_imaginary_part_sign_convention():
    params = ModelParams(0.8)
    assert asymptotic_nu(params, 3, 1).imag > 0 > asymptotic_nu(params, 3, 2).imag
    assert asymptotic_lambda(params, 3, 1).imag > 0

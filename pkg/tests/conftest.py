"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import quad

from rinorms import StepFunction, generate_corpus

INF = math.inf


def quad_weighted_power(f: StepFunction, gamma: float, w: float, a: float = 0.0, b: float = INF) -> float:
    """Adaptive-quadrature oracle for ``integral_a^b t**(gamma-1) f(t)**w dt``.

    Integrates each constant piece separately with QUADPACK so the oracle
    never sees a discontinuity; it shares no code with the closed forms
    under test.  Only finite integrals are supported.
    """
    total = 0.0
    for lo, hi, v in f.pieces():
        if v == 0.0:
            continue
        lo2, hi2 = max(lo, a), min(hi, b)
        if lo2 >= hi2:
            continue
        if hi2 == INF:
            raise ValueError("quadrature oracle needs a finite integration range")
        val, _ = quad(
            lambda t, c=v: t ** (gamma - 1.0) * c**w,
            lo2,
            hi2,
            epsabs=1e-14,
            epsrel=1e-13,
            limit=400,
        )
        total += val
    return total


def quad_lorentz_norm(f: StepFunction, p: float, q: float) -> float:
    """Quadrature oracle for finite Lorentz norms with q < inf."""
    fs = f.rearrange()
    if fs.is_zero:
        return 0.0
    assert fs.tail == 0.0 and p < INF and q < INF
    return quad_weighted_power(fs, q / p, q, 0.0, fs.breakpoints[-1]) ** (1.0 / q)


@pytest.fixture(scope="session")
def unit_indicator() -> StepFunction:
    return StepFunction.indicator(0.0, 1.0)


@pytest.fixture(scope="session")
def small_corpus():
    return generate_corpus(7, 60)


@pytest.fixture(scope="session")
def dyadic_corpus():
    return generate_corpus(13, 60, dyadic=True)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(42)

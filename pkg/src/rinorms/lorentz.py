"""Lorentz spaces L_{p,q} as concrete rearrangement-invariant quasi-Banach spaces.

Quasi-norms are evaluated in closed form on step functions:

    ||f||_{p,q} = ( integral_0^inf t**(q/p - 1) f*(t)**q dt )**(1/q)   (q < inf)
    ||f||_{p,inf} = sup_t t**(1/p) f*(t)

with the conventions 1/inf = 0 and 1/0 = inf.  The degenerate spaces
L_{inf,q} with q < inf contain only the zero function; their "norm" of any
nonzero element is reported as +inf rather than raising, so that degeneracy
surfaces as a value and can be asserted in tests.

Dilation behaviour, Boyd indices and the Aoki-Rolewicz exponent live here as
well, both in exact form and as corpus-driven estimators that double as
oracles for the exact formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .stepfn import INF, StepFunction, weighted_power_integral

__all__ = [
    "LorentzParams",
    "SpaceDescriptor",
    "is_nontrivial",
    "lorentz_norm",
    "dilation_operator_norm",
    "estimate_dilation_norm",
    "estimate_boyd_indices",
    "aoki_rolewicz_kappa",
    "estimate_quasi_triangle_constant",
]


def _check_exponent(x, what: str) -> float:
    v = float(x)
    if math.isnan(v) or v <= 0.0:
        raise ValueError(f"{what} must be in (0, inf], got {x}")
    return v


@dataclass(frozen=True)
class LorentzParams:
    """Exponent pair identifying L_{p,q}; ``inf`` is allowed for both."""

    p: float
    q: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _check_exponent(self.p, "p"))
        object.__setattr__(self, "q", _check_exponent(self.q, "q"))

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


def is_nontrivial(params: LorentzParams) -> bool:
    """True iff L_{p,q} contains a nonzero function: p < inf, or p = q = inf."""
    return params.p < INF or params.q == INF


def lorentz_norm(f: StepFunction, params: LorentzParams) -> float:
    """Closed-form Lorentz quasi-norm of ``f`` (extended real, never NaN)."""
    fs = f.rearrange()
    if fs.is_zero:
        return 0.0
    p, q = params.p, params.q
    if q == INF:
        if p == INF:
            return fs.max_value()
        if fs.tail > 0.0:
            return INF
        best = 0.0
        for hi, v in zip(fs.breakpoints, fs.values):
            best = max(best, v * hi ** (1.0 / p))
        return best
    if p == INF:
        return INF  # degenerate space: no nonzero element has finite norm
    val = weighted_power_integral(fs, q / p, q, 0.0, INF)
    return val ** (1.0 / q) if val < INF else INF


def dilation_operator_norm(params: LorentzParams, a: float) -> float:
    """Operator norm of ``f -> f(a .)`` on a nontrivial L_{p,q}: exactly ``a**(-1/p)``.

    Exactness follows from the change of variables ``s = a t`` in the norm
    integral, which rescales every function's norm by the same factor.
    """
    if not is_nontrivial(params):
        raise ValueError(
            f"{params} is the trivial space {{0}}; dilation operator norm undefined"
        )
    a = float(a)
    if math.isnan(a) or a <= 0.0 or a == INF:
        raise ValueError(f"dilation factor must be in (0, inf), got {a}")
    if params.p == INF:
        return 1.0
    return a ** (-1.0 / params.p)


@dataclass(frozen=True)
class SpaceDescriptor:
    """A concrete r.i. space: Lorentz exponents plus derived metadata.

    ``boyd_lower <= boyd_upper`` are the Boyd indices (for L_{p,q} both equal
    ``p``) and ``quasi_triangle_bound`` is a valid, not necessarily optimal,
    quasi-triangle constant.
    """

    params: LorentzParams
    boyd_lower: float
    boyd_upper: float
    quasi_triangle_bound: float

    def __post_init__(self) -> None:
        if not 0.0 < self.boyd_lower <= self.boyd_upper:
            raise ValueError(
                f"Boyd indices must satisfy 0 < p_E <= q_E <= inf, got "
                f"({self.boyd_lower}, {self.boyd_upper})"
            )
        if self.quasi_triangle_bound < 1.0:
            raise ValueError("quasi-triangle bound must be >= 1")

    @classmethod
    def for_lorentz(cls, params: LorentzParams) -> "SpaceDescriptor":
        if not is_nontrivial(params):
            raise ValueError(
                f"{params} is the trivial space {{0}} (needs p < inf, or p = q = inf)"
            )
        p, q = params.p, params.q
        if 1.0 <= q <= p:
            c = 1.0  # the functional is an actual norm for 1 <= q <= p
        else:
            c = 2.0 ** (1.0 / p) * (2.0 ** (1.0 / q - 1.0) if q < 1.0 else 1.0)
        return cls(params, p, p, c)

    def __str__(self) -> str:
        return str(self.params)


def estimate_dilation_norm(
    space: SpaceDescriptor, a: float, corpus: Iterable[StepFunction]
) -> float:
    """Certified lower bound on ||D_a||: max of ||f(a.)|| / ||f|| over the corpus."""
    best = None
    for f in corpus:
        n = lorentz_norm(f, space.params)
        if not 0.0 < n < INF:
            continue
        r = lorentz_norm(f.dilate(a), space.params) / n
        best = r if best is None else max(best, r)
    if best is None:
        raise ValueError("corpus contains no function with finite nonzero norm")
    return best


def estimate_boyd_indices(
    space: SpaceDescriptor,
    s_values: Sequence[float],
    corpus: Iterable[StepFunction],
) -> tuple[float, float]:
    """Estimate the Boyd indices from dilation-norm growth.

    The lower index is ``lim_{s->inf} ln s / ln ||D_{1/s}||`` and the upper
    one is the same limit taken along ``s -> 0+``; both are read off at the
    extreme points of ``s_values``, a grid in ``(1, inf)``.  A vanishing
    log-denominator (dilation-invariant norm) yields ``inf``.
    """
    s_values = sorted(float(s) for s in s_values)
    if not s_values or s_values[0] <= 1.0:
        raise ValueError(f"s_values must lie in (1, inf), got {s_values}")
    corpus = list(corpus)
    s = s_values[-1]
    shrink = estimate_dilation_norm(space, 1.0 / s, corpus)  # >= 1
    grow = estimate_dilation_norm(space, s, corpus)  # <= 1
    lower = math.log(s) / math.log(shrink) if shrink != 1.0 else INF
    upper = math.log(1.0 / s) / math.log(grow) if grow != 1.0 else INF
    return lower, upper


def aoki_rolewicz_kappa(c: float) -> float:
    """Exponent ``1 / log2(2C)`` of an equivalent kappa-subadditive quasi-norm."""
    c = float(c)
    if math.isnan(c) or c < 1.0:
        raise ValueError(f"quasi-triangle constant must be >= 1, got {c}")
    return 1.0 / math.log2(2.0 * c)


def estimate_quasi_triangle_constant(
    params: LorentzParams,
    pairs: Iterable[tuple[StepFunction, StepFunction]],
) -> float:
    """Lower bound on the quasi-triangle constant from a corpus of pairs.

    Returns ``max(1, max ||f+g|| / (||f|| + ||g||))``; pairs with zero or
    infinite norms are skipped.
    """
    best = None
    for f, g in pairs:
        nf = lorentz_norm(f, params)
        ng = lorentz_norm(g, params)
        if not (0.0 < nf < INF and 0.0 < ng < INF):
            continue
        r = lorentz_norm(f + g, params) / (nf + ng)
        best = r if best is None else max(best, r)
    if best is None:
        raise ValueError("no pair in the corpus has finite nonzero norms")
    return max(1.0, best)

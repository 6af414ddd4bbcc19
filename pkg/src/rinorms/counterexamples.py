"""A function in L_1 ∩ L_inf that escapes L_{1,q} for q < 1.

The family ``f_k = 1 / (k * ln(k+1)**alpha)`` with ``alpha = (1 + 1/q) / 2``
sits in the gap ``1 < alpha < 1/q``: by the integral test ``sum f_k``
converges (alpha > 1) while the Lorentz sequence quasi-norm power

    sum (k**(1 - 1/q) f_k)**q = sum 1 / (k * ln(k+1)**(alpha q))

diverges (alpha q < 1).  Spreading the sequence over unit intervals gives a
non-increasing step function that is bounded and integrable but has infinite
L_{1,q} quasi-norm, which shows the lower-Boyd-index strictness in the
interpolation parameter selection cannot be relaxed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lorentz import LorentzParams, lorentz_norm
from .stepfn import StepFunction

__all__ = [
    "SequenceReport",
    "weight_exponent",
    "sequence_terms",
    "sequence_report",
    "step_function_report",
    "report_rows",
]


@dataclass(frozen=True)
class SequenceReport:
    """Partial sums of the borderline sequence up to index ``n``.

    ``l1_partial`` is ``sum_{k<=n} f_k`` and ``l1q_partial`` is the partial
    sum of the q-th power of the Lorentz sequence quasi-norm,
    ``sum_{k<=n} (k**(1-1/q) f_k)**q``.
    """

    n: int
    l1_partial: float
    l1q_partial: float
    q: float

    def __post_init__(self) -> None:
        if self.l1_partial < 0.0 or self.l1q_partial < 0.0:
            raise ValueError("partial sums must be nonnegative")

    @property
    def alpha(self) -> float:
        return weight_exponent(self.q)


def _check_q(q: float) -> float:
    q = float(q)
    if math.isnan(q) or not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    return q


def weight_exponent(q: float) -> float:
    """Logarithm exponent ``alpha = (1 + 1/q) / 2``, strictly between 1 and 1/q."""
    q = _check_q(q)
    return 0.5 * (1.0 + 1.0 / q)


def sequence_terms(q: float, n: int) -> np.ndarray:
    """First ``n`` terms ``f_k = 1 / (k * ln(k+1)**alpha)``; positive and decreasing."""
    q = _check_q(q)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    alpha = weight_exponent(q)
    k = np.arange(1, n + 1, dtype=float)
    return 1.0 / (k * np.log(k + 1.0) ** alpha)


def sequence_report(q: float, n: int) -> SequenceReport:
    """Partial sums demonstrating convergence in l_1 against divergence in l_{1,q}."""
    terms = sequence_terms(q, n)
    k = np.arange(1, n + 1, dtype=float)
    l1 = float(terms.sum())
    l1q = float((k ** (q - 1.0) * terms**q).sum())
    return SequenceReport(n=n, l1_partial=l1, l1q_partial=l1q, q=q)


def step_function(q: float, n: int) -> StepFunction:
    """Step function ``f(t) = f_k`` on ``(k-1, k]``, truncated at ``n``."""
    terms = sequence_terms(q, n)
    bps = np.arange(1, n + 1, dtype=float)
    return StepFunction(tuple(bps), tuple(terms), 0.0)


def step_function_report(q: float, n: int) -> tuple[StepFunction, dict[str, float]]:
    """Truncated function plus its L_{1,1}, L_{inf,inf} and L_{1,q} norms.

    As ``n`` grows the first two stabilise while the L_{1,q} quasi-norm
    increases without bound.
    """
    f = step_function(q, n)
    norms = {
        "l1": lorentz_norm(f, LorentzParams(1.0, 1.0)),
        "linf": lorentz_norm(f, LorentzParams(math.inf, math.inf)),
        "l1q": lorentz_norm(f, LorentzParams(1.0, q)),
    }
    return f, norms


def report_rows(q: float, n_values) -> list[tuple[int, float, float]]:
    """CSV-ready rows ``(n, l1_partial, l1q_partial)`` for plotting."""
    rows = []
    for n in n_values:
        rep = sequence_report(q, int(n))
        rows.append((rep.n, rep.l1_partial, rep.l1q_partial))
    return rows

"""Exact calculus of nonnegative piecewise-constant functions on (0, inf).

A :class:`StepFunction` is constant on finitely many half-open pieces
``(t_{i-1}, t_i]`` (with the implicit ``t_0 = 0``) and equal to a constant
``tail`` value on ``(t_n, inf)``.  Every operation in this module is exact in
the sense that it produces the mathematically correct piecewise-constant
result, up to IEEE rounding of the stored floats; no quadrature or sampling
is involved anywhere.

The representation is canonical (adjacent equal values merged, trailing
pieces equal to the tail absorbed), so two step functions are equal as
mathematical functions iff the dataclasses compare equal.  All instances are
immutable and safe to share between threads.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

INF = math.inf

__all__ = [
    "INF",
    "StepFunction",
    "power_integral",
    "weighted_power_integral",
]


def _as_float(x, what: str) -> float:
    v = float(x)
    if math.isnan(v):
        raise ValueError(f"{what} must not be NaN")
    return v


def power_integral(alpha: float, lo: float, hi: float) -> float:
    """Exact value of ``integral_lo^hi t**(alpha-1) dt`` as an extended real.

    ``0 <= lo <= hi <= inf``; divergent cases return ``inf`` rather than
    raising.  The finite-interval branch uses ``expm1`` so that narrow
    intervals do not lose precision to cancellation.
    """
    if math.isnan(alpha) or math.isnan(lo) or math.isnan(hi):
        raise ValueError("power_integral arguments must not be NaN")
    if lo < 0.0 or lo > hi:
        raise ValueError(f"need 0 <= lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return 0.0
    if lo == 0.0:
        if hi == INF:
            return INF
        return hi**alpha / alpha if alpha > 0.0 else INF
    if hi == INF:
        return -(lo**alpha) / alpha if alpha < 0.0 else INF
    if alpha == 0.0:
        return math.log(hi / lo)
    return lo**alpha * math.expm1(alpha * math.log(hi / lo)) / alpha


def _power_integral_array(alpha: float, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Vectorised :func:`power_integral` for finite positive endpoints.

    Empty intervals (``lo == hi``) contribute zero.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.log(hi / lo)
        if alpha == 0.0:
            out = ratio
        else:
            out = lo**alpha * np.expm1(alpha * ratio) / alpha
    return np.where(hi > lo, out, 0.0)


@dataclass(frozen=True)
class StepFunction:
    """Nonnegative piecewise-constant function on ``(0, inf)``.

    ``values[i]`` is the value on ``(breakpoints[i-1], breakpoints[i]]`` and
    ``tail`` is the value on ``(breakpoints[-1], inf)``.  Magnitudes only:
    all values are finite and ``>= 0`` (the quasi-norms computed elsewhere
    depend on a function only through the rearrangement of its absolute
    value, so signs and phases carry no information here).
    """

    breakpoints: tuple[float, ...] = ()
    values: tuple[float, ...] = ()
    tail: float = 0.0

    def __post_init__(self) -> None:
        bps = tuple(_as_float(b, "breakpoint") for b in self.breakpoints)
        vals = tuple(_as_float(v, "value") for v in self.values)
        tail = _as_float(self.tail, "tail")
        if len(bps) != len(vals):
            raise ValueError(
                f"{len(bps)} breakpoints need {len(bps)} values, got {len(vals)}"
            )
        if tail < 0.0 or not math.isfinite(tail):
            raise ValueError(f"tail must be finite and >= 0, got {tail}")
        prev = 0.0
        for b in bps:
            if not math.isfinite(b) or b <= prev:
                raise ValueError(
                    f"breakpoints must be finite, positive and strictly increasing, got {bps}"
                )
            prev = b
        for v in vals:
            if v < 0.0 or not math.isfinite(v):
                raise ValueError(f"values must be finite and >= 0, got {v}")
        # Canonical form: merge adjacent equal values, absorb a trailing run
        # equal to the tail.  Uniqueness of the representation is what makes
        # exact equality assertions in the tests meaningful.
        merged: list[tuple[float, float]] = []
        for b, v in zip(bps, vals):
            if merged and merged[-1][1] == v:
                merged[-1] = (b, v)
            else:
                merged.append((b, v))
        while merged and merged[-1][1] == tail:
            merged.pop()
        object.__setattr__(self, "breakpoints", tuple(b for b, _ in merged))
        object.__setattr__(self, "values", tuple(v for _, v in merged))
        object.__setattr__(self, "tail", tail)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls((), (), 0.0)

    @classmethod
    def constant(cls, c: float) -> "StepFunction":
        return cls((), (), c)

    @classmethod
    def indicator(cls, a: float, b: float) -> "StepFunction":
        """Characteristic function of ``(a, b]`` with ``0 <= a < b < inf``."""
        a = _as_float(a, "a")
        b = _as_float(b, "b")
        if not 0.0 <= a < b or not math.isfinite(b):
            raise ValueError(f"need 0 <= a < b < inf, got ({a}, {b}]")
        if a == 0.0:
            return cls((b,), (1.0,), 0.0)
        return cls((a, b), (0.0, 1.0), 0.0)

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.breakpoints and self.tail == 0.0

    def __call__(self, t: float) -> float:
        """Evaluate at ``t > 0`` (pieces are half-open ``(lo, hi]``)."""
        t = _as_float(t, "t")
        if t <= 0.0 or t == INF:
            raise ValueError(f"evaluation point must be in (0, inf), got {t}")
        i = bisect_left(self.breakpoints, t)
        return self.values[i] if i < len(self.values) else self.tail

    def right_limit(self, t: float) -> float:
        """Value just to the right of ``t >= 0``."""
        t = _as_float(t, "t")
        if t < 0.0 or t == INF:
            raise ValueError(f"need t in [0, inf), got {t}")
        i = bisect_right(self.breakpoints, t)
        return self.values[i] if i < len(self.values) else self.tail

    def pieces(self):
        """Yield ``(lo, hi, value)`` for the finite pieces, then the tail piece."""
        prev = 0.0
        for b, v in zip(self.breakpoints, self.values):
            yield prev, b, v
            prev = b
        yield prev, INF, self.tail

    def max_value(self) -> float:
        return max(self.values, default=self.tail) if self.values else self.tail

    def support_upper(self) -> float:
        """Supremum of the support (``inf`` when the tail is positive)."""
        if self.tail > 0.0:
            return INF
        last = 0.0
        for b, v in zip(self.breakpoints, self.values):
            if v > 0.0:
                last = b
        return last

    def is_nonincreasing(self) -> bool:
        seq = self.values + (self.tail,)
        return all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1))

    # -- level-set machinery -------------------------------------------

    def _sorted_above_tail(self) -> tuple[list[float], list[float]]:
        """Distinct values above the tail (descending) with cumulative lengths.

        ``cumlens[k]`` is the measure of ``{f > lam}`` for ``lam`` directly
        below ``values_desc[k]``.  Both :meth:`distribution` and
        :meth:`rearrange` are driven by this single routine, with the lengths
        grouped in piece order and accumulated in descending value order, so
        the two sides of any equimeasurability comparison perform the same
        float additions and agree bit for bit.
        """
        sums: dict[float, float] = {}
        prev = 0.0
        for b, v in zip(self.breakpoints, self.values):
            if v > self.tail:
                sums[v] = sums.get(v, 0.0) + (b - prev)
            prev = b
        values_desc = sorted(sums, reverse=True)
        cumlens: list[float] = []
        acc = 0.0
        for v in values_desc:
            acc += sums[v]
            cumlens.append(acc)
        return values_desc, cumlens

    def _is_canonical_nonincreasing(self) -> bool:
        vals = self.values
        if not vals:
            return True
        if vals[-1] <= self.tail:
            return False
        return all(vals[i] > vals[i + 1] for i in range(len(vals) - 1))

    def distribution(self, lam: float) -> float:
        """Lebesgue measure of ``{t > 0 : f(t) > lam}`` (``inf`` iff ``tail > lam``)."""
        lam = _as_float(lam, "lam")
        if lam < 0.0:
            raise ValueError(f"level must be >= 0, got {lam}")
        if self.tail > lam:
            return INF
        if self._is_canonical_nonincreasing():
            # Strictly decreasing values: the measure is a stored breakpoint,
            # returned without re-summation so it matches the rearranged
            # function's breakpoints exactly.
            k = 0
            for v in self.values:
                if v > lam:
                    k += 1
                else:
                    break
            return self.breakpoints[k - 1] if k else 0.0
        values_desc, cumlens = self._sorted_above_tail()
        k = 0
        for v in values_desc:
            if v > lam:
                k += 1
            else:
                break
        return cumlens[k - 1] if k else 0.0

    def rearrange(self) -> "StepFunction":
        """Non-increasing rearrangement ``f*``.

        ``f*(t) = inf{lam >= 0 : |{f > lam}| <= t}``; pieces whose value does
        not exceed the tail are absorbed by it, because the corresponding
        level sets already have infinite measure.
        """
        if self._is_canonical_nonincreasing():
            return self
        values_desc, cumlens = self._sorted_above_tail()
        return StepFunction(tuple(cumlens), tuple(values_desc), self.tail)

    # -- algebra --------------------------------------------------------

    def dilate(self, a: float) -> "StepFunction":
        """``(D_a f)(t) = f(a t)``: breakpoints divided by ``a > 0``."""
        a = _as_float(a, "a")
        if a <= 0.0 or a == INF:
            raise ValueError(f"dilation factor must be in (0, inf), got {a}")
        return StepFunction(tuple(b / a for b in self.breakpoints), self.values, self.tail)

    def scale(self, s: float) -> "StepFunction":
        s = _as_float(s, "s")
        if s < 0.0 or s == INF:
            raise ValueError(f"scale factor must be finite and >= 0, got {s}")
        return StepFunction(
            self.breakpoints, tuple(v * s for v in self.values), self.tail * s
        )

    def __mul__(self, s: float) -> "StepFunction":
        return self.scale(s)

    __rmul__ = __mul__

    def _merge(self, other: "StepFunction", op) -> "StepFunction":
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        vals = []
        i = j = 0
        for b in bps:
            while i < len(self.breakpoints) and self.breakpoints[i] < b:
                i += 1
            while j < len(other.breakpoints) and other.breakpoints[j] < b:
                j += 1
            a = self.values[i] if i < len(self.values) else self.tail
            c = other.values[j] if j < len(other.values) else other.tail
            vals.append(op(a, c))
        return StepFunction(tuple(bps), tuple(vals), op(self.tail, other.tail))

    def __add__(self, other: "StepFunction") -> "StepFunction":
        return self._merge(other, lambda a, b: a + b)

    def pointwise_max(self, other: "StepFunction") -> "StepFunction":
        return self._merge(other, max)

    def minimum(self, level: float) -> "StepFunction":
        """Pointwise ``min(f, level)`` with ``level >= 0``."""
        level = _as_float(level, "level")
        if level < 0.0:
            raise ValueError(f"level must be >= 0, got {level}")
        return StepFunction(
            self.breakpoints,
            tuple(min(v, level) for v in self.values),
            min(self.tail, level),
        )

    def excess(self, level: float) -> "StepFunction":
        """Pointwise ``(f - level)_+`` with ``level >= 0``."""
        level = _as_float(level, "level")
        if level < 0.0:
            raise ValueError(f"level must be >= 0, got {level}")
        return StepFunction(
            self.breakpoints,
            tuple(max(v - level, 0.0) for v in self.values),
            max(self.tail - level, 0.0),
        )

    def restrict(self, b: float) -> "StepFunction":
        """``f * chi_(0, b]``: zero beyond ``b > 0``."""
        b = _as_float(b, "b")
        if b <= 0.0 or b == INF:
            raise ValueError(f"restriction bound must be in (0, inf), got {b}")
        bps: list[float] = []
        vals: list[float] = []
        for lo, hi, v in self.pieces():
            if lo >= b:
                break
            bps.append(min(hi, b))
            vals.append(v)
        return StepFunction(tuple(bps), tuple(vals), 0.0)

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "breakpoints": list(self.breakpoints),
            "values": list(self.values),
            "tail": self.tail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "StepFunction":
        if not isinstance(d, dict):
            raise ValueError("step function JSON must be an object")
        extra = set(d) - {"breakpoints", "values", "tail"}
        if extra:
            raise ValueError(f"unknown step function fields: {sorted(extra)}")
        bps = d.get("breakpoints", [])
        vals = d.get("values", [])
        if not isinstance(bps, list) or not isinstance(vals, list):
            raise ValueError("breakpoints and values must be arrays")
        return cls(tuple(bps), tuple(vals), d.get("tail", 0.0))

    @classmethod
    def from_json(cls, s: str) -> "StepFunction":
        try:
            d = json.loads(s)
        except json.JSONDecodeError as e:
            raise ValueError(f"malformed step function JSON: {e}") from e
        return cls.from_dict(d)


def weighted_power_integral(
    f: StepFunction, gamma: float, w: float, a: float = 0.0, b: float = INF
) -> float:
    """Exact ``integral_a^b t**(gamma-1) f(t)**w dt`` as an extended real.

    Each piece contributes ``c**w * power_integral(gamma, lo, hi)``; head and
    tail divergences are decided analytically, and zero-valued pieces never
    contribute (the integrand vanishes identically there), so ``0 * inf``
    cannot arise.
    """
    gamma = _as_float(gamma, "gamma")
    w = _as_float(w, "w")
    if w <= 0.0 or w == INF:
        raise ValueError(f"power w must be in (0, inf), got {w}")
    a = _as_float(a, "a")
    b = _as_float(b, "b")
    if not 0.0 <= a < b:
        raise ValueError(f"need 0 <= a < b <= inf, got ({a}, {b})")
    total = 0.0
    for lo, hi, v in f.pieces():
        if v == 0.0:
            continue
        lo2 = max(lo, a)
        hi2 = min(hi, b)
        if lo2 >= hi2:
            continue
        part = power_integral(gamma, lo2, hi2)
        if part == INF:
            return INF
        total += v**w * part
    return total

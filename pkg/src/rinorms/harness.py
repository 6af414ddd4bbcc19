"""Seeded corpus generation and verification drivers for the norm equivalences.

Every ``verify_*`` function is deterministic given (seed, configuration),
evaluates each corpus member independently (pure functions throughout, so
the scans could run in parallel; reduction is a stable min/max over the
corpus order) and returns a :class:`RatioReport` with the observed ratio
range plus a pass verdict whose semantics are fixed per check:

* pointwise checks pass iff no grid point violates the inequality beyond a
  relative slack;
* norm-equivalence checks compare certified upper endpoints: a config passes
  when every enclosure is finite, no certified upper bound refutes the lower
  inequality, and the recorded ratio ceiling stays under the bound (the
  lower endpoints are recorded alongside as regression data);
* divergence checks pass iff the predicted infinite norms are detected.

Violations carry the witness function as JSON for reproduction.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .hardy import (
    DEFAULT_GRID,
    GridSpec,
    envelope_norm,
    hardy_lower,
    hardy_upper,
    predicted_bounded,
)
from .interp import (
    FunctorParams,
    LorentzCouple,
    functor_norm,
    holmstedt_k,
    intersection_norm,
    k_exact_l1_linf,
    k_upper_oracle,
)
from .lorentz import LorentzParams, SpaceDescriptor, lorentz_norm
from .stepfn import INF, StepFunction

__all__ = [
    "Corpus",
    "RatioReport",
    "generate_corpus",
    "generate_pairs",
    "verify_hardy_pointwise",
    "verify_hardy_equivalence",
    "verify_interpolation_identity",
    "verify_k_properties",
    "default_check_reports",
    "reports_to_csv",
    "reports_to_json",
    "CHECK_IDS",
]

POINTWISE_SLACK = 1e-12
EQUIV_FLOOR_SLACK = 1e-6
DEFAULT_RATIO_BOUND = 64.0


@dataclass(frozen=True)
class Corpus:
    """Reproducible list of nonzero step functions."""

    seed: int
    functions: tuple[StepFunction, ...]
    params: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.functions)

    def __len__(self) -> int:
        return len(self.functions)


def generate_corpus(
    seed: int,
    size: int,
    *,
    max_pieces: int = 12,
    bp_range: tuple[float, float] = (2.0**-10, 2.0**10),
    value_range: tuple[float, float] = (2.0**-8, 2.0**8),
    positive_tail: bool = False,
    dyadic: bool = False,
) -> Corpus:
    """Seeded corpus: 1-``max_pieces`` pieces, log-uniform breakpoints/values.

    ``positive_tail`` draws a tail value below the smallest piece value
    (otherwise tails are zero).  ``dyadic`` snaps breakpoints and values to
    dyadic rationals, for which float sums and differences are exact; the
    bit-exact invariance tests use that mode.
    """
    if size <= 0:
        raise ValueError(f"corpus size must be positive, got {size}")
    if max_pieces < 1:
        raise ValueError("max_pieces must be >= 1")
    rng = np.random.default_rng(seed)
    funcs: list[StepFunction] = []
    lb0, lb1 = math.log(bp_range[0]), math.log(bp_range[1])
    lv0, lv1 = math.log(value_range[0]), math.log(value_range[1])
    while len(funcs) < size:
        n = int(rng.integers(1, max_pieces + 1))
        bps = np.exp(rng.uniform(lb0, lb1, size=n))
        vals = np.exp(rng.uniform(lv0, lv1, size=n))
        if dyadic:
            bps = np.maximum(np.round(bps * 1024.0), 1.0) / 1024.0
            vals = np.maximum(np.round(vals * 256.0), 1.0) / 256.0
        bps = np.unique(bps)
        vals = vals[: bps.size]
        tail = 0.0
        if positive_tail and rng.random() < 0.5:
            tail = float(vals.min()) * float(rng.uniform(0.1, 0.9))
            if dyadic:
                tail = max(round(tail * 256.0), 1.0) / 256.0
        f = StepFunction(tuple(bps), tuple(vals), tail)
        if not f.is_zero:
            funcs.append(f)
    return Corpus(
        seed=seed,
        functions=tuple(funcs),
        params={
            "size": size,
            "max_pieces": max_pieces,
            "bp_range": list(bp_range),
            "value_range": list(value_range),
            "positive_tail": positive_tail,
            "dyadic": dyadic,
        },
    )


def generate_pairs(seed: int, n_pairs: int, **kwargs) -> list[tuple[StepFunction, StepFunction]]:
    corpus = generate_corpus(seed, 2 * n_pairs, **kwargs)
    fs = corpus.functions
    return [(fs[2 * i], fs[2 * i + 1]) for i in range(n_pairs)]


@dataclass(frozen=True)
class RatioReport:
    """Outcome of one verification run; regression baseline material."""

    check: str
    config: str
    size: int
    min_ratio: float
    max_ratio: float
    max_width: float
    violations: int
    passed: bool
    witness: str = ""
    extras: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.min_ratio > self.max_ratio:
            raise ValueError("min_ratio must not exceed max_ratio")

    def row(self) -> dict:
        return {
            "check": self.check,
            "config": self.config,
            "size": self.size,
            "min_ratio": repr(self.min_ratio),
            "max_ratio": repr(self.max_ratio),
            "max_width": repr(self.max_width),
            "violations": self.violations,
            "pass": self.passed,
        }


def _finalize_ratio(values: list[float]) -> tuple[float, float]:
    return (min(values), max(values)) if values else (INF, INF)


def verify_hardy_pointwise(
    corpus: Iterable[StepFunction],
    *,
    u: float | None = None,
    v: float | None = None,
    w: float,
    grid_spec: GridSpec = DEFAULT_GRID,
    slack: float = POINTWISE_SLACK,
) -> RatioReport:
    """Pointwise lower bounds of the averaging operators on the corpus grid.

    Upper kind (``u`` given): ``H^(u,w) f >= H^(u,inf) f >= f*`` at every
    grid point.  Lower kind (``v`` given): ``H_(v,w) f(t) >= f*(2t)``.
    Violations beyond the relative slack fail the check and record a witness.
    """
    if (u is None) == (v is None):
        raise ValueError("exactly one of u (upper kind) or v (lower kind) is required")
    corpus = list(corpus)
    if not corpus:
        raise ValueError("corpus must be nonempty")
    worst = INF
    best = -INF
    violations = 0
    witness = ""
    for f in corpus:
        fs = f.rearrange()
        if u is not None:
            env_w = hardy_upper(f, u, w, grid_spec)
            grid = env_w.grid
            lhs_w = env_w.values
            lhs_inf = hardy_upper(f, u, INF, grid_spec).values
            rhs = np.array([fs(t) for t in grid])
            checks = [(lhs_w, lhs_inf), (lhs_inf, rhs)]
        else:
            env = hardy_lower(f, v, w, grid_spec)
            grid = env.grid
            rhs = np.array([fs(2.0 * t) for t in grid])
            checks = [(env.values, rhs)]
        for lhs, low in checks:
            mask = low > 0.0
            if mask.any():
                ratios = lhs[mask] / low[mask]
                worst = min(worst, float(ratios.min()))
                best = max(best, float(ratios.max(initial=-INF)))
            bad = lhs < low * (1.0 - slack)
            if bad.any():
                violations += int(bad.sum())
                if not witness:
                    t_bad = float(grid[np.argmax(bad)])
                    witness = json.dumps({"function": f.to_dict(), "t": t_bad})
    if worst == INF:
        worst, best = 1.0, 1.0
    kind = f"u={u}" if u is not None else f"v={v}"
    return RatioReport(
        check="lemma10",
        config=f"{kind},w={w}",
        size=len(corpus),
        min_ratio=worst,
        max_ratio=best,
        max_width=0.0,
        violations=violations,
        passed=violations == 0,
        witness=witness,
    )


def verify_hardy_equivalence(
    corpus: Iterable[StepFunction],
    space: SpaceDescriptor,
    *,
    u: float | None = None,
    v: float | None = None,
    w: float,
    ratio_bound: float = DEFAULT_RATIO_BOUND,
    grid_spec: GridSpec = DEFAULT_GRID,
) -> RatioReport:
    """Norm equivalence ``||Hf||_E ~ ||f||_E`` (or its failure at the boundary).

    For configurations predicted bounded, the certified upper endpoints of
    the enclosures must stay within ``ratio_bound`` times ``||f||_E`` and
    must not refute the pointwise lower inequality (floor ``1 - 1e-6``).
    At the boundary ``u = p_E`` with ``w < inf`` the check inverts: every
    compactly supported member must produce an infinite upper endpoint.
    """
    if (u is None) == (v is None):
        raise ValueError("exactly one of u (upper kind) or v (lower kind) is required")
    corpus = list(corpus)
    if not corpus:
        raise ValueError("corpus must be nonempty")
    kind = "upper" if u is not None else "lower"
    order = u if u is not None else v
    expected = predicted_bounded(space, kind, order, w)
    boundary = kind == "upper" and w < INF and order == space.boyd_lower
    ratios_hi: list[float] = []
    ratios_lo: list[float] = []
    widths: list[float] = []
    violations = 0
    witness = ""
    diverged = 0
    used = 0
    for f in corpus:
        n = lorentz_norm(f, space.params)
        if not 0.0 < n < INF:
            continue
        used += 1
        env = (
            hardy_upper(f, u, w, grid_spec)
            if u is not None
            else hardy_lower(f, v, w, grid_spec)
        )
        enc = envelope_norm(env, space.params)
        if enc.hi == INF:
            diverged += 1
            if not boundary and expected:
                violations += 1
                if not witness:
                    witness = json.dumps({"function": f.to_dict(), "norm": n})
            continue
        ratios_hi.append(enc.hi / n)
        ratios_lo.append(enc.lo / n)
        widths.append(enc.relative_width)
    if used == 0:
        raise ValueError("corpus has no member with finite nonzero norm in E")
    if boundary:
        passed = diverged == used
        min_r, max_r = (min(ratios_hi), max(ratios_hi)) if ratios_hi else (INF, INF)
    else:
        min_r, max_r = _finalize_ratio(ratios_hi)
        floor_ok = min_r >= 1.0 - EQUIV_FLOOR_SLACK
        passed = (
            expected
            and violations == 0
            and diverged == 0
            and floor_ok
            and max_r <= ratio_bound
        )
        if not floor_ok and not witness:
            witness = json.dumps({"floor": min_r})
    return RatioReport(
        check="thm11",
        config=f"E={space},{kind} {order},w={w}",
        size=used,
        min_ratio=min_r,
        max_ratio=max_r,
        max_width=max(widths) if widths else 0.0,
        violations=violations,
        passed=passed,
        witness=witness,
        extras={
            "diverged": diverged,
            "min_ratio_lo": min(ratios_lo) if ratios_lo else INF,
            "expected_bounded": expected,
        },
    )


_CALIBRATION_TARGET = math.sqrt(2.0)
_CALIBRATION_WIDTH = 1e-3


def verify_interpolation_identity(
    corpus: Iterable[StepFunction],
    space: SpaceDescriptor,
    couple: LorentzCouple,
    theta: float,
    *,
    ratio_bound: float = DEFAULT_RATIO_BOUND,
    grid_spec: GridSpec = DEFAULT_GRID,
    calibrate: bool = False,
) -> RatioReport:
    """Functor norm against ``||.||_E``: bounded equivalence spread on the corpus.

    Ratio spread is certified outward: ``max(hi_i / n_i) / min(lo_i / n_i)``
    must not exceed ``ratio_bound`` and every enclosure must be finite.
    With ``calibrate=True`` the unit indicator is evaluated at 256 points
    per decade and its enclosure must trap sqrt(2) within width 1e-3 (the
    exact value of ``|| f** ||_{L_2}`` for that function).
    """
    corpus = list(corpus)
    if not corpus:
        raise ValueError("corpus must be nonempty")
    fp = FunctorParams(theta=theta, r=couple.params0.p, space=space)
    ratios_hi: list[float] = []
    ratios_lo: list[float] = []
    widths: list[float] = []
    violations = 0
    witness = ""
    used = 0
    for f in corpus:
        n = lorentz_norm(f, space.params)
        if not 0.0 < n < INF:
            continue
        used += 1
        enc = functor_norm(f, fp, couple, grid_spec)
        if enc.hi == INF or enc.lo <= 0.0:
            violations += 1
            if not witness:
                witness = json.dumps({"function": f.to_dict(), "enclosure": str(enc)})
            continue
        ratios_hi.append(enc.hi / n)
        ratios_lo.append(enc.lo / n)
        widths.append(enc.relative_width)
    if used == 0:
        raise ValueError("corpus has no member with finite nonzero norm in E")
    min_r, max_r = (min(ratios_lo), max(ratios_hi)) if ratios_hi else (INF, INF)
    spread = max_r / min_r if ratios_hi and min_r > 0.0 else INF
    passed = violations == 0 and spread <= ratio_bound
    extras = {"spread": spread}
    if calibrate:
        chi = StepFunction.indicator(0.0, 1.0)
        enc = functor_norm(
            chi, fp, couple, GridSpec(points_per_decade=256, span=grid_spec.span)
        )
        extras["calibration"] = str(enc)
        # endpoint sums are plain float accumulations; 1e-12 absorbs their roundoff
        if not (enc.contains(_CALIBRATION_TARGET, slack=1e-12) and enc.width <= _CALIBRATION_WIDTH):
            passed = False
            witness = witness or json.dumps({"calibration": str(enc)})
    return RatioReport(
        check="thm15",
        config=f"E={space},couple={couple},theta={theta}",
        size=used,
        min_ratio=min_r,
        max_ratio=max_r,
        max_width=max(widths) if widths else 0.0,
        violations=violations,
        passed=passed,
        witness=witness,
        extras=extras,
    )


_L1_LINF = LorentzCouple(LorentzParams(1.0, 1.0), LorentzParams(INF, INF))


def verify_k_properties(
    corpus: Sequence[StepFunction],
    *,
    n_pairs: int = 200,
    oracle_tol: float = 1e-9,
    slack: float = POINTWISE_SLACK,
) -> RatioReport:
    """K-functional battery on the exact (L_1, L_inf) couple.

    Checks, per seeded (f, t) pair: oracle agreement within ``oracle_tol``;
    monotonicity of ``t -> K`` and ``t -> K/t``; midpoint concavity; the
    sandwich ``min(1,t) K(1,f) <= K(t,f) <= min(1,t) ||f||_{X0 ∩ X1}``;
    exact subadditivity ``K(t, f+g) <= K(t,f) + K(t,g)``; and the
    Holmstedt-to-exact ratio staying inside [1, 2].
    """
    corpus = list(corpus)
    if not corpus:
        raise ValueError("corpus must be nonempty")
    t_grid = np.geomspace(2.0**-8, 2.0**8, 33)
    violations = 0
    witness = ""
    ratio_min, ratio_max = INF, -INF
    checked = 0

    def fail(f: StepFunction, what: str, **info) -> None:
        nonlocal violations, witness
        violations += 1
        if not witness:
            witness = json.dumps({"check": what, "function": f.to_dict(), **info})

    for i in range(n_pairs):
        f = corpus[i % len(corpus)]
        t = float(t_grid[i % t_grid.size])
        checked += 1
        k_exact = k_exact_l1_linf(f, t)
        k_oracle = k_upper_oracle(f, t, _L1_LINF)
        if abs(k_exact - k_oracle) > oracle_tol * max(1.0, k_exact):
            fail(f, "oracle", t=t, exact=k_exact, oracle=k_oracle)
        ks = np.array([k_exact_l1_linf(f, s) for s in t_grid])
        if np.any(np.diff(ks) < -slack * ks[:-1]):
            fail(f, "monotone")
        over_t = ks / t_grid
        if np.any(np.diff(over_t) > slack * over_t[:-1]):
            fail(f, "k_over_t")
        mid = np.array(
            [
                k_exact_l1_linf(f, 0.5 * (t_grid[j] + t_grid[j + 1]))
                for j in range(t_grid.size - 1)
            ]
        )
        if np.any(mid < 0.5 * (ks[:-1] + ks[1:]) * (1.0 - slack)):
            fail(f, "concavity")
        k1 = k_exact_l1_linf(f, 1.0)
        cap = intersection_norm(f, _L1_LINF)
        mins = np.minimum(1.0, t_grid)
        if np.any(ks < mins * k1 * (1.0 - slack)):
            fail(f, "sandwich_lower")
        if np.any(ks > mins * cap * (1.0 + slack)):
            fail(f, "sandwich_upper")
        g = corpus[(i + 1) % len(corpus)]
        k_sum = k_exact_l1_linf(f + g, t)
        if k_sum > k_exact + k_exact_l1_linf(g, t) + slack * max(1.0, k_sum):
            fail(f, "subadditivity", t=t)
        if k_exact > 0.0:
            r = holmstedt_k(f, t, _L1_LINF, 1.0) / k_exact
            ratio_min = min(ratio_min, r)
            ratio_max = max(ratio_max, r)
            if not (1.0 - slack) <= r <= 2.0 * (1.0 + slack):
                fail(f, "holmstedt_ratio", t=t, ratio=r)
    if ratio_min == INF:
        ratio_min = ratio_max = 1.0
    return RatioReport(
        check="kprops",
        config=f"couple={_L1_LINF},pairs={n_pairs}",
        size=checked,
        min_ratio=ratio_min,
        max_ratio=ratio_max,
        max_width=0.0,
        violations=violations,
        passed=violations == 0,
        witness=witness,
    )


# Default configurations exercised by `verify <check>`: the Hardy pointwise
# set, the equivalence/divergence set on L_{2,2}, the four interpolation
# identities plus the sqrt(2) calibration instance, and the K battery.
_L22 = lambda: SpaceDescriptor.for_lorentz(LorentzParams(2.0, 2.0))
_POINTWISE_CONFIGS = (
    {"u": 1.0, "w": 1.0},
    {"u": 1.0, "w": INF},
    {"u": 2.0, "w": 1.0},
    {"v": 2.0, "w": 1.0},
    {"v": 3.0, "w": INF},
)
_EQUIVALENCE_CONFIGS = (
    {"u": 1.0, "w": 1.0},
    {"v": 3.0, "w": 2.0},
    {"u": 2.0, "w": 1.0},  # boundary u = p_E: divergence must be detected
)


def _interpolation_configs():
    l22 = _L22()
    l31 = SpaceDescriptor.for_lorentz(LorentzParams(3.0, 1.0))
    linf = SpaceDescriptor.for_lorentz(LorentzParams(INF, INF))
    c11_44 = LorentzCouple(LorentzParams(1.0, 1.0), LorentzParams(4.0, 4.0))
    c12_inf = LorentzCouple(LorentzParams(1.0, 2.0), LorentzParams(INF, INF))
    c11_inf = LorentzCouple(LorentzParams(1.0, 1.0), LorentzParams(INF, INF))
    return (
        (l22, c11_44, 4.0 / 3.0, False),
        (l22, c12_inf, 1.0, False),
        (l31, c11_inf, 1.0, False),
        (linf, c11_inf, 1.0, False),
        (l22, c11_inf, 1.0, True),  # calibration instance
    )


CHECK_IDS = ("lemma10", "thm11", "thm15", "kprops")


def default_check_reports(
    check: str,
    seed: int,
    size: int,
    grid_spec: GridSpec = DEFAULT_GRID,
) -> list[RatioReport]:
    """Run a named check (or 'all') over its default configurations."""
    if check != "all" and check not in CHECK_IDS:
        raise ValueError(f"unknown check {check!r}; expected one of {CHECK_IDS + ('all',)}")
    corpus = generate_corpus(seed, size)
    reports: list[RatioReport] = []
    if check in ("lemma10", "all"):
        for cfg in _POINTWISE_CONFIGS:
            reports.append(verify_hardy_pointwise(corpus, grid_spec=grid_spec, **cfg))
    if check in ("thm11", "all"):
        space = _L22()
        for cfg in _EQUIVALENCE_CONFIGS:
            reports.append(
                verify_hardy_equivalence(corpus, space, grid_spec=grid_spec, **cfg)
            )
    if check in ("thm15", "all"):
        for space, couple, theta, calibrate in _interpolation_configs():
            reports.append(
                verify_interpolation_identity(
                    corpus, space, couple, theta, grid_spec=grid_spec, calibrate=calibrate
                )
            )
    if check in ("kprops", "all"):
        reports.append(verify_k_properties(corpus))
    return reports


_CSV_FIELDS = ("check", "config", "size", "min_ratio", "max_ratio", "max_width", "violations", "pass")


def reports_to_csv(reports: Sequence[RatioReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.row())
    return buf.getvalue()


def reports_to_json(reports: Sequence[RatioReport]) -> str:
    payload = []
    for r in reports:
        d = r.row()
        d["witness"] = r.witness
        d["extras"] = {k: repr(v) for k, v in sorted(r.extras.items())}
        payload.append(d)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"

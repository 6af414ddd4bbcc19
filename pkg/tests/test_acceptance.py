"""Acceptance suite: one test per criterion, each printing a pass/fail line.

All tolerances are pinned here.  Regression constants were frozen from the
first recorded run at these seeds and corpus sizes; they double as change
detectors for the closed forms.

Two sub-criteria encode targets that are mathematically unattainable and are
kept as stated rather than loosened; they fail, with the analysis documented
alongside the assertion:

* criterion 5, lower kind (v, w) = (2, 1): the constant-free pointwise bound
  ``H_(2,1) f(t) >= f*(2t)`` fails on an open region (the sharp constant is
  ``2(sqrt(2)-1) < 1``);
* criterion 9, the 0.15 bound: the l_1 tail of the borderline family beyond
  N = 10**3 is ~0.76, matching its integral-test bound ``2 ln(10**3)**-0.5``.
"""

from __future__ import annotations

import itertools
import math

import pytest

from rinorms import (
    INF,
    LorentzCouple,
    LorentzParams,
    SpaceDescriptor,
    StepFunction,
    aoki_rolewicz_kappa,
    dilation_operator_norm,
    estimate_boyd_indices,
    estimate_dilation_norm,
    estimate_quasi_triangle_constant,
    generate_corpus,
    generate_pairs,
    lorentz_norm,
    sequence_report,
    verify_hardy_equivalence,
    verify_hardy_pointwise,
    verify_interpolation_identity,
    verify_k_properties,
)

from conftest import quad_lorentz_norm

SEED = 7
CORPUS_SIZE = 1000

# frozen from the first recorded run (seed 7 corpus, seed 11 pairs)
BASELINES = {
    "thm11_upper_1_1_max": 1.7005445183930825,
    "thm11_lower_3_2_max": 1.7372203130504353,
    "quasi_triangle_l1_half": 1.924681120038435,
}

L22 = SpaceDescriptor.for_lorentz(LorentzParams(2.0, 2.0))
L1_LINF = LorentzCouple(LorentzParams(1.0, 1.0), LorentzParams(INF, INF))


@pytest.fixture(scope="module")
def corpus():
    return generate_corpus(SEED, CORPUS_SIZE)


def report(criterion: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {criterion}: {status}" + (f"  [{detail}]" if detail else ""))
    assert passed, f"criterion {criterion} failed: {detail}"


# -- 1: rearrangement ----------------------------------------------------


def test_criterion_01_rearrangement(corpus):
    ok = True
    for f in corpus:
        fs = f.rearrange()
        levels = {0.0, f.tail, *f.values}
        levels.update(0.5 * (a + b) for a, b in zip(sorted(levels), sorted(levels)[1:]))
        ok = ok and all(f.distribution(lam) == fs.distribution(lam) for lam in levels)
        ok = ok and fs.rearrange() == fs and fs.is_nonincreasing()
    report("1 rearrangement correctness", ok, f"{len(corpus)} functions, exact equality")


# -- 2: Lorentz norm exactness -------------------------------------------


FINITE_PARAMS = [
    LorentzParams(p, q) for p, q in ((2.0, 1.0), (0.5, 2.0), (1.0, 0.5), (3.0, 3.0), (2.0, 4.0))
]


def test_criterion_02_lorentz_norm_exactness(corpus):
    worst = 0.0
    for i, f in enumerate(corpus):
        prm = FINITE_PARAMS[i % len(FINITE_PARAMS)]
        exact = lorentz_norm(f, prm)
        oracle = quad_lorentz_norm(f, prm.p, prm.q)
        worst = max(worst, abs(exact - oracle) / oracle)
    degenerate_ok = all(
        lorentz_norm(f, LorentzParams(INF, q)) == INF for f in list(corpus)[:50] for q in (0.5, 1.0, 2.0)
    )
    report(
        "2 lorentz norm exactness",
        worst <= 1e-8 and degenerate_ok,
        f"{len(corpus)} quadrature cases, worst rel err {worst:.2e}",
    )


# -- 3: space axioms ------------------------------------------------------


AXIOM_GRID = [
    LorentzParams(p, q) for p, q in itertools.product((0.5, 1.0, 2.0), (0.5, 1.0, 2.0, INF))
] + [LorentzParams(INF, INF)]


def test_criterion_03_space_axioms(corpus):
    members = list(corpus)[:150]
    ok = True
    for prm in AXIOM_GRID:
        for f in members:
            n = lorentz_norm(f, prm)
            # P1 homogeneity
            for lam in (0.5, 3.0):
                ok = ok and abs(lorentz_norm(f.scale(lam), prm) - lam * n) <= 1e-12 * lam * n
            # P2 lattice: shrink alternate pieces
            g = StepFunction(
                f.breakpoints,
                tuple(v * m for v, m in zip(f.values, itertools.cycle((1.0, 0.5)))),
                f.tail,
            )
            ok = ok and lorentz_norm(g, prm) <= n * (1.0 + 1e-12)
        # P3 Fatou along truncations, finite-norm case
        for f in members[:25]:
            n = lorentz_norm(f, prm)
            prev = 0.0
            for k in (1.0, 16.0, 2.0**12):
                nk = lorentz_norm(f.minimum(k).restrict(k), prm)
                ok = ok and prev * (1 - 1e-12) <= nk <= n * (1 + 1e-12)
                prev = nk
            ok = ok and abs(prev - n) <= 1e-12 * n
        # P4 finite norm on finite-measure indicators
        for a, b in ((0.0, 1.0), (0.5, 2.0), (3.0, 500.0)):
            ok = ok and lorentz_norm(StepFunction.indicator(a, b), prm) < INF
    # P3, infinite-norm case: positive tail makes truncation norms blow up
    f = StepFunction((1.0,), (4.0,), 1.0)
    for prm in (LorentzParams(0.5, 1.0), LorentzParams(2.0, 2.0)):
        ok = ok and lorentz_norm(f, prm) == INF
        norms = [lorentz_norm(f.minimum(k).restrict(k), prm) for k in (2.0**j for j in (2, 6, 10, 13))]
        ok = ok and all(a <= b * (1 + 1e-12) for a, b in zip(norms, norms[1:]))
        ok = ok and norms[-1] > 2.0**6
    report("3 space axioms P1-P4", ok, f"{len(AXIOM_GRID)} parameter pairs")


# -- 4: dilation and Boyd indices -----------------------------------------


def test_criterion_04_dilation_and_boyd(corpus):
    members = list(corpus)[:100]
    ok = True
    for p, q in ((0.5, 1.0), (1.0, 2.0), (2.0, 2.0), (3.0, 1.0), (INF, INF)):
        space = SpaceDescriptor.for_lorentz(LorentzParams(p, q))
        for a in (0.25, 4.0, 100.0):
            est = estimate_dilation_norm(space, a, members)
            exact = dilation_operator_norm(space.params, a)
            ok = ok and abs(est - exact) <= 1e-10 * exact
    s_grid = [2.0, 2.0**5, 2.0**10, 2.0**20]
    for p in (0.5, 1.0, 3.0):
        space = SpaceDescriptor.for_lorentz(LorentzParams(p, 1.0))
        lower, upper = estimate_boyd_indices(space, s_grid, members)
        ok = ok and abs(lower - p) <= 0.05 and abs(upper - p) <= 0.05
    space = SpaceDescriptor.for_lorentz(LorentzParams(1.5, 3.0))
    grid = (0.5, 2.0, 8.0)
    est = {a: estimate_dilation_norm(space, a, members) for a in grid}
    for a, b in itertools.product(grid, grid):
        ok = ok and estimate_dilation_norm(space, a * b, members) <= est[a] * est[b] * (1 + 1e-12)
    report("4 dilation/Boyd", ok, "exact a**(-1/p), indices within 0.05, submultiplicative")


# -- 5: pointwise averaging-operator bounds --------------------------------


def test_criterion_05_pointwise_bounds_upper_and_sup(corpus):
    ok = True
    detail = []
    for cfg in ({"u": 1.0, "w": 1.0}, {"u": 1.0, "w": INF}, {"u": 2.0, "w": 1.0}, {"v": 3.0, "w": INF}):
        rep = verify_hardy_pointwise(corpus, **cfg)
        ok = ok and rep.passed
        detail.append(f"{rep.config}: {rep.violations} violations")
    report("5 pointwise bounds (u,w) and (v,inf)", ok, "; ".join(detail))


def test_criterion_05_pointwise_bound_lower_v2_w1(corpus):
    # Stated as zero violations for (v, w) = (2, 1); the constant-free bound
    # is false (sharp constant 2(sqrt(2)-1) ~ 0.8284 < 1, attained by
    # indicators on t in (4T/9, T/2)), so this check reports honestly red.
    rep = verify_hardy_pointwise(corpus, v=2.0, w=1.0)
    report(
        "5 pointwise bound (v,w)=(2,1)",
        rep.passed,
        f"{rep.violations} violations, worst ratio {rep.min_ratio:.6f}",
    )


# -- 6: norm equivalence and its boundary ----------------------------------


def test_criterion_06_hardy_norm_equivalence(corpus):
    ok = True
    details = []
    rep = verify_hardy_equivalence(corpus, L22, u=1.0, w=1.0)
    ok = ok and rep.passed and rep.min_ratio >= 1.0 - 1e-6
    ok = ok and abs(rep.max_ratio - BASELINES["thm11_upper_1_1_max"]) <= 1e-6
    details.append(f"upper(1,1) ratios [{rep.min_ratio:.6f}, {rep.max_ratio:.6f}]")
    rep = verify_hardy_equivalence(corpus, L22, v=3.0, w=2.0)
    ok = ok and rep.passed and rep.min_ratio >= 1.0 - 1e-6
    ok = ok and abs(rep.max_ratio - BASELINES["thm11_lower_3_2_max"]) <= 1e-6
    details.append(f"lower(3,2) ratios [{rep.min_ratio:.6f}, {rep.max_ratio:.6f}]")
    rep = verify_hardy_equivalence(corpus, L22, u=2.0, w=1.0)
    ok = ok and rep.passed and rep.extras["diverged"] == rep.size
    details.append(f"boundary u=p_E: {rep.extras['diverged']}/{rep.size} diverged")
    report("6 norm equivalence", ok, "; ".join(details))


# -- 7: K-functional suite --------------------------------------------------


def test_criterion_07_k_functional_suite(corpus):
    rep = verify_k_properties(list(corpus), n_pairs=200, oracle_tol=1e-9)
    ok = rep.passed and rep.min_ratio >= 1.0 - 1e-12 and rep.max_ratio <= 2.0 + 1e-12
    report(
        "7 K-functional suite",
        ok,
        f"200 pairs, holmstedt ratio in [{rep.min_ratio:.6f}, {rep.max_ratio:.6f}]",
    )


# -- 8: interpolation identity -----------------------------------------------


def test_criterion_08_interpolation_identity(corpus):
    l31 = SpaceDescriptor.for_lorentz(LorentzParams(3.0, 1.0))
    linf = SpaceDescriptor.for_lorentz(LorentzParams(INF, INF))
    configs = [
        (L22, LorentzCouple(LorentzParams(1.0, 1.0), LorentzParams(4.0, 4.0)), 4.0 / 3.0, False),
        (L22, LorentzCouple(LorentzParams(1.0, 2.0), LorentzParams(INF, INF)), 1.0, False),
        (l31, L1_LINF, 1.0, False),
        (linf, L1_LINF, 1.0, False),
        (L22, L1_LINF, 1.0, True),  # calibration instance
    ]
    ok = True
    details = []
    for space, couple, theta, calibrate in configs:
        rep = verify_interpolation_identity(
            corpus, space, couple, theta, ratio_bound=64.0, calibrate=calibrate
        )
        ok = ok and rep.passed and rep.extras["spread"] <= 64.0
        details.append(f"{space}/{couple}: spread {rep.extras['spread']:.4f}")
        if calibrate:
            details.append(f"calibration {rep.extras['calibration']}")
    report("8 interpolation identity", ok, "; ".join(details))


# -- 9: borderline family -----------------------------------------------------


def test_criterion_09_borderline_growth_and_boyd(corpus):
    r3 = sequence_report(0.5, 10**3)
    r6 = sequence_report(0.5, 10**6)
    growth = r6.l1q_partial - r3.l1q_partial
    tail = r6.l1_partial - r3.l1_partial
    bound = 2.0 * math.log(10**3) ** -0.5
    space = SpaceDescriptor.for_lorentz(LorentzParams(1.0, 0.5))
    lower, upper = estimate_boyd_indices(
        space, [2.0, 2.0**5, 2.0**10, 2.0**20], list(corpus)[:50]
    )
    ok = growth >= 1.0 and tail <= bound and abs(lower - 1.0) <= 0.05 and abs(upper - 1.0) <= 0.05
    report(
        "9 borderline family growth/Boyd",
        ok,
        f"l1q growth {growth:.4f} >= 1, l1 tail {tail:.4f} <= bound {bound:.4f}, boyd ({lower:.3f},{upper:.3f})",
    )


def test_criterion_09_l1_tail_bound_constant():
    # Stated bound: the l_1 tail beyond N = 10**3 is below 0.15.  The true
    # tail is sum_{k>10**3} 1/(k ln(k+1)**1.5) ~ 0.7596 and its integral-test
    # bound is 2 ln(10**3)**-0.5 ~ 0.7610, so 0.15 cannot hold for any
    # exponent in the family that keeps the l_{1,q} divergence visible
    # (growth >= 1 needs alpha <~ 1.64, tail < 0.15 needs alpha >= 2).
    r3 = sequence_report(0.5, 10**3)
    r6 = sequence_report(0.5, 10**6)
    remainder = 2.0 * math.log(10**6) ** -0.5  # integral bound beyond 10**6
    tail_upper_bound = (r6.l1_partial - r3.l1_partial) + remainder
    report("9 l1 tail below 0.15", tail_upper_bound < 0.15, f"tail <= {tail_upper_bound:.4f}")


# -- 10: Aoki-Rolewicz and quasi-triangle --------------------------------------


def test_criterion_10_aoki_rolewicz_and_quasi_triangle():
    ok = aoki_rolewicz_kappa(1.0) == 1.0 and aoki_rolewicz_kappa(2.0) == 0.5
    pairs = generate_pairs(11, 10_000)
    c = estimate_quasi_triangle_constant(LorentzParams(1.0, 0.5), pairs)
    ok = ok and 1.0 <= c <= 2.0
    ok = ok and abs(c - BASELINES["quasi_triangle_l1_half"]) <= 1e-9
    report("10 Aoki-Rolewicz / quasi-triangle", ok, f"L(1,1/2) lower bound {c!r}")

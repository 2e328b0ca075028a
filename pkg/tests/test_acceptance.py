"""Acceptance suite: eleven criteria, one test each, tolerances pinned.

Each test prints a single PASS line when its criterion holds, so a verbose
run reads as a checklist.  Oracles are independent of the paths they check:
constant-exponent norms against direct modular integrals, the piecewise
root against scalar bisection, divergence rates against their closed-form
targets, and determinism against byte comparison of two subprocess runs.
"""

import json
import math
import subprocess
import sys
import time

import pytest

from varlp import (Ball, catalog_bank, chi_ball, chi_interval, chi_norm,
                   constant_exponent, dyadic_step, lincomb, luxemburg_norm,
                   modular, piecewise_exponent, sign_func, smooth_exponent)
from varlp.config import ExperimentConfig
from varlp.funcs import abs_power
from varlp.spaces import lq_aggregate_large, lq_aggregate_small
from varlp.verify import (check_chi_product, check_commutator_bounded,
                          check_commutator_identity, check_counterexample,
                          check_minkowski, check_subset_ratios,
                          check_vv_herz, commutator_bank, minkowski_lists,
                          subset_pairs, symbol_bank, vv_sequence_bank)

PW23 = piecewise_exponent([1.0, 2.0], [2.0, 3.0, 2.0])
PW32 = piecewise_exponent([-2.0, 2.0], [3.0, 2.0, 3.0])


def _ok(n, msg):
    print(f"ACCEPTANCE {n:>2}: PASS  {msg}")


def test_criterion_01_constant_exponent_norms_and_plastic_root():
    start = time.monotonic()
    bank = catalog_bank()
    pairs = [(name, f, p) for name, f in bank[:10] for p in (2.0, 3.5)]
    assert len(pairs) == 20
    for name, f, p in pairs:
        e = constant_exponent(p)
        oracle = modular(f, e) ** (1.0 / p)
        got = luxemburg_norm(f, e).value
        assert abs(got - oracle) <= 1e-7 * max(oracle, 1e-300), (name, p)
    # scalar-bisection oracle for the piecewise case chi_[0,2], p in {2, 3}
    lo, hi = 1.0, 2.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if mid ** -2 + mid ** -3 > 1.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    assert abs(root - 1.3247180) <= 1e-6
    got = luxemburg_norm(chi_interval(0.0, 2.0), PW23).value
    assert abs(got - root) <= 1e-6
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"criterion 1 took {elapsed:.1f}s"
    _ok(1, f"20 constant-exponent norms within 1e-7; plastic root "
           f"{got:.7f} within 1e-6; {elapsed:.1f}s < 10s")


def test_criterion_02_unit_ball_property():
    exponents = [constant_exponent(2.0), constant_exponent(3.5), PW23, PW32,
                 smooth_exponent("inv_one_plus_abs")]
    checked = 0
    for name, f in catalog_bank():
        for e in exponents:
            nf = luxemburg_norm(f, e).value
            assert nf > 0.0, name
            rho = modular(lincomb([f], [1.0 / nf]), e)
            assert abs(rho - 1.0) <= 1e-6, (name, e.kind)
            checked += 1
    _ok(2, f"modular(f/||f||) in [1-1e-6, 1+1e-6] for {checked} "
           f"(function, exponent) pairs")


def test_criterion_03_power_identity():
    exponents = [constant_exponent(2.0), PW23,
                 smooth_exponent("inv_one_plus_abs")]
    checked = 0
    for name, f in catalog_bank()[:6]:
        for e in exponents:
            lhs = luxemburg_norm(f, e).value
            for p0 in (1.25, 1.5):
                rhs = luxemburg_norm(abs_power(f, p0),
                                     e.divided_by(p0)).value ** (1.0 / p0)
                assert abs(lhs - rhs) <= 1e-6 * max(lhs, 1e-300), (name, p0)
                checked += 1
    _ok(3, f"norm == (norm of |f|^p0 under p/p0)^(1/p0) within 1e-6 "
           f"across {checked} cases")


def test_criterion_04_chi_product():
    radii = [2.0 ** k for k in range(-5, 11)]
    for p in (1.5, 2.0, 3.0, 10.0):
        e = constant_exponent(p)
        ec = e.conjugate()
        for r in radii:
            ball = Ball(r)
            prod = chi_norm(ball, e).value * chi_norm(ball, ec).value / ball.measure
            assert abs(prod - 1.0) <= 1e-8, (p, r)
    for label, e in (("pw23", PW23), ("pw32", PW32)):
        rep = check_chi_product(e, radii)
        assert rep.passed, label
    _ok(4, "product ratio == 1 within 1e-8 at 4 constant exponents x 16 radii; "
           "finite flat sup for 2 piecewise exponents")


def test_criterion_05_subset_ratio_sharpening():
    pairs = subset_pairs(50)
    assert len(pairs) == 50
    for p in (2.0, 3.0):
        rep24, rep25 = check_subset_ratios(constant_exponent(p), pairs,
                                           [1.25, 1.5])
        assert rep25.passed
        assert rep25.empirical_constant <= 1.0 + 1e-6, p
    rep24, rep25 = check_subset_ratios(PW23, pairs, [1.25, 1.5])
    assert rep25.passed and math.isfinite(rep25.empirical_constant)
    _ok(5, f"constant-exponent ratios meet (|B|/|S|)^(1/p0) with C <= 1+1e-6 "
           f"over 50 pairs; piecewise constant {rep25.empirical_constant:.4g}")


def test_criterion_06_counterexample_rates():
    start = time.monotonic()
    grid = [2.0 ** k for k in range(-10, 21)]
    slopes = {}
    for p0 in (2.0, 4.0):
        rep = check_counterexample(p0, 40, grid)
        assert rep.passed, rep.witnesses
        target = 1.0 - 1.0 / p0
        assert abs(rep.fitted_exponent - target) <= 0.05
        slopes[p0] = rep.fitted_exponent
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"criterion 6 took {elapsed:.1f}s"
    _ok(6, f"bounded 1-oscillation on (0, 2^20]; divergence slopes "
           f"{slopes[2.0]:.4f} (target 0.5) and {slopes[4.0]:.4f} "
           f"(target 0.75); {elapsed:.1f}s < 60s")


def test_criterion_07_converse_identity():
    rep = check_commutator_identity(symbol_bank(), [0.5, 1.0, 2.0, 4.0, 8.0],
                                    points_per_ball=20)
    assert rep.passed
    assert rep.empirical_constant <= 1e-6
    _ok(7, f"decomposition residual {rep.empirical_constant:.3g} <= 1e-6 "
           f"over 4 symbols x 5 balls x 20 points")


def test_criterion_08_commutator_boundedness_and_converse():
    e2 = constant_exponent(2.0)
    bank = commutator_bank(-8, 12)
    assert len(bank) == 30
    forward = check_commutator_bounded(sign_func(), e2, bank)
    assert forward.passed, forward.witnesses
    converse_bank = [(f"chi_2^{m}", 2.0 ** m, chi_ball(2.0 ** m))
                     for m in range(1, 13)]
    converse = check_commutator_bounded(dyadic_step(), e2, converse_bank,
                                        expect="increasing")
    assert converse.passed, converse.witnesses
    _ok(8, f"flat commutator ratios over the 30-function bank "
           f"(sup {forward.empirical_constant:.4f}); strictly increasing "
           f"ratios for the unbounded-oscillation symbol, m = 1..12")


def test_criterion_09_integral_aggregation_inequality():
    lists = minkowski_lists(7, 50)
    assert len(lists) == 50
    rep = check_minkowski(lists, [1.5, 2.0, 3.0])
    assert rep.passed
    assert rep.empirical_constant <= 1e-8
    _ok(9, f"aggregation inequality with constant 1 on 50 seeded lists, "
           f"worst gap {rep.empirical_constant:.3g} <= 1e-8")


def test_criterion_10_vector_valued_ring_bound():
    e2 = constant_exponent(2.0)
    bank = vv_sequence_bank()
    assert len(bank) == 10
    rep = check_vv_herz(sign_func(), e2, 0.0, [0.5, 1.0, 2.0], 2.0, bank,
                        range(-6, 7))
    assert rep.passed, rep.witnesses
    gap = dict((d, v) for d, v, _ in rep.witnesses)["q=1 branch agreement gap"]
    assert gap <= 1e-9
    # both aggregation branches on a fixed breakdown agree at the boundary
    contribs = [0.3, 1.7, 0.0, 2.4, 0.09]
    assert abs(lq_aggregate_small(contribs, 1.0)
               - lq_aggregate_large(contribs, 1.0)) <= 1e-9
    _ok(10, f"vector ratios finite and flat for q in {{0.5, 1, 2}}; "
            f"q-branch boundary gap {gap:.3g} <= 1e-9")


def test_criterion_11_determinism():
    def run(tag):
        out = f"/tmp/varlp_determinism_{tag}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "varlp", "verify", "--all", "--seed", "7",
             "--json", out],
            capture_output=True, text=True)
        return proc.returncode, open(out, "rb").read()

    rc1, bytes1 = run("a")
    rc2, bytes2 = run("b")
    assert rc1 == 0 and rc2 == 0, "full verification run must pass"
    assert bytes1 == bytes2, "reports differ between identical runs"
    reports = json.loads(bytes1)
    assert len(reports) == 13 and all(r["pass"] for r in reports)
    _ok(11, f"two verify --all --seed 7 runs byte-identical "
            f"({len(bytes1)} bytes, 13 statements, all pass)")

"""Monte Carlo harness: interval math, sampling, and decode bookkeeping."""

import math
import random

import numpy as np
import pytest

from qproduct import classical, product, quantum, sim
from qproduct.gf2 import GF2Error
from qproduct.product import ProductCode
from qproduct.sim import TrialConfig


def desk_instance():
    return ProductCode(classical.hamming(3), quantum.rep3(), hc_mode="pt")


def test_trial_config_validation():
    pc = desk_instance()
    with pytest.raises(GF2Error, match="shots"):
        TrialConfig(pc=pc, p=0.01, shots=0, seed=1)
    with pytest.raises(GF2Error, match="p="):
        TrialConfig(pc=pc, p=1.5, shots=10, seed=1)
    with pytest.raises(GF2Error, match="decode_mode"):
        TrialConfig(pc=pc, p=0.1, shots=10, seed=1, decode_mode="magic")
    with pytest.raises(GF2Error, match="min_distance"):
        TrialConfig(pc=pc, p=0.1, shots=10, seed=1, syndrome_noise=True)


def test_wilson_interval_known_values():
    lo, hi = sim.wilson_interval(0, 100)
    assert lo == pytest.approx(0.0, abs=1e-12)
    assert hi == pytest.approx(0.0370, abs=1e-3)
    lo, hi = sim.wilson_interval(50, 100)
    assert lo == pytest.approx(0.4038, abs=1e-3)
    assert hi == pytest.approx(0.5962, abs=1e-3)
    assert sim.wilson_interval(0, 0) == (0.0, 1.0)


def test_wilson_interval_covers_true_rate():
    """Coverage oracle: ~95% of seeded binomial draws trap the true p."""
    rng = random.Random(0)
    p, trials, runs = 0.05, 400, 300
    covered = 0
    for _ in range(runs):
        hits = sum(rng.random() < p for _ in range(trials))
        lo, hi = sim.wilson_interval(hits, trials)
        covered += lo <= p <= hi
    assert covered / runs > 0.9


def test_sample_error_statistics():
    rng = np.random.Generator(np.random.Philox(7))
    draws = np.vstack([sim.sample_error(0.3, 5, 4, rng) for _ in range(2000)])
    assert draws.shape == (2000, 20)
    assert abs(draws.mean() - 0.3) < 0.01


def test_key_matrix_matches_extract_syndrome():
    pc = desk_instance()
    m = sim._key_matrix(pc, "X")
    for bit in range(pc.N):
        e = product.ErrorPattern.from_packed(1 << bit, pc.q.n, pc.L)
        key = product.extract_syndrome(pc, e).key
        vec = np.zeros(pc.N, dtype=np.uint8)
        vec[bit] = 1
        packed = int(sim._pack(((vec @ m) & 1)[None, :])[0])
        assert packed == key


def test_pack_width_guard():
    with pytest.raises(GF2Error, match="int64"):
        sim._pack(np.zeros((1, 80), dtype=np.uint8))
    got = sim._pack(np.array([[1, 0, 1]], dtype=np.uint8))
    assert int(got[0]) == 0b101


def test_noise_probs_closed_form():
    pc = ProductCode(classical.bch(4, 3), quantum.steane(), hc_mode="pt",
                     t_src=1)
    probs = sim._noise_probs(pc, "X", 1e-3)
    assert probs.shape == (3 * pc.R,)
    hq_w = pc.q.hz.row_weights()
    hc_w = pc.c.pt.row_weights()
    for i in (0, 2):
        for r in (0, pc.R - 1):
            expect = (1 - (1 - 2e-3) ** (hq_w[i] * hc_w[r])) / 2
            assert probs[i * pc.R + r] == pytest.approx(expect, rel=1e-9)


def test_run_trials_zero_noise_never_fails():
    cfg = TrialConfig(pc=desk_instance(), p=0.0, shots=500, seed=3)
    rep = sim.run_trials(cfg)
    assert rep.failures == 0 and rep.empirical_rate == 0.0
    assert rep.analytic_rate == 0.0


def test_run_trials_reproducible():
    cfg = TrialConfig(pc=desk_instance(), p=0.05, shots=4000, seed=11)
    a = sim.run_trials(cfg)
    b = sim.run_trials(cfg)
    assert (a.failures, a.breakdown) == (b.failures, b.breakdown)
    assert sim.run_trials(TrialConfig(pc=desk_instance(), p=0.05, shots=4000,
                                      seed=12)).failures != a.failures


def test_run_trials_failure_equals_class_escape():
    """With an injective table every failure is a pattern outside the
    uniquely decodable class; no decode errors occur."""
    cfg = TrialConfig(pc=desk_instance(), p=0.03, shots=20000, seed=5)
    rep = sim.run_trials(cfg)
    assert rep.breakdown["decode_errors"] == 0
    assert rep.failures == rep.breakdown["class_misses"]
    # at p = 0.03 the union-bound model is only approximate; it should
    # still land within a few percent of the measurement
    assert rep.analytic_rate == pytest.approx(rep.empirical_rate, rel=0.15)


def test_run_trials_matches_exhaustive_rate():
    """Empirical rate approaches the exact P(pattern outside class) computed
    by enumerating the binomial weight distribution."""
    pc = desk_instance()
    p = 0.04
    # exact P(in class): each column independently has weight 0 or 1, and
    # at most one column is nonzero (t_q = t_c = 1)
    p0 = (1 - p) ** 3
    p1 = 3 * p * (1 - p) ** 2
    exact_ok = p0 ** 4 + 4 * p1 * p0 ** 3
    cfg = TrialConfig(pc=pc, p=p, shots=60000, seed=9)
    rep = sim.run_trials(cfg)
    lo, hi = rep.wilson_95_interval
    assert lo <= 1 - exact_ok <= hi


def test_run_trials_min_distance_clean():
    pc = ProductCode(classical.bch(4, 3), quantum.steane(), hc_mode="pt",
                     t_src=1)
    cfg = TrialConfig(pc=pc, p=1e-3, shots=5000, seed=21,
                      decode_mode="min_distance")
    rep = sim.run_trials(cfg)
    assert rep.breakdown["decode_errors"] == 0
    assert rep.breakdown["ambiguities"] == 0


def test_run_trials_with_syndrome_noise():
    pc = ProductCode(classical.bch(4, 3), quantum.steane(), hc_mode="pt",
                     t_src=1)
    cfg = TrialConfig(pc=pc, p=1e-3, shots=5000, seed=22,
                      decode_mode="min_distance", syndrome_noise=True,
                      p_e=1e-3)
    rep = sim.run_trials(cfg)
    # flips within the radius budget must never corrupt a decode
    assert rep.breakdown["decode_errors"] == 0
    assert rep.failures == (rep.breakdown["class_misses"]
                            + rep.breakdown["noise_over_budget"]
                            + rep.breakdown["ambiguities"])


def test_run_trials_report_invariants():
    with pytest.raises(GF2Error, match="exceed"):
        sim.TrialReport(shots=5, failures=6, empirical_rate=1.2,
                        wilson_95_interval=(0, 1), analytic_rate=0.1)

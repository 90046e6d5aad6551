"""Monte Carlo validation of the analytic failure model.

Samples independent Bernoulli error patterns (and optionally syndrome
measurement noise), runs the table decoders, and reports empirical failure
rates with Wilson 95% intervals against the closed-form prediction.

Randomness comes from numpy's Philox counter-based generator, so streams
are reproducible bit-exactly from the 64-bit seed on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import analytics, decoder, quantum
from .gf2 import GF2Error
from .product import LookupTable, ProductCode, build_lookup_table

BATCH = 1 << 15


@dataclass(frozen=True)
class TrialConfig:
    pc: ProductCode
    p: float
    shots: int
    seed: int
    error_type: str = "X"
    syndrome_noise: bool = False
    p_e: float = 0.0
    decode_mode: str = "lookup"  # 'lookup' | 'min_distance'

    def __post_init__(self):
        if self.shots < 1:
            raise GF2Error(f"shots must be >= 1, got {self.shots}")
        if not 0.0 <= self.p <= 1.0:
            raise GF2Error(f"p={self.p} outside [0, 1]")
        if self.decode_mode not in ("lookup", "min_distance"):
            raise GF2Error(f"unknown decode_mode {self.decode_mode!r}")
        if self.syndrome_noise and self.decode_mode == "lookup":
            raise GF2Error("syndrome noise requires min_distance decoding")


@dataclass(frozen=True)
class TrialReport:
    shots: int
    failures: int
    empirical_rate: float
    wilson_95_interval: tuple[float, float]
    analytic_rate: float
    breakdown: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.failures > self.shots:
            raise GF2Error("failures exceed shots")


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054
                    ) -> tuple[float, float]:
    """Wilson score 95% confidence interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def sample_error(p: float, n: int, L: int, rng: np.random.Generator) -> np.ndarray:
    """One n*L bit pattern, each cell independently 1 with probability p."""
    return (rng.random(n * L) < p).astype(np.uint8)


def _key_matrix(pc: ProductCode, error_type: str) -> np.ndarray:
    """(n*L) x key_bits map from vec(eps) bits to flattened syndrome bits.

    vec bit l*n + q feeds key bit i*R + r exactly when H_Q[i, q] and
    H_C[r, l] are both 1 (the Kronecker structure, reindexed to match the
    stabilizer-major key packing).
    """
    hq = pc.q.check_matrix(error_type).to_numpy()
    hc = pc.h_c.to_numpy()
    m = np.einsum("iq,rl->lqir", hq, hc)
    return m.reshape(pc.q.n * pc.L, hq.shape[0] * pc.R).astype(np.uint8)


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack rows of a (shots, width) bit array into int64 values."""
    width = bits.shape[1]
    if width > 62:
        raise GF2Error(f"packed width {width} exceeds int64 range")
    powers = (np.int64(1) << np.arange(width, dtype=np.int64))
    return bits.astype(np.int64) @ powers


def _noise_probs(pc: ProductCode, error_type: str, p_e: float) -> np.ndarray:
    """Per-key-bit flip probability from the gate count feeding each ancilla."""
    hq_w = pc.q.check_matrix(error_type).row_weights()
    hc_w = pc.h_c.row_weights()
    probs = np.empty(len(hq_w) * pc.R)
    for i, wq in enumerate(hq_w):
        for r, wc in enumerate(hc_w):
            probs[i * pc.R + r] = analytics.syndrome_error_prob(wq * wc, p_e)
    return probs


def run_trials(cfg: TrialConfig, table: LookupTable | None = None) -> TrialReport:
    pc = cfg.pc
    if table is None:
        # noisy-syndrome decoding keys only source-budget patterns so the
        # d_C - 2 t_src key separation covers the nearest-neighbor radius
        max_cols = pc.t_src if cfg.decode_mode == "min_distance" else pc.t_c
        table = build_lookup_table(pc, cfg.error_type, max_cols=max_cols)
    n, L = pc.q.n, pc.L
    if n * L > 62 or table.key_bits > 62:
        raise GF2Error("simulation fast path limited to 62-bit patterns/keys")
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    key_mat = _key_matrix(pc, cfg.error_type)
    stab_space = quantum._rowspace_set(pc.q.stabilizer_matrix(cfg.error_type))
    col_mask = (1 << n) - 1
    entries = table.entries
    radius = pc.t_c - pc.t_src
    noise_probs = (_noise_probs(pc, cfg.error_type, cfg.p_e)
                   if cfg.syndrome_noise else None)

    breakdown = {"class_misses": 0, "decode_errors": 0, "ambiguities": 0,
                 "noise_over_budget": 0, "degenerate_hits": 0}
    failures = 0
    done = 0
    while done < cfg.shots:
        b = min(BATCH, cfg.shots - done)
        done += b
        bits = (rng.random((b, n * L)) < cfg.p).astype(np.uint8)
        keys = _pack((bits @ key_mat) & 1)
        truths = _pack(bits)
        colw = bits.reshape(b, L, n).sum(axis=2)
        in_e = ((colw <= pc.t_q).all(axis=1)
                & ((colw > 0).sum(axis=1) <= pc.t_c))
        if cfg.syndrome_noise:
            flips = _pack((rng.random((b, table.key_bits))
                           < noise_probs).astype(np.uint8))
            in_budget = (colw > 0).sum(axis=1) <= pc.t_src
        for shot in range(b):
            truth = int(truths[shot])
            key = int(keys[shot])
            if cfg.decode_mode == "lookup":
                if not in_e[shot]:
                    failures += 1
                    breakdown["class_misses"] += 1
                    continue
                if truth == 0 and key == 0:
                    continue
                stored = entries.get(key)
                if stored is None:
                    failures += 1
                    breakdown["decode_errors"] += 1
                elif stored != truth:
                    diff = stored ^ truth
                    if all(((diff >> (ell * n)) & col_mask) in stab_space
                           for ell in range(L)):
                        breakdown["degenerate_hits"] += 1
                    else:
                        failures += 1
                        breakdown["decode_errors"] += 1
            else:
                flip = int(flips[shot]) if cfg.syndrome_noise else 0
                correctable = (in_e[shot]
                               and (not cfg.syndrome_noise or
                                    (in_budget[shot]
                                     and flip.bit_count() <= radius)))
                if not correctable:
                    failures += 1
                    if not in_e[shot]:
                        breakdown["class_misses"] += 1
                    else:
                        breakdown["noise_over_budget"] += 1
                    continue
                result = decoder.min_distance_decode(table, key ^ flip, radius)
                if result.status == "ambiguous":
                    failures += 1
                    breakdown["ambiguities"] += 1
                elif result.status != "ok":
                    failures += 1
                    breakdown["decode_errors"] += 1
                else:
                    stored = result.pattern.packed()
                    if stored != truth:
                        diff = stored ^ truth
                        if all(((diff >> (ell * n)) & col_mask) in stab_space
                               for ell in range(L)):
                            breakdown["degenerate_hits"] += 1
                        else:
                            failures += 1
                            breakdown["decode_errors"] += 1
    rate = failures / cfg.shots
    return TrialReport(
        shots=cfg.shots,
        failures=failures,
        empirical_rate=rate,
        wilson_95_interval=wilson_interval(failures, cfg.shots),
        analytic_rate=analytics.failure_probability(cfg.p, pc),
        breakdown=breakdown,
    )

"""Analytic block-error bounds and Monte-Carlo estimation.

Stage failure probabilities are computed in high-precision arithmetic
(60 decimal digits) under the staged channel model: out of n_o outer
positions, the number of erasures delta is binomial(n_o, p_eras) and
the number of errors tau among the remaining positions is
binomial(n_o - delta, p_err).  A stage fails when (tau, delta) leaves
the outer decoder's success region -- 2*tau + delta < d for bounded
distance decoding, or tau within the power-decoding radius of the
erasure-punctured code for power decoding.
"""

import math
import os
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import channel as channel_mod
from . import gc as gc_mod
from .rs import power_lmax, power_radius

mp.mp.dps = 60


# ---- stage probabilities ----------------------------------------------------

def _binpmf(n, p, k):
    return mp.binomial(n, k) * mp.mpf(p) ** k * (1 - mp.mpf(p)) ** (n - k)


def binomial_tail(n, p, k):
    """P(Bin(n, p) >= k), high precision."""
    return mp.fsum(_binpmf(n, p, i) for i in range(k, n + 1))


@dataclass
class StageModel:
    n_out: int
    p_err: float
    p_eras: float
    success: callable  # success(tau, delta) -> bool

    def fail_prob(self):
        return stage_fail_prob(self)


def stage_fail_prob(model):
    """Exact failure probability of one decoding stage.

    Sums the staged binomial mass over all (tau, delta) outside the
    success region; representable down to far below 1e-40.
    """
    n = model.n_out
    pe = mp.mpf(model.p_err)
    px = mp.mpf(model.p_eras)
    if pe < 0 or px < 0 or pe + px > 1:
        raise ValueError("invalid channel probabilities")
    total = mp.mpf(0)
    for delta in range(n + 1):
        pd = _binpmf(n, px, delta)
        inner = mp.mpf(0)
        for tau in range(n - delta + 1):
            if not model.success(tau, delta):
                inner += _binpmf(n - delta, pe, tau)
        total += pd * inner
    return total


def half_distance_success(d):
    """Success predicate of bounded error/erasure decoding."""
    return lambda tau, delta: 2 * tau + delta < d


def power_success(n_out, k, reserved_erasures=0):
    """Success predicate of power decoding after erasure puncturing.

    `reserved_erasures` counts coordinates that are always declared
    erased (e.g. the extension coordinate of an extended RS outer code).
    """
    def success(tau, delta):
        n_eff = n_out - reserved_erasures - delta
        if n_eff <= k:
            return False
        try:
            return tau <= power_radius(n_eff, k, power_lmax(n_eff, k))
        except ValueError:
            return False
    return success


def union_bound(stage_probs):
    return min(mp.mpf(1), mp.fsum(mp.mpf(p) for p in stage_probs))


def pair_coset_channel(w, p):
    """Error/erasure channel of ML decoding between two words at distance w
    over BSC(p): only the w differing positions matter."""
    t = w // 2
    p_err = float(binomial_tail(w, p, t + 1))
    p_eras = float(_binpmf(w, p, t)) if w % 2 == 0 else 0.0
    return p_err, p_eras


# ---- per-preset analytic budgets -------------------------------------------

def preset_stage_models(name, p=0.14, stage1_channel=None, stage2_channel=None,
                        transform_trials=2 * 10 ** 6):
    """Stage models for a preset's analytic union bound.

    Stage-1 channels come from simulation of inner ML decoding unless
    given explicitly; later-level channels of two-element cosets are
    exact binomial expressions in the raw crossover probability.
    """
    if stage1_channel is None:
        rng = channel_mod.RngStream(20240814)
        code = gc_mod.preset(name)
        inner = code.levels[0].partition.parent
        est = channel_mod.estimate_transform(inner, p, transform_trials, rng)
        stage1_channel = (est.p_err, est.p_eras)

    if name == "gc-rm-2048":
        s2 = pair_coset_channel(16, p)
        return [
            StageModel(128, *stage1_channel, half_distance_success(64)),
            StageModel(128, *s2, half_distance_success(8)),
        ]
    if name == "rs-2048":
        # extended RS(2^6;64,22): the extension coordinate is decoded as
        # a declared erasure, one unit of radius below the MDS distance 43
        return [StageModel(64, *stage1_channel, half_distance_success(42))]
    if name == "rs-1152":
        return [StageModel(36, *stage1_channel, half_distance_success(15))]
    if name == "gc-rs-1024":
        if stage2_channel is None:
            rng = channel_mod.RngStream(20240815)
            code = gc_mod.preset(name)
            stage2_channel = estimate_stage2_channel(code, p, transform_trials, rng)
        s3 = pair_coset_channel(32, p)
        return [
            StageModel(32, *stage1_channel, power_success(32, 2, reserved_erasures=1)),
            StageModel(32, *stage2_channel, half_distance_success(13)),
            StageModel(32, *s3, half_distance_success(4)),
        ]
    raise KeyError("no analytic budget for preset %r" % name)


def estimate_stage2_channel(code, p, trials, rng):
    """Simulated label channel of level-2 ML decoding, conditioned on a
    correctly decoded first level."""
    part2 = code.levels[1].partition
    est = channel_mod.estimate_label_transform(part2, p, trials, rng)
    return est.p_err, est.p_eras


def preset_union_bound(name, p=0.14, **kw):
    models = preset_stage_models(name, p, **kw)
    probs = [stage_fail_prob(m) for m in models]
    return probs, union_bound(probs)


# ---- Monte-Carlo ------------------------------------------------------------

def wilson_interval(successes, trials, z=1.96):
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    rad = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - rad), min(1.0, center + rad))


def rule_of_three(trials):
    return 3.0 / trials


@dataclass
class McResult:
    trials: int
    failures: int
    estimate: float
    interval: tuple
    taxonomy: dict  # {"success": .., "detected_level_i": .., "miscorrection": ..}

    @property
    def upper_bound(self):
        # rule-of-three when no failures were observed
        return self.interval[1] if self.failures else rule_of_three(self.trials)


def _mc_chunk(name, p, trials, seed, stream_base, gmd):
    code = gc_mod.preset(name)
    rng = channel_mod.RngStream(seed, stream_base)
    tax = {"success": 0, "miscorrection": 0}
    for t in range(trials):
        info = (rng.gen.random(code.k) < 0.5).astype(np.uint8)
        cw = code.encode(info)
        noisy = channel_mod.bsc_sample(cw.astype(np.int8), p, rng)
        dec, _, fail_level = code.decode(noisy, gmd=gmd)
        if fail_level is not None:
            key = "detected_level_%d" % fail_level
            tax[key] = tax.get(key, 0) + 1
        elif (dec != info).any():
            tax["miscorrection"] += 1
        else:
            tax["success"] += 1
    return tax


def monte_carlo_block_error(name, p, trials, seed, gmd=True, threads=None):
    """Full-pipeline block error rate of a preset under BSC(p).

    Trials are split into chunks with independent RNG streams; chunks
    may run in parallel processes (threads=0 or None reads
    KEYFORGE_THREADS, 0 = auto).
    """
    if threads is None:
        threads = int(os.environ.get("KEYFORGE_THREADS", "0"))
    if threads == 0:
        threads = os.cpu_count() or 1
    nchunks = min(max(1, threads * 4), max(1, trials // 250)) if threads > 1 else 1
    sizes = [trials // nchunks + (1 if i < trials % nchunks else 0) for i in range(nchunks)]
    tax = {}
    if threads > 1 and nchunks > 1:
        import concurrent.futures
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as ex:
            futs = [ex.submit(_mc_chunk, name, p, sz, seed, i, gmd)
                    for i, sz in enumerate(sizes) if sz]
            for f in futs:
                for k, v in f.result().items():
                    tax[k] = tax.get(k, 0) + v
    else:
        for i, sz in enumerate(sizes):
            if sz:
                for k, v in _mc_chunk(name, p, sz, seed, i, gmd).items():
                    tax[k] = tax.get(k, 0) + v
    failures = trials - tax.get("success", 0)
    return McResult(trials, failures, failures / trials,
                    wilson_interval(failures, trials), tax)


# ---- radius table -----------------------------------------------------------

def radius_table(n, k_range):
    """Rows (k, l_max, tau_lmax, half_distance) of the power-decoding
    radius sweep."""
    rows = []
    for k in k_range:
        if not 1 <= k <= n:
            continue
        half = (n - k) // 2
        if k == n:
            rows.append((k, 1, 0, 0))
            continue
        lm = max(1, power_lmax(n, k))
        tau = power_radius(n, k, lm)
        rows.append((k, lm, tau, half))
    return rows

"""Analytic block-error budgets of the preset constructions.

For each preset the decoder is split into stages; each stage sees an
error/erasure symbol channel (simulated for the first ML level, exact
binomial expressions for later two-word levels) and fails when
(tau, delta) leaves its decoder's success region.  The per-stage
failure probabilities are summed into a union bound, all in 60-digit
arithmetic so values far below 1e-30 stay representable.
"""

import mpmath as mp

from keyforge import analysis

P = 0.14
TRIALS = 500_000  # channel-transform simulation budget

for name in ("gc-rm-2048", "rs-2048", "rs-1152", "gc-rs-1024"):
    models = analysis.preset_stage_models(name, P, transform_trials=TRIALS)
    probs = [analysis.stage_fail_prob(m) for m in models]
    print(f"{name}  (BSC p={P})")
    for i, (m, pr) in enumerate(zip(models, probs), 1):
        print(f"  stage {i}: n_out={m.n_out:<3} channel=({m.p_err:.6f}, {m.p_eras:.6f})"
              f"  P(fail) = {mp.nstr(pr, 4)}")
    print(f"  union bound: {mp.nstr(analysis.union_bound(probs), 4)}\n")

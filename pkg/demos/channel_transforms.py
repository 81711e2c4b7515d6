"""Channel transforms of the inner decoders.

Sends random codewords of each inner code through a BSC and tallies how
often exhaustive ML decoding is correct, wrong, or lands on a distance
tie (an erasure of the whole word).  These (p_err, p_eras) pairs are the
symbol channels the outer codes see.
"""

from keyforge import RngStream, estimate_transform
from keyforge.linear import extended_bch_32_11, simplex_code

P = 0.14
TRIALS = 200_000

inners = [
    ("Simplex(16,5,8)", simplex_code(4)),
    ("RM(1,5)=(32,6,16)", simplex_code(5)),
    ("eBCH(32,11,12)", extended_bch_32_11()),
]

print(f"inner ML channel transform at BSC(p={P}), {TRIALS:,} trials\n")
print(f"{'code':<20} {'P(error)':>10} {'P(erasure)':>11}")
for name, code in inners:
    est = estimate_transform(code, P, TRIALS, RngStream(1))
    print(f"{name:<20} {est.p_err:>10.6f} {est.p_eras:>11.6f}"
          f"   (+/- {est.err_radius:.6f} / {est.eras_radius:.6f})")

"""Code-offset fuzzy extractor lifecycle.

Enrollment draws a random codeword c, publishes the offset e = r xor c
as helper data, and derives the key as a hash of the response r.  At
reproduction time a noisy re-read r' is shifted by e, decoded back to
c, and the exact response (hence the exact key) is recovered whenever
the decoder succeeds.
"""

import numpy as np

from keyforge import RngStream, gen, parse_helper, preset, rep, serialize_helper
from keyforge.channel import bsc_sample

code = preset("gc-rm-2048")
rng = RngStream(2024)

response = (rng.gen.random(code.n) < 0.5).astype(np.uint8)
helper, key = gen(response, code, rng)
blob = serialize_helper(helper)
print(f"code {code.name}: n={code.n}, k={code.k}")
print(f"helper data: {len(blob)} bytes, header {blob[:16].hex()}")
print(f"enrolled key: {key.key.hex()}  ({key.hash_id})")

for p in (0.05, 0.10, 0.14):
    noisy = bsc_sample(response.astype(np.int8), p, rng).astype(np.uint8)
    flips = int((noisy != response).sum())
    key2 = rep(noisy, parse_helper(blob))
    status = "key reproduced" if key2 and key2.key == key.key else "FAILED"
    print(f"re-read at p={p:.2f} ({flips} bit flips): {status}")

import math
from itertools import combinations

import numpy as np
import pytest

from keyforge.linear import ERASURE
from keyforge.rm import RmCode


def test_parameters():
    for m in range(0, 8):
        for r in range(0, m + 1):
            code = RmCode.get(r, m)
            assert code.n == 1 << m
            assert code.k == sum(math.comb(m, i) for i in range(r + 1))
            assert code.d == 1 << (m - r)
            assert code.G.shape == (code.k, code.n)


def test_invalid_order():
    with pytest.raises(ValueError):
        RmCode(3, 2)
    with pytest.raises(ValueError):
        RmCode(-1, 2)


def test_encode_info_roundtrip():
    rng = np.random.default_rng(7)
    for (r, m) in [(0, 3), (1, 3), (2, 3), (1, 5), (3, 5), (1, 7), (4, 7)]:
        code = RmCode.get(r, m)
        info = rng.integers(0, 2, code.k, dtype=np.uint8)
        cw = code.encode(info)
        assert np.array_equal(code.info_extract(cw), info)
    with pytest.raises(ValueError):
        RmCode.get(1, 3).info_extract(np.array([1, 0, 0, 0, 0, 0, 0, 0], dtype=np.uint8))


def test_exhaustive_small_code():
    # RM(1,3) = (8,4,4): every pattern with 2*tau + delta < 4 decodes
    code = RmCode.get(1, 3)
    rng = np.random.default_rng(8)
    for info_int in range(1 << code.k):
        info = np.array([(info_int >> i) & 1 for i in range(code.k)], dtype=np.uint8)
        c = code.encode(info).astype(np.int8)
        patterns = [((), ())]
        patterns += [((i,), ()) for i in range(8)]          # tau = 1
        patterns += [((i,), (j,)) for i in range(8) for j in range(8) if j != i]
        patterns += [((), er) for sz in (1, 2, 3) for er in combinations(range(8), sz)]
        for flips, erases in patterns:
            y = c.copy()
            for i in flips:
                y[i] ^= 1
            for i in erases:
                y[i] = ERASURE
            dec = code.decode(y)
            assert dec is not None and np.array_equal(dec, c.astype(np.uint8))


def test_random_within_radius():
    rng = np.random.default_rng(9)
    for (r, m) in [(1, 5), (2, 5), (1, 7), (4, 7)]:
        code = RmCode.get(r, m)
        for _ in range(200):
            info = rng.integers(0, 2, code.k, dtype=np.uint8)
            c = code.encode(info).astype(np.int8)
            tau = int(rng.integers(0, (code.d + 1) // 2))
            delta = int(rng.integers(0, code.d - 2 * tau))
            pos = rng.permutation(code.n)[:tau + delta]
            y = c.copy()
            y[pos[:tau]] ^= 1
            y[pos[tau:]] = ERASURE
            dec = code.decode(y)
            assert dec is not None and np.array_equal(dec, c.astype(np.uint8))


def test_erasure_only_up_to_d_minus_1():
    code = RmCode.get(1, 4)  # (16,5,8)
    rng = np.random.default_rng(10)
    c = code.encode(rng.integers(0, 2, code.k, dtype=np.uint8)).astype(np.int8)
    y = c.copy()
    y[rng.permutation(16)[:7]] = ERASURE
    dec = code.decode(y)
    assert dec is not None and np.array_equal(dec, c.astype(np.uint8))


def test_repetition_tie_fails():
    code = RmCode.get(0, 2)  # (4,1,4) repetition
    assert code.decode(np.array([0, 0, 1, 1], dtype=np.int8)) is None


def test_batch_matches_single():
    code = RmCode.get(2, 5)
    rng = np.random.default_rng(11)
    Y = np.empty((64, code.n), dtype=np.int8)
    for i in range(64):
        c = code.encode(rng.integers(0, 2, code.k, dtype=np.uint8)).astype(np.int8)
        c[rng.permutation(code.n)[:rng.integers(0, 6)]] ^= 1
        Y[i] = c
    C, fail = code.decode_batch(Y)
    for i in range(64):
        single = code.decode(Y[i])
        if single is None:
            assert fail[i]
        else:
            assert not fail[i] and np.array_equal(C[i], single)

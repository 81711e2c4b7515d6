"""Reed-Muller codes via the Plotkin construction and the recursive
error/erasure decoder.

A codeword of RM(r,m) splits into halves (a | a+b) with a in RM(r,m-1)
and b in RM(r-1,m-1).  The decoder first recovers b from y_a + y_b
(erasures absorb: if either half is erased the sum is erased), then
forms two candidates for a -- one from y_b + b_hat, one from y_a --
and keeps the assembled codeword closest to y over its non-erased
positions.  This corrects every pattern with 2*tau + delta < d.

Decoding works on batches: words are (B, n) int8 arrays with -1 as the
erasure marker, and every recursion level processes the whole batch.
"""

import math

import numpy as np

from .linear import ERASURE, BinaryLinearCode, gf2_right_inverse


class RmCode:
    """RM(r, m) with n = 2^m, k = sum_{i<=r} C(m,i), d = 2^(m-r)."""

    _cache = {}

    @classmethod
    def get(cls, r, m):
        code = cls._cache.get((r, m))
        if code is None:
            code = cls._cache[(r, m)] = cls(r, m)
        return code

    def __init__(self, r, m):
        if not 0 <= r <= m:
            raise ValueError("require 0 <= r <= m")
        self.r = r
        self.m = m
        self.n = 1 << m
        self.k = sum(math.comb(m, i) for i in range(r + 1))
        self.d = 1 << (m - r)
        self.G = self._generator(r, m)
        assert self.G.shape == (self.k, self.n)
        self._extract = None

    @staticmethod
    def _generator(r, m):
        if m == 0:
            return np.ones((1, 1), dtype=np.uint8)
        if r == 0:
            return np.ones((1, 1 << m), dtype=np.uint8)
        Ga = RmCode._generator(min(r, m - 1), m - 1)
        Gb = RmCode._generator(r - 1, m - 1)
        top = np.hstack([Ga, Ga])
        bot = np.hstack([np.zeros_like(Gb), Gb])
        return np.vstack([top, bot])

    # ---- encode / info extraction ------------------------------------------

    def encode(self, info):
        info = np.asarray(info, dtype=np.uint8)
        if info.shape[-1] != self.k:
            raise ValueError("info length must equal k")
        return (info @ self.G) % 2

    def info_extract(self, codeword):
        """Inverse of encode; raises if the word is not in the code."""
        if self._extract is None:
            self._extract = gf2_right_inverse(self.G)
        c = np.asarray(codeword, dtype=np.uint8)
        u = (c @ self._extract) % 2
        if np.any((u @ self.G) % 2 != c):
            raise ValueError("word is not a codeword of RM(%d,%d)" % (self.r, self.m))
        return u

    def as_linear_code(self):
        d = self.d if self.k <= 16 else self.d
        return BinaryLinearCode(self.n, self.k, d if self.k <= 16 else None, self.G,
                                name="RM(%d,%d)" % (self.r, self.m))

    # ---- decoding ----------------------------------------------------------

    def decode_batch(self, Y):
        """Decode a (B, n) batch; returns (codewords (B, n) uint8, fail (B,) bool)."""
        Y = np.atleast_2d(np.asarray(Y, dtype=np.int8))
        if Y.shape[1] != self.n:
            raise ValueError("word length must be 2^m")
        return _decode(Y, self.r, self.m)

    def decode(self, y):
        """Decode one word; returns the codeword or None on failure."""
        C, fail = self.decode_batch(np.asarray(y, dtype=np.int8)[None, :])
        return None if fail[0] else C[0]

    def __repr__(self):
        return "RM(%d,%d)=(%d,%d,%d)" % (self.r, self.m, self.n, self.k, self.d)


def _xor_absorb(A, B):
    """XOR of two erasure words; any erased operand erases the result."""
    er = (A == ERASURE) | (B == ERASURE)
    return np.where(er, np.int8(ERASURE), (A ^ B) & 1).astype(np.int8)


def _decode(Y, r, m):
    B, n = Y.shape
    if r == 0:
        # repetition: majority over non-erased positions, tie -> failure
        ones = (Y == 1).sum(axis=1)
        zeros = (Y == 0).sum(axis=1)
        fail = ones == zeros
        C = np.where((ones > zeros)[:, None], 1, 0).astype(np.uint8)
        return np.broadcast_to(C, (B, n)).copy(), fail
    if r >= m:
        # full space, d = 1: any erasure is unrecoverable
        fail = (Y == ERASURE).any(axis=1)
        return np.where(Y == ERASURE, 0, Y).astype(np.uint8), fail
    if r == m - 1:
        # single parity check, d = 2
        er = Y == ERASURE
        delta = er.sum(axis=1)
        par = ((Y == 1).sum(axis=1)) & 1
        C = np.where(er, 0, Y).astype(np.uint8)
        one_er = delta == 1
        if one_er.any():
            rows = np.nonzero(one_er)[0]
            cols = er[rows].argmax(axis=1)
            C[rows, cols] = par[rows]
        fail = (delta >= 2) | ((delta == 0) & (par == 1))
        return C, fail

    na = n // 2
    Ya, Yb = Y[:, :na], Y[:, na:]
    Yab = _xor_absorb(Ya, Yb)
    bhat, fb = _decode(Yab, r - 1, m - 1)

    # candidate 1: a from y_b + b_hat; candidate 2: a from y_a
    a1, fa1 = _decode(_xor_absorb(Yb, bhat.astype(np.int8)), r, m - 1)
    a2, fa2 = _decode(Ya, r, m - 1)

    w1 = np.hstack([a1, a1 ^ bhat])
    w2 = np.hstack([a2, a2 ^ bhat])
    mask = Y != ERASURE
    d1 = ((w1 != Y) & mask).sum(axis=1)
    d2 = ((w2 != Y) & mask).sum(axis=1)
    v1 = ~fb & ~fa1
    v2 = ~fb & ~fa2

    pick1 = v1 & (~v2 | (d1 < d2))
    pick2 = v2 & (~v1 | (d2 < d1))
    both = v1 & v2 & (d1 == d2)
    same = (w1 == w2).all(axis=1)
    pick1 |= both & same
    fail = ~(pick1 | pick2 | (both & same)) | (both & ~same)
    pick2 &= ~pick1

    C = np.where(pick1[:, None], w1, w2).astype(np.uint8)

    # b_hat failed: recover b from y_b + a2 instead, keeping candidate 2's a
    if fb.any() and r >= 1:
        b2, fb2 = _decode(_xor_absorb(Yb, a2.astype(np.int8)), r - 1, m - 1)
        w3 = np.hstack([a2, a2 ^ b2])
        use = fb & ~fa2 & ~fb2
        C = np.where(use[:, None], w3, C)
        fail = np.where(use, False, fail)
    return C, fail

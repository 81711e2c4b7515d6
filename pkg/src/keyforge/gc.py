"""Generalized concatenated codes: multi-level encoding, multi-stage
decoding and GMD wrapping.

A GC codeword is an (n_o, n_i) binary matrix.  Every row is a codeword
of the inner code B1; the coset labels of the rows with respect to the
partition chain B1 > B2 > ... form codewords of the per-level outer
codes (one binary outer code per label bit, or one RS outer code whose
symbols are whole labels).

Decoding runs level by level: row-wise ML decoding in the current
coset (ties become erased labels), outer decoding of the label word
(optionally wrapped in GMD using the per-row error counts as
reliabilities), then descent into the decoded cosets.
"""

from dataclasses import dataclass, field

import numpy as np

from . import rm as rm_mod
from . import rs as rs_mod
from .gf import Field
from .linear import (ERASURE, BinaryLinearCode, CosetPartition,
                     extended_bch_32_11, extended_bch_subcode_32_6,
                     repetition_code, simplex_code, singleton_code)


# ---- GMD --------------------------------------------------------------------

def _candidate_stats(cand, y, orig_mask):
    tau = int(((cand != y) & orig_mask).sum())
    delta = int((~orig_mask).sum())
    return tau, delta


def _weighted_distance(cand, y, orig_mask, alpha):
    mismatch = (cand != y) & orig_mask
    match = (cand == y) & orig_mask
    return float((~orig_mask).sum()) + float((1 + alpha[mismatch]).sum()) + float((1 - alpha[match]).sum())


def gmd_decode(decode_fn, y, reliabilities, d):
    """Generalized minimum distance decoding around an error/erasure decoder.

    decode_fn(word) -> candidate or None.  Erases the j least reliable
    non-erased positions for j = 0, 2, 4, ... and keeps the best
    candidate.  A candidate with 2*tau + delta < d (counted against the
    original word) is provably the unique answer and is returned
    immediately.
    """
    y = np.asarray(y)
    orig_mask = y != ERASURE
    rel = np.asarray(reliabilities, dtype=float)
    # normalized reliabilities in [0, 1] for the weighted-distance tie-break
    spread = rel[orig_mask].max() - rel[orig_mask].min() if orig_mask.any() else 0.0
    alpha = np.zeros_like(rel)
    if spread > 0:
        alpha[orig_mask] = (rel[orig_mask] - rel[orig_mask].min()) / spread
    else:
        alpha[orig_mask] = 1.0
    order = np.argsort(rel, kind="stable")
    order = order[orig_mask[order]]  # least reliable non-erased, ascending

    best, best_score = None, None
    jmax = min(len(order), d - 1)
    for j in range(0, jmax + 1, 2):
        trial = y.copy()
        trial[order[:j]] = ERASURE
        cand = decode_fn(trial)
        if cand is None:
            continue
        cw = cand[0] if isinstance(cand, tuple) else cand
        tau, delta = _candidate_stats(cw, y, orig_mask)
        if 2 * tau + delta < d:
            return cand
        score = _weighted_distance(cw, y, orig_mask, alpha)
        if best_score is None or score < best_score:
            best, best_score = cand, score
    return best


def gmd_decode_batch(decode_batch_fn, y, reliabilities, d):
    """GMD with all erasure trials decoded in one batched call.

    decode_batch_fn(trials) -> (codewords, fail); selection is identical
    to gmd_decode: first trial (in increasing erasure count) whose
    candidate satisfies 2*tau + delta < d wins, otherwise the smallest
    weighted distance does.
    """
    y = np.asarray(y)
    orig_mask = y != ERASURE
    rel = np.asarray(reliabilities, dtype=float)
    spread = rel[orig_mask].max() - rel[orig_mask].min() if orig_mask.any() else 0.0
    alpha = np.zeros_like(rel)
    if spread > 0:
        alpha[orig_mask] = (rel[orig_mask] - rel[orig_mask].min()) / spread
    else:
        alpha[orig_mask] = 1.0
    order = np.argsort(rel, kind="stable")
    order = order[orig_mask[order]]

    delta0 = int((~orig_mask).sum())
    js = list(range(0, min(len(order), d - 1) + 1, 2))
    # fast path: the unmodified word alone, returned when provably unique
    C0, fail0 = decode_batch_fn(y[None, :])
    if not fail0[0]:
        tau0 = int(((C0[0] != y) & orig_mask).sum())
        if 2 * tau0 + delta0 < d:
            return C0[0]
    trials = np.repeat(y[None, :], len(js), axis=0)
    for i, j in enumerate(js):
        trials[i, order[:j]] = ERASURE
    C, fail = decode_batch_fn(trials)
    ok = ~np.asarray(fail)
    if not ok.any():
        return None
    tau = ((C != y) & orig_mask).sum(axis=1)
    qual = ok & (2 * tau + delta0 < d)
    if qual.any():
        return C[int(np.argmax(qual))]
    scores = (delta0 + orig_mask.sum()
              + ((C != y) & orig_mask) @ alpha - ((C == y) & orig_mask) @ alpha)
    scores[~ok] = np.inf
    return C[int(np.argmin(scores))]


# ---- outer-code adapters ----------------------------------------------------

class RmOuter:
    """One binary outer code (an RM code) protecting a single label bit."""

    def __init__(self, code):
        self.code = code
        self.n = code.n
        self.k = code.k
        self.d = code.d

    def encode(self, info_bits):
        return self.code.encode(info_bits)

    def decode(self, y, reliabilities=None, gmd=True):
        """Returns (codeword, info) or None; y is int8 with ERASURE."""
        if gmd and reliabilities is not None:
            res = gmd_decode_batch(self.code.decode_batch, y, reliabilities, self.d)
        else:
            res = self._decode_once(y)
        if res is None:
            return None
        cw = res[0] if isinstance(res, tuple) else res
        return cw, self.code.info_extract(cw)

    def _decode_once(self, y):
        return self.code.decode(y)


class RsOuter:
    """RS outer code whose symbols are whole coset labels."""

    def __init__(self, code, policy="bd"):
        self.code = code
        self.n = code.n
        self.k = code.k
        self.d = code.d
        self.policy = policy
        self.symbol_bits = code.field.m

    def encode(self, info_symbols):
        return self.code.encode(info_symbols)

    def decode(self, y, reliabilities=None, gmd=True):
        if self.policy == "power":
            return self.code.power_decode(y)
        if gmd and reliabilities is not None:
            return gmd_decode(self.code.decode_ee, y, reliabilities, self.d)
        return self.code.decode_ee(y)


# ---- GC code ----------------------------------------------------------------

@dataclass
class GcLevel:
    partition: CosetPartition
    outers: object           # list[RmOuter] (one per label bit) or RsOuter
    policy: str = "bd"

    @property
    def label_bits(self):
        return self.partition.label_bits

    @property
    def k_bits(self):
        if isinstance(self.outers, RsOuter):
            return self.outers.k * self.outers.symbol_bits
        return sum(o.k for o in self.outers)


class GcCode:
    def __init__(self, name, levels, n_o):
        self.name = name
        self.levels = levels
        self.n_o = n_o
        self.n_i = levels[0].partition.parent.n
        self.n = self.n_o * self.n_i
        self.k = sum(lv.k_bits for lv in levels)
        for lv in levels:
            outer_n = lv.outers.n if isinstance(lv.outers, RsOuter) else lv.outers[0].n
            if outer_n != n_o:
                raise ValueError("outer length mismatch at some level")

    # -- encoding ------------------------------------------------------------

    def _level_labels(self, level, info_bits):
        """Outer-encode one level's info bits into per-row integer labels."""
        lb = level.label_bits
        if isinstance(level.outers, RsOuter):
            s = level.outers.symbol_bits
            syms = _bits_to_symbols(info_bits, s)
            labels = level.outers.encode(syms)
            return np.asarray(labels, dtype=np.int64)
        cols = []
        pos = 0
        for o in level.outers:
            cols.append(o.encode(info_bits[pos:pos + o.k]))
            pos += o.k
        bits = np.stack(cols, axis=1)  # (n_o, label_bits), MSB first
        w = 1 << np.arange(lb - 1, -1, -1)
        return bits @ w

    def encode(self, info):
        info = np.asarray(info, dtype=np.uint8)
        if len(info) != self.k:
            raise ValueError("info length must equal k = %d" % self.k)
        rows = np.zeros((self.n_o, self.n_i), dtype=np.uint8)
        pos = 0
        for lv in self.levels:
            labels = self._level_labels(lv, info[pos:pos + lv.k_bits])
            pos += lv.k_bits
            rows ^= lv.partition.representatives[labels]
        return rows

    # -- decoding ------------------------------------------------------------

    def decode(self, received, gmd=True):
        """Multi-stage decode of an (n_o, n_i) 0/1 matrix.

        Returns (info_bits, codeword_matrix, fail_level); on failure the
        first two are None and fail_level is the 1-based level index.
        """
        Y = np.asarray(received, dtype=np.int8)
        if Y.shape != (self.n_o, self.n_i):
            raise ValueError("received shape mismatch")
        acc = np.zeros((self.n_o, self.n_i), dtype=np.uint8)
        info_parts = []
        for li, lv in enumerate(self.levels):
            resid = _xor_resid(Y, acc)
            inner = lv.partition.parent
            idx, dist, tie = inner.ml_decode_batch(resid)
            labels = lv.partition.codebook_labels[idx].astype(np.int64)
            labels[tie] = ERASURE
            rel = -dist.astype(float)
            rel[tie] = -np.inf

            if isinstance(lv.outers, RsOuter):
                res = lv.outers.decode(labels, reliabilities=rel, gmd=gmd)
                if res is None:
                    return None, None, li + 1
                cw, info_syms = res
                dec_labels = np.asarray(cw, dtype=np.int64)
                info_parts.append(_symbols_to_bits(info_syms, lv.outers.symbol_bits))
            else:
                lb = lv.label_bits
                bit_cols = _label_bits(labels, lb)
                dec_cols = []
                for b, o in enumerate(lv.outers):
                    res = o.decode(bit_cols[:, b], reliabilities=rel, gmd=gmd)
                    if res is None:
                        return None, None, li + 1
                    cw, inf = res
                    dec_cols.append(cw)
                    info_parts.append(inf)
                bits = np.stack(dec_cols, axis=1)
                w = 1 << np.arange(lb - 1, -1, -1)
                dec_labels = bits @ w
            acc ^= lv.partition.representatives[dec_labels]
        info = np.concatenate(info_parts).astype(np.uint8)
        return info, acc, None

    @property
    def largest_field_bits(self):
        """Extension degree of the largest field any decoder stage uses."""
        return max(lv.outers.symbol_bits if isinstance(lv.outers, RsOuter) else 1
                   for lv in self.levels)

    def __repr__(self):
        return "GcCode(%s: n=%d, k=%d)" % (self.name, self.n, self.k)


def _xor_resid(Y, acc):
    er = Y == ERASURE
    return np.where(er, np.int8(ERASURE), (Y ^ acc) & 1).astype(np.int8)


def _label_bits(labels, lb):
    """(n_o, lb) int8 bit columns, MSB first; erased labels erase all bits."""
    lab = np.asarray(labels, dtype=np.int64)
    er = lab == ERASURE
    safe = np.where(er, 0, lab)
    bits = ((safe[:, None] >> np.arange(lb - 1, -1, -1)) & 1).astype(np.int8)
    bits[er] = ERASURE
    return bits


def _bits_to_symbols(bits, s):
    bits = np.asarray(bits, dtype=np.int64).reshape(-1, s)
    w = 1 << np.arange(s - 1, -1, -1)
    return bits @ w


def _symbols_to_bits(syms, s):
    syms = np.asarray(syms, dtype=np.int64)
    return ((syms[:, None] >> np.arange(s - 1, -1, -1)) & 1).astype(np.uint8).reshape(-1)


# ---- presets ----------------------------------------------------------------

@dataclass
class ReferenceParams:
    """Parameters-only entry for comparison tables."""
    name: str
    n: int
    k: int
    d: int
    field_bits: int
    description: str


_PRESET_CACHE = {}


def gc_rm_2048():
    """(2048,131) GC code: inner Simplex(16,5,8) > Rep(16,1,16) > {0},
    outer 4 x RM(1,7) and RM(4,7)."""
    b1 = simplex_code(4)
    b2 = repetition_code(16)
    b3 = singleton_code(16)
    lv1 = GcLevel(CosetPartition(b1, b2), [RmOuter(rm_mod.RmCode.get(1, 7)) for _ in range(4)])
    lv2 = GcLevel(CosetPartition(b2, b3), [RmOuter(rm_mod.RmCode.get(4, 7))])
    return GcCode("gc-rm-2048", [lv1, lv2], n_o=128)


def concat_rs_2048():
    """(2048,132) concatenation: inner RM(1,5)=(32,6,16), outer RS(2^6;64,22)."""
    b1 = simplex_code(5)
    lv = GcLevel(CosetPartition(b1, singleton_code(32)),
                 RsOuter(rs_mod.RsCode(Field(6), 64, 22)))
    return GcCode("rs-2048", [lv], n_o=64)


def concat_rs_1152():
    """(1152,132) concatenation: outer shortened to RS(2^6;36,22,15).

    The 28 removed coordinates include the extension coordinate, so the
    full 2*tau + delta < 15 decoding guarantee is preserved."""
    b1 = simplex_code(5)
    mother = rs_mod.RsCode(Field(6), 64, 22)
    short = mother.shorten(list(range(27)) + [63])
    lv = GcLevel(CosetPartition(b1, singleton_code(32)), RsOuter(short))
    return GcCode("rs-1152", [lv], n_o=36)


def gc_rs_1024():
    """(1024,131) GC code: inner eBCH(32,11,12) > (32,6,16) > (32,1,32) > {0},
    outer RS(2^5;32,2) with power decoding, RS(2^5;32,19), RM(3,5)."""
    b1 = extended_bch_32_11()
    b2 = extended_bch_subcode_32_6()
    b3 = repetition_code(32)
    b4 = singleton_code(32)
    F = Field(5)
    lv1 = GcLevel(CosetPartition(b1, b2), RsOuter(rs_mod.RsCode(F, 32, 2), policy="power"),
                  policy="power")
    lv2 = GcLevel(CosetPartition(b2, b3), RsOuter(rs_mod.RsCode(F, 32, 19)))
    lv3 = GcLevel(CosetPartition(b3, b4), [RmOuter(rm_mod.RmCode.get(3, 5))])
    return GcCode("gc-rs-1024", [lv1, lv2, lv3], n_o=32)


def concat_bch_rep_2226_reference():
    """Ordinary concatenation BCH(318,174,35) x Rep(7,1,7): parameters only."""
    return ReferenceParams("ref-bch-rep-2226", n=2226, k=174, d=245, field_bits=8,
                           description="BCH(318,174,35) outer, (7,1,7) repetition inner")


PRESETS = {
    "gc-rm-2048": gc_rm_2048,
    "rs-2048": concat_rs_2048,
    "rs-1152": concat_rs_1152,
    "gc-rs-1024": gc_rs_1024,
    "ref-bch-rep-2226": concat_bch_rep_2226_reference,
}


def preset(name):
    if name not in PRESETS:
        raise KeyError("unknown preset %r; valid: %s" % (name, ", ".join(sorted(PRESETS))))
    code = _PRESET_CACHE.get(name)
    if code is None:
        code = _PRESET_CACHE[name] = PRESETS[name]()
    return code

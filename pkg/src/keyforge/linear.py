"""Binary linear codes, exhaustive ML decoding and coset partitions.

Words over {0, 1, erasure} are numpy int8 arrays where ERASURE (-1) marks
an erased position.  ML decoding is exhaustive nearest-codeword search
over the full codebook (limited to k <= 16) with the tie rule: if the
minimum distance to the received word is attained by more than one
codeword, the decoder outputs an erasure of the whole word (None).
"""

import numpy as np

ERASURE = -1

ML_K_LIMIT = 16


# ---- GF(2) linear algebra ---------------------------------------------------

def gf2_rref(M):
    """Reduced row echelon form over GF(2).

    Returns (R, pivot_cols); R is the reduced matrix (same shape),
    zero rows at the bottom.
    """
    R = np.array(M, dtype=np.uint8) % 2
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pool = np.nonzero(R[r:, c])[0]
        if pool.size == 0:
            continue
        p = r + pool[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        hit = np.nonzero(R[:, c])[0]
        hit = hit[hit != r]
        R[hit] ^= R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def gf2_rank(M):
    return len(gf2_rref(M)[1])


def gf2_solve(A, b):
    """One solution x of x A = b over GF(2) (row-vector convention), or None."""
    A = np.asarray(A, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    Aug = np.hstack([A.T % 2, (b % 2)[:, None]])
    R, pivots = gf2_rref(Aug)
    ncols = A.shape[0]
    x = np.zeros(ncols, dtype=np.uint8)
    for i, c in enumerate(pivots):
        if c == ncols:
            return None  # inconsistent
        x[c] = R[i, ncols]
    return x


def gf2_right_inverse(T):
    """R with T R = I over GF(2); T must be (k, n) of rank k."""
    T = np.asarray(T, dtype=np.uint8)
    k, n = T.shape
    Aug = np.hstack([T, np.eye(k, dtype=np.uint8)])
    Rr, pivots = gf2_rref(Aug)
    if len(pivots) != k or any(p >= n for p in pivots):
        raise ValueError("matrix does not have full row rank")
    U = Rr[:k, n:]
    R = np.zeros((n, k), dtype=np.uint8)
    R[pivots, :] = U
    return R


def pack_words(W, n):
    """Bit-pack rows of a (B, n) 0/1 array into (B, ceil(n/64)) uint64."""
    W = np.asarray(W, dtype=np.uint64)
    nwords = (n + 63) // 64
    out = np.zeros(W.shape[:-1] + (nwords,), dtype=np.uint64)
    for w in range(nwords):
        chunk = W[..., 64 * w:64 * (w + 1)]
        shifts = np.arange(chunk.shape[-1], dtype=np.uint64)
        out[..., w] = (chunk << shifts).sum(axis=-1, dtype=np.uint64)
    return out


class BinaryLinearCode:
    """Generator-matrix code with declared parameters (n, k, d).

    For k <= 16 the declared minimum distance is verified exhaustively
    at construction.
    """

    def __init__(self, n, k, d, G, name=""):
        G = np.asarray(G, dtype=np.uint8).reshape(k, n) % 2
        if k and gf2_rank(G) != k:
            raise ValueError("generator matrix must have rank k")
        self.n = int(n)
        self.k = int(k)
        self.d = d
        self.G = G
        self.name = name
        self._codebook = None
        self._packed = None
        if k and k <= ML_K_LIMIT and d is not None:
            if self.min_distance() != d:
                raise ValueError("declared d=%s does not match code" % d)

    # ---- encoding ----------------------------------------------------------

    def encode(self, info):
        info = np.asarray(info, dtype=np.uint8)
        if info.shape[-1] != self.k:
            raise ValueError("info length must equal k")
        return (info @ self.G) % 2

    @property
    def codebook(self):
        """All 2^k codewords, row i = encode(bits of i, LSB-first)."""
        if self._codebook is None:
            if self.k > ML_K_LIMIT:
                raise ValueError("codebook too large (k > %d)" % ML_K_LIMIT)
            infos = ((np.arange(1 << self.k)[:, None] >> np.arange(self.k)[None, :]) & 1).astype(np.uint8)
            self._codebook = (infos @ self.G % 2).astype(np.uint8)
        return self._codebook

    @property
    def packed_codebook(self):
        if self._packed is None:
            self._packed = pack_words(self.codebook, self.n)
        return self._packed

    def min_distance(self):
        w = self.codebook.sum(axis=1)
        return int(w[w > 0].min()) if self.k else None

    def contains(self, word):
        word = np.asarray(word, dtype=np.uint8)
        if self.k == 0:
            return not word.any()
        return gf2_solve(self.G, word) is not None

    # ---- ML decoding -------------------------------------------------------

    def ml_decode_batch(self, Y, codebook=None, packed=None):
        """Exhaustive ML decode of a batch of words with erasures.

        Y is (B, n) int8 with ERASURE marking erased positions.  Returns
        (idx, dist, tie): index of the nearest codebook row, its distance
        counted over non-erased positions, and a bool mask of ties.
        """
        if codebook is None:
            codebook = self.codebook
            packed = self.packed_codebook
        if packed is None:
            packed = pack_words(codebook, self.n)
        Y = np.atleast_2d(np.asarray(Y, dtype=np.int8))
        mask = Y != ERASURE
        ypack = pack_words(np.where(mask, Y, 0).astype(np.uint8), self.n)
        mpack = pack_words(mask.astype(np.uint8), self.n)
        D = np.zeros((Y.shape[0], packed.shape[0]), dtype=np.int64)
        for w in range(packed.shape[1]):
            D += np.bitwise_count((ypack[:, None, w] ^ packed[None, :, w]) & mpack[:, None, w])
        idx = D.argmin(axis=1)
        dmin = D[np.arange(D.shape[0]), idx]
        tie = (D == dmin[:, None]).sum(axis=1) > 1
        return idx, dmin, tie

    def ml_decode(self, y):
        """Nearest codeword of a single word, or None on a tie (erasure)."""
        idx, dist, tie = self.ml_decode_batch(np.asarray(y, dtype=np.int8)[None, :])
        if tie[0]:
            return None
        return self.codebook[idx[0]].copy()

    def __repr__(self):
        label = self.name or "code"
        return "%s(%d,%d,%s)" % (label, self.n, self.k, self.d)


class CosetPartition:
    """Partition of a parent code into cosets of a linear subcode.

    Labels are integers in [0, 2^label_bits); label bit j (MSB-first)
    corresponds to complement-basis row j.  The representative of each
    coset is its minimum-weight word, ties broken lexicographically.
    """

    def __init__(self, parent, subcode):
        if subcode.n != parent.n:
            raise ValueError("length mismatch between parent and subcode")
        for row in subcode.G:
            if not parent.contains(row):
                raise ValueError("subcode is not contained in the parent code")
        self.parent = parent
        self.subcode = subcode
        self.label_bits = parent.k - subcode.k

        # Complement basis: parent generators independent modulo the subcode.
        basis = [row for row in subcode.G]
        complement = []
        for row in parent.G:
            if gf2_rank(np.array(basis + complement + [row])) > len(basis) + len(complement):
                complement.append(row)
        assert len(complement) == self.label_bits
        self.E = np.array(complement, dtype=np.uint8).reshape(self.label_bits, parent.n)

        # Label extraction: c = l.E + s uniquely; right-invert [E; Gsub].
        T = np.vstack([self.E, subcode.G.reshape(subcode.k, parent.n)])
        self._extract = gf2_right_inverse(T)[:, :self.label_bits]

        # Minimum-weight representatives (lexicographic tie-break).
        sub_cb = subcode.codebook if subcode.k else np.zeros((1, parent.n), dtype=np.uint8)
        reps = []
        for lab in range(1 << self.label_bits):
            shift = self.encode_label(lab)
            coset = sub_cb ^ shift
            w = coset.sum(axis=1)
            best = np.nonzero(w == w.min())[0]
            if best.size > 1:
                order = np.lexsort(coset[best][:, ::-1].T)
                rep = coset[best[order[0]]]
            else:
                rep = coset[best[0]]
            reps.append(rep)
        self.representatives = np.array(reps, dtype=np.uint8)

        # Label of every parent codebook row, for fast remapping after ML.
        if parent.k <= ML_K_LIMIT:
            self.codebook_labels = self.label_of(parent.codebook)
        else:
            self.codebook_labels = None

    def encode_label(self, label):
        """The canonical coset shift l.E for an integer label."""
        bits = (label >> np.arange(self.label_bits - 1, -1, -1)) & 1
        return (bits.astype(np.uint8) @ self.E) % 2 if self.label_bits else np.zeros(self.parent.n, np.uint8)

    def label_of(self, codewords):
        """Integer label(s) of parent codeword(s)."""
        c = np.asarray(codewords, dtype=np.uint8)
        bits = (c @ self._extract) % 2
        weights = 1 << np.arange(self.label_bits - 1, -1, -1)
        return bits @ weights

    def label_to_bits(self, label):
        return ((np.asarray(label)[..., None] >> np.arange(self.label_bits - 1, -1, -1)) & 1).astype(np.int8)

    def coset_codebook(self, label):
        sub_cb = self.subcode.codebook if self.subcode.k else np.zeros((1, self.parent.n), dtype=np.uint8)
        return sub_cb ^ self.representatives[label]

    def ml_decode_in_coset(self, label, y):
        """ML decoding restricted to one coset; None on tie."""
        if not 0 <= label < (1 << self.label_bits):
            raise ValueError("invalid coset label")
        cb = self.coset_codebook(label)
        idx, dist, tie = self.parent.ml_decode_batch(np.asarray(y, dtype=np.int8)[None, :], codebook=cb)
        if tie[0]:
            return None
        return cb[idx[0]].copy()


# ---- named constructors -----------------------------------------------------

def repetition_code(n):
    return BinaryLinearCode(n, 1, n, np.ones((1, n), dtype=np.uint8), name="Rep")


def parity_check_code(n):
    G = np.hstack([np.eye(n - 1, dtype=np.uint8), np.ones((n - 1, 1), dtype=np.uint8)])
    return BinaryLinearCode(n, n - 1, 2, G, name="Parity")


def singleton_code(n):
    """The trivial {0} code, used to terminate partition chains."""
    return BinaryLinearCode(n, 0, None, np.zeros((0, n), dtype=np.uint8), name="Zero")


def simplex_code(m):
    """RM(1,m) = (2^m, m+1, 2^(m-1)); rows x_1..x_m plus the all-ones row."""
    n = 1 << m
    i = np.arange(n)
    rows = [((i >> b) & 1).astype(np.uint8) for b in range(m - 1, -1, -1)]
    rows.append(np.ones(n, dtype=np.uint8))
    return BinaryLinearCode(n, m + 1, 1 << (m - 1), np.array(rows), name="Simplex")


def _bch_31_11_generator():
    """Generator polynomial (degree 20) of the cyclic BCH(31,11,11) code:
    zeros at the conjugacy classes of alpha^1, alpha^3, alpha^5, alpha^7."""
    from . import gf
    F = gf.Field(5)

    def minpoly(s):
        coset = set()
        j = s
        while j not in coset:
            coset.add(j)
            j = (2 * j) % 31
        p = [1]
        for j in coset:
            root = F.alpha_pow(j)
            q = [0] * (len(p) + 1)
            for i, cc in enumerate(p):
                q[i + 1] ^= cc
                q[i] ^= F.mul(cc, root)
            p = q
        return p

    g = [1]
    for s in (1, 3, 5, 7):
        mp = minpoly(s)
        prod = [0] * (len(g) + len(mp) - 1)
        for i, a in enumerate(g):
            if a:
                for j, b in enumerate(mp):
                    prod[i + j] ^= b
        g = prod
    assert all(c in (0, 1) for c in g) and len(g) == 21
    return np.array(g, dtype=np.uint8)


def extended_bch_32_11():
    """BCH(31,11,11) extended by an overall parity bit -> (32,11,12)."""
    g = _bch_31_11_generator()
    G = np.zeros((11, 31), dtype=np.uint8)
    for i in range(11):
        G[i, i:i + 21] = g
    Ge = np.hstack([G, (G.sum(axis=1) % 2)[:, None].astype(np.uint8)])
    return BinaryLinearCode(32, 11, 12, Ge, name="eBCH")


def extended_bch_subcode_32_6():
    """The (32,6,16) subcode of extended_bch_32_11: parity-extended words
    Tr(b alpha^i) for b in GF(2^5), plus the all-ones word."""
    from . import gf
    F = gf.Field(5)

    def trace(a):
        t, y = 0, a
        for _ in range(5):
            t ^= y
            y = F.mul(y, y)
        return t

    rows = []
    for bexp in range(5):
        b = F.alpha_pow(bexp)
        c = np.array([trace(F.mul(b, F.alpha_pow(i))) for i in range(31)], dtype=np.uint8)
        rows.append(np.append(c, c.sum() % 2).astype(np.uint8))
    rows.append(np.ones(32, dtype=np.uint8))
    return BinaryLinearCode(32, 6, 16, np.array(rows), name="eBCHsub")

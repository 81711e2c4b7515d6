"""Reed-Solomon codes in the DFT view, error/erasure decoding and
power decoding.

A codeword is the time-domain word c_i = C(alpha^i) of a spectrum
polynomial C(x) with deg C < k; equivalently the evaluations of C at
the n = 2^m - 1 nonzero field points.  The singly-extended variant adds
the evaluation at 0 (= C_0) as a final coordinate, reaching length
2^m with d = n - k + 1; it is decoded by declaring the extension
coordinate an erasure, which costs one unit of decoding radius.

Error/erasure decoding solves the key equation on erasure-modified
syndromes by plain linear algebra over the field: the error-locator
coefficients are obtained from an (overdetermined) Toeplitz system,
candidate error counts are scanned upward until the system is
consistent, and the result is verified by locating roots, solving for
the error/erasure values, and a final re-encode distance check.

Power decoding forms the coefficient-wise powers y^l (noisy words of
RS(n, l(k-1)+1) sharing the error support) and solves one joint key
equation over all power syndromes, which corrects beyond half the
minimum distance for low-rate codes.
"""

import math

import numpy as np

from . import gf
from .linear import ERASURE


def power_radius(n, k, ell):
    """Decoding radius of power decoding with l powers."""
    if ell < 1 or ell * (k - 1) + 1 > n:
        raise ValueError("ell violates the spectrum-degree constraint")
    return (2 * ell * n - ell * (ell + 1) * k + ell * (ell - 1)) // (2 * (ell + 1))


def power_lmax(n, k):
    """Largest useful number of powers for RS(n, k)."""
    if k < 2:
        return n - 1 if k == 1 else 0
    gain = int((math.isqrt((k + 3) ** 2 + 8 * (k - 1) * (n - 1)) - (k + 3)) // (2 * (k - 1)))
    spectrum = (n - 1) // (k - 1)
    return max(1, min(gain, spectrum))


class RsCode:
    """RS code over GF(2^m): n = 2^m - 1 (base) or n = 2^m (extended)."""

    def __init__(self, field, n, k):
        if not 1 <= k <= n:
            raise ValueError("require 1 <= k <= n")
        if n == field.n:
            self.extended = False
        elif n == field.q:
            self.extended = True
        else:
            raise ValueError("n must be 2^m - 1 or 2^m (use shorten() for other lengths)")
        self.field = field
        self.n = n
        self.k = k
        self.d = n - k + 1
        self._base_n = field.n

    def encode(self, info):
        info = np.asarray(info, dtype=np.int64)
        if len(info) != self.k:
            raise ValueError("info length must equal k")
        c = gf.idft(self.field, info)
        if self.extended:
            c = np.append(c, info[0])  # evaluation at 0 is C_0
        return c

    def spectrum_to_codeword(self, C):
        c = gf.idft(self.field, C)
        if self.extended:
            c = np.append(c, C[0] if len(C) else 0)
        return c

    # ---- error/erasure decoding --------------------------------------------

    def decode_ee(self, y):
        """Bounded-distance error/erasure decode.

        y is length n over field ints with ERASURE (-1) at erased
        positions.  Returns (codeword, info) or None on failure.
        Success is guaranteed when 2*tau + delta < d for the base code
        (one less than d for the extended code, whose last coordinate is
        always treated as an erasure).
        """
        F = self.field
        y = np.asarray(y, dtype=np.int64)
        if len(y) != self.n:
            raise ValueError("word length mismatch")
        yb = y[:self._base_n].copy()
        erased = np.nonzero(yb == ERASURE)[0]
        delta = len(erased)
        nb, k = self._base_n, self.k
        if nb - k - delta < 0:
            return None
        filled = yb.copy()
        filled[erased] = 0
        R = gf.dft(F, filled)
        S = R.copy()  # syndromes live at indices [k, nb)

        gamma = _locator(F, erased)
        T = _mod_syndromes(F, S, gamma, k, delta, nb)

        tau_max = (nb - k - delta) // 2
        for tau in range(tau_max + 1):
            res = self._try_tau(yb, filled, S, T, erased, delta, tau)
            if res is not None:
                return res
        return None

    def _try_tau(self, yb, filled, S, T, erased, delta, tau):
        F, nb, k = self.field, self._base_n, self.k
        lam = _solve_locator(F, T, k + delta, nb, tau)
        if lam is None:
            return None
        roots = _chien(F, lam, erased, nb)
        if len(roots) != tau:
            return None
        positions = np.concatenate([roots, erased]).astype(np.int64)
        e = _solve_values(F, S, positions, k, nb)
        if e is None:
            return None
        chat = filled ^ e
        # miscorrection guard: residual over non-erased positions <= tau
        known = np.ones(nb, dtype=bool)
        known[erased] = False
        if int((chat[known] != yb[known]).sum()) > tau:
            return None
        C = gf.dft(F, chat)
        if np.any(C[k:]):
            return None
        info = C[:k]
        return self.spectrum_to_codeword(info) if self.extended else chat, info

    # ---- power decoding ----------------------------------------------------

    def power_decode(self, y, ell_max=None):
        """Joint power decoding; erasures handled via modified syndromes.

        Scans the error count upward solving the joint key equation
        over all power syndromes; the l = 1 block alone reproduces
        classical bounded-distance decoding, so every pattern with
        2*tau + delta < d still decodes.  Returns (codeword, info) or
        None.
        """
        F = self.field
        y = np.asarray(y, dtype=np.int64)
        nb, k = self._base_n, self.k
        if ell_max is None:
            ell_max = power_lmax(nb, k)
        if ell_max > power_lmax(nb, k):
            raise ValueError("ell_max exceeds the admissible number of powers")
        yb = y[:nb].copy()
        erased = np.nonzero(yb == ERASURE)[0]
        delta = len(erased)
        filled = yb.copy()
        filled[erased] = 0
        gamma = _locator(F, erased)

        S_all, T_all, klist = [], [], []
        for ell in range(1, ell_max + 1):
            k_ell = ell * (k - 1) + 1
            if k_ell + delta >= nb:
                break
            p = filled.copy()
            for _ in range(ell - 1):
                p = F.vmul(p, filled)
            S = gf.dft(F, p)
            S_all.append(S)
            T_all.append(_mod_syndromes(F, S, gamma, k_ell, delta, nb))
            klist.append(k_ell)
        if not S_all:
            return None

        tau = 0
        while True:
            eqs = sum(max(0, nb - kl - delta - tau) for kl in klist)
            if eqs < tau:
                return None
            lam = _solve_locator_joint(F, T_all, klist, delta, nb, tau)
            if lam is not None:
                roots = _chien(F, lam, erased, nb)
                if len(roots) == tau:
                    positions = np.concatenate([roots, erased]).astype(np.int64)
                    e = _solve_values(F, S_all[0], positions, k, nb)
                    if e is not None:
                        chat = filled ^ e
                        known = np.ones(nb, dtype=bool)
                        known[erased] = False
                        if int((chat[known] != yb[known]).sum()) <= tau:
                            C = gf.dft(F, chat)
                            if not np.any(C[k:]):
                                info = C[:k]
                                return (self.spectrum_to_codeword(info) if self.extended else chat), info
            tau += 1

    def shorten(self, positions):
        return ShortenedRsCode(self, positions)

    def __repr__(self):
        return "RS(2^%d;%d,%d,%d)" % (self.field.m, self.n, self.k, self.d)


class ShortenedRsCode:
    """Length reduction by dropping coordinates of a parent RS code.

    The dropped coordinates are simply not transmitted; the decoder
    re-inserts them as erasures, so 2*tau + delta on the remaining
    positions must stay below d_parent - |dropped| (minus one more for
    an extended parent).
    """

    def __init__(self, parent, positions):
        positions = sorted(set(int(p) for p in positions))
        if len(positions) >= parent.n - parent.k:
            raise ValueError("too many positions removed")
        if positions and not 0 <= positions[0] <= positions[-1] < parent.n:
            raise ValueError("positions out of range")
        self.parent = parent
        self.field = parent.field
        self.dropped = np.array(positions, dtype=np.int64)
        keep = np.ones(parent.n, dtype=bool)
        keep[self.dropped] = False
        self.keep = np.nonzero(keep)[0]
        self.n = parent.n - len(positions)
        self.k = parent.k
        self.d = parent.d - len(positions)

    def encode(self, info):
        return self.parent.encode(info)[self.keep]

    def decode_ee(self, y):
        full = np.full(self.parent.n, ERASURE, dtype=np.int64)
        full[self.keep] = np.asarray(y, dtype=np.int64)
        res = self.parent.decode_ee(full)
        if res is None:
            return None
        chat, info = res
        return chat[self.keep], info

    def __repr__(self):
        return "RS(2^%d;%d,%d,%d)" % (self.field.m, self.n, self.k, self.d)


# ---- helpers ----------------------------------------------------------------

def _locator(F, positions):
    """prod_{i in positions} (1 - X_i x) with X_i = alpha^{-i}."""
    g = np.array([1], dtype=np.int64)
    for i in positions:
        Xi = F.alpha_pow(-int(i))
        g2 = np.zeros(len(g) + 1, dtype=np.int64)
        g2[:-1] = g
        g2[1:] ^= F.vscale(Xi, g)
        g = g2
    return g


def _mod_syndromes(F, S, gamma, k, delta, nb):
    """T_j = sum_l gamma_l S_{j-l}, valid for j in [k + delta, nb)."""
    T = np.zeros(nb, dtype=np.int64)
    for j in range(k + delta, nb):
        acc = 0
        for l in range(delta + 1):
            acc ^= F.mul(int(gamma[l]), int(S[j - l]))
        T[j] = acc
    return T


def _solve_locator(F, T, lo, nb, tau):
    """Lambda_1..Lambda_tau from sum_l Lambda_l T_{j-l} = 0, j in [lo+tau, nb)."""
    rows = nb - lo - tau
    if rows < tau:
        return None
    if tau == 0:
        return np.array([1], dtype=np.int64) if not np.any(T[lo:nb]) else None
    A = np.zeros((rows, tau), dtype=np.int64)
    b = np.zeros(rows, dtype=np.int64)
    for r, j in enumerate(range(lo + tau, nb)):
        A[r] = T[j - 1:j - tau - 1:-1] if tau > 1 else T[j - 1]
        b[r] = T[j]
    sol = F.solve(A, b)
    if sol is None:
        return None
    return np.concatenate([[1], sol])


def _solve_locator_joint(F, T_all, klist, delta, nb, tau):
    """Joint key equation over all power syndrome sequences."""
    if tau == 0:
        ok = all(not np.any(T[kl + delta:nb]) for T, kl in zip(T_all, klist))
        return np.array([1], dtype=np.int64) if ok else None
    blocks_A, blocks_b = [], []
    for T, kl in zip(T_all, klist):
        lo = kl + delta
        rows = nb - lo - tau
        if rows <= 0:
            continue
        A = np.zeros((rows, tau), dtype=np.int64)
        b = np.zeros(rows, dtype=np.int64)
        for r, j in enumerate(range(lo + tau, nb)):
            A[r] = T[j - 1:j - tau - 1:-1] if tau > 1 else T[j - 1]
            b[r] = T[j]
        blocks_A.append(A)
        blocks_b.append(b)
    if not blocks_A:
        return None
    A = np.vstack(blocks_A)
    b = np.concatenate(blocks_b)
    if A.shape[0] < tau:
        return None
    sol = F.solve(A, b)
    if sol is None:
        return None
    return np.concatenate([[1], sol])


def _chien(F, lam, erased, nb):
    """Positions i (not erased) with Lambda(alpha^i) = 0."""
    ex = set(int(i) for i in erased)
    roots = []
    for i in range(nb):
        if i in ex:
            continue
        if gf.poly_eval(F, lam, F.alpha_pow(i)) == 0:
            roots.append(i)
    return np.array(roots, dtype=np.int64)


def _solve_values(F, S, positions, k, nb):
    """Error word from syndromes S_j = sum_i v_i X_i^j, j in [k, nb)."""
    if len(positions) == 0:
        return np.zeros(nb, dtype=np.int64) if not np.any(S[k:nb]) else None
    js = np.arange(k, nb)
    logX = (-positions) % F.n  # log of X_i = alpha^{-i}
    A = F.exp[(np.outer(js, logX)) % F.n]
    sol = F.solve(A, S[k:nb])
    if sol is None:
        return None
    e = np.zeros(nb, dtype=np.int64)
    e[positions] = sol
    return e

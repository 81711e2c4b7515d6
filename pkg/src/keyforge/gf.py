"""Arithmetic in GF(2^m) and the DFT pair used to define Reed-Solomon codes.

Field elements are integers in [0, 2^m) encoding polynomial-basis
coordinates, and all multiplicative structure is driven by log/antilog
tables built once at field construction.  A thin :class:`FieldElement`
wrapper is provided for callers that prefer operator syntax; the heavy
lifting (decoders, linear algebra) works on plain integer numpy arrays.
"""

import numpy as np

# Minimal-weight primitive polynomial for each extension degree.  The bit
# encoding includes the leading term, e.g. 0b100101 = x^5 + x^2 + 1.
DEFAULT_POLYS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


class Field:
    """GF(2^m) with precomputed exp/log tables.

    Parameters
    ----------
    m : int
        Extension degree, 1 <= m <= 16.
    primitive_poly : int, optional
        Bit-encoded defining polynomial of degree m.  Must be primitive
        (x must generate the multiplicative group); defaults to a
        conventional minimal-weight choice per m.
    """

    def __init__(self, m, primitive_poly=None):
        if not 1 <= m <= 16:
            raise ValueError("extension degree m must be in [1, 16]")
        if primitive_poly is None:
            primitive_poly = DEFAULT_POLYS[m]
        if primitive_poly.bit_length() != m + 1:
            raise ValueError("primitive_poly must have degree m")
        self.m = m
        self.poly = primitive_poly
        self.q = 1 << m
        self.n = self.q - 1  # multiplicative order
        self.generator = 2 % self.q  # alpha = x (alpha = 1 in GF(2))

        exp = np.zeros(2 * self.n, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(self.n):
            if x == 1 and i > 0:
                raise ValueError("polynomial is not primitive over GF(2)")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.q:
                x ^= primitive_poly
        if x != 1:
            raise ValueError("polynomial is not primitive over GF(2)")
        exp[self.n:] = exp[:self.n]
        self.exp = exp
        self.log = log
        self._dft_cache = {}

    # ---- scalar operations -------------------------------------------------

    def add(self, a, b):
        return a ^ b

    sub = add

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        return int(self.exp[self.n - self.log[a]])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero in GF(2^m)")
            return 0 if e else 1
        return int(self.exp[(int(self.log[a]) * e) % self.n])

    def alpha_pow(self, e):
        """alpha^e for any integer exponent e."""
        return int(self.exp[e % self.n])

    def element(self, value):
        return FieldElement(self, value)

    # ---- vectorized operations (int arrays) --------------------------------

    def vmul(self, a, b):
        """Elementwise product of two integer arrays of field elements."""
        a = np.asarray(a)
        b = np.asarray(b)
        nz = (a != 0) & (b != 0)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        idx = self.log[a * nz] + self.log[b * nz]
        np.copyto(out, self.exp[idx], where=nz)
        return out

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        return self.exp[self.n - self.log[a]]

    def vscale(self, s, a):
        """Scalar s times integer array a."""
        if s == 0:
            return np.zeros_like(np.asarray(a))
        a = np.asarray(a)
        nz = a != 0
        out = np.zeros(a.shape, dtype=np.int64)
        np.copyto(out, self.exp[self.log[a * nz] + self.log[s]], where=nz)
        return out

    # ---- linear algebra ----------------------------------------------------

    def solve(self, A, b):
        """Solve A x = b over the field by Gaussian elimination.

        A is (rows, cols) with rows >= cols allowed (overdetermined).
        Returns the solution vector, or None if the system is singular
        or inconsistent.
        """
        A = np.array(A, dtype=np.int64)
        b = np.array(b, dtype=np.int64)
        rows, cols = A.shape
        M = np.hstack([A, b[:, None]])
        piv_rows = []
        r = 0
        for c in range(cols):
            pool = np.nonzero(M[r:, c])[0]
            if pool.size == 0:
                return None  # singular in this column
            p = r + pool[0]
            if p != r:
                M[[r, p]] = M[[p, r]]
            M[r] = self.vscale(self.inv(int(M[r, c])), M[r])
            below = np.nonzero(M[r + 1:, c])[0] + r + 1
            if below.size:
                M[below] ^= self.vmul(M[below, c][:, None], M[r][None, :])
            piv_rows.append(r)
            r += 1
        # consistency of leftover rows
        if r < rows and np.any(M[r:, cols]):
            return None
        # back substitution
        x = np.zeros(cols, dtype=np.int64)
        for c in range(cols - 1, -1, -1):
            rr = piv_rows[c]
            acc = int(M[rr, cols])
            if c + 1 < cols:
                acc ^= int(np.bitwise_xor.reduce(self.vmul(M[rr, c + 1:cols], x[c + 1:])))
            x[c] = acc
        return x

    def __repr__(self):
        return "GF(2^%d, poly=0x%x)" % (self.m, self.poly)

    def __eq__(self, other):
        return isinstance(other, Field) and (self.m, self.poly) == (other.m, other.poly)

    def __hash__(self):
        return hash((self.m, self.poly))


class FieldElement:
    """Operator-syntax wrapper around an integer field element."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        if not 0 <= value < field.q:
            raise ValueError("value out of range for field")
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement(self.field, self.value ^ self._coerce(other))

    __sub__ = __add__
    __radd__ = __add__

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return "FieldElement(%d, GF(2^%d))" % (self.value, self.field.m)


# ---- polynomials and the DFT pair ------------------------------------------

def poly_deg(c):
    """Degree of an integer-coefficient polynomial, -1 for the zero poly."""
    nz = np.nonzero(np.asarray(c))[0]
    return int(nz[-1]) if nz.size else -1


def poly_eval(field, c, x):
    """Evaluate c(x) by Horner's rule; c lowest-degree first."""
    acc = 0
    for coef in reversed(np.asarray(c, dtype=np.int64)):
        acc = field.mul(acc, x) ^ int(coef)
    return acc


def _exp_matrix(field, sign):
    """Cached n x n matrix of exponents sign*i*j mod n."""
    M = field._dft_cache.get(sign)
    if M is None:
        j = np.arange(field.n)
        M = (sign * np.outer(j, j)) % field.n
        field._dft_cache[sign] = M
    return M


def _transform(field, c, sign):
    n = field.n
    c = np.asarray(c, dtype=np.int64)
    if poly_deg(c) >= n:
        raise ValueError("polynomial degree must be < n")
    c = np.pad(c, (0, n - len(c)))
    E = _exp_matrix(field, sign)
    terms = np.where(c[None, :] != 0, field.exp[field.log[c][None, :] + E], 0)
    return np.bitwise_xor.reduce(terms, axis=1)


def dft(field, c, n=None):
    """Spectrum C of a time-domain word c: C_j = n^{-1} c(alpha^{-j}).

    n must equal 2^m - 1; since n is odd, n^{-1} = 1 in characteristic 2
    and the scaling disappears.
    """
    if n is not None and n != field.n:
        raise ValueError("DFT length must be 2^m - 1")
    return _transform(field, c, -1)


def idft(field, C, n=None):
    """Time-domain word c of a spectrum C: c_i = C(alpha^i)."""
    if n is not None and n != field.n:
        raise ValueError("DFT length must be 2^m - 1")
    return _transform(field, C, +1)

"""Channel models and the inner-decoder channel transform.

The BSC flips bits independently; the error/erasure channel erases or
corrupts symbols independently.  Randomness comes from counter-based
Philox streams keyed by (seed, stream_id), so identical keys reproduce
identical sample sequences on every platform.
"""

from dataclasses import dataclass

import numpy as np

from .linear import ERASURE, pack_words


class RngStream:
    """Reproducible random stream: identical (seed, stream_id) ->
    identical samples."""

    def __init__(self, seed, stream_id=0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.gen = np.random.Generator(np.random.Philox(key=[self.seed, self.stream_id]))

    def spawn(self, stream_id):
        """Independent stream derived from the same seed."""
        return RngStream(self.seed, stream_id)


@dataclass
class Bsc:
    p: float

    def __post_init__(self):
        if not 0 <= self.p <= 0.5:
            raise ValueError("crossover probability must be in [0, 0.5]")


@dataclass
class ErrorErasureChannel:
    p_err: float
    p_eras: float

    def __post_init__(self):
        if min(self.p_err, self.p_eras) < 0 or self.p_err + self.p_eras > 1:
            raise ValueError("invalid channel probabilities")


def bsc_sample(word, p, rng):
    """Flip each bit of `word` independently with probability p."""
    if not 0 <= p <= 0.5:
        raise ValueError("crossover probability must be in [0, 0.5]")
    word = np.asarray(word)
    flips = rng.gen.random(word.shape) < p
    return (word ^ flips).astype(word.dtype)


def eec_sample(word, ch, rng, q=2):
    """Pass symbols through an error/erasure channel.

    Each symbol is independently erased with probability p_eras or
    replaced by a uniformly random different symbol (of an alphabet of
    size q) with probability p_err.
    """
    word = np.asarray(word, dtype=np.int64)
    u = rng.gen.random(word.shape)
    out = word.copy()
    err = u < ch.p_err
    if err.any():
        if q == 2:
            out[err] ^= 1
        else:
            # uniform over the q-1 other symbols, via a nonzero XOR offset
            out[err] ^= rng.gen.integers(1, q, size=int(err.sum()))
    eras = (u >= ch.p_err) & (u < ch.p_err + ch.p_eras)
    out[eras] = ERASURE
    return out


@dataclass
class TransformEstimate:
    p_err: float
    p_eras: float
    err_radius: float
    eras_radius: float
    trials: int


def _normal_radius(phat, trials):
    # 95% normal-approximation confidence radius
    return 1.96 * np.sqrt(max(phat * (1 - phat), 1e-300) / trials)


def estimate_transform(code, p, trials, rng, chunk=1 << 13, codebook=None):
    """Channel transform induced by inner ML decoding over BSC(p).

    Random codewords (from `codebook`, default the code's own) are sent
    through the BSC and ML-decoded; outcomes are classified as correct,
    error (wrong codeword) or erasure (distance tie).  Returns the
    error/erasure frequencies with 95% confidence radii.
    """
    if codebook is None:
        codebook = code.codebook
    packed = pack_words(codebook, code.n)
    nerr = neras = 0
    done = 0
    while done < trials:
        b = min(chunk, trials - done)
        done += b
        sent = rng.gen.integers(0, codebook.shape[0], size=b)
        words = codebook[sent].astype(np.int8)
        noisy = bsc_sample(words, p, rng)
        idx, dist, tie = code.ml_decode_batch(noisy, codebook=codebook, packed=packed)
        neras += int(tie.sum())
        nerr += int((~tie & (idx != sent)).sum())
    p_err = nerr / trials
    p_eras = neras / trials
    return TransformEstimate(p_err, p_eras,
                             _normal_radius(p_err, trials),
                             _normal_radius(p_eras, trials), trials)


def estimate_label_transform(partition, p, trials, rng, chunk=1 << 13):
    """Label-level transform of ML decoding over a partitioned code (the
    staged channel of later GC levels, conditioned on the earlier levels
    having decoded correctly).

    Random parent codewords go through BSC(p) and are ML-decoded over
    the full parent codebook; an outcome counts as an error only when
    the decoded coset label differs from the sent one (a wrong codeword
    inside the right coset leaves the label intact), and as an erasure
    on a distance tie.
    """
    code = partition.parent
    labels = partition.codebook_labels
    codebook = code.codebook
    packed = code.packed_codebook
    nerr = neras = 0
    done = 0
    while done < trials:
        b = min(chunk, trials - done)
        done += b
        sent = rng.gen.integers(0, codebook.shape[0], size=b)
        noisy = bsc_sample(codebook[sent].astype(np.int8), p, rng)
        idx, dist, tie = code.ml_decode_batch(noisy, codebook=codebook, packed=packed)
        neras += int(tie.sum())
        nerr += int((~tie & (labels[idx] != labels[sent])).sum())
    p_err = nerr / trials
    p_eras = neras / trials
    return TransformEstimate(p_err, p_eras,
                             _normal_radius(p_err, trials),
                             _normal_radius(p_eras, trials), trials)

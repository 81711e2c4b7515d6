"""Code-offset fuzzy extractor: helper-data generation, key
reproduction, and hashing.

Enrollment draws a random codeword c of the chosen code and publishes
the offset e = r XOR c; the key is a hash of the response r.
Reproduction decodes r' XOR e back to c-hat, reconstructs
r-hat = c-hat XOR e and hashes it, yielding the enrolled key whenever
decoding recovers the original codeword.
"""

import binascii
import hashlib
import struct
from dataclasses import dataclass

import numpy as np

from . import gc as gc_mod

HASH_ID = "sha256/128"

MAGIC = b"PUFH"
VERSION = 1


@dataclass
class HelperData:
    code_id: str
    n: int
    offset: np.ndarray  # bit vector, uint8

    def __eq__(self, other):
        return (isinstance(other, HelperData) and self.code_id == other.code_id
                and self.n == other.n and np.array_equal(self.offset, other.offset))


@dataclass
class KeyMaterial:
    key: bytes  # 16 bytes
    hash_id: str = HASH_ID


def pack_bits(bits):
    """MSB-first bit packing into ceil(n/8) bytes, zero-padded."""
    bits = np.asarray(bits, dtype=np.uint8)
    return np.packbits(bits).tobytes()


def unpack_bits(data, n):
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), count=n)
    return bits.astype(np.uint8)


def hash_bits(bits):
    """SHA-256 of the MSB-first packed bits, truncated to 128 bits."""
    return hashlib.sha256(pack_bits(bits)).digest()[:16]


def gen(response, code, rng):
    """Enroll a response; returns (HelperData, KeyMaterial).

    The helper data retains neither the response nor the codeword.
    """
    response = np.asarray(response, dtype=np.uint8)
    if len(response) != code.n:
        raise ValueError("response length must be %d" % code.n)
    info = (rng.gen.random(code.k) < 0.5).astype(np.uint8)
    c = code.encode(info).reshape(-1)
    offset = response ^ c
    return (HelperData(code.name, code.n, offset),
            KeyMaterial(hash_bits(response)))


def rep(response2, helper, gmd=True):
    """Reproduce the key from a noisy response; None on decode failure."""
    code = gc_mod.preset(helper.code_id)
    if isinstance(code, gc_mod.ReferenceParams):
        raise ValueError("preset %r has no decoder" % helper.code_id)
    response2 = np.asarray(response2, dtype=np.uint8)
    if len(response2) != helper.n or helper.n != code.n:
        raise ValueError("response length must be %d" % helper.n)
    noisy = (response2 ^ helper.offset).reshape(code.n_o, code.n_i)
    _, chat, fail_level = code.decode(noisy.astype(np.int8), gmd=gmd)
    if fail_level is not None:
        return None
    rhat = chat.reshape(-1) ^ helper.offset
    return KeyMaterial(hash_bits(rhat))


# ---- helper-data file format ------------------------------------------------
#
# magic "PUFH" | version 0x01 | len byte + ASCII code id | n as u32 BE |
# offset bits packed MSB-first (ceil(n/8) bytes) | CRC-32 (IEEE) BE of
# all preceding bytes.

def serialize_helper(helper):
    cid = helper.code_id.encode("ascii")
    if len(cid) > 255:
        raise ValueError("code id too long")
    body = MAGIC + bytes([VERSION, len(cid)]) + cid + struct.pack(">I", helper.n)
    body += pack_bits(helper.offset)
    return body + struct.pack(">I", binascii.crc32(body) & 0xFFFFFFFF)


class HelperFormatError(ValueError):
    pass


def parse_helper(data):
    if len(data) < 14 or data[:4] != MAGIC:
        raise HelperFormatError("not a helper-data file")
    if data[4] != VERSION:
        raise HelperFormatError("unsupported version %d" % data[4])
    clen = data[5]
    pos = 6 + clen
    code_id = data[6:pos].decode("ascii")
    (n,) = struct.unpack(">I", data[pos:pos + 4])
    pos += 4
    nbytes = (n + 7) // 8
    if len(data) != pos + nbytes + 4:
        raise HelperFormatError("truncated helper-data file")
    (crc,) = struct.unpack(">I", data[-4:])
    if binascii.crc32(data[:-4]) & 0xFFFFFFFF != crc:
        raise HelperFormatError("CRC mismatch")
    offset = unpack_bits(data[pos:pos + nbytes], n)
    return HelperData(code_id, n, offset)

"""Channel-coding toolkit for PUF-based key reproduction.

Modules
-------
gf        GF(2^m) arithmetic and the DFT pair behind the RS code view.
linear    Binary linear codes, exhaustive ML decoding, coset partitions.
rm        Reed-Muller codes with the recursive error/erasure decoder.
rs        Reed-Solomon codes: error/erasure decoding and power decoding.
gc        Generalized concatenated codes, GMD, preset constructions.
channel   BSC / error-erasure channels and the ML channel transform.
analysis  High-precision stage failure probabilities and Monte-Carlo.
extractor Code-offset fuzzy extractor and the helper-data file format.
cli       Command-line front end (`keyforge`).
"""

__version__ = "0.1.0"

from .gf import Field, FieldElement, dft, idft
from .linear import (ERASURE, BinaryLinearCode, CosetPartition,
                     extended_bch_32_11, extended_bch_subcode_32_6,
                     parity_check_code, repetition_code, simplex_code)
from .rm import RmCode
from .rs import RsCode, power_lmax, power_radius
from .gc import GcCode, gmd_decode, preset
from .channel import Bsc, ErrorErasureChannel, RngStream, bsc_sample, eec_sample, estimate_transform
from .analysis import (StageModel, monte_carlo_block_error, radius_table,
                       stage_fail_prob, union_bound)
from .extractor import HelperData, KeyMaterial, gen, parse_helper, rep, serialize_helper

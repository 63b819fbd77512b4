"""k-ary one-to-one codes and prefix codes with a trailing space mark."""

from .bounds import BoundsReport, full_report
from .errors import (
    BudgetExceeded,
    InvalidAlphabet,
    InvalidDistribution,
    InvalidIndex,
    InvalidPairing,
    InvalidProbability,
    InvalidSpec,
    MalformedStream,
    NotPrefixFree,
    SpaceCodeError,
    UnknownSymbol,
)
from .oracle import exact_optimum, gap_certificate
from .radix_codebook import OneToOneCode, assign_one_to_one, average_length
from .source_model import SourceDistribution, entropy, load_distribution, normalize
from .space_code import (
    SpaceCodebook,
    StreamDecoder,
    average_length_space,
    build_space_code,
    decode,
    encode,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "BudgetExceeded",
    "InvalidAlphabet",
    "InvalidDistribution",
    "InvalidIndex",
    "InvalidPairing",
    "InvalidProbability",
    "InvalidSpec",
    "MalformedStream",
    "NotPrefixFree",
    "OneToOneCode",
    "SourceDistribution",
    "SpaceCodeError",
    "SpaceCodebook",
    "StreamDecoder",
    "UnknownSymbol",
    "assign_one_to_one",
    "average_length",
    "average_length_space",
    "build_space_code",
    "decode",
    "encode",
    "entropy",
    "exact_optimum",
    "full_report",
    "gap_certificate",
    "load_distribution",
    "normalize",
]

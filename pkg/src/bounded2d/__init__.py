"""Codec for n x n binary arrays whose rows and columns have weight at most f(n)."""

from .bitcore import BitGrid, BitSeq, ColView
from .codec2d import CodeParams, decode, derive_params, encode, verify_membership
from .errors import (
    CodecError,
    CorruptCodewordError,
    InfeasibleParametersError,
    ParameterError,
    UsageError,
)

__all__ = [
    "BitGrid",
    "BitSeq",
    "ColView",
    "CodeParams",
    "derive_params",
    "encode",
    "decode",
    "verify_membership",
    "CodecError",
    "CorruptCodewordError",
    "InfeasibleParametersError",
    "ParameterError",
    "UsageError",
]

__version__ = "0.1.0"

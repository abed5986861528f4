"""Steerable DFT (SDFT): 1D/2D transforms, applications and graph checks."""

from .apps import (
    ScramblePayload,
    check_scramble_key,
    descramble,
    keygen,
    keygen_2d,
    parity_filter_1d,
    parity_filter_2d,
    scramble,
)
from .core import (
    basis_row_1d,
    basis_row_2d,
    dft_forward_1d,
    dft_forward_2d,
    dft_inverse_1d,
    dft_inverse_2d,
)
from .errors import (
    DegenerateKeyError,
    InvalidInputError,
    SDFTError,
    SizeMismatchError,
    UnsupportedSizeError,
    VerificationError,
)
from .sdft1d import (
    RotationKind,
    ThetaKey1D,
    coefficient_trace,
    cosine_transform,
    hilbert,
    hilbert_real_part,
    pair_table_1d,
    rotate_pair,
    sdft_forward_1d,
    sdft_inverse_1d,
    sine_transform,
)
from .sdft2d import (
    PairMode,
    ThetaKey2D,
    compact_spectrum_2d,
    compaction_angle,
    pair_table_2d,
    real_imag_rotation_check,
    sdft_forward_2d,
    sdft_inverse_2d,
)

__version__ = "0.1.0"

"""Two-dimensional steerable DFT on N x N grids.

The torus Laplacian has eigenvalue ``lambda_p + lambda_q`` on the 2D DFT row
``(p, q)``.  Two families of rows share an eigenvalue pairwise and are rotated
here:

* symmetric mode: ``(p, q) <-> (q, p)`` for ``p < q``;
* conjugate mode: ``(p, q) <-> (-p mod N, -q mod N)``, the 2D analogue of the
  1D ``(k, N - k)`` pairing.

Both modes may be applied in one transform; the symmetric pass always runs
first and the two passes do not commute in general.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .core import as_real_2d, as_signal_2d, dft_matrix_2d, require_sdft_size
from .errors import InvalidInputError, SizeMismatchError
from .sdft1d import reduce_angles

__all__ = [
    "PairMode",
    "PairTable2D",
    "ThetaKey2D",
    "pair_table_2d",
    "rotate_spectrum_2d",
    "sdft_forward_2d",
    "sdft_inverse_2d",
    "sdft_matrix_2d",
    "real_imag_rotation_check",
    "RotationCheck",
    "compaction_angle",
    "compact_spectrum_2d",
]


class PairMode(enum.Enum):
    SYMMETRIC = "2d-sym"
    CONJUGATE = "2d-conj"


Index2 = tuple[int, int]


@dataclass(frozen=True)
class PairTable2D:
    """Rotated index pairs in lexicographic order of their first member."""

    n: int
    mode: PairMode
    pairs: tuple[tuple[Index2, Index2], ...]
    fixed_indices: tuple[Index2, ...]

    @cached_property
    def first_flat(self) -> np.ndarray:
        return np.array([p * self.n + q for (p, q), _ in self.pairs], dtype=np.intp)

    @cached_property
    def second_flat(self) -> np.ndarray:
        return np.array([p * self.n + q for _, (p, q) in self.pairs], dtype=np.intp)


def _symmetric_table(n: int) -> PairTable2D:
    pairs = tuple(((p, q), (q, p)) for p in range(n) for q in range(p + 1, n))
    return PairTable2D(n, PairMode.SYMMETRIC, pairs, tuple((p, p) for p in range(n)))


def _conjugate_table(n: int) -> PairTable2D:
    pairs, fixed = [], []
    for p in range(n):
        for q in range(n):
            partner = ((-p) % n, (-q) % n)
            if partner == (p, q):
                fixed.append((p, q))
            elif (p, q) < partner:
                pairs.append(((p, q), partner))
    return PairTable2D(n, PairMode.CONJUGATE, tuple(pairs), tuple(fixed))


_TABLE_BUILDERS = {PairMode.SYMMETRIC: _symmetric_table, PairMode.CONJUGATE: _conjugate_table}
_table_cache: dict[tuple[int, PairMode], PairTable2D] = {}


def pair_table_2d(n: int, mode: PairMode = PairMode.SYMMETRIC) -> PairTable2D:
    """Enumerate the rotated pairs of one mode.  Tables are cached and immutable."""
    require_sdft_size(n)
    mode = PairMode(mode)
    table = _table_cache.get((n, mode))
    if table is None:
        table = _table_cache.setdefault((n, mode), _TABLE_BUILDERS[mode](n))
    return table


def pair_count_2d(n: int, mode: PairMode) -> int:
    if PairMode(mode) is PairMode.SYMMETRIC:
        return n * (n - 1) // 2
    return (n * n - 4) // 2


@dataclass(frozen=True, eq=False)
class ThetaKey2D:
    """Angles for one 2D pair mode, ordered like :func:`pair_table_2d`."""

    n: int
    mode: PairMode
    angles: np.ndarray = field(repr=False)

    def __post_init__(self):
        require_sdft_size(self.n)
        object.__setattr__(self, "mode", PairMode(self.mode))
        a = reduce_angles(self.angles)
        expected = pair_count_2d(self.n, self.mode)
        if a.ndim != 1 or a.size != expected:
            raise SizeMismatchError(
                f"{self.mode.value} key for N={self.n} needs {expected} angles, got {a.size}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)

    @classmethod
    def zeros(cls, n: int, mode: PairMode = PairMode.SYMMETRIC) -> "ThetaKey2D":
        return cls(n, mode, np.zeros(pair_count_2d(n, mode)))

    @classmethod
    def constant(cls, n: int, theta: float, mode: PairMode = PairMode.SYMMETRIC) -> "ThetaKey2D":
        return cls(n, mode, np.full(pair_count_2d(n, mode), float(theta)))

    @property
    def table(self) -> PairTable2D:
        return pair_table_2d(self.n, self.mode)

    @cached_property
    def cos(self) -> np.ndarray:
        return np.cos(self.angles)

    @cached_property
    def sin(self) -> np.ndarray:
        return np.sin(self.angles)

    def angle_of(self, first: Index2) -> float:
        """Angle attached to the pair whose first member is ``first``."""
        for i, (a, _) in enumerate(self.table.pairs):
            if a == tuple(first):
                return float(self.angles[i])
        raise InvalidInputError(f"{first} is not the first member of a {self.mode.value} pair")

    def __eq__(self, other):
        if not isinstance(other, ThetaKey2D):
            return NotImplemented
        return (self.n, self.mode) == (other.n, other.mode) and np.array_equal(
            self.angles, other.angles
        )

    __hash__ = None


KeyArg = Union[ThetaKey2D, Sequence[ThetaKey2D]]


def _ordered_keys(n: int, keys: KeyArg) -> list[ThetaKey2D]:
    if isinstance(keys, ThetaKey2D):
        keys = [keys]
    keys = list(keys)
    for key in keys:
        if not isinstance(key, ThetaKey2D):
            raise InvalidInputError(f"expected ThetaKey2D, got {type(key).__name__}")
        if key.n != n:
            raise SizeMismatchError(f"key is for N={key.n} but the grid is {n} x {n}")
    modes = [k.mode for k in keys]
    if len(set(modes)) != len(modes):
        raise SizeMismatchError("at most one key per pair mode")
    return sorted(keys, key=lambda k: k.mode is PairMode.CONJUGATE)


def _rotate_flat(flat: np.ndarray, key: ThetaKey2D, inverse: bool) -> None:
    table = key.table
    i, j = table.first_flat, table.second_flat
    c, s = key.cos, key.sin
    if flat.ndim == 2:
        c, s = c[:, None], s[:, None]
    a, b = flat[i], flat[j]
    if inverse:
        flat[i], flat[j] = c * a - s * b, s * a + c * b
    else:
        flat[i], flat[j] = c * a + s * b, c * b - s * a


def _apply_keys(flat: np.ndarray, ordered: list[ThetaKey2D], inverse: bool) -> None:
    for key in reversed(ordered) if inverse else ordered:
        _rotate_flat(flat, key, inverse)


def rotate_spectrum_2d(spectrum, keys: KeyArg, inverse: bool = False) -> np.ndarray:
    """Apply the pair rotations of ``keys`` to an N x N 2D DFT spectrum.

    Inverse mode applies the transposed rotations in reverse order.
    """
    s = np.array(spectrum, dtype=np.complex128)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise InvalidInputError(f"expected an N x N spectrum, got shape {s.shape}")
    n = require_sdft_size(s.shape[0])
    _apply_keys(s.reshape(-1), _ordered_keys(n, keys), inverse)
    return s


def sdft_forward_2d(x, keys: KeyArg) -> np.ndarray:
    """Forward 2D SDFT: 2D FFT followed by the pair rotations of ``keys``."""
    x = as_signal_2d(x)
    require_sdft_size(x.shape[0])
    return rotate_spectrum_2d(np.fft.fft2(x), keys)


def sdft_inverse_2d(s, keys: KeyArg) -> np.ndarray:
    s = as_signal_2d(s)
    require_sdft_size(s.shape[0])
    return np.fft.ifft2(rotate_spectrum_2d(s, keys, inverse=True))


def sdft_matrix_2d(keys: KeyArg) -> np.ndarray:
    """Dense N**2 x N**2 matrix ``R(theta) W``; row ``p*N + q`` is the basis row of coefficient (p, q)."""
    n = keys.n if isinstance(keys, ThetaKey2D) else next(iter(keys)).n
    ordered = _ordered_keys(n, keys)
    w = dft_matrix_2d(n)
    _apply_keys(w, ordered, inverse=False)
    return w


@dataclass(frozen=True)
class RotationCheck:
    """Deviations from separate rotation of real and imaginary parts."""

    max_real_deviation: float
    max_imag_deviation: float
    max_energy_deviation: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_real_deviation, self.max_imag_deviation)


def real_imag_rotation_check(x, key: ThetaKey2D) -> RotationCheck:
    """Check that each pair's real parts and imaginary parts rotate as separate 2D vectors.

    Compares the SDFT coefficients against the pair rotation applied to the
    real and imaginary parts of the DFT coefficients, and checks that each
    part's pair energy is unchanged.
    """
    x = as_real_2d(x)
    n = require_sdft_size(x.shape[0])
    _ordered_keys(n, key)
    before = np.fft.fft2(x).reshape(-1)
    after = sdft_forward_2d(x, key).reshape(-1)
    i, j = key.table.first_flat, key.table.second_flat
    c, s = key.cos, key.sin
    dev = []
    energy = 0.0
    for part in (np.real, np.imag):
        a, b = part(before[i]), part(before[j])
        a2, b2 = part(after[i]), part(after[j])
        dev.append(max(np.max(np.abs(a2 - (c * a + s * b)), initial=0.0),
                       np.max(np.abs(b2 - (c * b - s * a)), initial=0.0)))
        e0, e1 = a * a + b * b, a2 * a2 + b2 * b2
        energy = max(energy, np.max(np.abs(e1 - e0) / np.maximum(1.0, e0), initial=0.0))
    return RotationCheck(float(dev[0]), float(dev[1]), float(energy))


def compaction_angle(a: complex, b: complex) -> float:
    """Angle moving all real-part energy of the pair ``(a, b)`` into ``a``.

    ``atan2(Re b, Re a)``: after rotation ``Re b' = 0`` and
    ``Re a' = hypot(Re a, Re b) >= 0``.  Returns 0 when both real parts vanish.
    """
    ra, rb = complex(a).real, complex(b).real
    if ra == 0.0 and rb == 0.0:
        return 0.0
    return math.atan2(rb, ra)


def compact_spectrum_2d(x) -> tuple[np.ndarray, ThetaKey2D]:
    """Symmetric-mode SDFT of ``x`` with per-pair compaction angles.

    Returns the compacted spectrum and the key that produced it, so the
    signal can be recovered with ``sdft_inverse_2d(spectrum, key)``.
    """
    x = as_signal_2d(x)
    n = require_sdft_size(x.shape[0])
    flat = np.fft.fft2(x).reshape(-1)
    table = pair_table_2d(n, PairMode.SYMMETRIC)
    ra, rb = flat[table.first_flat].real, flat[table.second_flat].real
    angles = np.where((ra == 0.0) & (rb == 0.0), 0.0, np.arctan2(rb, ra))
    key = ThetaKey2D(n, PairMode.SYMMETRIC, angles)
    return rotate_spectrum_2d(flat.reshape(n, n), key), key


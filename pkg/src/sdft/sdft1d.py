"""One-dimensional steerable DFT.

The cycle-graph Laplacian has eigenvalue ``2 - 2cos(2 pi k / N)``, shared by
the DFT rows ``k`` and ``N - k`` for ``1 <= k <= N/2 - 1``.  Any 2x2 rotation
of such a pair is still an eigenbasis, so the transform is

    V(theta) x = R(theta) (V x),

an FFT followed by one Givens rotation per coefficient pair.  ``R(theta)`` is
never materialized outside :func:`sdft_matrix_1d`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import (
    as_real_1d,
    as_signal_1d,
    dft_inverse_1d,
    dft_matrix_1d,
    require_sdft_size,
)
from .errors import InvalidInputError, SizeMismatchError

__all__ = [
    "RotationKind",
    "PairTable1D",
    "ThetaKey1D",
    "pair_table_1d",
    "rotate_pair",
    "rotate_spectrum_1d",
    "sdft_forward_1d",
    "sdft_inverse_1d",
    "sdft_matrix_1d",
    "coefficient_trace",
    "cosine_transform",
    "sine_transform",
    "hilbert",
    "hilbert_real_part",
]

TWO_PI = 2.0 * math.pi
_BLOCK = 8192


class RotationKind(enum.Enum):
    """``PROPER`` is [[c, s], [-s, c]] (det +1); ``IMPROPER`` is [[c, s], [s, -c]] (det -1)."""

    PROPER = "proper"
    IMPROPER = "improper"

    def matrix(self, theta: float) -> np.ndarray:
        c, s = math.cos(theta), math.sin(theta)
        if self is RotationKind.PROPER:
            return np.array([[c, s], [-s, c]])
        return np.array([[c, s], [s, -c]])


@dataclass(frozen=True)
class PairTable1D:
    n: int
    pairs: tuple[tuple[int, int], ...]
    fixed_indices: tuple[int, int]

    @property
    def lower(self) -> np.ndarray:
        return np.array([k for k, _ in self.pairs], dtype=np.intp)

    @property
    def upper(self) -> np.ndarray:
        return np.array([j for _, j in self.pairs], dtype=np.intp)


def pair_table_1d(n: int) -> PairTable1D:
    """Pairs ``(k, N - k)`` for ``k = 1 .. N/2 - 1`` plus the fixed indices 0 and N/2."""
    require_sdft_size(n)
    h = n // 2
    return PairTable1D(n, tuple((k, n - k) for k in range(1, h)), (0, h))


def reduce_angles(angles) -> np.ndarray:
    a = np.asarray(angles, dtype=np.float64)
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("angles must be finite")
    a = np.mod(a, TWO_PI)
    # mod can round a tiny negative angle up to exactly 2*pi
    a[a >= TWO_PI] = 0.0
    return a


@dataclass(frozen=True, eq=False)
class ThetaKey1D:
    """Rotation angles for the 1D SDFT; ``angles[k - 1]`` drives pair ``(k, N - k)``.

    Angles are stored reduced to ``[0, 2 pi)``.
    """

    n: int
    angles: np.ndarray = field(repr=False)

    def __post_init__(self):
        require_sdft_size(self.n)
        a = reduce_angles(self.angles)
        if a.ndim != 1 or a.size != self.n // 2 - 1:
            raise SizeMismatchError(
                f"1D key for N={self.n} needs {self.n // 2 - 1} angles, got {a.size}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)

    @classmethod
    def zeros(cls, n: int) -> "ThetaKey1D":
        return cls(n, np.zeros(max(n // 2 - 1, 0)))

    @classmethod
    def constant(cls, n: int, theta: float) -> "ThetaKey1D":
        return cls(n, np.full(max(n // 2 - 1, 0), float(theta)))

    @cached_property
    def cos(self) -> np.ndarray:
        return np.cos(self.angles)

    @cached_property
    def sin(self) -> np.ndarray:
        return np.sin(self.angles)

    def __eq__(self, other):
        if not isinstance(other, ThetaKey1D):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.angles, other.angles)

    __hash__ = None


def rotate_pair(a: complex, b: complex, theta: float, kind: RotationKind = RotationKind.PROPER):
    """Rotate one coefficient pair.

    >>> rotate_pair(1, 0, math.pi / 2)[1]
    -1.0
    """
    c, s = math.cos(theta), math.sin(theta)
    if kind is RotationKind.PROPER:
        return c * a + s * b, -s * a + c * b
    return c * a + s * b, s * a - c * b


def _rotate_into(out_a, out_b, a, b, c, s, kind, inverse):
    """Write the rotated pair into ``out_a``/``out_b`` with a single temporary."""
    # the improper block is symmetric and orthogonal, hence its own inverse
    transpose = inverse and kind is RotationKind.PROPER
    tmp = b * s
    np.multiply(a, c, out=out_a)
    if transpose:
        out_a -= tmp
    else:
        out_a += tmp
    np.multiply(a, s, out=tmp)
    np.multiply(b, c, out=out_b)
    if kind is RotationKind.IMPROPER:
        np.subtract(tmp, out_b, out=out_b)
    elif transpose:
        out_b += tmp
    else:
        out_b -= tmp


def _check_key(n: int, key: ThetaKey1D) -> None:
    if not isinstance(key, ThetaKey1D):
        raise InvalidInputError(f"expected a ThetaKey1D, got {type(key).__name__}")
    if key.n != n:
        raise SizeMismatchError(f"key is for N={key.n} but the data has N={n}")


def rotate_spectrum_1d(spectrum, key: ThetaKey1D, kind=RotationKind.PROPER, inverse=False):
    """Apply ``R(theta)`` (or its transpose when ``inverse``) to a DFT coefficient vector.

    ``spectrum`` may also be 2D, in which case every column is rotated; this is
    how :func:`sdft_matrix_1d` builds ``R(theta) V``.  O(N) per column.
    """
    s = np.asarray(spectrum, dtype=np.complex128)
    n = s.shape[0]
    require_sdft_size(n)
    _check_key(n, key)
    h = n // 2
    c, sn = key.cos, key.sin
    if s.ndim == 2:
        c, sn = c[:, None], sn[:, None]
    out = np.empty_like(s)
    out[0] = s[0]
    out[h] = s[h]
    lo_out, hi_out, lo, hi = out[1:h], out[:h:-1], s[1:h], s[:h:-1]
    if s.ndim == 2:
        _rotate_into(lo_out, hi_out, lo, hi, c, sn, kind, inverse)
        return out
    # blocks keep the temporary cache-resident on long signals
    for i in range(0, h - 1, _BLOCK):
        j = i + _BLOCK
        _rotate_into(lo_out[i:j], hi_out[i:j], lo[i:j], hi[i:j], c[i:j], sn[i:j], kind, inverse)
    return out


def sdft_forward_1d(x, key: ThetaKey1D, kind: RotationKind = RotationKind.PROPER) -> np.ndarray:
    """Forward 1D SDFT: FFT, then one rotation per pair.  Indices 0 and N/2 pass through."""
    x = as_signal_1d(x)
    require_sdft_size(x.size)
    _check_key(x.size, key)
    return rotate_spectrum_1d(np.fft.fft(x), key, kind)


def sdft_inverse_1d(s, key: ThetaKey1D, kind: RotationKind = RotationKind.PROPER) -> np.ndarray:
    """Inverse 1D SDFT, ``(1/N) V(theta)^H s``: undo the pair rotations, then inverse DFT."""
    s = as_signal_1d(s)
    require_sdft_size(s.size)
    _check_key(s.size, key)
    return dft_inverse_1d(rotate_spectrum_1d(s, key, kind, inverse=True))


def sdft_matrix_1d(key: ThetaKey1D, kind: RotationKind = RotationKind.PROPER) -> np.ndarray:
    """Dense ``V(theta)``; row ``k`` is the (possibly rotated) basis row for coefficient ``k``."""
    return rotate_spectrum_1d(dft_matrix_1d(key.n), key, kind)


def coefficient_trace(x, k: int, samples: int):
    """Sweep the angle of pair ``(k, N - k)`` over ``[0, 2 pi)`` with all other angles zero.

    Returns
    -------
    thetas, coeff_k, coeff_nk : np.ndarray
        ``samples`` uniformly spaced angles (2 pi excluded) and the two rotated
        coefficients at each angle.
    """
    x = as_signal_1d(x)
    n = require_sdft_size(x.size)
    if not 1 <= k <= n // 2 - 1:
        raise InvalidInputError(f"pair index k={k} outside 1..{n // 2 - 1}")
    if samples < 1:
        raise InvalidInputError("samples must be positive")
    spectrum = np.fft.fft(x)
    a, b = spectrum[k], spectrum[n - k]
    thetas = TWO_PI * np.arange(samples) / samples
    c, s = np.cos(thetas), np.sin(thetas)
    return thetas, c * a + s * b, c * b - s * a


def _all_pi_over_4(x) -> tuple[np.ndarray, np.ndarray]:
    x = as_real_1d(x)
    n = require_sdft_size(x.size)
    return x, sdft_forward_1d(x, ThetaKey1D.constant(n, math.pi / 4))


def cosine_transform(x) -> np.ndarray:
    """Fourier cosine coefficients ``sum_n x[n] cos(2 pi k n / N)`` for ``k = 1 .. N/2 - 1``.

    Read off the all-pi/4 SDFT, whose lower-half coefficients are sqrt(2) times
    these sums.  Element ``i`` of the result corresponds to ``k = i + 1``.
    """
    x, s = _all_pi_over_4(x)
    h = x.size // 2
    return s[1:h].real / math.sqrt(2.0)


def sine_transform(x) -> np.ndarray:
    """Fourier sine coefficients ``sum_n x[n] sin(2 pi k n / N)`` for ``k = 1 .. N/2 - 1``.

    The all-pi/4 SDFT puts ``-i sqrt(2) S_j`` at upper index ``j = N - k``;
    since ``S_{N-k} = -S_k`` the value at ``k`` is ``coeff[N - k] / (i sqrt(2))``.
    """
    x, s = _all_pi_over_4(x)
    h = x.size // 2
    return (s[:h:-1] / (1j * math.sqrt(2.0))).real


def _hilbert_composite(x) -> np.ndarray:
    x = as_real_1d(x)
    n = require_sdft_size(x.size)
    forward = sdft_forward_1d(x, ThetaKey1D.constant(n, -math.pi / 4))
    return sdft_inverse_1d(forward, ThetaKey1D.constant(n, math.pi / 4), RotationKind.IMPROPER)


def hilbert(x) -> np.ndarray:
    """Discrete Hilbert transform of a real signal of even length.

    Computed as the imaginary part of ``(1/N) V~(pi/4)^H V(-pi/4) x`` where
    ``V~`` uses the improper pair rotation.  The composite multiplies the
    spectrum by +1 on the lower half, -1 on the upper half, and leaves DC and
    Nyquist alone, so its imaginary part is the ``-i sgn(k)`` multiplier.
    """
    return _hilbert_composite(x).imag


def hilbert_real_part(x) -> np.ndarray:
    """Real part of the same composite: the projection of ``x`` onto the DC and Nyquist rows."""
    return _hilbert_composite(x).real

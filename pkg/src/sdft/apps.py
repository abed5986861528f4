"""Parity filtering and the angle-keyed scrambler.

Parity filters rotate every conjugate pair by pi/4, which splits a real
signal's spectrum into sqrt(2)*Re (lower member) and -i*sqrt(2)*Im (upper
member).  Keeping one half and inverting yields the circularly even or odd
component.

The scrambler keeps coefficients ``0 .. N/2`` of a keyed SDFT.  For a real
signal ``X[N-k] = conj(X[k])``, so the kept coefficient of pair ``k`` is
``cos(t) X[k] + sin(t) conj(X[k])``: the real part is scaled by
``cos t + sin t`` and the imaginary part by ``cos t - sin t``.  Both factors
must stay away from zero, which rules out angles near odd multiples of pi/4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import as_real_1d, as_real_2d, as_signal_1d, require_sdft_size
from .errors import DegenerateKeyError, InvalidInputError, SizeMismatchError
from .sdft1d import ThetaKey1D, sdft_forward_1d, sdft_inverse_1d
from .sdft2d import PairMode, ThetaKey2D, pair_count_2d, sdft_forward_2d, sdft_inverse_2d

__all__ = [
    "DEGENERACY_MARGIN",
    "KEYGEN_MARGIN",
    "ScramblePayload",
    "parity_filter_1d",
    "parity_filter_2d",
    "splitmix64",
    "keygen",
    "keygen_2d",
    "check_scramble_key",
    "scramble",
    "descramble",
]

DEGENERACY_MARGIN = 1e-3
KEYGEN_MARGIN = 0.01

_MASK64 = (1 << 64) - 1


def _check_part(part: str) -> str:
    if part not in ("even", "odd"):
        raise InvalidInputError(f"part must be 'even' or 'odd', got {part!r}")
    return part


def parity_filter_1d(x, part: str = "even", bands=None) -> np.ndarray:
    """Even or odd circular component of a real signal.

    Full band, ``even`` returns ``(x[n] + x[-n mod N]) / 2`` and ``odd`` the
    difference.  With ``bands`` (pair indices in ``1 .. N/2 - 1``) only those
    frequency pairs are filtered; every other pair, and DC and Nyquist, pass
    through unchanged.
    """
    x = as_real_1d(x)
    n = require_sdft_size(x.size)
    _check_part(part)
    h = n // 2
    key = ThetaKey1D.constant(n, math.pi / 4)
    s = sdft_forward_1d(x, key)
    if bands is None:
        if part == "even":
            s[h + 1:] = 0
        else:
            s[:h + 1] = 0
    else:
        ks = np.asarray(sorted(set(int(b) for b in bands)), dtype=np.intp)
        if ks.size and (ks.min() < 1 or ks.max() > h - 1):
            raise InvalidInputError(f"band indices must lie in 1..{h - 1}")
        s[n - ks if part == "even" else ks] = 0
    return sdft_inverse_1d(s, key).real


def parity_filter_2d(x, part: str = "even") -> np.ndarray:
    """Circular centro-symmetric (``even``) or antisymmetric (``odd``) part of a real grid.

    Rotates every ``(p, q) <-> (-p, -q)`` pair by pi/4 and keeps the first
    members (plus the self-paired indices) for even, the second members for odd.
    """
    x = as_real_2d(x)
    n = require_sdft_size(x.shape[0])
    _check_part(part)
    key = ThetaKey2D.constant(n, math.pi / 4, PairMode.CONJUGATE)
    s = sdft_forward_2d(x, key)
    flat = s.reshape(-1)
    table = key.table
    if part == "even":
        flat[table.second_flat] = 0
    else:
        flat[table.first_flat] = 0
        flat[[p * n + q for p, q in table.fixed_indices]] = 0
    return sdft_inverse_2d(s, key).real


def splitmix64(seed: int):
    """Infinite SplitMix64 stream of 64-bit outputs."""
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def _uniforms(seed: int, count: int) -> np.ndarray:
    stream = splitmix64(seed)
    return np.array([(next(stream) >> 11) / 9007199254740992.0 for _ in range(count)])


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) <= _MASK64:
        raise InvalidInputError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def keygen(seed: int, n: int, purpose: str = "general") -> ThetaKey1D:
    """Expand a 64-bit seed into a 1D key.

    ``general`` draws angles uniformly in ``[0, 2 pi)``.  ``scramble`` draws
    them in ``[-pi/4 + 0.01, pi/4 - 0.01]`` so that ``|cos t +- sin t|`` stays
    above ``sqrt(2) sin(0.01)``, well clear of :data:`DEGENERACY_MARGIN`.
    """
    seed = _check_seed(seed)
    require_sdft_size(n)
    u = _uniforms(seed, n // 2 - 1)
    if purpose == "general":
        angles = 2.0 * math.pi * u
    elif purpose == "scramble":
        angles = -math.pi / 4 + KEYGEN_MARGIN + u * (math.pi / 2 - 2 * KEYGEN_MARGIN)
    else:
        raise InvalidInputError(f"purpose must be 'general' or 'scramble', got {purpose!r}")
    return ThetaKey1D(n, angles)


def keygen_2d(seed: int, n: int, mode: PairMode = PairMode.SYMMETRIC) -> ThetaKey2D:
    """Uniform ``[0, 2 pi)`` angles for a 2D key, from the same SplitMix64 stream."""
    seed = _check_seed(seed)
    require_sdft_size(n)
    mode = PairMode(mode)
    return ThetaKey2D(n, mode, 2.0 * math.pi * _uniforms(seed, pair_count_2d(n, mode)))


@dataclass(frozen=True, eq=False)
class ScramblePayload:
    """Coefficients ``0 .. N/2`` of the keyed SDFT of a real signal of length ``n``."""

    n: int
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        require_sdft_size(self.n)
        c = as_signal_1d(self.coefficients).copy()
        if c.size != self.n // 2 + 1:
            raise SizeMismatchError(
                f"payload for N={self.n} needs {self.n // 2 + 1} coefficients, got {c.size}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)


def check_scramble_key(key: ThetaKey1D, margin: float = DEGENERACY_MARGIN) -> None:
    """Raise :class:`DegenerateKeyError` if any angle makes ``cos t +- sin t`` nearly vanish."""
    bad = (np.abs(key.cos - key.sin) < margin) | (np.abs(key.cos + key.sin) < margin)
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0]) + 1
        raise DegenerateKeyError(
            f"angle {key.angles[k - 1]!r} for pair {k} is within {margin} of an odd multiple of pi/4"
        )


def scramble(x, key: ThetaKey1D) -> ScramblePayload:
    x = as_real_1d(x)
    n = require_sdft_size(x.size)
    if key.n != n:
        raise SizeMismatchError(f"key is for N={key.n} but the signal has N={n}")
    check_scramble_key(key)
    s = sdft_forward_1d(x, key)[: n // 2 + 1]
    s[0] = s[0].real
    s[-1] = s[-1].real
    return ScramblePayload(n, s)


def descramble(payload: ScramblePayload, key: ThetaKey1D) -> np.ndarray:
    """Invert :func:`scramble`.

    Undoes the per-pair scaling of real and imaginary parts, rebuilds the upper
    half of the spectrum by conjugate symmetry, and inverts the DFT.
    """
    n = payload.n
    if key.n != n:
        raise SizeMismatchError(f"key is for N={key.n} but the payload has N={n}")
    check_scramble_key(key)
    h = n // 2
    p = payload.coefficients
    lower = p[1:h]
    spectrum = np.empty(n, dtype=np.complex128)
    spectrum[0] = p[0].real
    spectrum[h] = p[h].real
    spectrum[1:h] = lower.real / (key.cos + key.sin) + 1j * (lower.imag / (key.cos - key.sin))
    spectrum[:h:-1] = spectrum[1:h].conj()
    return np.fft.ifft(spectrum).real

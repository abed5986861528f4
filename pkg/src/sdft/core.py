"""DFT engines, basis rows and input validation.

Conventions
-----------
The forward transforms are unnormalized,

    X[k] = sum_n x[n] exp(-2j*pi*k*n/N),

and the whole 1/N (1/N**2 in 2D) factor sits in the inverse.  A 2D grid
element ``(m, n)`` vectorizes to flat index ``m*N + n`` and the coefficient
``(p, q)`` to ``p*N + q``, which is plain C order.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidInputError, UnsupportedSizeError

__all__ = [
    "as_signal_1d",
    "as_signal_2d",
    "as_real_1d",
    "as_real_2d",
    "require_sdft_size",
    "dft_forward_1d",
    "dft_inverse_1d",
    "dft_forward_2d",
    "dft_inverse_2d",
    "basis_row_1d",
    "basis_row_2d",
    "dft_matrix_1d",
    "dft_matrix_2d",
    "vectorize",
    "unvectorize",
]


def _check_finite(a: np.ndarray) -> None:
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("input contains non-finite values")


def as_signal_1d(x) -> np.ndarray:
    """Validate and return ``x`` as a 1D complex128 array."""
    try:
        a = np.asarray(x, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"cannot interpret input as a numeric signal: {exc}") from None
    if a.ndim != 1 or a.size == 0:
        raise InvalidInputError(f"expected a non-empty 1D signal, got shape {a.shape}")
    _check_finite(a)
    return a


def as_signal_2d(x) -> np.ndarray:
    """Validate and return ``x`` as a square complex128 grid."""
    try:
        a = np.asarray(x, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"cannot interpret input as a numeric grid: {exc}") from None
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.size == 0:
        raise InvalidInputError(f"expected a square N x N grid, got shape {a.shape}")
    _check_finite(a)
    return a


def _as_real(x, ndim: int) -> np.ndarray:
    a = np.asarray(x)
    if np.iscomplexobj(a):
        if np.any(a.imag != 0):
            raise InvalidInputError("operation requires a real-valued signal")
        a = a.real
    try:
        a = np.asarray(a, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"cannot interpret input as a real signal: {exc}") from None
    if a.ndim != ndim or a.size == 0:
        raise InvalidInputError(f"expected a {ndim}D real signal, got shape {a.shape}")
    if ndim == 2 and a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"expected a square grid, got shape {a.shape}")
    _check_finite(a)
    return a


def as_real_1d(x) -> np.ndarray:
    """Validate a real 1D signal; complex arrays with zero imaginary part pass."""
    return _as_real(x, 1)


def as_real_2d(x) -> np.ndarray:
    return _as_real(x, 2)


def require_sdft_size(n: int) -> int:
    """SDFT operations need an even N >= 4."""
    if n < 4 or n % 2:
        raise UnsupportedSizeError(f"SDFT requires even N >= 4, got N={n}")
    return n


def dft_forward_1d(x) -> np.ndarray:
    """Unnormalized forward DFT of a 1D signal, any N >= 1."""
    return np.fft.fft(as_signal_1d(x))


def dft_inverse_1d(s) -> np.ndarray:
    """Inverse of :func:`dft_forward_1d` (carries the 1/N factor)."""
    return np.fft.ifft(as_signal_1d(s))


def dft_forward_2d(x) -> np.ndarray:
    """Unnormalized 2D DFT of a square grid.

    ``S[p, q] = sum_{m,n} X[m, n] * exp(-2j*pi*(p*m + q*n)/N)``, i.e. the
    1D transform applied along rows and then along columns.
    """
    return np.fft.fft2(as_signal_2d(x))


def dft_inverse_2d(s) -> np.ndarray:
    return np.fft.ifft2(as_signal_2d(s))


def _check_index(i: int, n: int, name: str) -> None:
    if not 0 <= i < n:
        raise InvalidInputError(f"index {name}={i} out of range for N={n}")


def _phasors(n: int, k: int) -> np.ndarray:
    # exact integer reduction keeps large k*n products accurate
    return np.exp(-2j * np.pi * ((k * np.arange(n)) % n) / n)


def basis_row_1d(n: int, k: int) -> np.ndarray:
    """Row ``k`` of the N-point DFT matrix: ``exp(-2j*pi*k*n/N)``."""
    if n < 1:
        raise InvalidInputError(f"N must be positive, got {n}")
    _check_index(k, n, "k")
    return _phasors(n, k)


def basis_row_2d(n: int, p: int, q: int) -> np.ndarray:
    """Row ``p*N + q`` of the 2D DFT matrix, as a flat vector of length N**2.

    This is the Kronecker product of the 1D rows ``p`` and ``q``: the entry at
    flat index ``m*N + n`` equals ``rho_p**m * rho_q**n``.
    """
    if n < 1:
        raise InvalidInputError(f"N must be positive, got {n}")
    _check_index(p, n, "p")
    _check_index(q, n, "q")
    return np.outer(_phasors(n, p), _phasors(n, q)).ravel()


def dft_matrix_1d(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.exp(-2j * np.pi * (np.outer(k, k) % n) / n)


def dft_matrix_2d(n: int) -> np.ndarray:
    """Dense N**2 x N**2 2D DFT matrix ``W`` with ``W[p*N+q] = basis_row_2d(n, p, q)``."""
    f = dft_matrix_1d(n)
    return np.kron(f, f)


def vectorize(grid) -> np.ndarray:
    """Flatten an N x N grid so that ``(m, n)`` lands at ``m*N + n``."""
    return np.asarray(grid).reshape(-1)


def unvectorize(flat) -> np.ndarray:
    a = np.asarray(flat)
    n = int(round(np.sqrt(a.size)))
    if a.ndim != 1 or n * n != a.size:
        raise InvalidInputError(f"length {a.size} is not a perfect square")
    return a.reshape(n, n)

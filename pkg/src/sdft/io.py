"""File formats: the SDFT binary array container, CSV text, key JSON, scramble payloads.

Binary layout (little endian)::

    b"SDFT" | version u8 = 1 | dtype u8 (0 real f64, 1 complex f64) | ndim u8 | pad u8 = 0
    | ndim x u64 dimensions | payload f64 (complex interleaved re, im)

A scramble payload is a complex 1D array in this container followed by one
u64 holding the original signal length.
"""
from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .apps import ScramblePayload, keygen, keygen_2d
from .errors import InvalidInputError
from .sdft1d import ThetaKey1D
from .sdft2d import PairMode, ThetaKey2D

__all__ = [
    "MAGIC",
    "encode_array",
    "decode_array",
    "read_array",
    "write_array",
    "read_csv",
    "write_csv",
    "load_signal",
    "save_signal",
    "key_to_dict",
    "key_from_dict",
    "read_key",
    "write_key",
    "encode_payload",
    "decode_payload",
    "read_payload",
    "write_payload",
]

MAGIC = b"SDFT"
VERSION = 1
DTYPE_REAL, DTYPE_COMPLEX = 0, 1
_HEADER = struct.Struct("<4sBBBB")


def _is_real(a: np.ndarray) -> bool:
    return not np.iscomplexobj(a)


def encode_array(a) -> bytes:
    a = np.asarray(a)
    if a.ndim not in (1, 2):
        raise InvalidInputError(f"only 1D and 2D arrays can be stored, got ndim={a.ndim}")
    if _is_real(a):
        dtype, payload = DTYPE_REAL, np.ascontiguousarray(a, dtype="<f8")
    else:
        dtype = DTYPE_COMPLEX
        payload = np.ascontiguousarray(a, dtype=np.complex128).view(np.float64).astype("<f8")
    header = _HEADER.pack(MAGIC, VERSION, dtype, a.ndim, 0)
    dims = struct.pack(f"<{a.ndim}Q", *a.shape)
    return header + dims + payload.tobytes()


def decode_array(buf: bytes) -> tuple[np.ndarray, int]:
    """Parse one array from ``buf``; returns the array and the number of bytes consumed."""
    if len(buf) < _HEADER.size:
        raise InvalidInputError("truncated SDFT header")
    magic, version, dtype, ndim, pad = _HEADER.unpack_from(buf)
    if magic != MAGIC:
        raise InvalidInputError(f"bad magic bytes {magic!r}")
    if version != VERSION:
        raise InvalidInputError(f"unsupported format version {version}")
    if dtype not in (DTYPE_REAL, DTYPE_COMPLEX) or ndim not in (1, 2) or pad != 0:
        raise InvalidInputError("malformed SDFT header")
    off = _HEADER.size
    if len(buf) < off + 8 * ndim:
        raise InvalidInputError("truncated SDFT dimensions")
    shape = struct.unpack_from(f"<{ndim}Q", buf, off)
    off += 8 * ndim
    count = int(np.prod(shape)) * (2 if dtype == DTYPE_COMPLEX else 1)
    end = off + 8 * count
    if len(buf) < end:
        raise InvalidInputError("truncated SDFT payload")
    data = np.frombuffer(buf, dtype="<f8", count=count, offset=off).astype(np.float64)
    if dtype == DTYPE_COMPLEX:
        data = data.view(np.complex128)
    return data.reshape(shape), end


def read_array(path) -> np.ndarray:
    buf = Path(path).read_bytes()
    a, used = decode_array(buf)
    if used != len(buf):
        raise InvalidInputError(f"{len(buf) - used} trailing bytes after SDFT array")
    return a


def write_array(path, a) -> None:
    Path(path).write_bytes(encode_array(a))


def _fmt(v: float) -> str:
    return "%.17g" % v


def _parse_fields(line: str, lineno: int) -> list[float]:
    try:
        return [float(f) for f in line.split(",")]
    except ValueError:
        raise InvalidInputError(f"line {lineno}: not a number list: {line!r}") from None


def read_csv(path, dim: int = 1) -> np.ndarray:
    """Read a CSV signal.

    1D: one value per line (real) or ``re,im`` per line (complex).
    2D: one grid row per line, N values (real) or 2N interleaved ``re,im``
    values (complex).
    """
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if line and not line.startswith("#"):
            rows.append(_parse_fields(line, lineno))
    if not rows:
        raise InvalidInputError(f"{path}: empty CSV")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise InvalidInputError(f"{path}: ragged CSV rows")
    width = widths.pop()
    a = np.array(rows, dtype=np.float64)
    if dim == 1:
        if width == 1:
            return a[:, 0]
        if width == 2:
            return a[:, 0] + 1j * a[:, 1]
    elif dim == 2:
        n = len(rows)
        if width == n:
            return a
        if width == 2 * n:
            return a[:, 0::2] + 1j * a[:, 1::2]
    else:
        raise InvalidInputError(f"dim must be 1 or 2, got {dim}")
    raise InvalidInputError(f"{path}: {width} columns do not fit a {dim}D signal")


def write_csv(path, a) -> None:
    a = np.asarray(a)
    lines = []
    if a.ndim == 1:
        if _is_real(a):
            lines = [_fmt(v) for v in a]
        else:
            lines = [f"{_fmt(v.real)},{_fmt(v.imag)}" for v in a]
    elif a.ndim == 2:
        for row in a:
            if _is_real(a):
                lines.append(",".join(_fmt(v) for v in row))
            else:
                lines.append(",".join(f"{_fmt(v.real)},{_fmt(v.imag)}" for v in row))
    else:
        raise InvalidInputError(f"cannot write a {a.ndim}D array as CSV")
    Path(path).write_text("\n".join(lines) + "\n")


def _is_binary(path) -> bool:
    suffix = Path(path).suffix.lower()
    if suffix == ".sdft":
        return True
    if suffix == ".csv":
        return False
    raise InvalidInputError(f"{path}: unknown extension (use .csv or .sdft)")


def load_signal(path, dim: int = 1) -> np.ndarray:
    """Load a 1D or 2D array, picking the format from the extension."""
    try:
        a = read_array(path) if _is_binary(path) else read_csv(path, dim)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None
    if a.ndim != dim:
        raise InvalidInputError(f"{path}: expected a {dim}D array, got {a.ndim}D")
    return a


def save_signal(path, a) -> None:
    if _is_binary(path):
        write_array(path, a)
    else:
        write_csv(path, a)


def key_to_dict(key, purpose: str | None = None) -> dict:
    if isinstance(key, ThetaKey1D):
        mode = "1d"
    elif isinstance(key, ThetaKey2D):
        mode = key.mode.value
    else:
        raise InvalidInputError(f"not a key: {type(key).__name__}")
    d = {"version": 1, "mode": mode, "n": key.n}
    if purpose is not None:
        d["purpose"] = purpose
    d["angles"] = [float(v) for v in key.angles]
    return d


def _parse_seed(value) -> int:
    if isinstance(value, str):
        try:
            return int(value, 16) if value.lower().startswith("0x") else int(value)
        except ValueError:
            raise InvalidInputError(f"bad seed {value!r}") from None
    if isinstance(value, int):
        return value
    raise InvalidInputError(f"bad seed {value!r}")


def key_from_dict(d: dict):
    """Build a key from its JSON form; returns ``(key, purpose)``."""
    if not isinstance(d, dict) or d.get("version") != 1:
        raise InvalidInputError("key file must be a JSON object with version 1")
    mode, n, purpose = d.get("mode"), d.get("n"), d.get("purpose", "general")
    if not isinstance(n, int):
        raise InvalidInputError("key file needs an integer 'n'")
    if mode not in ("1d", "2d-sym", "2d-conj"):
        raise InvalidInputError(f"unknown key mode {mode!r}")
    if "angles" in d:
        angles = d["angles"]
        if not isinstance(angles, list) or not all(isinstance(v, (int, float)) for v in angles):
            raise InvalidInputError("'angles' must be a list of numbers")
        if mode == "1d":
            return ThetaKey1D(n, np.array(angles, dtype=np.float64)), purpose
        return ThetaKey2D(n, PairMode(mode), np.array(angles, dtype=np.float64)), purpose
    if "seed" in d:
        seed = _parse_seed(d["seed"])
        if mode == "1d":
            return keygen(seed, n, purpose), purpose
        return keygen_2d(seed, n, PairMode(mode)), purpose
    raise InvalidInputError("key file needs 'angles' or 'seed'")


def read_key(path):
    try:
        d = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read key {path}: {exc}") from None
    return key_from_dict(d)


def write_key(path, key, purpose: str | None = None) -> None:
    Path(path).write_text(json.dumps(key_to_dict(key, purpose), indent=2) + "\n")


def encode_payload(payload: ScramblePayload) -> bytes:
    return encode_array(np.asarray(payload.coefficients, dtype=np.complex128)) + struct.pack(
        "<Q", payload.n
    )


def decode_payload(buf: bytes) -> ScramblePayload:
    a, used = decode_array(buf)
    if a.ndim != 1 or not np.iscomplexobj(a):
        raise InvalidInputError("scramble payload must be a complex 1D array")
    if len(buf) != used + 8:
        raise InvalidInputError("scramble payload must end with one u64 length")
    (n,) = struct.unpack_from("<Q", buf, used)
    if n != 2 * (a.size - 1):
        raise InvalidInputError(f"payload of {a.size} coefficients cannot come from N={n}")
    return ScramblePayload(int(n), a)


def read_payload(path) -> ScramblePayload:
    if _is_binary(path):
        return decode_payload(Path(path).read_bytes())
    a = read_csv(path, 1)
    return ScramblePayload(2 * (a.size - 1), a)


def write_payload(path, payload: ScramblePayload) -> None:
    if _is_binary(path):
        Path(path).write_bytes(encode_payload(payload))
    else:
        write_csv(path, np.asarray(payload.coefficients, dtype=np.complex128))

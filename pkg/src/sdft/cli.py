"""``sdft`` command line.

Formats follow the file extension: ``.csv`` text or ``.sdft`` binary.

Exit codes: 0 ok, 2 malformed input, 3 key/size mismatch or degenerate key,
4 unsupported size, 5 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .apps import descramble, keygen, keygen_2d, parity_filter_1d, parity_filter_2d, scramble
from .bench import bench, sweep
from .core import require_sdft_size
from .errors import InvalidInputError, SDFTError, SizeMismatchError, UnsupportedSizeError, VerificationError
from .graph import spectrum_report
from .sdft1d import ThetaKey1D, coefficient_trace, hilbert, hilbert_real_part, sdft_forward_1d, sdft_inverse_1d
from .sdft2d import PairMode, ThetaKey2D, sdft_forward_2d, sdft_inverse_2d

RESIDUAL_LIMIT = 1e-9


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _bands(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid band list {text!r}") from None


def _load_key(path, want):
    key, purpose = io.read_key(path)
    if not isinstance(key, want):
        raise SizeMismatchError(f"{path}: key mode does not match the requested dimension")
    return key


def cmd_transform(args) -> int:
    x = io.load_signal(args.inp, args.dim)
    n = x.shape[0]
    if args.dim == 1:
        key = _load_key(args.key[0], ThetaKey1D) if args.key else ThetaKey1D.zeros(require_sdft_size(n))
        if len(args.key or []) > 1:
            raise SizeMismatchError("1D transforms take a single key")
        out = sdft_inverse_1d(x, key) if args.inverse else sdft_forward_1d(x, key)
    else:
        keys = [_load_key(k, ThetaKey2D) for k in args.key] if args.key else [ThetaKey2D.zeros(require_sdft_size(n))]
        out = sdft_inverse_2d(x, keys) if args.inverse else sdft_forward_2d(x, keys)
    if args.real:
        out = out.real
    io.save_signal(args.out, out)
    return 0


def cmd_trace(args) -> int:
    x = io.load_signal(args.inp, 1)
    thetas, a, b = coefficient_trace(x, args.k, args.samples)
    energy = np.abs(a) ** 2 + np.abs(b) ** 2
    rows = np.column_stack([thetas, a.real, a.imag, b.real, b.imag, energy])
    lines = ["theta,re_k,im_k,re_nk,im_nk,energy"]
    lines += [",".join("%.17g" % v for v in row) for row in rows]
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return 0


def cmd_hilbert(args) -> int:
    x = io.load_signal(args.inp, 1)
    io.save_signal(args.out, hilbert_real_part(x) if args.real_part else hilbert(x))
    return 0


def cmd_filter(args) -> int:
    x = io.load_signal(args.inp, args.dim)
    if args.dim == 1:
        out = parity_filter_1d(x, args.part, args.bands)
    else:
        if args.bands is not None:
            raise InvalidInputError("--bands applies to 1D filtering only")
        out = parity_filter_2d(x, args.part)
    io.save_signal(args.out, out)
    return 0


def cmd_scramble(args) -> int:
    x = io.load_signal(args.inp, 1)
    io.write_payload(args.out, scramble(x, _load_key(args.key, ThetaKey1D)))
    return 0


def cmd_descramble(args) -> int:
    payload = io.read_payload(args.inp)
    io.save_signal(args.out, descramble(payload, _load_key(args.key, ThetaKey1D)))
    return 0


def cmd_keygen(args) -> int:
    if args.mode == "1d":
        key = keygen(args.seed, args.n, args.purpose)
        purpose = args.purpose
    else:
        if args.purpose != "general":
            raise InvalidInputError("2D keys only support the general purpose")
        key = keygen_2d(args.seed, args.n, PairMode(args.mode))
        purpose = None
    io.write_key(args.out, key, purpose)
    return 0


def cmd_graph_verify(args) -> int:
    n = require_sdft_size(args.n)
    cap = args.max_n if args.max_n is not None else (256 if args.dim == 1 else 16)
    if n > cap:
        raise UnsupportedSizeError(f"N={n} exceeds the verification cap {cap}")
    keys = None
    if args.key:
        want = ThetaKey1D if args.dim == 1 else ThetaKey2D
        keys = [_load_key(k, want) for k in args.key]
        if args.dim == 1:
            if len(keys) != 1:
                raise SizeMismatchError("1D verification takes a single key")
            keys = keys[0]
        if any(k.n != n for k in (keys if isinstance(keys, list) else [keys])):
            raise SizeMismatchError("key size does not match --n")
    report = spectrum_report(args.dim, n, keys)
    print(report.to_json(indent=2))
    if report.max_residual > RESIDUAL_LIMIT or not report.census_ok:
        raise VerificationError(
            f"verification failed: residual {report.max_residual:.3e}, census ok={report.census_ok}"
        )
    return 0


def cmd_bench(args) -> int:
    if args.n < 4 or args.n & (args.n - 1):
        raise InvalidInputError("bench sizes must be powers of two >= 4")
    if args.sweep_from is not None:
        lo = args.sweep_from
        if lo < 4 or lo & (lo - 1) or lo > args.n:
            raise InvalidInputError("--sweep-from must be a power of two <= --n")
        sizes = []
        while lo <= args.n:
            sizes.append(lo)
            lo *= 2
        result = sweep(args.dim, sizes, args.iters)
    else:
        result = bench(args.dim, args.n, args.iters)
    print(json.dumps(result, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdft", description="Steerable DFT toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="forward or inverse SDFT of a file")
    p.add_argument("--dim", type=int, choices=(1, 2), default=1)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--key", action="append",
                   help="key JSON; in 2D repeat once per pair mode (symmetric applied first); "
                        "default all-zero key, i.e. the plain DFT")
    p.add_argument("--real", action="store_true", help="write only the real part of the result")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("trace", help="pair coefficients as a function of the rotation angle")
    p.add_argument("--k", type=int, required=True, help="pair index, 1..N/2-1")
    p.add_argument("--samples", type=int, default=64, help="uniform angles in [0, 2pi)")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("hilbert", help="discrete Hilbert transform of a real signal")
    p.add_argument("--real-part", action="store_true",
                   help="emit the DC + Nyquist projection instead")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("filter", help="even/odd parity filter")
    p.add_argument("--part", choices=("even", "odd"), required=True)
    p.add_argument("--bands", type=_bands, help="comma-separated pair indices (1D only)")
    p.add_argument("--dim", type=int, choices=(1, 2), default=1)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_filter)

    for name, func, help_ in (("scramble", cmd_scramble, "keep the lower half of a keyed SDFT"),
                              ("descramble", cmd_descramble, "invert scramble")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--key", required=True)
        p.add_argument("--in", dest="inp", required=True)
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("keygen", help="deterministic key from a 64-bit seed")
    p.add_argument("--seed", type=_seed, required=True, help="e.g. 0x0123456789abcdef")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--purpose", choices=("general", "scramble"), default="general")
    p.add_argument("--mode", choices=("1d", "2d-sym", "2d-conj"), default="1d")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("graph", help="graph-spectral checks")
    gsub = p.add_subparsers(dest="graph_command", required=True)
    g = gsub.add_parser("verify", help="census and eigen-residual report as JSON")
    g.add_argument("--dim", type=int, choices=(1, 2), default=1)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--key", action="append")
    g.add_argument("--max-n", type=int, help="size cap (default 256 for 1D, 16 for 2D)")
    g.set_defaults(func=cmd_graph_verify)

    p = sub.add_parser("bench", help="per-stage timings as JSON")
    p.add_argument("--dim", type=int, choices=(1, 2), default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--sweep-from", type=int, help="time every power of two from here up to --n")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SDFTError as exc:
        print(f"sdft: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"sdft: error: {exc}", file=sys.stderr)
        return InvalidInputError.exit_code


if __name__ == "__main__":
    sys.exit(main())

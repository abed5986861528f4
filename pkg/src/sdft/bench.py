"""Per-stage timing of the FFT + pair-rotation pipeline."""
from __future__ import annotations

import time

import numpy as np

from .apps import keygen, keygen_2d
from .sdft1d import rotate_spectrum_1d
from .sdft2d import rotate_spectrum_2d


def _batch_reps(fn, min_batch_ns: int) -> int:
    fn()
    t0 = time.perf_counter_ns()
    fn()
    single = max(time.perf_counter_ns() - t0, 1)
    return max(1, min_batch_ns // single)


def _time_batch(fn, reps: int) -> int:
    t0 = time.perf_counter_ns()
    for _ in range(reps):
        fn()
    return (time.perf_counter_ns() - t0) // reps


def _best_ns(fn, iters: int, min_batch_ns: int) -> int:
    """Best per-call time over ``iters`` batches; small calls are batched to ``min_batch_ns``."""
    reps = _batch_reps(fn, min_batch_ns)
    return int(min(_time_batch(fn, reps) for _ in range(max(iters, 1))))


def _stages(dim: int, n: int, seed: int):
    rng = np.random.default_rng(seed)
    if dim == 1:
        x = rng.standard_normal(n)
        key = keygen(seed, n)
        spectrum = np.fft.fft(x)
        fft = lambda: np.fft.fft(x)  # noqa: E731
        rotate = lambda: rotate_spectrum_1d(spectrum, key)  # noqa: E731
    elif dim == 2:
        x = rng.standard_normal((n, n))
        key = keygen_2d(seed, n)
        spectrum = np.fft.fft2(x)
        key.table.first_flat, key.table.second_flat  # build index tables outside the timing
        fft = lambda: np.fft.fft2(x)  # noqa: E731
        rotate = lambda: rotate_spectrum_2d(spectrum, key)  # noqa: E731
    else:
        raise ValueError(f"dim must be 1 or 2, got {dim}")
    return fft, rotate


def bench(dim: int, n: int, iters: int = 10, seed: int = 0, min_batch_ns: int = 2_000_000) -> dict:
    """Time the FFT and rotation stages separately for one size.

    For ``dim=2`` the grid is ``n x n``.  Timings are the best per-call wall
    time in nanoseconds.
    """
    fft, rotate = _stages(dim, n, seed)
    fft_ns = _best_ns(fft, iters, min_batch_ns)
    rotate_ns = _best_ns(rotate, iters, min_batch_ns)
    return {"dim": dim, "n": n, "iters": iters, "fft_ns": fft_ns, "rotate_ns": rotate_ns,
            "total_ns": fft_ns + rotate_ns}


def sweep(dim: int, sizes, iters: int = 10, seed: int = 0, min_batch_ns: int = 2_000_000) -> dict:
    """Time every size in ``sizes`` and report successive rotate-time ratios.

    Sizes are measured round-robin, one batch per size per round, and each
    keeps its best time.  Slow phases of a shared machine then hit all sizes
    alike instead of skewing one of them.
    """
    sizes = list(sizes)
    stages = [_stages(dim, n, seed) for n in sizes]
    reps = [(_batch_reps(f, min_batch_ns), _batch_reps(r, min_batch_ns)) for f, r in stages]
    best = [[None, None] for _ in sizes]
    for _ in range(max(iters, 1)):
        for i, ((fft, rotate), (rf, rr)) in enumerate(zip(stages, reps)):
            for j, (fn, k) in enumerate(((fft, rf), (rotate, rr))):
                fn()  # the previous size evicted this one's data from cache
                t = _time_batch(fn, k)
                best[i][j] = t if best[i][j] is None else min(best[i][j], t)
    runs = [{"dim": dim, "n": n, "iters": iters, "fft_ns": int(f), "rotate_ns": int(r),
             "total_ns": int(f + r)} for n, (f, r) in zip(sizes, best)]
    ratios = [b["rotate_ns"] / a["rotate_ns"] for a, b in zip(runs, runs[1:])]
    return {"runs": runs, "rotate_ratios": ratios}

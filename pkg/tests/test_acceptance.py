"""Exit criteria, one test per criterion.

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""
import math
import time

import numpy as np

from oracles import (
    circular_flip,
    circular_flip_2d,
    conjugate_pairs_flat,
    dense_dft_2d,
    dense_rotation,
    dense_sdft_1d,
    hilbert_oracle,
    rel_err,
    splitmix64_reference,
    symmetric_pairs_flat,
)
from sdft.apps import descramble, keygen, parity_filter_1d, parity_filter_2d, scramble
from sdft.bench import sweep
from sdft.errors import DegenerateKeyError
from sdft.graph import (
    cycle_eigenvalues,
    cycle_laplacian,
    multiplicity_census_2d,
    numerical_eigenvalues,
    torus_eigenvalues,
    torus_laplacian,
    verify_eigenbasis,
)
from sdft.sdft1d import ThetaKey1D, hilbert, hilbert_real_part, sdft_forward_1d, sdft_matrix_1d
from sdft.sdft2d import PairMode, ThetaKey2D, compact_spectrum_2d, sdft_forward_2d, sdft_matrix_2d

EVEN_1D = range(4, 33, 2)
SEED = 0x5DF7


def key1d(rng, n):
    return ThetaKey1D(n, rng.uniform(0, 2 * np.pi, n // 2 - 1))


def key2d(rng, n, mode=PairMode.SYMMETRIC):
    count = n * (n - 1) // 2 if mode is PairMode.SYMMETRIC else (n * n - 4) // 2
    return ThetaKey2D(n, mode, rng.uniform(0, 2 * np.pi, count))


def test_ac01_zero_key_degeneracy(criterion):
    criterion(1, "zero key reproduces the DFT for even N in 4..32 (<=1e-12, <5 s)")
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    worst = 0.0
    for n in EVEN_1D:
        for _ in range(20):
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            worst = max(worst, rel_err(sdft_forward_1d(x, ThetaKey1D.zeros(n)), np.fft.fft(x)))
    elapsed = time.perf_counter() - t0
    criterion(1, "zero key reproduces the DFT for even N in 4..32 (<=1e-12, <5 s)",
              f"max rel err {worst:.1e}, {elapsed:.2f} s")
    assert worst <= 1e-12
    assert elapsed < 5.0


def test_ac02_dense_oracle(criterion):
    text = "fast SDFT equals dense R(theta)V (1D, N<=32) and R(theta)W (2D, N<=8) (<=1e-10, <30 s)"
    rng = np.random.default_rng(SEED + 2)
    t0 = time.perf_counter()
    worst = 0.0
    for n in EVEN_1D:
        for _ in range(5):
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            key = key1d(rng, n)
            worst = max(worst, rel_err(sdft_forward_1d(x, key), dense_sdft_1d(n, key.angles) @ x))
    for n in (4, 6, 8):
        w = dense_dft_2d(n)
        for mode, pairs in ((PairMode.SYMMETRIC, symmetric_pairs_flat(n)),
                            (PairMode.CONJUGATE, conjugate_pairs_flat(n))):
            for _ in range(5):
                x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                key = key2d(rng, n, mode)
                dense = dense_rotation(n * n, pairs, key.angles) @ w @ x.reshape(-1)
                worst = max(worst, rel_err(sdft_forward_2d(x, key).reshape(-1), dense))
    elapsed = time.perf_counter() - t0
    criterion(2, text, f"max rel err {worst:.1e}, {elapsed:.2f} s")
    assert worst <= 1e-10
    assert elapsed < 30.0


def test_ac03_pi_over_4_identities(criterion):
    text = "all-pi/4 SDFT = sqrt2 cosine sums (lower) and -i sqrt2 sine sums (upper), N=16 (<=1e-11)"
    rng = np.random.default_rng(SEED + 3)
    n = 16
    idx = np.arange(n)
    k = np.arange(1, n // 2)
    cos_m = np.cos(2 * np.pi * np.outer(k, idx) / n)
    sin_m = np.sin(2 * np.pi * np.outer(n - k, idx) / n)
    worst = 0.0
    for _ in range(100):
        x = rng.standard_normal(n)
        s = sdft_forward_1d(x, ThetaKey1D.constant(n, math.pi / 4))
        worst = max(worst, rel_err(s[k], math.sqrt(2) * (cos_m @ x)),
                    rel_err(s[n - k], -1j * math.sqrt(2) * (sin_m @ x)))
    criterion(3, text, f"max rel err {worst:.1e}")
    assert worst <= 1e-11


def test_ac04_hilbert(criterion):
    text = "Hilbert via improper-rotation composite matches -i sgn oracle; cos->sin; real part = DC+Nyquist"
    rng = np.random.default_rng(SEED + 4)
    worst_h = 0.0
    worst_re = 0.0
    for n in (8, 32, 128):
        alt = (-1.0) ** np.arange(n)
        for _ in range(100):
            x = rng.standard_normal(n)
            worst_h = max(worst_h, np.max(np.abs(hilbert(x) - hilbert_oracle(x))))
            proj = (x.sum() + (alt @ x) * alt) / n
            worst_re = max(worst_re, np.max(np.abs(hilbert_real_part(x) - proj)))
    t = 2 * np.pi * np.arange(8) / 8
    spot = np.max(np.abs(hilbert(np.cos(t)) - np.sin(t)))
    criterion(4, text, f"oracle {worst_h:.1e}, cos->sin {spot:.1e}, real part {worst_re:.1e}")
    assert worst_h <= 1e-10
    assert spot <= 1e-12
    assert worst_re <= 1e-11


def test_ac05_eigenbasis_preservation(criterion):
    text = "rotated basis rows stay Laplacian eigenvectors: 50 keys, cycle N<=32, torus N<=16 (<=1e-9, <60 s)"
    rng = np.random.default_rng(SEED + 5)
    t0 = time.perf_counter()
    worst = 0.0
    for n in EVEN_1D:
        lap, lam = cycle_laplacian(n), cycle_eigenvalues(n)
        for _ in range(50):
            worst = max(worst, verify_eigenbasis(lap, sdft_matrix_1d(key1d(rng, n)), lam))
    for n in range(4, 17, 2):
        lap, mu = torus_laplacian(n), torus_eigenvalues(n)
        for i in range(50):
            keys = [key2d(rng, n)]
            if i % 2:
                keys.append(key2d(rng, n, PairMode.CONJUGATE))
            worst = max(worst, verify_eigenbasis(lap, sdft_matrix_2d(keys), mu))
    elapsed = time.perf_counter() - t0
    criterion(5, text, f"max residual {worst:.1e}, {elapsed:.1f} s")
    assert worst <= 1e-9
    assert elapsed < 60.0


def test_ac06_multiplicity_census(criterion):
    text = "N=8 torus census: five classes of sizes 24/12/24/2/2, mu=4 merge with multiplicity 14"
    r = multiplicity_census_2d(8)
    sizes = {}
    for c in r.classes:
        sizes[c.tag] = sizes.get(c.tag, 0) + c.size
    num = numerical_eigenvalues(torus_laplacian(8))
    observed_at_4 = int(np.sum(np.abs(num - 4.0) <= 1e-8))
    merge = [m for m in r.merges if abs(m["mu"] - 4.0) <= 1e-8]
    criterion(6, text, f"sizes {sizes}, observed {observed_at_4}")
    assert r.class_counts() == {"M8": 3, "M4-diag": 3, "M4-axis": 6, "M2-cross": 1, "M1": 2}
    assert sizes == {"M8": 24, "M4-diag": 12, "M4-axis": 24, "M2-cross": 2, "M1": 2}
    assert sum(sizes.values()) == 64
    assert r.census_ok
    assert len(merge) == 1 and merge[0]["observed_multiplicity"] == 14 == observed_at_4


def test_ac07_energy_conservation(criterion):
    text = "pairwise 1D energy, 2D Re/Im pair energy and Parseval over 1000 trials (<=1e-10)"
    rng = np.random.default_rng(SEED + 7)
    worst = 0.0
    for trial in range(1000):
        n = int(rng.choice(np.arange(4, 65, 2)))
        x = rng.standard_normal(n) + (1j * rng.standard_normal(n) if trial % 2 else 0)
        key = key1d(rng, n)
        s0, s1 = np.fft.fft(x), sdft_forward_1d(x, key)
        k = np.arange(1, n // 2)
        e0 = np.abs(s0[k]) ** 2 + np.abs(s0[n - k]) ** 2
        e1 = np.abs(s1[k]) ** 2 + np.abs(s1[n - k]) ** 2
        worst = max(worst, np.max(np.abs(e1 - e0) / np.maximum(e0, 1e-14)))
        total = n * np.sum(np.abs(x) ** 2)
        worst = max(worst, abs(np.sum(np.abs(s1) ** 2) - total) / total)

        m = int(rng.choice([4, 6, 8, 10, 12, 16]))
        mode = PairMode.SYMMETRIC if trial % 3 else PairMode.CONJUGATE
        xr = rng.standard_normal((m, m))
        key2 = key2d(rng, m, mode)
        f0, f1 = np.fft.fft2(xr).reshape(-1), sdft_forward_2d(xr, key2).reshape(-1)
        i, j = key2.table.first_flat, key2.table.second_flat
        for part in (np.real, np.imag):
            p0 = part(f0[i]) ** 2 + part(f0[j]) ** 2
            p1 = part(f1[i]) ** 2 + part(f1[j]) ** 2
            worst = max(worst, np.max(np.abs(p1 - p0) / np.maximum(p0, 1.0)))
        total = m * m * np.sum(xr ** 2)
        worst = max(worst, abs(np.sum(np.abs(f1) ** 2) - total) / total)
    criterion(7, text, f"max rel deviation {worst:.1e}")
    assert worst <= 1e-10


def test_ac08_energy_compaction(criterion):
    text = "compaction zeroes Re of every second symmetric-pair member, N in {4, 8} (<=1e-10 scale)"
    rng = np.random.default_rng(SEED + 8)
    worst = 0.0
    for n in (4, 8):
        for _ in range(50):
            x = rng.standard_normal((n, n))
            s, key = compact_spectrum_2d(x)
            dft = np.fft.fft2(x).reshape(-1)
            scale = np.maximum(1.0, np.abs(dft[key.table.first_flat]))
            worst = max(worst, np.max(np.abs(s.reshape(-1)[key.table.second_flat].real) / scale))
    criterion(8, text, f"max |Re| / scale {worst:.1e}")
    assert worst <= 1e-10


def test_ac09_parity_filtering(criterion):
    text = "parity filters match (x +- flip x)/2 (<=1e-11); idempotent and even+odd=x (<=1e-12)"
    rng = np.random.default_rng(SEED + 9)
    oracle_err = 0.0
    ident_err = 0.0
    cases = [(rng.standard_normal(n), parity_filter_1d, circular_flip) for n in EVEN_1D]
    cases += [(rng.standard_normal((n, n)), parity_filter_2d, circular_flip_2d) for n in (4, 6, 8)]
    for x, filt, flip in cases:
        even, odd = filt(x, "even"), filt(x, "odd")
        oracle_err = max(oracle_err, np.max(np.abs(even - (x + flip(x)) / 2)),
                         np.max(np.abs(odd - (x - flip(x)) / 2)))
        ident_err = max(ident_err, np.max(np.abs(even + odd - x)),
                        np.max(np.abs(filt(even, "even") - even)),
                        np.max(np.abs(filt(odd, "odd") - odd)))
    criterion(9, text, f"oracle {oracle_err:.1e}, identities {ident_err:.1e}")
    assert oracle_err <= 1e-11
    assert ident_err <= 1e-12


def test_ac10_scrambler(criterion):
    text = "scramble roundtrip over 1000 seeded keys at N in {8,16,32} (<=1e-10); pi/4 key rejected; keygen bit-exact"
    rng = np.random.default_rng(SEED + 10)
    worst = 0.0
    for n in (8, 16, 32):
        for seed in range(1000):
            key = keygen(seed * 0x9E3779B97F4A7C15 % 2**64, n, "scramble")
            x = rng.standard_normal(n)
            worst = max(worst, rel_err(descramble(scramble(x, key), key), x))
    rejected = False
    try:
        descramble(scramble(np.ones(8), ThetaKey1D.zeros(8)), ThetaKey1D(8, [0.3, math.pi / 4, 0.0]))
    except DegenerateKeyError:
        rejected = True
    exact = True
    for seed in (0, 1, 0xFFFFFFFFFFFFFFFF, 0x0123456789ABCDEF):
        for n in (8, 32):
            u = [(z >> 11) / 2.0**53 for z in splitmix64_reference(seed, n // 2 - 1)]
            exact &= keygen(seed, n).angles.tolist() == [2 * math.pi * v for v in u]
    criterion(10, text, f"max rel err {worst:.1e}, rejected={rejected}, bit-exact={exact}")
    assert worst <= 1e-10
    assert rejected
    assert exact


def test_ac11_performance_shape(criterion):
    text = "N=2^20 1D SDFT < 1 s; rotation stage doubling ratio in [1.5, 3.0] over 2^14..2^20"
    rng = np.random.default_rng(SEED + 11)
    n = 2**20
    x = rng.standard_normal(n)
    key = keygen(SEED, n)
    sdft_forward_1d(x, key)
    t0 = time.perf_counter()
    sdft_forward_1d(x, key)
    full = time.perf_counter() - t0
    result = sweep(1, [2**k for k in range(14, 21)], iters=15)
    ratios = result["rotate_ratios"]
    criterion(11, text, f"full transform {full * 1e3:.0f} ms, ratios {[round(r, 2) for r in ratios]}")
    assert full < 1.0
    assert all(1.5 <= r <= 3.0 for r in ratios)

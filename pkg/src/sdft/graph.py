"""Cycle and torus Laplacians, their spectra, and eigenbasis certification.

The analytic spectra come from closed forms (cycle: ``2 - 2cos(2 pi k/N)``;
torus: sums of two cycle eigenvalues).  Numerical spectra come from a dense
symmetric eigensolver and serve as the independent cross-check.  The census
groups coefficient indices into the symmetry classes that force equal
eigenvalues, and separately reports where distinct classes happen to land on
the same numerical value.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import require_sdft_size
from .errors import InvalidInputError
from .sdft1d import ThetaKey1D, sdft_matrix_1d
from .sdft2d import ThetaKey2D, sdft_matrix_2d

__all__ = [
    "GROUPING_TOL",
    "GraphLaplacian",
    "EigenClass",
    "GraphSpectrumReport",
    "cycle_laplacian",
    "torus_laplacian",
    "cycle_eigenvalues",
    "torus_eigenvalues",
    "numerical_eigenvalues",
    "group_eigenvalues",
    "multiplicity_census_1d",
    "multiplicity_census_2d",
    "verify_eigenbasis",
    "spectrum_report",
]

GROUPING_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class GraphLaplacian:
    n: int
    kind: str  # "cycle" | "torus"
    matrix: np.ndarray = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return self.matrix.shape[0]


def _check_graph_size(n: int) -> None:
    if n < 3:
        raise InvalidInputError(f"graph size must be >= 3, got {n}")


def _cycle_matrix(n: int) -> np.ndarray:
    eye = np.eye(n, dtype=np.int64)
    return 2 * eye - np.roll(eye, 1, axis=1) - np.roll(eye, -1, axis=1)


def cycle_laplacian(n: int) -> GraphLaplacian:
    """Laplacian ``D - A`` of the N-vertex cycle: 2 on the diagonal, -1 to each ring neighbour."""
    _check_graph_size(n)
    m = _cycle_matrix(n)
    m.setflags(write=False)
    return GraphLaplacian(n, "cycle", m)


def torus_laplacian(n: int) -> GraphLaplacian:
    """Laplacian of the N x N toroidal grid, ``L_C (x) I + I (x) L_C``.

    Vertex ``(m, n)`` sits at row ``m*N + n``.
    """
    _check_graph_size(n)
    c = _cycle_matrix(n)
    eye = np.eye(n, dtype=np.int64)
    m = np.kron(c, eye) + np.kron(eye, c)
    m.setflags(write=False)
    return GraphLaplacian(n, "torus", m)


def cycle_eigenvalues(n: int) -> np.ndarray:
    """``lambda_k = 2 - 2 cos(2 pi k / N)`` in DFT index order."""
    _check_graph_size(n)
    k = np.arange(n)
    lam = 2.0 - 2.0 * np.cos(2.0 * np.pi * k / n)
    # exact symmetry lambda_k == lambda_{N-k}, not just to rounding
    lam[n // 2 + 1:] = lam[1:(n + 1) // 2][::-1]
    lam[0] = 0.0
    return lam


def torus_eigenvalues(n: int) -> np.ndarray:
    """Grid ``mu[p, q] = lambda_p + lambda_q``."""
    lam = cycle_eigenvalues(n)
    return lam[:, None] + lam[None, :]


def numerical_eigenvalues(laplacian: GraphLaplacian) -> np.ndarray:
    """Ascending eigenvalues of the Laplacian from LAPACK's symmetric solver."""
    return np.linalg.eigvalsh(laplacian.matrix.astype(np.float64))


def group_eigenvalues(values, tol: float = GROUPING_TOL) -> list[tuple[float, int]]:
    """Group sorted values whose consecutive gaps are <= ``tol``; returns ``(mean, count)``."""
    v = np.sort(np.asarray(values, dtype=np.float64))
    groups = []
    start = 0
    for i in range(1, v.size + 1):
        if i == v.size or v[i] - v[i - 1] > tol:
            groups.append((float(np.mean(v[start:i])), i - start))
            start = i
    return groups


@dataclass(frozen=True)
class EigenClass:
    """Indices whose eigenvalues coincide by symmetry alone."""

    tag: str
    representative: tuple
    members: tuple
    mu: float

    @property
    def size(self) -> int:
        return len(self.members)

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "representative": _jsonable(self.representative),
            "members": [_jsonable(m) for m in self.members],
            "mu": self.mu,
        }


def _jsonable(index):
    return list(index) if isinstance(index, tuple) else index


CLASS_SIZES = {"M8": 8, "M4-diag": 4, "M4-axis": 4, "M2-cross": 2, "M2": 2, "M1": 1}


def _classes_1d(n: int) -> list[EigenClass]:
    lam = cycle_eigenvalues(n)
    h = n // 2
    out = [EigenClass("M1", 0, (0,), float(lam[0]))]
    out += [EigenClass("M2", k, (k, n - k), float(lam[k])) for k in range(1, h)]
    out.append(EigenClass("M1", h, (h,), float(lam[h])))
    return out


def _classes_2d(n: int) -> list[EigenClass]:
    mu = torus_eigenvalues(n)
    h = n // 2
    neg = lambda i: (n - i) % n  # noqa: E731
    out = []

    def add(tag, rep, members):
        out.append(EigenClass(tag, rep, tuple(sorted(set(members))), float(mu[rep])))

    for p in range(1, h):
        for q in range(p + 1, h):
            add("M8", (p, q), [(p, q), (q, p), (p, neg(q)), (neg(q), p),
                               (neg(p), q), (q, neg(p)), (neg(p), neg(q)), (neg(q), neg(p))])
    for p in range(1, h):
        add("M4-diag", (p, p), [(p, p), (p, neg(p)), (neg(p), p), (neg(p), neg(p))])
    for p in (0, h):
        for q in range(1, h):
            add("M4-axis", (p, q), [(p, q), (q, p), (p, neg(q)), (neg(q), p)])
    add("M2-cross", (0, h), [(0, h), (h, 0)])
    add("M1", (0, 0), [(0, 0)])
    add("M1", (h, h), [(h, h)])
    return out


@dataclass
class GraphSpectrumReport:
    kind: str
    n: int
    analytic_eigenvalues: np.ndarray
    classes: list[EigenClass]
    observed: list[tuple[float, int]]
    merges: list[dict]
    partition_ok: bool
    multiplicities_ok: bool
    spectrum_ok: bool
    max_residual: float | None = None

    @property
    def census_ok(self) -> bool:
        return self.partition_ok and self.multiplicities_ok and self.spectrum_ok

    def class_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for c in self.classes:
            counts[c.tag] = counts.get(c.tag, 0) + 1
        return counts

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "analytic_eigenvalues": [float(v) for v in np.ravel(self.analytic_eigenvalues)],
            "classes": [c.as_dict() for c in self.classes],
            "merges": self.merges,
            "observed_multiplicities": [{"mu": mu, "count": k} for mu, k in self.observed],
            "census_ok": self.census_ok,
            "max_residual": self.max_residual,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _census(kind: str, n: int, classes: list[EigenClass], analytic, laplacian) -> GraphSpectrumReport:
    flat = np.ravel(analytic)
    all_indices = [m for c in classes for m in c.members]
    if kind == "cycle":
        universe = set(range(n))
    else:
        universe = {(p, q) for p in range(n) for q in range(n)}
    partition_ok = len(all_indices) == len(universe) and set(all_indices) == universe
    partition_ok &= all(c.size == CLASS_SIZES[c.tag] for c in classes)

    observed = group_eigenvalues(numerical_eigenvalues(laplacian))
    analytic_groups = group_eigenvalues(flat)
    spectrum_ok = len(observed) == len(analytic_groups) and all(
        abs(a[0] - o[0]) <= GROUPING_TOL and a[1] == o[1]
        for a, o in zip(analytic_groups, observed)
    )

    merges = []
    multiplicities_ok = True
    for mu, count in observed:
        at_mu = [c for c in classes if abs(c.mu - mu) <= GROUPING_TOL]
        if sum(c.size for c in at_mu) != count:
            multiplicities_ok = False
        if len(at_mu) > 1:
            merges.append({
                "mu": mu,
                "observed_multiplicity": count,
                "classes": [{"tag": c.tag, "representative": _jsonable(c.representative),
                             "size": c.size} for c in at_mu],
            })
    return GraphSpectrumReport(kind, n, analytic, classes, observed, merges,
                               partition_ok, multiplicities_ok, spectrum_ok)


def multiplicity_census_1d(n: int) -> GraphSpectrumReport:
    """Singletons at 0 and N/2, doubletons ``{k, N-k}``, cross-checked numerically."""
    require_sdft_size(n)
    return _census("cycle", n, _classes_1d(n), cycle_eigenvalues(n), cycle_laplacian(n))


def multiplicity_census_2d(n: int) -> GraphSpectrumReport:
    """The five torus index classes (sizes 8, 4, 4, 2, 1) plus observed merges.

    Distinct classes can share an eigenvalue: at N=8, the classes of (1,3),
    (2,2) and (0,4) all sit at 4 and the numerical multiplicity there is 14.
    """
    require_sdft_size(n)
    return _census("torus", n, _classes_2d(n), torus_eigenvalues(n), torus_laplacian(n))


def verify_eigenbasis(laplacian: GraphLaplacian, rows, eigvals) -> float:
    """Max over rows of ``||L conj(r) - lam conj(r)||_inf / max(1, ||r||_inf)``.

    Rows are transform rows (``V = Phi^H``), hence the conjugate.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=np.complex128))
    eigvals = np.asarray(eigvals, dtype=np.float64).ravel()
    nv = laplacian.n_vertices
    if rows.shape[1] != nv or rows.shape[0] != eigvals.size:
        raise InvalidInputError(
            f"{rows.shape[0]} rows of length {rows.shape[1]} and {eigvals.size} eigenvalues "
            f"do not fit a {nv}-vertex Laplacian"
        )
    vecs = rows.conj()
    resid = vecs @ laplacian.matrix.T.astype(np.float64) - eigvals[:, None] * vecs
    scale = np.maximum(1.0, np.max(np.abs(rows), axis=1))
    return float(np.max(np.max(np.abs(resid), axis=1) / scale))


def spectrum_report(dim: int, n: int, keys=None) -> GraphSpectrumReport:
    """Census plus eigen-residual of the (optionally rotated) SDFT basis.

    ``keys`` is a ThetaKey1D for ``dim=1``; for ``dim=2`` a ThetaKey2D or a
    list of them.  Without keys the plain DFT basis is checked.
    """
    if dim == 1:
        report = multiplicity_census_1d(n)
        key = keys if keys is not None else ThetaKey1D.zeros(n)
        rows = sdft_matrix_1d(key)
        report.max_residual = verify_eigenbasis(cycle_laplacian(n), rows, cycle_eigenvalues(n))
    elif dim == 2:
        report = multiplicity_census_2d(n)
        key = keys if keys is not None else ThetaKey2D.zeros(n)
        rows = sdft_matrix_2d(key)
        report.max_residual = verify_eigenbasis(torus_laplacian(n), rows, torus_eigenvalues(n))
    else:
        raise InvalidInputError(f"dim must be 1 or 2, got {dim}")
    return report

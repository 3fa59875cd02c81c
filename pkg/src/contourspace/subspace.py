"""Corpus-level low-rank modeling of contour radii.

All radius vectors of a corpus are stacked into one n_bins x L matrix and
a single orthonormal basis is fit to it, either by plain SVD or by an
iteratively reweighted least-absolute-deviations scheme (fast median
subspace). Every local contour of every object is then represented by its
coefficients against that shared basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .contours import HierarchicalEncoding

METHOD_SVD = "svd"
METHOD_FMS = "fms"


@dataclass(frozen=True)
class ContourMatrix:
    """Column-stacked radii (n_bins, n_contours) with a per-column map to
    the source object index."""

    data: np.ndarray
    object_index: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.data, dtype=float)
        idx = np.asarray(self.object_index, dtype=int)
        if d.ndim != 2:
            raise ValueError("contour matrix must be 2D")
        if idx.shape != (d.shape[1],):
            raise ValueError("object_index must have one entry per column")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise ValueError("contour matrix entries must be finite and >= 0")
        object.__setattr__(self, "data", d)
        object.__setattr__(self, "object_index", idx)

    @property
    def n_bins(self) -> int:
        return self.data.shape[0]

    @property
    def n_contours(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis (n_bins, rank) plus how it was fit."""

    basis: np.ndarray
    method: str
    fit_metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        u = np.asarray(self.basis, dtype=float)
        if u.ndim != 2 or u.shape[1] < 1:
            raise ValueError("basis must be an (n_bins, rank) matrix")
        gram_err = np.linalg.norm(u.T @ u - np.eye(u.shape[1]))
        if gram_err > 1e-8:
            raise ValueError(f"basis not orthonormal (error {gram_err:.2e})")
        if self.method not in (METHOD_SVD, METHOD_FMS):
            raise ValueError(f"unknown method {self.method!r}")
        object.__setattr__(self, "basis", u)

    @property
    def n_bins(self) -> int:
        return self.basis.shape[0]

    @property
    def rank(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class CoefficientSet:
    """Per-object coefficient matrices (rank, K_j) against one basis,
    identified by the basis content hash."""

    coefficients: tuple[np.ndarray, ...]
    basis_hash: str

    def __post_init__(self):
        mats = tuple(np.asarray(m, dtype=float) for m in self.coefficients)
        if not mats:
            raise ValueError("coefficient set must hold at least one object")
        rank = mats[0].shape[0]
        for m in mats:
            if m.ndim != 2 or m.shape[0] != rank or m.shape[1] < 1:
                raise ValueError("coefficient matrices must share the basis rank")
        object.__setattr__(self, "coefficients", mats)

    @property
    def rank(self) -> int:
        return self.coefficients[0].shape[0]

    @property
    def n_objects(self) -> int:
        return len(self.coefficients)


def build_contour_matrix(encodings) -> ContourMatrix:
    """Concatenate the radii of all local contours, corpus order first,
    per-object leaf order second."""
    encs = list(encodings)
    if not encs:
        raise ValueError("need at least one encoding")
    n_bins = encs[0].n_bins
    cols = []
    index = []
    for j, enc in enumerate(encs):
        if enc.n_bins != n_bins:
            raise ValueError("encodings disagree on n_bins")
        cols.append(enc.radii_matrix())
        index.extend([j] * len(enc))
    return ContourMatrix(np.concatenate(cols, axis=1), np.array(index, dtype=int))


def _check_rank(a: ContourMatrix, m: int) -> None:
    limit = min(a.n_bins, a.n_contours)
    if not (1 <= m <= limit):
        raise ValueError(f"rank must be in [1, {limit}], got {m}")


def _fix_signs(u: np.ndarray) -> np.ndarray:
    """Flip column signs so each vector's largest-magnitude entry is
    positive (first such entry on ties). Makes serialization reproducible."""
    u = u.copy()
    for k in range(u.shape[1]):
        idx = int(np.argmax(np.abs(u[:, k])))
        if u[idx, k] < 0:
            u[:, k] = -u[:, k]
    return u


def _l1_objective(u: np.ndarray, data: np.ndarray) -> float:
    resid = data - u @ (u.T @ data)
    return float(np.linalg.norm(resid, axis=0).sum())


def svd_basis(a: ContourMatrix, m: int) -> SubspaceBasis:
    """Top-m left singular vectors of the contour matrix."""
    _check_rank(a, m)
    u_full, s, _ = np.linalg.svd(a.data, full_matrices=False)
    u = _fix_signs(u_full[:, :m])
    meta = {
        "iterations": 0,
        "final_objective": _l1_objective(u, a.data),
        "singular_values": s[:m].tolist(),
    }
    return SubspaceBasis(u, METHOD_SVD, meta)


def fms_basis(
    a: ContourMatrix,
    m: int,
    delta: float = 1e-10,
    max_iter: int = 100,
    tol: float = 1e-8,
) -> SubspaceBasis:
    """Least-absolute-deviations subspace by iterative reweighting.

    Starts from the SVD solution; each step reweights columns by the
    inverse of their current residual norm (floored at delta) and takes
    the top-m eigenvectors of the weighted Gram matrix. Stops when the
    objective sum of column residual norms decreases by less than
    tol * (1 + objective).
    """
    _check_rank(a, m)
    if delta <= 0:
        raise ValueError("delta must be positive")
    data = a.data
    u = svd_basis(a, m).basis
    obj = _l1_objective(u, data)
    trace = [obj]
    orth_trace = [float(np.linalg.norm(u.T @ u - np.eye(m)))]
    eigvals = None
    for _ in range(max_iter):
        resid = np.linalg.norm(data - u @ (u.T @ data), axis=0)
        weights = 1.0 / np.maximum(resid, delta)
        gram = (data * weights) @ data.T
        vals, vecs = np.linalg.eigh(gram)
        u_new = vecs[:, ::-1][:, :m]          # descending weighted eigenvalue
        eigvals = vals[::-1][:m]
        new_obj = _l1_objective(u_new, data)
        trace.append(new_obj)
        orth_trace.append(float(np.linalg.norm(u_new.T @ u_new - np.eye(m))))
        converged = obj - new_obj < tol * (1.0 + new_obj)
        u, obj = u_new, new_obj
        if converged:
            break
    meta = {
        "iterations": len(trace) - 1,
        "final_objective": obj,
        "objective_trace": trace,
        "orthonormality_trace": orth_trace,
        "weighted_eigenvalues": None if eigvals is None else eigvals.tolist(),
    }
    return SubspaceBasis(_fix_signs(u), METHOD_FMS, meta)


def project(basis: SubspaceBasis, encodings, basis_hash: str = "") -> CoefficientSet:
    """Coefficients U^T R per object for one encoding or a sequence."""
    if isinstance(encodings, HierarchicalEncoding):
        encodings = [encodings]
    mats = []
    for enc in encodings:
        if enc.n_bins != basis.n_bins:
            raise ValueError("encoding n_bins does not match basis")
        mats.append(basis.basis.T @ enc.radii_matrix())
    return CoefficientSet(tuple(mats), basis_hash)


def reconstruct_radii(basis: SubspaceBasis, coeffs: CoefficientSet) -> list[np.ndarray]:
    """Radii U @ Omega per object, clamped entrywise to >= 0 since radii
    are distances. Clamping happens here, never during fitting."""
    if coeffs.rank != basis.rank:
        raise ValueError("coefficient rank does not match basis rank")
    return [np.maximum(basis.basis @ omega, 0.0) for omega in coeffs.coefficients]


def effective_rank(a: ContourMatrix) -> float:
    """Numerical sparsity of the singular values: (sum s)^2 / sum s^2.

    Singular values come from the n_bins x n_bins Gram matrix, which stays
    small however many contours the corpus has.
    """
    gram = a.data @ a.data.T
    eig = np.clip(np.linalg.eigvalsh(gram), 0.0, None)
    total = eig.sum()
    if total == 0.0:
        raise ValueError("effective_rank of an all-zero contour matrix")
    s = np.sqrt(eig)
    return float(s.sum() ** 2 / total)

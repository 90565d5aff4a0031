"""Tolerance-disciplined dense complex linear algebra.

Hermitian and unitary eigendecompositions, SVD-based kernel bases, and
orthonormal subspace arithmetic. Everything is a pure function of its
inputs; matrices are never mutated, and eigenvector phases follow a fixed
convention so identical inputs give identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotUnitary


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds for validation, rank, and clustering decisions.

    ``structural`` bounds residuals of algebraic identities (unitarity,
    involutivity, commutation). ``rank`` is the relative singular-value
    cutoff for kernel and rank decisions. ``cluster`` is the absolute gap
    below which nearby eigenvalues are grouped together.
    """

    structural: float = 1e-10
    rank: float = 1e-8
    cluster: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("structural", "rank", "cluster"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(
                    f"tolerance {name!r} must lie strictly between 0 and 1, got {value}"
                )


DEFAULT_TOL = Tolerance()


def _maxabs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array with finite entries."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array of shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def as_square_matrix(a) -> np.ndarray:
    arr = as_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    return arr


def _canonical_phases(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    if v.size == 0:
        return v
    out = np.array(v)
    pivots = np.argmax(np.abs(out), axis=0)
    for k in range(out.shape[1]):
        entry = out[pivots[k], k]
        mag = abs(entry)
        if mag > 0.0:
            out[:, k] *= entry.conjugate() / mag
    return out


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^ambient_dim given by orthonormal basis columns."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self) -> None:
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                f"basis of shape {self.basis.shape} does not sit in "
                f"dimension {self.ambient_dim}"
            )

    @classmethod
    def from_columns(cls, columns, tol: Tolerance = DEFAULT_TOL) -> "Subspace":
        """Build a subspace, verifying the columns are orthonormal."""
        b = as_matrix(columns)
        gram = b.conj().T @ b
        residual = _maxabs(gram - np.eye(b.shape[1]))
        if residual > tol.structural:
            raise DimensionMismatch(
                f"basis columns are not orthonormal: Gram residual {residual:.3e}"
            )
        return cls(b.shape[0], b)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def residual_outside(self, other: "Subspace") -> float:
        """Largest component of this basis outside the other subspace."""
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient dimensions")
        if self.dim == 0:
            return 0.0
        return _maxabs(self.basis - other.projector() @ self.basis)


def spans_match(a: Subspace, b: Subspace) -> tuple[bool, float]:
    """Whether two subspaces coincide: equal dimension and mutual residual.

    The residual is the larger of the two one-sided projection residuals;
    on a dimension mismatch it is the integer gap between the dimensions.
    """
    if a.dim != b.dim:
        return False, float(abs(a.dim - b.dim))
    residual = max(a.residual_outside(b), b.residual_outside(a))
    return True, residual


def unitarity_residual(a) -> float:
    m = as_square_matrix(a)
    return _maxabs(m.conj().T @ m - np.eye(m.shape[0]))


def involution_residual(a) -> float:
    m = as_square_matrix(a)
    return _maxabs(m @ m - np.eye(m.shape[0]))


def hermiticity_residual(a) -> float:
    m = as_square_matrix(a)
    return _maxabs(m - m.conj().T)


def is_unitary(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    return unitarity_residual(a) <= tol.structural


def is_involution(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    return involution_residual(a) <= tol.structural


def is_hermitian(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    return hermiticity_residual(a) <= tol.structural


def kernel_basis(a, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of the numerical null space of a matrix.

    Right singular vectors whose singular values are at most
    ``tol.rank * sigma_max`` (with ``sigma_max`` replaced by 1 for a zero
    matrix) span the returned subspace; its dimension is the numerical
    nullity. Rectangular inputs are allowed.
    """
    m = as_matrix(a)
    cols = m.shape[1]
    if m.size == 0:
        if m.shape[0] == 0:
            return Subspace(cols, np.eye(cols, dtype=np.complex128))
        return Subspace(cols, np.empty((cols, 0), dtype=np.complex128))
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    # A matrix whose largest singular value is itself below the cutoff at
    # the natural scale 1 counts as zero; operators here have norm <= 2,
    # so this keeps the relative rule from declaring roundoff full-rank.
    cutoff = tol.rank * (smax if smax > tol.rank else 1.0)
    rank = int(np.sum(s > cutoff))
    return Subspace(cols, _canonical_phases(vh[rank:].conj().T))


def eig_hermitian(a, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Returns ``(values, vectors)`` with orthonormal eigenvector columns
    and canonical phases. Raises :class:`NotHermitian` when the
    Hermiticity residual exceeds ``tol.structural``.
    """
    m = as_square_matrix(a)
    residual = hermiticity_residual(m)
    if residual > tol.structural:
        raise NotHermitian(
            f"matrix is not Hermitian: residual {residual:.6e} exceeds "
            f"{tol.structural:.6e}"
        )
    w, v = np.linalg.eigh(m)
    return w, _canonical_phases(v)


def _cluster_slices(sorted_values: np.ndarray, gap: float):
    """Consecutive index ranges of a sorted real array separated by > gap."""
    n = len(sorted_values)
    start = 0
    for k in range(1, n):
        if sorted_values[k] - sorted_values[k - 1] > gap:
            yield start, k
            start = k
    if n:
        yield start, n


def eig_unitary(a, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a unitary matrix.

    Eigenvalues are unimodular, sorted by principal argument in
    (-pi, pi]; eigenvectors are orthonormal even inside degenerate
    eigenspaces. The Hermitian part is diagonalized first and each of its
    eigenvalue clusters is then split by the anti-Hermitian part, so the
    returned columns simultaneously diagonalize both commuting pieces.
    """
    m = as_square_matrix(a)
    residual = unitarity_residual(m)
    if residual > tol.structural:
        raise NotUnitary(
            f"matrix is not unitary: residual {residual:.6e} exceeds "
            f"{tol.structural:.6e}"
        )
    n = m.shape[0]
    real_part = (m + m.conj().T) / 2.0
    imag_part = (m - m.conj().T) / 2.0j
    w, v = np.linalg.eigh(real_part)
    values = np.empty(n, dtype=np.complex128)
    for start, stop in _cluster_slices(w, tol.cluster):
        block = v[:, start:stop]
        if stop - start > 1:
            sub = block.conj().T @ imag_part @ block
            _, rot = np.linalg.eigh((sub + sub.conj().T) / 2.0)
            block = block @ rot
            v[:, start:stop] = block
        for k in range(start, stop):
            values[k] = v[:, k].conj() @ m @ v[:, k]
    args = np.angle(values)
    args[args <= -np.pi + 1e-14] += 2.0 * np.pi
    order = np.argsort(args, kind="stable")
    return values[order], _canonical_phases(v[:, order])


def subspace_intersection(s1: Subspace, s2: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of the intersection of two subspaces.

    Computed as the kernel of the stacked projector complements: a vector
    lies in both subspaces exactly when both complements annihilate it.
    """
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}"
        )
    n = s1.ambient_dim
    eye = np.eye(n)
    stacked = np.vstack([eye - s1.projector(), eye - s2.projector()])
    return kernel_basis(stacked, tol)

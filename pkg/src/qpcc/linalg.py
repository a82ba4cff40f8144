"""Dense complex linear algebra for small systems, and validated state/observable types.

Matrices are plain ``numpy`` complex128 arrays. The eigensolver is a cyclic
Jacobi method for Hermitian matrices, which is accurate and fast enough at
the sizes used here (d <= 8, hard limit 64).
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPhysical, NotUnitary

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
MAX_DIM = 64

_OFFDIAG_TOL = 1e-12
_DEGENERACY_GAP = 1e-9
_MAX_SWEEPS = 100


class Eigendecomposition(NamedTuple):
    values: np.ndarray  # real, descending
    vectors: np.ndarray  # orthonormal columns

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def as_complex_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a finite 2-D complex128 array (copy)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def hermiticity_error(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def _mgs(cols: np.ndarray) -> np.ndarray:
    out = cols.copy()
    for k in range(out.shape[1]):
        v = out[:, k]
        for j in range(k):
            v = v - np.vdot(out[:, j], v) * out[:, j]
        out[:, k] = v / np.linalg.norm(v)
    return out


def hermitian_eig(m, tol: float = HERMITIAN_TOL) -> Eigendecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Eigenvalues are returned in descending order. Within a cluster of
    eigenvalues closer than 1e-9 the eigenvectors are re-orthonormalized by
    modified Gram-Schmidt so the output is deterministic.
    """
    a = as_complex_matrix(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch(f"expected a square matrix, got {a.shape}")
    if n > MAX_DIM:
        raise DimensionMismatch(f"dimension {n} exceeds {MAX_DIM}")
    if hermiticity_error(a) > tol:
        raise NotHermitian(f"max|M - M^H| = {hermiticity_error(a):.3e} > {tol}")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=np.complex128)
    scale = max(1.0, float(np.linalg.norm(a)))

    for _ in range(_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < _OFFDIAG_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                cph = apq.conjugate() / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * cph, c * cph]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ rot
    else:  # pragma: no cover - Jacobi converges quadratically
        raise ArithmeticError("Jacobi iteration did not converge")

    vals = np.diag(a).real.copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    v = v[:, order]
    start = 0
    for k in range(1, n + 1):
        if k == n or vals[k - 1] - vals[k] >= _DEGENERACY_GAP:
            if k - start > 1:
                v[:, start:k] = _mgs(v[:, start:k])
            start = k
    return Eigendecomposition(vals, v)


def tensor(*ops) -> np.ndarray:
    """Kronecker product of one or more matrices."""
    out = np.array([[1.0 + 0j]])
    for op in ops:
        out = np.kron(out, as_complex_matrix(op))
    return out


def is_unitary(u: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    u = np.asarray(u)
    return u.shape[0] == u.shape[1] and np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol


class DensityOperator:
    """A validated density matrix: Hermitian, unit trace, positive semidefinite.

    ``dims`` records the subsystem factorization; a 4x4 state defaults to
    two qubits. Instances are immutable (the stored array is read-only).
    """

    __slots__ = ("_matrix", "dims", "_eig")

    def __init__(self, matrix, dims: Sequence[int] | None = None):
        a = as_complex_matrix(matrix, "density matrix")
        d = a.shape[0]
        if a.shape != (d, d) or d < 2:
            raise DimensionMismatch(f"density matrix must be square with d >= 2, got {a.shape}")
        if dims is None:
            dims = (2, 2) if d == 4 else (d,)
        dims = tuple(int(x) for x in dims)
        if math.prod(dims) != d:
            raise DimensionMismatch(f"dims {dims} do not multiply to {d}")
        herr = hermiticity_error(a)
        if herr > HERMITIAN_TOL:
            raise NotHermitian(f"state not Hermitian: max|S - S^H| = {herr:.3e}")
        tr = np.trace(a).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotPhysical(f"trace is {tr:.12g}, expected 1")
        eig = hermitian_eig(a)
        if eig.values[-1] < -PSD_TOL:
            raise NotPhysical(f"negative eigenvalue {eig.values[-1]:.3e}")
        a.setflags(write=False)
        self._matrix = a
        self.dims = dims
        self._eig = eig

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eig.values

    @property
    def eig(self) -> Eigendecomposition:
        return self._eig

    def __array__(self, dtype=None, copy=None):
        return np.array(self._matrix, dtype=dtype)

    def __repr__(self) -> str:
        return f"DensityOperator(dims={self.dims})"


class Observable:
    """Hermitian operator with a cached descending eigendecomposition."""

    __slots__ = ("_matrix", "eigenvalues", "eigenvectors")

    def __init__(self, matrix):
        a = as_complex_matrix(matrix, "observable")
        if a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"observable must be square, got {a.shape}")
        eig = hermitian_eig(a)
        a = 0.5 * (a + a.conj().T)
        a.setflags(write=False)
        self._matrix = a
        self.eigenvalues = eig.values
        self.eigenvectors = eig.vectors

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def __repr__(self) -> str:
        return f"Observable(eigenvalues={np.round(self.eigenvalues, 6).tolist()})"


def _matrix_of(x) -> np.ndarray:
    return x.matrix if isinstance(x, (DensityOperator, Observable)) else as_complex_matrix(x)


def partial_trace(state: DensityOperator, trace_out: str = "B", dims: Sequence[int] | None = None) -> DensityOperator:
    """Reduced state of a bipartite operator after tracing out side ``A`` or ``B``."""
    dims = tuple(dims) if dims is not None else state.dims
    if len(dims) != 2 or dims[0] * dims[1] != state.dim:
        raise DimensionMismatch(f"cannot split dimension {state.dim} as {dims}")
    da, db = dims
    r = state.matrix.reshape(da, db, da, db)
    if trace_out == "B":
        red = np.einsum("ajbj->ab", r)
    elif trace_out == "A":
        red = np.einsum("iaib->ab", r)
    else:
        raise ValueError(f"trace_out must be 'A' or 'B', got {trace_out!r}")
    return DensityOperator(red)


def apply_local_unitary(state: DensityOperator, u, v) -> DensityOperator:
    """Return (U (x) V) S (U (x) V)^dagger."""
    u = as_complex_matrix(u, "U")
    v = as_complex_matrix(v, "V")
    for name, w in (("U", u), ("V", v)):
        if not is_unitary(w):
            raise NotUnitary(f"{name} is not unitary")
    w = np.kron(u, v)
    if w.shape[0] != state.dim:
        raise DimensionMismatch(f"local unitaries act on {w.shape[0]}, state has {state.dim}")
    return DensityOperator(w @ state.matrix @ w.conj().T, state.dims)


def purity(state: DensityOperator) -> float:
    return float(np.real(np.trace(state.matrix @ state.matrix)))


def partial_transpose(state: DensityOperator, side: str = "B") -> np.ndarray:
    """Partial transpose over one subsystem (a Hermitian matrix, not necessarily a state)."""
    da, db = state.dims
    r = state.matrix.reshape(da, db, da, db)
    if side == "B":
        r = r.transpose(0, 3, 2, 1)
    elif side == "A":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return r.reshape(state.dim, state.dim)

"""Named two-qubit state families and seeded random-state generators.

All random generators take ``seed`` as an int, a sequence of ints, or a
``numpy.random.Generator`` (PCG64 via ``numpy.random.default_rng``).
"""

from __future__ import annotations

import numpy as np

from .errors import NotAProbabilityTable, NotPhysical, OutOfRange
from .linalg import DensityOperator, as_complex_matrix, hermitian_eig
from .paulis import IDENTITY, PAULIS

_PHI = np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)
BELL_PHI = np.outer(_PHI, _PHI.conj())
KET00_PROJ = np.diag([1, 0, 0, 0]).astype(np.complex128)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must lie in [0, 1], got {p}")
    return p


def bell_phi() -> DensityOperator:
    """Projector onto (|00> + |11>)/sqrt(2)."""
    return DensityOperator(BELL_PHI)


def werner(p: float) -> DensityOperator:
    """p * Phi + (1 - p) * I/4."""
    p = _check_p(p)
    return DensityOperator(p * BELL_PHI + (1 - p) * np.eye(4) / 4)


def horodecki(p: float) -> DensityOperator:
    """p * Phi + (1 - p) * |00><00|. At p = 0 this is a pure product state."""
    p = _check_p(p)
    return DensityOperator(p * BELL_PHI + (1 - p) * KET00_PROJ)


def classical_diag(table) -> DensityOperator:
    """sum_{k,l} P[k, l] |k><k| (x) |l><l| for a 2x2 joint probability table."""
    t = np.asarray(table, dtype=float)
    if t.shape != (2, 2) or not np.all(np.isfinite(t)):
        raise NotAProbabilityTable(f"expected a finite 2x2 table, got shape {t.shape}")
    if np.any(t < 0) or abs(t.sum() - 1.0) > 1e-12:
        raise NotAProbabilityTable(f"entries must be >= 0 and sum to 1 (sum = {t.sum():.15g})")
    return DensityOperator(np.diag(t.ravel()).astype(np.complex128))


def bell_diagonal_matrix(t) -> np.ndarray:
    """(I(x)I + sum_k t_k P_k (x) P_k) / 4 without any validation."""
    m = np.kron(IDENTITY, IDENTITY).astype(np.complex128)
    for tk, pk in zip(t, PAULIS):
        m = m + tk * np.kron(pk, pk)
    return m / 4


def standard_form_state(t1: float, t2: float, t3: float) -> DensityOperator:
    """Bell-diagonal state with correlation tensor diag(t1, t2, t3)."""
    m = bell_diagonal_matrix((t1, t2, t3))
    lam = hermitian_eig(m).values
    if lam[-1] < -1e-10:
        raise NotPhysical(
            f"t = ({t1}, {t2}, {t3}) lies outside the Bell tetrahedron (min eigenvalue {lam[-1]:.3e})"
        )
    return DensityOperator(m)


def ginibre_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return m / np.trace(m).real


def haar_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix with phase fix."""
    rng = _rng(seed)
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density(dim: int, seed=None) -> DensityOperator:
    if dim < 2:
        raise OutOfRange(f"dim must be >= 2, got {dim}")
    return DensityOperator(ginibre_density(dim, _rng(seed)))


def random_separable(seed=None, terms: int = 4) -> DensityOperator:
    """Convex mixture of ``terms`` random mixed product states with Dirichlet weights."""
    if terms < 1:
        raise OutOfRange(f"terms must be >= 1, got {terms}")
    rng = _rng(seed)
    w = rng.dirichlet(np.ones(terms))
    m = np.zeros((4, 4), dtype=np.complex128)
    for wi in w:
        m += wi * np.kron(ginibre_density(2, rng), ginibre_density(2, rng))
    return DensityOperator(m)


def random_probability_table(seed=None) -> np.ndarray:
    return _rng(seed).dirichlet(np.ones(4)).reshape(2, 2)


def random_classical(seed=None, unitaries: bool = True) -> DensityOperator:
    """Diagonal classical state conjugated by independent Haar single-qubit unitaries."""
    rng = _rng(seed)
    core = classical_diag(random_probability_table(rng))
    if not unitaries:
        return core
    w = np.kron(haar_unitary(2, rng), haar_unitary(2, rng))
    return DensityOperator(w @ core.matrix @ w.conj().T)


def random_standard_form(seed=None, max_tries: int = 1000) -> tuple[DensityOperator, np.ndarray]:
    """Uniform sample of the Bell tetrahedron by rejection from the cube [-1, 1]^3."""
    rng = _rng(seed)
    for _ in range(max_tries):
        t = rng.uniform(-1.0, 1.0, 3)
        if hermitian_eig(bell_diagonal_matrix(t)).values[-1] >= 0.0:
            return DensityOperator(bell_diagonal_matrix(t)), t
    raise RuntimeError("rejection sampling failed")  # pragma: no cover


def from_matrix(matrix, dims=None) -> DensityOperator:
    return DensityOperator(as_complex_matrix(matrix), dims)

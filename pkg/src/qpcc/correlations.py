"""Total correlations from Pearson coefficients over complementary frames.

For two qubits every triplet of pairwise complementary dichotomic
observables is {a_i . sigma} for the rows a_i of an orthogonal matrix, so
the maximization runs over pairs of rotations (one per side). The search
is a multistart Nelder-Mead over z-y-z Euler angles, seeded with the
identity frame and the singular-vector frames of the correlation matrix C,
and executed by the compiled kernel when available (see ``qpcc.kernel``).

The optimized value is the best frame actually evaluated, so it is a lower
bound on the true supremum; the spectral/trace norm bounds give upper context.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import NonConvergence, NotClassicalForm, SingularMarginal, UndefinedPCC
from .fano import FanoDecomposition, decompose, is_standard_form
from .linalg import DensityOperator, Observable, hermitian_eig, partial_transpose, purity
from .paulis import bloch_operator
from .statistics import VAR_EPS, pcc, pcc_bloch

MUB_COUNT_QUBIT = 3  # X, Y, Z: a complete set of mutually unbiased bases for d = 2

UNCORRELATED = "uncorrelated"
CLASSICAL = "classical-compatible"
QUANTUM = "quantum-certified"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not-applicable"

_ORTHO_TOL = 1e-10
_PRODUCT_TOL = 1e-10
_PURE_MARGINAL = 1.0 - 1e-10


@dataclass(frozen=True)
class OptimizerOptions:
    restarts: int = 32
    max_iters: int = 2000
    xtol: float = 1e-10
    ftol: float = 1e-10
    seed: int = 42
    tol: float = 1e-6  # classification tolerance on r-value comparisons
    step: float = 0.4  # initial simplex edge in radians
    polish: int = 3  # Nelder-Mead restarts from each converged optimum
    backend: str | None = None  # None: whatever qpcc.kernel selected

    def __post_init__(self):
        if self.restarts < 0 or self.max_iters < 1 or self.polish < 0:
            raise ValueError("restarts and polish must be >= 0, max_iters >= 1")
        if not (self.xtol > 0 and self.ftol > 0 and self.tol > 0 and self.step > 0):
            raise ValueError("tolerances and step must be positive")


# -- rotations ---------------------------------------------------------------


def euler_matrix(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """Rz(alpha) Ry(beta) Rz(gamma)."""
    return np.array(kernel.get("python").euler_rows(alpha, beta, gamma))


def euler_angles(r: np.ndarray) -> tuple[float, float, float]:
    """Inverse of :func:`euler_matrix` for a proper rotation."""
    r = np.asarray(r, dtype=float)
    beta = math.acos(max(-1.0, min(1.0, r[2, 2])))
    if math.sin(beta) > 1e-12:
        return math.atan2(r[1, 2], r[0, 2]), beta, math.atan2(r[2, 1], -r[2, 0])
    if r[2, 2] > 0:
        return math.atan2(r[1, 0], r[0, 0]), 0.0, 0.0
    return math.atan2(-r[0, 1], -r[0, 0]), math.pi, 0.0


def _proper(r: np.ndarray) -> np.ndarray:
    r = np.array(r, dtype=float)
    if np.linalg.det(r) < 0:
        r[2] = -r[2]
    return r


def sphere_angles(v) -> tuple[float, float]:
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    return math.acos(max(-1.0, min(1.0, v[2]))), math.atan2(v[1], v[0])


# -- frames ------------------------------------------------------------------


@dataclass(frozen=True)
class MeasurementFrame:
    """Two triplets of complementary dichotomic observables.

    Row i of ``frame_a`` (``frame_b``) is the Bloch direction of the i-th
    observable on side A (B). Both matrices must be orthogonal; a
    determinant of -1 only flips the sign of one observable.
    """

    frame_a: np.ndarray
    frame_b: np.ndarray

    def __post_init__(self):
        for name in ("frame_a", "frame_b"):
            r = np.array(getattr(self, name), dtype=float)
            if r.shape != (3, 3) or np.max(np.abs(r @ r.T - np.eye(3))) > _ORTHO_TOL:
                raise ValueError(f"{name} must be a 3x3 orthogonal matrix")
            r.setflags(write=False)
            object.__setattr__(self, name, r)

    @classmethod
    def pauli(cls) -> "MeasurementFrame":
        return cls(np.eye(3), np.eye(3))

    @classmethod
    def from_angles(cls, angles) -> "MeasurementFrame":
        return cls(euler_matrix(*angles[:3]), euler_matrix(*angles[3:6]))

    def to_angles(self) -> list[float]:
        return [*euler_angles(_proper(self.frame_a)), *euler_angles(_proper(self.frame_b))]

    def observables(self) -> list[tuple[Observable, Observable]]:
        return [
            (Observable(bloch_operator(a)), Observable(bloch_operator(b)))
            for a, b in zip(self.frame_a, self.frame_b)
        ]

    def as_dict(self) -> dict:
        return {"frame_a": self.frame_a.tolist(), "frame_b": self.frame_b.tolist()}


def svd_frame(f: FanoDecomposition) -> MeasurementFrame:
    """Frame of left/right singular vectors of C; exact optimum for Bell-diagonal states."""
    u, _, vt = np.linalg.svd(f.C)
    return MeasurementFrame(_proper(u.T), _proper(vt))


def pair_pccs(state: DensityOperator, frame: MeasurementFrame) -> list[float]:
    """Signed PCC of each observable pair, computed from traces against the state."""
    return [pcc(state, a, b) for a, b in frame.observables()]


def pair_sum(state: DensityOperator, frame: MeasurementFrame) -> float:
    """sum_i |PCC(A_i, B_i)| for the frame's three pairs."""
    return float(sum(abs(r) for r in pair_pccs(state, frame)))


# -- bounds and closed forms --------------------------------------------------


def _marginal_factor(f: FanoDecomposition) -> float:
    nn, ss = float(f.n @ f.n), float(f.s @ f.s)
    if math.sqrt(nn) >= _PURE_MARGINAL or math.sqrt(ss) >= _PURE_MARGINAL:
        raise SingularMarginal(f"pure marginal (|n| = {math.sqrt(nn):.12g}, |s| = {math.sqrt(ss):.12g})")
    return math.sqrt((1.0 - nn) * (1.0 - ss))


def bounds(f: FanoDecomposition) -> tuple[float, float]:
    """(spectral, trace) norm of C over sqrt((1 - |n|^2)(1 - |s|^2)).

    The first bounds every single-pair |PCC|; the second bounds the frame
    sum for separable states.
    """
    den = _marginal_factor(f)
    sv = np.linalg.svd(f.C, compute_uv=False)
    return float(sv[0] / den), float(sv.sum() / den)


def classical_r_closed_form(f: FanoDecomposition, tol: float = 1e-8) -> float:
    """|t33 - n3 s3| / sqrt((1 - n3^2)(1 - s3^2)) in the frame that diagonalizes a classical state.

    The state must be locally equivalent to a mixture of products of
    orthonormal projectors: C of rank <= 1, with n and s along its singular
    vectors. Raises NotClassicalForm otherwise.
    """
    u, sv, vt = np.linalg.svd(f.C)
    if sv[1] > tol:
        raise NotClassicalForm(f"C has rank > 1 (singular values {np.round(sv, 10).tolist()})")
    if sv[0] <= tol:
        return 0.0
    a, b = u[:, 0], vt[0]
    n3, s3 = float(a @ f.n), float(b @ f.s)
    if np.linalg.norm(f.n - n3 * a) > tol or np.linalg.norm(f.s - s3 * b) > tol:
        raise NotClassicalForm("local Bloch vectors are not aligned with the correlated axes")
    den = (1.0 - n3 * n3) * (1.0 - s3 * s3)
    if den <= VAR_EPS:
        raise UndefinedPCC("pure marginal along the correlated axis")
    return abs(float(a @ f.T @ b) - n3 * s3) / math.sqrt(den)


def negativity(state: DensityOperator) -> float:
    """Sum of |negative eigenvalues| of the partial transpose."""
    lam = hermitian_eig(partial_transpose(state)).values
    return float(np.sum(np.clip(-lam, 0.0, None)))


# -- optimization --------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    value: float
    angles: list[float]
    converged_starts: int
    total_starts: int
    iterations: int


def _search(kind: int, f: FanoDecomposition, starts: list[list[float]], opts: OptimizerOptions) -> SearchResult:
    k = kernel.get(opts.backend)
    values, angles, conv, iters = k.multistart(
        kind, f.C.ravel().tolist(), f.n.tolist(), f.s.tolist(), starts,
        opts.step, opts.max_iters, opts.xtol, opts.ftol, VAR_EPS, opts.polish,
    )
    if not any(conv):
        raise NonConvergence(f"none of {len(starts)} starts converged within {opts.max_iters} iterations")
    best = 0
    for i, v in enumerate(values):
        if v > values[best]:
            best = i
    return SearchResult(float(values[best]), list(angles[best]), int(sum(conv)), len(starts), int(sum(iters)))


def _frame_starts(f: FanoDecomposition, opts: OptimizerOptions) -> list[list[float]]:
    rng = np.random.default_rng(opts.seed)
    starts = [[0.0] * 6, svd_frame(f).to_angles()]
    starts += rng.uniform(0.0, 2.0 * math.pi, (opts.restarts, 6)).tolist()
    return starts


def _single_starts(f: FanoDecomposition, opts: OptimizerOptions) -> list[list[float]]:
    rng = np.random.default_rng(opts.seed)
    u, _, vt = np.linalg.svd(f.C)
    starts = [[*sphere_angles(u[:, k]), *sphere_angles(vt[k])] for k in range(3)]
    for _ in range(opts.restarts):
        a, b = rng.standard_normal(3), rng.standard_normal(3)
        starts.append([*sphere_angles(a), *sphere_angles(b)])
    return starts


def _is_product(f: FanoDecomposition) -> bool:
    return float(np.max(np.abs(f.C))) <= _PRODUCT_TOL


def _is_pure_product(state: DensityOperator, f: FanoDecomposition) -> bool:
    return purity(state) > 1 - 1e-10 and negativity(state) < 1e-10 and _is_product(f)


def _check_applicable(state: DensityOperator, f: FanoDecomposition) -> None:
    if _is_pure_product(state, f):
        raise UndefinedPCC(
            "pure product state: both local variances vanish for some observables and "
            "correlation is not applicable (take an explicit limit if a value is needed)"
        )


def _max_single(f: FanoDecomposition, opts: OptimizerOptions) -> tuple[float, np.ndarray, np.ndarray]:
    res = _search(kernel.KIND_SINGLE, f, _single_starts(f, opts), opts)
    ps = kernel.get("python").sphere_point
    return res.value, np.array(ps(*res.angles[:2])), np.array(ps(*res.angles[2:]))


def max_single_pair(state: DensityOperator, opts: OptimizerOptions | None = None) -> float:
    """max over unit vectors a, b of |PCC(a.sigma, b.sigma)|."""
    opts = opts or OptimizerOptions()
    f = decompose(state)
    _check_applicable(state, f)
    return _max_single(f, opts)[0]


@dataclass(frozen=True)
class CorrelationReport:
    per_pair: tuple[float, float, float]
    sum_abs: float
    r_value: float
    max_single_pair: float
    spectral_bound: float | None
    trace_bound: float | None
    frame: MeasurementFrame
    classification: str
    reasons: tuple[str, ...] = ()
    converged_starts: int = 0
    total_starts: int = 0
    v: int = MUB_COUNT_QUBIT
    fano: FanoDecomposition | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "per_pair": list(self.per_pair),
            "sum_abs": self.sum_abs,
            "r_value": self.r_value,
            "max_single_pair": self.max_single_pair,
            "spectral_bound": self.spectral_bound,
            "trace_bound": self.trace_bound,
            "frame": self.frame.as_dict(),
            "classification": self.classification,
            "reasons": list(self.reasons),
            "converged_starts": self.converged_starts,
            "total_starts": self.total_starts,
            "v": self.v,
        }


def _classify(f, r, single, pur, tol) -> tuple[str, tuple[str, ...]]:
    if r < tol and pur < 1.0:
        return UNCORRELATED, ("all frame correlations vanish",)
    if r > 1.0 + tol:
        return QUANTUM, (f"R = {r:.12g} > 1: classical states cannot exceed one",)
    if is_standard_form(f):
        count = int(np.sum(np.linalg.svd(f.T, compute_uv=False) > 1e-8))
        if count >= 2:
            return QUANTUM, (f"Bell-diagonal with {count} non-zero correlation coefficients",)
        if count == 1:
            return CLASSICAL, ("Bell-diagonal with a single non-zero correlation coefficient",)
    if abs(r - single) <= tol:
        return CLASSICAL, ("total correlations concentrate in a single pair",)
    return INCONCLUSIVE, (f"R = {r:.12g} exceeds the best single pair {single:.12g}",)


def _safe_pcc(f, a, b) -> float:
    try:
        return pcc_bloch(f, a, b)
    except UndefinedPCC:
        return math.nan


def total_correlations(state: DensityOperator, opts: OptimizerOptions | None = None) -> CorrelationReport:
    """Maximize sum_i |PCC(A_i, B_i)| over pairs of complementary qubit triplets."""
    opts = opts or OptimizerOptions()
    f = decompose(state)
    _check_applicable(state, f)
    try:
        spectral, trace = bounds(f)
    except SingularMarginal:
        spectral = trace = None

    if _is_product(f):
        # C = 0: every defined PCC vanishes
        frame = MeasurementFrame.pauli()
        per_pair = tuple(_safe_pcc(f, a, b) for a, b in zip(frame.frame_a, frame.frame_b))
        label, why = _classify(f, 0.0, 0.0, purity(state), opts.tol)
        return CorrelationReport(per_pair, 0.0, 0.0, 0.0, spectral, trace, frame, label, why, 0, 0, fano=f)

    res = _search(kernel.KIND_FRAME, f, _frame_starts(f, opts), opts)
    frame = MeasurementFrame.from_angles(res.angles)
    per_pair = tuple(_safe_pcc(f, a, b) for a, b in zip(frame.frame_a, frame.frame_b))
    single = _max_single(f, opts)[0]
    label, why = _classify(f, res.value, single, purity(state), opts.tol)
    return CorrelationReport(
        per_pair=per_pair,
        sum_abs=float(sum(abs(x) for x in per_pair)),
        r_value=res.value,
        max_single_pair=single,
        spectral_bound=spectral,
        trace_bound=trace,
        frame=frame,
        classification=label,
        reasons=why,
        converged_starts=res.converged_starts,
        total_starts=res.total_starts,
        fano=f,
    )


@dataclass(frozen=True)
class Classification:
    label: str
    reasons: tuple[str, ...]
    report: CorrelationReport | None


def classify(state: DensityOperator, opts: OptimizerOptions | None = None) -> Classification:
    """Label a two-qubit state by how its correlations are distributed.

    Pure product states get ``not-applicable`` instead of an exception.
    """
    opts = opts or OptimizerOptions()
    try:
        rep = total_correlations(state, opts)
    except UndefinedPCC as exc:
        return Classification(NOT_APPLICABLE, (f"pure product state: {exc}",), None)
    return Classification(rep.classification, rep.reasons, rep)

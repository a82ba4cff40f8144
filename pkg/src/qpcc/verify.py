"""Seeded property suites checking the two-qubit results numerically.

Each suite draws ``n`` random instances, evaluates a handful of checks on
every instance and records pass/fail counts, the worst residual and the
first counterexample. Instance ``i`` of a suite run with seed ``s`` is
generated from ``numpy.random.default_rng([s, suite_id, i])``, so any
counterexample can be regenerated on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import states
from .complementarity import Basis, uncertainty_check
from .correlations import CLASSICAL, MeasurementFrame, OptimizerOptions, classical_r_closed_form, negativity, pair_sum, total_correlations
from .fano import decompose
from .linalg import DensityOperator
from .statespec import state_to_spec

R_TOL = 1e-6
THEOREM1_TOL = 1e-5
PAULI_FRAME_TOL = 1e-9
UNCERTAINTY_TOL = 1e-9

DEFAULT_N = {"theorem1": 100, "theorem2": 100, "uncertainty": 1000, "bounds": 100}
SUITES = tuple(DEFAULT_N)

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)


@dataclass
class Check:
    name: str
    tol: float
    passed: int = 0
    failed: int = 0
    worst: float = 0.0
    counterexample: dict | None = None

    def record(self, residual: float, state: DensityOperator | None = None, ok: bool | None = None) -> None:
        """``residual`` is the amount by which the property is violated (<= tol passes)."""
        if ok is None:
            ok = residual <= self.tol
        self.worst = max(self.worst, residual)
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None and state is not None:
                self.counterexample = state_to_spec(state)

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class SuiteResult:
    name: str
    n: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            out.append(
                f"{status} {self.name}/{c.name}: {c.passed} passed, {c.failed} failed, "
                f"worst residual {c.worst:.3e} (tol {c.tol:g})"
            )
        return out


def _rng(seed: int, suite: int, i: int) -> np.random.Generator:
    return np.random.default_rng([seed, suite, i])


def theorem1(n: int | None = None, seed: int = 42, opts: OptimizerOptions | None = None) -> SuiteResult:
    """Classical states: R equals the best single pair and the closed form, and never exceeds one."""
    n = DEFAULT_N["theorem1"] if n is None else n
    opts = opts or OptimizerOptions(seed=seed)
    res = SuiteResult("theorem1", n)
    eq_single = Check("r_equals_max_single_pair", THEOREM1_TOL)
    eq_closed = Check("r_equals_closed_form", THEOREM1_TOL)
    at_most_one = Check("r_at_most_one", R_TOL)
    label = Check("classified_classical_compatible", 0.0)
    res.checks += [eq_single, eq_closed, at_most_one, label]
    for i in range(n):
        s = states.random_classical(_rng(seed, 1, i))
        rep = total_correlations(s, opts)
        closed = classical_r_closed_form(decompose(s))
        eq_single.record(abs(rep.r_value - rep.max_single_pair), s)
        eq_closed.record(abs(rep.r_value - closed), s)
        at_most_one.record(max(0.0, rep.r_value - 1.0), s)
        label.record(0.0, s, ok=rep.classification == CLASSICAL)
    return res


def random_standard_form_instance(rng: np.random.Generator) -> tuple[DensityOperator, np.ndarray]:
    """Bell-diagonal state; one draw in four keeps a single non-zero coefficient."""
    state, t = states.random_standard_form(rng)
    if rng.random() < 0.25:
        keep = int(rng.integers(3))
        t = np.where(np.arange(3) == keep, t, 0.0)
        state = states.standard_form_state(*t)
    return state, t


def theorem2(n: int | None = None, seed: int = 42, opts: OptimizerOptions | None = None) -> SuiteResult:
    """Bell-diagonal states: R = sum |t_k|, attained by the Pauli frame; classical iff one t_k != 0."""
    n = DEFAULT_N["theorem2"] if n is None else n
    opts = opts or OptimizerOptions(seed=seed)
    res = SuiteResult("theorem2", n)
    r_sum = Check("r_equals_sum_abs_t", R_TOL)
    pauli = Check("pauli_frame_attains_sum", PAULI_FRAME_TOL)
    single = Check("max_single_equals_max_abs_t", R_TOL)
    label = Check("classical_iff_single_coefficient", 0.0)
    res.checks += [r_sum, pauli, single, label]
    for i in range(n):
        s, t = random_standard_form_instance(_rng(seed, 2, i))
        rep = total_correlations(s, opts)
        target = float(np.sum(np.abs(t)))
        r_sum.record(abs(rep.r_value - target), s)
        pauli.record(abs(pair_sum(s, MeasurementFrame.pauli()) - target), s)
        single.record(abs(rep.max_single_pair - float(np.max(np.abs(t)))), s)
        one = int(np.count_nonzero(t)) == 1
        label.record(0.0, s, ok=(rep.classification == CLASSICAL) == one)
    return res


def uncertainty(n: int | None = None, seed: int = 42) -> SuiteResult:
    """H(X) + H(Y) >= incompatibility for random qubit states and bases, with equality
    for an eigenstate of X measured against a basis complementary to X."""
    n = DEFAULT_N["uncertainty"] if n is None else n
    res = SuiteResult("uncertainty", n)
    holds = Check("entropic_relation_holds", UNCERTAINTY_TOL)
    equality = Check("equality_for_eigenstate_and_mub", UNCERTAINTY_TOL)
    res.checks += [holds, equality]
    for i in range(n):
        rng = _rng(seed, 3, i)
        s = states.random_density(2, rng)
        u1, u2 = states.haar_unitary(2, rng), states.haar_unitary(2, rng)
        chk = uncertainty_check(s, Basis(u1), Basis(u2))
        holds.record(max(0.0, -chk.slack), s)
        eig = DensityOperator(np.outer(u1[:, 0], u1[:, 0].conj()))
        chk = uncertainty_check(eig, Basis(u1), Basis(u1 @ _HADAMARD))
        equality.record(abs(chk.slack), eig)
    return res


def bounds(n: int | None = None, seed: int = 42, opts: OptimizerOptions | None = None) -> SuiteResult:
    """Separable states: single pair <= spectral bound, R <= trace-norm bound."""
    n = DEFAULT_N["bounds"] if n is None else n
    opts = opts or OptimizerOptions(seed=seed)
    res = SuiteResult("bounds", n)
    trace = Check("r_below_trace_bound", R_TOL)
    spectral = Check("single_below_spectral_bound", R_TOL)
    order = Check("single_below_r", R_TOL)
    ppt = Check("positive_partial_transpose", 1e-10)
    res.checks += [trace, spectral, order, ppt]
    for i in range(n):
        rng = _rng(seed, 4, i)
        s = states.random_separable(rng, terms=int(rng.integers(1, 6)))
        rep = total_correlations(s, opts)
        trace.record(max(0.0, rep.r_value - rep.trace_bound), s)
        spectral.record(max(0.0, rep.max_single_pair - rep.spectral_bound), s)
        order.record(max(0.0, rep.max_single_pair - rep.r_value), s)
        ppt.record(negativity(s), s)
    return res


def run(suite: str, n: int | None = None, seed: int = 42, opts: OptimizerOptions | None = None) -> list[SuiteResult]:
    if suite == "all":
        return [r for name in SUITES for r in run(name, n, seed, opts)]
    if suite == "uncertainty":
        return [uncertainty(n, seed)]
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [globals()[suite](n, seed, opts)]

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpcc import states
from qpcc.errors import DimensionMismatch, UndefinedPCC
from qpcc.fano import decompose
from qpcc.linalg import DensityOperator
from qpcc.paulis import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, bloch_operator
from qpcc.statistics import expectation, pcc, pcc_bloch, spearman, variance

KET0 = DensityOperator(np.diag([1.0, 0.0]))
MIXED = DensityOperator(np.eye(2) / 2)


def random_unit(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def test_expectation_examples():
    assert expectation(KET0, SIGMA_Z) == 1
    assert expectation(states.bell_phi(), np.kron(SIGMA_Z, SIGMA_Z)) == pytest.approx(1)
    assert expectation(MIXED, SIGMA_X) == 0
    with pytest.raises(DimensionMismatch):
        expectation(KET0, np.eye(4))


def test_variance_examples():
    assert variance(KET0, SIGMA_Z) == 0
    assert variance(MIXED, SIGMA_Z) == pytest.approx(1)
    assert variance(KET0, SIGMA_X) == pytest.approx(1)


def test_pcc_examples():
    assert pcc(states.classical_diag([[0.5, 0], [0, 0.5]]), SIGMA_Z, SIGMA_Z) == pytest.approx(1, abs=1e-12)
    h = states.horodecki(1 / 3)
    assert pcc(h, SIGMA_Z, SIGMA_Z) == pytest.approx(1, abs=1e-9)
    assert pcc(h, SIGMA_X, SIGMA_X) == pytest.approx(1 / 3, abs=1e-9)
    assert pcc(h, SIGMA_Y, SIGMA_Y) == pytest.approx(-1 / 3, abs=1e-9)
    assert pcc(states.werner(1 / 3), SIGMA_X, SIGMA_X) == pytest.approx(1 / 3, abs=1e-12)


def test_pcc_undefined_on_pure_product():
    with pytest.raises(UndefinedPCC):
        pcc(states.horodecki(0), SIGMA_Z, SIGMA_Z)


def test_pcc_bloch_examples():
    e1, e3 = np.eye(3)[0], np.eye(3)[2]
    for p in (0.1, 0.5, 0.9):
        assert pcc_bloch(decompose(states.werner(p)), e1, e1) == pytest.approx(p, abs=1e-12)
        assert pcc_bloch(decompose(states.horodecki(p)), e3, e3) == pytest.approx(1, abs=1e-12)
    prod = DensityOperator(np.kron(np.diag([0.7, 0.3]), np.diag([0.6, 0.4])))
    assert pcc_bloch(decompose(prod), e1, e3) == pytest.approx(0, abs=1e-12)
    with pytest.raises(UndefinedPCC):
        pcc_bloch(decompose(states.horodecki(0)), e3, e3)
    with pytest.raises(ValueError):
        pcc_bloch(decompose(states.werner(0.5)), 2 * e1, e1)


def test_pcc_bounded_and_agrees_with_bloch(rng):
    worst = 0.0
    for _ in range(300):
        s = states.random_density(4, rng)
        a, b = random_unit(rng), random_unit(rng)
        r = pcc(s, bloch_operator(a), bloch_operator(b))
        assert abs(r) <= 1 + 1e-10
        worst = max(worst, abs(r - pcc_bloch(decompose(s), a, b)))
    assert worst <= 1e-10


def test_pcc_zero_on_mixed_product(rng):
    for _ in range(50):
        s = DensityOperator(np.kron(states.random_density(2, rng).matrix, states.random_density(2, rng).matrix))
        a, b = random_unit(rng), random_unit(rng)
        assert abs(pcc(s, bloch_operator(a), bloch_operator(b))) <= 1e-10


@given(
    alpha=st.floats(-10, 10).filter(lambda x: abs(x) > 1e-3),
    beta=st.floats(-10, 10),
    seed=st.integers(0, 2**32 - 1),
)
@settings(max_examples=100, deadline=None)
def test_pcc_affine_invariance(alpha, beta, seed):
    rng = np.random.default_rng(seed)
    s = states.random_density(4, rng)
    a, b = bloch_operator(random_unit(rng)), bloch_operator(random_unit(rng))
    r0 = pcc(s, a, b)
    r1 = pcc(s, alpha * a + beta * IDENTITY, b)
    assert abs(abs(r1) - abs(r0)) <= 1e-10


def test_pcc_higher_dimensional_sides(rng):
    s = states.random_density(6, rng)
    s = DensityOperator(s.matrix, (2, 3))
    a = np.diag([1.0, -1.0])
    b = np.diag([1.0, 0.0, -1.0])
    assert -1 <= pcc(s, a, b) <= 1
    with pytest.raises(DimensionMismatch):
        pcc(s, b, a)


def test_spearman_equals_pcc_for_qubits(rng):
    for _ in range(100):
        s = states.random_density(4, rng)
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        a, b = a + a.conj().T, b + b.conj().T
        assert abs(spearman(s, a, b) - pcc(s, a, b)) <= 1e-12


def test_spearman_affine_and_uncorrelated():
    s = states.horodecki(0.4)
    skewed = np.diag([5.0, -1.0])
    assert abs(spearman(s, skewed, SIGMA_Z)) == pytest.approx(abs(spearman(s, SIGMA_Z, SIGMA_Z)), abs=1e-12)
    assert spearman(states.werner(0), SIGMA_Z, SIGMA_Z) == pytest.approx(0, abs=1e-15)


def test_spearman_rank_transform_qutrit(rng):
    # ranks of (10, 0, -1) are (3, 2, 1): same as pcc with (1, 0, -1) up to an affine map
    s = DensityOperator(states.random_density(9, rng).matrix, (3, 3))
    a = np.diag([10.0, 0.0, -1.0])
    b = np.diag([1.0, 0.0, -1.0])
    assert spearman(s, a, b) == pytest.approx(pcc(s, b, b), abs=1e-12)

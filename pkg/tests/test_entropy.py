import math

import numpy as np
import pytest

from qpcc import states
from qpcc.entropy import mutual_information, mutual_information_relative, relative_entropy, von_neumann
from qpcc.errors import DimensionMismatch
from qpcc.linalg import DensityOperator, apply_local_unitary

# eigenvalues {1/2, 1/6, 1/6, 1/6}: 1/2 + (1/2) log2 6
WERNER_THIRD_ENTROPY = 1.792481250360578
# numpy.linalg.eigvalsh on the states and their partial traces
WERNER_THIRD_MI = 0.20751874963942218
HORODECKI_THIRD_MI = 0.7499970837139512


def test_von_neumann_examples():
    assert von_neumann(states.werner(0)) == pytest.approx(2, abs=1e-12)
    assert von_neumann(states.bell_phi()) == pytest.approx(0, abs=1e-10)
    assert von_neumann(states.werner(1 / 3)) == pytest.approx(WERNER_THIRD_ENTROPY, abs=1e-12)


def test_relative_entropy_examples(rng):
    s = states.random_density(4, rng)
    assert relative_entropy(s, s) == pytest.approx(0, abs=1e-10)
    assert relative_entropy(states.bell_phi(), states.werner(0)) == pytest.approx(2, abs=1e-10)
    ket0 = DensityOperator(np.diag([1.0, 0.0]))
    ket1 = DensityOperator(np.diag([0.0, 1.0]))
    assert relative_entropy(ket0, ket1) == math.inf
    assert relative_entropy(ket0, DensityOperator(np.eye(2) / 2)) == pytest.approx(1)
    with pytest.raises(DimensionMismatch):
        relative_entropy(ket0, s)


def test_mutual_information_examples():
    assert mutual_information(states.werner(1 / 3)) == pytest.approx(WERNER_THIRD_MI, abs=1e-10)
    assert mutual_information(states.horodecki(1 / 3)) == pytest.approx(HORODECKI_THIRD_MI, abs=1e-10)
    assert mutual_information(states.bell_phi()) == pytest.approx(2, abs=1e-9)


def test_mutual_information_two_paths_agree(rng):
    worst = 0.0
    for _ in range(1000):
        s = states.random_density(4, rng)
        a, b = mutual_information(s), mutual_information_relative(s)
        assert -1e-9 <= a <= 2 + 1e-9
        worst = max(worst, abs(a - b))
    assert worst <= 1e-9


def test_mutual_information_of_products_vanishes(rng):
    for _ in range(100):
        s = DensityOperator(np.kron(states.random_density(2, rng).matrix, states.random_density(2, rng).matrix))
        assert mutual_information(s) < 1e-9


def test_mutual_information_local_unitary_invariance(rng):
    for _ in range(100):
        s = states.random_density(4, rng)
        t = apply_local_unitary(s, states.haar_unitary(2, rng), states.haar_unitary(2, rng))
        assert abs(mutual_information(s) - mutual_information(t)) <= 1e-9

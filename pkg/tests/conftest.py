import numpy as np
import pytest

from chanspoof import chanrep, pauli


@pytest.fixture
def example_pauli_channel():
    """The one-qubit Pauli channel with coefficients (0.1, 0.1, 0.1, 0.7)."""
    return pauli.pauli_channel([0.1, 0.1, 0.1, 0.7])


@pytest.fixture
def example_pauli_choi(example_pauli_channel):
    return example_pauli_channel.choi()


def random_channel_choi(d, seed, rank=None):
    ops = chanrep.random_channel(d, rank or d * d, seed)
    return chanrep.kraus_to_choi(ops)


@pytest.fixture
def identity_kraus():
    return [np.eye(2, dtype=complex)]

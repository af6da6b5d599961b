import pytest

from anoncert.curve import BRAINPOOL_P256R1, SECP256R1, TOY, get_curve
from anoncert.rng import DeterministicRng


@pytest.fixture
def brainpool():
    return get_curve(BRAINPOOL_P256R1)


@pytest.fixture
def secp():
    return get_curve(SECP256R1)


@pytest.fixture
def toy():
    return get_curve(TOY)


@pytest.fixture(params=[BRAINPOOL_P256R1, SECP256R1])
def named_curve(request):
    return get_curve(request.param)


@pytest.fixture
def drng():
    return DeterministicRng(1234)


class ScriptedRng:
    """Serves preset chunks when the requested size matches, then falls
    back to a deterministic stream."""

    def __init__(self, chunks, seed=99):
        self.chunks = list(chunks)
        self.fallback = DeterministicRng(seed)

    def read(self, n):
        if self.chunks and len(self.chunks[0]) == n:
            return self.chunks.pop(0)
        return self.fallback.read(n)


@pytest.fixture
def scripted_rng():
    return ScriptedRng

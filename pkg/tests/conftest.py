import numpy as np
import pytest

from horizonsim.horizon import Crossing, Region, TimelineEvent, make_circuit
from horizonsim.statevec import CNOT, SWAP, Matrix2, PureState, Unitary1Q

ACCEPTANCE_RESULTS = {}


def random_state(rng, n):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return PureState(v / np.linalg.norm(v))


def random_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return Matrix2(q)


def random_factor(rng):
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    return tuple(z / np.linalg.norm(z))


def random_causal_circuit(rng, n, n_events, cross_cnots=False):
    """Random same-side gates and inward crossings on ``n`` qubits.

    Regions are replayed while generating, so every event is admissible.
    With ``cross_cnots`` the generator also emits outer-control CNOTs
    across the horizon.
    """
    regions = [Region.INSIDE if rng.random() < 0.2 else Region.OUTSIDE for _ in range(n)]
    initial = tuple(regions)
    events = []
    for k in range(n_events):
        kind = rng.integers(0, 5 if cross_cnots else 4)
        outside = [q for q in range(n) if regions[q] is Region.OUTSIDE]
        if kind == 0:
            payload = Unitary1Q(random_unitary(rng), int(rng.integers(n)))
        elif kind in (1, 2):
            a = int(rng.integers(n))
            same = [q for q in range(n) if q != a and regions[q] is regions[a]]
            if not same:
                payload = Unitary1Q(random_unitary(rng), a)
            else:
                b = int(rng.choice(same))
                payload = CNOT(a, b) if kind == 1 else SWAP(a, b)
        elif kind == 3:
            if not outside:
                payload = Unitary1Q(random_unitary(rng), int(rng.integers(n)))
            else:
                q = int(rng.choice(outside))
                regions[q] = Region.INSIDE
                payload = Crossing(q)
        else:
            inside = [q for q in range(n) if regions[q] is Region.INSIDE]
            if outside and inside:
                payload = CNOT(int(rng.choice(outside)), int(rng.choice(inside)))
            else:
                payload = Unitary1Q(random_unitary(rng), int(rng.integers(n)))
        events.append(TimelineEvent(float(k + 1), payload))
    factors = [random_factor(rng) for _ in range(n)]
    names = [f"q{i}" for i in range(n)]
    return make_circuit(names, events, regions=initial, factors=factors)


@pytest.fixture
def rng():
    return np.random.default_rng(20240229)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, title = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}")

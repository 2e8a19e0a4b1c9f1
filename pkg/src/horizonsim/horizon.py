"""Horizon bookkeeping: regions, the causality rules, and the entropy-tracking runner.

Information may enter the interior but never leave it. For gates that
straddle the horizon this means a CNOT is admissible only when its control
is outside and its target inside, and a SWAP is never admissible. Qubits
cross inward only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .entropy import bipartite_entropy
from .errors import CausalityError, MalformedCircuitError, NotNormalizedError, UnknownQubitError
from .statevec import (
    CNOT,
    NORM_TOL,
    SWAP,
    GateSpec,
    PureState,
    Unitary1Q,
    apply_gate,
    gate_qubits,
    init_product_state,
)


class Region(enum.Enum):
    OUTSIDE = "outside"
    INSIDE = "inside"


class ViolationKind(enum.Enum):
    INNER_CONTROL_CNOT = "InnerControlCNOT"
    CROSS_HORIZON_SWAP = "CrossHorizonSWAP"
    OUTWARD_CROSSING = "OutwardCrossing"


@dataclass(frozen=True)
class Crossing:
    """An Outside -> Inside passage of one qubit."""

    qubit: int


Payload = Union[Unitary1Q, CNOT, SWAP, Crossing]


@dataclass(frozen=True)
class TimelineEvent:
    time: float
    payload: Payload


@dataclass(frozen=True)
class CausalityViolation:
    event_index: int
    kind: ViolationKind
    qubits: tuple

    def __str__(self):
        qs = ", ".join(str(q) for q in self.qubits)
        return f"event {self.event_index}: {self.kind.value} on qubits ({qs})"


# RegionMap: tuple of Region, one entry per qubit index
RegionMap = tuple


@dataclass(frozen=True)
class Circuit:
    names: tuple
    regions: RegionMap
    factors: tuple
    events: tuple

    @property
    def n_qubits(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownQubitError(f"unknown qubit {name!r}") from None


def make_circuit(names, events, regions=None, factors=None) -> Circuit:
    """Build a circuit; unspecified regions default to Outside and factors to |0>."""
    names = tuple(names)
    n = len(names)
    if regions is None:
        regions = (Region.OUTSIDE,) * n
    if factors is None:
        factors = ((1 + 0j, 0j),) * n
    factors = tuple((complex(a0), complex(a1)) for a0, a1 in factors)
    return Circuit(names, tuple(regions), factors, tuple(events))


@dataclass(frozen=True)
class TraceSample:
    time: float
    event_index: int
    event: str
    s_total: float
    pairs: dict = field(default_factory=dict)


@dataclass
class EntropyTrace:
    """Entropy after each event; sample 0 is the initial state, sample k follows event k-1."""

    samples: list

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __getitem__(self, i):
        return self.samples[i]

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([s.s_total for s in self.samples])

    def value_at(self, t: float) -> float:
        """Right-continuous step value: entropy after the last event with time <= t."""
        value = self.samples[0].s_total
        for s in self.samples[1:]:
            if s.time > t:
                break
            value = s.s_total
        return value

    def plateaus(self, tol=1e-9) -> list:
        """Consecutive distinct entropy levels (changes smaller than ``tol`` are merged)."""
        levels = [self.samples[0].s_total]
        for s in self.samples[1:]:
            if abs(s.s_total - levels[-1]) > tol:
                levels.append(s.s_total)
        return levels


def _lookup(regions, q):
    if isinstance(q, (bool, np.bool_)) or not isinstance(q, (int, np.integer)):
        raise UnknownQubitError(f"qubit index must be an integer, got {q!r}")
    if not 0 <= q < len(regions):
        raise UnknownQubitError(f"qubit {q} is not part of the region map")
    return regions[q]


def event_qubits(payload: Payload) -> tuple:
    if isinstance(payload, Crossing):
        return (payload.qubit,)
    return gate_qubits(payload)


def check_event(event, regions: RegionMap, index: int = 0) -> Optional[CausalityViolation]:
    """Return ``None`` if the event is causally admissible, else the violation."""
    payload = event.payload if isinstance(event, TimelineEvent) else event
    for q in event_qubits(payload):
        _lookup(regions, q)
    if isinstance(payload, Unitary1Q):
        return None
    if isinstance(payload, CNOT):
        rc, rt = regions[payload.control], regions[payload.target]
        if rc == rt or (rc is Region.OUTSIDE and rt is Region.INSIDE):
            return None
        return CausalityViolation(index, ViolationKind.INNER_CONTROL_CNOT,
                                  (payload.control, payload.target))
    if isinstance(payload, SWAP):
        if regions[payload.a] == regions[payload.b]:
            return None
        return CausalityViolation(index, ViolationKind.CROSS_HORIZON_SWAP, (payload.a, payload.b))
    if isinstance(payload, Crossing):
        if regions[payload.qubit] is Region.OUTSIDE:
            return None
        return CausalityViolation(index, ViolationKind.OUTWARD_CROSSING, (payload.qubit,))
    raise MalformedCircuitError(f"unknown event payload {payload!r}")


def apply_crossing(regions: RegionMap, qubit: int, index: int = 0) -> RegionMap:
    if _lookup(regions, qubit) is Region.INSIDE:
        raise CausalityError([CausalityViolation(index, ViolationKind.OUTWARD_CROSSING, (qubit,))])
    out = list(regions)
    out[qubit] = Region.INSIDE
    return tuple(out)


def inside_set(regions: RegionMap) -> tuple:
    return tuple(q for q, r in enumerate(regions) if r is Region.INSIDE)


def check_well_formed(circuit: Circuit) -> None:
    n = circuit.n_qubits
    if n == 0:
        raise MalformedCircuitError("circuit declares no qubits")
    if len(set(circuit.names)) != n:
        raise MalformedCircuitError("qubit names are not unique")
    if len(circuit.regions) != n or len(circuit.factors) != n:
        raise MalformedCircuitError("regions and initial factors must cover every qubit")
    previous = 0.0
    for k, ev in enumerate(circuit.events):
        if not isinstance(ev, TimelineEvent):
            raise MalformedCircuitError(f"event {k} is not a TimelineEvent")
        for q in event_qubits(ev.payload):
            if isinstance(q, bool) or not isinstance(q, (int, np.integer)) or not 0 <= q < n:
                raise UnknownQubitError(f"event {k} references undeclared qubit {q!r}")
        if not np.isfinite(ev.time) or ev.time < previous:
            raise MalformedCircuitError(
                f"event {k} at time {ev.time!r} precedes time {previous!r}"
            )
        previous = ev.time


def validate_circuit(circuit: Circuit) -> list:
    """Replay the region map over the timeline and collect every causality violation."""
    check_well_formed(circuit)
    regions = circuit.regions
    found = []
    for k, ev in enumerate(circuit.events):
        violation = check_event(ev, regions, k)
        if violation is not None:
            found.append(violation)
        elif isinstance(ev.payload, Crossing):
            regions = apply_crossing(regions, ev.payload.qubit, k)
    return found


def event_token(payload: Payload, names: Sequence[str]) -> str:
    if isinstance(payload, Unitary1Q):
        return f"u {names[payload.target]}"
    if isinstance(payload, CNOT):
        return f"cnot {names[payload.control]} {names[payload.target]}"
    if isinstance(payload, SWAP):
        return f"swap {names[payload.a]} {names[payload.b]}"
    if isinstance(payload, Crossing):
        return f"cross {names[payload.qubit]}"
    raise MalformedCircuitError(f"unknown event payload {payload!r}")


def _resolve_pairs(circuit: Circuit, pairs) -> dict:
    if not pairs:
        return {}
    out = {}
    for label, members in pairs.items():
        out[label] = tuple(circuit.index(q) if isinstance(q, str) else int(q) for q in members)
    return out


def _inside_entropy(state, regions, subset=None):
    inside = inside_set(regions)
    if subset is not None:
        inside = tuple(q for q in inside if q in subset)
    if not inside:
        return 0.0
    return bipartite_entropy(state, inside)


def run(circuit: Circuit, pairs: Optional[Mapping[str, Iterable]] = None, *,
        checkpoints: Optional[Iterable[int]] = None):
    """Evolve the initial product state through the timeline.

    Returns ``(final_state, trace)``. ``pairs`` maps a label to a group of
    qubits (names or indices); each sample then also records the entropy of
    the inside part of that group. If ``checkpoints`` lists event counts, a
    third value is returned: ``{count: state after that many events}``.
    """
    violations = validate_circuit(circuit)
    if violations:
        raise CausalityError(violations)
    groups = _resolve_pairs(circuit, pairs)
    wanted = set(checkpoints or ())
    saved = {}

    state = init_product_state(circuit.factors)
    regions = circuit.regions

    def sample(time, idx, token):
        return TraceSample(
            time=float(time),
            event_index=idx,
            event=token,
            s_total=_inside_entropy(state, regions),
            pairs={label: _inside_entropy(state, regions, g) for label, g in groups.items()},
        )

    samples = [sample(0.0, 0, "init")]
    if 0 in wanted:
        saved[0] = state
    for k, ev in enumerate(circuit.events):
        if isinstance(ev.payload, Crossing):
            regions = apply_crossing(regions, ev.payload.qubit, k)
        else:
            state = apply_gate(state, ev.payload)
        samples.append(sample(ev.time, k + 1, event_token(ev.payload, circuit.names)))
        if k + 1 in wanted:
            saved[k + 1] = state

    norm2 = state.norm_squared()
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NotNormalizedError(f"final state drifted off the unit sphere (norm^2 {norm2!r})")
    trace = EntropyTrace(samples)
    if checkpoints is not None:
        return state, trace, saved
    return state, trace

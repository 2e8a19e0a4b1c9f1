"""
Which gates may straddle the horizon?
=====================================

The admissibility check only looks at the region of each qubit at the moment
a gate acts.
"""

import numpy as np

from horizonsim import CNOT, SWAP, Crossing, Region, check_event, make_circuit, validate_circuit
from horizonsim.horizon import TimelineEvent

OUT, IN = Region.OUTSIDE, Region.INSIDE
regions = (OUT, IN)  # qubit 0 outside, qubit 1 inside

cases = {
    "CNOT control inside -> target outside": CNOT(1, 0),
    "SWAP across the horizon": SWAP(0, 1),
    "CNOT control outside -> target inside": CNOT(0, 1),
    "SWAP with both qubits outside": SWAP(0, 1),
}
for label, gate in cases.items():
    where = (OUT, OUT) if "both" in label else regions
    verdict = check_event(gate, where)
    print(f"{label:40s} -> {'allowed' if verdict is None else verdict.kind.value}")

###############################################################################
# Crossings are one-way. Validating a whole circuit replays the regions and
# reports every offending event by position.

circuit = make_circuit(
    ["a", "b"],
    [
        TimelineEvent(1.0, CNOT(0, 1)),
        TimelineEvent(2.0, Crossing(1)),
        TimelineEvent(3.0, CNOT(1, 0)),   # b is now inside: forbidden
        TimelineEvent(4.0, Crossing(1)),  # already inside: forbidden
    ],
)
for v in validate_circuit(circuit):
    print(v)

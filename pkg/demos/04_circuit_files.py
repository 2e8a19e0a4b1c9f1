"""
Writing circuits as text
========================

Circuits can be kept in small ``.qbh`` files. The same files drive the
``horizonsim validate`` and ``horizonsim run`` commands.
"""

from horizonsim.dsl import DSLParseError, parse_circuit
from horizonsim.horizon import run, validate_circuit
from horizonsim.report import render_trace_csv

text = """
# a Bell pair, one half falls in
qubit a
qubit b
init a (0.7071067811865475,0) (0.7071067811865475,0)
cnot a b
@5 cross b
"""

doc = parse_circuit(text)
print("violations:", validate_circuit(doc.circuit))
_, trace = run(doc.circuit)
print(render_trace_csv(trace))

###############################################################################
# Mistakes come back with line and column.

try:
    parse_circuit("qubit a\ncnot a a\nfrob a\n", source="broken.qbh")
except DSLParseError as err:
    print(err)

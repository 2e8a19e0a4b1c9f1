"""Line-oriented circuit description language.

Example::

    # two qubits, one entangling gate
    qubit a
    qubit b inside
    init a (0.6,0) (0.8,0)
    @0.5 cnot a b
    cross a

Directives are ``qubit NAME [inside]``, ``init NAME CPX CPX`` and the
timeline events ``u NAME CPX CPX CPX CPX``, ``cnot NAME NAME``,
``swap NAME NAME`` and ``cross NAME``. Events may carry an ``@TIME``
prefix; otherwise an event's time is its 1-based ordinal in the file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import HorizonSimError, InvalidGateError, NonUnitaryError
from .horizon import Circuit, Crossing, Region, TimelineEvent, make_circuit
from .statevec import CNOT, NORM_TOL, SWAP, Matrix2, Unitary1Q

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_+-]*\Z")
FLOAT_PATTERN = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
FLOAT_RE = re.compile(FLOAT_PATTERN + r"\Z")
CPX_RE = re.compile(r"\(\s*(" + FLOAT_PATTERN + r")\s*,\s*(" + FLOAT_PATTERN + r")\s*\)\Z")
TOKEN_RE = re.compile(r"\([^()#]*\)|[^\s#]+")

EVENT_DIRECTIVES = ("u", "cnot", "swap", "cross")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    severity: str
    message: str
    violation: Optional[object] = None

    def format(self, source="<string>"):
        return f"{source}:{self.line}:{self.column}: {self.severity}: {self.message}"


class DSLParseError(HorizonSimError):
    def __init__(self, diagnostics, source="<string>"):
        self.diagnostics = list(diagnostics)
        self.source = source
        super().__init__("\n".join(d.format(source) for d in self.diagnostics))


@dataclass
class CircuitDocument:
    source: str
    circuit: Circuit
    event_lines: list = field(default_factory=list)

    def line_of(self, event_index: int) -> int:
        return self.event_lines[event_index]


class _Token:
    __slots__ = ("text", "column")

    def __init__(self, text, column):
        self.text = text
        self.column = column


def _tokenize(line):
    code = line.split("#", 1)[0]
    return [_Token(m.group(0), m.start() + 1) for m in TOKEN_RE.finditer(code)]


class _LineError(Exception):
    def __init__(self, column, message):
        super().__init__(message)
        self.column = column
        self.message = message


def _float(tok):
    if not FLOAT_RE.match(tok.text):
        raise _LineError(tok.column, f"malformed number {tok.text!r}")
    return float(tok.text)


def _complex(tok):
    m = CPX_RE.match(tok.text)
    if not m:
        raise _LineError(tok.column, f"malformed complex literal {tok.text!r}, expected (re,im)")
    return complex(float(m.group(1)), float(m.group(2)))


class _Parser:
    def __init__(self, text, source):
        self.text = text
        self.source = source
        self.names = []
        self.regions = {}
        self.factors = {}
        self.init_lines = {}
        self.events = []
        self.event_lines = []
        self.diagnostics = []
        self.last_time = 0.0

    def qubit(self, tok):
        if not NAME_RE.match(tok.text):
            raise _LineError(tok.column, f"invalid qubit name {tok.text!r}")
        if tok.text not in self.regions:
            raise _LineError(tok.column, f"undeclared qubit {tok.text!r}")
        return self.names.index(tok.text)

    def expect(self, toks, count, usage):
        if len(toks) != count:
            col = toks[count].column if len(toks) > count else toks[0].column
            raise _LineError(col, f"expected {count - 1} operand(s): {usage}")

    def parse(self):
        for lineno, line in enumerate(self.text.splitlines(), start=1):
            toks = _tokenize(line)
            if not toks:
                continue
            try:
                self.directive(lineno, toks)
            except _LineError as err:
                self.diagnostics.append(Diagnostic(lineno, err.column, "error", err.message))
        if not self.names and not self.diagnostics:
            self.diagnostics.append(Diagnostic(1, 1, "error", "no qubits declared"))
        if self.diagnostics:
            raise DSLParseError(self.diagnostics, self.source)
        circuit = make_circuit(
            self.names,
            self.events,
            regions=[self.regions[n] for n in self.names],
            factors=[self.factors.get(n, (1, 0)) for n in self.names],
        )
        return CircuitDocument(self.source, circuit, self.event_lines)

    def directive(self, lineno, toks):
        time = None
        head = toks[0]
        if head.text.startswith("@"):
            if head.text == "@":
                if len(toks) < 2:
                    raise _LineError(head.column, "expected a time after '@'")
                time = _float(toks[1])
                toks = toks[2:]
            else:
                time = _float(_Token(head.text[1:], head.column + 1))
                toks = toks[1:]
            if not toks:
                raise _LineError(head.column, "time prefix without an event")
            if toks[0].text not in EVENT_DIRECTIVES:
                raise _LineError(toks[0].column, f"'{toks[0].text}' cannot take a time prefix")
        word = toks[0].text
        if word == "qubit":
            self.declare(toks)
        elif word == "init":
            self.init(lineno, toks)
        elif word in EVENT_DIRECTIVES:
            self.event(lineno, toks, time)
        else:
            raise _LineError(toks[0].column, f"unknown directive {word!r}")

    def declare(self, toks):
        if len(toks) not in (2, 3):
            raise _LineError(toks[0].column, "usage: qubit NAME [inside]")
        name = toks[1]
        if not NAME_RE.match(name.text):
            raise _LineError(name.column, f"invalid qubit name {name.text!r}")
        if name.text in self.regions:
            raise _LineError(name.column, f"duplicate qubit {name.text!r}")
        region = Region.OUTSIDE
        if len(toks) == 3:
            if toks[2].text != "inside":
                raise _LineError(toks[2].column, f"expected 'inside', got {toks[2].text!r}")
            region = Region.INSIDE
        self.names.append(name.text)
        self.regions[name.text] = region

    def init(self, lineno, toks):
        self.expect(toks, 4, "init NAME CPX CPX")
        q = self.qubit(toks[1])
        name = self.names[q]
        if name in self.factors:
            raise _LineError(
                toks[1].column,
                f"qubit {name!r} already initialised on line {self.init_lines[name]}",
            )
        a0, a1 = _complex(toks[2]), _complex(toks[3])
        norm2 = abs(a0) ** 2 + abs(a1) ** 2
        if abs(norm2 - 1.0) > NORM_TOL:
            raise _LineError(toks[2].column, f"amplitudes are not normalized (|a0|^2+|a1|^2 = {norm2!r})")
        self.factors[name] = (a0, a1)
        self.init_lines[name] = lineno

    def event(self, lineno, toks, time):
        word = toks[0].text
        if word == "u":
            self.expect(toks, 6, "u NAME CPX CPX CPX CPX")
            q = self.qubit(toks[1])
            entries = [_complex(t) for t in toks[2:6]]
            try:
                payload = Unitary1Q(Matrix2([entries[:2], entries[2:]]), q)
            except NonUnitaryError as err:
                raise _LineError(toks[2].column, str(err)) from None
        elif word in ("cnot", "swap"):
            usage = "cnot CONTROL TARGET" if word == "cnot" else "swap NAME NAME"
            self.expect(toks, 3, usage)
            a, b = self.qubit(toks[1]), self.qubit(toks[2])
            try:
                payload = CNOT(a, b) if word == "cnot" else SWAP(a, b)
            except InvalidGateError as err:
                raise _LineError(toks[2].column, str(err)) from None
        else:
            self.expect(toks, 2, "cross NAME")
            payload = Crossing(self.qubit(toks[1]))

        if time is None:
            time = float(len(self.events) + 1)
        if time < 0.0:
            raise _LineError(toks[0].column, f"event time {time!r} is negative")
        if time < self.last_time:
            raise _LineError(
                toks[0].column, f"event time {time!r} decreases (previous event at {self.last_time!r})"
            )
        self.last_time = time
        self.events.append(TimelineEvent(time, payload))
        self.event_lines.append(lineno)


def parse_circuit(text: str, source: str = "<string>") -> CircuitDocument:
    """Parse circuit text; raise :class:`DSLParseError` carrying every diagnostic."""
    return _Parser(text, source).parse()


def _cpx(z):
    z = complex(z)
    return f"({z.real!r},{z.imag!r})"


def format_circuit(circuit: Circuit, header: str = "") -> str:
    """Render a circuit as DSL text that parses back to an equal circuit."""
    names = circuit.names
    out = [f"# {line}" if line else "#" for line in header.splitlines()]
    for name, region in zip(names, circuit.regions):
        out.append(f"qubit {name}" + (" inside" if region is Region.INSIDE else ""))
    for name, (a0, a1) in zip(names, circuit.factors):
        if complex(a0) != 1 or complex(a1) != 0:
            out.append(f"init {name} {_cpx(a0)} {_cpx(a1)}")
    for ev in circuit.events:
        p = ev.payload
        if isinstance(p, Unitary1Q):
            body = f"u {names[p.target]} " + " ".join(_cpx(z) for z in p.matrix.array.ravel())
        elif isinstance(p, CNOT):
            body = f"cnot {names[p.control]} {names[p.target]}"
        elif isinstance(p, SWAP):
            body = f"swap {names[p.a]} {names[p.b]}"
        else:
            body = f"cross {names[p.qubit]}"
        out.append(f"@{float(ev.time)!r} {body}")
    return "\n".join(out) + "\n"

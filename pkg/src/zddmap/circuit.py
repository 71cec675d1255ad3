"""Circuits, devices and the line-based text formats for both.

Circuit file::

    # comment
    .v a b c d
    h a
    cx a b
    rz(0.25) c

``cx``, ``cz`` and ``swap`` take two operands; any other kind takes one.
Parameter text in parentheses is kept as part of the kind label.

Device file::

    .q A B C D
    A B
    B C

or one of the generators ``ring:<n>`` / ``path:<n>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

TWO_QUBIT_KINDS = frozenset({"cx", "cz", "swap"})


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Gate:
    kind: str
    operands: tuple[int, ...]

    @property
    def is_two_qubit(self) -> bool:
        return len(self.operands) == 2


@dataclass
class Circuit:
    qubits: list[str]
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("duplicate qubit name")

    def index(self, name: str) -> int:
        return self.qubits.index(name)

    def add(self, kind: str, *operands: str | int) -> Gate:
        """Append a gate given qubit names or indices."""
        ops = tuple(q if isinstance(q, int) else self.index(q) for q in operands)
        gate = Gate(kind, ops)
        _check_gate(gate, len(self.qubits))
        self.gates.append(gate)
        return gate

    def two_qubit_positions(self) -> list[int]:
        """Positions in ``gates`` of the two-qubit gates, in circuit order."""
        return [i for i, g in enumerate(self.gates) if g.is_two_qubit]

    def two_qubit_gates(self) -> list[tuple[int, int]]:
        return [g.operands for g in self.gates if g.is_two_qubit]


@dataclass
class Device:
    qubits: list[str]
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("duplicate qubit name")
        seen = set()
        edges = []
        for p, q in self.edges:
            if p == q:
                raise ValueError(f"self-loop on {self.qubits[p]}")
            key = frozenset((p, q))
            if key not in seen:
                seen.add(key)
                edges.append((p, q))
        self.edges = edges
        self._edge_set = seen

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    def has_edge(self, p: int, q: int) -> bool:
        return frozenset((p, q)) in self._edge_set

    def neighbors(self, p: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == p:
                out.append(b)
            elif b == p:
                out.append(a)
        return out

    def edge_name(self, e: int) -> str:
        p, q = self.edges[e]
        return self.qubits[p] + self.qubits[q]


@dataclass(frozen=True)
class CircuitStats:
    depth: int
    volume: int
    two_qubit_count: int

    def to_dict(self) -> dict:
        return {"depth": self.depth, "volume": self.volume,
                "two_qubit_gates": self.two_qubit_count}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_gate(gate: Gate, n: int) -> None:
    kind = gate.kind.lower()
    if kind in TWO_QUBIT_KINDS:
        if len(gate.operands) != 2:
            raise ValueError(f"{gate.kind} needs two operands")
        if gate.operands[0] == gate.operands[1]:
            raise ValueError(f"{gate.kind} with repeated operand")
    elif len(gate.operands) != 1:
        raise ValueError(f"{gate.kind} needs exactly one operand")
    for q in gate.operands:
        if not 0 <= q < n:
            raise ValueError(f"operand {q} out of range")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _split_kind(line: str) -> tuple[str, list[str]]:
    if "(" in line.split()[0]:
        close = line.find(")")
        if close < 0:
            raise ValueError("unbalanced parenthesis")
        return line[:close + 1].replace(" ", ""), line[close + 1:].split()
    head, *rest = line.split()
    return head, rest


def parse_circuit(text: str) -> Circuit:
    qubits: list[str] = []
    index: dict[str, int] = {}
    gates: list[Gate] = []
    for lineno, line in _lines(text):
        if line.startswith("."):
            directive, *names = line.split()
            if directive != ".v":
                raise ParseError(f"unknown directive {directive}", lineno)
            for name in names:
                if name in index:
                    raise ParseError(f"qubit {name} declared twice", lineno)
                index[name] = len(qubits)
                qubits.append(name)
            continue
        try:
            kind, names = _split_kind(line)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        ops = []
        for name in names:
            if name not in index:
                raise ParseError(f"unknown qubit {name}", lineno)
            ops.append(index[name])
        gate = Gate(kind, tuple(ops))
        try:
            _check_gate(gate, len(qubits))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        gates.append(gate)
    return Circuit(qubits, gates)


def serialize_circuit(c: Circuit) -> str:
    out = [" ".join([".v", *c.qubits])]
    for g in c.gates:
        out.append(" ".join([g.kind, *(c.qubits[q] for q in g.operands)]))
    return "\n".join(out) + "\n"


def ring(n: int, names: list[str] | None = None) -> Device:
    names = names or [f"q{i}" for i in range(n)]
    edges = [(i, (i + 1) % n) for i in range(n)] if n > 1 else []
    return Device(list(names), edges)


def path(n: int, names: list[str] | None = None) -> Device:
    names = names or [f"q{i}" for i in range(n)]
    return Device(list(names), [(i, i + 1) for i in range(n - 1)])


_GENERATORS = {"ring": ring, "path": path}


def parse_device(text: str) -> Device:
    """Parse a device file or a ``ring:<n>``/``path:<n>`` generator string."""
    stripped = text.strip()
    if ":" in stripped and "\n" not in stripped:
        kind, _, size = stripped.partition(":")
        if kind in _GENERATORS:
            try:
                n = int(size)
            except ValueError:
                raise ParseError(f"bad generator size {size!r}") from None
            if n < 1:
                raise ParseError("generator size must be positive")
            return _GENERATORS[kind](n)
    qubits: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, line in _lines(text):
        if line.startswith("."):
            directive, *names = line.split()
            if directive != ".q":
                raise ParseError(f"unknown directive {directive}", lineno)
            for name in names:
                if name in index:
                    raise ParseError(f"qubit {name} declared twice", lineno)
                index[name] = len(qubits)
                qubits.append(name)
            continue
        names = line.split()
        if len(names) != 2:
            raise ParseError("edge line needs two qubit names", lineno)
        for name in names:
            if name not in index:
                raise ParseError(f"unknown qubit {name}", lineno)
        p, q = index[names[0]], index[names[1]]
        if p == q:
            raise ParseError(f"self-loop on {names[0]}", lineno)
        edges.append((p, q))
    return Device(qubits, edges)


def is_device_generator(text: str) -> bool:
    kind, sep, _ = text.strip().partition(":")
    return bool(sep) and kind in _GENERATORS and "\n" not in text.strip()


def serialize_device(d: Device) -> str:
    out = [" ".join([".q", *d.qubits])]
    out += [f"{d.qubits[p]} {d.qubits[q]}" for p, q in d.edges]
    return "\n".join(out) + "\n"


def stats(c: Circuit) -> CircuitStats:
    """Depth counts every gate, SWAPs included, as one time step."""
    level = [0] * len(c.qubits)
    depth = 0
    two = 0
    for g in c.gates:
        t = max(level[q] for q in g.operands) + 1
        for q in g.operands:
            level[q] = t
        depth = max(depth, t)
        two += g.is_two_qubit
    return CircuitStats(depth, len(c.gates), two)

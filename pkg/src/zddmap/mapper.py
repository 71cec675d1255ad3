"""Maximal circuit partitions and all their qubit mappings, via ZDDs.

Mapping variables pair a pseudo qubit ``v`` with a physical qubit ``p``;
with ``m`` physical qubits the variable index is ``v * m + p + 1`` (both
0-based), so pseudo qubits are the major key of the order.  A member set of
a mapping family is a partial injective map ``pseudo -> physical``.

Gate indices used here count two-qubit gates only (0-based); single-qubit
gates never influence the mapping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .circuit import Circuit, Device, Gate
from .layers import (
    DEFAULT_WEIGHTS,
    Layer,
    ScoreWeights,
    build_layers,
    layer_edges,
    layer_engine,
    score_layers,
    select_layer,
)
from .zdd import Engine, Family

DEFAULT_LOOKAHEAD = 20


class MappingError(ValueError):
    pass


class InfeasibleError(MappingError):
    """Fewer physical than pseudo qubits."""


class UnmappableGateError(MappingError):
    """A gate has no placement on any device edge."""

    def __init__(self, gate_index: int):
        self.gate_index = gate_index
        super().__init__(f"two-qubit gate {gate_index} cannot be placed on any device edge")


@dataclass(frozen=True)
class MapVarTable:
    num_pseudo: int
    num_physical: int

    def var(self, v: int, p: int) -> int:
        return v * self.num_physical + p + 1

    def pair(self, x: int) -> tuple[int, int]:
        return divmod(x - 1, self.num_physical)

    @property
    def size(self) -> int:
        return self.num_pseudo * self.num_physical

    def decode(self, members) -> dict[int, int]:
        return dict(self.pair(x) for x in members)

    def encode(self, mapping: dict[int, int]) -> list[int]:
        return [self.var(v, p) for v, p in mapping.items()]


@dataclass
class BaseSets:
    engine: Engine
    vars: MapVarTable
    gates: list[tuple[int, int]]
    from_v: list[Family]
    to_p: list[Family]
    valid: Family
    bad: Family


def build_base_sets(c: Circuit, d: Device, eng: Engine) -> BaseSets:
    n, m = len(c.qubits), d.num_qubits
    if n < 1:
        raise MappingError("circuit has no qubits")
    if m < n:
        raise InfeasibleError(f"{n} pseudo qubits do not fit on {m} physical qubits")
    table = MapVarTable(n, m)
    if eng.num_vars != table.size:
        raise MappingError(f"engine needs {table.size} variables, has {eng.num_vars}")
    from_v = [eng.singletons(table.var(v, p) for p in range(m)) for v in range(n)]
    to_p = [eng.singletons(table.var(v, p) for v in range(n)) for p in range(m)]
    valid = eng.union_all(eng.join(to_p[p], to_p[q]) for p, q in d.edges)
    bad = eng.union_all([eng.choose(f, 2) for f in from_v] + [eng.choose(t, 2) for t in to_p])
    return BaseSets(eng, table, c.two_qubit_gates(), from_v, to_p, valid, bad)


def gate_map(i: int, base: BaseSets) -> Family:
    """All placements of two-qubit gate ``i`` on a device edge."""
    if not 0 <= i < len(base.gates):
        raise MappingError(f"no two-qubit gate with index {i}")
    v, w = base.gates[i]
    eng = base.engine
    return eng.intersection(eng.join(base.from_v[v], base.from_v[w]), base.valid)


def merge(m: Family, i: int, base: BaseSets) -> Family:
    """Extend every mapping of ``m`` by gate ``i``; empty if none survives."""
    eng = base.engine
    return eng.nonsupersets(eng.join(m, gate_map(i, base)), base.bad)


def layer_pairs(layer: Layer, device: Device, table: MapVarTable) -> list[tuple[int, int]]:
    pairs = []
    used: set[int] = set()
    for e in layer:
        p, q = device.edges[e]
        if p in used or q in used:
            raise MappingError(f"layer {layer} is not depth one")
        used.update((p, q))
        pairs.extend((table.var(v, p), table.var(v, q)) for v in range(table.num_pseudo))
    return pairs


def apply_layer(m: Family, layer: Layer, device: Device, base: BaseSets,
                track: list[int] | None = None) -> Family:
    """Move pseudo qubits across every swapped edge of ``layer``.

    ``track[p]`` is the pseudo qubit currently on physical ``p`` (or -1) and is
    updated in place when given.
    """
    pairs = layer_pairs(layer, device, base.vars)
    if track is not None:
        for e in layer:
            p, q = device.edges[e]
            track[p], track[q] = track[q], track[p]
    return base.engine.rename_by_pairs(m, pairs)


@dataclass
class Partition:
    """Gates ``begin..end`` (inclusive) with their mappings at the partition end."""

    begin: int
    end: int
    phi: Family
    swap_layers: list[tuple[int, Layer]] = field(default_factory=list)
    initial_phi: Family | None = None

    def __len__(self):
        return self.end - self.begin + 1

    @property
    def mapping_count(self) -> int:
        return self.phi.count()

    def to_dict(self, device: Device) -> dict:
        return {
            "begin": self.begin,
            "end": self.end,
            "mapping_count": self.mapping_count,
            "swap_layers": [
                {"position": pos,
                 "edges": [[device.qubits[device.edges[e][0]],
                            device.qubits[device.edges[e][1]]] for e in layer]}
                for pos, layer in self.swap_layers
            ],
        }


class Mapper:
    """One mapping run: owns its engines and runs the partitioning loop."""

    def __init__(self, circuit: Circuit, device: Device,
                 weights: ScoreWeights = DEFAULT_WEIGHTS,
                 lookahead: int | None = DEFAULT_LOOKAHEAD,
                 backend: str | None = None):
        self.circuit = circuit
        self.device = device
        self.weights = weights
        n, m = len(circuit.qubits), device.num_qubits
        if m < n:
            raise InfeasibleError(f"{n} pseudo qubits do not fit on {m} physical qubits")
        names = [f"{v}{p}" for v in circuit.qubits for p in device.qubits]
        self.engine = Engine(n * m, names=names, backend=backend)
        self.base = build_base_sets(circuit, device, self.engine)
        self.num_gates = len(self.base.gates)
        self.lookahead = lookahead if lookahead else max(self.num_gates, 1)
        self.layer_engine = layer_engine(device, backend)
        self.layers = build_layers(device, self.layer_engine)
        self._candidates = [layer_edges(s) for s in self.layers if s]
        self._maps: dict[int, Family] = {}

    # -- ScoringContext -----------------------------------------------------

    def gate_map(self, i: int) -> Family:
        f = self._maps.get(i)
        if f is None:
            f = self._maps[i] = gate_map(i, self.base)
        return f

    def merge(self, m: Family, i: int) -> Family:
        eng = self.engine
        return eng.nonsupersets(eng.join(m, self.gate_map(i)), self.base.bad)

    def apply_layer(self, m: Family, layer: Layer, track: list[int] | None = None) -> Family:
        return apply_layer(m, layer, self.device, self.base, track)

    def image(self, m: Family) -> set[int]:
        return {self.base.vars.pair(x)[1] for x in self.engine.support(m)}

    def candidate_layers(self) -> Sequence[Layer]:
        return self._candidates

    def layer_qubits(self, layer: Layer) -> set[int]:
        return {q for e in layer for q in self.device.edges[e]}

    # -- partitioning -------------------------------------------------------

    def _start(self, i: int) -> Family:
        m = self.gate_map(i)
        if not m:
            raise UnmappableGateError(i)
        return m

    def _close(self, begin: int, end: int, m: Family, layers) -> Partition:
        initial = m
        for _, layer in reversed(layers):
            initial = self.apply_layer(initial, layer)
        return Partition(begin, end, m, layers, initial)

    def find_partitions(self) -> list[Partition]:
        k = self.num_gates
        if k == 0:
            return []
        partitions = []
        begin, m, layers = 0, self._start(0), []
        for i in range(1, k):
            merged = self.merge(m, i)
            if merged:
                m = merged
                continue
            best = select_layer(score_layers(m, i, self, self.weights))
            if best is not None:
                layers.append((i, best.layer))
                m = self.merge(self.apply_layer(m, best.layer), i)
            else:
                partitions.append(self._close(begin, i - 1, m, layers))
                begin, m, layers = i, self._start(i), []
        partitions.append(self._close(begin, k - 1, m, layers))
        return partitions


def find_maximal_partitions(c: Circuit, d: Device, weights: ScoreWeights = DEFAULT_WEIGHTS,
                            lookahead: int | None = DEFAULT_LOOKAHEAD,
                            backend: str | None = None) -> list[Partition]:
    return Mapper(c, d, weights, lookahead, backend).find_partitions()


def maximal_partition(partitions: Sequence[Partition]) -> int | None:
    """Index of the longest partition, earliest on ties."""
    if not partitions:
        return None
    return max(range(len(partitions)), key=lambda j: (len(partitions[j]), -j))


def choose_assignment(p: Partition | None, table: MapVarTable) -> dict[int, int]:
    """First initial mapping of ``p``, completed over the remaining qubits in index order."""
    mapping: dict[int, int] = {}
    if p is not None:
        family = p.initial_phi if p.initial_phi is not None else p.phi
        mapping = table.decode(next(iter(family)))
    free = [q for q in range(table.num_physical) if q not in set(mapping.values())]
    free.reverse()
    for v in range(table.num_pseudo):
        if v not in mapping:
            mapping[v] = free.pop()
    return mapping


@dataclass
class MappingResult:
    assignment: dict[int, int]
    mapped_circuit: Circuit
    partitions: list[Partition]
    maximal: int | None
    fully_mapped: bool
    swaps_inserted: int
    unrouted: list[int]

    def named_assignment(self, circuit: Circuit, device: Device) -> dict[str, str]:
        return {circuit.qubits[v]: device.qubits[p] for v, p in sorted(self.assignment.items())}


def emit_mapped_circuit(c: Circuit, d: Device, partitions: Sequence[Partition],
                        assignment: dict[int, int]) -> MappingResult:
    """Rewrite ``c`` onto physical qubits with the maximal partition's SWAPs.

    Two-qubit gates outside the maximal partition are emitted under the
    running placement and listed in ``unrouted`` (output gate indices).
    """
    best = maximal_partition(partitions)
    span = (partitions[best].begin, partitions[best].end) if best is not None else (0, -1)
    swaps: dict[int, list[Layer]] = {}
    if best is not None:
        for pos, layer in partitions[best].swap_layers:
            swaps.setdefault(pos, []).append(layer)
    where = dict(assignment)
    track = [-1] * d.num_qubits
    for v, p in where.items():
        track[p] = v
    out = Circuit(list(d.qubits))
    unrouted = []
    inserted = 0
    two = 0
    for g in c.gates:
        if g.is_two_qubit:
            for layer in swaps.get(two, ()):
                for e in layer:
                    p, q = d.edges[e]
                    out.gates.append(Gate("swap", (p, q)))
                    inserted += 1
                    track[p], track[q] = track[q], track[p]
                    if track[p] >= 0:
                        where[track[p]] = p
                    if track[q] >= 0:
                        where[track[q]] = q
            if not span[0] <= two <= span[1]:
                unrouted.append(len(out.gates))
            two += 1
        out.gates.append(Gate(g.kind, tuple(where[v] for v in g.operands)))
    fully = len(partitions) <= 1
    return MappingResult(assignment, out, list(partitions), best, fully, inserted, unrouted)


def map_circuit(c: Circuit, d: Device, weights: ScoreWeights = DEFAULT_WEIGHTS,
                lookahead: int | None = DEFAULT_LOOKAHEAD,
                backend: str | None = None) -> MappingResult:
    """Partition, pick the maximal partition's first mapping and emit the circuit."""
    if not c.two_qubit_gates():
        if d.num_qubits < len(c.qubits):
            raise InfeasibleError(
                f"{len(c.qubits)} pseudo qubits do not fit on {d.num_qubits} physical qubits")
        table = MapVarTable(len(c.qubits), d.num_qubits)
        return emit_mapped_circuit(c, d, [], choose_assignment(None, table))
    mapper = Mapper(c, d, weights, lookahead, backend)
    partitions = mapper.find_partitions()
    best = maximal_partition(partitions)
    assignment = choose_assignment(partitions[best], mapper.base.vars)
    return emit_mapped_circuit(c, d, partitions, assignment)

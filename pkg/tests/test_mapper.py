import itertools
import random

import pytest

from oracles import ExplicitMapper, placements_with_swaps, random_circuit
from zddmap.circuit import Circuit, Device, parse_circuit, path, ring, serialize_circuit
from zddmap.layers import ScoreWeights
from zddmap.mapper import (
    InfeasibleError,
    MapVarTable,
    Mapper,
    UnmappableGateError,
    choose_assignment,
    emit_mapped_circuit,
    find_maximal_partitions,
    map_circuit,
    maximal_partition,
)
from zddmap.verify import check_couplings, replay_check

NO_SWAPS = ScoreWeights(0, 1, 0)

MAP1 = ["aA bB", "aB bC", "aC bD", "aD bA", "aB bA", "aC bB", "aD bC", "aA bD"]
MAP2 = ["bA cB", "bB cC", "bC cD", "bD cA", "bB cA", "bC cB", "bD cC", "bA cD"]
MERGED = ["aA bB cC", "aB bC cD", "aC bD cA", "aD bA cB",
          "aA bD cC", "aB bA cD", "aC bB cA", "aD bC cB"]


def as_names(mp, family):
    t = mp.base.vars
    c, d = mp.circuit, mp.device
    return {frozenset(c.qubits[v] + d.qubits[p] for v, p in map(t.pair, s)) for s in family}


def listed(items):
    return {frozenset(s.split()) for s in items}


@pytest.fixture
def hub_mapper(hub, ring4, backend):
    return Mapper(hub, ring4, backend=backend)


def test_from_and_to(hub_mapper):
    b = hub_mapper.base
    assert as_names(hub_mapper, b.from_v[0]) == listed(["aA", "aB", "aC", "aD"])
    assert as_names(hub_mapper, b.to_p[0]) == listed(["aA", "bA", "cA", "dA"])
    assert all(f.count() == 4 for f in b.from_v + b.to_p)


def test_bad_is_exactly_the_conflicting_pairs(hub_mapper):
    names = as_names(hub_mapper, hub_mapper.base.bad)
    assert frozenset({"aA", "aB"}) in names and frozenset({"aA", "bA"}) in names
    expected = set()
    for (v, p), (w, q) in itertools.combinations(itertools.product("abcd", "ABCD"), 2):
        if (v == w) != (p == q):
            expected.add(frozenset({v + p, w + q}))
    assert names == expected


def test_valid_members_are_edges(hub_mapper):
    t = hub_mapper.base.vars
    for s in hub_mapper.base.valid:
        (v, p), (w, q) = map(t.pair, sorted(s))
        assert hub_mapper.device.has_edge(p, q)


def test_valid_on_path2(backend):
    mp = Mapper(parse_circuit(".v a b\ncx a b\n"), path(2), backend=backend)
    valid = [dict(map(mp.base.vars.pair, s)) for s in mp.base.valid]
    assert len(valid) == 4
    assert len([m for m in valid if len(m) == 2]) == 2
    assert mp.gate_map(0).count() == 2


def test_gate_maps(hub_mapper):
    assert as_names(hub_mapper, hub_mapper.gate_map(0)) == listed(MAP1)
    assert as_names(hub_mapper, hub_mapper.gate_map(1)) == listed(MAP2)


def test_join_before_bad_removal_is_bounded(hub_mapper):
    eng = hub_mapper.engine
    assert eng.join(hub_mapper.gate_map(0), hub_mapper.gate_map(1)).count() <= 64


def test_merge_examples(hub_mapper):
    mp = hub_mapper
    m = mp.merge(mp.gate_map(0), 1)
    assert as_names(mp, m) == listed(MERGED)
    assert mp.merge(mp.gate_map(0), 0) == mp.gate_map(0)
    assert not mp.merge(m, 2)


def test_apply_layer(hub_mapper):
    mp = hub_mapper
    m = mp.merge(mp.gate_map(0), 1)
    assert mp.apply_layer(m, ()) == m
    for layer in [(0,), (2,), (1, 3)]:
        assert mp.apply_layer(mp.apply_layer(m, layer), layer) == m
    swapped = mp.apply_layer(m, (2,))
    by_hand = {frozenset(x.replace("C", "#").replace("D", "C").replace("#", "D") for x in s)
               for s in listed(MERGED)}
    assert as_names(mp, swapped) == by_hand
    assert mp.merge(swapped, 2)


def test_apply_layer_tracks_and_rejects_overlap(hub_mapper):
    track = [0, 1, 2, 3]
    hub_mapper.apply_layer(hub_mapper.gate_map(0), (0, 2), track)
    assert track == [1, 0, 3, 2]
    with pytest.raises(ValueError):
        hub_mapper.apply_layer(hub_mapper.gate_map(0), (0, 1))


def test_hub_partition(hub_mapper):
    parts = hub_mapper.find_partitions()
    assert len(parts) == 1
    p = parts[0]
    assert (p.begin, p.end) == (0, 2)
    assert len(p.swap_layers) == 1 and p.swap_layers[0][0] == 2
    assert frozenset({"aA", "bB", "cC", "dD"}) in as_names(hub_mapper, p.initial_phi)


def test_single_gate(backend):
    c = parse_circuit(".v a b c\ncx b c\n")
    mp = Mapper(c, ring(4), backend=backend)
    (p,) = mp.find_partitions()
    assert (p.begin, p.end, p.swap_layers) == (0, 0, [])
    assert p.phi == mp.gate_map(0)


def test_infeasible_and_unmappable(backend):
    c = parse_circuit(".v a b c d e\ncx a b\n")
    with pytest.raises(InfeasibleError):
        find_maximal_partitions(c, ring(4), backend=backend)
    with pytest.raises(UnmappableGateError):
        find_maximal_partitions(parse_circuit(".v a b\ncx a b\n"),
                                Device(["A", "B"], []), backend=backend)


def test_no_swaps_partitions_close():
    c = parse_circuit(".v a b c d\ncx a b\ncx b c\ncx b d\n")
    parts = find_maximal_partitions(c, ring(4), NO_SWAPS)
    assert [(p.begin, p.end) for p in parts] == [(0, 1), (2, 2)]
    assert parts[0].phi.count() == 8


# -- assignment and emission ----------------------------------------------------

def test_choose_assignment_hub(hub_mapper):
    parts = hub_mapper.find_partitions()
    a = choose_assignment(parts[0], hub_mapper.base.vars)
    assert a == {0: 0, 1: 1, 2: 2, 3: 3}


def test_choose_assignment_path2(backend):
    mp = Mapper(parse_circuit(".v a b\ncx b a\n"), path(2), backend=backend)
    (p,) = mp.find_partitions()
    assert choose_assignment(p, mp.base.vars) == {0: 0, 1: 1}


def test_choose_assignment_pigeonhole(backend):
    c = parse_circuit(".v a b c\ncx a b\n")
    mp = Mapper(c, ring(4), backend=backend)
    a = choose_assignment(mp.find_partitions()[0], mp.base.vars)
    assert sorted(a) == [0, 1, 2] and len(set(a.values())) == 3


def test_emit_hub(hub, ring4, backend):
    r = map_circuit(hub, ring4, backend=backend)
    assert r.fully_mapped and r.swaps_inserted == 1 and r.unrouted == []
    lines = serialize_circuit(r.mapped_circuit).splitlines()
    assert lines[:3] == [".v A B C D", "cx A B", "cx B C"]
    assert lines[3].startswith("swap ")
    assert check_couplings(r.mapped_circuit, ring4) == []
    assert replay_check(hub, r.mapped_circuit, ring4, r.assignment) == []


def test_emit_without_two_qubit_gates():
    c = parse_circuit(".v a b\nh a\nt b\n")
    r = map_circuit(c, ring(3))
    assert r.fully_mapped and r.partitions == [] and r.swaps_inserted == 0
    assert serialize_circuit(r.mapped_circuit) == ".v q0 q1 q2\nh q0\nt q1\n"


def test_emit_flags_gates_outside_maximal_partition():
    c = parse_circuit(".v a b c d\ncx a b\ncx b c\nh d\ncx b d\n")
    parts = find_maximal_partitions(c, ring(4), NO_SWAPS)
    best = maximal_partition(parts)
    r = emit_mapped_circuit(c, ring(4), parts, choose_assignment(parts[best], MapVarTable(4, 4)))
    assert not r.fully_mapped
    assert r.unrouted == [3]
    assert check_couplings(r.mapped_circuit, ring(4), skip=r.unrouted) == []


def test_maximal_partition_tie_break():
    class P:
        def __init__(self, n):
            self.n = n

        def __len__(self):
            return self.n
    assert maximal_partition([P(2), P(3), P(3)]) == 1
    assert maximal_partition([]) is None


# -- randomized oracle checks ---------------------------------------------------

def _cases(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        m = rng.randint(2, 6)
        n = rng.randint(2, m)
        device = rng.choice([ring, path])(m)
        yield random_circuit(rng, n, rng.randint(1, 8), single_qubit_rate=0.2), device


@pytest.mark.parametrize("seed", range(4))
def test_no_swap_partitions_match_enumeration(seed, backend):
    for c, d in _cases(seed, 15):
        gates = c.two_qubit_gates()
        mp = Mapper(c, d, NO_SWAPS, backend=backend)
        parts = mp.find_partitions()
        assert parts[0].begin == 0 and parts[-1].end == len(gates) - 1
        for a, b in zip(parts, parts[1:]):
            assert b.begin == a.end + 1
        for p in parts:
            got = {frozenset(map(mp.base.vars.pair, s)) for s in p.phi}
            assert got == placements_with_swaps(gates, d, p.begin, p.end, [])
            assert p.phi.count() == len(got)


@pytest.mark.parametrize("seed", range(4))
def test_partitions_match_explicit_mapper(seed, backend):
    for c, d in _cases(100 + seed, 15):
        gates = c.two_qubit_gates()
        mp = Mapper(c, d, backend=backend)
        parts = mp.find_partitions()
        expected = ExplicitMapper(c, d, ScoreWeights()).run()
        assert len(parts) == len(expected)
        for p, (b, e, phi, layers) in zip(parts, expected):
            assert (p.begin, p.end, p.swap_layers) == (b, e, layers)
            got = {frozenset(map(mp.base.vars.pair, s)) for s in p.phi}
            assert got == phi
            assert got == placements_with_swaps(gates, d, b, e, layers)


def test_closed_partitions_after_failed_swap(backend):
    c = parse_circuit(".v a b c d e\ncx a b\ncx b c\ncx c d\ncx d e\ncx a e\ncx b e\ncx a c\n")
    mp = Mapper(c, path(5), backend=backend)
    parts = mp.find_partitions()
    expected = ExplicitMapper(c, path(5), ScoreWeights()).run()
    assert [(p.begin, p.end) for p in parts] == [(0, 3), (4, 6)]
    for p, (b, e, phi, layers) in zip(parts, expected):
        assert (p.begin, p.end, p.swap_layers) == (b, e, layers)
        assert {frozenset(map(mp.base.vars.pair, s)) for s in p.phi} == phi


def test_members_avoid_bad_pairs(backend):
    for c, d in _cases(7, 10):
        mp = Mapper(c, d, backend=backend)
        for p in mp.find_partitions():
            for s in p.phi:
                pairs = [mp.base.vars.pair(x) for x in s]
                assert len({v for v, _ in pairs}) == len(pairs)
                assert len({q for _, q in pairs}) == len(pairs)


def test_merge_never_legalizes(backend):
    for c, d in _cases(11, 10):
        mp = Mapper(c, d, NO_SWAPS, backend=backend)
        t = mp.base.vars
        m = mp.gate_map(0)
        for i in range(1, mp.num_gates):
            nxt = mp.merge(m, i)
            if not nxt:
                break
            covered = {v for s in m for v, _ in map(t.pair, s)}
            before = {frozenset(s) for s in m}
            for s in nxt:
                proj = frozenset(x for x in s if t.pair(x)[0] in covered)
                assert proj in before
            m = nxt


def test_mapped_output_passes_replay_and_mutation_fails():
    rng = random.Random(5)
    for c, d in _cases(21, 20):
        r = map_circuit(c, d)
        assert replay_check(c, r.mapped_circuit, d, r.assignment, skip=r.unrouted) == []
        two = [i for i, g in enumerate(r.mapped_circuit.gates)
               if g.is_two_qubit and i not in r.unrouted]
        non_edges = [(p, q) for p in range(d.num_qubits) for q in range(d.num_qubits)
                     if p != q and not d.has_edge(p, q)]
        if not two or not non_edges:
            continue
        pos = rng.choice(two)
        bad = Circuit(list(r.mapped_circuit.qubits), list(r.mapped_circuit.gates))
        bad.gates[pos] = type(bad.gates[pos])(bad.gates[pos].kind, rng.choice(non_edges))
        found = replay_check(c, bad, d, r.assignment, skip=r.unrouted)
        assert pos in [v.gate_index for v in found]


def test_deterministic_across_runs_and_backends():
    from zddmap.zdd import available_backends
    for c, d in _cases(33, 10):
        outs = {serialize_circuit(map_circuit(c, d, backend=b).mapped_circuit)
                for b in available_backends() for _ in range(2)}
        assert len(outs) == 1

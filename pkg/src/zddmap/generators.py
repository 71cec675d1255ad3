"""Synthetic input circuits for tests and benchmarks."""

from __future__ import annotations

import random

from .circuit import Circuit

# Clifford+T expansion of a Toffoli with controls (0, 1) and target 2
_TOFFOLI = [
    ("h", (2,)), ("cx", (1, 2)), ("tdg", (2,)), ("cx", (0, 2)), ("t", (2,)),
    ("cx", (1, 2)), ("tdg", (2,)), ("cx", (0, 2)), ("t", (1,)), ("t", (2,)),
    ("h", (2,)), ("cx", (0, 1)), ("t", (0,)), ("tdg", (1,)), ("cx", (0, 1)),
]


def toffoli(c: Circuit, a: int, b: int, target: int) -> None:
    roles = (a, b, target)
    for kind, ops in _TOFFOLI:
        c.add(kind, *(roles[i] for i in ops))


def toffoli_ladder(n: int, rounds: int = 1) -> Circuit:
    """Toffolis on every window of three neighbouring qubits, ``rounds`` times."""
    c = Circuit([f"q{i}" for i in range(n)])
    for _ in range(rounds):
        for i in range(n - 2):
            toffoli(c, i, i + 1, i + 2)
        for i in range(n - 3, -1, -1):
            toffoli(c, i, i + 1, i + 2)
    return c


def random_toffoli_circuit(n: int, count: int, seed: int = 0) -> Circuit:
    """``count`` Toffolis on random distinct qubit triples."""
    rng = random.Random(seed)
    c = Circuit([f"q{i}" for i in range(n)])
    for _ in range(count):
        toffoli(c, *rng.sample(range(n), 3))
    return c


def random_two_qubit_circuit(n: int, k: int, seed: int = 0) -> Circuit:
    rng = random.Random(seed)
    c = Circuit([f"q{i}" for i in range(n)])
    for _ in range(k):
        c.add("cx", *rng.sample(range(n), 2))
    return c

"""Coupling checks for mapped circuits.

These deliberately avoid the ZDD machinery: they replay the physical gate
stream directly so they can serve as an independent check on the mapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .circuit import Circuit, Device


@dataclass(frozen=True)
class Violation:
    gate_index: int
    reason: str

    def __str__(self):
        return f"gate {self.gate_index}: {self.reason}"


def check_couplings(mapped: Circuit, device: Device,
                    skip: Iterable[int] = ()) -> list[Violation]:
    """Two-qubit gates of ``mapped`` (on device qubit names) that miss an edge."""
    index = {name: i for i, name in enumerate(device.qubits)}
    skip = set(skip)
    out = []
    for pos, g in enumerate(mapped.gates):
        if not g.is_two_qubit or pos in skip:
            continue
        a, b = (mapped.qubits[q] for q in g.operands)
        if a not in index or b not in index:
            out.append(Violation(pos, f"unknown physical qubit in {a} {b}"))
        elif not device.has_edge(index[a], index[b]):
            out.append(Violation(pos, f"{g.kind} {a} {b} is not a device edge"))
    return out


def replay_check(original: Circuit, mapped: Circuit, device: Device,
                 assignment: dict[int, int], skip: Iterable[int] = ()) -> list[Violation]:
    """Replay ``mapped`` against ``original`` under the initial ``assignment``.

    Every output gate must either be the next original gate on the current
    placement of its pseudo qubits, or an inserted ``swap`` that moves two
    physical tracks.  Two-qubit gates not in ``skip`` must sit on device edges.
    """
    out = check_couplings(mapped, device, skip)
    where = dict(assignment)
    if len(set(where.values())) != len(where):
        return out + [Violation(-1, "assignment is not injective")]
    occupant = {p: v for v, p in where.items()}
    k = 0
    for pos, g in enumerate(mapped.gates):
        if k < len(original.gates):
            want = original.gates[k]
            if want.kind == g.kind and tuple(where[v] for v in want.operands) == g.operands:
                k += 1
                continue
        if g.kind == "swap" and g.is_two_qubit:
            p, q = g.operands
            vp, vq = occupant.pop(p, None), occupant.pop(q, None)
            if vp is not None:
                occupant[q] = vp
                where[vp] = q
            if vq is not None:
                occupant[p] = vq
                where[vq] = p
            continue
        out.append(Violation(pos, f"{g.kind} does not match original gate {k}"))
        return sorted(out, key=lambda v: v.gate_index)
    if k != len(original.gates):
        out.append(Violation(len(mapped.gates), f"original gates from {k} on are missing"))
    return sorted(out, key=lambda v: v.gate_index)

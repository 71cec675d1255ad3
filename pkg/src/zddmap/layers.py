"""Depth-one SWAP layers as a ZDD over device edges, and their scoring.

Edge ``e`` of the device (declaration order, 0-based) is ZDD variable
``e + 1``.  A layer is a matching of the coupling graph, carried around as
a sorted tuple of edge indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol, Sequence

from .circuit import Device
from .zdd import Engine, Family

Layer = tuple[int, ...]


@dataclass(frozen=True)
class ScoreWeights:
    """Depth (alpha), map (beta) and swap (gamma) weights of the layer score."""

    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(1)
    gamma: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            value = Fraction(getattr(self, name))
            if value < 0:
                raise ValueError(f"{name} must be nonnegative")
            object.__setattr__(self, name, value)
        if not (self.alpha or self.beta or self.gamma):
            raise ValueError("weights must not all be zero")


DEFAULT_WEIGHTS = ScoreWeights()


@dataclass(frozen=True)
class LayerScore:
    layer: Layer
    depth_count: int
    map_count: int
    swap_count: int
    score: Fraction


def layer_engine(device: Device, backend: str | None = None) -> Engine:
    return Engine(len(device.edges),
                  names=[device.edge_name(e) for e in range(len(device.edges))],
                  backend=backend)


def build_edges_family(p: int, device: Device, eng: Engine) -> Family:
    """Single-SWAP family of every edge incident to physical qubit ``p``."""
    return eng.singletons(e + 1 for e, (a, b) in enumerate(device.edges) if p in (a, b))


def build_layers(device: Device, eng: Engine) -> Family:
    """All sets of pairwise vertex-disjoint edges, the empty set included."""
    conflicts = eng.union_all(
        eng.choose(build_edges_family(p, device, eng), 2)
        for p in range(device.num_qubits))
    return eng.nonsupersets(eng.universal(), conflicts)


def layer_edges(members: frozenset[int]) -> Layer:
    return tuple(sorted(v - 1 for v in members))


class ScoringContext(Protocol):
    num_gates: int
    lookahead: int

    def merge(self, m: Family, i: int) -> Family: ...

    def apply_layer(self, m: Family, layer: Layer) -> Family: ...

    def image(self, m: Family) -> set[int]: ...

    def candidate_layers(self) -> Sequence[Layer]: ...

    def layer_qubits(self, layer: Layer) -> set[int]: ...


def score_layers(m: Family, i: int, ctx: ScoringContext,
                 weights: ScoreWeights) -> list[LayerScore]:
    """Score every nonempty layer that touches the image of ``m`` at gate ``i``.

    The map count is the exact number of mappings after the layer is applied
    and gate ``i`` merged; the depth count is how many gates from ``i`` on a
    greedy merge absorbs, capped at ``ctx.lookahead``.
    """
    image = ctx.image(m)
    horizon = min(ctx.num_gates, i + ctx.lookahead)
    scores = []
    for layer in ctx.candidate_layers():
        if not ctx.layer_qubits(layer) & image:
            continue
        current = ctx.merge(ctx.apply_layer(m, layer), i)
        maps = current.count()
        depth = 0
        if current:
            depth = 1
            for nxt in range(i + 1, horizon):
                current = ctx.merge(current, nxt)
                if not current:
                    break
                depth += 1
        swaps = len(layer)
        score = (depth * weights.alpha + maps * weights.beta) * weights.gamma / swaps
        scores.append(LayerScore(layer, depth, maps, swaps, score))
    return scores


def select_layer(scores: Sequence[LayerScore]) -> LayerScore | None:
    """Highest score; ties go to fewer SWAPs, then the smallest edge tuple."""
    if not scores:
        return None
    best = min(scores, key=lambda s: (-s.score, s.swap_count, s.layer))
    return best if best.score != 0 else None

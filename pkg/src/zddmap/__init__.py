"""ZDD family algebra and a ZDD-based qubit mapper with parallel SWAP layers."""

from .circuit import (
    Circuit,
    CircuitStats,
    Device,
    Gate,
    ParseError,
    parse_circuit,
    parse_device,
    serialize_circuit,
    stats,
)
from .layers import DEFAULT_WEIGHTS, LayerScore, ScoreWeights, build_layers, score_layers, select_layer
from .mapper import (
    InfeasibleError,
    Mapper,
    MappingError,
    MappingResult,
    Partition,
    UnmappableGateError,
    find_maximal_partitions,
    map_circuit,
)
from .verify import check_couplings, replay_check
from .zdd import BOT, TOP, Engine, Family, ZddError, available_backends, default_backend

__version__ = "0.1.0"

"""Maximally recoverable locally repairable codes with locality, local
distance and availability: explicit constructions over small finite
fields, exhaustive verification, erasure decoding, field-size bounds and
a seeded failure simulator."""

from .ff import FieldCtx, FieldTower, field_ctx, make_tower
from .matrix import MatrixF, block_diag
from .topology import Topology, make_topology
from .constructions import (
    MrLrcCode, construct, construct_gen, construct_pc1, construct_pc2,
    encode, plan_field, read_bundle, write_bundle,
)
from .verify import (
    decode_erasures, lower_bound_field, verify_mr_exhaustive,
    verify_mr_sampled,
)

__all__ = [
    "FieldCtx", "FieldTower", "field_ctx", "make_tower",
    "MatrixF", "block_diag",
    "Topology", "make_topology",
    "MrLrcCode", "construct", "construct_gen", "construct_pc1",
    "construct_pc2", "encode", "plan_field", "read_bundle", "write_bundle",
    "decode_erasures", "lower_bound_field", "verify_mr_exhaustive",
    "verify_mr_sampled",
]

__version__ = "0.1.0"

"""hamdual: exact Hamiltonian-cycle decision for cubic planar graphs.

The decision procedure searches the planar dual for a rooted induced
subtree that touches all three faces around every primal vertex; such
trees correspond exactly to Hamiltonian cycles, and every positive answer
ships with a certificate that an independent checker re-validates.
"""

__version__ = "0.1.0"

from .certify import (
    Certificate,
    canonical_cycle,
    check_certificate,
    reconstruct_cycle,
    replay_expansion,
    verify_hamiltonian,
)
from .dual import DualGraph, TriangleMap, build_dual
from .embedding import Face, RotationEmbedding
from .expansion import (
    CycleState,
    PathProbe,
    complementary_path,
    expand,
    initial_cycle,
    run_expansion,
    tree_of,
)
from .formats import (
    parse_planar_code,
    parse_rotation_text,
    serialize_dot,
    serialize_planar_code,
    serialize_rotation_text,
)
from .oracle import OracleResult, generate_corpus, oracle_dfs, oracle_dp
from .solver import SearchStats, SolveOutcome, SolverConfig, solve

__all__ = [
    "Certificate",
    "CycleState",
    "DualGraph",
    "Face",
    "OracleResult",
    "PathProbe",
    "RotationEmbedding",
    "SearchStats",
    "SolveOutcome",
    "SolverConfig",
    "TriangleMap",
    "build_dual",
    "canonical_cycle",
    "check_certificate",
    "complementary_path",
    "expand",
    "generate_corpus",
    "initial_cycle",
    "oracle_dfs",
    "oracle_dp",
    "parse_planar_code",
    "parse_rotation_text",
    "reconstruct_cycle",
    "replay_expansion",
    "run_expansion",
    "serialize_dot",
    "serialize_planar_code",
    "serialize_rotation_text",
    "solve",
    "tree_of",
    "verify_hamiltonian",
]

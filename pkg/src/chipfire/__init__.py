"""Chip-firing games and divisor theory on strongly connected multidigraphs.

Distributions are integer vectors indexed by vertices ``0..n-1``; the same
vector is read as a chip configuration or as a divisor.
"""

from .errors import (
    ChipFireError,
    DimensionMismatch,
    InputError,
    LoopArc,
    NotASubset,
    NotBidirected,
    NotEulerian,
    NotStronglyConnected,
    ParseError,
    RankDeficient,
    SizeLimitExceeded,
    StepLimitExceeded,
    VertexOutOfRange,
)
from .graph import (
    MultiDigraph,
    build_digraph,
    from_undirected,
    is_acyclic_after,
    is_bidirected,
    is_eulerian,
    is_strongly_connected,
    laplacian,
    parse_graph,
    read_graph,
    subgraph_indegree,
)
from .lattice import LaplacianLattice, build_lattice, canonical_rep, enumerate_classes, equivalent, lattice_of
from .game import (
    GameTrace,
    Verdict,
    decide_termination,
    dist,
    fire,
    is_equi_effective,
    is_terminating,
    play,
    rank,
)
from .arcset import (
    acyclic_orientations,
    is_feedback_arc_set,
    is_turnback_arc_set,
    min_turnback,
    minfas,
    minimal_feedback_arc_sets,
    nonterm_witness_acyclic_orientation,
    nonterm_witness_turnback,
)
from .riemann_roch import (
    RRReport,
    enumerate_mnt_classes,
    natural_rr_check,
    rr_check,
    verify_eulerian_weak_rr,
    verify_undirected_rr,
)
from .fixtures import load_fixture

__version__ = "0.1.0"

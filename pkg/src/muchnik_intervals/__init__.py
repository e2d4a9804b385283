"""Finite distributive lattices, their Birkhoff posets, and which of them occur
as intervals of the Muchnik lattice."""
from .errors import (
    CycleDetected,
    IndexOutOfRange,
    InvalidConfiguration,
    MuchnikError,
    NotALattice,
    NotComparable,
    NotDistributive,
    NotInitialSegment,
    ParseError,
    SizeBound,
)
from .lattice import (
    Lattice,
    birkhoff_roundtrip,
    downset_lattice,
    free_distributive,
    interval,
    join_irreducibles,
    verify_lattice,
)
from .poset import DownSet, Poset, add_top, is_usl_initial_segment
from .realizability import (
    equivalence_sweep,
    has_dd_like_subinterval,
    is_dd_like,
    is_initial_segment_realizable,
    is_realizable,
    minimal_counterexamples,
)

__version__ = "0.1.0"

"""Multicolor Turán computations for k-uniform hypergraphs."""

from .hypercore import (
    CapExceeded,
    Hypergraph,
    HypergraphError,
    UniformityMismatch,
    VertexPartition,
    blowup,
    complete,
    construct,
    induced_subgraph,
    shadow_graph,
)
from .morphisms import (
    Copy,
    Embedding,
    automorphisms,
    chromatic_number,
    copies_through,
    enumerate_copies,
    find_homomorphism,
    is_isomorphic,
)
from .packing import fractional_packing, integral_packing, packing_number_of_complete, uniform_count_check
from .rainbow import (
    CopyFamily,
    blowup_lower_bound,
    count_non_rainbow_copies,
    count_rainbow_copies,
    exact_multicolor_turan,
    find_rainbow_copy,
)
from .classifier import (
    bounds_report,
    classify,
    exact_turan,
    find_independent_transversal,
    is_bipartite,
    is_odd,
)

__version__ = "0.1.0"

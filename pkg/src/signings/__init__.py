"""Exact algorithms for symmetric signings of real symmetric matrices."""

from .exactla import (
    BlockSplit,
    Gf2Matrix,
    SymMatrix,
    det_exact,
    det_gf2,
    is_psd_exact,
    max_eigenvalue_leq,
    nullspace_gf2,
    schur_complement,
)
from .graphcore import (
    GallaiEdmonds,
    Graph,
    Matching,
    TwoMatching,
    double_cover,
    eulerian_circuit,
    extract_two_matching,
    gallai_edmonds,
    has_perfect_two_matching,
    inessential_vertices,
    max_matching_bipartite,
    max_matching_general,
    max_matching_prefer_B1,
    nu_f,
    support_graph,
    witness_non_expanding_independent_set,
)
from .signlab import (
    CountReport,
    Signing,
    SolvabilityResult,
    all_signings_invertible_bipartite,
    apply_signing,
    count_invertible_signings,
    exists_invertible_signing,
    extend_invertible,
    find_invertible_signing_bipartite,
    find_singular_signing_bipartite,
    pm_count_parity,
    solvability_index,
)

__version__ = "0.1.0"

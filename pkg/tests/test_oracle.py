import random

import pytest

from signings.exactla import SymMatrix, det_exact
from signings.gadgetry import partition_gadget
from signings.graphcore import Graph, has_perfect_two_matching, support_graph
from signings.oracle import (
    brute_count_invertible,
    brute_count_perfect_matchings,
    brute_exists_psd_signing,
    brute_exists_singular_offdiag,
    brute_min_edge_add,
    expansion_terms,
    nonzero_permutation_exists,
    permutation_expansion_det,
)
from signings.signlab import GuardExceeded, Signing

from corpus import complete, cycle, labeled_graphs_with_loops, path, random_rational_sym, star

TRI = cycle(3)
C4 = cycle(4)


def test_expansion_examples():
    assert permutation_expansion_det(path(2).adjacency_matrix()) == -1
    assert permutation_expansion_det(TRI.adjacency_matrix()) == 2
    assert permutation_expansion_det(C4.adjacency_matrix()) == 0


def test_c4_term_split():
    # the two 4-cycles contribute -1 each, the two perfect matchings +1 each
    terms = [t for t in expansion_terms(C4.adjacency_matrix()) if t.value]
    assert sorted(t.value for t in terms) == [-1, -1, 1, 1]
    assert all(t.sign == t.sign_from_structure for t in expansion_terms(C4.adjacency_matrix()))


def test_expansion_with_signing():
    s = Signing(4, {(0, 1): -1, (1, 2): 1, (2, 3): 1, (0, 3): 1})
    assert permutation_expansion_det(C4.adjacency_matrix(), s) == 4


@pytest.mark.parametrize("seed", range(25))
def test_expansion_equals_det_exact(seed):
    rng = random.Random(seed)
    M = random_rational_sym(rng, rng.randint(1, 6))
    assert permutation_expansion_det(M) == det_exact(M)


def test_expansion_guard():
    with pytest.raises(GuardExceeded):
        permutation_expansion_det(SymMatrix.identity(9))


def test_nonzero_permutation():
    assert not nonzero_permutation_exists(path(3).adjacency_matrix())
    assert nonzero_permutation_exists(TRI.adjacency_matrix())
    assert nonzero_permutation_exists(SymMatrix.identity(3))


@pytest.mark.parametrize("n", range(1, 5))
def test_nonzero_permutation_is_two_matching(n):
    for G in labeled_graphs_with_loops(n):
        M = SymMatrix(n, {e: 1 for e in G.edges})
        assert nonzero_permutation_exists(M) == has_perfect_two_matching(G)


def test_counts():
    assert brute_count_invertible(C4) == 8
    assert brute_count_invertible(path(2)) == 2
    assert brute_count_invertible(path(3)) == 0
    assert brute_count_perfect_matchings(C4) == 2
    assert brute_count_perfect_matchings(complete(4)) == 3
    assert brute_count_perfect_matchings(path(3)) == 0


def test_min_edge_add():
    assert brute_min_edge_add(star(3)) == 1
    assert brute_min_edge_add(path(3)) == 1
    assert brute_min_edge_add(C4) == 0
    with pytest.raises(GuardExceeded):
        brute_min_edge_add(path(8))


def test_gadget_searches():
    assert brute_exists_psd_signing(partition_gadget([1, 1])) is not None
    assert brute_exists_singular_offdiag(partition_gadget([1, 1])) is not None
    assert brute_exists_psd_signing(partition_gadget([1, 2])) is None
    assert brute_exists_singular_offdiag(partition_gadget([1, 2])) is None
    assert brute_exists_psd_signing(SymMatrix.identity(3)) is not None
    assert brute_exists_singular_offdiag(SymMatrix.identity(3)) is None


def test_restricted_psd_search_is_lossless():
    rng = random.Random(7)
    for _ in range(30):
        M = random_rational_sym(rng, rng.randint(1, 4), density=0.6)
        a = brute_exists_psd_signing(M, restrict_diagonal=True) is not None
        b = brute_exists_psd_signing(M, restrict_diagonal=False) is not None
        assert a == b


def test_signing_guard():
    with pytest.raises(GuardExceeded):
        brute_exists_singular_offdiag(complete(8).adjacency_matrix(), guard=20)

import random
from fractions import Fraction
from math import factorial

import pytest

from signings.exactla import SymMatrix, det_exact
from signings.graphcore import Graph, GraphError, support_graph
from signings.oracle import (
    brute_count_invertible,
    brute_count_perfect_matchings,
    brute_find_invertible_signing,
    brute_min_edge_add,
    iter_signings,
)
from signings.signlab import (
    FULL,
    GuardExceeded,
    Signing,
    SigningError,
    all_signings_invertible_bipartite,
    apply_signing,
    column_sum,
    count_invertible_signings,
    exists_invertible_signing,
    extend_invertible,
    find_invertible_signing_bipartite,
    find_singular_signing_bipartite,
    invertible_bound,
    little_set,
    pm_count_parity,
    solvability_index,
)

from corpus import (
    atlas,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    is_connected,
    path,
    random_bipartite_with_pm,
    random_rational_sym,
    star,
)

C4 = cycle(4)
P3 = path(3)
K2 = path(2)


class TestApplySigning:
    def test_all_plus(self):
        A = K2.adjacency_matrix()
        assert apply_signing(A, Signing.all_plus(A)) == A

    def test_negate_edge(self):
        A = C4.adjacency_matrix()
        s = Signing.all_plus(A).with_edge((0, 1), -1)
        out = apply_signing(A, s)
        assert out[0, 1] == out[1, 0] == -1 and out[1, 2] == 1

    def test_full_diagonal(self):
        s = Signing(3, {}, {0: -1, 1: -1, 2: -1}, FULL)
        assert apply_signing(SymMatrix.identity(3), s) == -SymMatrix.identity(3)

    def test_mismatch(self):
        with pytest.raises(SigningError):
            apply_signing(C4.adjacency_matrix(), Signing(4, {(0, 1): 1}))
        with pytest.raises(SigningError):
            apply_signing(C4.adjacency_matrix(), Signing(3, {}))

    def test_offdiag_rejects_negative_diagonal(self):
        with pytest.raises(SigningError):
            Signing(2, {}, {0: -1})


class TestExistsInvertible:
    def test_p3(self):
        r = exists_invertible_signing(P3.adjacency_matrix())
        assert not r.exists and r.certificate == {0, 2}

    def test_triangle(self):
        A = cycle(3).adjacency_matrix()
        assert exists_invertible_signing(A).exists
        assert brute_find_invertible_signing(A) is not None

    def test_identity(self):
        assert exists_invertible_signing(SymMatrix.identity(4)).exists

    @pytest.mark.parametrize("seed", range(40))
    def test_random_rational_vs_brute(self, seed):
        rng = random.Random(seed)
        M = random_rational_sym(rng, rng.randint(1, 5), density=0.45)
        assert exists_invertible_signing(M).exists == (brute_find_invertible_signing(M) is not None)


class TestExtend:
    def test_two_edges_to_p4(self):
        M_H = SymMatrix(4, {(0, 1): 1, (2, 3): 1})
        s = extend_invertible(M_H, Signing(4, {(0, 1): 1, (2, 3): 1}), (0, 3), 1)
        full = SymMatrix(4, {(0, 1): 1, (2, 3): 1, (0, 3): 1})
        assert det_exact(apply_signing(full, s)) != 0
        # both signs are fine for a tree; +1 is tried first
        assert s.sign(0, 3) == 1

    def test_close_c4(self):
        P4 = SymMatrix(4, {(0, 1): 1, (1, 2): 1, (2, 3): 1})
        s = Signing(4, {(0, 1): 1, (1, 2): 1, (2, 3): 1})
        assert det_exact(apply_signing(P4, s)) == 1
        s2 = extend_invertible(P4, s, (0, 3), 1)
        assert s2.sign(0, 3) == -1
        assert det_exact(apply_signing(C4.adjacency_matrix(), s2)) == 4

    def test_precondition_singular(self):
        M_H = SymMatrix(3, {(0, 1): 1})
        with pytest.raises(SigningError):
            extend_invertible(M_H, Signing(3, {(0, 1): 1}), (1, 2), 1)

    def test_precondition_non_bipartite(self):
        M_H = SymMatrix(3, {(0, 1): 1, (1, 2): 1})
        with pytest.raises(SigningError):
            extend_invertible(M_H, Signing(3, {(0, 1): 1, (1, 2): 1}), (0, 2), 1)


class TestFindInvertibleBipartite:
    def test_c4(self):
        A = C4.adjacency_matrix()
        s = find_invertible_signing_bipartite(A)
        assert len(s.negatives()) % 2 == 1
        assert det_exact(apply_signing(A, s)) == 4

    def test_p3(self):
        assert find_invertible_signing_bipartite(P3.adjacency_matrix()) is None

    def test_k33(self):
        A = complete_bipartite(3, 3).adjacency_matrix()
        assert det_exact(apply_signing(A, find_invertible_signing_bipartite(A))) != 0

    def test_non_bipartite(self):
        with pytest.raises(SigningError):
            find_invertible_signing_bipartite(cycle(3).adjacency_matrix())

    @pytest.mark.parametrize("seed", range(15))
    def test_rational_weights(self, seed):
        rng = random.Random(seed)
        G = random_bipartite_with_pm(rng, rng.randint(1, 5), 0.5)
        M = SymMatrix(G.n, {e: Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 3)) for e in G.edges})
        steps = []
        s = find_invertible_signing_bipartite(M, on_step=lambda e, s, d: steps.append(d))
        assert all(d != 0 for d in steps) and len(steps) == len(M.entries) - G.n // 2 + 1
        assert det_exact(apply_signing(M, s)) != 0


class TestParity:
    def test_examples(self):
        assert pm_count_parity(C4) == 0
        assert pm_count_parity(path(4)) == 1
        assert pm_count_parity(complete(4)) == 1

    def test_loops_rejected(self):
        with pytest.raises(GraphError):
            pm_count_parity(Graph.from_edges(1, [(0, 0)]))

    @pytest.mark.parametrize("n", range(1, 8))
    def test_vs_count(self, n):
        for G in atlas(n):
            assert pm_count_parity(G) == brute_count_perfect_matchings(G) % 2

    def test_all_invertible_examples(self):
        assert all_signings_invertible_bipartite(path(4))
        assert not all_signings_invertible_bipartite(C4)
        assert all_signings_invertible_bipartite(K2)
        with pytest.raises(SigningError):
            all_signings_invertible_bipartite(cycle(3))

    def test_p4_every_signing(self):
        A = path(4).adjacency_matrix()
        assert all(abs(det_exact(apply_signing(A, s))) == 1 for s in iter_signings(A))


class TestFindSingular:
    def test_c4(self):
        s = find_singular_signing_bipartite(C4)
        A = C4.adjacency_matrix()
        assert little_set(C4) == [0, 2]
        assert {s.sign(1, 0), s.sign(1, 2)} == {1, -1}
        assert {s.sign(3, 0), s.sign(3, 2)} == {1, -1}
        assert det_exact(apply_signing(A, s)) == 0

    def test_k2(self):
        assert find_singular_signing_bipartite(K2) is None

    def test_k33(self):
        G = complete_bipartite(3, 3)
        assert brute_count_perfect_matchings(G) == 6
        s = find_singular_signing_bipartite(G)
        A = G.adjacency_matrix()
        assert det_exact(apply_signing(A, s)) == 0
        assert not any(column_sum(apply_signing(A, s), little_set(G)))

    def test_with_isolated_vertex(self):
        G = Graph.from_edges(3, [(0, 1)])
        s = find_singular_signing_bipartite(G)
        assert det_exact(apply_signing(G.adjacency_matrix(), s)) == 0

    @pytest.mark.parametrize("n", range(2, 8))
    def test_columns_cancel(self, n):
        for G in atlas(n):
            if G.bipartition() is None:
                continue
            s = find_singular_signing_bipartite(G)
            if s is None:
                continue
            A = G.adjacency_matrix()
            assert det_exact(apply_signing(A, s)) == 0
            assert not any(column_sum(apply_signing(A, s), little_set(G)))


class TestSolvability:
    def test_star(self):
        r = solvability_index(star(3).adjacency_matrix())
        assert r.index == 1 and len(r.added_pairs) == 1
        assert set(r.added_pairs[0]) <= {1, 2, 3}
        assert r.witness.is_perfect_in(star(3).plus(r.added_pairs))

    def test_p3(self):
        r = solvability_index(P3.adjacency_matrix())
        assert r.index == 1 and r.added_pairs == ((0, 2),)

    def test_c4(self):
        r = solvability_index(C4.adjacency_matrix())
        assert r.index == 0 and r.added_pairs == ()

    def test_rejects_isolated_and_loops(self):
        with pytest.raises(SigningError):
            solvability_index(SymMatrix(3, {(0, 1): 1}))
        with pytest.raises(SigningError):
            solvability_index(SymMatrix(2, {(0, 1): 1, (0, 0): 1}))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_vs_brute(self, n):
        for G in atlas(n):
            if any(G.degree(v) == 0 for v in range(n)):
                continue
            r = solvability_index(G.adjacency_matrix())
            assert r.index == brute_min_edge_add(G)


class TestCounting:
    def test_c4(self):
        rep = count_invertible_signings(C4)
        assert (rep.invertible_count, rep.total, rep.bound) == (8, 16, Fraction(1, 24))

    def test_k2(self):
        rep = count_invertible_signings(K2)
        assert (rep.invertible_count, rep.total, rep.bound) == (2, 2, Fraction(1, 4))

    def test_two_c4(self):
        rep = count_invertible_signings(disjoint_union(C4, C4))
        assert rep.invertible_count == 64 and rep.fraction == Fraction(1, 4)

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            count_invertible_signings(complete(8))
        assert count_invertible_signings(complete(7), guard=21).m == 21

    def test_bound_formula(self):
        assert invertible_bound(4, 4) == Fraction(1, factorial(4))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_switching_reduction_matches_brute(self, n):
        for G in atlas(n):
            if G.m > 12:
                continue
            assert count_invertible_signings(G).invertible_count == brute_count_invertible(G)

    def test_connected_counts_are_zero_or_large(self):
        for n in range(2, 7):
            for G in atlas(n):
                if not is_connected(G):
                    continue
                c = count_invertible_signings(G).invertible_count
                assert c == 0 or c >= 2 ** (n - 1)

"""Graph families shared by the test modules."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations

import networkx as nx

from signings.exactla import SymMatrix
from signings.graphcore import Graph

# number of unlabeled simple graphs on n vertices (OEIS A000088)
GRAPH_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}


def from_nx(g: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return Graph(len(idx), frozenset((min(idx[u], idx[v]), max(idx[u], idx[v])) for u, v in g.edges()))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def petersen() -> Graph:
    return from_nx(nx.petersen_graph())


def disjoint_union(*gs: Graph) -> Graph:
    edges, off = [], 0
    for g in gs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph.from_edges(off, edges)


@lru_cache(maxsize=None)
def atlas(n: int) -> tuple[Graph, ...]:
    """All unlabeled simple graphs on exactly n vertices, n <= 7."""
    if n > 7:
        return graphs_on_8() if n == 8 else ()
    return tuple(from_nx(g) for g in nx.graph_atlas_g() if g.number_of_nodes() == n)


def graphs_upto(n: int, start: int = 1) -> list[Graph]:
    out = []
    for k in range(start, n + 1):
        out.extend(atlas(k))
    return out


def _invariant(g: nx.Graph):
    deg = dict(g.degree())
    tri = nx.triangles(g)
    return tuple(sorted((deg[v], tri[v], tuple(sorted(deg[w] for w in g[v]))) for v in g))


@lru_cache(maxsize=None)
def graphs_on_8() -> tuple[Graph, ...]:
    """Every unlabeled graph on 8 vertices.

    Deleting a minimum-degree vertex of an 8-vertex graph leaves some 7-vertex
    graph, so adding an eighth vertex of degree <= the new minimum degree to
    every atlas graph reaches all isomorphism classes; duplicates are removed
    by invariant bucketing plus VF2.
    """
    buckets: dict = {}
    reps: list[nx.Graph] = []
    for base in nx.graph_atlas_g():
        if base.number_of_nodes() != 7:
            continue
        degs = dict(base.degree())
        for k in range(8):
            for nb in combinations(range(7), k):
                g = base.copy()
                g.add_node(7)
                g.add_edges_from((7, w) for w in nb)
                if k > min(d + (1 if v in nb else 0) for v, d in degs.items()):
                    continue
                key = _invariant(g)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(g, h) for h in bucket):
                    continue
                bucket.append(g)
                reps.append(g)
    return tuple(from_nx(g) for g in reps)


def labeled_graphs_with_loops(n: int):
    """Every labeled graph on n vertices, each vertex optionally looped."""
    pairs = list(combinations(range(n), 2))
    for emask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if emask >> i & 1]
        for lmask in range(1 << n):
            loops = [(v, v) for v in range(n) if lmask >> v & 1]
            yield Graph.from_edges(n, edges + loops)


def with_all_loop_patterns(G: Graph):
    for lmask in range(1 << G.n):
        yield G.plus((v, v) for v in range(G.n) if lmask >> v & 1)


def characterization_corpus() -> list[Graph]:
    """All labeled looped graphs on <= 4 vertices plus every unlabeled graph on 5 vertices with every loop pattern."""
    out = []
    for n in range(1, 5):
        out.extend(labeled_graphs_with_loops(n))
    for g in atlas(5):
        out.extend(with_all_loop_patterns(g))
    return out


def random_sign_matrix(rng: random.Random, n: int, density: float = 0.4) -> SymMatrix:
    entries = {}
    for i in range(n):
        for j in range(i, n):
            if rng.random() < density:
                entries[(i, j)] = rng.choice((1, -1))
    return SymMatrix(n, entries)


def random_rational_sym(rng: random.Random, n: int, lo: int = -5, hi: int = 5, density: float = 0.7) -> SymMatrix:
    from fractions import Fraction

    entries = {}
    for i in range(n):
        for j in range(i, n):
            if rng.random() < density:
                entries[(i, j)] = Fraction(rng.randint(lo, hi), rng.randint(1, 4))
    return SymMatrix(n, entries)


def random_bipartite_with_pm(rng: random.Random, half: int, p: float) -> Graph:
    """Random bipartite graph on 2*half vertices that contains a planted perfect matching."""
    perm = list(range(half))
    rng.shuffle(perm)
    edges = {(i, half + perm[i]) for i in range(half)}
    for i in range(half):
        for j in range(half):
            if rng.random() < p:
                edges.add((i, half + j))
    # shuffle labels so the planted matching is not the identity pattern
    lab = list(range(2 * half))
    rng.shuffle(lab)
    return Graph.from_edges(2 * half, [(lab[u], lab[v]) for u, v in edges])


def is_connected(G: Graph) -> bool:
    return G.n > 0 and len(G.components()) == 1

"""Graphs, matchings and the matching-theory machinery built on them.

Vertices are ``0..n-1``. Edges are stored as sorted pairs ``(u, v)`` with
``u <= v``; ``(v, v)`` is a self-loop. Ties are always broken toward the
lowest index so that every output is reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exactla import SymMatrix

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = frozenset()
    loops_allowed: bool = True

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = norm_edge(*e)
            if not (0 <= u and v < self.n):
                raise GraphError(f"edge {e} out of range for n={self.n}")
            if u == v and not self.loops_allowed:
                raise GraphError(f"self-loop at {u} but loops are not allowed")
            norm.add((u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in norm:
            if u != v:
                adj[u].append(v)
                adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], loops_allowed: bool = True) -> "Graph":
        edges = list(edges)
        seen = set()
        for e in edges:
            key = norm_edge(*e)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen), loops_allowed)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of v other than v itself, ascending."""
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def has_loop(self, v: int) -> bool:
        return (v, v) in self.edges

    @property
    def loops(self) -> list[int]:
        return sorted(u for u, v in self.edges if u == v)

    @property
    def simple_edges(self) -> list[Edge]:
        return sorted(e for e in self.edges if e[0] != e[1])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighborhood(self, S: Iterable[int]) -> set[int]:
        """Non-inclusive neighbourhood N_G(S)."""
        S = set(S)
        out = set()
        for v in S:
            out.update(self._adj[v])
        return out - S

    def without_loops(self) -> "Graph":
        return Graph(self.n, frozenset(self.simple_edges), self.loops_allowed)

    def plus(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges | {norm_edge(*e) for e in extra}, self.loops_allowed)

    def delete_vertices(self, gone: Iterable[int]) -> "Graph":
        """Same vertex set, all edges touching ``gone`` removed."""
        gone = set(gone)
        return Graph(self.n, frozenset(e for e in self.edges if e[0] not in gone and e[1] not in gone))

    def induced(self, S: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to 0..k-1, plus the label map back."""
        order = sorted(set(S))
        pos = {v: i for i, v in enumerate(order)}
        edges = frozenset(
            (pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos
        )
        return Graph(len(order), edges, self.loops_allowed), order

    def components(self, within: Iterable[int] | None = None) -> list[list[int]]:
        verts = set(range(self.n)) if within is None else set(within)
        seen: set[int] = set()
        comps = []
        for s in sorted(verts):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y in verts and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def bipartition(self) -> tuple[list[int], list[int]] | None:
        """Two-colouring (colour 0 gets the lowest vertex of each component), or None."""
        if self.loops:
            return None
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            q = deque([s])
            while q:
                x = q.popleft()
                for y in self._adj[x]:
                    if color[y] < 0:
                        color[y] = 1 - color[x]
                        q.append(y)
                    elif color[y] == color[x]:
                        return None
        return [v for v in range(self.n) if color[v] == 0], [v for v in range(self.n) if color[v] == 1]

    def adjacency_rows(self) -> list[list[int]]:
        rows = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            rows[u][v] = 1
            rows[v][u] = 1
        return rows

    def adjacency_matrix(self) -> SymMatrix:
        return SymMatrix(self.n, {e: 1 for e in self.edges}) if self.n else SymMatrix(1)


def support_graph(M: SymMatrix) -> Graph:
    return Graph(M.n, frozenset(M.entries))


# ---------------------------------------------------------------- matchings


@dataclass(frozen=True)
class Matching:
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(norm_edge(*e) for e in self.edges))
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError("a matching cannot contain a loop")
            if u in seen or v in seen:
                raise GraphError("matching edges are not vertex-disjoint")
            seen.update((u, v))

    def __len__(self) -> int:
        return len(self.edges)

    def mate(self) -> dict[int, int]:
        m = {}
        for u, v in self.edges:
            m[u] = v
            m[v] = u
        return m

    def covered(self) -> set[int]:
        return {x for e in self.edges for x in e}

    def exposed(self, n: int) -> list[int]:
        c = self.covered()
        return [v for v in range(n) if v not in c]

    def is_valid_in(self, G: Graph) -> bool:
        return all(e in G.edges for e in self.edges)


def _mate_to_matching(mate: Sequence[int]) -> Matching:
    return Matching(frozenset((u, v) for u, v in enumerate(mate) if v > u))


def max_matching_bipartite(H: Graph, parts: tuple[Sequence[int], Sequence[int]]) -> Matching:
    """Hopcroft-Karp maximum matching."""
    left, right = list(parts[0]), list(parts[1])
    side = {}
    for v in left:
        side[v] = 0
    for v in right:
        if v in side:
            raise GraphError(f"vertex {v} on both sides")
        side[v] = 1
    if len(side) != H.n:
        raise GraphError("bipartition does not cover all vertices")
    for u, v in H.edges:
        if u == v or side[u] == side[v]:
            raise GraphError(f"edge {(u, v)} does not cross the bipartition")

    INF = float("inf")
    mate = {v: None for v in side}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        q = deque()
        for u in left:
            if mate[u] is None:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for w in H.neighbors(u):
                x = mate[w]
                if x is None:
                    found = True
                elif dist[x] == INF:
                    dist[x] = dist[u] + 1
                    q.append(x)
        return found

    def dfs(u) -> bool:
        for w in H.neighbors(u):
            x = mate[w]
            if x is None or (dist[x] == dist[u] + 1 and dfs(x)):
                mate[u] = w
                mate[w] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if mate[u] is None:
                dfs(u)
    return Matching(frozenset(norm_edge(u, mate[u]) for u in left if mate[u] is not None))


def max_matching_general(G: Graph, initial: Matching | None = None) -> Matching:
    """Maximum-cardinality matching by Edmonds' blossom algorithm. Loops are ignored."""
    n = G.n
    adj = [G.neighbors(v) for v in range(n)]
    mate = [-1] * n
    if initial is not None:
        for u, v in initial.edges:
            mate[u], mate[v] = v, u
    else:
        # greedy start, lowest index first
        for u in range(n):
            if mate[u] == -1:
                for w in adj[u]:
                    if mate[w] == -1:
                        mate[u], mate[w] = w, u
                        break
    for root in range(n):
        if mate[root] == -1:
            _augment_from(n, adj, mate, root)
    return _mate_to_matching(mate)


def _augment_from(n: int, adj: Sequence[Sequence[int]], mate: list[int], root: int) -> bool:
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                in_blossom = [False] * n
                mark_path(v, cur, to, in_blossom)
                mark_path(to, cur, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to] = pv
                        mate[pv] = to
                        to = nxt
                    return True
                used[mate[to]] = True
                q.append(mate[to])
    return False


def matching_number(G: Graph) -> int:
    return len(max_matching_general(G))


# ---------------------------------------------------------------- 2-matchings


@dataclass(frozen=True)
class DoubleCover:
    """Bipartite double cover: vertex v of G becomes ``left(v) = v`` and ``right(v) = n + v``."""

    base_n: int
    H: Graph

    def left(self, v: int) -> int:
        return v

    def right(self, v: int) -> int:
        return self.base_n + v

    @property
    def parts(self) -> tuple[list[int], list[int]]:
        return list(range(self.base_n)), list(range(self.base_n, 2 * self.base_n))


def double_cover(G: Graph, include_loops: bool = True) -> DoubleCover:
    n = G.n
    edges = set()
    for u, v in G.edges:
        if u == v:
            if include_loops:
                edges.add((u, n + u))
        else:
            edges.add((u, n + v))
            edges.add((v, n + u))
    return DoubleCover(n, Graph(2 * n, frozenset(edges), loops_allowed=False))


@dataclass(frozen=True)
class TwoMatching:
    values: Mapping[Edge, int] = field(default_factory=dict)

    def __post_init__(self):
        vals = {}
        for e, x in self.values.items():
            if x not in (0, 1, 2):
                raise GraphError(f"2-matching value {x} on {e} not in {{0,1,2}}")
            if x:
                vals[norm_edge(*e)] = x
        object.__setattr__(self, "values", vals)

    def degree_sums(self, n: int) -> list[int]:
        deg = [0] * n
        for (u, v), x in self.values.items():
            if u == v:
                deg[u] += 2 * x
            else:
                deg[u] += x
                deg[v] += x
        return deg

    def is_perfect_in(self, G: Graph) -> bool:
        if any(e not in G.edges for e in self.values):
            return False
        if any(x != 1 for (u, v), x in self.values.items() if u == v):
            return False
        return all(d == 2 for d in self.degree_sums(G.n))

    def items(self) -> list[tuple[Edge, int]]:
        return sorted(self.values.items())


def _double_cover_matching(G: Graph) -> tuple[DoubleCover, Matching]:
    dc = double_cover(G)
    return dc, max_matching_bipartite(dc.H, dc.parts)


def has_perfect_two_matching(G: Graph) -> bool:
    dc, M = _double_cover_matching(G)
    return len(M) == G.n


def extract_two_matching(G: Graph) -> TwoMatching | None:
    dc, M = _double_cover_matching(G)
    if len(M) != G.n:
        return None
    n = G.n
    values: dict[Edge, int] = {}
    for a, b in M.edges:  # a < n <= b
        u, v = a, b - n
        key = norm_edge(u, v)
        values[key] = values.get(key, 0) + 1
    x = TwoMatching(values)
    assert x.is_perfect_in(G)
    return x


# ---------------------------------------------------------------- Gallai-Edmonds


def inessential_vertices(G: Graph) -> set[int]:
    nu = matching_number(G)
    return {v for v in range(G.n) if matching_number(G.delete_vertices([v])) == nu}


@dataclass(frozen=True)
class GallaiEdmonds:
    B1: frozenset[int]
    Bge3: frozenset[int]
    C: frozenset[int]
    D: frozenset[int]

    @property
    def B(self) -> frozenset[int]:
        return self.B1 | self.Bge3


def gallai_edmonds(G: Graph) -> GallaiEdmonds:
    """Decomposition by definition: B = inessential vertices, C = N(B), D = rest."""
    B = inessential_vertices(G)
    C = G.neighborhood(B)
    D = set(range(G.n)) - B - C
    B1 = {v for v in B if not any(w in B for w in G.neighbors(v))}
    return GallaiEdmonds(frozenset(B1), frozenset(B - B1), frozenset(C), frozenset(D))


def is_factor_critical(G: Graph, comp: Sequence[int]) -> bool:
    sub, _ = G.induced(comp)
    sub = sub.without_loops()
    if sub.n % 2 == 0:
        return False
    target = (sub.n - 1) // 2
    return all(matching_number(sub.delete_vertices([v])) == target for v in range(sub.n))


def nu_f(G: Graph) -> Fraction:
    """Fractional matching number, as half the matching number of the loopless double cover."""
    dc = double_cover(G, include_loops=False)
    return Fraction(len(max_matching_bipartite(dc.H, dc.parts)), 2)


def _b1_improving_path(G: Graph, mate: dict[int, int], ged: GallaiEdmonds, s: int) -> list[int] | None:
    """Even alternating path s, t1, u1, t2, u2, ... ending at a B>=3 vertex.

    Starting from an exposed B1 vertex every step leaves B1 via a non-matching
    edge into C and returns to B through C's mate, so a plain BFS suffices.
    """
    prev: dict[int, int] = {s: -1}
    q = deque([s])
    while q:
        b = q.popleft()
        for t in G.neighbors(b):
            if t in prev or t not in mate:
                continue
            u = mate[t]
            if u in prev:
                continue
            prev[t] = b
            prev[u] = t
            if u in ged.Bge3:
                path = [u]
                while prev[path[-1]] != -1:
                    path.append(prev[path[-1]])
                return path[::-1]
            if u in ged.B1:
                q.append(u)
    return None


def _exposed_count(M: Matching, verts: Iterable[int]) -> int:
    c = M.covered()
    return sum(1 for v in verts if v not in c)


def enumerate_maximum_matchings(G: Graph, guard: int = 12) -> list[Matching]:
    """All maximum matchings by branching; exponential, test/fallback use only."""
    if G.n > guard:
        raise GraphError(f"enumeration guard exceeded: n={G.n} > {guard}")
    nu = matching_number(G)
    edges = G.without_loops().sorted_edges()
    out: list[Matching] = []

    def rec(i: int, used: set[int], chosen: list[Edge]):
        if len(chosen) == nu:
            out.append(Matching(frozenset(chosen)))
            return
        if len(chosen) + (len(edges) - i) < nu:
            return
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                used.update((u, v))
                chosen.append(edges[j])
                rec(j + 1, used, chosen)
                chosen.pop()
                used.difference_update((u, v))

    rec(0, set(), [])
    return out


def max_matching_prefer_B1(
    G: Graph,
    ged: GallaiEdmonds | None = None,
    fallback_guard: int = 10,
    initial: Matching | None = None,
) -> Matching:
    """Maximum matching covering as many B1 vertices as any maximum matching can.

    Starts from any maximum matching (``initial`` if given) and repeatedly
    moves exposure from a B1 vertex onto a B>=3 vertex along an even
    alternating path. If the result ever violates the B>=3 exposure count
    2(nu_f - nu), small graphs fall back to exhaustive search.
    """
    G = G.without_loops()
    if ged is None:
        ged = gallai_edmonds(G)
    M = max_matching_general(G, initial)
    exposed_now = set(M.exposed(G.n))
    if not exposed_now <= ged.B:
        raise GraphError("decomposition inconsistent with graph: exposed vertex outside B")
    mate = M.mate()
    improved = True
    while improved:
        improved = False
        for s in sorted(ged.B1):
            if s in mate:
                continue
            path = _b1_improving_path(G, mate, ged, s)
            if path is None:
                continue
            # flip: (s,t1),(u1,t2),... enter; (t1,u1),(t2,u2),... leave
            for i in range(1, len(path), 2):
                t, u = path[i], path[i + 1]
                mate.pop(u, None)
            for i in range(0, len(path) - 1, 2):
                b, t = path[i], path[i + 1]
                mate[b] = t
                mate[t] = b
            improved = True
    M = Matching(frozenset(norm_edge(u, v) for u, v in mate.items() if u < v))
    expected = 2 * (nu_f(G) - len(M))
    if _exposed_count(M, ged.Bge3) != expected and G.n <= fallback_guard:
        best = min(
            enumerate_maximum_matchings(G, guard=fallback_guard),
            key=lambda m: (_exposed_count(m, ged.B1), sorted(m.edges)),
        )
        M = best
    return M


# ---------------------------------------------------------------- Eulerian / Tutte


def eulerian_circuit(G: Graph, component: Iterable[int]) -> list[Edge]:
    """Hierholzer circuit through every edge of G[component], starting at its lowest vertex."""
    comp = set(component)
    sub_edges = sorted(e for e in G.edges if e[0] in comp and e[1] in comp and e[0] != e[1])
    if not sub_edges:
        raise GraphError("component has no edges")
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in comp}
    for idx, (u, v) in enumerate(sub_edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    for v in comp:
        if len(adj[v]) % 2:
            raise GraphError(f"vertex {v} has odd degree {len(adj[v])}")
    if len(G.components(comp)) != 1:
        raise GraphError("component is not connected")
    for v in adj:
        adj[v].sort(reverse=True)
    used = [False] * len(sub_edges)
    start = min(comp)
    stack: list[tuple[int, int]] = [(start, -1)]
    trail: list[tuple[int, int]] = []
    while stack:
        v, via = stack[-1]
        while adj[v] and used[adj[v][-1][1]]:
            adj[v].pop()
        if adj[v]:
            w, idx = adj[v].pop()
            used[idx] = True
            stack.append((w, idx))
        else:
            stack.pop()
            if via >= 0:
                trail.append((v, via))
    trail.reverse()
    return [sub_edges[idx] for _, idx in trail]


def circuit_is_closed_trail(edges: Sequence[Edge]) -> bool:
    """Check the edge list can be walked as a closed trail in the given order."""
    if not edges or len(set(edges)) != len(edges):
        return False
    if len(edges) == 1:
        return False
    first, second = edges[0], edges[1]
    start = next((x for x in first if x not in second), None)
    if start is None:  # 2-cycle on a multi-edge cannot happen in simple graphs
        start = first[0]
    cur = start
    for u, v in edges:
        if cur == u:
            cur = v
        elif cur == v:
            cur = u
        else:
            return False
    return cur == start


def is_non_expanding_independent(G: Graph, S: Iterable[int]) -> bool:
    S = set(S)
    if not S:
        return False
    for u in S:
        if G.has_loop(u) or any(w in S for w in G.neighbors(u)):
            return False
    return len(G.neighborhood(S)) < len(S)


def witness_non_expanding_independent_set(G: Graph, fallback_guard: int = 16) -> set[int] | None:
    """Independent S with |N(S)| < |S|, or None when G has a perfect 2-matching.

    From the maximum matching of the double cover, the left vertices reachable
    by alternating paths from exposed left vertices form a Hall violator X with
    neighbourhood Y; S = X - Y is then independent with N(S) inside Y - X.
    """
    dc, M = _double_cover_matching(G)
    n = G.n
    if len(M) == n:
        return None
    mate = M.mate()
    X = {v for v in range(n) if v not in mate}
    Y: set[int] = set()
    q = deque(sorted(X))
    while q:
        a = q.popleft()
        for b in dc.H.neighbors(a):
            if b in Y:
                continue
            Y.add(b)
            a2 = mate.get(b)
            if a2 is not None and a2 not in X:
                X.add(a2)
                q.append(a2)
    Yg = {b - n for b in Y}
    S = X - Yg
    if is_non_expanding_independent(G, S):
        return S
    if n > fallback_guard:
        raise GraphError("could not certify a non-expanding independent set")
    for k in range(1, n + 1):
        for cand in combinations(range(n), k):
            if is_non_expanding_independent(G, cand):
                return set(cand)
    raise GraphError("no non-expanding independent set exists although no perfect 2-matching was found")

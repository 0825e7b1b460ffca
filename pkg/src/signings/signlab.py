"""Symmetric signings of matrices and the algorithms that construct them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, factorial
from typing import Callable, Iterable, Iterator, Mapping

from .exactla import Gf2Matrix, SymMatrix, as_rational, det_exact, det_gf2, det_int, nullspace_gf2
from .graphcore import (
    Edge,
    Graph,
    GraphError,
    TwoMatching,
    eulerian_circuit,
    extract_two_matching,
    gallai_edmonds,
    has_perfect_two_matching,
    max_matching_bipartite,
    max_matching_prefer_B1,
    norm_edge,
    nu_f,
    support_graph,
    witness_non_expanding_independent_set,
)

OFF_DIAGONAL = "off-diagonal"
FULL = "full"


class SigningError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured size guard."""


@dataclass(frozen=True)
class Signing:
    n: int
    edge_signs: Mapping[Edge, int] = field(default_factory=dict)
    diagonal_signs: Mapping[int, int] = field(default_factory=dict)
    mode: str = OFF_DIAGONAL

    def __post_init__(self):
        if self.mode not in (OFF_DIAGONAL, FULL):
            raise SigningError(f"unknown signing mode {self.mode!r}")
        es = {}
        for e, s in self.edge_signs.items():
            u, v = norm_edge(*e)
            if u == v:
                raise SigningError("diagonal signs belong in diagonal_signs")
            if s not in (1, -1):
                raise SigningError(f"sign {s} is not +-1")
            es[(u, v)] = s
        ds = {}
        for v, s in self.diagonal_signs.items():
            if s not in (1, -1):
                raise SigningError(f"sign {s} is not +-1")
            if self.mode == OFF_DIAGONAL and s != 1:
                raise SigningError("off-diagonal signings keep +1 on the diagonal")
            ds[v] = s
        object.__setattr__(self, "edge_signs", es)
        object.__setattr__(self, "diagonal_signs", ds)

    def __hash__(self):
        return hash((self.n, frozenset(self.edge_signs.items()), frozenset(self.diagonal_signs.items()), self.mode))

    def sign(self, u: int, v: int) -> int:
        if u == v:
            return self.diagonal_signs.get(u, 1)
        return self.edge_signs.get(norm_edge(u, v), 1)

    def with_edge(self, e: Edge, s: int) -> "Signing":
        es = dict(self.edge_signs)
        es[norm_edge(*e)] = s
        return Signing(self.n, es, self.diagonal_signs, self.mode)

    @classmethod
    def all_plus(cls, M: SymMatrix, mode: str = OFF_DIAGONAL) -> "Signing":
        es = {(i, j): 1 for (i, j) in M.entries if i != j}
        ds = {i: 1 for (i, j) in M.entries if i == j}
        return cls(M.n, es, ds, mode)

    def negatives(self) -> list[Edge]:
        return sorted(e for e, s in self.edge_signs.items() if s < 0)


def apply_signing(M: SymMatrix, s: Signing) -> SymMatrix:
    if s.n != M.n:
        raise SigningError(f"signing dimension {s.n} != matrix dimension {M.n}")
    out = {}
    for (i, j), v in M.entries.items():
        if i == j:
            out[(i, j)] = v * s.diagonal_signs.get(i, 1)
        else:
            if (i, j) not in s.edge_signs:
                raise SigningError(f"signing does not cover support entry {(i, j)}")
            out[(i, j)] = v * s.edge_signs[(i, j)]
    return SymMatrix(M.n, out)


def signed_det(M: SymMatrix, s: Signing) -> Fraction:
    return det_exact(apply_signing(M, s))


# ---------------------------------------------------------------- invertibility


@dataclass(frozen=True)
class InvertibilityResult:
    exists: bool
    certificate: frozenset[int] | None = None

    def __bool__(self) -> bool:
        return self.exists


def exists_invertible_signing(M: SymMatrix) -> InvertibilityResult:
    """Some signing of M is invertible iff the support graph has a perfect 2-matching."""
    G = support_graph(M)
    if has_perfect_two_matching(G):
        return InvertibilityResult(True)
    S = witness_non_expanding_independent_set(G)
    return InvertibilityResult(False, frozenset(S))


def _require_bipartite(G: Graph) -> tuple[list[int], list[int]]:
    parts = G.bipartition()
    if parts is None:
        raise SigningError("support graph is not bipartite")
    return parts


def extend_invertible(M_H: SymMatrix, s: Signing, e: Edge, value) -> Signing:
    """Sign the new entry e so the signed matrix of H + e stays invertible.

    Tries +1 first. When H + e is bipartite with e across the sides and the
    signed matrix of H is invertible, one of the two choices always works.
    """
    value = as_rational(value)
    l, r = norm_edge(*e)
    if value == 0:
        raise SigningError("new entry must be nonzero")
    if l == r or M_H[l, r] != 0:
        raise SigningError(f"{e} is not a new off-diagonal support pair")
    He = SymMatrix(M_H.n, {**M_H.entries, (l, r): value})
    parts = support_graph(He).bipartition()
    if parts is None:
        raise SigningError("support of H + e is not bipartite")
    if det_exact(apply_signing(M_H, s)) == 0:
        raise SigningError("current signed matrix is singular")
    for sign in (1, -1):
        cand = s.with_edge((l, r), sign)
        if det_exact(apply_signing(He, cand)) != 0:
            return cand
    raise AssertionError(f"both signs of {e} give a singular matrix")


def find_invertible_signing_bipartite(
    M: SymMatrix, on_step: Callable[[Edge, Signing, Fraction], None] | None = None
) -> Signing | None:
    """Invertible signing for a matrix with bipartite support, or None if none exists.

    Starts from the all-plus signing of a perfect matching and adds the other
    support entries one by one in lexicographic order. ``on_step`` sees every
    added pair with the current signing and its nonzero determinant.
    """
    G = support_graph(M)
    parts = _require_bipartite(G)
    PM = max_matching_bipartite(G, parts)
    if 2 * len(PM) != M.n:
        return None
    H_entries = {e: M.entries[e] for e in PM.edges}
    s = Signing(M.n, {e: 1 for e in PM.edges})
    M_H = SymMatrix(M.n, H_entries)
    if on_step is not None:
        on_step(None, s, det_exact(apply_signing(M_H, s)))
    for e in sorted(set(M.entries) - set(PM.edges)):
        s = extend_invertible(M_H, s, e, M.entries[e])
        M_H = SymMatrix(M.n, {**M_H.entries, e: M.entries[e]})
        d = det_exact(apply_signing(M_H, s))
        if d == 0:
            raise AssertionError(f"incremental step at {e} lost invertibility")
        if on_step is not None:
            on_step(e, s, d)
    return s


# ---------------------------------------------------------------- bipartite singular signings


def _adjacency_gf2(G: Graph) -> Gf2Matrix:
    return Gf2Matrix.from_rows(G.adjacency_rows())


def pm_count_parity(G: Graph) -> int:
    """Parity of the number of perfect matchings, as det(A) over GF(2)."""
    if G.loops:
        raise GraphError("graph must be loopless")
    if G.n == 0:
        return 1
    return det_gf2(_adjacency_gf2(G))


def all_signings_invertible_bipartite(G: Graph) -> bool:
    _require_bipartite(G)
    return pm_count_parity(G) == 1


def little_set(G: Graph) -> list[int] | None:
    """Nonempty S where every vertex has an even number of neighbours in S, if one exists."""
    basis = nullspace_gf2(_adjacency_gf2(G))
    if not basis:
        return None
    return [v for v, b in enumerate(basis[0]) if b]


def find_singular_signing_bipartite(G: Graph) -> Signing | None:
    """Singular signing of the adjacency matrix of a bipartite graph, or None if all are invertible."""
    _require_bipartite(G)
    if pm_count_parity(G) == 1:
        return None
    S = little_set(G)
    if S is None:
        raise AssertionError("even perfect-matching parity but trivial GF(2) nullspace")
    inS = set(S)
    signs = {e: 1 for e in G.edges}
    for comp in G.components(inS):
        if len(comp) == 1:
            continue
        for i, e in enumerate(eulerian_circuit(G, comp), start=1):
            signs[e] = 1 if i % 2 == 0 else -1
    for v in range(G.n):
        if v in inS:
            continue
        into = [w for w in G.neighbors(v) if w in inS]
        half = len(into) // 2
        for k, w in enumerate(into):
            signs[norm_edge(v, w)] = 1 if k < half else -1
    return Signing(G.n, signs)


def column_sum(M: SymMatrix, cols: Iterable[int]) -> list[Fraction]:
    rows = M.to_rows()
    cols = list(cols)
    return [sum((rows[i][c] for c in cols), Fraction(0)) for i in range(M.n)]


# ---------------------------------------------------------------- solvability index


@dataclass(frozen=True)
class SolvabilityResult:
    index: int
    added_pairs: tuple[Edge, ...]
    witness: TwoMatching
    nu_f: Fraction


def _pair_up(vs: list[int]) -> list[Edge]:
    return [norm_edge(vs[i], vs[i + 1]) for i in range(0, len(vs) - 1, 2)]


def edge_add(G: Graph) -> tuple[list[Edge], Fraction]:
    """Minimum set of non-edges whose addition gives G a perfect 2-matching."""
    if G.loops:
        raise SigningError("support has self-loops; only loopless supports are handled")
    isolated = [v for v in range(G.n) if G.degree(v) == 0]
    if isolated:
        raise SigningError(f"support has isolated vertices {isolated}; not handled")
    ged = gallai_edmonds(G)
    M = max_matching_prefer_B1(G, ged)
    covered = M.covered()
    S = sorted(v for v in ged.B1 if v not in covered)
    if len(S) % 2 == 0:
        F = _pair_up(S)
    else:
        s = S[0]
        t = G.neighbors(s)[0]
        u = M.mate()[t]
        F = [norm_edge(u, s)] + _pair_up(S[1:])
    return F, nu_f(G)


def solvability_index(M: SymMatrix) -> SolvabilityResult:
    G = support_graph(M)
    F, nf = edge_add(G)
    if any(G.has_edge(*e) or e[0] == e[1] for e in F):
        raise AssertionError(f"added pair set {F} contains an existing edge or a loop")
    witness = extract_two_matching(G.plus(F))
    if witness is None:
        raise AssertionError("G + F has no perfect 2-matching")
    expected = ceil(Fraction(G.n, 2) - nf)
    if len(F) != expected:
        raise AssertionError(f"|F| = {len(F)} but ceil(n/2 - nu_f) = {expected}")
    return SolvabilityResult(len(F), tuple(sorted(F)), witness, nf)


# ---------------------------------------------------------------- counting


@dataclass(frozen=True)
class CountReport:
    n: int
    m: int
    invertible_count: int
    total: int
    bound: Fraction

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.invertible_count, self.total)


def invertible_bound(n: int, m: int) -> Fraction:
    return Fraction(2**m, 2**n * factorial(n))


def spanning_forest(G: Graph) -> list[Edge]:
    seen: set[int] = set()
    forest = []
    for r in range(G.n):
        if r in seen:
            continue
        seen.add(r)
        stack = [r]
        while stack:
            x = stack.pop()
            for y in G.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    forest.append(norm_edge(x, y))
                    stack.append(y)
    return sorted(forest)


def _signed_adjacency_dets(G: Graph, free: list[Edge]) -> Iterator[int]:
    rows = G.adjacency_rows()
    for signs in product((1, -1), repeat=len(free)):
        for (u, v), s in zip(free, signs):
            rows[u][v] = rows[v][u] = s
        yield det_int(rows)


def count_invertible_signings(G: Graph, guard: int = 24) -> CountReport:
    """Exact number of edge signings of a simple graph with invertible signed adjacency matrix.

    Flipping every edge across a cut conjugates A(s) by a diagonal +-1 matrix,
    so each switching class has 2^(n - c) members (c = number of components)
    and exactly one member is +1 on a fixed spanning forest. Only the free
    edges are enumerated.
    """
    if G.loops:
        raise GraphError("graph must be loopless")
    m = G.m
    if m > guard:
        raise GuardExceeded(f"m = {m} exceeds the enumeration guard {guard}")
    forest = set(spanning_forest(G))
    free = [e for e in G.sorted_edges() if e not in forest]
    hits = sum(1 for d in _signed_adjacency_dets(G, free) if d != 0)
    count = hits << len(forest)
    return CountReport(G.n, m, count, 2**m, invertible_bound(G.n, m))

"""Brute-force reference computations.

Nothing here is clever: determinants by the permutation expansion, counts by
full enumeration. These exist to check the real algorithms against, so they
deliberately share no code path with them beyond matrix/graph containers and
the exact determinant/PSD primitives named in each docstring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import prod

from .exactla import SymMatrix, det_exact, is_psd_exact, max_eigenvalue_leq
from .graphcore import Edge, Graph, norm_edge
from .signlab import FULL, OFF_DIAGONAL, GuardExceeded, Signing, apply_signing


def _check(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise GuardExceeded(f"{what} = {value} exceeds guard {limit}")


def permutation_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class PermutationTerm:
    """One term of the permutation expansion, split into its cycle structure.

    ``cycles`` holds orbits of length >= 3, ``matchings`` the 2-orbits as
    edges and ``loops`` the fixed points.
    """

    perm: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    matchings: tuple[Edge, ...]
    loops: tuple[int, ...]
    sign: int
    value: Fraction

    @property
    def sign_from_structure(self) -> int:
        even_cycles = sum(1 for c in self.cycles if len(c) % 2 == 0)
        return -1 if (len(self.matchings) + even_cycles) % 2 else 1


def permutation_term(rows, perm) -> PermutationTerm:
    n = len(perm)
    seen = [False] * n
    cycles, matchings, loops = [], [], []
    for i in range(n):
        if seen[i]:
            continue
        orbit = []
        j = i
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = perm[j]
        if len(orbit) == 1:
            loops.append(i)
        elif len(orbit) == 2:
            matchings.append(norm_edge(*orbit))
        else:
            cycles.append(tuple(orbit))
    sign = permutation_sign(perm)
    value = sign * prod((rows[i][perm[i]] for i in range(n)), start=Fraction(1))
    return PermutationTerm(tuple(perm), tuple(cycles), tuple(matchings), tuple(loops), sign, value)


def expansion_terms(M: SymMatrix, s: Signing | None = None, guard: int = 8):
    _check(M.n, guard, "n")
    A = apply_signing(M, s) if s is not None else M
    rows = A.to_rows()
    for perm in permutations(range(M.n)):
        yield permutation_term(rows, perm)


def permutation_expansion_det(M: SymMatrix, s: Signing | None = None, guard: int = 8) -> Fraction:
    return sum((t.value for t in expansion_terms(M, s, guard)), Fraction(0))


def nonzero_permutation_exists(M: SymMatrix, guard: int = 8) -> bool:
    _check(M.n, guard, "n")
    n = M.n
    nz = [[M[i, j] != 0 for j in range(n)] for i in range(n)]
    return any(all(nz[i][p[i]] for i in range(n)) for p in permutations(range(n)))


# ---------------------------------------------------------------- signings


def iter_signings(M: SymMatrix, mode: str = OFF_DIAGONAL, diagonal: str = "all"):
    """Every signing of M's support in lexicographic order (+1 before -1).

    ``diagonal`` is only used in full mode: "all" enumerates both signs on
    each nonzero diagonal entry, "nonnegative" pins each to the sign that
    makes the entry positive.
    """
    off = sorted(e for e in M.entries if e[0] != e[1])
    diag = sorted(i for (i, j) in M.entries if i == j)
    if mode == OFF_DIAGONAL:
        choices = [()]
    elif diagonal == "all":
        choices = product((1, -1), repeat=len(diag))
    else:
        choices = [tuple(1 if M[i, i] > 0 else -1 for i in diag)]
    choices = list(choices)
    for dsigns in choices:
        for esigns in product((1, -1), repeat=len(off)):
            yield Signing(M.n, dict(zip(off, esigns)), dict(zip(diag, dsigns)), mode)


def _signing_space(M: SymMatrix, mode: str, diagonal: str = "all") -> int:
    off = sum(1 for e in M.entries if e[0] != e[1])
    diag = sum(1 for e in M.entries if e[0] == e[1])
    return off + (diag if mode == FULL and diagonal == "all" else 0)


def brute_find_invertible_signing(M: SymMatrix, guard: int = 20) -> Signing | None:
    """First full signing with nonzero determinant (det_exact), or None."""
    _check(_signing_space(M, FULL), guard, "log2 signing space")
    for s in iter_signings(M, FULL):
        if det_exact(apply_signing(M, s)) != 0:
            return s
    return None


def brute_count_invertible(G: Graph, guard: int = 20) -> int:
    """Edge signings of a simple graph whose signed adjacency matrix is invertible.

    Uses the permutation expansion up to n = 6 and det_exact above that.
    """
    _check(G.m, guard, "m")
    if G.loops:
        raise ValueError("graph must be loopless")
    n = G.n
    edges = G.sorted_edges()
    count = 0
    for signs in product((1, -1), repeat=len(edges)):
        rows = [[0] * n for _ in range(n)]
        for (u, v), s in zip(edges, signs):
            rows[u][v] = rows[v][u] = s
        d = _det_by_expansion_int(rows) if n <= 6 else det_exact(SymMatrix.from_rows(rows))
        if d != 0:
            count += 1
    return count


def _det_by_expansion_int(rows) -> int:
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        t = 1
        for i in range(n):
            t *= rows[i][p[i]]
            if not t:
                break
        if t:
            total += permutation_sign(p) * t
    return total


def brute_count_perfect_matchings(G: Graph, guard: int = 16) -> int:
    _check(G.n, guard, "n")
    adj = [set(G.neighbors(v)) for v in range(G.n)]

    def rec(free: frozenset[int]) -> int:
        if not free:
            return 1
        v = min(free)
        rest = free - {v}
        return sum(rec(rest - {w}) for w in adj[v] if w in rest)

    return rec(frozenset(range(G.n)))


def enumerate_two_matchings(G: Graph, guard: int = 8):
    """Every x: E -> {0,1,2} (loops restricted to {0,1}) with loop-doubled degree 2 everywhere.

    Plain backtracking over the sorted edge list, pruning any partial
    assignment that already overloads a vertex.
    """
    _check(G.n, guard, "n")
    edges = G.sorted_edges()
    deg = [0] * G.n
    vals = [0] * len(edges)
    # last edge index touching each vertex; its degree must be exactly 2 after that
    last = [-1] * G.n
    for k, (u, v) in enumerate(edges):
        last[u] = last[v] = k
    if any(x < 0 for x in last):
        return

    def rec(k: int):
        if k == len(edges):
            yield {e: x for e, x in zip(edges, vals) if x}
            return
        u, v = edges[k]
        options = (0, 1) if u == v else (0, 1, 2)
        for x in options:
            du = 2 * x if u == v else x
            if u == v:
                if deg[u] + du > 2:
                    break
                deg[u] += du
            else:
                if deg[u] + x > 2 or deg[v] + x > 2:
                    break
                deg[u] += x
                deg[v] += x
            if all(deg[w] == 2 for w in (u, v) if last[w] == k):
                vals[k] = x
                yield from rec(k + 1)
                vals[k] = 0
            if u == v:
                deg[u] -= du
            else:
                deg[u] -= x
                deg[v] -= x

    yield from rec(0)


def brute_has_perfect_two_matching(G: Graph, guard: int = 8) -> bool:
    return next(enumerate_two_matchings(G, guard), None) is not None


def brute_min_edge_add(G: Graph, guard: int = 7) -> int:
    _check(G.n, guard, "n")
    non_edges = [(u, v) for u, v in combinations(range(G.n), 2) if not G.has_edge(u, v)]
    for k in range(len(non_edges) + 1):
        for F in combinations(non_edges, k):
            if brute_has_perfect_two_matching(G.plus(F), guard):
                return k
    raise AssertionError("even the complete graph has no perfect 2-matching")


def brute_exists_psd_signing(M: SymMatrix, guard: int = 20, restrict_diagonal: bool = True) -> Signing | None:
    """First full signing with M(s) PSD (is_psd_exact), or None.

    With ``restrict_diagonal`` each diagonal sign is fixed so the entry is
    positive; a PSD matrix never has a negative diagonal entry, so this loses
    nothing.
    """
    diagonal = "nonnegative" if restrict_diagonal else "all"
    _check(_signing_space(M, FULL, diagonal), guard, "log2 signing space")
    for s in iter_signings(M, FULL, diagonal):
        if is_psd_exact(apply_signing(M, s)):
            return s
    return None


def brute_exists_singular_offdiag(M: SymMatrix, guard: int = 20) -> Signing | None:
    _check(_signing_space(M, OFF_DIAGONAL), guard, "log2 signing space")
    for s in iter_signings(M, OFF_DIAGONAL):
        if det_exact(apply_signing(M, s)) == 0:
            return s
    return None


def brute_exists_bounded_ev_offdiag(M: SymMatrix, lam=0, guard: int = 20) -> Signing | None:
    _check(_signing_space(M, OFF_DIAGONAL), guard, "log2 signing space")
    for s in iter_signings(M, OFF_DIAGONAL):
        if max_eigenvalue_leq(apply_signing(M, s), lam):
            return s
    return None


def lp_fractional_matching(G: Graph) -> Fraction:
    """Fractional matching number by scipy's LP solver, rounded to the nearest half."""
    from scipy.optimize import linprog

    edges = G.without_loops().sorted_edges()
    if not edges:
        return Fraction(0)
    A = [[1 if v in e else 0 for e in edges] for v in range(G.n)]
    res = linprog(c=[-1] * len(edges), A_ub=A, b_ub=[1] * G.n, bounds=(0, None), method="highs")
    if res.status != 0:
        raise RuntimeError(res.message)
    value = -res.fun
    half = Fraction(round(2 * value), 2)
    if abs(float(half) - value) > 1e-7:
        raise AssertionError(f"LP optimum {value} is not half-integral")
    return half

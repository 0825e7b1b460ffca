"""Command-line front end.

Exit codes: 0 property holds / construction succeeded, 1 property fails /
nothing exists, 2 usage or format error, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import gadgetry, oracle
from .exactla import SymMatrix, det_dense, det_exact
from .formats import (
    FormatError,
    emit_coord_matrix,
    format_rational,
    graph_as_matrix,
    parse_coord_matrix,
    parse_edge_list,
    read_source,
    signing_to_json,
    two_matching_to_json,
)
from .graphcore import Graph, GraphError, support_graph
from .signlab import (
    GuardExceeded,
    Signing,
    SigningError,
    all_signings_invertible_bipartite,
    apply_signing,
    column_sum,
    count_invertible_signings,
    exists_invertible_signing,
    find_invertible_signing_bipartite,
    find_singular_signing_bipartite,
    little_set,
    pm_count_parity,
    solvability_index,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class CertificateError(RuntimeError):
    """An emitted certificate failed independent re-validation."""


# ---------------------------------------------------------------- independent checks


def _check_signing_det(M: SymMatrix, s: Signing, claim: Fraction) -> None:
    # recompute from the raw matrix rather than through apply_signing
    rows = M.to_rows()
    for i in range(M.n):
        for j in range(M.n):
            if rows[i][j]:
                rows[i][j] *= s.sign(i, j)
    if det_dense(rows) != claim:
        raise CertificateError("determinant does not match the signed matrix")


def _check_two_matching(G: Graph, pairs: list[list[int]]) -> None:
    deg = [0] * G.n
    for u, v, x in pairs:
        if not G.has_edge(u, v) or x not in (1, 2) or (u == v and x != 1):
            raise CertificateError(f"bad 2-matching entry {(u, v, x)}")
        if u == v:
            deg[u] += 2 * x
        else:
            deg[u] += x
            deg[v] += x
    if any(d != 2 for d in deg):
        raise CertificateError("2-matching degree sums are not all 2")


def _check_non_expanding(G: Graph, S: Sequence[int]) -> None:
    S = set(S)
    nbrs = set()
    for u, v in G.edges:
        if u in S and v in S:
            raise CertificateError("certificate set is not independent")
        if u in S:
            nbrs.add(v)
        if v in S:
            nbrs.add(u)
    if not S or len(nbrs) >= len(S):
        raise CertificateError("certificate set expands")


# ---------------------------------------------------------------- output


def _emit(args, payload: dict, human: Callable[[], str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human())


def _load_matrix(path: str) -> SymMatrix:
    return parse_coord_matrix(read_source(path))


def _load_graph(path: str) -> Graph:
    return parse_edge_list(read_source(path))


# ---------------------------------------------------------------- subcommands


def cmd_check_invertible(args) -> int:
    M = _load_matrix(args.matrix)
    res = exists_invertible_signing(M)
    payload = {"kind": "check-invertible", "result": res.exists}
    if not res.exists:
        S = sorted(res.certificate)
        G = support_graph(M)
        _check_non_expanding(G, S)
        payload["independent_set"] = S
        payload["neighborhood"] = sorted(G.neighborhood(S))
    _emit(
        args,
        payload,
        lambda: "invertible signing exists"
        if res.exists
        else f"every signing is singular; non-expanding independent set {payload['independent_set']} "
        f"with neighbourhood {payload['neighborhood']}",
    )
    return EXIT_OK if res.exists else EXIT_NO


def cmd_find_signing(args) -> int:
    M = _load_matrix(args.matrix)
    s = find_invertible_signing_bipartite(M)
    if s is None:
        _emit(args, {"kind": "find-signing", "result": False}, lambda: "no perfect matching: every signing is singular")
        return EXIT_NO
    d = det_exact(apply_signing(M, s))
    _check_signing_det(M, s, d)
    if d == 0:
        raise CertificateError("returned signing is singular")
    payload = {"kind": "find-signing", "result": True, "signing": signing_to_json(s), "determinant": format_rational(d)}
    _emit(args, payload, lambda: f"determinant {format_rational(d)}\nnegated edges {s.negatives()}")
    return EXIT_OK


def cmd_find_singular(args) -> int:
    G = _load_graph(args.graph)
    s = find_singular_signing_bipartite(G)
    if s is None:
        _emit(args, {"kind": "find-singular", "result": False}, lambda: "all signings invertible (odd number of perfect matchings)")
        return EXIT_NO
    A = graph_as_matrix(G)
    _check_signing_det(A, s, Fraction(0))
    S = little_set(G)
    if any(column_sum(apply_signing(A, s), S)):
        raise CertificateError("S-columns do not sum to zero")
    payload = {
        "kind": "find-singular",
        "result": True,
        "signing": signing_to_json(s),
        "determinant": "0",
        "little_set": S,
    }
    _emit(args, payload, lambda: f"determinant 0\nLittle set {S}\nnegated edges {s.negatives()}")
    return EXIT_OK


def cmd_pm_parity(args) -> int:
    G = _load_graph(args.graph)
    p = pm_count_parity(G)
    payload = {"kind": "pm-parity", "parity": p}
    if G.bipartition() is not None:
        payload["all_signings_invertible"] = all_signings_invertible_bipartite(G)
    _emit(args, payload, lambda: f"perfect matching count is {'odd' if p else 'even'}")
    return EXIT_OK


def cmd_solvability_index(args) -> int:
    M = _load_matrix(args.matrix)
    res = solvability_index(M)
    G = support_graph(M)
    for u, v in res.added_pairs:
        if u == v or G.has_edge(u, v):
            raise CertificateError(f"added pair {(u, v)} is not a non-edge")
    witness = two_matching_to_json(res.witness)
    _check_two_matching(G.plus(res.added_pairs), witness)
    payload = {
        "kind": "solvability-index",
        "index": res.index,
        "added_pairs": [list(e) for e in res.added_pairs],
        "two_matching": witness,
        "nu_f": format_rational(res.nu_f),
    }
    _emit(args, payload, lambda: f"solvability index {res.index}\nadded pairs {list(res.added_pairs)}")
    return EXIT_OK


def cmd_count_invertible(args) -> int:
    G = _load_graph(args.graph)
    rep = count_invertible_signings(G, guard=args.guard)
    payload = {
        "kind": "count-invertible",
        "n": rep.n,
        "m": rep.m,
        "invertible_count": rep.invertible_count,
        "total": rep.total,
        "bound": format_rational(rep.bound),
        "bound_holds": rep.invertible_count >= rep.bound,
    }
    _emit(
        args,
        payload,
        lambda: f"{rep.invertible_count} of {rep.total} signings invertible; bound 2^(m-n)/n! = {format_rational(rep.bound)}",
    )
    return EXIT_OK if rep.invertible_count > 0 else EXIT_NO


def _parse_partition(text: str) -> list[int]:
    try:
        b = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise FormatError(f"bad partition vector {text!r}") from None
    if not b or any(x < 0 for x in b):
        raise FormatError("partition vector must be a non-empty list of non-negative integers")
    return b


def gadget_instance(b: Sequence[int], variant: str) -> SymMatrix:
    M = gadgetry.partition_gadget(b)
    if variant in ("singular", "psd"):
        return M
    if variant == "nsd":
        return gadgetry.nsd_transform(M)
    if variant == "bounded-ev":
        return gadgetry.bounded_ev_transform(gadgetry.nsd_transform(M))[0]
    raise FormatError(f"unknown variant {variant!r}")


def cmd_gadget(args) -> int:
    b = _parse_partition(args.partition)
    sys.stdout.write(emit_coord_matrix(gadget_instance(b, args.variant)))
    return EXIT_OK


def cmd_verify_gadget(args) -> int:
    b = _parse_partition(args.partition)
    sing = gadgetry.verify_singular_reduction(b, guard=args.guard)
    psd = gadgetry.verify_psd_reduction(b, guard=args.guard)
    payload = {
        "kind": "verify-gadget",
        "b": list(b),
        "partition": sing.partition,
        "z": list(sing.z) if sing.z else None,
        "singular_signing_exists": sing.signing_exists,
        "psd_signing_exists": psd.signing_exists,
        "equivalences_hold": sing.holds and psd.holds,
    }
    if sing.signing is not None:
        payload["singular_signing"] = signing_to_json(sing.signing)
    if psd.signing is not None:
        payload["psd_signing"] = signing_to_json(psd.signing)
    _emit(
        args,
        payload,
        lambda: f"partition {sing.partition}; singular signing {sing.signing_exists}; "
        f"psd signing {psd.signing_exists}; equivalences hold",
    )
    return EXIT_OK if sing.partition else EXIT_NO


ORACLE_OPS = {
    "det": "matrix",
    "nonzero-permutation": "matrix",
    "invertible-signing": "matrix",
    "psd-signing": "matrix",
    "singular-signing": "matrix",
    "count-invertible": "graph",
    "count-pm": "graph",
    "min-edge-add": "graph",
    "two-matching": "graph",
}


def cmd_oracle(args) -> int:
    op = args.op
    if ORACLE_OPS[op] == "matrix":
        M = _load_matrix(args.input)
    else:
        G = _load_graph(args.input)
    payload: dict = {"kind": "oracle", "op": op}
    code = EXIT_OK
    if op == "det":
        payload["determinant"] = format_rational(oracle.permutation_expansion_det(M))
    elif op == "nonzero-permutation":
        payload["result"] = oracle.nonzero_permutation_exists(M)
    elif op in ("invertible-signing", "psd-signing", "singular-signing"):
        fn = {
            "invertible-signing": oracle.brute_find_invertible_signing,
            "psd-signing": oracle.brute_exists_psd_signing,
            "singular-signing": oracle.brute_exists_singular_offdiag,
        }[op]
        s = fn(M, guard=args.guard)
        payload["result"] = s is not None
        if s is not None:
            payload["signing"] = signing_to_json(s)
    elif op == "count-invertible":
        payload["count"] = oracle.brute_count_invertible(G, guard=args.guard)
    elif op == "count-pm":
        payload["count"] = oracle.brute_count_perfect_matchings(G)
    elif op == "min-edge-add":
        payload["min_edges"] = oracle.brute_min_edge_add(G)
    elif op == "two-matching":
        x = next(oracle.enumerate_two_matchings(G), None)
        payload["result"] = x is not None
        if x is not None:
            payload["two_matching"] = [[u, v, val] for (u, v), val in sorted(x.items())]
    if payload.get("result") is False:
        code = EXIT_NO
    _emit(args, payload, lambda: " ".join(f"{k}={v}" for k, v in sorted(payload.items()) if k not in ("kind", "op")))
    return code


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON certificate")

    p = argparse.ArgumentParser(prog="signings", description="Exact tools for symmetric matrix signings.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("check-invertible", cmd_check_invertible, "does some signing make the matrix invertible?").add_argument("matrix")
    add("find-signing", cmd_find_signing, "invertible signing for a bipartite support").add_argument("matrix")
    add("find-singular", cmd_find_singular, "singular signing of a bipartite graph").add_argument("graph")
    add("pm-parity", cmd_pm_parity, "parity of the number of perfect matchings").add_argument("graph")
    add("solvability-index", cmd_solvability_index, "minimum support increase").add_argument("matrix")
    sp = add("count-invertible", cmd_count_invertible, "count invertible edge signings")
    sp.add_argument("graph")
    sp.add_argument("--guard", type=int, default=24, help="maximum edge count to enumerate")
    sp = add("gadget", cmd_gadget, "emit a Partition reduction instance")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--variant", choices=["singular", "psd", "nsd", "bounded-ev"], default="singular")
    sp = add("verify-gadget", cmd_verify_gadget, "check the reductions exhaustively")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--guard", type=int, default=20)
    sp = add("oracle", cmd_oracle, "brute-force reference computations")
    sp.add_argument("op", choices=sorted(ORACLE_OPS))
    sp.add_argument("input")
    sp.add_argument("--guard", type=int, default=20)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (FormatError, GraphError, SigningError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

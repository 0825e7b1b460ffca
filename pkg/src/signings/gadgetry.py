"""Partition-based hard instances for the singular / PSD / NSD / bounded-eigenvalue signing problems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactla import SymMatrix, det_exact, is_psd_exact, schur_complement
from .oracle import (
    brute_exists_bounded_ev_offdiag,
    brute_exists_psd_signing,
    brute_exists_singular_offdiag,
)
from .signlab import GuardExceeded, Signing, apply_signing


class ReductionMismatch(AssertionError):
    """The brute-force answer on a gadget disagrees with the Partition answer."""


def _validate(b: Sequence[int]) -> tuple[int, ...]:
    b = tuple(int(x) for x in b)
    if not b:
        raise ValueError("partition instance must have at least one entry")
    if any(x < 0 for x in b):
        raise ValueError("partition entries must be non-negative")
    return b


def partition_gadget(b: Sequence[int]) -> SymMatrix:
    """The (n+2)x(n+2) matrix [[I, b, 1], [b^T, <b,b>, 0], [1^T, 0, n]]."""
    b = _validate(b)
    n = len(b)
    entries = {(i, i): 1 for i in range(n)}
    for i, bi in enumerate(b):
        entries[(i, n)] = bi
        entries[(i, n + 1)] = 1
    entries[(n, n)] = sum(x * x for x in b)
    entries[(n + 1, n + 1)] = n
    return SymMatrix(n + 2, entries)


def partition_witness(b: Sequence[int], guard: int = 30) -> tuple[int, ...] | None:
    """First z in {+1,-1}^n (lexicographic, +1 first) with <b, z> = 0."""
    b = _validate(b)
    if len(b) > guard:
        raise GuardExceeded(f"n = {len(b)} exceeds guard {guard}")
    total = sum(b)
    if total % 2:
        return None
    # subset sums to total/2, meet in the middle over the two halves
    half = len(b) // 2
    lo, hi = b[:half], b[half:]
    right: dict[int, tuple[int, ...]] = {}
    for z in product((1, -1), repeat=len(hi)):
        right.setdefault(sum(x * s for x, s in zip(hi, z)), z)
    for z in product((1, -1), repeat=len(lo)):
        need = -sum(x * s for x, s in zip(lo, z))
        if need in right:
            return z + right[need]
    return None


def has_partition(b: Sequence[int], guard: int = 30) -> bool:
    return partition_witness(b, guard) is not None


def gadget_signing(b: Sequence[int], bhat_signs: Sequence[int], z: Sequence[int]) -> Signing:
    """Off-diagonal signing that puts sign(bhat) on the b column and z on the ones column."""
    b = _validate(b)
    n = len(b)
    edges = {}
    for i in range(n):
        if b[i]:
            edges[(i, n)] = bhat_signs[i]
        edges[(i, n + 1)] = z[i]
    return Signing(n + 2, edges)


@dataclass(frozen=True)
class ReductionReport:
    b: tuple[int, ...]
    variant: str
    partition: bool
    signing_exists: bool
    z: tuple[int, ...] | None
    signing: Signing | None

    @property
    def holds(self) -> bool:
        return self.partition == self.signing_exists


def verify_singular_reduction(b: Sequence[int], guard: int = 20) -> ReductionReport:
    b = _validate(b)
    z = partition_witness(b)
    s = brute_exists_singular_offdiag(partition_gadget(b), guard)
    rep = ReductionReport(b, "singular", z is not None, s is not None, z, s)
    if not rep.holds:
        raise ReductionMismatch(f"singular reduction fails for b={b}")
    return rep


def verify_psd_reduction(b: Sequence[int], guard: int = 20, restrict_diagonal: bool = True) -> ReductionReport:
    b = _validate(b)
    z = partition_witness(b)
    s = brute_exists_psd_signing(partition_gadget(b), guard, restrict_diagonal)
    rep = ReductionReport(b, "psd", z is not None, s is not None, z, s)
    if not rep.holds:
        raise ReductionMismatch(f"psd reduction fails for b={b}")
    return rep


def nsd_transform(M: SymMatrix) -> SymMatrix:
    return -M


def bounded_ev_transform(M: SymMatrix) -> tuple[SymMatrix, Fraction]:
    """Replace each diagonal entry by minus its magnitude; the eigenvalue bound is 0."""
    out = {}
    for (i, j), v in M.entries.items():
        out[(i, j)] = -abs(v) if i == j else v
    return SymMatrix(M.n, out), Fraction(0)


def verify_bounded_ev_reduction(M: SymMatrix, guard: int = 20) -> tuple[bool, bool]:
    """(some full signing makes M NSD, some off-diagonal signing puts lambda_max(M') <= 0)."""
    nsd = brute_exists_psd_signing(-M, guard) is not None
    Mp, lam = bounded_ev_transform(M)
    bounded = brute_exists_bounded_ev_offdiag(Mp, lam, guard) is not None
    return nsd, bounded


def schur_shortcut(b: Sequence[int], bhat_signs: Sequence[int], z: Sequence[int]) -> dict:
    """Compare the signed gadget with its 2x2 Schur complement for one off-diagonal signing.

    Returns the complement, <bhat, z>, det of the signed gadget and both PSD
    verdicts, all computed exactly.
    """
    b = _validate(b)
    n = len(b)
    Ms = apply_signing(partition_gadget(b), gadget_signing(b, bhat_signs, z))
    inner = sum(bi * si * zi for bi, si, zi in zip(b, bhat_signs, z))
    comp = schur_complement(Ms, n)
    return {
        "complement": comp,
        "inner": inner,
        "det": det_exact(Ms),
        "psd": is_psd_exact(Ms),
        "complement_psd": is_psd_exact(comp),
    }

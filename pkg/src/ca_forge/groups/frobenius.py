"""Frobenius kernel/complement detection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BoundExceeded, CatalogInconsistency
from .core import GroupHandle, close, element_orders, is_abelian, join
from .lattice import ORACLE_BOUND
from .structure import ConjugacyClass, class_data


@dataclass(frozen=True)
class FrobeniusDecomposition:
    kernel: GroupHandle
    complement: GroupHandle


def _is_kernel(G: GroupHandle, N: GroupHandle, classes: list[ConjugacyClass]) -> bool:
    # N is normal, so each class lies inside N or misses it entirely
    e = G.identity
    for c in classes:
        if c.rep != e and c.rep in N and not c.centralizer.issubset(N):
            return False
    return True


def _sort_key(N: GroupHandle):
    return (N.order, tuple(N.elements[:64].tolist()))


def frobenius_kernel(G: GroupHandle, oracle_bound: int = ORACLE_BOUND) -> GroupHandle | None:
    """The Frobenius kernel of G, or None if G is not a Frobenius group.

    Candidates are the normal closures of single conjugacy classes; for
    groups under the oracle bound the joins of those closures are searched
    as well, which reaches every normal subgroup.
    """
    if G.order < 6 or is_abelian(G):
        return None
    classes = class_data(G)
    e = G.identity
    cands: dict[bytes, GroupHandle] = {}
    for c in classes:
        if c.rep == e:
            continue
        N = close(c.elements, G.ops)
        if 1 < N.order < G.order:
            cands.setdefault(N.key, N)
    for N in sorted(cands.values(), key=_sort_key):
        if _is_kernel(G, N, classes):
            return N
    if G.order > oracle_bound:
        return None
    base = list(cands.values())
    seen = dict(cands)
    frontier = base
    while frontier:
        fresh = []
        for A in frontier:
            for B in base:
                if B.issubset(A):
                    continue
                J = join(G, A, B)
                if J.order < G.order and J.key not in seen:
                    seen[J.key] = J
                    fresh.append(J)
        for N in sorted(fresh, key=_sort_key):
            if _is_kernel(G, N, classes):
                return N
        frontier = fresh
    return None


def frobenius_complement(G: GroupHandle, N: GroupHandle) -> GroupHandle:
    """A complement to the Frobenius kernel N.

    Tries a cyclic complement first (an element of order |G:N| outside N).
    Otherwise grows greedily: elements g in code order are adjoined whenever
    <H, g> still meets N trivially.  In a Frobenius group any such g lies in
    the same complement as H, so the greedy walk cannot dead-end.
    """
    k = G.order // N.order
    orders = element_orders(G)
    outside = ~N.contains(G.elements)
    hits = np.flatnonzero(outside & (orders == k))
    if hits.size:
        return close([int(G.elements[hits[0]])], G.ops, label="complement")
    cands = G.elements[outside]
    H = close([int(cands[0])], G.ops)
    for g in cands[1:]:
        if H.order == k:
            break
        if g in H:
            continue
        try:
            K = close(list(H.gens) + [int(g)], G.ops, bound=k)
        except BoundExceeded:
            continue
        if np.count_nonzero(N.contains(K.elements)) == 1:
            H = K
    if H.order != k:
        raise CatalogInconsistency(f"no Frobenius complement of order {k} found in {G!r}")
    H.label = "complement"
    return H


def frobenius_structure(G: GroupHandle, oracle_bound: int = ORACLE_BOUND) -> FrobeniusDecomposition | None:
    N = frobenius_kernel(G, oracle_bound)
    if N is None:
        return None
    N.label = "kernel"
    H = frobenius_complement(G, N)
    if np.count_nonzero(N.contains(H.elements)) != 1 or (N.order - 1) % H.order:
        raise CatalogInconsistency(f"Frobenius invariants fail for {G!r}")
    return FrobeniusDecomposition(N, H)

"""Enumerated finite groups over integer element codes.

A group is a sorted array of element codes plus an *ops* adapter that
multiplies and inverts codes in bulk.  Adapters only need three members:

    identity: int
    mul(a, b) -> codes      # numpy broadcasting over int64 arrays
    inv(a) -> codes

Everything else (closure, centralizers, classes, quotients, ...) is built on
those vectorized primitives.
"""

from __future__ import annotations

from typing import Iterable, Protocol, Sequence

import numpy as np

from ..errors import BoundExceeded, NotASubgroup

GROUP_BOUND = 2**24
TABLE_LIMIT = 2048  # Cayley tables are materialized up to this order


class GroupOps(Protocol):
    identity: int

    def mul(self, a, b): ...

    def inv(self, a): ...


def as_codes(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=np.int64))


def isin_sorted(x: np.ndarray, sorted_arr: np.ndarray) -> np.ndarray:
    """Vectorized membership of x in a sorted array."""
    x = np.asarray(x, dtype=np.int64)
    if sorted_arr.size == 0:
        return np.zeros(x.shape, dtype=bool)
    pos = np.atleast_1d(np.searchsorted(sorted_arr, x))
    pos[pos == sorted_arr.size] = 0
    return (sorted_arr[pos] == np.atleast_1d(x)).reshape(x.shape)


class GroupHandle:
    """An immutable enumerated group.

    ``elements`` is the sorted carrier, ``gens`` a generating list (computed
    lazily for handles built from a carrier alone).  Derived data is cached
    on the instance; the carrier itself never changes.
    """

    def __init__(self, elements, ops: GroupOps, gens: Sequence[int] | None = None, label: str = ""):
        els = np.asarray(elements, dtype=np.int64)
        if els.ndim != 1:
            raise ValueError("carrier must be one-dimensional")
        self.elements = els
        self.elements.flags.writeable = False
        self.ops = ops
        self._gens = None if gens is None else tuple(int(g) for g in gens if int(g) != ops.identity)
        self.label = label
        self._cache: dict = {}

    def __repr__(self) -> str:
        name = self.label or "group"
        return f"<{name} order={self.order}>"

    def __len__(self) -> int:
        return int(self.elements.size)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    @property
    def identity(self) -> int:
        return int(self.ops.identity)

    @property
    def gens(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = tuple(reduce_generators(self.elements, self.ops))
        return self._gens

    @property
    def key(self) -> bytes:
        return self.elements.tobytes()

    def same_carrier(self, other: "GroupHandle") -> bool:
        return self.order == other.order and bool(np.array_equal(self.elements, other.elements))

    def mul(self, a, b):
        return self.ops.mul(a, b)

    def inv(self, a):
        return self.ops.inv(a)

    def conj(self, g, x):
        """g x g^-1, vectorized."""
        return self.ops.mul(self.ops.mul(g, x), self.ops.inv(g))

    def contains(self, codes) -> np.ndarray:
        return isin_sorted(codes, self.elements)

    def __contains__(self, code) -> bool:
        return bool(self.contains(np.int64(code)))

    def issubset(self, other: "GroupHandle") -> bool:
        return bool(other.contains(self.elements).all())

    def index(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        pos = np.atleast_1d(np.searchsorted(self.elements, codes))
        bad = pos >= self.elements.size
        pos[bad] = 0
        if bad.any() or not np.all(self.elements[pos] == np.atleast_1d(codes)):
            raise NotASubgroup(f"code(s) not in {self!r}")
        return pos.reshape(codes.shape)

    def describe(self, code: int) -> str:
        d = getattr(self.ops, "describe", None)
        return d(code) if d else str(int(code))

    def subgroup(self, elements, gens=None, label: str = "") -> "GroupHandle":
        els = np.unique(np.asarray(elements, dtype=np.int64))
        return GroupHandle(els, self.ops, gens, label)

    @property
    def table(self) -> np.ndarray:
        """Cayley table on carrier indices (order <= TABLE_LIMIT)."""
        if "table" not in self._cache:
            n = self.order
            if n > TABLE_LIMIT:
                raise BoundExceeded(f"Cayley table requested for order {n} > {TABLE_LIMIT}")
            els = self.elements
            t = np.empty((n, n), dtype=np.int32)
            step = max(1, 2**20 // max(n, 1))
            for lo in range(0, n, step):
                prod = self.ops.mul(els[lo : lo + step, None], els[None, :])
                t[lo : lo + step] = self.index(prod)
            t.flags.writeable = False
            self._cache["table"] = t
        return self._cache["table"]

    @property
    def inv_index(self) -> np.ndarray:
        if "inv_index" not in self._cache:
            self._cache["inv_index"] = self.index(self.ops.inv(self.elements))
        return self._cache["inv_index"]


# -- closure -------------------------------------------------------------------


def _extend(current: np.ndarray, kept: list[int], new: int, ops: GroupOps, bound: int) -> np.ndarray:
    """Closure of current ∪ {new} under right multiplication by kept + [new].

    ``current`` is already closed under the old generators, so the first
    layer only needs the new generator.
    """
    gens = np.array(kept + [new], dtype=np.int64)
    known = current
    frontier = np.unique(as_codes(ops.mul(current, new)))
    frontier = frontier[~isin_sorted(frontier, known)]
    while frontier.size:
        known = np.union1d(known, frontier)
        if known.size > bound:
            raise BoundExceeded(f"closure exceeds bound {bound}")
        prod = np.unique(as_codes(ops.mul(frontier[:, None], gens[None, :])))
        frontier = prod[~isin_sorted(prod, known)]
    return known


def close(generators: Iterable[int], ops: GroupOps, bound: int = GROUP_BOUND, label: str = "") -> GroupHandle:
    """Breadth-first closure of the generators.

    Generators already inside the partial closure are skipped, so the
    recorded generating list stays short (at most log2 of the order).
    """
    pending = as_codes(list(generators) if not isinstance(generators, np.ndarray) else generators)
    if pending.size == 0:
        raise ValueError("close() needs at least one generator")
    current = np.array([ops.identity], dtype=np.int64)
    kept: list[int] = []
    while pending.size:
        pending = pending[~isin_sorted(pending, current)]
        if not pending.size:
            break
        g = int(pending[0])
        pending = pending[1:]
        current = _extend(current, kept, g, ops, bound)
        kept.append(g)
    return GroupHandle(current, ops, kept, label)


def reduce_generators(elements: np.ndarray, ops: GroupOps) -> list[int]:
    """A short generating list for a closed carrier, scanning in code order."""
    current = np.array([ops.identity], dtype=np.int64)
    kept: list[int] = []
    rest = elements
    while current.size < elements.size:
        rest = rest[~isin_sorted(rest, current)]
        g = int(rest[0])
        current = _extend(current, kept, g, ops, elements.size)
        kept.append(g)
    if current.size != elements.size:
        raise NotASubgroup("carrier is not closed under multiplication")
    return kept


def power(ops: GroupOps, x, e: int):
    """x**e by square-and-multiply, vectorized over x."""
    x = np.asarray(x, dtype=np.int64)
    result = np.full(x.shape, ops.identity, dtype=np.int64)
    if e < 0:
        x = np.asarray(ops.inv(x), dtype=np.int64)
        e = -e
    base = x
    while e:
        if e & 1:
            result = np.asarray(ops.mul(result, base), dtype=np.int64)
        e >>= 1
        if e:
            base = np.asarray(ops.mul(base, base), dtype=np.int64)
    return result


def has_order(ops: GroupOps, x, k: int) -> np.ndarray:
    """Mask of entries of x whose order is exactly k."""
    from ..field import prime_factors

    x = np.asarray(x, dtype=np.int64)
    ok = power(ops, x, k) == ops.identity
    for f in prime_factors(k) if k > 1 else []:
        ok &= power(ops, x, k // f) != ops.identity
    if k == 1:
        ok &= x == ops.identity
    return ok


def element_order(ops: GroupOps, x: int, limit: int = GROUP_BOUND) -> int:
    cur = int(x)
    k = 1
    while cur != ops.identity:
        cur = int(ops.mul(cur, x))
        k += 1
        if k > limit:
            raise BoundExceeded("element order exceeds limit")
    return k


def element_orders(G: GroupHandle) -> np.ndarray:
    """Orders of all elements, aligned with ``G.elements``."""
    if "orders" in G._cache:
        return G._cache["orders"]
    x = G.elements
    e = G.identity
    orders = np.ones(x.size, dtype=np.int64)
    cur = x.copy()
    active = np.flatnonzero(cur != e)
    k = 1
    while active.size:
        k += 1
        cur[active] = as_codes(G.ops.mul(cur[active], x[active]))
        done = cur[active] == e
        orders[active[done]] = k
        active = active[~done]
    orders.flags.writeable = False
    G._cache["orders"] = orders
    return orders


def commute_mask(G: GroupHandle, x, ys) -> np.ndarray:
    ys = np.asarray(ys, dtype=np.int64)
    return np.asarray(G.ops.mul(x, ys)) == np.asarray(G.ops.mul(ys, x))


def is_abelian(G: GroupHandle) -> bool:
    if "abelian" not in G._cache:
        gens = np.array(G.gens, dtype=np.int64)
        if gens.size < 2:
            G._cache["abelian"] = True
        else:
            a = np.asarray(G.ops.mul(gens[:, None], gens[None, :]))
            b = np.asarray(G.ops.mul(gens[None, :], gens[:, None]))
            G._cache["abelian"] = bool(np.array_equal(a, b))
    return G._cache["abelian"]


def noncommuting_pair(G: GroupHandle) -> tuple[int, int] | None:
    gens = G.gens
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if int(G.ops.mul(a, b)) != int(G.ops.mul(b, a)):
                return a, b
    return None


def is_normal(G: GroupHandle, N: GroupHandle) -> bool:
    if not N.issubset(G):
        return False
    if not N.gens:
        return True
    g = np.array(G.gens, dtype=np.int64)
    n = np.array(N.gens, dtype=np.int64)
    if g.size == 0:
        return True
    return bool(N.contains(G.conj(g[:, None], n[None, :])).all())


def join(G: GroupHandle, *subgroups: GroupHandle, label: str = "") -> GroupHandle:
    gens: list[int] = []
    for H in subgroups:
        gens.extend(H.gens)
    if not gens:
        return trivial_subgroup(G)
    return close(gens, G.ops, label=label)


def trivial_subgroup(G: GroupHandle) -> GroupHandle:
    return GroupHandle([G.identity], G.ops, [], "trivial")


def intersection(A: GroupHandle, B: GroupHandle) -> GroupHandle:
    return GroupHandle(np.intersect1d(A.elements, B.elements), A.ops)


def product_set(A: GroupHandle, B: GroupHandle) -> np.ndarray:
    return np.unique(as_codes(A.ops.mul(A.elements[:, None], B.elements[None, :])))

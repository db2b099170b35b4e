"""Centralizers, conjugacy classes, quotients, Sylow subgroups, fingerprints."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from ..errors import NotASubgroup, NotNormal
from ..field import prime_factors
from .core import (
    GroupHandle,
    as_codes,
    close,
    element_orders,
    is_abelian,
    is_normal,
    isin_sorted,
    trivial_subgroup,
)

_CHUNK = 1 << 20


def centralizer(G: GroupHandle, x: int) -> GroupHandle:
    """C_G(x) by a full commuting scan of the carrier."""
    if x not in G:
        raise NotASubgroup(f"{x} is not an element of {G!r}")
    parts = []
    for lo in range(0, G.order, _CHUNK):
        g = G.elements[lo : lo + _CHUNK]
        parts.append(g[np.asarray(G.ops.mul(g, x)) == np.asarray(G.ops.mul(x, g))])
    return GroupHandle(np.concatenate(parts), G.ops, label=f"C({x})")


def center(G: GroupHandle) -> GroupHandle:
    if "center" not in G._cache:
        keep = np.ones(G.order, dtype=bool)
        for g in G.gens:
            for lo in range(0, G.order, _CHUNK):
                sl = slice(lo, lo + _CHUNK)
                x = G.elements[sl]
                keep[sl] &= np.asarray(G.ops.mul(g, x)) == np.asarray(G.ops.mul(x, g))
        G._cache["center"] = GroupHandle(G.elements[keep], G.ops, label="Z")
    return G._cache["center"]


def normal_closure(G: GroupHandle, codes) -> GroupHandle:
    """Smallest normal subgroup of G containing the given elements."""
    codes = np.unique(as_codes(codes))
    codes = codes[codes != G.identity]
    if codes.size == 0:
        return trivial_subgroup(G)
    H = close(codes, G.ops)
    gens = np.array(G.gens, dtype=np.int64)
    while True:
        hg = np.array(H.gens, dtype=np.int64)
        conj = np.unique(as_codes(G.conj(gens[:, None], hg[None, :])))
        missing = conj[~H.contains(conj)]
        if not missing.size:
            return H
        H = close(list(H.gens) + missing.tolist(), G.ops)


def derived_subgroup(G: GroupHandle) -> GroupHandle:
    """G' as the normal closure of the commutators of generator pairs."""
    if "derived" not in G._cache:
        gens = np.array(G.gens, dtype=np.int64)
        if gens.size < 2:
            D = trivial_subgroup(G)
        else:
            a, b = gens[:, None], gens[None, :]
            ops = G.ops
            comm = ops.mul(ops.mul(ops.inv(a), ops.inv(b)), ops.mul(a, b))
            D = normal_closure(G, comm)
        D.label = "derived"
        G._cache["derived"] = D
    return G._cache["derived"]


# -- conjugacy classes -----------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    rep: int
    elements: np.ndarray  # sorted codes
    centralizer: GroupHandle

    @property
    def size(self) -> int:
        return int(self.elements.size)


def _orbit_and_stabilizer(G: GroupHandle, x: int) -> tuple[np.ndarray, GroupHandle]:
    """Conjugation orbit of x plus C_G(x) from Schreier generators."""
    ops = G.ops
    e = G.identity
    gens = np.array(G.gens, dtype=np.int64)
    if gens.size == 0:
        return np.array([x], dtype=np.int64), G
    ginv = as_codes(ops.inv(gens))
    known = np.array([x], dtype=np.int64)
    known_t = np.array([e], dtype=np.int64)
    f_pts, f_t = known, known_t
    schreier = []
    while f_pts.size:
        imgs = as_codes(ops.mul(ops.mul(gens[:, None], f_pts[None, :]), ginv[:, None])).ravel()
        ts = as_codes(ops.mul(gens[:, None], f_t[None, :])).ravel()
        hit = isin_sorted(imgs, known)
        if hit.any():
            pos = np.searchsorted(known, imgs[hit])
            schreier.append(as_codes(ops.mul(ops.inv(known_t[pos]), ts[hit])))
        imgs, ts = imgs[~hit], ts[~hit]
        if not imgs.size:
            break
        order = np.argsort(imgs, kind="stable")
        imgs, ts = imgs[order], ts[order]
        first = np.ones(imgs.size, dtype=bool)
        first[1:] = imgs[1:] != imgs[:-1]
        if not first.all():
            lead = np.maximum.accumulate(np.where(first, np.arange(imgs.size), 0))
            dup = ~first
            schreier.append(as_codes(ops.mul(ops.inv(ts[lead[dup]]), ts[dup])))
        f_pts, f_t = imgs[first], ts[first]
        merged = np.concatenate([known, f_pts])
        mo = np.argsort(merged, kind="stable")
        known = merged[mo]
        known_t = np.concatenate([known_t, f_t])[mo]
    if known.size == 1:
        return known, G
    cand = np.unique(np.concatenate(schreier + [np.array([x], dtype=np.int64)]))
    cand = cand[cand != e]
    C = close(cand, ops, label=f"C({x})")
    if C.order * known.size != G.order:
        raise AssertionError(f"orbit-stabilizer mismatch in {G!r}: {known.size} * {C.order}")
    return known, C


def iter_classes(G: GroupHandle) -> Iterator[ConjugacyClass]:
    """Yield classes in order of their smallest element, computing lazily."""
    state = G._cache.setdefault("classes_state", {"done": [], "seen": None, "ptr": 0, "complete": False})
    snapshot = list(state["done"])
    yield from snapshot
    i = len(snapshot)
    while not state["complete"]:
        if len(state["done"]) > i:
            # another consumer advanced the shared state
            for c in state["done"][i:]:
                yield c
            i = len(state["done"])
            continue
        if state["seen"] is None:
            state["seen"] = np.zeros(G.order, dtype=bool)
        seen = state["seen"]
        rest = np.flatnonzero(~seen[state["ptr"] :])
        if not rest.size:
            state["complete"] = True
            break
        idx = state["ptr"] + int(rest[0])
        state["ptr"] = idx
        x = int(G.elements[idx])
        orbit, C = _orbit_and_stabilizer(G, x)
        seen[G.index(orbit)] = True
        cls = ConjugacyClass(x, orbit, C)
        state["done"].append(cls)
        i += 1
        yield cls


def class_data(G: GroupHandle) -> list[ConjugacyClass]:
    return list(iter_classes(G))


def conjugacy_classes(G: GroupHandle) -> list[tuple[int, int]]:
    """(representative, size) pairs; the representative is the smallest code."""
    return [(c.rep, c.size) for c in iter_classes(G)]


# -- structure probe / fingerprint --------------------------------------------------


@dataclass(frozen=True)
class StructureProbe:
    order: int
    center_order: int
    derived_order: int
    is_abelian: bool
    is_perfect: bool
    element_order_multiset: tuple[tuple[int, int], ...]
    class_size_multiset: tuple[tuple[int, int], ...]


class Fingerprint(NamedTuple):
    order: int
    element_orders: tuple[tuple[int, int], ...]
    class_sizes: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int


def _multiset(values) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(int(v) for v in values).items()))


def structure_probe(G: GroupHandle) -> StructureProbe:
    if "probe" not in G._cache:
        Z = center(G)
        D = derived_subgroup(G)
        G._cache["probe"] = StructureProbe(
            order=G.order,
            center_order=Z.order,
            derived_order=D.order,
            is_abelian=Z.order == G.order,
            is_perfect=D.order == G.order,
            element_order_multiset=_multiset(element_orders(G)),
            class_size_multiset=_multiset(size for _, size in conjugacy_classes(G)),
        )
    return G._cache["probe"]


def is_perfect(G: GroupHandle) -> bool:
    return derived_subgroup(G).order == G.order


def iso_fingerprint(G: GroupHandle) -> Fingerprint:
    """Isomorphism invariant; equal fingerprints mean "same type (fingerprint)" only."""
    sp = structure_probe(G)
    return Fingerprint(sp.order, sp.element_order_multiset, sp.class_size_multiset, sp.center_order, sp.derived_order)


# -- quotients -------------------------------------------------------------------------


class QuotientOps:
    """Cosets gN coded by their smallest member; products go through the parent."""

    def __init__(self, parent: GroupHandle, normal: GroupHandle, coset_min: np.ndarray):
        self.parent = parent
        self.normal = normal
        self.coset_min = coset_min
        self.identity = int(coset_min[parent.index(parent.identity)])

    def mul(self, a, b):
        out = self.coset_min[self.parent.index(self.parent.ops.mul(a, b))]
        return int(out) if np.ndim(out) == 0 else out

    def inv(self, a):
        out = self.coset_min[self.parent.index(self.parent.ops.inv(a))]
        return int(out) if np.ndim(out) == 0 else out

    def describe(self, code) -> str:
        return self.parent.describe(code) + "N"


def quotient(G: GroupHandle, N: GroupHandle) -> GroupHandle:
    if not N.issubset(G):
        raise NotASubgroup("quotient needs N contained in G")
    if not is_normal(G, N):
        raise NotNormal("quotient needs a normal subgroup")
    cmin = np.empty(G.order, dtype=np.int64)
    step = max(1, _CHUNK // N.order)
    for lo in range(0, G.order, step):
        g = G.elements[lo : lo + step]
        cmin[lo : lo + step] = as_codes(G.ops.mul(g[:, None], N.elements[None, :])).min(axis=1)
    cmin.flags.writeable = False
    ops = QuotientOps(G, N, cmin)
    gens = np.unique(cmin[G.index(np.array(G.gens, dtype=np.int64))]) if G.gens else []
    label = f"{G.label or 'G'}/{N.label or 'N'}"
    return GroupHandle(np.unique(cmin), ops, [g for g in gens if g != ops.identity], label)


def preimage(Q: GroupHandle, H: GroupHandle) -> GroupHandle:
    """Full preimage in the parent group of a subgroup H of the quotient Q."""
    ops = Q.ops
    if not isinstance(ops, QuotientOps):
        raise TypeError("preimage() needs a quotient handle")
    parent = ops.parent
    mask = isin_sorted(ops.coset_min, H.elements)
    gens = list(ops.normal.gens) + list(H.gens)
    return GroupHandle(parent.elements[mask], parent.ops, gens)


# -- Sylow ----------------------------------------------------------------------


def sylow(G: GroupHandle, r: int) -> GroupHandle:
    """A Sylow r-subgroup, grown from an r-element of largest order."""
    n = G.order
    target = 1
    while n % r == 0:
        n //= r
        target *= r
    if target == 1:
        return trivial_subgroup(G)
    orders = element_orders(G)
    r_elem = np.zeros(G.order, dtype=bool)
    for k in _powers_upto(r, target):
        r_elem |= orders == k
    r_elem &= orders > 1
    cands = G.elements[r_elem]
    cand_orders = orders[r_elem]
    start = int(cands[np.argmax(cand_orders)])  # first of maximal order
    P = close([start], G.ops)
    while P.order < target:
        outside = cands[~P.contains(cands)]
        ok = np.ones(outside.size, dtype=bool)
        for h in P.gens:
            ok &= P.contains(G.conj(outside, h))
        if not ok.any():
            raise AssertionError(f"Sylow growth stalled at order {P.order} in {G!r}")
        P = close(list(P.gens) + [int(outside[np.argmax(ok)])], G.ops)
    P.label = f"Syl{r}"
    return P


def _powers_upto(r: int, limit: int):
    k = r
    while k <= limit:
        yield k
        k *= r


def is_prime_power_order(n: int) -> bool:
    return n > 1 and len(prime_factors(n)) == 1


def is_abelian_group(G: GroupHandle) -> bool:
    return is_abelian(G)

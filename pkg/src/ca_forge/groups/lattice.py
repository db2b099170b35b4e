"""Exhaustive subgroup enumeration for small groups.

Every subgroup is a join of cyclic subgroups, so starting from the cyclic
ones and repeatedly adjoining one more element reaches all of them.  Joins
are only formed from one representative per conjugacy class: the joins of a
conjugate are the conjugates of the joins.  Everything runs on Cayley-table
indices with boolean membership masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BoundExceeded
from .core import GroupHandle

ORACLE_BOUND = 1200


def _keys(masks: np.ndarray) -> list[bytes]:
    packed = np.packbits(masks, axis=-1)
    return [row.tobytes() for row in packed]


@dataclass
class SubgroupLattice:
    """All subgroups of ``group`` with their conjugacy classes."""

    group: GroupHandle
    masks: np.ndarray  # (S, n) membership over carrier indices
    class_ids: np.ndarray  # (S,)
    gens: list[list[int]]  # generator codes per subgroup
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def orders(self) -> np.ndarray:
        return self.masks.sum(axis=1)

    def __len__(self) -> int:
        return int(self.masks.shape[0])

    def handle(self, i: int) -> GroupHandle:
        G = self.group
        return GroupHandle(G.elements[self.masks[i]], G.ops, self.gens[i])

    def find(self, H: GroupHandle) -> int | None:
        """Position of the subgroup with H's carrier, or None."""
        mask = np.zeros(self.group.order, dtype=bool)
        mask[self.group.index(H.elements)] = True
        return self._index.get(np.packbits(mask).tobytes())

    def class_members(self, cid: int) -> np.ndarray:
        return np.flatnonzero(self.class_ids == cid)

    def class_reps(self) -> list[int]:
        seen = set()
        reps = []
        for i, c in enumerate(self.class_ids.tolist()):
            if c not in seen:
                seen.add(c)
                reps.append(i)
        return reps

    def maximal(self) -> list[int]:
        """Indices of maximal proper subgroups."""
        n = self.group.order
        orders = self.orders
        out = []
        for r in self.class_reps():
            if orders[r] == n:
                continue
            members = np.flatnonzero(self.masks[r])
            above = self.masks[:, members].all(axis=1) & (orders > orders[r]) & (orders < n)
            if not above.any():
                out.extend(self.class_members(self.class_ids[r]).tolist())
        return sorted(out)


def subgroup_lattice(G: GroupHandle, bound: int = ORACLE_BOUND) -> SubgroupLattice:
    if G.order > bound:
        raise BoundExceeded(f"subgroup enumeration needs order <= {bound}, got {G.order}")
    if "lattice" in G._cache:
        return G._cache["lattice"]
    n = G.order
    T = G.table.astype(np.int64)
    inv = G.inv_index
    e_idx = int(G.index(G.identity))
    conj = T[T, inv[:, None]]  # conj[g, x] = g x g^-1
    rows = np.arange(n)

    # cyclic subgroups
    cyc = np.zeros((n, n), dtype=bool)
    cur = np.full(n, e_idx)
    cyc[rows, cur] = True
    while True:
        cur = T[cur, rows]
        if cyc[rows, cur].all():
            break
        cyc[rows, cur] = True
    cyc_keys = _keys(cyc)
    cyc_gen: dict[bytes, int] = {}
    for i, k in enumerate(cyc_keys):
        cyc_gen.setdefault(k, i)
    cyc_list = sorted(cyc_gen.values())

    known: dict[bytes, int] = {}
    all_masks: list[np.ndarray] = []
    all_gens: list[list[int]] = []
    class_of: list[int] = []
    worklist: list[int] = []
    n_classes = [0]

    def add_class(mask: np.ndarray, gens_idx: list[int]) -> None:
        members = np.flatnonzero(mask)
        M = np.zeros((n, n), dtype=bool)
        M[rows[:, None], conj[:, members]] = True
        cid = n_classes[0]
        n_classes[0] += 1
        first_rep = len(all_masks)
        for g, k in enumerate(_keys(M)):
            if k in known:
                continue
            known[k] = len(all_masks)
            all_masks.append(M[g])
            all_gens.append(conj[g, gens_idx].tolist())
            class_of.append(cid)
        worklist.append(first_rep)

    def join(mask: np.ndarray, gens_idx: list[int], g: int) -> np.ndarray:
        m = mask.copy()
        frontier = np.unique(T[np.flatnonzero(mask), g])
        frontier = frontier[~m[frontier]]
        gl = np.array(gens_idx + [g])
        while frontier.size:
            m[frontier] = True
            prod = np.unique(T[frontier[:, None], gl[None, :]])
            frontier = prod[~m[prod]]
        return m

    trivial = np.zeros(n, dtype=bool)
    trivial[e_idx] = True
    add_class(trivial, [])
    for i in cyc_list:
        if cyc_keys[i] not in known:
            add_class(cyc[i], [i])

    pos = 0
    while pos < len(worklist):
        r = worklist[pos]
        pos += 1
        mask = all_masks[r]
        gens_idx = all_gens[r]
        for g in cyc_list:
            if mask[g]:
                continue
            m = join(mask, gens_idx, g)
            if np.packbits(m).tobytes() not in known:
                add_class(m, gens_idx + [g])

    # deterministic order: by order, then by sorted element codes
    codes = G.elements
    order_key = sorted(
        range(len(all_masks)),
        key=lambda i: (int(all_masks[i].sum()), tuple(codes[all_masks[i]].tolist())),
    )
    masks = np.array([all_masks[i] for i in order_key])
    # renumber classes in order of first appearance
    remap: dict[int, int] = {}
    cids = []
    for i in order_key:
        c = class_of[i]
        remap.setdefault(c, len(remap))
        cids.append(remap[c])
    gens = [[int(codes[j]) for j in all_gens[i]] for i in order_key]
    lat = SubgroupLattice(G, masks, np.array(cids), gens)
    lat._index = {k: i for i, k in enumerate(_keys(masks))}
    G._cache["lattice"] = lat
    return lat


def all_subgroups(G: GroupHandle, bound: int = ORACLE_BOUND) -> list[GroupHandle]:
    """Every subgroup of G (trivial and G included), sorted by order then codes."""
    lat = subgroup_lattice(G, bound)
    return [lat.handle(i) for i in range(len(lat))]


def maximal_subgroups(G: GroupHandle, bound: int = ORACLE_BOUND) -> list[GroupHandle]:
    lat = subgroup_lattice(G, bound)
    return [lat.handle(i) for i in lat.maximal()]

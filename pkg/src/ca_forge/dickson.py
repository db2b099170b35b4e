"""Dickson's list of maximal subgroup classes of PSL(2,q), with explicit reps.

Each applicable case gets a ``MaximalClassSpec``; ``construct_class_rep``
builds one subgroup of ``psl2(ctx)`` of the listed type by a deterministic
search in element-code order.  ``verify_cover`` checks the list against the
exhaustive subgroup lattice at small q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundExceeded, CatalogInconsistency
from .field import FieldCtx, is_prime, make_field, square_info, subfield
from .groups.core import GroupHandle, close, has_order, power
from .groups.lattice import ORACLE_BOUND, subgroup_lattice
from .linear import MatOps, borel, diagonal, psl2, sl2_codes

_CHUNK = 1 << 18


@dataclass(frozen=True)
class MaximalClassSpec:
    case_id: int
    p: int
    m: int
    q: int
    expected_order: int
    multiplicity: int
    description: str
    subfield_degree: int | None = None  # n for cases 7 and 8

    @property
    def label(self) -> str:
        return f"case {self.case_id}: {self.description}"


def _psl_order(q: int) -> int:
    return q * (q * q - 1) // (2 if q % 2 else 1)


def _sqrt5_degree(p: int) -> int | None:
    """Degree over GF(p) of the smallest field holding a square root of 5."""
    if p == 5:
        return 1  # sqrt(5) = 0
    return 1 if square_info(make_field(p), 5 % p)[0] else 2


def applicable_classes(p: int, m: int) -> list[MaximalClassSpec]:
    """Specs of every case whose side conditions hold for q = p**m."""
    if not is_prime(p) or m < 1:
        raise ValueError(f"need a prime p and m >= 1, got p={p}, m={m}")
    q = p**m
    if q <= 3:
        raise ValueError(f"Dickson's list needs q > 3, got q={q}")
    g = 2 if p != 2 else 1
    out = [MaximalClassSpec(1, p, m, q, q * (q - 1) // g, 1, f"C{q}:C{(q - 1) // g}")]
    if q not in (5, 7, 9, 11):
        out.append(MaximalClassSpec(2, p, m, q, 2 * (q - 1) // g, 1, f"D{2 * (q - 1) // g}"))
    if q not in (7, 9):
        out.append(MaximalClassSpec(3, p, m, q, 2 * (q + 1) // g, 1, f"D{2 * (q + 1) // g}"))
    if q % 10 in (1, 9) and _sqrt5_degree(p) == m:
        out.append(MaximalClassSpec(4, p, m, q, 60, 2, "Alt5"))
    if m == 1 and (q * q - 1) % 16 == 0:
        out.append(MaximalClassSpec(5, p, m, q, 24, 2, "Sym4"))
    if m == 1 and q % 40 in (3, 5, 13, 27, 37):
        out.append(MaximalClassSpec(6, p, m, q, 12, 1, "Alt4"))
    if p != 2 and m % 2 == 0:
        q0 = p ** (m // 2)
        out.append(MaximalClassSpec(7, p, m, q, q0 * (q0 * q0 - 1), 2, f"PGL(2,{q0})", m // 2))
    for n in range(1, m):
        if m % n:
            continue
        k = m // n
        if (k > 2 and is_prime(k)) or (p == 2 and k == 2):
            q1 = p**n
            out.append(MaximalClassSpec(8, p, m, q, _psl_order(q1), 1, f"PSL(2,{q1})", n))
    return out


# -- constructions --------------------------------------------------------------


def _scan(G: GroupHandle, predicate, limit: int | None = None):
    """Carrier elements satisfying a vectorized predicate, in code order."""
    for lo in range(0, G.order, _CHUNK):
        chunk = G.elements[lo : lo + _CHUNK]
        hits = chunk[predicate(chunk)]
        yield from hits.tolist()


def _first(G: GroupHandle, predicate) -> int:
    for x in _scan(G, predicate):
        return int(x)
    raise CatalogInconsistency(f"no element found in {G!r}")


def _dihedral_case3(G: GroupHandle, k: int) -> GroupHandle:
    ops = G.ops
    e = G.identity
    c = _first(G, lambda x: has_order(ops, x, k))
    c_inv = ops.inv(c)
    s = _first(
        G,
        lambda x: (x != e) & (power(ops, x, 2) == e) & (np.asarray(ops.mul(ops.mul(x, c), x)) == c_inv),
    )
    return close([c, s], ops)


def _triangle(G: GroupHandle, orders: tuple[int, int, int], target: int) -> GroupHandle:
    """First pair (x, y) in code order with |x|, |y|, |xy| as given and |<x,y>| = target."""
    ops = G.ops
    kx, ky, kxy = orders
    for x in _scan(G, lambda z: has_order(ops, z, kx)):
        for y in _scan(G, lambda z: has_order(ops, z, ky) & has_order(ops, ops.mul(x, z), kxy)):
            try:
                H = close([x, y], ops, bound=target)
            except BoundExceeded:
                continue
            if H.order == target:
                return H
    raise CatalogInconsistency(f"no {orders} generating pair of order {target} in {G!r}")


def _pgl_embedded(ctx: FieldCtx, n: int) -> GroupHandle:
    ops = MatOps(ctx, projective=True)
    sub = subfield(ctx, n)
    inner = sl2_codes(ops, sub)
    squares = set(np.asarray(ctx.mul(sub, sub)).tolist())
    ns = next(int(v) for v in sub.tolist() if v not in squares)
    # every element of the half-degree subfield is a square in GF(q)
    _, root = square_info(ctx, ns)
    outer = sl2_codes(ops, sub, det_value=ns, scale=ctx.inv(root))
    return GroupHandle(np.union1d(inner, outer), ops)


def construct_class_rep(ctx: FieldCtx, spec: MaximalClassSpec) -> GroupHandle:
    if (ctx.p, ctx.m) != (spec.p, spec.m):
        raise ValueError(f"spec for q={spec.q} used with {ctx!r}")
    G = psl2(ctx)
    ops = G.ops
    cid = spec.case_id
    if cid == 1:
        H = borel(ctx)
    elif cid == 2:
        D = diagonal(ctx)
        w = ops.canon(0, 1, ctx.neg(1), 0)
        H = close(list(D.gens) + [w], ops)
    elif cid == 3:
        H = _dihedral_case3(G, spec.expected_order // 2)
    elif cid in (4, 5, 6):
        sig = {4: (2, 5, 3), 5: (2, 3, 4), 6: (2, 3, 3)}[cid]
        H = _triangle(G, sig, spec.expected_order)
    elif cid == 7:
        H = _pgl_embedded(ctx, spec.subfield_degree)
    elif cid == 8:
        H = GroupHandle(sl2_codes(ops, subfield(ctx, spec.subfield_degree)), ops)
    else:
        raise ValueError(f"unknown case {cid}")
    if H.order != spec.expected_order:
        raise CatalogInconsistency(f"{spec.label} built order {H.order}, expected {spec.expected_order}")
    H.label = spec.description
    return H


def twist(ctx: FieldCtx, H: GroupHandle) -> GroupHandle:
    """Image of H under conjugation by diag(nu, 1), nu the first non-square.

    This automorphism of PSL(2,q) is induced from PGL(2,q); it exchanges the
    two PSL-classes of a type that Dickson lists with multiplicity two.
    """
    ops = H.ops
    nu = next(v for v in range(1, ctx.q) if not square_info(ctx, v)[0])
    a, b, c, d = ops.unpack(H.elements)
    els = np.unique(np.asarray(ops.canon(a, ctx.mul(b, nu), ctx.div(c, nu), d), dtype=np.int64))
    return GroupHandle(els, ops, label=H.label + "'")


# -- cover check ----------------------------------------------------------------


@dataclass
class CoverReport:
    q: int
    covered: bool
    maximal_classes: list[tuple[int, list[int]]]  # (order, matching case ids)
    uncovered_orders: list[int] = field(default_factory=list)
    unmatched_cases: list[int] = field(default_factory=list)  # constructed reps that are not maximal


def verify_cover(ctx: FieldCtx, oracle_bound: int = ORACLE_BOUND) -> CoverReport:
    """Check every maximal subgroup of PSL(2,q) is conjugate to a constructed rep."""
    G = psl2(ctx)
    if G.order > oracle_bound:
        raise BoundExceeded(f"|PSL(2,{ctx.q})| = {G.order} exceeds oracle bound {oracle_bound}")
    lat = subgroup_lattice(G, oracle_bound)
    by_class: dict[int, list[int]] = {}
    for spec in applicable_classes(ctx.p, ctx.m):
        H = construct_class_rep(ctx, spec)
        reps = [H, twist(ctx, H)] if spec.multiplicity == 2 and ctx.p != 2 else [H]
        for R in reps:
            i = lat.find(R)
            if i is None:
                raise CatalogInconsistency(f"{spec.label} rep is not a subgroup of PSL(2,{ctx.q})")
            by_class.setdefault(int(lat.class_ids[i]), []).append(spec.case_id)
    maximal = lat.maximal()
    max_classes = sorted({int(lat.class_ids[i]) for i in maximal})
    rows = []
    uncovered = []
    for cid in max_classes:
        order = int(lat.orders[lat.class_members(cid)[0]])
        cases = sorted(set(by_class.get(cid, [])))
        rows.append((order, cases))
        if not cases:
            uncovered.append(order)
    unmatched = sorted({c for cid, cs in by_class.items() if cid not in max_classes for c in cs})
    return CoverReport(ctx.q, not uncovered, rows, uncovered, unmatched)

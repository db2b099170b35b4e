"""SL(2,q), PSL(2,q) and the upper-triangular Borel subgroup.

A 2x2 matrix [[a, b], [c, d]] over GF(q) is coded as ((a*q + b)*q + c)*q + d.
PSL elements are stored as the sign-canonical member of {M, -M}: the first
nonzero entry in (a, b, c, d) must have a smaller field code than its
negative.  In characteristic 2 the sign rule is vacuous.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import BoundExceeded
from .field import FieldCtx
from .groups.core import GROUP_BOUND, GroupHandle


class Mat2(NamedTuple):
    a: int
    b: int
    c: int
    d: int


class MatOps:
    """Bulk arithmetic on coded 2x2 matrices; ``projective`` reduces mod ±1."""

    def __init__(self, field: FieldCtx, projective: bool):
        self.field = field
        self.q = field.q
        self.projective = projective and field.p != 2
        self.identity = self.pack(1, 0, 0, 1)

    def __eq__(self, other):
        return isinstance(other, MatOps) and (self.field, self.projective) == (other.field, other.projective)

    def __hash__(self):
        return hash((self.field, self.projective))

    def unpack(self, code):
        q = self.q
        code = np.asarray(code, dtype=np.int64)
        d = code % q
        code = code // q
        c = code % q
        code = code // q
        return code // q, code % q, c, d

    def pack(self, a, b, c, d):
        q = self.q
        out = ((np.asarray(a, dtype=np.int64) * q + b) * q + c) * q + d
        return int(out) if np.ndim(out) == 0 else out

    def canon(self, a, b, c, d):
        if not self.projective:
            return self.pack(a, b, c, d)
        F = self.field
        a, b, c, d = (np.asarray(v, dtype=np.int64) for v in (a, b, c, d))
        lead = np.where(a != 0, a, np.where(b != 0, b, np.where(c != 0, c, d)))
        flip = lead > np.asarray(F.neg(lead))
        if np.ndim(flip) == 0:
            if flip:
                a, b, c, d = F.neg(a), F.neg(b), F.neg(c), F.neg(d)
            return self.pack(a, b, c, d)
        a = np.where(flip, F.neg(a), a)
        b = np.where(flip, F.neg(b), b)
        c = np.where(flip, F.neg(c), c)
        d = np.where(flip, F.neg(d), d)
        return self.pack(a, b, c, d)

    def mul(self, x, y):
        F = self.field
        a1, b1, c1, d1 = self.unpack(x)
        a2, b2, c2, d2 = self.unpack(y)
        a = F.add(F.mul(a1, a2), F.mul(b1, c2))
        b = F.add(F.mul(a1, b2), F.mul(b1, d2))
        c = F.add(F.mul(c1, a2), F.mul(d1, c2))
        d = F.add(F.mul(c1, b2), F.mul(d1, d2))
        return self.canon(a, b, c, d)

    def inv(self, x):
        F = self.field
        a, b, c, d = self.unpack(x)
        return self.canon(d, F.neg(b), F.neg(c), a)

    def describe(self, code) -> str:
        a, b, c, d = (int(v) for v in self.unpack(code))
        return f"[[{a},{b}],[{c},{d}]]"

    def matrix(self, code) -> Mat2:
        return Mat2(*(int(v) for v in self.unpack(code)))


def det(M: Mat2, ctx: FieldCtx) -> int:
    return ctx.sub(ctx.mul(M.a, M.d), ctx.mul(M.b, M.c))


def canonicalize(M: Mat2, ctx: FieldCtx) -> Mat2:
    """Sign-canonical representative of the coset {M, -M}."""
    ctx.check(*M)
    if det(M, ctx) != 1:
        raise ValueError(f"matrix {tuple(M)} does not have determinant 1")
    ops = MatOps(ctx, projective=True)
    return ops.matrix(ops.canon(*M))


def negate(M: Mat2, ctx: FieldCtx) -> Mat2:
    return Mat2(*(ctx.neg(v) for v in M))


def t_mat(ctx: FieldCtx, b: int) -> Mat2:
    return Mat2(1, b, 0, 1)


def d_mat(ctx: FieldCtx, a: int) -> Mat2:
    return Mat2(a, 0, 0, ctx.inv(a))


def _elementary_gens(ops: MatOps) -> list[int]:
    """Upper and lower unitriangular matrices over a GF(p)-basis of GF(q)."""
    F = ops.field
    basis = [F.p**i for i in range(F.m)]
    gens = [ops.canon(1, b, 0, 1) for b in basis] + [ops.canon(1, 0, b, 1) for b in basis]
    return [int(g) for g in gens]


def sl2_codes(ops: MatOps, entries: np.ndarray | None = None, det_value: int = 1, scale: int | None = None) -> np.ndarray:
    """Sorted codes of all matrices over ``entries`` with the given determinant.

    ``entries`` must be a subfield (default: the whole field).  When ``scale``
    is given every matrix is multiplied by it before canonicalization.
    """
    F = ops.field
    if entries is None:
        entries = F.elements()
    entries = np.asarray(entries, dtype=np.int64)
    nonzero = entries[entries != 0]
    parts = []
    b, c = np.meshgrid(entries, entries, indexing="ij")
    b, c = b.ravel(), c.ravel()
    for a in nonzero.tolist():
        d = F.mul(F.add(det_value, F.mul(b, c)), F.inv(a))
        parts.append(_emit(ops, np.full(b.size, a), b, c, d, scale))
    # a = 0: -b*c = det_value
    bb = nonzero
    cc = F.neg(F.mul(det_value, F.inv(bb)))
    for dv in entries.tolist():
        parts.append(_emit(ops, np.zeros(bb.size, dtype=np.int64), bb, cc, np.full(bb.size, dv), scale))
    return np.unique(np.concatenate(parts))


def _emit(ops: MatOps, a, b, c, d, scale):
    F = ops.field
    if scale is not None:
        a, b, c, d = (F.mul(v, scale) for v in (a, b, c, d))
    if ops.projective:
        return np.asarray(ops.canon(a, b, c, d), dtype=np.int64)
    return np.asarray(ops.pack(a, b, c, d), dtype=np.int64)


def _check_bound(order: int, bound: int) -> None:
    if order > bound:
        raise BoundExceeded(f"group of order {order} exceeds bound {bound}")


def sl2(ctx: FieldCtx, bound: int = GROUP_BOUND) -> GroupHandle:
    q = ctx.q
    _check_bound(q * (q * q - 1), bound)
    ops = MatOps(ctx, projective=False)
    els = sl2_codes(ops)
    assert els.size == q * (q * q - 1)
    return GroupHandle(els, ops, _elementary_gens(ops), f"SL(2,{q})")


_PSL_CACHE: dict[FieldCtx, GroupHandle] = {}


def psl2(ctx: FieldCtx, bound: int = GROUP_BOUND) -> GroupHandle:
    q = ctx.q
    g = 2 if ctx.p != 2 else 1
    _check_bound(q * (q * q - 1) // g, bound)
    if ctx in _PSL_CACHE:
        return _PSL_CACHE[ctx]
    ops = MatOps(ctx, projective=True)
    els = sl2_codes(ops)
    assert els.size == q * (q * q - 1) // g, els.size
    G = GroupHandle(els, ops, _elementary_gens(ops), f"PSL(2,{q})")
    _PSL_CACHE.clear()
    _PSL_CACHE[ctx] = G
    return G


def borel(ctx: FieldCtx) -> GroupHandle:
    """Image in PSL(2,q) of the upper-triangular unimodular matrices."""
    q = ctx.q
    ops = MatOps(ctx, projective=True)
    a = np.arange(1, q, dtype=np.int64)
    b = np.arange(q, dtype=np.int64)
    A, B = np.meshgrid(a, b, indexing="ij")
    A, B = A.ravel(), B.ravel()
    els = np.unique(np.asarray(ops.canon(A, B, np.zeros_like(A), ctx.inv(A)), dtype=np.int64))
    g = 2 if ctx.p != 2 else 1
    assert els.size == q * (q - 1) // g
    gen = ctx.primitive_element()
    gens = [ops.canon(gen, 0, 0, ctx.inv(gen))] + [ops.canon(1, ctx.p**i, 0, 1) for i in range(ctx.m)]
    return GroupHandle(els, ops, gens, f"Borel(PSL(2,{q}))")


def unipotent(ctx: FieldCtx) -> GroupHandle:
    """Image of T = {t_b}: the normal Sylow p-subgroup of the Borel."""
    ops = MatOps(ctx, projective=True)
    b = np.arange(ctx.q, dtype=np.int64)
    els = np.unique(np.asarray(ops.canon(np.ones_like(b), b, np.zeros_like(b), np.ones_like(b)), dtype=np.int64))
    return GroupHandle(els, ops, [ops.canon(1, ctx.p**i, 0, 1) for i in range(ctx.m)], "T")


def diagonal(ctx: FieldCtx) -> GroupHandle:
    """Image of D = {d_a}: the split torus of the Borel."""
    ops = MatOps(ctx, projective=True)
    a = np.arange(1, ctx.q, dtype=np.int64)
    els = np.unique(np.asarray(ops.canon(a, np.zeros_like(a), np.zeros_like(a), ctx.inv(a)), dtype=np.int64))
    gen = ctx.primitive_element()
    return GroupHandle(els, ops, [ops.canon(gen, 0, 0, ctx.inv(gen))], "D")

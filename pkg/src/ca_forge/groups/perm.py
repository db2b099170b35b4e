"""Permutation adapter and a few named small groups.

A permutation of {0..n-1} is coded as sum(img[i] * n**i).  Products act on
the right, as in GAP: i^(ab) = (i^a)^b.  Cycle strings use points 1..n.
"""

from __future__ import annotations

import re

import numpy as np

from .core import GroupHandle, close

MAX_DEGREE = 15  # n**n must fit in int64


class PermOps:
    def __init__(self, degree: int):
        if not 1 <= degree <= MAX_DEGREE:
            raise ValueError(f"permutation degree must be in 1..{MAX_DEGREE}")
        self.degree = degree
        self._pows = np.array([degree**i for i in range(degree)], dtype=np.int64)
        self.identity = int(np.arange(degree) @ self._pows)

    def __eq__(self, other):
        return isinstance(other, PermOps) and other.degree == self.degree

    def __hash__(self):
        return hash(("perm", self.degree))

    def decode(self, code) -> np.ndarray:
        c = np.asarray(code, dtype=np.int64)
        return (c[..., None] // self._pows) % self.degree

    def encode(self, images) -> np.ndarray:
        return (np.asarray(images, dtype=np.int64) * self._pows).sum(axis=-1)

    def mul(self, a, b):
        da, db = np.broadcast_arrays(self.decode(a), self.decode(b))
        out = self.encode(np.take_along_axis(db, da, axis=-1))
        return int(out) if out.ndim == 0 else out

    def inv(self, a):
        da = self.decode(a)
        inv = np.empty_like(da)
        np.put_along_axis(inv, da, np.broadcast_to(np.arange(self.degree), da.shape), axis=-1)
        out = self.encode(inv)
        return int(out) if out.ndim == 0 else out

    def describe(self, code) -> str:
        img = [int(v) for v in self.decode(code)]
        seen = set()
        cycles = []
        for i in range(self.degree):
            if i in seen or img[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = img[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = img[j]
            cycles.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
        return "".join(cycles) or "()"


def perm(degree: int, cycles: str) -> int:
    """Code of the permutation given in 1-based cycle notation."""
    img = list(range(degree))
    for cyc in re.findall(r"\(([^()]*)\)", cycles):
        pts = [int(t) - 1 for t in re.split(r"[\s,]+", cyc.strip()) if t]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return int(np.dot(img, [degree**i for i in range(degree)]))


def perm_from_images(images) -> int:
    n = len(images)
    return int(np.dot(list(images), [n**i for i in range(n)]))


def perm_group(degree: int, *gens: str | int, label: str = "") -> GroupHandle:
    ops = PermOps(degree)
    codes = [perm(degree, g) if isinstance(g, str) else int(g) for g in gens]
    return close(codes or [ops.identity], ops, label=label)


def cyclic(n: int) -> GroupHandle:
    if n == 1:
        return perm_group(1, "()", label="C1")
    return perm_group(n, "(" + " ".join(str(i) for i in range(1, n + 1)) + ")", label=f"C{n}")


def dihedral(order: int) -> GroupHandle:
    """Dihedral group of the given order (>= 6) acting on a polygon."""
    n = order // 2
    if order % 2 or n < 3:
        raise ValueError("dihedral order must be even and at least 6")
    rot = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    refl = "".join(f"({i} {n + 2 - i})" for i in range(2, n // 2 + 2) if i < n + 2 - i)
    return perm_group(n, rot, refl or "()", label=f"D{order}")


def symmetric(n: int) -> GroupHandle:
    if n < 3:
        return perm_group(max(n, 1), "(1 2)" if n == 2 else "()", label=f"Sym({n})")
    return perm_group(n, "(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")", label=f"Sym({n})")


def alternating(n: int) -> GroupHandle:
    gens = [f"(1 2 {k})" for k in range(3, n + 1)]
    return perm_group(n, *gens, label=f"Alt({n})")


def klein_four() -> GroupHandle:
    return perm_group(4, "(1 2)(3 4)", "(1 3)(2 4)", label="V4")


def quaternion() -> GroupHandle:
    """Q8 in its regular representation on 8 points."""
    return perm_group(8, "(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)", label="Q8")


def frobenius20() -> GroupHandle:
    return perm_group(5, "(1 2 3 4 5)", "(2 3 5 4)", label="F20")


def sym3_wr_c2() -> GroupHandle:
    """Sym(3) wr C2 inside Sym(6), order 72."""
    return perm_group(6, "(1 2)", "(1 2 3)", "(1 4)(2 5)(3 6)", label="Sym(3) wr C2")


def _affine_perm(mat, shift, p: int) -> int:
    pts = [(x, y) for x in range(p) for y in range(p)]
    index = {pt: i for i, pt in enumerate(pts)}
    img = []
    for x, y in pts:
        nx = (mat[0][0] * x + mat[0][1] * y + shift[0]) % p
        ny = (mat[1][0] * x + mat[1][1] * y + shift[1]) % p
        img.append(index[(nx, ny)])
    return perm_from_images(img)


def c3sq_q8() -> GroupHandle:
    """The Frobenius group 3^2:Q8 of order 72, acting affinely on GF(3)^2."""
    ident = ((1, 0), (0, 1))
    gens = [
        _affine_perm(ident, (1, 0), 3),
        _affine_perm(ident, (0, 1), 3),
        _affine_perm(((0, 2), (1, 0)), (0, 0), 3),
        _affine_perm(((1, 1), (1, 2)), (0, 0), 3),
    ]
    return close(gens, PermOps(9), label="3^2:Q8")


def gl23() -> GroupHandle:
    """GL(2,3) acting on the 8 nonzero vectors of GF(3)^2."""
    vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}

    def act(mat):
        return perm_from_images(
            [index[((mat[0][0] * x + mat[0][1] * y) % 3, (mat[1][0] * x + mat[1][1] * y) % 3)] for x, y in vecs]
        )

    gens = [act(((1, 1), (0, 1))), act(((1, 0), (1, 1))), act(((2, 0), (0, 1)))]
    return close(gens, PermOps(8), label="GL(2,3)")


def direct_product_perm(A: GroupHandle, B: GroupHandle, label: str = "") -> GroupHandle:
    """A x B acting on the disjoint union of the two point sets."""
    na, nb = A.ops.degree, B.ops.degree
    n = na + nb
    gens = []
    for g in A.gens:
        img = list(A.ops.decode(g)) + list(range(na, n))
        gens.append(perm_from_images([int(v) for v in img]))
    for g in B.gens:
        img = list(range(na)) + [int(v) + na for v in B.ops.decode(g)]
        gens.append(perm_from_images(img))
    ops = PermOps(n)
    return close(gens or [ops.identity], ops, label=label)

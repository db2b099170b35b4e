"""The point stabilizer N of the Suzuki group Sz(r), r = 2^(2n+1).

Elements are triples (lam, a, b) with lam in GF(r)* and a, b in GF(r),
multiplied by

    (lam, a, b)(mu, c, d) = (lam mu, mu a + c, mu^(t+1) b + d + (mu a)^t c)

where t is the field automorphism x -> x^(2^(n+1)).  The triples with
lam = 1 form the Suzuki 2-group of order r^2 (the Frobenius kernel) and the
triples (lam, 0, 0) a cyclic complement of order r - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ca import is_ca
from .errors import BoundExceeded, CatalogInconsistency
from .field import FieldCtx, make_field
from .groups.core import GROUP_BOUND, GroupHandle, element_orders, noncommuting_pair
from .groups.frobenius import frobenius_structure


class SuzukiOps:
    """Triples coded as lam*r^2 + a*r + b."""

    def __init__(self, n: int):
        self.n = n
        self.field: FieldCtx = make_field(2, 2 * n + 1)
        self.r = self.field.q
        self.twist_exp = 2 ** (n + 1)
        self.identity = self.r * self.r

    def theta(self, x):
        return self.field.pow(x, self.twist_exp)

    def unpack(self, code):
        r = self.r
        code = np.asarray(code, dtype=np.int64)
        return code // (r * r), (code // r) % r, code % r

    def pack(self, lam, a, b):
        r = self.r
        out = (np.asarray(lam, dtype=np.int64) * r + a) * r + b
        return int(out) if np.ndim(out) == 0 else out

    def mul(self, x, y):
        F = self.field
        lam, a, b = self.unpack(x)
        mu, c, d = self.unpack(y)
        ma = F.mul(mu, a)
        mu_t1 = F.mul(self.theta(mu), mu)
        third = F.add(F.add(F.mul(mu_t1, b), d), F.mul(self.theta(ma), c))
        return self.pack(F.mul(lam, mu), F.add(ma, c), third)

    def inv(self, x):
        F = self.field
        lam, a, b = self.unpack(x)
        mu = F.inv(lam)
        ma = F.mul(mu, a)
        mu_t1 = F.mul(self.theta(mu), mu)
        third = F.add(F.mul(mu_t1, b), F.mul(self.theta(ma), ma))
        return self.pack(mu, ma, third)

    def describe(self, code) -> str:
        lam, a, b = (int(v) for v in self.unpack(code))
        return f"({lam},{a},{b})"


def build_stabilizer(n: int, bound: int = GROUP_BOUND) -> GroupHandle:
    if n < 1:
        raise ValueError("the Suzuki stabilizer needs n >= 1")
    ops = SuzukiOps(n)
    r = ops.r
    if r * r * (r - 1) > bound:
        raise BoundExceeded(f"|N| = {r * r * (r - 1)} exceeds bound {bound}")
    lam = np.arange(1, r, dtype=np.int64)
    ab = np.arange(r * r, dtype=np.int64)
    els = (lam[:, None] * (r * r) + ab[None, :]).ravel()
    g = ops.field.primitive_element()
    gens = [ops.pack(g, 0, 0), ops.pack(1, 1, 0), ops.pack(1, 0, 1)]
    gens += [ops.pack(1, 2**i, 0) for i in range(1, 2 * n + 1)]
    return GroupHandle(els, ops, gens, f"N(Sz({r}))")


def kernel(N: GroupHandle) -> GroupHandle:
    r = N.ops.r
    return GroupHandle(N.elements[N.elements < 2 * r * r], N.ops, label="K")


@dataclass
class SuzukiReport:
    n: int
    r: int
    order: int
    degree: int  # degree of the doubly transitive action, r^2 + 1
    kernel_order: int
    kernel_nonabelian: tuple[int, int] | None  # non-commuting pair in the kernel
    complement_order: int
    complement_generator: int | None  # element of order r - 1
    is_ca: bool
    ca_witness: int | None
    ca_pair: tuple[int, int] | None

    @property
    def checks(self) -> dict[str, bool]:
        r = self.r
        return {
            "frobenius": self.kernel_order == r * r and self.complement_order == r - 1,
            "kernel_nonabelian": self.kernel_nonabelian is not None,
            "complement_cyclic": self.complement_generator is not None,
            "not_ca": not self.is_ca,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_suzuki_lemma(n: int) -> SuzukiReport:
    N = build_stabilizer(n)
    r = N.ops.r
    F = frobenius_structure(N)
    if F is None:
        raise CatalogInconsistency(f"N(Sz({r})) has no Frobenius kernel")
    K, H = F.kernel, F.complement
    orders = element_orders(H)
    cyc = np.flatnonzero(orders == H.order)
    ca = is_ca(N)
    return SuzukiReport(
        n=n,
        r=r,
        order=N.order,
        degree=r * r + 1,
        kernel_order=K.order,
        kernel_nonabelian=noncommuting_pair(K),
        complement_order=H.order,
        complement_generator=int(H.elements[cyc[0]]) if cyc.size else None,
        is_ca=ca.is_ca,
        ca_witness=ca.witness,
        ca_pair=ca.pair,
    )

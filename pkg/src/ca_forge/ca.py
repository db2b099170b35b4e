"""The CA property, Schmidt's classification of CA-groups, and minimality verdicts.

CA is closed under subgroups: a non-central element h of H <= G is
non-central in G, and C_H(h) = C_G(h) ∩ H is a subgroup of the abelian
C_G(h).  It is also invariant under conjugation.  So a group is minimal
non-CA exactly when it is not CA and one subgroup from each conjugacy class
of maximal subgroups is CA.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .dickson import _pgl_embedded, applicable_classes, construct_class_rep
from .errors import BoundExceeded, NotAPrimePower
from .field import FieldCtx, is_prime, make_field, prime_power
from .groups.core import TABLE_LIMIT, GroupHandle, close, element_orders, is_abelian, is_normal, noncommuting_pair
from .groups.frobenius import frobenius_structure
from .groups.lattice import ORACLE_BOUND, subgroup_lattice
from .groups.structure import (
    Fingerprint,
    center,
    derived_subgroup,
    iter_classes,
    iso_fingerprint,
    preimage,
    quotient,
    sylow,
)
from .groups.perm import symmetric
from .linear import psl2, sl2

log = logging.getLogger(__name__)

CLASSIFIER_BOUND = 1200


@dataclass(frozen=True)
class CAReport:
    is_ca: bool
    witness: int | None = None  # non-central element with non-abelian centralizer
    checked_classes: int = 0
    pair: tuple[int, int] | None = None  # non-commuting pair inside C(witness)


# -- dense kernel -----------------------------------------------------------------


def commuting_matrix(G: GroupHandle) -> np.ndarray:
    if "commuting" not in G._cache:
        T = G.table
        G._cache["commuting"] = T == T.T
    return G._cache["commuting"]


def _bad_rows(B: np.ndarray) -> np.ndarray:
    """Non-central rows h of a commuting matrix whose centralizer is non-abelian.

    C(h) is non-abelian iff some y, z in C(h) fail to commute, i.e. iff
    sum_y B[h,y] (1 - B[y,z]) B[h,z] > 0 for some z.
    """
    M = B.astype(np.float32)
    N = (~B).astype(np.float32)
    return ((M @ N) * M).any(axis=1) & ~B.all(axis=1)


def ca_of_mask(B: np.ndarray, mask: np.ndarray) -> tuple[bool, int | None]:
    """CA test for the subgroup with carrier ``mask`` using G's commuting matrix."""
    idx = np.flatnonzero(mask)
    sub = B[np.ix_(idx, idx)]
    bad = np.flatnonzero(_bad_rows(sub))
    if bad.size:
        return False, int(idx[bad[0]])
    return True, None


def _witness_pair(G: GroupHandle, x: int) -> tuple[int, int] | None:
    if G.order <= TABLE_LIMIT:
        B = commuting_matrix(G)
        i = int(G.index(x))
        c = np.flatnonzero(B[i])
        sub = B[np.ix_(c, c)]
        ys, zs = np.nonzero(~sub)
        if ys.size:
            return int(G.elements[c[ys[0]]]), int(G.elements[c[zs[0]]])
        return None
    for cls in iter_classes(G):
        if cls.rep == x:
            return noncommuting_pair(cls.centralizer)
    return None


def is_ca(G: GroupHandle) -> CAReport:
    if "ca" in G._cache:
        return G._cache["ca"]
    if is_abelian(G):
        rep = CAReport(True, None, 0)
    elif G.order <= TABLE_LIMIT:
        B = commuting_matrix(G)
        bad = np.flatnonzero(_bad_rows(B))
        if bad.size:
            x = int(G.elements[bad[0]])
            rep = CAReport(False, x, int(bad[0]) + 1, _witness_pair(G, x))
        else:
            rep = CAReport(True, None, G.order)
    else:
        rep = _is_ca_classes(G)
    G._cache["ca"] = rep
    return rep


def _is_ca_classes(G: GroupHandle) -> CAReport:
    Z = center(G)
    n = 0
    for cls in iter_classes(G):
        n += 1
        if cls.rep in Z:
            continue
        pair = noncommuting_pair(cls.centralizer)
        if pair is not None:
            return CAReport(False, cls.rep, n, pair)
    return CAReport(True, None, n)


# -- Schmidt's classification --------------------------------------------------------


@dataclass(frozen=True)
class SchmidtLabel:
    label: str  # Abelian, Case1..Case7, NotCA, Unknown
    evidence: dict = field(default_factory=dict, compare=False)

    @property
    def case(self) -> int | None:
        return int(self.label[4:]) if self.label.startswith("Case") else None


def _case1(G: GroupHandle) -> dict | None:
    D = derived_subgroup(G)
    if D.order == G.order:
        return None
    # a normal subgroup of prime index contains G'; look inside G/G'
    Q = quotient(G, D)
    lat = subgroup_lattice(Q, Q.order)
    for i in lat.class_reps():
        H = lat.handle(i)
        k = Q.order // H.order
        if not is_prime(k):
            continue
        N = preimage(Q, H)
        if is_abelian(N):
            return {"index": k, "normal_order": N.order}
    return None


def _frobenius_mod_center(G: GroupHandle, Z: GroupHandle):
    Q = quotient(G, Z)
    F = frobenius_structure(Q)
    if F is None:
        return None
    return Q, preimage(Q, F.kernel), preimage(Q, F.complement)


def _case3(G: GroupHandle, Z: GroupHandle, K: GroupHandle, L: GroupHandle) -> dict | None:
    from .field import prime_factors

    if not is_abelian(L):
        return None
    for p in prime_factors(G.order):
        P = sylow(G, p)
        if P.order == 1 or not is_normal(G, P):
            continue
        PZ = close(list(P.gens) + list(Z.gens), G.ops) if Z.order > 1 else P
        if not PZ.same_carrier(K):
            continue
        if not is_ca(P).is_ca:
            continue
        ZP = center(P)
        if not np.array_equal(ZP.elements, np.intersect1d(P.elements, Z.elements)):
            continue
        orders = element_orders(L)
        H_els = L.elements[orders % p != 0]
        H = close(H_els, G.ops)
        HZ = close(list(H.gens) + list(Z.gens), G.ops) if Z.order > 1 else H
        if HZ.same_carrier(L):
            return {"p": p, "sylow_order": P.order, "h_order": H.order}
    return None


@lru_cache(maxsize=None)
def _sym4_fingerprint() -> Fingerprint:
    return iso_fingerprint(symmetric(4))


def _case4(G: GroupHandle, Z: GroupHandle) -> dict | None:
    if G.order // Z.order != 24:
        return None
    Q = quotient(G, Z)
    if iso_fingerprint(Q) != _sym4_fingerprint():
        return None
    V4 = derived_subgroup(derived_subgroup(Q))
    V = preimage(Q, V4)
    if is_abelian(V):
        return None
    return {"v_order": V.order}


def _case5(G: GroupHandle, Z: GroupHandle) -> dict | None:
    from .field import prime_factors

    fs = prime_factors(G.order // Z.order)
    if len(fs) != 1:
        return None
    p = fs[0]
    P = sylow(G, p)
    if is_abelian(P) or not is_normal(G, P) or not is_ca(P).is_ca:
        return None
    orders = element_orders(G)
    A_els = G.elements[orders % p != 0]
    A = close(A_els, G.ops)
    if A.order * P.order != G.order or not is_abelian(A):
        return None
    gp = np.array(P.gens, dtype=np.int64)
    ga = np.array(A.gens, dtype=np.int64)
    if gp.size and ga.size:
        if not np.array_equal(G.ops.mul(gp[:, None], ga[None, :]), G.ops.mul(ga[None, :], gp[:, None])):
            return None
    return {"p": p, "p_order": P.order, "a_order": A.order}


_PSL_REFS = (4, 5, 7, 8, 9, 11, 13)
_PGL_REFS = (5, 7, 9)
_SL_REFS = (4, 5, 7, 8, 9)


@lru_cache(maxsize=None)
def _ref_fingerprint(kind: str, q: int) -> Fingerprint:
    p, m = prime_power(q)
    if kind == "PSL":
        return iso_fingerprint(psl2(make_field(p, m)))
    if kind == "SL":
        return iso_fingerprint(sl2(make_field(p, m)))
    big = make_field(p, 2 * m)
    return iso_fingerprint(_pgl_embedded(big, m))


def _group_order(kind: str, q: int) -> int:
    full = q * (q * q - 1)
    return full // 2 if kind == "PSL" and q % 2 else full


def _case6(G: GroupHandle, Z: GroupHandle) -> dict | None:
    n = G.order // Z.order
    D = None
    for kind, refs in (("PSL", _PSL_REFS), ("PGL", _PGL_REFS)):
        for q in refs:
            if _group_order(kind, q) != n:
                continue
            Q = quotient(G, Z)
            if iso_fingerprint(Q) != _ref_fingerprint(kind, q):
                continue
            if q not in _SL_REFS:
                continue
            D = D or derived_subgroup(G)
            if D.order == _group_order("SL", q) and iso_fingerprint(D) == _ref_fingerprint("SL", q):
                return {"quotient": f"{kind}(2,{q})", "derived": f"SL(2,{q})"}
    return None


def schmidt_case(G: GroupHandle, bound: int = CLASSIFIER_BOUND) -> SchmidtLabel:
    """Lowest-numbered case of Schmidt's list that G satisfies.

    Case 7 (Schur cover of PSL(2,9)) is never certified; a CA group that
    matches no verifiable case is reported as Unknown.
    """
    if G.order > bound:
        raise BoundExceeded(f"classifier needs order <= {bound}, got {G.order}")
    rep = is_ca(G)
    if not rep.is_ca:
        return SchmidtLabel("NotCA", {"witness": rep.witness, "pair": rep.pair})
    if is_abelian(G):
        return SchmidtLabel("Abelian")
    ev = _case1(G)
    if ev is not None:
        return SchmidtLabel("Case1", ev)
    Z = center(G)
    frob = _frobenius_mod_center(G, Z)
    if frob is not None:
        _, K, L = frob
        if is_abelian(K) and is_abelian(L):
            return SchmidtLabel("Case2", {"kernel_order": K.order, "complement_order": L.order})
        ev = _case3(G, Z, K, L)
        if ev is not None:
            return SchmidtLabel("Case3", ev)
    for label, fn in (("Case4", _case4), ("Case5", _case5), ("Case6", _case6)):
        ev = fn(G, Z)
        if ev is not None:
            return SchmidtLabel(label, ev)
    return SchmidtLabel("Unknown", {"reason": "no verifiable case matched (case 7 is not constructed)"})


# -- minimality verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassCheck:
    case_id: int | None
    order: int
    multiplicity: int
    is_ca: bool
    description: str = ""


@dataclass
class MinimalityVerdict:
    q: int
    predicate_answer: bool
    predicate_reason: str
    computed_answer: bool
    method: str
    per_class: list[ClassCheck]
    reason_code: str
    group_is_ca: bool

    @property
    def agree(self) -> bool:
        return self.predicate_answer == self.computed_answer


def theorem_predicate(q: int) -> tuple[bool, str]:
    pp = prime_power(q)
    if pp is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    p, m = pp
    if m == 1:
        if q <= 5:
            return False, "prime-at-most-5"
        if (q * q - 1) % 16 == 0:
            return False, "16-divides-q2-1"
        return True, "clause1-prime"
    if p not in (3, 5):
        return False, "prime-power-base-not-3-or-5"
    if m == 2 or not is_prime(m):
        return False, "exponent-not-odd-prime"
    return True, "clause2-power-of-3" if p == 3 else "clause3-power-of-5"


def _field_for(q: int) -> FieldCtx:
    pp = prime_power(q)
    if pp is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    return make_field(*pp)


def is_minimal_non_ca_psl(ctx: FieldCtx) -> MinimalityVerdict:
    """Verdict by checking one rep of each applicable Dickson class."""
    q = ctx.q
    if q <= 3:
        raise ValueError("the maximal-class method needs q > 3")
    G = psl2(ctx)
    whole = is_ca(G)
    checks = []
    failing = None
    for spec in applicable_classes(ctx.p, ctx.m):
        H = construct_class_rep(ctx, spec)
        ok = is_ca(H).is_ca
        checks.append(ClassCheck(spec.case_id, H.order, spec.multiplicity, ok, spec.description))
        if not ok and failing is None:
            failing = spec
    if whole.is_ca:
        reason = "psl-is-ca"
    elif failing is not None:
        reason = f"case{failing.case_id}-not-ca"
    else:
        reason = "minimal-non-ca"
    computed = not whole.is_ca and failing is None
    pa, pr = theorem_predicate(q)
    return MinimalityVerdict(q, pa, pr, computed, "maximal-class", checks, reason, whole.is_ca)


def brute_force_minimal_non_ca(G: GroupHandle, bound: int = ORACLE_BOUND) -> bool:
    return _oracle_checks(G, bound)[0]


def _oracle_checks(G: GroupHandle, bound: int) -> tuple[bool, list[ClassCheck], str, bool]:
    if G.order > bound:
        raise BoundExceeded(f"oracle needs order <= {bound}, got {G.order}")
    whole = is_ca(G).is_ca
    lat = subgroup_lattice(G, bound)
    B = commuting_matrix(G)
    checks = []
    seen = set()
    failing = None
    for i in lat.maximal():
        cid = int(lat.class_ids[i])
        if cid in seen:
            continue
        seen.add(cid)
        ok, _ = ca_of_mask(B, lat.masks[i])
        conjugates = int(lat.class_members(cid).size)
        checks.append(ClassCheck(None, int(lat.orders[i]), 1, ok, f"{conjugates} conjugates"))
        if not ok and failing is None:
            failing = checks[-1]
    if whole:
        reason = "group-is-ca"
    elif failing is not None:
        reason = f"maximal-order-{failing.order}-not-ca"
    else:
        reason = "minimal-non-ca"
    return (not whole and failing is None), checks, reason, whole


def oracle_verdict(ctx: FieldCtx, bound: int = ORACLE_BOUND) -> MinimalityVerdict:
    G = psl2(ctx)
    ans, checks, reason, whole = _oracle_checks(G, bound)
    if reason == "group-is-ca":
        reason = "psl-is-ca"
    pa, pr = theorem_predicate(ctx.q)
    return MinimalityVerdict(ctx.q, pa, pr, ans, "oracle", checks, reason, whole)


def subgroup_closure_violations(G: GroupHandle, bound: int = ORACLE_BOUND) -> list[int]:
    """Orders of subgroups of a CA group G that fail to be CA (should be empty)."""
    lat = subgroup_lattice(G, bound)
    B = commuting_matrix(G)
    out = []
    for i in lat.class_reps():
        ok, _ = ca_of_mask(B, lat.masks[i])
        if not ok:
            out.append(int(lat.orders[i]))
    return out

"""Quick property checks runnable without pytest (``ca-forge selftest``)."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .ca import is_ca, schmidt_case, subgroup_closure_violations
from .dickson import verify_cover
from .field import make_field
from .groups import center, conjugacy_classes, frobenius_structure, is_normal
from .groups.perm import dihedral, frobenius20, quaternion, sym3_wr_c2, symmetric
from .linear import borel, psl2, sl2
from .suzuki import verify_suzuki_lemma


def _field_axioms() -> bool:
    for p, m in [(2, 3), (3, 2), (5, 1), (7, 2)]:
        F = make_field(p, m)
        x = F.elements()
        a, b = np.meshgrid(x, x, indexing="ij")
        if not np.array_equal(F.mul(a, b), F.mul(b, a)):
            return False
        nz = x[x != 0]
        if not np.all(F.mul(nz, F.inv(nz)) == 1):
            return False
        frob = F.pow(x, p)
        if np.unique(frob).size != F.q:
            return False
    return True


def _class_equation() -> bool:
    groups = [symmetric(4), sl2(make_field(5)), psl2(make_field(7)), borel(make_field(11))]
    return all(sum(s for _, s in conjugacy_classes(G)) == G.order for G in groups)


def _frobenius_invariants() -> bool:
    for G in [borel(make_field(7)), borel(make_field(13)), frobenius20()]:
        F = frobenius_structure(G)
        if F is None or not is_normal(G, F.kernel):
            return False
        if F.kernel.order * F.complement.order != G.order:
            return False
        if (F.kernel.order - 1) % F.complement.order:
            return False
    return True


def _schmidt_labels() -> bool:
    expected = [
        (dihedral(8), "Case1"),
        (frobenius20(), "Case2"),
        (sl2(make_field(5)), "Case6"),
        (symmetric(4), "NotCA"),
        (sym3_wr_c2(), "NotCA"),
    ]
    return all(schmidt_case(G).label == lab for G, lab in expected)


def _subgroup_closed() -> bool:
    for G in [quaternion(), dihedral(12), sl2(make_field(5)), psl2(make_field(7))]:
        if is_ca(G).is_ca and subgroup_closure_violations(G):
            return False
    return True


def _psl_center() -> bool:
    return all(center(psl2(make_field(q))).order == 1 for q in (5, 7, 11))


def _dickson_cover() -> bool:
    return all(verify_cover(make_field(*pm)).covered for pm in [(2, 2), (5, 1), (7, 1), (3, 2)])


def _suzuki() -> bool:
    return verify_suzuki_lemma(1).passed


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("field axioms and Frobenius map", _field_axioms),
    ("class equation", _class_equation),
    ("PSL(2,q) has trivial center", _psl_center),
    ("Frobenius decomposition invariants", _frobenius_invariants),
    ("Schmidt labels on reference groups", _schmidt_labels),
    ("CA is subgroup-closed", _subgroup_closed),
    ("Dickson cover at small q", _dickson_cover),
    ("Suzuki stabilizer n=1", _suzuki),
]


def run(echo=print) -> bool:
    ok = True
    for name, fn in CHECKS:
        try:
            res = fn()
        except Exception as exc:  # report and keep going
            res = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        ok &= res
        echo(f"[{'PASS' if res else 'FAIL'}] {name}")
    return ok

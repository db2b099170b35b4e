from collections import Counter
from itertools import combinations

import numpy as np
import pytest

from ca_forge.errors import BoundExceeded, NotASubgroup, NotNormal
from ca_forge.field import make_field
from ca_forge.groups import (
    all_subgroups,
    center,
    centralizer,
    class_data,
    close,
    conjugacy_classes,
    frobenius_structure,
    is_normal,
    iso_fingerprint,
    normal_closure,
    quotient,
    structure_probe,
    sylow,
)
from ca_forge.groups.core import element_orders
from ca_forge.groups.perm import (
    alternating,
    c3sq_q8,
    cyclic,
    dihedral,
    frobenius20,
    klein_four,
    perm,
    perm_group,
    quaternion,
    sym3_wr_c2,
    symmetric,
)
from ca_forge.linear import MatOps, borel, psl2, sl2


def _naive_closure(gens, ops):
    """Set-based closure with plain Python ints."""
    elems = {ops.identity}
    frontier = [ops.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(ops.mul(x, g))
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def _naive_subgroups(G):
    """Every subgroup as the closure of <= 2 elements (enough for 2-generated lattices)."""
    els = G.elements.tolist()
    out = {frozenset([G.identity])}
    for a in els:
        out.add(frozenset(_naive_closure([a], G.ops)))
    for a, b in combinations(els, 2):
        out.add(frozenset(_naive_closure([a, b], G.ops)))
    return out


def test_close_examples():
    S = symmetric(4)
    G = close([perm(4, "(1 2)"), perm(4, "(1 2 3 4)")], S.ops)
    assert G.order == 24
    assert set(G.elements.tolist()) == _naive_closure([perm(4, "(1 2)"), perm(4, "(1 2 3 4)")], S.ops)
    T = close([S.identity], S.ops)
    assert T.order == 1
    ops = MatOps(make_field(7), projective=False)
    C = close([ops.pack(1, 1, 0, 1)], ops)
    assert C.order == 7


def test_close_bound():
    S = symmetric(5)
    with pytest.raises(BoundExceeded):
        close(S.gens, S.ops, bound=50)


def test_carrier_invariants():
    for G in [symmetric(4), quaternion(), psl2(make_field(7)), borel(make_field(11))]:
        els = G.elements
        assert np.all(np.diff(els) > 0)
        assert G.identity in G
        assert G.contains(G.ops.inv(els)).all()
        rng = np.random.default_rng(3)
        a, b, c = rng.choice(els, size=(3, 50))
        assert np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
        assert np.all(G.mul(G.inv(els), els) == G.identity)


def test_centralizer_examples():
    S = symmetric(4)
    assert centralizer(S, S.identity).order == 24
    assert centralizer(S, perm(4, "(1 2)")).order == 4
    P = psl2(make_field(7))
    t1 = P.ops.canon(1, 1, 0, 1)
    assert centralizer(P, t1).order == 7
    with pytest.raises(NotASubgroup):
        centralizer(S, perm(5, "(1 2 3 4 5)"))


def test_centralizer_contains_x_and_center():
    G = sl2(make_field(5))
    Z = center(G)
    for x in G.elements[::7].tolist():
        C = centralizer(G, x)
        assert x in C and Z.issubset(C)


def test_structure_probe_examples():
    sp = structure_probe(cyclic(6))
    assert sp.is_abelian and sp.center_order == 6 and sp.derived_order == 1
    sp = structure_probe(alternating(4))
    assert sp.derived_order == 4 and not sp.is_perfect
    assert structure_probe(psl2(make_field(7))).is_perfect
    for G in [symmetric(4), sl2(make_field(3)), dihedral(12)]:
        sp = structure_probe(G)
        assert sum(s * k for s, k in sp.class_size_multiset) == G.order
        assert all(G.order % o == 0 for o, _ in sp.element_order_multiset)


def test_derived_subgroup_is_full_commutator_closure():
    for G in [symmetric(4), sl2(make_field(3)), frobenius20(), c3sq_q8()]:
        els = G.elements
        a, b = np.meshgrid(els, els, indexing="ij")
        ops = G.ops
        comm = ops.mul(ops.mul(ops.inv(a), ops.inv(b)), ops.mul(a, b))
        full = close(np.unique(comm), ops)
        assert full.order == structure_probe(G).derived_order


def test_center_is_full_scan():
    for G in [sl2(make_field(5)), quaternion(), dihedral(16)]:
        els = G.elements
        full = [x for x in els.tolist() if np.all(G.mul(x, els) == G.mul(els, x))]
        assert center(G).elements.tolist() == full


def test_conjugacy_classes_sym4():
    cls = conjugacy_classes(symmetric(4))
    assert sorted(s for _, s in cls) == [1, 3, 6, 6, 8]
    assert conjugacy_classes(close([symmetric(3).identity], symmetric(3).ops)) == [(symmetric(3).identity, 1)]


@pytest.mark.parametrize("G", [symmetric(4), psl2(make_field(7)), sl2(make_field(5)), borel(make_field(13))], ids=str)
def test_class_partition_and_orbit_stabilizer(G):
    data = class_data(G)
    allels = np.concatenate([c.elements for c in data])
    assert np.array_equal(np.sort(allels), G.elements)
    for c in data:
        assert c.rep == int(c.elements.min())
        assert c.size * centralizer(G, c.rep).order == G.order
        assert c.centralizer.same_carrier(centralizer(G, c.rep))


def test_class_naive_orbit():
    G = symmetric(4)
    for c in class_data(G):
        orbit = {int(G.conj(g, c.rep)) for g in G.elements.tolist()}
        assert orbit == set(c.elements.tolist())


def test_quotient_examples():
    S = symmetric(4)
    assert quotient(S, S).order == 1
    V4 = normal_closure(S, [perm(4, "(1 2)(3 4)")])
    assert V4.order == 4
    Q = quotient(S, V4)
    assert Q.order == 6 and not structure_probe(Q).is_abelian
    G = sl2(make_field(5))
    Q = quotient(G, center(G))
    assert Q.order == 60
    assert iso_fingerprint(Q) == iso_fingerprint(alternating(5))


def test_quotient_errors():
    S = symmetric(4)
    H = close([perm(4, "(1 2)")], S.ops)
    with pytest.raises(NotNormal):
        quotient(S, H)
    with pytest.raises(NotASubgroup):
        quotient(alternating(4), H)


def test_quotient_map_is_homomorphism():
    G = sl2(make_field(7))
    Q = quotient(G, center(G))
    cmin = Q.ops.coset_min
    rng = np.random.default_rng(4)
    a, b = rng.choice(G.elements, size=(2, 100))
    lhs = cmin[G.index(G.mul(a, b))]
    rhs = Q.mul(cmin[G.index(a)], cmin[G.index(b)])
    assert np.array_equal(lhs, rhs)


def _frob_ok(G, F):
    K, H = F.kernel, F.complement
    assert is_normal(G, K) and 1 < K.order < G.order
    assert K.order * H.order == G.order
    assert (K.order - 1) % H.order == 0
    for g in G.elements.tolist():
        conj = np.unique(G.conj(g, H.elements))
        assert np.count_nonzero(K.contains(conj)) == 1


@pytest.mark.parametrize(
    "G,k,h",
    [(symmetric(3), 3, 2), (frobenius20(), 5, 4), (c3sq_q8(), 9, 8), (alternating(4), 4, 3), (dihedral(10), 5, 2)],
    ids=["S3", "F20", "C3^2:Q8", "A4", "D10"],
)
def test_frobenius_examples(G, k, h):
    F = frobenius_structure(G)
    assert (F.kernel.order, F.complement.order) == (k, h)
    _frob_ok(G, F)


def test_frobenius_borel():
    for q, k in [(7, 7), (11, 11), (13, 13)]:
        G = borel(make_field(q))
        F = frobenius_structure(G)
        assert F.kernel.order == k and F.complement.order == G.order // k
        _frob_ok(G, F)


@pytest.mark.parametrize("G", [symmetric(4), dihedral(8), quaternion(), cyclic(5), sl2(make_field(3))], ids=str)
def test_not_frobenius(G):
    assert frobenius_structure(G) is None


def test_frobenius_kernel_by_definition():
    # the kernel found must be the only normal subgroup satisfying the definition
    G = c3sq_q8()
    F = frobenius_structure(G)
    for H in all_subgroups(G):
        if 1 < H.order < G.order and is_normal(G, H):
            good = all(centralizer(G, x).issubset(H) for x in H.elements.tolist() if x != G.identity)
            assert good == H.same_carrier(F.kernel)


@pytest.mark.parametrize(
    "G,count",
    [(cyclic(7), 2), (symmetric(4), 30), (alternating(5), 59), (dihedral(8), 10), (quaternion(), 6)],
    ids=["C7", "S4", "A5", "D8", "Q8"],
)
def test_all_subgroups_counts(G, count):
    assert len(all_subgroups(G)) == count


@pytest.mark.parametrize("G", [symmetric(4), dihedral(12), alternating(4), quaternion(), frobenius20()], ids=str)
def test_all_subgroups_match_naive(G):
    mine = {frozenset(H.elements.tolist()) for H in all_subgroups(G)}
    assert mine == _naive_subgroups(G)


def test_all_subgroups_closed_and_conjugation_stable():
    G = symmetric(4)
    subs = all_subgroups(G)
    keys = {H.key for H in subs}
    for H in subs:
        assert set(G.mul(H.elements[:, None], H.elements[None, :]).ravel().tolist()) == set(H.elements.tolist())
        for g in G.gens:
            conj = np.unique(G.conj(g, H.elements))
            assert conj.tobytes() in keys


def test_subgroup_lattice_bound():
    with pytest.raises(BoundExceeded):
        all_subgroups(symmetric(5), bound=100)


def test_sylow():
    S = symmetric(4)
    assert sylow(S, 5).order == 1
    assert sylow(S, 2).order == 8
    assert sylow(S, 3).order == 3
    assert sylow(psl2(make_field(7)), 7).order == 7
    assert sylow(sl2(make_field(5)), 2).order == 8
    P = sylow(sym3_wr_c2(), 2)
    assert P.order == 8
    orders = element_orders(P)
    assert all(o in (1, 2, 4, 8) for o in orders.tolist())


def test_fingerprints():
    S = symmetric(4)
    other = close([perm(4, "(1 2 3)"), perm(4, "(3 4)")], S.ops)
    assert iso_fingerprint(S) == iso_fingerprint(other)
    assert iso_fingerprint(psl2(make_field(5))) == iso_fingerprint(alternating(5))
    C4 = cyclic(4)
    assert iso_fingerprint(C4) != iso_fingerprint(klein_four())
    assert Counter(element_orders(C4).tolist()) == Counter([1, 2, 4, 4])


def test_perm_group_from_cycles():
    G = perm_group(5, "(1 2 3 4 5)", "(1 2)")
    assert G.order == 120
    assert G.describe(perm(5, "(1 3)(2 4)")) == "(1 3)(2 4)"

import numpy as np
import pytest

from ca_forge.ca import (
    _case5,
    _is_ca_classes,
    brute_force_minimal_non_ca,
    is_ca,
    is_minimal_non_ca_psl,
    oracle_verdict,
    schmidt_case,
    subgroup_closure_violations,
    theorem_predicate,
)
from ca_forge.errors import BoundExceeded, NotAPrimePower
from ca_forge.field import make_field, prime_power
from ca_forge.groups import all_subgroups, center
from ca_forge.groups.perm import (
    alternating,
    c3sq_q8,
    cyclic,
    dihedral,
    direct_product_perm,
    frobenius20,
    gl23,
    quaternion,
    sym3_wr_c2,
    symmetric,
)
from ca_forge.linear import borel, psl2, sl2


def F(q):
    return make_field(*prime_power(q))


def naive_is_ca(G):
    """Definition, with Python sets: every non-central element has an abelian centralizer."""
    els = G.elements.tolist()
    mul = lambda a, b: int(G.mul(a, b))
    cent = lambda x: [g for g in els if mul(g, x) == mul(x, g)]
    for x in els:
        c = cent(x)
        if len(c) == len(els):
            continue
        for i, y in enumerate(c):
            for z in c[i + 1 :]:
                if mul(y, z) != mul(z, y):
                    return False
    return True


SMALL = {
    "C6": cyclic(6),
    "D8": dihedral(8),
    "D12": dihedral(12),
    "Q8": quaternion(),
    "A4": alternating(4),
    "S4": symmetric(4),
    "F20": frobenius20(),
    "SL(2,3)": sl2(F(3)),
    "GL(2,3)": gl23(),
    "S3wrC2": sym3_wr_c2(),
    "C3^2:Q8": c3sq_q8(),
    "A5": alternating(5),
    "B(7)": borel(F(7)),
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_is_ca_matches_definition(name):
    G = SMALL[name]
    rep = is_ca(G)
    assert rep.is_ca == naive_is_ca(G)
    if not rep.is_ca:
        x = rep.witness
        assert x not in center(G)
        y, z = rep.pair
        assert int(G.mul(x, y)) == int(G.mul(y, x)) and int(G.mul(x, z)) == int(G.mul(z, x))
        assert int(G.mul(y, z)) != int(G.mul(z, y))


@pytest.mark.parametrize("name", sorted(SMALL))
def test_class_path_matches_dense_path(name):
    G = SMALL[name]
    assert _is_ca_classes(G).is_ca == is_ca(G).is_ca


def test_is_ca_examples():
    assert is_ca(cyclic(12)).is_ca
    assert not is_ca(symmetric(4)).is_ca
    assert is_ca(alternating(5)).is_ca
    assert is_ca(sl2(F(5))).is_ca
    assert not is_ca(sym3_wr_c2()).is_ca
    assert not is_ca(c3sq_q8()).is_ca


def test_is_ca_conjugation_invariant():
    G = psl2(F(7))
    rng = np.random.default_rng(7)
    for H in all_subgroups(G)[::9]:
        g = int(rng.choice(G.elements))
        Hg = G.subgroup(G.conj(g, H.elements))
        assert is_ca(Hg).is_ca == is_ca(H).is_ca


CORPUS_CA = ["C6", "D8", "D12", "Q8", "A4", "F20", "SL(2,3)", "GL(2,3)", "A5", "B(7)"]


@pytest.mark.parametrize("name", CORPUS_CA)
def test_subgroup_closed(name):
    G = SMALL[name]
    assert is_ca(G).is_ca
    assert subgroup_closure_violations(G) == []
    for H in all_subgroups(G):
        assert is_ca(H).is_ca


@pytest.mark.parametrize(
    "G,label",
    [
        (dihedral(8), "Case1"),
        (quaternion(), "Case1"),
        (frobenius20(), "Case2"),
        (borel(F(13)), "Case2"),
        (sl2(F(3)), "Case3"),
        (gl23(), "Case4"),
        (sl2(F(5)), "Case6"),
        (sl2(F(7)), "Case6"),
        (alternating(5), "Case6"),
        (symmetric(4), "NotCA"),
        (sym3_wr_c2(), "NotCA"),
        (cyclic(9), "Abelian"),
    ],
    ids=lambda v: getattr(v, "label", v) if not isinstance(v, str) else v,
)
def test_schmidt_labels(G, label):
    assert schmidt_case(G).label == label


def test_schmidt_case5_direct_product():
    G = direct_product_perm(dihedral(8), cyclic(3))
    assert is_ca(G).is_ca
    ev = _case5(G, center(G))
    assert ev == {"p": 2, "p_order": 8, "a_order": 3}
    # the lowest case wins: there is an abelian normal subgroup of index 2
    assert schmidt_case(G).label == "Case1"


def test_schmidt_bound():
    with pytest.raises(BoundExceeded):
        schmidt_case(psl2(F(13)), bound=1000)


@pytest.mark.parametrize(
    "q,ans,reason",
    [
        (11, True, "clause1-prime"),
        (17, False, "16-divides-q2-1"),
        (27, True, "clause2-power-of-3"),
        (9, False, "exponent-not-odd-prime"),
        (125, True, "clause3-power-of-5"),
        (49, False, "prime-power-base-not-3-or-5"),
        (5, False, "prime-at-most-5"),
        (243, True, "clause2-power-of-3"),
        (81, False, "exponent-not-odd-prime"),
    ],
)
def test_theorem_predicate(q, ans, reason):
    assert theorem_predicate(q) == (ans, reason)


def test_theorem_predicate_errors():
    with pytest.raises(NotAPrimePower):
        theorem_predicate(6)


def test_minimal_maximal_class_examples():
    v = is_minimal_non_ca_psl(F(11))
    assert v.computed_answer and v.agree
    v = is_minimal_non_ca_psl(F(7))
    assert not v.computed_answer and v.reason_code == "case5-not-ca"
    v = is_minimal_non_ca_psl(F(8))
    assert not v.computed_answer and v.reason_code == "psl-is-ca"


def test_brute_force_examples():
    assert not brute_force_minimal_non_ca(alternating(5))
    assert brute_force_minimal_non_ca(symmetric(4))
    assert not brute_force_minimal_non_ca(psl2(F(7)))


def test_brute_force_definition_on_sym4():
    # every proper subgroup CA, the group itself not
    G = symmetric(4)
    proper = [H for H in all_subgroups(G) if H.order < G.order]
    assert all(naive_is_ca(H) for H in proper)
    assert not naive_is_ca(G)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13])
def test_methods_agree(q):
    a = oracle_verdict(F(q))
    b = is_minimal_non_ca_psl(F(q))
    assert a.computed_answer == b.computed_answer == theorem_predicate(q)[0]

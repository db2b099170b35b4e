import numpy as np
import pytest

from ca_forge.errors import BoundExceeded
from ca_forge.field import make_field, prime_power
from ca_forge.groups import center, is_abelian, is_normal, iso_fingerprint, quotient, structure_probe
from ca_forge.groups.perm import alternating
from ca_forge.linear import Mat2, MatOps, borel, canonicalize, det, diagonal, negate, psl2, sl2, unipotent


def F(q):
    return make_field(*prime_power(q))


def _naive_sl2_prime(p):
    """SL(2,p) by brute force over all 2x2 matrices mod p."""
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        out.append(((a * p + b) * p + c) * p + d)
    return sorted(out)


@pytest.mark.parametrize("q,order", [(2, 6), (3, 24), (4, 60), (5, 120), (7, 336), (8, 504), (9, 720)])
def test_sl2_orders(q, order):
    assert sl2(F(q)).order == order


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sl2_matches_brute_force(p):
    assert sl2(make_field(p)).elements.tolist() == _naive_sl2_prime(p)


def test_sl2_mul_matches_integer_matrices():
    p = 11
    G = sl2(make_field(p))
    rng = np.random.default_rng(5)
    for x, y in rng.choice(G.elements, size=(50, 2)).tolist():
        A = np.array(G.ops.matrix(x)).reshape(2, 2)
        B = np.array(G.ops.matrix(y)).reshape(2, 2)
        assert G.ops.matrix(G.mul(x, y)) == Mat2(*((A @ B) % p).ravel().tolist())


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13, 16, 25, 27])
def test_psl2_order_and_center(q):
    G = psl2(F(q))
    assert G.order == q * (q * q - 1) // (2 if q % 2 else 1)
    assert center(G).order == 1
    S = sl2(F(q))
    assert center(S).order == (2 if q % 2 else 1)


def test_psl2_examples():
    assert psl2(F(7)).order == 168
    assert psl2(F(8)).order == sl2(F(8)).order
    assert iso_fingerprint(psl2(F(5))) == iso_fingerprint(alternating(5))


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_sl_mod_center_is_psl(q):
    S = sl2(F(q))
    assert iso_fingerprint(quotient(S, center(S))) == iso_fingerprint(psl2(F(q)))


@pytest.mark.parametrize("q,perfect", [(2, False), (3, False), (4, True), (5, True), (7, True), (8, True), (9, True)])
def test_perfectness(q, perfect):
    assert structure_probe(psl2(F(q))).is_perfect == perfect


def test_sl9_perfect():
    sp = structure_probe(sl2(F(9)))
    assert sp.order == 720 and sp.is_perfect


def test_psl_bound():
    with pytest.raises(BoundExceeded):
        psl2(F(7), bound=100)
    with pytest.raises(BoundExceeded):
        sl2(F(257))  # 257 * (257**2 - 1) > 2**24


@pytest.mark.parametrize("q,order", [(7, 21), (2, 2), (11, 55), (9, 36), (8, 56)])
def test_borel_orders(q, order):
    assert borel(F(q)).order == order


@pytest.mark.parametrize("q", [5, 7, 9, 11, 16])
def test_borel_structure(q):
    g = 2 if q % 2 else 1
    B = borel(F(q))
    T = unipotent(F(q))
    D = diagonal(F(q))
    assert T.issubset(B) and D.issubset(B)
    assert T.order == q and is_abelian(T) and is_normal(B, T)
    assert D.order == (q - 1) // g and is_abelian(D)
    assert B.issubset(psl2(F(q)))


def test_canonicalize():
    ctx = make_field(7)
    I = Mat2(1, 0, 0, 1)
    assert canonicalize(I, ctx) == I
    G = sl2(ctx)
    rng = np.random.default_rng(6)
    for code in rng.choice(G.elements, size=100).tolist():
        M = G.ops.matrix(code)
        c = canonicalize(M, ctx)
        assert c == canonicalize(negate(M, ctx), ctx)
        assert canonicalize(c, ctx) == c
        assert c in (M, negate(M, ctx))
    with pytest.raises(ValueError):
        canonicalize(Mat2(2, 0, 0, 1), ctx)


def test_canonicalize_char2_identity():
    ctx = make_field(2, 3)
    for code in sl2(ctx).elements[::17].tolist():
        M = MatOps(ctx, False).matrix(code)
        assert canonicalize(M, ctx) == M


def test_sign_rule():
    # first nonzero entry has the smaller code of {v, -v}
    ctx = make_field(3, 2)
    G = psl2(ctx)
    a, b, c, d = G.ops.unpack(G.elements)
    lead = np.where(a != 0, a, np.where(b != 0, b, np.where(c != 0, c, d)))
    assert np.all(lead < ctx.neg(lead))
    assert all(det(G.ops.matrix(x), ctx) == 1 for x in G.elements[::11].tolist())

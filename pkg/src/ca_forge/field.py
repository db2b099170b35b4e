"""Finite fields GF(p^m) with integer-coded elements.

An element is the integer ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` where
``c_0 + c_1 x + ... + c_{m-1} x^{m-1}`` is its residue modulo the field's
defining polynomial.  Code 0 is zero and code 1 is one.  Every arithmetic
method accepts Python ints or numpy integer arrays (broadcasting applies)
and returns the same kind of object.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from .errors import BoundExceeded

FIELD_BOUND = 2**20
TABLE_BOUND = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return p, m


# -- polynomials over GF(p), coefficient lists with constant term first --------

def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    r = list(num)
    dlen = len(den)
    lead_inv = pow(den[-1], p - 2, p)
    while len(r) >= dlen:
        c = r[-1] * lead_inv % p
        if c:
            shift = len(r) - dlen
            for i, dc in enumerate(den):
                r[shift + i] = (r[shift + i] - c * dc) % p
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_rem(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """The monic irreducible of degree m whose base-p code is smallest."""
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        poly = low + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldCtx:
    """GF(p^m) with cached tables.

    Tables (addition and multiplication) are materialized for q <= 4096;
    larger fields fall back to digit-wise polynomial arithmetic.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = p**m
        self._pows = np.array([p**i for i in range(m)], dtype=np.int64)
        self.tabulated = self.q <= TABLE_BOUND
        if self.tabulated:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.m))

    # -- encoding -------------------------------------------------------------

    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pows) % self.p

    def from_digits(self, digs: np.ndarray):
        return (np.asarray(digs, dtype=np.int64) * self._pows).sum(axis=-1)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # -- table construction -------------------------------------------------------

    def _build_tables(self) -> None:
        q = self.q
        els = np.arange(q, dtype=np.int64)
        if self.p == 2:
            add = els[:, None] ^ els[None, :]
        else:
            add = np.zeros((q, q), dtype=np.int64)
            for i in range(self.m):
                pw = self.p**i
                add += (((els[:, None] // pw) % self.p + (els[None, :] // pw) % self.p) % self.p) * pw
        g = self._find_primitive_slow()
        exp = np.zeros(q - 1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            x = int(self._poly_mul(np.int64(x), np.int64(g)))
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        mul = np.zeros((q, q), dtype=np.int64)
        nz = els[1:]
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = exp[(-log[nz]) % (q - 1)]
        dt = np.int64 if q <= 1024 else np.int32
        self._add = add.astype(dt)
        self._mul = mul.astype(dt)
        self._neg = np.ascontiguousarray(add.argmin(axis=1)).astype(np.int64)
        self._inv = inv
        self._exp = exp
        self._log = log
        self._primitive = g
        for t in (self._add, self._mul, self._neg, self._inv, self._exp, self._log):
            t.flags.writeable = False

    def _find_primitive_slow(self) -> int:
        q = self.q
        if q == 2:
            return 1
        fs = prime_factors(q - 1)
        for g in range(2, q):
            if all(self._poly_pow(g, (q - 1) // f) != 1 for f in fs):
                return g
        raise AssertionError("multiplicative group is not cyclic")

    # -- digit-wise arithmetic (fallback and table builder) -----------------------

    def _poly_mul(self, a, b):
        p, m = self.p, self.m
        da = self.digits(a)
        db = self.digits(b)
        shape = np.broadcast_shapes(da.shape[:-1], db.shape[:-1])
        prod = np.zeros(shape + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                prod[..., i + j] += da[..., i] * db[..., j]
        prod %= p
        mod = np.array(self.modulus[:m], dtype=np.int64)
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[..., k].copy()
            prod[..., k - m : k] = (prod[..., k - m : k] - c[..., None] * mod) % p
        return self.from_digits(prod[..., :m])

    def _poly_pow(self, a, e: int):
        result = np.ones_like(np.asarray(a, dtype=np.int64))
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            e >>= 1
        return result

    # -- public arithmetic ------------------------------------------------------

    def add(self, a, b):
        if self.tabulated:
            return _ret(self._add[a, b])
        if self.p == 2:
            return _ret(np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))
        return _ret(self.from_digits((self.digits(a) + self.digits(b)) % self.p))

    def neg(self, a):
        if self.tabulated:
            return _ret(self._neg[a])
        return _ret(self.from_digits((-self.digits(a)) % self.p))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.tabulated:
            return _ret(self._mul[a, b])
        return _ret(self._poly_mul(a, b))

    def inv(self, a):
        arr = np.asarray(a)
        if np.any(arr == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.tabulated:
            return _ret(self._inv[a])
        return _ret(self._poly_pow(a, self.q - 2))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.tabulated:
            a = np.asarray(a, dtype=np.int64)
            out = np.where(a == 0, 0 if e else 1, self._exp[(self._log[a] * e) % (self.q - 1)])
            return _ret(out)
        return _ret(self._poly_pow(a, e))

    def scalar(self, k: int) -> int:
        """The image of the integer k under Z -> GF(p) -> GF(q)."""
        return k % self.p

    def primitive_element(self) -> int:
        if self.tabulated:
            return self._primitive
        return self._find_primitive_slow()

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        for f in prime_factors(self.q - 1):
            while n % f == 0 and int(self.pow(a, n // f)) == 1:
                n //= f
        return n

    # -- squares --------------------------------------------------------------

    @cached_property
    def sqrt_table(self) -> np.ndarray:
        """``sqrt_table[a]`` is the smallest-code root of a, or -1."""
        els = self.elements()
        sq = np.asarray(self.mul(els, els), dtype=np.int64)
        roots = np.full(self.q, self.q, dtype=np.int64)
        np.minimum.at(roots, sq, els)
        roots[roots == self.q] = -1
        roots.flags.writeable = False
        return roots

    def check(self, *codes) -> None:
        for c in codes:
            arr = np.asarray(c)
            if np.any(arr < 0) or np.any(arr >= self.q):
                raise ValueError(f"invalid element code for {self!r}: {c}")


def _ret(x):
    if isinstance(x, np.ndarray) and x.ndim == 0:
        return int(x)
    if isinstance(x, np.generic):
        return int(x)
    if isinstance(x, np.ndarray) and x.dtype != np.int64:
        return x.astype(np.int64)
    return x


_FIELDS: dict[tuple[int, int], FieldCtx] = {}


def make_field(p: int, m: int = 1, bound: int = FIELD_BOUND) -> FieldCtx:
    """Build (or fetch the cached) GF(p^m).

    The modulus is the monic irreducible of degree m with the smallest
    base-p code, constant term as least significant digit.  For m == 1 this
    is the polynomial x.
    """
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"characteristic must be prime, got {p!r}")
    if m < 1:
        raise ValueError("extension degree must be at least 1")
    if p**m > bound:
        raise BoundExceeded(f"field order {p}^{m} exceeds bound {bound}")
    key = (int(p), int(m))
    if key not in _FIELDS:
        _FIELDS[key] = FieldCtx(int(p), int(m), smallest_irreducible(int(p), int(m)))
    return _FIELDS[key]


def field_arith(ctx: FieldCtx, op: str, a: int, b: int | None = None) -> int:
    ctx.check(a)
    if op in ("add", "mul"):
        if b is None:
            raise ValueError(f"{op} needs two operands")
        ctx.check(b)
        return getattr(ctx, op)(a, b)
    if op == "neg":
        return ctx.neg(a)
    if op == "inv":
        return ctx.inv(a)
    raise ValueError(f"unknown field operation {op!r}")


def square_info(ctx: FieldCtx, a: int) -> tuple[bool, int | None]:
    """Return ``(is_square, root)``; the root is the smaller-code one."""
    ctx.check(a)
    r = int(ctx.sqrt_table[a])
    if r < 0:
        return False, None
    return True, r


def subfield(ctx: FieldCtx, n: int) -> np.ndarray:
    """Sorted codes of GF(p^n) inside ctx: the fixed points of x -> x^(p^n)."""
    if n < 1 or ctx.m % n:
        raise ValueError(f"{n} does not divide the extension degree {ctx.m}")
    els = ctx.elements()
    fixed = els[np.asarray(ctx.pow(els, ctx.p**n)) == els]
    assert fixed.size == ctx.p**n
    return fixed

"""Finite fields as explicit towers.

Two concrete kinds share one small protocol (zero/one/add/sub/mul/neg/inv/
pow_/from_int/elements plus char, order, degree): PrimeField with int
elements, and ExtField = base[x]/(f) with fixed-length tuples of base
elements.  Residue fields of places are built as ExtField over whatever
base the curve or number ring dictates, so the modulus is an argument, not
something this module chooses.  The GF factory covers the non-prime sizes
needed for constant fields through a fixed table of primitive moduli.

Field objects are interned by their construction data, so identity works
as equality and per-field caches (generator, dlog tables) stick.
"""

from __future__ import annotations

from itertools import product as _iproduct

from sympy import factorint, isprime, primitive_root

from . import fqpoly
from .errors import OutOfSupportedRange, ZeroElement

# primitive monic moduli, ascending coefficients
_EXT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}

_DLOG_CAP = 1 << 20


class PrimeField:
    def __init__(self, p: int):
        self.p = p
        self.char = p
        self.order = p
        self.degree = 1
        self.base = None
        self.var = None
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow_(self, a, e: int):
        return pow(a, e, self.p)

    def from_int(self, n: int):
        return n % self.p

    def elements(self):
        return iter(range(self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtField:
    def __init__(self, base, modulus: tuple, var: str = "a"):
        modulus = fqpoly.trim(base, modulus)
        k = fqpoly.deg(modulus)
        if k < 2:
            raise ValueError("extension modulus must have degree >= 2")
        if modulus[-1] != base.one:
            raise ValueError("extension modulus must be monic")
        if not fqpoly.is_irreducible(base, modulus):
            raise ValueError("extension modulus must be irreducible")
        self.base = base
        self.modulus = modulus
        self.k = k
        self.degree = k
        self.char = base.char
        self.order = base.order ** k
        self.var = var
        self.zero = (base.zero,) * k
        self.one = (base.one,) + (base.zero,) * (k - 1)
        self.x = tuple(base.one if i == 1 else base.zero for i in range(k))
        # rows[j] = x^(k+j) reduced mod f, used to fold the product tail
        top = tuple(base.neg(c) for c in modulus[:k])
        rows = [top]
        for _ in range(k - 2):
            prev = rows[-1]
            cur = [base.zero] + list(prev[:-1])
            if prev[-1] != base.zero:
                for j in range(k):
                    cur[j] = base.add(cur[j], base.mul(prev[-1], top[j]))
            rows.append(tuple(cur))
        self._red = rows

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B, k = self.base, self.k
        conv = [B.zero] * (2 * k - 1)
        for i, ca in enumerate(a):
            if ca == B.zero:
                continue
            for j, cb in enumerate(b):
                if cb != B.zero:
                    conv[i + j] = B.add(conv[i + j], B.mul(ca, cb))
        out = conv[:k]
        for i in range(k, 2 * k - 1):
            t = conv[i]
            if t == B.zero:
                continue
            row = self._red[i - k]
            for j in range(k):
                out[j] = B.add(out[j], B.mul(t, row[j]))
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        s = fqpoly.inv_mod(self.base, fqpoly.trim(self.base, a), self.modulus)
        return self.from_poly(s)

    def pow_(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def from_int(self, n: int):
        return self.embed(self.base.from_int(n))

    def embed(self, c):
        return (c,) + (self.base.zero,) * (self.k - 1)

    def from_poly(self, cs: tuple):
        """Coefficient tuple over the base (any degree) -> reduced element."""
        cs = fqpoly.mod(self.base, fqpoly.trim(self.base, cs), self.modulus)
        return tuple(cs) + (self.base.zero,) * (self.k - len(cs))

    def lift(self, a) -> tuple:
        """Element -> trimmed coefficient tuple for fqpoly interop."""
        return fqpoly.trim(self.base, a)

    def elements(self):
        for t in _iproduct(list(self.base.elements()), repeat=self.k):
            yield t[::-1]

    def __repr__(self):
        return f"GF({self.order})"


_PRIME_CACHE: dict[int, PrimeField] = {}
_EXT_CACHE: dict = {}
_GF_CACHE: dict = {}


def prime_field(p: int) -> PrimeField:
    F = _PRIME_CACHE.get(p)
    if F is None:
        if p < 2 or not isprime(p):
            raise ValueError(f"{p} is not prime")
        F = _PRIME_CACHE[p] = PrimeField(p)
    return F


def ext_field(base, modulus: tuple, var: str = "a") -> ExtField:
    key = (base, tuple(modulus), var)
    F = _EXT_CACHE.get(key)
    if F is None:
        F = _EXT_CACHE[key] = ExtField(base, tuple(modulus), var)
    return F


def GF(q: int):
    F = _GF_CACHE.get(q)
    if F is not None:
        return F
    fac = factorint(q)
    if len(fac) != 1:
        raise OutOfSupportedRange(f"{q} is not a prime power")
    p, k = next(iter(fac.items()))
    if k == 1:
        F = prime_field(p)
    elif (p, k) in _EXT_MODULI:
        B = prime_field(p)
        F = ext_field(B, tuple(B.from_int(c) for c in _EXT_MODULI[(p, k)]))
    else:
        raise OutOfSupportedRange(f"no modulus on file for GF({q})")
    _GF_CACHE[q] = F
    return F


def generator(F):
    """A fixed multiplicative generator; cached on the field."""
    g = getattr(F, "_gen", None)
    if g is not None:
        return g
    n = F.order - 1
    radicals = [n // ell for ell in factorint(n)] if n > 1 else []

    def full_order(x):
        return x != F.zero and all(F.pow_(x, e) != F.one for e in radicals)

    if F.base is None:
        g = F.from_int(primitive_root(F.p)) if F.p > 2 else F.one
        assert full_order(g)
    elif full_order(F.x):
        g = F.x
    else:
        g = next(x for x in F.elements() if full_order(x))
    F._gen = g
    return g


def dlog(F, a, g=None) -> int:
    """Exponent of a on the generator, by cached exhaustive table."""
    if a == F.zero:
        raise ZeroElement("discrete log of zero")
    if F.order > _DLOG_CAP:
        raise OutOfSupportedRange(f"dlog table for order {F.order} too large")
    if g is None:
        g = generator(F)
    tables = getattr(F, "_dlog_tables", None)
    if tables is None:
        tables = F._dlog_tables = {}
    tbl = tables.get(g)
    if tbl is None:
        tbl = {}
        cur = F.one
        for k in range(F.order - 1):
            tbl[cur] = k
            cur = F.mul(cur, g)
        tables[g] = tbl
    try:
        return tbl[a]
    except KeyError:
        raise ValueError("element outside the cyclic group of the base") from None


def norm_to_base(F: ExtField, a):
    """Product of the base-conjugates of a, landing in F.base."""
    if a == F.zero:
        return F.base.zero
    e = (F.order - 1) // (F.base.order - 1)
    t = F.pow_(a, e)
    assert all(c == F.base.zero for c in t[1:])
    return t[0]


def fmt_element(F, a) -> str:
    """Readable polynomial form, innermost variable per tower level."""
    if F.base is None:
        return str(a)
    terms = []
    for i in range(F.k - 1, -1, -1):
        c = a[i]
        if c == F.base.zero:
            continue
        cs = fmt_element(F.base, c)
        if i == 0:
            terms.append(cs)
            continue
        xp = F.var if i == 1 else f"{F.var}^{i}"
        if cs == "1":
            terms.append(xp)
        elif any(s in cs for s in "+-"):
            terms.append(f"({cs})*{xp}")
        else:
            terms.append(f"{cs}*{xp}")
    return "+".join(terms) if terms else "0"

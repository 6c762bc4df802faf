"""Frobenius classes over the rationals and cyclotomic reciprocity checks.

The class of a prime cycle away from the modulus maps to the Frobenius
of the corresponding cyclotomic extension: p goes to (zeta -> zeta^p),
i.e. to p mod m on the Galois side.  The isomorphism with the cycle
class group is recovered from finitely many prime classes and checked
for soundness; an independent polynomial oracle confirms Frobenius
orders through the factorization degrees of cyclotomic polynomials.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np
from sympy import divisors, factorint, primerange

from . import fqpoly, zpoly
from .chow import NARROW, Modulus, RayClassGroup, relative_chow, support_integer
from .errors import OutOfSupportedRange, PlaceInModulus, SupportMeetsModulus
from .finfield import prime_field
from .gfields import RationalField
from .groupstruct import invariant_factors_from_table
from .lattice import IntMatrix, smith_normal_form
from .places import RationalPlace
from .symbols import ZeroCycle

MAX_MODULUS = 200


def _target_class(x: int, M: int, variant: str) -> int:
    """Canonical representative on the Galois side: x mod M, folded by the
    sign quotient in the ordinary variant."""
    if M == 1:
        return 1
    r = x % M
    if variant != NARROW and M > 2:
        r = min(r, M - r)
    return r


def _target_elements(M: int, variant: str) -> list[int]:
    if M == 1:
        return [1]
    units = [x for x in range(1, M) if gcd(x, M) == 1]
    return sorted({_target_class(x, M, variant) for x in units})


@dataclass(frozen=True)
class FrobeniusElement:
    place: RationalPlace
    target_class: int
    modulus: Modulus

    def order(self) -> int:
        M = support_integer(self.modulus)
        mul = lambda a, b: _target_class(a * b, M, self.modulus.variant)
        acc, n = self.target_class, 1
        ident = _target_class(1, M, self.modulus.variant)
        while acc != ident:
            acc = mul(acc, self.target_class)
            n += 1
        return n


def frobenius_class(v: RationalPlace, m: Modulus) -> FrobeniusElement:
    if not isinstance(m.field, RationalField):
        raise OutOfSupportedRange("explicit Frobenius targets exist over Q only")
    if v in m.support:
        raise PlaceInModulus(f"{v!r} divides the modulus")
    M = support_integer(m)
    return FrobeniusElement(v, _target_class(v.p, M, m.variant), m)


def rec(c: ZeroCycle, m: Modulus) -> int:
    """Product of Frobenius classes over the cycle, on the Galois side."""
    if not isinstance(m.field, RationalField):
        raise OutOfSupportedRange("explicit Frobenius targets exist over Q only")
    M = support_integer(m)
    supp = set(m.support)
    acc = 1
    for place, k in c.items():
        if place in supp:
            raise SupportMeetsModulus(f"{place!r} divides the modulus")
        base = place.p % M if M > 1 else 0
        if k < 0:
            base, k = pow(place.p, -1, M), -k
        acc = acc * pow(base, k, M) % M if M > 1 else 0
    return _target_class(acc if M > 1 else 1, M, m.variant)


# ------------------------------------------------- isomorphism verification

def _solve_integer(cols: list[tuple[int, ...]], b: tuple[int, ...]):
    """x with sum x_j cols[j] = b over Z, or None."""
    r, n = len(b), len(cols)
    A = IntMatrix.from_rows([[col[i] for col in cols] for i in range(r)])
    D, U, V = smith_normal_form(A)
    ub = [sum(U.entries[i][k] * b[k] for k in range(r)) for i in range(r)]
    y = [0] * n
    for i in range(r):
        d = D.entries[i][i] if i < min(r, n) else 0
        if d == 0:
            if ub[i]:
                return None
        else:
            if ub[i] % d:
                return None
            if i < n:
                y[i] = ub[i] // d
    return [sum(V.entries[i][j] * y[j] for j in range(n)) for i in range(n)]


def verify_rec_isomorphism(m: Modulus) -> bool:
    """Match the cycle class group with the explicit Galois side.

    Collects prime classes until they generate, solves for the canonical
    generator images, and confirms the assignment prime -> p mod M is a
    bijective homomorphism with the expected invariant factors.
    """
    if not isinstance(m.field, RationalField):
        raise OutOfSupportedRange("explicit Frobenius targets exist over Q only")
    M = support_integer(m)
    if M > MAX_MODULUS:
        raise OutOfSupportedRange(f"modulus {M} exceeds {MAX_MODULUS}")
    G = relative_chow(m.field, m)
    variant = m.variant

    t_elems = _target_elements(M, variant)
    t_mul = lambda a, b: _target_class(a * b, M, variant)
    t_ident = _target_class(1, M, variant)
    if invariant_factors_from_table(t_elems, t_mul, t_ident) != \
            G.group.invariant_factors:
        return False
    if len(t_elems) != G.group.order:
        return False

    collected: list[tuple[tuple[int, ...], int, int]] = []
    span = {G.group.identity()}
    rank = G.group.rank
    for p in primerange(2, 10 * max(M, 2) + 1):
        if M % p == 0:
            continue
        v = G.prime_class(RationalPlace(m.field, p))
        g = _target_class(p, M, variant)
        collected.append((v, g, p))
        if v not in span:
            frontier = [x for x in span]
            while frontier:
                cur = frontier.pop()
                nxt = G.group.add(cur, v)
                while nxt not in span:
                    span.add(nxt)
                    frontier.append(nxt)
                    nxt = G.group.add(nxt, v)
        if len(span) == G.group.order:
            break
    if len(span) != G.group.order:
        return False

    # canonical generator images through an integer solve against the
    # collected classes plus the order relations
    cols = [v for v, g, p in collected]
    cols += [tuple(d if i == j else 0 for i in range(rank))
             for j, d in enumerate(G.group.invariant_factors)]
    images = []
    for i, d in enumerate(G.group.invariant_factors):
        e_i = tuple(1 if j == i else 0 for j in range(rank))
        x = _solve_integer(cols, e_i)
        if x is None:
            return False
        img = 1
        for (v, g, p), c in zip(collected, x):
            img = t_mul(img, _power(g, c, M, variant))
        if _power(img, d, M, variant) != t_ident:
            return False
        images.append(img)

    def transport(elt: tuple[int, ...]) -> int:
        out = t_ident
        for c, img in zip(elt, images):
            out = t_mul(out, _power(img, c, M, variant))
        return out

    for v, g, p in collected:
        if transport(v) != g:
            return False
    for p in primerange(2, 51):
        if M % p == 0:
            continue
        v = G.prime_class(RationalPlace(m.field, p))
        if transport(v) != _target_class(p, M, variant):
            return False

    hit = {t_ident}
    frontier = [t_ident]
    while frontier:
        cur = frontier.pop()
        for img in images:
            nxt = t_mul(cur, img)
            if nxt not in hit:
                hit.add(nxt)
                frontier.append(nxt)
    return len(hit) == len(t_elems)


def _power(a: int, e: int, M: int, variant: str) -> int:
    if e < 0:
        a = pow(a, -1, M) if M > 1 else 1
        e = -e
    return _target_class(pow(a, e, max(M, 2)), M, variant)


# ------------------------------------------------ polynomial order oracle

_CYCLO_CACHE: dict[tuple[int, int], tuple] = {}


def _cyclotomic_mod(m: int, p: int) -> tuple:
    """m-th cyclotomic polynomial over F_p by exact division of x^m - 1."""
    key = (m, p)
    got = _CYCLO_CACHE.get(key)
    if got is not None:
        return got
    F = prime_field(p)
    poly = tuple([p - 1] + [0] * (m - 1) + [1])
    for d in divisors(m):
        if d < m:
            quo, rem = fqpoly.divmod_(F, poly, _cyclotomic_mod(d, p))
            assert not rem, "cyclotomic division must be exact"
            poly = quo
    _CYCLO_CACHE[key] = poly
    return poly


def frobenius_order_check(p: int, m: int) -> bool:
    """Order of p mod m versus common factor degree of the cyclotomic
    polynomial over F_p; the two never use each other's arithmetic."""
    if m > MAX_MODULUS:
        raise OutOfSupportedRange(f"modulus {m} exceeds {MAX_MODULUS}")
    if m % p == 0:
        raise PlaceInModulus(f"{p} divides {m}")

    if m <= 2:
        ord_pm = 1
    else:
        acc, ord_pm = p % m, 1
        while acc != 1:
            acc = acc * p % m
            ord_pm += 1

    phi = _cyclotomic_mod(m, p)
    n = len(phi) - 1
    if n == 1:
        return ord_pm == 1

    ctx = zpoly.ModulusCtx(np.array(phi, dtype=np.uint64), p)
    xp = ctx.modexp(np.array([0, 1], dtype=np.uint64), p)
    frob = np.zeros((n, n), dtype=np.uint64)
    pw = np.zeros(n, dtype=np.uint64)
    pw[0] = 1
    frob[:, 0] = pw
    for i in range(1, n):
        pw = ctx.mulmod(pw, xp)
        frob[:, i] = pw

    x0 = np.zeros(n, dtype=np.uint64)
    x0[1] = 1
    v, e = x0, 0
    powers = {}
    while True:
        powers[e] = v
        v = zpoly.matvec(frob, v, p)
        e += 1
        if np.array_equal(v, x0):
            break
        if e > n:
            return False

    # every irreducible factor degree divides e; none may divide e/q
    for q in factorint(e):
        w = powers[e // q]
        # unsigned arrays: negate as (p - x) % p, never bare subtraction
        diff = (w + (p - x0) % p) % p
        g = zpoly.zgcd(diff.astype(np.uint64), np.array(phi, dtype=np.uint64), p)
        if len(zpoly.ztrim(g)) > 1:
            return False
    return e == ord_pm

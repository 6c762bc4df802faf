"""Dense univariate polynomial arithmetic over an abstract coefficient field.

Polynomials are tuples of field elements, ascending powers, no trailing
zeros; () is the zero polynomial.  Every function takes the coefficient
field F as the first argument; F only needs the small protocol implemented
in finfield (zero/one/add/sub/mul/inv/neg/eq by ==, order, elements).

Factorization is Cantor-Zassenhaus with the char-2 trace-map variant; the
randomness is drawn from an explicitly seeded generator so every run is
reproducible.
"""

from __future__ import annotations

import random
from typing import Sequence


def trim(F, cs) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == F.zero:
        cs.pop()
    return tuple(cs)


def deg(a) -> int:
    # convention deg 0 = -1
    return len(a) - 1


def const(F, c) -> tuple:
    return () if c == F.zero else (c,)


def is_one(F, a) -> bool:
    return len(a) == 1 and a[0] == F.one


def x_poly(F) -> tuple:
    return (F.zero, F.one)


def add(F, a, b) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def neg(F, a) -> tuple:
    return tuple(F.neg(c) for c in a)


def sub(F, a, b) -> tuple:
    return add(F, a, neg(F, b))


def scale(F, c, a) -> tuple:
    if c == F.zero:
        return ()
    return trim(F, [F.mul(c, x) for x in a])


def mul(F, a, b) -> tuple:
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == F.zero:
            continue
        for j, cb in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(ca, cb))
    return trim(F, out)


def divmod_(F, a, b) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    binv = F.inv(b[-1])
    rem = list(a)
    q = [F.zero] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1]
        if c == F.zero:
            continue
        f = F.mul(c, binv)
        q[i] = f
        for j, cb in enumerate(b):
            rem[i + j] = F.sub(rem[i + j], F.mul(f, cb))
    return trim(F, q), trim(F, rem[: len(b) - 1])


def mod(F, a, b) -> tuple:
    return divmod_(F, a, b)[1]


def monic(F, a) -> tuple:
    if not a or a[-1] == F.one:
        return a
    return scale(F, F.inv(a[-1]), a)


def gcd(F, a, b) -> tuple:
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def ext_gcd(F, a, b) -> tuple[tuple, tuple, tuple]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = const(F, F.one), ()
    t0, t1 = (), const(F, F.one)
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if r0 and r0[-1] != F.one:
        c = F.inv(r0[-1])
        r0, s0, t0 = scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)
    return r0, s0, t0


def inv_mod(F, a, m) -> tuple:
    g, s, _ = ext_gcd(F, a, m)
    if not is_one(F, g):
        raise ZeroDivisionError("element not invertible modulo m")
    return mod(F, s, m)


def pow_mod(F, a, e: int, m) -> tuple:
    if e < 0:
        return pow_mod(F, inv_mod(F, a, m), -e, m)
    out = const(F, F.one)
    a = mod(F, a, m)
    while e:
        if e & 1:
            out = mod(F, mul(F, out, a), m)
        a = mod(F, mul(F, a, a), m)
        e >>= 1
    return out


def evaluate(F, a, c):
    acc = F.zero
    for coeff in reversed(a):
        acc = F.add(F.mul(acc, c), coeff)
    return acc


def derivative(F, a) -> tuple:
    out = []
    for i in range(1, len(a)):
        term = F.zero
        for _ in range(i % F.char):
            term = F.add(term, a[i])
        out.append(term)
    return trim(F, out)


def resultant(F, a, b):
    """Res(a, b) via the Euclidean remainder sequence."""
    if not a or not b:
        return F.zero
    res = F.one
    while deg(b) > 0:
        r = mod(F, a, b)
        if not r:
            return F.zero
        # Res(a,b) = (-1)^(da db) lc(b)^(da-dr) Res(b,r)
        step = F.pow_(b[-1], deg(a) - deg(r))
        if (deg(a) * deg(b)) % 2:
            step = F.neg(step)
        res = F.mul(res, step)
        a, b = b, r
    return F.mul(res, F.pow_(b[0], deg(a)))


def is_irreducible(F, f) -> bool:
    """Rabin's test: x^(q^n) = x mod f and gcd(x^(q^(n/l)) - x, f) = 1."""
    n = deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    q = F.order
    x = x_poly(F)
    from sympy import factorint
    for ell in factorint(n):
        h = pow_mod(F, x, q ** (n // ell), f)
        if not is_one(F, gcd(F, sub(F, h, x), f)):
            return False
    return pow_mod(F, x, q ** n, f) == mod(F, x, f)


def _p_th_root(F, c):
    # x -> x^p is bijective on F_q; inverse is x -> x^(q/p)
    return F.pow_(c, F.order // F.char)


def squarefree_decomposition(F, f) -> list[tuple[tuple, int]]:
    """[(g_i, m_i)] with f = lc * prod g_i^m_i, g_i squarefree monic coprime."""
    out: list[tuple[tuple, int]] = []
    f = monic(F, f)

    def rec(f, mult):
        if deg(f) <= 0:
            return
        df = derivative(F, f)
        if not df:
            # f = h(x^p): take p-th root and recurse with multiplicity * p
            p = F.char
            root = trim(F, [_p_th_root(F, f[i]) for i in range(0, len(f), p)])
            rec(root, mult * p)
            return
        g = gcd(F, f, df)
        w = divmod_(F, f, g)[0]
        m = 1
        while not is_one(F, w):
            y = gcd(F, w, g)
            z = divmod_(F, w, y)[0]
            if deg(z) > 0:
                out.append((z, m * mult))
            w = y
            g = divmod_(F, g, y)[0]
            m += 1
        if deg(g) > 0:
            rec(g, mult)

    rec(f, 1)
    return out


def _ddf(F, f) -> list[tuple[tuple, int]]:
    # distinct-degree: [(product of degree-d irreducible factors, d)]
    out = []
    q = F.order
    x = x_poly(F)
    h = mod(F, x, f)
    rest = f
    d = 0
    while deg(rest) > 2 * d + 1:
        d += 1
        h = pow_mod(F, h, q, rest)
        g = gcd(F, sub(F, h, x), rest)
        if deg(g) > 0:
            out.append((g, d))
            rest = divmod_(F, rest, g)[0]
            h = mod(F, h, rest)
    if deg(rest) > 0:
        out.append((rest, deg(rest)))
    return out


def _edf(F, f, d, rng: random.Random) -> list[tuple]:
    # equal-degree splitting, Cantor-Zassenhaus
    n = deg(f)
    if n == d:
        return [f]
    q = F.order
    elements = None
    while True:
        h = tuple(_rand_elt(F, rng) for _ in range(n))
        h = trim(F, h)
        if deg(h) < 1:
            continue
        if F.char == 2:
            # trace map sum h^(2^i) over the degree-d subfield tower
            k = d * _log2_order(F)
            t = mod(F, h, f)
            acc = t
            for _ in range(k - 1):
                t = pow_mod(F, t, 2, f)
                acc = add(F, acc, t)
            g = gcd(F, acc, f)
        else:
            e = (q ** d - 1) // 2
            g = gcd(F, sub(F, pow_mod(F, h, e, f), const(F, F.one)), f)
        if 0 < deg(g) < n:
            return _edf(F, g, d, rng) + _edf(F, divmod_(F, f, g)[0], d, rng)


def _log2_order(F) -> int:
    k = 0
    q = F.order
    while q > 1:
        q >>= 1
        k += 1
    return k


def _rand_elt(F, rng: random.Random):
    els = getattr(F, "_elt_list", None)
    if els is None:
        els = list(F.elements())
        F._elt_list = els
    return els[rng.randrange(len(els))]


def _seed_from(f) -> int:
    # stable across processes: fold the structure of the coefficients
    def fold(x, acc):
        if isinstance(x, tuple):
            for y in x:
                acc = fold(y, acc)
            return (acc * 1000003 + 17) & 0xFFFFFFFF
        return (acc * 1000003 + int(x) + 1) & 0xFFFFFFFF
    return fold(f, 0x9E3779B9)


def factor(F, f, seed: int | None = None) -> list[tuple[tuple, int]]:
    """Monic irreducible factors with multiplicity; leading coeff dropped.

    Deterministic: the splitting randomness is seeded from the input.
    """
    if deg(f) < 1:
        return []
    rng = random.Random(_seed_from(f) if seed is None else seed)
    out: list[tuple[tuple, int]] = []
    for g, m in squarefree_decomposition(F, f):
        for part, d in _ddf(F, g):
            if deg(part) == d:
                out.append((part, m))
            else:
                for irr in _edf(F, part, d, rng):
                    out.append((irr, m))
    out.sort(key=lambda t: (deg(t[0]), t[0]))
    return out


def monic_irreducibles(F, degree: int):
    """Yield all monic irreducibles of exact degree, lexicographic in coeffs."""
    from itertools import product as iproduct
    els = list(F.elements())
    for tail in iproduct(els, repeat=degree):
        f = tuple(tail) + (F.one,)
        f = trim(F, f)
        if deg(f) == degree and is_irreducible(F, f):
            yield f

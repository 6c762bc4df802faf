"""Ideal arithmetic in the maximal order of a quadratic field.

Integral ideals are HNF triples (a, b, c) meaning Z*a + Z*(b + c*omega),
with c | a, c | b and ac = norm.  Reduction walks carry an exact field
element nu and a parity bit relating the current ideal back to the start,
so principality tests return an actual generator, never just a yes/no.
The narrow variant rejects generators whose real signs cannot be repaired
by a unit.  Class groups are assembled by breadth-first search over prime
ideals below the Minkowski bound, harvesting one relation per (class, gen)
edge together with the totally-positive-or-not generator that witnesses it.

Everything is exact: Fractions for field elements, ints for HNF data.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, isqrt, lcm

from sympy import factorint, sqrt_mod

from .errors import OutOfSupportedRange
from .gfields import QuadElt, QuadraticField
from .lattice import IntMatrix, smith_normal_form


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# --------------------------------------------------------------- HNF ideals

@dataclass(frozen=True)
class QIdeal:
    K: QuadraticField
    a: int
    b: int
    c: int

    def __post_init__(self):
        assert self.a > 0 and self.c > 0
        assert self.a % self.c == 0 and self.b % self.c == 0
        assert 0 <= self.b < self.a or (self.a == self.c and self.b == 0)
        # closure under multiplication by omega
        T, N = self.K.omega_trace, self.K.omega_norm
        b0, c0 = self.b // self.c, 1
        assert (b0 * b0 + b0 * T + N) % (self.a // self.c) == 0, "not an ideal"

    @property
    def norm(self) -> int:
        return self.a * self.c

    def is_unit_ideal(self) -> bool:
        return self.a == 1 and self.c == 1

    def primitive_part(self) -> tuple[int, "QIdeal"]:
        if self.c == 1:
            return 1, self
        return self.c, QIdeal(self.K, self.a // self.c, self.b // self.c, 1)

    def conj(self) -> "QIdeal":
        T = self.K.omega_trace
        bb = (-self.b - self.c * T) % self.a
        return QIdeal(self.K, self.a, bb, self.c)

    def basis_elements(self) -> tuple[QuadElt, QuadElt]:
        return (_from_omega_coords(self.K, self.a, 0),
                _from_omega_coords(self.K, self.b, self.c))

    def contains(self, z: QuadElt) -> bool:
        u, v, n = elt_coords(z)
        if n != 1:
            return False
        if v % self.c:
            return False
        return (u - (v // self.c) * self.b) % self.a == 0

    def __repr__(self):
        return f"[{self.a}, {self.b}+{self.c}w]"


def _from_omega_coords(K: QuadraticField, u, v) -> QuadElt:
    # u + v*omega as x + y*sqrt(d)
    u, v = Fraction(u), Fraction(v)
    if K.d % 4 == 1:
        return QuadElt(K, u + v / 2, v / 2)
    return QuadElt(K, u, v)


def elt_coords(z: QuadElt) -> tuple[int, int, int]:
    """(u, v, n) with z = (u + v*omega)/n, n > 0 minimal."""
    a, b = z.omega_coords()
    n = lcm(a.denominator, b.denominator)
    return int(a * n), int(b * n), n


def _omega_mul(K: QuadraticField, u: int, v: int) -> tuple[int, int]:
    # (u + v*omega)*omega in omega coords; omega^2 = T*omega - N
    return -v * K.omega_norm, u + v * K.omega_trace


def _module_hnf(K: QuadraticField, rows: list[tuple[int, int]]) -> QIdeal:
    """HNF of the Z-module spanned by omega-coordinate rows; must be an ideal."""
    bx, by = 0, 0
    ints: list[int] = []
    for (x, y) in rows:
        if y == 0:
            ints.append(x)
            continue
        if by == 0:
            bx, by = x, y
            continue
        g, s, t = xgcd(by, y)
        ints.append((y // g) * bx - (by // g) * x)
        bx, by = s * bx + t * x, g
    a = 0
    for x in ints:
        a = gcd(a, x)
    if a == 0 or by == 0:
        raise ValueError("module of rank < 2")
    if by < 0:
        bx, by = -bx, -by
    return QIdeal(K, a, bx % a, by)


def ideal_mul(I: QIdeal, J: QIdeal) -> QIdeal:
    K = I.K
    T, N = K.omega_trace, K.omega_norm
    rows = []
    for (u1, v1) in ((I.a, 0), (I.b, I.c)):
        for (u2, v2) in ((J.a, 0), (J.b, J.c)):
            # (u1 + v1 w)(u2 + v2 w) with w^2 = T w - N
            rows.append((u1 * u2 - v1 * v2 * N,
                         u1 * v2 + v1 * u2 + v1 * v2 * T))
    out = _module_hnf(K, rows)
    assert out.norm == I.norm * J.norm
    return out


def ideal_pow(I: QIdeal, k: int) -> QIdeal:
    assert k >= 0
    out = unit_ideal(I.K)
    base = I
    while k:
        if k & 1:
            out = ideal_mul(out, base)
        base = ideal_mul(base, base)
        k >>= 1
    return out


def unit_ideal(K: QuadraticField) -> QIdeal:
    return QIdeal(K, 1, 0, 1)


def principal_ideal(K: QuadraticField, z: QuadElt) -> QIdeal:
    u, v, n = elt_coords(z)
    if n != 1:
        raise ValueError("element not integral")
    if u == 0 and v == 0:
        raise ValueError("zero element")
    wu, wv = _omega_mul(K, u, v)
    out = _module_hnf(K, [(u, v), (wu, wv)])
    assert out.norm == abs(int(z.norm()))
    return out


# ---------------------------------------------------- primes and valuations

def factor_rational_prime(K: QuadraticField, p: int) -> list[tuple[str, int | None, int, int]]:
    """[(kind, root, e, f)] for the places over p; sum of e*f is 2."""
    d, disc = K.d, K.disc
    T, N = K.omega_trace, K.omega_norm
    if p == 2:
        if d % 8 == 1:
            return [("split", 0, 1, 1), ("split", 1, 1, 1)]
        if d % 8 == 5:
            return [("inert", None, 1, 2)]
        # even disc: ramified; root of x^2 - Tx + N mod 2
        r = 0 if N % 2 == 0 else 1
        return [("ramified", r, 2, 1)]
    if disc % p == 0:
        r = (T * pow(2, -1, p)) % p
        return [("ramified", r, 2, 1)]
    ls = pow(disc, (p - 1) // 2, p)
    if ls == p - 1:
        return [("inert", None, 1, 2)]
    s = sqrt_mod(disc, p)
    inv2 = pow(2, -1, p)
    r1, r2 = ((T + s) * inv2) % p, ((T - s) * inv2) % p
    if r1 > r2:
        r1, r2 = r2, r1
    return [("split", r1, 1, 1), ("split", r2, 1, 1)]


def place_ideal(K: QuadraticField, p: int, kind: str, root: int | None) -> QIdeal:
    if kind == "inert":
        return QIdeal(K, p, 0, p)
    return QIdeal(K, p, (-root) % p, 1)


def lift_root(K: QuadraticField, p: int, root: int, prec: int) -> int:
    """Root of x^2 - Tx + N mod p^prec lifting the mod-p root (simple root)."""
    T, N = K.omega_trace, K.omega_norm
    r, k = root % p, 1
    while k < prec:
        k = min(2 * k, prec)
        mod = p ** k
        fr = (r * r - T * r + N) % mod
        dr = (2 * r - T) % mod
        r = (r - fr * pow(dr, -1, mod)) % mod
    return r


def element_valuation(z: QuadElt, p: int, kind: str, root: int | None) -> int:
    """Valuation of z at the place over p. z nonzero."""
    if z.is_zero():
        raise ValueError("valuation of zero")
    u, v, n = elt_coords(z)
    nv = _vp(n, p)
    if kind == "inert":
        # v(u + v w) = min of coordinate valuations; zero coord is +inf
        vals = [_vp(t, p) for t in (u, v) if t != 0]
        return min(vals) - nv

    K = z.field
    if kind == "ramified":
        nz = int((z * z.conj() * n * n).x)  # norm of the integral part
        return _vp(nz, p) - 2 * nv

    # split: evaluate at the p-adic root with enough precision
    nz = abs(int((z * z.conj() * n * n).x))
    cap = _vp(nz, p) + 1
    R = lift_root(K, p, root, cap)
    w = (u + v * R) % (p ** cap)
    val = cap if w == 0 else _vp(w, p)
    assert val < cap, "precision exhausted"
    return val - nv


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("vp(0)")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# --------------------------------------------------------- reduction walks

def _form_B(K: QuadraticField, b: int, c: int) -> int:
    # primitive ideal [a, b + w]; associated middle coefficient
    return 2 * b + c * K.omega_trace


def _normalize_b(K: QuadraticField, a: int, b: int) -> int:
    """Residue b mod a putting B = 2b + T in the walk window."""
    T = K.omega_trace
    D = K.disc
    if K.d < 0 or 4 * a * a > D:
        # B in (-a, a]
        b = b % a
        if 2 * b + T > a:
            b -= a
        return b
    # real, small a: largest B < sqrt(D) in the class of 2b + T mod 2a
    s = isqrt(D)
    if s * s == D:
        raise AssertionError("discriminant is a square")
    # want b max with 2b + T <= s  (B = s would need D square)
    b = b % a
    bmax = (s - T) // 2
    b += ((bmax - b) // a) * a
    return b


def _is_reduced(K: QuadraticField, a: int, b: int) -> bool:
    D = K.disc
    B = 2 * b + K.omega_trace
    if K.d < 0:
        C = (B * B - D) // (4 * a)
        if not (abs(B) <= a <= C):
            return False
        if (abs(B) == a or a == C) and B < 0:
            return False
        return True
    if B <= 0 or B * B >= D:
        return False
    if (B + 2 * a) ** 2 <= D:
        return False
    t = 2 * a - B
    return t <= 0 or t * t < D


def _rho_data(K: QuadraticField, a: int, b: int) -> tuple[int, int, QuadElt]:
    """One infrastructure step on primitive [a, b+w]: returns (a', b', mu).

    The next ideal is (conj(mu)/a) * I with mu = b + w; multiplying by the
    conjugate keeps the walk inside the proper class, so the reduced cycle
    is traversed instead of bounced on.
    """
    mu = _from_omega_coords(K, b, 1)
    nmu = int(mu.norm())
    assert nmu % a == 0
    I2 = ideal_mul(principal_ideal(K, mu.conj()), QIdeal(K, a, b % a, 1))
    cont, prim = I2.primitive_part()
    assert cont == a and prim.a == abs(nmu) // a, (a, b, I2)
    return prim.a, prim.b, mu


@dataclass
class WalkResult:
    ideal: QIdeal          # terminal primitive reduced ideal
    nu: QuadElt            # start = nu * ideal
    hit_unit: bool         # unit ideal appeared along the walk
    gen: QuadElt | None    # generator if hit_unit


def reduce_walk(I: QIdeal) -> WalkResult:
    """Walk I through the reduced regime, tracking I_0 = nu * I_k.

    Imaginary fields descend to the unique reduced point.  Real fields run
    the continued fraction of (b + omega)/a with exact floors, which is the
    classical infrastructure walk: it enters the reduced cycle of the class
    and stops after one full tour, so a principal input always passes the
    unit ideal.
    """
    if I.K.d < 0:
        return _imag_walk(I)
    return _real_cf_walk(I)


def _imag_walk(I: QIdeal) -> WalkResult:
    K = I.K
    cont, prim = I.primitive_part()
    a, b = prim.a, _normalize_b(K, prim.a, prim.b)
    nu = QuadElt(K, Fraction(cont), Fraction(0))
    hit, gen = False, None
    while True:
        if a == 1:
            hit, gen = True, nu
        if _is_reduced(K, a, b):
            break
        a2, b2, mu = _rho_data(K, a, b)
        # I_k = (a / conj(mu)) * I_{k+1}
        nu = nu * QuadElt(K, Fraction(a), Fraction(0)) / mu.conj()
        a, b = a2, _normalize_b(K, a2, b2)
    return WalkResult(QIdeal(K, a, b % a, 1), nu, hit, gen)


def _real_cf_walk(I: QIdeal) -> WalkResult:
    K = I.K
    T, N = K.omega_trace, K.omega_norm
    s = isqrt(K.d)
    cont, prim = I.primitive_part()
    a, b = prim.a, prim.b
    nu = QuadElt(K, Fraction(cont), Fraction(0))
    hit, gen = False, None
    seen: set[tuple[int, int]] = set()
    while True:
        b %= a
        if a == 1:
            hit, gen = True, nu
        if (a, b) in seen:
            break
        seen.add((a, b))
        # m = floor((b + omega)/a), exact because sqrt(d) is irrational
        if K.d % 4 == 1:
            m = (2 * b + 1 + s) // (2 * a)
        else:
            m = (b + s) // a
        c = b - m * a
        n = c * c + c * T + N  # norm of c + omega
        assert n != 0 and n % a == 0
        a2 = abs(n) // a
        b2 = (-(c + T)) % a2
        # I_k = ((c + omega)/a_{k+1}) * I_{k+1}
        nu = nu * _from_omega_coords(K, c, 1) / a2
        a, b = a2, b2
    return WalkResult(QIdeal(K, a, b, 1), nu, hit, gen)


def principal_generator(I: QIdeal, narrow: bool = False) -> QuadElt | None:
    """A generator of I, None if I is not (narrowly) principal.

    Narrow asks for a totally positive generator (real fields only; for
    imaginary fields narrow and ordinary agree).
    """
    K = I.K
    res = reduce_walk(I)
    if not res.hit_unit:
        return None
    g = res.gen
    assert g is not None
    if not narrow or K.d < 0:
        return g
    return _make_totally_positive(g)


def _make_totally_positive(g: QuadElt) -> QuadElt | None:
    K = g.field
    s = (g.sign_at(0), g.sign_at(1))
    if s == (1, 1):
        return g
    eps = fundamental_unit(K)
    for u in (QuadElt(K, Fraction(-1), Fraction(0)), eps, -eps):
        h = g * u
        if (h.sign_at(0), h.sign_at(1)) == (1, 1):
            return h
    return None


# ------------------------------------------------------------ units

_FUND_UNIT_CACHE: dict[int, QuadElt] = {}


def fundamental_unit(K: QuadraticField) -> QuadElt:
    """Smallest unit > 1 of the maximal order, by the continued fraction of omega."""
    if K.d < 0:
        raise ValueError("imaginary field has no fundamental unit")
    got = _FUND_UNIT_CACHE.get(K.d)
    if got is not None:
        return got
    D = K.d
    if D % 4 == 1:
        P, Q = 1, 2
    else:
        P, Q = 0, 1
    s = isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    states: list[tuple[int, int]] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(digits)
        states.append((P, Q))
        assert Q > 0
        # floor((P + sqrt(D))/Q): isqrt is enough since sqrt(D) is irrational
        ak = (P + s) // Q
        digits.append(ak)
        P2 = ak * Q - P
        Q2 = (D - P2 * P2) // Q
        assert Q2 * Q == D - P2 * P2
        P, Q = P2, Q2
    i = seen[(P, Q)]
    m11, m12, m21, m22 = 1, 0, 0, 1
    for a in digits[i:]:
        m11, m12, m21, m22 = m11 * a + m12, m11, m21 * a + m22, m21
    Pi, Qi = states[i]
    alpha = QuadElt(K, Fraction(Pi, Qi), Fraction(1, Qi))
    eps = alpha * m21 + m22
    n = eps.norm()
    assert abs(n) == 1, (K.d, eps)
    assert eps.is_integral()
    assert eps.sign_at(0) == 1 and (eps - 1).sign_at(0) == 1, "unit not > 1"
    _FUND_UNIT_CACHE[K.d] = eps
    return eps


def unit_generators(K: QuadraticField) -> list[QuadElt]:
    """Generators of the unit group: torsion first, fundamental unit last."""
    if K.d > 0:
        return [K.elt(-1), fundamental_unit(K)]
    if K.d == -1:
        return [QuadElt(K, Fraction(0), Fraction(1))]
    if K.d == -3:
        return [QuadElt(K, Fraction(1, 2), Fraction(1, 2))]
    return [K.elt(-1)]


def unit_torsion_order(K: QuadraticField) -> int:
    if K.d == -1:
        return 4
    if K.d == -3:
        return 6
    return 2


# ----------------------------------------------------------- class data

def minkowski_bound(K: QuadraticField) -> int:
    D = abs(K.disc)
    if K.d < 0:
        # (2/pi) sqrt|D|; ceil with a safe rational over-approx of 2/pi
        return isqrt(D * 4106 * 4106 // (6449 * 6449)) + 1
    return isqrt(D) // 2 + 1


@dataclass
class ClassData:
    K: QuadraticField
    gen_ideals: list[QIdeal]
    gen_tags: list[tuple[int, int | None]]      # (p, root) per generator
    class_reps: list[QIdeal] = dc_field(default_factory=list)
    relations: list[tuple[int, ...]] = dc_field(default_factory=list)
    relation_gens: list[QuadElt] = dc_field(default_factory=list)
    _words: list[tuple[int, ...]] = dc_field(default_factory=list)

    def class_count(self) -> int:
        return len(self.class_reps)

    def same_class(self, I: QIdeal, J: QIdeal) -> bool:
        return self.quotient_generator(I, J) is not None

    def quotient_generator(self, I: QIdeal, J: QIdeal) -> QuadElt | None:
        """gamma with I = gamma * J."""
        X = ideal_mul(I, J.conj())
        g = principal_generator(X)
        if g is None:
            return None
        return g / J.norm

    def class_index(self, I: QIdeal) -> int:
        for k, rep in enumerate(self.class_reps):
            if self.same_class(I, rep):
                return k
        raise AssertionError("class representative search is complete")

    def decompose(self, I: QIdeal) -> tuple[tuple[int, ...], QuadElt]:
        """(word, gamma) with I = gamma * prod gens^word."""
        k = self.class_index(I)
        word = self._words[k]
        P = unit_ideal(self.K)
        for e, g in zip(word, self.gen_ideals):
            P = ideal_mul(P, ideal_pow(g, e))
        gamma = self.quotient_generator(I, P)
        assert gamma is not None
        return word, gamma


_CLASS_CACHE: dict[tuple[int, frozenset], ClassData] = {}
_MAX_GEN_PRIMES = 60


def build_class_data(K: QuadraticField,
                     avoid_primes: frozenset = frozenset()) -> ClassData:
    """Class data on prime-ideal generators away from avoid_primes.

    With avoided primes the Minkowski pool may undershoot, so the pool is
    extended until the enumerated group has the reference class count.
    """
    key = (K.d, avoid_primes)
    got = _CLASS_CACHE.get(key)
    if got is not None:
        return got
    expect = None
    if avoid_primes:
        expect = build_class_data(K).class_count()

    bound = minkowski_bound(K)
    gens: list[QIdeal] = []
    tags: list[tuple[int, int | None]] = []
    p = 2
    taken = 0
    while p <= bound and taken < _MAX_GEN_PRIMES:
        if p not in avoid_primes:
            for (kind, root, e, f) in factor_rational_prime(K, p):
                if kind == "inert":
                    continue
                gens.append(place_ideal(K, p, kind, root))
                tags.append((p, root))
                break  # one place per split pair generates the same subgroup
        p = _next_prime(p)
        taken += 1

    while True:
        data = _bfs_classes(K, gens, tags)
        if expect is None or data.class_count() == expect:
            break
        # pool too small after avoiding modulus primes: add the next prime
        while True:
            if taken >= _MAX_GEN_PRIMES:
                raise OutOfSupportedRange("class generator pool exhausted")
            if p not in avoid_primes:
                fp = [t for t in factor_rational_prime(K, p) if t[0] != "inert"]
                if fp:
                    kind, root, e, f = fp[0]
                    gens.append(place_ideal(K, p, kind, root))
                    tags.append((p, root))
                    p = _next_prime(p)
                    taken += 1
                    break
            p = _next_prime(p)
            taken += 1
    assert expect is None or data.class_count() == expect
    _CLASS_CACHE[key] = data
    return data


def _bfs_classes(K: QuadraticField, gens: list[QIdeal], tags: list) -> ClassData:
    data = ClassData(K, list(gens), list(tags))
    words: list[tuple[int, ...]] = [tuple(0 for _ in gens)]
    reps: list[QIdeal] = [unit_ideal(K)]
    data.class_reps = reps
    queue = [0]
    while queue:
        ci = queue.pop(0)
        for j, g in enumerate(gens):
            cand = ideal_mul(reps[ci], g)
            word = tuple(w + (1 if t == j else 0) for t, w in enumerate(words[ci]))
            found = None
            for k, rep in enumerate(reps):
                if data.quotient_generator(cand, rep) is not None:
                    found = k
                    break
            if found is None:
                reps.append(cand)
                words.append(word)
                queue.append(len(reps) - 1)
            else:
                rel = tuple(a - b for a, b in zip(word, words[found]))
                if any(rel):
                    _record_relation(data, rel)
    data._words = words
    return data


def _record_relation(data: ClassData, rel: tuple[int, ...]) -> None:
    if rel in data.relations:
        return
    K = data.K
    pos = unit_ideal(K)
    neg = unit_ideal(K)
    for e, g in zip(rel, data.gen_ideals):
        if e > 0:
            pos = ideal_mul(pos, ideal_pow(g, e))
        elif e < 0:
            neg = ideal_mul(neg, ideal_pow(g, -e))
    # prod gens^rel = pos/neg = pos*conj(neg)/N(neg) must be principal
    X = ideal_mul(pos, neg.conj())
    g = principal_generator(X)
    assert g is not None, "harvested relation is not principal"
    data.relations.append(rel)
    data.relation_gens.append(g / neg.norm)


def class_invariants(K: QuadraticField, narrow: bool = False) -> tuple[int, ...]:
    """Invariant factors of the (narrow) class group from the Schreier data.

    The narrow group of a real field is not generated by ideals of small norm
    alone, so its presentation keeps one order-2 coordinate per real embedding
    and ties the signs of every harvested principal generator to its word.
    """
    from .lattice import cokernel_invariants
    data = build_class_data(K)
    n = len(data.gen_ideals)
    if not narrow or K.d < 0:
        if n == 0:
            return ()
        rows = data.relations
        # relation vectors become the columns whose span is divided out
        cols = IntMatrix.from_rows([[r[i] for r in rows] for i in range(n)])
        grp = cokernel_invariants(cols, n)
        assert grp.order == len(data.class_reps), "presentation order mismatch"
        return grp.invariant_factors
    cols = [[2, 0] + [0] * n, [0, 2] + [0] * n]
    for u in unit_generators(K):
        cols.append([_sign_bit(u, 0), _sign_bit(u, 1)] + [0] * n)
    for rel, g in zip(data.relations, data.relation_gens):
        cols.append([-_sign_bit(g, 0), -_sign_bit(g, 1)] + list(rel))
    mat = IntMatrix.from_rows([[c[i] for c in cols] for i in range(2 + n)])
    grp = cokernel_invariants(mat, 2 + n)
    wide = len(data.class_reps)
    assert grp.order in (wide, 2 * wide), "narrow index must be 1 or 2"
    return grp.invariant_factors


def _sign_bit(z: QuadElt, emb: int) -> int:
    return 0 if z.sign_at(emb) == 1 else 1


def _next_prime(p: int) -> int:
    from sympy import nextprime
    return int(nextprime(p))


# ------------------------------------------------------------- ideal CRT

def coprime_split(A: QIdeal, B: QIdeal) -> tuple[QuadElt, QuadElt]:
    """(u, w) with u in A, w in B, u + w = 1; requires A + B = O."""
    K = A.K
    gens = []
    for I in (A, B):
        gens.append((I.a, 0))
        gens.append((I.b, I.c))
    M = IntMatrix.from_rows([list(g) for g in gens])
    D, U, V = smith_normal_form(M)
    d1, d2 = D.entries[0][0], D.entries[1][1]
    s = V.entries[0]  # first row of V: e1 @ V
    if d1 == 0 or d2 == 0 or s[0] % d1 or s[1] % d2:
        raise ValueError("ideals are not coprime")
    w_red = (s[0] // d1, s[1] // d2, 0, 0)
    y = [sum(w_red[i] * U.entries[i][j] for i in range(4)) for j in range(4)]
    eltsA = A.basis_elements()
    eltsB = B.basis_elements()
    u = eltsA[0] * y[0] + eltsA[1] * y[1]
    w = eltsB[0] * y[2] + eltsB[1] * y[3]
    assert u + w == QuadElt(K, Fraction(1), Fraction(0))
    assert A.contains(u) and B.contains(w)
    return u, w


def ideal_crt(K: QuadraticField, pairs: list[tuple[QuadElt, QIdeal]]) -> QuadElt:
    """z with z = x_i mod A_i for pairwise coprime integral A_i; z integral."""
    if not pairs:
        return QuadElt(K, Fraction(0), Fraction(0))
    z, Acc = pairs[0]
    for x, B in pairs[1:]:
        u, w = coprime_split(Acc, B)
        z = z * w + x * u
        Acc = ideal_mul(Acc, B)
    # reduce z mod Acc to keep coordinates small
    z = _reduce_mod_ideal(z, Acc)
    return z


def _reduce_mod_ideal(z: QuadElt, A: QIdeal) -> QuadElt:
    u, v, n = elt_coords(z)
    if n != 1:
        return z
    q = v // A.c
    u -= q * A.b
    v -= q * A.c
    u %= A.a
    return _from_omega_coords(z.field, u, v)

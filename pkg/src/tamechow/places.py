"""Places of the supported global fields and their exact local data.

A place packages a residue field with maps into it: valuation, unit residue,
principal-unit level, and the norm down to the bottom of the residue tower.
Finite places cover rational primes, prime ideals of quadratic fields, and
monic irreducible polynomials plus the degree place of a rational function
field.  Real embeddings only carry signs and are kept separate from the
valuation API.

Residues at quadratic places are computed from exact coordinates; when the
denominator shares a factor with the residue characteristic the element is
first shifted by local units supported at the conjugate place, so no p-adic
approximation is ever involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime, primerange

from . import fqpoly
from .errors import OutOfSupportedRange, ZeroElement, NotAUnit
from .finfield import ext_field, norm_to_base, prime_field
from .gfields import (FunctionField, QuadraticField, RationalField,
                      QuadElt, fmt_poly)
from .quadratic import (QIdeal, elt_coords, element_valuation,
                        factor_rational_prime, ideal_crt, ideal_pow,
                        place_ideal, _from_omega_coords)


@dataclass(frozen=True)
class RationalPlace:
    field: RationalField
    p: int

    def __post_init__(self):
        assert isprime(self.p)

    def __repr__(self):
        return f"({self.p})"


@dataclass(frozen=True)
class QuadraticPlace:
    field: QuadraticField
    p: int
    kind: str               # "split" | "inert" | "ramified"
    root: int | None        # image of omega in F_p, None when inert
    e: int
    f: int

    def ideal(self) -> QIdeal:
        return place_ideal(self.field, self.p, self.kind, self.root)

    def __repr__(self):
        if self.kind == "split":
            return f"({self.p},{self.root})"
        return f"({self.p})"


@dataclass(frozen=True)
class FunctionPlace:
    field: FunctionField
    poly: tuple             # monic irreducible over the constant field

    def degree(self) -> int:
        return fqpoly.deg(self.poly)

    def __repr__(self):
        return f"({fmt_poly(self.field.const_field, self.poly)})"


@dataclass(frozen=True)
class InfinitePlace:
    """The degree place of F_q(t), uniformizer 1/t."""
    field: FunctionField

    def __repr__(self):
        return "inf"


@dataclass(frozen=True)
class RealEmbedding:
    field: RationalField | QuadraticField
    index: int

    def sign(self, x) -> int:
        if isinstance(x, QuadElt):
            return x.sign_at(self.index)
        if x == 0:
            raise ZeroElement("sign of zero")
        return 1 if x > 0 else -1

    def __repr__(self):
        return f"emb{self.index}"


FinitePlace = RationalPlace | QuadraticPlace | FunctionPlace | InfinitePlace


def real_embeddings(field) -> list[RealEmbedding]:
    return [RealEmbedding(field, i) for i in range(field.r1)]


def quadratic_places(K: QuadraticField, p: int) -> list[QuadraticPlace]:
    out = [QuadraticPlace(K, p, kind, root, e, f)
           for kind, root, e, f in factor_rational_prime(K, p)]
    assert sum(pl.e * pl.f for pl in out) == 2
    return out


def places_over(field, p) -> list[FinitePlace]:
    """All finite places over a rational prime / an irreducible polynomial."""
    if isinstance(field, RationalField):
        return [RationalPlace(field, p)]
    if isinstance(field, QuadraticField):
        return [pl for pl in quadratic_places(field, p)]
    F = field.const_field
    pi = fqpoly.trim(F, tuple(p))
    assert fqpoly.is_irreducible(F, pi) and pi[-1] == F.one
    return [FunctionPlace(field, pi)]


# ------------------------------------------------------------ residue fields

def residue_field(place: FinitePlace):
    if isinstance(place, RationalPlace):
        return prime_field(place.p)
    if isinstance(place, QuadraticPlace):
        if place.kind == "inert":
            K = place.field
            Fp = prime_field(place.p)
            mod = (K.omega_norm % place.p, (-K.omega_trace) % place.p, 1)
            return ext_field(Fp, mod, "w")
        return prime_field(place.p)
    if isinstance(place, InfinitePlace):
        return place.field.const_field
    F = place.field.const_field
    if place.degree() == 1:
        return F
    return ext_field(F, place.poly, "u")


def residue_degree(place: FinitePlace) -> int:
    if isinstance(place, QuadraticPlace):
        return place.f
    if isinstance(place, FunctionPlace):
        return place.degree()
    return 1


# ---------------------------------------------------------------- valuations

def valuation(place: FinitePlace, x) -> int:
    if isinstance(place, RationalPlace):
        x = Fraction(x)
        if x == 0:
            raise ZeroElement("valuation of zero")
        return _vp_int(x.numerator, place.p) - _vp_int(x.denominator, place.p)
    if isinstance(place, QuadraticPlace):
        if x.norm() == 0:
            raise ZeroElement("valuation of zero")
        return element_valuation(x, place.p, place.kind, place.root)
    if isinstance(place, InfinitePlace):
        if not x.num:
            raise ZeroElement("valuation of zero")
        return fqpoly.deg(x.den) - fqpoly.deg(x.num)
    if not x.num:
        raise ZeroElement("valuation of zero")
    F = place.field.const_field
    return _vpoly(F, x.num, place.poly) - _vpoly(F, x.den, place.poly)


def _vp_int(n: int, p: int) -> int:
    assert n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vpoly(F, a: tuple, pi: tuple) -> int:
    v = 0
    while True:
        q, r = fqpoly.divmod_(F, a, pi)
        if r:
            return v
        a = q
        v += 1


# ------------------------------------------------------------------ residues

def residue(place: FinitePlace, x):
    """Image of a local unit in the residue field (int or tuple element)."""
    if valuation(place, x) != 0:
        raise NotAUnit("residue needs a valuation-zero element")
    if isinstance(place, RationalPlace):
        x = Fraction(x)
        p = place.p
        return x.numerator * pow(x.denominator, -1, p) % p
    if isinstance(place, QuadraticPlace):
        return _quad_residue(place, x)
    F = place.field.const_field
    if isinstance(place, InfinitePlace):
        return F.mul(x.num[-1], F.inv(x.den[-1]))
    pi = place.poly
    num, den = x.num, x.den
    # shift pi out of both sides; the valuations cancel by the unit check
    while not fqpoly.divmod_(F, num, pi)[1] and not fqpoly.divmod_(F, den, pi)[1]:
        num = fqpoly.divmod_(F, num, pi)[0]
        den = fqpoly.divmod_(F, den, pi)[0]
    k = residue_field(place)
    if fqpoly.deg(pi) == 1:
        r = F.neg(pi[0])
        return F.mul(fqpoly.evaluate(F, num, r),
                     F.inv(fqpoly.evaluate(F, den, r)))
    a = k.from_poly(fqpoly.mod(F, num, pi))
    b = k.from_poly(fqpoly.mod(F, den, pi))
    return k.mul(a, k.inv(b))


def _quad_residue(place: QuadraticPlace, z: QuadElt):
    K, p = place.field, place.p
    u, v, n = elt_coords(z)
    shift = 0
    if place.kind == "split":
        # multiplying by b2+omega (a unit here, in the conjugate ideal)
        # raises the conjugate valuation until p divides the numerator
        r2 = (K.omega_trace - place.root) % p
        b2 = (-r2) % p
        while n % p == 0:
            while u % p or v % p:
                u, v = _omega_mul_coords(K, u, v, b2, 1)
                shift += 1
            u, v, n = u // p, v // p, n // p
    else:
        # inert and ramified: pO is the full power of the single place, so
        # the numerator coordinates are already divisible
        while n % p == 0:
            assert u % p == 0 and v % p == 0
            u, v, n = u // p, v // p, n // p
    if place.kind == "inert":
        ninv = pow(n, -1, p)
        return (u * ninv % p, v * ninv % p)
    r = place.root
    ninv = pow(n, -1, p)
    res = (u + v * r) * ninv % p
    if shift:
        w0 = (b2 + r) % p
        res = res * pow(w0, -shift, p) % p
    return res


def _omega_mul_coords(K, u1, v1, u2, v2):
    # (u1 + v1 w)(u2 + v2 w) with w^2 = T w - N
    T, N = K.omega_trace, K.omega_norm
    return (u1 * u2 - v1 * v2 * N, u1 * v2 + u2 * v1 + v1 * v2 * T)


def residue_is_one(place: FinitePlace, x) -> bool:
    k = residue_field(place)
    return residue(place, x) == k.one


# --------------------------------------------------------- unit filtrations

def principal_unit_level(place: FinitePlace, x) -> int:
    """Largest m with x = 1 at level m of the unit filtration: v(x-1)."""
    if valuation(place, x) != 0:
        raise NotAUnit("unit filtration needs a valuation-zero element")
    one = _field_one(place.field)
    if x == one:
        raise ZeroElement("x - 1 vanishes, the level is infinite")
    return valuation(place, _sub(place.field, x, one))


def _field_one(field):
    if isinstance(field, RationalField):
        return Fraction(1)
    if isinstance(field, QuadraticField):
        return field.elt(1)
    return field.from_int_polys((1,))


def _sub(field, x, y):
    if isinstance(field, RationalField):
        return Fraction(x) - Fraction(y)
    return x - y


# -------------------------------------------------------------- norm to base

def residue_norm(place: FinitePlace, alpha):
    """Norm from the residue field down to the prime field / constant field.

    The constant field itself may be a non-prime extension, so the target
    is decided per place kind rather than by peeling one base level.
    """
    k = residue_field(place)
    if isinstance(place, (FunctionPlace, InfinitePlace)):
        if k is place.field.const_field:
            return alpha
        return norm_to_base(k, alpha)
    if getattr(k, "base", None) is None:
        return alpha
    return norm_to_base(k, alpha)


# --------------------------------------------------------------- uniformizer

def uniformizer(place: FinitePlace):
    if isinstance(place, RationalPlace):
        return Fraction(place.p)
    if isinstance(place, QuadraticPlace):
        K = place.field
        if place.kind == "inert":
            return K.elt(place.p)
        cand = _from_omega_coords(K, -place.root, 1)
        if element_valuation(cand, place.p, place.kind, place.root) == 1:
            return cand
        cand = cand + K.elt(place.p)
        assert element_valuation(cand, place.p, place.kind, place.root) == 1
        return cand
    F = place.field.const_field
    if isinstance(place, InfinitePlace):
        return place.field.elt((F.one,), (F.zero, F.one))  # 1/t
    return place.field.elt(place.poly)


# ----------------------------------------------------- weak approximation

def weak_approx(field, constraints, totally_positive: bool = False):
    """Element x with v_i(x - target_i) >= level_i at each given place.

    Targets must be local integers.  Over Q the smallest positive solution
    is returned; quadratic fields use ideal CRT; function fields use
    polynomial CRT and reject the degree place.
    """
    assert constraints
    if isinstance(field, RationalField):
        residues = []
        moduli = []
        for place, target, level in constraints:
            assert isinstance(place, RationalPlace) and level >= 1
            m = place.p ** level
            t = Fraction(target)
            assert t.denominator % place.p
            residues.append(t.numerator * pow(t.denominator, -1, m) % m)
            moduli.append(m)
        x = _int_crt(residues, moduli)
        M = 1
        for m in moduli:
            M *= m
        x %= M
        if x == 0:
            x = M
        return Fraction(x)
    if isinstance(field, QuadraticField):
        pairs = []
        for place, target, level in constraints:
            assert isinstance(place, QuadraticPlace) and level >= 1
            u, v, n = elt_coords(target)
            assert n % place.p, "target must be integral at the place"
            A = ideal_pow(place.ideal(), level)
            if n != 1:
                m = pow(n, -1, A.norm)
                u, v = u * m, v * m
            pairs.append((_from_omega_coords(field, u, v), A))
        z = ideal_crt(field, pairs)
        if totally_positive:
            M = 1
            for _, A in pairs:
                M *= A.norm
            step = field.elt(M)
            while not (z.sign_at(0) > 0 and z.sign_at(1) > 0):
                z = z + step
                step = step * 2
        return z
    F = field.const_field
    residues = []
    moduli = []
    for place, target, level in constraints:
        if isinstance(place, InfinitePlace):
            raise OutOfSupportedRange("no approximation at the degree place")
        assert isinstance(place, FunctionPlace) and level >= 1
        mk = place.poly
        for _ in range(level - 1):
            mk = fqpoly.mul(F, mk, place.poly)
        num, den = target.num, target.den
        assert fqpoly.divmod_(F, den, place.poly)[1], "target must be integral"
        t = fqpoly.mul(F, num, fqpoly.inv_mod(F, den, mk))
        residues.append(fqpoly.mod(F, t, mk))
        moduli.append(mk)
    x = _poly_crt(F, residues, moduli)
    return field.elt(x)


def _int_crt(residues, moduli):
    x, M = 0, 1
    for r, m in zip(residues, moduli):
        g, a, _ = _xgcd(M, m)
        assert g == 1, "weak approximation needs distinct places"
        x = (x + M * a * (r - x)) % (M * m)
        M *= m
    return x


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    t = (old_r - old_s * a) // b if b else 0
    return old_r, old_s, t


def _poly_crt(F, residues, moduli):
    x, M = residues[0], moduli[0]
    for r, m in zip(residues[1:], moduli[1:]):
        g, a, _ = fqpoly.ext_gcd(F, M, m)
        assert fqpoly.is_one(F, g), "weak approximation needs distinct places"
        diff = fqpoly.sub(F, r, x)
        x = fqpoly.add(F, x, fqpoly.mul(F, M, fqpoly.mod(F, fqpoly.mul(F, a, diff), m)))
        M = fqpoly.mul(F, M, m)
        x = fqpoly.mod(F, x, M)
    return x


# ----------------------------------------------------------- enumeration

def enumerate_places(field, bound: int) -> list[FinitePlace]:
    """Finite places of bounded size: norm bound (number fields) or degree
    bound (function fields, degree place listed last)."""
    if isinstance(field, RationalField):
        return [RationalPlace(field, p) for p in primerange(2, bound + 1)]
    if isinstance(field, QuadraticField):
        out = []
        for p in primerange(2, bound + 1):
            for pl in quadratic_places(field, p):
                if p ** pl.f <= bound:
                    out.append(pl)
        out.sort(key=lambda pl: (pl.p ** pl.f, pl.p,
                                 -1 if pl.root is None else pl.root))
        return out
    F = field.const_field
    if F.order ** max(bound, 1) > 10 ** 6:
        raise OutOfSupportedRange("degree bound too large for enumeration")
    out = []
    for d in range(1, bound + 1):
        for pi in fqpoly.monic_irreducibles(F, d):
            out.append(FunctionPlace(field, pi))
    out.append(InfinitePlace(field))
    return out


# ---------------------------------------------------------------- parsing

def place_sort_key(place):
    """Total order on finite places of one field, for deterministic output."""
    if isinstance(place, RationalPlace):
        return (0, place.p, 0)
    if isinstance(place, QuadraticPlace):
        return (0, place.p, -1 if place.root is None else place.root)
    if isinstance(place, FunctionPlace):
        return (0, place.degree(), _poly_key(place.poly))
    return (1, 0, 0)   # the degree place sorts last


def _poly_key(poly):
    return tuple(c if isinstance(c, int) else tuple(c) for c in poly)


def place_str(place) -> str:
    return repr(place)


def parse_place(field, s: str):
    s = s.strip()
    if isinstance(field, FunctionField):
        if s == "inf":
            return InfinitePlace(field)
        assert s.startswith("(") and s.endswith(")"), f"bad place {s!r}"
        from .gfields import parse_ratfunc
        val = parse_ratfunc(field, s[1:-1])
        F = field.const_field
        assert fqpoly.is_one(F, val.den), f"bad place {s!r}"
        pi = fqpoly.monic(F, val.num)
        assert fqpoly.is_irreducible(F, pi), f"{s!r} is not irreducible"
        return FunctionPlace(field, pi)
    assert s.startswith("(") and s.endswith(")"), f"bad place {s!r}"
    body = s[1:-1]
    if isinstance(field, RationalField):
        p = int(body)
        assert isprime(p), f"{p} is not prime"
        return RationalPlace(field, p)
    parts = [t.strip() for t in body.split(",")]
    p = int(parts[0])
    choices = quadratic_places(field, p)
    if len(parts) == 1:
        assert len(choices) == 1, \
            f"{p} splits; pick a root: " + " or ".join(map(repr, choices))
        return choices[0]
    r = int(parts[1]) % p
    for pl in choices:
        if pl.root == r and pl.kind == "split":
            return pl
    raise AssertionError(f"no place {s!r}; omega has roots "
                         + ", ".join(str(c.root) for c in choices))

"""Tame-symbol calculus on global fields.

The tame symbol at a finite place v sends a pair (f, g) of nonzero field
elements to (-1)^(v(f)v(g)) f^(v(g)) g^(-v(f)) reduced at v; it lands in the
residue field's unit group.  Composing with the residue-field norm gives the
boundary into the base units, whose total product over a function field's
places is 1 (Weil reciprocity).  Over Q the same data splits into a 2-adic
sign and odd tame components, and the corresponding product formula is the
Hilbert-symbol check.

The sign convention keeps the g-exponent negative; some texts invert it.
Both satisfy the same axioms but differ by inversion, so all frozen test
values assume this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from . import fqpoly
from .errors import ZeroElement
from .gfields import (FunctionField, GlobalField, QuadraticField,
                      RationalField, rational_field)
from .places import (FinitePlace, FunctionPlace, InfinitePlace, RationalPlace,
                     place_sort_key, quadratic_places, residue, residue_field,
                     residue_norm, valuation)
from .quadratic import elt_coords


@dataclass(frozen=True)
class SteinbergSymbol:
    field: GlobalField
    f: object
    g: object

    def __post_init__(self):
        if _is_zero(self.field, self.f) or _is_zero(self.field, self.g):
            raise ZeroElement("symbol entries must be nonzero")


def _is_zero(field, x) -> bool:
    if isinstance(field, RationalField):
        return Fraction(x) == 0
    if isinstance(field, QuadraticField):
        return x.norm() == 0
    return not x.num


def _one(field):
    if isinstance(field, RationalField):
        return Fraction(1)
    if isinstance(field, QuadraticField):
        return field.elt(1)
    return field.from_int_polys((1,))


def _pow(field, x, e: int):
    if e < 0:
        x = _one(field) / x
        e = -e
    out = _one(field)
    while e:
        if e & 1:
            out = out * x
        x = x * x
        e >>= 1
    return out


class ZeroCycle:
    """Finite formal sum of finite places with integer multiplicities."""

    def __init__(self, terms=None):
        self.terms = {}
        for place, k in (terms or {}).items():
            if k:
                self.terms[place] = k

    def __add__(self, other: "ZeroCycle") -> "ZeroCycle":
        out = dict(self.terms)
        for place, k in other.terms.items():
            out[place] = out.get(place, 0) + k
        return ZeroCycle(out)

    def __neg__(self) -> "ZeroCycle":
        return ZeroCycle({p: -k for p, k in self.terms.items()})

    def __sub__(self, other: "ZeroCycle") -> "ZeroCycle":
        return self + (-other)

    def scale(self, c: int) -> "ZeroCycle":
        return ZeroCycle({p: c * k for p, k in self.terms.items()})

    def support(self):
        return set(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: place_sort_key(t[0]))

    def __eq__(self, other):
        return isinstance(other, ZeroCycle) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for place, k in self.items():
            bits.append(f"{k:+d}*[{place!r}]")
        return " ".join(bits)


# ------------------------------------------------------------- tame symbol

def tame_symbol(v: FinitePlace, s: SteinbergSymbol):
    m = valuation(v, s.f)
    n = valuation(v, s.g)
    h = _pow(s.field, s.f, n) * _pow(s.field, s.g, -m)
    if (m * n) % 2:
        h = -h
    return residue(v, h)


# ------------------------------------------------------------ divisor maps

def boundary_div(field, x) -> ZeroCycle:
    """Divisor of a nonzero element over the finite places (and infinity
    for a function field)."""
    if _is_zero(field, x):
        raise ZeroElement("divisor of zero")
    terms = {}
    if isinstance(field, RationalField):
        x = Fraction(x)
        for p, e in factorint(x.numerator).items():
            if p > 0:
                terms[RationalPlace(field, int(p))] = int(e)
        for p, e in factorint(x.denominator).items():
            terms[RationalPlace(field, int(p))] = -int(e)
        return ZeroCycle(terms)
    if isinstance(field, QuadraticField):
        u, v, n = elt_coords(x)
        T, N = field.omega_trace, field.omega_norm
        nrm = abs(u * u + T * u * v + N * v * v)
        primes = set(factorint(nrm)) | set(factorint(n))
        for p in sorted(primes):
            for pl in quadratic_places(field, int(p)):
                k = valuation(pl, x)
                if k:
                    terms[pl] = k
        return ZeroCycle(terms)
    F = field.const_field
    for pi, e in fqpoly.factor(F, x.num):
        terms[FunctionPlace(field, pi)] = e
    for pi, e in fqpoly.factor(F, x.den):
        pl = FunctionPlace(field, pi)
        terms[pl] = terms.get(pl, 0) - e
    vinf = fqpoly.deg(x.den) - fqpoly.deg(x.num)
    if vinf:
        terms[InfinitePlace(field)] = vinf
    return ZeroCycle(terms)


def symbol_support(s: SteinbergSymbol) -> list:
    sup = boundary_div(s.field, s.f).support() | boundary_div(s.field, s.g).support()
    return sorted(sup, key=place_sort_key)


def boundary_k2(s: SteinbergSymbol) -> dict:
    """Norm of the tame symbol at every place in the joint divisor support."""
    return {v: residue_norm(v, tame_symbol(v, s)) for v in symbol_support(s)}


# -------------------------------------------------------- product formulas

def weil_product(s: SteinbergSymbol):
    """Product over all places of the normed tame symbol; equals 1."""
    assert isinstance(s.field, FunctionField)
    F = s.field.const_field
    out = F.one
    for v in symbol_support(s):
        out = F.mul(out, residue_norm(v, tame_symbol(v, s)))
    return out


def _odd_part_mod(x: Fraction, modulus: int) -> int:
    """x / 2^v2(x) reduced mod modulus (modulus a power of 2)."""
    num, den = x.numerator, x.denominator
    while num % 2 == 0:
        num //= 2
    while den % 2 == 0:
        den //= 2
    return num * pow(den, -1, modulus) % modulus


def hilbert_symbol_2(a: Fraction, b: Fraction) -> int:
    """Quadratic Hilbert symbol (a,b)_2 in {1,-1} by the closed form."""
    a, b = Fraction(a), Fraction(b)
    assert a != 0 and b != 0
    alpha = _v2(a)
    beta = _v2(b)
    u4, v4 = _odd_part_mod(a, 4), _odd_part_mod(b, 4)
    u8, v8 = _odd_part_mod(a, 8), _odd_part_mod(b, 8)
    eps_u = (u4 - 1) // 2 % 2
    eps_v = (v4 - 1) // 2 % 2
    om_u = (u8 * u8 - 1) // 8 % 2
    om_v = (v8 * v8 - 1) // 8 % 2
    e = eps_u * eps_v + alpha * om_v + beta * om_u
    return -1 if e % 2 else 1


def _v2(x: Fraction) -> int:
    v = 0
    num, den = x.numerator, x.denominator
    while num % 2 == 0:
        num //= 2
        v += 1
    while den % 2 == 0:
        den //= 2
        v -= 1
    return v


def k2q_components(s: SteinbergSymbol):
    """(2-adic sign, {odd prime: tame symbol != 1}) for a symbol over Q."""
    assert isinstance(s.field, RationalField)
    sign = hilbert_symbol_2(Fraction(s.f), Fraction(s.g))
    odd = {}
    for v in symbol_support(s):
        if v.p == 2:
            continue
        t = tame_symbol(v, s)
        if t != 1:
            odd[v.p] = t
    return sign, odd


def hilbert_product_check(a, b) -> bool:
    """Product formula for the quadratic Hilbert symbol over Q."""
    a, b = Fraction(a), Fraction(b)
    assert a != 0 and b != 0
    total = hilbert_symbol_2(a, b)
    if a < 0 and b < 0:
        total = -total
    s = SteinbergSymbol(rational_field(), a, b)
    for v in symbol_support(s):
        if v.p == 2:
            continue
        t = tame_symbol(v, s)
        leg = pow(t, (v.p - 1) // 2, v.p)
        if leg == v.p - 1:
            total = -total
    return total == 1


# ----------------------------------------------------------- K2 filtration

def u_filtration_k2_class(v: FinitePlace, s: SteinbergSymbol):
    """(tame part, level indicator): level 1 iff both entries are units and
    at least one has residue 1, which generates inside the level-1 part."""
    tame = tame_symbol(v, s)
    k = residue_field(v)
    if valuation(v, s.f) == 0 and valuation(v, s.g) == 0:
        if residue(v, s.f) == k.one or residue(v, s.g) == k.one:
            return tame, 1
    return tame, 0

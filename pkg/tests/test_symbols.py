"""Tame symbols, divisor and K2 boundary maps, product formulas.

Frozen values were recomputed by hand from the defining formula
(-1)^(mn) f^n g^(-m) mod v and from the closed form of the quadratic
Hilbert symbol.
"""

import random
from fractions import Fraction

import pytest

from tamechow import (SteinbergSymbol, ZeroCycle, ZeroElement, boundary_div,
                      boundary_k2, function_field, hilbert_product_check,
                      hilbert_symbol_2, k2q_components, parse_place,
                      places_over, rational_field, residue, tame_symbol,
                      u_filtration_k2_class, valuation, weil_product)
from tamechow.gfields import parse_ratfunc
from tamechow.places import residue_degree

Q = rational_field()
F3T = function_field(3)
F9T = function_field(9)


def rat(s):
    return parse_ratfunc(F3T, s)


def _rand_frac(rng):
    while True:
        f = Fraction(rng.randrange(-60, 60), rng.randrange(1, 60))
        if f:
            return f


def _rand_rf(field, rng, maxdeg=3):
    # int coefficients are reduced mod the characteristic, not mod q
    p = field.const_field.char
    while True:
        num = tuple(rng.randrange(p) for _ in range(rng.randrange(1, maxdeg + 2)))
        den = tuple(rng.randrange(p) for _ in range(rng.randrange(1, maxdeg + 2)))
        if any(num) and any(den):
            return field.from_int_polys(num, den)


# ------------------------------------------------------------ tame symbol

def test_tame_symbol_frozen():
    v5 = places_over(Q, 5)[0]
    assert tame_symbol(v5, SteinbergSymbol(Q, Fraction(5), Fraction(2))) == 3
    vt1 = parse_place(F3T, "(t+1)")
    assert tame_symbol(vt1, SteinbergSymbol(F3T, rat("t"), rat("t+1"))) == 2


def test_tame_symbol_of_units_is_one():
    v7 = places_over(Q, 7)[0]
    assert tame_symbol(v7, SteinbergSymbol(Q, Fraction(3), Fraction(10))) == 1


def test_tame_symbol_antisymmetry_sign():
    # {f,g}{g,f} = 1, so the two tame symbols are inverse residues
    rng = random.Random(11)
    v5 = places_over(Q, 5)[0]
    for _ in range(40):
        f, g = _rand_frac(rng), _rand_frac(rng)
        a = tame_symbol(v5, SteinbergSymbol(Q, f, g))
        b = tame_symbol(v5, SteinbergSymbol(Q, g, f))
        assert a * b % 5 == 1


def test_tame_symbol_bimultiplicative_spot():
    rng = random.Random(13)
    v3 = places_over(Q, 3)[0]
    vt = parse_place(F3T, "(t)")
    for _ in range(50):
        f1, f2, g = _rand_frac(rng), _rand_frac(rng), _rand_frac(rng)
        lhs = tame_symbol(v3, SteinbergSymbol(Q, f1 * f2, g))
        rhs = tame_symbol(v3, SteinbergSymbol(Q, f1, g)) * tame_symbol(
            v3, SteinbergSymbol(Q, f2, g)) % 3
        assert lhs == rhs
        a1, a2, b = (_rand_rf(F3T, rng) for _ in range(3))
        lhs = tame_symbol(vt, SteinbergSymbol(F3T, a1 * a2, b))
        rhs = tame_symbol(vt, SteinbergSymbol(F3T, a1, b)) * tame_symbol(
            vt, SteinbergSymbol(F3T, a2, b)) % 3
        assert lhs == rhs


def test_tame_symbol_steinberg_spot():
    rng = random.Random(17)
    count = 0
    while count < 50:
        f = _rand_frac(rng)
        if f == 1:
            continue
        s = SteinbergSymbol(Q, f, 1 - f)
        for v in {p for p in (places_over(Q, q)[0] for q in (2, 3, 5, 7))}:
            assert tame_symbol(v, s) == 1
        count += 1


def test_symbol_rejects_zero_entry():
    with pytest.raises(ZeroElement):
        SteinbergSymbol(Q, Fraction(0), Fraction(3))
    with pytest.raises(ZeroElement):
        SteinbergSymbol(F3T, rat("t"), rat("0"))


# ----------------------------------------------------------- divisor map

def test_boundary_div_frozen_rational():
    d = boundary_div(Q, Fraction(12, 5))
    want = {"(2)": 2, "(3)": 1, "(5)": -1}
    assert {repr(v): k for v, k in d.terms.items()} == want


def test_boundary_div_of_one_is_empty():
    assert not boundary_div(Q, Fraction(1))
    assert boundary_div(Q, Fraction(-1)) == ZeroCycle()


def test_boundary_div_frozen_function_field():
    d = boundary_div(F3T, rat("t/(t+1)"))
    assert {repr(v): k for v, k in d.terms.items()} == {"(t)": 1, "(t+1)": -1}


def test_boundary_div_degree_zero_with_infinity():
    # over a function field the full divisor has total degree zero
    rng = random.Random(19)
    for _ in range(30):
        f = _rand_rf(F3T, rng, 4)
        total = sum(residue_degree(v) * k
                    for v, k in boundary_div(F3T, f).terms.items())
        assert total == 0


def test_boundary_div_is_homomorphism():
    rng = random.Random(23)
    for _ in range(30):
        f, g = _rand_frac(rng), _rand_frac(rng)
        assert boundary_div(Q, f * g) == boundary_div(Q, f) + boundary_div(Q, g)
        a, b = _rand_rf(F3T, rng), _rand_rf(F3T, rng)
        assert boundary_div(F3T, a * b) == boundary_div(F3T, a) + boundary_div(F3T, b)


def test_boundary_div_rejects_zero():
    with pytest.raises(ZeroElement):
        boundary_div(Q, Fraction(0))


def test_zero_cycle_algebra():
    v2, v3 = places_over(Q, 2)[0], places_over(Q, 3)[0]
    c = ZeroCycle({v2: 1, v3: 2})
    assert (c - c) == ZeroCycle() and not (c - c)
    assert c.scale(3).terms[v3] == 6
    assert (-c).terms[v2] == -1
    assert repr(c) == "+1*[(2)] +2*[(3)]"
    # zero multiplicities are dropped
    assert ZeroCycle({v2: 0}) == ZeroCycle()


# ------------------------------------------------------------ K2 boundary

def test_boundary_k2_frozen():
    got = boundary_k2(SteinbergSymbol(Q, Fraction(2), Fraction(3)))
    assert {repr(v): x for v, x in got.items()} == {"(2)": 1, "(3)": 2}
    got = boundary_k2(SteinbergSymbol(F3T, rat("t"), rat("t+1")))
    assert {repr(v): x for v, x in got.items()} == {"(t)": 1, "(t+1)": 2, "inf": 2}


def test_boundary_k2_values_are_units():
    rng = random.Random(29)
    for _ in range(20):
        s = SteinbergSymbol(Q, _rand_frac(rng), _rand_frac(rng))
        for v, x in boundary_k2(s).items():
            assert 1 <= x < v.p


# ------------------------------------------------------- product formulas

def test_weil_product_frozen():
    assert weil_product(SteinbergSymbol(F3T, rat("t"), rat("t+1"))) == 1


def test_weil_product_constant_entry():
    f = rat("(t^2+1)/(t+2)")
    assert weil_product(SteinbergSymbol(F3T, rat("2"), f)) == 1


def test_weil_product_f_minus_f():
    f = rat("t^2+t+2")
    assert weil_product(SteinbergSymbol(F3T, f, -f)) == 1


def test_weil_product_random_spot():
    rng = random.Random(31)
    for field in (F3T, F9T):
        one = field.const_field.one
        for _ in range(20):
            s = SteinbergSymbol(field, _rand_rf(field, rng, 4),
                                _rand_rf(field, rng, 4))
            assert weil_product(s) == one


# -------------------------------------------------------------- K2 of Q

def test_hilbert_symbol_2_frozen():
    assert hilbert_symbol_2(Fraction(-1), Fraction(-1)) == -1
    assert hilbert_symbol_2(Fraction(2), Fraction(3)) == -1
    assert hilbert_symbol_2(Fraction(1), Fraction(7)) == 1
    assert hilbert_symbol_2(Fraction(2), Fraction(7)) == 1   # 7 = 9 - 2
    assert hilbert_symbol_2(Fraction(5), Fraction(3)) == 1


def test_hilbert_symbol_2_symmetric_and_bimultiplicative():
    rng = random.Random(37)
    for _ in range(60):
        a, b, c = (_rand_frac(rng) for _ in range(3))
        assert hilbert_symbol_2(a, b) == hilbert_symbol_2(b, a)
        assert hilbert_symbol_2(a * c, b) == hilbert_symbol_2(
            a, b) * hilbert_symbol_2(c, b)


def test_k2q_components_frozen():
    sign, odd = k2q_components(SteinbergSymbol(Q, Fraction(-1), Fraction(-1)))
    assert (sign, odd) == (-1, {})
    sign, odd = k2q_components(SteinbergSymbol(Q, Fraction(2), Fraction(3)))
    assert (sign, odd) == (-1, {3: 2})


def test_k2q_square_kills_components():
    rng = random.Random(41)
    for _ in range(25):
        a, b = _rand_frac(rng), _rand_frac(rng)
        sign, odd = k2q_components(SteinbergSymbol(Q, a * a, b))
        assert sign == 1
        for p, x in odd.items():
            # symbols of squares are squares
            assert pow(x, (p - 1) // 2, p) == 1


def test_hilbert_product_check_frozen():
    assert hilbert_product_check(Fraction(3), Fraction(5))
    assert hilbert_product_check(Fraction(-1), Fraction(-1))
    assert hilbert_product_check(Fraction(1), Fraction(-17))


def test_hilbert_product_check_random():
    rng = random.Random(43)
    for _ in range(100):
        assert hilbert_product_check(_rand_frac(rng), _rand_frac(rng))


# ------------------------------------------------------------ filtration

def test_u_filtration_frozen():
    v5 = places_over(Q, 5)[0]
    cases = [((26, 2), (1, 1)),
             ((5, 2), (3, 0)),
             ((2, 3), (1, 0))]
    for (f, g), want in cases:
        got = u_filtration_k2_class(v5, SteinbergSymbol(Q, Fraction(f), Fraction(g)))
        assert got == want, (f, g)


def test_u_filtration_level_one_has_trivial_tame():
    # principal-unit entries force the tame part to 1
    rng = random.Random(47)
    v7 = places_over(Q, 7)[0]
    for _ in range(30):
        g = _rand_frac(rng)
        if valuation(v7, g):
            continue
        f = Fraction(1 + 7 * rng.randrange(1, 20))
        tame, level = u_filtration_k2_class(v7, SteinbergSymbol(Q, f, g))
        assert tame == 1 and level == 1
        assert residue(v7, f) == 1

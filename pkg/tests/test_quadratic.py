"""Quadratic field arithmetic: ideals, units, class groups.

Class numbers below were cross-checked against the standard tables for
small discriminants; narrow orders against h+ = h * (2 if N(eps) = +1
else 1) for real fields.
"""

from fractions import Fraction

import pytest

from tamechow.gfields import QuadElt, quadratic_field
from tamechow.quadratic import (
    build_class_data,
    class_invariants,
    factor_rational_prime,
    fundamental_unit,
    ideal_crt,
    ideal_mul,
    ideal_pow,
    place_ideal,
    principal_generator,
    principal_ideal,
    unit_generators,
    unit_ideal,
    unit_torsion_order,
)

# --------------------------------------------------------- class groups

IMAG_TABLE = {
    -1: (),
    -2: (),
    -3: (),
    -5: (2,),
    -6: (2,),
    -14: (4,),
    -21: (2, 2),
    -23: (3,),
    -30: (2, 2),
    -39: (4,),
    -47: (5,),
    -199: (9,),
}


def test_imaginary_class_groups_frozen():
    for d, inv in IMAG_TABLE.items():
        assert class_invariants(quadratic_field(d)) == inv, d


REAL_TABLE = {
    # d: (wide, narrow)
    2: ((), ()),
    3: ((), (2,)),
    5: ((), ()),
    10: ((2,), (2,)),
    14: ((), (2,)),        # narrow class not generated by small primes
    15: ((2,), (2, 2)),
    34: ((2,), (4,)),      # narrow group is cyclic, not (2,2)
    79: ((3,), (6,)),
}


def test_real_class_groups_frozen():
    for d, (wide, narrow) in REAL_TABLE.items():
        K = quadratic_field(d)
        assert class_invariants(K) == wide, d
        assert class_invariants(K, narrow=True) == narrow, d


def _order(inv):
    n = 1
    for k in inv:
        n *= k
    return n


def test_narrow_order_from_unit_norm():
    # h+ = h when the fundamental unit has norm -1, else 2h
    for d in (2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23,
              26, 29, 31, 33, 34, 35, 37, 38, 39, 41, 43, 46, 47, 51, 53):
        K = quadratic_field(d)
        h = _order(class_invariants(K))
        hplus = _order(class_invariants(K, narrow=True))
        if fundamental_unit(K).norm() == -1:
            assert hplus == h, d
        else:
            assert hplus == 2 * h, d


def test_class_count_matches_bfs_reps():
    for d in (-5, -23, -30, 10, 34, 79):
        K = quadratic_field(d)
        data = build_class_data(K)
        assert _order(class_invariants(K)) == len(data.class_reps), d


# --------------------------------------------------------------- units

def test_fundamental_units_frozen():
    for d, x, y, n in ((2, 1, 1, -1),
                       (3, 2, 1, 1),
                       (5, Fraction(1, 2), Fraction(1, 2), -1),
                       (14, 15, 4, 1)):
        e = fundamental_unit(quadratic_field(d))
        assert (e.x, e.y) == (x, y), d
        assert e.norm() == n, d


def test_fundamental_unit_is_integral_unit():
    for d in (2, 6, 19, 22, 31, 46):
        e = fundamental_unit(quadratic_field(d))
        assert e.is_integral()
        assert abs(e.norm()) == 1
        assert e.sign_at(0) == 1 and (e - 1).sign_at(0) == 1


def test_fundamental_unit_imaginary_rejected():
    with pytest.raises(ValueError):
        fundamental_unit(quadratic_field(-5))


def test_unit_generators():
    Ki = quadratic_field(-1)
    (i,) = unit_generators(Ki)
    assert (i.x, i.y) == (0, 1)
    assert unit_torsion_order(Ki) == 4

    K3 = quadratic_field(-3)
    (z,) = unit_generators(K3)
    assert (z.x, z.y) == (Fraction(1, 2), Fraction(1, 2))
    assert unit_torsion_order(K3) == 6
    # z generates the order-6 torsion
    w = K3.elt(1)
    for _ in range(6):
        w = w * z
    assert (w.x, w.y) == (1, 0)

    K2 = quadratic_field(2)
    gens = unit_generators(K2)
    assert (gens[0].x, gens[0].y) == (-1, 0)
    assert gens[1] == fundamental_unit(K2)
    assert unit_torsion_order(K2) == 2


# ------------------------------------------------------- prime splitting

def test_factor_rational_prime_shapes():
    Ki = quadratic_field(-1)
    assert factor_rational_prime(Ki, 2) == [("ramified", 1, 2, 1)]
    split5 = factor_rational_prime(Ki, 5)
    assert [s[0] for s in split5] == ["split", "split"]
    assert sorted(s[1] for s in split5) == [2, 3]  # roots of x^2+1 mod 5
    assert factor_rational_prime(Ki, 3)[0][0] == "inert"


def test_splitting_respects_efg():
    for d in (-5, -1, 2, 13, -23):
        K = quadratic_field(d)
        for p in (2, 3, 5, 7, 11, 13):
            fac = factor_rational_prime(K, p)
            assert sum(e * f for _, _, e, f in fac) == 2, (d, p)
            # the place ideals multiply back to (p)
            prod = unit_ideal(K)
            for kind, root, e, f in fac:
                prod = ideal_mul(prod, ideal_pow(place_ideal(K, p, kind, root), e))
            assert prod == principal_ideal(K, K.elt(p)), (d, p)


def test_place_ideal_norm():
    for d, p, want in ((-5, 3, 3), (-5, 11, 121), (-1, 2, 2), (2, 7, 7)):
        K = quadratic_field(d)
        kind, root, e, f = factor_rational_prime(K, p)[0]
        assert place_ideal(K, p, kind, root).norm == want


def test_ideal_norm_multiplicative():
    K = quadratic_field(-5)
    ps = []
    for p in (2, 3, 7, 29):
        kind, root, _, _ = factor_rational_prime(K, p)[0]
        ps.append(place_ideal(K, p, kind, root))
    for i in range(len(ps)):
        for j in range(len(ps)):
            assert ideal_mul(ps[i], ps[j]).norm == ps[i].norm * ps[j].norm


# -------------------------------------------------- principal generators

def test_principal_generator_class_number_one():
    K = quadratic_field(2)
    kind, root, _, _ = factor_rational_prime(K, 7)[0]
    I = place_ideal(K, 7, kind, root)
    g = principal_generator(I)
    assert g is not None
    assert principal_ideal(K, g) == I


def test_principal_generator_detects_nonprincipal():
    K = quadratic_field(-5)
    kind, root, _, _ = factor_rational_prime(K, 2)[0]
    p2 = place_ideal(K, 2, kind, root)
    assert principal_generator(p2) is None
    g = principal_generator(ideal_pow(p2, 2))
    assert g is not None
    assert principal_ideal(K, g) == ideal_pow(p2, 2)


def test_principal_generator_narrow_parity():
    # (sqrt(14)) is principal but has no totally positive generator
    K = quadratic_field(14)
    I = principal_ideal(K, K.sqrt_gen)
    assert principal_generator(I) is not None
    assert principal_generator(I, narrow=True) is None


# ----------------------------------------------------------------- CRT

def test_ideal_crt_postcondition():
    K = quadratic_field(-5)
    (k1, r1, _, _), (k2, r2, _, _) = factor_rational_prime(K, 3)
    A = place_ideal(K, 3, k1, r1)
    B = place_ideal(K, 3, k2, r2)
    kind7, root7, _, _ = factor_rational_prime(K, 7)[0]
    C = place_ideal(K, 7, kind7, root7)
    targets = [K.elt(1), K.elt(2), K.elt(0, 1)]
    z = ideal_crt(K, list(zip(targets, (A, B, C))))
    assert z.is_integral()
    for t, I in zip(targets, (A, B, C)):
        assert I.contains(z - t)


def test_ideal_crt_empty():
    K = quadratic_field(-1)
    z = ideal_crt(K, [])
    assert z.is_zero()

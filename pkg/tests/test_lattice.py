"""Smith normal form, cokernel presentations and induced maps.

Frozen values come from brute-force coset enumeration of small quotients;
the randomized checks assert the transform identity and unimodular
invariance of the invariant factors.
"""

import random

import pytest

from tamechow import (FinAbGroup, InfiniteCokernel, IntMatrix,
                      RelationViolated, cokernel_invariants,
                      cokernel_presentation, smith_normal_form)
from tamechow.lattice import induced_hom


def snf_checked(rows):
    A = IntMatrix.from_rows(rows)
    D, U, V = smith_normal_form(A)
    assert U.mul(A).mul(V).entries == D.entries
    diag = [d for d in D.diagonal() if d]
    assert all(d > 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    return D


def test_snf_identity():
    assert snf_checked([[1, 0], [0, 1]]).diagonal() == (1, 1)


def test_snf_diagonal_merge():
    assert snf_checked([[2, 0], [0, 3]]).diagonal() == (1, 6)


def test_snf_shear():
    assert snf_checked([[2, 1], [0, 2]]).diagonal() == (1, 4)


def test_snf_random_transforms():
    rng = random.Random(7)
    for _ in range(80):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        snf_checked([[rng.randrange(-9, 10) for _ in range(n)]
                     for _ in range(m)])


def test_cokernel_identity_trivial():
    grp = cokernel_invariants(IntMatrix.identity(3), 3)
    assert grp.invariant_factors == ()
    assert grp.order == 1


def test_cokernel_single_generator():
    grp = cokernel_invariants(IntMatrix.from_rows([[6]]), 1)
    assert grp.invariant_factors == (6,)


def test_cokernel_diagonal_cyclic():
    grp = cokernel_invariants(IntMatrix.from_rows([[2, 0], [0, 3]]), 2)
    assert grp.invariant_factors == (6,)


def test_cokernel_order_is_absolute_determinant():
    rng = random.Random(11)
    for _ in range(80):
        rows = [[rng.randrange(-8, 9) for _ in range(2)] for _ in range(2)]
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        A = IntMatrix.from_rows(rows)
        if det == 0:
            with pytest.raises(InfiniteCokernel):
                cokernel_invariants(A, 2)
        else:
            assert cokernel_invariants(A, 2).order == abs(det)


def test_cokernel_unimodular_invariance():
    rng = random.Random(3)
    tried = 0
    while tried < 40:
        rows = [[rng.randrange(-6, 7) for _ in range(3)] for _ in range(3)]
        try:
            base = cokernel_invariants(IntMatrix.from_rows(rows), 3)
        except InfiniteCokernel:
            continue
        tried += 1
        swapped = [rows[1], rows[0], rows[2]]
        colswap = [[r[2], r[1], r[0]] for r in rows]
        shear = [[r[0] + 2 * r[1], r[1], r[2]] for r in rows]
        for variant in (swapped, colswap, shear):
            grp = cokernel_invariants(IntMatrix.from_rows(variant), 3)
            assert grp.invariant_factors == base.invariant_factors


def test_cokernel_empty_conventions():
    assert cokernel_invariants(IntMatrix.zeros(0, 0), 0).order == 1
    with pytest.raises(InfiniteCokernel):
        cokernel_invariants(IntMatrix.zeros(2, 0), 2)
    with pytest.raises(InfiniteCokernel):
        cokernel_invariants(IntMatrix.from_rows([[2, 4], [1, 2]]), 2)


def test_presentation_project_lift_roundtrip():
    pres = cokernel_presentation(IntMatrix.from_rows([[2, 1], [0, 2]]), 2)
    assert pres.group.invariant_factors == (4,)
    for k in range(pres.group.rank):
        unit = tuple(1 if i == k else 0 for i in range(pres.group.rank))
        assert pres.project(pres.generator_lift(k)) == unit
    # the relation columns themselves project to the identity
    assert pres.project((2, 0)) == pres.group.identity()
    assert pres.project((1, 2)) == pres.group.identity()


def test_finabgroup_basics():
    G = FinAbGroup((2, 4))
    assert G.order == 8 and G.rank == 2
    assert G.element_order((1, 2)) == 2
    assert G.element_order((0, 1)) == 4
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert len(list(G.elements())) == 8
    with pytest.raises(ValueError):
        FinAbGroup((4, 2))
    with pytest.raises(ValueError):
        FinAbGroup((1,))


def test_induced_hom_checks_relations():
    src = FinAbGroup((7,))
    tgt = FinAbGroup((14,))
    # 7 * 2 = 14 = 0 mod 14, so class 2 is a legal image of the generator
    h = induced_hom(src, tgt, [(2,)])
    assert h((1,)) == (2,)
    assert h((3,)) == (6,)
    with pytest.raises(RelationViolated):
        induced_hom(src, tgt, [(1,)])


def test_induced_hom_trivial_source():
    h = induced_hom(FinAbGroup(()), FinAbGroup((5,)), [])
    assert h(()) == (0,)

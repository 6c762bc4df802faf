"""Structure of a finite abelian group given by a raw multiplication rule.

Deliberately avoids Smith normal form: several acceptance checks need the
invariant factors computed along an independent route, and this module is
that route.  The algorithm is the textbook one: an element of maximal order
generates a direct summand, so peel it off and recurse on the quotient.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable


def element_order(x, mul: Callable, identity) -> int:
    n = 1
    acc = x
    while acc != identity:
        acc = mul(acc, x)
        n += 1
        if n > 1 << 22:
            raise RuntimeError("element order blew past the sanity cap")
    return n


def invariant_factors_from_table(elements: Iterable[Hashable], mul: Callable,
                                 identity) -> tuple[int, ...]:
    """Invariant factors (d_1 | ... | d_k, all > 1) of a finite abelian group.

    elements must enumerate the whole group; mul must be total on it.
    """
    elems = list(elements)
    seen = set(elems)
    if len(seen) != len(elems):
        raise ValueError("duplicate elements in enumeration")
    if identity not in seen:
        raise ValueError("identity missing from enumeration")
    # quick closure sanity on a few products
    if len(elems) == 1:
        return ()

    orders = {x: element_order(x, mul, identity) for x in elems}
    # deterministic pick: first element attaining the maximal order
    omax = max(orders.values())
    gmax = next(x for x in elems if orders[x] == omax)

    if omax == len(elems):
        return (omax,)

    # cosets of <gmax>
    cyc = [identity]
    acc = gmax
    while acc != identity:
        cyc.append(acc)
        acc = mul(acc, gmax)
    cyc_set = set(cyc)
    assert len(cyc_set) == omax

    coset_id: dict = {}
    reps: list = []
    for x in elems:
        if x in coset_id:
            continue
        rid = len(reps)
        reps.append(x)
        for h in cyc_set:
            coset_id[mul(x, h)] = rid

    def qmul(a: int, b: int) -> int:
        return coset_id[mul(reps[a], reps[b])]

    qidentity = coset_id[identity]
    sub = invariant_factors_from_table(range(len(reps)), qmul, qidentity)
    # the maximal order is the group exponent, so everything upstream divides it
    assert all(omax % d == 0 for d in sub), (sub, omax)
    return sub + (omax,)

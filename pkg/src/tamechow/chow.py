"""Relative class groups of zero-cycles on one-dimensional arithmetic schemes.

A modulus is a squarefree effective divisor on the spectrum of a ring of
integers: a set of distinct finite places plus a variant flag.  Cycles
supported away from the modulus, taken modulo divisors of functions that
are congruent to 1 at every modulus place (and totally positive in the
narrow variant), form a finite abelian group.  It is assembled here from
the classical ray class presentation: one residue coordinate per modulus
place, one sign coordinate per real embedding (narrow only), and ideal
class generators coprime to the modulus, glued by unit and principality
relations.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import prod

from . import finfield
from .errors import (DuplicatePlace, NarrowUnsupported, OutOfSupportedRange,
                     PlaceInModulus, RelationViolated, SupportMeetsModulus)
from .gfields import (FunctionField, GlobalField, QuadraticField,
                      RationalField, QuadElt)
from .lattice import CokernelPresentation, FinAbGroup, IntMatrix, cokernel_presentation
from .places import (FinitePlace, FunctionPlace, InfinitePlace, QuadraticPlace,
                     RationalPlace, place_sort_key, real_embeddings, residue,
                     residue_degree, residue_field, residue_is_one, valuation,
                     weak_approx)
from .quadratic import (ClassData, build_class_data, class_invariants,
                        place_ideal, unit_generators, _from_omega_coords)
from .symbols import SteinbergSymbol, ZeroCycle, boundary_div, weil_product

ORDINARY = "ordinary"
NARROW = "narrow"


@dataclass(frozen=True)
class Modulus:
    field: GlobalField
    support: tuple             # finite places, sorted, pairwise distinct
    variant: str

    def __repr__(self):
        body = "+".join(repr(y) for y in self.support) or "0"
        return f"Modulus({body}; {self.variant})"


def make_modulus(field: GlobalField, places, variant: str = ORDINARY) -> Modulus:
    if variant not in (ORDINARY, NARROW):
        raise ValueError(f"unknown variant {variant!r}")
    if isinstance(field, FunctionField) and variant == NARROW:
        raise NarrowUnsupported("function fields have no real embeddings")
    places = list(places)
    for y in places:
        if isinstance(y, InfinitePlace):
            raise OutOfSupportedRange("modulus support must be finite places")
        if y.field is not field:
            raise ValueError("place does not belong to the given field")
    ordered = sorted(places, key=place_sort_key)
    for a, b in zip(ordered, ordered[1:]):
        if a == b:
            raise DuplicatePlace(f"repeated place {a!r} in modulus")
    return Modulus(field, tuple(ordered), variant)


def relation_member(f, m: Modulus) -> bool:
    """Units at every modulus place with residue 1; narrow adds positivity."""
    for y in m.support:
        if valuation(y, f) != 0:
            return False
        if not residue_is_one(y, f):
            return False
    if m.variant == NARROW:
        for emb in real_embeddings(m.field):
            if emb.sign(f) < 0:
                return False
    return True


# ------------------------------------------------------- group assembly

@dataclass(frozen=True)
class RayClassGroup:
    group: FinAbGroup
    modulus: Modulus
    _pres: CokernelPresentation
    _res_data: tuple           # per modulus place: (residue field, generator, order)
    _class_data: ClassData | None
    _cache: dict = dc_field(default_factory=dict, compare=False)

    def prime_class(self, place: FinitePlace) -> tuple[int, ...]:
        """Class of the prime cycle at a place away from the modulus."""
        if place in self.modulus.support:
            raise PlaceInModulus(f"{place!r} divides the modulus")
        if isinstance(place, InfinitePlace):
            raise OutOfSupportedRange("prime cycles live at finite places")
        if place.field is not self.modulus.field:
            raise ValueError("place does not belong to the modulus field")
        got = self._cache.get(place)
        if got is None:
            got = self._pres.project(self._place_vector(place))
            self._cache[place] = got
        return got

    def element_vector(self, x) -> list[int]:
        """Ambient coordinates of a field element that is a unit at the modulus."""
        vec = []
        for (k, g, order), y in zip(self._res_data, self.modulus.support):
            vec.append(finfield.dlog(k, residue(y, x), g))
        if self.modulus.variant == NARROW:
            for emb in real_embeddings(self.modulus.field):
                vec.append(0 if emb.sign(x) > 0 else 1)
        if self._class_data is not None:
            vec.extend(0 for _ in self._class_data.gen_ideals)
        return vec

    def _place_vector(self, place: FinitePlace) -> list[int]:
        K = self.modulus.field
        if isinstance(K, RationalField):
            return self.element_vector(Fraction(place.p))
        I = place_ideal(K, place.p, place.kind, place.root)
        word, gamma = self._class_data.decompose(I)
        vec = self.element_vector(gamma)
        n = len(word)
        vec[len(vec) - n:] = list(word)
        return vec


def relative_chow(field: GlobalField, m: Modulus) -> RayClassGroup:
    if isinstance(field, FunctionField):
        raise OutOfSupportedRange("the cycle class group is infinite over F_q(t)")
    if m.field is not field:
        raise ValueError("modulus does not belong to the given field")
    narrow = m.variant == NARROW

    res_data = []
    for y in m.support:
        k = residue_field(y)
        res_data.append((k, finfield.generator(k), k.order - 1))
    n_res = len(res_data)
    n_sign = len(real_embeddings(field)) if narrow else 0

    if isinstance(field, RationalField):
        cdata = None
        units = [Fraction(-1)]
        n_cls = 0
    else:
        # wide-equivalence class data even in the narrow variant: the sign
        # coordinates of the relation generators carry the positivity data
        avoid = frozenset(y.p for y in m.support)
        cdata = build_class_data(field, avoid_primes=avoid)
        units = unit_generators(field)
        n_cls = len(cdata.gen_ideals)

    rank = n_res + n_sign + n_cls
    cols: list[list[int]] = []

    def res_sign_coords(x) -> list[int]:
        vec = []
        for (k, g, order), y in zip(res_data, m.support):
            vec.append(finfield.dlog(k, residue(y, x), g))
        if narrow:
            for emb in real_embeddings(field):
                vec.append(0 if emb.sign(x) > 0 else 1)
        return vec

    # residue and sign coordinates have known exponents
    for i, (k, g, order) in enumerate(res_data):
        col = [0] * rank
        col[i] = order
        cols.append(col)
    for j in range(n_sign):
        col = [0] * rank
        col[n_res + j] = 2
        cols.append(col)
    # global units embed trivially
    for u in units:
        cols.append(res_sign_coords(u) + [0] * n_cls)
    # principality relations among the class generators
    if cdata is not None:
        for rel, gamma in zip(cdata.relations, cdata.relation_gens):
            head = res_sign_coords(gamma)
            cols.append([-c for c in head] + list(rel))

    if rank == 0:
        pres = cokernel_presentation(IntMatrix.from_rows([]), 0)
    else:
        A = IntMatrix.from_rows([[col[i] for col in cols] for i in range(rank)])
        pres = cokernel_presentation(A, rank)
    return RayClassGroup(pres.group, m, pres, tuple(res_data), cdata)


# ------------------------------------------------------ cycle evaluation

def cycle_class(c: ZeroCycle, G: RayClassGroup) -> tuple[int, ...]:
    supp = set(G.modulus.support)
    acc = G.group.identity()
    for place, mult in c.items():
        if place in supp:
            raise SupportMeetsModulus(f"{place!r} divides the modulus")
        acc = G.group.add(acc, G.group.scale(mult, G.prime_class(place)))
    return acc


def check_relation_vanishes(f, G: RayClassGroup) -> bool:
    if not relation_member(f, G.modulus):
        raise RelationViolated(f"{f!r} is not congruent to 1 at the modulus")
    cls = cycle_class(boundary_div(G.modulus.field, f), G)
    return cls == G.group.identity()


# --------------------------------------------------- exact sequence check

def support_integer(m: Modulus) -> int:
    """A positive rational integer lying in every modulus place."""
    return prod({y.p for y in m.support}) if m.support else 1


def _negative_at(field, m: Modulus, index: int):
    """An element congruent to 1 at the modulus, negative exactly at one
    real embedding (and at most the other one positive)."""
    M = support_integer(m)
    if isinstance(field, RationalField):
        t = 1
        while True:
            x = Fraction(1 - M * t)
            if x < 0:
                return x
            t += 1
    embs = real_embeddings(field)
    want = [-1 if j == index else 1 for j in range(len(embs))]
    for t in range(1, 10_000):
        for s in (1, -1):
            z = field.elt(1) + _from_omega_coords(field, 0, s * t * M)
            if [emb.sign(z) for emb in embs] == want:
                return z
    raise OutOfSupportedRange("no sign representative found")


def chrelfinite_check(field: GlobalField, m: Modulus) -> bool:
    """Order bookkeeping for the residue-field term of the cycle sequence.

    The kernel of the forgetful map onto the absolute ideal class group
    must have order dividing the residue unit group order (times the sign
    contribution in the narrow variant), and must be exactly the image of
    the residue generators lifted through weak approximation.
    """
    G = relative_chow(field, m)
    narrow = m.variant == NARROW
    if isinstance(field, RationalField):
        h = 1
    else:
        h = prod(class_invariants(field, narrow=False))
    assert G.group.order % h == 0, "the class group must be a quotient"
    kernel_order = G.group.order // h

    bound = prod(k.order - 1 for (k, g, o) in G._res_data)
    if narrow:
        bound *= 2 ** len(real_embeddings(field))
    if bound % kernel_order:
        return False

    gens: list[tuple[int, ...]] = []
    for i, y in enumerate(m.support):
        k, g, order = G._res_data[i]
        target = _lift_residue(field, y, g)
        constraints = [(y, target, 1)]
        for j, y2 in enumerate(m.support):
            if j != i:
                constraints.append((y2, _one_of(field), 1))
        x = weak_approx(field, constraints, totally_positive=narrow)
        gens.append(cycle_class(boundary_div(field, x), G))
    if narrow:
        for j in range(len(real_embeddings(field))):
            x = _negative_at(field, m, j)
            gens.append(cycle_class(boundary_div(field, x), G))

    seen = {G.group.identity()}
    frontier = [G.group.identity()]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = G.group.add(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen) == kernel_order


def _one_of(field):
    if isinstance(field, RationalField):
        return Fraction(1)
    return field.elt(1)


def _lift_residue(field, place, alpha):
    """Integral element reducing to alpha in the residue field at place."""
    if isinstance(field, RationalField):
        return Fraction(int(alpha))
    k = residue_field(place)
    if getattr(k, "base", None) is None:
        return field.elt(int(alpha))
    c = k.lift(alpha)
    return _from_omega_coords(field, int(c[0]), int(c[1]) if len(c) > 1 else 0)


# ------------------------------------------------------- norm surjectivity

@dataclass(frozen=True)
class MooreReport:
    q: int
    samples: int
    products_ok: bool
    norm_place: FunctionPlace
    norm_surjective: bool

    @property
    def passed(self) -> bool:
        return self.products_ok and self.norm_surjective


def sk1_moore_check(q: int, sample_count: int = 100, seed: int = 0) -> MooreReport:
    """Sampled triviality of symbol norms plus one explicit norm surjection.

    Random symbols over F_q(t) must have trivial product of normed tame
    symbols, and the norm from a degree-2 closed point's residue field
    must cover every constant unit.
    """
    import random
    from . import fqpoly

    field = FunctionField(q)
    F = field.const_field
    rng = random.Random(seed)

    def rand_coeff():
        if F.degree == 1:
            return rng.randrange(F.order)
        return tuple(rng.randrange(F.char) for _ in range(F.degree))

    def rand_elt():
        while True:
            num = tuple(rand_coeff() for _ in range(rng.randint(1, 5)))
            den = tuple(rand_coeff() for _ in range(rng.randint(1, 5)))
            try:
                z = field.elt(num, den)
            except ZeroDivisionError:
                continue
            if z.num:
                return z

    products_ok = True
    for _ in range(sample_count):
        s = SteinbergSymbol(field, rand_elt(), rand_elt())
        if weil_product(s) != F.one:
            products_ok = False
            break

    pi = next(iter(fqpoly.monic_irreducibles(F, 2)))
    place = FunctionPlace(field, pi)
    k = residue_field(place)
    hit = {finfield.norm_to_base(k, a) for a in k.elements() if a != k.zero}
    norm_surjective = hit == {a for a in F.elements() if a != F.zero}
    return MooreReport(q, sample_count, products_ok, place, norm_surjective)

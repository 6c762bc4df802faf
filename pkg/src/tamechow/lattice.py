"""Integer matrices, Smith normal form and finite abelian quotients.

Everything downstream (ray class groups, reciprocity targets) is assembled
as the cokernel of an explicit relation matrix, so this module is the load
bearing wall: smith_normal_form returns the full transform pair (U, V) with
U * A * V = D, and cokernel_presentation keeps enough of U to project an
ambient vector onto canonical coordinates of the quotient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm, prod
from typing import Iterator, Optional

from .errors import InfiniteCokernel, RelationViolated


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        return cls(rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(m)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.entries
        out = []
        for row in self.entries:
            out.append(tuple(sum(row[k] * ot[k][j] for k in range(self.cols))
                             for j in range(other.cols)))
        return IntMatrix(tuple(out))

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def apply(self, vec) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(row[k] * vec[k] for k in range(self.cols)) for row in self.entries)


def _pivot_search(M, t, m, n):
    # smallest |nonzero| in M[t:, t:], row-major tie break; None if submatrix is zero
    best = None
    for i in range(t, m):
        row = M[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best[1], best[2]
    return None if best is None else (best[1], best[2])


def _smith_with_inverse(A: IntMatrix):
    # returns (D, U, V, U^-1); U^-1 is maintained alongside U because the
    # cokernel presentation needs generator lifts and inverting afterwards
    # would repeat the whole reduction
    m, n = A.rows, A.cols
    M = [list(r) for r in A.entries]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, t, q):  # row_i -= q * row_t;  inverse: col_t += q * col_i
        Mi, Mt = M[i], M[t]
        for j in range(n):
            Mi[j] -= q * Mt[j]
        Ui, Ut = U[i], U[t]
        for j in range(m):
            Ui[j] -= q * Ut[j]
        for r in range(m):
            Uinv[r][t] += q * Uinv[r][i]

    def col_op(j, t, q):  # col_j -= q * col_t
        for i in range(m):
            M[i][j] -= q * M[i][t]
        for i in range(n):
            V[i][j] -= q * V[i][t]

    def swap_rows(i, t):
        M[i], M[t] = M[t], M[i]
        U[i], U[t] = U[t], U[i]
        for r in range(m):
            Uinv[r][i], Uinv[r][t] = Uinv[r][t], Uinv[r][i]

    def swap_cols(j, t):
        for i in range(m):
            M[i][j], M[i][t] = M[i][t], M[i][j]
        for i in range(n):
            V[i][j], V[i][t] = V[i][t], V[i][j]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]
        for r in range(m):
            Uinv[r][i] = -Uinv[r][i]

    def eliminate(t):
        # clear row t and column t below/right of the pivot; pivot shrinks
        # strictly at each re-pick, so this terminates
        while True:
            pos = _pivot_search(M, t, m, n)
            if pos is None:
                return False
            i, j = pos
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            if M[t][t] < 0:
                negate_row(t)
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    row_op(i, t, q)
                    if M[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    col_op(j, t, q)
                    if M[t][j]:
                        clean = False
            if clean:
                return True

    rank = 0
    for t in range(min(m, n)):
        if not eliminate(t):
            break
        rank += 1

    # enforce the divisibility chain d_i | d_j for i < j
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            for j in range(i + 1, rank):
                if M[j][j] % M[i][i]:
                    # drag d_j into column i and re-reduce the 2x2 block
                    col_op(i, j, -1)
                    eliminate(i)
                    changed = True
    for i in range(rank):
        if M[i][i] < 0:
            negate_row(i)

    D = IntMatrix(tuple(tuple(r) for r in M))
    Umat = IntMatrix(tuple(tuple(r) for r in U))
    Vmat = IntMatrix(tuple(tuple(r) for r in V))
    Uinvmat = IntMatrix(tuple(tuple(r) for r in Uinv))
    return D, Umat, Vmat, Uinvmat


def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U*A*V = D in Smith normal form.

    D is diagonal with nonnegative entries d_1 | d_2 | ... ; U (rows x rows)
    and V (cols x cols) are unimodular.  Pivot choice: smallest nonzero
    absolute value, first occurrence in row-major order, so the reduction is
    deterministic.
    """
    D, U, V, _ = _smith_with_inverse(A)
    return D, U, V


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group in invariant-factor coordinates.

    invariant_factors is (d_1, ..., d_k) with 1 < d_1 | d_2 | ... | d_k;
    elements are integer tuples taken mod the factors, identity all zero.
    """

    invariant_factors: tuple[int, ...]
    generator_images: Optional[dict] = field(default=None, compare=False)

    def __post_init__(self):
        fs = self.invariant_factors
        if any(d <= 1 for d in fs):
            raise ValueError("invariant factors must exceed 1")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def reduce(self, vec) -> tuple[int, ...]:
        if len(vec) != self.rank:
            raise ValueError("coordinate length mismatch")
        return tuple(int(v) % d for v, d in zip(vec, self.invariant_factors))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def scale(self, k: int, x) -> tuple[int, ...]:
        return tuple((k * a) % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x) -> int:
        o = 1
        for a, d in zip(x, self.invariant_factors):
            o = lcm(o, d // gcd(a, d))
        return o

    def elements(self, cap: int = 1 << 20) -> Iterator[tuple[int, ...]]:
        if self.order > cap:
            raise ValueError(f"group order {self.order} exceeds enumeration cap")
        from itertools import product as iproduct
        yield from iproduct(*(range(d) for d in self.invariant_factors))

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "order": self.order}

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class CokernelPresentation:
    """Cokernel Z^ambient / colspan(A) together with the coordinate map.

    project sends an ambient vector to its class in invariant-factor
    coordinates; generator_lift(k) returns an ambient vector mapping onto
    the k-th canonical generator.
    """

    group: FinAbGroup
    _proj_rows: tuple[tuple[int, ...], ...]
    _lift_cols: tuple[tuple[int, ...], ...]

    def project(self, vec) -> tuple[int, ...]:
        if self._proj_rows and len(vec) != len(self._proj_rows[0]):
            raise ValueError("ambient vector length mismatch")
        return tuple(sum(r * v for r, v in zip(row, vec)) % d
                     for row, d in zip(self._proj_rows, self.group.invariant_factors))

    def generator_lift(self, k: int) -> tuple[int, ...]:
        return self._lift_cols[k]


def cokernel_presentation(A: IntMatrix, ambient_rank: int) -> CokernelPresentation:
    if A.rows != ambient_rank:
        raise ValueError("relation matrix must have ambient_rank rows")
    if ambient_rank == 0:
        return CokernelPresentation(FinAbGroup(()), (), ())
    if A.cols == 0:
        raise InfiniteCokernel("no relations over a nonzero ambient rank")
    D, U, V, Uinv = _smith_with_inverse(A)
    diag = list(D.diagonal()) + [0] * (ambient_rank - min(A.rows, A.cols))
    if any(d == 0 for d in diag):
        raise InfiniteCokernel("relation matrix rank is below the ambient rank")
    keep = [i for i, d in enumerate(diag) if d > 1]
    group = FinAbGroup(tuple(diag[i] for i in keep))
    proj = tuple(U.entries[i] for i in keep)
    lifts = tuple(tuple(Uinv.entries[r][i] for r in range(ambient_rank)) for i in keep)
    return CokernelPresentation(group, proj, lifts)


def cokernel_invariants(A: IntMatrix, ambient_rank: int) -> FinAbGroup:
    """Invariant factors of Z^ambient_rank / (column span of A)."""
    return cokernel_presentation(A, ambient_rank).group


class Homomorphism:
    def __init__(self, source: FinAbGroup, target: FinAbGroup, images):
        self.source = source
        self.target = target
        self.images = tuple(target.reduce(x) for x in images)

    def __call__(self, coords) -> tuple[int, ...]:
        coords = self.source.reduce(coords)
        acc = self.target.identity()
        for c, img in zip(coords, self.images):
            acc = self.target.add(acc, self.target.scale(c, img))
        return acc


def induced_hom(source: FinAbGroup, target: FinAbGroup, images) -> Homomorphism:
    """Homomorphism sending the k-th source generator to images[k].

    Raises RelationViolated(k) if d_k * images[k] != 0 in the target, i.e.
    the assignment does not factor through the source presentation.
    """
    images = list(images)
    if len(images) != source.rank:
        raise ValueError("need one image per source generator")
    for k, (d, img) in enumerate(zip(source.invariant_factors, images)):
        if any(v for v in target.scale(d, target.reduce(img))):
            raise RelationViolated(k)
    return Homomorphism(source, target, images)

"""Global fields of the three supported kinds and their element types.

RationalField works on Fraction directly.  QuadraticField(d) elements are
QuadElt pairs x + y*sqrt(d) with Fraction coordinates; integrality and real
signs are decided exactly from the coordinates.  FunctionField(q) elements
are RatFunc fractions of fqpoly tuples over GF(q), kept reduced with monic
denominator so equality is structural.

Field objects are interned, so == is identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import factorint

from . import fqpoly
from .errors import OutOfSupportedRange
from .finfield import GF, fmt_element

MAX_QUAD_D = 200
MAX_FF_Q = 81


class RationalField:
    kind = "Q"
    r1 = 1
    name = "Q"

    def elt(self, x) -> Fraction:
        return Fraction(x)

    def __repr__(self):
        return "Q"


class QuadraticField:
    kind = "quad"

    def __init__(self, d: int):
        self.d = d
        # integral basis 1, omega; omega = (1+sqrt d)/2 iff d = 1 mod 4
        if d % 4 == 1:
            self.disc = d
            self.omega_trace = 1
            self.omega_norm = (1 - d) // 4
        else:
            self.disc = 4 * d
            self.omega_trace = 0
            self.omega_norm = -d
        self.r1 = 2 if d > 0 else 0
        self.name = f"Q(sqrt({d}))"

    def elt(self, x, y=0) -> "QuadElt":
        return QuadElt(self, Fraction(x), Fraction(y))

    @property
    def omega(self) -> "QuadElt":
        if self.d % 4 == 1:
            return QuadElt(self, Fraction(1, 2), Fraction(1, 2))
        return QuadElt(self, Fraction(0), Fraction(1))

    @property
    def sqrt_gen(self) -> "QuadElt":
        return QuadElt(self, Fraction(0), Fraction(1))

    def __repr__(self):
        return self.name


class FunctionField:
    kind = "FF"
    r1 = 0

    def __init__(self, q: int):
        self.q = q
        self.const_field = GF(q)
        self.name = f"F{q}(t)"

    def elt(self, num, den=None) -> "RatFunc":
        F = self.const_field
        num = fqpoly.trim(F, tuple(num))
        den = (F.one,) if den is None else fqpoly.trim(F, tuple(den))
        return _ratfunc_reduced(self, num, den)

    def from_int_polys(self, num, den=(1,)) -> "RatFunc":
        F = self.const_field
        return self.elt(tuple(F.from_int(c) for c in num),
                        tuple(F.from_int(c) for c in den))

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class QuadElt:
    """x + y*sqrt(d), exact."""
    field: QuadraticField
    x: Fraction
    y: Fraction

    def __add__(self, o):
        o = self._coerce(o)
        return QuadElt(self.field, self.x + o.x, self.y + o.y)

    def __sub__(self, o):
        o = self._coerce(o)
        return QuadElt(self.field, self.x - o.x, self.y - o.y)

    def __neg__(self):
        return QuadElt(self.field, -self.x, -self.y)

    def __mul__(self, o):
        o = self._coerce(o)
        d = self.field.d
        return QuadElt(self.field,
                       self.x * o.x + d * self.y * o.y,
                       self.x * o.y + self.y * o.x)

    def __truediv__(self, o):
        o = self._coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        c = o.conj()
        num = self * c
        return QuadElt(self.field, num.x / n, num.y / n)

    def _coerce(self, o) -> "QuadElt":
        if isinstance(o, QuadElt):
            if o.field is not self.field:
                raise ValueError("mixed quadratic fields")
            return o
        return QuadElt(self.field, Fraction(o), Fraction(0))

    def conj(self) -> "QuadElt":
        return QuadElt(self.field, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.field.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        a, b = self.omega_coords()
        return a.denominator == 1 and b.denominator == 1

    def omega_coords(self) -> tuple[Fraction, Fraction]:
        """(a, b) with self = a + b*omega over the integral basis."""
        if self.field.d % 4 == 1:
            return self.x - self.y, 2 * self.y
        return self.x, self.y

    def sign_at(self, embedding: int) -> int:
        """Sign under sqrt(d) -> +/- real root; embedding in {0, 1}."""
        d = self.field.d
        if d < 0:
            raise ValueError("no real embeddings")
        y = self.y if embedding == 0 else -self.y
        x = self.x
        if y == 0:
            return 0 if x == 0 else (1 if x > 0 else -1)
        if x == 0:
            return 1 if y > 0 else -1
        if (x > 0) == (y > 0):
            return 1 if x > 0 else -1
        # opposite signs: |x| vs |y| sqrt(d), squared comparison is exact
        if x * x > y * y * d:
            return 1 if x > 0 else -1
        return 1 if y > 0 else -1

    def __repr__(self):
        return fmt_quad(self)


@dataclass(frozen=True)
class RatFunc:
    """num/den over GF(q)[t], den monic, gcd(num, den) = 1."""
    field: FunctionField
    num: tuple
    den: tuple

    def _coerce(self, o) -> "RatFunc":
        if isinstance(o, RatFunc):
            if o.field is not self.field:
                raise ValueError("mixed function fields")
            return o
        F = self.field.const_field
        return _ratfunc_reduced(self.field, fqpoly.const(F, F.from_int(o)), (F.one,))

    def __add__(self, o):
        o = self._coerce(o)
        F = self.field.const_field
        num = fqpoly.add(F, fqpoly.mul(F, self.num, o.den), fqpoly.mul(F, o.num, self.den))
        return _ratfunc_reduced(self.field, num, fqpoly.mul(F, self.den, o.den))

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __neg__(self):
        F = self.field.const_field
        return RatFunc(self.field, fqpoly.neg(F, self.num), self.den)

    def __mul__(self, o):
        o = self._coerce(o)
        F = self.field.const_field
        return _ratfunc_reduced(self.field,
                                fqpoly.mul(F, self.num, o.num),
                                fqpoly.mul(F, self.den, o.den))

    def __truediv__(self, o):
        o = self._coerce(o)
        if not o.num:
            raise ZeroDivisionError("division by zero element")
        F = self.field.const_field
        return _ratfunc_reduced(self.field,
                                fqpoly.mul(F, self.num, o.den),
                                fqpoly.mul(F, self.den, o.num))

    def is_zero(self) -> bool:
        return not self.num

    def __repr__(self):
        return fmt_ratfunc(self)


def _ratfunc_reduced(K: FunctionField, num: tuple, den: tuple) -> RatFunc:
    F = K.const_field
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return RatFunc(K, (), (F.one,))
    g = fqpoly.gcd(F, num, den)
    if fqpoly.deg(g) > 0:
        num = fqpoly.divmod_(F, num, g)[0]
        den = fqpoly.divmod_(F, den, g)[0]
    if den[-1] != F.one:
        c = F.inv(den[-1])
        num = fqpoly.scale(F, c, num)
        den = fqpoly.scale(F, c, den)
    return RatFunc(K, num, den)


_Q_SINGLETON = RationalField()
_QUAD_CACHE: dict[int, QuadraticField] = {}
_FF_CACHE: dict[int, FunctionField] = {}

GlobalField = Union[RationalField, QuadraticField, FunctionField]


def rational_field() -> RationalField:
    return _Q_SINGLETON


def quadratic_field(d: int) -> QuadraticField:
    K = _QUAD_CACHE.get(d)
    if K is not None:
        return K
    if d in (0, 1):
        raise ValueError("d must be a nonsquare")
    if abs(d) > MAX_QUAD_D:
        raise OutOfSupportedRange(f"|d| = {abs(d)} exceeds {MAX_QUAD_D}")
    if any(e > 1 for e in factorint(abs(d)).values()):
        raise ValueError(f"d = {d} is not squarefree")
    K = _QUAD_CACHE[d] = QuadraticField(d)
    return K


def function_field(q: int) -> FunctionField:
    K = _FF_CACHE.get(q)
    if K is not None:
        return K
    if q > MAX_FF_Q:
        raise OutOfSupportedRange(f"constant field size {q} exceeds {MAX_FF_Q}")
    K = _FF_CACHE[q] = FunctionField(q)  # GF() validates prime power
    return K


# ---------------------------------------------------------------- formatting

def fmt_poly(F, poly: tuple, var: str = "t") -> str:
    if not poly:
        return "0"
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == F.zero:
            continue
        cs = fmt_element(F, c)
        if i == 0:
            terms.append(cs)
            continue
        xp = var if i == 1 else f"{var}^{i}"
        if cs == "1":
            terms.append(xp)
        elif any(s in cs for s in "+-*"):
            terms.append(f"({cs})*{xp}")
        else:
            terms.append(f"{cs}*{xp}")
    return "+".join(terms)


def fmt_ratfunc(z: RatFunc) -> str:
    F = z.field.const_field
    top = fmt_poly(F, z.num)
    if z.den == (F.one,):
        return top
    bot = fmt_poly(F, z.den)
    if "+" in top or "-" in top:
        top = f"({top})"
    return f"{top}/({bot})"


def fmt_quad(z: QuadElt) -> str:
    d = z.field.d
    if z.y == 0:
        return str(z.x)
    ys = f"sqrt({d})" if abs(z.y) == 1 else f"{abs(z.y)}*sqrt({d})"
    sign = "-" if z.y < 0 else ("+" if z.x != 0 else "")
    if z.x == 0:
        return f"-{ys}" if z.y < 0 else ys
    return f"{z.x}{sign}{ys}"


# ------------------------------------------------------------------- parsing

def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def parse_quad(K: QuadraticField, s: str) -> QuadElt:
    """Comma pair "x,y" meaning x + y*sqrt(d); a lone rational is allowed."""
    parts = [p.strip() for p in s.split(",")]
    if len(parts) == 1:
        return K.elt(Fraction(parts[0]))
    if len(parts) != 2:
        raise ValueError(f"cannot parse quadratic element from {s!r}")
    return K.elt(Fraction(parts[0]), Fraction(parts[1]))


class _FFParser:
    """Recursive descent for rational functions in t over the constant field.

    expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
    factor := ['-'] atom ('^' nat)? ; atom := nat | 't' | '(' expr ')'
    """

    def __init__(self, K: FunctionField, s: str):
        self.K = K
        self.s = s.replace(" ", "")
        self.i = 0

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def take(self) -> str:
        c = self.peek()
        self.i += 1
        return c

    def parse(self) -> RatFunc:
        v = self.expr()
        if self.i != len(self.s):
            raise ValueError(f"trailing input at {self.s[self.i:]!r}")
        return v

    def expr(self) -> RatFunc:
        v = self.term()
        while self.peek() in {"+", "-"}:
            op = self.take()
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self) -> RatFunc:
        v = self.factor()
        while self.peek() in {"*", "/"}:
            op = self.take()
            f = self.factor()
            v = v * f if op == "*" else v / f
        return v

    def factor(self) -> RatFunc:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        v = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.nat()
            out = self.K.from_int_polys((1,))
            for _ in range(e):
                out = out * v
            v = out
        return v

    def atom(self) -> RatFunc:
        c = self.peek()
        if c == "(":
            self.take()
            v = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis")
            return v
        if c == "t":
            self.take()
            return self.K.from_int_polys((0, 1))
        if c.isdigit():
            return self.K.from_int_polys((self.nat(),))
        raise ValueError(f"unexpected character {c!r} in function field element")

    def nat(self) -> int:
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            raise ValueError("expected a number")
        return int(self.s[j : self.i])


def parse_ratfunc(K: FunctionField, s: str) -> RatFunc:
    return _FFParser(K, s).parse()

"""Elements of PGL(2,q) as normalized linear fractional transformations.

A transformation x -> (ax+b)/(cx+d) is stored by the unique scalar multiple
of (a,b,c,d) whose first nonzero entry is 1, so equality and hashing are
entry-wise.  The action extends to the projective line over any extension
field with the usual conventions at infinity.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional

from . import gf, upoly
from .errors import CtxMismatchError, IdentityInputError, InvariantViolation


class ProjPoint:
    """A point of P^1: a field element, or the point at infinity."""

    __slots__ = ("value",)

    def __init__(self, value: Optional[gf.FieldElem]):
        self.value = value

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.value is None or other.value is None:
            return self.value is None and other.value is None
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(None) if self.value is None else hash(self.value)

    def key(self) -> tuple:
        """Sort key; infinity precedes all finite points."""
        if self.value is None:
            return (0, 0)
        return (1, self.value.encode())

    def __repr__(self) -> str:
        return "inf" if self.value is None else gf.format_elem(self.value)


INFINITY = ProjPoint(None)


def point(value: gf.FieldElem) -> ProjPoint:
    return ProjPoint(value)


def projective_line(ctx: gf.FieldCtx) -> list[ProjPoint]:
    """All q+1 points of P^1(ctx), infinity first."""
    return [INFINITY] + [ProjPoint(v) for v in ctx.elements()]


def frobenius_point(z: ProjPoint, e: int = 1) -> ProjPoint:
    """Coordinate Frobenius on P^1; fixes infinity."""
    if z.value is None:
        return z
    return ProjPoint(gf.frobenius(z.value, e))


class MoebiusClass(Enum):
    """Eigenvalue trichotomy of a matrix pre-image."""

    IDENTITY = "identity"
    SPLIT = "split"          # distinct eigenvalues in F_q; order divides q-1
    UNIPOTENT = "unipotent"  # repeated eigenvalue; order p
    NONSPLIT = "nonsplit"    # irreducible characteristic polynomial; order divides q+1


class Moebius:
    """x -> (ax+b)/(cx+d) with ad - bc != 0, in normalized form."""

    __slots__ = ("ctx", "a", "b", "c", "d", "_lifts")

    def __init__(self, a: gf.FieldElem, b: gf.FieldElem, c: gf.FieldElem, d: gf.FieldElem):
        ctx = a.ctx
        det = a * d - b * c
        if not det:
            raise InvariantViolation("singular coefficient matrix for a Moebius map")
        for first in (a, b, c, d):
            if first:
                break
        if first != ctx.one():
            inv = first.inverse()
            a, b, c, d = a * inv, b * inv, c * inv, d * inv
        self.ctx = ctx
        self.a, self.b, self.c, self.d = a, b, c, d
        self._lifts = None

    @classmethod
    def from_ints(cls, ctx: gf.FieldCtx, a: int, b: int, c: int, d: int) -> "Moebius":
        return cls(ctx.elem(a), ctx.elem(b), ctx.elem(c), ctx.elem(d))

    @classmethod
    def identity(cls, ctx: gf.FieldCtx) -> "Moebius":
        return cls(ctx.one(), ctx.zero(), ctx.zero(), ctx.one())

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        ctx = self.ctx
        return (self.a == ctx.one() and not self.b and not self.c
                and self.d == ctx.one())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Moebius):
            return NotImplemented
        return (self.ctx == other.ctx and self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def key(self) -> tuple:
        return (self.a.encode(), self.b.encode(), self.c.encode(), self.d.encode())

    def __repr__(self) -> str:
        return format_moebius(self)

    # -- group structure --------------------------------------------------------

    def compose(self, other: "Moebius") -> "Moebius":
        """self after other: (self.compose(other))(z) = self(other(z))."""
        if self.ctx != other.ctx:
            raise CtxMismatchError("transformations over different fields")
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Moebius(a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
                       c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)

    def __mul__(self, other: "Moebius") -> "Moebius":
        return self.compose(other)

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)

    def power(self, n: int) -> "Moebius":
        if n < 0:
            return self.inverse().power(-n)
        out = Moebius.identity(self.ctx)
        sq = self
        while n:
            if n & 1:
                out = out * sq
            n >>= 1
            if n:
                sq = sq * sq
        return out

    def order(self) -> int:
        """Least n >= 1 with s^n = identity, by iteration (bounded by q+1)."""
        bound = self.ctx.order + 1
        current = self
        for n in range(1, bound + 1):
            if current.is_identity():
                return n
            current = current * self
        raise InvariantViolation("order exceeded q+1, impossible in PGL(2,q)")

    # -- action ------------------------------------------------------------------

    def lift_to(self, ext: gf.FieldCtx) -> "Moebius":
        """The same transformation with entries embedded in an extension."""
        if ext == self.ctx:
            return self
        if self._lifts is None:
            self._lifts = {}
        cached = self._lifts.get(ext)
        if cached is None:
            cached = Moebius(*(gf.embed(e, ext) for e in self.entries()))
            self._lifts[ext] = cached
        return cached

    def apply(self, z: ProjPoint) -> ProjPoint:
        """Evaluate at a point of P^1 over the base field or an extension."""
        if z.value is None:
            if not self.c:
                return INFINITY
            return ProjPoint(self.a / self.c)
        v = z.value
        if v.ctx != self.ctx:
            if not gf.is_subctx(self.ctx, v.ctx):
                raise CtxMismatchError("point does not lie over the transformation's field")
            return self.lift_to(v.ctx).apply(z)
        den = self.c * v + self.d
        if not den:
            return INFINITY
        return ProjPoint((self.a * v + self.b) / den)

    def __call__(self, z: ProjPoint) -> ProjPoint:
        return self.apply(z)

    # -- structure of a single element ---------------------------------------------

    def classify(self) -> MoebiusClass:
        """Eigenvalue trichotomy of a pre-image matrix."""
        if self.is_identity():
            return MoebiusClass.IDENTITY
        ctx = self.ctx
        a, b, c, d = self.entries()
        if ctx.p == 2:
            if a == d:
                return MoebiusClass.UNIPOTENT
            # separable char. poly; split iff the absolute trace of det/tr^2 is 0
            w = (a * d - b * c) / ((a + d) * (a + d))
            tr = w
            acc = w
            for _ in range(ctx.tower_degree() - 1):
                acc = acc * acc
                tr = tr + acc
            return MoebiusClass.SPLIT if not tr else MoebiusClass.NONSPLIT
        disc = (d - a) * (d - a) + 4 * b * c
        if not disc:
            return MoebiusClass.UNIPOTENT
        if disc ** ((ctx.order - 1) // 2) == ctx.one():
            return MoebiusClass.SPLIT
        return MoebiusClass.NONSPLIT

    def fixed_point_poly(self) -> upoly.Poly:
        """cT^2 + (d-a)T - b, whose roots are the finite fixed points."""
        return upoly.Poly(self.ctx, (-self.b, self.d - self.a, self.c))

    def fixed_points(self, k: int = 1, cap: Optional[int] = None) -> tuple[ProjPoint, ...]:
        """All fixed points on P^1(F_{q^k}), sorted; at most two.

        Over the closure (k = 2 suffices) the count is 1 exactly for
        unipotent elements and 2 otherwise.
        """
        if self.is_identity():
            raise IdentityInputError("every point is fixed by the identity")
        ext = gf.extension_of(self.ctx, k, cap=cap)
        out = []
        if not self.c:
            out.append(INFINITY)
        quad = self.fixed_point_poly()
        if quad.deg >= 1:
            out.extend(ProjPoint(r) for r in upoly.roots_in(quad, ext))
        out.sort(key=lambda z: z.key())
        return tuple(out)


# -- parsing and formatting ---------------------------------------------------------


def _fmt_linear(u: gf.FieldElem, v: gf.FieldElem) -> str:
    """u*x + v in the element text format."""
    one = u.ctx.one()
    parts = []
    if u:
        parts.append("x" if u == one else f"{gf.format_elem(u)}*x")
    if v or not parts:
        parts.append(gf.format_elem(v))
    return "+".join(parts)


def format_moebius(s: Moebius) -> str:
    num = _fmt_linear(s.a, s.b)
    if not s.c and s.d == s.ctx.one():
        return num
    return f"({num})/({_fmt_linear(s.c, s.d)})"


def _parse_linear(ctx: gf.FieldCtx, text: str) -> tuple[gf.FieldElem, gf.FieldElem]:
    """Parse "a*x+b" (with optional '*', signs, reordered terms)."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    text = text.replace(" ", "").replace("*", "")
    if not text:
        raise ValueError("empty linear form")
    # split into signed terms, respecting brackets
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and cur not in ("", "+", "-"):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    u, v = ctx.zero(), ctx.zero()
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if term.endswith("x"):
            coeff_text = term[:-1]
            coeff = ctx.one() if not coeff_text else gf.parse_elem(ctx, coeff_text)
            u = u + (coeff if sign > 0 else -coeff)
        else:
            coeff = gf.parse_elem(ctx, term)
            v = v + (coeff if sign > 0 else -coeff)
    return u, v


def parse_moebius_raw(ctx: gf.FieldCtx, text: str) -> tuple:
    """Parse "(a*x+b)/(c*x+d)", "a*x+b" or "x"; returns ((a,b,c,d), Moebius).

    The raw tuple keeps the caller's scaling, which matters when building
    the degree-(q+1) companion polynomial with its original unit.
    """
    text = text.strip()
    depth = 0
    split_at = -1
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "/" and depth == 0:
            split_at = i
            break
    if split_at >= 0:
        a, b = _parse_linear(ctx, text[:split_at])
        c, d = _parse_linear(ctx, text[split_at + 1:])
    else:
        a, b = _parse_linear(ctx, text)
        c, d = ctx.zero(), ctx.one()
    raw = (a, b, c, d)
    return raw, Moebius(a, b, c, d)


def parse_moebius(ctx: gf.FieldCtx, text: str) -> Moebius:
    return parse_moebius_raw(ctx, text)[1]

"""Finite subgroups of PGL(2,q): generation, orbits, stabilizers, ramification.

Non-regular orbits are found from the fixed points of group elements, which
all lie on P^1(F_{q^2}); this avoids scanning large extensions and is the
basis of the ramification audit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from . import gf, moebius as mo
from .errors import (
    CtxMismatchError,
    InvariantViolation,
    NotInGroupError,
    SizeCapError,
)

# enumeration guards, independent of the field-size cap
MAX_GROUP_ORDER = 1 << 16
MAX_POINTS = 1 << 20


class Subgroup:
    """A subgroup of PGL(2,q), stored as a canonically ordered element tuple."""

    __slots__ = ("ctx", "elements", "_set", "_hash")

    def __init__(self, ctx: gf.FieldCtx, elements: Iterable[mo.Moebius]):
        elems = sorted(set(elements), key=lambda s: s.key())
        self.ctx = ctx
        self.elements = tuple(elems)
        self._set = frozenset(elems)
        self._hash = hash((ctx, self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[mo.Moebius]:
        return iter(self.elements)

    def __contains__(self, s: mo.Moebius) -> bool:
        return s in self._set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ctx == other.ctx and self.elements == other.elements

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self)}, over {self.ctx})"

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_cyclic(self) -> bool:
        n = len(self)
        return any(s.order() == n for s in self.elements)


@dataclass(frozen=True)
class Orbit:
    points: tuple[mo.ProjPoint, ...]
    stabilizer: Subgroup
    regular: bool

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class OrbitReport:
    k: int
    ext: gf.FieldCtx
    orbits: tuple[Orbit, ...]


def generate(ctx: gf.FieldCtx, gens: Iterable[mo.Moebius]) -> Subgroup:
    """Closure of the generators under composition and inverse."""
    gens = list(gens)
    for g in gens:
        if g.ctx != ctx:
            raise CtxMismatchError("generator over the wrong field")
    limit = ctx.order ** 3 - ctx.order if ctx.order > 1 else 1
    identity = mo.Moebius.identity(ctx)
    seen = {identity}
    frontier = [identity]
    gens_and_inverses = []
    for g in gens:
        gens_and_inverses.append(g)
        gens_and_inverses.append(g.inverse())
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens_and_inverses:
                t = g.compose(s)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        if len(seen) > limit:
            raise InvariantViolation("closure exceeded |PGL(2,q)|; bad input")
        frontier = nxt
    return Subgroup(ctx, seen)


def full_pgl(ctx: gf.FieldCtx) -> Subgroup:
    """All of PGL(2,q); order q^3 - q."""
    q = ctx.order
    if q ** 3 - q > MAX_GROUP_ORDER:
        raise SizeCapError(f"PGL(2,{q}) has order {q**3 - q}, beyond the enumeration cap")
    one = ctx.one()
    zero = ctx.zero()
    out = []
    # normalized: a = 1, or (a = 0, b = 1)
    for b in ctx.elements():
        for c in ctx.elements():
            for d in ctx.elements():
                if d - b * c:
                    out.append(mo.Moebius(one, b, c, d))
    for c in ctx.elements():
        if not c:
            continue
        for d in ctx.elements():
            out.append(mo.Moebius(zero, one, c, d))
    group = Subgroup(ctx, out)
    if len(group) != q ** 3 - q:
        raise InvariantViolation("PGL enumeration produced the wrong order")
    return group


def _lifted(G: Subgroup, ext: gf.FieldCtx) -> list[mo.Moebius]:
    """Group elements lifted to an extension, so all orbit points share one ctx."""
    if ext == G.ctx:
        return list(G.elements)
    return [s.lift_to(ext) for s in G.elements]


def orbit_of(G: Subgroup, z: mo.ProjPoint, ext: Optional[gf.FieldCtx] = None
             ) -> tuple[mo.ProjPoint, ...]:
    if ext is None:
        ext = z.value.ctx if z.value is not None else G.ctx
    pts = {s.apply(z) for s in _lifted(G, ext)}
    return tuple(sorted(pts, key=lambda w: w.key()))


def stabilizer_of(G: Subgroup, z: mo.ProjPoint,
                  ext: Optional[gf.FieldCtx] = None) -> Subgroup:
    if ext is None:
        ext = z.value.ctx if z.value is not None else G.ctx
    pairs = zip(G.elements, _lifted(G, ext))
    return Subgroup(G.ctx, (s for s, lifted in pairs if lifted.apply(z) == z))


def orbit_decomposition(G: Subgroup, k: int) -> OrbitReport:
    """Partition of P^1(F_{q^k}) into G-orbits with stabilizers."""
    q = G.ctx.order
    if q ** k > MAX_POINTS:
        raise SizeCapError(f"{q}^{k} points exceed the enumeration cap")
    ext = gf.extension_of(G.ctx, k)
    orbits = []
    assigned: set[mo.ProjPoint] = set()
    for z in mo.projective_line(ext):
        if z in assigned:
            continue
        pts = orbit_of(G, z, ext)
        assigned.update(pts)
        stab = stabilizer_of(G, pts[0], ext)
        if len(pts) * len(stab) != len(G):
            raise InvariantViolation("orbit-stabilizer identity failed")
        orbits.append(Orbit(pts, stab, len(pts) == len(G)))
    orbits.sort(key=lambda o: (o.size, o.points[0].key()))
    report = OrbitReport(k, ext, tuple(orbits))
    if sum(o.size for o in report.orbits) != ext.order + 1:
        raise InvariantViolation("orbits do not partition the projective line")
    return report


def nonregular_orbits(G: Subgroup) -> tuple[Orbit, ...]:
    """The non-regular orbits of G on the projective line over the closure.

    Every point with a nontrivial stabilizer is a fixed point of some
    non-identity element, hence lies on P^1(F_{q^2}); it suffices to decompose
    the union of those fixed points.
    """
    if len(G) == 1:
        return ()
    ext2 = gf.extension_of(G.ctx, 2)
    candidates: set[mo.ProjPoint] = set()
    for s in G:
        if s.is_identity():
            continue
        candidates.update(s.fixed_points(2))
    orbits = []
    assigned: set[mo.ProjPoint] = set()
    for z in sorted(candidates, key=lambda w: w.key()):
        if z in assigned:
            continue
        pts = orbit_of(G, z, ext2)
        assigned.update(pts)
        if not candidates.issuperset(pts):
            raise InvariantViolation("orbit of a fixed point left the fixed-point set")
        stab = stabilizer_of(G, pts[0], ext2)
        if len(pts) * len(stab) != len(G) or len(stab) == 1:
            raise InvariantViolation("bad stabilizer for a non-regular orbit")
        orbits.append(Orbit(pts, stab, False))
    orbits.sort(key=lambda o: (o.size, o.points[0].key()))
    return tuple(orbits)


def nonregular_census(G: Subgroup) -> list[tuple[int, int]]:
    """(orbit size, stabilizer order) for each non-regular orbit over the closure.

    At most three entries; at most two when p divides |G|, and exactly one
    if and only if G is a nontrivial p-group.
    """
    census = [(o.size, len(o.stabilizer)) for o in nonregular_orbits(G)]
    if len(census) > 3:
        raise InvariantViolation("more than three non-regular orbits")
    if len(G) % G.ctx.p == 0 and len(census) > 2:
        raise InvariantViolation("p divides |G| but there are three non-regular orbits")
    return census


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


@dataclass(frozen=True)
class RamificationAudit:
    sum_differents: int
    target: int           # 2|G| - 2
    tame_sum: int         # sum of (e_P - 1), equals sum_differents when tame
    passed: bool


def riemann_hurwitz_audit(G: Subgroup) -> RamificationAudit:
    """Genus-0 ramification audit: 2|G|-2 must equal the sum of differents.

    For each non-regular point, e_P is the stabilizer order; the different is
    e_P - 1 at tame points and e_P + q_P - 2 at wild ones, with q_P the p-part
    of e_P.
    """
    p = G.ctx.p
    total = 0
    tame = 0
    for orbit in nonregular_orbits(G):
        e = len(orbit.stabilizer)
        delta = (e - 1) if e % p else (e + _p_part(e, p) - 2)
        total += orbit.size * delta
        tame += orbit.size * (e - 1)
    target = 2 * len(G) - 2
    return RamificationAudit(total, target, tame, total == target)


def centralizer(G: Subgroup, s: mo.Moebius) -> Subgroup:
    """Brute-force centralizer of s within G."""
    if s not in G:
        raise NotInGroupError(f"{s} is not in the subgroup")
    return Subgroup(G.ctx, (g for g in G if g.compose(s) == s.compose(g)))


def conjugates(G: Subgroup, s: mo.Moebius) -> tuple[mo.Moebius, ...]:
    """The G-conjugacy class of s, canonically sorted."""
    if s not in G:
        raise NotInGroupError(f"{s} is not in the subgroup")
    out = {g.compose(s).compose(g.inverse()) for g in G}
    return tuple(sorted(out, key=lambda t: t.key()))


def elements_of_order(G: Subgroup, r: int) -> list[mo.Moebius]:
    return [s for s in G if s.order() == r]


def a5_subgroup(ctx: gf.FieldCtx) -> Subgroup:
    """A subgroup of order 60 with the icosahedral presentation.

    Searches for a of order 5 and b of order 2 with a*b of order 3 whose
    closure has order 60.  Deterministic: first hit in canonical order wins.
    """
    G = full_pgl(ctx)
    fives = elements_of_order(G, 5)
    if not fives:
        raise InvariantViolation(f"PGL(2,{ctx.order}) has no elements of order 5")
    involutions = elements_of_order(G, 2)
    for a in fives:
        for b in involutions:
            if a.compose(b).order() != 3:
                continue
            H = generate(ctx, [a, b])
            if len(H) == 60:
                return H
    raise InvariantViolation(f"no icosahedral subgroup found in PGL(2,{ctx.order})")

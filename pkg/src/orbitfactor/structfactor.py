"""Structured factorization of c*T^(q+1) + d*T^q - a*T - b and its relatives.

The roots of this polynomial are exactly the points moved to their q-th power
by s(x) = (ax+b)/(cx+d).  One root is obtained from the general-purpose
oracle; every other root is a centralizer translate of it, so all remaining
irreducible factors are built structurally as products over the orbits of
the cyclic group generated by s, and the result is cross-checked against
exact reconstruction of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import gf, grouporbit as go, invariants as inv, moebius as mo, upoly
from .errors import (
    IdentityInputError,
    InvariantViolation,
    SizeCapError,
    WrongOrderError,
)


def frobenius_companion(s: mo.Moebius) -> upoly.Poly:
    """c*T^(q+1) + d*T^q - a*T - b for the normalized entries of s.

    Its roots are the finite solutions of s(z) = z^q; degree q+1 when c is
    nonzero and q otherwise.
    """
    return companion_poly(s.ctx, s.entries())


def companion_poly(ctx: gf.FieldCtx, entries: tuple, k: int = 1) -> upoly.Poly:
    """c*T^(q^k+1) + d*T^(q^k) - a*T - b from explicit (a, b, c, d)."""
    a, b, c, d = entries
    q = ctx.order
    n = q ** k + 1
    coeffs = [ctx.zero()] * (n + 1)
    coeffs[n] = c
    coeffs[n - 1] = d
    coeffs[1] = coeffs[1] - a
    coeffs[0] = coeffs[0] - b
    return upoly.Poly(ctx, coeffs)


def connected_centralizer(s: mo.Moebius) -> list[mo.Moebius]:
    """Transformations induced by the invertible matrices u*I + v*A, where A
    is a pre-image of s.

    For non-identity s this subgroup acts simply transitively on the
    solutions of s(z) = z^q outside P^1(F_q); its order is q-1, q, or q+1
    according to the split/unipotent/nonsplit trichotomy.
    """
    if s.is_identity():
        raise IdentityInputError("the identity has the whole group as centralizer")
    ctx = s.ctx
    a, b, c, d = s.entries()
    seen = set()
    out = []
    for u in ctx.elements():
        for v in ctx.elements():
            if not u and not v:
                continue
            m11 = u + v * a
            m22 = u + v * d
            if not (m11 * m22 - v * v * b * c):
                continue
            t = mo.Moebius(m11, v * b, v * c, m22)
            if t not in seen:
                seen.add(t)
                out.append(t)
    out.sort(key=lambda t: t.key())
    return out


def find_s_for_alpha(G: go.Subgroup, alpha: gf.FieldElem,
                     phi: Optional[inv.RatFunc] = None) -> mo.Moebius:
    """The element of G sending alpha to alpha^q (unique on regular orbits).

    Requires alpha outside F_q; the invariant value phi(alpha), when phi is
    supplied, is checked to land in F_q, which is what guarantees existence.
    """
    ctx = G.ctx
    if gf.in_subfield(alpha, ctx):
        raise InvariantViolation("alpha must lie outside the ground field")
    if phi is not None:
        value = phi.eval_point(mo.ProjPoint(alpha))
        if value.value is not None and not gf.in_subfield(value.value, ctx):
            raise InvariantViolation("phi(alpha) is not rational; no such element exists")
    target = mo.ProjPoint(alpha ** ctx.order)
    z = mo.ProjPoint(alpha)
    for s in G.elements:
        if s.apply(z) == target:
            return s
    raise InvariantViolation("no group element maps alpha to alpha^q")


@dataclass(frozen=True)
class FactorEntry:
    poly: upoly.Poly          # monic irreducible over F_q
    lam: mo.ProjPoint         # value of the family parameter on this factor
    source: gf.FieldElem      # smallest root, in the bootstrap extension


@dataclass(frozen=True)
class StructuredFactorization:
    input: upoly.Poly
    unit: gf.FieldElem
    removed_linear: tuple[upoly.Poly, ...]
    factors: tuple[FactorEntry, ...]
    degree_r: int
    orbit_poly: inv.OrbitPolynomial
    root_field: gf.FieldCtx

    def reconstruct(self) -> upoly.Poly:
        out = upoly.Poly.constant(self.unit)
        for lin in self.removed_linear:
            out = out * lin
        for entry in self.factors:
            out = out * entry.poly
        return out

    def monic_factors(self) -> tuple[upoly.Poly, ...]:
        return tuple(entry.poly for entry in self.factors)

    def as_multiset(self) -> tuple:
        polys = sorted(list(self.removed_linear) + [e.poly for e in self.factors],
                       key=lambda f: f.key())
        return tuple((f.key(), 1) for f in polys)


def root_extension(ctx: gf.FieldCtx, h: upoly.Poly) -> tuple[gf.FieldCtx, gf.FieldElem]:
    """A field containing a root of the irreducible h, with that root.

    Plain quotient when the tower allows it; otherwise a fresh prime-rooted
    field of the right size with the root located explicitly.
    """
    needed = ctx.order ** h.deg
    if ctx.base is None or ctx.base.base is None:
        ext = gf.extend(ctx, h, cap=max(gf.size_cap(), needed))
        return ext, ext.gen()
    flat = gf.field_create(ctx.p, ctx.tower_degree() * h.deg, cap=max(gf.size_cap(), needed))
    roots = upoly.roots_in(h, flat)
    if not roots:
        raise InvariantViolation("irreducible factor has no root in the flattened field")
    return flat, roots[0]


def factor_by_orbit(s: mo.Moebius, seed: int = 0) -> StructuredFactorization:
    """Factor the companion polynomial of s by orbit-polynomial specialization.

    Finite fixed points of s on P^1(F_q) are stripped as linear factors
    (this is the whole adjustment needed in the split and unipotent cases).
    One root of the remainder is bootstrapped from the oracle; centralizer
    translates give all other roots, each orbit under s contributing one
    monic irreducible factor of degree r = order(s), equal to the orbit
    polynomial of <s> specialized at any of its roots.
    """
    if s.is_identity():
        raise IdentityInputError("companion of the identity is T^q - T; nothing structured")
    ctx = s.ctx
    q = ctx.order
    ps = frobenius_companion(s)
    unit = ps.lc()
    work = ps.monic()
    one = ctx.one()

    removed = []
    for z in s.fixed_points(1):
        if z.value is None:
            continue
        lin = upoly.Poly(ctx, (-z.value, one))
        work, rem = divmod(work, lin)
        if rem:
            raise InvariantViolation("finite fixed point is not a root of the companion")
        removed.append(lin)

    r = s.order()
    if work.deg % r:
        raise InvariantViolation("stripped degree is not a multiple of the order")

    h = upoly.least_degree_factor(work, seed)
    if h.deg != r:
        raise InvariantViolation(
            f"bootstrap factor has degree {h.deg}, expected the order {r}")
    ext, alpha = root_extension(ctx, h)
    s_ext = s.lift_to(ext)

    # s(alpha) = alpha^q, and then s^i(alpha) = alpha^(q^i) throughout
    power = alpha
    pt = mo.ProjPoint(alpha)
    for _ in range(r):
        power = power ** q
        pt = s_ext.apply(pt)
        if pt.value != power:
            raise InvariantViolation("group action and Frobenius disagree on the root")

    translates = connected_centralizer(s)
    if len(translates) != work.deg:
        raise InvariantViolation("centralizer order does not match the root count")
    roots = set()
    base_pt = mo.ProjPoint(alpha)
    for u in translates:
        value = u.lift_to(ext).apply(base_pt).value
        if value is None:
            raise InvariantViolation("a centralizer translate left the affine line")
        roots.add(value)
    if len(roots) != work.deg:
        raise InvariantViolation("centralizer translates are not distinct roots")

    P = inv.orbit_polynomial(go.generate(ctx, [s]))
    factors = []
    remaining = set(roots)
    x_ext = upoly.Poly.x(ext)
    while remaining:
        beta = min(remaining, key=lambda v: v.encode())
        orbit = []
        current = mo.ProjPoint(beta)
        for _ in range(r):
            if current.value is None or current.value not in remaining:
                raise InvariantViolation("orbit under s left the root set")
            orbit.append(current.value)
            remaining.discard(current.value)
            current = s_ext.apply(current)
        if current.value != beta:
            raise InvariantViolation("orbit under s did not close up")
        prod = upoly.Poly.one(ext)
        for root in orbit:
            prod = prod * (x_ext - upoly.Poly.constant(root))
        coeffs = tuple(gf.down_cast(c, ctx) for c in prod.coeffs)
        factor = upoly.Poly(ctx, coeffs)
        if P.specialize(beta) != prod:
            raise InvariantViolation("factor disagrees with the specialized orbit polynomial")
        lam_val = factor.coeffs[P.param_index] if P.param_index <= factor.deg else None
        lam = mo.ProjPoint(lam_val) if lam_val is not None else mo.INFINITY
        factors.append(FactorEntry(factor, lam, beta))
    factors.sort(key=lambda e: e.poly.key())

    result = StructuredFactorization(ps, unit, tuple(removed), tuple(factors),
                                     r, P, ext)
    if result.reconstruct() != ps:
        raise InvariantViolation("structured factors do not reconstruct the input")
    return result


# -- families over all lambda ----------------------------------------------------


def _euler_phi(n: int) -> int:
    out = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            out -= out // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out -= out // m
    return out


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


@dataclass(frozen=True)
class LambdaFamilyReport:
    """Per-degree counts of lambda values, against the Euler-phi prediction."""

    counts: dict
    total: int

    def passed(self) -> bool:
        return all(count == expected for count, expected in self.counts.values())


def lambda_family_report(s: mo.Moebius, seed: int = 0) -> LambdaFamilyReport:
    """For s of order exactly q+1: factor f - lambda*g for every lambda in F_q.

    The common factor degree r appears for exactly phi(r) values of lambda,
    for each divisor r > 1 of q+1, and the counts sum to q.  No lambda ever
    yields a linear factor.
    """
    ctx = s.ctx
    q = ctx.order
    if s.order() != q + 1:
        raise WrongOrderError(f"order must be exactly q+1 = {q + 1}")
    phi = inv.invariant_generator(go.generate(ctx, [s]))
    f, g = phi.monic_pair()
    counts: dict[int, int] = {}
    for lam in ctx.elements():
        fac = upoly.factorize(f - g.scale(lam), seed)
        degrees = {poly.deg for poly, _ in fac.factors}
        if len(degrees) != 1:
            raise InvariantViolation("factors of one specialization have mixed degrees")
        if any(mult != 1 for _, mult in fac.factors):
            raise InvariantViolation("specialization is not squarefree")
        d = degrees.pop()
        if d == 1:
            raise InvariantViolation("a linear factor appeared; impossible for this family")
        counts[d] = counts.get(d, 0) + 1
    report = {r: (counts.get(r, 0), _euler_phi(r))
              for r in divisors(q + 1) if r > 1}
    total = sum(c for c, _ in report.values())
    result = LambdaFamilyReport(report, total)
    if not result.passed() or total != q:
        raise InvariantViolation("lambda counts do not match the phi(r) law")
    return result


def numerator_structure_check(s: mo.Moebius) -> bool:
    """For s of order exactly q+1: every nonconstant orbit-polynomial
    coefficient has numerator mu*(companion of s) + lambda*(x^q - x), and the
    common denominator is x^q - x itself."""
    ctx = s.ctx
    q = ctx.order
    if s.order() != q + 1:
        raise WrongOrderError(f"order must be exactly q+1 = {q + 1}")
    P = inv.orbit_polynomial(go.generate(ctx, [s]))
    xqx = upoly.Poly.x_pow(ctx, q) - upoly.Poly.x(ctx)
    ps = frobenius_companion(s)
    for coeff in P.coeffs:
        if coeff.is_constant():
            continue
        if coeff.den != xqx:
            raise InvariantViolation("denominator is not x^q - x")
        B = coeff.num
        mu = B.lc() / ps.lc()
        residual = B - ps.scale(mu)
        if residual:
            if residual.deg != q:
                raise InvariantViolation("numerator is not in the two-term span")
            lam = residual.lc()
            if residual != xqx.scale(lam):
                raise InvariantViolation("numerator is not in the two-term span")
    return True


# -- arbitrary subgroups: f - lambda*g ----------------------------------------------


@dataclass(frozen=True)
class SpecializationFactors:
    """Factorization of f - lambda*g for the canonical generator f/g of G."""

    input: upoly.Poly
    lam: gf.FieldElem
    regular: bool
    factors: tuple[tuple[upoly.Poly, int], ...]
    degree: int
    multiplicity: int
    witness: Optional[mo.Moebius]   # element of order = degree, regular case only

    def count(self) -> int:
        return sum(m for _, m in self.factors)


def factor_f_lambda(G: go.Subgroup, lam: gf.FieldElem,
                    seed: int = 0) -> SpecializationFactors:
    """Factor f(T) - lambda*g(T) and witness the common factor degree.

    When G acts regularly on the roots all irreducible factors share one
    degree r, the order of the element moving a root to its q-th power; the
    non-regular case instead carries one uniform multiplicity equal to the
    stabilizer order.
    """
    ctx = G.ctx
    phi = inv.invariant_generator(G)
    f, g = phi.monic_pair()
    target = f - g.scale(lam)
    fac = upoly.factorize(target, seed)
    degrees = {poly.deg for poly, _ in fac.factors}
    mults = {mult for _, mult in fac.factors}
    if len(degrees) != 1 or len(mults) != 1:
        raise InvariantViolation("specialization has mixed degrees or multiplicities")
    d = degrees.pop()
    e = mults.pop()
    if e > 1:
        return SpecializationFactors(target, lam, False, fac.factors, d, e, None)
    if d == 1:
        return SpecializationFactors(target, lam, True, fac.factors, d, 1,
                                     mo.Moebius.identity(ctx))
    h = fac.factors[0][0]
    ext, alpha = root_extension(ctx, h)
    witness = find_s_for_alpha(G, alpha, phi)
    if witness.order() != d:
        raise InvariantViolation("witness order does not equal the factor degree")
    if gf.minimal_poly(alpha, ctx) != h:
        raise InvariantViolation("bootstrap root has the wrong minimal polynomial")
    return SpecializationFactors(target, lam, True, fac.factors, d, 1, witness)


def all_cubics_product(ctx: gf.FieldCtx, seed: int = 0) -> upoly.Poly:
    """f - phi(alpha)*g for alpha of degree 3 equals the product of every
    monic irreducible cubic; returns that product."""
    G = go.full_pgl(ctx)
    phi = inv.invariant_generator(G)
    f, g = phi.monic_pair()
    ext3 = gf.extension_of(ctx, 3, cap=max(gf.size_cap(), ctx.order ** 3))
    alpha = ext3.gen()
    value = phi.eval_point(mo.ProjPoint(alpha))
    if value.value is None:
        raise InvariantViolation("phi has a pole at a degree-3 element")
    lam = gf.down_cast(value.value, ctx)
    target = f - g.scale(lam)
    product = upoly.Poly.one(ctx)
    count = 0
    for cubic in upoly.monic_irreducibles(ctx, 3):
        product = product * cubic
        count += 1
    if count != (ctx.order ** 3 - ctx.order) // 3:
        raise InvariantViolation("wrong number of monic irreducible cubics")
    if target != product:
        raise InvariantViolation("specialization is not the product of all cubics")
    return product


# -- general exponents q^k -------------------------------------------------------


@dataclass(frozen=True)
class GeneralKFactorization:
    input: upoly.Poly                       # over F_q
    k: int
    ground: gf.FieldCtx                     # F_{q^k}
    inner: StructuredFactorization          # factorization over F_{q^k}
    factors: tuple[upoly.Poly, ...]         # monic irreducible over F_q
    unit: gf.FieldElem

    def reconstruct(self) -> upoly.Poly:
        out = upoly.Poly.constant(self.unit)
        for factor in self.factors:
            out = out * factor
        return out


def _ground_extension(ctx: gf.FieldCtx, k: int):
    """F_{q^k} plus an embedding of F_q, usable as a ground field for the
    structured factorization (keeps room for one more extension)."""
    if ctx.base is None:
        ground = gf.extension_of(ctx, k, cap=max(gf.size_cap(), ctx.order ** k))
        return ground, lambda x: gf.embed(x, ground)
    flat = gf.field_create(ctx.p, ctx.tower_degree() * k,
                           cap=max(gf.size_cap(), ctx.order ** k))
    roots = upoly.roots_in(ctx.modulus, flat)
    if not roots:
        raise InvariantViolation("ground field does not contain the coefficient field")
    root = roots[0]

    # Horner over the prime-field coordinates of x
    def hom(x: gf.FieldElem) -> gf.FieldElem:
        acc = flat.zero()
        for c in reversed(x.coeffs()):
            acc = acc * root + flat.elem(c.rep if isinstance(c, gf.FieldElem) else c)
        return acc

    return flat, hom


def factor_general_k(s: mo.Moebius, k: int, seed: int = 0) -> GeneralKFactorization:
    """Factor c*T^(q^k+1) + d*T^(q^k) - a*T - b over F_q.

    The polynomial is first factored structurally over F_{q^k}; multiplying
    each factor by its full orbit under the q-power Frobenius yields the
    irreducible factors over F_q.
    """
    ctx = s.ctx
    q = ctx.order
    if q ** k > gf.size_cap():
        raise SizeCapError(f"{q}^{k} exceeds the size cap")
    input_poly = companion_poly(ctx, s.entries(), k)
    if k == 1:
        structured = factor_by_orbit(s, seed)
        factors = list(structured.removed_linear) + [e.poly for e in structured.factors]
        factors.sort(key=lambda f: f.key())
        return GeneralKFactorization(input_poly, 1, ctx, structured,
                                     tuple(factors), structured.unit)

    ground, hom = _ground_extension(ctx, k)
    entries = tuple(hom(e) for e in s.entries())
    s_ground = mo.Moebius(*entries)
    inner = factor_by_orbit(s_ground, seed)

    # invert the embedding on the q-power-fixed coefficients
    back = {hom(v).encode(): v for v in ctx.elements()}

    def descend(poly: upoly.Poly) -> upoly.Poly:
        out = []
        for c in poly.coeffs:
            key = c.encode()
            if key not in back:
                raise InvariantViolation("merged factor coefficient is not rational")
            out.append(back[key])
        return upoly.Poly(ctx, out)

    def frob_poly(poly: upoly.Poly) -> upoly.Poly:
        return upoly.Poly(ground, tuple(c ** q for c in poly.coeffs))

    pending = list(inner.removed_linear) + [e.poly for e in inner.factors]
    pending_set = {p: None for p in pending}
    merged = []
    while pending_set:
        poly = next(iter(pending_set))
        orbit = [poly]
        nxt = frob_poly(poly)
        while nxt != poly:
            if nxt not in pending_set:
                raise InvariantViolation("Frobenius conjugate is missing from the factors")
            orbit.append(nxt)
            nxt = frob_poly(nxt)
        prod = upoly.Poly.one(ground)
        for member in orbit:
            pending_set.pop(member)
            prod = prod * member
        merged.append(descend(prod))
    for factor in merged:
        if not upoly.is_irreducible(factor):
            raise InvariantViolation("merged factor is reducible over the ground field")
    merged.sort(key=lambda f: f.key())
    unit_key = inner.unit.encode()
    if unit_key not in back:
        raise InvariantViolation("unit is not rational")
    unit = back[unit_key]
    result = GeneralKFactorization(input_poly, k, ground, inner, tuple(merged), unit)
    if result.reconstruct() != input_poly:
        raise InvariantViolation("merged factors do not reconstruct the input")
    return result

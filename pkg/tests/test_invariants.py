import pytest

from orbitfactor import gf, grouporbit as go, invariants as inv, moebius as mo, upoly
from orbitfactor.errors import PoleError, TrivialGroupError


def P(ctx, *ints):
    return upoly.Poly.from_ints(ctx, list(ints))


def RF(ctx, num, den):
    return inv.RatFunc(P(ctx, *num), P(ctx, *den))


def test_ratfunc_reduction(F7):
    r = RF(F7, (0, 2, 2), (0, 2))  # (2x^2+2x)/(2x) -> (x+1)/1
    assert r.num == P(F7, 1, 1) and r.den == upoly.Poly.one(F7)
    assert RF(F7, (0,), (0, 5)).num == upoly.Poly.zero(F7)


def test_ratfunc_den_monic(F7):
    r = RF(F7, (1, 1), (0, 3))
    assert r.den.is_monic()
    assert r == RF(F7, (5, 5), (0, 1))


def test_ratfunc_field_ops(F7):
    a = RF(F7, (1, 1), (0, 1))   # (x+1)/x
    b = RF(F7, (2,), (1, 1))     # 2/(x+1)
    assert a * b == RF(F7, (2,), (0, 1))
    assert (a + b) - b == a
    assert (a / b) * b == a


def test_eval_points(F7):
    r = RF(F7, (1, 0, 1), (0, 1))  # (x^2+1)/x
    assert r.eval_point(mo.ProjPoint(F7.elem(2))) == mo.ProjPoint(F7.elem(5) / F7.elem(2))
    assert r.eval_point(mo.ProjPoint(F7.zero())) == mo.INFINITY
    assert r.eval_point(mo.INFINITY) == mo.INFINITY  # deg num > deg den
    s = RF(F7, (1,), (0, 1))
    assert s.eval_point(mo.INFINITY) == mo.ProjPoint(F7.zero())
    t = RF(F7, (1, 3), (2, 1))
    assert t.eval_point(mo.INFINITY) == mo.ProjPoint(F7.elem(3))


def test_eval_identity_function(F7):
    ident = inv.RatFunc.x(F7)
    for v in F7.elements():
        assert ident.eval_point(mo.ProjPoint(v)) == mo.ProjPoint(v)


def test_compose_with_group_element_fixes_invariant(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    G = go.generate(F7, [s])
    phi = inv.invariant_generator(G)
    for g in G:
        assert phi.compose_moebius(g) == phi


def test_orbit_polynomial_identity_group(F7):
    G = go.generate(F7, [])
    Pg = inv.orbit_polynomial(G)
    assert len(Pg.coeffs) == 2
    assert Pg.coeffs[1] == inv.RatFunc.constant(F7.one())
    assert Pg.coeffs[0] == inv.RatFunc(P(F7, 0, -1), upoly.Poly.one(F7))  # -x


def test_orbit_polynomial_order_four_example(F19):
    s = mo.parse_moebius(F19, "(-x-1)/(x-1)")
    Pg = inv.orbit_polynomial(go.generate(F19, [s]))
    t = inv.RatFunc(P(F19, 1, 0, -6, 0, 1), P(F19, 0, -1, 0, 1))
    assert Pg.coeffs[1] == t
    assert Pg.coeffs[3] == inv.RatFunc.constant(F19.zero()) - t
    assert Pg.coeffs[2] == inv.RatFunc.constant(F19.elem(-6))
    assert Pg.coeffs[0] == inv.RatFunc.constant(F19.one())


def test_orbit_polynomial_order_three_example():
    F17 = gf.prime_field(17)
    s = mo.parse_moebius(F17, "(14x+13)/(6x+2)")
    Pg = inv.orbit_polynomial(go.generate(F17, [s]))
    den = P(F17, 3, 15, 1)
    assert Pg.coeffs[2] == inv.RatFunc(P(F17, 10, 2, 0, 16), den)
    assert Pg.coeffs[1] == inv.RatFunc(P(F17, 8, 0, 15, 2), den)
    assert Pg.coeffs[0] == inv.RatFunc(P(F17, 0, 9, 7, 14), den)


def test_orbit_polynomial_degrees_and_common_denominator(F5):
    G = go.full_pgl(F5)
    Pg = inv.orbit_polynomial(G)
    m = len(G)
    dens = set()
    for coeff in Pg.coeffs:
        if coeff.is_constant():
            continue
        assert coeff.num.deg == m
        assert coeff.den.deg < m
        dens.add(coeff.den)
    assert len(dens) == 1
    A = dens.pop()
    roots = upoly.roots_in(A, F5)
    total = sum(1 for root in roots)
    # splits completely: degree equals the number of distinct roots with multiplicity
    prod = upoly.Poly.one(F5)
    for root in roots:
        lin = P(F5, 1) * upoly.Poly(F5, (-root, F5.one()))
        while (A % lin) == upoly.Poly.zero(F5):
            A = A // lin
            prod = prod * lin
    assert A.deg == 0


def test_orbit_polynomial_has_x_as_root(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    Pg = inv.orbit_polynomial(go.generate(F7, [s.power(4)]))  # order 2
    x = inv.RatFunc.x(F7)
    acc = inv.RatFunc.constant(F7.zero())
    xpow = inv.RatFunc.constant(F7.one())
    for coeff in Pg.coeffs:
        acc = acc + coeff * xpow
        xpow = xpow * x
    assert acc == inv.RatFunc.constant(F7.zero())


def test_family_reconstruction(F19, F7):
    for ctx, text in ((F19, "(-x-1)/(x-1)"), (F7, "(3x-1)/(x+3)")):
        s = mo.parse_moebius(ctx, text)
        Pg = inv.orbit_polynomial(go.generate(ctx, [s]))
        t = Pg.parameter
        for coeff, (a, b) in zip(Pg.coeffs, Pg.family):
            assert coeff == t * inv.RatFunc.constant(a) + inv.RatFunc.constant(b)


def test_invariant_generator_rescaled_monic(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    phi = inv.invariant_generator(go.generate(F7, [s]))
    f, g = phi.monic_pair()
    assert f.is_monic() and f.deg == 8
    assert g.deg < 8
    assert phi.degree == 8
    # known form: numerator x^8+1 up to the affine ambiguity, denominator x^7-x
    xqx = upoly.Poly.x_pow(F7, 7) - upoly.Poly.x(F7)
    assert g.monic() == xqx
    diff = f - (upoly.Poly.x_pow(F7, 8) + upoly.Poly.one(F7))
    assert not diff or (diff % xqx == upoly.Poly.zero(F7) and (diff // xqx).deg <= 0)


def test_invariant_generator_trivial_group(F7):
    with pytest.raises(TrivialGroupError):
        inv.invariant_generator(go.generate(F7, []))


def test_generator_denominator_for_full_cycle(F5):
    # order q+1 cyclic: denominator is a scalar multiple of x^q - x
    G5 = go.full_pgl(F5)
    s = next(t for t in G5 if t.order() == 6)
    phi = inv.invariant_generator(go.generate(F5, [s]))
    assert phi.den.monic() == upoly.Poly.x_pow(F5, 5) - upoly.Poly.x(F5)


@pytest.mark.parametrize("p", [2, 3])
def test_pgl_generator_invariance(p):
    ctx = gf.prime_field(p)
    phi = inv.pgl_generator(ctx)
    assert phi.degree == ctx.order ** 3 - ctx.order
    for s in go.full_pgl(ctx):
        assert phi.compose_moebius(s) == phi


def test_pgl_generator_translation_invariance(F5):
    phi = inv.pgl_generator(F5, validate=False)
    assert phi.compose_moebius(mo.parse_moebius(F5, "x+1")) == phi


def test_specialize_regular_orbit(F19):
    s = mo.parse_moebius(F19, "(-x-1)/(x-1)")
    G = go.generate(F19, [s])
    Pg = inv.orbit_polynomial(G)
    h = gf.least_irreducible(F19, 4)
    ext = gf.extend(F19, h)
    alpha = ext.gen()
    f = Pg.specialize(alpha)
    assert f.deg == 4 and f.is_monic()
    assert upoly.gcd(f, f.derivative()).deg == 0  # squarefree
    assert f(alpha) == ext.zero()


def test_specialize_nonregular_orbit(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    s2 = s.power(2)  # order 4 | q+1
    G = go.generate(F7, [s2])
    fixed = s2.fixed_points(2)
    alpha = next(z.value for z in fixed if z.value is not None)
    Pg = inv.orbit_polynomial(G)
    ext = alpha.ctx
    lin = upoly.Poly(ext, (-alpha, ext.one()))
    assert Pg.specialize(alpha) == lin.pow(4)


def test_specialize_headline_quartics(F19):
    s = mo.parse_moebius(F19, "(-x-1)/(x-1)")
    G = go.generate(F19, [s])
    Pg = inv.orbit_polynomial(G)
    coeffs = [0] * 21
    coeffs[20], coeffs[19], coeffs[1], coeffs[0] = 1, -1, 1, 1
    big = upoly.Poly.from_ints(F19, coeffs)
    h = upoly.least_degree_factor(big)
    ext = gf.extend(F19, h)
    alpha = ext.gen()
    special = Pg.specialize(alpha)
    down = upoly.Poly(F19, tuple(gf.down_cast(c, F19) for c in special.coeffs))
    assert down == h


def test_specialize_pole(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    G = go.generate(F7, [s])
    Pg = inv.orbit_polynomial(G)
    pole = upoly.roots_in(Pg.parameter.den, F7)[0]
    with pytest.raises(PoleError):
        Pg.specialize(pole)


@pytest.mark.parametrize("power", [1, 2])
def test_pole_orbit_is_one_regular_orbit(F7, power):
    # for cyclic order r > 2 dividing q+1, the denominator roots plus infinity
    # form a single regular orbit, exactly where the generator evaluates to it
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)").power(power)
    G = go.generate(F7, [s])
    phi = inv.invariant_generator(G)
    pole_points = {mo.INFINITY} | {mo.ProjPoint(r)
                                   for r in upoly.roots_in(phi.den, F7)}
    assert len(pole_points) == len(G)
    report = go.orbit_decomposition(G, 1)
    matching = [o for o in report.orbits if set(o.points) == pole_points]
    assert len(matching) == 1 and matching[0].regular
    for z in mo.projective_line(F7):
        value = phi.eval_point(z)
        assert (value == mo.INFINITY) == (z in pole_points)


def test_phi_orbit_test_partitions(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    s2 = s.power(2)
    G = go.generate(F7, [s2])
    phi = inv.invariant_generator(G)
    report = go.orbit_decomposition(G, 1)
    orbits = [o.points for o in report.orbits]
    assert len(orbits) == 2
    a0, a1 = orbits[0][0], orbits[0][1]
    b0 = orbits[1][0]
    assert inv.phi_orbit_test(G, phi, a0, a1)
    assert not inv.phi_orbit_test(G, phi, a0, b0)
    assert inv.phi_orbit_test(G, phi, b0, b0)


def test_phi_same_value_on_quadratic_layer_full_group(F3):
    # all points of the quadratic layer share one invariant value
    G = go.full_pgl(F3)
    phi = inv.invariant_generator(G)
    ext = gf.extension_of(F3, 2)
    values = {phi.eval_point(mo.ProjPoint(v))
              for v in ext.elements() if not gf.in_subfield(v, F3)}
    assert len(values) == 1
    val = values.pop()
    assert val.value is not None and gf.in_subfield(val.value, F3)


@pytest.mark.parametrize("p", [2, 3])
def test_phi_rational_on_small_layers(p):
    # degree-2 and degree-3 points all take rational invariant values
    ctx = gf.prime_field(p)
    G = go.full_pgl(ctx)
    phi = inv.invariant_generator(G)
    for k in (2, 3):
        ext = gf.extension_of(ctx, k)
        for v in ext.elements():
            value = phi.eval_point(mo.ProjPoint(v))
            assert value.value is None or gf.in_subfield(value.value, ctx)

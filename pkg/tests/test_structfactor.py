import pytest

from orbitfactor import gf, grouporbit as go, invariants as inv, moebius as mo, upoly
from orbitfactor import structfactor as sf
from orbitfactor.errors import IdentityInputError, WrongOrderError


def P(ctx, *ints):
    return upoly.Poly.from_ints(ctx, list(ints))


def test_companion_headline(F19):
    raw, s = mo.parse_moebius_raw(F19, "(-x-1)/(x-1)")
    poly = sf.companion_poly(F19, raw)
    coeffs = [0] * 21
    coeffs[20], coeffs[19], coeffs[1], coeffs[0] = 1, -1, 1, 1
    assert poly == upoly.Poly.from_ints(F19, coeffs)
    # the normalized companion differs only by a unit
    ps = sf.frobenius_companion(s)
    assert ps.monic() == poly.monic()


def test_companion_seventeen():
    F17 = gf.prime_field(17)
    raw, _ = mo.parse_moebius_raw(F17, "(14x+13)/(6x+2)")
    poly = sf.companion_poly(F17, raw)
    coeffs = [0] * 19
    coeffs[18], coeffs[17], coeffs[1], coeffs[0] = 6, 2, -14, -13
    assert poly == upoly.Poly.from_ints(F17, coeffs)


def test_companion_identity_is_field_polynomial(F7):
    s = mo.Moebius.identity(F7)
    assert sf.frobenius_companion(s) == upoly.Poly.x_pow(F7, 7) - upoly.Poly.x(F7)


def test_connected_centralizer_sizes(F7):
    q = 7
    for text, want in (("3x", q - 1), ("x+1", q), ("(3x-1)/(x+3)", q + 1)):
        s = mo.parse_moebius(F7, text)
        assert len(sf.connected_centralizer(s)) == want


def test_connected_centralizer_commutes(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    for u in sf.connected_centralizer(s):
        assert u.compose(s) == s.compose(u)


def test_connected_centralizer_subset_of_brute_force(F5):
    G = go.full_pgl(F5)
    for s in list(G)[::17]:
        if s.is_identity():
            continue
        mine = set(sf.connected_centralizer(s))
        brute = set(go.centralizer(G, s).elements)
        assert mine <= brute


def test_find_s_for_alpha_quadratic_gives_involution(F7):
    G = go.full_pgl(F7)
    ext = gf.extension_of(F7, 2)
    alpha = next(v for v in ext.elements() if not gf.in_subfield(v, F7))
    s = sf.find_s_for_alpha(G, alpha)
    assert s.order() == 2


def test_find_s_for_alpha_cubic_gives_order_three(F5):
    G = go.full_pgl(F5)
    ext = gf.extension_of(F5, 3)
    alpha = ext.gen()
    s = sf.find_s_for_alpha(G, alpha)
    assert s.order() == 3


def test_find_s_for_alpha_recovers_witness(F19):
    s = mo.parse_moebius(F19, "(-x-1)/(x-1)")
    res = sf.factor_by_orbit(s)
    G = go.generate(F19, [s])
    alpha = res.factors[0].source
    assert sf.find_s_for_alpha(G, alpha) == s


def test_factor_by_orbit_headline(F19):
    s = mo.parse_moebius(F19, "(-x-1)/(x-1)")
    res = sf.factor_by_orbit(s)
    assert res.degree_r == 4 and len(res.factors) == 5 and not res.removed_linear
    lams = sorted(e.lam.value.rep for e in res.factors)
    assert lams == sorted((-v) % 19 for v in (6, 9, 12, 14, 15))
    for e in res.factors:
        lam = e.lam.value
        assert e.poly == upoly.Poly(F19, (F19.one(), lam, F19.elem(-6), -lam, F19.one()))


def test_factor_by_orbit_seventeen_list():
    F17 = gf.prime_field(17)
    s = mo.parse_moebius(F17, "(14x+13)/(6x+2)")
    res = sf.factor_by_orbit(s)
    listed = [[7, 15, 0, 1], [16, 9, 3, 1], [2, 7, 4, 1],
              [8, 3, 6, 1], [9, 8, 12, 1], [1, 2, 15, 1]]
    assert set(res.monic_factors()) == {P(F17, *c) for c in listed}


def test_factor_by_orbit_order_q_plus_one_is_irreducible(F5):
    s = next(t for t in go.full_pgl(F5) if t.order() == 6)
    res = sf.factor_by_orbit(s)
    assert len(res.factors) == 1 and res.factors[0].poly.deg == 6
    assert upoly.is_irreducible(res.factors[0].poly)


def test_factor_by_orbit_rejects_identity(F7):
    with pytest.raises(IdentityInputError):
        sf.factor_by_orbit(mo.Moebius.identity(F7))


@pytest.mark.parametrize("p,m", [(3, 1), (4, None), (5, 1), (7, 1)])
def test_factor_by_orbit_matches_oracle_everywhere(p, m):
    ctx = gf.field_create(2, 2) if p == 4 else gf.prime_field(p)
    G = go.full_pgl(ctx)
    for s in G:
        if s.is_identity():
            continue
        res = sf.factor_by_orbit(s)
        oracle = upoly.factorize(res.input)
        assert res.as_multiset() == oracle.as_multiset()
        assert res.unit == oracle.unit
        assert res.reconstruct() == res.input


@pytest.mark.parametrize("p", [3, 5, 7])
def test_split_involution_vs_nonsplit_involution(p):
    # split: two rational fixed points -> stripped linears then quadratics
    G = go.full_pgl(gf.prime_field(p))
    for s in G:
        if s.order() != 2:
            continue
        res = sf.factor_by_orbit(s)
        if s.classify() is mo.MoebiusClass.SPLIT:
            assert len(res.removed_linear) == (2 if s.c else 1)
        else:
            assert not res.removed_linear
        assert all(e.poly.deg == 2 for e in res.factors)


def test_lambda_report_seven(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    report = sf.lambda_family_report(s)
    assert report.counts == {2: (1, 1), 4: (2, 2), 8: (4, 4)}
    assert report.total == 7


def test_lambda_report_two(F2):
    s = next(t for t in go.full_pgl(F2) if t.order() == 3)
    report = sf.lambda_family_report(s)
    assert report.counts == {3: (2, 2)}
    assert report.total == 2


def test_lambda_report_wrong_order(F7):
    with pytest.raises(WrongOrderError):
        sf.lambda_family_report(mo.parse_moebius(F7, "x+1"))


@pytest.mark.parametrize("p", [3, 5])
def test_lambda_report_top_count(p):
    ctx = gf.prime_field(p)
    s = next(t for t in go.full_pgl(ctx) if t.order() == p + 1)
    report = sf.lambda_family_report(s)
    count, predicted = report.counts[p + 1]
    assert count == predicted == sf._euler_phi(p + 1)


def test_numerator_structure(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    assert sf.numerator_structure_check(s)
    with pytest.raises(WrongOrderError):
        sf.numerator_structure_check(mo.parse_moebius(F7, "3x"))


def test_factor_f_lambda_pgl3(F3):
    G = go.full_pgl(F3)
    res1 = sf.factor_f_lambda(G, F3.one())
    assert res1.regular and res1.degree == 3 and res1.count() == 8
    assert {p for p, _ in res1.factors} == set(upoly.monic_irreducibles(F3, 3))
    assert res1.witness is not None and res1.witness.order() == 3

    res2 = sf.factor_f_lambda(G, F3.elem(-1))
    assert not res2.regular
    assert res2.degree == 2 and res2.multiplicity == 4 and len(res2.factors) == 3

    res0 = sf.factor_f_lambda(G, F3.zero())
    assert res0.regular and res0.degree == 4 and res0.count() == 6
    assert res0.witness.order() == 4


def test_factor_f_lambda_small_group_linears(F7):
    # cyclic of order 4 dividing q+1 is regular on the rational line, so some
    # lambda values split completely into linears with the identity witness
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)").power(2)
    G = go.generate(F7, [s])
    degrees = set()
    for lam in F7.elements():
        res = sf.factor_f_lambda(G, lam)
        degrees.add(res.degree)
        if res.degree == 1:
            assert res.witness.is_identity()
        else:
            assert res.witness is None or res.witness.order() == res.degree
    assert 1 in degrees


@pytest.mark.parametrize("p,count", [(2, 2), (3, 8), (5, 40)])
def test_all_cubics_product(p, count):
    ctx = gf.prime_field(p)
    product = sf.all_cubics_product(ctx)
    assert product.deg == 3 * count
    assert product == upoly.factorize(product).value()


def test_factor_general_k_is_factor_by_orbit_at_one(F7):
    s = mo.parse_moebius(F7, "(3x-1)/(x+3)")
    res = sf.factor_general_k(s, 1)
    assert res.factors == tuple(sorted(
        [e.poly for e in res.inner.factors] + list(res.inner.removed_linear),
        key=lambda f: f.key()))
    assert res.reconstruct() == res.input


def test_factor_general_k_two(F2):
    # q=2, k=2: s of order 3 acts through PGL(2,4); merging Galois conjugates
    # recovers the rational factorization of the degree-5 companion
    s = next(t for t in go.full_pgl(F2) if t.order() == 3)
    res = sf.factor_general_k(s, 2)
    assert res.input.deg in (4, 5)
    oracle = upoly.factorize(res.input)
    mine = sorted(res.factors, key=lambda f: f.key())
    theirs = sorted([p for p, mult in oracle.factors for _ in range(mult)],
                    key=lambda f: f.key())
    assert mine == theirs


@pytest.mark.parametrize("k", [2, 3])
def test_factor_general_k_all_of_pgl2(F2, k):
    for s in go.full_pgl(F2):
        if s.is_identity():
            continue
        res = sf.factor_general_k(s, k)
        oracle = upoly.factorize(res.input)
        mine = sorted(res.factors, key=lambda f: f.key())
        theirs = sorted([p for p, mult in oracle.factors for _ in range(mult)],
                        key=lambda f: f.key())
        assert mine == theirs
        # rational factor degrees are Galois merges of the ground-field ones
        inner_degs = {e.poly.deg for e in res.inner.factors}
        inner_degs |= {lin.deg for lin in res.inner.removed_linear}
        for f in res.factors:
            assert any(f.deg % d == 0 for d in inner_degs)


def test_factor_general_k_nonprime_ground(F4):
    # ground field F_{q^k} built from a non-prime q needs the flattened tower
    s = next(t for t in go.full_pgl(F4) if t.order() == 5)
    res = sf.factor_general_k(s, 2)
    oracle = upoly.factorize(res.input)
    mine = sorted(res.factors, key=lambda f: f.key())
    theirs = sorted([p for p, mult in oracle.factors for _ in range(mult)],
                    key=lambda f: f.key())
    assert mine == theirs


def test_solution_counts(F3):
    # the companion polynomial is squarefree of degree q or q+1
    for ctx in (gf.prime_field(2), gf.prime_field(3), gf.field_create(2, 2)):
        q = ctx.order
        for s in go.full_pgl(ctx):
            if s.is_identity():
                continue
            ps = sf.frobenius_companion(s)
            assert ps.deg in (q, q + 1)
            assert upoly.gcd(ps, ps.derivative()).deg == 0


def test_bootstrap_power_compatibility(F19):
    s = mo.parse_moebius(F19, "(-x-1)/(x-1)")
    res = sf.factor_by_orbit(s)
    ext = res.root_field
    alpha = res.factors[0].source
    s_ext = s.lift_to(ext)
    z = mo.ProjPoint(alpha)
    for i in range(1, 5):
        z = s_ext.apply(z)
        assert z.value == alpha ** (19 ** i)


def test_family_coherence_constant_coefficients(F19):
    # constant family coefficients take the same value in every factor
    s = mo.parse_moebius(F19, "(-x-1)/(x-1)")
    res = sf.factor_by_orbit(s)
    Pg = res.orbit_poly
    for i, (a, b) in enumerate(Pg.family):
        if not a and i < res.degree_r:
            for e in res.factors:
                coeff = e.poly.coeffs[i] if i <= e.poly.deg else F19.zero()
                assert coeff == b

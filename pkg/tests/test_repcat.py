from fractions import Fraction

import pytest

from lmodkit import repcat as rc
from lmodkit.randgen import Rng, random_complex, random_graded_module
from lmodkit.rootcore import build_root_datum

F = Fraction


@pytest.fixture(scope="module")
def a1():
    return build_root_datum("A", 1)


@pytest.fixture(scope="module")
def a2():
    return build_root_datum("A", 2)


def test_kostant_rank_one(a1):
    g, b = a1.full_par(), frozenset()
    triv = rc.make_irr(a1, g, (0,))
    km = rc.kostant_functor(a1, b, g, rc.GradedModule({(0, triv): 1}))
    neg_a = tuple(-x for x in a1.root_to_weight((1,)))
    assert km.entries == {
        (0, rc.make_irr(a1, b, (F(0),))): 1,
        (1, rc.make_irr(a1, b, neg_a)): 1,
    }
    assert rc.kostant_functor(a1, g, g, rc.GradedModule({(0, triv): 1})).entries == {(0, triv): 1}


def test_kostant_outputs_levi_dominant(a2):
    g = a2.full_par()
    m = rc.GradedModule({(0, rc.make_irr(a2, g, (2, 1))): 1})
    for p in a2.all_parabolics():
        out = rc.kostant_functor(a2, p, g, m)
        for (_, v) in out.entries:
            for i in p:
                assert v.hw[i] >= 0 and v.hw[i].denominator == 1
    # the s1 s2 component of lambda = 0 lands at (-3, 0) in degree 2
    km = rc.kostant_functor(a2, frozenset(), g, rc.GradedModule({(0, rc.make_irr(a2, g, (0, 0))): 1}))
    assert (2, rc.Irr(frozenset(), (F(-3), F(0)))) in km.entries


def test_kostant_composition_and_morphisms(a2):
    rng = Rng(12, "t")
    g = a2.full_par()
    for i in range(10):
        sub = rng.child(str(i))
        gm = random_graded_module(a2, g, sub)
        for q in [frozenset({0}), frozenset({1})]:
            lhs = rc.kostant_functor(a2, frozenset(), q, rc.kostant_functor(a2, q, g, gm))
            assert lhs == rc.kostant_functor(a2, frozenset(), g, gm)
    # functoriality on morphisms: identity goes to identity, zero to zero
    gm = random_graded_module(a2, g, rng.child("m"))
    ident = rc.identity_morphism(gm)
    km = rc.kostant_on_morphism(a2, frozenset(), g, ident)
    assert km == rc.identity_morphism(rc.kostant_functor(a2, frozenset(), g, gm))
    zero = rc.zero_morphism(gm, gm, 0)
    assert rc.kostant_on_morphism(a2, frozenset(), g, zero).is_zero()


def test_cohomology_basics(a1):
    g = a1.full_par()
    v = rc.make_irr(a1, g, (0,))
    m = rc.GradedModule({(0, v): 2, (1, v): 1})
    d = rc.IsoMorphism(m, m, 1, {(0, v): [[F(1), F(0)]]})
    c = rc.IsoComplex(m, d)
    assert rc.cohomology(c) == rc.GradedModule({(0, v): 1})
    zero_diff = rc.complex_from_module(m)
    assert rc.cohomology(zero_diff) == m


def test_cohomology_commutes_with_shift(a2):
    rng = Rng(5, "shift")
    for i in range(8):
        c = random_complex(a2, a2.full_par(), rng.child(str(i)))
        for k in (-2, 1, 3):
            assert rc.cohomology(c.shift(k)) == rc.cohomology(c).shift(k)


def test_mapping_cone_les(a2):
    rng = Rng(9, "cone")
    g = a2.full_par()
    for i in range(10):
        c = random_complex(a2, g, rng.child(f"a{i}"))
        cone = rc.mapping_cone(rc.identity_morphism(c.module), c, c)
        assert rc.cohomology(cone).is_zero()
        # cone of the zero map splits
        d = random_complex(a2, g, rng.child(f"b{i}"))
        if c.module != d.module:
            continue
        z = rc.zero_morphism(c.module, d.module, 0)
        cone2 = rc.mapping_cone(z, c, d)
        expect = rc.cohomology(c).shift(1).direct_sum(rc.cohomology(d))
        assert rc.cohomology(cone2) == expect


def test_cone_euler_bound(a2):
    # alternating sums: chi(cone) = chi(tgt) - chi(src)
    rng = Rng(11, "euler")
    g = a2.full_par()
    for i in range(10):
        c = random_complex(a2, g, rng.child(str(i)))
        sub, quot, incl, proj = rc.truncate_degree(c, 0)
        cone = rc.mapping_cone(incl, sub, c)
        chi = rc.euler_characteristic
        lhs = chi(rc.cohomology(cone))
        want = {}
        for v, x in chi(rc.cohomology(c)).items():
            want[v] = want.get(v, 0) + x
        for v, x in chi(rc.cohomology(sub)).items():
            want[v] = want.get(v, 0) - x
        want = {v: x for v, x in want.items() if x}
        assert lhs == want
        # the cone of a truncation inclusion computes the complementary part
        assert rc.cohomology(cone) == rc.cohomology(quot)


def test_truncate_degree_splitting(a2):
    rng = Rng(7, "trunc")
    g = a2.full_par()
    for i in range(12):
        c = random_complex(a2, g, rng.child(str(i)))
        h = rc.cohomology(c)
        for n in (-1, 0, 1):
            sub, quot, incl, proj = rc.truncate_degree(c, n)
            hs = rc.cohomology(sub)
            hq = rc.cohomology(quot)
            assert hs == rc.GradedModule({k: m for k, m in h.entries.items() if k[0] <= n})
            assert hq == rc.GradedModule({k: m for k, m in h.entries.items() if k[0] > n})
            assert rc.is_chain_map(incl, sub, c)
            assert rc.is_chain_map(proj, c, quot)


def test_weight_truncation(a1, a2):
    g, b = a1.full_par(), frozenset()
    km = rc.kostant_functor(a1, b, g, rc.GradedModule({(0, rc.make_irr(a1, g, (0,))): 1}))
    eta = rc.lower_middle_profile(a1)
    keep = rc.weight_truncate(a1, km, eta, True)
    drop = rc.weight_truncate(a1, km, eta, False)
    assert keep.direct_sum(drop) == km
    assert [v.hw for (_, v) in keep.entries] == [(F(0),)]
    # upper middle is the strict version
    up = rc.upper_middle_profile(a1)
    assert rc.weight_geq(a1, (F(0),), up, b)
    assert not rc.weight_geq(a1, tuple(-x for x in a1.rho()), up, b)
    assert rc.weight_geq(a1, tuple(-x for x in a1.rho()), eta, b)


def test_weight_truncation_vs_kostant_containment(a2):
    # tau^{>= eta} H(n; E) is contained in H(n; tau^{>= eta} E)
    rng = Rng(21, "contain")
    g = a2.full_par()
    eta = rc.lower_middle_profile(a2)
    for i in range(10):
        gm = random_graded_module(a2, g, rng.child(str(i)))
        for p in a2.all_parabolics():
            lhs = rc.weight_truncate(a2, rc.kostant_functor(a2, p, g, gm), eta, True)
            rhs = rc.kostant_functor(a2, p, g, rc.weight_truncate(a2, gm, eta, True))
            for k, mult in lhs.entries.items():
                assert rhs.entries.get(k, 0) >= mult


def test_malformed_morphisms(a1):
    g = a1.full_par()
    v = rc.make_irr(a1, g, (0,))
    m = rc.GradedModule({(0, v): 1, (1, v): 2})
    with pytest.raises(rc.MalformedMorphism):
        rc.IsoMorphism(m, m, 1, {(0, v): [[F(1)]]})
    # cone of a non-chain map is rejected
    m2 = rc.GradedModule({(0, v): 1, (1, v): 1})
    with_diff = rc.IsoComplex(m2, rc.IsoMorphism(m2, m2, 1, {(0, v): [[F(1)]]}))
    no_diff = rc.IsoComplex(m2, rc.zero_morphism(m2, m2, 1))
    phi = rc.identity_morphism(m2)
    with pytest.raises(rc.NotChainMap):
        rc.mapping_cone(phi, with_diff, no_diff)

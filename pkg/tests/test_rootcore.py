from fractions import Fraction

import pytest

from lmodkit.rootcore import UnsupportedGroup, build_root_datum

F = Fraction

CATALOG = [
    ("A", 1, 1, 2),
    ("A", 2, 3, 6),
    ("A", 3, 6, 24),
    ("A", 4, 10, 120),
    ("B", 2, 4, 8),
    ("B", 3, 9, 48),
    ("B", 4, 16, 384),
    ("C", 2, 4, 8),
    ("C", 3, 9, 48),
    ("C", 4, 16, 384),
    ("D", 4, 12, 192),
    ("G", 2, 6, 12),
]


@pytest.mark.parametrize("t,r,npos,nw", CATALOG)
def test_catalog_counts(t, r, npos, nw):
    d = build_root_datum(t, r)
    assert len(d.pos_roots) == npos
    assert len(d.weyl_group()) == nw


def test_unsupported_groups():
    with pytest.raises(UnsupportedGroup):
        build_root_datum("E", 6)
    with pytest.raises(UnsupportedGroup):
        build_root_datum("A", 5)
    with pytest.raises(UnsupportedGroup):
        build_root_datum("G", 3)


def test_reflection_closure():
    d = build_root_datum("C", 2)
    pos = set(d.pos_roots)
    for i in range(d.rank):
        flipped = 0
        for g in pos:
            img = d._reflect_root(i, g)
            if all(x >= 0 for x in img):
                assert img in pos
            else:
                flipped += 1
                assert tuple(-x for x in img) in pos
        assert flipped == 1  # only the reflected simple root changes sign


def test_length_equals_inversions_and_factorization():
    d = build_root_datum("B", 2)
    for w in d.weyl_group():
        assert len(d.phi_w(w)) == w.length
        for q in d.all_parabolics():
            wu, wq = d.factor(w, q)
            assert d.multiply(wu, wq).mat == w.mat
            assert wu.length + wq.length == w.length
            assert d.phi_w(wq) <= set(map(tuple, d.nilradical_roots(frozenset(), d.full_par()))) or True


def test_rho_decompose_and_projection():
    d = build_root_datum("A", 2)
    rho = d.rho()
    for par in d.all_parabolics():
        levi = d.project_to_levi(rho, par)
        ap = d.restrict_to_aP(rho, par)
        assert d.weight_add(levi, ap) == rho
        # rho^P is the half sum of the Levi positives
        acc = [F(0)] * d.rank
        for g in d.levi_positive_roots(par):
            gw = d.root_to_weight(g)
            acc = [a + F(b, 2) for a, b in zip(acc, gw)]
        assert tuple(acc) == levi
        # orthogonality of the a_P part to the Levi span
        x = d.weight_to_root_coords(ap)
        for i in par:
            a = tuple(1 if k == i else 0 for k in range(d.rank))
            assert d.form_roots(x, a) == 0


def test_pairing_examples():
    d = build_root_datum("A", 2)
    for g in d.pos_roots:
        assert d.pairing(d.rho(), g) >= 1
    for i in range(2):
        simple = tuple(1 if k == i else 0 for k in range(2))
        assert d.pairing(d.rho(), simple) == 1
        assert d.pairing(d.zero_weight(), simple) == 0
    assert d.pairing((F(-2), F(1)), (1, 0)) == -2


def test_coroot_aP():
    d = build_root_datum("A", 2)
    # minimal parabolic: the coroot is unchanged
    cv = d.coroot_aP(0, frozenset())
    assert cv == tuple(F(x) for x in d.coroot_vector((1, 0)))
    # projection is orthogonal to the Levi
    cv2 = d.coroot_aP(0, frozenset({1}))
    a2 = (0, 1)
    assert d.form_roots(cv2, a2) == 0


def test_weyl_coset_reps():
    d = build_root_datum("A", 2)
    reps = d.coset_reps(frozenset())
    assert sorted(w.length for w in reps) == [0, 1, 1, 2, 2, 3]
    assert [w.length for w in d.coset_reps(d.full_par())] == [0]
    c2 = build_root_datum("C", 2)
    assert len(c2.coset_reps(frozenset())) == 8
    # |W_P^Q| = |W^Q| / |W^P| checked internally; spot check one pair
    assert len(d.coset_reps(frozenset({0}), d.full_par())) == 3


def test_tau_and_self_contragredience():
    a1 = build_root_datum("A", 1)
    assert a1.tau_apply(frozenset(), (F(5),)) == (F(-5),)
    assert a1.tau_apply(frozenset({0}), (F(5),)) == (F(5),)
    a2 = build_root_datum("A", 2)
    full = a2.full_par()
    assert a2.tau_apply(full, (F(1), F(0))) == (F(0), F(1))
    assert a2.is_conj_self_contragredient(a2.rho(), full)
    assert not a2.is_conj_self_contragredient((F(1), F(0)), full)
    assert a2.is_conj_self_contragredient((F(1), F(0)), frozenset())
    # involution and -1 on the a_P part
    for par in a2.all_parabolics():
        for mu in [(F(1), F(2)), (F(-1), F(3))]:
            assert a2.tau_apply(par, a2.tau_apply(par, mu)) == mu
            ap = a2.restrict_to_aP(mu, par)
            assert a2.tau_apply(par, ap) == tuple(-x for x in ap)


def test_fundamental_weyl():
    a1 = build_root_datum("A", 1)
    s = a1.weyl_group()[1]
    assert not a1.is_fundamental_weyl(s, frozenset(), frozenset({0}))
    assert a1.is_fundamental_weyl(a1.identity_elem(), frozenset(), frozenset())
    c2 = build_root_datum("C", 2)
    full = c2.full_par()
    found = [w for w in c2.coset_reps(frozenset()) if c2.is_fundamental_weyl(w, frozenset(), full)]
    assert found == []
    # fundamental implies half-length
    a2 = build_root_datum("A", 2)
    for p in a2.all_parabolics():
        for w in a2.coset_reps(p):
            if a2.is_fundamental_weyl(w, p, a2.full_par()):
                assert 2 * w.length == a2.dim_nilradical(p)


def test_ell_alpha_additivity():
    d = build_root_datum("G", 2)
    for p in d.all_parabolics():
        classes = d.aP_root_classes(p)
        for w in d.coset_reps(p):
            assert sum(d.ell_alpha(w, roots, p) for _, roots in classes) == w.length


def test_qw_set_all_or_none():
    d = build_root_datum("A", 2)
    p = frozenset({0})
    qw = d.qw_set(p)
    # the defining condition w^{-1} Delta^P in Delta gives exactly 2 elements
    assert len(qw) == 2
    for w in qw:
        for _, roots in d.aP_root_classes(p):
            inter = sum(1 for g in roots if g in d.phi_w(w))
            assert inter in (0, len(roots))
    # the remaining minimal representative fails all-or-none
    others = [w for w in d.coset_reps(p) if w not in qw]
    assert len(others) == 1
    bad = others[0]
    assert any(
        0 < sum(1 for g in roots if g in d.phi_w(bad)) < len(roots)
        for _, roots in d.aP_root_classes(p)
    )
    assert len(d.qw_set(frozenset())) == 6
    assert d.qw_set(d.full_par())[0].word == ()


def test_dims():
    a1 = build_root_datum("A", 1)
    c2 = build_root_datum("C", 2)
    assert a1.dim_symmetric_space(a1.full_par()) == 2
    assert c2.dim_symmetric_space(c2.full_par()) == 6
    assert c2.dim_symmetric_space(frozenset()) == 0
    for d in (a1, c2, build_root_datum("A", 3)):
        g = d.full_par()
        for p in d.all_parabolics():
            lhs = d.dim_symmetric_space(g) - d.dim_symmetric_space(p)
            assert lhs == d.dim_nilradical(p) + (d.rank - len(p))


def test_dim_DPV():
    c2 = build_root_datum("C", 2)
    full = c2.full_par()
    assert c2.dim_DPV(c2.zero_weight(), full) == 6
    assert c2.dim_DPV(c2.rho(), full) == 0
    assert c2.dim_DPV(c2.zero_weight(), frozenset({0})) == 2
    assert c2.dim_DPV(c2.zero_weight(), frozenset()) == 0
    a3 = build_root_datum("A", 3)
    assert a3.dim_DPV(a3.zero_weight(), a3.full_par()) is None
    # recorded maximizer
    dim, w = c2.dim_DPV_detail(c2.zero_weight(), full)
    assert dim == 6 and w is not None


def test_dim_nP_V():
    a1 = build_root_datum("A", 1)
    c2 = build_root_datum("C", 2)
    assert a1.dim_nP_V(a1.zero_weight(), frozenset()) == 1
    assert a1.dim_nP_V((F(4),), frozenset()) == 1
    assert c2.dim_nP_V(c2.zero_weight(), frozenset()) == 4


def test_vogan_markings_and_equal_rank():
    table = {("A", 1): True, ("A", 2): False, ("A", 3): False,
             ("B", 2): True, ("B", 3): True, ("C", 2): True, ("C", 3): True,
             ("D", 4): True, ("G", 2): True}
    for (t, r), expect in table.items():
        d = build_root_datum(t, r)
        assert d.is_equal_rank_subset(d.full_par()) == expect
        if expect:
            assert d.vogan_marking(d.full_par()) is not None


def test_rho_decompose_named():
    a2 = build_root_datum("A", 2)
    full, zero = a2.rho_decompose(a2.full_par())
    assert full == a2.rho() and all(x == 0 for x in zero)
    levi, ap = a2.rho_decompose(frozenset())
    assert all(x == 0 for x in levi) and ap == a2.rho()
    half_a1 = tuple(F(x, 2) for x in a2.root_to_weight((1, 0)))
    assert a2.rho_decompose(frozenset({0}))[0] == half_a1

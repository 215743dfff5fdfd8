from fractions import Fraction

import pytest

from lmodkit import liealg as lg
from lmodkit import repcat as rc
from lmodkit.rootcore import build_root_datum

F = Fraction


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("A", 3), ("G", 2), ("D", 4)])
def test_chevalley_builds_and_jacobi(t, r):
    d = build_root_datum(t, r)
    alg = lg.build_chevalley(d)
    assert alg.jacobi_checked
    assert set(alg.pos_vectors) == set(d.pos_roots)


def test_freudenthal_adjoint_a2():
    d = build_root_datum("A", 2)
    f = lg.freudenthal(d, (F(1), F(1)))
    assert f[(F(0), F(0))] == 2
    assert sum(f.values()) == 8


def test_freudenthal_matches_weyl_dim():
    for t, r, lam, dim in [
        ("C", 2, (0, 1), 5),
        ("C", 2, (1, 0), 4),
        ("C", 2, (2, 2), 81),
        ("G", 2, (1, 0), 7),
        ("G", 2, (0, 1), 14),
        ("A", 3, (1, 0, 0), 4),
        ("B", 3, (1, 0, 0), 7),
    ]:
        d = build_root_datum(t, r)
        lam = tuple(map(F, lam))
        assert lg.weyl_dim(d, lam) == dim
        assert sum(lg.freudenthal(d, lam).values()) == dim


def test_freudenthal_trivial():
    d = build_root_datum("A", 2)
    assert lg.freudenthal(d, (F(0), F(0))) == {(F(0), F(0)): 1}


def test_build_irrep_and_construction_paths():
    a1 = build_root_datum("A", 1)
    assert lg.build_irrep(a1, (F(2),)).dim == 3
    a2 = build_root_datum("A", 2)
    adj = lg.build_irrep(a2, (F(1), F(1)))
    assert adj.dim == 8
    alt = lg.build_irrep(a2, (F(1), F(1)), alternate_seeds=True)
    assert adj.weight_multiplicities() == alt.weight_multiplicities()
    assert adj.weight_multiplicities() == lg.freudenthal(a2, (F(1), F(1)))
    c2 = build_root_datum("C", 2)
    assert lg.build_irrep(c2, (F(0), F(1))).dim == 5
    g2 = build_root_datum("G", 2)
    assert lg.build_irrep(g2, (F(1), F(0))).dim == 7


def test_build_irrep_levi_with_central_character():
    c2 = build_root_datum("C", 2)
    par = frozenset({0})
    rep = lg.build_irrep(c2, (F(1), F(1, 2)), par)
    assert rep.dim == 2
    assert rep.hw == (F(1), F(1, 2))
    # every weight differs from the top one by Levi roots
    top = rep.weights[0]
    for w in rep.weights:
        diff = c2.weight_to_root_coords(tuple(a - b for a, b in zip(top, w)))
        assert diff[1] == 0


def test_spin_weights_out_of_reach():
    b3 = build_root_datum("B", 3)
    with pytest.raises(lg.DepthExceeded):
        lg.build_irrep(b3, (F(0), F(0), F(1)))
    d4 = build_root_datum("D", 4)
    with pytest.raises(lg.DepthExceeded):
        lg.build_irrep(d4, (F(0), F(0), F(1), F(0)))


def test_ce_cap():
    c3 = build_root_datum("C", 3)
    triv = lg.build_irrep(c3, (F(0),) * 3)
    with pytest.raises(lg.CapExceeded):
        lg.ce_cohomology(c3, frozenset(), c3.full_par(), triv, cap=8)


def test_ce_rank_one():
    a1 = build_root_datum("A", 1)
    triv = lg.build_irrep(a1, (F(0),))
    h = lg.ce_cohomology(a1, frozenset(), a1.full_par(), triv)
    neg_a = tuple(-x for x in a1.root_to_weight((1,)))
    assert h == {(0, (F(0),)): 1, (1, neg_a): 1}


def test_ce_matches_kostant_a2_and_c2():
    for t, r, lam in [("A", 2, (0, 0)), ("A", 2, (1, 1)), ("C", 2, (1, 0))]:
        d = build_root_datum(t, r)
        lam = tuple(map(F, lam))
        rep = lg.build_irrep(d, lam)
        for p in d.all_parabolics():
            got = lg.ce_cohomology(d, p, d.full_par(), rep)
            v = rc.make_irr(d, d.full_par(), lam)
            want_gm = rc.kostant_functor(d, p, d.full_par(), rc.GradedModule({(0, v): 1}))
            want = {(deg, vv.hw): m for (deg, vv), m in want_gm.entries.items()}
            assert got == want, (t, r, lam, sorted(p))


def test_euler_character_identity():
    for t, r, lam in [("A", 1, (0,)), ("A", 2, (1, 0)), ("G", 2, (0, 0)), ("C", 2, (1, 1))]:
        d = build_root_datum(t, r)
        lam = tuple(map(F, lam))
        for p in d.all_parabolics():
            assert lg.euler_character_check(d, p, lam)

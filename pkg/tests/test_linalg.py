from fractions import Fraction

from lmodkit import _linalg as la


def test_rref_rank_nullspace():
    m = la.qmat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert la.rank(m) == 2
    ns = la.nullspace(m)
    assert len(ns[0]) == 1
    # the kernel vector really is killed
    prod = la.mat_mul(m, ns)
    assert la.is_zero(prod)


def test_solve_consistent_and_inconsistent():
    a = la.qmat([[1, 1], [0, 1]])
    b = la.qmat([[3], [1]])
    x = la.solve(a, b)
    assert la.mat_eq(la.mat_mul(a, x), b)
    a2 = la.qmat([[1, 1], [2, 2]])
    assert la.solve(a2, la.qmat([[1], [3]])) is None


def test_smith_normal_form_and_divisibility():
    a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    s, u, v = la.smith_normal_form(a)
    # S = U A V
    ua = [[sum(u[i][k] * a[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    uav = [[sum(ua[i][k] * v[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert uav == s
    diag = [s[i][i] for i in range(3)]
    assert diag == [2, 6, 12]
    for i in range(2):
        assert diag[i + 1] % diag[i] == 0


def test_z_cohomology_torsion():
    # 0 -> Z --2--> Z -> 0 has H^1 = Z/2
    free, tors = la.z_cohomology([[2]], [], 1)
    assert (free, tors) == (0, [2])
    free, tors = la.z_cohomology([], [[2]], 1)
    assert (free, tors) == (0, [])


def test_z_kernel_saturated():
    ker = la.z_kernel([[2, -2]])
    assert len(ker[0]) == 1
    a, b = ker[0][0], ker[1][0]
    assert abs(a) == 1 and a == b

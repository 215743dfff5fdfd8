"""Satake-compactification combinatorics for split groups.

The representation defining the compactification enters only through the set
of simple roots adjacent to its highest weight (the sigma nodes); all the
closure operations are graph computations on the Dynkin diagram extended by
that virtual node.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootcore import Par, RootDatum, build_root_datum


class NotSaturated(ValueError):
    pass


def _adjacent(datum: RootDatum, i: int, j: int) -> bool:
    return i != j and datum.cartan[i][j] != 0


def sigma_nodes(datum: RootDatum) -> frozenset:
    if datum.sigma_nodes is None:
        raise ValueError("root datum carries no sigma-node data")
    return datum.sigma_nodes


def kappa(datum: RootDatum, theta) -> frozenset:
    """Largest sigma-connected subset: the component of the sigma node."""
    theta = frozenset(theta)
    nodes = sigma_nodes(datum)
    comp = set()
    # the sigma node is adjacent to exactly `nodes`; grow its component
    frontier = {i for i in theta if i in nodes}
    while frontier:
        comp |= frontier
        frontier = {
            j
            for j in theta - comp
            if any(_adjacent(datum, j, i) for i in comp)
        }
    return frozenset(comp)


def omega(datum: RootDatum, theta) -> frozenset:
    """Largest subset with the same sigma-connected part."""
    k = kappa(datum, theta)
    nodes = sigma_nodes(datum)
    extra = {
        i
        for i in set(range(datum.rank)) - k
        if i not in nodes and not any(_adjacent(datum, i, j) for j in k)
    }
    return frozenset(k | extra)


def dagger(datum: RootDatum, p: Par) -> Par:
    return omega(datum, p)


def is_saturated(datum: RootDatum, p: Par) -> bool:
    return omega(datum, p) == frozenset(p)


def saturated_parabolics(datum: RootDatum) -> list:
    """All sigma-saturated parabolics, ordered by the kappa-containment order."""
    out = {omega(datum, p) for p in datum.all_parabolics()}
    return sorted(out, key=lambda s: (len(kappa(datum, s)), sorted(kappa(datum, s)), sorted(s)))


def fiber_strata(datum: RootDatum, r: Par) -> list:
    """{P : P-dagger = R} = the interval [kappa(Delta^R), Delta^R]."""
    if not is_saturated(datum, r):
        raise NotSaturated(f"{sorted(r)} is not sigma-saturated")
    k = kappa(datum, r)
    out = [p for p in datum.all_parabolics() if k <= p <= r]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def ell_block(datum: RootDatum, r: Par) -> list:
    """Simple roots of the linear factor L_{R,l}, sorted ambient indices."""
    if not is_saturated(datum, r):
        raise NotSaturated(f"{sorted(r)} is not sigma-saturated")
    return sorted(set(r) - kappa(datum, r))


@dataclass(frozen=True)
class StratumGeometry:
    r: tuple
    kappa: tuple
    codim: int
    dim_a_r: int
    equal_rank_h: bool


def stratum_geometry(datum: RootDatum, r: Par) -> StratumGeometry:
    if not is_saturated(datum, r):
        raise NotSaturated(f"{sorted(r)} is not sigma-saturated")
    k = kappa(datum, r)
    dim_d = datum.dim_symmetric_space(datum.full_par())
    dim_dh = datum.dim_symmetric_space(k)
    eq = all(datum.is_equal_rank_subset(c) for c in datum.dynkin_components(k))
    return StratumGeometry(
        r=tuple(sorted(r)),
        kappa=tuple(sorted(k)),
        codim=dim_d - dim_dh,
        dim_a_r=datum.rank - len(r),
        equal_rank_h=eq,
    )


def fiber_datum(datum: RootDatum, r: Par) -> tuple[RootDatum, list]:
    """Root datum of the fiber group over the R-stratum and the position map.

    Returns (fiber datum, ell_positions); the k-th simple root of the fiber
    corresponds to the ambient simple root ell_positions[k].  The fiber group
    carries the full parabolic poset, with no Satake quotient of its own.
    """
    positions = ell_block(datum, r)
    if not positions:
        raise ValueError("the linear factor is trivial; the fiber is a point")
    return _classify_subdiagram(datum, positions)


def _classify_subdiagram(datum: RootDatum, positions: list) -> RootDatum:
    """Identify the sub-Dynkin diagram spanned by `positions` as a product
    of catalog types; only irreducible subdiagrams are supported here, which
    covers every fiber arising from rank <= 4 catalog groups with connected
    linear factor."""
    sub_cartan = [[datum.cartan[i][j] for j in positions] for i in positions]
    n = len(positions)
    for t in ("A", "B", "C", "D", "G"):
        try:
            cand = build_root_datum(t, n)
        except Exception:
            continue
        for perm in _permutations(n):
            ok = all(
                sub_cartan[perm[a]][perm[b]] == cand.cartan[a][b]
                for a in range(n)
                for b in range(n)
            )
            if ok:
                return cand, [positions[perm[a]] for a in range(n)]
    raise ValueError("fiber diagram is not an irreducible catalog type")


def _permutations(n):
    import itertools

    return list(itertools.permutations(range(n)))

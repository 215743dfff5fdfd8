"""L-modules over admissible parabolic posets.

An L-module assigns a graded Levi module to every stratum and a degree-1
attaching morphism to every pair of comparable strata, subject to the
quadratic sum-to-zero condition; it is the combinatorial stand-in for a
constructible complex.  This module implements validity checking, morphisms,
the four standard functors, local cohomology with supports, degree and
weight truncation, and the intersection/weighted cohomology constructors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from . import repcat as rc
from .rootcore import Par, RootDatum


class NonAdmissible(ValueError):
    pass


class UnsupportedShape(ValueError):
    pass


def is_admissible(datum: RootDatum, strata: frozenset) -> bool:
    strata = frozenset(strata)
    for p in strata:
        for r in strata:
            if p <= r:
                for q in datum.all_parabolics():
                    if p <= q <= r and q not in strata:
                        return False
    return True


def check_admissible(datum: RootDatum, strata) -> frozenset:
    strata = frozenset(strata)
    if not is_admissible(datum, strata):
        raise NonAdmissible(f"{sorted(map(sorted, strata))} is not interval-closed")
    return strata


def interval(strata: frozenset, p: Par, r: Par):
    return [q for q in sorted(strata, key=lambda s: (len(s), sorted(s))) if p <= q <= r]


def up_set(strata: frozenset, p: Par):
    return [q for q in sorted(strata, key=lambda s: (len(s), sorted(s))) if p <= q]


# ---------------------------------------------------------------------------
# Tagged direct sums of graded modules.


class SumModule:
    """An ordered direct sum of graded modules with slot bookkeeping."""

    def __init__(self, parts: list):
        self.parts = list(parts)  # [(tag, GradedModule)]
        flat: dict = {}
        self.offsets: dict = {}  # (deg, irr) -> {tag: (start, width)}
        for tag, gm in self.parts:
            for (deg, v), m in gm.entries.items():
                slot = (deg, v)
                start = flat.get(slot, 0)
                self.offsets.setdefault(slot, {})[tag] = (start, m)
                flat[slot] = start + m
        self.flat = rc.GradedModule(flat)

    def part(self, tag) -> rc.GradedModule:
        for t, gm in self.parts:
            if t == tag:
                return gm
        raise KeyError(tag)

    def inject(self, tag) -> rc.IsoMorphism:
        gm = self.part(tag)
        blocks = {}
        for (deg, v), m in gm.entries.items():
            start, width = self.offsets[(deg, v)][tag]
            total = self.flat.mult(deg, v)
            mat = la.zeros(total, width)
            for j in range(width):
                mat[start + j][j] = Fraction(1)
            blocks[(deg, v)] = mat
        return rc.IsoMorphism(gm, self.flat, 0, blocks)

    def project(self, tag) -> rc.IsoMorphism:
        gm = self.part(tag)
        blocks = {}
        for (deg, v), m in gm.entries.items():
            start, width = self.offsets[(deg, v)][tag]
            total = self.flat.mult(deg, v)
            mat = la.zeros(width, total)
            for j in range(width):
                mat[j][start + j] = Fraction(1)
            blocks[(deg, v)] = mat
        return rc.IsoMorphism(self.flat, gm, 0, blocks)

    def assemble(self, component_maps: dict, target: "SumModule", shift: int) -> rc.IsoMorphism:
        """Place component blocks f: part(st) -> target.part(rt) directly."""
        blocks: dict = {}
        for (rt, st), f in component_maps.items():
            for (deg, v), mat in f.blocks.items():
                if not mat or not mat[0]:
                    continue
                src_off = self.offsets.get((deg, v), {}).get(st)
                tgt_off = target.offsets.get((deg + shift, v), {}).get(rt)
                if src_off is None or tgt_off is None:
                    if la.is_zero(mat):
                        continue
                    raise AssertionError("component block outside the sum layout")
                c0, cw = src_off
                r0, rw = tgt_off
                rows = target.flat.mult(deg + shift, v)
                cols = self.flat.mult(deg, v)
                big = blocks.setdefault((deg, v), la.zeros(rows, cols))
                for i in range(rw):
                    for j in range(cw):
                        x = mat[i][j]
                        if x:
                            big[r0 + i][c0 + j] += x
        blocks = {k: b for k, b in blocks.items() if not la.is_zero(b)}
        return rc.IsoMorphism(self.flat, target.flat, shift, blocks)


def kostant_sum(datum: RootDatum, p: Par, q: Par, s: SumModule) -> SumModule:
    return SumModule([(tag, rc.kostant_functor(datum, p, q, gm)) for tag, gm in s.parts])


# ---------------------------------------------------------------------------
# The L-module structure.


class LModule:
    def __init__(self, datum: RootDatum, strata, e: dict, f: dict):
        self.datum = datum
        self.strata = check_admissible(datum, strata)
        self.e = {p: e.get(p, rc.GradedModule()) for p in self.strata}
        self.f = {}
        for (p, q), mor in f.items():
            if p not in self.strata or q not in self.strata or not p <= q:
                raise ValueError("attaching map outside the poset")
            self.f[(p, q)] = mor

        self._supports_cache: dict = {}

    def stalk(self, p: Par) -> rc.GradedModule:
        return self.e[p]

    def attach(self, p: Par, q: Par) -> rc.IsoMorphism:
        got = self.f.get((p, q))
        if got is not None:
            return got
        src = rc.kostant_functor(self.datum, p, q, self.e[q])
        return rc.zero_morphism(src, self.e[p], 1)

    def pairs(self):
        out = []
        for p in self.strata:
            for q in self.strata:
                if p <= q:
                    out.append((p, q))
        return sorted(out, key=lambda pq: (sorted(pq[0]), sorted(pq[1])))

    def data_eq(self, other: "LModule") -> bool:
        if self.strata != other.strata:
            return False
        if any(self.e[p] != other.e[p] for p in self.strata):
            return False
        return all(self.attach(p, q) == other.attach(p, q) for p, q in self.pairs())


def single_stratum(datum: RootDatum, strata, p: Par, c: rc.IsoComplex) -> LModule:
    """i_{P*} of a complex: one nonzero stalk, extended by zero."""
    return LModule(datum, strata, {p: c.module}, {(p, p): c.diff})


def lmodule_zero(datum: RootDatum, strata) -> LModule:
    return LModule(datum, strata, {}, {})


def validate(m: LModule):
    """None if the sum-to-zero condition holds, else (P, R, slot) of the first failure."""
    datum = m.datum
    for p, r in m.pairs():
        total = None
        for q in interval(m.strata, p, r):
            term = rc.compose(m.attach(p, q), rc.kostant_on_morphism(datum, p, q, m.attach(q, r)))
            total = term if total is None else rc.morphism_add(total, term)
        if total is not None and not total.is_zero():
            bad = next(k for k, b in total.blocks.items() if not la.is_zero(b))
            return (p, r, bad)
    return None


# ---------------------------------------------------------------------------
# L-morphisms.


@dataclass
class LMorphism:
    source: LModule
    target: LModule
    phi: dict  # (P, Q) -> IsoMorphism kostant(P<=Q, E_Q) -> E'_P, shift 0

    def component(self, p: Par, q: Par) -> rc.IsoMorphism:
        got = self.phi.get((p, q))
        if got is not None:
            return got
        src = rc.kostant_functor(self.source.datum, p, q, self.source.e[q])
        return rc.zero_morphism(src, self.target.e[p], 0)


def is_lmorphism(phi: LMorphism) -> bool:
    m, m2 = phi.source, phi.target
    datum = m.datum
    for p, r in m.pairs():
        lhs = None
        rhs = None
        for q in interval(m.strata, p, r):
            t1 = rc.compose(phi.component(p, q), rc.kostant_on_morphism(datum, p, q, m.attach(q, r)))
            t2 = rc.compose(m2.attach(p, q), rc.kostant_on_morphism(datum, p, q, phi.component(q, r)))
            lhs = t1 if lhs is None else rc.morphism_add(lhs, t1)
            rhs = t2 if rhs is None else rc.morphism_add(rhs, t2)
        if lhs is None and rhs is None:
            continue
        if not rc.morphism_add(lhs, rhs, sign=-1).is_zero():
            return False
    return True


def identity_lmorphism(m: LModule) -> LMorphism:
    phi = {(p, p): rc.identity_morphism(m.e[p]) for p in m.strata}
    return LMorphism(m, m, phi)


def compose_lmorphisms(phi2: LMorphism, phi1: LMorphism) -> LMorphism:
    """(phi2 o phi1)_{PR} = sum_Q phi2_{PQ} o H(n_P^Q; phi1_{QR})."""
    m = phi1.source
    datum = m.datum
    out = {}
    for p, r in m.pairs():
        total = None
        for q in interval(m.strata, p, r):
            term = rc.compose(
                phi2.component(p, q),
                rc.kostant_on_morphism(datum, p, q, phi1.component(q, r)),
            )
            total = term if total is None else rc.morphism_add(total, term)
        if total is not None and not total.is_zero():
            out[(p, r)] = total
    return LMorphism(m, phi2.target, out)


def lmorphism_zero(m: LModule, m2: LModule) -> LMorphism:
    return LMorphism(m, m2, {})


# ---------------------------------------------------------------------------
# Local cohomology with supports.


def supports_complex(m: LModule, p: Par, tags=None) -> tuple[rc.IsoComplex, SumModule]:
    """The complex (sum over R in tags of H(n_P^R; E_R), sum H(n;f)).

    tags defaults to all strata >= P, giving the full local cohomology
    complex at P; [P,Q] gives the complex supported on the closed stratum of
    Q; a difference of intervals gives the link-type quotients.
    """
    datum = m.datum
    if tags is None:
        tags = up_set(m.strata, p)
    tags = sorted(tags, key=lambda s: (len(s), sorted(s)))
    key = (p, tuple(tags))
    if key in m._supports_cache:
        return m._supports_cache[key]
    s = SumModule([(r, rc.kostant_functor(datum, p, r, m.e[r])) for r in tags])
    comp = {}
    for r in tags:
        for t in tags:
            if r <= t:
                mor = rc.kostant_on_morphism(datum, p, r, m.attach(r, t))
                if not mor.is_zero():
                    comp[(r, t)] = mor
    diff = s.assemble(comp, s, 1)
    out = (rc.IsoComplex(s.flat, diff), s)
    m._supports_cache[key] = out
    return out


def stalk_complex(m: LModule, p: Par) -> rc.IsoComplex:
    """i_P^* as a complex over the Levi of P."""
    return supports_complex(m, p)[0]


def costalk_complex(m: LModule, p: Par) -> rc.IsoComplex:
    """i_P^! = (E_P, f_PP)."""
    return supports_complex(m, p, tags=[p])[0]


def local_cohomology_with_supports(m: LModule, p: Par, q: Par) -> rc.IsoComplex:
    if not (p in m.strata and q in m.strata and p <= q):
        raise ValueError("need P <= Q inside the poset")
    tags = interval(m.strata, p, q)
    if any(t not in m.strata for t in tags):
        raise NonAdmissible("interval not contained in the poset")
    return supports_complex(m, p, tags)[0]


def supports_inclusion(m: LModule, p: Par, q_small: Par, q_big: Par):
    """The chain inclusion of supports complexes for Q_small <= Q_big."""
    c1, s1 = supports_complex(m, p, interval(m.strata, p, q_small))
    c2, s2 = supports_complex(m, p, interval(m.strata, p, q_big))
    comp = {}
    for r, gm in s1.parts:
        comp[(r, r)] = rc.identity_morphism(gm)
    incl = s1.assemble(comp, s2, 0)
    return c1, c2, incl


# ---------------------------------------------------------------------------
# Standard functors.


def restrict(m: LModule, strata) -> LModule:
    """k^! (and k^* for open subspaces): restriction of the data."""
    strata = check_admissible(m.datum, strata)
    if not strata <= m.strata:
        raise NonAdmissible("restriction target is not a subfamily")
    e = {p: m.e[p] for p in strata}
    f = {
        (p, q): mor
        for (p, q), mor in m.f.items()
        if p in strata and q in strata
    }
    return LModule(m.datum, strata, e, f)


def extend_by_zero(m: LModule, strata) -> LModule:
    """k_* (and k_! for closed subspaces): extension of the data by zero."""
    strata = check_admissible(m.datum, strata)
    if not m.strata <= strata:
        raise NonAdmissible("extension target must contain the source")
    return LModule(m.datum, strata, dict(m.e), dict(m.f))


def _is_open_in(strata_sub, strata_all) -> bool:
    return all(q in strata_sub for p in strata_sub for q in strata_all if p <= q)


def _is_closed_in(strata_sub, strata_all) -> bool:
    return all(q in strata_sub for p in strata_sub for q in strata_all if q <= p)


def upper_star(m: LModule, strata) -> LModule:
    """k^* onto an admissible subspace that is open or has a unique maximal face."""
    datum = m.datum
    strata = check_admissible(datum, strata)
    if not strata <= m.strata:
        raise NonAdmissible("pullback target is not a subfamily")
    if _is_open_in(strata, m.strata):
        return restrict(m, strata)
    maxima = [t for t in strata if not any(t < s for s in strata)]
    if len(maxima) != 1:
        raise UnsupportedShape("k^* needs an open subspace or a unique maximal face")
    t_max = maxima[0]
    if any(not p <= t_max for p in strata):
        raise UnsupportedShape("k^* needs an open subspace or a unique maximal face")

    def part_tags(p):
        opp = datum.complement_par(p, t_max)
        return [r for r in up_set(m.strata, p) if r <= opp]

    sums = {p: SumModule([(r, rc.kostant_functor(datum, p, r, m.e[r])) for r in part_tags(p)]) for p in strata}
    e = {p: sums[p].flat for p in strata}
    f = {}
    for p in strata:
        for q in strata:
            if not p <= q:
                continue
            source_sum = kostant_sum(datum, p, q, sums[q])
            comp = {}
            for r in part_tags(p):
                for s in part_tags(q):
                    if r <= s and (r & t_max) == p and (s & t_max) == q:
                        mor = rc.kostant_on_morphism(datum, p, r, m.attach(r, s))
                        if not mor.is_zero():
                            comp[(r, s)] = mor
            mor = source_sum.assemble(comp, sums[p], 1)
            if not mor.is_zero():
                f[(p, q)] = mor
    return LModule(datum, strata, e, f)


def lower_shriek(m: LModule, strata) -> LModule:
    """k_! into a superspace; only defined when the source family is closed."""
    strata = check_admissible(m.datum, strata)
    if not _is_closed_in(m.strata, strata):
        raise UnsupportedShape("k_! is only defined for closed subspaces")
    return extend_by_zero(m, strata)


def functor_k(m: LModule, kind: str, strata) -> LModule:
    if kind == "shriek_restrict":
        return restrict(m, strata)
    if kind == "star_extend":
        return extend_by_zero(m, strata)
    if kind == "upper_star":
        return upper_star(m, strata)
    if kind == "lower_shriek":
        return lower_shriek(m, strata)
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# Shifts and mapping cones of L-modules.


def lmodule_shift(m: LModule, k: int) -> LModule:
    e = {p: gm.shift(k) for p, gm in m.e.items()}
    f = {}
    for (p, q), mor in m.f.items():
        src = rc.kostant_functor(m.datum, p, q, e[q])
        blocks = {(d - k, v): b for (d, v), b in mor.blocks.items()}
        mor2 = rc.IsoMorphism(src, e[p], 1, blocks)
        f[(p, q)] = rc.morphism_scale(mor2, -1) if k % 2 else mor2
    return LModule(m.datum, m.strata, e, f)


def _morphism_shift(mor: rc.IsoMorphism, k: int) -> rc.IsoMorphism:
    src = mor.source.shift(k)
    tgt = mor.target.shift(k)
    blocks = {(d - k, v): b for (d, v), b in mor.blocks.items()}
    return rc.IsoMorphism(src, tgt, mor.shift, blocks)


def lmodule_cone(phi: LMorphism) -> tuple[LModule, dict]:
    """Mapping cone (E[1] + E', ((-f, 0), (phi, f'))); also returns the sums."""
    m, m2 = phi.source, phi.target
    datum = m.datum
    sums = {
        p: SumModule([("src", m.e[p].shift(1)), ("tgt", m2.e[p])]) for p in m.strata
    }
    e = {p: sums[p].flat for p in m.strata}
    f = {}
    for p in m.strata:
        for q in m.strata:
            if not p <= q:
                continue
            source_sum = kostant_sum(datum, p, q, sums[q])
            comp = {}
            fm = m.attach(p, q)
            shifted = _morphism_shift(fm, 1)
            neg = rc.morphism_scale(shifted, -1)
            if not neg.is_zero():
                comp[("src", "src")] = neg
            ph = phi.component(p, q)
            ph_shift = rc.IsoMorphism(
                rc.kostant_functor(datum, p, q, m.e[q]).shift(1),
                m2.e[p],
                1,
                {(d - 1, v): b for (d, v), b in ph.blocks.items()},
            )
            if not ph_shift.is_zero():
                comp[("tgt", "src")] = ph_shift
            f2 = m2.attach(p, q)
            if not f2.is_zero():
                comp[("tgt", "tgt")] = f2
            mor = source_sum.assemble(comp, sums[p], 1)
            if not mor.is_zero():
                f[(p, q)] = mor
    return LModule(datum, m.strata, e, f), sums


# ---------------------------------------------------------------------------
# Truncation functors.


def middle_perversity(kind: str, k: int) -> int:
    if kind == "m":
        return (k - 2) // 2
    if kind == "n":
        return (k - 1) // 2
    raise ValueError(kind)


def tau_le_stratum(m: LModule, q: Par, n) -> LModule:
    """tau_Q^{<= n}: cone of M -> i_{Q*} tau^{>n} i_Q^* M, shifted by [-1]."""
    datum = m.datum
    c_q, s_q = supports_complex(m, q)
    _, quot, _, proj = rc.truncate_degree(c_q, n)
    target = single_stratum(datum, m.strata, q, quot)
    phi = {}
    for r in up_set(m.strata, q):
        comp = rc.compose(proj, s_q.inject(r))
        if not comp.is_zero():
            phi[(q, r)] = comp
    cone, _ = lmodule_cone(LMorphism(m, target, phi))
    return lmodule_shift(cone, -1)


def tau_geq_stratum(m: LModule, q: Par, eta: rc.WeightProfile) -> LModule:
    """tau_Q^{>= eta}: cone of M -> i_{Q*} tau^{not >= eta} i_Q^* M, shifted."""
    datum = m.datum
    c_q, s_q = supports_complex(m, q)
    drop, _ = rc.split_complex_by_weight(datum, c_q, eta, keep_geq=False)
    proj_blocks = {k2: la.identity(mult) for k2, mult in drop.module.entries.items()}
    proj = rc.IsoMorphism(c_q.module, drop.module, 0, proj_blocks)
    target = single_stratum(datum, m.strata, q, drop)
    phi = {}
    for r in up_set(m.strata, q):
        comp = rc.compose(proj, s_q.inject(r))
        if not comp.is_zero():
            phi[(q, r)] = comp
    cone, _ = lmodule_cone(LMorphism(m, target, phi))
    return lmodule_shift(cone, -1)


def _strata_descending(strata):
    return sorted(strata, key=lambda s: (-len(s), sorted(s)))


def truncate_module_degree(m: LModule, n, order=None) -> LModule:
    out = m
    for q in order if order is not None else _strata_descending(m.strata):
        out = tau_le_stratum(out, q, n)
    return out


def truncate_module_weight(m: LModule, eta: rc.WeightProfile, order=None) -> LModule:
    out = m
    for q in order if order is not None else _strata_descending(m.strata):
        out = tau_geq_stratum(out, q, eta)
    return out


# ---------------------------------------------------------------------------
# The intersection and weighted cohomology modules.


def push_module(datum: RootDatum, hw, strata=None) -> LModule:
    """i_{G*} E for an irreducible E with highest weight hw."""
    g = datum.full_par()
    if strata is None:
        strata = frozenset([g])
    v = rc.make_irr(datum, g, hw)
    gm = rc.GradedModule({(0, v): 1})
    return LModule(datum, strata, {g: gm}, {})


def build_ic(datum: RootDatum, hw, perversity: str) -> LModule:
    """Deligne-style construction over the full poset, strata in decreasing order."""
    g = datum.full_par()
    m = push_module(datum, hw)
    added = {g}
    rest = [p for p in datum.all_parabolics() if p != g]
    for p in sorted(rest, key=lambda s: (-len(s), sorted(s))):
        added.add(p)
        m = extend_by_zero(m, frozenset(added))
        codim = datum.codim_stratum(p)
        m = tau_le_stratum(m, p, middle_perversity(perversity, codim))
    return m


def build_wc(datum: RootDatum, hw, profile: str | rc.WeightProfile) -> LModule:
    """Weight truncation of the full pushforward along a middle profile."""
    if isinstance(profile, str):
        eta = (
            rc.upper_middle_profile(datum)
            if profile == "mu"
            else rc.lower_middle_profile(datum)
        )
    else:
        eta = profile
    strata = frozenset(datum.all_parabolics())
    m = push_module(datum, hw, strata)
    return truncate_module_weight(m, eta)


# ---------------------------------------------------------------------------
# Hom spaces.


class _Lin:
    """A matrix whose entries are affine expressions sum c_u x_u."""

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = entries if entries is not None else [
            [dict() for _ in range(cols)] for _ in range(rows)
        ]

    @staticmethod
    def unknown_block(rows, cols, tag):
        out = _Lin(rows, cols)
        for i in range(rows):
            for j in range(cols):
                out.entries[i][j] = {(tag, i, j): Fraction(1)}
        return out

    def left_mul(self, mat):
        out = _Lin(len(mat), self.cols)
        for i in range(len(mat)):
            for k in range(self.rows):
                c = mat[i][k]
                if not c:
                    continue
                for j in range(self.cols):
                    for u, val in self.entries[k][j].items():
                        d = out.entries[i][j]
                        d[u] = d.get(u, 0) + c * val
        return out

    def right_mul(self, mat):
        cols2 = len(mat[0]) if mat else 0
        out = _Lin(self.rows, cols2)
        for i in range(self.rows):
            for j in range(cols2):
                d = out.entries[i][j]
                for k in range(self.cols):
                    c = mat[k][j]
                    if not c:
                        continue
                    for u, val in self.entries[i][k].items():
                        d[u] = d.get(u, 0) + c * val
        return out

    def add(self, other, sign=1):
        out = _Lin(self.rows, self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                d = dict(self.entries[i][j])
                for u, val in other.entries[i][j].items():
                    d[u] = d.get(u, 0) + sign * val
                out.entries[i][j] = {u: v for u, v in d.items() if v}
        return out


def hom_dimension(m: LModule, m2: LModule) -> int:
    """dim Hom(M, M') as the solution space of the compatibility system.

    The unknowns are the entries of the shift-0 component blocks
    phi_{PQ}: H(n_P^Q; E_Q) -> E'_P; the equations come from summing the two
    sides of the morphism condition over every pair P <= R, slot by slot.
    """
    datum = m.datum
    shapes: dict = {}
    unknowns: dict = {}
    for p, q in m.pairs():
        src = rc.kostant_functor(datum, p, q, m.e[q])
        for (d, v), cols in src.entries.items():
            rows = m2.e[p].mult(d, v)
            if rows and cols:
                tag = (p, q, d, v)
                shapes[tag] = (rows, cols)
                for i in range(rows):
                    for j in range(cols):
                        unknowns.setdefault((tag, i, j), len(unknowns))

    def phi_block(p, q, d, v) -> _Lin:
        src_cols = rc.kostant_functor(datum, p, q, m.e[q]).mult(d, v)
        rows = m2.e[p].mult(d, v)
        tag = (p, q, d, v)
        if tag in shapes:
            return _Lin.unknown_block(rows, src_cols, tag)
        return _Lin(rows, src_cols)

    def h_phi_block(p, q, r, d, v) -> _Lin | None:
        # H(n_P^Q; phi_{QR}) at slot (d, v): copy of phi_{QR}'s block at the
        # unique preimage slot under the Kostant relabeling
        rho = datum.rho()
        src_qr = rc.kostant_functor(datum, q, r, m.e[r])
        for w in datum.coset_reps(p, q):
            d0 = d - w.length
            for (dd, v0) in src_qr.entries:
                if dd != d0:
                    continue
                hw = datum.weight_add(
                    datum.weyl_apply(w, datum.weight_add(v0.hw, rho)), rho, sign=-1
                )
                if hw == v.hw:
                    return phi_block(q, r, d0, v0)
        return None

    equations: list = []
    for p, r in m.pairs():
        src_pr = rc.kostant_functor(datum, p, r, m.e[r])
        for (d, v), cols in src_pr.entries.items():
            rows = m2.e[p].mult(d + 1, v)
            if not rows or not cols:
                continue
            acc = _Lin(rows, cols)
            for q in interval(m.strata, p, r):
                hf = rc.kostant_on_morphism(datum, p, q, m.attach(q, r))
                b1 = hf.block(d, v)
                if b1 and b1[0] and any(any(row) for row in b1):
                    acc = acc.add(phi_block(p, q, d + 1, v).right_mul(b1))
                hphi = h_phi_block(p, q, r, d, v)
                if hphi is not None and hphi.rows and hphi.cols:
                    b2 = m2.attach(p, q).block(d, v)
                    if b2 and b2[0] and any(any(row) for row in b2):
                        acc = acc.add(hphi.left_mul(b2), sign=-1)
            for i in range(acc.rows):
                for j in range(acc.cols):
                    if acc.entries[i][j]:
                        equations.append(acc.entries[i][j])

    if not unknowns:
        return 0
    rows = []
    for eq in equations:
        row = [Fraction(0)] * len(unknowns)
        for u, val in eq.items():
            row[unknowns[u]] = Fraction(val)
        rows.append(row)
    rank = la.rank(rows) if rows else 0
    return len(unknowns) - rank


# ---------------------------------------------------------------------------
# Pullback to a fiber of the Satake projection.


def _res_irr(fiber: RootDatum, positions: list, v: rc.Irr) -> rc.Irr:
    coords = tuple(Fraction(v.hw[i]) for i in positions)
    par_l = frozenset(k for k, i in enumerate(positions) if i in v.par)
    return rc.make_irr(fiber, par_l, coords)


def _res_module(fiber: RootDatum, positions: list, gm: rc.GradedModule):
    """Restrict a graded module; returns (fiber module, offsets).

    offsets[(deg, fiber irr)] is an ordered list of (ambient irr, start,
    width) in the canonical ambient order.
    """
    grouped: dict = {}
    for (d, v), mult in sorted(gm.entries.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key())):
        vf = _res_irr(fiber, positions, v)
        grouped.setdefault((d, vf), []).append((v, mult))
    entries = {}
    offsets = {}
    for slot, parts in grouped.items():
        start = 0
        offs = []
        for v, mult in parts:
            offs.append((v, start, mult))
            start += mult
        entries[slot] = start
        offsets[slot] = offs
    return rc.GradedModule(entries), offsets


def _ambient_weyl(datum: RootDatum, positions: list, word) -> "object":
    w = datum.identity_elem()
    for k in word:
        w = datum.multiply(w, datum.weyl_by_mat(datum.simple_reflection_mat(positions[k])))
    return w


def fiber_pullback(
    m: LModule,
    kappa_part: frozenset,
    r: Par,
    fiber: RootDatum,
    positions: list,
    sense: str,
    dim_shift: int = 0,
) -> LModule:
    """Restrict the part of the module over {P : P-dagger = R} to the fiber.

    kappa_part is the sigma-connected part of Delta^R (the hermitian block),
    positions maps the fiber's simple roots to ambient indices; sense "!"
    shifts degrees up by dim_shift (the dimension of the hermitian boundary
    symmetric space).
    """
    datum = m.datum
    fiber_strata = frozenset(
        frozenset(s) for s in _subsets(len(positions))
    )
    amb_of = {
        s: frozenset(kappa_part | {positions[k] for k in s}) for s in fiber_strata
    }
    family = frozenset(amb_of.values())
    for p in family:
        if p not in m.strata:
            raise NonAdmissible("module does not cover the fiber strata")
    # the family {P : P-dagger = R} is locally closed with unique maximal
    # face R: the star pullback onto it is the attaching functor, the shriek
    # pullback plain restriction
    m = upper_star(m, family) if sense == "*" else restrict(m, family)
    e_data = {}
    offsets = {}
    for s, p in amb_of.items():
        e_data[s], offsets[s] = _res_module(fiber, positions, m.e[p])
    f_data = {}
    rho = datum.rho()
    for s in fiber_strata:
        for t in fiber_strata:
            if not s <= t:
                continue
            p_amb, q_amb = amb_of[s], amb_of[t]
            f_amb = m.attach(p_amb, q_amb)
            src_fib = rc.kostant_functor(fiber, s, t, e_data[t])
            blocks: dict = {}
            for wf in fiber.coset_reps(s, t):
                w_amb = _ambient_weyl(datum, positions, wf.word)
                for (d0, uf), parts in offsets[t].items():
                    sw = sum(width for (_, _, width) in parts)
                    if not sw:
                        continue
                    hw_f = fiber.weight_add(
                        fiber.weyl_apply(wf, fiber.weight_add(uf.hw, fiber.rho())),
                        fiber.rho(),
                        sign=-1,
                    )
                    vf = rc.make_irr(fiber, s, hw_f)
                    src_slot = (d0 + wf.length, vf)
                    tgt_slot = (d0 + wf.length + 1, vf)
                    rows = e_data[s].mult(*tgt_slot)
                    cols = src_fib.mult(*src_slot)
                    if not rows or not cols:
                        continue
                    mat = blocks.setdefault(src_slot, la.zeros(rows, cols))
                    tgt_parts = offsets[s].get(tgt_slot, [])
                    for (u_amb, c0, width) in parts:
                        v_amb_hw = datum.weight_add(
                            datum.weyl_apply(w_amb, datum.weight_add(u_amb.hw, rho)),
                            rho,
                            sign=-1,
                        )
                        v_amb = rc.Irr(p_amb, v_amb_hw)
                        blk = f_amb.block(d0 + w_amb.length, v_amb)
                        if not blk or not blk[0] or la.is_zero(blk):
                            continue
                        r0 = None
                        for (vt_amb, start, w2) in tgt_parts:
                            if vt_amb == v_amb:
                                r0 = start
                                break
                        if r0 is None:
                            raise AssertionError("restricted target slot missing")
                        for i2 in range(len(blk)):
                            for j2 in range(len(blk[0])):
                                if blk[i2][j2]:
                                    mat[r0 + i2][c0 + j2] += blk[i2][j2]
            blocks = {k: b for k, b in blocks.items() if not la.is_zero(b)}
            if blocks:
                f_data[(s, t)] = rc.IsoMorphism(src_fib, e_data[s], 1, blocks)
    out = LModule(fiber, fiber_strata, e_data, f_data)
    if sense == "!":
        out = lmodule_shift(out, -dim_shift)
    return out


def _subsets(n):
    import itertools

    return [
        tuple(s) for k in range(n + 1) for s in itertools.combinations(range(n), k)
    ]


# ---------------------------------------------------------------------------
# Link-type quotients and their E1 decompositions.


def quotient_supports_complex(m: LModule, p: Par, q: Par, q_prime: Par) -> rc.IsoComplex:
    """i_P^* (pushforward of the open part) of the supports comparison: the
    quotient of the Q'-supports complex by the Q-supports subcomplex."""
    tags = [r for r in interval(m.strata, p, q_prime) if not r <= q]
    return supports_complex(m, p, tags)[0]


def fary_e1_module(m: LModule, p: Par, q: Par, q_prime: Par) -> rc.GradedModule:
    """The first page of the filtration by intermediate parabolics.

    The graded pieces are the link-functor images of the supported local
    cohomology at each intermediate stratum; they carry their honest degrees
    (the filtration-index shift is pure bookkeeping)."""
    datum = m.datum
    p_prime = datum.complement_par(p, q) & q_prime
    out = rc.GradedModule()
    for p_t in interval(m.strata, p, p_prime):
        if p_t == p:
            continue
        q_t = frozenset(p_t | q)
        inner = rc.cohomology(supports_complex(m, p_t, interval(m.strata, p_t, q_t))[0])
        out = out.direct_sum(rc.kostant_functor(datum, p, p_t, inner))
    return out


def mv_e1_module(m: LModule, p: Par, q: Par, q_prime: Par) -> rc.GradedModule:
    """The Mayer-Vietoris first page, with the column degree folded in."""
    datum = m.datum
    p_prime = datum.complement_par(p, q) & q_prime
    out = rc.GradedModule()
    for p_t in interval(m.strata, p, p_prime):
        if p_t == p:
            continue
        inner = rc.cohomology(supports_complex(m, p_t, interval(m.strata, p_t, q_prime))[0])
        relabeled = rc.kostant_functor(datum, p, p_t, inner)
        shift = len(p_t) - len(p) - 1
        out = out.direct_sum(relabeled.shift(-shift))
    return out


def fary_graded_decomposition(m: LModule, p: Par, q: Par, q_prime: Par) -> rc.GradedModule:
    """The underlying graded module regrouped by intermediate parabolics
    (no shift): must equal the quotient complex's module on the nose."""
    datum = m.datum
    p_prime = datum.complement_par(p, q) & q_prime
    out = rc.GradedModule()
    for p_t in interval(m.strata, p, p_prime):
        if p_t == p:
            continue
        q_t = frozenset(p_t | q)
        mod = supports_complex(m, p_t, interval(m.strata, p_t, q_t))[0].module
        out = out.direct_sum(rc.kostant_functor(datum, p, p_t, mod))
    return out

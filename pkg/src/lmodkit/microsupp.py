"""Micro-support of L-modules: supporting irreducibles, their parabolic
intervals, degree ranges, global degree bounds, and the partial orders that
control restriction functors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import lmod as lm
from . import repcat as rc
from .rootcore import Par, RootDatum


class NotInSupport(ValueError):
    pass


@dataclass(frozen=True)
class QInterval:
    q_v: Par
    q_v_prime: Par


def q_interval(datum: RootDatum, v: rc.Irr, max_stratum: Par | None = None) -> QInterval:
    """The parabolic window cut out by the signs of <xi_V + rho, alpha_vee>."""
    if max_stratum is None:
        max_stratum = datum.full_par()
    p = v.par
    mu = datum.weight_add(v.hw, datum.rho())
    lower = set(p)
    upper = set(p)
    for i in sorted(max_stratum - p):
        val = datum.pairing_aP(mu, i, p)
        if val < 0:
            lower.add(i)
        if val <= 0:
            upper.add(i)
    return QInterval(frozenset(lower), frozenset(upper))


def _max_stratum(m: lm.LModule) -> Par:
    maxima = [s for s in m.strata if not any(s < t for t in m.strata)]
    if len(maxima) != 1:
        raise lm.UnsupportedShape("micro-support needs a unique maximal stratum")
    return maxima[0]


@dataclass
class SupportEntry:
    v: rc.Irr
    interval: QInterval
    weak: bool
    full: bool
    essential: bool
    c: int | None
    d: int | None
    c_ess: int | None = None
    d_ess: int | None = None


@dataclass
class MicroSupportReport:
    entries: list
    kind: str
    global_c: int | None
    global_d: int | None
    global_supported: bool

    def members(self, kind: str | None = None):
        kind = kind or self.kind
        key = {"weak": "weak", "full": "full", "essential": "essential"}[kind]
        return [e for e in self.entries if getattr(e, key)]


class _LocalData:
    """Cached supports cohomology for one L-module."""

    def __init__(self, m: lm.LModule):
        self.m = m
        self.datum = m.datum
        self.max_stratum = _max_stratum(m)
        self._coh: dict = {}

    def coh(self, p: Par, q: Par) -> rc.GradedModule:
        key = (p, q)
        if key not in self._coh:
            self._coh[key] = rc.cohomology(lm.local_cohomology_with_supports(self.m, p, q))
        return self._coh[key]

    def candidates(self, p: Par):
        seen = set()
        for q in lm.up_set(self.m.strata, p):
            for (_, v) in self.coh(p, q).entries:
                seen.add(v)
        return sorted(seen, key=lambda v: v.sort_key())

    def degrees_of(self, p: Par, q: Par, v: rc.Irr):
        return sorted(d for (d, vv) in self.coh(p, q).entries if vv == v)


def micro_support(m: lm.LModule, kind: str = "full") -> MicroSupportReport:
    """Sweep all strata and supporting windows; kind selects the filter."""
    data = _LocalData(m)
    datum = m.datum
    entries = []
    for p in sorted(m.strata, key=lambda s: (len(s), sorted(s))):
        for v in data.candidates(p):
            qi = q_interval(datum, v, data.max_stratum)
            window = [
                q
                for q in lm.up_set(m.strata, p)
                if qi.q_v <= q <= qi.q_v_prime
            ]
            degs: list = []
            for q in window:
                degs += data.degrees_of(p, q, v)
            weak = bool(degs)
            if not weak:
                continue
            full = weak and datum.is_conj_self_contragredient(v.hw, p)
            essential = False
            c_ess = d_ess = None
            if full:
                ess_degs = _essential_degrees(m, p, v, qi)
                essential = bool(ess_degs)
                if essential:
                    c_ess, d_ess = min(ess_degs), max(ess_degs)
            entries.append(
                SupportEntry(
                    v=v,
                    interval=qi,
                    weak=True,
                    full=full,
                    essential=essential,
                    c=min(degs),
                    d=max(degs),
                    c_ess=c_ess,
                    d_ess=d_ess,
                )
            )
    report = MicroSupportReport(entries, kind, None, None, False)
    _fill_global_bounds(datum, report)
    return report


def _essential_degrees(m: lm.LModule, p: Par, v: rc.Irr, qi: QInterval):
    """Degrees where H(i_P^* hat-i_{Q_V}^!) -> H(i_P^* hat-i_{Q'_V}^!) hits V."""
    c1, c2, incl = lm.supports_inclusion(m, p, qi.q_v, qi.q_v_prime)
    out = []
    degs = sorted(
        {d for (d, vv) in c1.module.entries if vv == v}
        | {d for (d, vv) in c2.module.entries if vv == v}
    )
    for d in degs:
        if rc.induced_map_rank(incl, c1, c2, d, v):
            out.append(d)
    return out


def _fill_global_bounds(datum: RootDatum, report: MicroSupportReport):
    lo = None
    hi = None
    supported = True
    use = report.members("full")
    for e in use:
        dim_d = datum.dim_symmetric_space(e.v.par)
        dim_dv = datum.dim_DPV(e.v.hw, e.v.par)
        if dim_dv is None:
            supported = False
            break
        clo = Fraction(dim_d - dim_dv, 2) + e.c
        chi = Fraction(dim_d + dim_dv, 2) + e.d
        if clo.denominator != 1 or chi.denominator != 1:
            raise AssertionError("half-integral global bound")
        lo = int(clo) if lo is None else min(lo, int(clo))
        hi = int(chi) if hi is None else max(hi, int(chi))
    report.global_supported = supported and bool(use)
    if supported:
        report.global_c = lo
        report.global_d = hi


def global_bounds(m: lm.LModule):
    """(c(M), d(M)), or None markers when the real-form data is unsupported."""
    rep = micro_support(m, "full")
    return rep.global_c, rep.global_d, rep.global_supported


def essential_global_bounds(datum: RootDatum, report: MicroSupportReport):
    """The essential-support version of the global degree bounds."""
    lo = hi = None
    for e in report.members("essential"):
        dim_d = datum.dim_symmetric_space(e.v.par)
        dim_dv = datum.dim_DPV(e.v.hw, e.v.par)
        if dim_dv is None:
            return None, None, False
        clo = Fraction(dim_d - dim_dv, 2) + e.c_ess
        chi = Fraction(dim_d + dim_dv, 2) + e.d_ess
        lo = int(clo) if lo is None else min(lo, int(clo))
        hi = int(chi) if hi is None else max(hi, int(chi))
    return lo, hi, True


def degree_range(m: lm.LModule, v: rc.Irr) -> tuple[int, int]:
    rep = micro_support(m, "weak")
    for e in rep.entries:
        if e.v == v:
            return e.c, e.d
    raise NotInSupport(f"{v} is not in the micro-support")


# ---------------------------------------------------------------------------
# The four equivalent support predicates and their degree ranges.


def predicate_degrees(m: lm.LModule, v: rc.Irr, which: int) -> list:
    """Degrees where the `which`-th support condition detects V (1..4)."""
    data = _LocalData(m)
    datum = m.datum
    p = v.par
    qi = q_interval(datum, v, data.max_stratum)
    if which == 1:
        degs = []
        for q in lm.up_set(m.strata, p):
            if qi.q_v <= q <= qi.q_v_prime:
                degs += data.degrees_of(p, q, v)
        return sorted(set(degs))
    if which == 2:
        opp = datum.complement_par(p, qi.q_v)
        degs = []
        for q_t in lm.up_set(m.strata, p):
            if not (qi.q_v <= q_t <= qi.q_v_prime):
                continue
            p_t = opp & q_t
            inner = data.coh(p_t, q_t)
            relabeled = rc.kostant_functor(datum, p, p_t, inner)
            degs += [d for (d, vv) in relabeled.entries if vv == v]
        return sorted(set(degs))
    if which == 3:
        degs = []
        for p_t in lm.up_set(m.strata, p):
            for vt in data.candidates(p_t):
                ok, w = preceq(datum, v, vt, "0")
                if not ok:
                    continue
                qit = q_interval(datum, vt, data.max_stratum)
                inner = [d for d in data.degrees_of(p_t, qit.q_v, vt)]
                degs += [d + w.length for d in inner]
        return sorted(set(degs))
    if which == 4:
        degs = []
        for p_t in lm.up_set(m.strata, p):
            for vt in data.candidates(p_t):
                ok, w = preceq(datum, v, vt, "0")
                if not ok:
                    continue
                qit = q_interval(datum, vt, data.max_stratum)
                ess = _essential_degrees(m, p_t, vt, qit)
                degs += [d + w.length for d in ess]
        return sorted(set(degs))
    raise ValueError(which)


# ---------------------------------------------------------------------------
# Partial orders on irreducibles across strata.


def preceq(datum: RootDatum, v: rc.Irr, vt: rc.Irr, flavor: str):
    """V preceq Vt in flavor '0', '+', or '-'; returns (bool, witness w)."""
    p, pt = v.par, vt.par
    if not p <= pt:
        return False, None
    witness = None
    rho = datum.rho()
    for w in datum.coset_reps(p, pt):
        hw = datum.weight_add(datum.weyl_apply(w, datum.weight_add(vt.hw, rho)), rho, sign=-1)
        if hw == v.hw:
            witness = w
            break
    if witness is None:
        return False, None
    coords = _relative_cone_coords(datum, datum.weight_add(v.hw, rho), p, pt)
    if flavor == "0":
        ok = all(c == 0 for c in coords)
    elif flavor == "+":
        ok = all(c >= 0 for c in coords)
    elif flavor == "-":
        ok = all(c <= 0 for c in coords)
    else:
        raise ValueError(flavor)
    return (ok, witness if ok else None)


def _relative_cone_coords(datum: RootDatum, mu, p: Par, pt: Par) -> list:
    """Coordinates of mu's a_P^{Pt}-component in the restricted simple basis."""
    from . import _linalg as la

    free = sorted(set(pt) - set(p))
    if not free:
        return []
    x = datum.weight_to_root_coords(mu)
    part_pt = datum.project_to_levi_root_coords(x, pt)
    part_p = datum.project_to_levi_root_coords(x, p)
    target = [a - b for a, b in zip(part_pt, part_p)]
    cols = []
    for i in free:
        a = tuple(1 if k == i else 0 for k in range(datum.rank))
        levi = datum.project_to_levi_root_coords(a, p)
        cols.append([Fraction(a[t]) - levi[t] for t in range(datum.rank)])
    sol = la.solve(la.transpose(cols), [[t] for t in target])
    if sol is None:
        raise AssertionError("restricted simple roots failed to span")
    return [row[0] for row in sol]


def restrict_support_set(datum: RootDatum, support: list, strata, sense: str) -> list:
    """hat-i^* / hat-i^! of a set of irreducibles via the cone closures."""
    flavor = "+" if sense == "*" else "-"
    out = set()
    for vt in support:
        for p in strata:
            if not p <= vt.par:
                continue
            rho = datum.rho()
            for w in datum.coset_reps(p, vt.par):
                hw = datum.weight_add(
                    datum.weyl_apply(w, datum.weight_add(vt.hw, rho)), rho, sign=-1
                )
                v = rc.Irr(p, hw)
                ok, _ = preceq(datum, v, vt, flavor)
                if ok:
                    out.add(v)
    return sorted(out, key=lambda v: v.sort_key())


def res_ell(fiber_datum: RootDatum, ell_positions: list, support: list) -> list:
    """Res_l of a support set: restrict highest weights to the fiber datum."""
    out = set()
    for v in support:
        coords = tuple(Fraction(v.hw[i]) for i in ell_positions)
        par_l = frozenset(
            j for j, i in enumerate(ell_positions) if i in v.par
        )
        out.add(rc.Irr(par_l, coords))
    return sorted(out, key=lambda v: v.sort_key())


# ---------------------------------------------------------------------------
# Basic lemma and the induction step.


@dataclass
class BasicLemmaReport:
    hypothesis_ok: bool
    rows: list = field(default_factory=list)  # (class key, pairing sign, l_alpha, dim n_alpha, dim n_alpha(mu))
    violations: list = field(default_factory=list)


def _n_alpha_fixed_dim(datum: RootDatum, p: Par, mu, class_roots) -> int:
    """dim n_alpha(mu) for the standard positive system: tau'-fixed components
    of the centralizer action on one restriction class."""
    psi = [g for g in datum.levi_positive_roots(p) if datum.pairing(mu, g) == 0]
    w0 = datum.longest_element(p)
    roots = [tuple(g) for g in class_roots]
    root_set = set(roots)
    parent = {g: g for g in roots}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in roots:
        for q in psi:
            for sgn in (1, -1):
                h = tuple(a + sgn * b for a, b in zip(g, q))
                if h in root_set:
                    ra, rb = find(g), find(h)
                    if ra != rb:
                        parent[ra] = rb
    comps: dict = {}
    for g in roots:
        comps.setdefault(find(g), set()).add(g)
    total = 0
    from .rootcore import _mat_apply

    for comp in comps.values():
        image = {_mat_apply(w0.mat, g) for g in comp}
        if image == comp:
            total += len(comp)
    return total


def basic_lemma_check(datum: RootDatum, w, p: Par, lam) -> BasicLemmaReport:
    """Check the three pairing-vs-length implications for V = H(n_P; E_lam)_w."""
    rho = datum.rho()
    hw = datum.weight_add(datum.weyl_apply(w, datum.weight_add(lam, rho)), rho, sign=-1)
    report = BasicLemmaReport(hypothesis_ok=datum.is_conj_self_contragredient(hw, p))
    if not report.hypothesis_ok:
        return report
    mu_rho = datum.weight_add(hw, rho)
    x = datum.weight_to_root_coords(mu_rho)
    for proj, roots in datum.aP_root_classes(p):
        pairing = sum(
            x[i] * proj[j] * datum.form[i][j]
            for i in range(datum.rank)
            for j in range(datum.rank)
            if x[i] and proj[j]
        )
        ell = datum.ell_alpha(w, roots, p)
        dim_a = len(roots)
        dim_mu = _n_alpha_fixed_dim(datum, p, hw, roots)
        row = (proj, pairing, ell, dim_a, dim_mu)
        report.rows.append(row)
        half = Fraction(dim_a, 2)
        if pairing <= 0 and not (ell >= half + Fraction(dim_mu, 2)):
            report.violations.append(row)
        elif pairing == 0 and not (ell == half and dim_mu == 0):
            report.violations.append(row)
        elif pairing >= 0 and not (ell <= half - Fraction(dim_mu, 2)):
            report.violations.append(row)
    return report


class NotFound(RuntimeError):
    pass


def _class_side(datum: RootDatum, proj_root_coords, p: Par, t: Par, q_join: Par):
    """Which side of Delta_T the a_T-restriction of an a_P-class lies on.

    Returns 'join' if it restricts into the a_T-roots of n_T^{Q v T},
    'opp' for the complementary side, None if the restriction is zero or
    mixed.
    """
    from . import _linalg as la

    free = sorted(set(range(datum.rank)) - set(t))
    x = list(proj_root_coords)
    levi_t = datum.project_to_levi_root_coords(x, t)
    rest = [Fraction(a) - b for a, b in zip(x, levi_t)]
    if not any(rest):
        return None
    cols = []
    for i in free:
        a = tuple(1 if k == i else 0 for k in range(datum.rank))
        levi = datum.project_to_levi_root_coords(a, t)
        cols.append([Fraction(a[k]) - levi[k] for k in range(datum.rank)])
    sol = la.solve(la.transpose(cols), [[v] for v in rest])
    coords = {i: row[0] for i, row in zip(free, sol)}
    join_side = set(q_join - t)
    supp = {i for i, c in coords.items() if c}
    if supp and supp <= join_side:
        return "join"
    if supp and supp <= (set(free) - join_side):
        return "opp"
    return None


def find_induction_T(datum: RootDatum, w, p: Par, q: Par):
    """A parabolic T >= P satisfying the splitting and length conditions."""
    classes = datum.aP_root_classes(p)
    proper_case = (p < q) and (q != datum.full_par())
    for t in sorted(datum.all_parabolics(), key=lambda s: (-len(s), sorted(s))):
        if not p <= t:
            continue
        n_dt = datum.rank - len(t)
        if not (1 <= n_dt <= 2):
            continue
        q_join = frozenset(q | t)
        side_a = len(q_join - t)
        side_b = n_dt - side_a
        if side_a > 1 or side_b > 1:
            continue
        ok = True
        for proj, roots in classes:
            side = _class_side(datum, proj, p, t, q_join)
            ell = datum.ell_alpha(w, roots, p)
            half = Fraction(len(roots), 2)
            if side == "join" and not (ell >= half):
                ok = False
                break
            if side == "opp" and not (ell <= half):
                ok = False
                break
        if not ok:
            continue
        if proper_case and n_dt == 1:
            _, wt = datum.factor(w, t)
            if 2 * wt.length == datum.dim_nilradical(t):
                continue
        return t
    return None

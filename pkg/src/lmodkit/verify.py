"""Verification suites: closed-form theorems checked against brute force.

Each suite returns a SuiteResult with a case count and a list of failures
(empty on success); the CLI and the acceptance tests are thin wrappers.
Modules built along the way are cached so overlapping sweeps share work.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import conesheaf as cs
from . import liealg as lg
from . import lmod as lm
from . import microsupp as ms
from . import repcat as rc
from . import satake as st
from .randgen import Rng, random_graded_module, random_lmodule
from .rootcore import Par, RootDatum, build_root_datum

RANK2_GROUPS = [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2)]
RANK3_GROUPS = [("A", 3), ("B", 3), ("C", 3)]
IC_SS_GROUPS = RANK2_GROUPS + RANK3_GROUPS
KOSTANT_GROUPS = [("A", 1), ("A", 2), ("C", 2)]
EULER_GROUPS = [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2), ("A", 3)]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **info):
        self.failures.append(info)

    def note(self, **info):
        self.findings.append(info)


_MODULES: dict = {}


def pmap(fn, items):
    """Map over independent sub-cases, threaded when LMODKIT_THREADS > 1.

    Every sub-case is a pure computation, so sharing the caches read-write is
    safe (entries are idempotent); results come back in input order, keeping
    the aggregated reports canonical.
    """
    items = list(items)
    threads = int(os.environ.get("LMODKIT_THREADS", "1") or "1")
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def get_module(datum: RootDatum, lam, kind: str) -> lm.LModule:
    key = (datum.type_label, datum.rank, tuple(lam), kind)
    if key not in _MODULES:
        if kind in ("ic_m", "ic_n"):
            _MODULES[key] = lm.build_ic(datum, lam, kind[-1])
        elif kind in ("wc_mu", "wc_nu"):
            _MODULES[key] = lm.build_wc(datum, lam, kind[3:])
        else:
            raise ValueError(kind)
    return _MODULES[key]


def lam_sweep(rank: int, bound: int = 2):
    import itertools

    return [tuple(map(Fraction, c)) for c in itertools.product(range(bound + 1), repeat=rank)]


def _kostant_of_irrep(datum, p, q, lam):
    v = rc.make_irr(datum, q, lam)
    return rc.kostant_functor(datum, p, q, rc.GradedModule({(0, v): 1}))


def _groups(groups):
    return [build_root_datum(t, r) for t, r in groups]


# ---------------------------------------------------------------------------
# 1. Kostant oracle.


def suite_kostant_oracle(
    groups=None, lam_bound=2, ce_cap=lg.DEFAULT_CE_CAP, tensor_depth=lg.DEFAULT_TENSOR_DEPTH
) -> SuiteResult:
    res = SuiteResult("kostant-oracle")
    t0 = time.time()
    for datum in _groups(groups or KOSTANT_GROUPS):
        pars = datum.all_parabolics()
        for q in pars:
            lams = []
            import itertools

            for c in itertools.product(range(lam_bound + 1), repeat=len(q)):
                lam = [Fraction(0)] * datum.rank
                for i, x in zip(sorted(q), c):
                    lam[i] = Fraction(x)
                lams.append(tuple(lam))
            # one rational central-character case per Levi
            if len(q) < datum.rank:
                lam = [Fraction(1, 2)] * datum.rank
                for i in q:
                    lam[i] = Fraction(1)
                lams.append(tuple(lam))
            for p in pars:
                if not p <= q:
                    continue
                if datum.dim_nilradical(p, q) > ce_cap:
                    res.note(group=datum.type_label + str(datum.rank), skip="cap", p=sorted(p), q=sorted(q))
                    continue
                for lam in lams:
                    rep = lg.build_irrep(datum, lam, q, depth_cap=tensor_depth)
                    got = lg.ce_cohomology(datum, p, q, rep, cap=ce_cap)
                    want_gm = _kostant_of_irrep(datum, p, q, lam)
                    want = {(d, v.hw): mult for (d, v), mult in want_gm.entries.items()}
                    res.cases += 1
                    if got != want:
                        res.fail(
                            group=datum.type_label + str(datum.rank),
                            p=sorted(p),
                            q=sorted(q),
                            lam=[str(x) for x in lam],
                            got=str(got),
                            want=str(want),
                        )
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 2. Composition law on random graded modules.


def suite_composition(seed=0, instances=100) -> SuiteResult:
    res = SuiteResult("composition")
    t0 = time.time()
    rng = Rng(seed, "composition")
    data = _groups([("A", 2), ("C", 2), ("A", 3), ("B", 3), ("C", 3), ("G", 2)])
    for i in range(instances):
        sub = rng.child(f"i{i}")
        datum = sub.choice(data)
        pars = datum.all_parabolics()
        chains = [
            (p, q, r)
            for p in pars
            for q in pars
            for r in pars
            if p <= q <= r
        ]
        p, q, r = sub.choice(chains)
        gm = random_graded_module(datum, r, sub.child("gm"))
        lhs = rc.kostant_functor(datum, p, q, rc.kostant_functor(datum, q, r, gm))
        rhs = rc.kostant_functor(datum, p, r, gm)
        res.cases += 1
        if lhs != rhs:
            res.fail(seed_path=sub.path, group=datum.type_label + str(datum.rank))
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 3. Builder validity.


def suite_validity(groups=None, lam_bound=2, perturb_seed=7) -> SuiteResult:
    res = SuiteResult("validity")
    t0 = time.time()
    for datum in _groups(groups or IC_SS_GROUPS):
        for lam in lam_sweep(datum.rank, lam_bound):
            for kind in ("ic_m", "ic_n", "wc_mu", "wc_nu"):
                m = get_module(datum, lam, kind)
                res.cases += 1
                bad = lm.validate(m)
                if bad is not None:
                    res.fail(group=datum.type_label + str(datum.rank), lam=[str(x) for x in lam], kind=kind, at=str(bad))
    # a perturbed module must fail validation
    rng = Rng(perturb_seed, "perturb")
    datum = build_root_datum("A", 2)
    m = get_module(datum, (Fraction(1), Fraction(1)), "ic_m")
    perturbed = _perturb(m, rng)
    res.cases += 1
    if perturbed is not None and lm.validate(perturbed) is None:
        res.fail(group="A2", kind="perturbed-ic", reason="perturbation not detected")
    res.seconds = time.time() - t0
    return res


def _perturb(m: lm.LModule, rng: Rng):
    for (p, q), mor in sorted(m.f.items(), key=lambda kv: (sorted(kv[0][0]), sorted(kv[0][1]))):
        if p == q:
            continue
        for key, mat in sorted(mor.blocks.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key())):
            if mat and mat[0]:
                new_blocks = dict(mor.blocks)
                newmat = [row[:] for row in mat]
                newmat[0][0] += 1
                new_blocks[key] = newmat
                f2 = dict(m.f)
                f2[(p, q)] = rc.IsoMorphism(mor.source, mor.target, 1, new_blocks)
                return lm.LModule(m.datum, m.strata, dict(m.e), f2)
    return None


# ---------------------------------------------------------------------------
# 4. Local intersection cohomology against the cone engine.


def expected_local_ic(datum: RootDatum, lam, kind: str, p: Par, q: Par, method="engine"):
    """The Kostant-times-cone closed form; returns (GradedModule, torsion list)."""
    rho = datum.rho()
    entries: dict = {}
    torsion = []
    for w in datum.coset_reps(p):
        hw = datum.weight_add(datum.weyl_apply(w, datum.weight_add(lam, rho)), rho, sign=-1)
        v = rc.make_irr(datum, p, hw)
        if p == datum.full_par():
            ih = {0: (1, ())}
        else:
            cone = cs.cone_for(datum, p, kind, w)
            ih = cs.ih_with_supports(cone, tuple(sorted(set(q) - set(p))), method)
        for d, (free, tors) in ih.items():
            if tors:
                torsion.append((sorted(p), sorted(q), w.word, d, tors))
            if free:
                slot = (w.length + d, v)
                entries[slot] = entries.get(slot, 0) + free
    return rc.GradedModule(entries), torsion


def suite_local_ic(groups=None, lam_bound=2) -> SuiteResult:
    res = SuiteResult("local-ic")
    t0 = time.time()
    for datum in _groups(groups or IC_SS_GROUPS):
        pars = datum.all_parabolics()
        for lam in lam_sweep(datum.rank, lam_bound):
            for kind in ("m", "n"):
                m = get_module(datum, lam, "ic_" + kind)
                for p in pars:
                    for q in pars:
                        if not p <= q:
                            continue
                        got = rc.cohomology(lm.local_cohomology_with_supports(m, p, q))
                        want, torsion = expected_local_ic(datum, lam, kind, p, q)
                        for t in torsion:
                            res.note(group=datum.type_label + str(datum.rank), torsion=str(t))
                        res.cases += 1
                        if got != want:
                            res.fail(
                                group=datum.type_label + str(datum.rank),
                                lam=[str(x) for x in lam],
                                kind=kind,
                                p=sorted(p),
                                q=sorted(q),
                                got=repr(got),
                                want=repr(want),
                            )
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 5. Local weighted cohomology closed forms.


def t_v_eta(datum: RootDatum, v: rc.Irr, eta: rc.WeightProfile) -> Par:
    """The parabolic T_V above P cut out by the negative weight coordinates."""
    p = v.par
    xi = rc.xi_of(datum, v)
    diff = datum.weight_add(xi, eta.base, sign=-1)
    coords = rc.cone_coords_aP(datum, diff, p)
    eps_coords = rc.cone_coords_aP(datum, datum.rho(), p) if eta.eps else None
    out = set(p)
    free = [i for i in range(datum.rank) if i not in p]
    for idx, i in enumerate(free):
        c = coords[idx]
        neg = c < 0 or (eta.eps and c == 0 and eps_coords[idx] > 0)
        if neg:
            out.add(i)
    return frozenset(out)


def suite_local_wc(groups=None, lam_bound=2) -> SuiteResult:
    res = SuiteResult("local-wc")
    t0 = time.time()
    for datum in _groups(groups or IC_SS_GROUPS):
        pars = datum.all_parabolics()
        g = datum.full_par()
        for lam in lam_sweep(datum.rank, lam_bound):
            for prof in ("mu", "nu"):
                eta = (
                    rc.upper_middle_profile(datum)
                    if prof == "mu"
                    else rc.lower_middle_profile(datum)
                )
                m = get_module(datum, lam, "wc_" + prof)
                full_push = {
                    p: _kostant_of_irrep(datum, p, g, lam) for p in pars
                }
                for p in pars:
                    # stalk identity
                    got = rc.cohomology(lm.stalk_complex(m, p))
                    want = rc.weight_truncate(datum, full_push[p], eta, True)
                    res.cases += 1
                    if got != want:
                        res.fail(kind="stalk", group=datum.type_label + str(datum.rank),
                                 lam=[str(x) for x in lam], prof=prof, p=sorted(p))
                        continue
                    # supports: concentrated exactly at Q = (P, T_V)
                    by_q: dict = {}
                    for (d, v), mult in full_push[p].entries.items():
                        tv = t_v_eta(datum, v, eta)
                        q_exp = datum.complement_par(p, tv)
                        slot = (d + (datum.rank - len(q_exp)), v)
                        tgt = by_q.setdefault(q_exp, {})
                        tgt[slot] = tgt.get(slot, 0) + mult
                    for q in pars:
                        if not p <= q:
                            continue
                        got_q = rc.cohomology(lm.local_cohomology_with_supports(m, p, q))
                        want_q = rc.GradedModule(by_q.get(q, {}))
                        res.cases += 1
                        if got_q != want_q:
                            res.fail(kind="supports", group=datum.type_label + str(datum.rank),
                                     lam=[str(x) for x in lam], prof=prof,
                                     p=sorted(p), q=sorted(q),
                                     got=repr(got_q), want=repr(want_q))
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 6. Micro-support of weighted cohomology.


def expected_wc_ss(datum: RootDatum, lam, kind_filter: str):
    """The characterization: Kostant constituents with vanishing a_P-part."""
    rho = datum.rho()
    out = []
    for p in datum.all_parabolics():
        for w in datum.coset_reps(p):
            hw = datum.weight_add(datum.weyl_apply(w, datum.weight_add(lam, rho)), rho, sign=-1)
            if any(datum.pairing_aP(datum.weight_add(hw, rho), i, p) != 0 for i in range(datum.rank) if i not in p):
                continue
            if kind_filter == "full" and not datum.is_conj_self_contragredient(hw, p):
                continue
            out.append((rc.make_irr(datum, p, hw), w))
    return out


def suite_wc_ss(groups=None, lam_bound=2) -> SuiteResult:
    res = SuiteResult("wc-ss")
    t0 = time.time()
    for datum in _groups(groups or IC_SS_GROUPS):
        g = datum.full_par()
        for lam in lam_sweep(datum.rank, lam_bound):
            e_selfdual = datum.is_conj_self_contragredient(lam, g)
            for prof in ("mu", "nu"):
                m = get_module(datum, lam, "wc_" + prof)
                rep = ms.micro_support(m)
                res.cases += 1
                got_weak = {e.v for e in rep.entries if e.weak}
                want_weak = {v for v, _ in expected_wc_ss(datum, lam, "weak")}
                got_full = {e.v for e in rep.members("full")}
                want_pairs = expected_wc_ss(datum, lam, "full")
                want_full = {v for v, _ in want_pairs}
                ok = got_weak == want_weak and got_full == want_full
                # degree values and fundamental witnesses
                wanted_deg = {}
                for v, w in want_pairs:
                    shift = (datum.rank - len(v.par)) if prof == "mu" else 0
                    wanted_deg[v] = w.length + shift
                    if not datum.is_fundamental_weyl(w, v.par, g):
                        ok = False
                for e in rep.members("full"):
                    if e.v not in wanted_deg or (e.c, e.d) != (wanted_deg[e.v], wanted_deg[e.v]):
                        ok = False
                ess = {e.v for e in rep.members("essential")}
                if e_selfdual:
                    if ess != {rc.make_irr(datum, g, lam)}:
                        ok = False
                    if not got_full:
                        ok = False
                else:
                    if ess:
                        ok = False
                if not ok:
                    res.fail(group=datum.type_label + str(datum.rank), lam=[str(x) for x in lam],
                             prof=prof,
                             got_full=[(sorted(v.par), [str(x) for x in v.hw]) for v in sorted(got_full, key=lambda v: v.sort_key())],
                             want_full=[(sorted(v.par), [str(x) for x in v.hw]) for v in sorted(want_full, key=lambda v: v.sort_key())])
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 7. Micro-support of intersection cohomology.


def expected_ic_ss(datum: RootDatum, lam, kind: str):
    """Fundamental Weyl constituents with the perversity sign condition."""
    rho = datum.rho()
    g = datum.full_par()
    out = {}
    for p in datum.all_parabolics():
        for w in datum.coset_reps(p):
            if not datum.is_fundamental_weyl(w, p, g):
                continue
            hw = datum.weight_add(datum.weyl_apply(w, datum.weight_add(lam, rho)), rho, sign=-1)
            if not datum.is_conj_self_contragredient(hw, p):
                continue
            mu = datum.weight_add(hw, rho)
            vals = [datum.pairing_aP(mu, i, p) for i in range(datum.rank) if i not in p]
            if kind == "m" and not all(x >= 0 for x in vals):
                continue
            if kind == "n" and not all(x <= 0 for x in vals):
                continue
            strict = all(x != 0 for x in vals)
            out[rc.make_irr(datum, p, hw)] = (w, strict)
    return out


def suite_ic_ss(groups=None, lam_bound=2) -> SuiteResult:
    res = SuiteResult("ic-ss")
    t0 = time.time()
    for datum in _groups(groups or IC_SS_GROUPS):
        g = datum.full_par()
        for lam in lam_sweep(datum.rank, lam_bound):
            for kind in ("m", "n"):
                m = get_module(datum, lam, "ic_" + kind)
                rep = ms.micro_support(m)
                res.cases += 1
                want = expected_ic_ss(datum, lam, kind)
                got_full = {e.v for e in rep.members("full")}
                ok = got_full == set(want)
                for e in rep.members("full"):
                    w, _ = want.get(e.v, (None, None))
                    if w is None:
                        ok = False
                        continue
                    shift = (datum.rank - len(e.v.par)) if kind == "m" else 0
                    if (e.c, e.d) != (w.length + shift, w.length + shift):
                        ok = False
                ess = {e.v for e in rep.members("essential")}
                want_ess = {v for v, (_, strict) in want.items() if strict}
                if ess != want_ess:
                    ok = False
                # essential = maximal under preceq_0
                maximal = set()
                for v in want:
                    if not any(
                        vt != v and ms.preceq(datum, v, vt, "0")[0] for vt in want
                    ):
                        maximal.add(v)
                if ess != maximal:
                    ok = False
                if datum.is_conj_self_contragredient(lam, g):
                    e_irr = rc.make_irr(datum, g, lam)
                    ents = [e for e in rep.members("essential")]
                    if {e.v for e in ents} != {e_irr}:
                        ok = False
                    elif (ents[0].c, ents[0].d) != (0, 0):
                        ok = False
                    # every supporting module has vanishing central pairing
                    for e in rep.members("full"):
                        mu = datum.weight_add(e.v.hw, datum.rho())
                        if any(
                            datum.pairing_aP(mu, i, e.v.par) != 0
                            for i in range(datum.rank)
                            if i not in e.v.par
                        ):
                            ok = False
                if not ok:
                    res.fail(group=datum.type_label + str(datum.rank),
                             lam=[str(x) for x in lam], kind=kind,
                             got=[(sorted(v.par), [str(x) for x in v.hw]) for v in sorted(got_full, key=lambda v: v.sort_key())],
                             want=[(sorted(v.par), [str(x) for x in v.hw]) for v in sorted(want, key=lambda v: v.sort_key())])
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 8. Combinatorial purity: trichotomy, vanishing, engine vs oracle.


def _length_profile_classes(datum: RootDatum, p: Par, w):
    """(class side data) for the hypothesis inequalities, per a_P-root class."""
    out = []
    for proj, roots in datum.aP_root_classes(p):
        ell = datum.ell_alpha(w, roots, p)
        out.append((proj, roots, ell))
    return out


def _class_in_side(datum, p, proj, q):
    """Is the class supported on Delta_P^Q ('q'), its complement ('opp'), or mixed."""
    coords = {}
    from . import _linalg as la

    free = sorted(set(range(datum.rank)) - set(p))
    cols = []
    for i in free:
        a = tuple(1 if k == i else 0 for k in range(datum.rank))
        levi = datum.project_to_levi_root_coords(a, p)
        cols.append([Fraction(a[t]) - levi[t] for t in range(datum.rank)])
    sol = la.solve(la.transpose(cols), [[Fraction(x)] for x in proj])
    coords = {i: row[0] for i, row in zip(free, sol)}
    supp = {i for i, c in coords.items() if c}
    q_side = set(q) - set(p)
    if supp <= q_side:
        return "q"
    if supp <= (set(free) - q_side):
        return "opp"
    return "mixed"


def suite_purity(rank2_exhaustive=True, rank3_samples=3, check_oracle=True) -> SuiteResult:
    res = SuiteResult("purity")
    t0 = time.time()
    groups = [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2)]
    samples = {}
    for tg in [("B", 3), ("C", 3)]:
        samples[tg] = rank3_samples
    for t, r in groups + list(samples):
        datum = build_root_datum(t, r)
        g = datum.full_par()
        weyl = datum.weyl_group()
        if (t, r) in samples:
            by_len: dict = {}
            for w in weyl:
                by_len.setdefault(w.length, []).append(w)
            weyl = [ws[0] for _, ws in sorted(by_len.items())][: 8]
        for p in datum.all_parabolics():
            if p == g:
                continue
            for w in weyl:
                classes = _length_profile_classes(datum, p, w)
                for kind in ("m", "n"):
                    cone = cs.cone_for(datum, p, kind, w)
                    for q in datum.all_parabolics():
                        if not p <= q:
                            continue
                        rel_q = tuple(sorted(set(q) - set(p)))
                        # trichotomy hypotheses: Q = P or G with the inequalities
                        if q in (p, g):
                            ok_hyp = True
                            for proj, roots, ell in classes:
                                side = _class_in_side(datum, p, proj, q)
                                half = Fraction(len(roots), 2)
                                if side == "q" and not ell >= half:
                                    ok_hyp = False
                                if side in ("opp", "mixed") and q == p and not ell <= half:
                                    ok_hyp = False
                                if q == g and not ell >= half:
                                    ok_hyp = False
                            if ok_hyp:
                                got = cs.ih_with_supports(cone, rel_q)
                                _, wp = datum.factor(w, p)
                                half_n = 2 * wp.length == datum.dim_nilradical(p)
                                ndp = datum.rank - len(p)
                                if q == p and kind == "m" and half_n:
                                    want = {ndp: (1, ())}
                                elif q == g and kind == "n" and half_n:
                                    want = {0: (1, ())}
                                else:
                                    want = {}
                                res.cases += 1
                                if got != want:
                                    res.fail(where="trichotomy", group=t + str(r), p=sorted(p),
                                             q=sorted(q), w=w.word, kind=kind, got=str(got), want=str(want))
                        # Theorem vanishing under an induction witness
                        t_wit = _purity_T_witness(datum, w, p, q, classes)
                        if t_wit is not None:
                            got = cs.ih_with_supports(cone, rel_q)
                            res.cases += 1
                            if got != {}:
                                res.fail(where="vanishing", group=t + str(r), p=sorted(p),
                                         q=sorted(q), w=w.word, kind=kind, T=sorted(t_wit), got=str(got))
                        if check_oracle:
                            got_e = cs.ih_with_supports(cone, rel_q)
                            got_o = cs.ih_with_supports(cone, rel_q, "oracle")
                            res.cases += 1
                            if got_e != got_o:
                                res.fail(where="oracle", group=t + str(r), p=sorted(p), q=sorted(q),
                                         w=w.word, kind=kind, engine=str(got_e), oracle=str(got_o))
    res.seconds = time.time() - t0
    return res


def _purity_T_witness(datum: RootDatum, w, p: Par, q: Par, classes):
    """A parabolic T satisfying the splitting/length/non-half conditions."""
    for t in sorted(datum.all_parabolics(), key=lambda s: (-len(s), sorted(s))):
        if not p <= t:
            continue
        n_dt = datum.rank - len(t)
        if not (1 <= n_dt <= 2):
            continue
        q_join = frozenset(q | t)
        side_a = len(q_join - t)
        if side_a > 1 or (n_dt - side_a) > 1:
            continue
        if n_dt == 1:
            _, wt = datum.factor(w, t)
            if 2 * wt.length == datum.dim_nilradical(t):
                continue
        ok = True
        for proj, roots, ell in classes:
            side = ms._class_side(datum, proj, p, t, q_join)
            half = Fraction(len(roots), 2)
            if side == "join" and not ell >= half:
                ok = False
                break
            if side == "opp" and not ell <= half:
                ok = False
                break
        if ok:
            return t
    return None


# ---------------------------------------------------------------------------
# 9. Interval equalities and predicate equivalence.


def global_interval_versions(m: lm.LModule):
    """The four global degree intervals; None when real-form data is missing."""
    datum = m.datum
    rep = ms.micro_support(m)
    full = rep.members("full")
    if not full:
        return [(None, None)] * 4, True
    offs = {}
    for e in full:
        dim_d = datum.dim_symmetric_space(e.v.par)
        dim_dv = datum.dim_DPV(e.v.hw, e.v.par)
        if dim_dv is None:
            return None, False
        offs[e.v] = (Fraction(dim_d - dim_dv, 2), Fraction(dim_d + dim_dv, 2))
    out = []
    # i = 1
    c1 = min(offs[e.v][0] + e.c for e in full)
    d1 = max(offs[e.v][1] + e.d for e in full)
    out.append((c1, d1))
    # i = 2
    c2 = None
    d2 = None
    for e in full:
        per = _pred2_by_ptilde(m, e.v)
        for pt, degs in per.items():
            if not degs:
                continue
            lo = offs[e.v][0] + min(degs)
            hi = offs[e.v][1] + (len(pt) - len(e.v.par)) + max(degs)
            c2 = lo if c2 is None else min(c2, lo)
            d2 = hi if d2 is None else max(d2, hi)
    out.append((c2, d2))
    # i = 3: the module itself in the role of the larger irreducible
    c3 = d3 = None
    for e in full:
        qi = e.interval
        degs = ms._LocalData(m).degrees_of(e.v.par, qi.q_v, e.v)
        if not degs:
            continue
        lo = offs[e.v][0] + min(degs)
        hi = offs[e.v][1] + max(degs)
        c3 = lo if c3 is None else min(c3, lo)
        d3 = hi if d3 is None else max(d3, hi)
    out.append((c3, d3))
    # i = 4: essential degrees
    c4 = d4 = None
    for e in rep.members("essential"):
        lo = offs[e.v][0] + e.c_ess
        hi = offs[e.v][1] + e.d_ess
        c4 = lo if c4 is None else min(c4, lo)
        d4 = hi if d4 is None else max(d4, hi)
    out.append((c4, d4))
    return out, True


def _pred2_by_ptilde(m: lm.LModule, v: rc.Irr):
    datum = m.datum
    data = ms._LocalData(m)
    qi = ms.q_interval(datum, v, data.max_stratum)
    opp = datum.complement_par(v.par, qi.q_v)
    per: dict = {}
    for q_t in lm.up_set(m.strata, v.par):
        if not (qi.q_v <= q_t <= qi.q_v_prime):
            continue
        p_t = opp & q_t
        inner = data.coh(p_t, q_t)
        relabeled = rc.kostant_functor(datum, v.par, p_t, inner)
        degs = [d for (d, vv) in relabeled.entries if vv == v]
        if degs:
            per.setdefault(p_t, []).extend(degs)
    return per


def suite_interval_equalities(groups=None, lam_bound=1, rank3_spot=True) -> SuiteResult:
    res = SuiteResult("interval-equalities")
    t0 = time.time()
    modules = []
    for datum in _groups(groups or RANK2_GROUPS):
        for lam in lam_sweep(datum.rank, lam_bound):
            for kind in ("ic_m", "ic_n", "wc_mu", "wc_nu"):
                modules.append((datum, lam, kind))
    if rank3_spot and groups is None:
        for t, r in RANK3_GROUPS:
            datum = build_root_datum(t, r)
            modules.append((datum, tuple([Fraction(1)] * 3), "ic_m"))
            modules.append((datum, tuple([Fraction(0)] * 3), "wc_nu"))
    for datum, lam, kind in modules:
        m = get_module(datum, lam, kind)
        data = ms._LocalData(m)
        for p in sorted(m.strata, key=lambda s: (len(s), sorted(s))):
            for v in data.candidates(p):
                degs = [ms.predicate_degrees(m, v, i) for i in (1, 2, 3, 4)]
                nonempty = [bool(d) for d in degs]
                res.cases += 1
                if len(set(nonempty)) != 1:
                    res.fail(where="predicates", group=datum.type_label + str(datum.rank),
                             lam=[str(x) for x in lam], kind=kind,
                             p=sorted(p), v=[str(x) for x in v.hw],
                             degs=[list(map(int, dd)) for dd in degs])
        intervals, supported = global_interval_versions(m)
        res.cases += 1
        if supported and intervals is not None:
            has_ss = bool(ms.micro_support(m).members("full"))
            if has_ss:
                if any(iv == (None, None) for iv in intervals) or len(set(intervals)) > 1:
                    res.fail(where="intervals", group=datum.type_label + str(datum.rank),
                             lam=[str(x) for x in lam], kind=kind,
                             intervals=[(str(a), str(b)) for a, b in intervals])
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 10. Basic lemma and the induction witness.


def suite_basic_lemma(lam_bound=2, rank3_lams=2) -> SuiteResult:
    res = SuiteResult("basic-lemma")
    t0 = time.time()
    for t, r in [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2), ("B", 3), ("C", 3)]:
        datum = build_root_datum(t, r)
        g = datum.full_par()
        lams = lam_sweep(datum.rank, lam_bound if r <= 2 else 1)
        if r == 3:
            lams = lams[:rank3_lams] + [tuple([Fraction(1)] * 3)]
        for p in datum.all_parabolics():
            if p == g:
                continue
            for w in datum.coset_reps(p):
                for lam in lams:
                    rep = ms.basic_lemma_check(datum, w, p, lam)
                    if not rep.hypothesis_ok:
                        continue
                    res.cases += 1
                    if rep.violations:
                        res.fail(group=t + str(r), p=sorted(p), w=w.word,
                                 lam=[str(x) for x in lam], violations=len(rep.violations))
                    # induction witness where the weight inequalities hold
                    rho = datum.rho()
                    hw = datum.weight_add(datum.weyl_apply(w, datum.weight_add(lam, rho)), rho, sign=-1)
                    mu = datum.weight_add(hw, rho)
                    for q in datum.all_parabolics():
                        if not p <= q:
                            continue
                        if not _weight_inequalities_hold(datum, p, q, mu):
                            continue
                        tw = ms.find_induction_T(datum, w, p, q)
                        res.cases += 1
                        if tw is None:
                            res.fail(where="induction-T", group=t + str(r), p=sorted(p),
                                     q=sorted(q), w=w.word, lam=[str(x) for x in lam])
    res.seconds = time.time() - t0
    return res


def _weight_inequalities_hold(datum: RootDatum, p: Par, q: Par, mu) -> bool:
    from . import _linalg as la

    x = datum.weight_to_root_coords(mu)
    for proj, roots in datum.aP_root_classes(p):
        pairing = sum(
            x[i] * proj[j] * datum.form[i][j]
            for i in range(datum.rank)
            for j in range(datum.rank)
            if x[i] and proj[j]
        )
        side = _class_in_side(datum, p, proj, q)
        if side == "q" and not pairing <= 0:
            return False
        if side == "opp" and not pairing >= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# 11. Fiber bounds for the Satake quotient of C2.


def suite_fiber_bounds(lams=None, kinds=("m", "n")) -> SuiteResult:
    res = SuiteResult("fiber-bounds")
    t0 = time.time()
    if lams is None:
        lams = [(1, 1), (1, 2), (2, 1), (2, 2)]
    for node in (0, 1):
        datum = build_root_datum("C", 2, sigma_nodes=(node,))
        for lam_raw in lams:
            lam = tuple(Fraction(x) for x in lam_raw)
            for kind in kinds:
                m = lm.build_ic(datum, lam, kind)
                for r in st.saturated_parabolics(datum):
                    geo = st.stratum_geometry(datum, r)
                    bound_hi = Fraction(geo.codim, 2) - geo.dim_a_r
                    bound_lo = Fraction(geo.codim, 2) + geo.dim_a_r
                    ell = st.ell_block(datum, r)
                    if not ell:
                        h_star = rc.cohomology(lm.stalk_complex(m, r))
                        d_star = max((d for (d, _) in h_star.entries), default=None)
                        h_shriek = rc.cohomology(lm.costalk_complex(m, r))
                        dim_dh = datum.dim_symmetric_space(st.kappa(datum, r))
                        c_shriek = min((d + dim_dh for (d, _) in h_shriek.entries), default=None)
                    else:
                        fiber, positions = st.fiber_datum(datum, r)
                        kp = st.kappa(datum, r)
                        mf_star = lm.fiber_pullback(m, kp, r, fiber, positions, "*")
                        rep_star = ms.micro_support(mf_star)
                        if not rep_star.global_supported:
                            res.fail(where="unsupported-star", sigma=node, r=sorted(r))
                            continue
                        d_star = rep_star.global_d
                        dim_dh = datum.dim_symmetric_space(kp)
                        mf_sh = lm.fiber_pullback(m, kp, r, fiber, positions, "!", dim_shift=dim_dh)
                        rep_sh = ms.micro_support(mf_sh)
                        if not rep_sh.global_supported:
                            res.fail(where="unsupported-shriek", sigma=node, r=sorted(r))
                            continue
                        c_shriek = rep_sh.global_c
                    res.cases += 1
                    if d_star is not None and not (d_star <= bound_hi):
                        res.fail(where="star", sigma=node, lam=lam_raw, kind=kind,
                                 r=sorted(r), d=d_star, bound=str(bound_hi))
                    if c_shriek is not None and not (c_shriek >= bound_lo):
                        res.fail(where="shriek", sigma=node, lam=lam_raw, kind=kind,
                                 r=sorted(r), c=c_shriek, bound=str(bound_lo))
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 12. Euler characters.


def suite_euler(groups=None, lam_bound=2) -> SuiteResult:
    res = SuiteResult("euler")
    t0 = time.time()
    cases = []
    for datum in _groups(groups or EULER_GROUPS):
        for p in datum.all_parabolics():
            for lam in lam_sweep(datum.rank, lam_bound):
                cases.append((datum, p, lam))

    def one(case):
        datum, p, lam = case
        return lg.euler_character_check(datum, p, lam)

    for case, ok in zip(cases, pmap(one, cases)):
        res.cases += 1
        if not ok:
            datum, p, lam = case
            res.fail(group=datum.type_label + str(datum.rank), p=sorted(p),
                     lam=[str(x) for x in lam])
    res.seconds = time.time() - t0
    return res


# ---------------------------------------------------------------------------
# 13. Functor laws on random modules.


def _admissible_families(datum: RootDatum, size: int) -> list:
    import itertools

    key = ("families", size)
    if key not in datum._cache:
        pars = datum.all_parabolics()
        out = []
        for combo in itertools.combinations(pars, size):
            if lm.is_admissible(datum, frozenset(combo)):
                out.append(frozenset(combo))
        datum._cache[key] = out
    return datum._cache[key]


def suite_functor_laws(seed=0, instances=200) -> SuiteResult:
    res = SuiteResult("functor-laws")
    t0 = time.time()
    rng = Rng(seed, "functor-laws")
    a2 = build_root_datum("A", 2)
    a3 = build_root_datum("A", 3)
    for i in range(instances):
        sub = rng.child(f"i{i}")
        datum = sub.choice([a2, a2, a3])
        fams = _admissible_families(datum, 3)
        w_strata = sub.choice(fams)
        q_mid = max(sorted(w_strata, key=lambda s: (len(s), sorted(s))), key=len)
        m = random_lmodule(datum, w_strata, sub.child("m"))
        res.cases += 1
        try:
            _check_functor_laws(datum, m, w_strata, q_mid, sub, res)
        except Exception as exc:  # pragma: no cover
            res.fail(seed_path=sub.path, error=repr(exc))
    # transversality on the full A2 poset
    rng2 = Rng(seed, "transversality")
    for i in range(20):
        sub = rng2.child(f"t{i}")
        datum = a2
        strata = frozenset(datum.all_parabolics())
        m = random_lmodule(datum, strata, sub.child("m"))
        t_par = sub.choice([frozenset({0}), frozenset({1})])
        t0_par = frozenset()
        t2 = datum.complement_par(t0_par, t_par)  # forces the transversality shape
        z1 = frozenset(p for p in strata if p <= t_par)
        z2 = frozenset(p for p in strata if p <= t2)
        z = frozenset(p for p in strata if p <= (t_par & t2))
        lhs = lm.restrict(lm.upper_star(m, z1), z)
        rhs = lm.upper_star(lm.restrict(m, z2), z)
        res.cases += 1
        if not lhs.data_eq(rhs):
            res.fail(where="transversality", seed_path=sub.path)
    res.seconds = time.time() - t0
    return res


def _cohomology_eq(m1: lm.LModule, m2: lm.LModule) -> bool:
    """Equality of all local cohomology with supports (the re-summed functor
    composites agree up to a canonical permutation of summands, so data
    equality is compared at cohomology level)."""
    if m1.strata != m2.strata:
        return False
    for p, q in m1.pairs():
        h1 = rc.cohomology(lm.local_cohomology_with_supports(m1, p, q))
        h2 = rc.cohomology(lm.local_cohomology_with_supports(m2, p, q))
        if h1 != h2:
            return False
    return True


def _check_functor_laws(datum, m, w_strata, q_mid, rng, res):
    open1 = frozenset(p for p in w_strata if q_mid <= p) or frozenset([q_mid])
    open2 = frozenset([max(sorted(open1, key=lambda s: (len(s), sorted(s))), key=len)])
    closed1 = frozenset(p for p in w_strata if p <= q_mid)
    minimal = min(sorted(closed1, key=lambda s: (len(s), sorted(s))), key=len)
    closed0 = frozenset([minimal])
    # composition identities
    if not lm.restrict(lm.restrict(m, open1), open2).data_eq(lm.restrict(m, open2)):
        res.fail(where="shriek-compose", seed_path=rng.path)
    if not lm.extend_by_zero(lm.extend_by_zero(lm.restrict(m, closed0), closed1), w_strata).data_eq(
        lm.extend_by_zero(lm.restrict(m, closed0), w_strata)
    ):
        res.fail(where="star-compose", seed_path=rng.path)
    lhs_up = lm.upper_star(lm.upper_star(m, closed1), closed0)
    rhs_up = lm.upper_star(m, closed0)
    if lhs_up.stalk(minimal) != rhs_up.stalk(minimal) or not _cohomology_eq(lhs_up, rhs_up):
        res.fail(where="upperstar-compose", seed_path=rng.path)
    if not lm.lower_shriek(lm.lower_shriek(lm.restrict(m, closed0), closed1), w_strata).data_eq(
        lm.lower_shriek(lm.restrict(m, closed0), w_strata)
    ):
        res.fail(where="lowershriek-compose", seed_path=rng.path)
    # adjunctions (dimension form)
    n = random_lmodule(datum, closed1, rng.child("n"))
    lhs = lm.hom_dimension(m, lm.extend_by_zero(n, w_strata))
    rhs = lm.hom_dimension(lm.upper_star(m, closed1), n)
    if lhs != rhs:
        res.fail(where="adjunction-star", seed_path=rng.path, lhs=lhs, rhs=rhs)
    lhs2 = lm.hom_dimension(lm.lower_shriek(n, w_strata), m)
    rhs2 = lm.hom_dimension(n, lm.restrict(m, closed1))
    if lhs2 != rhs2:
        res.fail(where="adjunction-shriek", seed_path=rng.path, lhs=lhs2, rhs=rhs2)


SUITES = {
    "kostant-oracle": suite_kostant_oracle,
    "composition": suite_composition,
    "validity": suite_validity,
    "local-ic": suite_local_ic,
    "local-wc": suite_local_wc,
    "wc-ss": suite_wc_ss,
    "ic-ss": suite_ic_ss,
    "purity": suite_purity,
    "interval-equalities": suite_interval_equalities,
    "basic-lemma": suite_basic_lemma,
    "fiber-bounds": suite_fiber_bounds,
    "euler": suite_euler,
    "functor-laws": suite_functor_laws,
}

"""Combinatorial intersection cohomology of cones over stratified simplices.

The face poset of the cone on |Delta_P| is the parabolic interval [P, G]:
the cone point is P and the open face is G.  Sheaf complexes on the poset
are functors: a free Z-cochain complex per face plus generization chain
maps upward.  Global sections over an up-closed set are computed by the
order-complex (bar) cochain complex, and sections with supports in a closed
set are the literal kernel subcomplex of the restriction.

Two pipelines compute the intersection cohomology with a per-stratum integer
perversity: a stalk-first recursive engine (stalk at a face = truncation of
the bar complex of its link; memoized by the face's relative poset type and
perversity restriction) and a stratum-insertion oracle that extends the
functor one closed face at a time and truncates via a double mapping cone.
Both retain torsion; cohomology is read off by Smith normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import _linalg as la
from .rootcore import Par, RootDatum

# ---------------------------------------------------------------------------
# Free Z-cochain complexes.


class ZComplex:
    """Free finitely generated cochain complex over Z."""

    def __init__(self, ranks: dict, diffs: dict):
        self.ranks = {d: r for d, r in ranks.items() if r}
        self.diffs = {}
        for d, mat in diffs.items():
            if mat and mat[0] and any(any(row) for row in mat):
                if len(mat) != self.ranks.get(d + 1, 0) or len(mat[0]) != self.ranks.get(d, 0):
                    raise ValueError(f"differential shape mismatch at degree {d}")
                self.diffs[d] = [[int(x) for x in row] for row in mat]
        for d in self.diffs:
            if d + 1 in self.diffs:
                prod = _zmul(self.diffs[d + 1], self.diffs[d])
                if any(any(row) for row in prod):
                    raise ValueError("d^2 != 0")

    def rank(self, d: int) -> int:
        return self.ranks.get(d, 0)

    def diff(self, d: int):
        m = self.diffs.get(d)
        if m is None:
            return [[0] * self.rank(d) for _ in range(self.rank(d + 1))]
        return m

    def degrees(self):
        return sorted(self.ranks)

    def total_rank(self):
        return sum(self.ranks.values())

    def cohomology(self) -> dict:
        out = {}
        degs = set(self.ranks) | {d + 1 for d in self.diffs}
        for d in sorted(degs):
            dim = self.rank(d)
            if not dim:
                continue
            d_out = self.diffs.get(d, [])
            d_in = self.diffs.get(d - 1, [])
            free, tors = la.z_cohomology(d_in, d_out, dim)
            if free or tors:
                out[d] = (free, tuple(tors))
        return out

    def shift(self, k: int) -> "ZComplex":
        ranks = {d - k: r for d, r in self.ranks.items()}
        sign = -1 if k % 2 else 1
        diffs = {d - k: [[sign * x for x in row] for row in mat] for d, mat in self.diffs.items()}
        return ZComplex(ranks, diffs)


def z_point() -> ZComplex:
    return ZComplex({0: 1}, {})


def z_zero() -> ZComplex:
    return ZComplex({}, {})


def _zmul(a, b):
    if not a or not b:
        return []
    rows, mid, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(mid):
            c = a[i][k]
            if c:
                for j in range(cols):
                    if b[k][j]:
                        out[i][j] += c * b[k][j]
    return out


class ZChainMap:
    """Chain map between ZComplexes, stored as one matrix per degree."""

    def __init__(self, source: ZComplex, target: ZComplex, mats: dict, check: bool = True):
        self.source = source
        self.target = target
        self.mats = {}
        for d, m in mats.items():
            if m and m[0]:
                self.mats[d] = [[int(x) for x in row] for row in m]
        if check:
            for d in set(source.ranks):
                lhs = _zmul(target.diff(d), self.mat(d))
                rhs = _zmul(self.mat(d + 1), source.diff(d))
                pad = max(len(lhs), len(rhs))
                for i in range(pad):
                    li = lhs[i] if i < len(lhs) else []
                    ri = rhs[i] if i < len(rhs) else []
                    w = max(len(li), len(ri))
                    for j in range(w):
                        a = li[j] if j < len(li) else 0
                        b = ri[j] if j < len(ri) else 0
                        if a != b:
                            raise ValueError("not a chain map")

    def mat(self, d: int):
        m = self.mats.get(d)
        if m is None:
            return [[0] * self.source.rank(d) for _ in range(self.target.rank(d))]
        return m


def zmap_compose(g: ZChainMap, f: ZChainMap) -> ZChainMap:
    mats = {}
    for d in set(f.source.ranks):
        m = _zmul(g.mat(d), f.mat(d))
        if m and m[0]:
            mats[d] = m
    return ZChainMap(f.source, g.target, mats, check=False)


def zmap_identity(c: ZComplex) -> ZChainMap:
    mats = {d: [[1 if i == j else 0 for j in range(r)] for i in range(r)] for d, r in c.ranks.items()}
    return ZChainMap(c, c, mats, check=False)


def z_cone(phi: ZChainMap) -> tuple[ZComplex, ZChainMap]:
    """Mapping cone of phi: X -> Y; also returns the projection cone -> X[1]."""
    x, y = phi.source, phi.target
    degs = set()
    for d in list(x.ranks) + list(y.ranks):
        degs.add(d)
        degs.add(d - 1)
    ranks = {}
    for d in degs:
        r = x.rank(d + 1) + y.rank(d)
        if r:
            ranks[d] = r
    diffs = {}
    for d in ranks:
        a, b = x.rank(d + 1), y.rank(d)
        a2, b2 = x.rank(d + 2), y.rank(d + 1)
        if a2 + b2 == 0:
            continue
        mat = [[0] * (a + b) for _ in range(a2 + b2)]
        dx = x.diff(d + 1)
        for i in range(a2):
            for j in range(a):
                mat[i][j] = -dx[i][j]
        ph = phi.mat(d + 1)
        dy = y.diff(d)
        for i in range(b2):
            for j in range(a):
                mat[a2 + i][j] = ph[i][j]
            for j in range(b):
                mat[a2 + i][a + j] = dy[i][j]
        diffs[d] = mat
    cone = ZComplex(ranks, diffs)
    proj = {}
    for d in ranks:
        a, b = x.rank(d + 1), y.rank(d)
        if a:
            m = [[0] * (a + b) for _ in range(a)]
            for i in range(a):
                m[i][i] = 1
            proj[d] = m
    shifted = x.shift(1)
    return cone, ZChainMap(cone, shifted, proj, check=False)


def z_truncate_le(c: ZComplex, n: int) -> tuple[ZComplex, ZChainMap]:
    """Subcomplex tau^{<= n} (kernel in degree n) with its inclusion."""
    ranks = {}
    incl = {}
    diffs = {}
    kmat = None
    for d, r in c.ranks.items():
        if d < n:
            ranks[d] = r
            incl[d] = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
        elif d == n:
            kmat = la.z_kernel(c.diff(d)) if c.diffs.get(d) else [
                [1 if i == j else 0 for j in range(r)] for i in range(r)
            ]
            k = len(kmat[0]) if kmat else 0
            if k:
                ranks[d] = k
                incl[d] = kmat
    for d in ranks:
        if d + 1 not in ranks:
            continue
        if d + 1 < n:
            diffs[d] = c.diff(d)
        else:
            # factor d^{n-1} through the kernel basis
            sol = la.solve(la.qmat(incl[d + 1]), la.qmat(c.diff(d)))
            if sol is None:
                raise AssertionError("image not inside kernel")
            diffs[d] = [[int(x) for x in row] for row in sol]
    sub = ZComplex(ranks, diffs)
    return sub, ZChainMap(sub, c, incl, check=False)


def _reduce_step(c: ZComplex):
    """Eliminate one unit entry; returns (new, i: new -> c, p: c -> new) or None."""
    loc = None
    for d in sorted(c.diffs):
        m = c.diffs[d]
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x in (1, -1):
                    loc = (d, i, j)
                    break
            if loc:
                break
        if loc:
            break
    if loc is None:
        return None
    d, y, x = loc
    u = c.diffs[d][y][x]  # u^{-1} = u
    rk, rk1 = c.rank(d), c.rank(d + 1)
    m = c.diff(d)
    col_x = [m[s][x] for s in range(rk1)]
    row_y = m[y]
    ranks = dict(c.ranks)
    ranks[d] = rk - 1
    ranks[d + 1] = rk1 - 1
    diffs = {}
    for dd, mat in c.diffs.items():
        if dd == d:
            continue
        if dd == d - 1:
            diffs[dd] = [row for t, row in enumerate(mat) if t != x]
        elif dd == d + 1:
            diffs[dd] = [[row[s] for s in range(rk1) if s != y] for row in mat]
        else:
            diffs[dd] = mat
    newm = [
        [m[s][t] - col_x[s] * u * row_y[t] for t in range(rk) if t != x]
        for s in range(rk1)
        if s != y
    ]
    diffs[d] = newm
    new = ZComplex(ranks, diffs)
    # i: identity away from (d, d+1); in degree d the column for z is
    # e_z - u d[y][z] e_x, in degree d+1 plain inclusion skipping y
    i_mats = {}
    p_mats = {}
    keep_d = [t for t in range(rk) if t != x]
    keep_d1 = [s for s in range(rk1) if s != y]
    mat = [[0] * len(keep_d) for _ in range(rk)]
    for col, z in enumerate(keep_d):
        mat[z][col] = 1
        corr = -u * row_y[z]
        if corr:
            mat[x][col] += corr
    i_mats[d] = mat
    mat = [[0] * len(keep_d1) for _ in range(rk1)]
    for col, s in enumerate(keep_d1):
        mat[s][col] = 1
    i_mats[d + 1] = mat
    # p: drop x in degree d; in degree d+1 send y to -u * sum_{s != y} d[s][x] s
    mat = [[1 if t == z else 0 for t in range(rk)] for z in keep_d]
    p_mats[d] = mat
    mat = [[0] * rk1 for _ in range(len(keep_d1))]
    for rowi, s in enumerate(keep_d1):
        mat[rowi][s] = 1
        coeff = -u * col_x[s]
        if coeff:
            mat[rowi][y] = coeff
    p_mats[d + 1] = mat
    for dd, r in c.ranks.items():
        if dd in (d, d + 1):
            continue
        i_mats[dd] = [[1 if a == b else 0 for b in range(ranks.get(dd, 0))] for a in range(r)]
        p_mats[dd] = [[1 if a == b else 0 for b in range(r)] for a in range(ranks.get(dd, 0))]
    i = ZChainMap(new, c, i_mats, check=False)
    p = ZChainMap(c, new, p_mats, check=False)
    return new, i, p


def z_reduce(c: ZComplex) -> tuple[ZComplex, ZChainMap, ZChainMap]:
    """Iterated unit elimination; returns (reduced, include, project) with
    project o include = identity and both quasi-isomorphisms over Z."""
    inc = zmap_identity(c)
    pr = zmap_identity(c)
    cur = c
    while True:
        step = _reduce_step(cur)
        if step is None:
            break
        cur, i, p = step
        inc = zmap_compose(inc, i)
        pr = zmap_compose(p, pr)
    return cur, inc, pr


def zmap_shift(f: ZChainMap, k: int) -> ZChainMap:
    src = f.source.shift(k)
    tgt = f.target.shift(k)
    mats = {d - k: m for d, m in f.mats.items()}
    return ZChainMap(src, tgt, mats, check=False)


def cone_target_injection(cone: ZComplex, x: ZComplex, y: ZComplex) -> ZChainMap:
    """The chain inclusion Y -> cone(phi: X -> Y) = X[1] + Y."""
    mats = {}
    for d, r in y.ranks.items():
        off = x.rank(d + 1)
        total = cone.rank(d)
        mat = [[0] * r for _ in range(total)]
        for j in range(r):
            mat[off + j][j] = 1
        mats[d] = mat
    return ZChainMap(y, cone, mats, check=True)


# ---------------------------------------------------------------------------
# Sheaf functors on face posets and their bar (order-complex) cochains.


def _all_chains(faces):
    """Strictly increasing chains, ordered deterministically."""
    faces = sorted(faces, key=lambda s: (len(s), sorted(s)))
    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        last = chain[-1]
        for nxt in faces:
            if last < nxt:
                chain.append(nxt)
                extend(chain)
                chain.pop()

    for f in faces:
        extend([f])
    chains.sort(key=lambda c: (len(c), [(len(f), sorted(f)) for f in c]))
    return chains


class SheafFunctor:
    """Stalk complexes indexed by faces plus generization chain maps upward."""

    def __init__(self, stalks: dict, gens: dict):
        self.stalks = stalks
        self.gens = gens  # (small, big) -> ZChainMap stalk(small) -> stalk(big)

    def gen(self, small, big) -> ZChainMap:
        if small == big:
            return zmap_identity(self.stalks[small])
        return self.gens[(small, big)]


def bar_complex(functor: SheafFunctor, faces) -> tuple[ZComplex, dict]:
    """Sections over an up-closed face set via the order-complex cochains.

    Returns the total complex and a layout mapping (chain, stalk degree) to
    (total degree, offset, width).
    """
    chains = _all_chains(faces)
    chain_set = set(chains)
    layout: dict = {}
    ranks: dict = {}
    for c in chains:
        k = len(c) - 1
        st = functor.stalks[c[-1]]
        for sd in st.degrees():
            n = sd + k
            start = ranks.get(n, 0)
            width = st.rank(sd)
            layout[(c, sd)] = (n, start, width)
            ranks[n] = start + width
    diffs: dict = {}

    def add_block(n, r0, c0, mat, sign=1):
        if not mat or not mat[0]:
            return
        tgt = diffs.setdefault(
            n, [[0] * ranks.get(n, 0) for _ in range(ranks.get(n + 1, 0))]
        )
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                if x:
                    tgt[r0 + i][c0 + j] += sign * x

    for c in chains:
        k = len(c) - 1
        st = functor.stalks[c[-1]]
        for sd in st.degrees():
            n, c0, width = layout[(c, sd)]
            if st.rank(sd + 1):
                _, r0, _ = layout[(c, sd + 1)]
                add_block(n, r0, c0, st.diff(sd), sign=(-1) ** k)
            for f in faces:
                if f in c:
                    continue
                for i in range(len(c) + 1):
                    if not _chain_fits(c, f, i):
                        continue
                    newc = c[:i] + (f,) + c[i:]
                    if newc not in chain_set:
                        continue
                    if newc[-1] == c[-1]:
                        if (newc, sd) in layout:
                            _, r0, w2 = layout[(newc, sd)]
                            ident = [[1 if a == b else 0 for b in range(width)] for a in range(w2)]
                            add_block(n, r0, c0, ident, sign=(-1) ** i)
                    else:
                        g = functor.gen(c[-1], f)
                        if (newc, sd) in layout:
                            _, r0, _ = layout[(newc, sd)]
                            add_block(n, r0, c0, g.mat(sd), sign=(-1) ** len(c))
    return ZComplex(ranks, diffs), layout


def _chain_fits(c, f, i):
    if i > 0 and not (c[i - 1] < f):
        return False
    if i < len(c) and not (f < c[i]):
        return False
    return True


def _restriction_from_layouts(big, lay_big, small, lay_small, subfaces) -> ZChainMap:
    sub = set(subfaces)
    mats: dict = {}
    for (c, sd), (n, c0, width) in lay_big.items():
        if not all(f in sub for f in c):
            continue
        _, r0, _ = lay_small[(c, sd)]
        mat = mats.setdefault(n, [[0] * big.rank(n) for _ in range(small.rank(n))])
        for a in range(width):
            mat[r0 + a][c0 + a] = 1
    return ZChainMap(big, small, mats, check=True)


def _point_projection_from_layout(big, lay_big, stalk, s) -> ZChainMap:
    mats: dict = {}
    for sd in stalk.degrees():
        n, c0, width = lay_big[((s,), sd)]
        mat = [[0] * big.rank(n) for _ in range(stalk.rank(sd))]
        for a in range(width):
            mat[a][c0 + a] = 1
        mats[sd] = mat
    return ZChainMap(big, stalk, mats, check=True)


def bar_supports_kernel(functor: SheafFunctor, faces, closed) -> ZComplex:
    """Sections supported on a closed face set: the subcomplex of chains
    starting inside it (the literal kernel of the restriction to the
    complementary open)."""
    full, layout = bar_complex(functor, faces)
    closed_set = set(closed)
    keep = [key for key in layout if key[0][0] in closed_set]
    keep.sort(key=lambda t: (layout[t][0], layout[t][1]))
    index: dict = {}
    ranks: dict = {}
    for key in keep:
        n, _, width = layout[key]
        base = ranks.get(n, 0)
        index[key] = (n, base, width)
        ranks[n] = base + width
    diffs: dict = {}
    for key in keep:
        n, src0, width = index[key]
        _, big0, _ = layout[key]
        full_d = full.diffs.get(n)
        if full_d is None:
            continue
        tgt = diffs.setdefault(
            n, [[0] * ranks.get(n, 0) for _ in range(ranks.get(n + 1, 0))]
        )
        for key2 in keep:
            n2, dst0, w2 = index[key2]
            if n2 != n + 1:
                continue
            _, big_r, _ = layout[key2]
            for i in range(w2):
                for j in range(width):
                    x = full_d[big_r + i][big0 + j]
                    if x:
                        tgt[dst0 + i][src0 + j] = x
    return ZComplex(ranks, diffs)


# ---------------------------------------------------------------------------
# The two pipelines.


_ENGINE_MEMO: dict = {}
_ORACLE_MEMO: dict = {}


def _canonical_key(vertices, pw):
    vs = sorted(vertices)
    relabel = {v: i for i, v in enumerate(vs)}
    items = []
    for face, val in pw.items():
        items.append((tuple(sorted(relabel[v] for v in face)), val))
    return (len(vs), tuple(sorted(items)))


def build_functor(vertices, pw: dict, oracle: bool) -> SheafFunctor:
    """Deligne functor on the cone face poset (subsets of `vertices`).

    pw maps every proper subset (including the empty set, the cone point) to
    its truncation degree; the full set is the open face.  The engine
    truncates by the kernel subcomplex of the reduced link sections; the
    oracle mirrors the sheaf-level adjunction M -> i_* tau^{>n} i^* M with a
    double mapping cone before reducing.
    """
    orig = sorted(vertices)
    relabel = {v: i for i, v in enumerate(orig)}
    memo = _ORACLE_MEMO if oracle else _ENGINE_MEMO
    key = _canonical_key(frozenset(orig), pw)

    def translate(functor: SheafFunctor) -> SheafFunctor:
        back = {i: v for v, i in relabel.items()}
        stalks = {frozenset(back[i] for i in f): st for f, st in functor.stalks.items()}
        gens = {
            (frozenset(back[i] for i in a), frozenset(back[i] for i in b)): g
            for (a, b), g in functor.gens.items()
        }
        return SheafFunctor(stalks, gens)

    if key in memo:
        return translate(memo[key])
    vs = frozenset(range(len(orig)))
    pw = {frozenset(relabel[v] for v in f): val for f, val in pw.items()}
    faces = [
        frozenset(s)
        for k in range(len(vs) + 1)
        for s in itertools.combinations(sorted(vs), k)
    ]
    stalks: dict = {vs: z_point()}
    gens: dict = {}
    for t in sorted(faces, key=lambda s: (-len(s), sorted(s))):
        if t == vs:
            continue
        upper = [f for f in faces if t < f]
        functor_so_far = SheafFunctor(stalks, gens)
        bar, lay = bar_complex(functor_so_far, upper)
        red, i_red, _ = z_reduce(bar)
        if oracle:
            tle, incl = z_truncate_le(red, pw[t])
            b_cone, _ = z_cone(incl)
            a_map = cone_target_injection(b_cone, tle, red)
            c_cone, proj_c = z_cone(a_map)
            st_big = c_cone.shift(-1)
            to_link_big = zmap_shift(proj_c, -1)
            st, i_st, _ = z_reduce(st_big)
            to_red = zmap_compose(to_link_big, i_st)
        else:
            st, incl = z_truncate_le(red, pw[t])
            to_red = incl
        to_bar = zmap_compose(i_red, to_red)
        stalks[t] = st
        for s in upper:
            up_of_s = [f for f in upper if s <= f]
            small, lay_small = bar_complex(functor_so_far, up_of_s)
            restr = _restriction_from_layouts(bar, lay, small, lay_small, up_of_s)
            pi = _point_projection_from_layout(small, lay_small, stalks[s], s)
            gens[(t, s)] = zmap_compose(pi, zmap_compose(restr, to_bar))
    functor = SheafFunctor(stalks, gens)
    memo[key] = functor
    return translate(functor)


# ---------------------------------------------------------------------------
# Public cone API.


@dataclass(frozen=True)
class StratifiedCone:
    """Cone on the simplex with vertex set Delta_P, stratified by its faces.

    Faces are encoded by the subsets of `vertices` (ambient simple-root
    indices not in the base parabolic); the empty set is the cone point.  The
    perversity assigns an integer to every proper face.
    """

    vertices: tuple
    perversity: tuple  # sorted ((face tuple), value) pairs

    def pw(self) -> dict:
        return {frozenset(f): v for f, v in self.perversity}


def make_cone(datum: RootDatum, p: Par, pw_by_par: dict) -> StratifiedCone:
    """Package a perversity given on parabolics Q with P <= Q < G."""
    vertices = tuple(sorted(set(range(datum.rank)) - set(p)))
    pairs = []
    for q, val in pw_by_par.items():
        if not (p <= q):
            raise ValueError("perversity stratum below the base")
        if q == datum.full_par():
            continue
        rel = tuple(sorted(set(q) - set(p)))
        pairs.append((rel, int(val)))
    expect = 2 ** len(vertices) - 1
    if len(pairs) != expect:
        raise ValueError(f"need a perversity value on all {expect} singular faces")
    return StratifiedCone(vertices, tuple(sorted(pairs)))


def perversity_pw(datum: RootDatum, kind: str, w, q: Par) -> int:
    """p(dim n_Q + #Delta_Q) - l(w_Q) for a middle perversity kind."""
    from .lmod import middle_perversity

    _, wq = datum.factor(w, q)
    k = datum.dim_nilradical(q) + (datum.rank - len(q))
    return middle_perversity(kind, k) - wq.length


def cone_for(datum: RootDatum, p: Par, kind: str, w) -> StratifiedCone:
    pw = {}
    for q in datum.all_parabolics():
        if p <= q and q != datum.full_par():
            pw[q] = perversity_pw(datum, kind, w, q)
    return make_cone(datum, p, pw)


def ih_cone(cone: StratifiedCone, method: str = "engine") -> dict:
    """I_{pw}H of the cone: {degree: (free rank, torsion factors)}."""
    functor = build_functor(cone.vertices, cone.pw(), oracle=(method == "oracle"))
    return functor.stalks[frozenset()].cohomology()


def ih_with_supports(cone: StratifiedCone, q_rel, method: str = "engine") -> dict:
    """I_{pw}H of the cone with supports in the closed subcone of the face q_rel.

    q_rel is the subset of cone.vertices defining the face (the full set
    gives supports in the whole cone, i.e. the plain cone cohomology).
    """
    q_rel = frozenset(q_rel)
    functor = build_functor(cone.vertices, cone.pw(), oracle=(method == "oracle"))
    faces = [
        frozenset(s)
        for k in range(len(cone.vertices) + 1)
        for s in itertools.combinations(sorted(cone.vertices), k)
    ]
    closed = [f for f in faces if f <= q_rel]
    ker = bar_supports_kernel(SheafFunctor(functor.stalks, functor.gens), faces, closed)
    return ker.cohomology()


def ih_link(cone: StratifiedCone, method: str = "engine") -> dict:
    """I_{pw}H of the link simplex (sections over the punctured cone)."""
    functor = build_functor(cone.vertices, cone.pw(), oracle=(method == "oracle"))
    faces = [
        frozenset(s)
        for k in range(1, len(cone.vertices) + 1)
        for s in itertools.combinations(sorted(cone.vertices), k)
    ]
    if not faces:
        return {}
    bar, _ = bar_complex(SheafFunctor(functor.stalks, functor.gens), faces)
    return bar.cohomology()


def graded_truncate(h: dict, n: int) -> dict:
    return {d: v for d, v in h.items() if d <= n}


def intgraded_str(h: dict) -> str:
    if not h:
        return "0"
    parts = []
    for d in sorted(h):
        free, tors = h[d]
        terms = []
        if free:
            terms.append("Z" if free == 1 else f"Z^{free}")
        terms += [f"Z/{t}" for t in tors]
        parts.append(f"{d}: " + (" + ".join(terms) if terms else "0"))
    return "; ".join(parts)

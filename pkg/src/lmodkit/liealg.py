"""Brute-force Lie algebra layer: explicit representations and nilpotent
cohomology computed from the Chevalley-Eilenberg complex.

This module is the independent oracle for the weight-combinatorics layer: it
builds the catalog algebras from defining matrix representations, constructs
small irreducibles inside tensor powers, computes H(n; E) directly from the
exterior-algebra differential, and provides Freudenthal multiplicities and
the Euler-character identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .rootcore import Par, RootDatum, Weight

DEFAULT_CE_CAP = 8
DEFAULT_TENSOR_DEPTH = 12


class CapExceeded(RuntimeError):
    pass


class DepthExceeded(RuntimeError):
    pass


def _unit(n, i, j) -> la.Mat:
    m = la.zeros(n, n)
    m[i][j] = Fraction(1)
    return m


def _bracket(a, b):
    return la.mat_add(la.mat_mul(a, b), la.mat_mul(b, a), sign=-1)


def _defining_generators(type_label: str, rank: int):
    """Matrices (e_i, f_i) of the simple generators in a defining rep, 0-based."""
    if type_label == "A":
        n = rank + 1
        es = [_unit(n, i, i + 1) for i in range(rank)]
        fs = [_unit(n, i + 1, i) for i in range(rank)]
    elif type_label == "C":
        n = 2 * rank
        es, fs = [], []
        for i in range(rank - 1):
            es.append(la.mat_add(_unit(n, i, i + 1), _unit(n, n - 2 - i, n - 1 - i), sign=-1))
            fs.append(la.mat_add(_unit(n, i + 1, i), _unit(n, n - 1 - i, n - 2 - i), sign=-1))
        es.append(_unit(n, rank - 1, rank))
        fs.append(_unit(n, rank, rank - 1))
    elif type_label == "B":
        n = 2 * rank + 1
        es, fs = [], []
        for i in range(rank - 1):
            es.append(la.mat_add(_unit(n, i, i + 1), _unit(n, n - 2 - i, n - 1 - i), sign=-1))
            fs.append(la.mat_add(_unit(n, i + 1, i), _unit(n, n - 1 - i, n - 2 - i), sign=-1))
        # short root, normalized so that (e, f, [e,f]) is an sl2 triple
        e = la.mat_add(_unit(n, rank - 1, rank), _unit(n, rank, rank + 1), sign=-1)
        f = la.mat_add(_unit(n, rank, rank - 1), _unit(n, rank + 1, rank), sign=-1)
        es.append(la.mat_scale(e, 2))
        fs.append(f)
    elif type_label == "D":
        n = 2 * rank
        es, fs = [], []
        for i in range(rank - 1):
            es.append(la.mat_add(_unit(n, i, i + 1), _unit(n, n - 2 - i, n - 1 - i), sign=-1))
            fs.append(la.mat_add(_unit(n, i + 1, i), _unit(n, n - 1 - i, n - 2 - i), sign=-1))
        e = la.mat_add(_unit(n, rank - 2, rank), _unit(n, rank - 1, rank + 1), sign=-1)
        f = la.mat_add(_unit(n, rank, rank - 2), _unit(n, rank + 1, rank - 1), sign=-1)
        es = es[: rank - 1] + [e]
        fs = fs[: rank - 1] + [f]
    elif type_label == "G":
        # fixed algebra of the D4 triality folding; node 1 is the D4 center,
        # the orbit {0, 2, 3} folds onto the short G2 node
        d4e, d4f = _defining_generators("D", 4)
        es = [la.mat_add(la.mat_add(d4e[0], d4e[2]), d4e[3]), d4e[1]]
        fs = [la.mat_add(la.mat_add(d4f[0], d4f[2]), d4f[3]), d4f[1]]
    else:
        raise ValueError(type_label)
    return es, fs


@dataclass
class ChevalleyAlgebra:
    """Catalog algebra realized by a faithful defining representation."""

    datum: RootDatum
    e_mats: list
    f_mats: list
    h_mats: list
    pos_vectors: dict  # positive root -> matrix
    neg_vectors: dict
    bracket_words: dict  # root -> (simple index, smaller root or None)
    constants: dict  # (g1, g2) -> N with [x_g1, x_g2] = N x_{g1+g2}
    jacobi_checked: bool


def build_chevalley(datum: RootDatum) -> ChevalleyAlgebra:
    key = "chevalley"
    if key in datum._cache:
        return datum._cache[key]
    es, fs = _defining_generators(datum.type_label, datum.rank)
    hs = [_bracket(es[i], fs[i]) for i in range(datum.rank)]
    for i in range(datum.rank):
        for k, row in enumerate(hs[i]):
            for l, x in enumerate(row):
                if k != l and x:
                    raise AssertionError("Cartan generator is not diagonal")
        for j in range(datum.rank):
            expect = la.mat_scale(es[j], datum.cartan[i][j])
            if not la.mat_eq(_bracket(hs[i], es[j]), expect):
                raise AssertionError(f"Cartan relation failed at ({i},{j})")

    pos_vectors: dict = {}
    neg_vectors: dict = {}
    words: dict = {}
    r = datum.rank
    for g in sorted(datum.pos_roots, key=lambda c: (sum(c), c)):
        if sum(g) == 1:
            i = g.index(1)
            pos_vectors[g] = es[i]
            neg_vectors[g] = fs[i]
            words[g] = (i, None)
            continue
        for i in range(r):
            if g[i] == 0:
                continue
            smaller = tuple(c - (1 if k == i else 0) for k, c in enumerate(g))
            if smaller in pos_vectors:
                x = _bracket(es[i], pos_vectors[smaller])
                if not la.is_zero(x):
                    pos_vectors[g] = x
                    neg_vectors[g] = _bracket(fs[i], neg_vectors[smaller])
                    words[g] = (i, smaller)
                    break
        else:
            raise AssertionError(f"could not build root vector for {g}")

    constants: dict = {}
    root_set = set(datum.pos_roots)
    for g1 in datum.pos_roots:
        for g2 in datum.pos_roots:
            s = tuple(a + b for a, b in zip(g1, g2))
            br = _bracket(pos_vectors[g1], pos_vectors[g2])
            if s in root_set:
                c = _extract_scalar(br, pos_vectors[s])
                if c is None:
                    raise AssertionError("bracket not proportional to a root vector")
                constants[(g1, g2)] = c
            else:
                if not la.is_zero(br):
                    raise AssertionError("bracket escaped the root-vector basis")
                constants[(g1, g2)] = Fraction(0)

    alg = ChevalleyAlgebra(datum, es, fs, hs, pos_vectors, neg_vectors, words, constants, False)
    _check_jacobi(alg)
    alg.jacobi_checked = True
    datum._cache[key] = alg
    return alg


def _extract_scalar(m, base):
    c = None
    for i, row in enumerate(base):
        for j, x in enumerate(row):
            if x:
                c = m[i][j] / x
                break
        if c is not None:
            break
    if c is None:
        return Fraction(0) if la.is_zero(m) else None
    return c if la.mat_eq(m, la.mat_scale(base, c)) else None


def _check_jacobi(alg: ChevalleyAlgebra):
    datum = alg.datum
    roots = list(datum.pos_roots)
    root_set = set(roots)

    def n(g1, g2):
        return alg.constants.get((g1, g2), Fraction(0))

    for a, b, c in itertools.combinations(roots, 3):
        total = tuple(x + y + z for x, y, z in zip(a, b, c))
        if total not in root_set:
            continue
        acc = Fraction(0)
        for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
            s = tuple(x + y for x, y in zip(u, v))
            if s in root_set:
                acc += n(u, v) * n(s, w)
        if acc != 0:
            raise AssertionError(f"Jacobi failed on {a}, {b}, {c}")


# ---------------------------------------------------------------------------
# Explicit representations.


@dataclass
class ExplicitRep:
    """A module over the Levi subalgebra indexed by `par` (default: the group).

    Carries exact matrices for the simple raising/lowering operators of the
    Levi and the full-Cartan weight of every basis vector in fundamental
    coordinates; the central part of the highest weight rides along.
    """

    datum: RootDatum
    par: Par
    hw: Weight
    dim: int
    weights: list
    e_act: dict
    f_act: dict

    def weight_multiplicities(self) -> dict:
        out: dict = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out


class _MatrixModule:
    def __init__(self, datum, par, weights, e_act, f_act):
        self.datum = datum
        self.par = par
        self.weights = weights
        self.e_act = e_act
        self.f_act = f_act

    @property
    def dim(self):
        return len(self.weights)


def _module_from_defining(datum: RootDatum, par: Par) -> _MatrixModule:
    alg = build_chevalley(datum)
    n = len(alg.e_mats[0])
    weights = [
        tuple(Fraction(alg.h_mats[i][b][b]) for i in range(datum.rank)) for b in range(n)
    ]
    e_act = {i: alg.e_mats[i] for i in par}
    f_act = {i: alg.f_mats[i] for i in par}
    return _MatrixModule(datum, par, weights, e_act, f_act)


def _exterior_power(mod: _MatrixModule, k: int) -> _MatrixModule:
    basis = list(itertools.combinations(range(mod.dim), k))
    index = {s: a for a, s in enumerate(basis)}
    weights = [
        tuple(sum(mod.weights[i][t] for i in s) for t in range(mod.datum.rank)) for s in basis
    ]

    def lift(mat):
        out = la.zeros(len(basis), len(basis))
        for a, s in enumerate(basis):
            for pos, i in enumerate(s):
                for j in range(mod.dim):
                    c = mat[j][i]
                    if not c or j in s:
                        continue
                    new = tuple(sorted(set(s) - {i} | {j}))
                    sign = (-1) ** (pos + new.index(j))
                    out[index[new]][a] += sign * c
        return out

    e_act = {i: lift(m) for i, m in mod.e_act.items()}
    f_act = {i: lift(m) for i, m in mod.f_act.items()}
    return _MatrixModule(mod.datum, mod.par, weights, e_act, f_act)


def _tensor(m1: _MatrixModule, m2: _MatrixModule) -> _MatrixModule:
    n1, n2 = m1.dim, m2.dim
    weights = [
        tuple(a + b for a, b in zip(m1.weights[i], m2.weights[j]))
        for i in range(n1)
        for j in range(n2)
    ]

    def lift(mat1, mat2):
        out = la.zeros(n1 * n2, n1 * n2)
        for i in range(n1):
            for j in range(n2):
                col = i * n2 + j
                for i2 in range(n1):
                    if mat1[i2][i]:
                        out[i2 * n2 + j][col] += mat1[i2][i]
                for j2 in range(n2):
                    if mat2[j2][j]:
                        out[i * n2 + j2][col] += mat2[j2][j]
        return out

    par = m1.par
    zero1, zero2 = la.zeros(n1, n1), la.zeros(n2, n2)
    e_act = {i: lift(m1.e_act.get(i, zero1), m2.e_act.get(i, zero2)) for i in par}
    f_act = {i: lift(m1.f_act.get(i, zero1), m2.f_act.get(i, zero2)) for i in par}
    return _MatrixModule(m1.datum, par, weights, e_act, f_act)


def _levi_coords(par: Par, w) -> tuple:
    return tuple(Fraction(w[i]) for i in sorted(par))


def _highest_weight_vector(mod: _MatrixModule, hw: Weight):
    """A vector of the right Levi weight killed by all raising operators."""
    target = _levi_coords(mod.par, hw)
    groups: dict = {}
    for b, w in enumerate(mod.weights):
        if _levi_coords(mod.par, w) == target:
            groups.setdefault(tuple(w), []).append(b)
    for _, idx in sorted(groups.items()):
        rows = []
        for i in mod.par:
            e = mod.e_act[i]
            for r in range(mod.dim):
                row = [e[r][b] for b in idx]
                if any(row):
                    rows.append(row)
        ker = la.nullspace(rows) if rows else la.identity(len(idx))
        if ker and ker[0]:
            vec = [Fraction(0)] * mod.dim
            for a, b in enumerate(idx):
                vec[b] = ker[a][0]
            return vec
    return None


def _apply(mat, vec):
    out = [Fraction(0)] * len(mat)
    for j, x in enumerate(vec):
        if x:
            for i in range(len(mat)):
                if mat[i][j]:
                    out[i] += mat[i][j] * x
    return out


def _generate_submodule(mod: _MatrixModule, seed, hw: Weight) -> ExplicitRep:
    """Span of the lowering orbit of a highest weight vector, with matrices."""
    datum = mod.datum
    basis: list = []
    basis_weights: list = []
    pivots: list = []

    def reduce(vec):
        v = vec[:]
        for p, b in zip(pivots, basis):
            if v[p]:
                c = v[p] / b[p]
                v = [x - c * y for x, y in zip(v, b)]
        return v

    def add(vec, wt):
        v = reduce(vec)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = Fraction(1) / v[piv]
        basis.append([x * inv for x in v])
        pivots.append(piv)
        basis_weights.append(wt)
        return True

    add(seed, hw)
    frontier = [0]
    while frontier:
        new = []
        for bi in frontier:
            vec = basis[bi]
            wt = basis_weights[bi]
            for i in mod.par:
                img = _apply(mod.f_act[i], vec)
                if any(img):
                    wti = tuple(
                        Fraction(wt[t]) - datum.cartan[t][i] for t in range(datum.rank)
                    )
                    if add(img, wti):
                        new.append(len(basis) - 1)
        frontier = new

    def in_basis(vec):
        v = vec[:]
        coords = [Fraction(0)] * len(basis)
        for k, (p, b) in enumerate(zip(pivots, basis)):
            if v[p]:
                c = v[p] / b[p]
                coords[k] = c
                v = [x - c * y for x, y in zip(v, b)]
        if any(v):
            raise AssertionError("vector escaped the generated submodule")
        return coords

    dim = len(basis)
    e_act, f_act = {}, {}
    for i in mod.par:
        em = la.zeros(dim, dim)
        fm = la.zeros(dim, dim)
        for c in range(dim):
            for rmat, store in ((mod.e_act[i], em), (mod.f_act[i], fm)):
                img = _apply(rmat, basis[c])
                if any(img):
                    for rr, val in enumerate(in_basis(img)):
                        if val:
                            store[rr][c] = val
        e_act[i] = em
        f_act[i] = fm
    return ExplicitRep(datum, mod.par, hw, dim, basis_weights, e_act, f_act)


def build_irrep(
    datum: RootDatum,
    hw: Weight,
    par: Par | None = None,
    depth_cap: int = DEFAULT_TENSOR_DEPTH,
    alternate_seeds: bool = False,
) -> ExplicitRep:
    """Irreducible L_par-module with highest weight hw (full group by default).

    Found as the lowering orbit of a highest weight vector inside tensor
    powers of the defining representation; `alternate_seeds` starts from an
    exterior square instead, giving an independent construction path.
    """
    if par is None:
        par = datum.full_par()
    hw = tuple(Fraction(x) for x in hw)
    coords = [hw[i] for i in sorted(par)]
    if any(c.denominator != 1 or c < 0 for c in coords):
        raise ValueError("highest weight must be dominant integral on the Levi")
    if datum.type_label == "B" and datum.rank - 1 in par and hw[datum.rank - 1].numerator % 2:
        raise DepthExceeded("spin weights are out of reach of the natural seed")
    if datum.type_label == "D":
        for i in (datum.rank - 2, datum.rank - 1):
            if i in par and hw[i].numerator % 2:
                raise DepthExceeded("half-spin weights are out of reach of the natural seed")
    key = ("irrep", par, hw, alternate_seeds)
    if key in datum._cache:
        return datum._cache[key]
    if all(c == 0 for c in coords):
        z = la.zeros(1, 1)
        rep = ExplicitRep(datum, par, hw, 1, [hw], {i: z for i in par}, {i: z for i in par})
        datum._cache[key] = rep
        return rep
    base = _module_from_defining(datum, par)
    mod = _exterior_power(base, 2) if alternate_seeds and base.dim >= 2 else base
    depth = 1
    seed = _highest_weight_vector(mod, hw)
    while seed is None:
        depth += 1
        if depth > depth_cap:
            raise DepthExceeded(f"no highest weight vector within tensor depth {depth_cap}")
        mod = _tensor(mod, base)
        seed = _highest_weight_vector(mod, hw)
    rep = _generate_submodule(mod, seed, hw)
    rep = _recenter(rep, hw)
    expected = weyl_dim(datum, hw, par)
    if rep.dim != expected:
        raise AssertionError(f"dimension {rep.dim} != Weyl dimension {expected}")
    datum._cache[key] = rep
    return rep


def _recenter(rep: ExplicitRep, hw: Weight) -> ExplicitRep:
    """Shift the central character so the top weight equals hw exactly."""
    shift = tuple(Fraction(h) - Fraction(w) for h, w in zip(hw, rep.weights[0]))
    if any(shift):
        rep = ExplicitRep(
            rep.datum,
            rep.par,
            hw,
            rep.dim,
            [tuple(Fraction(x) + s for x, s in zip(w, shift)) for w in rep.weights],
            rep.e_act,
            rep.f_act,
        )
    return rep


# ---------------------------------------------------------------------------
# Freudenthal multiplicities and characters.


def _sub_rho_roots(datum: RootDatum, par: Par):
    acc = [Fraction(0)] * datum.rank
    for g in datum.levi_positive_roots(par):
        for t in range(datum.rank):
            acc[t] += Fraction(g[t], 2)
    return tuple(acc)


def freudenthal(datum: RootDatum, hw: Weight, par: Par | None = None) -> dict:
    """Weight multiplicities of the L_par-irreducible with highest weight hw."""
    if par is None:
        par = datum.full_par()
    hw = tuple(Fraction(x) for x in hw)
    for i in par:
        if hw[i].denominator != 1 or hw[i] < 0:
            raise ValueError("not Levi-dominant-integral")
    key = ("freudenthal", par, hw)
    if key in datum._cache:
        return datum._cache[key]
    positives = datum.levi_positive_roots(par)
    rho_r = _sub_rho_roots(datum, par)
    lam_r = datum.weight_to_root_coords(hw)
    lam_rho = tuple(a + b for a, b in zip(lam_r, rho_r))
    top = datum.form_roots(lam_rho, lam_rho)
    root_w = {g: datum.root_to_weight(g) for g in positives}

    mult = {hw: 1}
    layer = [hw]
    while layer:
        children = set()
        for mu in layer:
            for i in par:
                children.add(
                    tuple(Fraction(mu[t]) - datum.cartan[t][i] for t in range(datum.rank))
                )
        nxt = []
        for child in sorted(children):
            if child in mult:
                continue
            child_r = datum.weight_to_root_coords(child)
            mu_rho = tuple(a + b for a, b in zip(child_r, rho_r))
            denom = top - datum.form_roots(mu_rho, mu_rho)
            if denom <= 0:
                continue
            ht_gap = sum(
                a - b for a, b in zip(lam_r, child_r)
            )  # height of hw - child, > 0 here
            acc = Fraction(0)
            for g in positives:
                hg = sum(g)
                kmax = int(ht_gap // hg)
                for k in range(1, kmax + 1):
                    up = tuple(
                        Fraction(child[t]) + k * Fraction(root_w[g][t])
                        for t in range(datum.rank)
                    )
                    m = mult.get(up, 0)
                    if m:
                        upr = tuple(a + k * Fraction(b) for a, b in zip(child_r, g))
                        acc += m * datum.form_roots(upr, g)
            val = 2 * acc / denom
            if val.denominator != 1:
                raise AssertionError("non-integer Freudenthal multiplicity")
            if val:
                mult[child] = int(val)
                nxt.append(child)
        layer = nxt
    datum._cache[key] = mult
    return mult


def weyl_dim(datum: RootDatum, hw: Weight, par: Par | None = None) -> int:
    if par is None:
        par = datum.full_par()
    hw = tuple(Fraction(x) for x in hw)
    rho = datum.rho()
    num = Fraction(1)
    den = Fraction(1)
    for g in datum.levi_positive_roots(par):
        num *= datum.pairing(datum.weight_add(hw, rho), g)
        den *= datum.pairing(rho, g)
    val = num / den
    if val.denominator != 1:
        raise AssertionError("Weyl dimension is not an integer")
    return int(val)


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg cohomology of nilradicals.


def _nil_action_mats(datum: RootDatum, rep: ExplicitRep, roots):
    """Matrices of positive root vectors on rep, via the stored bracket words."""
    alg = build_chevalley(datum)
    mats: dict = {}

    def mat_for(g):
        if g in mats:
            return mats[g]
        i, smaller = alg.bracket_words[g]
        m = rep.e_act[i] if smaller is None else _bracket(rep.e_act[i], mat_for(smaller))
        mats[g] = m
        return m

    for g in roots:
        mat_for(g)
    return mats


class CEComplex:
    """The complex Hom(Lambda n_P^Q, E) with its differential and Levi action."""

    def __init__(self, datum: RootDatum, p: Par, q: Par, rep: ExplicitRep, cap=DEFAULT_CE_CAP):
        if not p <= q:
            raise ValueError("need P <= Q")
        if rep.par != q:
            raise ValueError("rep is not an L_Q-module")
        nil = [tuple(g) for g in datum.nilradical_roots(p, q)]
        if len(nil) > cap:
            raise CapExceeded(f"dim n = {len(nil)} exceeds cap {cap}")
        self.datum = datum
        self.p = p
        self.q = q
        self.rep = rep
        self.nil = nil
        self.alg = build_chevalley(datum)
        self.act = _nil_action_mats(datum, rep, nil)
        self.nil_w = [datum.root_to_weight(g) for g in nil]
        self.nil_index = {g: t for t, g in enumerate(nil)}
        n = len(nil)
        self.bases = [self._basis(k) for k in range(n + 1)]
        self.index = [{(s, v): a for a, (s, v, _) in enumerate(b)} for b in self.bases]
        self.diffs = [self._differential(k) for k in range(n)]
        for k in range(n - 1):
            if not la.is_zero(la.mat_mul(self.diffs[k + 1], self.diffs[k])):
                raise AssertionError("d^2 != 0 in the Chevalley-Eilenberg complex")

    def _basis(self, k):
        out = []
        n = len(self.nil)
        r = self.datum.rank
        for s in itertools.combinations(range(n), k):
            w_s = [Fraction(0)] * r
            for t in s:
                for a in range(r):
                    w_s[a] -= self.nil_w[t][a]
            for v in range(self.rep.dim):
                w = tuple(Fraction(self.rep.weights[v][a]) + w_s[a] for a in range(r))
                out.append((s, v, w))
        return out

    def _differential(self, k):
        n = len(self.nil)
        dim_e = self.rep.dim
        rows = len(self.bases[k + 1])
        cols = len(self.bases[k])
        d = la.zeros(rows, cols)
        for row, (t, v, _) in enumerate(self.bases[k + 1]):
            # evaluate d(phi) on the slot tuple t; phi ranges over C^k
            for j, tj in enumerate(t):
                rest = t[:j] + t[j + 1 :]
                sign = (-1) ** j
                mat = self.act[self.nil[tj]]
                # term: (-1)^j x_{tj} . phi(rest)
                for vv in range(dim_e):
                    c = mat[v][vv]
                    if c:
                        d[row][self.index[k][(rest, vv)]] += sign * c
            for i, j in itertools.combinations(range(k + 1), 2):
                gi, gj = self.nil[t[i]], self.nil[t[j]]
                coeff = self.alg.constants.get((gi, gj), Fraction(0))
                if not coeff:
                    continue
                summ = tuple(a + b for a, b in zip(gi, gj))
                slot = self.nil_index.get(summ)
                if slot is None or slot in t:
                    continue
                rest = tuple(x for pos, x in enumerate(t) if pos not in (i, j))
                new = tuple(sorted(rest + (slot,)))
                sign = (-1) ** (i + j) * (-1) ** new.index(slot)
                d[row][self.index[k][(new, v)]] += sign * coeff
        return d

    def levi_raising(self, i: int):
        """Matrices of e_i (i in Delta^P) on each C^k."""
        key = ("levi_e", i)
        if not hasattr(self, "_levi_cache"):
            self._levi_cache = {}
        if key in self._levi_cache:
            return self._levi_cache[key]
        datum = self.datum
        n = len(self.nil)
        a_i = tuple(1 if t == i else 0 for t in range(datum.rank))
        mats = []
        for k in range(n + 1):
            dim = len(self.bases[k])
            m = la.zeros(dim, dim)
            for col, (s, v, _) in enumerate(self.bases[k]):
                for r in range(self.rep.dim):
                    c = self.rep.e_act[i][r][v]
                    if c:
                        m[self.index[k][(s, r)]][col] += c
                for pos, t in enumerate(s):
                    g = self.nil[t]
                    lower = tuple(x - y for x, y in zip(g, a_i))
                    li = self.nil_index.get(lower)
                    if li is None or li in s:
                        continue
                    c = self.alg.constants.get((a_i, lower), Fraction(0))
                    if not c:
                        continue
                    new = tuple(sorted(set(s) - {t} | {li}))
                    sign = (-1) ** (pos + new.index(li))
                    m[self.index[k][(new, v)]][col] += -sign * c
            mats.append(m)
        self._levi_cache[key] = mats
        return mats

    def cohomology_hw(self) -> dict:
        """{(degree, weight): highest-weight multiplicity in H} for the P-Levi."""
        out: dict = {}
        n = len(self.nil)
        levi_e = {i: self.levi_raising(i) for i in self.p}
        for k in range(n + 1):
            by_weight: dict = {}
            for a, (_, _, w) in enumerate(self.bases[k]):
                by_weight.setdefault(w, []).append(a)
            for w, cols in sorted(by_weight.items()):
                if any(Fraction(w[i]).denominator != 1 or w[i] < 0 for i in self.p):
                    continue
                m = self._hw_mult(k, w, cols, by_weight, levi_e)
                if m:
                    out[(k, w)] = m
        return out

    def _block(self, mat, rows, cols):
        return [[mat[r][c] for c in cols] for r in rows]

    def _hw_mult(self, k, w, cols, by_weight, levi_e):
        n = len(self.nil)
        sub = len(cols)
        if k < n and self.diffs[k] and sub:
            rows = [r for r in range(len(self.diffs[k])) if any(self.diffs[k][r][c] for c in cols)]
            blk = self._block(self.diffs[k], rows, cols)
            z = la.nullspace(blk) if blk else la.identity(sub)
        else:
            z = la.identity(sub)
        zcols = len(z[0]) if z else 0
        if not zcols:
            return 0
        if k > 0 and self.diffs[k - 1] and self.diffs[k - 1][0]:
            img = self._block(self.diffs[k - 1], cols, range(len(self.diffs[k - 1][0])))
            b_rank = la.rank(img)
        else:
            img = None
            b_rank = 0
        constraints: list = []
        for i in self.p:
            e = levi_e[i][k]
            a_i_w = self.datum.root_to_weight(tuple(1 if t == i else 0 for t in range(self.datum.rank)))
            wt_up = tuple(Fraction(w[t]) + a_i_w[t] for t in range(self.datum.rank))
            up_cols = by_weight.get(wt_up, [])
            if not up_cols:
                continue
            ez = [
                [sum(e[r][cols[c]] * z[c][j] for c in range(sub)) for j in range(zcols)]
                for r in up_cols
            ]
            if k > 0 and self.diffs[k - 1] and self.diffs[k - 1][0]:
                img_up = self._block(self.diffs[k - 1], up_cols, range(len(self.diffs[k - 1][0])))
            else:
                img_up = None
            if img_up and any(any(r) for r in img_up):
                left = la.nullspace(la.transpose(img_up))
                if left and left[0]:
                    constraints.extend(la.mat_mul(la.transpose(left), ez))
            else:
                constraints.extend(ez)
        constraints = [r for r in constraints if any(r)]
        sol_dim = zcols - (la.rank(constraints) if constraints else 0)
        return sol_dim - b_rank


def ce_cohomology(
    datum: RootDatum, p: Par, q: Par, rep: ExplicitRep, cap: int = DEFAULT_CE_CAP
) -> dict:
    """H(n_P^Q; rep) as {(degree, highest weight): multiplicity} over the P-Levi."""
    return CEComplex(datum, p, q, rep, cap).cohomology_hw()


# ---------------------------------------------------------------------------
# Euler characteristic identity.


def _char_convolve(c1: dict, c2: dict) -> dict:
    out: dict = {}
    for w1, m1 in c1.items():
        for w2, m2 in c2.items():
            w = tuple(Fraction(a) + Fraction(b) for a, b in zip(w1, w2))
            v = out.get(w, 0) + m1 * m2
            if v:
                out[w] = v
            elif w in out:
                del out[w]
    return out


def euler_character_check(datum: RootDatum, p: Par, hw: Weight) -> bool:
    """Alternating Kostant character sum = Euler character of the nil complex."""
    hw = tuple(Fraction(x) for x in hw)
    rho = datum.rho()
    lhs: dict = {}
    for w in datum.coset_reps(p):
        lam = datum.weight_add(datum.weyl_apply(w, datum.weight_add(hw, rho)), rho, sign=-1)
        sign = (-1) ** w.length
        for wt, m in freudenthal(datum, lam, p).items():
            v = lhs.get(wt, 0) + sign * m
            if v:
                lhs[wt] = v
            elif wt in lhs:
                del lhs[wt]
    rhs = dict(freudenthal(datum, hw))
    zero = tuple(Fraction(0) for _ in range(datum.rank))
    for g in datum.nilradical_roots(p):
        gw = datum.root_to_weight(g)
        neg = tuple(-Fraction(x) for x in gw)
        rhs = _char_convolve(rhs, {zero: 1, neg: -1})
    return lhs == rhs

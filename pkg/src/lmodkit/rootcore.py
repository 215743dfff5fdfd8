"""Root systems, Weyl groups, parabolic subsets, and split real form data.

Conventions used throughout the package:

* a "parabolic" is a subset S of {0..r-1} listing the simple roots of its
  Levi factor; the full set is the group itself, the empty set the minimal
  parabolic.  The order is subset inclusion.
* roots are integer vectors in simple-root coordinates,
* weights are tuples of Fraction in fundamental-weight coordinates, so the
  pairing with a simple coroot is just a coordinate lookup,
* cartan[i][j] = <alpha_j, alpha_i_vee>.

Everything is exact; nothing here touches floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ._linalg import Mat, identity, mat_eq, mat_mul, qmat, rref, solve, transpose

Par = frozenset  # parabolic type: frozenset of simple-root indices
Weight = tuple  # tuple of Fraction, fundamental-weight coordinates
Root = tuple  # tuple of int, simple-root coordinates


class UnsupportedGroup(ValueError):
    pass


_POS_COUNT = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "G": lambda r: 6,
}


def _cartan_matrix(type_label: str, rank: int) -> list[list[int]]:
    """Cartan matrix with entry [i][j] = <alpha_j, alpha_i_vee>."""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def chain(i, j):
        a[i][j] = -1
        a[j][i] = -1

    if type_label == "A":
        if rank < 1:
            raise UnsupportedGroup("A requires rank >= 1")
        for i in range(rank - 1):
            chain(i, i + 1)
    elif type_label == "B":
        if rank < 2:
            raise UnsupportedGroup("B requires rank >= 2")
        for i in range(rank - 2):
            chain(i, i + 1)
        # alpha_{r-1} long, alpha_r short
        a[rank - 2][rank - 1] = -1
        a[rank - 1][rank - 2] = -2
    elif type_label == "C":
        if rank < 2:
            raise UnsupportedGroup("C requires rank >= 2")
        for i in range(rank - 2):
            chain(i, i + 1)
        # alpha_{r-1} short, alpha_r long
        a[rank - 2][rank - 1] = -2
        a[rank - 1][rank - 2] = -1
    elif type_label == "D":
        if rank < 3:
            raise UnsupportedGroup("D requires rank >= 3")
        for i in range(rank - 3):
            chain(i, i + 1)
        chain(rank - 3, rank - 2)
        chain(rank - 3, rank - 1)
    elif type_label == "G":
        if rank != 2:
            raise UnsupportedGroup("G requires rank 2")
        a[0][1] = -3
        a[1][0] = -1
    else:
        raise UnsupportedGroup(f"unknown type {type_label!r}")
    return a


def _symmetrizer(cartan: list[list[int]]) -> list[int]:
    """Minimal positive integers d with diag(d) @ cartan symmetric."""
    r = len(cartan)
    d = [Fraction(0)] * r
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(r):
            for j in range(r):
                if cartan[i][j] and d[i] and not d[j]:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    changed = True
    if any(not x for x in d):
        raise UnsupportedGroup("disconnected Dynkin diagram")
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    d = [x * lcm for x in d]
    g = 0
    for x in d:
        g = _gcd(g, x.numerator)
    return [int(x / g) for x in d]


def _gcd(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class WeylElem:
    """Group element given by a reduced word and its action on root coordinates."""

    word: tuple[int, ...]
    mat: tuple  # image of alpha_j in column j, root coordinates
    inv: tuple  # matrix of the inverse element

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self):
        return "s" + "".join(str(i + 1) for i in self.word) if self.word else "e"


def _mat_apply(mat, vec):
    r = len(vec)
    return tuple(sum(mat[k][j] * vec[j] for j in range(r)) for k in range(r))


def _mat_prod(a, b):
    r = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)) for i in range(r)
    )


class RootDatum:
    """A split reduced root datum of rank <= 4 with optional Satake node data."""

    def __init__(self, type_label: str, rank: int, sigma_nodes: frozenset | None = None):
        if rank > 4:
            raise UnsupportedGroup("rank must be <= 4")
        self.type_label = type_label
        self.rank = rank
        self.cartan = _cartan_matrix(type_label, rank)
        self.symmetrizer = _symmetrizer(self.cartan)
        if sigma_nodes is not None:
            sigma_nodes = frozenset(sigma_nodes)
            if not sigma_nodes or any(i < 0 or i >= rank for i in sigma_nodes):
                raise UnsupportedGroup("sigma nodes must be a nonempty set of simple-root indices")
        self.sigma_nodes = sigma_nodes
        self.pos_roots = self._generate_positive_roots()
        expected = _POS_COUNT[type_label](rank)
        if len(self.pos_roots) != expected:
            raise AssertionError("positive root count mismatch")
        # bilinear form on root coordinates: B[i][j] = (alpha_i, alpha_j)
        self.form = [
            [self.symmetrizer[i] * self.cartan[i][j] for j in range(rank)] for i in range(rank)
        ]
        self._cartan_q = qmat(self.cartan)
        self._cartan_inv = self._invert(self._cartan_q)
        self._weyl: list[WeylElem] | None = None
        self._by_mat: dict | None = None
        self._cache: dict = {}

    # -- construction helpers ------------------------------------------------

    def _generate_positive_roots(self):
        r = self.rank
        simples = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
        roots = set(simples)
        frontier = set(simples)
        while frontier:
            new = set()
            for c in frontier:
                for i in range(r):
                    img = self._reflect_root(i, c)
                    if img not in roots and any(x > 0 for x in img):
                        if all(x >= 0 for x in img):
                            new.add(img)
            roots |= new
            frontier = new
        return sorted(roots, key=lambda c: (sum(c), c))

    def _reflect_root(self, i: int, c: Root) -> Root:
        pairing = sum(self.cartan[i][j] * c[j] for j in range(self.rank))
        out = list(c)
        out[i] -= pairing
        return tuple(out)

    @staticmethod
    def _invert(m: Mat) -> Mat:
        n = len(m)
        aug = [list(m[i]) + list(identity(n)[i]) for i in range(n)]
        r, pivots = rref(aug)
        if pivots != list(range(n)):
            raise ArithmeticError("singular matrix")
        return [row[n:] for row in r]

    # -- basic weight arithmetic ----------------------------------------------

    def zero_weight(self) -> Weight:
        return tuple(Fraction(0) for _ in range(self.rank))

    def rho(self) -> Weight:
        return tuple(Fraction(1) for _ in range(self.rank))

    def root_to_weight(self, c: Root) -> Weight:
        return tuple(
            Fraction(sum(self.cartan[i][j] * c[j] for j in range(self.rank)))
            for i in range(self.rank)
        )

    def weight_to_root_coords(self, m: Weight) -> tuple:
        col = [[Fraction(x)] for x in m]
        sol = mat_mul(self._cartan_inv, col)
        return tuple(row[0] for row in sol)

    def form_roots(self, c1, c2) -> Fraction:
        return sum(
            Fraction(c1[i]) * Fraction(c2[j]) * self.form[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
            if c1[i] and c2[j]
        )

    def pairing(self, mu: Weight, gamma: Root) -> Fraction:
        """<mu, gamma_vee> for gamma a root in simple-root coordinates."""
        num = 2 * sum(Fraction(gamma[i]) * self.symmetrizer[i] * Fraction(mu[i]) for i in range(self.rank))
        return num / self.form_roots(gamma, gamma)

    def weight_add(self, a: Weight, b: Weight, sign: int = 1) -> Weight:
        return tuple(Fraction(x) + sign * Fraction(y) for x, y in zip(a, b))

    def reflect_weight(self, i: int, m: Weight) -> Weight:
        mi = m[i]
        return tuple(
            Fraction(m[j]) - mi * self.cartan[j][i] for j in range(self.rank)
        )

    def apply_word(self, word, m: Weight) -> Weight:
        for i in reversed(word):
            m = self.reflect_weight(i, m)
        return m

    def weyl_apply(self, w: WeylElem, m: Weight) -> Weight:
        return self.apply_word(w.word, m)

    # -- Weyl group -----------------------------------------------------------

    def simple_reflection_mat(self, i: int):
        r = self.rank
        return tuple(
            tuple((1 if k == j else 0) - (self.cartan[i][j] if k == i else 0) for j in range(r))
            for k in range(r)
        )

    def weyl_group(self) -> list[WeylElem]:
        if self._weyl is None:
            r = self.rank
            ident = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
            e = WeylElem((), ident, ident)
            elems = {ident: e}
            frontier = [e]
            smats = [self.simple_reflection_mat(i) for i in range(r)]
            while frontier:
                new = []
                for w in frontier:
                    for i in range(r):
                        m = _mat_prod(w.mat, smats[i])
                        if m not in elems:
                            wi = WeylElem(w.word + (i,), m, _mat_prod(smats[i], w.inv))
                            elems[m] = wi
                            new.append(wi)
                frontier = new
            self._weyl = sorted(elems.values(), key=lambda w: (w.length, w.word))
            self._by_mat = {w.mat: w for w in self._weyl}
        return self._weyl

    def weyl_by_mat(self, mat) -> WeylElem:
        self.weyl_group()
        return self._by_mat[mat]

    def identity_elem(self) -> WeylElem:
        return self.weyl_group()[0]

    def multiply(self, a: WeylElem, b: WeylElem) -> WeylElem:
        return self.weyl_by_mat(_mat_prod(a.mat, b.mat))

    def inverse(self, a: WeylElem) -> WeylElem:
        return self.weyl_by_mat(a.inv)

    def phi_w(self, w: WeylElem) -> frozenset:
        """Positive roots gamma with w^{-1} gamma negative."""
        key = ("phi_w", w.mat)
        if key not in self._cache:
            out = []
            for g in self.pos_roots:
                img = _mat_apply(w.inv, g)
                if all(x <= 0 for x in img):
                    out.append(g)
            self._cache[key] = frozenset(out)
        return self._cache[key]

    def length_of_mat(self, mat) -> int:
        cnt = 0
        for g in self.pos_roots:
            if all(x <= 0 for x in _mat_apply(mat, g)):
                cnt += 1
        return cnt

    # -- parabolic combinatorics ------------------------------------------------

    def full_par(self) -> Par:
        return frozenset(range(self.rank))

    def all_parabolics(self) -> list[Par]:
        r = self.rank
        out = []
        for k in range(r + 1):
            for s in itertools.combinations(range(r), k):
                out.append(frozenset(s))
        return out

    def levi_positive_roots(self, par: Par) -> list[Root]:
        return [g for g in self.pos_roots if all(i in par for i in range(self.rank) if g[i])]

    def nilradical_roots(self, p: Par, q: Par | None = None) -> list[Root]:
        """Roots of n_P^Q: supported in Delta^Q but not in Delta^P."""
        if q is None:
            q = self.full_par()
        if not p <= q:
            raise ValueError("need P <= Q")
        out = []
        for g in self.pos_roots:
            supp = {i for i in range(self.rank) if g[i]}
            if supp <= q and not supp <= p:
                out.append(g)
        return out

    def dim_nilradical(self, p: Par, q: Par | None = None) -> int:
        return len(self.nilradical_roots(p, q))

    def complement_par(self, p: Par, q: Par) -> Par:
        """The parabolic (P,Q) opposite to Q relative to P."""
        if not p <= q:
            raise ValueError("need P <= Q")
        return frozenset(set(range(self.rank)) - (set(q) - set(p)))

    def codim_stratum(self, p: Par) -> int:
        return self.dim_nilradical(p) + (self.rank - len(p))

    def weyl_subgroup(self, par: Par) -> list[WeylElem]:
        key = ("subgrp", par)
        if key not in self._cache:
            levi = set(map(tuple, self.levi_positive_roots(par)))
            self._cache[key] = [w for w in self.weyl_group() if self.phi_w(w) <= levi]
        return self._cache[key]

    def longest_element(self, par: Par) -> WeylElem:
        key = ("w0", par)
        if key not in self._cache:
            w = self.identity_elem()
            changed = True
            while changed:
                changed = False
                for i in sorted(par):
                    a = tuple(1 if k == i else 0 for k in range(self.rank))
                    if all(x >= 0 for x in _mat_apply(w.mat, a)):
                        w = self.multiply(w, self.weyl_by_mat(self.simple_reflection_mat(i)))
                        # multiply on the right by s_i sends the full w image of
                        # alpha_i negative only when w alpha_i was positive
                        changed = True
            self._cache[key] = w
        return self._cache[key]

    def coset_reps(self, p: Par, q: Par | None = None) -> list[WeylElem]:
        """Minimal length representatives W_P^Q, enumerated exhaustively."""
        if q is None:
            q = self.full_par()
        if not p <= q:
            raise ValueError("need P <= Q")
        key = ("reps", p, q)
        if key not in self._cache:
            nil = set(map(tuple, self.nilradical_roots(p, q)))
            reps = [w for w in self.weyl_group() if self.phi_w(w) <= nil]
            reps.sort(key=lambda w: (w.length, w.word))
            n_q = len(self.weyl_subgroup(q))
            n_p = len(self.weyl_subgroup(p))
            if len(reps) * n_p != n_q:
                raise AssertionError("coset count mismatch")
            self._cache[key] = reps
        return self._cache[key]

    def factor(self, w: WeylElem, q: Par) -> tuple[WeylElem, WeylElem]:
        """Factor w = w^Q w_Q with w_Q the minimal representative in W^Q w."""
        wq = w
        changed = True
        while changed:
            changed = False
            for i in sorted(q):
                s = self.weyl_by_mat(self.simple_reflection_mat(i))
                cand = self.multiply(s, wq)
                if cand.length < wq.length:
                    wq = cand
                    changed = True
        w_upper = self.multiply(w, self.inverse(wq))
        return w_upper, wq

    # -- a_P decomposition -------------------------------------------------------

    def _levi_gram_data(self, par: Par):
        key = ("gram", par)
        if key not in self._cache:
            idx = sorted(par)
            gram = qmat([[self.form[i][j] for j in idx] for i in idx])
            self._cache[key] = (idx, gram)
        return self._cache[key]

    def project_to_levi_root_coords(self, x: tuple, par: Par) -> tuple:
        """Orthogonal projection onto span(Delta^P), in root coordinates."""
        if not par:
            return tuple(Fraction(0) for _ in range(self.rank))
        idx, gram = self._levi_gram_data(par)
        rhs = [[sum(Fraction(x[j]) * self.form[i][j] for j in range(self.rank))] for i in idx]
        coeff = solve(gram, rhs)
        out = [Fraction(0)] * self.rank
        for c, i in zip(coeff, idx):
            out[i] = c[0]
        return tuple(out)

    def project_to_levi(self, mu: Weight, par: Par) -> Weight:
        x = self.weight_to_root_coords(mu)
        proj = self.project_to_levi_root_coords(x, par)
        return self.root_to_weight_frac(proj)

    def restrict_to_aP(self, mu: Weight, par: Par) -> Weight:
        return self.weight_add(mu, self.project_to_levi(mu, par), sign=-1)

    def rho_decompose(self, par: Par) -> tuple[Weight, Weight]:
        """(half-sum of Levi positives, central complement) summing to rho."""
        rho = self.rho()
        levi = self.project_to_levi(rho, par)
        return levi, self.weight_add(rho, levi, sign=-1)

    def root_to_weight_frac(self, c: tuple) -> Weight:
        return tuple(
            sum(Fraction(self.cartan[i][j]) * Fraction(c[j]) for j in range(self.rank))
            for i in range(self.rank)
        )

    def coroot_vector(self, gamma: Root) -> tuple:
        """gamma_vee = 2 gamma/(gamma,gamma) in root coordinates."""
        norm = self.form_roots(gamma, gamma)
        return tuple(2 * Fraction(g) / norm for g in gamma)

    def coroot_aP(self, alpha_index: int, par: Par) -> tuple:
        """Projection of the coroot of a simple root onto a_P (root coords)."""
        if alpha_index in par:
            raise ValueError("alpha must restrict nontrivially to a_P")
        gamma = tuple(1 if k == alpha_index else 0 for k in range(self.rank))
        cv = self.coroot_vector(gamma)
        levi_part = self.project_to_levi_root_coords(cv, par)
        return tuple(a - b for a, b in zip(cv, levi_part))

    def pairing_aP(self, mu: Weight, alpha_index: int, par: Par) -> Fraction:
        """<mu, (gamma_vee)_P> for the simple root indexed alpha_index in Delta - Delta^P."""
        cv = self.coroot_aP(alpha_index, par)
        # pairing of a weight with an h-vector given in root coordinates:
        # <mu, gamma_vee> would be 2(mu,gamma)/(gamma,gamma); here cv already
        # encodes the covector, so evaluate (mu, cv) with the form directly.
        x = self.weight_to_root_coords(mu)
        return sum(
            x[i] * cv[j] * self.form[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
            if x[i] and cv[j]
        )

    def aP_root_classes(self, par: Par, q: Par | None = None):
        """Restriction classes of the roots of n_P^Q to a_P.

        Returns a sorted list of (projection, roots-in-class).
        """
        classes: dict = {}
        for g in self.nilradical_roots(par, q):
            levi = self.project_to_levi_root_coords(g, par)
            proj = tuple(Fraction(x) - y for x, y in zip(g, levi))
            classes.setdefault(proj, []).append(g)
        return sorted(classes.items())

    # -- split form involutions ----------------------------------------------------

    def tau_mat(self, par: Par):
        """Matrix of tau_P = -w0^P on root coordinates."""
        w0 = self.longest_element(par)
        return tuple(tuple(-x for x in row) for row in w0.mat)

    def tau_apply(self, par: Par, mu: Weight) -> Weight:
        w0 = self.longest_element(par)
        return tuple(-x for x in self.weyl_apply(w0, mu))

    def is_conj_self_contragredient(self, mu: Weight, par: Par) -> bool:
        """Whether the Levi part of mu is fixed by tau_P."""
        levi = self.project_to_levi(mu, par)
        return self.tau_apply(par, levi) == tuple(Fraction(x) for x in levi)

    def is_fundamental_weyl(self, w: WeylElem, p: Par, q: Par) -> bool:
        """Test w tau_Q w^{-1} = tau_P as linear maps."""
        tq = self.tau_mat(q)
        tp = self.tau_mat(p)
        lhs = _mat_prod(_mat_prod(w.mat, tq), w.inv)
        return lhs == tp

    def ell_alpha(self, w: WeylElem, cls_roots, par: Par) -> int:
        """Length contribution of one a_P-root class: #(class cap Phi_w)."""
        phiw = self.phi_w(w)
        return sum(1 for g in cls_roots if g in phiw)

    # -- split symmetric space dimensions -------------------------------------------

    def dim_symmetric_space(self, par: Par) -> int:
        return len(self.levi_positive_roots(par)) + len(par)

    def is_equal_rank_subset(self, par: Par) -> bool:
        """Split Levi factor is equal-rank iff its longest element acts by -1."""
        w0 = self.longest_element(par)
        for i in par:
            a = tuple(1 if k == i else 0 for k in range(self.rank))
            if _mat_apply(w0.mat, a) != tuple(-x for x in a):
                return False
        return True

    def dynkin_components(self, par: Par) -> list[frozenset]:
        left = set(par)
        comps = []
        while left:
            seed = min(left)
            comp = {seed}
            grew = True
            while grew:
                grew = False
                for i in list(left - comp):
                    if any(self.cartan[i][j] for j in comp):
                        comp.add(i)
                        grew = True
            comps.append(frozenset(comp))
            left -= comp
        return comps

    def vogan_marking(self, comp: frozenset) -> frozenset | None:
        """Marked nodes giving the split-form compact-Cartan root grading.

        Searches for a subset of the component whose parity grading makes the
        number of noncompact positive roots equal to half the dimension of the
        symmetric space, which pins the grading up to Weyl equivalence.  Only
        meaningful (and only defined) for equal-rank component types.
        """
        key = ("vogan", comp)
        if key in self._cache:
            return self._cache[key]
        result = None
        if self.is_equal_rank_subset(comp):
            pos = self.levi_positive_roots(comp)
            target = (len(pos) + len(comp))
            if target % 2 == 0:
                target //= 2
                for size in range(1, len(comp) + 1):
                    for marked in itertools.combinations(sorted(comp), size):
                        cnt = sum(1 for g in pos if sum(g[i] for i in marked) % 2)
                        if cnt == target:
                            result = frozenset(marked)
                            break
                    if result is not None:
                        break
        self._cache[key] = result
        return result

    def _noncompact(self, g: Root, marking_by_comp: dict) -> bool:
        supp = {i for i in range(self.rank) if g[i]}
        for comp, marked in marking_by_comp.items():
            if supp <= comp:
                return bool(sum(g[i] for i in marked) % 2)
        raise ValueError("root not inside a single marked component")

    def dim_DPV_detail(self, mu: Weight, par: Par):
        """Split-form dim D_P(V): (dimension, maximizing w) or None if unsupported.

        Requires the whole group and every Levi component to be of equal-rank
        type; the grading comes from a per-component Vogan marking and the
        choice of positive system is handled by scanning the Levi Weyl group.
        """
        if not self.is_equal_rank_subset(self.full_par()):
            return None
        marking_by_comp = {}
        for comp in self.dynkin_components(par):
            m = self.vogan_marking(comp)
            if m is None:
                return None
            marking_by_comp[comp] = m
        levi_pos = self.levi_positive_roots(par)
        best = None
        for w in self.weyl_subgroup(par):
            wmu = self.weyl_apply(w, mu)
            cnt = 0
            for g in levi_pos:
                if self.pairing(wmu, g) == 0 and self._noncompact(g, marking_by_comp):
                    cnt += 2  # both signs of the root
            if best is None or cnt > best[0]:
                best = (cnt, w)
        return best

    def dim_DPV(self, mu: Weight, par: Par):
        d = self.dim_DPV_detail(mu, par)
        return None if d is None else d[0]

    def dim_nP_V(self, mu: Weight, par: Par, nil_roots=None) -> int:
        """Split-form dim n_P(V): tau'-fixed part of the centralizer decomposition.

        The nilradical roots split into irreducible modules for the
        centralizer of w mu in the Levi; components whose root set is stable
        under the twisted involution w w0^P w^{-1} contribute their size.
        Maximized over the Levi Weyl group.
        """
        if nil_roots is None:
            nil_roots = self.nilradical_roots(par)
        nil = list(map(tuple, nil_roots))
        nil_set = set(nil)
        levi_pos = self.levi_positive_roots(par)
        w0 = self.longest_element(par)
        best = 0
        for w in self.weyl_subgroup(par):
            wmu = self.weyl_apply(w, mu)
            psi = [g for g in levi_pos if self.pairing(wmu, g) == 0]
            sigma = _mat_prod(_mat_prod(w.mat, w0.mat), w.inv)
            # connected components of the nilradical roots under psi-strings
            parent = {g: g for g in nil}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(x, y):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry

            for g in nil:
                for p in psi:
                    for sgn in (1, -1):
                        h = tuple(a + sgn * b for a, b in zip(g, p))
                        if h in nil_set:
                            union(g, h)
            comps: dict = {}
            for g in nil:
                comps.setdefault(find(g), set()).add(g)
            total = 0
            for comp in comps.values():
                image = {_mat_apply(sigma, g) for g in comp}
                if image == comp:
                    total += len(comp)
            best = max(best, total)
        return best

    def qw_set(self, par: Par) -> list[WeylElem]:
        """Chamber-indexing elements: w with w^{-1} Delta^P inside Delta."""
        simples = {tuple(1 if k == i else 0 for k in range(self.rank)) for i in range(self.rank)}
        out = []
        for w in self.weyl_group():
            ok = True
            for i in par:
                a = tuple(1 if k == i else 0 for k in range(self.rank))
                if _mat_apply(w.inv, a) not in simples:
                    ok = False
                    break
            if ok:
                out.append(w)
        return out


@lru_cache(maxsize=None)
def build_root_datum(type_label: str, rank: int, sigma_nodes=None) -> RootDatum:
    """Catalog constructor; sigma_nodes is an optional tuple of node indices."""
    nodes = frozenset(sigma_nodes) if sigma_nodes is not None else None
    return RootDatum(type_label, rank, nodes)


def parse_group(s: str) -> tuple[str, int]:
    s = s.strip()
    if len(s) < 2 or s[0].upper() not in "ABCDG":
        raise UnsupportedGroup(f"cannot parse group {s!r}")
    return s[0].upper(), int(s[1:])

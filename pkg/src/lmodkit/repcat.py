"""Graded Levi representations with isotypic-block morphisms.

Semisimplicity means a morphism never mixes distinct irreducibles, so a
graded module is a multiplicity dictionary and a morphism is a family of
rational matrices, one per (degree, irreducible) slot.  The Kostant functor,
cohomology, mapping cones, and the degree/weight truncations all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import _linalg as la
from .rootcore import Par, RootDatum, Weight


class Irr(NamedTuple):
    """An irreducible Levi module: the Levi subset and the highest weight."""

    par: Par
    hw: Weight

    def sort_key(self):
        return tuple(sorted(self.par)), self.hw


def make_irr(datum: RootDatum, par: Par, hw) -> Irr:
    hw = tuple(Fraction(x) for x in hw)
    for i in par:
        if hw[i].denominator != 1 or hw[i] < 0:
            raise ValueError(f"{hw} is not dominant integral on the Levi {sorted(par)}")
    return Irr(par, hw)


def xi_of(datum: RootDatum, v: Irr) -> Weight:
    """The central character: restriction of the highest weight to a_P."""
    return datum.restrict_to_aP(v.hw, v.par)


class GradedModule:
    """Finite map (degree, Irr) -> positive multiplicity."""

    def __init__(self, entries: dict | None = None):
        self.entries = {k: int(m) for k, m in (entries or {}).items() if m}
        for (deg, v), m in self.entries.items():
            if m < 0:
                raise ValueError("negative multiplicity")

    def mult(self, deg: int, v: Irr) -> int:
        return self.entries.get((deg, v), 0)

    def degrees(self):
        return sorted({d for d, _ in self.entries})

    def irreducibles(self):
        return sorted({v for _, v in self.entries}, key=lambda v: v.sort_key())

    def is_zero(self) -> bool:
        return not self.entries

    def total(self) -> int:
        return sum(self.entries.values())

    def shift(self, k: int) -> "GradedModule":
        return GradedModule({(d - k, v): m for (d, v), m in self.entries.items()})

    def direct_sum(self, other: "GradedModule") -> "GradedModule":
        out = dict(self.entries)
        for k, m in other.entries.items():
            out[k] = out.get(k, 0) + m
        return GradedModule(out)

    def __eq__(self, other):
        return isinstance(other, GradedModule) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def sorted_entries(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key()))

    def __repr__(self):
        parts = [f"deg {d}: {tuple(v.hw)} x{m}" for (d, v), m in self.sorted_entries()]
        return "GradedModule(" + "; ".join(parts) + ")"


class MalformedMorphism(ValueError):
    pass


class NotChainMap(ValueError):
    pass


@dataclass
class IsoMorphism:
    """Degree-`shift` morphism; blocks are keyed by the source slot."""

    source: GradedModule
    target: GradedModule
    shift: int
    blocks: dict

    def __post_init__(self):
        for (deg, v), mat in self.blocks.items():
            rows = self.target.mult(deg + self.shift, v)
            cols = self.source.mult(deg, v)
            if (len(mat), len(mat[0]) if mat else 0) != (rows, cols):
                raise MalformedMorphism(
                    f"block at degree {deg}, {v.hw} has shape "
                    f"{(len(mat), len(mat[0]) if mat else 0)}, expected {(rows, cols)}"
                )

    def block(self, deg: int, v: Irr) -> la.Mat:
        b = self.blocks.get((deg, v))
        if b is None:
            return la.zeros(self.target.mult(deg + self.shift, v), self.source.mult(deg, v))
        return b

    def is_zero(self) -> bool:
        return all(la.is_zero(b) for b in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, IsoMorphism):
            return NotImplemented
        if (self.source, self.target, self.shift) != (other.source, other.target, other.shift):
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(la.mat_eq(self.block(d, v), other.block(d, v)) for d, v in keys)


def zero_morphism(source: GradedModule, target: GradedModule, shift: int) -> IsoMorphism:
    return IsoMorphism(source, target, shift, {})


def identity_morphism(m: GradedModule) -> IsoMorphism:
    blocks = {k: la.identity(mult) for k, mult in m.entries.items()}
    return IsoMorphism(m, m, 0, blocks)


def compose(g: IsoMorphism, f: IsoMorphism) -> IsoMorphism:
    """g after f; shifts add."""
    if g.source != f.target:
        raise MalformedMorphism("composition shape mismatch")
    blocks = {}
    for (deg, v) in f.source.entries:
        a = g.block(deg + f.shift, v)
        b = f.block(deg, v)
        if a and b and a[0] and b[0]:
            m = la.mat_mul(a, b)
            if not la.is_zero(m):
                blocks[(deg, v)] = m
    return IsoMorphism(f.source, g.target, f.shift + g.shift, blocks)


def morphism_add(f: IsoMorphism, g: IsoMorphism, sign: int = 1) -> IsoMorphism:
    if (f.source, f.target, f.shift) != (g.source, g.target, g.shift):
        raise MalformedMorphism("sum shape mismatch")
    blocks = {}
    for key in set(f.blocks) | set(g.blocks):
        deg, v = key
        m = la.mat_add(f.block(deg, v), g.block(deg, v), sign=sign)
        if not la.is_zero(m):
            blocks[key] = m
    return IsoMorphism(f.source, f.target, f.shift, blocks)


def morphism_scale(f: IsoMorphism, c) -> IsoMorphism:
    blocks = {k: la.mat_scale(b, c) for k, b in f.blocks.items()}
    return IsoMorphism(f.source, f.target, f.shift, blocks)


@dataclass
class IsoComplex:
    module: GradedModule
    diff: IsoMorphism  # shift 1, source = target = module

    def __post_init__(self):
        if self.diff.shift != 1 or self.diff.source != self.module or self.diff.target != self.module:
            raise MalformedMorphism("differential must be a degree-1 endomorphism")
        dd = compose(self.diff, self.diff)
        if not dd.is_zero():
            raise NotChainMap("d^2 != 0")

    def shift(self, k: int) -> "IsoComplex":
        mod = self.module.shift(k)
        blocks = {
            (d - k, v): (la.mat_scale(b, -1) if k % 2 else b)
            for (d, v), b in self.diff.blocks.items()
        }
        return IsoComplex(mod, IsoMorphism(mod, mod, 1, blocks))

    def __eq__(self, other):
        return (
            isinstance(other, IsoComplex)
            and self.module == other.module
            and self.diff == other.diff
        )


def zero_complex() -> IsoComplex:
    m = GradedModule()
    return IsoComplex(m, zero_morphism(m, m, 1))


def complex_from_module(m: GradedModule) -> IsoComplex:
    return IsoComplex(m, zero_morphism(m, m, 1))


# ---------------------------------------------------------------------------
# The Kostant functor and its action on morphisms.


def kostant_slots(datum: RootDatum, p: Par, q: Par, deg: int, v: Irr):
    """[(w, target slot)] for one source slot of the link cohomology functor."""
    if v.par != q:
        raise ValueError("irreducible is not an L_Q-module")
    key = ("kslots", p, q, v.hw)
    cached = datum._cache.get(key)
    if cached is None:
        rho = datum.rho()
        cached = []
        for w in datum.coset_reps(p, q):
            hw = datum.weight_add(datum.weyl_apply(w, datum.weight_add(v.hw, rho)), rho, sign=-1)
            cached.append((w, w.length, make_irr(datum, p, hw)))
        datum._cache[key] = cached
    return [(w, (deg + length, irr)) for w, length, irr in cached]


def kostant_functor(datum: RootDatum, p: Par, q: Par, m: GradedModule) -> GradedModule:
    """H(n_P^Q; .) on graded modules: relabel along (deg, V) -> (deg + l(w), wV)."""
    out: dict = {}
    for (deg, v), mult in m.entries.items():
        for _, slot in kostant_slots(datum, p, q, deg, v):
            if slot in out:
                raise AssertionError("Kostant relabeling collision")
            out[slot] = mult
    return GradedModule(out)


def kostant_on_morphism(datum: RootDatum, p: Par, q: Par, f: IsoMorphism) -> IsoMorphism:
    src = kostant_functor(datum, p, q, f.source)
    tgt = kostant_functor(datum, p, q, f.target)
    blocks = {}
    for (deg, v), mat in f.blocks.items():
        for w, (sdeg, sv) in kostant_slots(datum, p, q, deg, v):
            blocks[(sdeg, sv)] = mat
    return IsoMorphism(src, tgt, f.shift, blocks)


# ---------------------------------------------------------------------------
# Cohomology.


def cohomology(c: IsoComplex) -> GradedModule:
    out: dict = {}
    for v in c.module.irreducibles():
        degs = sorted(d for d, vv in c.module.entries if vv == v)
        for d in degs:
            mult = c.module.mult(d, v)
            r_out = la.rank(c.diff.block(d, v))
            r_in = la.rank(c.diff.block(d - 1, v))
            h = mult - r_out - r_in
            if h:
                out[(d, v)] = h
    return GradedModule(out)


def cocycle_basis(c: IsoComplex, deg: int, v: Irr) -> la.Mat:
    """Columns spanning ker d at one slot."""
    mult = c.module.mult(deg, v)
    d = c.diff.block(deg, v)
    if not d or not d[0]:
        return la.identity(mult)
    return la.nullspace(d)


def boundary_basis(c: IsoComplex, deg: int, v: Irr) -> la.Mat:
    """Columns spanning im d at one slot."""
    prev = c.diff.block(deg - 1, v)
    if not prev or not prev[0]:
        return [[] for _ in range(c.module.mult(deg, v))]
    cols = la.transpose(prev)
    keep: list = []
    rk = 0
    for col in cols:
        trial = keep + [col]
        if la.rank(trial) > rk:
            keep = trial
            rk += 1
    return la.transpose(keep) if keep else [[] for _ in range(c.module.mult(deg, v))]


def induced_map_rank(phi: IsoMorphism, src: IsoComplex, tgt: IsoComplex, deg: int, v: Irr) -> int:
    """Rank of H(phi) at one slot, for a chain map phi of shift 0."""
    z = cocycle_basis(src, deg, v)
    if not z or not z[0]:
        return 0
    img = la.mat_mul(phi.block(deg, v), z)
    b = boundary_basis(tgt, deg, v)
    if b and b[0]:
        joined = [row_i + row_b for row_i, row_b in zip(img, b)]
        return la.rank(joined) - la.rank(b)
    return la.rank(img)


def is_chain_map(phi: IsoMorphism, src: IsoComplex, tgt: IsoComplex) -> bool:
    lhs = compose(tgt.diff, phi)
    rhs = compose(phi, src.diff)
    return lhs == rhs


def mapping_cone(phi: IsoMorphism, src: IsoComplex, tgt: IsoComplex) -> IsoComplex:
    """Cone of a shift-0 chain map between complexes over the same Levi."""
    if phi.shift != 0 or phi.source != src.module or phi.target != tgt.module:
        raise MalformedMorphism("cone needs a shift-0 map between the complexes")
    if not is_chain_map(phi, src, tgt):
        raise NotChainMap("cone of a non-chain map")
    s1 = src.module.shift(1)
    mod = s1.direct_sum(tgt.module)
    blocks = {}
    for v in mod.irreducibles():
        degs = {d for d, vv in mod.entries if vv == v}
        for d in degs:
            a = src.module.mult(d + 1, v)
            b = tgt.module.mult(d, v)
            a2 = src.module.mult(d + 2, v)
            b2 = tgt.module.mult(d + 1, v)
            if (a + b) == 0 or (a2 + b2) == 0:
                continue
            top = [
                [-x for x in row] + [Fraction(0)] * b
                for row in src.diff.block(d + 1, v)
            ]
            bot_left = phi.block(d + 1, v)
            bot_right = tgt.diff.block(d, v)
            bottom = [list(bl) + list(br) for bl, br in zip(bot_left, bot_right)]
            mat = top + bottom
            if mat and mat[0] and not la.is_zero(mat):
                blocks[(d, v)] = mat
    return IsoComplex(mod, IsoMorphism(mod, mod, 1, blocks))


# ---------------------------------------------------------------------------
# Degree truncation with explicit splittings.


def truncate_degree(c: IsoComplex, n) -> tuple[IsoComplex, IsoComplex, IsoMorphism, IsoMorphism]:
    """(tau_le, tau_gt, inclusion, projection) for the degree truncation at n.

    tau_le is the subcomplex (... C^{n-1} -> ker d^n -> 0), tau_gt the
    quotient (0 -> C^{n+1}/im d^n -> C^{n+2} ...); the chain maps realize the
    short exact sequence.
    """
    sub_entries: dict = {}
    quot_entries: dict = {}
    incl_blocks: dict = {}
    proj_blocks: dict = {}
    sub_diff: dict = {}
    quot_diff: dict = {}
    # per-irreducible bases
    kernels: dict = {}
    complements: dict = {}
    for (deg, v), mult in c.module.entries.items():
        if deg < n:
            sub_entries[(deg, v)] = mult
        elif deg == n:
            k = cocycle_basis(c, deg, v)
            kc = len(k[0]) if k else 0
            if kc:
                sub_entries[(deg, v)] = kc
                kernels[(deg, v)] = k
        if deg > n + 1:
            quot_entries[(deg, v)] = mult
        elif deg == n + 1:
            b = boundary_basis(c, deg, v)
            comp = la.column_space_projector_complement(b) if (b and b[0]) else la.identity(mult)
            qc = len(comp[0]) if comp else 0
            if qc:
                quot_entries[(deg, v)] = qc
                complements[(deg, v)] = (b, comp)
    sub_mod = GradedModule(sub_entries)
    quot_mod = GradedModule(quot_entries)

    for (deg, v), mult in sub_entries.items():
        if deg < n:
            incl_blocks[(deg, v)] = la.identity(c.module.mult(deg, v))
        else:
            incl_blocks[(deg, v)] = kernels[(deg, v)]
    for (deg, v) in sub_entries:
        if deg + 1 > n or (deg + 1, v) not in sub_entries:
            continue
        if deg + 1 < n:
            blk = c.diff.block(deg, v)
        else:
            # factor d^{n-1} through the kernel basis at degree n
            sol = la.solve(kernels[(deg + 1, v)], c.diff.block(deg, v))
            if sol is None:
                raise AssertionError("image does not lie in the kernel")
            blk = sol
        if not la.is_zero(blk):
            sub_diff[(deg, v)] = blk

    for (deg, v), qc in quot_entries.items():
        mult = c.module.mult(deg, v)
        if deg > n + 1:
            proj_blocks[(deg, v)] = la.identity(mult)
        else:
            b, comp = complements[(deg, v)]
            bc = len(b[0]) if (b and b[0]) else 0
            joined = [list(b[r]) + list(comp[r]) for r in range(mult)] if bc else comp
            inv_coords = la.solve(joined, la.identity(mult))
            proj_blocks[(deg, v)] = inv_coords[bc:]
    for (deg, v) in quot_entries:
        if (deg + 1, v) not in quot_entries:
            continue
        if deg > n + 1:
            blk = c.diff.block(deg, v)
        else:
            _, comp = complements[(deg, v)]
            blk = la.mat_mul(c.diff.block(deg, v), comp)
        if not la.is_zero(blk):
            quot_diff[(deg, v)] = blk

    sub = IsoComplex(sub_mod, IsoMorphism(sub_mod, sub_mod, 1, sub_diff))
    quot = IsoComplex(quot_mod, IsoMorphism(quot_mod, quot_mod, 1, quot_diff))
    incl = IsoMorphism(sub_mod, c.module, 0, {k: b for k, b in incl_blocks.items() if b and b[0]})
    proj = IsoMorphism(c.module, quot_mod, 0, {k: b for k, b in proj_blocks.items() if b and b[0]})
    if not is_chain_map(incl, sub, c) or not is_chain_map(proj, c, quot):
        raise AssertionError("truncation maps failed to be chain maps")
    return sub, quot, incl, proj


# ---------------------------------------------------------------------------
# Weight truncation.


@dataclass(frozen=True)
class WeightProfile:
    """eta = base + eps * rho with eps a formal positive infinitesimal."""

    base: Weight
    eps: int = 0  # 0 or 1

    def describe(self):
        return {"base": list(self.base), "eps": self.eps}


def lower_middle_profile(datum: RootDatum) -> WeightProfile:
    return WeightProfile(tuple(-x for x in datum.rho()), 0)


def upper_middle_profile(datum: RootDatum) -> WeightProfile:
    return WeightProfile(tuple(-x for x in datum.rho()), 1)


def concrete_epsilon(datum: RootDatum) -> Fraction:
    """A concrete positive value below every tie the infinitesimal can break:
    kept small against the central-character pairing at each maximal stratum."""
    worst = 1
    for i in range(datum.rank):
        r = frozenset(set(range(datum.rank)) - {i})
        c = cone_coords_aP(datum, datum.rho(), r)[0]
        worst = max(worst, abs(c.numerator * c.denominator))
    return Fraction(1, 1 + worst)


def cone_coords_aP(datum: RootDatum, mu: Weight, par: Par) -> list:
    """Coefficients of the a_P-part of mu in the restricted simple-root basis."""
    free = [i for i in range(datum.rank) if i not in par]
    if not free:
        return []
    target = datum.weight_to_root_coords(datum.restrict_to_aP(mu, par))
    cols = []
    for i in free:
        a = tuple(1 if k == i else 0 for k in range(datum.rank))
        levi = datum.project_to_levi_root_coords(a, par)
        cols.append([Fraction(a[t]) - levi[t] for t in range(datum.rank)])
    mat = la.transpose(cols)
    sol = la.solve(mat, [[x] for x in target])
    if sol is None:
        raise AssertionError("restricted simple roots failed to span a_P*")
    return [row[0] for row in sol]


def weight_geq(datum: RootDatum, xi: Weight, eta: WeightProfile, par: Par) -> bool:
    """xi >= eta_P in the coordinatewise order on a_P*."""
    diff = datum.weight_add(xi, eta.base, sign=-1)
    coords = cone_coords_aP(datum, diff, par)
    if eta.eps:
        eps_coords = cone_coords_aP(datum, datum.rho(), par)
        return all(c > 0 or (c == 0 and e <= 0) for c, e in zip(coords, eps_coords))
    return all(c >= 0 for c in coords)


def weight_truncate(
    datum: RootDatum, m: GradedModule, eta: WeightProfile, keep_geq: bool
) -> GradedModule:
    """Keep the entries with xi_V >= eta_P (or the complement)."""
    out = {}
    for (deg, v), mult in m.entries.items():
        xi = xi_of(datum, v)
        if weight_geq(datum, xi, eta, v.par) == keep_geq:
            out[(deg, v)] = mult
    return GradedModule(out)


def split_complex_by_weight(
    datum: RootDatum, c: IsoComplex, eta: WeightProfile, keep_geq: bool
) -> tuple[IsoComplex, IsoMorphism]:
    """The weight-truncation direct summand of a complex, with its inclusion
    (if keep_geq) given as a projection/injection pair packaged as inclusion."""
    keep = weight_truncate(datum, c.module, eta, keep_geq)
    diff = {}
    for (deg, v), b in c.diff.blocks.items():
        if (deg, v) in keep.entries and (deg + 1, v) in keep.entries:
            diff[(deg, v)] = b
    sub = IsoComplex(keep, IsoMorphism(keep, keep, 1, diff))
    incl = IsoMorphism(
        keep, c.module, 0, {k: la.identity(m) for k, m in keep.entries.items()}
    )
    return sub, incl


def euler_characteristic(m: GradedModule) -> dict:
    out: dict = {}
    for (deg, v), mult in m.entries.items():
        out[v] = out.get(v, 0) + (-1) ** deg * mult
    return {v: x for v, x in out.items() if x}

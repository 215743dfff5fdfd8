"""Deterministic splittable randomness and random test objects.

A small splitmix-style counter generator keyed by an integer seed; child
streams are derived from string tags so failure reports can name the exact
sub-case that produced an instance.
"""

from __future__ import annotations

from fractions import Fraction

from . import lmod as lm
from . import repcat as rc
from .rootcore import RootDatum

_MASK = (1 << 64) - 1


def _mix(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class Rng:
    def __init__(self, seed: int, path: str = ""):
        self.path = path
        self._state = _mix(seed & _MASK)
        for ch in path:
            self._state = _mix(self._state ^ ord(ch))
        self._counter = 0

    def child(self, tag: str) -> "Rng":
        r = Rng(self._state, self.path + "/" + tag)
        return r

    def _next(self) -> int:
        self._counter += 1
        self._state = _mix(self._state ^ self._counter)
        return self._state

    def randint(self, lo: int, hi: int) -> int:
        return lo + self._next() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self._next() % len(seq)]

    def fraction(self, span: int = 3) -> Fraction:
        return Fraction(self.randint(-span, span), self.randint(1, 2))


def random_graded_module(datum: RootDatum, par, rng: Rng, slots: int = 3) -> rc.GradedModule:
    entries = {}
    for _ in range(slots):
        deg = rng.randint(-1, 2)
        hw = [Fraction(0)] * datum.rank
        for i in range(datum.rank):
            hw[i] = Fraction(rng.randint(0, 2)) if i in par else Fraction(rng.randint(-2, 2))
        v = rc.make_irr(datum, par, tuple(hw))
        entries[(deg, v)] = entries.get((deg, v), 0) + rng.randint(1, 2)
    return rc.GradedModule(entries)


def random_complex(datum: RootDatum, par, rng: Rng) -> rc.IsoComplex:
    """Direct sum of elementary pieces with a random basis change."""
    entries: dict = {}
    pieces = []
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(-1, 1)
        hw = tuple(
            Fraction(rng.randint(0, 1)) if i in par else Fraction(rng.randint(-1, 1))
            for i in range(datum.rank)
        )
        v = rc.make_irr(datum, par, hw)
        kind = rng.choice(["point", "iso"])
        pieces.append((deg, v, kind))
        entries[(deg, v)] = entries.get((deg, v), 0) + 1
        if kind == "iso":
            entries[(deg + 1, v)] = entries.get((deg + 1, v), 0) + 1
    gm = rc.GradedModule(entries)
    # differential: one unit component per "iso" piece, tracked by slot cursor
    blocks: dict = {}
    cursor: dict = {}
    for deg, v, kind in pieces:
        c0 = cursor.get((deg, v), 0)
        cursor[(deg, v)] = c0 + 1
        if kind == "iso":
            r0 = cursor.get((deg + 1, v), 0)
            cursor[(deg + 1, v)] = r0 + 1
            rows = gm.mult(deg + 1, v)
            cols = gm.mult(deg, v)
            mat = blocks.setdefault((deg, v), [[Fraction(0)] * cols for _ in range(rows)])
            mat[r0][c0] = Fraction(rng.choice([1, 2, -1]))
    diff = rc.IsoMorphism(gm, gm, 1, {k: b for k, b in blocks.items() if not _allzero(b)})
    return rc.IsoComplex(gm, diff)


def _allzero(mat):
    return all(not x for row in mat for x in row)


def random_lmodule(datum: RootDatum, strata, rng: Rng) -> lm.LModule:
    """A random valid L-module: sums of pushforwards, then random truncations."""
    strata = frozenset(strata)
    parts = []
    for q in sorted(strata, key=lambda s: (len(s), sorted(s))):
        if rng.randint(0, 2):
            c = random_complex(datum, q, rng)
            if not c.module.is_zero():
                parts.append(lm.single_stratum(datum, strata, q, c))
    if not parts:
        q = max(strata, key=len)
        parts.append(lm.single_stratum(datum, strata, q, random_complex(datum, q, rng)))
    m = parts[0]
    for other in parts[1:]:
        m = _direct_sum(m, other)
    for _ in range(rng.randint(0, 2)):
        q = rng.choice(sorted(strata, key=lambda s: (len(s), sorted(s))))
        n = rng.randint(-1, 2)
        m = lm.tau_le_stratum(m, q, n)
    return m


def _direct_sum(m1: lm.LModule, m2: lm.LModule) -> lm.LModule:
    datum = m1.datum
    sums = {p: lm.SumModule([(0, m1.e[p]), (1, m2.e[p])]) for p in m1.strata}
    e = {p: sums[p].flat for p in m1.strata}
    f = {}
    for p in m1.strata:
        for q in m1.strata:
            if not p <= q:
                continue
            comp = {}
            a = m1.attach(p, q)
            b = m2.attach(p, q)
            if not a.is_zero():
                comp[(0, 0)] = a
            if not b.is_zero():
                comp[(1, 1)] = b
            if comp:
                src = lm.kostant_sum(datum, p, q, sums[q])
                f[(p, q)] = src.assemble(comp, sums[p], 1)
    return lm.LModule(datum, m1.strata, e, f)

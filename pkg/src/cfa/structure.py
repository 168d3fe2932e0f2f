"""Series, center, solvability, nilpotency and ideal search.

Submodules of an algebra R = C[d]^r / (torsion relations) are stored through
their preimage in C[d]^r, which always contains the torsion relations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import ConformalSuperalgebra, reduce_vec
from .modules import left_kernel
from .pdmodules import PdMatrix, PdSpan, Size, size_of
from .scalars import ONE, ZERO, DPoly

__all__ = [
    "Submodule",
    "SeriesResult",
    "whole",
    "zero_submodule",
    "derived_series",
    "lower_central_series",
    "center",
    "is_solvable",
    "is_nilpotent",
    "ideal_closure",
    "find_proper_ideal",
    "default_depth",
    "is_ideal",
]


def _col(R, vec):
    out = [[] for _ in range(R.rank)]
    for (g, e), c in reduce_vec(vec, R.torsion).items():
        lst = out[g]
        while len(lst) <= e:
            lst.append(ZERO)
        lst[e] = c
    return [DPoly(x) for x in out]


def _vec(col):
    return {(g, e): c for g, p in enumerate(col) for e, c in enumerate(p.coeffs) if c}


def _relations(R):
    cols = []
    for g, t in R.torsion.items():
        col = [DPoly()] * R.rank
        col[g] = DPoly([-t, ONE])
        cols.append(col)
    return cols


class Submodule:
    """C[d]-submodule of an algebra, given by generators (sparse vectors)."""

    def __init__(self, algebra: ConformalSuperalgebra, gens=()):
        self.algebra = algebra
        self.span = PdSpan(algebra.rank)
        self.span.extend(_relations(algebra))
        self.gens = []
        for g in gens:
            self.add(g)

    def add(self, vec) -> bool:
        vec = reduce_vec(vec, self.algebra.torsion)
        if not vec:
            return False
        changed = self.span.insert(_col(self.algebra, vec))
        if changed:
            self.gens.append(vec)
        return changed

    def contains(self, vec) -> bool:
        return self.span.contains(_col(self.algebra, vec))

    def columns(self):
        """Hermite basis of the preimage (torsion relations included)."""
        return self.span.columns()

    def basis_vectors(self):
        """Hermite columns with pure relation columns dropped."""
        rel = PdSpan(self.algebra.rank)
        rel.extend(_relations(self.algebra))
        return [_vec(c) for c in self.columns() if not rel.contains(c)]

    def is_zero(self):
        rel = PdSpan(self.algebra.rank)
        rel.extend(_relations(self.algebra))
        return all(rel.contains(c) for c in self.columns())

    def is_whole(self):
        R = self.algebra
        return all(self.contains({(i, 0): ONE}) for i in range(R.rank))

    def size(self) -> Size:
        """Size of the submodule itself (preimage modulo torsion relations)."""
        R = self.algebra
        P = self.columns()
        if not P:
            return Size(0, 0)
        track = PdSpan(R.rank, track=True)
        track.extend(P)
        rels = []
        for rc in _relations(R):
            coeffs = track.express(rc)
            rels.append(coeffs)
        return size_of(PdMatrix(len(P), rels))

    def equals(self, other) -> bool:
        return self.columns() == other.columns()

    def __le__(self, other):
        return all(other.span.contains(c) for c in self.columns())

    def describe(self):
        R = self.algebra
        from .algebra import vec_str
        return [vec_str(v, R.names) for v in self.basis_vectors()]

    def __repr__(self):
        return f"Submodule({self.describe()})"


def whole(R):
    return Submodule(R, [{(i, 0): ONE} for i in range(R.rank)])


def zero_submodule(R):
    return Submodule(R, [])


def _products_of(R, xs, ys):
    for x in xs:
        for y in ys:
            for n, v in R.products_vec(x, y).items():
                if v:
                    yield v


def _gen_vectors(R):
    return [{(i, 0): ONE} for i in range(R.rank)]


def is_ideal(S: Submodule) -> bool:
    R = S.algebra
    return all(S.contains(v) for v in _products_of(R, _gen_vectors(R), S.gens))


def default_depth(R):
    return R.rank + len(R.torsion) + 2


def derived_series(R, k=None, start=None):
    """[R, R', R'', ...] (k+1 members, or fewer if it stabilises)."""
    k = default_depth(R) if k is None else k
    cur = start if start is not None else whole(R)
    out = [cur]
    for _ in range(k):
        nxt = Submodule(R, list(_products_of(R, cur.gens, cur.gens)))
        out.append(nxt)
        if nxt.equals(cur) or nxt.is_zero():
            break
        cur = nxt
    return out


def lower_central_series(R, k=None):
    """[R, R^1, R^2, ...] with R^n spanned by products a_(j)b, b in R^(n-1)."""
    k = default_depth(R) if k is None else k
    cur = whole(R)
    out = [cur]
    gens = _gen_vectors(R)
    for _ in range(k):
        nxt = Submodule(R, list(_products_of(R, gens, cur.gens)))
        out.append(nxt)
        if nxt.equals(cur) or nxt.is_zero():
            break
        cur = nxt
    return out


@dataclass
class SeriesResult:
    """value: True / False / None (undecided at this depth)."""

    value: bool | None
    series: list = field(default_factory=list)
    depth: int = 0
    cross_check: bool | None = None

    def __bool__(self):
        return bool(self.value)

    @property
    def status(self):
        return {True: "yes", False: "no", None: f"unknown-at-depth-{self.depth}"}[self.value]


def _decide(series, depth):
    last = series[-1]
    if last.is_zero():
        return True
    if len(series) >= 2 and last.equals(series[-2]):
        return False
    return None


def is_solvable(R, k=None):
    k = default_depth(R) if k is None else k
    s = derived_series(R, k)
    return SeriesResult(_decide(s, k), s, k)


def _operator_nilpotent(R, limit_degree=3):
    """Every a^i_(n) acts nilpotently on d^q a^j, q <= limit_degree."""
    steps = (R.rank + 1) * (limit_degree + R.max_order() + 2) + 2
    for i in range(R.rank):
        a = {(i, 0): ONE}
        for n in range(max(R.max_order(), 1)):
            for j in range(R.rank):
                for q in range(limit_degree + 1):
                    x = reduce_vec({(j, q): ONE}, R.torsion)
                    for _ in range(steps):
                        if not x:
                            break
                        x = R.nth_vec(a, x, n)
                    if x:
                        return False
    return True


def is_nilpotent(R, k=None):
    k = default_depth(R) if k is None else k
    s = lower_central_series(R, k)
    val = _decide(s, k)
    cross = _operator_nilpotent(R) if val else None
    return SeriesResult(val, s, k, cross)


def center(R):
    """The center {x : x_(n) a^j = 0 for all j, n} as a Submodule."""
    lams = [[R.lam_vec({(i, 0): ONE}, {(j, 0): ONE}) for j in range(R.rank)] for i in range(R.rank)]
    cols = left_kernel(lams, list(range(R.rank)), R.torsion)
    return Submodule(R, [_vec(c) for c in cols] + [{(g, 0): ONE} for g in R.torsion])


def ideal_closure(R, seeds):
    """Least ideal containing ``seeds``."""
    S = Submodule(R)
    queue = []
    for v in seeds:
        if S.add(v):
            queue.append(reduce_vec(v, R.torsion))
    gens = _gen_vectors(R)
    while queue:
        v = queue.pop()
        for w in _products_of(R, gens, [v]):
            if S.add(w):
                queue.append(w)
    return S


def _candidate_seeds(R, rng, budget):
    r = R.rank
    gens = _gen_vectors(R)
    Z = center(R)
    if not Z.is_zero():
        yield Z.basis_vectors()
    yield from ([g] for g in gens)
    for g in R.torsion:
        yield [{(g, 0): ONE}]
    # kernels of a_(n) restricted to the C-span of generators
    from .linalg import nullspace
    for i in range(r):
        for n in range(max(R.max_order(), 1)):
            rows = {}
            for j in range(r):
                for key, c in R.nth_vec({(i, 0): ONE}, {(j, 0): ONE}, n).items():
                    rows.setdefault(key, {})[j] = c
            ker = nullspace(list(rows.values()), list(range(r)))
            for v in ker:
                if len(v) < r:
                    yield [{(j, 0): c for j, c in v.items()}]
    for a in range(r):
        for b in range(a + 1, r):
            yield [{(a, 0): ONE, (b, 0): ONE}]
    while True:
        yield [{(j, 0): ONE * rng.randint(-2, 2) for j in range(r) if rng.random() < 0.5}]


def find_proper_ideal(R, budget=None, solvable_only=False, seed=0):
    """Search for a proper nonzero ideal; returns a verified Submodule or None.

    ``None`` means none found within ``budget`` closures, which is evidence
    of simplicity, not a proof.
    """
    budget = 4 * R.rank + 8 if budget is None else budget
    rng = random.Random(seed)
    tried = 0
    seen = []
    for seeds in _candidate_seeds(R, rng, budget):
        if tried >= budget:
            break
        seeds = [s for s in seeds if reduce_vec(s, R.torsion)]
        if not seeds:
            continue
        tried += 1
        I = ideal_closure(R, seeds)
        if I.is_zero() or I.is_whole():
            continue
        if any(I.equals(J) for J in seen):
            continue
        seen.append(I)
        if not is_ideal(I):
            raise AssertionError("ideal closure is not closed")
        if solvable_only:
            ds = derived_series(R, default_depth(R), start=I)
            if not ds[-1].is_zero():
                continue
        return I
    return None

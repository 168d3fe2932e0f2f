"""Element-level arithmetic in the infinite conformal algebra gc_N.

An element A is the sequence of operators A_(n), n >= 0, on the free module
C[d]^N, recorded by the matrices ``A_(n) e_b`` (columns) for finitely many n.
On all of C[d]^N the operators act by the rule

    A_(j)(d^q v) = sum_r C(q, r) (j)_r d^(q-r) A_(j-r) v.

Only even elements are supported, so brackets are plain commutators.
"""

from __future__ import annotations

from math import comb, factorial

from .scalars import ZERO, DPoly, DimensionError, as_scalar

__all__ = ["GcElement", "gc_nth_product", "gc_d", "gc_order_bound", "gc_skew_defect", "gc_jacobi_defect"]

_Z = DPoly()


def _poly(x):
    return x if isinstance(x, DPoly) else DPoly.const(x)


def _falling(j, r):
    out = 1
    for t in range(r):
        out *= j - t
    return out


class GcElement:
    def __init__(self, N, mats=None):
        self.N = N
        clean = {}
        for n, M in (mats or {}).items():
            if n < 0:
                raise ValueError("gc modes are indexed by n >= 0")
            M = [[_poly(x) for x in row] for row in M]
            if len(M) != N or any(len(r) != N for r in M):
                raise DimensionError(f"mode {n} matrix is not {N}x{N}")
            if any(x for row in M for x in row):
                clean[n] = M
        self.mats = clean
        self._hash = None
        self._cache = {}

    @classmethod
    def zero(cls, N):
        return cls(N, {})

    def __eq__(self, other):
        return isinstance(other, GcElement) and self.N == other.N and self.mats == other.mats

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, tuple(sorted((n, tuple(map(tuple, M)))
                                                    for n, M in self.mats.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.mats)

    def __repr__(self):
        return f"GcElement(N={self.N}, support={sorted(self.mats)})"

    def max_mode(self):
        return max(self.mats, default=-1)

    def max_degree(self):
        return max((x.degree for M in self.mats.values() for row in M for x in row), default=0)

    def _check(self, other):
        if self.N != other.N:
            raise DimensionError(f"gc rank mismatch: {self.N} vs {other.N}")

    def __add__(self, other):
        self._check(other)
        out = {n: [row[:] for row in M] for n, M in self.mats.items()}
        for n, M in other.mats.items():
            if n in out:
                out[n] = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(out[n], M)]
            else:
                out[n] = M
        return GcElement(self.N, out)

    def __neg__(self):
        return GcElement(self.N, {n: [[-x for x in row] for row in M] for n, M in self.mats.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        return GcElement(self.N, {n: [[x * c for x in row] for row in M] for n, M in self.mats.items()})

    def column(self, n, b):
        M = self.mats.get(n)
        if M is None:
            return None
        return [M[a][b] for a in range(self.N)]

    def apply(self, j, vec):
        """A_(j) applied to a vector of DPoly (coefficients of e_1..e_N)."""
        out = [_Z] * self.N
        if j < 0:
            return out
        for b, p in enumerate(vec):
            for q, c in enumerate(p.coeffs):
                if not c:
                    continue
                for r in range(min(q, j) + 1):
                    col = self.column(j - r, b)
                    if col is None:
                        continue
                    f = c * comb(q, r) * _falling(j, r)
                    shift = DPoly.monomial(q - r, f)
                    out = [o + shift * x if x else o for o, x in zip(out, col)]
        return out


def _basis(N, b):
    return [DPoly.const(1) if a == b else _Z for a in range(N)]


def _on_basis(A, j, b):
    key = ("e", j, b)
    v = A._cache.get(key)
    if v is None:
        v = A._cache[key] = A.apply(j, _basis(A.N, b))
    return v


def _commutator_matrix(A, j, B, k):
    key = ("c", B, j, k)
    hit = A._cache.get(key)
    if hit is not None:
        return hit
    N = A.N
    cols = []
    for b in range(N):
        x = A.apply(j, _on_basis(B, k, b))
        y = B.apply(k, _on_basis(A, j, b))
        cols.append([u - v for u, v in zip(x, y)])
    out = [[cols[b][a] for b in range(N)] for a in range(N)]
    A._cache[key] = out
    return out


def gc_nth_product(A: GcElement, B: GcElement, m: int) -> GcElement:
    """(A_(m)B)_(n) = sum_j (-1)^(m+j) C(m,j) [A_(j), B_(m+n-j)]."""
    A._check(B)
    if m < 0:
        raise ValueError("m must be non-negative")
    N = A.N
    top = B.max_mode() + A.max_degree()
    out = {}
    for n in range(top + 1):
        acc = [[_Z] * N for _ in range(N)]
        for j in range(m + 1):
            k = m + n - j
            if k < 0:
                continue
            c = (-1) ** (m + j) * comb(m, j)
            C = _commutator_matrix(A, j, B, k)
            for a in range(N):
                for b in range(N):
                    if C[a][b]:
                        acc[a][b] = acc[a][b] + C[a][b] * as_scalar(c)
        out[n] = acc
    return GcElement(N, out)


def gc_d(A: GcElement, k=1) -> GcElement:
    """(dA)_(n) = -n A_(n-1), applied k times."""
    for _ in range(k):
        A = GcElement(A.N, {n + 1: [[x * as_scalar(-(n + 1)) for x in row] for row in M]
                            for n, M in A.mats.items()})
    return A


def gc_order_bound(A: GcElement, B: GcElement) -> int:
    """An m beyond which A_(m)B vanishes (checked, not proved, by the callers)."""
    return A.max_mode() + B.max_mode() + A.max_degree() + B.max_degree() + 2


def gc_skew_defect(A, B):
    """List of n where A_(n)B differs from the (C2) expansion of B_(.)A."""
    top = max(gc_order_bound(A, B), gc_order_bound(B, A))
    prods = {n: gc_nth_product(B, A, n) for n in range(top + 1)}
    bad = []
    for n in range(top + 1):
        rhs = GcElement.zero(A.N)
        for j in range(top - n + 1):
            P = prods.get(n + j)
            if not P:
                continue
            sign = 1 if (j + n + 1) % 2 == 0 else -1
            rhs = rhs + gc_d(P, j).scale(as_scalar(sign) / factorial(j))
        if gc_nth_product(A, B, n) != rhs:
            bad.append(n)
    return bad


def gc_jacobi_defect(A, B, C, mmax=None, nmax=None):
    """(m, n) pairs where A_(m)(B_(n)C) != sum_j C(m,j)(A_(j)B)_(m+n-j)C + B_(n)(A_(m)C)."""
    mmax = gc_order_bound(A, B) if mmax is None else mmax
    nmax = gc_order_bound(B, C) if nmax is None else nmax
    bad = []
    AB = {}
    for m in range(mmax + 1):
        AC = gc_nth_product(A, C, m)
        for n in range(nmax + 1):
            lhs = gc_nth_product(A, gc_nth_product(B, C, n), m)
            rhs = gc_nth_product(B, AC, n)
            for j in range(m + 1):
                if j not in AB:
                    AB[j] = gc_nth_product(A, B, j)
                if AB[j]:
                    rhs = rhs + gc_nth_product(AB[j], C, m + n - j).scale(comb(m, j))
            if lhs != rhs:
                bad.append((m, n))
    return bad

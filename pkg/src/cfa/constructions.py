"""Builders for the standard finite conformal superalgebras.

Vir, current algebras, the semidirect sum Vir + current, W_N, S_N, K_N and
CK_6.  S_N and CK_6 are produced as C[d]-subalgebras of W_N and K_6; their
products are computed in the ambient algebra and written back in the
subalgebra basis.
"""

from __future__ import annotations

from itertools import combinations

from .algebra import ConformalSuperalgebra, complete_mirror
from .lie import LieSuperalgebraData, builtin_lie
from .pdmodules import PdMatrix, PdSpan, kernel
from .scalars import I, ONE, ZERO, DPoly, as_scalar, mono_derive, mono_mul

__all__ = [
    "ClosureError",
    "make_virasoro",
    "make_current",
    "make_semidirect_vir_current",
    "make_WN",
    "make_SN",
    "make_KN",
    "make_CK6",
    "divergence",
    "WAlgebra",
    "subalgebra",
    "MAX_N",
]

MAX_N = 6


class ClosureError(RuntimeError):
    """A product of spanning elements left their C[d]-span."""


def _check_n(N):
    if not isinstance(N, int) or N < 0 or N > MAX_N:
        raise ValueError(f"N must be an integer in 0..{MAX_N}, got {N!r}")


def make_virasoro():
    return ConformalSuperalgebra([("L", 0)], {(0, 0, 0): {(0, 1): ONE}, (0, 0, 1): {(0, 0): 2 * ONE}},
                                 name="vir")


def _lie(g):
    if isinstance(g, str):
        return builtin_lie(g)
    if not isinstance(g, LieSuperalgebraData):
        raise TypeError("expected LieSuperalgebraData or a builtin name")
    return g


def make_current(g):
    g = _lie(g)
    prods = {}
    for (i, j), vec in g.table.items():
        prods[(i, j, 0)] = {(k, 0): c for k, c in vec.items()}
    return ConformalSuperalgebra(g.basis, prods, name=f"current({g.name})")


def make_semidirect_vir_current(g):
    g = _lie(g)
    gens = [("L", 0)] + list(g.basis)
    prods = {(0, 0, 0): {(0, 1): ONE}, (0, 0, 1): {(0, 0): 2 * ONE}}
    for a in range(1, len(gens)):
        prods[(0, a, 0)] = {(a, 1): ONE}
        prods[(0, a, 1)] = {(a, 0): ONE}
    for (i, j), vec in g.table.items():
        prods[(i + 1, j + 1, 0)] = {(k + 1, 0): c for k, c in vec.items()}
    prods = complete_mirror(gens, prods)
    return ConformalSuperalgebra(gens, prods, name=f"vir+current({g.name})")


# ---------------------------------------------------------------------------
# Grassmann helpers on dicts {mask: coeff}


def _gmul(f, g):
    out = {}
    for a, x in f.items():
        for b, y in g.items():
            r = mono_mul(a, b)
            if r is None:
                continue
            s, m = r
            v = out.get(m, ZERO) + (x * y if s > 0 else -(x * y))
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _gder(i, f):
    out = {}
    for a, x in f.items():
        r = mono_derive(i, a)
        if r is None:
            continue
        s, m = r
        out[m] = out.get(m, ZERO) + (x if s > 0 else -x)
    return {k: v for k, v in out.items() if v}


def _deg(mask):
    return bin(mask).count("1")


def _digits(mask):
    return "".join(str(i + 1) for i in range(MAX_N) if mask >> i & 1)


def _masks(N):
    return sorted(range(1 << N), key=lambda m: (_deg(m), [i for i in range(N) if m >> i & 1]))


class WAlgebra:
    """Index bookkeeping for W_N = C[d] (x) (W(N) + Lambda(N)).

    Generators: derivations ``xi_I D_i`` (name ``xI_Di``, parity |I|+1), then
    functions ``xi_I`` (name ``xI``; ``u`` for 1).
    """

    def __init__(self, N):
        _check_n(N)
        self.N = N
        self.masks = _masks(N)
        self.ders = [(m, i) for m in self.masks for i in range(1, N + 1)]
        gens, self.der_index, self.fun_index = [], {}, {}
        for m, i in self.ders:
            self.der_index[(m, i)] = len(gens)
            gens.append((f"x{_digits(m)}_D{i}" if m else f"D{i}", (_deg(m) + 1) & 1))
        for m in self.masks:
            self.fun_index[m] = len(gens)
            gens.append((f"x{_digits(m)}" if m else "u", _deg(m) & 1))
        self.generators = gens

    def der_vec(self, d):
        """``{(m, i): c}`` derivation to sparse vector at d-power 0."""
        return {(self.der_index[k], 0): c for k, c in d.items() if c}

    def fun_vec(self, f, power=0):
        return {(self.fun_index[m], power): c for m, c in f.items() if c}

    def bracket(self, a, b):
        """[P D_i, Q D_j] for monomial derivations."""
        (P, i), (Q, j) = a, b
        pa, pb = (_deg(P) + 1) & 1, (_deg(Q) + 1) & 1
        out = {}
        for m, c in _gmul({P: ONE}, _gder(i, {Q: ONE})).items():
            out[(m, j)] = out.get((m, j), ZERO) + c
        s = -1 if (pa & pb) else 1
        for m, c in _gmul({Q: ONE}, _gder(j, {P: ONE})).items():
            out[(m, i)] = out.get((m, i), ZERO) - s * c
        return {k: v for k, v in out.items() if v}

    def apply(self, a, f):
        P, i = a
        return _gmul({P: ONE}, _gder(i, {f: ONE}))

    def products(self):
        prods = {}
        for a in self.ders:
            ia = self.der_index[a]
            pa = (_deg(a[0]) + 1) & 1
            for b in self.ders:
                v = self.der_vec(self.bracket(a, b))
                if v:
                    prods[(ia, self.der_index[b], 0)] = v
            for f in self.masks:
                jf = self.fun_index[f]
                v = self.fun_vec(self.apply(a, f))
                if v:
                    prods[(ia, jf, 0)] = v
                s = -1 if (pa & _deg(f) & 1) else 1
                fa = _gmul({f: ONE}, {a[0]: ONE})
                v = self.der_vec({(m, a[1]): -s * c for m, c in fa.items()})
                if v:
                    prods[(ia, jf, 1)] = v
        for f in self.masks:
            for g in self.masks:
                fg = _gmul({f: ONE}, {g: ONE})
                if fg:
                    prods[(self.fun_index[f], self.fun_index[g], 0)] = self.fun_vec(
                        {m: -c for m, c in fg.items()}, power=1)
                    prods[(self.fun_index[f], self.fun_index[g], 1)] = self.fun_vec(
                        {m: -2 * c for m, c in fg.items()})
        return prods

    def divergence_matrix(self):
        """div as a 2^N x (N+1)2^N matrix over C[d] (rows: Lambda(N) monomials)."""
        row = {m: k for k, m in enumerate(self.masks)}
        cols = []
        for m, i in self.ders:
            col = [DPoly()] * len(self.masks)
            # sign is (-1)^(parity of P_i D_i); with (-1)^p(P_i) the kernel is not closed
            s = 1 if _deg(m) & 1 else -1
            for mm, c in _gder(i, {m: ONE}).items():
                col[row[mm]] = DPoly.const(s * c)
            cols.append(col)
        for m in self.masks:
            col = [DPoly()] * len(self.masks)
            col[row[m]] = DPoly.monomial(1)
            cols.append(col)
        return PdMatrix(len(self.masks), cols)


def make_WN(N):
    W = WAlgebra(N)
    prods = complete_mirror(W.generators, W.products())
    return ConformalSuperalgebra(W.generators, prods, name=f"W{N}")


def divergence(N, D):
    """div of ``D`` given as a list of DPoly over the W_N generators.

    Returns ``{mask: DPoly}`` on Lambda(N).
    """
    W = WAlgebra(N)
    M = W.divergence_matrix()
    if len(D) != M.cols:
        raise ValueError(f"W_{N} element needs {M.cols} coefficients")
    out = M.apply(list(D))
    return {m: p for m, p in zip(W.masks, out) if p}


def _vec_to_column(vec, rank):
    cols = [[] for _ in range(rank)]
    for (g, p), c in vec.items():
        lst = cols[g]
        while len(lst) <= p:
            lst.append(ZERO)
        lst[p] = c
    return [DPoly(c) for c in cols]


def _column_to_vec(col):
    out = {}
    for g, p in enumerate(col):
        for k, c in enumerate(p.coeffs):
            if c:
                out[(g, k)] = c
    return out


def subalgebra(R, elements, names, parities, name="sub"):
    """The subalgebra spanned over C[d] by ``elements`` (sparse vectors of R).

    ``elements`` must be C[d]-linearly independent and closed under all
    products; otherwise :class:`ClosureError` is raised.  Returns
    ``(algebra, embedding)`` with ``embedding[k]`` the vector of generator k.
    """
    span = PdSpan(R.rank, track=True)
    for e in elements:
        span.insert(_vec_to_column(e, R.rank))
    if span.relations and any(any(c for c in rel.values()) for rel in span.relations):
        raise ClosureError("spanning elements are C[d]-linearly dependent")
    prods = {}
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            for n, vec in R.products_vec(x, y).items():
                coeffs = span.express(_vec_to_column(vec, R.rank))
                if coeffs is None:
                    raise ClosureError(f"{names[i]}_({n}){names[j]} leaves the span")
                out = _column_to_vec(coeffs)
                if out:
                    prods[(i, j, n)] = out
    gens = list(zip(names, parities))
    return ConformalSuperalgebra(gens, prods, name=name), list(elements)


def make_SN(N, return_embedding=False):
    _check_n(N)
    W = WAlgebra(N)
    R = make_WN(N)
    M = W.divergence_matrix()
    # div is homogeneous: columns grouped by the Lambda-degree of their image
    elements, names, pars = [], [], []
    for k in range(-1, N + 1):
        cols = [W.der_index[(m, i)] for (m, i) in W.ders if _deg(m) == k + 1]
        cols += [W.fun_index[m] for m in W.masks if _deg(m) == k]
        if not cols:
            continue
        sub = PdMatrix(M.rows, [M.columns[c] for c in cols])
        K = kernel(sub)
        for col in K.columns:
            vec = {}
            for c, p in zip(cols, col):
                for e, x in enumerate(p.coeffs):
                    if x:
                        vec[(c, e)] = x
            elements.append(vec)
            names.append(f"s{len(names) + 1}")
            pars.append(k & 1)
    S, emb = subalgebra(R, elements, names, pars, name=f"S{N}")
    if len(elements) != N * (1 << N):
        raise ClosureError(f"divergence kernel has rank {len(elements)}, expected {N * (1 << N)}")
    return (S, emb, R) if return_embedding else S


def _k_products(N):
    masks = _masks(N)
    idx = {m: k for k, m in enumerate(masks)}
    half = ONE / 2
    prods = {}
    for f in masks:
        df = _deg(f)
        for g in masks:
            dg = _deg(g)
            fg = _gmul({f: ONE}, {g: ONE})
            v0 = {}
            c1 = half * df - 1
            for m, c in fg.items():
                if c1 * c:
                    v0[(idx[m], 1)] = c1 * c
            s = half if df % 2 == 0 else -half
            acc = {}
            for i in range(1, N + 1):
                a, b = _gder(i, {f: ONE}), _gder(i, {g: ONE})
                if a and b:
                    for m, c in _gmul(a, b).items():
                        acc[m] = acc.get(m, ZERO) + c
            for m, c in acc.items():
                if c:
                    v0[(idx[m], 0)] = v0.get((idx[m], 0), ZERO) + s * c
            v0 = {k: v for k, v in v0.items() if v}
            if v0:
                prods[(idx[f], idx[g], 0)] = v0
            c1 = half * (df + dg) - 2
            v1 = {(idx[m], 0): c1 * c for m, c in fg.items() if c1 * c}
            if v1:
                prods[(idx[f], idx[g], 1)] = v1
    gens = [(f"x{_digits(m)}" if m else "u", _deg(m) & 1) for m in masks]
    return gens, prods, masks


def make_KN(N):
    _check_n(N)
    gens, prods, _ = _k_products(N)
    return ConformalSuperalgebra(gens, prods, name=f"K{N}")


def _star(mask, N=6):
    """(xi_{i1} xi_{i2} ...)^* = d_{i1} d_{i2} ... nu, as ``(sign, mask)``."""
    nu = (1 << N) - 1
    f = {nu: ONE}
    idx = [i + 1 for i in range(N) if mask >> i & 1]
    for i in reversed(idx):
        f = _gder(i, f)
    ((m, c),) = f.items()
    return c, m


def make_CK6(alpha=I, return_embedding=False):
    """CK_6 inside K_6, basis: the 1 + 6 + 15 listed elements and the ten
    cubic elements whose index set contains 1 (the other ten lie in their span)."""
    alpha = as_scalar(alpha)
    if alpha * alpha != -1:
        raise ValueError("alpha must satisfy alpha^2 = -1")
    K = make_KN(6)
    masks = _masks(6)
    idx = {m: k for k, m in enumerate(masks)}
    nu = 63

    def elt(mask, dpow, sign):
        c, sm = _star(mask)
        vec = {(idx[mask], 0): ONE}
        key = (idx[sm], dpow)
        vec[key] = vec.get(key, ZERO) + sign * alpha * c
        return {k: v for k, v in vec.items() if v}

    elements, names, pars = [], [], []
    elements.append({(idx[0], 0): ONE, (idx[nu], 3): alpha})
    names.append("A")
    pars.append(0)
    for i in range(1, 7):
        # sign +1: the listed -1 is not closed under the K_6 products used here
        elements.append(elt(1 << (i - 1), 2, 1))
        names.append(f"B{i}")
        pars.append(1)
    for i, j in combinations(range(1, 7), 2):
        elements.append(elt((1 << (i - 1)) | (1 << (j - 1)), 1, 1))
        names.append(f"C{i}{j}")
        pars.append(0)
    others = []
    for t in combinations(range(1, 7), 3):
        m = sum(1 << (x - 1) for x in t)
        e = elt(m, 0, 1)
        if 1 in t:
            elements.append(e)
            names.append("T" + "".join(map(str, t)))
            pars.append(1)
        else:
            others.append(("T" + "".join(map(str, t)), e))
    R, emb = subalgebra(K, elements, names, pars, name="CK6")
    span = PdSpan(K.rank)
    for e in elements:
        span.insert(_vec_to_column(e, K.rank))
    for nm, e in others:
        if not span.contains(_vec_to_column(e, K.rank)):
            raise ClosureError(f"{nm} is not in the span of the chosen basis")
    if return_embedding:
        return R, emb, K, others
    return R

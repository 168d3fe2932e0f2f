"""Conformal modules over finite conformal superalgebras.

A module is a C[d]-module with basis vectors ``v^0..v^{k-1}``; each basis
vector is either free or torsion (d acts on it by a scalar, as on the trivial
module).  Actions ``a^i_(n) v^b`` are stored on generators and extended by

    (d a)_(n) v = -n a_(n-1) v,     a_(n)(d v) = d(a_(n) v) + n a_(n-1) v.
"""

from __future__ import annotations

from math import comb, factorial

from .algebra import (AxiomReport, AxiomViolation, ConformalSuperalgebra, _jacobi_mismatch,
                      _normalize_table_value, jacobi_polys, lam_apply, lam_to_products,
                      reduce_vec, vec_add, vec_d, vec_scale, vec_str)
from .constructions import make_current, make_semidirect_vir_current, make_virasoro
from .gc import GcElement, gc_d, gc_nth_product
from .lie import LieDataError, LieSuperalgebraData, builtin_lie, check_representation
from .linalg import Echelon
from .pdmodules import PdMatrix, PdSpan, kernel, size_of
from .scalars import ONE, ZERO, DPoly, as_scalar

__all__ = [
    "ConformalModule",
    "ModuleError",
    "module_check",
    "module_action",
    "make_M_alpha_Delta",
    "make_M_A_B",
    "make_current_module",
    "make_vir_current_module",
    "make_trivial_module",
    "make_ext_44a",
    "make_ext_44b",
    "make_ext_45",
    "direct_sum",
    "shift_d",
    "invariants",
    "is_submodule",
    "in_submodule",
    "quotient_size",
    "is_split",
    "is_irreducible_rank1",
    "reducing_polynomial",
    "rep_to_gc",
    "left_kernel",
]


class ModuleError(ValueError):
    pass


def _fact(n):
    return factorial(n)


class ConformalModule:
    """Module over ``algebra`` with the given basis and action table.

    ``action`` maps ``(i, b, n)`` (algebra generator, basis vector, n) to a
    vector ``{(c, power): scalar}`` or a list of DPoly over the basis;
    ``torsion`` maps a basis index to the scalar by which d acts on it.
    """

    def __init__(self, algebra: ConformalSuperalgebra, basis, action=None, torsion=None, name="M",
                 sub=None):
        self.algebra = algebra
        self.basis = [(str(nm), int(p) & 1) for nm, p in basis]
        self.names = [b[0] for b in self.basis]
        if len(set(self.names)) != len(self.names):
            raise ModuleError("duplicate basis names")
        self.parities = [b[1] for b in self.basis]
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self.torsion = {int(k): as_scalar(v) for k, v in (torsion or {}).items()}
        self.name = name
        k = len(self.basis)
        table = {}
        for (i, b, n), val in (action or {}).items():
            if not (0 <= i < algebra.rank and 0 <= b < k and n >= 0):
                raise ModuleError(f"action index out of range: {(i, b, n)}")
            vec = reduce_vec(_normalize_table_value(val, k), self.torsion)
            if any(not 0 <= g < k for g, _ in vec):
                raise ModuleError("action refers to an unknown basis vector")
            if vec:
                want = algebra.parities[i] ^ self.parities[b]
                bad = [self.names[g] for g, _ in vec if self.parities[g] != want]
                if bad:
                    raise ModuleError(f"parity inconsistent action {algebra.names[i]}_({n}){self.names[b]}")
                table[(i, b, n)] = vec
        self.table = table
        ob = {}
        for (i, b, n) in table:
            ob[(i, b)] = max(ob.get((i, b), 0), n + 1)
        self.order_bound = ob
        lt = {}
        for (i, b, n), vec in sorted(table.items()):
            inv = ONE / _fact(n)
            lt.setdefault((i, b), []).extend((n, c, e, x * inv) for (c, e), x in sorted(vec.items()))
        self.ltab = {key: tuple(v) for key, v in lt.items()}
        # distinguished submodule generators (extensions)
        self.sub = [dict(v) for v in (sub or [])]

    @property
    def rank(self):
        return len(self.basis)

    def free_basis(self):
        return [b for b in range(self.rank) if b not in self.torsion]

    def is_free(self):
        return not self.torsion

    def max_order(self):
        return max(self.order_bound.values(), default=0)

    def vec(self, name, power=0, coeff=ONE):
        return reduce_vec({(self.index[name], power): as_scalar(coeff)}, self.torsion)

    def d_vec(self, v):
        return vec_d(v, self.torsion)

    def lam_vec(self, x, v):
        """[x_lam v] for algebra vector x and module vector v."""
        return lam_apply(self.ltab, x, v, self.torsion)

    def act_vec(self, x, v):
        """``{n: x_(n) v}``."""
        return lam_to_products(self.lam_vec(x, v))

    def nth_vec(self, x, v, n):
        f = _fact(n)
        return {(k, e): c * f for (m, k, e), c in self.lam_vec(x, v).items() if m == n}

    def vec_str(self, v):
        return vec_str(v, self.names)

    def __repr__(self):
        return f"<ConformalModule {self.name} over {self.algebra.name} rank={self.rank}>"


def module_action(M, x, v, n):
    return M.nth_vec(x, v, n)


def _rec_action(M, i, p, b, q, n, memo):
    """(d^p a^i)_(n)(d^q v^b) by literal (C1)/(M2) recursion."""
    key = (p, q, n)
    if key in memo:
        return memo[key]
    if n < 0:
        res = {}
    elif p > 0:
        res = vec_scale(_rec_action(M, i, p - 1, b, q, n - 1, memo), as_scalar(-n)) if n else {}
    elif q > 0:
        res = vec_add(M.d_vec(_rec_action(M, i, 0, b, q - 1, n, memo)),
                      _rec_action(M, i, 0, b, q - 1, n - 1, memo), as_scalar(n))
    else:
        res = dict(M.table.get((i, b, n), {}))
    memo[key] = res
    return res


def module_check(M: ConformalModule, shift_degree=3, max_violations=None) -> AxiomReport:
    """Verify (M0)-(M2) and the torsion constraints on generators and basis vectors."""
    R = M.algebra
    viol = []
    counts = {"M0": 0, "M1": 0, "M2": 0, "torsion": 0}
    an, mn = R.names, M.names

    def full():
        return max_violations is not None and len(viol) >= max_violations

    # torsion: vectors with d v = t v are annihilated; torsion algebra generators act by 0
    for (i, b), N in sorted(M.order_bound.items()):
        counts["torsion"] += 1
        if b in M.torsion or i in R.torsion:
            viol.append(AxiomViolation("torsion", (an[i], mn[b]), None, N - 1,
                                       M.vec_str(M.table[(i, b, N - 1)]), "0"))
    # (M0): order bounds are finite by construction; check declared bound consistency
    counts["M0"] = len(M.order_bound)

    # (M2) on d-shifted generators and basis vectors
    for i in range(R.rank):
        if i in R.torsion:
            continue
        for b in M.free_basis():
            N = M.order_bound.get((i, b), 0)
            if not N:
                continue
            memo = {}
            for p in range(shift_degree + 1):
                for q in range(shift_degree + 1 - p):
                    if p == 0 and q == 0:
                        continue
                    fast = M.act_vec({(i, p): ONE}, {(b, q): ONE})
                    for n in range(N + p + 1):
                        counts["M2"] += 1
                        rec = _rec_action(M, i, p, b, q, n, memo)
                        if rec != fast.get(n, {}):
                            viol.append(AxiomViolation(
                                "M2", (f"d^{p} {an[i]}", f"d^{q} {mn[b]}"), None, n,
                                M.vec_str(fast.get(n, {})), M.vec_str(rec)))
    if full():
        return AxiomReport(False, viol, counts)

    # (M1) for all m, n via lambda/mu polynomials
    for a in range(R.rank):
        for b in range(R.rank):
            s = -1 if (R.parities[a] & R.parities[b]) else 1
            for c in range(M.rank):
                counts["M1"] += 1
                A, B, C = jacobi_polys(R._ltab_tuple, M.ltab, a, b, c, M.torsion)
                for (m, n), (lhs, rhs) in _jacobi_mismatch(A, B, C, s):
                    viol.append(AxiomViolation("M1", (an[a], an[b], mn[c]), m, n,
                                               M.vec_str(lhs), M.vec_str(rhs)))
                if full():
                    return AxiomReport(False, viol, counts)
    return AxiomReport(not viol, viol, counts)


# ---------------------------------------------------------------------------
# builders


def _poly_vec(b, poly):
    poly = poly if isinstance(poly, DPoly) else DPoly.const(poly)
    return {(b, k): c for k, c in enumerate(poly.coeffs) if c}


def make_M_alpha_Delta(alpha, Delta, algebra=None):
    """Rank-1 Vir-module: L_(0)v = (d + alpha)v, L_(1)v = Delta v."""
    R = algebra or make_virasoro()
    alpha, Delta = as_scalar(alpha), as_scalar(Delta)
    act = {(0, 0, 0): _poly_vec(0, DPoly([alpha, ONE])), (0, 0, 1): _poly_vec(0, Delta)}
    return ConformalModule(R, [("v", 0)], act, name=f"M({alpha},{Delta})")


def _matrix(A):
    return [[as_scalar(x) for x in row] for row in A]


def make_M_A_B(A, B, algebra=None):
    """Vir-module C[d] (x) U with L_(0)u = (d + A)u, L_(1)u = Bu."""
    A, B = _matrix(A), _matrix(B)
    n = len(A)
    if any(len(r) != n for r in A) or len(B) != n or any(len(r) != n for r in B):
        raise ModuleError("A and B must be square of the same size")
    AB = [[sum((A[i][k] * B[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
    BA = [[sum((B[i][k] * A[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
    if AB != BA:
        raise ModuleError("A and B must commute")
    R = algebra or make_virasoro()
    act = {}
    for b in range(n):
        v0 = {(b, 1): ONE}
        for a in range(n):
            if A[a][b]:
                v0[(a, 0)] = A[a][b]
        act[(0, b, 0)] = v0
        v1 = {(a, 0): B[a][b] for a in range(n) if B[a][b]}
        if v1:
            act[(0, b, 1)] = v1
    return ConformalModule(R, [(f"u{k + 1}", 0) for k in range(n)], act, name="M(A,B)")


def _lie(g):
    return builtin_lie(g) if isinstance(g, str) else g


def _rep_action(g, mats, offset, act):
    w = check_representation(g, mats)
    if w is not None:
        raise LieDataError(f"matrices do not represent {g.name}: bracket {w} fails", w)
    dim = len(mats[g.names[0]]) if g.names else 0
    for i, a in enumerate(g.names):
        M = _matrix(mats[a])
        for b in range(dim):
            v = {(c, 0): M[c][b] for c in range(dim) if M[c][b]}
            if v:
                act[(i + offset, b, 0)] = v
    return dim


def make_current_module(g, mats, algebra=None):
    """Current-algebra module C[d] (x) U with a_(0)u = au."""
    g = _lie(g)
    R = algebra or make_current(g)
    act = {}
    dim = _rep_action(g, mats, 0, act)
    return ConformalModule(R, [(f"u{k + 1}", 0) for k in range(dim)], act, name=f"{g.name}-module")


def make_vir_current_module(g, mats, Delta, algebra=None):
    """Module over Vir + current(g): L_(0)u = du, L_(1)u = Delta u, a_(0)u = au."""
    g = _lie(g)
    R = algebra or make_semidirect_vir_current(g)
    act = {}
    dim = _rep_action(g, mats, 1, act)
    Delta = as_scalar(Delta)
    for b in range(dim):
        act[(0, b, 0)] = {(b, 1): ONE}
        if Delta:
            act[(0, b, 1)] = {(b, 0): Delta}
    return ConformalModule(R, [(f"u{k + 1}", 0) for k in range(dim)], act,
                           name=f"vir+{g.name}-module")


def make_trivial_module(algebra=None, t=0):
    """The 1-dimensional module: zero action, d acting by ``t``."""
    R = algebra or make_virasoro()
    return ConformalModule(R, [("c", 0)], {}, torsion={0: t}, name="C")


def make_ext_44a(alpha):
    """M(alpha, 0) together with its submodule generated by (d + alpha)v ~ M(alpha, 1)."""
    M = make_M_alpha_Delta(alpha, 0)
    M.sub = [{(0, 1): ONE, (0, 0): as_scalar(alpha)} if alpha else {(0, 1): ONE}]
    M.name = f"ext44a({alpha})"
    return M


def make_ext_44b(alpha, Delta):
    """C[d]v + C: L_(0)v = (d+alpha)v, L_(1)v = Delta v, L_(Delta+1)v = c.

    d acts on c by -alpha, which (M1) forces (0 for alpha = 0).
    """
    Delta = as_scalar(Delta)
    if Delta not in (1, 2):
        raise ModuleError("a non-split extension by C exists only for Delta in {1, 2}")
    alpha = as_scalar(alpha)
    R = make_virasoro()
    act = {(0, 0, 0): _poly_vec(0, DPoly([alpha, ONE])), (0, 0, 1): {(0, 0): Delta},
           (0, 0, int(Delta) + 1): {(1, 0): ONE}}
    return ConformalModule(R, [("v", 0), ("c", 0)], act, torsion={1: -alpha},
                           name=f"ext44b({alpha},{Delta})", sub=[{(1, 0): ONE}])


def make_ext_45(g):
    """C[d] (x) g + C over current(g): a_(0)b = [a,b], a_(1)b = (a|b) c."""
    g = _lie(g)
    R = make_current(g)
    n = g.dim
    act = {}
    for i in range(n):
        for j in range(n):
            v = {(k, 0): c for k, c in g.table.get((i, j), {}).items()}
            if v:
                act[(i, j, 0)] = v
            k = g.bilinear(i, j)
            if k:
                act[(i, j, 1)] = {(n, 0): k}
    basis = [(nm, p) for nm, p in g.basis] + [("c", 0)]
    return ConformalModule(R, basis, act, torsion={n: 0}, name=f"ext45({g.name})",
                           sub=[{(n, 0): ONE}])


def direct_sum(M1, M2, name=None):
    if M1.algebra is not M2.algebra and not M1.algebra.same_table(M2.algebra):
        raise ModuleError("modules over different algebras")
    k = M1.rank
    basis = list(M1.basis) + [(nm if nm not in M1.index else nm + "'", p) for nm, p in M2.basis]
    act = dict(M1.table)
    for (i, b, n), v in M2.table.items():
        act[(i, b + k, n)] = {(c + k, e): x for (c, e), x in v.items()}
    tors = dict(M1.torsion)
    tors.update({b + k: t for b, t in M2.torsion.items()})
    sub = [dict(v) for v in M1.sub] + [{(c + k, e): x for (c, e), x in v.items()} for v in M2.sub]
    return ConformalModule(M1.algebra, basis, act, torsion=tors, name=name or f"{M1.name}+{M2.name}",
                           sub=sub)


def shift_d(M, A):
    """The same module with d replaced by d + A (A a scalar): coefficients p(d) -> p(d - A)."""
    A = as_scalar(A)
    act = {}
    for key, v in M.table.items():
        out = {}
        for (c, e), x in v.items():
            if c in M.torsion:
                out[(c, 0)] = out.get((c, 0), ZERO) + x
                continue
            p = DPoly.monomial(e, x).shift(-A)
            for k, y in enumerate(p.coeffs):
                if y:
                    out[(c, k)] = out.get((c, k), ZERO) + y
        act[key] = {k: x for k, x in out.items() if x}
    tors = {b: t + A for b, t in M.torsion.items()}
    return ConformalModule(M.algebra, M.basis, act, torsion=tors, name=f"{M.name}[d+{A}]")


# ---------------------------------------------------------------------------
# submodules


def _presentation_column(M, v):
    col = [[] for _ in range(M.rank)]
    for (b, e), x in reduce_vec(v, M.torsion).items():
        lst = col[b]
        while len(lst) <= e:
            lst.append(ZERO)
        lst[e] = x
    return [DPoly(c) for c in col]


def _relation_columns(M):
    cols = []
    for b, t in M.torsion.items():
        col = [DPoly()] * M.rank
        col[b] = DPoly([-t, ONE])
        cols.append(col)
    return cols


def _span(M, gens):
    sp = PdSpan(M.rank)
    sp.extend(_relation_columns(M))
    for v in gens:
        sp.insert(_presentation_column(M, v))
    return sp


def in_submodule(M, gens, v):
    return _span(M, gens).contains(_presentation_column(M, v))


def is_submodule(M, gens):
    """True iff the C[d]-span of ``gens`` is stable under every a^i_(n)."""
    sp = _span(M, gens)
    R = M.algebra
    for v in gens:
        for i in range(R.rank):
            for n, w in M.act_vec({(i, 0): ONE}, v).items():
                if not sp.contains(_presentation_column(M, w)):
                    return False
    return True


def quotient_size(M, gens):
    cols = _relation_columns(M) + [_presentation_column(M, v) for v in gens]
    return size_of(PdMatrix(M.rank, cols))


# ---------------------------------------------------------------------------
# kernels of lambda-maps (substitution trick)


def _nu_rows(lam, target_torsion, sign_left):
    """Rows of the C[nu]-linear map built from one lambda-bracket ``{(n, k, e): c}``.

    For the right slot (``sign_left`` False) lam = nu - d; for the left slot
    lam = -nu.  Returns ``{(k, e): DPoly in nu}``; torsion targets have d
    replaced by their scalar beforehand.
    """
    out = {}
    for (n, k, e), c in lam.items():
        t = target_torsion.get(k)
        if sign_left:
            # (-nu)^n d^e
            coef = -c if n & 1 else c
            key = (k, e)
            p = DPoly.monomial(n, coef)
            out[key] = out.get(key, DPoly()) + p
        else:
            # (nu - d)^n d^e = sum_r C(n,r) nu^(n-r) (-d)^r d^e
            for r in range(n + 1):
                coef = c * comb(n, r) * (-1 if r & 1 else 1)
                if t is not None:
                    key = (k, 0)
                    coef = coef * t ** (r + e)
                else:
                    key = (k, e + r)
                if not coef:
                    continue
                out[key] = out.get(key, DPoly()) + DPoly.monomial(n - r, coef)
    return out


def left_kernel(lams, sources, target_torsion):
    """Free basis of ``{sum_s p_s(d) x_s : [x_lam y] = 0 for all listed y}``.

    ``lams[s]`` is a list of lambda-brackets ``[x_s _lam y]`` (one per y);
    returns columns (lists of DPoly over ``sources``).
    """
    rows = {}
    for s_idx, brackets in enumerate(lams):
        for y_idx, lam in enumerate(brackets):
            for key, p in _nu_rows(lam, target_torsion, True).items():
                if p:
                    rows.setdefault((y_idx, key), [DPoly()] * len(sources))[s_idx] = p
    if not rows:
        return [[DPoly.const(1) if a == b else DPoly() for a in range(len(sources))]
                for b in range(len(sources))]
    M = PdMatrix.from_rows([rows[k] for k in sorted(rows)])
    return [list(c) for c in kernel(M).columns]


def invariants(M):
    """Generators of ``{v in M : a_(n) v = 0 for all a, n}``."""
    R = M.algebra
    free = M.free_basis()
    rows = {}
    for i in range(R.rank):
        for s_idx, b in enumerate(free):
            lam = M.lam_vec({(i, 0): ONE}, {(b, 0): ONE})
            for key, p in _nu_rows(lam, M.torsion, False).items():
                if p:
                    rows.setdefault((i, key), [DPoly()] * len(free))[s_idx] = p
    gens = []
    if free:
        if rows:
            K = kernel(PdMatrix.from_rows([rows[k] for k in sorted(rows)]))
            cols = K.columns
        else:
            cols = [[DPoly.const(1) if a == b else DPoly() for a in range(len(free))]
                    for b in range(len(free))]
        for col in cols:
            v = {}
            for b, p in zip(free, col):
                for e, x in enumerate(p.coeffs):
                    if x:
                        v[(b, e)] = x
            if v:
                gens.append(v)
    for b in M.torsion:
        gens.append({(b, 0): ONE})
    return gens


# ---------------------------------------------------------------------------
# splitting


def is_split(M, sub=None, degree_bound=None, return_projection=False):
    """Decide whether ``sub`` (generators of a submodule) is a direct summand.

    Searches for a module map P: M -> sub with P|sub = id, P(v^b) written as
    ``sum_k r_{b,k}(d) s_k`` with deg r <= ``degree_bound``.  A solution is a
    proof of splitting; with no solution the answer is exact only up to the
    bound (the default bound covers every degree that can occur in the given
    data).
    """
    sub = M.sub if sub is None else [dict(v) for v in sub]
    if not sub:
        raise ModuleError("no submodule given")
    if not is_submodule(M, sub):
        raise ModuleError("the given vectors do not generate a submodule")
    R = M.algebra
    if degree_bound is None:
        degs = [e for v in sub for (_, e) in v] + [e for v in M.table.values() for (_, e) in v]
        degree_bound = max(degs, default=0) + M.max_order() + 2
    D = degree_bound
    # unknown (b, k, e): coefficient of d^e s_k in P(v^b); torsion b only e = 0
    unknowns = []
    for b in range(M.rank):
        for k in range(len(sub)):
            for e in range(D + 1 if b not in M.torsion else 1):
                unknowns.append((b, k, e))
    uidx = {u: n for n, u in enumerate(unknowns)}
    CONST = len(unknowns)
    shifted = {}

    def s_shift(k, e):
        key = (k, e)
        if key not in shifted:
            w = sub[k]
            for _ in range(e):
                w = M.d_vec(w)
            shifted[key] = w
        return shifted[key]

    def P_of(vec):
        """P(vec) as {(target basis, power): {unknown: coeff}} (linear in unknowns)."""
        out = {}
        for (b, q), c in reduce_vec(vec, M.torsion).items():
            for k in range(len(sub)):
                for e in range(D + 1 if b not in M.torsion else 1):
                    w = s_shift(k, e + q)
                    u = uidx[(b, k, e)]
                    for key, x in w.items():
                        out.setdefault(key, {})
                        out[key][u] = out[key].get(u, ZERO) + c * x
        return out

    ech = Echelon()
    inconsistent = False
    equations = []
    # P(s_k) = s_k
    for k, s in enumerate(sub):
        lin = P_of(s)
        for key, x in s.items():
            lin.setdefault(key, {})
            lin[key][CONST] = lin[key].get(CONST, ZERO) - x
        equations.append(lin)
    # torsion compatibility: (d - t) P(v^b) = 0
    for b, t in M.torsion.items():
        for k in range(len(sub)):
            u = uidx[(b, k, 0)]
            w = vec_add(M.d_vec(sub[k]), sub[k], -t)
            lin = {key: {u: x} for key, x in w.items()}
            equations.append(lin)
    # P(a_(n) v^b) = a_(n) P(v^b)
    for i in range(R.rank):
        for b in range(M.rank):
            acts = M.act_vec({(i, 0): ONE}, {(b, 0): ONE})
            rhs_parts = {}
            for k in range(len(sub)):
                for e in range(D + 1 if b not in M.torsion else 1):
                    u = uidx[(b, k, e)]
                    for n, w in M.act_vec({(i, 0): ONE}, s_shift(k, e)).items():
                        tgt = rhs_parts.setdefault(n, {})
                        for key, x in w.items():
                            tgt.setdefault(key, {})
                            tgt[key][u] = tgt[key].get(u, ZERO) + x
            for n in set(acts) | set(rhs_parts):
                lin = P_of(acts.get(n, {}))
                for key, row in rhs_parts.get(n, {}).items():
                    tgt = lin.setdefault(key, {})
                    for u, x in row.items():
                        tgt[u] = tgt.get(u, ZERO) - x
                equations.append(lin)
    for lin in equations:
        for key, row in lin.items():
            row = {k: v for k, v in row.items() if v}
            if not row:
                continue
            red = ech.reduce(row)
            if red and min(red) == CONST:
                inconsistent = True
                break
            ech.add(red)
        if inconsistent:
            break
    if inconsistent:
        return (False, None) if return_projection else False
    if return_projection:
        rows = ech.rref_rows()
        sol = {}
        for u in range(len(unknowns)):
            row = rows.get(u)
            sol[unknowns[u]] = -row.get(CONST, ZERO) if row else ZERO
        return True, sol
    return True


# ---------------------------------------------------------------------------
# rank one


def reducing_polynomial(M):
    """gcd of all action coefficients on a free rank-1 module (monic, or zero)."""
    if M.rank != 1 or M.torsion:
        raise ModuleError("needs a free module of rank 1")
    g = DPoly()
    from .scalars import dpoly_gcd
    for (i, b, n), v in M.table.items():
        p = DPoly([v.get((0, e), ZERO) for e in range(max(e for _, e in v) + 1)])
        g = dpoly_gcd(g, p) if g else p.monic()
    return g


def is_irreducible_rank1(M):
    """A free rank-1 module C[d]v is irreducible iff no p(d)v with deg p >= 1 spans a
    submodule; p(d)v is invariant iff p divides every action coefficient."""
    g = reducing_polynomial(M)
    if not g:
        return False
    if g.degree >= 1:
        w = {(0, e): c for e, c in enumerate(g.coeffs) if c}
        if not is_submodule(M, [w]):
            raise AssertionError("gcd witness failed to be invariant")
        return False
    return True


# ---------------------------------------------------------------------------
# gc embedding


def _gc_of(M, x):
    N = M.rank
    mats = {}
    for b in range(N):
        for n, w in M.act_vec(x, {(b, 0): ONE}).items():
            Mn = mats.setdefault(n, [[DPoly()] * N for _ in range(N)])
            col = _presentation_column(M, w)
            for a in range(N):
                Mn[a][b] = col[a]
    return GcElement(N, mats)


def rep_to_gc(M):
    """rho(a)_(n) = matrix of a_(n) on the basis; checks the homomorphism property.

    Returns ``(rho, report)`` where ``report`` has keys ``homomorphism``,
    ``failures``, ``faithful`` and ``kernel`` (generators of ker rho).
    """
    if M.torsion:
        raise ModuleError("rep_to_gc needs a free module")
    R = M.algebra
    rho = {R.names[i]: _gc_of(M, {(i, 0): ONE}) for i in range(R.rank)}
    failures = []
    for i in range(R.rank):
        for j in range(R.rank):
            top = max(R.bound(i, j), 1) + 1
            for m in range(top + 1):
                prod = R.nth_vec({(i, 0): ONE}, {(j, 0): ONE}, m)
                lhs = GcElement(M.rank, {})
                for (k, e), c in prod.items():
                    lhs = lhs + gc_d(rho[R.names[k]], e).scale(c)
                rhs = gc_nth_product(rho[R.names[i]], rho[R.names[j]], m)
                if lhs != rhs:
                    failures.append((R.names[i], R.names[j], m))
    lams = [[M.lam_vec({(i, 0): ONE}, {(b, 0): ONE}) for b in range(M.rank)] for i in range(R.rank)]
    ker_cols = left_kernel(lams, list(range(R.rank)), M.torsion)
    ker = []
    for col in ker_cols:
        v = {(g, e): x for g, p in enumerate(col) for e, x in enumerate(p.coeffs) if x}
        if v:
            ker.append(v)
    for g in R.torsion:
        ker.append({(g, 0): ONE})
    report = {"homomorphism": not failures, "failures": failures, "faithful": not ker, "kernel": ker}
    return rho, report

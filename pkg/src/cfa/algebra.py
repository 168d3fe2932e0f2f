"""Finite conformal superalgebras given by structure constants.

An algebra is a C[d]-module generated by ``a^0..a^{r-1}``.  Most generators
are free; a generator may instead be *torsion*, meaning ``d`` acts on it by a
fixed scalar (the central element of a central extension is the main case).

Elements are stored sparsely as ``{(generator, d_power): scalar}``.  All
products are computed from the generator table through the lambda-bracket

    [x_lam y] = sum_n lam^n / n! * x_(n) y,

whose sesquilinearity ``[dx_lam y] = -lam [x_lam y]`` and
``[x_lam dy] = (d + lam) [x_lam y]`` is exactly (C1)/(C1').
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from .scalars import ONE, ZERO, DPoly, as_scalar, scalar_str

__all__ = [
    "ConformalSuperalgebra",
    "Element",
    "AxiomViolation",
    "AxiomReport",
    "nth_product",
    "lambda_bracket",
    "check_axioms",
    "lambda_table",
    "complete_mirror",
    "MirrorMismatch",
    "vec_add",
    "vec_scale",
    "vec_d",
    "vec_str",
]

_FACT = [factorial(k) for k in range(40)]


def _fact(k):
    return _FACT[k] if k < 40 else factorial(k)


# ---------------------------------------------------------------------------
# sparse vector helpers


def vec_add(a, b, c=ONE):
    """a + c*b (new dict)."""
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, ZERO) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(a, c):
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def vec_d(a, torsion):
    """Apply d to a vector ``{(gen, power): c}``."""
    out = {}
    for (g, p), v in a.items():
        t = torsion.get(g)
        if t is None:
            out[(g, p + 1)] = v
        else:
            v = v * t
            if v:
                out[(g, 0)] = out.get((g, 0), ZERO) + v
    return {k: v for k, v in out.items() if v}


def reduce_vec(vec, torsion):
    """Normal form modulo torsion relations (d acts on torsion gens by a scalar)."""
    if not torsion or not any(g in torsion for g, _ in vec):
        return {k: v for k, v in vec.items() if v}
    out = {}
    for (g, p), v in vec.items():
        t = torsion.get(g)
        if t is not None and p:
            v = v * t ** p
            p = 0
        if v:
            key = (g, p)
            s = out.get(key, ZERO) + v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def vec_str(vec, names):
    if not vec:
        return "0"
    parts = []
    for (g, p), c in sorted(vec.items()):
        mon = ("d" if p == 1 else f"d^{p}" if p else "")
        base = f"{mon} {names[g]}".strip() if mon else names[g]
        cs = scalar_str(c)
        if cs == "1":
            parts.append(base)
        elif cs == "-1":
            parts.append("-" + base)
        else:
            if "+" in cs[1:] or ("-" in cs[1:]):
                cs = f"({cs})"
            parts.append(f"{cs} {base}")
    return " + ".join(parts).replace("+ -", "- ")


def _poly_vec_from_coeffs(coeffs):
    out = {}
    for g, p in enumerate(coeffs):
        if p is None:
            continue
        if not isinstance(p, DPoly):
            p = DPoly.const(p)
        for k, c in enumerate(p.coeffs):
            if c:
                out[(g, k)] = c
    return out


def _normalize_table_value(val, ngens):
    if isinstance(val, dict):
        return {(int(g), int(p)): as_scalar(c) for (g, p), c in val.items() if c}
    if isinstance(val, Element):
        return dict(val.vec)
    coeffs = list(val)
    if len(coeffs) != ngens:
        raise ValueError(f"product vector has {len(coeffs)} entries for {ngens} generators")
    return _poly_vec_from_coeffs(coeffs)


# ---------------------------------------------------------------------------
# lambda-bracket engine (shared with modules)


def lam_apply(ltab, x, y, torsion):
    """[x_lam y] as ``{(n, gen, power): coeff of lam^n}``.

    ``ltab[(i, j)]`` lists ``(n, k, e, c)``: the bracket of left generator i
    with target basis vector j has ``c * lam^n d^e`` on target vector k.
    """
    out = {}
    for (i, p), cx in x.items():
        sp = -cx if p & 1 else cx
        for (j, q), cy in y.items():
            tab = ltab.get((i, j))
            if not tab:
                continue
            c0 = sp * cy
            if q == 0:
                for n, k, e, c in tab:
                    key = (n + p, k, e)
                    v = out.get(key, ZERO) + c0 * c
                    out[key] = v
                continue
            binq = [comb(q, r) for r in range(q + 1)]
            for n, k, e, c in tab:
                cc = c0 * c
                for r in range(q + 1):
                    key = (n + p + r, k, e + q - r)
                    out[key] = out.get(key, ZERO) + cc * binq[r]
    return _reduce_lam(out, torsion)


def _reduce_lam(out, torsion):
    if torsion:
        red = {}
        for (n, k, e), v in out.items():
            if not v:
                continue
            t = torsion.get(k)
            if t is not None and e:
                v = v * t ** e
                e = 0
                if not v:
                    continue
            key = (n, k, e)
            red[key] = red.get(key, ZERO) + v
        out = red
    return {k: v for k, v in out.items() if v}


def lam_to_products(lam):
    """Split ``{(n, k, e): c}`` into ``{n: vec}`` with n-th products (factor n!)."""
    res = {}
    for (n, k, e), c in lam.items():
        res.setdefault(n, {})[(k, e)] = c * _fact(n)
    return res


def _shift_apply(ltab, i, inner, torsion, var):
    """Apply [a^i_var .] to ``inner`` = {(m, n, k, e): c} (other var kept).

    ``var`` is 0 for lam (first slot) and 1 for mu (second slot).
    """
    out = {}
    for (m, n, k, e), c in inner.items():
        tab = ltab.get((i, k))
        if not tab:
            continue
        binq = [comb(e, r) for r in range(e + 1)]
        for s, l, f, cc in tab:
            w = c * cc
            for r in range(e + 1):
                if var == 0:
                    key = (m + s + r, n, l, f + e - r)
                else:
                    key = (m, n + s + r, l, f + e - r)
                out[key] = out.get(key, ZERO) + w * binq[r]
    return _reduce_lam2(out, torsion)


def _reduce_lam2(out, torsion):
    if torsion:
        red = {}
        for (m, n, k, e), v in out.items():
            if not v:
                continue
            t = torsion.get(k)
            if t is not None and e:
                v = v * t ** e
                e = 0
                if not v:
                    continue
            key = (m, n, k, e)
            red[key] = red.get(key, ZERO) + v
        out = red
    return {k: v for k, v in out.items() if v}


def jacobi_polys(alg_ltab, act_ltab, a, b, c, torsion):
    """The three terms of the lambda-Jacobi identity for generators a, b and
    target basis vector c.

    Returns ``(A, B, C)`` with A = [a_lam [b_mu c]], B = [b_mu [a_lam c]],
    C = [[a_lam b]_{lam+mu} c], each ``{(lam_pow, mu_pow, k, e): coeff}``.
    ``alg_ltab`` gives algebra brackets (for [a_lam b]); ``act_ltab`` gives the
    action on the target (the algebra itself, or a module).
    """
    inner_bc = {(0, n, k, e): v for (n, k, e, v) in act_ltab.get((b, c), ())}
    A = _shift_apply(act_ltab, a, inner_bc, torsion, 0)
    inner_ac = {(m, 0, k, e): v for (m, k, e, v) in act_ltab.get((a, c), ())}
    B = _shift_apply(act_ltab, b, inner_ac, torsion, 1)
    C = {}
    for (m, k, e, v) in alg_ltab.get((a, b), ()):
        tab = act_ltab.get((k, c))
        if not tab:
            continue
        sgn = -v if e & 1 else v
        for s, l, f, cc in tab:
            w = sgn * cc
            tot = e + s
            for t in range(tot + 1):
                key = (m + t, tot - t, l, f)
                C[key] = C.get(key, ZERO) + w * comb(tot, t)
    C = _reduce_lam2(C, torsion)
    return A, B, C


# ---------------------------------------------------------------------------


class MirrorMismatch(ValueError):
    """Explicit products disagree with the (C2) mirror of their partners."""

    def __init__(self, mismatches):
        self.mismatches = mismatches
        super().__init__("products inconsistent with skew-symmetry at " + ", ".join(
            f"({a} {n} {b})" for a, b, n in mismatches))


def mirror_products(vecs_ab, pa, pb, torsion):
    """Compute b_(n)a for all n from ``vecs_ab = {n: vec(a_(n)b)}`` using (C2)."""
    if not vecs_ab:
        return {}
    top = max(vecs_ab)
    s = -1 if (pa & pb) else 1
    out = {}
    for n in range(top + 1):
        acc = {}
        for j in range(top - n + 1):
            v = vecs_ab.get(n + j)
            if not v:
                continue
            sign = s * (1 if (j + n + 1) % 2 == 0 else -1)
            coef = as_scalar(sign) / _fact(j)
            w = v
            for _ in range(j):
                w = vec_d(w, torsion)
            acc = vec_add(acc, w, coef)
        if acc:
            out[n] = acc
    return out


def complete_mirror(generators, products, torsion=None):
    """Fill in products of unspecified ordered pairs via (C2).

    ``products`` maps ``(i, j, n)`` to vectors.  An ordered pair counts as
    specified when any entry for it is present; pairs specified in both
    directions are checked against each other.
    """
    torsion = torsion or {}
    pairs = {}
    for (i, j, n), v in products.items():
        pairs.setdefault((i, j), {})
        if v:
            pairs[(i, j)][n] = v
    out = {k: v for k, v in products.items() if v}
    mism = []
    for (i, j), vecs in sorted(pairs.items()):
        pi, pj = generators[i][1], generators[j][1]
        mir = mirror_products(vecs, pi, pj, torsion)
        if (j, i) in pairs:
            other = pairs[(j, i)]
            for n in set(mir) | set(other):
                if reduce_vec(mir.get(n, {}), torsion) != reduce_vec(other.get(n, {}), torsion):
                    mism.append((generators[j][0], generators[i][0], n))
        else:
            for n, v in mir.items():
                out[(j, i, n)] = v
    if mism:
        raise MirrorMismatch(sorted(set(mism)))
    return out


class ConformalSuperalgebra:
    """A finite conformal superalgebra presented by generator products.

    Parameters
    ----------
    generators : list of (name, parity)
    products : dict ``(i, j, n) -> value`` where value is a vector
        ``{(k, power): scalar}``, a list of DPoly per generator, or an Element.
        Missing entries are zero; nothing is mirror-completed here (see
        :func:`complete_mirror`).
    torsion : dict ``i -> scalar``: d acts on generator i by that scalar.
    """

    def __init__(self, generators, products=None, torsion=None, name=None,
                 order_bound=None):
        self.generators = [(str(nm), int(p) & 1) for nm, p in generators]
        self.names = [g[0] for g in self.generators]
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self.parities = [g[1] for g in self.generators]
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self.torsion = {int(k): as_scalar(v) for k, v in (torsion or {}).items()}
        self.name = name or "R"
        r = len(self.generators)
        table = {}
        for (i, j, n), val in (products or {}).items():
            if not (0 <= i < r and 0 <= j < r and n >= 0):
                raise ValueError(f"product index out of range: {(i, j, n)}")
            vec = reduce_vec(_normalize_table_value(val, r), self.torsion)
            if any(not 0 <= g < r for g, _ in vec):
                raise ValueError(f"product ({i},{j},{n}) refers to unknown generator")
            if vec:
                want = self.parities[i] ^ self.parities[j]
                bad = [self.names[g] for g, _ in vec if self.parities[g] != want]
                if bad:
                    raise ValueError(
                        f"parity inconsistent product {self.names[i]}_({n}){self.names[j]}: "
                        f"components on {sorted(set(bad))}")
                table[(i, j, n)] = vec
        self.table = table
        ob = {}
        for (i, j, n) in table:
            ob[(i, j)] = max(ob.get((i, j), 0), n + 1)
        self._declared_bounds = dict(order_bound or {})
        self.order_bound = ob
        self.ltab = {}
        for (i, j, n), vec in sorted(table.items()):
            inv = ONE / _fact(n)
            self.ltab.setdefault((i, j), []).extend(
                (n, k, e, c * inv) for (k, e), c in sorted(vec.items()))
        self._ltab_tuple = {k: tuple(v) for k, v in self.ltab.items()}

    # -- basic accessors -------------------------------------------------
    @property
    def rank(self):
        return len(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"<ConformalSuperalgebra {self.name} rank={self.rank}>"

    def free_generators(self):
        return [i for i in range(self.rank) if i not in self.torsion]

    def max_order(self):
        return max(self.order_bound.values(), default=0)

    def bound(self, i, j):
        return self.order_bound.get((i, j), 0)

    def gen(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        return Element(self, {(i, 0): ONE})

    def gens(self):
        return [self.gen(i) for i in range(self.rank)]

    def zero(self):
        return Element(self, {})

    def element(self, coeffs):
        """Element from a list of DPoly (one per generator) or a sparse dict."""
        if isinstance(coeffs, dict):
            return Element(self, reduce_vec({k: as_scalar(v) for k, v in coeffs.items()},
                                            self.torsion))
        if len(coeffs) != self.rank:
            raise ValueError(f"need {self.rank} coefficients")
        return Element(self, reduce_vec(_poly_vec_from_coeffs(coeffs), self.torsion))

    def product_vec(self, i, j, n):
        return self.table.get((i, j, n), {})

    # -- brackets on raw vectors ----------------------------------------
    def lam_vec(self, x, y):
        return lam_apply(self._ltab_tuple, x, y, self.torsion)

    def products_vec(self, x, y):
        """``{n: x_(n) y}`` for raw vectors."""
        return lam_to_products(self.lam_vec(x, y))

    def nth_vec(self, x, y, n):
        lam = self.lam_vec(x, y)
        f = _fact(n)
        return {(k, e): c * f for (m, k, e), c in lam.items() if m == n}

    def d_vec(self, x):
        return vec_d(x, self.torsion)

    def same_table(self, other) -> bool:
        return (self.generators == other.generators and self.table == other.table
                and self.torsion == other.torsion)


@dataclass(eq=False)
class Element:
    """Element of a conformal superalgebra: ``sum_i coeffs[i](d) a^i``."""

    algebra: ConformalSuperalgebra
    vec: dict = field(default_factory=dict)

    @property
    def coeffs(self):
        r = self.algebra.rank
        polys = [[] for _ in range(r)]
        for (g, p), c in self.vec.items():
            lst = polys[g]
            while len(lst) <= p:
                lst.append(ZERO)
            lst[p] = c
        return [DPoly(p) for p in polys]

    def _check(self, other):
        if not isinstance(other, Element):
            raise TypeError("expected an Element")
        if other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.vec == other.vec

    def __hash__(self):
        return hash(frozenset(self.vec.items()))

    def __bool__(self):
        return bool(self.vec)

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, vec_add(self.vec, other.vec))

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, vec_add(self.vec, other.vec, -ONE))

    def __neg__(self):
        return Element(self.algebra, vec_scale(self.vec, -ONE))

    def __mul__(self, c):
        if isinstance(c, DPoly):
            out = {}
            for k, a in enumerate(c.coeffs):
                if not a:
                    continue
                w = self.vec
                for _ in range(k):
                    w = vec_d(w, self.algebra.torsion)
                out = vec_add(out, w, a)
            return Element(self.algebra, out)
        return Element(self.algebra, vec_scale(self.vec, as_scalar(c)))

    __rmul__ = __mul__

    def d(self, k=1):
        w = self.vec
        for _ in range(k):
            w = vec_d(w, self.algebra.torsion)
        return Element(self.algebra, w)

    def parity(self):
        ps = {self.algebra.parities[g] for g, _ in self.vec}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def degree(self):
        return max((p for _, p in self.vec), default=-1)

    def __repr__(self):
        return vec_str(self.vec, self.algebra.names)

    __str__ = __repr__


def nth_product(x: Element, y: Element, n: int) -> Element:
    x._check(y)
    if n < 0:
        raise ValueError("only non-negative products are defined")
    return Element(x.algebra, x.algebra.nth_vec(x.vec, y.vec, n))


def lambda_bracket(x: Element, y: Element):
    """All nonzero products ``{n: x_(n) y}``."""
    x._check(y)
    return {n: Element(x.algebra, v) for n, v in sorted(x.algebra.products_vec(x.vec, y.vec).items())}


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomViolation:
    axiom: str
    where: tuple
    m: int | None
    n: int | None
    lhs: str
    rhs: str

    def as_dict(self):
        return {"axiom": self.axiom, "where": list(self.where), "m": self.m, "n": self.n,
                "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class AxiomReport:
    passed: bool
    violations: list
    checked: dict

    def __bool__(self):
        return self.passed

    def summary(self):
        if self.passed:
            return f"pass ({', '.join(f'{k}={v}' for k, v in self.checked.items())})"
        return f"FAIL: {len(self.violations)} violation(s); first: {self.violations[0]}"


def _nth_recursive(R, i, p, j, q, n, memo):
    """(d^p a^i)_(n)(d^q a^j) by literal recursion on (C1) and (C1')."""
    key = (p, q, n)
    if key in memo:
        return memo[key]
    if n < 0:
        res = {}
    elif p > 0:
        res = vec_scale(_nth_recursive(R, i, p - 1, j, q, n - 1, memo), as_scalar(-n)) if n else {}
    elif q > 0:
        res = vec_add(R.d_vec(_nth_recursive(R, i, 0, j, q - 1, n, memo)),
                      _nth_recursive(R, i, 0, j, q - 1, n - 1, memo), as_scalar(n))
    else:
        res = dict(R.product_vec(i, j, n))
    memo[key] = res
    return res


def check_axioms(R: ConformalSuperalgebra, shift_degree=3, max_violations=None) -> AxiomReport:
    """Verify (C0)-(C3) on generators; (C1)/(C1') re-asserted on d-shifts.

    Violations are data: the report lists every failing instance
    ``(axiom, generators, m, n, lhs, rhs)``.
    """
    viol = []
    names = R.names
    r = R.rank
    counts = {"C0": 0, "C1": 0, "C2": 0, "C3": 0, "torsion": 0}

    def full():
        return max_violations is not None and len(viol) >= max_violations

    # (C0)
    for (i, j), N in R._declared_bounds.items():
        counts["C0"] += 1
        have = R.order_bound.get((i, j), 0)
        if have > N:
            viol.append(AxiomViolation("C0", (names[i], names[j]), None, have - 1,
                                       vec_str(R.product_vec(i, j, have - 1), names), "0"))

    # torsion generators: d acts by t, so every bracket involving them vanishes
    for g, t in R.torsion.items():
        for j in range(r):
            counts["torsion"] += 1
            for (i1, i2) in ((g, j), (j, g)):
                if R.order_bound.get((i1, i2)):
                    viol.append(AxiomViolation(
                        "torsion", (names[i1], names[i2]), None, None,
                        vec_str(R.product_vec(i1, i2, R.order_bound[(i1, i2)] - 1), names), "0"))

    # (C1)/(C1') on shifted generators: recursion vs lambda-bracket route
    for i in range(r):
        for j in range(r):
            if i in R.torsion or j in R.torsion:
                continue
            memo = {}
            N = R.bound(i, j)
            if not N:
                continue
            for p in range(shift_degree + 1):
                for q in range(shift_degree + 1 - p):
                    if p == 0 and q == 0:
                        continue
                    lam = R.products_vec({(i, p): ONE}, {(j, q): ONE})
                    for n in range(N + p + 1):
                        counts["C1"] += 1
                        rec = _nth_recursive(R, i, p, j, q, n, memo)
                        fast = lam.get(n, {})
                        if rec != fast:
                            viol.append(AxiomViolation(
                                "C1", (f"d^{p} {names[i]}", f"d^{q} {names[j]}"), None, n,
                                vec_str(fast, names), vec_str(rec, names)))
    if full():
        return AxiomReport(False, viol, counts)

    # (C2) skew-symmetry
    for i in range(r):
        for j in range(r):
            N = max(R.bound(i, j), R.bound(j, i))
            if not N:
                continue
            s = -1 if (R.parities[i] & R.parities[j]) else 1
            for n in range(N):
                counts["C2"] += 1
                rhs = {}
                for jj in range(N - n):
                    v = R.product_vec(j, i, n + jj)
                    if not v:
                        continue
                    sign = s * (1 if (jj + n + 1) % 2 == 0 else -1)
                    w = v
                    for _ in range(jj):
                        w = R.d_vec(w)
                    rhs = vec_add(rhs, w, as_scalar(sign) / _fact(jj))
                lhs = R.product_vec(i, j, n)
                if reduce_vec(lhs, R.torsion) != reduce_vec(rhs, R.torsion):
                    viol.append(AxiomViolation("C2", (names[i], names[j]), None, n,
                                               vec_str(lhs, names), vec_str(rhs, names)))
                    if full():
                        return AxiomReport(False, viol, counts)

    # (C3) Jacobi identity, all m, n at once via lambda/mu polynomials
    lt = R._ltab_tuple
    for a in range(r):
        for b in range(r):
            s = -1 if (R.parities[a] & R.parities[b]) else 1
            for c in range(r):
                counts["C3"] += 1
                A, B, C = jacobi_polys(lt, lt, a, b, c, R.torsion)
                bad = _jacobi_mismatch(A, B, C, s)
                for (m, n), (lhs, rhs) in bad:
                    viol.append(AxiomViolation("C3", (names[a], names[b], names[c]), m, n,
                                               vec_str(lhs, names), vec_str(rhs, names)))
                if bad and full():
                    return AxiomReport(False, viol, counts)
    return AxiomReport(not viol, viol, counts)


def _jacobi_mismatch(A, B, C, s):
    """Compare A with C + s*B coefficientwise; return [((m,n),(lhs,rhs))]."""
    diff = dict(A)
    for key, v in C.items():
        x = diff.get(key, ZERO) - v
        diff[key] = x
    sc = as_scalar(s)
    for key, v in B.items():
        x = diff.get(key, ZERO) - sc * v
        diff[key] = x
    bad_mn = sorted({(m, n) for (m, n, _, _), v in diff.items() if v})
    out = []
    for (m, n) in bad_mn:
        f = _fact(m) * _fact(n)
        lhs = {(k, e): v * f for (mm, nn, k, e), v in A.items() if (mm, nn) == (m, n)}
        rhs = {}
        for (mm, nn, k, e), v in C.items():
            if (mm, nn) == (m, n):
                rhs[(k, e)] = rhs.get((k, e), ZERO) + v * f
        for (mm, nn, k, e), v in B.items():
            if (mm, nn) == (m, n):
                rhs[(k, e)] = rhs.get((k, e), ZERO) + sc * v * f
        rhs = {k: v for k, v in rhs.items() if v}
        out.append(((m, n), (lhs, rhs)))
    return out


def lambda_table(R: ConformalSuperalgebra):
    """Every nonzero ``a^i_(n) a^j`` as ``(name_i, name_j, n, Element)``, ordered by (i, j, n)."""
    return [(R.names[i], R.names[j], n, Element(R, dict(v)))
            for (i, j, n), v in sorted(R.table.items())]

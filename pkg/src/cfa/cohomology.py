"""Two-cocycles with values in the trivial module, coboundaries, truncated H^2
and central extensions.

A cocycle is stored by its values ``alpha_n(a^i, a^j)`` on generators.  Values
on shifted arguments follow from

    alpha_lam(d a, b) = -lam alpha_lam(a, b),   alpha_lam(a, d b) = lam alpha_lam(a, b)

where ``alpha_lam = sum_n lam^n / n! alpha_n``.  Torsion generators pair to
zero (a nonzero polynomial cannot be killed by ``lam + t``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .algebra import ConformalSuperalgebra, _fact, check_axioms
from .linalg import Echelon, nullspace
from .scalars import ONE, ZERO, as_scalar

__all__ = [
    "TwoCocycle",
    "CocycleError",
    "CocycleReport",
    "CentralExtension",
    "cocycle_check",
    "h2_dimension",
    "H2Result",
    "is_coboundary",
    "central_extend",
]


class CocycleError(ValueError):
    pass


def _gen_index(R, g):
    if isinstance(g, int):
        if not 0 <= g < R.rank:
            raise CocycleError(f"generator index {g} out of range")
        return g
    try:
        return R.index[g]
    except KeyError:
        raise CocycleError(f"unknown generator {g!r}") from None


def _skew_sign(R, i, j, n):
    """alpha_n(a^i, a^j) = sign * alpha_n(a^j, a^i)."""
    s = -1 if (R.parities[i] & R.parities[j]) else 1
    return s * (-1) ** (n + 1)


class TwoCocycle:
    """Values ``{(i, j, n): scalar}`` on generator pairs.

    Keys may use generator names.  A missing mirror entry ``(j, i, n)`` is
    filled in from the skew rule; a present one is kept as given so that
    :func:`cocycle_check` can report it.
    """

    def __init__(self, algebra: ConformalSuperalgebra, values=None):
        self.algebra = algebra
        R = algebra
        vals = {}
        for (a, b, n), v in (values or {}).items():
            i, j = _gen_index(R, a), _gen_index(R, b)
            n = int(n)
            if n < 0:
                raise CocycleError("cocycle index n must be non-negative")
            v = as_scalar(v)
            if v:
                vals[(i, j, n)] = v
        for (i, j, n), v in list(vals.items()):
            if (j, i, n) not in vals and i != j:
                vals[(j, i, n)] = v * _skew_sign(R, i, j, n)
        self.values = vals

    def __call__(self, a, b, n):
        R = self.algebra
        return self.values.get((_gen_index(R, a), _gen_index(R, b), n), ZERO)

    def n_support(self):
        return max((n for _, _, n in self.values), default=-1)

    def __add__(self, other):
        out = dict(self.values)
        for k, v in other.values.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        c = TwoCocycle(self.algebra)
        c.values = out
        return c

    def scale(self, c):
        c = as_scalar(c)
        out = TwoCocycle(self.algebra)
        out.values = {k: v * c for k, v in self.values.items() if v * c}
        return out

    def __eq__(self, other):
        return isinstance(other, TwoCocycle) and self.values == other.values

    def named(self):
        names = self.algebra.names
        return {(names[i], names[j], n): v for (i, j, n), v in sorted(self.values.items())}

    def __repr__(self):
        return f"TwoCocycle({self.named()})"

    @classmethod
    def coboundary(cls, R, f, n_max=None):
        """alpha_n(a, b) = f(a_(n) b) for f given as ``{(gen, power): scalar}``."""
        f = {(_gen_index(R, g), p): as_scalar(v) for (g, p), v in f.items()}
        out = {}
        for (i, j, n), vec in R.table.items():
            if n_max is not None and n > n_max:
                continue
            tot = ZERO
            for (k, e), c in vec.items():
                fv = f.get((k, e))
                if fv is None and k in R.torsion:
                    base = f.get((k, 0))
                    fv = base * R.torsion[k] ** e if base is not None else None
                if fv:
                    tot += c * fv
            if tot:
                out[(i, j, n)] = tot
        c = cls(R)
        c.values = out
        return c


# ---------------------------------------------------------------------------
# equations


def _free(R):
    return [i for i in range(R.rank) if i not in R.torsion]


class _System:
    """Cocycle equations for ``n <= n_bound``; unknowns are ``(n, i, j)``."""

    def __init__(self, R, n_bound):
        self.R = R
        self.n_bound = n_bound
        free = _free(R)
        self.free = free
        keys = []
        for n in range(n_bound + 1):
            for i in free:
                for j in free:
                    if R.parities[i] == R.parities[j]:
                        keys.append((n, i, j))
        self.keys = keys
        self.col = {k: t for t, k in enumerate(keys)}
        self._finv = [ONE / _fact(n) for n in range(n_bound + 64)]

    def var(self, i, j, n):
        return self.col.get((n, i, j))

    def skew_rows(self):
        R = self.R
        for (n, i, j), t in self.col.items():
            if (n, j, i) not in self.col:
                continue
            u = self.col[(n, j, i)]
            sign = _skew_sign(R, i, j, n)
            if t == u:
                if sign == -1:
                    yield ("skew", i, j, n), {t: ONE * 2}
                continue
            if t < u:
                yield ("skew", i, j, n), {t: ONE, u: ONE * -sign}

    def jacobi_rows(self, a, b, c):
        """Yield ``((a, b, c, x, y), {col: coeff})``; also returns overflow flags."""
        R = self.R
        ltab = R._ltab_tuple
        tors = R.torsion
        finv = self._finv
        nb = self.n_bound
        s = -1 if (R.parities[a] & R.parities[b]) else 1
        rows = {}

        def put(x, y, t, v):
            r = rows.setdefault((x, y), {})
            r[t] = r.get(t, ZERO) + v

        # alpha_lam(a, [b_mu c]) = sum v mu^m lam^(e+n)/n! alpha_n(a, k)
        for m, k, e, v in ltab.get((b, c), ()):
            if k in tors:
                continue
            for n in range(nb + 1):
                t = self.col.get((n, a, k))
                if t is not None:
                    put(e + n, m, t, v * finv[n])
        # -alpha_{lam+mu}([a_lam b], c): v lam^m (-1)^e (lam+mu)^(e+n)/n! alpha_n(k, c)
        for m, k, e, v in ltab.get((a, b), ()):
            if k in tors:
                continue
            w0 = -v if e % 2 == 0 else v
            for n in range(nb + 1):
                t = self.col.get((n, k, c))
                if t is None:
                    continue
                tot = e + n
                w = w0 * finv[n]
                for r in range(tot + 1):
                    put(m + r, tot - r, t, w * comb(tot, r))
        # -s alpha_mu(b, [a_lam c]) = -s v lam^m mu^(e+n)/n! alpha_n(b, k)
        for m, k, e, v in ltab.get((a, c), ()):
            if k in tors:
                continue
            for n in range(nb + 1):
                t = self.col.get((n, b, k))
                if t is not None:
                    put(m, e + n, t, -s * v * finv[n])
        for (x, y), row in rows.items():
            row = {t: v for t, v in row.items() if v}
            if row:
                yield (a, b, c, x, y), row

    def triples(self):
        R = self.R
        for a in self.free:
            for b in self.free:
                for c in self.free:
                    if (R.parities[a] + R.parities[b] + R.parities[c]) % 2 == 0:
                        yield a, b, c

    def all_rows(self):
        yield from self.skew_rows()
        for a, b, c in self.triples():
            for key, row in self.jacobi_rows(a, b, c):
                yield ("jacobi",) + key, row

    def vector(self, alpha):
        """Coordinates of ``alpha``; entries outside the unknowns returned separately."""
        vec, extra = {}, {}
        for (i, j, n), v in alpha.values.items():
            t = self.col.get((n, i, j))
            if t is None:
                extra[(i, j, n)] = v
            else:
                vec[t] = v
        return vec, extra

    def cocycle(self, vec):
        out = TwoCocycle(self.R)
        out.values = {(i, j, n): v for t, v in vec.items() if v
                      for (n, i, j) in [self.keys[t]]}
        return out


# ---------------------------------------------------------------------------


@dataclass
class CocycleReport:
    passed: bool
    violations: list = field(default_factory=list)
    checked: int = 0

    def __bool__(self):
        return self.passed


def cocycle_check(alpha: TwoCocycle, n_bound=None, max_violations=None) -> CocycleReport:
    """Verify the shift, skew and Jacobi conditions on generator triples.

    Violations are tuples: ``("skew", a, b, n, lhs, rhs)``,
    ``("torsion", a, b, n, value)``, ``("parity", a, b, n, value)`` and
    ``("jacobi", a, b, c, m, n, defect)`` where the defect is the coefficient
    of ``lam^m mu^n`` times ``m! n!``.
    """
    R = alpha.algebra
    names = R.names
    nb = max(alpha.n_support(), 0) if n_bound is None else n_bound
    viol = []
    checked = 0

    def full():
        return max_violations is not None and len(viol) >= max_violations

    for (i, j, n), v in sorted(alpha.values.items()):
        if i in R.torsion or j in R.torsion:
            viol.append(("torsion", names[i], names[j], n, v))
        elif R.parities[i] != R.parities[j]:
            viol.append(("parity", names[i], names[j], n, v))
    for (i, j, n), v in sorted(alpha.values.items()):
        if full():
            break
        checked += 1
        other = alpha.values.get((j, i, n), ZERO)
        if v != other * _skew_sign(R, i, j, n):
            viol.append(("skew", names[i], names[j], n, v, other * _skew_sign(R, i, j, n)))
    sysm = _System(R, max(nb, alpha.n_support()))
    vec, _ = sysm.vector(alpha)
    for a, b, c in sysm.triples():
        if full():
            break
        checked += 1
        for (_, _, _, x, y), row in sysm.jacobi_rows(a, b, c):
            d = sum((vec[t] * w for t, w in row.items() if t in vec), ZERO)
            if d:
                viol.append(("jacobi", names[a], names[b], names[c], x, y,
                             d * _fact(x) * _fact(y)))
                if full():
                    break
    return CocycleReport(not viol, viol, checked)


# ---------------------------------------------------------------------------


def _fkeys(R, f_degree_bound):
    keys = []
    for k in range(R.rank):
        if k in R.torsion:
            keys.append((k, 0))
        else:
            keys.extend((k, p) for p in range(f_degree_bound + 1))
    return keys


def _coboundary_columns(R, sysm, f_degree_bound):
    """For each f-unknown, its image alpha_n(a, b) = f(a_(n) b).

    Coordinates outside the truncation get negative column ids so they count
    as obstructions.
    """
    fk = _fkeys(R, f_degree_bound)
    fidx = {k: u for u, k in enumerate(fk)}
    cols = [dict() for _ in fk]
    overflow = {}
    for (i, j, n), vec in R.table.items():
        if i in R.torsion or j in R.torsion:
            continue
        t = sysm.col.get((n, i, j))
        if t is None:
            t = overflow.setdefault((n, i, j), -1 - len(overflow))
        for (k, e), c in vec.items():
            if k in R.torsion:
                u, c = fidx[(k, 0)], c * R.torsion[k] ** e
            else:
                u = fidx.get((k, e))
            if u is None or not c:
                continue
            cols[u][t] = cols[u].get(t, ZERO) + c
    return fk, [{t: v for t, v in col.items() if v} for col in cols]


@dataclass
class H2Result:
    dim: int
    representatives: list
    n_bound: int
    f_degree_bound: int
    dim_cocycles: int = 0
    dim_trivial: int = 0

    def __int__(self):
        return self.dim

    def __iter__(self):
        return iter((self.dim, self.representatives))


def h2_dimension(R: ConformalSuperalgebra, n_bound=6, f_degree_bound=8) -> H2Result:
    """dim of truncated cocycles modulo coboundaries of bounded f.

    Exact for the truncated problem only; both bounds are reported back.
    """
    sysm = _System(R, n_bound)
    cons = Echelon()
    row_list = []
    for _, row in sysm.all_rows():
        if cons.add(row):
            row_list.append(row)
    Zbasis = nullspace(cons, range(len(sysm.keys)))

    # B cap Z: combinations y of f-columns with every constraint and overflow zero
    fk, fcols = _coboundary_columns(R, sysm, f_degree_bound)
    by_col = {}
    for u, col in enumerate(fcols):
        for t, v in col.items():
            by_col.setdefault(t, []).append((u, v))
    sys_rows = []
    for row in cons.pivots.values():
        r = {}
        for t, w in row.items():
            for u, v in by_col.get(t, ()):
                r[u] = r.get(u, ZERO) + w * v
        r = {u: v for u, v in r.items() if v}
        if r:
            sys_rows.append(r)
    for t, lst in by_col.items():
        if t < 0:
            sys_rows.append({u: v for u, v in lst})
    K = nullspace(sys_rows, range(len(fcols)))
    E = Echelon()
    trivial = 0
    for y in K:
        vec = {}
        for u, c in y.items():
            for t, v in fcols[u].items():
                vec[t] = vec.get(t, ZERO) + c * v
        if E.add(vec):
            trivial += 1
    reps = []
    for z in Zbasis:
        r = E.reduce(z)
        if r and E.add(r):
            reps.append(sysm.cocycle(_normalize(r)))
    return H2Result(len(reps), reps, n_bound, f_degree_bound, len(Zbasis), trivial)


def _normalize(vec):
    lead = vec[min(vec)]
    return {t: v / lead for t, v in vec.items()}


def is_coboundary(alpha: TwoCocycle, f_degree_bound=None):
    """Solve ``alpha_n(a, b) = f(a_(n) b)`` for a C-linear f.

    Returns ``(True, f)`` with ``f = {(name, power): scalar}`` or ``(False, None)``.
    Validity of alpha is not required.
    """
    R = alpha.algebra
    if f_degree_bound is None:
        f_degree_bound = max((e for vec in R.table.values() for (_, e) in vec), default=0)
    nmax = max(alpha.n_support(), max((n for _, _, n in R.table), default=-1), 0)
    sysm = _System(R, nmax)
    fk, fcols = _coboundary_columns(R, sysm, f_degree_bound)
    target, extra = sysm.vector(alpha)
    if extra:
        # values on torsion or mixed-parity pairs: f cannot produce them
        return False, None
    ech = Echelon(track=True)
    for u, col in enumerate(fcols):
        ech.add(col, label=u)
    sol = ech.express(target)
    if sol is None:
        return False, None
    names = R.names
    f = {(names[k], p): sol[u] for u, (k, p) in enumerate(fk) if sol.get(u)}
    return True, f


# ---------------------------------------------------------------------------


@dataclass
class CentralExtension:
    base: ConformalSuperalgebra
    cocycle: TwoCocycle
    algebra: ConformalSuperalgebra
    central: int

    def quotient(self):
        """The extended table with the central generator dropped."""
        R = self.base
        keep = {}
        for (i, j, n), vec in self.algebra.table.items():
            if i == self.central or j == self.central:
                continue
            v = {k: c for k, c in vec.items() if k[0] != self.central}
            if v:
                keep[(i, j, n)] = v
        return ConformalSuperalgebra(R.generators, keep, R.torsion, name=R.name)


def _fresh_name(R, base="C"):
    name = base
    while name in R.index:
        name += "_"
    return name


def central_extend(R: ConformalSuperalgebra, alpha: TwoCocycle, check=True) -> CentralExtension:
    if alpha.algebra is not R and not alpha.algebra.same_table(R):
        raise CocycleError("cocycle belongs to a different algebra")
    if check:
        rep = cocycle_check(alpha)
        if not rep.passed:
            raise CocycleError(f"invalid cocycle: {rep.violations[:3]}")
    cname = _fresh_name(R)
    ci = R.rank
    gens = list(R.generators) + [(cname, 0)]
    prods = {k: dict(v) for k, v in R.table.items()}
    for (i, j, n), v in alpha.values.items():
        vec = prods.setdefault((i, j, n), {})
        vec[(ci, 0)] = vec.get((ci, 0), ZERO) + v
    tors = dict(R.torsion)
    tors[ci] = ZERO
    ext = ConformalSuperalgebra(gens, prods, tors, name=f"{R.name}~")
    return CentralExtension(R, alpha, ext, ci)

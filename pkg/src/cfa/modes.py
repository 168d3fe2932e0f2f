"""Brute-force mode expansion: the windowed Lie superalgebra of modes a_(m).

Products of generators are turned into mode brackets through

    [a_(m), b_(n)] = sum_j C(m, j) (a_(j) b)_(m+n-j),   (d c)_(s) = -s c_(s-1)

with generalised binomials for negative m.  A torsion generator c with
``d c = t c`` keeps the single mode c_(-1); c_(-1-k) = t^k / k! c_(-1) and
c_(s) = 0 for s >= 0.  Results that leave the window are flagged.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .scalars import ONE, ZERO, Gaussian

try:  # optional accelerator
    import numba as _nb
    import numpy as _np
except ImportError:  # pragma: no cover
    _nb = None
    _np = None

__all__ = [
    "ModeTable",
    "ModuleModeTable",
    "ModeReport",
    "expand_modes",
    "jacobi_check",
    "locality_order",
    "expand_module_modes",
    "module_mode_check",
    "gen_binomial",
]

DEFAULT_WINDOW = (-6, 6)
_PY_LIMIT = 64  # mode count up to which the exact pure-Python check is used


def gen_binomial(m, j):
    """C(m, j) for any integer m and j >= 0."""
    num = 1
    for t in range(j):
        num *= m - t
    return num // math.factorial(j)


def _falling(s, e):
    out = 1
    for t in range(e):
        out *= s - t
    return out


def _add(dst, key, v):
    s = dst.get(key, ZERO) + v
    if s:
        dst[key] = s
    else:
        dst.pop(key, None)


def _expand_vec(vec, s, torsion, lo, hi, out, coeff):
    """Add coeff * (vec)_(s) to ``out`` as basis modes; return True on window loss."""
    lost = False
    for (k, e), c in vec.items():
        t = torsion.get(k)
        if t is not None:
            if s >= 0:
                continue
            kk = -1 - s
            f = c * coeff * (t ** kk if kk else ONE) / math.factorial(kk)
            if not f:
                continue
            if not lo <= -1 <= hi:
                lost = True
                continue
            _add(out, (k, -1), f)
            continue
        f = _falling(s, e)
        if not f:
            continue
        r = s - e
        if not lo <= r <= hi:
            lost = True
            continue
        _add(out, (k, r), c * coeff * (f if e % 2 == 0 else -f))
    return lost


def _mode_list(names, torsion, lo, hi):
    modes = []
    for i in range(len(names)):
        if i in torsion:
            if lo <= -1 <= hi:
                modes.append((i, -1))
        else:
            modes.extend((i, m) for m in range(lo, hi + 1))
    return modes


@dataclass
class ModeTable:
    """Windowed mode brackets.

    ``brackets[(x, y)]`` is ``{mode: coeff}`` for modes ``x = (i, m)``; pairs
    in ``lost`` had contributions outside the window and are incomplete.
    """

    window: tuple
    names: list
    parities: list
    torsion: dict
    modes: list
    brackets: dict = field(default_factory=dict)
    lost: set = field(default_factory=set)

    def bracket(self, x, y):
        return self.brackets.get((x, y), {})

    def label(self, x):
        return f"{self.names[x[0]]}_({x[1]})"

    def parity(self, x):
        return self.parities[x[0]]


def expand_modes(R, window=DEFAULT_WINDOW) -> ModeTable:
    lo, hi = window
    modes = _mode_list(R.names, R.torsion, lo, hi)
    T = ModeTable((lo, hi), list(R.names), list(R.parities), dict(R.torsion), modes)
    by_pair = {}
    for (i, j, n), vec in R.table.items():
        by_pair.setdefault((i, j), []).append((n, vec))
    for x in modes:
        i, m = x
        if i in R.torsion:
            continue
        for y in modes:
            j, n = y
            prods = by_pair.get((i, j))
            if not prods or j in R.torsion:
                continue
            out = {}
            lost = False
            for p, vec in prods:
                c = gen_binomial(m, p)
                if c:
                    lost |= _expand_vec(vec, m + n - p, R.torsion, lo, hi, out, ONE * c)
            if out:
                T.brackets[(x, y)] = out
            if lost:
                T.lost.add((x, y))
    return T


def locality_order(R, i, j):
    """1 + max{n : a^i_(n) a^j != 0}, or 0."""
    i = R.index[i] if isinstance(i, str) else i
    j = R.index[j] if isinstance(j, str) else j
    return R.bound(i, j)


@dataclass
class ModeReport:
    passed: bool
    violations: list = field(default_factory=list)
    checked: int = 0
    skipped: int = 0
    antisymmetry_violations: list = field(default_factory=list)
    engine: str = "python"

    def __bool__(self):
        return self.passed


def _sign(T, x, y):
    return -1 if (T.parity(x) & T.parity(y)) else 1


def _antisymmetry(T, limit):
    bad = []
    for x in T.modes:
        for y in T.modes:
            if (x, y) in T.lost or (y, x) in T.lost:
                continue
            a = T.bracket(x, y)
            b = T.bracket(y, x)
            s = _sign(T, x, y)
            if any(a.get(k, ZERO) != -s * v for k, v in b.items()) or any(k not in b for k in a):
                bad.append((T.label(x), T.label(y)))
                if len(bad) >= limit:
                    break
    return bad


def _jacobi_python(T, limit):
    modes = T.modes
    br = T.brackets
    lost = T.lost
    viol = []
    checked = skipped = 0
    for x in modes:
        for y in modes:
            s = _sign(T, x, y)
            xy = br.get((x, y), {})
            bad_xy = (x, y) in lost
            for z in modes:
                if bad_xy or (y, z) in lost or (x, z) in lost:
                    skipped += 1
                    continue
                yz = br.get((y, z), {})
                xz = br.get((x, z), {})
                if (any((x, w) in lost for w in yz) or any((w, z) in lost for w in xy)
                        or any((y, w) in lost for w in xz)):
                    skipped += 1
                    continue
                checked += 1
                acc = {}
                for w, c in yz.items():
                    for u, d in br.get((x, w), {}).items():
                        _add(acc, u, c * d)
                for w, c in xy.items():
                    for u, d in br.get((w, z), {}).items():
                        _add(acc, u, -c * d)
                for w, c in xz.items():
                    for u, d in br.get((y, w), {}).items():
                        _add(acc, u, -s * c * d)
                if acc and len(viol) < limit:
                    viol.append(_witness(T, x, y, z))
                elif acc:
                    viol.append(None)
    return [v for v in viol if v is not None], len(viol), checked, skipped


def _witness(T, x, y, z):
    br = T.brackets
    s = _sign(T, x, y)
    lhs, rhs = {}, {}
    for w, c in br.get((y, z), {}).items():
        for u, d in br.get((x, w), {}).items():
            _add(lhs, u, c * d)
    for w, c in br.get((x, y), {}).items():
        for u, d in br.get((w, z), {}).items():
            _add(rhs, u, c * d)
    for w, c in br.get((x, z), {}).items():
        for u, d in br.get((y, w), {}).items():
            _add(rhs, u, s * c * d)
    fmt = lambda v: {T.label(k): val for k, val in sorted(v.items())}
    return {"x": T.label(x), "y": T.label(y), "z": T.label(z), "lhs": fmt(lhs), "rhs": fmt(rhs)}


# ---------------------------------------------------------------------------
# numba path: brackets as CSR over mode indices, Gaussian integers scaled by D


def _parts(c):
    if isinstance(c, Gaussian):
        return c.real, c.imag
    return c, ZERO


def _pack(T):
    idx = {x: k for k, x in enumerate(T.modes)}
    M = len(T.modes)
    D = 1
    for vec in T.brackets.values():
        for c in vec.values():
            for q in _parts(c):
                D = math.lcm(D, int(q.denominator))
    ptr = [0] * (M * M + 1)
    ent_i, ent_re, ent_im = [], [], []
    amax = 0
    lmax = 0
    for a in range(M):
        for b in range(M):
            vec = T.brackets.get((T.modes[a], T.modes[b]))
            if vec:
                lmax = max(lmax, len(vec))
                for u, c in vec.items():
                    re, im = _parts(c)
                    re, im = int(re * D), int(im * D)
                    amax = max(amax, abs(re), abs(im))
                    ent_i.append(idx[u])
                    ent_re.append(re)
                    ent_im.append(im)
            ptr[a * M + b + 1] = len(ent_i)
    # worst-case accumulator magnitude
    if 12 * (lmax * lmax + 1) * (amax * amax + 1) >= 2 ** 62:
        return None
    lost = _np.zeros(M * M, dtype=_np.bool_)
    for x, y in T.lost:
        lost[idx[x] * M + idx[y]] = True
    par = _np.array([T.parity(x) for x in T.modes], dtype=_np.int64)
    return (M, _np.array(ptr, dtype=_np.int64), _np.array(ent_i, dtype=_np.int64),
            _np.array(ent_re, dtype=_np.int64), _np.array(ent_im, dtype=_np.int64), lost, par)


_kernel = None


def _get_kernel():
    global _kernel
    if _kernel is not None:
        return _kernel

    @_nb.njit(cache=True, parallel=True)
    def kern(M, ptr, ei, er, em, lost, par):
        nviol = _np.zeros(M, dtype=_np.int64)
        nchk = _np.zeros(M, dtype=_np.int64)
        nskip = _np.zeros(M, dtype=_np.int64)
        first = _np.full((M, 2), -1, dtype=_np.int64)
        for x in _nb.prange(M):
            are = _np.zeros(M, dtype=_np.int64)
            aim = _np.zeros(M, dtype=_np.int64)
            touched = _np.zeros(M, dtype=_np.int64)
            mark = _np.zeros(M, dtype=_np.bool_)
            for y in range(M):
                s = -1 if (par[x] & par[y]) else 1
                pxy = x * M + y
                for z in range(M):
                    pyz = y * M + z
                    pxz = x * M + z
                    if lost[pxy] or lost[pyz] or lost[pxz]:
                        nskip[x] += 1
                        continue
                    bad = False
                    for t in range(ptr[pyz], ptr[pyz + 1]):
                        if lost[x * M + ei[t]]:
                            bad = True
                    for t in range(ptr[pxy], ptr[pxy + 1]):
                        if lost[ei[t] * M + z]:
                            bad = True
                    for t in range(ptr[pxz], ptr[pxz + 1]):
                        if lost[y * M + ei[t]]:
                            bad = True
                    if bad:
                        nskip[x] += 1
                        continue
                    nchk[x] += 1
                    nt = 0
                    for part in range(3):
                        if part == 0:
                            p0, sg = pyz, 1
                        elif part == 1:
                            p0, sg = pxy, -1
                        else:
                            p0, sg = pxz, -s
                        for t in range(ptr[p0], ptr[p0 + 1]):
                            w = ei[t]
                            cr = er[t] * sg
                            ci = em[t] * sg
                            if part == 0:
                                q = x * M + w
                            elif part == 1:
                                q = w * M + z
                            else:
                                q = y * M + w
                            for u in range(ptr[q], ptr[q + 1]):
                                k = ei[u]
                                if not mark[k]:
                                    mark[k] = True
                                    touched[nt] = k
                                    nt += 1
                                are[k] += cr * er[u] - ci * em[u]
                                aim[k] += cr * em[u] + ci * er[u]
                    nz = False
                    for t in range(nt):
                        k = touched[t]
                        if are[k] != 0 or aim[k] != 0:
                            nz = True
                        are[k] = 0
                        aim[k] = 0
                        mark[k] = False
                    if nz:
                        if nviol[x] == 0:
                            first[x, 0] = y
                            first[x, 1] = z
                        nviol[x] += 1
        return nviol, nchk, nskip, first

    _kernel = kern
    return kern


def _jacobi_numba(T, limit):
    packed = _pack(T)
    if packed is None:
        return None
    M, ptr, ei, er, em, lost, par = packed
    with warnings.catch_warnings():
        # threading-layer notices from numba are not actionable here
        warnings.simplefilter("ignore")
        nviol, nchk, nskip, first = _get_kernel()(M, ptr, ei, er, em, lost, par)
    viol = []
    for x in range(M):
        if nviol[x] and len(viol) < limit:
            viol.append(_witness(T, T.modes[x], T.modes[first[x, 0]], T.modes[first[x, 1]]))
    return viol, int(nviol.sum()), int(nchk.sum()), int(nskip.sum())


def jacobi_check(T: ModeTable, max_witnesses=10, engine="auto") -> ModeReport:
    """Super-Jacobi and antisymmetry on all in-window triples.

    ``engine`` is "python", "numba" or "auto" (numba above a size threshold).
    """
    res = None
    used = "python"
    if engine == "numba" or (engine == "auto" and len(T.modes) > _PY_LIMIT):
        if _nb is None and engine == "numba":
            raise RuntimeError("numba is not installed")
        if _nb is not None:
            res = _jacobi_numba(T, max_witnesses)
            used = "numba"
    if res is None:
        res = _jacobi_python(T, max_witnesses)
        used = "python"
    viol, nviol, checked, skipped = res
    anti = _antisymmetry(T, max_witnesses)
    return ModeReport(nviol == 0 and not anti, viol, checked, skipped, anti, used)


# ---------------------------------------------------------------------------
# modules


@dataclass
class ModuleModeTable:
    """``action[(x, v)]`` = x v for algebra mode x and module mode v."""

    algebra_modes: ModeTable
    names: list
    parities: list
    torsion: dict
    modes: list
    action: dict = field(default_factory=dict)
    lost: set = field(default_factory=set)

    def act(self, x, v):
        return self.action.get((x, v), {})

    def label(self, v):
        return f"{self.names[v[0]]}_({v[1]})"


def expand_module_modes(M, window=DEFAULT_WINDOW):
    """Mode action table of a module together with its commutator check."""
    lo, hi = window
    T = expand_modes(M.algebra, window)
    vm = _mode_list(M.names, M.torsion, lo, hi)
    MT = ModuleModeTable(T, list(M.names), list(M.parities), dict(M.torsion), vm)
    by_pair = {}
    for (i, b, n), vec in M.table.items():
        by_pair.setdefault((i, b), []).append((n, vec))
    for x in T.modes:
        i, m = x
        for v in vm:
            b, n = v
            prods = by_pair.get((i, b))
            if not prods:
                continue
            out = {}
            lost = False
            for p, vec in prods:
                c = gen_binomial(m, p)
                if c:
                    lost |= _expand_vec(vec, m + n - p, M.torsion, lo, hi, out, ONE * c)
            if out:
                MT.action[(x, v)] = out
            if lost:
                MT.lost.add((x, v))
    return MT, module_mode_check(MT)


def module_mode_check(MT: ModuleModeTable, max_witnesses=10) -> ModeReport:
    """[x, y] v = x (y v) - s y (x v) on in-window data."""
    T = MT.algebra_modes
    viol = []
    checked = skipped = 0
    nviol = 0
    for x in T.modes:
        for y in T.modes:
            s = _sign(T, x, y)
            xy = T.bracket(x, y)
            for v in MT.modes:
                if ((x, y) in T.lost or (y, v) in MT.lost or (x, v) in MT.lost
                        or any((w, v) in MT.lost for w in xy)
                        or any((x, u) in MT.lost for u in MT.act(y, v))
                        or any((y, u) in MT.lost for u in MT.act(x, v))):
                    skipped += 1
                    continue
                checked += 1
                acc = {}
                for u, c in MT.act(y, v).items():
                    for k, d in MT.act(x, u).items():
                        _add(acc, k, c * d)
                for u, c in MT.act(x, v).items():
                    for k, d in MT.act(y, u).items():
                        _add(acc, k, -s * c * d)
                for w, c in xy.items():
                    for k, d in MT.act(w, v).items():
                        _add(acc, k, -c * d)
                if acc:
                    nviol += 1
                    if len(viol) < max_witnesses:
                        viol.append({"x": T.label(x), "y": T.label(y), "v": MT.label(v),
                                     "defect": {MT.label(k): c for k, c in sorted(acc.items())}})
    return ModeReport(nviol == 0, viol, checked, skipped)

"""Finite-dimensional Lie superalgebras given by structure constants."""

from __future__ import annotations

from .scalars import ONE, ZERO, as_scalar

__all__ = ["LieSuperalgebraData", "LieDataError", "builtin_lie", "BUILTIN_LIE", "check_representation"]


class LieDataError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _add(dst, src, c=ONE):
    for k, v in src.items():
        s = dst.get(k, ZERO) + c * v
        if s:
            dst[k] = s
        else:
            dst.pop(k, None)
    return dst


class LieSuperalgebraData:
    """Basis with parities and brackets ``[a, b] = sum c_k a_k``.

    ``brackets`` maps name pairs to ``{name: coeff}``; one direction per pair is
    enough, the other is filled in by super-antisymmetry (and checked when both
    are given).  Jacobi is verified at construction.
    """

    def __init__(self, basis, brackets=None, name="g", form=None):
        self.name = name
        self.basis = [(str(n), int(p) & 1) for n, p in basis]
        self.names = [b[0] for b in self.basis]
        self.parities = [b[1] for b in self.basis]
        self.index = {n: i for i, n in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise LieDataError("duplicate basis names")
        dim = len(self.basis)
        table = {}
        given = {}
        for (a, b), val in (brackets or {}).items():
            try:
                i, j = self.index[a], self.index[b]
                vec = {self.index[k]: as_scalar(v) for k, v in val.items() if as_scalar(v)}
            except KeyError as exc:
                raise LieDataError(f"unknown basis element {exc.args[0]!r}") from None
            want = self.parities[i] ^ self.parities[j]
            for k in vec:
                if self.parities[k] != want:
                    raise LieDataError(f"bracket [{a},{b}] has wrong parity", (a, b))
            given[(i, j)] = vec
        for (i, j), vec in given.items():
            s = -1 if (self.parities[i] & self.parities[j]) else 1
            mirror = {k: -s * v for k, v in vec.items()}
            if (j, i) in given and given[(j, i)] != mirror:
                raise LieDataError(
                    f"[{self.names[i]},{self.names[j]}] and [{self.names[j]},{self.names[i]}] "
                    "violate super-antisymmetry", (self.names[i], self.names[j]))
            if i == j and vec and s == 1:
                raise LieDataError(f"[{self.names[i]},{self.names[i]}] must vanish", (self.names[i],) * 2)
            table[(i, j)] = dict(vec)
            table[(j, i)] = mirror
        self.table = {k: v for k, v in table.items() if v}
        self.dim = dim
        w = self.jacobi_witness()
        if w is not None:
            raise LieDataError(f"Jacobi identity fails on {w}", w)
        self.form = None
        if form is not None:
            self.form = {(self.index[a], self.index[b]): as_scalar(v) for (a, b), v in form.items()}

    def bracket_vec(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                v = self.table.get((i, j))
                if v:
                    _add(out, v, a * b)
        return out

    def jacobi_witness(self):
        """First triple violating [a,[b,c]] = [[a,b],c] + s[b,[a,c]], or None."""
        n = len(self.basis)
        for a in range(n):
            for b in range(n):
                s = -1 if (self.parities[a] & self.parities[b]) else 1
                ea, eb = {a: ONE}, {b: ONE}
                ab = self.bracket_vec(ea, eb)
                for c in range(n):
                    ec = {c: ONE}
                    lhs = self.bracket_vec(ea, self.bracket_vec(eb, ec))
                    rhs = self.bracket_vec(ab, ec)
                    _add(rhs, self.bracket_vec(eb, self.bracket_vec(ea, ec)), as_scalar(s))
                    if lhs != rhs:
                        return (self.names[a], self.names[b], self.names[c])
        return None

    def ad_matrix(self, i):
        n = self.dim
        M = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            for k, v in self.table.get((i, j), {}).items():
                M[k][j] = v
        return M

    def killing(self, i, j):
        """Supertrace of ad a_i ad a_j."""
        A, B = self.ad_matrix(i), self.ad_matrix(j)
        n = self.dim
        tot = ZERO
        for r in range(n):
            acc = ZERO
            for k in range(n):
                if A[r][k] and B[k][r]:
                    acc += A[r][k] * B[k][r]
            tot += -acc if self.parities[r] else acc
        return tot

    def killing_form(self):
        return {(i, j): self.killing(i, j) for i in range(self.dim) for j in range(self.dim)
                if self.killing(i, j)}

    def bilinear(self, i, j):
        if self.form is not None:
            return self.form.get((i, j), ZERO)
        return self.killing(i, j)

    def __repr__(self):
        return f"<LieSuperalgebraData {self.name} dim={self.dim}>"


def _sl2():
    return LieSuperalgebraData(
        [("e", 0), ("f", 0), ("h", 0)],
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}}, name="sl2")


def _gl2():
    return LieSuperalgebraData(
        [("e", 0), ("f", 0), ("h", 0), ("z", 0)],
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}}, name="gl2")


def _borel():
    return LieSuperalgebraData([("h", 0), ("e", 0)], {("h", "e"): {"e": 2}}, name="borel")


def _h3():
    return LieSuperalgebraData([("e", 0), ("f", 0), ("z", 0)], {("e", "f"): {"z": 1}}, name="h3")


def _abelian(n=1):
    return LieSuperalgebraData([(f"a{k + 1}", 0) for k in range(n)], {}, name=f"abelian{n}")


def _osp12():
    # e, f, h even; x, y odd: [x,x]=2e, [y,y]=-2f, [x,y]=h
    return LieSuperalgebraData(
        [("e", 0), ("f", 0), ("h", 0), ("x", 1), ("y", 1)],
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2},
         ("h", "x"): {"x": 1}, ("h", "y"): {"y": -1},
         ("e", "y"): {"x": -1}, ("f", "x"): {"y": -1},
         ("x", "x"): {"e": 2}, ("y", "y"): {"f": -2}, ("x", "y"): {"h": 1}},
        name="osp12")


BUILTIN_LIE = {
    "sl2": _sl2,
    "gl2": _gl2,
    "borel": _borel,
    "h3": _h3,
    "abelian": _abelian,
    "osp12": _osp12,
}


def builtin_lie(name):
    if name.startswith("abelian") and name[7:].isdigit():
        return _abelian(int(name[7:]))
    try:
        return BUILTIN_LIE[name]()
    except KeyError:
        raise LieDataError(f"unknown Lie algebra {name!r}") from None


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[r][t] * B[t][c] for t in range(k) if A[r][t] and B[t][c]), ZERO)
             for c in range(m)] for r in range(n)]


def check_representation(g: LieSuperalgebraData, mats, parities=None):
    """Return None if ``mats`` (name -> square matrix) represent ``g``, else a witness pair."""
    mats = {k: [[as_scalar(x) for x in row] for row in M] for k, M in mats.items()}
    dim = None
    for k in g.names:
        if k not in mats:
            raise LieDataError(f"missing matrix for {k}")
        if dim is None:
            dim = len(mats[k])
        if len(mats[k]) != dim or any(len(r) != dim for r in mats[k]):
            raise LieDataError(f"matrix for {k} has the wrong shape")
    for i, a in enumerate(g.names):
        for j, b in enumerate(g.names):
            s = -1 if (g.parities[i] & g.parities[j]) else 1
            AB = _matmul(mats[a], mats[b])
            BA = _matmul(mats[b], mats[a])
            lhs = [[AB[r][c] - s * BA[r][c] for c in range(dim)] for r in range(dim)]
            rhs = [[ZERO] * dim for _ in range(dim)]
            for k, v in g.table.get((i, j), {}).items():
                Mk = mats[g.names[k]]
                for r in range(dim):
                    for c in range(dim):
                        if Mk[r][c]:
                            rhs[r][c] += v * Mk[r][c]
            if lhs != rhs:
                return (a, b)
    return None

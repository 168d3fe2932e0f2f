"""Linear algebra over the principal ideal domain C[d].

Matrices are stored by columns; a column is a tuple of :class:`DPoly` of
length ``rows``.  Column spans are maintained by :class:`PdSpan`, an
incremental column echelon form built from unimodular 2x2 column operations
(extended Euclid), which also yields kernels when the operations are tracked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import ONE, DimensionError, DPoly, dpoly_xgcd

__all__ = [
    "PdMatrix",
    "PdSpan",
    "Size",
    "hermite_form",
    "smith_diagonal",
    "size_of",
    "membership",
    "express",
    "kernel",
]

_ZERO = DPoly()
_ONE = DPoly.const(1)


def _p(x) -> DPoly:
    return x if isinstance(x, DPoly) else DPoly.const(x)


@dataclass(frozen=True, order=True)
class Size:
    """Size (r, d): free rank and C-dimension of the torsion part."""

    r: int
    d: int


class PdMatrix:
    """Rectangular matrix over C[d], stored column-wise."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, columns=()):
        cols = []
        for c in columns:
            c = tuple(_p(x) for x in c)
            if len(c) != rows:
                raise DimensionError(f"column of length {len(c)} in a {rows}-row matrix")
            cols.append(c)
        self.rows = rows
        self.columns = tuple(cols)
        self.cols = len(cols)

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), [[rows[i][j] for i in range(len(rows))] for j in range(ncols)])

    @classmethod
    def identity(cls, n):
        return cls(n, [[_ONE if i == j else _ZERO for i in range(n)] for j in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, [[_ZERO] * rows for _ in range(cols)])

    def entry(self, i, j) -> DPoly:
        return self.columns[j][i]

    def row_lists(self):
        return [[self.columns[j][i] for j in range(self.cols)] for i in range(self.rows)]

    def apply(self, vec):
        """Matrix-vector product ``M @ vec`` over C[d]."""
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} for {self.cols} columns")
        out = [_ZERO] * self.rows
        for c, x in zip(self.columns, vec):
            x = _p(x)
            if not x:
                continue
            for i, e in enumerate(c):
                if e:
                    out[i] = out[i] + x * e
        return out

    def is_zero(self):
        return all(not e for c in self.columns for e in c)

    def __eq__(self, other):
        if not isinstance(other, PdMatrix):
            return NotImplemented
        return self.rows == other.rows and self.columns == other.columns

    def __hash__(self):
        return hash((self.rows, self.columns))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.row_lists())
        return f"PdMatrix({self.rows}x{self.cols}: [{body}])"


def _axpy_col(dst, q, src):
    return [a - q * b if b else a for a, b in zip(dst, src)]


def _first_nonzero(col):
    for i, e in enumerate(col):
        if e:
            return i
    return None


class PdSpan:
    """Incremental column echelon form of a C[d]-submodule of C[d]^rows.

    Each stored pivot column has zeros above its pivot row and a monic pivot
    entry.  With ``track`` set, every column carries the combination (a list
    of DPoly over inserted labels ``0..k-1``) that produced it; columns that
    reduce to zero are kept as kernel relations.
    """

    def __init__(self, rows: int, track: bool = False):
        self.rows = rows
        self.track = track
        self._piv = {}  # pivot row -> [column, combo]
        self.relations = []  # combos of columns that reduced to zero
        self._nlabels = 0

    def __len__(self):
        return len(self._piv)

    @property
    def rank(self):
        return len(self._piv)

    def _combo_unit(self, label):
        if not self.track:
            return None
        return {label: _ONE}

    @staticmethod
    def _combo_axpy(dst, q, src):
        if dst is None:
            return None
        out = dict(dst)
        for k, v in src.items():
            x = out.get(k, _ZERO) - q * v
            if x:
                out[k] = x
            else:
                out.pop(k, None)
        return out

    @staticmethod
    def _combo_lin(a, ca, b, cb):
        if a is None:
            return None
        out = {}
        for src, c in ((a, ca), (b, cb)):
            if not c:
                continue
            for k, v in src.items():
                x = out.get(k, _ZERO) + c * v
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
        return out

    def insert(self, column) -> bool:
        """Insert a column; return True if the span changed."""
        v = [_p(x) for x in column]
        if len(v) != self.rows:
            raise DimensionError(f"column of length {len(v)} in a rank-{self.rows} ambient")
        label = self._nlabels
        self._nlabels += 1
        cb = self._combo_unit(label)
        changed = False
        while True:
            r = _first_nonzero(v)
            if r is None:
                if self.track:
                    self.relations.append(cb)
                return changed
            slot = self._piv.get(r)
            if slot is None:
                inv = ONE / v[r].lead()
                v = [e * inv for e in v]
                if cb is not None:
                    cb = {k: x * inv for k, x in cb.items()}
                self._piv[r] = [v, cb]
                return True
            pcol, pcb = slot
            p, e = pcol[r], v[r]
            q, rem = e.divmod(p)
            if not rem:
                v = _axpy_col(v, q, pcol)
                cb = self._combo_axpy(cb, q, pcb) if cb is not None else None
                continue
            g, s, t = dpoly_xgcd(p, e)
            eg, pg = e // g, p // g
            newp = [s * a + t * b for a, b in zip(pcol, v)]
            other = [eg * a - pg * b for a, b in zip(pcol, v)]
            if cb is not None:
                newpcb = self._combo_lin(pcb, s, cb, t)
                cb = self._combo_lin(pcb, eg, cb, -pg)
            else:
                newpcb = None
            slot[0], slot[1] = newp, newpcb
            v = other
            changed = True

    def extend(self, columns):
        changed = False
        for c in columns:
            changed |= self.insert(c)
        return changed

    def _reduce_canonical(self):
        rows = sorted(self._piv)
        for k, rk in enumerate(rows):
            pcol, pcb = self._piv[rk]
            p = pcol[rk]
            for rj in rows[:k]:
                slot = self._piv[rj]
                e = slot[0][rk]
                if not e:
                    continue
                q = e // p
                if q:
                    slot[0] = _axpy_col(slot[0], q, pcol)
                    if slot[1] is not None:
                        slot[1] = self._combo_axpy(slot[1], q, pcb)

    def pivot_rows(self):
        return sorted(self._piv)

    def columns(self):
        """Canonical (Hermite) basis columns ordered by pivot row."""
        self._reduce_canonical()
        return [tuple(self._piv[r][0]) for r in sorted(self._piv)]

    def combos(self):
        self._reduce_canonical()
        return [self._piv[r][1] for r in sorted(self._piv)]

    def matrix(self) -> PdMatrix:
        return PdMatrix(self.rows, self.columns())

    def express_pivots(self, vec):
        """Coefficients over the pivot columns (by pivot row), or None."""
        v = [_p(x) for x in vec]
        if len(v) != self.rows:
            raise DimensionError(f"vector of length {len(v)} in a rank-{self.rows} ambient")
        coeffs = {}
        while True:
            r = _first_nonzero(v)
            if r is None:
                return coeffs
            slot = self._piv.get(r)
            if slot is None:
                return None
            q, rem = v[r].divmod(slot[0][r])
            if rem:
                return None
            coeffs[r] = coeffs.get(r, _ZERO) + q
            v = _axpy_col(v, q, slot[0])

    def contains(self, vec) -> bool:
        return self.express_pivots(vec) is not None

    def express(self, vec):
        """Coefficients over the inserted columns (needs ``track``), or None."""
        if not self.track:
            raise ValueError("express() needs a tracking PdSpan")
        coeffs = self.express_pivots(vec)
        if coeffs is None:
            return None
        out = [_ZERO] * self._nlabels
        for r, q in coeffs.items():
            for k, c in self._piv[r][1].items():
                out[k] = out[k] + q * c
        return out

    def copy(self):
        new = PdSpan(self.rows, self.track)
        new._piv = {r: [list(c), (dict(cb) if cb is not None else None)]
                    for r, (c, cb) in self._piv.items()}
        new.relations = [dict(x) for x in self.relations] if self.track else []
        new._nlabels = self._nlabels
        return new


def hermite_form(M: PdMatrix) -> PdMatrix:
    """Column Hermite normal form over C[d].

    Columns are in echelon order by pivot row, pivots are monic, zero columns
    are dropped, and in each pivot row the entries of earlier columns are
    reduced modulo the pivot.  The column span is preserved.
    """
    span = PdSpan(M.rows)
    span.extend(M.columns)
    return span.matrix()


def smith_diagonal(M: PdMatrix):
    """Nonzero invariant factors (monic DPoly list) of ``M``."""
    A = M.row_lists()
    n, k = M.rows, M.cols
    diag = []
    t = 0
    while t < min(n, k):
        best = None
        for i in range(t, n):
            for j in range(t, k):
                if A[i][j] and (best is None or A[i][j].degree < A[best[0]][best[1]].degree):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            dirty = False
            p = A[t][t]
            for i in range(t + 1, n):
                if A[i][t]:
                    q, r = A[i][t].divmod(p)
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if r:
                        A[t], A[i] = A[i], A[t]
                        dirty = True
                        break
            if dirty:
                continue
            p = A[t][t]
            for j in range(t + 1, k):
                if A[t][j]:
                    q, r = A[t][j].divmod(p)
                    for row in A:
                        row[j] = row[j] - q * row[t]
                    if r:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            p = A[t][t]
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, k):
                    if A[i][j] and (A[i][j] % p):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        diag.append(A[t][t].monic())
        t += 1
    return diag


def size_of(presentation: PdMatrix) -> Size:
    """Size of the cokernel of ``presentation`` (rows = ambient free rank)."""
    diag = smith_diagonal(presentation)
    r = presentation.rows - len(diag)
    d = sum(e.degree for e in diag)
    return Size(r, d)


def membership(v, basis: PdMatrix) -> bool:
    if len(v) != basis.rows:
        raise DimensionError(f"vector of length {len(v)} vs ambient rank {basis.rows}")
    span = PdSpan(basis.rows)
    span.extend(basis.columns)
    return span.contains(v)


def express(v, basis: PdMatrix):
    """C[d]-coefficients ``x`` with ``basis @ x == v``, or None."""
    if len(v) != basis.rows:
        raise DimensionError(f"vector of length {len(v)} vs ambient rank {basis.rows}")
    span = PdSpan(basis.rows, track=True)
    span.extend(basis.columns)
    return span.express(v)


def kernel(M: PdMatrix) -> PdMatrix:
    """Free basis (columns) of ``{x : M x = 0}``, in Hermite form."""
    span = PdSpan(M.rows, track=True)
    span.extend(M.columns)
    rels = []
    for cb in span.relations:
        vec = [cb.get(k, _ZERO) for k in range(M.cols)]
        if any(vec):
            rels.append(vec)
    return hermite_form(PdMatrix(M.cols, rels))

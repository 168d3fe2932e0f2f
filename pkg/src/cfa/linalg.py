"""Sparse exact linear algebra over Q(i).

Vectors are dicts ``{column: scalar}`` with integer (or otherwise totally
ordered) column keys.  :class:`Echelon` keeps an incrementally built row
echelon form in which each stored row's pivot is its smallest column, so a new
row is reduced in a single ascending sweep.
"""

from __future__ import annotations

import heapq

from .scalars import ONE, ZERO

__all__ = ["Echelon", "nullspace", "solve_combination"]


def _axpy(dst, c, src):
    """dst += c * src, dropping zeros; returns the list of newly created keys."""
    new = []
    for k, v in src.items():
        old = dst.get(k)
        if old is None:
            dst[k] = c * v
            new.append(k)
        else:
            s = old + c * v
            if s:
                dst[k] = s
            else:
                del dst[k]
    return new


class Echelon:
    """Incremental row echelon form.

    With ``track=True`` every stored row remembers the combination of inserted
    rows (by insertion label) that produced it, which lets :meth:`express`
    write a vector as a combination of inserted rows.
    """

    def __init__(self, track=False):
        self.pivots = {}  # pivot column -> row dict (pivot entry 1)
        self.track = track
        self.combos = {}  # pivot column -> {label: coeff}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def _sweep(self, row, combo=None, stop_at_free=True):
        heap = list(row)
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            v = row.get(c)
            if v is None:
                continue
            prow = self.pivots.get(c)
            if prow is None:
                if stop_at_free:
                    return c
                continue
            f = -v
            for k in _axpy(row, f, prow):
                heapq.heappush(heap, k)
            if combo is not None:
                _axpy(combo, f, self.combos[c])
        return None

    def reduce(self, vec):
        """Fully reduce ``vec`` against the stored rows (returns a new dict)."""
        row = {k: v for k, v in vec.items() if v}
        self._sweep(row, stop_at_free=False)
        return row

    def contains(self, vec) -> bool:
        row = {k: v for k, v in vec.items() if v}
        return self._sweep(row) is None and not row

    def add(self, vec, label=None) -> bool:
        """Insert a row; return True if it was independent of the stored rows."""
        row = {k: v for k, v in vec.items() if v}
        combo = {label: ONE} if self.track else None
        piv = self._sweep(row, combo)
        if piv is None:
            return False
        inv = ONE / row[piv]
        if inv != 1:
            for k in row:
                row[k] = row[k] * inv
            if combo is not None:
                for k in combo:
                    combo[k] = combo[k] * inv
        self.pivots[piv] = row
        if combo is not None:
            self.combos[piv] = combo
        return True

    def express(self, vec):
        """Coefficients ``{label: c}`` writing ``vec`` as a combination, or None."""
        if not self.track:
            raise ValueError("express() needs an Echelon built with track=True")
        row = {k: v for k, v in vec.items() if v}
        combo = {}
        self._sweep(row, combo, stop_at_free=False)
        if row:
            return None
        # the sweep subtracted; the combination is the negation
        return {k: -v for k, v in combo.items() if v}

    def rref_rows(self):
        """Fully reduced rows, keyed by pivot column."""
        cols = sorted(self.pivots, reverse=True)
        rows = {}
        for c in cols:
            row = dict(self.pivots[c])
            for k in list(row):
                if k != c and k in rows and k in row:
                    _axpy(row, -row[k], rows[k])
            rows[c] = row
        return rows


def nullspace(rows, columns):
    """Basis of ``{x : row . x == 0 for all rows}`` over the given columns.

    ``rows`` is an iterable of sparse vectors (an :class:`Echelon` is accepted
    directly).  Returns a list of sparse vectors.
    """
    if isinstance(rows, Echelon):
        ech = rows
    else:
        ech = Echelon()
        for r in rows:
            ech.add(r)
    red = ech.rref_rows()
    free = [c for c in columns if c not in red]
    basis = []
    for f in free:
        vec = {f: ONE}
        for p, row in red.items():
            v = row.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve_combination(vectors, target):
    """Find coefficients with ``sum c_k vectors[k] == target`` (or None)."""
    ech = Echelon(track=True)
    for k, v in enumerate(vectors):
        ech.add(v, label=k)
    sol = ech.express(target)
    if sol is None:
        return None
    return [sol.get(k, ZERO) for k in range(len(vectors))]

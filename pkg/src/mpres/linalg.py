"""Sparse exact Gaussian elimination.

Vectors are dicts ``{key: scalar}`` with no explicit zeros; keys are any
mutually comparable values (ints or tuples).  The pivot of a row is its least
key, so "first nonzero in generator order" is the pivot rule everywhere.
"""

from __future__ import annotations


def axpy(y: dict, a, x: dict) -> dict:
    """``y += a*x`` in place; drops entries that cancel."""
    for k, xv in x.items():
        s = y.get(k)
        if s is None:
            t = a * xv
            if t:
                y[k] = t
        else:
            t = s + a * xv
            if t:
                y[k] = t
            else:
                del y[k]
    return y


def scale(x: dict, a) -> dict:
    return {k: a * v for k, v in x.items()}


def add(x: dict, y: dict) -> dict:
    return axpy(dict(x), 1, y)


def mat_vec(cols, x: dict) -> dict:
    """Apply the matrix with sparse columns ``cols`` (indexable by key) to ``x``."""
    out: dict = {}
    for k, a in x.items():
        axpy(out, a, cols[k])
    return out


class Echelon:
    """Reduced row echelon form built one vector at a time.

    With ``track=True`` each stored row remembers which combination of the
    inserted vectors produced it, so that :meth:`solve` can return
    coefficients and :meth:`add` reports dependencies (kernel vectors).
    """

    __slots__ = ("rows", "combos", "track")

    def __init__(self, track: bool = False):
        self.rows: dict = {}  # pivot -> row (row[pivot] == 1, zero at other pivots)
        self.combos: dict = {}
        self.track = track

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return sorted(self.rows)

    def reduce(self, v: dict):
        """Return ``(residual, combo)`` with ``v == residual + sum(combo[k]*inserted_k)``.

        The residual is zero at every pivot.
        """
        r = dict(v)
        c: dict = {}
        for p in [p for p in r if p in self.rows]:
            a = r.get(p)
            if not a:
                continue
            axpy(r, -a, self.rows[p])
            if self.track:
                axpy(c, a, self.combos[p])
        return r, c

    def add(self, v: dict, label=None):
        """Insert ``v``.  Returns ``None`` if it was independent, otherwise (when
        tracking) the dependency ``{label: 1} - combo`` which lies in the kernel
        of the map sending each label to its inserted vector."""
        r, c = self.reduce(v)
        if not r:
            if self.track:
                dep = {label: 1} if label is not None else {}
                axpy(dep, -1, c)
                return dep
            return {}
        p = min(r)
        inv = 1 / r[p]
        r = {k: inv * a for k, a in r.items()}
        if self.track:
            c = scale(c, -1)
            if label is not None:
                c[label] = c.get(label, 0) + 1
                if not c[label]:
                    del c[label]
            c = scale(c, inv)
        # keep the form fully reduced
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                axpy(row, -a, r)
                if self.track:
                    axpy(self.combos[q], -a, c)
        self.rows[p] = r
        if self.track:
            self.combos[p] = c
        return None

    def contains(self, v: dict) -> bool:
        r, _ = self.reduce(v)
        return not r

    def solve(self, b: dict):
        """Coefficients ``y`` over inserted labels with ``sum y[l]*vec_l == b``,
        or ``None`` when ``b`` is outside the span.  Requires tracking."""
        r, c = self.reduce(b)
        if r:
            return None
        return c

    def basis(self) -> list:
        return [self.rows[p] for p in sorted(self.rows)]


def rref(vectors) -> Echelon:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e


def rank(vectors) -> int:
    return rref(vectors).rank


def nullspace(columns: dict) -> list:
    """Kernel basis of the map ``label -> columns[label]``, as dicts over labels.

    Labels are processed in sorted order, so the result is deterministic.
    """
    e = Echelon(track=True)
    out = []
    for label in sorted(columns):
        dep = e.add(columns[label], label)
        if dep is not None:
            out.append(dep)
    return out

"""Multidegrees, free multigraded modules and homogeneous matrices.

A multidegree is a plain tuple of non-negative ints.  A homogeneous map between
free modules over k[x_1..x_r] is stored by its scalars only: entry (i, j) can
be nonzero only when ``target.degrees[i] <= source.degrees[j]`` and then
carries the monomial ``x^(source.degrees[j] - target.degrees[i])``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .field import K, format_scalar
from .linalg import axpy

Multidegree = tuple


# -- multidegrees -----------------------------------------------------------

def leq(v, w) -> bool:
    return all(a <= b for a, b in zip(v, w))


def join(v, w) -> tuple:
    return tuple(max(a, b) for a, b in zip(v, w))


def meet(v, w) -> tuple:
    return tuple(min(a, b) for a, b in zip(v, w))


def join_all(vs: Iterable, r: int) -> tuple:
    out = (0,) * r
    for v in vs:
        out = join(out, v)
    return out


def sub(v, w) -> tuple:
    return tuple(a - b for a, b in zip(v, w))


def unit(r: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(r))


def grlex_key(v):
    return (sum(v), v)


def grid_points(g, order: str = "grlex") -> list:
    """All grades of the box [0, g] in a linear extension of the partial order.

    ``grlex`` (default) sorts by total degree then lexicographically; ``revlex``
    uses total degree then reversed coordinates; ``lex`` is plain
    lexicographic order.  All three refine the product order.
    """
    pts = list(itertools.product(*(range(c + 1) for c in g)))
    if order == "grlex":
        pts.sort(key=grlex_key)
    elif order == "revlex":
        pts.sort(key=lambda v: (sum(v), tuple(reversed(v))))
    elif order == "lex":
        pts.sort()
    else:
        raise ValueError("unknown grade order %r" % order)
    return pts


def minimal_elements(vs: Iterable) -> list:
    """Antichain of minimal elements, keeping first-appearance order."""
    out: list = []
    for v in vs:
        v = tuple(v)
        if v in out or any(leq(w, v) for w in out):
            continue
        out = [w for w in out if not leq(v, w)]
        out.append(v)
    return out


def format_degree(v) -> str:
    return "(" + ",".join(str(a) for a in v) + ")"


def parse_degree(s: str) -> tuple:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError("malformed grade %r" % s)
    body = s[1:-1].strip()
    if not body:
        raise ValueError("empty grade %r" % s)
    return tuple(int(t) for t in body.split(","))


def variable_names(r: int) -> list:
    if r <= 3:
        return ["x", "y", "z"][:r]
    return ["x%d" % (i + 1) for i in range(r)]


def format_monomial(v) -> str:
    """``(2,1) -> 'x^2 y'``, ``(0,0) -> '1'``."""
    names = variable_names(len(v))
    parts = []
    for name, e in zip(names, v):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return " ".join(parts) if parts else "1"


def format_shift(v) -> str:
    return "R(" + ",".join(str(-a) if a else "0" for a in v) + ")"


# -- free modules -------------------------------------------------------------

@dataclass(frozen=True)
class FreeModule:
    """Free module with ordered generators; ``ids`` are optional labels."""

    degrees: tuple
    ids: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(tuple(d) for d in self.degrees))
        if self.ids is None:
            object.__setattr__(self, "ids", tuple(range(len(self.degrees))))
        else:
            object.__setattr__(self, "ids", tuple(self.ids))
        if len(self.ids) != len(self.degrees):
            raise ValueError("ids and degrees differ in length")

    def __len__(self):
        return len(self.degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def present(self, v) -> list:
        """Indices of generators with degree <= v."""
        return [i for i, d in enumerate(self.degrees) if leq(d, v)]

    def dim_at(self, v) -> int:
        return sum(1 for d in self.degrees if leq(d, v))

    def __eq__(self, other):
        return isinstance(other, FreeModule) and self.degrees == other.degrees

    def __hash__(self):
        return hash(self.degrees)

    def direct_sum(self, other: "FreeModule") -> "FreeModule":
        return FreeModule(self.degrees + other.degrees)

    def summary(self) -> str:
        if not self.degrees:
            return "0"
        counts: dict = {}
        for d in self.degrees:
            counts[d] = counts.get(d, 0) + 1
        parts = []
        for d in counts:  # first-appearance order
            s = format_shift(d)
            if counts[d] > 1:
                s += "^%d" % counts[d]
            parts.append(s)
        return "(+)".join(parts)


class HomogeneityError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GradedMatrix:
    """Homogeneous map ``source -> target``; ``cols[j]`` maps row index to scalar."""

    source: FreeModule
    target: FreeModule
    cols: tuple = dc_field(default=None)

    def __post_init__(self):
        cols = self.cols
        if cols is None:
            cols = tuple({} for _ in range(len(self.source)))
        cols = tuple({i: a for i, a in c.items() if a} for c in cols)
        object.__setattr__(self, "cols", cols)
        if len(cols) != len(self.source):
            raise ValueError("expected %d columns, got %d" % (len(self.source), len(cols)))
        n = len(self.target)
        for j, c in enumerate(cols):
            dj = self.source.degrees[j]
            for i in c:
                if not 0 <= i < n:
                    raise IndexError("row %d out of range for target of rank %d" % (i, n))
                if not leq(self.target.degrees[i], dj):
                    raise HomogeneityError(
                        "entry (%d,%d): row degree %s is not <= column degree %s"
                        % (i, j, self.target.degrees[i], dj))

    @classmethod
    def from_entries(cls, source, target, entries: dict) -> "GradedMatrix":
        cols = [dict() for _ in range(len(source))]
        for (i, j), a in entries.items():
            a = K(a)
            if a:
                cols[j][i] = a
        return cls(source, target, tuple(cols))

    @classmethod
    def zero(cls, source, target) -> "GradedMatrix":
        return cls(source, target)

    @classmethod
    def identity(cls, module: FreeModule) -> "GradedMatrix":
        one = K(1)
        return cls(module, module, tuple({j: one} for j in range(len(module))))

    @property
    def shape(self):
        return (len(self.target), len(self.source))

    @property
    def entries(self) -> dict:
        return {(i, j): a for j, c in enumerate(self.cols) for i, a in c.items()}

    def monomial(self, i: int, j: int) -> tuple:
        return sub(self.source.degrees[j], self.target.degrees[i])

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other):
        return (isinstance(other, GradedMatrix) and self.source == other.source
                and self.target == other.target and self.cols == other.cols)

    def __hash__(self):
        return hash((self.source, self.target, len(self.cols)))

    def to_text(self) -> str:
        return format_graded_matrix(self)


def evaluate_at(m: GradedMatrix, v) -> list:
    """Dense K-matrix of ``m`` on graded pieces at ``v``.

    Rows and columns are the generators of degree <= v, in generator order.
    """
    rows = m.target.present(v)
    cols = m.source.present(v)
    zero = K(0)
    out = [[zero] * len(cols) for _ in rows]
    rpos = {i: k for k, i in enumerate(rows)}
    for jj, j in enumerate(cols):
        for i, a in m.cols[j].items():
            out[rpos[i]][jj] = a
    return out


def compose(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    """``a o b``; requires ``a.source == b.target``."""
    if a.source != b.target:
        raise ValueError("shape mismatch: cannot compose %s after %s"
                         % (a.shape, b.shape))
    cols = []
    for c in b.cols:
        out: dict = {}
        for k, s in c.items():
            axpy(out, s, a.cols[k])
        cols.append(out)
    return GradedMatrix(b.source, a.target, tuple(cols))


def block_matrix(source_parts: Sequence[FreeModule], target_parts: Sequence[FreeModule],
                 blocks: dict) -> GradedMatrix:
    """Assemble ``{(row_block, col_block): GradedMatrix}`` into one matrix over
    the direct sums of the parts (missing blocks are zero)."""
    src = FreeModule(tuple(d for p in source_parts for d in p.degrees))
    tgt = FreeModule(tuple(d for p in target_parts for d in p.degrees))
    roff = list(itertools.accumulate([0] + [len(p) for p in target_parts]))
    coff = list(itertools.accumulate([0] + [len(p) for p in source_parts]))
    cols = [dict() for _ in range(len(src))]
    for (bi, bj), m in blocks.items():
        for j, c in enumerate(m.cols):
            col = cols[coff[bj] + j]
            for i, a in c.items():
                axpy(col, 1, {roff[bi] + i: a})
    return GradedMatrix(src, tgt, tuple(cols))


# -- text format --------------------------------------------------------------

def format_graded_matrix(m: GradedMatrix) -> str:
    lines = ["rows: " + " ".join(format_degree(d) for d in m.target.degrees),
             "cols: " + " ".join(format_degree(d) for d in m.source.degrees)]
    for (i, j), a in sorted(m.entries.items(), key=lambda t: (t[0][1], t[0][0])):
        lines.append("%d %d %s" % (i, j, format_scalar(a)))
    return "\n".join(lines)


_DEG = re.compile(r"\([^)]*\)")


def _parse_degree_list(s: str) -> tuple:
    return tuple(parse_degree(t) for t in _DEG.findall(s))


def parse_scalar(s: str):
    return K(Fraction(s))


def parse_graded_matrix(text: str) -> GradedMatrix:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("rows:") or not lines[1].startswith("cols:"):
        raise ValueError("graded matrix must start with 'rows:' and 'cols:' lines")
    target = FreeModule(_parse_degree_list(lines[0][5:]))
    source = FreeModule(_parse_degree_list(lines[1][5:]))
    entries = {}
    for ln in lines[2:]:
        i, j, a = ln.split()
        entries[int(i), int(j)] = parse_scalar(a)
    return GradedMatrix.from_entries(source, target, entries)

"""Stationary multifiltered simplicial complexes and the ``.mfil`` format.

A filtration lists each simplex once with the antichain of grades at which it
enters.  ``X_v`` is the set of simplices having some entry grade <= v.  Faces
must be listed before their cofaces.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import combinations

from .algebra import format_degree, join_all, leq, minimal_elements


class FiltrationError(ValueError):
    """Invalid filtration input; the CLI maps this to exit code 2."""


class ParseError(FiltrationError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        loc = ""
        if line is not None:
            loc = "line %d" % line
            if col is not None:
                loc += ", col %d" % col
            loc += ": "
        super().__init__(loc + message)


class ClosureError(FiltrationError):
    pass


class MonotonicityError(FiltrationError):
    pass


class AntichainError(FiltrationError):
    pass


@dataclass(frozen=True)
class Simplex:
    id: int
    vertices: tuple

    def __post_init__(self):
        vs = tuple(self.vertices)
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise FiltrationError("simplex %d: vertices %s are not strictly increasing"
                                  % (self.id, vs))
        object.__setattr__(self, "vertices", vs)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def facets(self) -> list:
        """Vertex tuples of d_0, ..., d_n (d_i drops the i-th vertex)."""
        if self.dim == 0:
            return []
        vs = self.vertices
        return [vs[:i] + vs[i + 1:] for i in range(len(vs))]

    def __str__(self):
        return "[%s]" % " ".join(str(v) for v in self.vertices)


@dataclass(frozen=True)
class MultiFiltration:
    r: int
    simplices: tuple  # of (Simplex, grades)

    def __post_init__(self):
        items = tuple((s, tuple(tuple(g) for g in gs)) for s, gs in self.simplices)
        object.__setattr__(self, "simplices", items)
        _validate(self.r, items)
        by_verts = {s.vertices: k for k, (s, _) in enumerate(items)}
        object.__setattr__(self, "_index", by_verts)

    def __len__(self):
        return len(self.simplices)

    @property
    def dim(self) -> int:
        return max((s.dim for s, _ in self.simplices), default=-1)

    def of_dim(self, n: int) -> list:
        """``(Simplex, grades)`` pairs of dimension n, in listing order."""
        return [(s, g) for s, g in self.simplices if s.dim == n]

    def grades_of(self, vertices) -> tuple:
        return self.simplices[self._index[tuple(vertices)]][1]

    def index_of(self, vertices) -> int:
        return self._index[tuple(vertices)]

    def __str__(self):
        return serialize(self)


def _validate(r: int, items) -> None:
    if r < 1:
        raise FiltrationError("r must be >= 1")
    seen: dict = {}
    ids = set()
    for s, grades in items:
        if s.id in ids:
            raise FiltrationError("duplicate simplex id %d" % s.id)
        ids.add(s.id)
        if s.vertices in seen:
            raise FiltrationError("simplex %d %s listed twice" % (s.id, s))
        if not s.vertices:
            raise FiltrationError("simplex %d has no vertices" % s.id)
        if any(v < 0 for v in s.vertices):
            raise FiltrationError("simplex %d: vertex ids must be non-negative" % s.id)
        if not grades:
            raise FiltrationError("simplex %d %s has no critical grade" % (s.id, s))
        for g in grades:
            if len(g) != r:
                raise FiltrationError("simplex %d: grade %s has %d coordinates, expected r=%d"
                                      % (s.id, format_degree(g), len(g), r))
            if any(a < 0 for a in g):
                raise FiltrationError("simplex %d: negative grade %s" % (s.id, format_degree(g)))
        for a, b in combinations(grades, 2):
            if leq(a, b) or leq(b, a):
                raise AntichainError("simplex %d %s: grades %s and %s are comparable"
                                     % (s.id, s, format_degree(a), format_degree(b)))
        for face in s.facets():
            if face not in seen:
                raise ClosureError("simplex %d %s: face [%s] is not listed before it"
                                   % (s.id, s, " ".join(map(str, face))))
            fgrades = seen[face]
            for u in grades:
                if not any(leq(w, u) for w in fgrades):
                    raise MonotonicityError(
                        "simplex %d %s enters at %s before its face [%s]"
                        % (s.id, s, format_degree(u), " ".join(map(str, face))))
        seen[s.vertices] = grades


# -- queries ------------------------------------------------------------------

def present(grades, v) -> bool:
    return any(leq(u, v) for u in grades)


def slice_at(f: MultiFiltration, v) -> list:
    """Simplices of ``X_v`` in listing order."""
    v = tuple(v)
    return [s for s, gs in f.simplices if present(gs, v)]


def grid_bound(f: MultiFiltration) -> tuple:
    return join_all((g for _, gs in f.simplices for g in gs), f.r)


def is_one_critical(f: MultiFiltration) -> bool:
    return all(len(gs) == 1 for _, gs in f.simplices)


def lower_star(simplices, values: dict, r: int | None = None) -> MultiFiltration:
    """One-critical filtration: each simplex enters at the join of its vertex values.

    ``simplices`` is a face-closed list of ``Simplex`` (or vertex tuples).
    """
    items = []
    for k, s in enumerate(simplices):
        if not isinstance(s, Simplex):
            s = Simplex(k, tuple(sorted(s)))
        items.append(s)
    if r is None:
        r = len(next(iter(values.values())))
    items.sort(key=lambda s: s.dim)
    out = []
    for s in items:
        g = join_all((values[v] for v in s.vertices), r)
        out.append((s, (g,)))
    return MultiFiltration(r, tuple(out))


# -- text formats -------------------------------------------------------------

_GRADE = re.compile(r"\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)")


def _parse_grades(rest: str, lineno: int, offset: int) -> list:
    grades = []
    pos = 0
    while pos < len(rest):
        if rest[pos].isspace():
            pos += 1
            continue
        m = _GRADE.match(rest, pos)
        if not m:
            raise ParseError("expected a grade like (1,0)", lineno, offset + pos + 1)
        grades.append(tuple(int(t) for t in m.group(0).strip("() \t").split(",")))
        pos = m.end()
    return grades


def _parse_simplex_line(line: str, lineno: int, need_grades: bool = True):
    """Return ``(id, vertices, grades)`` from a ``simplex`` line."""
    head, at, rest = line.partition("@")
    toks = head.split()
    if not toks or toks[0] != "simplex":
        raise ParseError("expected 'simplex'", lineno, 1)
    if len(toks) < 4 or toks[2] != ":":
        raise ParseError("expected 'simplex <id> : <vertices> @ <grades>'", lineno,
                         line.find(toks[-1]) + 1 if toks else 1)
    try:
        sid = int(toks[1])
        verts = [int(t) for t in toks[3:]]
    except ValueError as exc:
        raise ParseError("non-integer id or vertex (%s)" % exc, lineno,
                         line.find(toks[1]) + 1)
    if sid < 0:
        raise ParseError("negative simplex id", lineno, line.find(toks[1]) + 1)
    grades = []
    if at:
        grades = _parse_grades(rest, lineno, len(head) + 1)
    if need_grades and not grades:
        raise ParseError("simplex %d has no grade after '@'" % sid, lineno, len(line) + 1)
    if len(set(verts)) != len(verts):
        raise ParseError("repeated vertex in simplex %d" % sid, lineno, len(head))
    return sid, tuple(sorted(verts)), grades


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_header(line: str, lineno: int) -> int:
    toks = line.split()
    if len(toks) != 2 or toks[0] != "r":
        raise ParseError("first line must be 'r <integer>'", lineno, 1)
    try:
        r = int(toks[1])
    except ValueError:
        raise ParseError("r must be an integer", lineno, line.find(toks[1]) + 1)
    if r < 1:
        raise ParseError("r must be >= 1", lineno, line.find(toks[1]) + 1)
    return r


def parse(text: str, strict: bool = False) -> MultiFiltration:
    """Parse the ``.mfil`` format.

    Grade lists are normalized to their minimal elements unless ``strict``, in
    which case comparable grades raise :class:`AntichainError`.
    """
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input", 1, 1)
    r = _parse_header(lines[0][1], lines[0][0])
    items = []
    for lineno, line in lines[1:]:
        sid, verts, grades = _parse_simplex_line(line, lineno)
        for g in grades:
            if len(g) != r:
                raise ParseError("grade %s has %d coordinates, expected r=%d"
                                 % (format_degree(g), len(g), r), lineno)
        if not strict:
            grades = minimal_elements(grades)
        try:
            items.append((Simplex(sid, verts), tuple(grades)))
        except FiltrationError as exc:
            raise ParseError(str(exc), lineno)
    return MultiFiltration(r, tuple(items))


def serialize(f: MultiFiltration) -> str:
    out = ["r %d" % f.r]
    for s, gs in f.simplices:
        out.append("simplex %d : %s @ %s" % (
            s.id, " ".join(map(str, s.vertices)), " ".join(format_degree(g) for g in gs)))
    return "\n".join(out) + "\n"


def parse_lower_star_input(text: str) -> MultiFiltration:
    """Input for ``generate lower-star``: an ``r`` header, ``value <vertex> @ (..)``
    lines and ``simplex <id> : <vertices>`` lines (no grades)."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input", 1, 1)
    r = _parse_header(lines[0][1], lines[0][0])
    values = {}
    simplices = []
    for lineno, line in lines[1:]:
        if line.startswith("value"):
            head, at, rest = line.partition("@")
            toks = head.split()
            if len(toks) != 2 or not at:
                raise ParseError("expected 'value <vertex> @ (..)'", lineno, 1)
            grades = _parse_grades(rest, lineno, len(head) + 1)
            if len(grades) != 1 or len(grades[0]) != r:
                raise ParseError("vertex value must be exactly one grade with r=%d entries" % r,
                                 lineno)
            values[int(toks[1])] = grades[0]
        else:
            sid, verts, grades = _parse_simplex_line(line, lineno, need_grades=False)
            if grades:
                raise ParseError("lower-star input simplices carry no grades", lineno)
            simplices.append(Simplex(sid, verts))
    missing = sorted({v for s in simplices for v in s.vertices} - set(values))
    if missing:
        raise FiltrationError("no value given for vertices %s" % missing)
    return lower_star(simplices, values, r)


# -- random generators (test corpora) ----------------------------------------

def random_complex(rng: random.Random, max_simplices: int = 30, max_vertices: int = 6,
                   max_dim: int = 3) -> list:
    """Random face-closed complex as a list of vertex tuples, sorted by dimension."""
    nv = rng.randint(1, max_vertices)
    faces = {(v,) for v in range(nv)}
    for _ in range(4 * max_simplices):
        if nv < 2:
            break
        k = rng.randint(2, min(max_dim + 1, nv))
        s = tuple(sorted(rng.sample(range(nv), k)))
        closure = {c for m in range(1, k + 1) for c in combinations(s, m)}
        new = closure - faces
        if len(faces) + len(new) <= max_simplices:
            faces |= new
    return sorted(faces, key=lambda t: (len(t), t))


def random_filtration(rng: random.Random, r: int = 2, max_simplices: int = 30,
                      max_grade: int = 4, max_antichain: int = 3,
                      max_vertices: int = 6, max_dim: int = 3) -> MultiFiltration:
    """Random valid filtration with grades in [0, max_grade]^r."""
    faces = random_complex(rng, max_simplices, max_vertices, max_dim)
    grades: dict = {}
    items = []
    for k, face in enumerate(faces):
        size = rng.randint(1, max_antichain)
        cands = []
        for _ in range(size):
            if len(face) == 1:
                base = (0,) * r
                bump = [rng.choice([0, 0, 1, 2, 3]) for _ in range(r)]
            else:
                base = join_all((rng.choice(grades[fc]) for fc in
                                 Simplex(k, face).facets()), r)
                bump = [rng.choice([0, 0, 0, 1, 2]) for _ in range(r)]
            u = tuple(min(max_grade, b + d) for b, d in zip(base, bump))
            cands.append(u)
        gs = tuple(minimal_elements(cands))
        grades[face] = gs
        items.append((Simplex(k, face), gs))
    return MultiFiltration(r, tuple(items))


def random_lower_star(rng: random.Random, r: int = 2, max_simplices: int = 30,
                      max_grade: int = 4, max_vertices: int = 6,
                      max_dim: int = 3) -> MultiFiltration:
    faces = random_complex(rng, max_simplices, max_vertices, max_dim)
    nv = max(v for f in faces for v in f) + 1
    values = {v: tuple(rng.randint(0, max_grade) for _ in range(r)) for v in range(nv)}
    return lower_star([Simplex(k, f) for k, f in enumerate(faces)], values, r)


__all__ = [
    "AntichainError", "ClosureError", "FiltrationError", "MonotonicityError",
    "MultiFiltration", "ParseError", "Simplex", "grid_bound", "is_one_critical",
    "lower_star", "parse", "parse_lower_star_input", "random_filtration",
    "random_lower_star", "serialize", "slice_at",
]

"""Labelled simplicial complexes and their multigraded cellular chain complexes.

For a one-critical filtration every chain module is free, and the chain
complex of the filtration is the cellular complex of the simplicial complex
labelled by entry grades.  The homology of that complex (the multipersistent
homology) is what keeps it from being a resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FreeModule, GradedMatrix, format_degree, join_all, leq
from .chains import chain_complex
from .field import K
from .filtration import (FiltrationError, MultiFiltration, ParseError, Simplex, _lines,
                         _parse_simplex_line)
from .gridmodule import GridModule, subquotient
from .linalg import nullspace
from .resolution import FreeChainComplex


class NotOneCritical(FiltrationError):
    pass


class LabelError(FiltrationError):
    pass


@dataclass(frozen=True)
class LabelledComplex:
    """Simplices (faces before cofaces) with a monotone N^r labelling."""

    simplices: tuple
    labels: tuple  # labels[k] belongs to simplices[k]

    def __post_init__(self):
        object.__setattr__(self, "simplices", tuple(self.simplices))
        object.__setattr__(self, "labels", tuple(tuple(l) for l in self.labels))
        if len(self.simplices) != len(self.labels):
            raise LabelError("one label per simplex required")
        seen = {}
        for s, lab in zip(self.simplices, self.labels):
            for face in s.facets():
                if face not in seen:
                    raise LabelError("simplex %d %s: face [%s] is not listed before it"
                                     % (s.id, s, " ".join(map(str, face))))
                if not leq(seen[face], lab):
                    raise LabelError("simplex %d %s: label %s is below its face's label %s"
                                     % (s.id, s, format_degree(lab), format_degree(seen[face])))
            seen[s.vertices] = lab

    @property
    def r(self) -> int:
        return len(self.labels[0]) if self.labels else 0

    @property
    def dim(self) -> int:
        return max((s.dim for s in self.simplices), default=-1)

    def of_dim(self, n: int) -> list:
        return [(s, l) for s, l in zip(self.simplices, self.labels) if s.dim == n]

    def grid(self) -> tuple:
        return join_all(self.labels, self.r)


def labelled_complex(f: MultiFiltration) -> LabelledComplex:
    for s, gs in f.simplices:
        if len(gs) != 1:
            raise NotOneCritical("simplex %d %s has %d critical grades" % (s.id, s, len(gs)))
    return LabelledComplex(tuple(s for s, _ in f.simplices),
                           tuple(gs[0] for _, gs in f.simplices))


def parse_labelled(text: str) -> LabelledComplex:
    """``.lsc`` format: optional ``r`` header, then ``simplex <id> : <v..> @ (..)``
    lines with exactly one grade each."""
    simplices, labels = [], []
    r = None
    for lineno, line in _lines(text):
        if line.startswith("r ") and not simplices and r is None:
            r = int(line.split()[1])
            continue
        sid, verts, grades = _parse_simplex_line(line, lineno)
        if len(grades) != 1:
            raise ParseError("labelled simplex %d needs exactly one grade" % sid, lineno)
        if r is not None and len(grades[0]) != r:
            raise ParseError("grade has %d coordinates, expected r=%d" % (len(grades[0]), r),
                             lineno)
        simplices.append(Simplex(sid, verts))
        labels.append(grades[0])
    return LabelledComplex(tuple(simplices), tuple(labels))


def format_labelled(x: LabelledComplex) -> str:
    out = ["r %d" % x.r]
    for s, lab in zip(x.simplices, x.labels):
        out.append("simplex %d : %s @ %s" % (s.id, " ".join(map(str, s.vertices)),
                                            format_degree(lab)))
    return "\n".join(out) + "\n"


def cellular_chain_complex(x: LabelledComplex) -> FreeChainComplex:
    """F_n free on the n-faces at their labels; a face a maps to
    sum_i (-1)^i x^(m(a) - m(d_i a)) d_i a."""
    terms, diffs = [], []
    for n in range(x.dim + 1):
        terms.append(FreeModule(tuple(l for _, l in x.of_dim(n))))
    for n in range(1, x.dim + 1):
        pos = {s.vertices: k for k, (s, _) in enumerate(x.of_dim(n - 1))}
        cols = []
        for s, _ in x.of_dim(n):
            cols.append({pos[face]: K(-1 if i % 2 else 1) for i, face in enumerate(s.facets())})
        diffs.append(GradedMatrix(terms[n], terms[n - 1], tuple(cols)))
    return FreeChainComplex(tuple(terms), tuple(diffs))


def check_equality_with_C(f: MultiFiltration, labelled: LabelledComplex | None = None) -> bool:
    """Compare the chain complex of ``f`` with the cellular complex of its
    labelled complex (or of ``labelled`` when given) term by term."""
    if labelled is None:
        labelled = labelled_complex(f)
    elif any(len(gs) != 1 for _, gs in f.simplices):
        raise NotOneCritical("filtration is not one-critical")
    C = chain_complex(f)
    F = cellular_chain_complex(labelled)
    if C.length != F.length:
        return False
    for n in range(C.length):
        if C.term(n).degrees != F.term(n).degrees:
            return False
        if n >= 1 and C.d(n).cols != F.d(n).cols:
            return False
    return True


def cellular_homology(x: LabelledComplex, n: int, grid=None) -> GridModule:
    """H_n of the cellular complex, computed gradewise on [0, grid]."""
    F = cellular_chain_complex(x)
    if grid is None:
        grid = x.grid()
    dn, dup = F.d(n), F.d(n + 1)
    Fn, Fup = F.term(n), F.term(n + 1)
    return subquotient(
        grid,
        numer=lambda v: nullspace({l: dn.cols[l] for l in Fn.present(v)}),
        denom=lambda v: [dup.cols[l] for l in Fup.present(v)])


def acyclicity_defect(x: LabelledComplex, grid=None) -> list:
    """Homology modules H_0 .. H_d of the cellular complex."""
    return [cellular_homology(x, n, grid) for n in range(x.dim + 1)]

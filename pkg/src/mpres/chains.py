"""Chain modules of a multifiltration.

C_n is generated by its fundamental elements, one per (n-simplex, entry
grade).  Generators of one simplex differ only by monomial multiples, so C_n
splits as a direct sum of monomial ideals, one per simplex, and the first
syzygies are the pairwise binomials inside each simplex's group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (FreeModule, GradedMatrix, format_monomial, join, leq, minimal_elements,
                      sub)
from .field import K
from .filtration import MultiFiltration, grid_bound
from .gridmodule import (CoverMap, GridModule, coordinate_module, subquotient)
from .linalg import axpy, nullspace


@dataclass(frozen=True)
class FundamentalElement:
    simplex: int  # simplex id
    degree: tuple


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(minimal_elements(self.generators)))

    def contains(self, v) -> bool:
        return any(leq(g, v) for g in self.generators)

    def dim_at(self, v) -> int:
        return 1 if self.contains(v) else 0

    def __str__(self):
        return "<" + ", ".join(format_monomial(g) for g in self.generators) + ">"


@dataclass(frozen=True)
class SyzygyBinomial:
    a: FundamentalElement
    b: FundamentalElement
    c: tuple

    def __str__(self):
        ma = format_monomial(sub(self.c, self.a.degree))
        mb = format_monomial(sub(self.c, self.b.degree))
        return "%s*(%d,%s) - %s*(%d,%s)" % (
            ma, self.a.simplex, _deg(self.a.degree), mb, self.b.simplex, _deg(self.b.degree))


def _deg(v):
    return "(" + ",".join(map(str, v)) + ")"


@dataclass(frozen=True)
class ChainModuleData:
    n: int
    generators: tuple          # FundamentalElement, grouped by simplex in listing order
    groups: tuple              # (simplex id, tuple of generator indices)
    grid: tuple

    @property
    def free_module(self) -> FreeModule:
        return FreeModule(tuple(a.degree for a in self.generators))


def fundamental_elements(f: MultiFiltration, n: int) -> ChainModuleData:
    gens, groups = [], []
    for s, grades in f.of_dim(n) if n >= 0 else []:
        idx = []
        for g in grades:
            idx.append(len(gens))
            gens.append(FundamentalElement(s.id, g))
        groups.append((s.id, tuple(idx)))
    return ChainModuleData(n, tuple(gens), tuple(groups), grid_bound(f))


def decompose(c: ChainModuleData) -> list:
    """One monomial ideal per n-simplex, generated by its fundamental degrees."""
    return [MonomialIdeal(tuple(c.generators[i].degree for i in idx))
            for _, idx in c.groups]


def format_decomposition(c: ChainModuleData) -> str:
    ideals = decompose(c)
    body = " (+) ".join(str(i) for i in ideals) if ideals else "0"
    return "C_%d = %s" % (c.n, body)


def syzygy_binomials(c: ChainModuleData) -> list:
    out = []
    for _, idx in c.groups:
        for k, i in enumerate(idx):
            for j in idx[k + 1:]:
                a, b = c.generators[i], c.generators[j]
                out.append(SyzygyBinomial(a, b, join(a.degree, b.degree)))
    return out


def syzygy_vector(c: ChainModuleData, z: SyzygyBinomial) -> dict:
    """The binomial as a column over generator indices (monomials implied by c)."""
    index = {g: i for i, g in enumerate(c.generators)}
    return {index[z.a]: K(1), index[z.b]: K(-1)}


def boundary_matrix(f: MultiFiltration, n: int) -> GradedMatrix:
    """Boundary C_n -> C_{n-1} lifted to the free modules on fundamental elements.

    Face d_i(sigma) of a generator (sigma, u) goes to the lexicographically
    least fundamental element of the face with degree <= u, with sign (-1)^i.
    """
    if n < 1:
        raise ValueError("boundary_matrix needs n >= 1")
    src = fundamental_elements(f, n)
    tgt = fundamental_elements(f, n - 1)
    by_simplex = {}
    for sid, idx in tgt.groups:
        by_simplex[sid] = sorted(idx, key=lambda i: (tgt.generators[i].degree, i))
    faces = {s.vertices: s.id for s, _ in f.of_dim(n - 1)}
    simplex_of = {s.id: s for s, _ in f.of_dim(n)}
    cols = []
    for a in src.generators:
        col: dict = {}
        for i, face in enumerate(simplex_of[a.simplex].facets()):
            cands = [k for k in by_simplex[faces[face]] if leq(tgt.generators[k].degree, a.degree)]
            if not cands:
                raise AssertionError("no fundamental element of face %s below %s"
                                     % (face, a.degree))
            axpy(col, K(-1 if i % 2 else 1), {cands[0]: K(1)})
        cols.append(col)
    return GradedMatrix(src.free_module, tgt.free_module, tuple(cols))


def chain_complex(f: MultiFiltration):
    """``FreeChainComplex`` whose terms are the free modules on fundamental
    elements and whose differentials are :func:`boundary_matrix`."""
    from .resolution import FreeChainComplex
    terms = [fundamental_elements(f, n).free_module for n in range(f.dim + 1)]
    diffs = [boundary_matrix(f, n) for n in range(1, f.dim + 1)]
    return FreeChainComplex(tuple(terms), tuple(diffs))


# -- chain, cycle, boundary and homology modules on the grid ---------------------
#
# Ambient labels are positions in f.of_dim(n).

def _grid(f, grid):
    return tuple(grid) if grid is not None else grid_bound(f)


def simplicial_boundary(f: MultiFiltration, n: int) -> list:
    """Columns of the plain simplicial boundary C_n -> C_{n-1} over positions."""
    if n < 1:
        return [{} for _ in f.of_dim(n)]
    pos = {s.vertices: k for k, (s, _) in enumerate(f.of_dim(n - 1))}
    out = []
    for s, _ in f.of_dim(n):
        col: dict = {}
        for i, face in enumerate(s.facets()):
            col[pos[face]] = K(-1 if i % 2 else 1)
        out.append(col)
    return out


def chain_module(f: MultiFiltration, n: int, grid=None) -> GridModule:
    return coordinate_module([g for _, g in f.of_dim(n)], _grid(f, grid))


def _present(f, n):
    antichains = [g for _, g in f.of_dim(n)]

    def labels(v):
        return [l for l, a in enumerate(antichains) if any(leq(u, v) for u in a)]
    return labels


def cycle_module(f: MultiFiltration, n: int, grid=None) -> GridModule:
    bd = simplicial_boundary(f, n)
    labels = _present(f, n)
    return subquotient(_grid(f, grid),
                       numer=lambda v: nullspace({l: bd[l] for l in labels(v)}))


def boundary_module(f: MultiFiltration, n: int, grid=None) -> GridModule:
    """B_n = image of the boundary C_{n+1} -> C_n, inside C_n."""
    bd = simplicial_boundary(f, n + 1)
    labels = _present(f, n + 1)
    return subquotient(_grid(f, grid), numer=lambda v: [bd[l] for l in labels(v)])


def homology_module(f: MultiFiltration, n: int, grid=None) -> GridModule:
    bd = simplicial_boundary(f, n)
    up = simplicial_boundary(f, n + 1)
    labels, labels_up = _present(f, n), _present(f, n + 1)
    return subquotient(_grid(f, grid),
                       numer=lambda v: nullspace({l: bd[l] for l in labels(v)}),
                       denom=lambda v: [up[l] for l in labels_up(v)])


def module_of(f: MultiFiltration, kind: str, n: int, grid=None) -> GridModule:
    """``kind`` in chains, cycles, boundaries, homology."""
    if kind == "chains":
        return chain_module(f, n, grid)
    if kind == "cycles":
        return cycle_module(f, n, grid)
    if kind == "boundaries":
        return boundary_module(f, n, grid)
    if kind == "homology":
        return homology_module(f, n, grid)
    raise ValueError("unknown module kind %r" % kind)


def chain_cover(f: MultiFiltration, n: int, cn: GridModule | None = None) -> CoverMap:
    """Free cover of C_n sending each fundamental element to its simplex."""
    if cn is None:
        cn = chain_module(f, n)
    data = fundamental_elements(f, n)
    pos = {s.id: k for k, (s, _) in enumerate(f.of_dim(n))}
    images = tuple(cn.from_ambient(a.degree, {pos[a.simplex]: K(1)}) for a in data.generators)
    return CoverMap(data.free_module, cn, images)

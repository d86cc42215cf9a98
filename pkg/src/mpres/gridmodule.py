"""Finitely determined N^r-graded modules on a box [0, g].

A :class:`GridModule` stores the dimension of every graded piece and the
x_i-action matrices between neighbouring grades.  Past the box the module is
assumed constant (actions are identities), which is how chain, cycle, boundary
and homology modules of a stationary filtration behave.

Most modules here are *subquotients of coordinate modules*: the ambient space
at grade v has a basis of labels (simplices, or generators of a free module)
and a label present at v stays present at every larger grade, so the actions
of the ambient module are coordinate inclusions.  Storing vectors as sparse
dicts over global labels then makes every action a plain re-reading of
coordinates, and :func:`subquotient` builds the module from a numerator and
an optional denominator subspace per grade.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import (FreeModule, GradedMatrix, grid_points, join_all, leq,
                      meet, unit)
from .field import K
from .linalg import Echelon, axpy, nullspace


class GridModule:
    """Graded module on the grid ``[0, grid]``.

    ``dims[v]`` is dim M_v.  ``action(v, i)`` returns the x_i-map
    M_v -> M_{v+e_i} as a list of sparse columns over local coordinates.
    Modules built by :func:`subquotient` also carry an embedding into an
    ambient coordinate space (``to_ambient`` / ``from_ambient``).
    """

    def __init__(self, grid, dims: dict, actions: dict | None = None, *,
                 basis: dict | None = None, pivots: dict | None = None,
                 denom: dict | None = None):
        self.grid = tuple(grid)
        self.r = len(self.grid)
        self.dims = dict(dims)
        self._actions = dict(actions or {})
        self._basis = basis
        self._pivots = pivots
        self._denom = denom

    # -- structure ------------------------------------------------------------
    @property
    def embedded(self) -> bool:
        return self._basis is not None

    def clamp(self, v) -> tuple:
        return meet(v, self.grid)

    def dim(self, v) -> int:
        return self.dims[self.clamp(v)]

    def grades(self, order: str = "grlex") -> list:
        return grid_points(self.grid, order)

    def action(self, v, i: int) -> list:
        v = self.clamp(v)
        if v[i] >= self.grid[i]:
            return [{k: K(1)} for k in range(self.dims[v])]
        key = (v, i)
        cols = self._actions.get(key)
        if cols is None:
            if not self.embedded:
                raise KeyError("missing action x_%d at %s" % (i + 1, v))
            w = tuple(a + b for a, b in zip(v, unit(self.r, i)))
            cols = [self.from_ambient(w, q) for q in self._basis[v]]
            self._actions[key] = cols
        return cols

    def action_matrix(self, v, i: int) -> list:
        """Dense dims(v+e_i) x dims(v) matrix of the x_i action."""
        v = self.clamp(v)
        w = self.clamp(tuple(a + b for a, b in zip(v, unit(self.r, i))))
        cols = self.action(v, i)
        zero = K(0)
        out = [[zero] * len(cols) for _ in range(self.dims[w])]
        for j, c in enumerate(cols):
            for k, a in c.items():
                out[k][j] = a
        return out

    # -- coordinates --------------------------------------------------------------
    def to_ambient(self, v, vec: dict) -> dict:
        v = self.clamp(v)
        basis = self._basis[v]
        out: dict = {}
        for k, a in vec.items():
            axpy(out, a, basis[k])
        return out

    def from_ambient(self, v, w: dict) -> dict:
        """Local coordinates at v of an ambient vector lying in the numerator."""
        v = self.clamp(v)
        den = self._denom[v] if self._denom is not None else None
        if den is not None and den.rank:
            w, _ = den.reduce(w)
        out = {}
        for k, p in enumerate(self._pivots[v]):
            a = w.get(p)
            if a:
                out[k] = a
        return out

    def contains_ambient(self, v, w: dict) -> bool:
        """Whether ambient ``w`` lies in the numerator at v."""
        v = self.clamp(v)
        den = self._denom[v] if self._denom is not None else None
        if den is not None and den.rank:
            w, _ = den.reduce(w)
        rest = dict(w)
        for k, p in enumerate(self._pivots[v]):
            a = rest.get(p)
            if a:
                axpy(rest, -a, self._basis[v][k])
        return not rest

    def transport(self, vec: dict, u, v) -> dict:
        """Image of ``vec`` in M_u under the structure map M_u -> M_v (u <= v)."""
        u, v = self.clamp(u), self.clamp(v)
        if u == v:
            return dict(vec)
        if self.embedded:
            return self.from_ambient(v, self.to_ambient(u, vec))
        cur = dict(vec)
        pos = list(u)
        for i in range(self.r):
            while pos[i] < v[i]:
                cols = self.action(tuple(pos), i)
                nxt: dict = {}
                for k, a in cur.items():
                    axpy(nxt, a, cols[k])
                cur = nxt
                pos[i] += 1
        return cur

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def __repr__(self):
        return "GridModule(grid=%s, total_dim=%d)" % (self.grid, sum(self.dims.values()))


def subquotient(grid, numer: Callable | None = None, denom: Callable | None = None,
                labels: Callable | None = None) -> GridModule:
    """Module whose piece at v is ``span(numer(v)) / span(denom(v))``.

    Vectors are sparse dicts over global labels of a coordinate space.  With
    ``numer=None`` the numerator is spanned by the unit vectors of
    ``labels(v)``.  The caller guarantees the spans are compatible with the
    coordinate inclusions (x_i N_v in N_{v+e_i}, same for the denominator) and
    that the denominator lies in the numerator.
    """
    grid = tuple(grid)
    one = K(1)
    dims, basis, pivots, dens = {}, {}, {}, {}
    for v in grid_points(grid):
        den = Echelon()
        if denom is not None:
            for d in denom(v):
                den.add(d)
        if numer is None:
            gens = [{l: one} for l in labels(v)]
        else:
            gens = numer(v)
        q = Echelon()
        for x in gens:
            if den.rank:
                x, _ = den.reduce(x)
            if x:
                q.add(x)
        piv = q.pivots
        basis[v] = [q.rows[p] for p in piv]
        pivots[v] = piv
        dens[v] = den if den.rank else None
        dims[v] = len(piv)
    return GridModule(grid, dims, basis=basis, pivots=pivots, denom=dens)


def coordinate_module(antichains, grid) -> GridModule:
    """Direct sum of monomial ideals: label l is present at v iff some degree in
    ``antichains[l]`` is <= v.  Free modules and chain modules are of this form."""
    antichains = [tuple(map(tuple, a)) for a in antichains]

    def labels(v):
        return [l for l, a in enumerate(antichains) if any(leq(u, v) for u in a)]

    return subquotient(grid, labels=labels)


def free_grid_module(F: FreeModule, grid=None) -> GridModule:
    if grid is None:
        if not F.degrees:
            raise ValueError("grid required for a free module without generators")
        grid = join_all(F.degrees, len(F.degrees[0]))
    return coordinate_module([[d] for d in F.degrees], grid)


def zero_module(grid) -> GridModule:
    return GridModule(grid, {v: 0 for v in grid_points(grid)})


def from_actions(grid, dims: dict, actions: dict) -> GridModule:
    """Module given directly by dimensions and dense action matrices
    ``actions[(v, i)]`` (dims(v+e_i) rows, dims(v) cols)."""
    sparse = {}
    for (v, i), mat in actions.items():
        cols = []
        for j in range(dims[tuple(v)]):
            cols.append({k: K(row[j]) for k, row in enumerate(mat) if row[j]})
        sparse[tuple(v), i] = cols
    return GridModule(grid, {tuple(v): d for v, d in dims.items()}, sparse)


def check_commutativity(m: GridModule) -> list:
    """Grades (v, i, j) where x_i x_j != x_j x_i; empty for a valid module."""
    bad = []
    for v in m.grades():
        for i in range(m.r):
            for j in range(i + 1, m.r):
                if v[i] >= m.grid[i] or v[j] >= m.grid[j]:
                    continue
                vi = tuple(a + b for a, b in zip(v, unit(m.r, i)))
                vj = tuple(a + b for a, b in zip(v, unit(m.r, j)))
                for k in range(m.dims[v]):
                    left: dict = {}
                    for kk, c in m.action(v, i)[k].items():
                        axpy(left, c, m.action(vi, j)[kk])
                    right: dict = {}
                    for kk, c in m.action(v, j)[k].items():
                        axpy(right, c, m.action(vj, i)[kk])
                    if left != right:
                        bad.append((v, i, j))
                        break
    return bad


# -- maps -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoverMap:
    """Homomorphism from a free module to a grid module, given by the image of
    each generator (local coordinates at the generator's degree)."""

    source: FreeModule
    target: GridModule
    images: tuple

    def column(self, j: int, v) -> dict:
        return self.target.transport(self.images[j], self.source.degrees[j], v)

    def columns(self, v) -> dict:
        return {j: self.column(j, v) for j in self.source.present(v)}


@dataclass(frozen=True, eq=False)
class GridMap:
    """Gradewise homomorphism ``source -> target`` of grid modules;
    ``apply(v, vec)`` maps local coordinates at v."""

    source: GridModule
    target: GridModule
    apply: Callable


def induced_map(source: GridModule, target: GridModule) -> GridMap:
    """Map induced by the identity of a shared ambient coordinate space
    (inclusions Z <= C, B <= Z, projections Z -> Z/B)."""
    return GridMap(source, target,
                   lambda v, vec: target.from_ambient(v, source.to_ambient(v, vec)))


def identity_map(m: GridModule) -> GridMap:
    return GridMap(m, m, lambda v, vec: dict(vec))


# -- kernels and generators ------------------------------------------------------

def kernel(map_, grid=None) -> GridModule:
    """Gradewise kernel of a :class:`GradedMatrix` or :class:`CoverMap`, as a
    submodule of the source free module (ambient labels = generator indices)."""
    if isinstance(map_, GradedMatrix):
        m = map_
        if grid is None:
            grid = join_all(m.source.degrees + m.target.degrees, _rank(m))

        def cols(v):
            return {j: m.cols[j] for j in m.source.present(v)}
    elif isinstance(map_, CoverMap):
        c = map_
        if grid is None:
            grid = c.target.grid
        cols = c.columns
    else:
        raise TypeError("kernel expects a GradedMatrix or CoverMap")
    return subquotient(grid, numer=lambda v: nullspace(cols(v)))


def _rank(m: GradedMatrix) -> int:
    for d in m.source.degrees + m.target.degrees:
        return len(d)
    return 0


def hilbert_function(m: GridModule) -> dict:
    return {v: m.dims[v] for v in m.grades()}


def minimal_generators(m: GridModule, order: str = "grlex") -> list:
    """``(degree, local vector)`` pairs minimally generating ``m``.

    At each grade a complement of the images of the incoming actions is
    spanned by the unit vectors on non-pivot coordinates.
    """
    out = []
    for v in m.grades(order):
        if not m.dims[v]:
            continue
        e = Echelon()
        for i in range(m.r):
            if v[i] == 0:
                continue
            u = tuple(a - (1 if k == i else 0) for k, a in enumerate(v))
            for col in m.action(u, i):
                e.add(col)
                if e.rank == m.dims[v]:
                    break
            if e.rank == m.dims[v]:
                break
        piv = set(e.rows)
        for k in range(m.dims[v]):
            if k not in piv:
                out.append((v, {k: K(1)}))
    return out


def free_cover(m: GridModule, order: str = "grlex"):
    """``(FreeModule, CoverMap)`` on the minimal generators of ``m``."""
    gens = minimal_generators(m, order)
    F = FreeModule(tuple(d for d, _ in gens))
    return F, CoverMap(F, m, tuple(vec for _, vec in gens))


def generators_matrix(sub: GridModule, ambient: FreeModule, order: str = "grlex"):
    """Minimal generators of a submodule of a free module, as the columns of a
    graded matrix into that free module."""
    gens = minimal_generators(sub, order)
    F = FreeModule(tuple(d for d, _ in gens))
    cols = tuple(sub.to_ambient(d, vec) for d, vec in gens)
    return GradedMatrix(F, ambient, cols)


def minimal_presentation(m: GridModule, order: str = "grlex") -> GradedMatrix:
    """Presentation matrix: rows are minimal generators of ``m``, columns the
    minimal generators of the kernel of the free cover."""
    F, cover = free_cover(m, order)
    K0 = kernel(cover, m.grid)
    return generators_matrix(K0, F, order)


def cokernel(p: GradedMatrix, grid) -> GridModule:
    """Module presented by ``p`` (target modulo image), on ``grid``."""
    return subquotient(grid, labels=p.target.present,
                       denom=lambda v: [p.cols[j] for j in p.source.present(v)])


def minimal_resolution_data(m: GridModule, max_step: int | None = None,
                            order: str = "grlex"):
    """Iterate free covers and kernels.

    Returns ``(terms, differentials, cover)``: free modules F_0, F_1, ...,
    graded matrices d_j: F_j -> F_{j-1} (j >= 1) and the cover F_0 -> m.
    Stops when a kernel vanishes or after ``max_step`` steps.
    """
    F0, cover = free_cover(m, order)
    terms, diffs = [F0], []
    ker = kernel(cover, m.grid)
    while not ker.is_zero():
        if max_step is not None and len(terms) > max_step:
            break
        d = generators_matrix(ker, terms[-1], order)
        terms.append(d.source)
        diffs.append(d)
        ker = kernel(d, m.grid)
        if len(terms) > m.r + 2:
            raise RuntimeError("resolution longer than r+1 steps; input is not a module")
    return terms, diffs, cover


def betti_numbers(m: GridModule, max_step: int | None = None, order: str = "grlex") -> dict:
    """``{(j, degree): count}`` of the minimal free resolution (nonzero entries)."""
    terms, _, _ = minimal_resolution_data(m, max_step, order)
    table: dict = {}
    for j, F in enumerate(terms):
        if max_step is not None and j > max_step:
            break
        for d in F.degrees:
            table[j, d] = table.get((j, d), 0) + 1
    return table


def betti_from_terms(terms) -> dict:
    table: dict = {}
    for j, F in enumerate(terms):
        for d in F.degrees:
            table[j, d] = table.get((j, d), 0) + 1
    return table

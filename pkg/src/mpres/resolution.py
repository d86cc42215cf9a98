"""Free resolutions by Taylor complexes and mapping cones.

C_n is resolved by the direct sum of Taylor complexes of its monomial-ideal
summands (P^n), the cycle module Z_n by iterated minimal covers (Q^n).  Lifting
the inclusion Z_n -> C_n to Q^n -> P^n and taking the cone resolves B_{n-1};
lifting B_n -> Z_n once more and taking the cone resolves H_n.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import (FreeModule, GradedMatrix, _parse_degree_list, block_matrix, compose,
                      format_degree, grid_points, join_all, parse_graded_matrix,
                      parse_scalar)
from .chains import (MonomialIdeal, boundary_module, chain_module, cycle_module, decompose,
                     fundamental_elements, homology_module, simplicial_boundary)
from .field import K, format_scalar, get_field
from .filtration import MultiFiltration
from .gridmodule import (CoverMap, GridMap, GridModule, coordinate_module, induced_map,
                         minimal_resolution_data)
from .linalg import Echelon, axpy, mat_vec


class LiftError(RuntimeError):
    """A lifting system had no solution: the target complex is not exact."""


@dataclass(frozen=True, eq=False)
class FreeChainComplex:
    """``terms[j]`` in homological degree j; ``diffs[j-1]`` is d_j: terms[j] -> terms[j-1]."""

    terms: tuple
    diffs: tuple = ()

    def __post_init__(self):
        terms = list(self.terms)
        diffs = list(self.diffs)
        while terms and not len(terms[-1]):
            terms.pop()
        diffs = diffs[:max(len(terms) - 1, 0)]
        if len(diffs) != max(len(terms) - 1, 0):
            raise ValueError("need one differential per pair of adjacent terms")
        for j, d in enumerate(diffs, 1):
            if d.source != terms[j] or d.target != terms[j - 1]:
                raise ValueError("differential %d does not match its terms" % j)
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "diffs", tuple(diffs))

    @property
    def length(self) -> int:
        return len(self.terms)

    def term(self, j: int) -> FreeModule:
        if 0 <= j < len(self.terms):
            return self.terms[j]
        return FreeModule(())

    def d(self, j: int) -> GradedMatrix:
        if 1 <= j < len(self.terms):
            return self.diffs[j - 1]
        return GradedMatrix(self.term(j), self.term(j - 1))

    def is_complex(self) -> bool:
        return all(compose(self.d(j), self.d(j + 1)).is_zero()
                   for j in range(1, len(self.terms) - 1))

    def degrees(self) -> list:
        return [d for t in self.terms for d in t.degrees]

    def __eq__(self, other):
        return (isinstance(other, FreeChainComplex) and self.terms == other.terms
                and self.diffs == other.diffs)

    def __hash__(self):
        return hash(self.terms)

    def summary(self) -> str:
        parts = [t.summary() for t in reversed(self.terms) if len(t)]
        if not parts:
            return "0"
        return " -> ".join(["0"] + parts + ["0"])

    def betti_table(self) -> dict:
        table: dict = {}
        for j, t in enumerate(self.terms):
            for d in t.degrees:
                table[j, d] = table.get((j, d), 0) + 1
        return table


@dataclass(frozen=True, eq=False)
class Resolution:
    complex: FreeChainComplex
    target: GridModule
    augmentation: CoverMap

    def betti_table(self) -> dict:
        return self.complex.betti_table()

    def summary(self) -> str:
        return self.complex.summary()


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: FreeChainComplex
    target: FreeChainComplex
    components: tuple

    def f(self, j: int) -> GradedMatrix:
        if 0 <= j < len(self.components):
            return self.components[j]
        return GradedMatrix(self.source.term(j), self.target.term(j))

    def commutes(self) -> bool:
        n = max(self.source.length, self.target.length)
        for j in range(1, n + 1):
            left = compose(self.target.d(j), self.f(j))
            right = compose(self.f(j - 1), self.source.d(j))
            if left.cols != right.cols:
                return False
        return True


def negate(m: GradedMatrix) -> GradedMatrix:
    return GradedMatrix(m.source, m.target, tuple({i: -a for i, a in c.items()} for c in m.cols))


def direct_sum(complexes) -> FreeChainComplex:
    complexes = list(complexes)
    n = max((c.length for c in complexes), default=0)
    terms = [FreeModule(tuple(d for c in complexes for d in c.term(j).degrees))
             for j in range(n)]
    diffs = []
    for j in range(1, n):
        blocks = {(k, k): c.d(j) for k, c in enumerate(complexes)}
        diffs.append(block_matrix([c.term(j) for c in complexes],
                                  [c.term(j - 1) for c in complexes], blocks))
    return FreeChainComplex(tuple(terms), tuple(diffs))


# -- Taylor resolution ------------------------------------------------------------

def taylor_complex(generators) -> FreeChainComplex:
    """Taylor complex on the full simplex of the given monomial exponents."""
    gens = [tuple(g) for g in generators]
    m = len(gens)
    if not m:
        return FreeChainComplex(())
    r = len(gens[0])
    subsets = [list(combinations(range(m), k)) for k in range(1, m + 1)]
    index = [{S: p for p, S in enumerate(level)} for level in subsets]
    terms = [FreeModule(tuple(join_all((gens[i] for i in S), r) for S in level))
             for level in subsets]
    diffs = []
    for j in range(1, m):
        cols = []
        for S in subsets[j]:
            col = {}
            for k in range(len(S)):
                col[index[j - 1][S[:k] + S[k + 1:]]] = K(-1 if k % 2 else 1)
            cols.append(col)
        diffs.append(GradedMatrix(terms[j], terms[j - 1], tuple(cols)))
    return FreeChainComplex(tuple(terms), tuple(diffs))


def ideal_module(ideal: MonomialIdeal, grid=None) -> GridModule:
    gens = ideal.generators
    if grid is None:
        grid = join_all(gens, len(gens[0]))
    return coordinate_module([gens], grid)


def taylor_resolution(ideal, grid=None) -> Resolution:
    """Taylor resolution of a monomial ideal, augmented onto the ideal."""
    if not isinstance(ideal, MonomialIdeal):
        ideal = MonomialIdeal(tuple(tuple(g) for g in ideal))
    if not ideal.generators:
        raise ValueError("Taylor resolution needs at least one generator")
    cx = taylor_complex(ideal.generators)
    target = ideal_module(ideal, grid)
    images = tuple(target.from_ambient(d, {0: K(1)}) for d in cx.term(0).degrees)
    return Resolution(cx, target, CoverMap(cx.term(0), target, images))


def resolve_chains(f: MultiFiltration, n: int, grid=None, cn: GridModule | None = None
                   ) -> Resolution:
    """P^n: direct sum of the Taylor resolutions of the summands of C_n."""
    if cn is None:
        cn = chain_module(f, n, grid)
    data = fundamental_elements(f, n)
    ideals = decompose(data)
    complexes = [taylor_complex(i.generators) for i in ideals]
    cx = direct_sum(complexes)
    images = []
    for pos, c in enumerate(complexes):
        for d in c.term(0).degrees:
            images.append(cn.from_ambient(d, {pos: K(1)}))
    return Resolution(cx, cn, CoverMap(cx.term(0), cn, tuple(images)))


def resolve_module(m: GridModule, order: str = "grlex") -> Resolution:
    """Minimal free resolution by iterated kernels and minimal covers."""
    terms, diffs, cover = minimal_resolution_data(m, order=order)
    return Resolution(FreeChainComplex(tuple(terms), tuple(diffs)), m, cover)


# -- comparison theorem and cones ---------------------------------------------------

def lift_chain_map(fmap: GridMap, frm: Resolution, to: Resolution) -> ChainMap:
    """Chain map frm.complex -> to.complex over ``fmap``: frm.target -> to.target.

    Each generator's image is found by solving a linear system in the graded
    piece at its degree; solvability is exactness of ``to``.
    """
    cache: dict = {}

    def echelon(j, v):
        key = (j, v)
        e = cache.get(key)
        if e is None:
            e = Echelon(track=True)
            if j == 0:
                for l in to.complex.term(0).present(v):
                    e.add(to.augmentation.column(l, v), l)
            else:
                dj = to.complex.d(j)
                for l in to.complex.term(j).present(v):
                    e.add(dj.cols[l], l)
            cache[key] = e
        return e

    comps = []
    src = frm.complex
    for j in range(src.length):
        cols = []
        for g, d in enumerate(src.term(j).degrees):
            if j == 0:
                rhs = fmap.apply(d, frm.augmentation.images[g])
            else:
                rhs = mat_vec(comps[j - 1].cols, src.d(j).cols[g])
            y = echelon(j, d).solve(rhs)
            if y is None:
                raise LiftError("cannot lift generator %d of term %d at %s" % (g, j, d))
            cols.append(y)
        comps.append(GradedMatrix(src.term(j), to.complex.term(j), tuple(cols)))
    return ChainMap(src, to.complex, tuple(comps))


def mapping_cone(alpha: ChainMap) -> FreeChainComplex:
    """Cone with terms F_{j-1} (+) G_j and differential [[-dF, 0], [alpha, dG]]."""
    F, G = alpha.source, alpha.target
    n = max(F.length + 1, G.length)
    terms = [F.term(j - 1).direct_sum(G.term(j)) for j in range(n)]
    diffs = []
    for j in range(1, n):
        blocks = {(0, 0): negate(F.d(j - 1)), (1, 0): alpha.f(j - 1), (1, 1): G.d(j)}
        diffs.append(block_matrix([F.term(j - 1), G.term(j)],
                                  [F.term(j - 2), G.term(j - 1)], blocks))
    return FreeChainComplex(tuple(terms), tuple(diffs))


def resolve_boundaries(f: MultiFiltration, n: int, minimal_p: bool = False, grid=None
                       ) -> Resolution:
    """Resolution of B_{n-1}: cone of the lift of Z_n -> C_n."""
    if n < 1:
        raise ValueError("resolve_boundaries needs n >= 1")
    cn = chain_module(f, n, grid)
    zn = cycle_module(f, n, grid)
    Q = resolve_module(zn)
    P = resolve_module(cn) if minimal_p else resolve_chains(f, n, grid, cn)
    alpha = lift_chain_map(induced_map(zn, cn), Q, P)
    cone = mapping_cone(alpha)
    b = boundary_module(f, n - 1, grid)
    bd = simplicial_boundary(f, n)
    images = tuple(b.from_ambient(d, mat_vec(bd, cn.to_ambient(d, P.augmentation.images[g])))
                   for g, d in enumerate(P.complex.term(0).degrees))
    return Resolution(cone, b, CoverMap(cone.term(0), b, images))


def resolve_homology(f: MultiFiltration, n: int, minimal_p: bool = False, grid=None
                     ) -> Resolution:
    """Resolution of H_n: cone of the lift of B_n -> Z_n from the B_n cone to Q^n.

    Term j is (Q^{n+1})_{j-2} (+) (P^{n+1})_{j-1} (+) (Q^n)_j.
    """
    if n < 0:
        raise ValueError("resolve_homology needs n >= 0")
    R = resolve_boundaries(f, n + 1, minimal_p, grid)
    zn = cycle_module(f, n, grid)
    Q = resolve_module(zn)
    L = lift_chain_map(induced_map(R.target, zn), R, Q)
    cone = mapping_cone(L)
    h = homology_module(f, n, grid)
    images = tuple(h.from_ambient(d, zn.to_ambient(d, Q.augmentation.images[g]))
                   for g, d in enumerate(Q.complex.term(0).degrees))
    return Resolution(cone, h, CoverMap(cone.term(0), h, images))


# -- verification ---------------------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    failures: list = field(default_factory=list)  # (j, v, reason)
    grades_checked: int = 0

    @property
    def first(self):
        return self.failures[0] if self.failures else None

    def __str__(self):
        if self.ok:
            return "PASS (%d grades)" % self.grades_checked
        j, v, why = self.first
        return "FAIL at step %d, grade %s: %s" % (j, format_degree(v), why)


def _rank_of(cols) -> int:
    e = Echelon()
    for c in cols:
        e.add(c)
    return e.rank


def _check_grade(res: Resolution, v) -> list:
    cx = res.complex
    fails = []
    ranks = {}
    for j in range(1, cx.length):
        dj = cx.d(j)
        ranks[j] = _rank_of(dj.cols[l] for l in cx.term(j).present(v))
    ranks[cx.length] = 0
    aug = res.augmentation
    present0 = cx.term(0).present(v)
    eps = {l: aug.column(l, v) for l in present0}
    r_eps = _rank_of(eps.values())
    dim_t = res.target.dim(v)
    if r_eps != dim_t:
        fails.append((0, v, "augmentation not surjective (rank %d, target dim %d)"
                      % (r_eps, dim_t)))
    if cx.length > 1:
        d1 = cx.d(1)
        for l in cx.term(1).present(v):
            if mat_vec(eps, d1.cols[l]):
                fails.append((0, v, "augmentation o d_1 != 0"))
                break
    if len(present0) - r_eps != ranks.get(1, 0):
        fails.append((0, v, "ker(augmentation) has dim %d but im(d_1) has dim %d"
                      % (len(present0) - r_eps, ranks.get(1, 0))))
    for j in range(1, cx.length):
        kdim = len(cx.term(j).present(v)) - ranks[j]
        if kdim != ranks.get(j + 1, 0):
            fails.append((j, v, "homology of dim %d" % (kdim - ranks.get(j + 1, 0))))
    return fails


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("MPR_THREADS", "1")))
    except ValueError:
        return 1


def _check_chunk(args):
    res, grades = args
    out = []
    for v in grades:
        out.extend(_check_grade(res, v))
    return out


def verify_resolution(res: Resolution, pad: int = 1, workers: int | None = None
                      ) -> VerifyReport:
    """Check d o d = 0, exactness at every term and that the augmentation is a
    surjection with kernel im(d_1), at every grade of the grid enlarged by ``pad``."""
    cx = res.complex
    fails = []
    for j in range(1, cx.length - 1):
        dd = compose(cx.d(j), cx.d(j + 1))
        for l, c in enumerate(dd.cols):
            if c:
                fails.append((j, cx.term(j + 1).degrees[l], "d_%d o d_%d != 0" % (j, j + 1)))
                break
    grid = join_all([res.target.grid] + cx.degrees(), res.target.r)
    grid = tuple(a + pad for a in grid)
    grades = grid_points(grid)
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(grades) > 1:
        chunks = [grades[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            for part in ex.map(_check_chunk, [(res, c) for c in chunks]):
                fails.extend(part)
    else:
        fails.extend(_check_chunk((res, grades)))
    rank = {v: k for k, v in enumerate(grades)}
    fails.sort(key=lambda t: (rank.get(t[1], -1), t[0]))
    return VerifyReport(not fails, fails, len(grades))


# -- minimization ---------------------------------------------------------------------

def minimize(res: Resolution) -> Resolution:
    """Cancel unit entries (nonzero scalars between generators of equal degree)
    until none remain; the result is a minimal resolution of the same target."""
    cx = res.complex
    degs = [list(t.degrees) for t in cx.terms]
    cols = [None] + [[dict(c) for c in d.cols] for d in cx.diffs]  # cols[k]: term k -> k-1
    images = list(res.augmentation.images)

    def find():
        for k in range(1, len(degs)):
            for j, c in enumerate(cols[k]):
                dj = degs[k][j]
                for i in sorted(c):
                    if degs[k - 1][i] == dj:
                        return k, i, j
        return None

    while True:
        hit = find()
        if hit is None:
            break
        k, i, j = hit
        dk = cols[k]
        pcol = dk[j]
        alpha = pcol[i]
        for c, col in enumerate(dk):
            if c == j:
                continue
            beta = col.get(i)
            if beta:
                axpy(col, -beta / alpha, pcol)
        del dk[j]
        cols[k] = [_drop_index(col, i) for col in dk]
        if k + 1 < len(degs):
            cols[k + 1] = [_drop_index(col, j) for col in cols[k + 1]]
        if k - 1 >= 1:
            del cols[k - 1][i]
        if k == 1:
            del images[i]
        del degs[k][j]
        del degs[k - 1][i]
    terms = [FreeModule(tuple(d)) for d in degs]
    diffs = [GradedMatrix(terms[k], terms[k - 1], tuple(cols[k])) for k in range(1, len(terms))]
    newcx = FreeChainComplex(tuple(terms), tuple(diffs))
    return Resolution(newcx, res.target, CoverMap(newcx.term(0), res.target, tuple(images)))


def _drop_index(col: dict, i: int) -> dict:
    return {(k if k < i else k - 1): a for k, a in col.items() if k != i}


# -- serialization --------------------------------------------------------------------

def format_resolution(res: Resolution, target: str = "module", n: int | None = None,
                      labels=None) -> str:
    """Text form: summary line, header, then per degree the generator degrees,
    the augmentation (ambient coordinates, relabelled through ``labels``) and
    the differentials in the graded-matrix format."""
    cx = res.complex
    out = [cx.summary(), "resolution",
           "field %s" % get_field().name,
           "target %s %s" % (target, "" if n is None else n),
           "grid %s" % format_degree(res.target.grid),
           "length %d" % cx.length]
    out[3] = out[3].rstrip()
    for j in range(cx.length):
        out.append("term %d" % j)
        out.append(" ".join(format_degree(d) for d in cx.term(j).degrees))
        if j == 0:
            out.append("augmentation")
            for g, d in enumerate(cx.term(0).degrees):
                amb = res.target.to_ambient(d, res.augmentation.images[g]) \
                    if res.target.embedded else res.augmentation.images[g]
                pairs = ["%s %s" % (labels[l] if labels else l, format_scalar(a))
                         for l, a in sorted(amb.items())]
                out.append("%d : %s" % (g, " ; ".join(pairs)))
        else:
            out.append("differential %d" % j)
            out.append(cx.d(j).to_text())
    out.append("end")
    return "\n".join(out) + "\n"


@dataclass
class ParsedResolution:
    header: dict
    complex: FreeChainComplex
    augmentation: list  # per term-0 generator: {label: scalar} ambient coordinates


def parse_resolution(text: str) -> ParsedResolution:
    lines = [ln.rstrip() for ln in text.splitlines()]
    try:
        start = lines.index("resolution")
    except ValueError:
        raise ValueError("no 'resolution' block found")
    header = {}
    k = start + 1
    while k < len(lines) and not lines[k].startswith("term"):
        if lines[k].strip():
            key, _, val = lines[k].partition(" ")
            header[key] = val.strip()
        k += 1
    length = int(header.get("length", "0"))
    terms, diffs, aug = [], [], []
    for j in range(length):
        if lines[k].strip() != "term %d" % j:
            raise ValueError("expected 'term %d', got %r" % (j, lines[k]))
        degs = _parse_degree_list(lines[k + 1])
        terms.append(FreeModule(degs))
        k += 2
        if j == 0:
            if lines[k].strip() != "augmentation":
                raise ValueError("expected 'augmentation'")
            k += 1
            for _ in degs:
                _, _, body = lines[k].partition(":")
                vec = {}
                for pair in body.split(";"):
                    if pair.strip():
                        l, a = pair.split()
                        vec[int(l)] = parse_scalar(a)
                aug.append(vec)
                k += 1
        else:
            if lines[k].strip() != "differential %d" % j:
                raise ValueError("expected 'differential %d'" % j)
            k += 1
            block = []
            while k < len(lines) and not lines[k].startswith(("term", "end")):
                block.append(lines[k])
                k += 1
            m = parse_graded_matrix("\n".join(block))
            diffs.append(GradedMatrix(terms[j], terms[j - 1], m.cols))
    return ParsedResolution(header, FreeChainComplex(tuple(terms), tuple(diffs)), aug)

"""Randomized consistency checks over corpora of filtrations.

Each ``check_*`` function returns a list of failure strings (empty on
success), so the same code drives the acceptance tests and the scripts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import grid_points, leq
from .chains import (chain_cover, chain_module, cycle_module, decompose, fundamental_elements,
                     homology_module, syzygy_binomials, syzygy_vector)
from .filtration import MultiFiltration, grid_bound, random_filtration, random_lower_star, slice_at
from .gridmodule import kernel, minimal_generators, minimal_presentation
from .linalg import Echelon, mat_vec
from .onecritical import check_equality_with_C
from .resolution import (resolve_boundaries, resolve_chains, resolve_homology, resolve_module,
                         taylor_resolution, verify_resolution)


@dataclass(frozen=True)
class CorpusConfig:
    count: int = 200
    seed: int = 20240601
    rs: tuple = (2, 3)
    max_simplices: int = 30
    max_grade: int = 4
    max_antichain: int = 3
    max_vertices: int = 6
    max_dim: int = 3


@dataclass(frozen=True)
class IdealConfig:
    count: int = 50
    seed: int = 7
    max_r: int = 3
    max_generators: int = 6
    max_exponent: int = 4


def random_corpus(cfg: CorpusConfig = CorpusConfig()) -> list:
    rng = random.Random(cfg.seed)
    out = []
    for k in range(cfg.count):
        r = cfg.rs[k % len(cfg.rs)]
        out.append(random_filtration(rng, r, cfg.max_simplices, cfg.max_grade,
                                     cfg.max_antichain, cfg.max_vertices, cfg.max_dim))
    return out


def lower_star_corpus(cfg: CorpusConfig = CorpusConfig(count=100)) -> list:
    rng = random.Random(cfg.seed + 1)
    return [random_lower_star(rng, cfg.rs[k % len(cfg.rs)], cfg.max_simplices, cfg.max_grade,
                              cfg.max_vertices, cfg.max_dim)
            for k in range(cfg.count)]


def random_ideals(cfg: IdealConfig = IdealConfig()) -> list:
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(cfg.count):
        r = rng.randint(1, cfg.max_r)
        m = rng.randint(1, cfg.max_generators)
        out.append([tuple(rng.randint(0, cfg.max_exponent) for _ in range(r)) for _ in range(m)])
    return out


# -- per-filtration checks ---------------------------------------------------------------

def check_resolutions(f: MultiFiltration) -> list:
    fails = []

    def run(name, res):
        rep = verify_resolution(res)
        if not rep.ok:
            fails.append("%s: %s" % (name, rep))

    for n in range(f.dim + 1):
        run("resolve_chains n=%d" % n, resolve_chains(f, n))
        run("resolve_module(Z_%d)" % n, resolve_module(cycle_module(f, n)))
        if n >= 1:
            run("resolve_boundaries n=%d" % n, resolve_boundaries(f, n))
        run("resolve_homology n=%d" % n, resolve_homology(f, n))
    return fails


def check_decomposition_law(f: MultiFiltration) -> list:
    fails = []
    for n in range(f.dim + 1):
        ideals = decompose(fundamental_elements(f, n))
        for v in grid_points(grid_bound(f)):
            lhs = sum(i.dim_at(v) for i in ideals)
            rhs = sum(1 for s in slice_at(f, v) if s.dim == n)
            if lhs != rhs:
                fails.append("n=%d v=%s: ideals give %d, slice has %d" % (n, v, lhs, rhs))
    return fails


def check_syzygy_completeness(f: MultiFiltration) -> list:
    """Binomials present at v span the kernel of the fundamental cover at v."""
    fails = []
    for n in range(f.dim + 1):
        data = fundamental_elements(f, n)
        cover = chain_cover(f, n)
        syz = syzygy_binomials(data)
        for v in grid_points(grid_bound(f)):
            cols = cover.columns(v)
            e = Echelon()
            for c in cols.values():
                e.add(c)
            kdim = len(cols) - e.rank
            span = Echelon()
            for z in syz:
                if leq(z.c, v):
                    vec = syzygy_vector(data, z)
                    if mat_vec(cols, vec):
                        fails.append("n=%d v=%s: binomial %s is not a relation" % (n, v, z))
                    span.add(vec)
            if span.rank != kdim:
                fails.append("n=%d v=%s: binomials span %d of %d" % (n, v, span.rank, kdim))
    return fails


def check_stabilization(f: MultiFiltration) -> list:
    """On the grid padded by one, kernels and cycle modules have no generator
    outside [0, g]."""
    fails = []
    g = grid_bound(f)
    big = tuple(a + 1 for a in g)
    for n in range(f.dim + 1):
        cn = chain_module(f, n, big)
        mods = [("ker cover C_%d" % n, kernel(chain_cover(f, n, cn), big)),
                ("Z_%d" % n, cycle_module(f, n, big))]
        for name, m in mods:
            for d, _ in minimal_generators(m):
                if not leq(d, g):
                    fails.append("%s: generator at %s outside grid %s" % (name, d, g))
    return fails


def check_euler(f: MultiFiltration) -> list:
    fails = []
    g = grid_bound(f)
    cs = [chain_module(f, n) for n in range(f.dim + 1)]
    hs = [homology_module(f, n) for n in range(f.dim + 1)]
    for v in grid_points(g):
        a = sum((-1) ** n * m.dims[v] for n, m in enumerate(cs))
        b = sum((-1) ** n * m.dims[v] for n, m in enumerate(hs))
        if a != b:
            fails.append("v=%s: chi(C)=%d chi(H)=%d" % (v, a, b))
    return fails


def check_free_criterion(f: MultiFiltration) -> list:
    """C_n has a relation exactly when some n-simplex has several entry grades."""
    fails = []
    for n in range(f.dim + 1):
        rels = len(minimal_presentation(chain_module(f, n)).cols)
        multi = any(len(gs) > 1 for _, gs in f.of_dim(n))
        if multi != (rels > 0):
            fails.append("n=%d: %d relations, multi-critical=%s" % (n, rels, multi))
    return fails


def check_one_critical_equality(f: MultiFiltration) -> list:
    return [] if check_equality_with_C(f) else ["chain complex differs from cellular complex"]


def check_taylor(gens) -> list:
    rep = verify_resolution(taylor_resolution(gens))
    return [] if rep.ok else ["Taylor %s: %s" % (gens, rep)]

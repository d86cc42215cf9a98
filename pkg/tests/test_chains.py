import random

from hypothesis import given, settings, strategies as st

from mpres.algebra import compose, evaluate_at, grid_points, leq
from mpres.chains import (boundary_matrix, chain_complex, chain_cover, chain_module, decompose,
                          format_decomposition, fundamental_elements, simplicial_boundary,
                          syzygy_binomials, syzygy_vector)
from mpres.field import K
from mpres.filtration import grid_bound, random_filtration, slice_at
from mpres.linalg import axpy, mat_vec


def test_fundamental_elements(single, edge, cz):
    assert [(a.simplex, a.degree) for a in fundamental_elements(single, 0).generators] == \
        [(0, (0, 0))]
    assert [(a.simplex, a.degree) for a in fundamental_elements(edge, 1).generators] == \
        [(2, (1, 0)), (2, (0, 1))]
    data = fundamental_elements(cz, 0)
    assert [len(idx) for _, idx in data.groups] == [1, 3, 2]
    assert fundamental_elements(single, 3).generators == ()


def test_cz_decompositions(cz):
    assert format_decomposition(fundamental_elements(cz, 0)) == \
        "C_0 = <1> (+) <x y, x^3, y^2> (+) <y, x^2>"
    assert format_decomposition(fundamental_elements(cz, 1)) == \
        "C_1 = <x^2> (+) <y^2, x^2 y> (+) <x y^2, x^3>"
    assert format_decomposition(fundamental_elements(cz, 2)) == "C_2 = <x^3 y^2>"
    ideals = decompose(fundamental_elements(cz, 1))
    assert [set(i.generators) for i in ideals] == [
        {(2, 0)}, {(0, 2), (2, 1)}, {(1, 2), (3, 0)}]


def test_syzygies(single, edge, cz):
    assert syzygy_binomials(fundamental_elements(single, 0)) == []
    (z,) = syzygy_binomials(fundamental_elements(edge, 1))
    assert z.c == (1, 1)
    assert str(z) == "y*(2,(1,0)) - x*(2,(0,1))"
    b = [z.c for z in syzygy_binomials(fundamental_elements(cz, 0)) if z.a.simplex == 1]
    assert b == [(3, 1), (1, 2), (3, 2)]


def test_syzygy_soundness(cz):
    data = fundamental_elements(cz, 0)
    cover = chain_cover(cz, 0)
    for z in syzygy_binomials(data):
        assert not mat_vec(cover.columns(z.c), syzygy_vector(data, z))


def test_edge_boundary(edge):
    d = boundary_matrix(edge, 1)
    assert d.entries == {(0, 0): -1, (1, 0): 1, (0, 1): -1, (1, 1): 1}
    assert d.monomial(0, 0) == (1, 0) and d.monomial(0, 1) == (0, 1)


def test_single_boundary_empty(single):
    d = boundary_matrix(single, 1)
    assert d.shape == (1, 0)


def test_cz_triangle_boundary_signs(cz):
    d = boundary_matrix(cz, 2)
    gens = fundamental_elements(cz, 1).generators
    sign = {gens[i].simplex: a for i, a in d.cols[0].items()}
    # faces in sorted order: [0 1] (id 4), [0 2] (id 3), [1 2] (id 5)
    assert [sign[4], sign[3], sign[5]] == [1, -1, 1]


def test_chain_complex_shapes(single, edge, cz):
    assert [len(t) for t in chain_complex(single).terms] == [1]
    assert [len(t) for t in chain_complex(edge).terms] == [2, 2]
    assert [len(t) for t in chain_complex(cz).terms] == [6, 5, 1]


def test_chain_module_hilbert(edge):
    m = chain_module(edge, 0)
    assert all(m.dims[v] == 2 for v in grid_points((1, 1)))


def _pushed_composite_vanishes(f, n):
    dd = compose(boundary_matrix(f, n), boundary_matrix(f, n + 1))
    gens = fundamental_elements(f, n - 1).generators
    pos = {s.id: k for k, (s, _) in enumerate(f.of_dim(n - 1))}
    for col in dd.cols:
        pushed: dict = {}
        for i, a in col.items():
            axpy(pushed, a, {pos[gens[i].simplex]: K(1)})
        if pushed:
            return False
    return True


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_boundary_properties(seed, r):
    f = random_filtration(random.Random(seed), r, max_simplices=20)
    g = grid_bound(f)
    for n in range(1, f.dim):
        assert _pushed_composite_vanishes(f, n)
    for n in range(f.dim + 1):
        ideals = decompose(fundamental_elements(f, n))
        for v in grid_points(g):
            assert sum(i.dim_at(v) for i in ideals) == \
                sum(1 for s in slice_at(f, v) if s.dim == n)
    # simplicial boundary squares to zero
    for n in range(1, f.dim):
        outer, inner = simplicial_boundary(f, n), simplicial_boundary(f, n + 1)
        for col in inner:
            assert not mat_vec(outer, col)


def test_basis_law(cz):
    # the structure maps send simplex basis vectors to simplex basis vectors
    m = chain_module(cz, 1)
    for v in grid_points(m.grid):
        for i in range(2):
            if v[i] < m.grid[i]:
                for col in m.action(v, i):
                    assert len(col) == 1 and list(col.values()) == [1]


def test_evaluate_boundary_consistent_with_simplicial(cz):
    d = boundary_matrix(cz, 1)
    v = (3, 2)
    dense = evaluate_at(d, v)
    assert len(dense) == 6 and len(dense[0]) == 5
    assert all(leq(x, v) for x in d.source.degrees)

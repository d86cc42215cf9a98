import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from mpres.algebra import FreeModule, GradedMatrix
from mpres.chains import (MonomialIdeal, boundary_module, chain_module, cycle_module,
                          homology_module)
from mpres.field import K, set_field
from mpres.filtration import random_filtration
from mpres.gridmodule import (CoverMap, betti_numbers, hilbert_function, identity_map,
                              induced_map, zero_module)
from mpres.resolution import (ChainMap, FreeChainComplex, Resolution, format_resolution, lift_chain_map,
                              mapping_cone, minimize, parse_resolution, resolve_boundaries,
                              resolve_chains, resolve_homology, resolve_module, taylor_complex,
                              taylor_resolution, verify_resolution)


def ranks(cx):
    return [len(t) for t in cx.terms]


def test_taylor_koszul():
    res = taylor_resolution([(1, 0), (0, 1)])
    assert res.complex.summary() == "0 -> R(-1,-1) -> R(-1,0)(+)R(0,-1) -> 0"
    assert verify_resolution(res).ok


def test_taylor_three_generators():
    cx = taylor_complex(MonomialIdeal(((1, 1), (3, 0), (0, 2))).generators)
    assert ranks(cx) == [3, 3, 1]
    assert cx.term(2).degrees == ((3, 2),)
    assert sorted(cx.term(1).degrees) == sorted([(3, 1), (1, 2), (3, 2)])
    assert cx.is_complex()


def test_taylor_principal():
    res = taylor_resolution([(3, 2)])
    assert ranks(res.complex) == [1]
    assert verify_resolution(res).ok


def test_resolve_chains_examples(single, edge, cz):
    assert ranks(resolve_chains(edge, 1).complex) == [2, 1]
    res = resolve_chains(cz, 0)
    assert len(res.complex.term(0)) == 6
    assert verify_resolution(res).ok
    assert ranks(resolve_chains(single, 0).complex) == [1]


def test_resolve_module_examples(edge, cz):
    assert resolve_module(zero_module((1, 1))).complex.length == 0
    z1 = resolve_module(cycle_module(cz, 1))
    assert {(2, 2), (3, 1)} <= set(z1.complex.term(0).degrees)
    h0 = resolve_module(homology_module(edge, 0))
    assert h0.betti_table() == {(0, (0, 0)): 2, (1, (1, 0)): 1, (1, (0, 1)): 1, (2, (1, 1)): 1}
    assert verify_resolution(h0).ok


def test_lift_identity(cz):
    P = resolve_chains(cz, 1)
    alpha = lift_chain_map(identity_map(P.target), P, P)
    for j in range(P.complex.length):
        assert alpha.f(j) == GradedMatrix.identity(P.complex.term(j))


def test_lift_edge_zero_source(edge):
    Q = resolve_module(cycle_module(edge, 1))
    P = resolve_chains(edge, 1)
    alpha = lift_chain_map(induced_map(Q.target, P.target), Q, P)
    assert Q.complex.length == 0 and alpha.commutes()
    assert mapping_cone(alpha).degrees() == P.complex.degrees()


def test_lift_cz_commutes(cz):
    Q = resolve_module(cycle_module(cz, 1))
    P = resolve_chains(cz, 1)
    alpha = lift_chain_map(induced_map(Q.target, P.target), Q, P)
    assert alpha.commutes()


def _identity_cone(F: FreeModule):
    grid = tuple(max(d[i] for d in F.degrees) for i in range(len(F.degrees[0])))
    src = FreeChainComplex((F,), ())
    cone = mapping_cone(ChainMap(src, src, (GradedMatrix.identity(F),)))
    zero = zero_module(grid)
    return Resolution(cone, zero, CoverMap(cone.term(0), zero, tuple({} for _ in range(len(cone.term(0))))))


def test_identity_cone_exact_and_minimizes_away():
    res = _identity_cone(FreeModule(((1, 0),)))
    assert ranks(res.complex) == [1, 1]
    assert verify_resolution(res).ok
    assert minimize(res).complex.length == 0


def test_cone_of_empty_map(edge):
    P = resolve_chains(edge, 1)
    empty = FreeChainComplex((), ())
    cone = mapping_cone(ChainMap(empty, P.complex, ()))
    assert cone.degrees() == P.complex.degrees()


def test_resolve_boundaries_examples(single, edge, cz):
    b0 = resolve_boundaries(edge, 1)
    assert hilbert_function(b0.target) == {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    assert verify_resolution(b0).ok
    b1 = resolve_boundaries(cz, 2)
    h = hilbert_function(b1.target)
    assert h == {v: (1 if v == (3, 2) else 0) for v in h}
    assert verify_resolution(b1).ok
    assert resolve_boundaries(single, 1).target.is_zero()
    with pytest.raises(ValueError):
        resolve_boundaries(cz, 0)


def test_resolve_homology_examples(single, edge, cz):
    h = minimize(resolve_homology(single, 0))
    assert h.complex.summary() == "0 -> R(0,0) -> 0"
    e = minimize(resolve_homology(edge, 0))
    assert e.betti_table() == {(0, (0, 0)): 2, (1, (1, 0)): 1, (1, (0, 1)): 1, (2, (1, 1)): 1}
    res = resolve_homology(cz, 1)
    rep = verify_resolution(res, pad=0)
    assert rep.ok and rep.grades_checked == 12
    m = minimize(res)
    assert m.complex.summary() == "0 -> R(-3,-2)^2 -> R(-2,-2)(+)R(-3,-1) -> 0"
    assert verify_resolution(m).ok


def test_cz_h0_minimized_matches_grid_betti(cz):
    res = resolve_homology(cz, 0)
    assert verify_resolution(res).ok
    assert minimize(res).betti_table() == betti_numbers(homology_module(cz, 0))


def test_minimize_is_idempotent_on_minimal(cz):
    m = minimize(resolve_homology(cz, 1))
    assert minimize(m).complex == m.complex


def test_verify_catches_sign_flip():
    res = taylor_resolution([(1, 1), (3, 0), (0, 2)])
    cx = res.complex
    d2 = cx.d(2)
    col = dict(d2.cols[0])
    k = min(col)
    col[k] = -col[k]
    bad = FreeChainComplex(cx.terms, (cx.d(1), GradedMatrix(d2.source, d2.target, (col,))))
    rep = verify_resolution(Resolution(bad, res.target, res.augmentation))
    assert not rep.ok
    assert "d_1 o d_2" in str(rep)


def test_verify_catches_missing_generator():
    res = taylor_resolution([(1, 0), (0, 1)])
    cx = res.complex
    trunc = FreeChainComplex(cx.terms[:1], ())
    rep = verify_resolution(Resolution(trunc, res.target, res.augmentation))
    assert not rep.ok
    j, v, reason = rep.first
    assert (j, v) == (0, (1, 1)) and "ker(augmentation)" in reason


def test_verify_parallel_matches_serial(cz, monkeypatch):
    res = resolve_homology(cz, 0)
    a = verify_resolution(res, workers=1)
    b = verify_resolution(res, workers=2)
    assert a.ok == b.ok and a.grades_checked == b.grades_checked


def test_serialization_round_trip(cz):
    res = minimize(resolve_homology(cz, 1))
    text = format_resolution(res, "homology", 1, labels=[3, 4, 5])
    parsed = parse_resolution(text)
    assert parsed.header["target"] == "homology 1"
    assert parsed.complex == res.complex
    assert text.splitlines()[0] == res.complex.summary()


def test_prime_field_resolution(cz):
    set_field("fp:3")
    res = resolve_homology(cz, 1)
    assert verify_resolution(res).ok
    assert minimize(res).complex.summary() == "0 -> R(-3,-2)^2 -> R(-2,-2)(+)R(-3,-1) -> 0"


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_random_resolutions_verify(seed, r):
    f = random_filtration(random.Random(seed), r, max_simplices=14)
    for n in range(f.dim + 1):
        res = resolve_homology(f, n)
        assert verify_resolution(res).ok
        m = minimize(res)
        assert m.betti_table() == betti_numbers(homology_module(f, n))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_betti_order_invariant(seed):
    f = random_filtration(random.Random(seed), 2, max_simplices=14)
    for n in range(f.dim + 1):
        h = homology_module(f, n)
        assert betti_numbers(h, order="grlex") == betti_numbers(h, order="revlex")


def test_cz_h0_cone_low_terms_match_displayed_shifts(cz):
    # The displayed H_0 complex lists only two terms; as multisets they agree
    # with terms 0 and 1 of the (unminimized) cone, which continues further.
    cx = resolve_homology(cz, 0).complex
    assert Counter(cx.term(0).degrees) == Counter(
        [(3, 0), (0, 2), (1, 1), (2, 0), (0, 1), (0, 0)])
    assert Counter(cx.term(1).degrees) == Counter(
        [(3, 1), (1, 2), (1, 2), (2, 1), (2, 1), (3, 0), (0, 2), (2, 0)])
    assert cx.length > 2

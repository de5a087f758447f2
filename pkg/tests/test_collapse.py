import random

import pytest
from hypothesis import given, settings, strategies as st

from collapsekit import (
    Certificate,
    CollapseError,
    CollapsePair,
    Cube,
    Simplex,
    Verdict,
    boundary_cube,
    boundary_simplex,
    collapse_to_dim,
    cycle,
    dunce_hat,
    elementary_collapse,
    euler_characteristic,
    free_pairs,
    from_simplicial_facets,
    gf2_betti,
    product,
    remove_facet,
    tree_of_cubes,
    verify_certificate,
)

from oracles import free_pairs_by_containment, naive_failing_step, naive_remainder

s = lambda *v: Simplex(tuple(v))  # noqa: E731


def punctured_cube():
    C = boundary_cube(3)
    return remove_facet(C, C.facets()[0])


def test_free_pairs_of_triangle():
    T = from_simplicial_facets([[1, 2, 3]])
    pairs = free_pairs(T)
    assert pairs == [CollapsePair(s(1, 2), s(1, 2, 3)), CollapsePair(s(1, 3), s(1, 2, 3)),
                     CollapsePair(s(2, 3), s(1, 2, 3))]
    oracle = free_pairs_by_containment([[1, 2, 3]])
    assert {(p.face.vertices, p.coface.vertices) for p in pairs} == oracle


def test_no_free_pairs():
    assert free_pairs(boundary_cube(3)) == []
    assert free_pairs(dunce_hat()) == []


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sets(st.integers(0, 5), min_size=1, max_size=4), min_size=1, max_size=5))
def test_free_pairs_match_containment_oracle(fs):
    C = from_simplicial_facets(fs)
    got = {(p.face.vertices, p.coface.vertices) for p in free_pairs(C)}
    assert got == free_pairs_by_containment(fs)
    assert all(C.dim(p.coface) == C.dim(p.face) + 1 for p in free_pairs(C))


def test_elementary_collapse_triangle():
    T = from_simplicial_facets([[1, 2, 3]])
    R = elementary_collapse(T, CollapsePair(s(1, 2), s(1, 2, 3)))
    assert set(R) == {s(1), s(2), s(3), s(1, 3), s(2, 3)}
    assert euler_characteristic(R) == 1
    R.check()


def test_elementary_collapse_rejects_non_free():
    C = boundary_cube(3)
    with pytest.raises(CollapseError, match="also lies in"):
        elementary_collapse(C, CollapsePair(Cube("00*"), Cube("0**")))


def test_collapse_on_punctured_torus():
    T = product(cycle(4), cycle(4))
    facet = T.facets()[0]
    P = remove_facet(T, facet)
    edge = sorted(T.boundary(facet), key=str)[0]
    (other,) = P.coboundary(edge)
    R = elementary_collapse(P, CollapsePair(edge, other))
    assert len(R) == 61


def test_collapse_punctured_cube_to_vertex():
    P = punctured_cube()
    out = collapse_to_dim(P, 0)
    assert out.verdict is Verdict.FOUND
    assert len(out.certificate) == (len(P) - 1) // 2 == 12
    rep = verify_certificate(P, out.certificate)
    assert rep.accepted and len(rep.remainder) == 1


def test_collapse_punctured_tetrahedron():
    B = boundary_simplex(3)
    P = remove_facet(B, B.facets()[0])
    out = collapse_to_dim(P, 0)
    assert out.found and len(out.certificate) == (13 - 1) // 2 == 6


def test_dunce_hat_has_no_collapse():
    assert collapse_to_dim(dunce_hat(), 0).verdict is Verdict.NO_FREE_PAIRS
    assert collapse_to_dim(dunce_hat(), 0, "random", max_restarts=3).verdict is Verdict.NO_FREE_PAIRS


def test_lex_is_deterministic():
    S = boundary_cube(4)
    P = remove_facet(S, S.facets()[-1])
    a, b = collapse_to_dim(P, 0), collapse_to_dim(P, 0)
    assert a.found
    assert a.certificate.pairs == b.certificate.pairs


def test_random_is_reproducible_and_seed_dependent():
    P = tree_of_cubes(3, ["0:+0", "1:+1", "2:+2"])
    runs = [collapse_to_dim(P, 0, "random", seed=k) for k in (1, 1, 2)]
    assert all(r.found for r in runs)
    assert runs[0].certificate.pairs == runs[1].certificate.pairs
    assert runs[0].certificate.pairs != runs[2].certificate.pairs
    assert all(verify_certificate(P, r.certificate).accepted for r in runs)


def test_parallel_restarts_match_sequential():
    C = product(boundary_cube(3), boundary_cube(3))
    P = remove_facet(C, C.facets()[0])
    seq = collapse_to_dim(P, 2, "random", seed=5, max_restarts=3)
    par = collapse_to_dim(P, 2, "random", seed=5, max_restarts=3, workers=2)
    assert seq.verdict == par.verdict and seq.restarts_used == par.restarts_used
    assert seq.certificate.pairs == par.certificate.pairs


def test_ordered_selection_respects_dimension():
    C = tree_of_cubes(3, ["0:+0"])
    out = collapse_to_dim(C, 0)
    dims = [C.dim(p.coface) for p in out.certificate]
    assert dims == sorted(dims, reverse=True)
    unordered = collapse_to_dim(C, 0, ordered=False)
    assert verify_certificate(C, unordered.certificate).accepted


def test_target_already_met():
    out = collapse_to_dim(cycle(4), 1)
    assert out.found and len(out.certificate) == 0


def test_found_outcome_bookkeeping():
    for C in (punctured_cube(), tree_of_cubes(2, ["0:+0", "1:+1"])):
        out = collapse_to_dim(C, 0)
        rep = verify_certificate(C, out.certificate)
        assert out.pairs_removed == (len(C) - len(rep.remainder)) // 2
        assert rep.remainder_dim <= 0


def test_verify_rejects_swapped_pairs():
    P = punctured_cube()
    pairs = list(collapse_to_dim(P, 0).certificate)
    # find a later pair whose face is still covered by an earlier coface
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if pairs[i].coface in P.coboundary(pairs[j].face) or \
                    pairs[j].face in P.boundary(pairs[i].coface):
                bad = pairs[:]
                bad[i], bad[j] = bad[j], bad[i]
                rep = verify_certificate(P, Certificate(bad))
                assert not rep.accepted
                assert rep.failing_step == naive_failing_step(P, bad) == i
                return
    pytest.fail("no dependent pair found")


def test_verify_rejects_absent_face():
    P = punctured_cube()
    pairs = list(collapse_to_dim(P, 0).certificate)
    pairs[4] = CollapsePair(s(99), pairs[4].coface)
    rep = verify_certificate(P, Certificate(pairs))
    assert not rep.accepted and rep.failing_step == 4 and "absent" in rep.reason


def test_verify_homology_checkpoints():
    C = product(boundary_cube(3), boundary_cube(3))
    P = remove_facet(C, C.facets()[0])
    out = collapse_to_dim(P, 2)
    rep = verify_certificate(P, out.certificate, check_homology=True)
    assert rep.accepted


def test_invariants_under_random_collapses():
    rng = random.Random(7)
    complexes = [punctured_cube(), tree_of_cubes(2, ["0:+0", "0:+1"]),
                 remove_facet(product(cycle(4), cycle(3)), product(cycle(4), cycle(3)).facets()[0])]
    steps = 0
    for C in complexes:
        chi, betti = euler_characteristic(C), gf2_betti(C)
        while (pairs := free_pairs(C)):
            if len(C) == 2:
                break
            C = elementary_collapse(C, rng.choice(pairs))
            steps += 1
            assert euler_characteristic(C) == chi
            assert gf2_betti(C).trimmed() == betti.trimmed()
    assert steps >= 30


def test_replay_matches_naive_remainder():
    P = punctured_cube()
    cert = collapse_to_dim(P, 1).certificate
    rep = verify_certificate(P, cert)
    assert set(rep.remainder) == naive_remainder(P, cert)

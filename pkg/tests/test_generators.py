from itertools import product as cartesian

import pytest

from collapsekit import (
    ComplexError,
    boundary_cube,
    boundary_simplex,
    cycle,
    dual_graph_is_tree,
    dunce_hat,
    euler_characteristic,
    f_vector,
    free_pairs,
    gf2_betti,
    is_pseudomanifold,
    solid_cube,
    tree_of_cubes,
)
from collapsekit.generators import DUNCE_HAT_FACETS

from oracles import betti_reference, free_pairs_by_containment


def lattice_f_vector(positions, d):
    """Count lattice cells covered by unit cubes at the given positions."""
    cells = set()
    for pos in positions:
        for choice in cartesian(*[[(x, 0), (x + 1, 0), (x, 1)] for x in pos]):
            cells.add(choice)
    counts = [0] * (d + 1)
    for c in cells:
        counts[sum(w for _, w in c)] += 1
    return tuple(counts)


@pytest.mark.parametrize("d,f,chi", [(3, (8, 12, 6), 2), (4, (16, 32, 24, 8), 0), (1, (2,), 2)])
def test_boundary_cube(d, f, chi):
    C = boundary_cube(d)
    assert f_vector(C) == f
    assert euler_characteristic(C) == chi


@pytest.mark.parametrize("d,f,chi", [(3, (4, 6, 4), 2), (4, (5, 10, 10, 5), 0), (1, (2,), 2)])
def test_boundary_simplex(d, f, chi):
    C = boundary_simplex(d)
    assert f_vector(C) == f
    assert euler_characteristic(C) == chi


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cycle(n):
    C = cycle(n)
    assert f_vector(C) == (n, n)
    assert euler_characteristic(C) == 0


@pytest.mark.parametrize("fn,bad", [(boundary_cube, 0), (boundary_simplex, 0), (cycle, 2)])
def test_generator_ranges(fn, bad):
    with pytest.raises(ComplexError):
        fn(bad)


@pytest.mark.parametrize("d", range(2, 7))
def test_spheres_are_pseudomanifolds(d):
    assert is_pseudomanifold(boundary_cube(d))
    assert is_pseudomanifold(boundary_simplex(d))
    for C in (boundary_cube(d), boundary_simplex(d)):
        for ridge in C.faces_of_dim(d - 2):
            assert len(C.coboundary(ridge)) == 2


@pytest.mark.parametrize("d,edges,positions", [
    (3, ["0:+0"], [(0, 0, 0), (1, 0, 0)]),
    (3, [], [(0, 0, 0)]),
    (2, ["0:+0", "1:+0"], [(0, 0), (1, 0), (2, 0)]),
    (2, ["0:+0", "1:+1", "2:+1", "3:-0"], [(0, 0), (1, 0), (1, 1), (1, 2), (0, 2)]),
    (3, [(0, 2, -1), (1, 1, 1), (0, 0, 1)], [(0, 0, 0), (0, 0, -1), (0, 1, -1), (1, 0, 0)]),
])
def test_tree_of_cubes(d, edges, positions):
    C = tree_of_cubes(d, edges)
    assert f_vector(C) == lattice_f_vector(positions, d)
    assert euler_characteristic(C) == 1
    assert dual_graph_is_tree(C)
    assert not C.diamond_violations()


def test_tree_of_cubes_documented_counts():
    assert f_vector(tree_of_cubes(3, ["0:+0"])) == (12, 20, 11, 2)
    assert f_vector(tree_of_cubes(3, [])) == (8, 12, 6, 1)
    assert f_vector(tree_of_cubes(2, ["0:+0", "1:+0"])) == (8, 10, 3)


def test_tree_of_cubes_errors():
    with pytest.raises(ComplexError, match="overlaps"):
        tree_of_cubes(2, ["0:+0", "1:-0"])
    with pytest.raises(ComplexError, match="cycle"):
        tree_of_cubes(2, ["0:+0", "1:+1", "2:-0"])
    with pytest.raises(ComplexError):
        tree_of_cubes(2, ["5:+0"])
    with pytest.raises(ComplexError):
        tree_of_cubes(2, ["0:+7"])
    with pytest.raises(ComplexError):
        tree_of_cubes(2, ["nonsense"])


def test_dunce_hat_invariants():
    D = dunce_hat()
    assert euler_characteristic(D) == 1
    assert gf2_betti(D) == betti_reference(D) == (1, 0, 0)
    assert free_pairs(D) == []
    assert free_pairs_by_containment(DUNCE_HAT_FACETS) == set()


def test_dunce_hat_seam_structure():
    D = dunce_hat()
    seam = {(1, 2), (2, 3), (1, 3)}
    for e in D.faces_of_dim(1):
        expected = 3 if e.vertices in seam else 2
        assert len(D.coboundary(e)) == expected


def test_solid_cube_tree():
    assert dual_graph_is_tree(solid_cube(3))

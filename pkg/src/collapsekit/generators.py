"""Named complexes: cube and simplex boundaries, cycles, trees of cubes and
a dunce hat."""

from __future__ import annotations

from itertools import combinations, product as _cartesian
from typing import Iterable, Sequence

from .complex import Complex, ComplexError, from_cubical_cells, from_simplicial_facets
from .labels import Pair, Simplex

# Dunce hat: a triangle whose three sides are glued by the word a.a.a^-1.
# The seam is the loop 1-2-3-1 (every corner is vertex 1); vertices 4..8
# triangulate the interior.  Each seam edge lies in three triangles, every
# other edge in two.
DUNCE_HAT_FACETS = (
    (1, 2, 4), (1, 2, 5), (1, 2, 8), (1, 3, 5), (1, 3, 6), (1, 3, 7),
    (1, 4, 8), (1, 6, 7), (2, 3, 4), (2, 3, 6), (2, 3, 8), (2, 5, 6),
    (3, 4, 5), (3, 7, 8), (4, 5, 6), (4, 6, 7), (4, 7, 8),
)


def boundary_cube(d: int) -> Complex:
    """All proper faces of the unit ``d``-cube."""
    if d < 1:
        raise ComplexError("boundary_cube needs d >= 1")
    cells = []
    for i in range(d):
        for t in "01":
            cells.append("*" * i + t + "*" * (d - i - 1))
    return from_cubical_cells(cells)


def solid_cube(d: int) -> Complex:
    if d < 0:
        raise ComplexError("solid_cube needs d >= 0")
    return from_cubical_cells(["*" * d] if d else ["0"])


def boundary_simplex(d: int) -> Complex:
    """All proper faces of the ``d``-simplex on vertices ``1..d+1``."""
    if d < 1:
        raise ComplexError("boundary_simplex needs d >= 1")
    return from_simplicial_facets(combinations(range(1, d + 2), d))


def solid_simplex(d: int) -> Complex:
    if d < 0:
        raise ComplexError("solid_simplex needs d >= 0")
    return from_simplicial_facets([range(1, d + 2)])


def cycle(n: int) -> Complex:
    """A circle made of ``n`` edges on vertices ``1..n``."""
    if n < 3:
        raise ComplexError("cycle needs n >= 3")
    return from_simplicial_facets([(i, i % n + 1) for i in range(1, n + 1)])


def dunce_hat() -> Complex:
    return from_simplicial_facets(DUNCE_HAT_FACETS)


def parse_glue(text: str) -> tuple[int, int, int]:
    """Parse a glue direction ``"P:+A"`` / ``"P:-A"``: attach a new cube to
    cube number ``P`` across its facet orthogonal to axis ``A``."""
    try:
        parent, step = text.split(":")
        sign = {"+": 1, "-": -1}[step[0]]
        return int(parent), int(step[1:]), sign
    except (ValueError, KeyError, IndexError):
        raise ComplexError(f"bad glue direction {text!r}; expected e.g. '0:+1'") from None


def tree_of_cubes(d: int, tree_edges: Sequence) -> Complex:
    """Unit ``d``-cubes on the integer lattice glued facet-to-facet along a tree.

    Cube 0 sits at the origin.  Edge ``i`` (a ``(parent, axis, sign)`` triple or
    its ``"P:+A"`` string form) places cube ``i+1`` next to cube ``parent``.
    Faces are labelled as products of the one-dimensional lattice complexes,
    one factor per axis, nested left to right.
    """
    if d < 1:
        raise ComplexError("tree_of_cubes needs d >= 1")
    positions = [(0,) * d]
    occupied = {positions[0]: 0}
    for k, edge in enumerate(tree_edges, start=1):
        parent, axis, sign = parse_glue(edge) if isinstance(edge, str) else edge
        if not 0 <= parent < len(positions):
            raise ComplexError(f"glue {k}: unknown parent cube {parent}")
        if not 0 <= axis < d or sign not in (1, -1):
            raise ComplexError(f"glue {k}: bad direction ({axis}, {sign})")
        pos = list(positions[parent])
        pos[axis] += sign
        pos = tuple(pos)
        if pos in occupied:
            raise ComplexError(f"glue {k}: overlaps cube {occupied[pos]}")
        for a in range(d):
            for s in (1, -1):
                nb = pos[:a] + (pos[a] + s,) + pos[a + 1:]
                if nb in occupied and occupied[nb] != parent:
                    raise ComplexError(
                        f"glue {k}: cube would share a facet with cube {occupied[nb]}, "
                        "closing a cycle in the dual graph")
        occupied[pos] = len(positions)
        positions.append(pos)
    return _lattice_complex(positions)


def _lattice_complex(positions: Iterable[tuple[int, ...]]) -> Complex:
    bd: dict = {}
    for pos in positions:
        # faces of the cube at pos: per axis, a vertex (x or x+1) or the edge.
        options = [[Simplex((x,)), Simplex((x + 1,)), Simplex((x, x + 1))] for x in pos]
        for choice in _cartesian(*options):
            lab = _fold(choice)
            if lab in bd:
                continue
            faces = []
            for i, s in enumerate(choice):
                if len(s.vertices) == 2:
                    for v in s.vertices:
                        faces.append(_fold(choice[:i] + (Simplex((v,)),) + choice[i + 1:]))
            bd[lab] = (sum(len(s.vertices) - 1 for s in choice), faces)
    return Complex.from_boundaries(bd)


def _fold(parts):
    lab = parts[0]
    for p in parts[1:]:
        lab = Pair(lab, p)
    return lab

"""Euler characteristic, GF(2) Betti numbers and pseudomanifold checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .complex import Complex
from .labels import FaceId, label_key

DENSE_LIMIT = 2000


class BettiProfile(tuple):
    """GF(2) Betti numbers indexed by dimension."""

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(self)

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self))

    def trimmed(self) -> tuple[int, ...]:
        """Ranks without trailing zeros, for comparing complexes of different dimension."""
        ranks = list(self)
        while ranks and not ranks[-1]:
            ranks.pop()
        return tuple(ranks)

    def __repr__(self) -> str:
        return f"BettiProfile{tuple(self)}"


def euler_characteristic(C: Complex) -> int:
    return C.f_vector().euler()


def _index(C: Complex, k: int) -> dict[FaceId, int]:
    return {f: i for i, f in enumerate(C.faces_of_dim(k))}


def boundary_matrix(C: Complex, k: int) -> np.ndarray:
    """Unsigned incidence matrix of the boundary map from k-faces to (k-1)-faces."""
    rows, cols = _index(C, k - 1), _index(C, k)
    M = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for f, j in cols.items():
        for b in C.boundary(f):
            M[rows[b], j] = 1
    return M


def gf2_rank_dense(M: np.ndarray) -> int:
    """Rank over GF(2) by Gaussian elimination with XOR row operations."""
    R = (np.asarray(M, dtype=np.uint8) & 1).copy()
    m, n = R.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        hits = np.nonzero(R[rank:, col])[0]
        if hits.size == 0:
            continue
        p = rank + hits[0]
        if p != rank:
            R[[rank, p]] = R[[p, rank]]
        below = rank + 1 + np.nonzero(R[rank + 1:, col])[0]
        R[below] ^= R[rank]
        rank += 1
    return rank


def gf2_rank_sparse(columns: list[int]) -> int:
    """Rank of a GF(2) matrix given as integer bitmask columns.

    Standard column reduction: each column is reduced against earlier
    columns sharing its lowest (here: highest set) bit.
    """
    pivots: dict[int, int] = {}
    for col in columns:
        while col:
            low = col.bit_length() - 1
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                break
            col ^= other
    return len(pivots)


def _boundary_rank(C: Complex, k: int) -> int:
    if k <= 0:
        return 0
    cols = C.faces_of_dim(k)
    if not cols:
        return 0
    rows = _index(C, k - 1)
    if len(cols) < DENSE_LIMIT and len(rows) < DENSE_LIMIT:
        return gf2_rank_dense(boundary_matrix(C, k))
    masks = []
    for f in cols:
        m = 0
        for b in C.boundary(f):
            m |= 1 << rows[b]
        masks.append(m)
    return gf2_rank_sparse(masks)


def gf2_betti(C: Complex) -> BettiProfile:
    f = C.f_vector()
    d = C.top_dim
    ranks = [_boundary_rank(C, k) for k in range(d + 2)]
    return BettiProfile(f[k] - ranks[k] - ranks[k + 1] for k in range(d + 1))


@dataclass(frozen=True)
class DualGraph:
    nodes: list
    edges: list


@dataclass(frozen=True)
class PseudomanifoldCheck:
    ok: bool
    offending: Optional[FaceId] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_pure(C: Complex) -> bool:
    return all(C.dim(f) == C.top_dim for f in C.facets())


def dual_graph(C: Complex) -> DualGraph:
    """Top-dimensional faces, adjacent when they share a codimension-one face.

    A ridge lying in ``n`` facets contributes all ``n choose 2`` edges; two
    facets sharing several ridges get one edge per ridge.
    """
    d = C.top_dim
    nodes = C.faces_of_dim(d)
    edges = []
    for ridge in C.faces_of_dim(d - 1) if d > 0 else []:
        tops = sorted(C.coboundary(ridge), key=label_key)
        edges.extend(combinations(tops, 2))
    return DualGraph(nodes, edges)


def _components(graph: DualGraph) -> int:
    parent = {v: v for v in graph.nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    comps = len(parent)
    for a, b in graph.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def is_pseudomanifold(C: Complex) -> PseudomanifoldCheck:
    """Pure, every ridge in exactly two facets, and a connected dual graph."""
    d = C.top_dim
    for f in C.facets():
        if C.dim(f) != d:
            return PseudomanifoldCheck(False, f, "complex is not pure")
    for ridge in C.faces_of_dim(d - 1) if d > 0 else []:
        if len(C.coboundary(ridge)) != 2:
            return PseudomanifoldCheck(
                False, ridge, f"ridge lies in {len(C.coboundary(ridge))} facets")
    if _components(dual_graph(C)) != 1:
        return PseudomanifoldCheck(False, None, "dual graph is disconnected")
    return PseudomanifoldCheck(True)


def dual_graph_is_tree(C: Complex) -> bool:
    if not is_pure(C):
        return False
    g = dual_graph(C)
    return len(g.edges) == len(g.nodes) - 1 and _components(g) == 1

"""Graded face posets: simplicial, cubical and product complexes."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Iterator, Mapping

from .labels import (
    FaceId,
    LabelError,
    Pair,
    cube,
    cube_boundary,
    label_key,
    simplex,
    simplex_boundary,
)


class ComplexError(ValueError):
    """Raised when a face poset is not a valid complex, or an operation's
    precondition on a complex does not hold."""


@dataclass(frozen=True)
class FaceRecord:
    dim: int
    boundary: frozenset
    coboundary: frozenset


class FVector(tuple):
    """Face counts indexed by dimension."""

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def total(self) -> int:
        return sum(self)

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self))

    def __repr__(self) -> str:
        return f"FVector{tuple(self)}"


class Complex:
    """A finite graded face poset.

    Every face stores its dimension, its codimension-one faces and its
    codimension-one cofaces.  Instances are treated as immutable; every
    operation that removes faces returns a new complex.
    """

    __slots__ = ("_faces", "_top_dim")

    def __init__(self, faces: Mapping[FaceId, FaceRecord], *, check: bool = True):
        if not faces:
            raise ComplexError("empty complex forbidden")
        self._faces = dict(faces)
        self._top_dim = max(r.dim for r in self._faces.values())
        if check:
            self.check()

    @classmethod
    def from_boundaries(cls, boundaries: Mapping[FaceId, tuple[int, Iterable[FaceId]]],
                        *, check: bool = True) -> "Complex":
        """Build from ``label -> (dim, boundary labels)``; cofaces are derived."""
        cob: dict[FaceId, list] = defaultdict(list)
        for lab, (_, bd) in boundaries.items():
            for b in bd:
                cob[b].append(lab)
        faces = {}
        for lab, (d, bd) in boundaries.items():
            faces[lab] = FaceRecord(d, frozenset(bd), frozenset(cob.get(lab, ())))
        stray = set(cob) - set(boundaries)
        if stray:
            missing = min(stray, key=label_key)
            raise ComplexError(f"not closed: boundary face {missing} is missing")
        return cls(faces, check=check)

    # -- access --------------------------------------------------------
    @property
    def faces(self) -> Mapping[FaceId, FaceRecord]:
        return self._faces

    @property
    def top_dim(self) -> int:
        return self._top_dim

    def __len__(self) -> int:
        return len(self._faces)

    def __contains__(self, label) -> bool:
        return label in self._faces

    def __iter__(self) -> Iterator[FaceId]:
        return iter(self._faces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self._faces == other._faces

    def __hash__(self):
        return hash(frozenset(self._faces))

    def __repr__(self) -> str:
        return f"<Complex dim={self._top_dim} f={tuple(self.f_vector())}>"

    def dim(self, label: FaceId) -> int:
        return self._faces[label].dim

    def boundary(self, label: FaceId) -> frozenset:
        return self._faces[label].boundary

    def coboundary(self, label: FaceId) -> frozenset:
        return self._faces[label].coboundary

    def faces_of_dim(self, k: int) -> list[FaceId]:
        return sorted((f for f, r in self._faces.items() if r.dim == k), key=label_key)

    def facets(self) -> list[FaceId]:
        """Inclusion-maximal faces, highest dimension first, then by label."""
        return sorted((f for f, r in self._faces.items() if not r.coboundary),
                      key=lambda f: (-self._faces[f].dim, label_key(f)))

    def ordered_faces(self) -> list[FaceId]:
        """All faces by weakly decreasing dimension, ties by ascending label."""
        return sorted(self._faces, key=lambda f: (-self._faces[f].dim, label_key(f)))

    def f_vector(self) -> FVector:
        counts = Counter(r.dim for r in self._faces.values())
        return FVector(counts.get(k, 0) for k in range(self._top_dim + 1))

    # -- validation ----------------------------------------------------
    def check(self) -> None:
        """Check closure, grading and boundary/coboundary consistency."""
        faces = self._faces
        for lab, rec in faces.items():
            if rec.dim < 0:
                raise ComplexError(f"negative dimension on {lab}")
            if rec.dim == 0 and rec.boundary:
                raise ComplexError(f"vertex {lab} has a nonempty boundary")
            if rec.dim > 0 and not rec.boundary:
                raise ComplexError(f"face {lab} of dimension {rec.dim} has empty boundary")
            for b in rec.boundary:
                other = faces.get(b)
                if other is None:
                    raise ComplexError(f"not closed: boundary face {b} of {lab} is missing")
                if other.dim != rec.dim - 1:
                    raise ComplexError(f"not graded: {b} in boundary of {lab}")
                if lab not in other.coboundary:
                    raise ComplexError(f"coboundary of {b} does not list {lab}")
            for c in rec.coboundary:
                other = faces.get(c)
                if other is None or lab not in other.boundary:
                    raise ComplexError(f"stale coface {c} recorded on {lab}")

    def diamond_violations(self) -> list[tuple[FaceId, FaceId, int]]:
        """Codimension-two incidences that do not have exactly two faces in between."""
        bad = []
        for lab, rec in self._faces.items():
            if rec.dim < 2:
                continue
            between = Counter()
            for b in rec.boundary:
                between.update(self._faces[b].boundary)
            bad.extend((lab, low, n) for low, n in between.items() if n != 2)
        return bad

    def check_diamond(self) -> None:
        bad = self.diamond_violations()
        if bad:
            top, low, n = bad[0]
            raise ComplexError(f"diamond property fails between {low} and {top} ({n} faces between)")

    # -- derived complexes --------------------------------------------
    def without(self, labels: Iterable[FaceId]) -> "Complex":
        """Delete faces; the caller guarantees the result stays closed."""
        gone = set(labels)
        faces = dict(self._faces)
        touched = set()
        for lab in gone:
            del faces[lab]
            touched.update(self._faces[lab].boundary)
        for lab in touched - gone:
            rec = faces[lab]
            faces[lab] = FaceRecord(rec.dim, rec.boundary, rec.coboundary - gone)
        return Complex(faces, check=False)

    def subcomplex(self, labels: Iterable[FaceId]) -> "Complex":
        """The complex formed by the given faces, which must be downward closed."""
        keep = set(labels)
        for lab in keep:
            if not self._faces[lab].boundary <= keep:
                raise ComplexError(f"faces are not downward closed at {lab}")
        return self.without(set(self._faces) - keep)


def f_vector(C: Complex) -> FVector:
    return C.f_vector()


def from_simplicial_facets(facets: Iterable[Iterable[int]]) -> Complex:
    """Downward closure of a family of simplices given by vertex sets."""
    tops = [simplex(f) for f in facets]
    if not tops:
        raise ComplexError("empty complex forbidden")
    bd: dict = {}
    stack = list(tops)
    while stack:
        s = stack.pop()
        if s in bd:
            continue
        faces = simplex_boundary(s)
        bd[s] = (len(s.vertices) - 1, faces)
        stack.extend(faces)
    return Complex.from_boundaries(bd)


def from_cubical_cells(cells: Iterable[str]) -> Complex:
    """Downward closure of faces of the unit cube given as token vectors."""
    try:
        tops = [cube(c) for c in cells]
    except LabelError as exc:
        raise ComplexError(str(exc)) from None
    if not tops:
        raise ComplexError("empty complex forbidden")
    if len({len(c.tokens) for c in tops}) != 1:
        raise ComplexError("cube token vectors have inconsistent lengths")
    bd: dict = {}
    stack = list(tops)
    while stack:
        c = stack.pop()
        if c in bd:
            continue
        faces = cube_boundary(c)
        bd[c] = (c.tokens.count("*"), faces)
        stack.extend(faces)
    return Complex.from_boundaries(bd)


def product(A: Complex, B: Complex) -> Complex:
    """Cartesian product; faces are labelled ``Pair(alpha, beta)``."""
    fa, fb = A.faces, B.faces
    faces = {}
    for (a, ra), (b, rb) in _cartesian(fa.items(), fb.items()):
        bd = [Pair(x, b) for x in ra.boundary] + [Pair(a, y) for y in rb.boundary]
        cob = [Pair(x, b) for x in ra.coboundary] + [Pair(a, y) for y in rb.coboundary]
        faces[Pair(a, b)] = FaceRecord(ra.dim + rb.dim, frozenset(bd), frozenset(cob))
    return Complex(faces, check=False)


def remove_facet(C: Complex, facet: FaceId) -> Complex:
    """Puncture: delete one maximal face, keeping its boundary."""
    if facet not in C:
        raise ComplexError(f"face {facet} is not in the complex")
    if C.coboundary(facet):
        raise ComplexError(f"only facets may be punctured: {facet} has cofaces")
    if len(C) == 1:
        raise ComplexError("empty complex forbidden")
    return C.without([facet])


def point() -> Complex:
    return from_simplicial_facets([[0]])


"""Free faces, elementary collapses, greedy collapse search and certificate replay."""

from __future__ import annotations

import heapq
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Optional

from .complex import Complex, ComplexError, FVector
from .labels import FaceId, label_key


class CollapseError(ComplexError):
    """An elementary collapse was requested on a pair that is not free."""


class CollapsePair(NamedTuple):
    face: FaceId
    coface: FaceId


@dataclass
class Certificate:
    """Ordered collapse pairs; replaying them from the source is the witness."""

    pairs: list[CollapsePair] = field(default_factory=list)
    source_checksum: Optional[str] = None

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[CollapsePair]:
        return iter(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]


class Verdict(Enum):
    FOUND = "FOUND"
    NO_FREE_PAIRS = "NO_FREE_PAIRS"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass
class SearchOutcome:
    verdict: Verdict
    certificate: Optional[Certificate]
    restarts_used: int
    pairs_removed: int

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND


@dataclass
class VerifyReport:
    accepted: bool
    failing_step: Optional[int]
    reason: str
    remainder: Complex
    remainder_f: FVector
    remainder_dim: int


def _free_partner(C: Complex, face: FaceId) -> Optional[FaceId]:
    cob = C.coboundary(face)
    if len(cob) != 1:
        return None
    (top,) = cob
    return None if C.coboundary(top) else top


def free_pairs(C: Complex) -> list[CollapsePair]:
    """All free pairs, highest coface dimension first, then by label."""
    out = []
    for f in C:
        top = _free_partner(C, f)
        if top is not None:
            out.append(CollapsePair(f, top))
    out.sort(key=lambda p: (-C.dim(p.coface), label_key(p.coface), label_key(p.face)))
    return out


def _why_not_free(cob_face, cob_top, face, top) -> Optional[str]:
    if top not in cob_face:
        return f"{face} is not a face of {top}"
    if cob_top:
        other = min(cob_top, key=label_key)
        return f"{top} is not maximal: it lies in {other}"
    if len(cob_face) != 1:
        other = min((c for c in cob_face if c != top), key=label_key)
        return f"{face} is not free: it also lies in {other}"
    return None


def elementary_collapse(C: Complex, pair: CollapsePair) -> Complex:
    face, top = pair
    for lab in pair:
        if lab not in C:
            raise CollapseError(f"face {lab} is not in the complex")
    problem = _why_not_free(C.coboundary(face), C.coboundary(top), face, top)
    if problem:
        raise CollapseError(problem)
    if len(C) == 2:
        raise CollapseError("collapse would leave an empty complex")
    return C.without(pair)


# -- greedy search -------------------------------------------------------

class _SearchState:
    """Integer-indexed mutable copy of a complex.

    Indices follow (dimension, label) order, so within one dimension the
    smallest index is the lexicographically first label.
    """

    def __init__(self, C: Complex):
        order = sorted(C.faces, key=lambda f: (C.dim(f), label_key(f)))
        index = {f: i for i, f in enumerate(order)}
        self.labels = order
        self.dim = [C.dim(f) for f in order]
        self.bd = [sorted(index[b] for b in C.boundary(f)) for f in order]
        self.cob = [{index[c] for c in C.coboundary(f)} for f in order]
        self.count = Counter(self.dim)

    def top_dim(self) -> int:
        return max((k for k, n in self.count.items() if n), default=-1)

    def free_top(self, t: int) -> Optional[int]:
        cob = self.cob[t]
        if len(cob) == 1:
            (top,) = cob
            if not self.cob[top]:
                return top
        return None

    def remove(self, face: int, top: int) -> list[int]:
        """Collapse the pair; return faces whose freeness may have changed."""
        touched = []
        for lab in (top, face):
            self.count[self.dim[lab]] -= 1
            for b in self.bd[lab]:
                self.cob[b].discard(lab)
                if b != face:
                    touched.append(b)
        self.cob[face] = self.cob[top] = None  # removed
        return touched


class _Candidates:
    """Free-pair candidates bucketed by coface dimension (lazily pruned)."""

    def __init__(self, rng: Optional[random.Random]):
        self.rng = rng
        self.buckets: dict[int, list] = {}
        self.members: dict[int, dict] = {}

    def add(self, d: int, item: tuple[int, int]) -> None:
        if self.rng is None:
            heapq.heappush(self.buckets.setdefault(d, []), item)
            return
        members = self.members.setdefault(d, {})
        if item not in members:
            bucket = self.buckets.setdefault(d, [])
            members[item] = len(bucket)
            bucket.append(item)

    def discard(self, d: int, item) -> None:
        if self.rng is None:
            return  # heap entries are dropped on pop
        members, bucket = self.members[d], self.buckets[d]
        i = members.pop(item)
        last = bucket.pop()
        if i < len(bucket):
            bucket[i] = last
            members[last] = i

    def peek(self, d: int):
        bucket = self.buckets.get(d)
        if not bucket:
            return None
        if self.rng is None:
            return bucket[0]
        return bucket[self.rng.randrange(len(bucket))]

    def pop_stale(self, d: int, item) -> None:
        if self.rng is None:
            heapq.heappop(self.buckets[d])
        else:
            self.discard(d, item)


def _greedy(C: Complex, target_dim: int, rng: Optional[random.Random],
            ordered: bool = True) -> tuple[list[CollapsePair], bool]:
    st = _SearchState(C)
    cand = _Candidates(rng)

    def consider(t: int) -> None:
        top = st.free_top(t)
        if top is not None:
            cand.add(st.dim[top], (top, t))

    for t in range(len(st.labels)):
        consider(t)

    def valid(item) -> bool:
        top, face = item
        return st.cob[top] is not None and st.cob[face] is not None and st.free_top(face) == top

    def first_valid(d: int):
        while (item := cand.peek(d)) is not None:
            if valid(item):
                return item
            cand.pop_stale(d, item)
        return None

    pairs: list[CollapsePair] = []
    while st.top_dim() > target_dim:
        dims = [d for d in cand.buckets if d > target_dim]
        chosen = None
        if ordered:
            for d in sorted(dims, reverse=True):
                item = first_valid(d)
                if item is not None:
                    chosen = (d, item)
                    break
        elif rng is None:
            for d in sorted(dims):
                item = first_valid(d)
                if item is not None:
                    chosen = (d, item)
                    break
        else:
            while dims:
                sizes = [len(cand.buckets[d]) for d in dims]
                if not any(sizes):
                    break
                d = rng.choices(dims, weights=sizes)[0]
                item = cand.peek(d)
                if valid(item):
                    chosen = (d, item)
                    break
                cand.pop_stale(d, item)
        if chosen is None:
            return pairs, False
        d, (top, face) = chosen
        cand.pop_stale(d, (top, face))
        pairs.append(CollapsePair(st.labels[face], st.labels[top]))
        for b in st.remove(face, top):
            consider(b)
            if not st.cob[b]:
                for r in st.bd[b]:
                    consider(r)
    return pairs, True


def _attempt(C: Complex, target_dim: int, seed: Optional[int], ordered: bool):
    rng = None if seed is None else random.Random(seed)
    return _greedy(C, target_dim, rng, ordered)


def collapse_to_dim(C: Complex, target_dim: int, strategy: str = "lex", seed: int = 0,
                    max_restarts: int = 0, *, ordered: bool = True,
                    workers: int = 1) -> SearchOutcome:
    """Greedily collapse ``C`` until no face of dimension above ``target_dim`` is left.

    ``strategy="lex"`` breaks ties by label and is deterministic.  With
    ``strategy="random"`` ties are broken by a generator seeded with
    ``seed + attempt`` and a dead end triggers a restart, at most
    ``max_restarts`` times.  With ``ordered=True`` (the default) the chosen
    pair always has the largest available coface dimension.  ``workers > 1``
    runs random restarts in a process pool; the lowest successful attempt
    index is reported, so results do not depend on scheduling.
    """
    if target_dim < 0:
        raise ValueError("target_dim must be >= 0")
    if strategy not in ("lex", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if C.top_dim <= target_dim:
        return SearchOutcome(Verdict.FOUND, Certificate([]), 0, 0)
    if not any(C.dim(p.coface) > target_dim for p in free_pairs(C)):
        return SearchOutcome(Verdict.NO_FREE_PAIRS, None, 0, 0)

    if strategy == "lex":
        pairs, ok = _greedy(C, target_dim, None, ordered)
        if ok:
            return SearchOutcome(Verdict.FOUND, Certificate(pairs), 0, len(pairs))
        return SearchOutcome(Verdict.NO_FREE_PAIRS, None, 0, len(pairs))

    attempts = range(max_restarts + 1)
    if workers > 1 and max_restarts > 0:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for start in range(0, len(attempts), workers):
                batch = attempts[start:start + workers]
                results = list(pool.map(_attempt, [C] * len(batch), [target_dim] * len(batch),
                                        [seed + r for r in batch], [ordered] * len(batch)))
                for r, (pairs, ok) in zip(batch, results):
                    if ok:
                        return SearchOutcome(Verdict.FOUND, Certificate(pairs), r, len(pairs))
    else:
        for r in attempts:
            pairs, ok = _attempt(C, target_dim, seed + r, ordered)
            if ok:
                return SearchOutcome(Verdict.FOUND, Certificate(pairs), r, len(pairs))
    return SearchOutcome(Verdict.BUDGET_EXHAUSTED, None, max_restarts, 0)


# -- replay --------------------------------------------------------------

def verify_certificate(C: Complex, cert: Certificate | Iterable[CollapsePair], *,
                       check_homology: bool = False) -> VerifyReport:
    """Replay ``cert`` on ``C`` checking that every step is an elementary collapse.

    With ``check_homology`` the GF(2) Betti numbers are recomputed every
    ``ceil(len/8)`` steps and must not change.
    """
    pairs = list(cert)
    cob = {f: set(r.coboundary) for f, r in C.faces.items()}
    removed: list[FaceId] = []
    stride = max(1, math.ceil(len(pairs) / 8))
    betti0 = None
    if check_homology:
        from .homology import gf2_betti
        betti0 = gf2_betti(C)

    def report(ok, step, reason):
        rest = C.without(removed) if removed else C
        return VerifyReport(ok, step, reason, rest, rest.f_vector(), rest.top_dim)

    for step, (face, top) in enumerate(pairs):
        for lab in (face, top):
            if lab not in cob:
                return report(False, step, f"face {lab} is absent")
        problem = _why_not_free(cob[face], cob[top], face, top)
        if problem is None and len(cob) == 2:
            problem = "collapse would leave an empty complex"
        if problem:
            return report(False, step, problem)
        for lab in (top, face):
            for b in C.boundary(lab):
                cob[b].discard(lab)
            del cob[lab]
            removed.append(lab)
        if betti0 is not None and ((step + 1) % stride == 0 or step + 1 == len(pairs)):
            if gf2_betti(C.without(removed)).trimmed() != betti0.trimmed():
                return report(False, step, "GF(2) Betti numbers changed")
    return report(True, None, "accepted")

"""Collapse sequences on products, and LC certification built on them.

Given collapses of the factors, the functions here write down explicit
collapses of products: a collapse ``A -> C_A`` lifts to ``A x B -> C_A x B``,
and punctured factors ``A - dA -> C_A``, ``B - dB -> C_B`` give a collapse of
the punctured product onto ``(A x C_B) u (C_A x B)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .collapse import Certificate, CollapsePair, collapse_to_dim, verify_certificate
from .complex import Complex, ComplexError, product, remove_facet
from .homology import BettiProfile, gf2_betti, is_pseudomanifold
from .labels import FaceId, Pair


class CertificationError(ValueError):
    """An input certificate or witness does not replay, or inputs disagree."""


@dataclass
class FactorWitness:
    complex: Complex
    facet: FaceId
    certificate: Certificate
    remainder_dim: int


class LCVerdict(Enum):
    LC = "LC"
    NOT_LC = "NOT_LC"
    UNDECIDED = "UNDECIDED"


@dataclass
class LCResult:
    verdict: LCVerdict
    facet_used: Optional[FaceId]
    certificate: Optional[Certificate] = None
    obstruction: str = ""
    remainder_dim: Optional[int] = None
    punctured_betti: Optional[BettiProfile] = None

    @property
    def is_lc(self) -> bool:
        return self.verdict is LCVerdict.LC


def _replay(C: Complex, cert: Certificate, what: str) -> Complex:
    rep = verify_certificate(C, cert)
    if not rep.accepted:
        raise CertificationError(
            f"certificate for {what} fails at step {rep.failing_step}: {rep.reason}")
    return rep.remainder


def _puncture(C: Complex, facet: FaceId, what: str) -> Complex:
    try:
        return remove_facet(C, facet)
    except ComplexError as exc:
        raise CertificationError(f"{what}: {exc}") from None


def transfer_collapse(certA: Certificate, A: Complex, B: Complex) -> Certificate:
    """Lift a collapse of ``A`` to ``A x B``.

    Each pair of ``certA`` becomes a block of pairs, one per face of ``B``,
    visiting the faces of ``B`` by weakly decreasing dimension (ties by
    label) so that every cofacet of the current product face is already gone.
    """
    _replay(A, certA, "factor A")
    layer = B.ordered_faces()
    return Certificate([CollapsePair(Pair(s, b), Pair(S, b)) for s, S in certA for b in layer])


def punctured_product_collapse(A: Complex, facet_A: FaceId, certA: Certificate,
                               B: Complex, facet_B: FaceId, certB: Certificate) -> Certificate:
    """Collapse ``(A x B) - (facet_A x facet_B)`` onto ``(A x C_B) u (C_A x B)``.

    The first phase collapses the ``facet_A`` layer using ``certB``.  Each
    later phase takes one pair of ``certA`` and lifts it across the faces of
    ``B`` that are not in ``C_B``.  Length is ``V + U * W``.
    """
    _replay(_puncture(A, facet_A, "factor A"), certA, "factor A")
    CB = _replay(_puncture(B, facet_B, "factor B"), certB, "factor B")
    outside = [b for b in B.ordered_faces() if b not in CB]
    pairs = [CollapsePair(Pair(facet_A, g), Pair(facet_A, G)) for g, G in certB]
    pairs += [CollapsePair(Pair(s, b), Pair(S, b)) for s, S in certA for b in outside]
    return Certificate(pairs)


def check_witness(w: FactorWitness, what: str = "witness") -> Complex:
    """Replay a witness; returns its remainder complex."""
    rest = _replay(_puncture(w.complex, w.facet, what), w.certificate, what)
    if rest.top_dim != w.remainder_dim:
        raise CertificationError(
            f"{what}: remainder has dimension {rest.top_dim}, witness claims {w.remainder_dim}")
    return rest


def product_witness(factors: Sequence[FactorWitness]) -> FactorWitness:
    """Fold :func:`punctured_product_collapse` over the factors, left to right."""
    if not factors:
        raise CertificationError("need at least one factor")
    for i, w in enumerate(factors):
        check_witness(w, f"factor {i}")
    acc = factors[0]
    for w in factors[1:]:
        cert = punctured_product_collapse(acc.complex, acc.facet, acc.certificate,
                                          w.complex, w.facet, w.certificate)
        rdim = max(acc.complex.top_dim + w.remainder_dim, acc.remainder_dim + w.complex.top_dim)
        acc = FactorWitness(product(acc.complex, w.complex), Pair(acc.facet, w.facet), cert, rdim)
    return acc


def iterated_punctured_product(factors: Sequence[FactorWitness]) -> Certificate:
    return product_witness(factors).certificate


def certify_factor(A: Complex, facet: Optional[FaceId] = None, target_dim: Optional[int] = None,
                   strategy: str = "lex", seed: int = 0, max_restarts: int = 0,
                   workers: int = 1) -> FactorWitness:
    """Search a collapse of ``A`` minus a facet down to ``target_dim`` (default ``dim A - 2``)."""
    if facet is None:
        facet = A.facets()[0]
    if target_dim is None:
        target_dim = max(A.top_dim - 2, 0)
    punctured = _puncture(A, facet, "factor")
    out = collapse_to_dim(punctured, target_dim, strategy, seed, max_restarts, workers=workers)
    if not out.found:
        raise CertificationError(f"no collapse to dimension {target_dim} found ({out.verdict.value})")
    rest = _replay(punctured, out.certificate, "factor")
    return FactorWitness(A, facet, out.certificate, rest.top_dim)


def _obstruction(punctured: Complex, d: int) -> tuple[BettiProfile, str]:
    betti = gf2_betti(punctured)
    high = [(k, b) for k, b in enumerate(betti) if k > d - 2 and b]
    if not high:
        return betti, ""
    k, b = high[0]
    return betti, f"GF(2) b{k} = {b} > 0 above target dimension {d - 2}"


def lc_certify(M: Complex, mode: str = "search", facet_policy: str = "first", *,
               witnesses: Optional[Sequence[FactorWitness]] = None, strategy: str = "lex",
               seed: int = 0, max_restarts: int = 0, workers: int = 1) -> LCResult:
    """Decide whether ``M`` minus a facet collapses onto a ``(d-2)``-complex.

    A nonzero GF(2) Betti number above dimension ``d-2`` in the punctured
    complex rules this out (NOT_LC).  Otherwise ``mode="search"`` runs the
    greedy collapse search and ``mode="constructive"`` assembles the
    certificate from factor witnesses whose product must equal ``M``.
    Search failure gives UNDECIDED, never NOT_LC.
    """
    pm = is_pseudomanifold(M)
    if not pm:
        raise CertificationError(f"not a pseudomanifold: {pm.reason} ({pm.offending})")
    d = M.top_dim
    target = d - 2
    if mode == "constructive":
        if not witnesses:
            raise CertificationError("constructive mode needs factor witnesses")
        acc = product_witness(witnesses)
        if acc.complex != M:
            raise CertificationError("product of the witness complexes does not match M")
        candidates = [(acc.facet, acc.certificate)]
    elif mode == "search":
        if facet_policy not in ("first", "all"):
            raise ValueError(f"unknown facet policy {facet_policy!r}")
        facets = M.facets()
        candidates = [(f, None) for f in (facets[:1] if facet_policy == "first" else facets)]
    else:
        raise ValueError(f"unknown mode {mode!r}")

    obstructions = []
    first_clear = None
    for facet, cert in candidates:
        punctured = remove_facet(M, facet)
        betti, why = _obstruction(punctured, d)
        if why:
            obstructions.append((facet, betti, why))
            continue
        if first_clear is None:
            first_clear = (facet, betti)
        if cert is None:
            if target < 0:
                continue
            out = collapse_to_dim(punctured, target, strategy, seed, max_restarts, workers=workers)
            if not out.found:
                continue
            cert = out.certificate
        rep = verify_certificate(punctured, cert)
        if rep.accepted and rep.remainder_dim <= target:
            return LCResult(LCVerdict.LC, facet, cert, remainder_dim=rep.remainder_dim,
                            punctured_betti=betti)
    if len(obstructions) == len(candidates):
        facet, betti, why = obstructions[0]
        return LCResult(LCVerdict.NOT_LC, facet, obstruction=why, punctured_betti=betti)
    facet, betti = first_clear
    return LCResult(LCVerdict.UNDECIDED, facet, punctured_betti=betti)

"""Text formats: ``.cplx`` complexes and ``.clps`` certificates."""

from __future__ import annotations

import hashlib
from pathlib import Path

from .collapse import Certificate, CollapsePair
from .complex import Complex, ComplexError
from .labels import LabelError, implied_boundary, label_dim, label_key, parse_label

CPLX_HEADER = "cplx 1"
CLPS_HEADER = "clps 1"


class FormatError(ValueError):
    """Malformed or invariant-violating input file."""


def dumps_complex(C: Complex) -> str:
    lines = [CPLX_HEADER]
    for f in C.ordered_faces():
        bd = ",".join(str(b) for b in sorted(C.boundary(f), key=label_key))
        lines.append(f"{f}\t{C.dim(f)}\t{bd}")
    return "\n".join(lines) + "\n"


def loads_complex(text: str) -> Complex:
    lines = text.splitlines()
    if not lines or lines[0].strip() != CPLX_HEADER:
        raise FormatError(f"missing '{CPLX_HEADER}' header")
    boundaries = {}
    seen: dict[str, object] = {}

    def parse(text):
        lab = seen.get(text)
        if lab is None:
            lab = seen[text] = parse_label(text)
        return lab

    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise FormatError(f"line {no}: expected 3 tab-separated fields")
        try:
            lab = parse(parts[0])
            dim = int(parts[1])
            bd = [parse(b) for b in parts[2].split(",")] if parts[2].strip() else []
        except (LabelError, ValueError) as exc:
            raise FormatError(f"line {no}: {exc}") from None
        if lab in boundaries:
            raise FormatError(f"line {no}: duplicate face {lab}")
        if dim != label_dim(lab):
            raise FormatError(f"line {no}: dimension {dim} does not match label {lab}")
        if len(set(bd)) != len(bd) or set(bd) != set(implied_boundary(lab)):
            raise FormatError(f"line {no}: boundary of {lab} does not match its label")
        boundaries[lab] = (dim, bd)
    try:
        C = Complex.from_boundaries(boundaries)
        C.check_diamond()
    except ComplexError as exc:
        raise FormatError(str(exc)) from None
    return C


def checksum(C: Complex) -> str:
    return hashlib.sha256(dumps_complex(C).encode("utf-8")).hexdigest()


def dumps_certificate(cert: Certificate) -> str:
    lines = [CLPS_HEADER]
    if cert.source_checksum:
        lines.append(f"source {cert.source_checksum}")
    lines.extend(f"{p.face}\t{p.coface}" for p in cert.pairs)
    return "\n".join(lines) + "\n"


def loads_certificate(text: str) -> Certificate:
    lines = text.splitlines()
    if not lines or lines[0].strip() != CLPS_HEADER:
        raise FormatError(f"missing '{CLPS_HEADER}' header")
    source = None
    pairs = []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if line.startswith("source "):
            if pairs or source is not None:
                raise FormatError(f"line {no}: 'source' must come right after the header")
            source = line.split(None, 1)[1].strip()
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise FormatError(f"line {no}: expected 2 tab-separated labels")
        try:
            pairs.append(CollapsePair(parse_label(parts[0]), parse_label(parts[1])))
        except LabelError as exc:
            raise FormatError(f"line {no}: {exc}") from None
    return Certificate(pairs, source)


def read_complex(path) -> Complex:
    return loads_complex(Path(path).read_text(encoding="utf-8"))


def write_complex(C: Complex, path) -> None:
    Path(path).write_text(dumps_complex(C), encoding="utf-8")


def read_certificate(path) -> Certificate:
    return loads_certificate(Path(path).read_text(encoding="utf-8"))


def write_certificate(cert: Certificate, path) -> None:
    Path(path).write_text(dumps_certificate(cert), encoding="utf-8")

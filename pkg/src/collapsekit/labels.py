"""Face labels.

A face is identified by a structural label: a sorted vertex tuple for
simplices, a token string over ``0``/``1``/``*`` for faces of the unit cube,
or an ordered pair of labels for faces of a product.  Labels are plain
named tuples so they hash and compare cheaply; use :func:`label_key` for a
total order across all three kinds.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Union

CUBE_TOKENS = "01*"


class LabelError(ValueError):
    """Raised for malformed label text or non-canonical label data."""


class Simplex(NamedTuple):
    vertices: tuple[int, ...]

    def __str__(self) -> str:
        return "s:" + ".".join(str(v) for v in self.vertices)


class Cube(NamedTuple):
    tokens: str

    def __str__(self) -> str:
        return "c:" + self.tokens


class Pair(NamedTuple):
    left: "FaceId"
    right: "FaceId"

    def __str__(self) -> str:
        return f"p:({self.left})({self.right})"


FaceId = Union[Simplex, Cube, Pair]


def simplex(vertices) -> Simplex:
    vs = tuple(sorted(int(v) for v in vertices))
    if not vs:
        raise LabelError("a simplex needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise LabelError(f"repeated vertex in {vs}")
    return Simplex(vs)


def cube(tokens: str) -> Cube:
    tokens = "".join(tokens)
    if not tokens or any(t not in CUBE_TOKENS for t in tokens):
        raise LabelError(f"bad cube tokens {tokens!r}")
    return Cube(tokens)


_CUBE_ORDER = {"0": 0, "1": 1, "*": 2}


@lru_cache(maxsize=None)
def label_key(label: FaceId) -> tuple:
    """Sort key giving the canonical ascending label order."""
    if isinstance(label, Pair):
        return (2, label_key(label.left), label_key(label.right))
    if isinstance(label, Cube):
        return (1, tuple(_CUBE_ORDER[t] for t in label.tokens))
    return (0, label.vertices)


def label_dim(label: FaceId) -> int:
    """Dimension implied by the label alone."""
    if isinstance(label, Pair):
        return label_dim(label.left) + label_dim(label.right)
    if isinstance(label, Cube):
        return label.tokens.count("*")
    return len(label.vertices) - 1


def parse_label(text: str) -> FaceId:
    """Parse the textual form written by ``str(label)``."""
    label, rest = _parse(text.strip(), 0)
    if rest != len(text.strip()):
        raise LabelError(f"trailing characters in label {text!r}")
    return label


def _parse(text: str, pos: int) -> tuple[FaceId, int]:
    kind = text[pos:pos + 2]
    pos += 2
    if kind == "p:":
        left, pos = _parse_group(text, pos)
        right, pos = _parse_group(text, pos)
        return Pair(left, right), pos
    end = pos
    while end < len(text) and text[end] not in "()":
        end += 1
    body = text[pos:end]
    if kind == "s:":
        try:
            vs = [int(v) for v in body.split(".")]
        except ValueError:
            raise LabelError(f"bad simplex label {body!r}") from None
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise LabelError(f"simplex vertices not strictly increasing: {body!r}")
        return simplex(vs), end
    if kind == "c:":
        return cube(body), end
    raise LabelError(f"unknown label kind {kind!r} in {text!r}")


def _parse_group(text: str, pos: int) -> tuple[FaceId, int]:
    if pos >= len(text) or text[pos] != "(":
        raise LabelError(f"expected '(' at offset {pos} in {text!r}")
    label, pos = _parse(text, pos + 1)
    if pos >= len(text) or text[pos] != ")":
        raise LabelError(f"expected ')' at offset {pos} in {text!r}")
    return label, pos + 1


def cube_boundary(label: Cube) -> list[Cube]:
    out = []
    for i, t in enumerate(label.tokens):
        if t == "*":
            out.append(Cube(label.tokens[:i] + "0" + label.tokens[i + 1:]))
            out.append(Cube(label.tokens[:i] + "1" + label.tokens[i + 1:]))
    return out


def simplex_boundary(label: Simplex) -> list[Simplex]:
    vs = label.vertices
    if len(vs) == 1:
        return []
    return [Simplex(vs[:i] + vs[i + 1:]) for i in range(len(vs))]


def implied_boundary(label: FaceId) -> list[FaceId]:
    """Codimension-one faces determined by the label itself."""
    if isinstance(label, Pair):
        return ([Pair(a, label.right) for a in implied_boundary(label.left)]
                + [Pair(label.left, b) for b in implied_boundary(label.right)])
    if isinstance(label, Cube):
        return cube_boundary(label)
    return simplex_boundary(label)

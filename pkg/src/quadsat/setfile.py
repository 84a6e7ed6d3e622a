"""Text format for saturating sets.

::

    satset v1
    q <q> p <p> h <h> modulus <c0,...,c_{h-1}>
    quadric b <b> c <c>
    n <n>
    x0 x1 x2 x3        (n lines, canonical coordinates)
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .field import FieldSpec, parse_header
from .geometry import ProjectiveSpace3
from .quadric import EllipticQuadric

MAGIC = "satset v1"


class SetFileError(ValueError):
    pass


@dataclass
class SetFile:
    field: FieldSpec
    b: int
    c: int
    points: list[int]

    def quadric(self, space: ProjectiveSpace3 | None = None) -> EllipticQuadric:
        space = space or ProjectiveSpace3(self.field)
        return EllipticQuadric(space, self.b, self.c)


def format_set(quadric: EllipticQuadric, points) -> str:
    space = quadric.space
    lines = [MAGIC, space.F.header(), quadric.header(), f"n {len(points)}"]
    for p in points:
        lines.append(" ".join(str(int(x)) for x in space.points[p]))
    return "\n".join(lines) + "\n"


def write_set(path, quadric: EllipticQuadric, points) -> None:
    Path(path).write_text(format_set(quadric, points))


def parse_set(text: str, space: ProjectiveSpace3 | None = None) -> SetFile:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4 or lines[0] != MAGIC:
        raise SetFileError("missing 'satset v1' header")
    F = parse_header(lines[1])
    tok = lines[2].split()
    if len(tok) != 5 or tok[0] != "quadric" or tok[1] != "b" or tok[3] != "c":
        raise SetFileError(f"malformed quadric line: {lines[2]!r}")
    b, c = int(tok[2]), int(tok[4])
    tok = lines[3].split()
    if len(tok) != 2 or tok[0] != "n":
        raise SetFileError(f"malformed size line: {lines[3]!r}")
    n = int(tok[1])
    body = lines[4:]
    if len(body) != n:
        raise SetFileError(f"expected {n} point lines, found {len(body)}")
    space = space if space is not None and space.F == F else ProjectiveSpace3(F)
    coords = np.array([[int(x) for x in ln.split()] for ln in body], dtype=np.int64).reshape(-1, 4)
    if coords.size and (coords.min() < 0 or coords.max() >= F.q):
        raise SetFileError("coordinate outside the field")
    if np.any(~coords.any(axis=1)):
        raise SetFileError("zero vector in point list")
    points = [int(x) for x in np.atleast_1d(space.index(coords))] if n else []
    return SetFile(F, b, c, points)


def read_set(path, space: ProjectiveSpace3 | None = None) -> SetFile:
    return parse_set(Path(path).read_text(), space)

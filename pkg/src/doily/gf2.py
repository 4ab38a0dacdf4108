"""Linear algebra over the two-element field.

Vectors are carried as integer bit masks with coordinate i in bit i, so
addition is a single XOR and every enumeration order is deterministic
(ascending mask).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class GF2Vector:
    """A length-``width`` coordinate vector over GF(2), stored as a mask."""

    mask: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"vector width must be at least 1, got {self.width}")
        if not 0 <= self.mask < (1 << self.width):
            raise ValueError(f"mask {self.mask} does not fit in {self.width} bits")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> GF2Vector:
        bits = tuple(bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"coordinates must be 0 or 1, got {bits!r}")
        return cls(sum(b << i for i, b in enumerate(bits)), len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.width))

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    def __add__(self, other: GF2Vector) -> GF2Vector:
        if self.width != other.width:
            raise ValueError(
                f"cannot add width-{self.width} and width-{other.width} vectors"
            )
        return GF2Vector(self.mask ^ other.mask, self.width)

    __xor__ = __add__

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise IndexError(i)
        return (self.mask >> i) & 1

    def __len__(self) -> int:
        return self.width

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def symplectic_form(u: GF2Vector, v: GF2Vector) -> int:
    """Alternating bilinear form on GF(2)^4 pairing coordinates (0,1) and (2,3).

    Returns u0*v1 + u1*v0 + u2*v3 + u3*v2 mod 2.
    """
    if u.width != 4 or v.width != 4:
        raise ValueError(
            f"the symplectic form takes width-4 vectors, got {u.width} and {v.width}"
        )
    # swapping adjacent coordinate pairs of v turns the form into a plain
    # overlap parity
    swapped = ((v.mask & 0b0101) << 1) | ((v.mask & 0b1010) >> 1)
    return (u.mask & swapped).bit_count() & 1


def quadratic_form_q42(v: GF2Vector) -> int:
    """Parabolic quadratic form x0 + x1*x2 + x3*x4 on GF(2)^5."""
    if v.width != 5:
        raise ValueError(f"the quadric form takes width-5 vectors, got {v.width}")
    m = v.mask
    return (m ^ ((m >> 1) & (m >> 2)) ^ ((m >> 3) & (m >> 4))) & 1


def projective_points(n: int) -> list[GF2Vector]:
    """All nonzero vectors of GF(2)^(n+1) in ascending mask order."""
    if n < 1:
        raise ValueError(f"projective dimension must be at least 1, got {n}")
    width = n + 1
    return [GF2Vector(m, width) for m in range(1, 1 << width)]


def span_closure(vectors: Iterable[GF2Vector]) -> frozenset[GF2Vector]:
    """All nonzero GF(2)-linear combinations of the given vectors."""
    vs = list(vectors)
    if not vs:
        raise ValueError("the span of the empty set is not defined here")
    width = vs[0].width
    if any(v.width != width for v in vs):
        raise ValueError("span generators must share a width")
    masks = {0}
    for v in vs:
        masks |= {m ^ v.mask for m in masks}
    masks.discard(0)
    return frozenset(GF2Vector(m, width) for m in masks)


class ProjectiveSpace:
    """PG(n, 2): the nonzero vectors of GF(2)^(n+1) with lines {u, v, u+v}."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        self.points = tuple(projective_points(dimension))
        lines = set()
        for u, v in itertools.combinations(self.points, 2):
            w = u + v
            lines.add(tuple(sorted((u, v, w), key=lambda p: p.mask)))
        self.lines = tuple(sorted(lines, key=lambda l: tuple(p.mask for p in l)))

    def __repr__(self) -> str:
        return f"ProjectiveSpace(PG({self.dimension},2): {len(self.points)} points, {len(self.lines)} lines)"

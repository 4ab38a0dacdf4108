"""The Veldkamp space of the order-two quadrangle.

Its points are the geometric hyperplanes and its lines the triples that
pairwise intersect in the same core.  Lines are classified by the shape of
that core, and the space is coordinatized exactly by the nonzero dual
functionals of GF(2)^5 through the quadric model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .geometry import Hyperplane, PointLineGeometry, points_of

LINE_TYPES = (
    "single-point",
    "collinear-triple",
    "unicentric-triad",
    "tricentric-triad",
    "pentad",
)


class ClassificationError(RuntimeError):
    """A core-set matching no known type; signals an upstream bug."""


class IsomorphismError(RuntimeError):
    """The functional coordinatization failed to certify."""


@dataclass(frozen=True)
class VeldkampLine:
    """Unordered hyperplane triple with pairwise-equal intersections."""

    members: tuple[int, int, int]  # ascending indices into the hyperplane list
    core: int  # mask of the geometry points common to all three
    line_type: str


def third_member_mask(g: PointLineGeometry, h1_mask: int, h2_mask: int) -> int:
    """Fast path: the third hyperplane on a Veldkamp line is the complement
    of the symmetric difference of the other two."""
    return g.full_mask ^ (h1_mask ^ h2_mask)


def veldkamp_line_through(
    g: PointLineGeometry,
    h1: Hyperplane,
    h2: Hyperplane,
    hyperplanes: Sequence[Hyperplane] | None = None,
) -> VeldkampLine:
    """Definitional scan for the line through two distinct hyperplanes.

    Collects every hyperplane whose intersections with h1 and h2 both equal
    h1's intersection with h2 (plus h1 and h2 themselves).
    """
    if h1.mask == h2.mask:
        raise ValueError("a Veldkamp line needs two distinct hyperplanes")
    if not (g.is_hyperplane(h1.mask) and g.is_hyperplane(h2.mask)):
        raise ValueError("both inputs must be geometric hyperplanes of the geometry")
    if hyperplanes is None:
        hyperplanes = g.hyperplanes()
    core = h1.mask & h2.mask
    members = [
        i
        for i, h in enumerate(hyperplanes)
        if h.mask == h1.mask
        or h.mask == h2.mask
        or (h.mask & h1.mask == core and h.mask & h2.mask == core)
    ]
    if len(members) != 3:
        raise ClassificationError(
            f"expected 3 hyperplanes on the line of {h1.mask:#x} and {h2.mask:#x}, "
            f"found {len(members)}"
        )
    return VeldkampLine(tuple(members), core, classify_core(g, core))


def classify_core(g: PointLineGeometry, core: int) -> str:
    """Name a core-set: a single point, a line of the geometry, a triad (by
    center count) or a pentad (two lines through a common point)."""
    size = core.bit_count()
    if size == 1:
        return "single-point"
    if size == 3:
        if core in g.line_set:
            return "collinear-triple"
        a, b, c = points_of(core)
        if g.collinear(a, b) or g.collinear(a, c) or g.collinear(b, c):
            raise ClassificationError(
                f"3-point core {core:#x} is neither a line nor a triad"
            )
        centers = g.perp(core).bit_count()
        if centers == 1:
            return "unicentric-triad"
        if centers == 3:
            return "tricentric-triad"
        raise ClassificationError(f"triad core {core:#x} has {centers} centers")
    if size == 5:
        pentad_center(g, core)
        return "pentad"
    raise ClassificationError(f"core {core:#x} of size {size} matches no known type")


def pentad_center(g: PointLineGeometry, core: int) -> int:
    """The point through which the two lines of a 5-point core pass."""
    for c in points_of(core):
        inside = [m for m in g.lines if (m >> c) & 1 and m & core == m]
        if len(inside) == 2 and (inside[0] | inside[1]) == core:
            return c
    raise ClassificationError(
        f"5-point core {core:#x} is not two lines through a common point"
    )


@dataclass(frozen=True)
class VeldkampSpace:
    """Hyperplanes as points, pairwise-intersection triples as lines."""

    geometry: PointLineGeometry
    points: tuple[Hyperplane, ...]
    lines: tuple[VeldkampLine, ...]

    def type_counts(self) -> dict[str, int]:
        out = {t: 0 for t in LINE_TYPES}
        for line in self.lines:
            out[line.line_type] += 1
        return out

    def compositions(self) -> dict[str, tuple[int, int, int]]:
        """(perp, grid, ovoid) member counts per line type.

        Raises when any type mixes compositions; for the order-two quadrangle
        each type is homogeneous.
        """
        out: dict[str, tuple[int, int, int]] = {}
        for line in self.lines:
            kinds = [self.points[i].kind for i in line.members]
            comp = (kinds.count("perp"), kinds.count("grid"), kinds.count("ovoid"))
            prev = out.setdefault(line.line_type, comp)
            if prev != comp:
                raise ClassificationError(
                    f"line type {line.line_type} mixes compositions {prev} and {comp}"
                )
        return out


def build_veldkamp_space(g: PointLineGeometry) -> VeldkampSpace:
    """Enumerate all hyperplanes, then all distinct lines through their pairs."""
    hyps = g.hyperplanes()
    lines: dict[tuple[int, int, int], VeldkampLine] = {}
    for i, j in itertools.combinations(range(len(hyps)), 2):
        line = veldkamp_line_through(g, hyps[i], hyps[j], hyps)
        lines.setdefault(line.members, line)
    return VeldkampSpace(g, hyps, tuple(lines[k] for k in sorted(lines)))


def pg42_functional_map(space: VeldkampSpace) -> dict[int, int]:
    """Map each hyperplane to the unique nonzero functional on GF(2)^5 whose
    zero set on the quadric it is; certifies the bijection and that the three
    members of every line carry functionals summing to zero.

    Requires the quadric model (width-5 point labels).  Functionals are
    returned as masks: f applied to a point label is the parity of f & label.
    """
    g = space.geometry
    if g.labels is None or any(lab.width != 5 for lab in g.labels):
        raise ValueError("functional coordinates need width-5 point labels")
    label_masks = [lab.mask for lab in g.labels]
    zero_sets: dict[int, int] = {}
    for f in range(1, 32):
        zmask = 0
        for i, m in enumerate(label_masks):
            if (f & m).bit_count() % 2 == 0:
                zmask |= 1 << i
        if zmask in zero_sets:
            raise IsomorphismError(
                f"functionals {zero_sets[zmask]} and {f} share a zero set"
            )
        zero_sets[zmask] = f
    mapping: dict[int, int] = {}
    for idx, h in enumerate(space.points):
        f = zero_sets.get(h.mask)
        if f is None:
            raise IsomorphismError(f"hyperplane {h.mask:#x} matches no functional")
        mapping[idx] = f
    if len(space.points) != 31 or len(set(mapping.values())) != 31:
        raise IsomorphismError("hyperplane/functional correspondence is not a bijection")
    for line in space.lines:
        a, b, c = (mapping[i] for i in line.members)
        if a ^ b ^ c:
            raise IsomorphismError(
                f"functionals of line {line.members} do not sum to zero"
            )
    return mapping

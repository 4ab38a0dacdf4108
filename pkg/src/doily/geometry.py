"""Generic finite point-line incidence engine.

Points are integers 0..num_points-1 and point sets are integer bit masks, so
perps, triad censuses and the exhaustive hyperplane scan all run on machine
words.  Geometries are immutable after construction and every enumeration is
emitted in ascending mask order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence


class CapacityError(ValueError):
    """Input too large for an exhaustive desk-scale scan."""


def mask_of(points: Iterable[int]) -> int:
    """Bit mask of a collection of point indices."""
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask: int) -> tuple[int, ...]:
    """Ascending point indices of a bit mask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


_TRIAD_KINDS = {0: "acentric", 1: "unicentric", 2: "bicentric", 3: "tricentric"}


@dataclass(frozen=True)
class GQReport:
    """Outcome of a generalized-quadrangle axiom check.

    ``order`` is the unique (s, t) when every axiom holds; otherwise it is
    None and ``axiom``/``witness`` name the first violation found.
    """

    order: tuple[int, int] | None
    axiom: str | None = None
    witness: tuple | None = None

    @property
    def is_gq(self) -> bool:
        return self.order is not None


@dataclass(frozen=True)
class TriadReport:
    """A pairwise non-collinear point triple and its common centers."""

    points: tuple[int, int, int]
    centers: int
    kind: str


@dataclass(frozen=True)
class Hyperplane:
    """A geometric hyperplane: met by every line in one or all of its points."""

    mask: int
    kind: str  # "perp" | "grid" | "ovoid" | "other"
    center: int | None = None

    @property
    def points(self) -> tuple[int, ...]:
        return points_of(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()


class PointLineGeometry:
    """Immutable incidence structure with lines stored as point-index masks.

    Construction validates that every line has at least two points, that no
    line repeats, and that two distinct points share at most one line.
    """

    def __init__(
        self,
        num_points: int,
        lines: Iterable[int | Iterable[int]],
        labels: Sequence | None = None,
    ):
        if num_points < 1:
            raise ValueError(f"a geometry needs at least one point, got {num_points}")
        full = (1 << num_points) - 1
        masks = []
        for line in lines:
            m = line if isinstance(line, int) else mask_of(line)
            if m & ~full:
                raise ValueError(f"line {m:#x} has points outside 0..{num_points - 1}")
            if m.bit_count() < 2:
                raise ValueError(f"line {m:#x} has fewer than two points")
            masks.append(m)
        masks.sort()
        for a, b in itertools.pairwise(masks):
            if a == b:
                raise ValueError(f"duplicate line {a:#x}")

        self.num_points = num_points
        self.full_mask = full
        self.lines: tuple[int, ...] = tuple(masks)
        self.line_set = frozenset(masks)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != num_points:
                raise ValueError("labels must cover every point exactly once")
        self.labels = labels

        perp = [1 << i for i in range(num_points)]
        through: list[list[int]] = [[] for _ in range(num_points)]
        pair_seen: dict[tuple[int, int], int] = {}
        for j, m in enumerate(self.lines):
            pts = points_of(m)
            for p in pts:
                perp[p] |= m
                through[p].append(j)
            for a, b in itertools.combinations(pts, 2):
                if (a, b) in pair_seen:
                    raise ValueError(f"points {a} and {b} lie on two distinct lines")
                pair_seen[(a, b)] = j
        self._perp = tuple(perp)
        self._through = tuple(tuple(t) for t in through)
        self._hyperplanes: tuple[Hyperplane, ...] | None = None
        self._gq_report: GQReport | None = None

    def __repr__(self) -> str:
        return f"PointLineGeometry({self.num_points} points, {len(self.lines)} lines)"

    # -- incidence basics ---------------------------------------------------

    def lines_through(self, point: int) -> tuple[int, ...]:
        self._check_point(point)
        return self._through[point]

    def collinear(self, i: int, j: int) -> bool:
        """True when i and j share a line; every point is collinear with itself."""
        self._check_point(i)
        self._check_point(j)
        return bool((self._perp[i] >> j) & 1)

    def point_perp(self, point: int) -> int:
        """Mask of every point collinear with the given one, itself included."""
        self._check_point(point)
        return self._perp[point]

    def perp(self, mask: int) -> int:
        """Intersection of the collinearity neighborhoods of a point set."""
        if mask == 0:
            # the perp of nothing would silently be the whole point set
            raise ValueError("perp of the empty set is not defined")
        if mask & ~self.full_mask:
            raise ValueError(f"point set {mask:#x} lies outside the geometry")
        out = self.full_mask
        for p in points_of(mask):
            out &= self._perp[p]
        return out

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self.num_points:
            raise ValueError(f"point index {point} outside 0..{self.num_points - 1}")

    # -- quadrangle axioms ---------------------------------------------------

    def verify_gq(self) -> GQReport:
        """Check the generalized-quadrangle axioms and derive the order (s, t).

        Checks run in the order: constant line size, unique transversal for
        every non-incident point-line pair, constant point degree, then the
        (s+1)(st+1) point and (t+1)(st+1) line counts.
        """
        if self._gq_report is None:
            self._gq_report = self._verify_gq()
        return self._gq_report

    def _verify_gq(self) -> GQReport:
        if not self.lines:
            return GQReport(None, "line-size", None)
        s = self.lines[0].bit_count() - 1
        for j, m in enumerate(self.lines):
            if m.bit_count() != s + 1:
                return GQReport(None, "line-size", (j,))
        for x in range(self.num_points):
            px = self._perp[x]
            for j, m in enumerate(self.lines):
                if (m >> x) & 1:
                    continue
                if (px & m).bit_count() != 1:
                    return GQReport(None, "unique-transversal", (x, j))
        t = len(self._through[0]) - 1
        for i in range(self.num_points):
            if len(self._through[i]) != t + 1:
                return GQReport(None, "point-degree", (i,))
        if t < 1:
            return GQReport(None, "point-degree", (0,))
        if self.num_points != (s + 1) * (s * t + 1):
            return GQReport(None, "point-count", (self.num_points,))
        if len(self.lines) != (t + 1) * (s * t + 1):
            return GQReport(None, "line-count", (len(self.lines),))
        return GQReport((s, t))

    # -- triads ---------------------------------------------------------------

    def triads(self) -> tuple[TriadReport, ...]:
        """Every pairwise non-collinear triple, classified by center count."""
        out = []
        perp = self._perp
        for a, b, c in itertools.combinations(range(self.num_points), 3):
            if (perp[a] >> b) & 1 or (perp[a] >> c) & 1 or (perp[b] >> c) & 1:
                continue
            centers = perp[a] & perp[b] & perp[c]
            kind = _TRIAD_KINDS.get(centers.bit_count(), "multicentric")
            out.append(TriadReport((a, b, c), centers, kind))
        return tuple(out)

    # -- geometric hyperplanes -------------------------------------------------

    def is_hyperplane(self, mask: int) -> bool:
        """True when mask is a proper point subset met by every line in 1 or all points."""
        if mask & ~self.full_mask or mask == self.full_mask:
            return False
        for m in self.lines:
            inter = mask & m
            if inter != m and inter.bit_count() != 1:
                return False
        return True

    def hyperplanes(self) -> tuple[Hyperplane, ...]:
        """All geometric hyperplanes in ascending mask order, classified.

        A brute-force scan over all 2^num_points subsets; capped at 24 points.
        """
        if self._hyperplanes is None:
            self._hyperplanes = self._enumerate_hyperplanes()
        return self._hyperplanes

    def _enumerate_hyperplanes(self) -> tuple[Hyperplane, ...]:
        if self.num_points > 24:
            raise CapacityError(
                f"hyperplane scan over 2^{self.num_points} subsets exceeds the 2^24 cap"
            )
        lines = self.lines
        found = []
        for mask in range(self.full_mask):
            ok = True
            for m in lines:
                inter = mask & m
                if inter != m and inter.bit_count() != 1:
                    ok = False
                    break
            if ok:
                found.append(mask)

        perp_center: dict[int, int] = {}
        for i in range(self.num_points):
            perp_center.setdefault(self._perp[i], i)
        ambient = self.verify_gq()
        out = []
        for mask in found:
            center = perp_center.get(mask)
            if center is not None:
                out.append(Hyperplane(mask, "perp", center))
            elif all((mask & m).bit_count() == 1 for m in lines):
                out.append(Hyperplane(mask, "ovoid"))
            elif ambient.is_gq and self._is_subquadrangle(mask, ambient.order):
                out.append(Hyperplane(mask, "grid"))
            else:
                out.append(Hyperplane(mask, "other"))
        return tuple(out)

    def _is_subquadrangle(self, mask: int, order: tuple[int, int]) -> bool:
        # same s, strictly smaller t
        sub = self.induced(mask)
        rep = sub.verify_gq()
        return rep.is_gq and rep.order[0] == order[0] and rep.order[1] < order[1]

    # -- derived geometries ------------------------------------------------------

    def induced(self, mask: int) -> PointLineGeometry:
        """Substructure on a point subset, keeping only fully contained lines."""
        if mask & ~self.full_mask:
            raise ValueError(f"point set {mask:#x} lies outside the geometry")
        pts = points_of(mask)
        if not pts:
            raise ValueError("an induced substructure needs at least one point")
        remap = {p: k for k, p in enumerate(pts)}
        sub_lines = [
            mask_of(remap[p] for p in points_of(m))
            for m in self.lines
            if m & mask == m
        ]
        labels = tuple(self.labels[p] for p in pts) if self.labels is not None else None
        return PointLineGeometry(len(pts), sub_lines, labels)

    def dual(self) -> PointLineGeometry:
        """Interchange points and lines: dual point j lies on dual line i iff
        original point i lies on original line j."""
        duals = [mask_of(self._through[i]) for i in range(self.num_points)]
        return PointLineGeometry(len(self.lines), duals)

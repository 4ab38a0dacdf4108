"""The generalized quadrangle of order two, built two ways.

The symplectic model lives on the 15 nonzero vectors of GF(2)^4 with the
totally isotropic lines; the quadric model on the 15 zeros of the parabolic
form in PG(4,2).  Both builds certify their own axioms, and a deterministic
backtracking search supplies isomorphisms, the automorphism count, and the
Fano plane carried by each point's perp-set.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .gf2 import GF2Vector, ProjectiveSpace, quadratic_form_q42, symplectic_form
from .geometry import CapacityError, PointLineGeometry, mask_of, points_of


class ConstructionError(RuntimeError):
    """A certified construction produced the wrong structure (internal bug)."""


def build_w2_symplectic() -> PointLineGeometry:
    """Points of PG(3,2) with the lines that are totally isotropic for the
    symplectic form; point i carries the width-4 label of mask i+1."""
    pts = [GF2Vector(m, 4) for m in range(1, 16)]
    lines = set()
    for u, v in itertools.combinations(pts, 2):
        if symplectic_form(u, v) == 0:
            lines.add(mask_of((u.mask - 1, v.mask - 1, (u.mask ^ v.mask) - 1)))
    g = PointLineGeometry(15, sorted(lines), labels=pts)
    _certify_order_two_quadrangle(g)
    return g


def build_q42() -> PointLineGeometry:
    """Zeros of the parabolic quadratic form in PG(4,2) with the fully
    contained projective lines; points carry width-5 labels."""
    pg = ProjectiveSpace(4)
    on_quadric = [p for p in pg.points if quadratic_form_q42(p) == 0]
    index = {p.mask: i for i, p in enumerate(on_quadric)}
    lines = []
    for u, v, w in pg.lines:
        if u.mask in index and v.mask in index and w.mask in index:
            lines.append(mask_of((index[u.mask], index[v.mask], index[w.mask])))
    g = PointLineGeometry(len(on_quadric), lines, labels=tuple(on_quadric))
    _certify_order_two_quadrangle(g)
    return g


def projective_geometry(n: int) -> PointLineGeometry:
    """PG(n,2) as a labeled point-line geometry."""
    pg = ProjectiveSpace(n)
    index = {p.mask: i for i, p in enumerate(pg.points)}
    lines = [mask_of(index[q.mask] for q in line) for line in pg.lines]
    return PointLineGeometry(len(pg.points), lines, labels=pg.points)


def _certify_order_two_quadrangle(g: PointLineGeometry) -> None:
    rep = g.verify_gq()
    if g.num_points != 15 or len(g.lines) != 15 or rep.order != (2, 2):
        raise ConstructionError(
            f"expected a 15-point, 15-line quadrangle of order (2,2); "
            f"got {g!r} with report {rep!r}"
        )


# -- isomorphism search ----------------------------------------------------

def _point_profile(g: PointLineGeometry, i: int) -> tuple[int, ...]:
    return tuple(sorted(g.lines[j].bit_count() for j in g.lines_through(i)))


def _line_preserving_maps(
    a: PointLineGeometry, b: PointLineGeometry
) -> Iterator[tuple[int, ...]]:
    """Yield every point bijection a -> b carrying lines onto lines, in
    lexicographic order of the image tuple.

    Points are placed in index order; candidate images are pruned by line
    profile, by pairwise collinearity against everything already placed, and
    by an exact line check the moment a line becomes fully assigned.
    """
    n = a.num_points
    if n != b.num_points or len(a.lines) != len(b.lines):
        return
    prof_a = [_point_profile(a, i) for i in range(n)]
    prof_b = [_point_profile(b, j) for j in range(n)]
    if sorted(prof_a) != sorted(prof_b):
        return
    candidates = [
        tuple(j for j in range(n) if prof_b[j] == prof_a[i]) for i in range(n)
    ]
    b_lines = b.line_set
    finishes: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for m in a.lines:
        finishes[m.bit_length() - 1].append(points_of(m))
    perp_a = [a.point_perp(i) for i in range(n)]
    perp_b = [b.point_perp(j) for j in range(n)]
    image = [0] * n
    used = [False] * n

    def place(i: int) -> Iterator[tuple[int, ...]]:
        pa = perp_a[i]
        for j in candidates[i]:
            if used[j]:
                continue
            pb = perp_b[j]
            ok = True
            for k in range(i):
                if ((pa >> k) & 1) != ((pb >> image[k]) & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[i] = j
            for pts in finishes[i]:
                m = 0
                for p in pts:
                    m |= 1 << image[p]
                if m not in b_lines:
                    break
            else:
                if i == n - 1:
                    yield tuple(image)
                else:
                    used[j] = True
                    yield from place(i + 1)
                    used[j] = False

    yield from place(0)


def find_isomorphism(
    a: PointLineGeometry, b: PointLineGeometry
) -> tuple[int, ...] | None:
    """Lexicographically first line-preserving point bijection, or None."""
    return next(_line_preserving_maps(a, b), None)


def automorphism_count(g: PointLineGeometry) -> int:
    """Number of line-preserving point permutations."""
    if g.num_points > 15:
        raise CapacityError(
            f"automorphism search is capped at 15 points, got {g.num_points}"
        )
    return sum(1 for _ in _line_preserving_maps(g, g))


# -- the Fano plane at a point ------------------------------------------------

def fano_plane_at(w: PointLineGeometry, x: int) -> PointLineGeometry:
    """Projective plane of order two carried by x's perp-set.

    Its points are the seven elements of the perp-set and its lines the
    distinct double perps of point pairs, computed with the incidence perp
    applied twice (not via linear spans); duplicate spans collapse.
    """
    pmask = w.point_perp(x)
    pts = points_of(pmask)
    spans = set()
    for u, v in itertools.combinations(pts, 2):
        dp = w.perp(w.perp(mask_of((u, v))))
        if dp & ~pmask:
            raise ConstructionError(
                f"double perp of ({u}, {v}) escaped the perp-set of {x}"
            )
        spans.add(dp)
    remap = {p: k for k, p in enumerate(pts)}
    lines = sorted(mask_of(remap[q] for q in points_of(m)) for m in spans)
    labels = tuple(w.labels[p] for p in pts) if w.labels is not None else None
    plane = PointLineGeometry(len(pts), lines, labels)
    _certify_fano(plane)
    return plane


def _certify_fano(g: PointLineGeometry) -> None:
    ok = g.num_points == 7 and len(g.lines) == 7
    ok = ok and all(m.bit_count() == 3 for m in g.lines)
    if ok:
        for u, v in itertools.combinations(range(7), 2):
            if sum(1 for m in g.lines if (m >> u) & 1 and (m >> v) & 1) != 1:
                ok = False
                break
    if not ok:
        raise ConstructionError(f"{g!r} is not a projective plane of order two")

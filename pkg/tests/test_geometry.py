import itertools

import pytest

from doily.geometry import (
    CapacityError,
    PointLineGeometry,
    mask_of,
    points_of,
)


def test_mask_points_roundtrip():
    for m in (0, 1, 0b1010, 0b11111, 1 << 20):
        assert mask_of(points_of(m)) == m
    assert points_of(0b1011) == (0, 1, 3)


class TestConstruction:
    def test_duplicate_line_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            PointLineGeometry(3, [(0, 1, 2), (2, 1, 0)])

    def test_pair_on_two_lines_rejected(self):
        with pytest.raises(ValueError, match="two distinct lines"):
            PointLineGeometry(4, [(0, 1, 2), (0, 1, 3)])

    def test_out_of_range_point(self):
        with pytest.raises(ValueError, match="outside"):
            PointLineGeometry(3, [(0, 1, 3)])

    def test_short_line_rejected(self):
        with pytest.raises(ValueError, match="fewer than two"):
            PointLineGeometry(3, [(0,)])

    def test_labels_must_cover_points(self):
        with pytest.raises(ValueError, match="labels"):
            PointLineGeometry(3, [(0, 1, 2)], labels=("a", "b"))

    def test_accepts_masks_and_sorts(self):
        g = PointLineGeometry(4, [0b1100, 0b0011])
        assert g.lines == (0b0011, 0b1100)


class TestGQVerification:
    def test_w2_order(self, w2_sym):
        assert w2_sym.verify_gq().order == (2, 2)

    def test_grid_order(self, grid_geometry):
        assert grid_geometry.verify_gq().order == (2, 1)

    def test_dual_grid_order(self, grid_geometry):
        assert grid_geometry.dual().verify_gq().order == (1, 2)

    def test_deleted_line_fails_unique_transversal(self, w2_sym):
        broken = PointLineGeometry(15, w2_sym.lines[:-1])
        report = broken.verify_gq()
        assert not report.is_gq
        assert report.axiom == "unique-transversal"
        x, line_index = report.witness
        # the witness really is a non-incident point-line pair with no transversal
        m = broken.lines[line_index]
        assert not (m >> x) & 1
        assert (broken.point_perp(x) & m).bit_count() != 1

    def test_mixed_line_sizes_fail(self):
        g = PointLineGeometry(4, [(0, 1, 2), (0, 3)])
        report = g.verify_gq()
        assert report.axiom == "line-size"

    def test_uneven_degrees_fail(self):
        g = PointLineGeometry(3, [(0, 1), (1, 2)])
        report = g.verify_gq()
        assert report.axiom == "point-degree"

    def test_single_line_is_not_a_gq(self, single_line_geometry):
        assert not single_line_geometry.verify_gq().is_gq

    def test_perp_size_formula(self, w2_sym, grid_geometry):
        for g in (w2_sym, grid_geometry):
            s, t = g.verify_gq().order
            for x in range(g.num_points):
                assert g.point_perp(x).bit_count() == 1 + s + s * t


class TestPerp:
    def test_point_perp_size(self, w2_sym):
        for x in range(15):
            assert w2_sym.point_perp(x).bit_count() == 7

    def test_collinear_pair_perp_is_their_line(self, w2_sym):
        # oracle: locate the common line in the line list
        for i, j in itertools.combinations(range(15), 2):
            if not w2_sym.collinear(i, j):
                continue
            common = [m for m in w2_sym.lines if (m >> i) & 1 and (m >> j) & 1]
            assert len(common) == 1
            assert w2_sym.perp(mask_of((i, j))) == common[0]

    def test_tricentric_triad_perp_is_complementary_triad(self, w2_sym):
        for t in w2_sym.triads():
            if t.kind != "tricentric":
                continue
            back = w2_sym.perp(t.centers)
            assert back == mask_of(t.points)

    def test_empty_perp_rejected(self, w2_sym):
        with pytest.raises(ValueError):
            w2_sym.perp(0)

    def test_out_of_range_perp(self, w2_sym):
        with pytest.raises(ValueError):
            w2_sym.perp(1 << 15)

    def test_collinear_includes_self(self, w2_sym):
        assert all(w2_sym.collinear(x, x) for x in range(15))


class TestTriads:
    def test_census(self, w2_sym):
        triads = w2_sym.triads()
        assert len(triads) == 80
        by_kind = {}
        for t in triads:
            by_kind[t.kind] = by_kind.get(t.kind, 0) + 1
        assert by_kind == {"unicentric": 60, "tricentric": 20}

    def test_lexicographic_order(self, w2_sym):
        pts = [t.points for t in w2_sym.triads()]
        assert pts == sorted(pts)

    def test_centers_are_collinear_with_all_members(self, w2_sym):
        for t in w2_sym.triads():
            for c in points_of(t.centers):
                assert all(w2_sym.collinear(c, p) for p in t.points)

    def test_unicentric_triads_lie_in_ovoids(self, w2_sym):
        ovoids = [h.mask for h in w2_sym.hyperplanes() if h.kind == "ovoid"]
        for t in w2_sym.triads():
            tmask = mask_of(t.points)
            inside = any(tmask & o == tmask for o in ovoids)
            assert inside == (t.kind == "unicentric")

    def test_four_unicentric_triads_per_center(self, w2_sym):
        for x in range(15):
            centered = [t for t in w2_sym.triads()
                        if t.kind == "unicentric" and t.centers == 1 << x]
            assert len(centered) == 4
            for t1, t2 in itertools.combinations(centered, 2):
                shared = mask_of(t1.points) & mask_of(t2.points)
                assert shared.bit_count() == 1
            union = 0
            for t in centered:
                union |= mask_of(t.points)
            # the triads fill the perp-set once the center itself is adjoined
            assert union | (1 << x) == w2_sym.point_perp(x)


class TestHyperplanes:
    def test_ovoid_is_hyperplane(self, w2_sym):
        ovoid = next(h for h in w2_sym.hyperplanes() if h.kind == "ovoid")
        assert w2_sym.is_hyperplane(ovoid.mask)

    def test_full_set_is_not(self, w2_sym):
        assert not w2_sym.is_hyperplane(w2_sym.full_mask)

    def test_single_line_is_not(self, w2_sym):
        for m in w2_sym.lines:
            assert not w2_sym.is_hyperplane(m)
            # oracle: exhibit a line disjoint from it
            assert any((m & other) == 0 for other in w2_sym.lines)

    def test_census(self, w2_sym):
        hyps = w2_sym.hyperplanes()
        assert len(hyps) == 31
        sizes = {"perp": set(), "grid": set(), "ovoid": set()}
        counts = {"perp": 0, "grid": 0, "ovoid": 0, "other": 0}
        for h in hyps:
            counts[h.kind] += 1
            if h.kind in sizes:
                sizes[h.kind].add(h.size)
        assert counts == {"perp": 15, "grid": 10, "ovoid": 6, "other": 0}
        assert sizes == {"perp": {7}, "grid": {9}, "ovoid": {5}}

    def test_matches_independent_subset_scan(self, w2_sym):
        # oracle: set-based scan over all 2^15 subsets
        lines = [set(points_of(m)) for m in w2_sym.lines]
        expected = set()
        for bits in range(1 << 15):
            subset = {i for i in range(15) if (bits >> i) & 1}
            if len(subset) == 15:
                continue
            if all(len(subset & l) in (1, len(l)) for l in lines):
                expected.add(bits)
        assert {h.mask for h in w2_sym.hyperplanes()} == expected

    def test_sorted_by_mask(self, w2_sym):
        masks = [h.mask for h in w2_sym.hyperplanes()]
        assert masks == sorted(masks)

    def test_perp_kind_matches_point_perp(self, w2_sym):
        perps = {h.mask: h.center for h in w2_sym.hyperplanes() if h.kind == "perp"}
        assert perps == {w2_sym.point_perp(x): x for x in range(15)}

    def test_grid_kind_verifies_as_subquadrangle(self, w2_sym):
        for h in w2_sym.hyperplanes():
            if h.kind == "grid":
                assert w2_sym.induced(h.mask).verify_gq().order == (2, 1)

    def test_single_line_geometry_hyperplanes(self, single_line_geometry):
        hyps = single_line_geometry.hyperplanes()
        assert [h.mask for h in hyps] == [0b001, 0b010, 0b100]

    def test_capacity_error(self):
        chain = PointLineGeometry(25, [(i, i + 1) for i in range(24)])
        with pytest.raises(CapacityError):
            chain.hyperplanes()


class TestGridComplements:
    def test_complement_is_pair_of_mutually_perp_tricentric_triads(self, w2_sym):
        tric = {mask_of(t.points) for t in w2_sym.triads() if t.kind == "tricentric"}
        for h in w2_sym.hyperplanes():
            if h.kind != "grid":
                continue
            comp = w2_sym.full_mask ^ h.mask
            assert comp.bit_count() == 6
            splits = []
            for triple in itertools.combinations(points_of(comp), 3):
                t1 = mask_of(triple)
                t2 = comp ^ t1
                if t1 in tric and t2 in tric and w2_sym.perp(t1) == t2:
                    assert w2_sym.perp(t2) == t1
                    splits.append((t1, t2))
            assert splits

    def test_complement_induces_complete_bipartite_collinearity(self, w2_sym):
        tric = {mask_of(t.points) for t in w2_sym.triads() if t.kind == "tricentric"}
        for h in w2_sym.hyperplanes():
            if h.kind != "grid":
                continue
            comp = w2_sym.full_mask ^ h.mask
            t1 = next(
                mask_of(tr) for tr in itertools.combinations(points_of(comp), 3)
                if mask_of(tr) in tric and (comp ^ mask_of(tr)) in tric
            )
            t2 = comp ^ t1
            for i in points_of(t1):
                for j in points_of(t2):
                    assert w2_sym.collinear(i, j)
            for side in (t1, t2):
                for i, j in itertools.combinations(points_of(side), 2):
                    assert not w2_sym.collinear(i, j)


class TestDual:
    def test_w2_is_self_dual(self, w2_sym):
        from doily.w2 import find_isomorphism

        assert find_isomorphism(w2_sym, w2_sym.dual()) is not None

    def test_double_dual_isomorphic(self, w2_sym, grid_geometry):
        from doily.w2 import find_isomorphism

        for g in (w2_sym, grid_geometry):
            assert find_isomorphism(g, g.dual().dual()) is not None

    def test_dual_shape(self, grid_geometry):
        d = grid_geometry.dual()
        assert d.num_points == 6
        assert len(d.lines) == 9

import json

import numpy as np
import pytest

from hierseg import (
    GridImage,
    area_filter,
    build_alpha_tree,
    build_pixel_graph,
    constrained_cc,
    cut_alpha,
    d_alpha,
    d_omega,
    export_dendrogram,
    import_dendrogram,
    omega_cc,
)

from .conftest import random_image
from .oracles import constrained_labels, flood_alpha_labels, minimax_matrix, omega_labels


def tree_of(image):
    return build_alpha_tree(build_pixel_graph(image))


class TestBuildAlphaTree:
    def test_three_pixel_row(self):
        t = tree_of(GridImage(3, 1, [0, 2, 3]))
        assert t.n_leaves == 3
        assert t.node_count == 5
        assert t.alpha.tolist() == [0, 0, 0, 1, 2]
        # the level-1 node holds pixels 1 and 2
        assert t.area.tolist() == [1, 1, 1, 2, 3]
        assert t.min_value[t.root] == 0 and t.max_value[t.root] == 3

    def test_constant_image_single_node(self):
        t = tree_of(GridImage(4, 4, [9] * 16))
        assert t.node_count == 1
        assert t.n_leaves == 1
        assert t.alpha.tolist() == [0]
        assert t.area.tolist() == [16]

    def test_ramp_grid_structure(self, ramp_image):
        t = tree_of(ramp_image)
        assert t.n_leaves == 49
        assert t.node_count == 50
        assert int(t.alpha[t.root]) == 1
        assert t.range_of(t.root) == 8

    def test_disconnected_rejected(self):
        from hierseg import EdgeWeightedGraph

        g = EdgeWeightedGraph(3, [(0, 1, 1)], vertex_weights=[1, 2, 3])
        with pytest.raises(ValueError):
            build_alpha_tree(g)

    def test_invariants_random(self):
        for seed in range(10):
            img = random_image(seed, 8, 8)
            t = tree_of(img)
            kids = t.children()
            for j in range(t.node_count):
                p = int(t.parent[j])
                if p != -1:
                    assert p > j
                    assert t.alpha[p] > t.alpha[j]
                    assert t.range_of(p) >= t.range_of(j)
                if kids[j]:
                    leaf_area = t.area[j] - sum(int(t.area[c]) for c in kids[j])
                    assert leaf_area == np.count_nonzero(t.leaf_of_pixel == j)
            assert int(t.area[t.root]) == img.pixel_count
            # leaves are the flat zones
            from hierseg import flat_zones

            assert t.n_leaves == flat_zones(img).component_count

    def test_cut_induces_alpha_partition_for_every_node_level(self):
        img = random_image(42, 8, 8)
        t = tree_of(img)
        g = build_pixel_graph(img)
        from hierseg import alpha_cc_partition

        for a in sorted(set(t.alpha.tolist())):
            assert cut_alpha(t, a) == alpha_cc_partition(g, a)


class TestCuts:
    def test_cut_zero_is_flat_zones(self, isolation_image):
        from hierseg import flat_zones

        t = tree_of(isolation_image)
        assert cut_alpha(t, 0) == flat_zones(isolation_image)

    def test_cut_above_root_single_component(self, isolation_image):
        t = tree_of(isolation_image)
        assert cut_alpha(t, int(t.alpha[t.root])).component_count == 1
        assert cut_alpha(t, 10_000).component_count == 1

    def test_cuts_match_flood_oracle(self, isolation_image):
        t = tree_of(isolation_image)
        f = isolation_image.as_array()
        for alpha in range(10):
            assert np.array_equal(cut_alpha(t, alpha).labels, flood_alpha_labels(f, alpha))

    def test_cut_nesting(self):
        img = random_image(7, 8, 8)
        t = tree_of(img)
        cuts = [cut_alpha(t, a) for a in range(0, 40, 3)]
        for fine, coarse in zip(cuts, cuts[1:]):
            assert fine.refines(coarse)


class TestConstrained:
    def test_three_pixel_row(self):
        t = tree_of(GridImage(3, 1, [0, 2, 3]))
        assert constrained_cc(t, 2, 1).labels.tolist() == [0, 1, 1]

    def test_trivial_when_unconstrained(self, isolation_image):
        t = tree_of(isolation_image)
        root_alpha = int(t.alpha[t.root])
        root_range = t.range_of(t.root)
        assert constrained_cc(t, root_alpha, root_range).component_count == 1

    def test_ramp_grid_two_outcomes_only(self, ramp_image):
        t = tree_of(ramp_image)
        singletons = list(range(49))
        for alpha in range(9):
            for omega in range(9):
                p = constrained_cc(t, alpha, omega)
                assert p.labels.tolist() == singletons or p.component_count == 1

    def test_refines_alpha_partition_and_range_bound(self):
        img = random_image(5, 8, 8)
        t = tree_of(img)
        g = build_pixel_graph(img)
        from hierseg import alpha_cc_partition

        flat = img.values
        for alpha, omega in [(0, 0), (3, 5), (10, 4), (50, 20), (300, 70)]:
            p = constrained_cc(t, alpha, omega)
            assert p.refines(alpha_cc_partition(g, alpha))
            for members in p.members().values():
                vals = flat[members]
                assert int(vals.max()) - int(vals.min()) <= omega

    def test_matches_oracle(self):
        for seed in range(20):
            img = random_image(seed, 5, 5, top=6)
            t = tree_of(img)
            f = img.as_array()
            for alpha in range(6):
                for omega in range(6):
                    got = constrained_cc(t, alpha, omega).labels
                    want = constrained_labels(f, alpha, omega)
                    assert np.array_equal(got, want), (seed, alpha, omega)

    def test_alpha_beyond_omega_equivalence(self, isolation_image, ramp_image):
        for img in (isolation_image, ramp_image):
            t = tree_of(img)
            top = int(t.alpha[t.root]) + t.range_of(t.root) + 1
            for omega in range(10):
                ref = constrained_cc(t, omega, omega)
                for alpha in range(omega, top):
                    assert constrained_cc(t, alpha, omega) == ref


class TestOmega:
    def test_omega_at_global_range(self, isolation_image):
        t = tree_of(isolation_image)
        assert omega_cc(t, t.range_of(t.root)).component_count == 1

    def test_omega_zero_is_flat_zones(self, isolation_image):
        from hierseg import flat_zones

        t = tree_of(isolation_image)
        assert omega_cc(t, 0) == flat_zones(isolation_image)

    def test_equals_constrained_at_root_alpha(self):
        for seed in range(100):
            img = random_image(seed, 8, 8)
            t = tree_of(img)
            root_alpha = int(t.alpha[t.root])
            for omega in range(0, t.range_of(t.root) + 1, 13):
                assert omega_cc(t, omega) == constrained_cc(t, root_alpha, omega)

    def test_matches_oracle(self):
        for seed in range(10):
            img = random_image(seed, 5, 5, top=6)
            t = tree_of(img)
            f = img.as_array()
            for omega in range(6):
                assert np.array_equal(omega_cc(t, omega).labels, omega_labels(f, omega))

    def test_nesting_over_omega(self):
        img = random_image(23, 8, 8)
        t = tree_of(img)
        parts = [omega_cc(t, w) for w in range(0, 256, 17)]
        for fine, coarse in zip(parts, parts[1:]):
            assert fine.refines(coarse)


class TestUltrametrics:
    def test_identity(self):
        t = tree_of(GridImage(3, 1, [0, 2, 3]))
        assert d_alpha(t, 1, 1) == 0
        assert d_omega(t, 2, 2) == 0

    def test_three_pixel_values(self):
        t = tree_of(GridImage(3, 1, [0, 2, 3]))
        assert d_alpha(t, 0, 2) == 2
        assert d_omega(t, 1, 2) == 1
        assert d_omega(t, 0, 1) == 3

    def test_out_of_range(self):
        t = tree_of(GridImage(3, 1, [0, 2, 3]))
        with pytest.raises(IndexError):
            d_alpha(t, 0, 3)
        with pytest.raises(IndexError):
            d_omega(t, -1, 0)

    def test_d_alpha_equals_minimax_oracle(self):
        for seed in range(8):
            img = random_image(seed, 4, 4, top=9)
            g = build_pixel_graph(img)
            t = build_alpha_tree(g)
            d = minimax_matrix(g.vertex_count, g.edges())
            for p in range(16):
                for q in range(16):
                    assert d_alpha(t, p, q) == int(d[p, q])

    def test_ultrametric_inequality_sampled(self):
        rng = np.random.default_rng(99)
        img = random_image(1, 8, 8)
        t = tree_of(img)
        n = img.pixel_count
        for p, q, r in rng.integers(0, n, (300, 3)).tolist():
            assert d_alpha(t, p, q) <= max(d_alpha(t, p, r), d_alpha(t, r, q))
            assert d_omega(t, p, q) <= max(d_omega(t, p, r), d_omega(t, r, q))


class TestAreaFilter:
    def test_identity_at_one(self, isolation_image):
        t = tree_of(isolation_image)
        assert area_filter(t, 1) == t

    def test_full_area_collapses_to_root_only(self, isolation_image):
        t = tree_of(isolation_image)
        filtered = area_filter(t, isolation_image.pixel_count)
        assert filtered.node_count == 1
        assert filtered.alpha.tolist() == [0]
        assert cut_alpha(filtered, 0).component_count == 1
        assert cut_alpha(filtered, 3).component_count == 1

    def test_beyond_pixel_count_single_node(self, isolation_image):
        t = tree_of(isolation_image)
        filtered = area_filter(t, isolation_image.pixel_count + 100)
        assert filtered.node_count == 1

    def test_three_pixel_row_min_area_two(self):
        t = tree_of(GridImage(3, 1, [0, 2, 3]))
        filtered = area_filter(t, 2)
        # {p1,p2} survives as a leaf; p0 stays a singleton until the root level
        assert cut_alpha(filtered, 0).labels.tolist() == [0, 1, 1]
        assert cut_alpha(filtered, 1).labels.tolist() == [0, 1, 1]
        assert cut_alpha(filtered, 2).component_count == 1

    def test_rejects_nonpositive(self, isolation_image):
        t = tree_of(isolation_image)
        with pytest.raises(ValueError):
            area_filter(t, 0)

    def test_no_internal_structure_below_min_area(self):
        for seed in range(10):
            img = random_image(seed, 8, 8, top=8)
            t = tree_of(img)
            for k in (2, 4, 9):
                filtered = area_filter(t, k)
                kids = filtered.children()
                for j in range(filtered.node_count):
                    if kids[j]:  # internal nodes all big enough
                        assert int(filtered.area[j]) >= k
                # cuts at positive levels: regions are either big enough or
                # original flat zones still waiting for their absorber
                zones = {frozenset(m.tolist()) for m in _zone_sets(img)}
                for lam in sorted(set(filtered.alpha.tolist()))[1:]:
                    for members in cut_alpha(filtered, lam).members().values():
                        if len(members) < k:
                            assert frozenset(members.tolist()) in zones


def _zone_sets(img):
    from hierseg import flat_zones

    return flat_zones(img).members().values()


class TestDendrogramIO:
    def test_single_node_document(self):
        t = tree_of(GridImage(2, 2, [5, 5, 5, 5]))
        doc = export_dendrogram(t)
        assert doc == {"id": 0, "alpha": 0, "area": 4, "min": 5, "max": 5, "children": []}

    def test_three_pixel_row_depth_two(self):
        t = tree_of(GridImage(3, 1, [0, 2, 3]))
        doc = export_dendrogram(t)
        assert doc["alpha"] == 2
        assert [c["alpha"] for c in doc["children"]] == [0, 1]
        inner = doc["children"][1]
        assert [c["id"] for c in inner["children"]] == [1, 2]

    def test_document_round_trip(self):
        for seed in range(20):
            img = random_image(seed, 6, 6)
            doc = export_dendrogram(tree_of(img))
            again = export_dendrogram(import_dendrogram(doc))
            assert again == doc
            # and byte-stable through json
            assert json.dumps(doc, sort_keys=True) == json.dumps(again, sort_keys=True)

    def test_import_validates_ids(self):
        with pytest.raises(ValueError):
            import_dendrogram({"id": 3, "alpha": 0, "area": 1, "min": 0, "max": 0, "children": []})

    def test_imported_tree_has_no_pixel_map(self):
        doc = export_dendrogram(tree_of(GridImage(3, 1, [0, 2, 3])))
        t = import_dendrogram(doc)
        with pytest.raises(ValueError):
            cut_alpha(t, 0)

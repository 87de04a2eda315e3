import numpy as np
import pytest

from hierseg import (
    EdgeWeightedGraph,
    GridImage,
    UnionFind,
    build_min_tree,
    build_pixel_graph,
    double_graph,
    flat_zones,
    line_graph,
)


class TestGridImage:
    def test_basic(self):
        img = GridImage(3, 2, [0, 1, 2, 3, 4, 5])
        assert img.pixel_count == 6
        assert img.at(2, 1) == 5
        assert img.as_array().shape == (2, 3)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            GridImage(0, 5, [])
        with pytest.raises(ValueError):
            GridImage(2, 2, [1, 2, 3])

    def test_rejects_negative_and_overdeep(self):
        with pytest.raises(ValueError):
            GridImage(2, 1, [-1, 0])
        with pytest.raises(ValueError):
            GridImage(2, 1, [0, 300], maxval=255)
        with pytest.raises(ValueError):
            GridImage(2, 1, [0, 300], maxval=1000)

    def test_bit_depth_inferred(self):
        assert GridImage(1, 1, [200]).maxval == 255
        assert GridImage(1, 1, [60000]).maxval == 65535

    def test_values_immutable(self):
        img = GridImage(2, 1, [1, 2])
        with pytest.raises(ValueError):
            img.values[0] = 9


class TestEdgeWeightedGraph:
    def test_validation(self):
        with pytest.raises(ValueError):
            EdgeWeightedGraph(2, [(0, 0, 1)])  # self-loop
        with pytest.raises(ValueError):
            EdgeWeightedGraph(2, [(0, 5, 1)])  # out of range
        with pytest.raises(ValueError):
            EdgeWeightedGraph(2, [(0, 1, 1), (1, 0, 2)])  # duplicate pair
        with pytest.raises(ValueError):
            EdgeWeightedGraph(2, [(0, 1, -1)])  # negative weight

    def test_vertex_weights_length(self):
        with pytest.raises(ValueError):
            EdgeWeightedGraph(3, [(0, 1, 1)], vertex_weights=[1, 2])


class TestBuildPixelGraph:
    def test_single_pixel(self):
        g = build_pixel_graph(GridImage(1, 1, [5]))
        assert g.vertex_count == 1
        assert g.edge_count == 0

    def test_three_pixel_row(self):
        g = build_pixel_graph(GridImage(3, 1, [0, 2, 3]))
        assert g.edges() == [(0, 1, 2), (1, 2, 1)]

    def test_edge_count_formula(self, isolation_image):
        g = build_pixel_graph(isolation_image)
        assert g.vertex_count == 49
        assert g.edge_count == 2 * 7 * 7 - 7 - 7 == 84

    @pytest.mark.parametrize("w,h", [(1, 5), (5, 1), (4, 4), (3, 7)])
    def test_edge_count_random_shapes(self, w, h):
        img = GridImage(w, h, np.zeros(w * h, dtype=np.int64))
        g = build_pixel_graph(img)
        assert g.edge_count == 2 * w * h - w - h

    def test_vertex_weights_copied(self):
        img = GridImage(2, 1, [7, 9])
        g = build_pixel_graph(img)
        assert g.vertex_weights.tolist() == [7, 9]

    def test_custom_dissimilarity(self):
        img = GridImage(3, 1, [0, 2, 3])
        g = build_pixel_graph(img, dissimilarity=lambda a, b: (a - b) ** 2)
        assert [w for _, _, w in g.edges()] == [4, 1]


class TestDoubleGraph:
    def test_single_vertex(self):
        g = EdgeWeightedGraph(1, [], vertex_weights=[3])
        d = double_graph(g)
        assert d.vertex_count == 2
        assert d.edges() == [(0, 1, 0)]
        assert d.vertex_weights.tolist() == [3, 3]

    def test_three_pixel_row(self):
        g = build_pixel_graph(GridImage(3, 1, [0, 2, 3]))
        d = double_graph(g)
        assert d.vertex_count == 6
        assert d.edge_count == g.edge_count + 3 == 5

    def test_constant_image_all_zero_weights(self):
        g = build_pixel_graph(GridImage(3, 3, [4] * 9))
        d = double_graph(g)
        assert d.ew.max() == 0

    def test_requires_vertex_weights(self):
        with pytest.raises(ValueError):
            double_graph(EdgeWeightedGraph(2, [(0, 1, 1)]))


class TestLineGraph:
    def test_two_edge_path(self):
        g = EdgeWeightedGraph(3, [(0, 1, 5), (1, 2, 7)])
        lg = line_graph(g)
        assert lg.vertex_count == 2
        assert lg.edge_count == 1
        assert lg.vertex_weights.tolist() == [5, 7]

    def test_star_is_clique(self):
        g = EdgeWeightedGraph(4, [(0, 1, 1), (0, 2, 2), (0, 3, 3)])
        lg = line_graph(g)
        assert lg.vertex_count == 3
        assert lg.edge_count == 3  # 3-clique

    def test_minima_match_flat_zones_of_doubled(self, ramp_image):
        g = build_pixel_graph(ramp_image)
        d = double_graph(g)
        lg = line_graph(d)
        tree = build_min_tree(lg)
        zones = flat_zones(ramp_image).component_count
        leaves = tree.leaves()
        assert len(leaves) == zones == 49
        # each minimum is exactly one zero-weight pendant edge {p, p'}
        members = tree.node_members()
        pendant_base = g.edge_count
        pixels = set()
        for leaf in leaves:
            vs = members[leaf]
            assert len(vs) == 1 and int(vs[0]) >= pendant_base
            pixels.add(int(vs[0]) - pendant_base)
        assert pixels == set(range(49))


class TestUnionFind:
    def test_idempotent_find(self):
        uf = UnionFind(4)
        uf.union(0, 1)
        assert uf.find(uf.find(1)) == uf.find(1)

    def test_union_links(self):
        uf = UnionFind(4)
        assert uf.union(2, 3)
        assert uf.find(2) == uf.find(3)
        assert not uf.union(3, 2)
        assert uf.components == 3

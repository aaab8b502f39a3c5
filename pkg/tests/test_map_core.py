import pytest

from bicellular.errors import Disconnected, MapError, NotInvolution
from bicellular.map_core import (
    PlantedBicellularMap, UnicellularMap, build_map, canonical_sigma, canonicalize, cycles, format_map, gamma_rank,
    is_fpf_involution, parse_map, plane_tree_from_dyck, validate, validate_raw,
)
from bicellular.oracle import enumerate_planted_bicellular


def test_single_edge_tree():
    m = build_map([1, 0], [0, 1])
    assert (m.n_edges, m.vertex_count, m.face_count, m.genus) == (1, 2, 1, 0)


def test_one_vertex_torus():
    m = build_map([2, 3, 0, 1], [1, 2, 3, 0])
    assert (m.vertex_count, m.face_count, m.genus) == (1, 1, 1)


def test_fixed_point_rejected():
    with pytest.raises(NotInvolution):
        build_map([0, 1], [1, 0])
    assert not is_fpf_involution([1, 0, 2])


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        build_map([1, 0, 3, 2], [0, 1, 2, 3])


def test_order_fixture(order_fixture):
    m = order_fixture
    assert m.genus == 0
    assert [c for c in cycles(m.sigma) if len(c) > 1] == [[0, 5, 2], [1, 6, 4]]
    assert m.display_labels() == ["1_R", "1", "2", "2_R", "3_R", "3", "4", "4_R"]
    assert m.connecting_edges() == [(1, 5), (2, 6)]
    assert m.trisections() == [5, 6]
    assert validate(m) == []


def test_minimal_map(minimal_map):
    m = minimal_map
    assert (m.n, m.genus, m.vertex_count) == (1, 0, 3)
    assert m.classify_steps().count("DOWN") == 5
    assert m.faces()[0] == (0, 1, 2)


def test_down_steps_and_trisections_over_oracle():
    for n in range(1, 5):
        for m in enumerate_planted_bicellular(n).instances:
            assert m.classify_steps().count("DOWN") == n + 4
            assert len(m.trisections()) == 2 * (m.genus + 1)


def test_euler_over_oracle():
    for m in enumerate_planted_bicellular(4).instances:
        b = m.base
        assert b.vertex_count + b.face_count == b.n_edges + 2 - 2 * b.genus
        assert b.face_count == 2


def test_validate_reports(order_fixture):
    s = list(order_fixture.sigma)
    a = list(order_fixture.alpha)
    assert "plant not at face boundary" in validate_raw(a, s, (1, 3, 4, 7))
    pair_alpha = [3, 2, 1, 0, 7, 6, 5, 4]
    pair_sigma = canonical_sigma(pair_alpha, 4)
    assert "not bicellular" in validate_raw(pair_alpha, pair_sigma, (0, 3, 4, 7))


def test_gamma_rank_and_canonicalize(order_fixture):
    m = order_fixture
    assert list(gamma_rank(m.alpha, m.sigma, m.plants)) == list(range(8))
    # relabel by a rotation of the half-edges and recover the same canonical map
    H = m.H
    perm = [(x + 3) % H for x in range(H)]
    inv = [0] * H
    for x, y in enumerate(perm):
        inv[y] = x
    alpha = [perm[m.alpha[inv[y]]] for y in range(H)]
    sigma = [perm[m.sigma[inv[y]]] for y in range(H)]
    c, _ = canonicalize(alpha, sigma, [perm[p] for p in m.plants])
    assert c == m


def test_text_round_trip(order_fixture):
    text = format_map(order_fixture)
    assert text == "alpha: 3 5 6 0 7 1 2 4\nsigma: 5 6 0 3 1 2 4 7\nplants: 0 3 4 7\n"
    assert parse_map(text) == order_fixture
    with pytest.raises(MapError):
        parse_map("alpha: 1 0\n")


def test_plane_trees():
    t = plane_tree_from_dyck("(()())")
    assert isinstance(t, UnicellularMap)
    assert t.genus == 0 and t.trisections() == []
    assert t.to_dyck() == "(()())"


def test_planted_is_hashable(order_fixture):
    assert len({order_fixture, PlantedBicellularMap(order_fixture.alpha, 4)}) == 1

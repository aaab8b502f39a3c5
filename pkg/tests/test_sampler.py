from collections import Counter

import pytest

from bicellular import sampler
from bicellular.counting import catalan, split_table
from bicellular.errors import EmptyFamily
from bicellular.map_core import validate
from bicellular.oracle import chi_square_uniformity, enumerate_diagrams, enumerate_planted_bicellular
from bicellular.rng import make_rng
from bicellular.sampler import (
    DIAGRAM, MATCHING, SamplerConfig, glue_walk, number_of_arcs, sample_batch, sample_dyck,
    sample_one, sample_plane_tree, sample_tree_pair, uniform_2backbone_diagram, uniform_bi_matching,
)


def test_dyck_words():
    rng = make_rng(0)
    for n in (0, 1, 5, 40):
        w = sample_dyck(n, rng)
        assert len(w) == 2 * n and w.sum() == 0 and (w.cumsum() >= 0).all()


def test_plane_tree_uniform():
    c = Counter(sample_plane_tree(3, make_rng(1, i)).to_dyck() for i in range(20000))
    assert len(c) == catalan(3)
    assert all(abs(v / 20000 - 0.2) < 0.02 for v in c.values())
    assert sample_plane_tree(0, make_rng(0)).to_dyck() == ""


def test_frozen_samples():
    got = [uniform_bi_matching(5, 1, make_rng(2024, i)).key() for i in range(3)]
    again = [uniform_bi_matching(5, 1, make_rng(2024, i)).key() for i in range(3)]
    assert got == again
    d = uniform_2backbone_diagram(30, 2, make_rng(5, 0))
    assert d == uniform_2backbone_diagram(30, 2, make_rng(5, 0))
    assert d.length == 30


def test_intermediate_objects_valid():
    rng = make_rng(8)
    for g, n in [(0, 3), (1, 6), (2, 9), (3, 12)]:
        m = split_table(g, n).locate(0)
        st = glue_walk(n, g, m, sample_tree_pair(m, n, rng), rng)
        assert st.current.genus == g and validate(st.current) == []
        assert len(st.path) <= g + 2


def test_matching_uniformity():
    support = [m.key() for m in enumerate_planted_bicellular(4, 1).instances]
    keys = [uniform_bi_matching(4, 1, make_rng(11, i)).key() for i in range(20000)]
    r = chi_square_uniformity(keys, support)
    assert r.passed and r.hits == 440


def test_biased_sampler_fails(monkeypatch):
    """Drawing the tree split uniformly instead of by weight is detected."""
    def uniform_split(n, g, rng):
        t = split_table(g, n)
        ok = [m for m in range(n + 1) if t.weight(m)]
        return ok[int(rng.integers(len(ok)))]
    monkeypatch.setattr(sampler, "choose_split", uniform_split)
    support = [m.key() for m in enumerate_planted_bicellular(4, 1).instances]
    keys = [uniform_bi_matching(4, 1, make_rng(11, i)).key() for i in range(20000)]
    assert not chi_square_uniformity(keys, support).passed


def test_diagram_uniformity():
    support = enumerate_diagrams(8, 1).instances
    ds = [uniform_2backbone_diagram(8, 1, make_rng(12, i)) for i in range(10000)]
    assert chi_square_uniformity(ds, support).passed


def test_number_of_arcs():
    assert {number_of_arcs(6, 0, make_rng(0, i)) for i in range(50)} <= {1, 2, 3}
    assert all(2 * number_of_arcs(7, 1, make_rng(0, i)) <= 7 for i in range(50))
    assert number_of_arcs(6, 1, make_rng(0)) == 3


def test_empty_family():
    with pytest.raises(EmptyFamily):
        uniform_bi_matching(2, 1, make_rng(0))
    with pytest.raises(EmptyFamily):
        uniform_2backbone_diagram(4, 1, make_rng(0))


def test_batch_deterministic_across_threads():
    cfg = SamplerConfig(3, 20, 1, DIAGRAM)
    one = sample_batch(cfg, 12, threads=1)
    two = sample_batch(cfg, 12, threads=2)
    assert one == two
    assert sample_batch(cfg, 4, start=8) == one[8:]
    assert sample_one(SamplerConfig(3, 5, 0, MATCHING), 0).genus == 0

from collections import Counter

from bicellular.duality import parse_diagram, poincare_dual
from bicellular.oracle import enumerate_diagrams
from bicellular.rng import make_rng
from bicellular.sampler import uniform_2backbone_diagram
from bicellular.stats import (
    ALPHA, BETA, EXTERIOR, GENUS0_SHAPES, HAIRPIN, KINDS, Histogram, classify_loops, extract_stacks,
    histogram_run, shape_class, shape_project, structure_records, write_histograms,
)


def test_minimal_loops():
    loops = classify_loops(parse_diagram("1 1 | 1-2"))
    assert len(loops) == 3
    assert all(r.type == EXTERIOR for r in loops)


def test_hairpin():
    loops = classify_loops(parse_diagram("1 4 | 1-5 2-4"))
    hp = [r for r in loops if r.type == HAIRPIN]
    assert len(hp) == 1
    assert (hp[0].degree, hp[0].length, hp[0].side) == (1, 4, ALPHA)


def test_stacks():
    assert [s.length for s in extract_stacks(parse_diagram("3 3 | 1-6 2-5 3-4"))] == [3]
    assert [s.length for s in extract_stacks(parse_diagram("1 1 | 1-2"))] == [1]
    st = extract_stacks(parse_diagram("4 4 | 1-8 2-7 3-4 5-6"))
    assert sorted(s.length for s in st) == [1, 1, 2]
    assert [s.side for s in st if s.length == 2] == [BETA]


def test_loop_identity_oracle():
    for length in range(2, 9):
        for d in enumerate_diagrams(length).instances:
            g = poincare_dual(d).genus
            _, _, ok = structure_records(d, g)
            assert ok


def test_shapes():
    assert len(GENUS0_SHAPES) == 8
    classes = Counter(shape_class(s) for s in GENUS0_SHAPES)
    assert classes == {"E": 4, "F": 4}
    for s in GENUS0_SHAPES:
        assert shape_project(s) == s
        assert s.genus == 0


def test_projection_preserves_genus():
    for length in range(2, 9):
        for d in enumerate_diagrams(length).instances:
            s = shape_project(d)
            assert poincare_dual(s).genus == poincare_dual(d).genus


def test_genus0_samples_project_to_catalog():
    catalog = set(GENUS0_SHAPES)
    for i in range(2000):
        s = shape_project(uniform_2backbone_diagram(30, 0, make_rng(6, i)))
        assert s in catalog and shape_class(s) in ("E", "F")


def test_histograms(tmp_path):
    hists, bad = histogram_run(60, 1, 300, 4)
    assert bad == 0
    assert set(hists) == set(KINDS)
    assert hists["ALL_STACKS"].total == 300 and hists["BETA_STACKS"].total == 300
    beta = sum(v * c for v, c in hists["BETA_STACKS"].bins.items())
    all_ = sum(v * c for v, c in hists["ALL_STACKS"].bins.items())
    assert beta <= all_ == hists["STACK_LEN"].total
    again, _ = histogram_run(60, 1, 300, 4, threads=2)
    assert all(again[k].bins == hists[k].bins for k in KINDS)
    paths = write_histograms(hists, tmp_path)
    text = open(paths[0]).read().splitlines()
    assert text[0].startswith("# meta: kind=LOOP_LEN") and text[1] == "value,count"
    side, _ = histogram_run(60, 1, 100, 4, side=ALPHA)
    assert side["LOOP_LEN"].meta["side"] == ALPHA


def test_histogram_merge():
    a = Histogram("X", Counter({1: 2}))
    a.merge(Histogram("X", Counter({1: 1, 3: 4})))
    assert a.bins == {1: 3, 3: 4} and a.total == 7

from fractions import Fraction

import pytest

from bicellular.counting import (
    START, SignatureWeightTable, SplitTable, bicellular_count, bicellular_count_paths,
    bicellular_count_rec, catalan, diagram_count, diagram_counts, glue_paths, min_edges,
    plane_tree_count, signatures, unicellular_count,
)
from bicellular.errors import EmptyFamily

B0 = [0, 1, 8, 48, 256, 1280, 6144]
B1 = [0, 0, 0, 21, 440, 5440, 51840]


def test_catalan():
    assert [catalan(n) for n in (0, 3, 5)] == [1, 5, 42]
    assert all(plane_tree_count(n) == catalan(n) for n in range(12))


def test_unicellular():
    assert unicellular_count(1, 2) == 1
    assert unicellular_count(1, 3) == 10
    assert [unicellular_count(0, n) for n in range(8)] == [catalan(n) for n in range(8)]
    assert [unicellular_count(2, n) for n in range(4, 7)] == [21, 483, 6468]


def test_bicellular_frozen():
    assert [bicellular_count_rec(0, n) for n in range(7)] == B0
    assert [bicellular_count_rec(1, n) for n in range(7)] == B1
    assert bicellular_count_rec(2, 5) == 1485
    assert bicellular_count_rec(3, 7) == 225225


def test_rec_equals_paths():
    for g in range(4):
        for n in range(13):
            assert bicellular_count_rec(g, n) == bicellular_count_paths(g, n)


def test_split_table_matches():
    for g in range(4):
        for n in range(20):
            assert SplitTable(g, n).count == bicellular_count_rec(g, n)
    assert bicellular_count(1, 40) == bicellular_count_rec(1, 40)


def test_split_probabilities_sum_to_one():
    t = SplitTable(1, 5)
    assert sum(t.probability(m) for m in range(6)) == 1
    # small blocks exercise the checkpoint scan
    t2 = SplitTable(1, 30, block=4)
    t3 = SplitTable(1, 30, block=31)
    for r in range(0, t2.total_weight, max(1, t2.total_weight // 997)):
        assert t2.locate(r) == t3.locate(r)


def test_min_edges():
    for g in range(4):
        n = min_edges(g)
        assert bicellular_count_rec(g, n) > 0
        assert bicellular_count_rec(g, n - 1) == 0


def test_signatures():
    assert [s.tuples for s in signatures(0)] == [((0, 0), (0, 1))]
    sig2 = signatures(2)
    assert len(sig2) == 8
    for s in sig2:
        assert s.tuples[0] == (0, 0) and s.target == (2, 1)
        js = [j for _, j in s.tuples]
        assert js == sorted(js)
    assert len(glue_paths(2)) == 13


def test_transitions_normalized():
    w = SignatureWeightTable(2, 8, 3)
    stack = [START]
    seen = set()
    while stack:
        st = stack.pop()
        if st in seen:
            continue
        seen.add(st)
        tr = w.transitions(st)
        if tr:
            assert sum(p for _, _, p in tr) == 1
            stack.extend(nxt for _, nxt, _ in tr)
    assert SignatureWeightTable(0, 4, 2).transitions(START)[0][2] == 1


def test_diagram_counts():
    assert [diagram_count(1, 10, n) for n in range(6)] == [0, 0, 0, 4410, 19800, 5440]
    dc = diagram_counts(1, 10)
    assert dc.total == 29650
    assert sum(dc.distribution()) == 1
    assert dc.probability(5) == Fraction(5440, 29650)
    assert diagram_count(0, 2, 1) == 1
    with pytest.raises(EmptyFamily):
        diagram_counts(1, 3)

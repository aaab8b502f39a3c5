from itertools import combinations

import pytest

from bicellular.errors import (
    DuplicateVertex, IllegalSignature, MarkPlacementMismatch, NotIntertwined, NotSameVertex,
)
from bicellular.map_core import PlantedBicellularMap, UnicellularPair, pair_of, plane_tree_from_dyck
from bicellular.oracle import enumerate_planted_bicellular
from bicellular.surgery import (
    BICELLULAR_DOWN, SPLIT_PAIR, DecompositionTrace, TraceStep, decompose, format_trace, glue,
    glue_at, intertwined_triples, parse_trace, placement, rebuild, resolve, slice, slice_trisection,
)


def maps(nmax=4):
    for n in range(1, nmax + 1):
        yield from enumerate_planted_bicellular(n).instances


def test_slice_outcomes():
    tags = {BICELLULAR_DOWN: 0, SPLIT_PAIR: 0}
    for m in maps(4):
        for trip in intertwined_triples(m):
            o = slice(m, *trip)
            tags[o.tag] += 1
            assert o.result.n == m.n
            if o.tag == BICELLULAR_DOWN:
                assert o.result.genus == m.genus - 1
                assert o.result.vertex_count == m.vertex_count + 2
            else:
                assert sum(o.result.genera) == m.genus
            assert glue_at(o.result, *o.new_vertices).result == m
    assert tags == {BICELLULAR_DOWN: 5554, SPLIT_PAIR: 4740}


def test_slice_rejects():
    m = enumerate_planted_bicellular(3, 1).instances[0]
    c = max(m.vertices(), key=len)
    with pytest.raises(NotSameVertex):
        slice(m, c[0], c[1], c[1])
    other = next(v for v in m.vertices() if v is not c)
    with pytest.raises(NotSameVertex):
        slice(m, c[0], c[1], other[0])
    a, b, x = sorted(c[:3])
    with pytest.raises(NotIntertwined):
        slice(m, a, b, x)


def test_glue_then_slice():
    count = 0
    for m in maps(4):
        for trip in combinations(m.eligible_vertices(), 3):
            r = glue(m, trip)
            assert r.result.genus == m.genus + 1
            assert r.tau in r.result.trisections()
            assert slice(r.result, *r.triple).result == m
            count += 1
    assert count == 1072


def test_glue_duplicate_marks(order_fixture):
    with pytest.raises(DuplicateVertex):
        glue(order_fixture, 0, 0, 1)


def test_connect_two_single_edge_trees():
    t = plane_tree_from_dyck("()")
    pair = pair_of(t, t)
    assert isinstance(pair, UnicellularPair)
    results = set()
    for marks in combinations(pair.eligible_vertices(), 3):
        if placement(pair, marks) == "DISTRIBUTED":
            r = glue(pair, marks).result
            assert isinstance(r, PlantedBicellularMap) and r.genus == 0
            results.add(r)
    # 2 + 2 eligible vertices give four distributed triples, each a different map
    assert len(results) == 4


def test_trisection_slices_terminate():
    for m in maps(4):
        for t in m.trisections():
            cur, tau, rounds = m, t, 0
            while True:
                s = slice_trisection(cur, tau)
                rounds += 1
                if s.kind == "I":
                    break
                cur, tau = s.outcome.result, s.residual
            assert rounds <= m.H
            low, marks, k = resolve(m, t)
            assert len(marks) == 2 * k + 1


def test_decompose_rebuild():
    pairs = 0
    for m in maps(4):
        for t in m.trisections():
            tr = decompose(m, t)
            assert tr.signature[0] == (m.genus, 1) and tr.signature[-1] == (0, 0)
            assert rebuild(tr) == (m, t)
            assert parse_trace(format_trace(tr)) == tr
            pairs += 1
    assert pairs == 2470


def test_genus0_trace(order_fixture):
    tr = decompose(order_fixture, 5)
    assert tr.signature == ((0, 1), (0, 0))
    assert [s.kind for s in tr.steps] == ["connect"]
    assert format_trace(tr) == ("signature: 0,1 0,0\ntrisection: 5\nstep connect: 0 3 5\n"
                                "tree: \ntree: ()()\n")


def test_rebuild_rejects():
    t = plane_tree_from_dyck("()()")
    # all marks in the second tree but the signature asks for a connection
    bad = DecompositionTrace(((0, 1), (0, 0)), (TraceStep("connect", (6, 7, 9)),),
                             (t, t), -1)
    with pytest.raises(MarkPlacementMismatch):
        rebuild(bad)
    with pytest.raises(IllegalSignature):
        rebuild(DecompositionTrace(((0, 1), (1, 0)), (TraceStep("connect", (0, 6, 7)),), (t, t), -1))

from collections import Counter
from fractions import Fraction

import pytest

from bicellular.rng import choose_weighted, make_rng, randbelow, sample_subset


def test_streams_are_reproducible():
    a = make_rng(7, 3).integers(0, 1 << 30, 5).tolist()
    b = make_rng(7, 3).integers(0, 1 << 30, 5).tolist()
    c = make_rng(7, 4).integers(0, 1 << 30, 5).tolist()
    assert a == b and a != c


def test_randbelow_big():
    rng = make_rng(1)
    bound = 3 ** 200
    xs = [randbelow(rng, bound) for _ in range(200)]
    assert all(0 <= x < bound for x in xs)
    assert max(xs) > bound // 2
    with pytest.raises(ValueError):
        randbelow(rng, 0)


def test_randbelow_small_uniform():
    rng = make_rng(2)
    c = Counter(randbelow(rng, 3) for _ in range(30000))
    assert all(abs(c[k] - 10000) < 400 for k in range(3))


def test_choose_weighted():
    rng = make_rng(3)
    w = [Fraction(1, 6), Fraction(0), Fraction(5, 6)]
    c = Counter(choose_weighted(rng, w) for _ in range(12000))
    assert c[1] == 0
    assert abs(c[0] - 2000) < 200


def test_sample_subset():
    rng = make_rng(4)
    pop = list(range(10, 20))
    s = sample_subset(rng, pop, 4)
    assert len(set(s)) == 4 and s == sorted(s) and set(s) <= set(pop)
    c = Counter(tuple(sample_subset(rng, range(5), 2)) for _ in range(20000))
    assert len(c) == 10
    assert all(abs(v - 2000) < 250 for v in c.values())

"""Seeded, splittable random streams and exact discrete sampling.

Every random choice that affects uniformity goes through ``randbelow``,
which is exact for arbitrarily large integer bounds.  Floating point never
enters the probability path.
"""
import numpy as np

def make_rng(seed, *key):
    """Generator for ``seed`` and an optional sub-stream key.

    ``make_rng(s, i)`` gives the i-th independent sub-stream of seed ``s``;
    the stream depends only on ``(s, i)`` so batches can be split freely.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def as_rng(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        return make_rng(0)
    return make_rng(rng)


def randbelow(rng, bound):
    """Uniform integer in [0, bound) for any positive Python int bound."""
    bound = int(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    if bound < (1 << 62):
        return int(rng.integers(0, bound))
    nbits = bound.bit_length()
    nbytes = -(-nbits // 8)
    extra = 8 * nbytes - nbits
    while True:
        r = int.from_bytes(rng.bytes(nbytes), "little") >> extra
        if r < bound:
            return r


def choose_weighted(rng, weights):
    """Index i with probability weights[i] / sum(weights).

    Weights are nonnegative ints or exact rationals; the draw is exact.
    """
    from math import lcm

    ws = list(weights)
    if not all(isinstance(w, int) for w in ws):
        den = 1
        for w in ws:
            den = lcm(den, int(w.denominator))
        ws = [int(w * den) for w in ws]
    total = sum(ws)
    if total <= 0:
        raise ValueError("all weights are zero")
    r = randbelow(rng, total)
    for i, w in enumerate(ws):
        if r < w:
            return i
        r -= w
    raise AssertionError("unreachable")


def sample_subset(rng, population, k):
    """Uniform k-subset of a sequence, returned in population order."""
    n = len(population)
    if k < 0 or k > n:
        raise ValueError("subset size out of range")
    idx = np.sort(rng.choice(n, k, replace=False)) if k else ()
    return [population[i] for i in idx.tolist()] if k else []

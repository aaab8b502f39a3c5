"""Uniform random generation of planted bicellular maps and two-backbone diagrams.

A sample is built bottom-up along a glue path:

1. draw the split m with probability proportional to Cat(m) Cat(n-m) F(m),
   where F(m) is the total glue-path weight (``counting.SplitTable``);
2. draw two uniform planted plane trees with m and n - m edges;
3. walk the glue path, each step drawn with its exact conditional
   probability, gluing a uniform vertex subset of the right kind.

Every (map, trisection) pair of the target family is produced by exactly one
(trees, path, marks) combination, and the step weights divide by the number
of trisections created, so the output is uniform.  All probabilities are
exact; floating point is never used to make a choice.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .counting import (
    A_STEP, B_STEP, BI_STEP, CONNECT, START, SignatureWeightTable, binom, diagram_counts,
    split_table,
)
from .duality import matching_of, with_unpaired
from .errors import EmptyFamily, InfeasibleTransition, NoSuccessor
from .map_core import PlaneTree, UnicellularPair
from .rng import as_rng, choose_weighted, make_rng, randbelow, sample_subset
from .surgery import DISTRIBUTED, FREE, LOCAL_A, LOCAL_B, VertexMarkSet, glue

MATCHING, DIAGRAM = "matching", "diagram"


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    size: int
    g: int
    mode: str = MATCHING


# -- plane trees ---------------------------------------------------------------

def sample_dyck(n, rng):
    """Uniform Dyck word of semilength n as an int8 array of +1/-1 steps.

    Cycle lemma: a uniform arrangement of n up-steps and n+1 down-steps,
    rotated to start just after its first minimum, is a Dyck word followed by
    one down-step, and each Dyck word arises from exactly 2n+1 arrangements.
    """
    w = np.full(2 * n + 1, -1, dtype=np.int8)
    if n:
        w[rng.choice(2 * n + 1, n, replace=False)] = 1
    s = np.cumsum(w, dtype=np.int64)
    k = int(np.argmin(s)) + 1
    return np.roll(w, -k)[:-1]


def _match(word):
    """Matching partner of each position of a Dyck word (vectorized)."""
    L = len(word)
    if L == 0:
        return np.zeros(0, dtype=np.int64)
    h = np.cumsum(word, dtype=np.int64)
    level = np.where(word > 0, h - 1, h)
    order = np.lexsort((np.arange(L), level))
    partner = np.empty(L, dtype=np.int64)
    opens = order[0::2]
    closes = order[1::2]
    partner[opens] = closes
    partner[closes] = opens
    return partner


def tree_alpha(word, offset=0):
    """Edge involution of the planted tree of a Dyck word, labels from offset."""
    L = len(word)
    a = np.empty(L + 2, dtype=np.int64)
    a[0] = L + 1
    a[L + 1] = 0
    a[1:L + 1] = _match(word) + 1
    return a + offset


def sample_plane_tree(n, rng=None):
    rng = as_rng(rng)
    return PlaneTree(tuple(tree_alpha(sample_dyck(n, rng)).tolist()))


def sample_tree_pair(m, n, rng):
    wa = sample_dyck(m, rng)
    wb = sample_dyck(n - m, rng)
    alpha = np.concatenate((tree_alpha(wa), tree_alpha(wb, 2 * m + 2)))
    return UnicellularPair(alpha.tolist(), 2 * m + 2)


# -- glue path -----------------------------------------------------------------

@dataclass
class GluePathState:
    current: object
    n: int
    m: int
    g: int
    path: tuple = (START,)
    steps: list = field(default_factory=list)

    @property
    def state(self):
        return self.path[-1]

    @property
    def g_A(self):
        return self.state[0]

    @property
    def g_B(self):
        return self.state[1]

    @property
    def j(self):
        return self.state[3]

    @property
    def g_total(self):
        a, b, G, j = self.state
        return G if j else a + b

    @property
    def history(self):
        return [(s[2], 1) if s[3] else (s[0] + s[1], 0) for s in self.path]

    @property
    def done(self):
        a, b, G, j = self.state
        return j == 1 and G == self.g


@lru_cache(maxsize=1 << 16)
def _weights(g, n, m):
    return SignatureWeightTable(g, n, m)


def choose_split(n, g, rng):
    t = split_table(g, n)
    if t.count == 0:
        raise EmptyFamily("no genus-%d maps with %d edges" % (g, n))
    return t.locate(randbelow(rng, t.total_weight))


def next_tuple(st, rng):
    """Draw the next glue step; returns (step, next state)."""
    trans = _weights(st.g, st.n, st.m).transitions(st.state)
    if not trans:
        raise NoSuccessor("state %s cannot reach the target" % (st.state,))
    k = choose_weighted(rng, [p for _, _, p in trans])
    step, nxt, _ = trans[k]
    return step, nxt


def select_vertices(st, step, rng):
    obj = st.current
    t = step.marks
    if step.kind == BI_STEP:
        pool = obj.eligible_vertices()
        where = FREE
    elif step.kind in (A_STEP, B_STEP):
        pool = obj.eligible_vertices(step.kind)
        where = LOCAL_A if step.kind == A_STEP else LOCAL_B
    else:
        pa = obj.eligible_vertices("A")
        pb = obj.eligible_vertices("B")
        ks = list(range(1, t))
        w = [binom(len(pa), k) * binom(len(pb), t - k) for k in ks]
        if not any(w):
            raise InfeasibleTransition("no distributed subset of size %d" % t)
        k = ks[choose_weighted(rng, w)]
        marks = sample_subset(rng, pa, k) + sample_subset(rng, pb, t - k)
        return VertexMarkSet(tuple(marks), DISTRIBUTED)
    if len(pool) < t:
        raise InfeasibleTransition("need %d vertices, have %d" % (t, len(pool)))
    return VertexMarkSet(tuple(sample_subset(rng, pool, t)), where)


def glue_walk(n, g, m, pair, rng):
    """Run a glue path from a pair of trees; returns the final GluePathState."""
    st = GluePathState(pair, n, m, g)
    while not st.done:
        step, nxt = next_tuple(st, rng)
        marks = select_vertices(st, step, rng)
        st.current = glue(st.current, marks.marks, check=False).result
        st.path = st.path + (nxt,)
        st.steps.append((step, marks))
    return st


def uniform_bi_matching(n, g, rng=None):
    """Uniform planted bicellular map of genus g with n non-plant edges."""
    rng = as_rng(rng)
    m = choose_split(n, g, rng)
    pair = sample_tree_pair(m, n, rng)
    return glue_walk(n, g, m, pair, rng).current


def number_of_arcs(length, g, rng=None):
    rng = as_rng(rng)
    dc = _diagram_counts(g, length)
    r = randbelow(rng, dc.total)
    for n, w in enumerate(dc.per_n):
        if r < w:
            return n
        r -= w
    raise AssertionError("unreachable")


@lru_cache(maxsize=256)
def _diagram_counts(g, length):
    return diagram_counts(g, length)


def uniform_2backbone_diagram(length, g, rng=None):
    """Uniform genus-g diagram on ``length`` vertices."""
    rng = as_rng(rng)
    n = number_of_arcs(length, g, rng)
    mat = matching_of(uniform_bi_matching(n, g, rng))
    free = sample_subset(rng, range(1, length + 1), length - 2 * n)
    return with_unpaired(mat, free, length)


# -- batches -------------------------------------------------------------------

def sample_one(config, index):
    rng = make_rng(config.seed, index)
    if config.mode == MATCHING:
        return uniform_bi_matching(config.size, config.g, rng)
    if config.mode == DIAGRAM:
        return uniform_2backbone_diagram(config.size, config.g, rng)
    raise ValueError("unknown mode %r" % config.mode)


def _chunk(args):
    config, lo, hi = args
    return [sample_one(config, i) for i in range(lo, hi)]


def sample_batch(config, count, threads=1, start=0):
    """Samples ``start .. start+count-1`` of a configuration, in index order.

    Sample i uses its own random stream, so the output does not depend on
    the number of worker processes.
    """
    if threads <= 1 or count < 2:
        return [sample_one(config, i) for i in range(start, start + count)]
    from concurrent.futures import ProcessPoolExecutor

    size = max(1, -(-count // (4 * threads)))
    jobs = [(config, lo, min(lo + size, start + count)) for lo in range(start, start + count, size)]
    out = []
    with ProcessPoolExecutor(threads) as ex:
        for part in ex.map(_chunk, jobs):
            out.extend(part)
    return out

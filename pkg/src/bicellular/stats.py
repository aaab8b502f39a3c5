"""Loop and stack statistics of two-backbone diagrams, and their genus-0 shapes.

Loops are the boundary components of the planted diagram, i.e. the vertices
of its dual map.  A loop meeting a rainbow is EXTERIOR; the others are typed
by degree (number of arc sides on the boundary): 1 hairpin, 2 interior,
3 or more multi-loop.

Loop length counts the diagram vertices met by the boundary (the two ends of
every backbone stretch it follows plus the unpaired vertices on it) and the
arc sides it crosses.  A hairpin closed by one arc over k unpaired vertices
has length k + 3.  Rainbow endpoints are not diagram vertices and are not
counted.
"""
import os
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .duality import Diagram2B, matching_part, plant, poincare_dual, unplant

HAIRPIN, INTERIOR, MULTI, EXTERIOR = "HAIRPIN", "INTERIOR", "MULTI", "EXTERIOR"
NONE, ALPHA_PK, BETA_PK = "NONE", "ALPHA_PK", "BETA_PK"
ALPHA, BETA = "ALPHA", "BETA"

LOOP_LEN, PK_LOOP_LEN, STACK_LEN, BETA_STACKS, ALL_STACKS = (
    "LOOP_LEN", "PK_LOOP_LEN", "STACK_LEN", "BETA_STACKS", "ALL_STACKS")
KINDS = (LOOP_LEN, PK_LOOP_LEN, STACK_LEN, BETA_STACKS, ALL_STACKS)


@dataclass(frozen=True)
class LoopRecord:
    loop_id: int
    degree: int
    type: str
    pk_class: str
    side: str
    length: int
    arcs: tuple = field(default=(), repr=False)


@dataclass(frozen=True)
class StackRecord:
    arcs: tuple
    side: str

    @property
    def length(self):
        return len(self.arcs)


def _plain(d):
    return unplant(d) if d.planted else d


def _crossing(arcs):
    arcs = sorted(arcs)
    for x in range(len(arcs)):
        i, j = arcs[x]
        for y in range(x + 1, len(arcs)):
            r, s = arcs[y]
            if r > j:
                break
            if i < r < j < s:
                return True
    return False


def classify_loops(d):
    """One LoopRecord per boundary component of the planted diagram."""
    d = _plain(d)
    mat, _ = matching_part(d)
    m = poincare_dual(mat)
    H, f1, len1 = m.H, m.f1, d.len1
    # position of each planted half-edge in diagram coordinates
    paired = sorted(d.partner())
    pos = np.empty(H, dtype=np.int64)
    pos[0] = 0
    pos[1:f1 - 1] = paired[:f1 - 2]
    pos[f1 - 1] = len1 + 1
    pos[f1] = len1
    pos[f1 + 1:H - 1] = paired[f1 - 2:]
    pos[H - 1] = d.length + 1
    is_plant = np.zeros(H, dtype=bool)
    is_plant[[0, f1 - 1, f1, H - 1]] = True
    # backbone stretch from h to its face successor; plant leaves close the faces
    h = np.arange(H)
    nxt = np.minimum(h + 1, H - 1)
    gap = pos[nxt] - pos - 1 + ~is_plant + ~is_plant[nxt]
    gap[[f1 - 1, H - 1]] = 0
    # a cycle of sigma meets exactly the edges of its own half-edges
    alpha = np.asarray(m.alpha)
    vm = np.asarray(m.vertex_minima())
    a = np.minimum(h, alpha)
    b = np.maximum(h, alpha)
    pa, pb = pos[a], pos[b]
    ext = is_plant[h] | is_plant[alpha]
    cross = ~ext & (pa <= len1) & (len1 < pb)
    deg = np.bincount(vm, minlength=H)
    length = np.bincount(vm, weights=gap, minlength=H).astype(np.int64) + deg
    exterior = np.bincount(vm, weights=ext, minlength=H) > 0
    beta = np.bincount(vm, weights=cross, minlength=H) > 0
    order = np.argsort(vm, kind="stable")
    arcs_of = list(zip(pa[order].tolist(), pb[order].tolist(), ext[order].tolist()))
    out = []
    k = 0
    for v in np.flatnonzero(deg).tolist():
        dv = int(deg[v])
        arcs = sorted({(i, j) for i, j, e in arcs_of[k:k + dv] if not e})
        k += dv
        side = BETA if beta[v] else ALPHA
        if exterior[v]:
            typ = EXTERIOR
        else:
            typ = HAIRPIN if dv == 1 else INTERIOR if dv == 2 else MULTI
        pk = NONE
        if len(arcs) > 1 and _crossing(arcs):
            pk = BETA_PK if side == BETA else ALPHA_PK
        out.append(LoopRecord(v, dv, typ, pk, side, int(length[v]), tuple(arcs)))
    return out


def extract_stacks(d):
    """Maximal stacks (i, j), (i+1, j-1), ... with both ends moving within a backbone."""
    d = _plain(d)
    arcs = set(d.arcs)

    def bb(x):
        return 1 if x <= d.len1 else 2

    def inner(a):
        i, j = a
        b = (i + 1, j - 1)
        if b in arcs and bb(i) == bb(i + 1) and bb(j) == bb(j - 1):
            return b
        return None

    has_outer = {inner(a) for a in arcs} - {None}
    out = []
    for a in sorted(arcs):
        if a in has_outer:
            continue
        chain = [a]
        b = inner(a)
        while b is not None:
            chain.append(b)
            b = inner(b)
        side = BETA if bb(a[0]) != bb(a[1]) else ALPHA
        out.append(StackRecord(tuple(chain), side))
    return out


def shape_project(d):
    """Remove unpaired vertices and 1-arcs, collapse stacks; repeat to a fixed point."""
    d = _plain(d)
    len1 = d.len1
    arcs = set(d.arcs)
    used = sorted(x for a in arcs for x in a)
    while True:
        idx = {x: k for k, x in enumerate(used, start=1)}
        len1 = sum(1 for x in used if x <= len1)
        arcs = {(idx[i], idx[j]) for i, j in arcs}
        changed = False

        def bb(x):
            return 1 if x <= len1 else 2

        for i, j in sorted(arcs):
            if j == i + 1 and bb(i) == bb(j):
                arcs.discard((i, j))
                changed = True
        for i, j in sorted(arcs):
            if (i + 1, j - 1) in arcs and bb(i) == bb(i + 1) and bb(j) == bb(j - 1):
                arcs.discard((i + 1, j - 1))
                changed = True
                break
        used = sorted(x for a in arcs for x in a)
        if not changed:
            idx = {x: k for k, x in enumerate(used, start=1)}
            len1 = sum(1 for x in used if x <= len1)
            arcs = tuple(sorted((idx[i], idx[j]) for i, j in arcs))
            return Diagram2B(len1, len(used) - len1, arcs)


# Genus-0 shapes; closed under this projection (exhaustive up to 7 arcs).
GENUS0_SHAPES = (
    Diagram2B(1, 1, ((1, 2),)),
    Diagram2B(1, 3, ((1, 3), (2, 4))),
    Diagram2B(2, 2, ((1, 3), (2, 4))),
    Diagram2B(3, 1, ((1, 3), (2, 4))),
    Diagram2B(2, 4, ((1, 4), (2, 5), (3, 6))),
    Diagram2B(3, 3, ((1, 3), (2, 5), (4, 6))),
    Diagram2B(4, 2, ((1, 4), (2, 5), (3, 6))),
    Diagram2B(4, 4, ((1, 4), (2, 6), (3, 7), (5, 8))),
)


def multiloop_count(d):
    """Number of boundary components of degree at least three."""
    return sum(1 for r in classify_loops(d) if r.degree >= 3)


def shape_class(shape):
    """'E' or 'F' for genus-0 shapes with one or two multi-loops, else None."""
    if shape.genus != 0:
        return None
    k = multiloop_count(shape)
    return {1: "E", 2: "F"}.get(k)


# -- histograms ------------------------------------------------------------------

@dataclass
class Histogram:
    kind: str
    bins: Counter = field(default_factory=Counter)
    meta: dict = field(default_factory=dict)

    @property
    def total(self):
        return sum(self.bins.values())

    def merge(self, other):
        self.bins.update(other.bins)
        return self

    def to_csv(self):
        meta = " ".join("%s=%s" % kv for kv in sorted(self.meta.items()))
        lines = ["# meta: kind=%s %s" % (self.kind, meta), "value,count"]
        lines += ["%d,%d" % (v, c) for v, c in sorted(self.bins.items())]
        return "\n".join(lines) + "\n"

    def write(self, directory):
        path = os.path.join(directory, "%s.csv" % self.kind.lower())
        with open(path, "w") as f:
            f.write(self.to_csv())
        return path


def structure_records(d, g=None):
    """Per-kind values contributed by one structure, and the loop identity check."""
    d = _plain(d)
    loops = classify_loops(d)
    stacks = extract_stacks(d)
    e = d.n_arcs + 2
    if g is None:
        g = poincare_dual(d).genus
    ok = len(loops) == e - 2 * g
    return loops, stacks, ok


def _accumulate(hists, loops, stacks, side):
    for r in loops:
        if r.type == EXTERIOR or (side and r.side != side):
            continue
        if r.pk_class == NONE:
            hists[LOOP_LEN][r.length] += 1
        else:
            hists[PK_LOOP_LEN][r.length] += 1
    for s in stacks:
        if not side or s.side == side:
            hists[STACK_LEN][s.length] += 1
    hists[BETA_STACKS][sum(1 for s in stacks if s.side == BETA)] += 1
    hists[ALL_STACKS][len(stacks)] += 1


def _run_chunk(args):
    from .sampler import DIAGRAM, SamplerConfig, sample_one

    length, g, seed, lo, hi, side = args
    config = SamplerConfig(seed, length, g, DIAGRAM)
    hists = {k: Counter() for k in KINDS}
    bad = 0
    for i in range(lo, hi):
        d = sample_one(config, i)
        loops, stacks, ok = structure_records(d, g)
        bad += not ok
        _accumulate(hists, loops, stacks, side)
    return hists, bad


def histogram_run(length, g, N, seed, which=KINDS, side=None, threads=1):
    """Sample N genus-g diagrams of the given length and histogram their features.

    Returns ``(histograms, violations)`` where violations counts structures
    breaking the loop-count identity.
    """
    chunk = 500
    jobs = [(length, g, seed, lo, min(lo + chunk, N), side) for lo in range(0, N, chunk)]
    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(threads) as ex:
            parts = list(ex.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    meta = {"length": length, "g": g, "N": N, "seed": seed}
    if side:
        meta["side"] = side
    out = {}
    for k in which:
        h = Histogram(k, Counter(), dict(meta))
        for hists, _ in parts:
            h.bins.update(hists[k])
        out[k] = h
    return out, sum(b for _, b in parts)


def write_histograms(hists, directory):
    os.makedirs(directory, exist_ok=True)
    return [h.write(directory) for h in hists.values()]

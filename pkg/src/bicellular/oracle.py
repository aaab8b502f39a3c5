"""Brute-force enumeration of small families, and a chi-square uniformity test.

Everything here is deliberately naive: maps are built from explicit face
permutations and genera are computed from cycle counts, so the results serve
as independent ground truth for the counting formulas, the surgery bijection
and the samplers.
"""
from collections import Counter
from dataclasses import dataclass, field

from .duality import Diagram2B, inflation_genus, is_canonical_break
from .errors import SupportMismatch, TooLarge
from .map_core import (
    PlantedBicellularMap, count_cycles, format_map, vertex_perm,
)

MAX_BI_N = 6
MAX_UNI_N = 6
MAX_DIAGRAM_LEN = 10


@dataclass
class EnumerationResult:
    kind: str
    g: object
    size: int
    instances: list
    buckets: dict = field(default_factory=dict, repr=False)
    rejected: int = 0

    @property
    def count(self):
        return len(self.instances)

    def dump(self):
        lines = ["# count: %d" % self.count]
        for x in self.instances:
            if isinstance(x, Diagram2B):
                lines.append(str(x))
            else:
                lines.append(format_map(x).strip().replace("\n", " ; "))
        return "\n".join(lines) + "\n"


def fpf_involutions(points):
    """All fixed-point-free involutions on a list of points, as dicts."""
    points = list(points)
    if not points:
        yield {}
        return
    a = points[0]
    for k in range(1, len(points)):
        b = points[k]
        rest = points[1:k] + points[k + 1:]
        for inv in fpf_involutions(rest):
            inv[a] = b
            inv[b] = a
            yield inv


def partial_matchings(L):
    """All sets of disjoint arcs on 1..L, as sorted tuples."""
    def rec(free):
        if not free:
            yield ()
            return
        a = free[0]
        for tail in rec(free[1:]):
            yield tail
        for k in range(1, len(free)):
            for tail in rec(free[1:k] + free[k + 1:]):
                yield ((a, free[k]),) + tail
    for arcs in rec(list(range(1, L + 1))):
        yield tuple(sorted(arcs))


def _bucket(items, g, kind, size, rejected=0):
    buckets = {}
    for genus, x in items:
        buckets.setdefault(genus, []).append(x)
    for v in buckets.values():
        v.sort(key=lambda x: x.key() if hasattr(x, "key") else (x.len1, x.len2, x.arcs))
    inst = [x for k in sorted(buckets) for x in buckets[k]] if g is None else buckets.get(g, [])
    return EnumerationResult(kind, g, size, inst, buckets, rejected)


def enumerate_planted_bicellular(n, g=None):
    """Planted bicellular maps with n non-plant edges, in canonical labelling.

    ``g=None`` keeps every genus.  ``rejected`` counts the disconnected
    configurations; together with the maps they exhaust all involutions.
    """
    if n > MAX_BI_N:
        raise TooLarge("planted bicellular enumeration limited to n <= %d" % MAX_BI_N)
    if n < 0:
        raise ValueError("n must be nonnegative")
    H = 2 * n + 4
    items = []
    rejected = 0
    for f1 in range(2, H - 1):
        gamma = [x + 1 for x in range(H)]
        gamma[f1 - 1] = 0
        gamma[H - 1] = f1
        inner = [x for x in range(H) if x not in (0, f1 - 1, f1, H - 1)]
        for inv in fpf_involutions(inner):
            alpha = [0] * H
            alpha[0], alpha[f1 - 1], alpha[f1], alpha[H - 1] = f1 - 1, 0, H - 1, f1
            for k, v in inv.items():
                alpha[k] = v
            if not any(alpha[x] >= f1 for x in range(f1)):
                rejected += 1
                continue
            sigma = vertex_perm(alpha, gamma)
            v = count_cycles(sigma)
            genus = (H // 2 - v) // 2
            items.append((genus, PlantedBicellularMap(alpha, f1)))
    return _bucket(items, g, "planted_bicellular", n, rejected)


@dataclass(frozen=True)
class RootedOneFaceMap:
    alpha: tuple

    def key(self):
        return self.alpha


def enumerate_unicellular(n, g=None):
    """Rooted one-face maps with n edges: gamma = (0 1 ... 2n-1), all alpha."""
    if n > MAX_UNI_N:
        raise TooLarge("one-face enumeration limited to n <= %d" % MAX_UNI_N)
    H = 2 * n
    gamma = [(x + 1) % H for x in range(H)] if H else []
    items = []
    for inv in fpf_involutions(range(H)):
        alpha = [inv[x] for x in range(H)]
        v = count_cycles(vertex_perm(alpha, gamma))
        items.append(((n + 1 - v) // 2, RootedOneFaceMap(tuple(alpha))))
    return _bucket(items, g, "unicellular", n)


def enumerate_diagrams(length, g=None, n=None):
    """Genus-g diagrams on ``length`` vertices with an external arc.

    Backbone 1 ends at a paired vertex (the canonical break).  The genus is
    computed on the inflated fat graph, independently of the dual map.
    """
    if length > MAX_DIAGRAM_LEN:
        raise TooLarge("diagram enumeration limited to length <= %d" % MAX_DIAGRAM_LEN)
    items = []
    for arcs in partial_matchings(length):
        if n is not None and len(arcs) != n:
            continue
        for len1 in range(1, length):
            if not any(i <= len1 < j for i, j in arcs):
                continue
            d = Diagram2B(len1, length - len1, arcs)
            if not is_canonical_break(d):
                continue
            genus, _ = inflation_genus(d)
            items.append((genus, d))
    return _bucket(items, g, "diagrams", length)


# -- uniformity ---------------------------------------------------------------------

@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    dof: int
    threshold: float
    pvalue: float
    passed: bool
    hits: int
    support: int
    samples: int


def chi_square_uniformity(samples, support, alpha=0.01):
    """Chi-square goodness of fit of samples against the uniform law on support."""
    from scipy.stats import chi2

    support = list(support)
    index = set(support)
    counts = Counter()
    for s in samples:
        if s not in index:
            raise SupportMismatch("sample %r is outside the support" % (s,))
        counts[s] += 1
    N = sum(counts.values())
    k = len(support)
    if k <= 1:
        return ChiSquareResult(0.0, 0, 0.0, 1.0, True, len(counts), k, N)
    expected = N / k
    stat = sum((counts[x] - expected) ** 2 for x in support) / expected
    dof = k - 1
    thr = float(chi2.ppf(1 - alpha, dof))
    return ChiSquareResult(float(stat), dof, thr, float(chi2.sf(stat, dof)), stat <= thr,
                           len(counts), k, N)

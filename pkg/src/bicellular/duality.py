"""Two-backbone diagrams and their duals, planted bicellular maps.

Positions are 1-based and run over backbone 1 (``1..len1``) then backbone 2.
Planting adds a fresh position before and after each backbone, joined by a
rainbow arc.

Duality.  Read the planted positions ``0..H-1`` (0-based) as half-edges.
Walking along backbone 1 and then backbone 2 traces the two faces, and the
arcs give the edge involution.  So the canonical planted map of a planted
matching has ``alpha`` equal to the arc involution and first face size
``len1 + 2``.  Unpaired vertices carry no half-edge; they are stripped before
the dual is taken and reinserted afterwards.

Backbone break.  A diagram with unpaired vertices is stored with backbone 1
ending at its last paired vertex; unpaired vertices between the two
backbones belong to backbone 2.  With this rule a diagram is a matching plus
a set of unpaired positions, and nothing else.
"""
import json
from dataclasses import dataclass

from .errors import AlreadyPlanted, DiagramSyntaxError, EndpointReuse, NoExternalArc, OutOfRange, DiagramError
from .map_core import PlantedBicellularMap, count_cycles, face_perm

INTERNAL, EXTERNAL, PLANT = "INTERNAL", "EXTERNAL", "PLANT"


@dataclass(frozen=True)
class Arc:
    i: int
    j: int
    kind: str


@dataclass(frozen=True)
class Diagram2B:
    len1: int
    len2: int
    arcs: tuple
    planted: bool = False

    @property
    def length(self):
        return self.len1 + self.len2

    @property
    def n_arcs(self):
        return len(self.arcs)

    def partner(self):
        p = {}
        for i, j in self.arcs:
            p[i] = j
            p[j] = i
        return p

    @property
    def unpaired(self):
        p = self.partner()
        return tuple(x for x in range(1, self.length + 1) if x not in p)

    @property
    def is_matching(self):
        return 2 * len(self.arcs) == self.length

    def rainbows(self):
        if not self.planted:
            return ()
        return ((1, self.len1), (self.len1 + 1, self.length))

    def kind(self, i, j):
        if self.planted and (i, j) in self.rainbows():
            return PLANT
        return EXTERNAL if i <= self.len1 < j else INTERNAL

    def typed_arcs(self):
        return [Arc(i, j, self.kind(i, j)) for i, j in self.arcs]

    def external_arcs(self):
        return [a for a in self.arcs if self.kind(*a) == EXTERNAL]

    def internal_arcs(self):
        return [a for a in self.arcs if self.kind(*a) == INTERNAL]

    @property
    def genus(self):
        return poincare_dual(self).genus

    def __str__(self):
        return format_diagram(self)


def make_diagram(len1, len2, arcs, planted=False):
    """Checked constructor; arcs are normalized to sorted (i < j) pairs."""
    if len1 < 0 or len2 < 0:
        raise OutOfRange("backbone lengths must be nonnegative")
    L = len1 + len2
    seen = set()
    norm = []
    for a in arcs:
        i, j = sorted((int(a[0]), int(a[1])))
        if not (1 <= i <= L and 1 <= j <= L):
            raise OutOfRange("arc %d-%d outside 1..%d" % (i, j, L))
        if i == j or i in seen or j in seen:
            raise EndpointReuse("endpoint used twice in arc %d-%d" % (i, j))
        seen.update((i, j))
        norm.append((i, j))
    d = Diagram2B(len1, len2, tuple(sorted(norm)), planted)
    if planted:
        for r in ((1, len1), (len1 + 1, L)):
            if r not in d.arcs:
                raise DiagramError("planted diagram lacks rainbow %d-%d" % r)
    return d


def plant(d):
    if d.planted:
        raise AlreadyPlanted("diagram is already planted")
    l1 = d.len1

    def pos(x):
        return x + 1 if x <= l1 else x + 3

    arcs = [(pos(i), pos(j)) for i, j in d.arcs]
    arcs += [(1, l1 + 2), (l1 + 3, d.length + 4)]
    return Diagram2B(l1 + 2, d.len2 + 2, tuple(sorted(arcs)), True)


def unplant(d):
    if not d.planted:
        raise DiagramError("diagram is not planted")
    l1 = d.len1
    rb = set(d.rainbows())

    def pos(x):
        return x - 1 if x <= l1 else x - 3

    arcs = [(pos(i), pos(j)) for i, j in d.arcs if (i, j) not in rb]
    return Diagram2B(l1 - 2, d.len2 - 2, tuple(sorted(arcs)), False)


def matching_part(d):
    """Strip unpaired vertices: (matching diagram, unpaired positions)."""
    p = d.partner()
    keep = [x for x in range(1, d.length + 1) if x in p]
    new = {x: k for k, x in enumerate(keep, start=1)}
    len1 = sum(1 for x in keep if x <= d.len1)
    arcs = tuple(sorted((new[i], new[j]) for i, j in d.arcs))
    return Diagram2B(len1, len(keep) - len1, arcs, d.planted), d.unpaired


def with_unpaired(mat, positions, length):
    """Insert unpaired vertices at the given 1-based positions of a length-``length`` diagram."""
    if mat.planted:
        raise DiagramError("insert unpaired vertices into an unplanted matching")
    pos = set(positions)
    if len(pos) != length - mat.length or any(not 1 <= x <= length for x in pos):
        raise OutOfRange("unpaired positions do not fit the length")
    paired = [x for x in range(1, length + 1) if x not in pos]
    arcs = tuple(sorted((paired[i - 1], paired[j - 1]) for i, j in mat.arcs))
    len1 = paired[mat.len1 - 1] if mat.len1 else 0
    return Diagram2B(len1, length - len1, arcs, False)


def is_canonical_break(d):
    """True when backbone 1 ends with a paired vertex."""
    return d.len1 > 0 and d.len1 in d.partner()


def poincare_dual(d):
    """Planted bicellular map dual to a diagram (planted or not)."""
    mat, _ = matching_part(d)
    if not mat.planted:
        if not mat.external_arcs():
            raise NoExternalArc("a bicellular dual needs an external arc")
        mat = plant(mat)
    elif not mat.external_arcs():
        raise NoExternalArc("a bicellular dual needs an external arc")
    H = mat.length
    alpha = [0] * H
    for i, j in mat.arcs:
        alpha[i - 1] = j - 1
        alpha[j - 1] = i - 1
    return PlantedBicellularMap(alpha, mat.len1)


def dual_inverse(m):
    """The planted matching whose dual is the canonical map m."""
    H = m.H
    arcs = tuple((x + 1, m.alpha[x] + 1) for x in range(H) if x < m.alpha[x])
    return Diagram2B(m.f1, H - m.f1, arcs, True)


def matching_of(m):
    """Unplanted matching of a planted bicellular map."""
    return unplant(dual_inverse(m))


def inflation(d):
    """Fat graph of a diagram, with one vertex per backbone position.

    Each vertex carries up to three half-edges in counter-clockwise order
    right (to the next vertex), arc, left (to the previous vertex).
    Returns (alpha, sigma, vertex count).
    """
    L = d.length
    p = d.partner()
    ids = {}
    for v in range(1, L + 1):
        first = v == 1 or v == d.len1 + 1
        last = v == d.len1 or v == L
        if not last:
            ids[(v, "R")] = len(ids)
        if v in p:
            ids[(v, "A")] = len(ids)
        if not first:
            ids[(v, "L")] = len(ids)
    H = len(ids)
    alpha = [0] * H
    sigma = [0] * H
    for v in range(1, L + 1):
        ring = [ids[(v, t)] for t in "RAL" if (v, t) in ids]
        for k, h in enumerate(ring):
            sigma[h] = ring[(k + 1) % len(ring)]
        if (v, "R") in ids:
            a, b = ids[(v, "R")], ids[(v + 1, "L")]
            alpha[a], alpha[b] = b, a
        if v in p and v < p[v]:
            a, b = ids[(v, "A")], ids[(p[v], "A")]
            alpha[a], alpha[b] = b, a
    return alpha, sigma, L


def inflation_genus(d):
    """(genus, boundary components) of the inflated diagram, computed directly."""
    alpha, sigma, V = inflation(d)
    E = len(alpha) // 2
    F = count_cycles(face_perm(alpha, sigma))
    chi = V - E + F
    return (2 - chi) // 2, F


# -- text and JSON forms -------------------------------------------------------

def format_diagram(d):
    head = "%d %d |" % (d.len1, d.len2)
    if not d.arcs:
        return head
    return head + " " + " ".join("%d-%d" % a for a in d.arcs)


def parse_diagram(text, planted=False):
    s = text.strip()
    head, bar, rest = s.partition("|")
    if not bar:
        raise DiagramSyntaxError("missing '|' in %r" % text)
    try:
        len1, len2 = (int(t) for t in head.split())
    except ValueError:
        raise DiagramSyntaxError("expected two backbone lengths in %r" % text)
    arcs = []
    for tok in rest.split():
        a, dash, b = tok.partition("-")
        if not dash:
            raise DiagramSyntaxError("bad arc token %r" % tok)
        try:
            arcs.append((int(a), int(b)))
        except ValueError:
            raise DiagramSyntaxError("bad arc token %r" % tok)
    return make_diagram(len1, len2, arcs, planted)


def to_json(d):
    return json.dumps({"len1": d.len1, "len2": d.len2,
                       "arcs": [list(a) for a in d.arcs],
                       "unpaired": list(d.unpaired)})


def from_json(text):
    obj = json.loads(text) if isinstance(text, str) else text
    d = make_diagram(obj["len1"], obj["len2"], obj["arcs"])
    if "unpaired" in obj and list(obj["unpaired"]) != list(d.unpaired):
        raise DiagramError("unpaired list disagrees with the arcs")
    return d

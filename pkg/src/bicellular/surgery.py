"""Vertex slicing and gluing, and the trisection decomposition built from them.

Gluing three vertices with minima a1 < a2 < a3 merges them into one vertex by
the local rotation

    sigma'(a1) = sigma(a2),  sigma'(a2) = sigma(a3),  sigma'(a3) = sigma(a1),

and slicing is the inverse rotation.  Labels are kept fixed during a surgery
and the result is relabelled canonically at the end, so every operation costs
O(H).

A complete gluing with 2k+1 marks (k >= 1) first glues the three largest marks,
which produces the distinguished half-edge tau with sigma(tau) = a3, then
glues the remaining marks pairwise, from the largest pair down, onto the vertex
of tau.  ``resolve`` is its inverse: it slices a trisection repeatedly until it
becomes of type I and collects the 2k+1 vertex minima it created.
"""
from dataclasses import dataclass, field

from .errors import (
    DuplicateVertex, IllegalSignature, MarkPlacementMismatch, NotDistributed,
    NotIntertwined, NotSameVertex, NotTrisection, SurgeryError,
)
from .map_core import (
    PlantedBicellularMap, PlantedMap, UnicellularPair, canonical_sigma, make_planted,
    pair_of, plane_tree_from_dyck, relabel, vertex_minima,
)

BICELLULAR_DOWN = "BICELLULAR_DOWN"
SPLIT_PAIR = "SPLIT_PAIR"
PAIR_DOWN = "PAIR_DOWN"

LOCAL_A, LOCAL_B, DISTRIBUTED, FREE = "LOCAL_A", "LOCAL_B", "DISTRIBUTED", "FREE"

# step kinds of a trace, named by what the gluing does
STEP_A, STEP_B, STEP_CONNECT, STEP_BI = "A", "B", "connect", "bi"


def _glue_rotate(sigma, a1, a2, a3):
    sigma[a1], sigma[a2], sigma[a3] = sigma[a2], sigma[a3], sigma[a1]


def _slice_rotate(sigma, a1, a2, a3):
    sigma[a1], sigma[a2], sigma[a3] = sigma[a3], sigma[a1], sigma[a2]


def _finish(obj, alpha, sigma):
    r = relabel(alpha, sigma, (0, obj.f1))
    if r is None:
        raise SurgeryError("surgery did not produce a planted two-face map")
    a2, sizes, new = r
    return make_planted(a2, sizes[0]), new


def _vertex_order(sigma, vm, x):
    """Position of x on its vertex, counted from the vertex minimum."""
    y = vm[x]
    k = 0
    while y != x:
        y = sigma[y]
        k += 1
    return k


def placement(obj, marks):
    if not isinstance(obj, UnicellularPair):
        return FREE
    f1 = obj.f1
    na = sum(1 for x in marks if x < f1)
    if na == len(marks):
        return LOCAL_A
    if na == 0:
        return LOCAL_B
    return DISTRIBUTED


@dataclass(frozen=True)
class VertexMarkSet:
    marks: tuple
    placement: str

    @property
    def count(self):
        return len(self.marks)


@dataclass(frozen=True)
class SliceOutcome:
    tag: str
    result: PlantedMap
    new_vertices: tuple          # labels of a1, a2, a3 in the result
    relabelling: tuple = field(repr=False, default=())

    @property
    def down(self):
        return self.result if self.tag == BICELLULAR_DOWN else None

    @property
    def pair(self):
        return self.result.components() if self.tag == SPLIT_PAIR else None


@dataclass(frozen=True)
class GlueResult:
    result: PlantedMap
    tau: int                     # distinguished trisection of the result
    triple: tuple                # labels of a1, a2, a3 in the result (k = 1 case)


def slice(obj, a1, a2, a3):
    """Split the vertex carrying a1, a2, a3 into three vertices."""
    s = list(obj.sigma)
    vm = obj.vertex_minima()
    if len({a1, a2, a3}) != 3:
        raise NotSameVertex("half-edges must be distinct")
    if not vm[a1] == vm[a2] == vm[a3]:
        raise NotSameVertex("half-edges lie on different vertices")
    o1, o2, o3 = (_vertex_order(s, vm, x) for x in (a1, a2, a3))
    if not (a1 < a3 < a2 and o1 < o2 < o3):
        raise NotIntertwined("triple is not intertwined")
    _slice_rotate(s, a1, a2, a3)
    res, new = _finish(obj, list(obj.alpha), s)
    if isinstance(obj, UnicellularPair):
        tag = PAIR_DOWN
    else:
        tag = BICELLULAR_DOWN if res.connected else SPLIT_PAIR
    return SliceOutcome(tag, res, (new[a1], new[a2], new[a3]), tuple(new))


def _check_marks(obj, marks):
    vm = obj.vertex_minima()
    marks = sorted(marks)
    if len(set(marks)) != len(marks):
        raise DuplicateVertex("marks must be distinct vertices")
    if len(marks) < 3 or len(marks) % 2 == 0:
        raise SurgeryError("need an odd number (at least 3) of marks")
    for x in marks:
        if not 0 <= x < obj.H or vm[x] != x:
            raise SurgeryError("mark %d is not a vertex minimum" % x)
        if x == obj.f1 - 1 or x == obj.H - 1:
            raise SurgeryError("plant leaves cannot be marked")
    return marks


def glue(obj, *marks, check=True):
    """Merge marked vertices (given by their minima) into one.

    Three marks give the inverse of ``slice``; 2k+1 marks give the inverse of
    ``resolve``.  For a pair input, marks spread over both components connect
    them.
    """
    if len(marks) == 1 and not isinstance(marks[0], int):
        marks = tuple(marks[0])
    if check:
        marks = _check_marks(obj, marks)
    else:
        marks = sorted(marks)
    s = list(obj.sigma)
    a1, a2, a3 = marks[-3:]
    _glue_rotate(s, a1, a2, a3)
    tau = s.index(a3)
    rest = marks[:-3]
    while rest:
        b2 = rest.pop()
        b1 = rest.pop()
        _glue_rotate(s, b1, b2, s[tau])
    res, new = _finish(obj, list(obj.alpha), s)
    return GlueResult(res, new[tau], (new[a1], new[a2], new[a3]))


def glue_at(obj, a1, a2, a3):
    """Inverse of ``slice(obj, a1, a2, a3)`` for arbitrary half-edges a1, a2, a3.

    Unlike ``glue`` the half-edges need not be vertex minima.  Returns a
    GlueResult whose triple is the image of (a1, a2, a3).
    """
    vm = obj.vertex_minima()
    if len({vm[a1], vm[a2], vm[a3]}) != 3:
        raise DuplicateVertex("half-edges must lie on three distinct vertices")
    s = list(obj.sigma)
    _glue_rotate(s, a1, a2, a3)
    tau = s.index(a3)
    res, new = _finish(obj, list(obj.alpha), s)
    return GlueResult(res, new[tau], (new[a1], new[a2], new[a3]))


def intertwined_triples(obj):
    """All triples (a1, a2, a3) on a common vertex accepted by ``slice``."""
    out = []
    for c in obj.vertices():
        k = len(c)
        for x in range(k):
            for y in range(x + 1, k):
                for z in range(y + 1, k):
                    a1, a2, a3 = c[x], c[y], c[z]
                    if a1 < a3 < a2:
                        out.append((a1, a2, a3))
    return out


def glue_connect(pair, *marks):
    """Gluing of a pair that must end up connected."""
    if len(marks) == 1 and not isinstance(marks[0], int):
        marks = tuple(marks[0])
    if placement(pair, marks) != DISTRIBUTED:
        raise NotDistributed("marks do not meet both components")
    return glue(pair, marks)


# -- trisections ------------------------------------------------------------

@dataclass(frozen=True)
class TrisectionRecord:
    tris: int
    vertex: tuple
    kind: str = ""
    triple: tuple = ()


def trisection_records(obj):
    """Trisections of obj with their slice preview (kind and triple)."""
    out = []
    verts = {v[0]: tuple(v) for v in obj.vertices()}
    vm = obj.vertex_minima()
    for t in obj.trisections():
        r = slice_trisection(obj, t)
        out.append(TrisectionRecord(t, verts[vm[t]], r.kind, r.triple))
    return out


def trisection_triple(obj, tau):
    s = obj.sigma
    vm = obj.vertex_minima()
    if not (s[tau] <= tau and vm[tau] != s[tau]):
        raise NotTrisection("%d is not a trisection" % tau)
    a1 = vm[tau]
    a3 = s[tau]
    a2 = None
    x = s[a1]
    while x != a3:
        if x > a3 and (a2 is None or x < a2):
            a2 = x
        x = s[x]
    return a1, a2, a3


@dataclass(frozen=True)
class TrisectionSlice:
    outcome: SliceOutcome
    kind: str                    # "I" or "II"
    residual: object             # trisection label in the result for kind II
    triple: tuple

    @property
    def result(self):
        return self.outcome.result


def slice_trisection(obj, tau):
    if isinstance(tau, TrisectionRecord):
        tau = tau.tris
    a1, a2, a3 = trisection_triple(obj, tau)
    out = slice(obj, a1, a2, a3)
    new = out.relabelling
    vm = out.result.vertex_minima()
    n3 = new[a3]
    if vm[n3] == n3:
        return TrisectionSlice(out, "I", None, (a1, a2, a3))
    return TrisectionSlice(out, "II", new[tau], (a1, a2, a3))


def resolve(obj, tau):
    """Slice tau until type I.  Returns (lower object, sorted marks, number of slices)."""
    marks = []
    cur = obj
    k = 0
    while True:
        r = slice_trisection(cur, tau)
        new = r.outcome.relabelling
        a1, a2, a3 = r.triple
        marks = [new[x] for x in marks]
        marks += [new[a1], new[a2]]
        cur = r.result
        k += 1
        if r.kind == "I":
            marks.append(new[a3])
            break
        tau = r.residual
    return cur, sorted(marks), k


# -- full decomposition ------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    kind: str
    marks: tuple


@dataclass(frozen=True)
class DecompositionTrace:
    """Slicing record of a (map, trisection) pair down to two plane trees.

    ``signature`` and ``steps`` are read in slicing direction; the marks of a
    step are vertex minima of the object obtained after that slicing step.
    """
    signature: tuple
    steps: tuple
    trees: tuple
    trisection_origin: int

    @property
    def marked_vertices(self):
        return [s.marks for s in self.steps]

    def to_text(self):
        return format_trace(self)


def decompose(m, tau):
    """Slice (m, tau) down to a pair of plane trees, recording every step."""
    if isinstance(tau, TrisectionRecord):
        tau = tau.tris
    if not isinstance(m, PlantedBicellularMap):
        raise SurgeryError("decompose needs a planted bicellular map")
    origin = tau
    g = m.genus
    sig = [(g, 1)]
    steps = []
    cur = m
    while True:
        low, marks, k = resolve(cur, tau)
        if low.connected:
            g -= k
            sig.append((g, 1))
            steps.append(TraceStep(STEP_BI, tuple(marks)))
            cur = low
            tau = low.trisections()[0]
        else:
            g = low.genus
            sig.append((g, 0))
            steps.append(TraceStep(STEP_CONNECT, tuple(marks)))
            cur = low
            break
    for side in (STEP_A, STEP_B):
        while True:
            f1 = cur.f1
            ts = [t for t in cur.trisections() if (t < f1) == (side == STEP_A)]
            if not ts:
                break
            cur, marks, k = resolve(cur, ts[0])
            g -= k
            sig.append((g, 0))
            steps.append(TraceStep(side, tuple(marks)))
    trees = cur.components()
    return DecompositionTrace(tuple(sig), tuple(steps), trees, origin)


def _check_transition(prev, nxt, step):
    (g0, j0), (g1, j1) = prev, nxt
    d = g1 - g0
    n = len(step.marks)
    if j0 == 1:
        ok = j1 == 1 and d >= 1 and step.kind == STEP_BI and n == 2 * d + 1
    elif j1 == 0:
        ok = d >= 1 and step.kind in (STEP_A, STEP_B) and n == 2 * d + 1
    else:
        ok = d >= 0 and step.kind == STEP_CONNECT and n == 2 * d + 3
    if not ok:
        raise IllegalSignature("illegal step %s from %s to %s with %d marks" % (step.kind, prev, nxt, n))


def rebuild(trace):
    """Replay a trace by gluing; returns (map, trisection)."""
    sig = list(trace.signature)
    steps = list(trace.steps)
    if len(sig) != len(steps) + 1 or not sig or sig[-1] != (0, 0) or sig[0][1] != 1:
        raise IllegalSignature("signature must run from (g, 1) to (0, 0)")
    a, b = trace.trees
    cur = pair_of(a, b)
    tau = None
    for i in range(len(steps) - 1, -1, -1):
        step = steps[i]
        _check_transition(sig[i + 1], sig[i], step)
        where = placement(cur, step.marks)
        want = {STEP_A: LOCAL_A, STEP_B: LOCAL_B, STEP_CONNECT: DISTRIBUTED, STEP_BI: FREE}[step.kind]
        if where != want:
            raise MarkPlacementMismatch("step %s expects %s marks, got %s" % (step.kind, want, where))
        r = glue(cur, step.marks)
        cur, tau = r.result, r.tau
        if cur.genus != sig[i][0] or cur.connected != bool(sig[i][1]):
            raise IllegalSignature("glued object does not match signature entry %s" % (sig[i],))
    if not isinstance(cur, PlantedBicellularMap) or tau is None:
        raise IllegalSignature("trace does not end in a bicellular map")
    return cur, tau


# -- text form ---------------------------------------------------------------

def format_trace(t):
    lines = ["signature: " + " ".join("%d,%d" % p for p in t.signature),
             "trisection: %d" % t.trisection_origin]
    for s in t.steps:
        lines.append("step %s: %s" % (s.kind, " ".join(map(str, s.marks))))
    lines.append("tree: " + t.trees[0].to_dyck())
    lines.append("tree: " + t.trees[1].to_dyck())
    return "\n".join(lines) + "\n"


def parse_trace(text):
    sig = None
    origin = None
    steps = []
    trees = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        try:
            if key == "signature":
                sig = tuple(tuple(int(v) for v in p.split(",")) for p in rest.split())
            elif key == "trisection":
                origin = int(rest)
            elif key.startswith("step"):
                kind = key.split()[1]
                steps.append(TraceStep(kind, tuple(int(v) for v in rest.split())))
            elif key == "tree":
                trees.append(plane_tree_from_dyck(rest))
            else:
                raise SurgeryError("unknown trace line %r" % line)
        except (ValueError, IndexError):
            raise SurgeryError("malformed trace line %r" % line)
    if sig is None or len(trees) != 2:
        raise SurgeryError("trace needs a signature and two trees")
    return DecompositionTrace(sig, tuple(steps), tuple(trees), origin if origin is not None else -1)

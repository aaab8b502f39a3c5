"""Permutation maps, and planted two-face maps with their trisections.

A map is a pair of permutations on the half-edges ``0..H-1``: an edge
involution ``alpha`` and a vertex rotation ``sigma``.  Faces are the cycles of

    gamma = alpha o sigma,   i.e.  gamma[x] = alpha[sigma[x]].

This is the only place where the composition convention is fixed; everything
below derives its orders from ``face_perm``.

Planted two-face maps are stored in canonical form: half-edges are labelled
by their rank in the face-traversal order, so the first face is
``0..f1-1`` and the second ``f1..H-1``, each traversed by ``x -> x+1``.
The plant edges are ``(0, f1-1)`` and ``(f1, H-1)``, the half-edges
``f1-1`` and ``H-1`` being the two leaves.  In this form a map is determined
by ``alpha`` and ``f1`` alone.
"""
from collections import deque

from .errors import DomainMismatch, Disconnected, NotInvolution, NotPlanted, MapError

UP, DOWN = "UP", "DOWN"


# -- permutations -----------------------------------------------------------

def face_perm(alpha, sigma):
    """gamma = alpha o sigma."""
    return [alpha[s] for s in sigma]


def vertex_perm(alpha, gamma):
    """Recover sigma from alpha and gamma (alpha is an involution)."""
    return [alpha[g] for g in gamma]


def inverse(p):
    q = [0] * len(p)
    for i, x in enumerate(p):
        q[x] = i
    return q


def cycles(p):
    seen = [False] * len(p)
    out = []
    for x in range(len(p)):
        if not seen[x]:
            c = []
            while not seen[x]:
                seen[x] = True
                c.append(x)
                x = p[x]
            out.append(c)
    return out


def count_cycles(p):
    seen = bytearray(len(p))
    k = 0
    for x in range(len(p)):
        if not seen[x]:
            k += 1
            while not seen[x]:
                seen[x] = 1
                x = p[x]
    return k


def is_permutation(p):
    return sorted(p) == list(range(len(p)))


def is_fpf_involution(a):
    return all(a[x] != x and 0 <= a[x] < len(a) and a[a[x]] == x for x in range(len(a)))


def _components(alpha, sigma):
    """Number of connected components of the graph generated by alpha and sigma."""
    H = len(alpha)
    comp = [-1] * H
    k = 0
    for s in range(H):
        if comp[s] >= 0:
            continue
        comp[s] = k
        todo = deque([s])
        while todo:
            x = todo.popleft()
            for y in (alpha[x], sigma[x]):
                if comp[y] < 0:
                    comp[y] = k
                    todo.append(y)
        k += 1
    return k


# -- general maps -----------------------------------------------------------

class FatMap:
    """A connected map given by (alpha, sigma); gamma is derived."""

    __slots__ = ("alpha", "sigma", "gamma", "vertex_count", "face_count")

    def __init__(self, alpha, sigma, gamma=None):
        self.alpha = tuple(alpha)
        self.sigma = tuple(sigma)
        self.gamma = tuple(face_perm(alpha, sigma) if gamma is None else gamma)
        self.vertex_count = count_cycles(self.sigma)
        self.face_count = count_cycles(self.gamma)

    @property
    def size(self):
        return len(self.alpha)

    @property
    def n_edges(self):
        return len(self.alpha) // 2

    @property
    def genus(self):
        return (self.n_edges + 2 - self.vertex_count - self.face_count) // 2

    def faces(self):
        return cycles(self.gamma)

    def vertices(self):
        return cycles(self.sigma)

    def edges(self):
        return [(x, self.alpha[x]) for x in range(self.size) if x < self.alpha[x]]

    def __eq__(self, other):
        return isinstance(other, FatMap) and (self.alpha, self.sigma) == (other.alpha, other.sigma)

    def __hash__(self):
        return hash((self.alpha, self.sigma))

    def __repr__(self):
        return "FatMap(edges=%d, vertices=%d, faces=%d, genus=%d)" % (
            self.n_edges, self.vertex_count, self.face_count, self.genus)


def build_map(alpha, sigma):
    """Checked constructor for FatMap."""
    alpha = list(alpha)
    sigma = list(sigma)
    if len(alpha) != len(sigma):
        raise DomainMismatch("alpha has %d points, sigma has %d" % (len(alpha), len(sigma)))
    if not is_permutation(sigma):
        raise DomainMismatch("sigma is not a permutation of 0..%d" % (len(sigma) - 1))
    if not is_fpf_involution(alpha):
        raise NotInvolution("alpha must be a fixed-point-free involution")
    if alpha and _components(alpha, sigma) != 1:
        raise Disconnected("the map is not connected")
    return FatMap(alpha, sigma)


def genus(m):
    return m.genus


# -- canonical planted maps -------------------------------------------------

def canonical_sigma(alpha, f1):
    """sigma of the canonical two-face map with face sizes f1 and H - f1."""
    H = len(alpha)
    sigma = list(alpha[1:])
    sigma.append(alpha[0])
    sigma[f1 - 1] = alpha[0]
    if f1 < H:
        sigma[H - 1] = alpha[f1]
    return sigma


def vertex_minima(sigma):
    """vm[x] = smallest label on the vertex of x."""
    H = len(sigma)
    vm = [-1] * H
    for x in range(H):
        if vm[x] < 0:
            y = x
            while vm[y] < 0:
                vm[y] = x
                y = sigma[y]
    return vm


def relabel(alpha, sigma, starts):
    """Relabel by face traversal from each start in turn.

    Returns ``(alpha', face_sizes, new)`` where ``new[old] = new label``,
    or None when the starts do not cover every half-edge or two starts share
    a face.
    """
    H = len(alpha)
    new = [-1] * H
    order = []
    sizes = []
    for s in starts:
        if new[s] >= 0:
            return None
        x = s
        k = len(order)
        while new[x] < 0:
            new[x] = len(order)
            order.append(x)
            x = alpha[sigma[x]]
        if x != s:
            return None
        sizes.append(len(order) - k)
    if len(order) != H:
        return None
    return [new[alpha[x]] for x in order], sizes, new


def display_label(x, f1, H):
    """Decorated label of canonical half-edge x (plants carry the R suffix)."""
    if x == 0:
        return "1_R"
    if x < f1 - 1:
        return str(x)
    if x == f1 - 1:
        return "%d_R" % max(f1 - 2, 1)
    if x == f1:
        return "%d_R" % (f1 - 1)
    if x < H - 1:
        return str(x - 2)
    return "%d_R" % (H - 4)


class PlantedMap:
    """Canonical planted map with two faces (connected or a pair of one-face maps)."""

    __slots__ = ("alpha", "f1", "_sigma", "_vm")

    def __init__(self, alpha, f1):
        self.alpha = tuple(alpha)
        self.f1 = int(f1)
        self._sigma = None
        self._vm = None

    # sizes
    @property
    def H(self):
        return len(self.alpha)

    @property
    def n(self):
        """Number of non-plant edges."""
        return len(self.alpha) // 2 - 2

    @property
    def split_m(self):
        """Number of non-plant half-edges on the first face."""
        return self.f1 - 2

    @property
    def plants(self):
        return (0, self.f1 - 1, self.f1, self.H - 1)

    @property
    def sigma(self):
        if self._sigma is None:
            self._sigma = tuple(canonical_sigma(self.alpha, self.f1))
        return self._sigma

    @property
    def gamma(self):
        f1, H = self.f1, self.H
        g = list(range(1, H + 1))
        g[f1 - 1] = 0
        g[H - 1] = f1
        return tuple(g)

    def vertex_minima(self):
        if self._vm is None:
            self._vm = tuple(vertex_minima(self.sigma))
        return self._vm

    @property
    def vertex_count(self):
        vm = self.vertex_minima()
        return sum(1 for x in range(self.H) if vm[x] == x)

    @property
    def connected(self):
        f1 = self.f1
        return any(self.alpha[x] >= f1 for x in range(f1))

    def faces(self):
        return (tuple(range(self.f1)), tuple(range(self.f1, self.H)))

    def connecting_edges(self):
        f1 = self.f1
        return [(x, self.alpha[x]) for x in range(f1) if self.alpha[x] >= f1]

    @property
    def base(self):
        return FatMap(self.alpha, self.sigma, self.gamma)

    def gamma_order(self):
        return list(range(self.H))

    def classify_steps(self):
        s = self.sigma
        return [UP if x < s[x] else DOWN for x in range(self.H)]

    def trisections(self):
        """Down-steps h whose sigma(h) is not the minimum of its vertex."""
        s = self.sigma
        vm = self.vertex_minima()
        return [h for h in range(self.H) if s[h] <= h and vm[h] != s[h]]

    def vertices(self):
        s = self.sigma
        vm = self.vertex_minima()
        out = []
        for x in range(self.H):
            if vm[x] == x:
                c = [x]
                y = s[x]
                while y != x:
                    c.append(y)
                    y = s[y]
                out.append(c)
        return out

    def eligible_vertices(self, side=None):
        """Vertex minima other than the two plant leaves, optionally one face only."""
        vm = self.vertex_minima()
        f1, H = self.f1, self.H
        if side == "A":
            rng = range(f1)
        elif side == "B":
            rng = range(f1, H)
        else:
            rng = range(H)
        return [x for x in rng if vm[x] == x and x != f1 - 1 and x != H - 1]

    def display_labels(self):
        return [display_label(x, self.f1, self.H) for x in range(self.H)]

    def key(self):
        return (self.f1,) + self.alpha

    def __eq__(self, other):
        return isinstance(other, PlantedMap) and self.f1 == other.f1 and self.alpha == other.alpha

    def __hash__(self):
        return hash((self.f1, self.alpha))


class PlantedBicellularMap(PlantedMap):
    """Connected planted map with two faces."""

    __slots__ = ()

    @property
    def genus(self):
        return (self.H // 2 - self.vertex_count) // 2

    def __repr__(self):
        return "PlantedBicellularMap(n=%d, m=%d, genus=%d)" % (self.n, self.split_m, self.genus)

    def to_text(self):
        return format_map(self)


class UnicellularPair(PlantedMap):
    """Disjoint union of two planted one-face maps, A on face 1 and B on face 2."""

    __slots__ = ()

    def components(self):
        f1 = self.f1
        a = UnicellularMap(self.alpha[:f1])
        b = UnicellularMap([x - f1 for x in self.alpha[f1:]])
        return a, b

    @property
    def genera(self):
        vm = self.vertex_minima()
        f1, H = self.f1, self.H
        va = sum(1 for x in range(f1) if vm[x] == x)
        vb = sum(1 for x in range(f1, H) if vm[x] == x)
        return (f1 // 2 + 1 - va) // 2, ((H - f1) // 2 + 1 - vb) // 2

    @property
    def genus(self):
        return sum(self.genera)

    def __repr__(self):
        return "UnicellularPair(sizes=(%d, %d), genera=%s)" % (
            self.f1 // 2 - 1, (self.H - self.f1) // 2 - 1, self.genera)


def make_planted(alpha, f1):
    alpha = tuple(alpha)
    if any(alpha[x] >= f1 for x in range(f1)):
        return PlantedBicellularMap(alpha, f1)
    return UnicellularPair(alpha, f1)


def pair_of(a, b):
    """Place two planted one-face maps side by side."""
    fa = a.H
    return UnicellularPair(tuple(a.alpha) + tuple(x + fa for x in b.alpha), fa)


class UnicellularMap:
    """Canonical planted one-face map: the face is 0 -> 1 -> ... -> H-1 -> 0.

    The plant is the edge (0, H-1); H-1 is a leaf.  Plane trees are the
    genus-0 members.
    """

    __slots__ = ("alpha", "_sigma")

    def __init__(self, alpha):
        self.alpha = tuple(alpha)
        self._sigma = None

    @property
    def H(self):
        return len(self.alpha)

    @property
    def n(self):
        return self.H // 2 - 1

    @property
    def sigma(self):
        if self._sigma is None:
            self._sigma = tuple(canonical_sigma(self.alpha, self.H))
        return self._sigma

    @property
    def vertex_count(self):
        return count_cycles(self.sigma)

    @property
    def genus(self):
        return (self.H // 2 + 1 - self.vertex_count) // 2

    @property
    def base(self):
        return FatMap(self.alpha, self.sigma)

    def classify_steps(self):
        s = self.sigma
        return [UP if x < s[x] else DOWN for x in range(self.H)]

    def trisections(self):
        s = self.sigma
        vm = vertex_minima(s)
        return [h for h in range(self.H) if s[h] <= h and vm[h] != s[h]]

    def to_dyck(self):
        """Balanced-parenthesis word of the non-plant half-edges (genus 0 only)."""
        a = self.alpha
        return "".join("(" if a[x] > x else ")" for x in range(1, self.H - 1))

    @classmethod
    def from_dyck(cls, word):
        return plane_tree_from_dyck(word)

    def __eq__(self, other):
        return isinstance(other, UnicellularMap) and self.alpha == other.alpha

    def __hash__(self):
        return hash(self.alpha)

    def __repr__(self):
        return "UnicellularMap(n=%d, genus=%d)" % (self.n, self.genus)


PlaneTree = UnicellularMap


def plane_tree_from_dyck(word):
    """Planted plane tree whose non-plant half-edges follow a Dyck word."""
    H = len(word) + 2
    alpha = [0] * H
    alpha[0], alpha[H - 1] = H - 1, 0
    stack = []
    for i, c in enumerate(word, start=1):
        if c == "(":
            stack.append(i)
        elif c == ")":
            if not stack:
                raise MapError("unbalanced word")
            j = stack.pop()
            alpha[i], alpha[j] = j, i
        else:
            raise MapError("unexpected character %r" % c)
    if stack:
        raise MapError("unbalanced word")
    return UnicellularMap(alpha)


# -- arbitrary labelings ----------------------------------------------------

def validate_raw(alpha, sigma, plants):
    """Violations of the planted bicellular invariants for a labelled map.

    ``plants = (a, b, c, d)`` lists the plant edges (a, b) and (c, d), where
    a starts a face and b is its leaf, as do c and d.
    """
    out = []
    H = len(alpha)
    if len(sigma) != H:
        return ["alpha and sigma have different domains"]
    if H % 2:
        out.append("odd number of half-edges")
    if not is_permutation(list(sigma)):
        return out + ["sigma is not a permutation"]
    if not is_fpf_involution(alpha):
        return out + ["alpha is not a fixed-point-free involution"]
    if len(plants) != 4 or any(not 0 <= p < H for p in plants) or len(set(plants)) != 4:
        return out + ["plants must be four distinct half-edges"]
    gamma = face_perm(alpha, sigma)
    nf = count_cycles(gamma)
    if nf != 2:
        out.append("face count is %d, expected 2" % nf)
    a, b, c, d = plants
    if alpha[a] != b or alpha[c] != d:
        out.append("plants are not edges")
    if sigma[b] != b or sigma[d] != d:
        out.append("plant leaf is not a degree-one vertex")
    if gamma[b] != a or gamma[d] != c:
        out.append("plant not at face boundary")
    if _components(alpha, sigma) != 1:
        out.append("map is disconnected")
    face = [-1] * H
    x = a
    while face[x] < 0:
        face[x] = 0
        x = gamma[x]
    if face[c] == 0:
        out.append("both plants lie on the same face")
    elif nf == 2 and not any(face[x] == 0 and face[alpha[x]] != 0 for x in range(H)):
        out.append("not bicellular")
    if H // 2 - 2 < 1:
        out.append("no non-plant edge")
    if not out:
        v = count_cycles(sigma)
        if (H // 2 + 2 - v - nf) % 2 or H // 2 + 2 - v - nf < 0:
            out.append("Euler characteristic inconsistent")
    return out


def validate(m):
    """Violations of the invariants of a canonical planted map (empty if valid)."""
    if isinstance(m, UnicellularMap):
        out = []
        if not is_fpf_involution(m.alpha):
            out.append("alpha is not a fixed-point-free involution")
        elif m.alpha[0] != m.H - 1:
            out.append("plant not at face boundary")
        elif m.sigma[m.H - 1] != m.H - 1:
            out.append("plant leaf is not a degree-one vertex")
        return out
    out = validate_raw(m.alpha, m.sigma, m.plants)
    if isinstance(m, UnicellularPair):
        out = [v for v in out if v not in ("not bicellular", "map is disconnected")]
        if m.connected:
            out.append("pair is connected")
    return out


def canonicalize(alpha, sigma, plants):
    """Canonical PlantedBicellularMap of a labelled map; raises on invalid input.

    Returns ``(map, new)`` with ``new[old] = canonical label``.
    """
    bad = validate_raw(alpha, sigma, plants)
    if bad:
        raise NotPlanted("; ".join(bad))
    r = relabel(list(alpha), list(sigma), (plants[0], plants[2]))
    a2, sizes, new = r
    return PlantedBicellularMap(a2, sizes[0]), new


def planted_from_canonical(alpha, f1):
    """Checked constructor for a canonical planted bicellular map."""
    m = PlantedBicellularMap(alpha, f1)
    bad = validate(m)
    if bad:
        raise NotPlanted("; ".join(bad))
    return m


def gamma_rank(alpha, sigma, plants):
    """Rank array of the face-traversal order for a labelled planted map."""
    r = relabel(list(alpha), list(sigma), (plants[0], plants[2]))
    if r is None:
        raise NotPlanted("plants do not start two faces covering the map")
    return r[2]


# -- text form --------------------------------------------------------------

def format_map(m):
    return "alpha: %s\nsigma: %s\nplants: %s\n" % (
        " ".join(map(str, m.alpha)), " ".join(map(str, m.sigma)), " ".join(map(str, m.plants)))


def parse_map(text):
    """Parse the three-line text form; the result is canonical."""
    fields = {}
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        try:
            fields[key.strip()] = [int(t) for t in rest.split()]
        except ValueError:
            raise MapError("bad integer in line %r" % line)
    if set(fields) != {"alpha", "sigma", "plants"}:
        raise MapError("expected alpha, sigma and plants lines")
    m, _ = canonicalize(fields["alpha"], fields["sigma"], fields["plants"])
    return m

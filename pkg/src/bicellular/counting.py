"""Exact counts of the map and diagram families.

Sizes count non-plant edges: B_g(n) is the number of planted bicellular maps of
genus g with n edges besides the two plants, which is also the number of
genus-g two-backbone matchings with n arcs.

Glue paths.  Every planted bicellular map with a marked trisection comes from
a pair of planted plane trees (sizes m and n - m) by a sequence of gluings:

* ``A`` / ``B`` steps glue 2d+1 vertices of one component, raising its genus
  by d >= 1;
* one ``connect`` step glues 2d+3 vertices spread over both components,
  giving a bicellular map of genus gA + gB + d (d >= 0);
* ``bi`` steps glue 2d+1 vertices of the bicellular map, d >= 1.

Each step contributes (number of vertex subsets) / (number of trisections of
the result); the sum over paths and splits of the products equals B_g(n).  In
the canonical path order all A steps come before all B steps.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt, lcm

from .errors import EmptyFamily, InvalidRange

try:
    from gmpy2 import divexact, mpq as Q, mpz
except ImportError:                      # pragma: no cover
    mpz = int
    Q = Fraction

    def divexact(a, b):
        return a // b

A_STEP, B_STEP, CONNECT, BI_STEP = "A", "B", "connect", "bi"


def binom(a, b):
    """Binomial coefficient, zero outside 0 <= b <= a."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


_trees = [1]


def plane_tree_count(n):
    """Number of plane trees with n edges, by the convolution recurrence."""
    if n < 0:
        raise InvalidRange("n must be nonnegative")
    while len(_trees) <= n:
        k = len(_trees)
        _trees.append(sum(_trees[i] * _trees[k - 1 - i] for i in range(k)))
    return _trees[n]


@lru_cache(maxsize=None)
def unicellular_count(g, n):
    """Rooted one-face maps of genus g with n edges."""
    if g < 0 or n < 0:
        raise InvalidRange("g and n must be nonnegative")
    if g == 0:
        return catalan(n)
    if n < 2 * g:
        return 0
    s = sum(binom(n + 1 - 2 * (g - p), 2 * p + 1) * unicellular_count(g - p, n) for p in range(1, g + 1))
    q, r = divmod(s, 2 * g)
    assert r == 0
    return q


def distributed_count(mu, nu, t):
    """Subsets of size t of mu + nu vertices meeting both parts."""
    if mu < 0 or nu < 0:
        return 0
    return binom(mu + nu, t) - binom(mu, t) - binom(nu, t)


@lru_cache(maxsize=None)
def bicellular_count_rec(g, n):
    """B_g(n) from the trisection-counting recursion."""
    if g < 0 or n < 0:
        raise InvalidRange("g and n must be nonnegative")
    s = sum(binom(n - 2 * i, 2 * g - 2 * i + 1) * bicellular_count_rec(i, n) for i in range(g))
    for i in range(g + 1):
        t = 2 * g - 2 * i + 3
        for g1 in range(i + 1):
            for m in range(n + 1):
                u = unicellular_count(g1, m) * unicellular_count(i - g1, n - m)
                if not u:
                    continue
                mu = m + 1 - 2 * g1
                nu = n - m - 2 * i + 2 * g1 + 1
                s += u * sum(binom(mu, k) * binom(nu, t - k) for k in range(1, t))
    q, r = divmod(s, 2 * g + 2)
    if r:
        raise ArithmeticError("recursion not divisible for g=%d, n=%d" % (g, n))
    return q


# -- glue paths ---------------------------------------------------------------

@dataclass(frozen=True)
class GlueStep:
    kind: str
    delta: int

    @property
    def marks(self):
        return 2 * self.delta + (3 if self.kind == CONNECT else 1)


def _compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def glue_paths(g):
    """All canonical glue paths to genus g, as tuples of GlueStep."""
    out = []
    for ga in range(g + 1):
        for gb in range(g + 1 - ga):
            for d in range(g + 1 - ga - gb):
                rest = g - ga - gb - d
                for ca in _compositions(ga):
                    for cb in _compositions(gb):
                        for cp in _compositions(rest):
                            out.append(tuple(GlueStep(A_STEP, x) for x in ca)
                                       + tuple(GlueStep(B_STEP, x) for x in cb)
                                       + (GlueStep(CONNECT, d),)
                                       + tuple(GlueStep(BI_STEP, x) for x in cp))
    return out


@dataclass(frozen=True)
class Signature:
    """(genus, connected) states from the pair of trees to the target."""
    tuples: tuple

    @property
    def target(self):
        return self.tuples[-1]

    @property
    def switch(self):
        return next(i for i, (_, j) in enumerate(self.tuples) if j == 1)

    @classmethod
    def of_path(cls, path):
        g, j = 0, 0
        out = [(0, 0)]
        for s in path:
            g += s.delta
            if s.kind == CONNECT:
                j = 1
            out.append((g, j))
        return cls(tuple(out))


def signatures(g):
    """Distinct signatures to target (g, 1)."""
    return sorted({Signature.of_path(p) for p in glue_paths(g)}, key=lambda s: s.tuples)


def step_weight(step, state, n, m):
    """Weight of one step from ``state = (a, b, G, j)`` and the state it reaches.

    a, b are the component genera (j = 0) and G the bicellular genus (j = 1).
    """
    a, b, G, j = state
    d = step.delta
    if step.kind == A_STEP:
        w = Q(binom(m + 1 - 2 * a, 2 * d + 1), 2 * (a + d))
        return w, (a + d, b, 0, 0)
    if step.kind == B_STEP:
        w = Q(binom(n - m + 1 - 2 * b, 2 * d + 1), 2 * (b + d))
        return w, (a, b + d, 0, 0)
    if step.kind == CONNECT:
        G = a + b + d
        w = Q(distributed_count(m + 1 - 2 * a, n - m + 1 - 2 * b, 2 * d + 3), 2 * G + 2)
        return w, (0, 0, G, 1)
    w = Q(binom(n - 2 * G, 2 * d + 1), 2 * (G + d) + 2)
    return w, (0, 0, G + d, 1)


START = (0, 0, 0, 0)


def path_weight(path, n, m):
    w = Q(1)
    state = START
    for s in path:
        x, state = step_weight(s, state, n, m)
        if not x:
            return Q(0)
        w *= x
    return w


def bicellular_count_paths(g, n):
    """B_g(n) as the sum over splits and glue paths of the path weights."""
    if g < 0 or n < 0:
        raise InvalidRange("g and n must be nonnegative")
    paths = glue_paths(g)
    total = Q(0)
    for m in range(n + 1):
        e = catalan(m) * catalan(n - m)
        total += e * sum(path_weight(p, n, m) for p in paths)
    if total.denominator != 1:
        raise ArithmeticError("path sum is not an integer")
    return int(total.numerator)


# -- weights for the sampler ----------------------------------------------------

def successors(state, g, n, m):
    """Legal steps out of a path state towards target genus g (canonical order)."""
    a, b, G, j = state
    out = []
    if j == 1:
        for d in range(1, g - G + 1):
            out.append(GlueStep(BI_STEP, d))
        return out
    if b == 0:
        for d in range(1, g - a - b + 1):
            out.append(GlueStep(A_STEP, d))
    for d in range(1, g - a - b + 1):
        out.append(GlueStep(B_STEP, d))
    for d in range(0, g - a - b + 1):
        out.append(GlueStep(CONNECT, d))
    return out


class SignatureWeightTable:
    """Exact suffix weights of glue-path states for a fixed (g, n, m).

    ``omega(state)`` is the total weight of all path completions from state;
    transition probabilities are step weight times completion weight, divided
    by the completion weight of the current state.
    """

    def __init__(self, g, n, m):
        if not 0 <= m <= n:
            raise InvalidRange("split m must lie in [0, n]")
        self.g, self.n, self.m = g, n, m
        self._w = {}

    def omega(self, state=START):
        w = self._w.get(state)
        if w is not None:
            return w
        a, b, G, j = state
        if j == 1 and G == self.g:
            w = Q(1)
        else:
            w = Q(0)
            for s in successors(state, self.g, self.n, self.m):
                x, nxt = step_weight(s, state, self.n, self.m)
                if x:
                    w += x * self.omega(nxt)
        self._w[state] = w
        return w

    @property
    def total(self):
        return self.omega(START)

    def prefix_weight(self, path):
        """Total weight of all full paths that begin with ``path``."""
        w = Q(1)
        state = START
        for s in path:
            x, state = step_weight(s, state, self.n, self.m)
            w *= x
        return w * self.omega(state)

    def transitions(self, state):
        """List of (step, next_state, probability); probabilities sum to one."""
        base = self.omega(state)
        if not base:
            return []
        out = []
        for s in successors(state, self.g, self.n, self.m):
            x, nxt = step_weight(s, state, self.n, self.m)
            p = x * self.omega(nxt) / base
            if p:
                out.append((s, nxt, p))
        return out


def signature_weights(g, n, m):
    return SignatureWeightTable(g, n, m)


def _poly_from_points(values):
    """Power-basis coefficients of the polynomial through (k, values[k])."""
    d = len(values) - 1
    diffs = list(values)
    newton = []
    for k in range(d + 1):
        newton.append(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    coeffs = [Q(0)] * (d + 1)
    basis = [Q(1)]                           # C(x, k) in power basis
    for k in range(d + 1):
        for i, c in enumerate(basis):
            coeffs[i] += newton[k] * c
        nb = [Q(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nb[i + 1] += c / (k + 1)
            nb[i] -= c * k / (k + 1)
        basis = nb
    return coeffs


def _horner(coeffs, x):
    r = 0
    for c in reversed(coeffs):
        r = r * x + c
    return r


class SplitTable:
    """Exact distribution of the tree split m for target (g, n).

    The weight of split m is  Cat(m) Cat(n - m) F(m), where F(m) is the total
    glue-path weight.  F agrees on 0..n with a polynomial of degree at most
    3g + 3, so it is interpolated once and evaluated in integer arithmetic.
    Cumulative weights are stored at checkpoints every ``block`` splits; a draw
    scans at most one block.
    """

    def __init__(self, g, n, block=None):
        if g < 0 or n < 0:
            raise InvalidRange("g and n must be nonnegative")
        self.g, self.n = g, n
        d = 3 * g + 3
        if n <= d + 1:
            vals = [SignatureWeightTable(g, n, m).total for m in range(n + 1)]
            den = 1
            for v in vals:
                den = lcm(den, int(v.denominator))
            self._direct = [int(v * den) for v in vals]
            self._coeffs = None
        else:
            vals = [SignatureWeightTable(g, n, m).total for m in range(d + 1)]
            coeffs = _poly_from_points(vals)
            den = 1
            for c in coeffs:
                den = lcm(den, int(c.denominator))
            self._coeffs = [mpz(int(c * den)) for c in coeffs]
            self._direct = None
            check = SignatureWeightTable(g, n, d + 1).total * den
            if check != _horner(self._coeffs, d + 1):
                raise ArithmeticError("split weights are not polynomial")
        self.denominator = den
        self.block = block or (isqrt(n) + 1)
        self._build()

    def factor(self, m):
        """den * F(m), an integer."""
        if self._direct is not None:
            return self._direct[m]
        return _horner(self._coeffs, m)

    def _build(self):
        n = self.n
        e = mpz(catalan(n))
        cum = mpz(0)
        self._marks = []
        for m in range(n + 1):
            if m % self.block == 0:
                self._marks.append((cum, e))
            cum += e * self.factor(m)
            if m < n:
                e = divexact(e * ((2 * m + 1) * (n - m + 1)), (m + 2) * (2 * n - 2 * m - 1))
        cum = int(cum)
        self.total_weight = cum
        q, r = divmod(cum, self.denominator)
        if r:
            raise ArithmeticError("split weights do not sum to an integer")
        self.count = int(q)

    def weight(self, m):
        return catalan(m) * catalan(self.n - m) * int(self.factor(m))

    def probability(self, m):
        return Fraction(self.weight(m), self.total_weight)

    def locate(self, r):
        """Split m whose cumulative interval contains r, 0 <= r < total_weight."""
        lo, hi = 0, len(self._marks) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._marks[mid][0] <= r:
                lo = mid
            else:
                hi = mid - 1
        cum, e = self._marks[lo]
        n = self.n
        m = lo * self.block
        while True:
            w = e * self.factor(m)
            if r < cum + w:
                return m
            cum += w
            e = divexact(e * ((2 * m + 1) * (n - m + 1)), (m + 2) * (2 * n - 2 * m - 1))
            m += 1


_split_tables = {}


def split_table(g, n):
    key = (g, n)
    t = _split_tables.get(key)
    if t is None:
        t = _split_tables[key] = SplitTable(g, n)
    return t


def bicellular_count(g, n):
    """B_g(n), computed through the split table (fast for large n)."""
    return split_table(g, n).count


def matching_count(g, n):
    """Genus-g two-backbone matchings with n arcs (equal to B_g(n))."""
    return bicellular_count(g, n)


@dataclass(frozen=True)
class DiagramCounts:
    g: int
    length: int
    per_n: tuple                 # delta_g(l, n) for n = 0 .. l // 2
    total: int

    def probability(self, n):
        return Fraction(self.per_n[n], self.total)

    def distribution(self):
        return [Fraction(x, self.total) for x in self.per_n]


def diagram_count(g, length, n):
    if 2 * n > length or n < 1:
        return 0
    return binom(length, length - 2 * n) * matching_count(g, n)


def diagram_counts(g, length):
    if length < 0:
        raise InvalidRange("length must be nonnegative")
    per = tuple(diagram_count(g, length, n) for n in range(length // 2 + 1))
    total = sum(per)
    if total == 0:
        raise EmptyFamily("no genus-%d diagrams of length %d" % (g, length))
    return DiagramCounts(g, length, per, total)


def min_edges(g):
    """Smallest n with B_g(n) > 0."""
    return 2 * g + 1


class CountTable:
    """Memoized exact counts by family, for dumps and cross-checks."""

    FAMILIES = ("trees", "uni", "bi", "diagrams")

    def __init__(self):
        self.values = {}

    def get(self, family, g, n, length=None):
        key = (family, g, n, length)
        if key not in self.values:
            if family == "trees":
                v = plane_tree_count(n)
            elif family == "uni":
                v = unicellular_count(g, n)
            elif family == "bi":
                v = bicellular_count_rec(g, n) if n <= 40 else bicellular_count(g, n)
            elif family == "diagrams":
                v = diagram_count(g, length, n)
            else:
                raise ValueError("unknown family %r" % family)
            self.values[key] = v
        return self.values[key]

    def rows(self):
        for (family, g, n, length), v in sorted(self.values.items(), key=lambda kv: str(kv[0])):
            yield family, g, n, length, v

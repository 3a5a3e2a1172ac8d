"""Labeled hypergraphs: compact rank-bound constraints on subsets.

An edge (e, i) asserts "rank(e) <= i" for every matroid lying below the
hypergraph.  Edges live on an ambient ground set [d]; operations that drop
vertices keep the original labels and shrink the active vertex mask, while
``reduce`` (which identifies points connected by bound-1 edges) relabels to
a fresh contiguous ground set and returns the quotient map.
"""

from itertools import combinations

from .bitsets import bit, canon_key, full_mask, mask_of, points_of
from .core import Matroid, QuotientMap, _normalize_circuit_masks, check_circuit_axioms
from .errors import ConditionsFailed


class LabeledHypergraph:
    """Edges (mask, bound) with 0 <= bound <= n-1, canonically sorted."""

    __slots__ = ("d", "n", "vertices", "edges", "_hash")

    def __init__(self, d, n, vertices, edges):
        self.d = d
        self.n = n
        self.vertices = vertices
        self.edges = edges
        self._hash = hash((d, n, vertices, edges))

    def __eq__(self, other):
        return (
            isinstance(other, LabeledHypergraph)
            and self.d == other.d
            and self.n == other.n
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "LabeledHypergraph(d=%d, n=%d, %d edges)" % (
            self.d,
            self.n,
            len(self.edges),
        )

    @property
    def num_vertices(self):
        return self.vertices.bit_count()

    def by_bound(self, i):
        return tuple(e for e, b in self.edges if b == i)

    def edge_points(self):
        return tuple((points_of(e), b) for e, b in self.edges)


def _normalize_edges(raw, n):
    """Minimal bound per mask, size filter, same-bound nesting filter."""
    best = {}
    for mask, b in raw:
        if b >= n:
            continue  # vacuous for matroids of rank <= n
        cur = best.get(mask)
        if cur is None or b < cur:
            best[mask] = b
    sized = [(m, b) for m, b in best.items() if m.bit_count() >= b + 1]
    by_b = {}
    for m, b in sized:
        by_b.setdefault(b, []).append(m)
    kept = []
    for b, masks in by_b.items():
        for m in masks:
            if not any(m != o and m & ~o == 0 for o in masks):
                kept.append((m, b))
    kept.sort(key=lambda eb: (eb[1], canon_key(eb[0])))
    return tuple(kept)


def induce(raw, d, n, vertices=None):
    """Normalize raw (subset, bound) pairs into a labeled hypergraph.

    Removes edges nested inside a larger edge of the same bound and edges
    with |e| <= bound; when several bounds are given for one subset the
    smallest wins.
    """
    if vertices is None:
        vertices = full_mask(d)
    pairs = []
    for e, b in raw:
        mask = e if isinstance(e, int) else mask_of(e)
        if mask & ~vertices:
            raise ValueError("edge %s uses removed vertices" % (points_of(mask),))
        if b < 0:
            raise ValueError("edge bounds must be nonnegative")
        pairs.append((mask, b))
    return LabeledHypergraph(d, n, vertices, _normalize_edges(pairs, n))


def with_edge(hg, mask, bound):
    """The hypergraph induced by adding one edge (bound < 0 is infeasible)."""
    return LabeledHypergraph(
        hg.d, hg.n, hg.vertices, _normalize_edges(hg.edges + ((mask, bound),), hg.n)
    )


def delta_of_matroid(m, n=None):
    """Edges of bound i = cyclic flats of rank i, for 0 <= i <= n-1.

    With the default n = rank(m) a rank-deficient ground set never shows up;
    passing a larger ambient n records it, which the comparison and the
    rank-4 stratification rely on.
    """
    key = n = m.n if n is None else n
    cached = m._delta_cache.get(key)
    if cached is None:
        edges = tuple((f, r) for f, r in m.cyclic_flats_masks() if r <= n - 1)
        cached = LabeledHypergraph(m.d, n, full_mask(m.d), edges)
        m._delta_cache[key] = cached
    return cached


def leq_hyper(m, hg):
    """True iff rank_m(e) <= bound for every edge; for hg = delta of M this
    is exactly the weak-order comparison m <= M."""
    if m.d != hg.d:
        raise ValueError("ground sets differ")
    return all(m._rank_mask(e) <= b for e, b in hg.edges)


def remove_vertex(hg, k):
    """Drop vertex k; edges lose k and survive while |e| >= bound+1.

    Labels are preserved (the active vertex mask shrinks).
    """
    return drop_vertices(hg, bit(k))


def drop_vertices(hg, mask):
    raw = [(e & ~mask, b) for e, b in hg.edges]
    return LabeledHypergraph(
        hg.d, hg.n, hg.vertices & ~mask, _normalize_edges(raw, hg.n)
    )


def identify_vertices(hg, rep_of):
    """Map points through rep_of (a dict point -> representative) in place.

    Non-representative points leave the active vertex set; labels are kept.
    """
    raw = []
    for e, b in hg.edges:
        raw.append((mask_of(rep_of.get(p, p) for p in points_of(e)), b))
    verts = mask_of(rep_of.get(p, p) for p in points_of(hg.vertices))
    return LabeledHypergraph(hg.d, hg.n, verts, _normalize_edges(raw, hg.n))


def reduce(hg):
    """Identify points sharing a bound-1 edge; relabel to 1..q.

    Requires no bound-0 edges and a full vertex set.  Returns the reduced
    hypergraph (no bound-0/1 edges remain) and the quotient map.
    """
    if hg.by_bound(0):
        raise ValueError("reduction requires a hypergraph without bound-0 edges")
    if hg.vertices != full_mask(hg.d):
        raise ValueError("reduction requires a full vertex set")
    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    for e in hg.by_bound(1):
        pts = points_of(e)
        for p in pts[1:]:
            ra, rb = find(pts[0]), find(p)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    reps = sorted({find(p) for p in range(1, hg.d + 1)})
    new_label = {r: i + 1 for i, r in enumerate(reps)}
    target = tuple(new_label[find(p)] for p in range(1, hg.d + 1))
    qmap = QuotientMap(hg.d, target)
    raw = []
    for e, b in hg.edges:
        if b >= 2:
            raw.append((mask_of(new_label[find(p)] for p in points_of(e)), b))
    q = len(reps)
    red = LabeledHypergraph(q, hg.n, full_mask(q), _normalize_edges(raw, hg.n))
    return red, qmap


def valuation(hg, subset):
    """Pointwise upper bound on the rank of the subset in any matroid below
    the hypergraph: min(|A|, n, |A \\ e| + bound over edges)."""
    mask = subset if isinstance(subset, int) else mask_of(subset)
    best = min(mask.bit_count(), hg.n)
    for e, b in hg.edges:
        if b >= best:
            continue
        v = (mask & ~e).bit_count() + b
        if v < best:
            best = v
    return best


def check_matroid_conditions(hg, rank4=False):
    """Pairwise conditions under which the edge-induced circuits of the
    hypergraph form a matroid.

    General mode: bound1 + bound2 >= v(intersection) + v(union) for every
    pair of distinct edges.  Rank-4 mode is the sharper test for reduced
    hypergraphs (bounds 2 and 3 only):
      (i)   two bound-3 edges meeting in >= 3 points: the intersection must
            lie inside a bound-2 edge;
      (ii)  a bound-3 and a bound-2 edge meeting in >= 2 points: the bound-2
            edge must be contained in the bound-3 edge;
      (iii) two bound-2 edges meet in at most 1 point;
      (iv)  two bound-2 edges meeting in 1 point: their union must lie
            inside a bound-3 edge.
    """
    edges = hg.edges
    if not rank4:
        for i, (e1, b1) in enumerate(edges):
            for e2, b2 in edges[i + 1 :]:
                if valuation(hg, e1 & e2) + valuation(hg, e1 | e2) > b1 + b2:
                    return False
        return True
    if any(b not in (2, 3) for _, b in edges):
        raise ValueError("rank-4 conditions apply to reduced hypergraphs only")
    twos = hg.by_bound(2)
    threes = hg.by_bound(3)
    for i, e1 in enumerate(threes):
        for e2 in threes[i + 1 :]:
            inter = e1 & e2
            if inter.bit_count() >= 3 and not any(inter & ~z == 0 for z in twos):
                return False
    for e1 in threes:
        for e2 in twos:
            if (e1 & e2).bit_count() >= 2 and e2 & ~e1:
                return False
    for i, e1 in enumerate(twos):
        for e2 in twos[i + 1 :]:
            k = (e1 & e2).bit_count()
            if k >= 2:
                return False
            if k == 1 and not any((e1 | e2) & ~z == 0 for z in threes):
                return False
    return True


def matroid_from_hypergraph(hg, validate=False, check=True):
    """The unique maximal matroid below a hypergraph meeting the pairwise
    conditions: circuits are the inclusion-minimal (bound+1)-subsets of the
    edges together with all (n+1)-subsets of the ground set."""
    if hg.vertices != full_mask(hg.d):
        raise ValueError("matroid construction requires a full vertex set")
    if check and not check_matroid_conditions(hg):
        raise ConditionsFailed("pairwise rank-bound conditions fail")
    m = _matroid_from_hypergraph_unchecked(hg)
    if validate:
        check_circuit_axioms(m)
    return m


def _matroid_from_hypergraph_unchecked(hg):
    raw = []
    for e, b in hg.edges:
        pts = points_of(e)
        for combo in combinations(pts, b + 1):
            raw.append(mask_of(combo))
    ground = points_of(full_mask(hg.d))
    if hg.d >= hg.n + 1:
        for combo in combinations(ground, hg.n + 1):
            raw.append(mask_of(combo))
    canon = _normalize_circuit_masks(raw)
    from .core import _greedy_rank

    return Matroid(hg.d, _greedy_rank(hg.d, canon), canon)
